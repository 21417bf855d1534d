//! Exact arithmetic helpers: arbitrary-precision integers and rationals,
//! primitive integer vectors, dot products, and the `p/q` string format.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Formats a rational as `p` or `p/q` with positive denominator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Int = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))?;
    let q: Int = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))?;
    if q.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
    }
    Ok(Rat::new(p, q))
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg_vec(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn add_vec_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec_rat(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn int_to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// True if every coordinate is an integer.
pub fn rat_vec_is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

pub fn rat_vec_to_int(v: &[Rat]) -> Option<Vec<Int>> {
    if rat_vec_is_integral(v) {
        Some(v.iter().map(|x| x.numer().clone()).collect())
    } else {
        None
    }
}

/// Divides by the gcd of the coordinates, keeping the direction.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and divides by the gcd, keeping the direction.
pub fn primitive_from_rat(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

/// Flips the sign so the leading nonzero coordinate is positive. Used for
/// direction-free vectors (equality normals, lineality basis), never for rays.
pub fn orient_leading_positive(v: &[Int]) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.sign() == Sign::Minus => neg_vec(v),
        _ => v.to_vec(),
    }
}

pub fn max_norm(v: &[Int]) -> Int {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero)
}

pub fn check_rank(rank: usize, v: &[Int]) -> Result<()> {
    if v.len() == rank {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected: rank, found: v.len() })
    }
}

pub fn check_rank_rat(rank: usize, v: &[Rat]) -> Result<()> {
    if v.len() == rank {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected: rank, found: v.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_reduces_gcd() {
        assert_eq!(primitive(&[int(4), int(-6)]), vec![int(2), int(-3)]);
        assert_eq!(primitive(&[int(0), int(0)]), vec![int(0), int(0)]);
        assert_eq!(primitive(&[int(0), int(-5)]), vec![int(0), int(-1)]);
    }

    #[test]
    fn primitive_from_rat_clears_denominators() {
        assert_eq!(primitive_from_rat(&[rat(1, 2), rat(-1, 3)]), vec![int(3), int(-2)]);
    }

    #[test]
    fn rat_string_round_trip() {
        for r in [rat(3, 4), rat_int(-2), rat(-7, 5), Rat::zero()] {
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
