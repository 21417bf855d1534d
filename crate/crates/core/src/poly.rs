//! Dense univariate polynomials over the rationals, with Euclidean division,
//! gcd, and rational-root extraction for divisor computations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::arith::{format_rat, Int, Rat};

/// Polynomial in one indeterminate `t` with rational coefficients, stored
/// low degree first without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - alpha`.
    pub fn linear_root(alpha: &Rat) -> Self {
        Poly::new(vec![-alpha.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd && !(rem.len() == dd + 1) && rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len().saturating_sub(dd)];
        let lead = d.leading().expect("nonzero").clone();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().expect("nonempty") / &lead;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let delta = c * &f;
                    rem[k + i] = &rem[k + i] - delta;
                }
                quot[k] = f;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient. Keeps Euclidean remainder chains from blowing up.
    fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut content = Int::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().expect("nonzero").is_negative() {
            content = -content;
        }
        Poly::new(ints.iter().map(|c| Rat::from_integer(c / &content)).collect())
    }

    /// Monic greatest common divisor (primitive-remainder Euclid).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Multiplicity of `alpha` as a root.
    pub fn root_multiplicity(&self, alpha: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Poly::linear_root(alpha);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(&lin);
            if r.is_zero() {
                k += 1;
                p = q;
            } else {
                return k;
            }
        }
    }

    /// All rational roots with multiplicities, sorted, together with the
    /// root-free cofactor.
    pub fn rational_roots(&self) -> (Vec<(Rat, usize)>, Poly) {
        if self.is_zero() || self.is_constant() {
            return (Vec::new(), self.clone());
        }
        let mut p = self.clone();
        let mut roots: Vec<(Rat, usize)> = Vec::new();
        // Root at zero first.
        let k0 = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k0 > 0 {
            roots.push((Rat::zero(), k0));
            p = Poly::new(p.coeffs[k0..].to_vec());
        }
        // Clear denominators and strip the numeric content (a scalar factor
        // does not change the roots but would blow up the divisor
        // enumeration); candidate roots are p/q with p | constant term and
        // q | leading coefficient.
        if !p.is_constant() {
            let mut lcm = Int::one();
            for c in &p.coeffs {
                lcm = lcm.lcm(c.denom());
            }
            let mut int_coeffs: Vec<Int> =
                p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
            let mut content = Int::zero();
            for c in &int_coeffs {
                content = content.gcd(c);
            }
            if !content.is_zero() && !content.is_one() {
                for c in int_coeffs.iter_mut() {
                    *c = &*c / &content;
                }
            }
            let a0 = int_coeffs.first().expect("nonconstant").abs();
            let an = int_coeffs.last().expect("nonconstant").abs();
            let mut candidates: Vec<Rat> = Vec::new();
            for p_div in divisors(&a0) {
                for q_div in divisors(&an) {
                    let r = Rat::new(p_div.clone(), q_div.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for alpha in candidates {
                if p.is_constant() {
                    break;
                }
                let k = p.root_multiplicity(&alpha);
                if k > 0 {
                    roots.push((alpha.clone(), k));
                    let lin = Poly::linear_root(&alpha).pow(k);
                    p = p.div_rem(&lin).0;
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, p)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        // Only reachable for the zero constant term, handled by the caller
        // via the root at zero; return 1 to be safe.
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n.abs() {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(n.abs() / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    /// Canonical form, highest power first: `3/2*t^2 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", format_rat(&abs))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// True if the number of terms is more than one (used to decide whether a
/// printed polynomial needs parentheses).
pub(crate) fn needs_parens(p: &Poly) -> bool {
    p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
}
