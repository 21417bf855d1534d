//! Rational sections: reduced ratios of polynomials in `t` over the
//! rationals, with order-of-vanishing computations and a canonical string
//! form (`(t + 1)/(t - 2)`, `1/t`, `3/2*t^2 - 1`, ...) that parses back.

use std::fmt;

use num::Signed;

use crate::arith::{format_rat, Rat};
use crate::error::{Error, Result};
use crate::poly::{needs_parens, Poly};

/// A rational function num/den in reduced form: coprime numerator and
/// denominator, monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSection {
    num: Poly,
    den: Poly,
}

impl RationalSection {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalSection { num: Poly::zero(), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = den.leading().expect("nonzero").clone();
        Ok(RationalSection {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalSection { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The coordinate function `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.constant_value()? / self.den.constant_value()?)
        } else {
            None
        }
    }

    pub fn mul(&self, other: &RationalSection) -> RationalSection {
        // Both factors are reduced, so cancellation only happens across
        // them; two small gcds avoid one large one.
        if self.is_zero() || other.is_zero() {
            return RationalSection::zero();
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = &self.num.div_rem(&g1).0 * &other.num.div_rem(&g2).0;
        let den = &self.den.div_rem(&g2).0 * &other.den.div_rem(&g1).0;
        let lead = den.leading().expect("nonzero").clone();
        RationalSection {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        }
    }

    pub fn add(&self, other: &RationalSection) -> RationalSection {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalSection::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RationalSection {
        RationalSection { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &RationalSection) -> RationalSection {
        self.add(&other.neg())
    }

    pub fn div(&self, other: &RationalSection) -> Result<RationalSection> {
        if other.is_zero() {
            return Err(Error::InvalidInput("division by the zero section".into()));
        }
        Ok(self.mul(&RationalSection::new(other.den.clone(), other.num.clone())?))
    }

    pub fn scale(&self, c: &Rat) -> RationalSection {
        RationalSection::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, n: usize) -> RationalSection {
        RationalSection { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Order of vanishing at a finite rational point (positive at zeros,
    /// negative at poles). Undefined for the zero section.
    pub fn ord_at(&self, alpha: &Rat) -> i64 {
        debug_assert!(!self.is_zero());
        self.num.root_multiplicity(alpha) as i64 - self.den.root_multiplicity(alpha) as i64
    }

    /// Order of vanishing at infinity: deg(den) - deg(num).
    pub fn ord_at_infinity(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64
    }

    /// All finite rational points where the section has a zero or pole, with
    /// orders. Errors if the denominator has a factor that does not split
    /// over the rationals (its poles could not be located exactly);
    /// non-splitting numerator factors only contribute nonnegative orders at
    /// irrational points and are accepted.
    pub fn finite_orders(&self) -> Result<Vec<(Rat, i64)>> {
        debug_assert!(!self.is_zero());
        let (num_roots, _) = self.num.rational_roots();
        let (den_roots, den_cofactor) = self.den.rational_roots();
        if !den_cofactor.is_constant() {
            return Err(Error::IrreducibleFactorOutsideGroundField);
        }
        let mut orders: Vec<(Rat, i64)> = Vec::new();
        for (alpha, k) in num_roots {
            orders.push((alpha, k as i64));
        }
        for (alpha, k) in den_roots {
            match orders.iter_mut().find(|(a, _)| *a == alpha) {
                Some(entry) => entry.1 -= k as i64,
                None => orders.push((alpha, -(k as i64))),
            }
        }
        orders.retain(|(_, k)| *k != 0);
        orders.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(orders)
    }

    /// Parses the canonical string form (any expression in `t`, integers,
    /// `+ - * / ^` and parentheses).
    pub fn parse(input: &str) -> Result<RationalSection> {
        Parser::new(input).parse()
    }
}

impl fmt::Display for RationalSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        if needs_parens(&self.den) {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { chars: input.chars().peekable(), input }
    }

    fn error(&self, msg: &str) -> Error {
        Error::InvalidInput(format!("{msg} in section {:?}", self.input))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn parse(mut self) -> Result<RationalSection> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.error("trailing characters"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<RationalSection> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                '+' => {
                    self.chars.next();
                    acc = acc.add(&self.term()?);
                }
                '-' => {
                    self.chars.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalSection> {
        let mut acc = self.factor()?;
        while let Some(op) = self.peek() {
            match op {
                '*' => {
                    self.chars.next();
                    acc = acc.mul(&self.factor()?);
                }
                '/' => {
                    self.chars.next();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalSection> {
        if self.peek() == Some('-') {
            self.chars.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.chars.next();
            self.skip_ws();
            let n = self.integer()?;
            if n.is_negative() {
                return Err(self.error("negative exponent"));
            }
            let n: usize = n
                .to_string()
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalSection> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("missing closing parenthesis"));
                }
                self.chars.next();
                Ok(v)
            }
            Some('t') => {
                self.chars.next();
                Ok(RationalSection::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalSection::constant(Rat::from_integer(n)))
            }
            _ => Err(self.error("expected a number, 't', or '('")),
        }
    }

    fn integer(&mut self) -> Result<num::BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while self.chars.peek().is_some_and(|c| c.is_ascii_digit()) {
            digits.push(self.chars.next().expect("peeked"));
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer"));
        }
        digits.parse().map_err(|_| self.error("invalid integer"))
    }
}

/// Formats a constant as a section string (`p/q` division expression).
pub fn constant_string(c: &Rat) -> String {
    format_rat(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn parse(s: &str) -> RationalSection {
        RationalSection::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["t", "1/t", "(t + 1)/(t - 2)", "3/2*t^2 - t + 1", "t^2/(t - 1)", "0", "-1/2"] {
            let sec = parse(s);
            assert_eq!(sec.to_string(), s, "canonical form of {s:?}");
            assert_eq!(parse(&sec.to_string()), sec);
        }
    }

    #[test]
    fn parser_reduces() {
        assert_eq!(parse("(t^2 - 1)/(t - 1)"), parse("t + 1"));
        assert_eq!(parse("2/4"), RationalSection::constant(rat(1, 2)));
        assert!(RationalSection::parse("t +").is_err());
        assert!(RationalSection::parse("1/(t - t)").is_err());
    }

    #[test]
    fn orders_at_points_and_infinity() {
        let f = parse("t^2*(t - 1)/(t + 1)");
        assert_eq!(f.ord_at(&rat_int(0)), 2);
        assert_eq!(f.ord_at(&rat_int(1)), 1);
        assert_eq!(f.ord_at(&rat_int(-1)), -1);
        assert_eq!(f.ord_at(&rat_int(5)), 0);
        assert_eq!(f.ord_at_infinity(), -2);

        let orders = f.finite_orders().unwrap();
        assert_eq!(
            orders,
            vec![(rat_int(-1), -1), (rat_int(0), 2), (rat_int(1), 1)]
        );
    }

    #[test]
    fn nonsplit_denominator_is_rejected() {
        let f = parse("1/(t^2 + 1)");
        assert_eq!(f.finite_orders(), Err(Error::IrreducibleFactorOutsideGroundField));
        // A non-splitting numerator is fine: its zeros only help.
        let g = parse("t^2 + 1");
        assert_eq!(g.finite_orders().unwrap(), vec![]);
    }

    #[test]
    fn principal_divisor_has_degree_zero() {
        // Fully split sections: sum of finite orders plus order at infinity.
        for s in ["t^2*(t - 1)/(t + 1)", "(t - 3)^4/t", "5*t"] {
            let f = parse(s);
            let total: i64 = f.finite_orders().unwrap().iter().map(|(_, k)| *k).sum();
            assert_eq!(total + f.ord_at_infinity(), 0, "degree of div({s})");
        }
    }
}
