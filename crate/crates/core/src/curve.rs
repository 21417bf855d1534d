//! The base variety: a point, the affine line, the projective line, or an
//! abstract smooth projective curve of given genus. Q-divisors on the base,
//! section spaces H^0(Y, O(D)) with explicit bases where the base supports
//! function arithmetic, and big/semiample tests.
//!
//! The ground field for explicit section arithmetic is Q: divisor points on
//! the line bases must be rational. Abstract curves are combinatorics-only
//! (degrees and Riemann-Roch dimensions, no sections).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::arith::{format_rat, parse_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::section::RationalSection;

/// Supported base varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Point,
    AffineLine,
    ProjLine,
    AbstractCurve { genus: u32 },
}

impl Base {
    pub fn dimension(&self) -> usize {
        match self {
            Base::Point => 0,
            _ => 1,
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, Base::Point | Base::ProjLine | Base::AbstractCurve { .. })
    }

    /// Affine bases auto-pass positivity tests.
    pub fn is_affine(&self) -> bool {
        matches!(self, Base::Point | Base::AffineLine)
    }

    /// True if the base supports explicit rational-function sections.
    pub fn has_sections(&self) -> bool {
        !matches!(self, Base::AbstractCurve { .. })
    }

    /// The field of rational functions on the base, as a display string.
    pub fn function_field(&self) -> String {
        match self {
            Base::Point => "k".to_string(),
            Base::AffineLine | Base::ProjLine => "k(t)".to_string(),
            Base::AbstractCurve { genus } => format!("k(C) for a curve C of genus {genus}"),
        }
    }

    /// Validates that a divisor point makes sense on this base.
    pub fn admits(&self, p: &DivisorPoint) -> bool {
        match (self, p) {
            (Base::Point, _) => false,
            (Base::AffineLine, DivisorPoint::Finite(_)) => true,
            (Base::ProjLine, DivisorPoint::Finite(_) | DivisorPoint::Infinity) => true,
            (Base::AbstractCurve { .. }, DivisorPoint::Label(_)) => true,
            _ => false,
        }
    }
}

/// A prime divisor of the base: a rational point, the point at infinity of
/// the projective line, or an opaque label on an abstract curve.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorPoint {
    Finite(Rat),
    Infinity,
    Label(String),
}

impl DivisorPoint {
    pub fn parse(s: &str) -> Result<DivisorPoint> {
        if s == "inf" {
            Ok(DivisorPoint::Infinity)
        } else if let Some(name) = s.strip_prefix("label:") {
            if name.is_empty() {
                Err(Error::InvalidInput("empty divisor label".into()))
            } else {
                Ok(DivisorPoint::Label(name.to_string()))
            }
        } else {
            Ok(DivisorPoint::Finite(parse_rat(s)?))
        }
    }
}

impl fmt::Display for DivisorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorPoint::Finite(r) => write!(f, "{}", format_rat(r)),
            DivisorPoint::Infinity => write!(f, "inf"),
            DivisorPoint::Label(name) => write!(f, "label:{name}"),
        }
    }
}

/// A Q-divisor on a base: a finite formal sum of prime divisors with
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QDivisor {
    pub base: Base,
    coeffs: BTreeMap<DivisorPoint, Rat>,
}

impl QDivisor {
    pub fn zero(base: Base) -> Self {
        QDivisor { base, coeffs: BTreeMap::new() }
    }

    pub fn new(base: Base, coeffs: Vec<(DivisorPoint, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<DivisorPoint, Rat> = BTreeMap::new();
        for (p, c) in coeffs {
            if !base.admits(&p) {
                return Err(Error::InvalidInput(format!(
                    "divisor point {p} is not valid on this base"
                )));
            }
            let entry = map.entry(p).or_insert_with(Rat::zero);
            *entry = &*entry + c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(QDivisor { base, coeffs: map })
    }

    pub fn coeffs(&self) -> &BTreeMap<DivisorPoint, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &DivisorPoint) -> Rat {
        self.coeffs.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn neg(&self) -> QDivisor {
        QDivisor {
            base: self.base,
            coeffs: self.coeffs.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &QDivisor) -> Result<QDivisor> {
        if self.base != other.base {
            return Err(Error::InvalidInput("divisors on different bases".into()));
        }
        let mut coeffs: Vec<(DivisorPoint, Rat)> = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        coeffs.extend(other.coeffs.iter().map(|(p, c)| (p.clone(), c.clone())));
        QDivisor::new(self.base, coeffs)
    }

    /// Sum of coefficients; defined on projective bases only.
    pub fn degree(&self) -> Result<Rat> {
        match self.base {
            Base::ProjLine | Base::AbstractCurve { .. } => {
                Ok(self.coeffs.values().cloned().sum())
            }
            Base::Point | Base::AffineLine => Err(Error::NotProjective),
        }
    }

    /// Coefficientwise floor.
    pub fn round_down(&self) -> QDivisor {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, c)| (p.clone(), Rat::from_integer(c.floor().to_integer())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        QDivisor { base: self.base, coeffs }
    }

    /// True if every coefficient is a nonnegative integer.
    pub fn is_effective_integral(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.denom().is_one() && !c.is_negative())
    }
}

/// Dimension report for a section space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimReport {
    Finite(usize),
    /// Free module of rank 1 over the coordinate ring of the affine line.
    InfiniteRankOne,
    /// Riemann-Roch gives no verdict with the available data.
    Unknown,
}

impl DimReport {
    pub fn is_positive(&self) -> Option<bool> {
        match self {
            DimReport::Finite(n) => Some(*n > 0),
            DimReport::InfiniteRankOne => Some(true),
            DimReport::Unknown => None,
        }
    }
}

/// Dimension of H^0(Y, O(D)) = H^0(Y, O(floor D)).
pub fn h0(divisor: &QDivisor) -> DimReport {
    let floor = divisor.round_down();
    match divisor.base {
        Base::Point => DimReport::Finite(1),
        Base::AffineLine => DimReport::InfiniteRankOne,
        Base::ProjLine => {
            let deg = floor.degree().expect("projective").to_integer();
            if deg.is_negative() {
                DimReport::Finite(0)
            } else {
                DimReport::Finite(usize::try_from(deg + 1u32).expect("desk-scale degree"))
            }
        }
        Base::AbstractCurve { genus } => {
            if floor.is_zero() {
                // H^0(Y, O_Y) = k on any projective base.
                return DimReport::Finite(1);
            }
            let deg = floor.degree().expect("projective").to_integer();
            if deg.is_negative() {
                DimReport::Finite(0)
            } else if deg > Int::from(2 * i64::from(genus) - 2) {
                let dim = deg + 1 - Int::from(genus);
                DimReport::Finite(usize::try_from(dim).expect("desk-scale degree"))
            } else {
                DimReport::Unknown
            }
        }
    }
}

/// Explicit basis of H^0(Y, O(D)) on the bases that carry sections.
///
/// - Point: `{1}`.
/// - AffineLine: the module generator `prod (t - a)^(-floor c_a)` of the
///   rank-1 free module over k[t], as a one-element list.
/// - ProjLine with `floor D = sum c_a [a] + c_inf [inf]`: the spanning set
///   `{ t^j * prod (t - a)^(-c_a) : 0 <= j <= deg floor(D) }`.
pub fn section_basis(divisor: &QDivisor) -> Result<Vec<RationalSection>> {
    let floor = divisor.round_down();
    match divisor.base {
        Base::Point => Ok(vec![RationalSection::one()]),
        Base::AffineLine => Ok(vec![finite_part_generator(&floor)]),
        Base::ProjLine => {
            let deg = floor.degree().expect("projective").to_integer();
            if deg.is_negative() {
                return Ok(Vec::new());
            }
            let deg = usize::try_from(deg).expect("desk-scale degree");
            let gen = finite_part_generator(&floor);
            let t = RationalSection::t();
            let mut basis = Vec::with_capacity(deg + 1);
            let mut power = RationalSection::one();
            for _ in 0..=deg {
                basis.push(power.mul(&gen));
                power = power.mul(&t);
            }
            Ok(basis)
        }
        Base::AbstractCurve { .. } => Err(Error::Unsupported("section basis on an abstract curve")),
    }
}

/// `prod over finite points a of (t - a)^(-c_a)` for an integral divisor.
fn finite_part_generator(floor: &QDivisor) -> RationalSection {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (p, c) in floor.coeffs() {
        if let DivisorPoint::Finite(alpha) = p {
            let c = c.to_integer();
            let lin = Poly::linear_root(alpha);
            if c.is_negative() {
                let k = usize::try_from(-c).expect("desk-scale order");
                num = &num * &lin.pow(k);
            } else {
                let k = usize::try_from(c).expect("desk-scale order");
                den = &den * &lin.pow(k);
            }
        }
    }
    RationalSection::new(num, den).expect("nonzero denominator")
}

/// Membership test `div(f) + floor(D) >= 0`, checking the order of `f` at
/// every rational zero/pole and (on the projective line) at infinity.
pub fn section_in(f: &RationalSection, divisor: &QDivisor) -> Result<bool> {
    match divisor.base {
        Base::Point | Base::AbstractCurve { .. } => {
            return Err(Error::Unsupported("section membership needs a line base"))
        }
        Base::AffineLine | Base::ProjLine => {}
    }
    if f.is_zero() {
        return Ok(true);
    }
    let floor = divisor.round_down();
    let orders = f.finite_orders()?;
    for (alpha, ord) in &orders {
        let c = floor.coeff(&DivisorPoint::Finite(alpha.clone())).to_integer();
        if Int::from(*ord) + c < Int::zero() {
            return Ok(false);
        }
    }
    // Points in the divisor support where f has order zero still matter only
    // through negative coefficients.
    for (p, c) in floor.coeffs() {
        if let DivisorPoint::Finite(alpha) = p {
            if c.is_negative() && !orders.iter().any(|(a, _)| a == alpha) {
                return Ok(false);
            }
        }
    }
    if divisor.base == Base::ProjLine {
        let c_inf = floor.coeff(&DivisorPoint::Infinity).to_integer();
        if Int::from(f.ord_at_infinity()) + c_inf < Int::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Three-valued verdict used wherever a test can be undecidable on the
/// supported data (degree-zero divisor classes at positive genus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }

    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::False, _) | (_, TriState::False) => TriState::False,
            (TriState::Unknown, _) | (_, TriState::Unknown) => TriState::Unknown,
            _ => TriState::True,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::True => write!(f, "true"),
            TriState::False => write!(f, "false"),
            TriState::Unknown => write!(f, "unknown"),
        }
    }
}

/// Bigness. Affine bases auto-pass; on projective curves big means positive
/// degree.
pub fn is_big(divisor: &QDivisor) -> bool {
    match divisor.base {
        Base::Point | Base::AffineLine => true,
        Base::ProjLine | Base::AbstractCurve { .. } => {
            divisor.degree().expect("projective").is_positive()
        }
    }
}

/// Semiampleness. Affine bases auto-pass; on the projective line this is
/// deg >= 0; at positive genus a nonzero divisor of degree zero is
/// undecidable without class-group data.
pub fn is_semiample(divisor: &QDivisor) -> TriState {
    match divisor.base {
        Base::Point | Base::AffineLine => TriState::True,
        Base::ProjLine => TriState::from_bool(!divisor.degree().expect("projective").is_negative()),
        Base::AbstractCurve { .. } => {
            let deg = divisor.degree().expect("projective");
            if deg.is_positive() {
                TriState::True
            } else if deg.is_negative() {
                TriState::False
            } else if divisor.is_zero() {
                TriState::True
            } else {
                TriState::Unknown
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn pl(coeffs: &[(&str, Rat)]) -> QDivisor {
        QDivisor::new(
            Base::ProjLine,
            coeffs
                .iter()
                .map(|(p, c)| (DivisorPoint::parse(p).unwrap(), c.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn degree_and_round_down() {
        let d = pl(&[("0", rat(1, 2)), ("1", rat(-1, 4))]);
        assert_eq!(d.degree().unwrap(), rat(1, 4));
        assert!(d.round_down().coeff(&DivisorPoint::parse("0").unwrap()).is_zero());
        assert_eq!(
            d.round_down().coeff(&DivisorPoint::parse("1").unwrap()),
            rat_int(-1)
        );

        let aff = QDivisor::new(Base::AffineLine, vec![(DivisorPoint::Finite(rat_int(0)), rat_int(3))]).unwrap();
        assert_eq!(aff.degree(), Err(Error::NotProjective));

        // floor(1/2 [0]) = 0, floor(1 [0] + 3/4 [inf]) = 1 [0]
        assert!(pl(&[("0", rat(1, 2))]).round_down().is_zero());
        let e = pl(&[("0", rat_int(1)), ("inf", rat(3, 4))]).round_down();
        assert_eq!(e.coeffs().len(), 1);
        assert_eq!(e.coeff(&DivisorPoint::Infinity), rat_int(0));
    }

    #[test]
    fn h0_on_each_base() {
        assert_eq!(h0(&QDivisor::zero(Base::Point)), DimReport::Finite(1));
        assert_eq!(h0(&QDivisor::zero(Base::AffineLine)), DimReport::InfiniteRankOne);
        // r [inf] on the projective line has r+1 sections.
        assert_eq!(h0(&pl(&[("inf", rat_int(3))])), DimReport::Finite(4));
        assert_eq!(h0(&pl(&[("inf", rat_int(-1))])), DimReport::Finite(0));

        let g1 = QDivisor::new(
            Base::AbstractCurve { genus: 1 },
            vec![(DivisorPoint::parse("label:P").unwrap(), rat_int(1))],
        )
        .unwrap();
        assert_eq!(h0(&g1), DimReport::Finite(1));
        let g1zero = QDivisor::new(
            Base::AbstractCurve { genus: 1 },
            vec![
                (DivisorPoint::parse("label:P").unwrap(), rat_int(1)),
                (DivisorPoint::parse("label:Q").unwrap(), rat_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(h0(&g1zero), DimReport::Unknown);
    }

    #[test]
    fn bases_of_section_spaces() {
        let basis: Vec<String> = section_basis(&pl(&[("inf", rat_int(2))]))
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(basis, vec!["1", "t", "t^2"]);

        assert!(section_basis(&pl(&[("inf", rat_int(-1))])).unwrap().is_empty());

        let basis: Vec<String> = section_basis(&pl(&[("0", rat_int(1))]))
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(basis, vec!["1/t", "1"]);

        // Every basis element is a member, and the count matches h0.
        let d = pl(&[("0", rat_int(2)), ("1", rat_int(-1)), ("inf", rat_int(1))]);
        let basis = section_basis(&d).unwrap();
        assert_eq!(DimReport::Finite(basis.len()), h0(&d));
        for f in &basis {
            assert!(section_in(f, &d).unwrap(), "{f} should lie in H^0");
        }
    }

    #[test]
    fn affine_line_module_generator() {
        let d = QDivisor::new(
            Base::AffineLine,
            vec![(DivisorPoint::Finite(rat_int(0)), rat_int(-2))],
        )
        .unwrap();
        let basis = section_basis(&d).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].to_string(), "t^2");
    }

    #[test]
    fn membership_examples() {
        let inf1 = pl(&[("inf", rat_int(1))]);
        assert!(section_in(&RationalSection::t(), &inf1).unwrap());
        assert!(!section_in(&RationalSection::parse("1/t").unwrap(), &inf1).unwrap());
        assert!(!section_in(&RationalSection::parse("t^2").unwrap(), &inf1).unwrap());
        // Points with negative coefficient where f has no zero.
        let need_zero = pl(&[("2", rat_int(-1)), ("inf", rat_int(5))]);
        assert!(!section_in(&RationalSection::one(), &need_zero).unwrap());
        assert!(section_in(&RationalSection::parse("t - 2").unwrap(), &need_zero).unwrap());
    }

    #[test]
    fn positivity_tests() {
        assert!(is_big(&pl(&[("inf", rat_int(1))])));
        assert_eq!(is_semiample(&pl(&[("inf", rat_int(1))])), TriState::True);
        assert!(!is_big(&QDivisor::zero(Base::ProjLine)));
        assert_eq!(is_semiample(&QDivisor::zero(Base::ProjLine)), TriState::True);
        assert!(is_big(&QDivisor::zero(Base::AffineLine)));

        let g1zero = QDivisor::new(
            Base::AbstractCurve { genus: 1 },
            vec![
                (DivisorPoint::parse("label:P").unwrap(), rat_int(1)),
                (DivisorPoint::parse("label:Q").unwrap(), rat_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(is_semiample(&g1zero), TriState::Unknown);
        assert!(!is_big(&g1zero));
    }

    #[test]
    fn base_point_compatibility() {
        assert!(QDivisor::new(Base::Point, vec![(DivisorPoint::Infinity, rat_int(1))]).is_err());
        assert!(QDivisor::new(Base::AffineLine, vec![(DivisorPoint::Infinity, rat_int(1))]).is_err());
        assert!(QDivisor::new(
            Base::AbstractCurve { genus: 0 },
            vec![(DivisorPoint::Finite(rat_int(0)), rat_int(1))]
        )
        .is_err());
    }
}
