//! Proper sigma-polyhedral divisors on a base, their evaluation to
//! Q-divisors, properness verification, and the multigraded section ring
//! with explicit graded pieces.
//!
//! A polyhedral divisor assigns a tailed polyhedron (all with the same tail
//! sigma) to finitely many prime divisors of the base. Evaluating at
//! m ∈ sigma_dual takes the support function of every coefficient; the
//! graded piece at m is H^0 of the resulting Q-divisor.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::arith::{
    add_vec, add_vec_rat, dot_int, dot_int_rat, int_to_rat_vec, is_zero_vec, primitive_from_rat,
    Int, Rat,
};
use crate::cone::Cone;
use crate::curve::{
    h0, is_big, is_semiample, section_basis, section_in, Base, DimReport, DivisorPoint, QDivisor,
    TriState,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector, Space};

use crate::polyhedron::TailedPolyhedron;
use crate::section::RationalSection;

/// A sigma-polyhedral divisor: finitely many prime divisors of the base with
/// tailed-polyhedron coefficients sharing the tail cone sigma. Coefficients
/// equal to sigma itself are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    base: Base,
    tail: Cone,
    tail_dual: Cone,
    coeffs: BTreeMap<DivisorPoint, TailedPolyhedron>,
}

impl PolyhedralDivisor {
    pub fn new(
        base: Base,
        tail: Cone,
        coeffs: Vec<(DivisorPoint, TailedPolyhedron)>,
    ) -> Result<Self> {
        if tail.space() != Space::N {
            return Err(Error::SpaceMismatch);
        }
        if !tail.is_pointed() {
            return Err(Error::InvalidInput("the tail cone must be pointed".into()));
        }
        let mut map = BTreeMap::new();
        for (p, delta) in coeffs {
            if !base.admits(&p) {
                return Err(Error::InvalidInput(format!(
                    "divisor point {p} is not valid on this base"
                )));
            }
            if delta.tail() != &tail {
                return Err(Error::TailMismatch);
            }
            if delta.is_tail_only() {
                continue;
            }
            if map.insert(p.clone(), delta).is_some() {
                return Err(Error::InvalidInput(format!("duplicate divisor point {p}")));
            }
        }
        let tail_dual = tail.dual();
        Ok(PolyhedralDivisor { base, tail, tail_dual, coeffs: map })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// The weight cone sigma_dual in M.
    pub fn weight_cone(&self) -> &Cone {
        &self.tail_dual
    }

    pub fn coeffs(&self) -> &BTreeMap<DivisorPoint, TailedPolyhedron> {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    /// Dimension of Spec A[Y, D]: rank of M plus the dimension of the base.
    pub fn dimension(&self) -> usize {
        self.rank() + self.base.dimension()
    }

    fn check_weight(&self, m: &LatticeVector) -> Result<()> {
        if m.space != Space::M {
            return Err(Error::SpaceMismatch);
        }
        crate::arith::check_rank(self.rank(), &m.coords)?;
        if !self.tail_dual.contains_int_raw(&m.coords) {
            return Err(Error::OutsideDualCone);
        }
        Ok(())
    }

    /// Evaluation: the Q-divisor with coefficient h_H(m) at every marked H.
    pub fn evaluate(&self, m: &LatticeVector) -> Result<QDivisor> {
        self.check_weight(m)?;
        Ok(self.evaluate_raw(&int_to_rat_vec(&m.coords)))
    }

    pub(crate) fn evaluate_raw(&self, m: &[Rat]) -> QDivisor {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, delta)| (p.clone(), delta.support_eval_raw(m)))
            .collect();
        QDivisor::new(self.base, coeffs).expect("points validated at construction")
    }

    /// The graded piece A_m = H^0(Y, O(D(m))): dimension report and, on
    /// bases with section arithmetic, an explicit basis.
    pub fn graded_piece(&self, m: &LatticeVector) -> Result<GradedPiece> {
        self.check_weight(m)?;
        let divisor = self.evaluate_raw(&int_to_rat_vec(&m.coords));
        let dim = h0(&divisor);
        let basis = if self.base.has_sections() {
            Some(section_basis(&divisor)?)
        } else {
            None
        };
        Ok(GradedPiece { degree: m.coords.clone(), dim, basis })
    }

    /// Validated homogeneous element f·chi^m of the section ring.
    pub fn element(&self, section: RationalSection, degree: Vec<Int>) -> Result<HomogeneousElement> {
        self.check_weight(&LatticeVector::new(Space::M, degree.clone()))?;
        if section.is_zero() {
            return Err(Error::NotInGradedPiece);
        }
        match self.base {
            Base::Point => {
                if !section.is_constant() {
                    return Err(Error::NotInGradedPiece);
                }
            }
            Base::AffineLine | Base::ProjLine => {
                let divisor = self.evaluate_raw(&int_to_rat_vec(&degree));
                if !section_in(&section, &divisor)? {
                    return Err(Error::NotInGradedPiece);
                }
            }
            Base::AbstractCurve { .. } => {
                return Err(Error::Unsupported("ring elements on an abstract curve"))
            }
        }
        Ok(HomogeneousElement { section, degree })
    }

    /// Ring multiplication (f·chi^m)(g·chi^m') = fg·chi^(m+m'). Membership of
    /// the product in its graded piece follows from concavity of the support
    /// functions; a failure indicates an internal error.
    pub fn multiply(
        &self,
        a: &HomogeneousElement,
        b: &HomogeneousElement,
    ) -> Result<HomogeneousElement> {
        let degree = add_vec(&a.degree, &b.degree);
        let section = a.section.mul(&b.section);
        self.element(section, degree).map_err(|e| match e {
            Error::NotInGradedPiece => Error::MembershipViolation,
            other => other,
        })
    }

    /// Properness check. On affine bases both conditions hold by convention.
    /// On projective bases the evaluation map is linear on every cell of the
    /// common refinement of the coefficient quasifans, so semiampleness is
    /// decided on cell generators and relative-interior samples, and bigness
    /// on the relative interior of the weight cone is decided by the
    /// zero-set rule: deg D(m) must be nonnegative on the weight cone with
    /// zero set contained in the boundary.
    pub fn is_proper(&self) -> ProperReport {
        if self.base.is_affine() {
            return ProperReport { proper: TriState::True, q_cartier: true, witnesses: Vec::new() };
        }
        let cells = self.refinement_cells();
        let mut witnesses: Vec<ProperWitness> = Vec::new();
        let mut any_false = false;
        let mut any_unknown = false;

        // (i) semiampleness of D(m) for every lattice m in the weight cone.
        let mut sample_points: BTreeSet<Vec<Int>> = BTreeSet::new();
        for (cone, _) in &cells {
            for g in cone.generator_vectors() {
                sample_points.insert(g.clone());
            }
            sample_points.insert(cone.relint_sample());
        }
        for m in &sample_points {
            let divisor = self.evaluate_raw(&int_to_rat_vec(m));
            match is_semiample(&divisor) {
                TriState::True => {}
                verdict => {
                    if verdict == TriState::False {
                        any_false = true;
                    } else {
                        any_unknown = true;
                    }
                    witnesses.push(ProperWitness {
                        test: "semiample",
                        point: m.clone(),
                        verdict,
                    });
                }
            }
        }

        // (ii) bigness on the relative interior of the weight cone.
        for (cone, functional) in &cells {
            if let Some(point) = self.big_failure_on_cell(cone, functional) {
                any_false = true;
                witnesses.push(ProperWitness { test: "big", point, verdict: TriState::False });
            }
        }

        let proper = if any_false {
            TriState::False
        } else if any_unknown {
            TriState::Unknown
        } else {
            TriState::True
        };
        ProperReport { proper, q_cartier: true, witnesses }
    }

    /// Full-dimensional cells of the common refinement of all coefficient
    /// quasifans, each with the vector representing the linear functional
    /// m -> deg D(m) on that cell.
    fn refinement_cells(&self) -> Vec<(Cone, Vec<Rat>)> {
        let mut cells: Vec<(Cone, Vec<Rat>)> =
            vec![(self.tail_dual.clone(), vec![Rat::zero(); self.rank()])];
        for delta in self.coeffs.values() {
            let mut refined = Vec::new();
            for piece in delta.linear_pieces() {
                for (cone, functional) in &cells {
                    let mut ineqs = cone.inequality_vectors().to_vec();
                    ineqs.extend_from_slice(piece.cone.inequality_vectors());
                    let cell = Cone::from_inequalities_raw(Space::M, self.rank(), &ineqs);
                    if cell.is_full_dimensional() {
                        refined.push((cell, add_vec_rat(functional, &piece.vertex)));
                    }
                }
            }
            cells = refined;
        }
        cells
    }

    /// Finds a lattice point of relint(weight cone) where the linear degree
    /// functional of the cell fails to be positive, if one exists.
    fn big_failure_on_cell(&self, cone: &Cone, functional: &[Rat]) -> Option<Vec<Int>> {
        let value = |m: &[Int]| dot_int_rat(m, &int_to_rat_vec_ref(functional));
        let sample = cone.relint_sample();
        let sample_value = value(&sample);
        if !sample_value.is_positive() {
            // Covers both a negative interior value and a cell on which the
            // functional vanishes identically.
            return Some(sample);
        }
        for g in cone.generator_vectors() {
            let gv = value(g);
            if gv.is_negative() {
                // Positive combination of g and the sample on which the
                // functional vanishes; it lies in the relative interior.
                let witness: Vec<Rat> = g
                    .iter()
                    .zip(&sample)
                    .map(|(gi, si)| {
                        Rat::from_integer(gi.clone()) * &sample_value
                            - Rat::from_integer(si.clone()) * &gv
                    })
                    .collect();
                return Some(primitive_from_rat(&witness));
            }
        }
        // Nonnegative on the cell with interior positivity: the zero set is
        // cell ∩ functional_perp; it must avoid the interior of the weight
        // cone.
        let normal = primitive_from_rat(functional);
        let mut ineqs = cone.inequality_vectors().to_vec();
        ineqs.push(normal.clone());
        ineqs.push(crate::arith::neg_vec(&normal));
        let zero_set = Cone::from_inequalities_raw(Space::M, self.rank(), &ineqs);
        let z = zero_set.relint_sample();
        if self.tail_dual.in_relint_raw(&int_to_rat_vec(&z)) {
            return Some(z);
        }
        None
    }

    /// Homogeneous generator candidates of the section ring up to the given
    /// degree bound: Hilbert-basis degrees and all degrees of max-norm at
    /// most `bound`, with basis elements not generated by products of lower
    /// elements. Complete up to the bound, not certified globally.
    pub fn generator_candidates(&self, bound: u32) -> Result<GeneratorReport> {
        if !self.base.has_sections() {
            return Err(Error::Unsupported("generator extraction on an abstract curve"));
        }
        if !self.tail.is_full_dimensional() {
            return Err(Error::Unsupported(
                "generator extraction needs a full-dimensional tail cone (positive grading)",
            ));
        }
        let grading = self.tail.relint_sample();
        let mut degrees: BTreeSet<Vec<Int>> = self
            .tail_dual
            .lattice_points(
                &RationalVector::new(Space::M, vec![Rat::zero(); self.rank()]),
                bound,
            )?
            .into_iter()
            .map(|v| v.coords)
            .collect();
        for h in self.tail_dual.hilbert_basis()? {
            degrees.insert(h.coords);
        }
        degrees.remove(&vec![Int::zero(); self.rank()]);
        let mut ordered: Vec<Vec<Int>> = degrees.into_iter().collect();
        ordered.sort_by_key(|m| (dot_int(&grading, m), m.clone()));

        let generators = match self.base {
            Base::Point | Base::ProjLine => self.generators_finite(&ordered)?,
            Base::AffineLine => self.generators_affine_line(&ordered)?,
            Base::AbstractCurve { .. } => unreachable!("rejected above"),
        };
        Ok(GeneratorReport { generators, complete_up_to: bound })
    }

    /// Coordinates of a member section of A_m in the canonical basis
    /// t^j * gen of the graded piece.
    fn coords_in_piece(&self, section: &RationalSection, m: &[Int]) -> Vec<Rat> {
        let divisor = self.evaluate_raw(&int_to_rat_vec(m));
        let basis = section_basis(&divisor).expect("sections available");
        let generator = basis.first().expect("member of a nonzero piece");
        let q = section.div(generator).expect("nonzero generator");
        assert!(q.den().is_constant(), "section outside its graded piece");
        let scale = q.den().constant_value().expect("constant");
        let mut coords: Vec<Rat> = q.num().coeffs().iter().map(|c| c / &scale).collect();
        coords.resize(basis.len(), Rat::zero());
        coords
    }

    fn generators_finite(&self, degrees: &[Vec<Int>]) -> Result<Vec<HomogeneousElement>> {
        let mut gens: Vec<HomogeneousElement> = Vec::new();
        let mut spans: BTreeMap<Vec<Int>, Vec<RationalSection>> = BTreeMap::new();
        for m in degrees {
            let mut echelon = Echelon::new();
            let mut span: Vec<RationalSection> = Vec::new();
            // Memo entries live strictly below the current height, so they
            // stay valid as generators are added at this degree.
            for product in self.generated_sections(m, &gens, &mut spans) {
                if echelon.insert(self.coords_in_piece(&product, m)) {
                    span.push(product);
                }
            }
            let divisor = self.evaluate_raw(&int_to_rat_vec(m));
            for candidate in section_basis(&divisor)? {
                if echelon.insert(self.coords_in_piece(&candidate, m)) {
                    span.push(candidate.clone());
                    gens.push(HomogeneousElement { section: candidate, degree: m.clone() });
                }
            }
            spans.insert(m.clone(), span);
        }
        Ok(gens)
    }

    /// All products of current generators landing in degree m (a spanning
    /// set of the generated subspace), computed recursively over lower
    /// degrees.
    fn generated_sections(
        &self,
        m: &[Int],
        gens: &[HomogeneousElement],
        memo: &mut BTreeMap<Vec<Int>, Vec<RationalSection>>,
    ) -> Vec<RationalSection> {
        if is_zero_vec(m) {
            return vec![RationalSection::one()];
        }
        if let Some(cached) = memo.get(m) {
            return cached.clone();
        }
        let mut echelon = Echelon::new();
        let mut out: Vec<RationalSection> = Vec::new();
        for g in gens {
            if is_zero_vec(&g.degree) {
                continue;
            }
            let rest: Vec<Int> = m.iter().zip(&g.degree).map(|(a, b)| a - b).collect();
            if !self.tail_dual.contains_int_raw(&rest) {
                continue;
            }
            for s in self.generated_sections(&rest, gens, memo) {
                let product = g.section.mul(&s);
                if echelon.insert(self.coords_in_piece(&product, m)) {
                    out.push(product);
                }
            }
        }
        memo.insert(m.to_vec(), out.clone());
        out
    }

    fn generators_affine_line(&self, degrees: &[Vec<Int>]) -> Result<Vec<HomogeneousElement>> {
        // The coordinate of the base is itself a degree-zero generator; the
        // graded pieces are rank-1 free modules over k[t].
        let zero_degree = vec![Int::zero(); self.rank()];
        let mut gens: Vec<HomogeneousElement> =
            vec![HomogeneousElement { section: RationalSection::t(), degree: zero_degree }];
        let mut memo: BTreeMap<Vec<Int>, Option<RationalSection>> = BTreeMap::new();
        for m in degrees {
            let reached = self.generated_module(m, &gens, &mut memo);
            let divisor = self.evaluate_raw(&int_to_rat_vec(m));
            let target = section_basis(&divisor)?.remove(0);
            let covered = match &reached {
                None => false,
                Some(d) => {
                    let q = d.div(&target).expect("nonzero module generator");
                    q.is_constant() && !q.is_zero()
                }
            };
            if !covered {
                gens.push(HomogeneousElement { section: target.clone(), degree: m.clone() });
            }
            memo.insert(m.clone(), Some(target));
        }
        Ok(gens)
    }

    /// Generator of the k[t]-submodule of A_m reached by products of the
    /// current generators, if any (fractional-ideal sum = gcd).
    fn generated_module(
        &self,
        m: &[Int],
        gens: &[HomogeneousElement],
        memo: &mut BTreeMap<Vec<Int>, Option<RationalSection>>,
    ) -> Option<RationalSection> {
        if is_zero_vec(m) {
            return Some(RationalSection::one());
        }
        if let Some(cached) = memo.get(m) {
            return cached.clone();
        }
        let mut acc: Option<RationalSection> = None;
        for g in gens {
            if is_zero_vec(&g.degree) {
                continue;
            }
            let rest: Vec<Int> = m.iter().zip(&g.degree).map(|(a, b)| a - b).collect();
            if !self.tail_dual.contains_int_raw(&rest) {
                continue;
            }
            if let Some(h) = self.generated_module(&rest, gens, memo) {
                let product = g.section.mul(&h);
                acc = Some(match acc {
                    None => product,
                    Some(prev) => module_gcd(&prev, &product),
                });
            }
        }
        memo.insert(m.to_vec(), acc.clone());
        acc
    }
}

fn int_to_rat_vec_ref(v: &[Rat]) -> Vec<Rat> {
    v.to_vec()
}

/// Generator of h1·k[t] + h2·k[t]: minimum order at every finite point.
fn module_gcd(h1: &RationalSection, h2: &RationalSection) -> RationalSection {
    let p1q2 = h1.num() * h2.den();
    let p2q1 = h2.num() * h1.den();
    let g = p1q2.gcd(&p2q1);
    RationalSection::new(g, h1.den() * h2.den()).expect("nonzero denominator")
}

/// Row-echelon accumulator for exact linear independence tests.
struct Echelon {
    rows: Vec<Vec<Rat>>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces the vector against the stored rows; if a nonzero remainder
    /// survives it is stored and the insert reports independence.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for row in &self.rows {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero rows");
            if !v[pivot].is_zero() {
                let f = &v[pivot] / &row[pivot];
                for (vi, ri) in v.iter_mut().zip(row) {
                    let d = ri * &f;
                    *vi = &*vi - d;
                }
            }
        }
        if v.iter().all(Zero::is_zero) {
            false
        } else {
            self.rows.push(v);
            true
        }
    }
}

/// A nonzero homogeneous element f·chi^m of the section ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousElement {
    pub section: RationalSection,
    pub degree: Vec<Int>,
}

/// A possibly-zero homogeneous ring element; the zero element carries no
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Zero,
    Term(HomogeneousElement),
}

impl Element {
    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Zero)
    }

    pub fn term(&self) -> Option<&HomogeneousElement> {
        match self {
            Element::Zero => None,
            Element::Term(t) => Some(t),
        }
    }
}

/// Graded piece report: degree, dimension, and explicit basis where the base
/// supports section arithmetic (for the affine line, the basis list holds
/// the rank-1 module generator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: Vec<Int>,
    pub dim: DimReport,
    pub basis: Option<Vec<RationalSection>>,
}

/// Outcome of a properness sub-test at a specific weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperWitness {
    pub test: &'static str,
    pub point: Vec<Int>,
    pub verdict: TriState,
}

/// Properness report. Q-Cartier holds vacuously on the supported smooth
/// bases and is reported as such.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperReport {
    pub proper: TriState,
    pub q_cartier: bool,
    pub witnesses: Vec<ProperWitness>,
}

/// Bounded homogeneous generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    pub generators: Vec<HomogeneousElement>,
    pub complete_up_to: u32,
}

/// Convenience: is_big of the evaluation (used by example builders).
pub fn divisor_is_big(d: &QDivisor) -> bool {
    is_big(d)
}

/// The standard first-quadrant example divisor of rank 2 over the projective
/// line: D = ((1,1) + sigma)·[inf].
#[cfg(test)]
pub(crate) fn s4_divisor() -> PolyhedralDivisor {
    use crate::arith::{int, rat_int};
    let sigma =
        Cone::from_generators(Space::N, 2, &[vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
    let delta =
        TailedPolyhedron::point(sigma.clone(), vec![rat_int(1), rat_int(1)]).unwrap();
    PolyhedralDivisor::new(Base::ProjLine, sigma, vec![(DivisorPoint::Infinity, delta)]).unwrap()
}

/// Rank-1 divisor with zero coefficients over the affine line: the graded
/// ring is k[t][chi] = k[x, y].
#[cfg(test)]
pub(crate) fn example1_divisor() -> PolyhedralDivisor {
    use crate::arith::int;
    let sigma = Cone::from_generators(Space::N, 1, &[vec![int(1)]]).unwrap();
    PolyhedralDivisor::new(Base::AffineLine, sigma, vec![]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat_int};

    fn mv(coords: &[i64]) -> LatticeVector {
        LatticeVector::new(Space::M, coords.iter().map(|&x| int(x)).collect())
    }

    fn quadrant() -> Cone {
        Cone::from_generators(Space::N, 2, &[vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap()
    }

    #[test]
    fn evaluation_of_standard_example() {
        let dd = s4_divisor();
        let d = dd.evaluate(&mv(&[2, 1])).unwrap();
        assert_eq!(d.coeff(&DivisorPoint::Infinity), rat_int(3));
        assert!(dd.evaluate(&mv(&[0, 0])).unwrap().is_zero());
        assert_eq!(dd.evaluate(&mv(&[-1, 0])), Err(Error::OutsideDualCone));
    }

    #[test]
    fn evaluation_with_negative_support_values() {
        let sigma = quadrant();
        let delta = TailedPolyhedron::new(
            sigma.clone(),
            vec![vec![rat_int(0), rat_int(0)], vec![rat_int(1), rat_int(-1)]],
        )
        .unwrap();
        let dd = PolyhedralDivisor::new(
            Base::ProjLine,
            sigma,
            vec![(DivisorPoint::Finite(rat_int(0)), delta)],
        )
        .unwrap();
        let d = dd.evaluate(&mv(&[1, 2])).unwrap();
        assert_eq!(d.coeff(&DivisorPoint::Finite(rat_int(0))), rat_int(-1));
    }

    #[test]
    fn tail_only_coefficients_are_dropped() {
        let sigma = quadrant();
        let delta = TailedPolyhedron::tail_only(sigma.clone()).unwrap();
        let dd = PolyhedralDivisor::new(
            Base::ProjLine,
            sigma,
            vec![(DivisorPoint::Infinity, delta)],
        )
        .unwrap();
        assert!(dd.coeffs().is_empty());
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(s4_divisor().dimension(), 3);
        assert_eq!(example1_divisor().dimension(), 2);
        let toric =
            PolyhedralDivisor::new(Base::Point, quadrant(), vec![]).unwrap();
        assert_eq!(toric.dimension(), 2);
    }

    #[test]
    fn graded_pieces_of_standard_example() {
        let dd = s4_divisor();
        let piece = dd.graded_piece(&mv(&[1, 0])).unwrap();
        assert_eq!(piece.dim, DimReport::Finite(2));
        let names: Vec<String> =
            piece.basis.unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["1", "t"]);

        let origin = dd.graded_piece(&mv(&[0, 0])).unwrap();
        assert_eq!(origin.dim, DimReport::Finite(1));
    }

    #[test]
    fn graded_piece_on_affine_line_is_free() {
        let dd = example1_divisor();
        let piece = dd.graded_piece(&LatticeVector::new(Space::M, vec![int(5)])).unwrap();
        assert_eq!(piece.dim, DimReport::InfiniteRankOne);
        assert_eq!(piece.basis.unwrap()[0].to_string(), "1");
    }

    #[test]
    fn multiplication_respects_membership() {
        let dd = s4_divisor();
        let a = dd.element(RationalSection::t(), vec![int(1), int(0)]).unwrap();
        let b = dd.element(RationalSection::one(), vec![int(0), int(1)]).unwrap();
        let ab = dd.multiply(&a, &b).unwrap();
        assert_eq!(ab.degree, vec![int(1), int(1)]);
        assert_eq!(ab.section.to_string(), "t");

        let sq = dd.multiply(&a, &a).unwrap();
        assert_eq!(sq.section.to_string(), "t^2");

        // Identity.
        let one = dd.element(RationalSection::one(), vec![int(0), int(0)]).unwrap();
        assert_eq!(dd.multiply(&a, &one).unwrap(), a);

        // t^2 has a double pole at infinity, not allowed in degree (1,0).
        assert_eq!(
            dd.element(RationalSection::parse("t^2").unwrap(), vec![int(1), int(0)]),
            Err(Error::NotInGradedPiece)
        );
    }

    #[test]
    fn properness_of_standard_example() {
        let report = s4_divisor().is_proper();
        assert_eq!(report.proper, TriState::True);
        assert!(report.q_cartier);
        assert!(report.witnesses.is_empty());
    }

    #[test]
    fn properness_on_affine_bases_is_automatic() {
        assert_eq!(example1_divisor().is_proper().proper, TriState::True);
        let toric = PolyhedralDivisor::new(Base::Point, quadrant(), vec![]).unwrap();
        assert_eq!(toric.is_proper().proper, TriState::True);
    }

    #[test]
    fn zero_evaluation_family_is_not_proper() {
        // All coefficients equal to sigma: D(m) = 0 for every m, never big
        // over a projective base.
        let dd = PolyhedralDivisor::new(Base::ProjLine, quadrant(), vec![]).unwrap();
        let report = dd.is_proper();
        assert_eq!(report.proper, TriState::False);
        assert!(report.witnesses.iter().any(|w| w.test == "big"));
    }

    #[test]
    fn genus_one_degree_zero_is_unknown() {
        // deg D(m) = m2 is big on the interior, but D((1,0)) = P - Q is a
        // nonzero divisor of degree zero: semiample is undecidable at genus 1.
        let sigma = quadrant();
        let plus = TailedPolyhedron::point(sigma.clone(), vec![rat_int(1), rat_int(0)]).unwrap();
        let minus = TailedPolyhedron::point(sigma.clone(), vec![rat_int(-1), rat_int(1)]).unwrap();
        let dd = PolyhedralDivisor::new(
            Base::AbstractCurve { genus: 1 },
            sigma,
            vec![
                (DivisorPoint::Label("P".into()), plus),
                (DivisorPoint::Label("Q".into()), minus),
            ],
        )
        .unwrap();
        let report = dd.is_proper();
        assert_eq!(report.proper, TriState::Unknown);
        assert!(report.witnesses.iter().all(|w| w.verdict == TriState::Unknown));

        // A family with deg D identically zero fails bigness outright.
        let zero_deg = PolyhedralDivisor::new(
            Base::AbstractCurve { genus: 1 },
            quadrant(),
            vec![
                (
                    DivisorPoint::Label("P".into()),
                    TailedPolyhedron::point(quadrant(), vec![rat_int(1), rat_int(0)]).unwrap(),
                ),
                (
                    DivisorPoint::Label("Q".into()),
                    TailedPolyhedron::point(quadrant(), vec![rat_int(-1), rat_int(0)]).unwrap(),
                ),
            ],
        )
        .unwrap();
        assert_eq!(zero_deg.is_proper().proper, TriState::False);
    }

    #[test]
    fn generators_of_toric_quadrant() {
        let dd = PolyhedralDivisor::new(Base::Point, quadrant(), vec![]).unwrap();
        let report = dd.generator_candidates(2).unwrap();
        let degrees: Vec<Vec<Int>> =
            report.generators.iter().map(|g| g.degree.clone()).collect();
        assert_eq!(degrees, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn generators_of_standard_example() {
        let dd = s4_divisor();
        let report = dd.generator_candidates(1).unwrap();
        let summary: Vec<(Vec<Int>, String)> = report
            .generators
            .iter()
            .map(|g| (g.degree.clone(), g.section.to_string()))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![int(0), int(1)], "1".to_string()),
                (vec![int(0), int(1)], "t".to_string()),
                (vec![int(1), int(0)], "1".to_string()),
                (vec![int(1), int(0)], "t".to_string()),
            ]
        );
        assert_eq!(report.complete_up_to, 1);
    }

    #[test]
    fn generators_of_affine_line_family() {
        let dd = example1_divisor();
        let report = dd.generator_candidates(3).unwrap();
        let summary: Vec<(Vec<Int>, String)> = report
            .generators
            .iter()
            .map(|g| (g.degree.clone(), g.section.to_string()))
            .collect();
        assert_eq!(
            summary,
            vec![(vec![int(0)], "t".to_string()), (vec![int(1)], "1".to_string())]
        );
    }
}
