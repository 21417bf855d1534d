//! Fiber-type Makar-Limanov invariant, the fraction-field lower bound, and
//! the trivial-invariant example family.
//!
//! The fiber-type invariant is the intersection of the kernels of all
//! homogeneous fiber-type locally nilpotent derivations: a graded subring
//! whose weight monoid is the weight cone intersected with the dual faces of
//! all qualifying rays. It is trivial exactly when that monoid is the origin
//! and the degree-zero part is the ground field.

use num::{One, Zero};

use crate::arith::{neg_vec, rat_int, Int, Rat};
use crate::cone::Cone;
use crate::curve::{is_big, Base, DivisorPoint, QDivisor, TriState};
use crate::divisor::{GeneratorReport, PolyhedralDivisor};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector, Space};
use crate::lnd::{exists_fiber_lnd, list_equivalence_classes, make_lnd, ClassReport, FiberLnd, RayContext};
use crate::polyhedron::TailedPolyhedron;
use crate::section::RationalSection;

/// Description of the degree-zero part A_0 of the section ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeZeroPart {
    /// The ground field k (projective bases and the point).
    GroundField,
    /// The polynomial ring k[t] (affine-line base).
    PolynomialRing,
}

impl DegreeZeroPart {
    pub fn of(base: Base) -> Self {
        match base {
            Base::AffineLine => DegreeZeroPart::PolynomialRing,
            _ => DegreeZeroPart::GroundField,
        }
    }

    pub fn is_ground_field(&self) -> bool {
        matches!(self, DegreeZeroPart::GroundField)
    }

    pub fn describe(&self) -> &'static str {
        match self {
            DegreeZeroPart::GroundField => "k",
            DegreeZeroPart::PolynomialRing => "k[t]",
        }
    }
}

/// Report on the fiber-type Makar-Limanov invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlReport {
    /// Rays whose equivalence class of derivations is nonempty.
    pub qualifying_rays: Vec<Vec<Int>>,
    pub classes: Vec<ClassReport>,
    /// omega = weight cone ∩ intersection of the dual faces of the
    /// qualifying rays: the weight monoid of the invariant subring.
    pub weight_monoid: Cone,
    /// Lattice generators of the monoid: the Hilbert basis when omega is
    /// pointed, otherwise the canonical cone generators.
    pub monoid_generators: Vec<Vec<Int>>,
    pub degree_zero: DegreeZeroPart,
    /// Trivial exactly when the monoid is the origin and A_0 = k.
    pub trivial: TriState,
    /// Bounded ring generators of the invariant subring, when requested.
    pub ring_generators: Option<GeneratorReport>,
    /// The full and homogeneous invariants need horizontal-type derivations,
    /// which this machinery does not classify.
    pub ml_note: &'static str,
}

pub const ML_NOTE: &str = "ML and ML_h are not computable here (they require horizontal-type \
     derivations); the inclusions ML ⊆ ML_h ⊆ ML_fib bound them from above";

/// Weight monoid of the intersection of all fiber-type kernels, with
/// triviality verdict. `bound` limits the witness scan and the optional
/// generator extraction.
pub fn ml_fib(dd: &PolyhedralDivisor, bound: u32) -> Result<MlReport> {
    ml_fib_with(dd, bound, None)
}

/// As `ml_fib`, additionally listing ring generators of the invariant
/// subring up to `generator_bound`.
pub fn ml_fib_with(
    dd: &PolyhedralDivisor,
    bound: u32,
    generator_bound: Option<u32>,
) -> Result<MlReport> {
    let classes = list_equivalence_classes(dd, bound)?;
    let qualifying: Vec<Vec<Int>> = classes
        .iter()
        .filter(|c| c.exists == TriState::True)
        .map(|c| c.ray.clone())
        .collect();
    let any_unknown = classes.iter().any(|c| c.exists == TriState::Unknown);

    // omega = weight cone ∩ ⋂ rho_perp over qualifying rays.
    let mut ineqs = dd.weight_cone().inequality_vectors().to_vec();
    for ray in &qualifying {
        ineqs.push(ray.clone());
        ineqs.push(neg_vec(ray));
    }
    let weight_monoid = Cone::from_inequalities(Space::M, dd.rank(), &ineqs)?;
    let monoid_generators = if weight_monoid.is_pointed() {
        weight_monoid
            .hilbert_basis()?
            .into_iter()
            .map(|v| v.coords)
            .collect()
    } else {
        weight_monoid.generator_vectors().to_vec()
    };

    let degree_zero = DegreeZeroPart::of(dd.base());
    let monoid_is_origin = weight_monoid.dim() == 0;
    let trivial = if monoid_is_origin && degree_zero.is_ground_field() {
        // Extra derivations can only shrink the invariant further.
        TriState::True
    } else if any_unknown {
        TriState::Unknown
    } else {
        TriState::False
    };

    let ring_generators = match generator_bound {
        None => None,
        Some(b) => {
            let report = dd.generator_candidates(b)?;
            let generators = report
                .generators
                .into_iter()
                .filter(|g| {
                    weight_monoid
                        .contains_lattice(&LatticeVector::new(Space::M, g.degree.clone()))
                        .unwrap_or(false)
                })
                .collect();
            Some(GeneratorReport { generators, complete_up_to: b })
        }
    };

    Ok(MlReport {
        qualifying_rays: qualifying,
        classes,
        weight_monoid,
        monoid_generators,
        degree_zero,
        trivial,
        ring_generators,
        ml_note: ML_NOTE,
    })
}

/// Lower bound on the fiber-type fraction-field invariant: the function
/// field of the base always embeds in the fraction field of every
/// fiber-type kernel, and the graded subring on the same weight monoid as
/// the Makar-Limanov report contributes its fraction field as well. The
/// report never claims equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmlReport {
    pub contains_base_function_field: bool,
    pub base_function_field: String,
    pub reason: &'static str,
    pub lower_bound_monoid: Cone,
    pub monoid_generators: Vec<Vec<Int>>,
}

pub const FML_REASON: &str = "fiber-type derivations vanish on the base function field, so it \
     embeds in the fraction field of every fiber-type kernel";

pub fn fml_fib_lower_bound(dd: &PolyhedralDivisor, bound: u32) -> Result<FmlReport> {
    let ml = ml_fib(dd, bound)?;
    Ok(FmlReport {
        contains_base_function_field: true,
        base_function_field: dd.base().function_field(),
        reason: FML_REASON,
        lower_bound_monoid: ml.weight_monoid,
        monoid_generators: ml.monoid_generators,
    })
}

/// Builds the divisor (p + sigma)·H for a full-dimensional pointed cone
/// sigma, an interior lattice point p, and an effective integral divisor H
/// that is big on a projective base: the coefficient at a point of H with
/// multiplicity c is c·p + sigma, so the evaluation at m is <p, m>·H.
/// The result is verified proper with trivial fiber-type invariant.
pub fn build_trivial_ml_example(
    base: Base,
    h: &QDivisor,
    sigma: &Cone,
    p: &LatticeVector,
) -> Result<PolyhedralDivisor> {
    if !base.is_projective() || base == Base::Point {
        return Err(Error::NotProjective);
    }
    if h.base != base {
        return Err(Error::InvalidInput("H lives on a different base".into()));
    }
    if sigma.space() != Space::N || !sigma.is_pointed() || !sigma.is_full_dimensional() {
        return Err(Error::NotInteriorPoint);
    }
    let p_rat = RationalVector::new(
        Space::N,
        p.coords.iter().map(|x| Rat::from_integer(x.clone())).collect(),
    );
    if p.space != Space::N || !sigma.in_relint(&p_rat)? {
        return Err(Error::NotInteriorPoint);
    }
    if !h.is_effective_integral() {
        return Err(Error::InvalidInput(
            "H must be an effective integral divisor (polyhedral coefficients scale by it)".into(),
        ));
    }
    if !is_big(h) {
        return Err(Error::NotBigDivisor);
    }
    let mut coeffs = Vec::new();
    for (point, c) in h.coeffs() {
        let scaled: Vec<Rat> = p.coords.iter().map(|x| Rat::from_integer(x.clone()) * c).collect();
        coeffs.push((point.clone(), TailedPolyhedron::point(sigma.clone(), scaled)?));
    }
    let dd = PolyhedralDivisor::new(base, sigma.clone(), coeffs)?;
    if dd.is_proper().proper != TriState::True {
        return Err(Error::VerificationFailed("constructed divisor is not proper"));
    }
    if ml_fib(&dd, 2)?.trivial != TriState::True {
        return Err(Error::VerificationFailed(
            "constructed divisor does not have trivial fiber-type invariant",
        ));
    }
    Ok(dd)
}

/// For a divisor in the standard form of the trivial-invariant family over
/// the first orthant with p the all-ones vector, builds the n(n-1)
/// derivations with degree -mu_i + mu_j and section 1, each validated.
pub fn standard_example_derivations(dd: &PolyhedralDivisor) -> Result<Vec<FiberLnd>> {
    let n = dd.rank();
    let unit = |i: usize| -> Vec<Int> {
        (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()
    };
    let mut orthant: Vec<Vec<Int>> = (0..n).map(unit).collect();
    orthant.sort();
    if dd.tail().generator_vectors() != orthant.as_slice() {
        return Err(Error::NotStandardForm);
    }
    if !dd.base().is_projective() || dd.base() == Base::Point || dd.coeffs().is_empty() {
        return Err(Error::NotStandardForm);
    }
    for delta in dd.coeffs().values() {
        let vertices = delta.vertices();
        if vertices.len() != 1 {
            return Err(Error::NotStandardForm);
        }
        let v = &vertices[0];
        let c = v[0].clone();
        if c <= Rat::zero() || !c.denom().is_one() || v.iter().any(|x| *x != c) {
            return Err(Error::NotStandardForm);
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        let ctx = RayContext::new(dd.tail(), &LatticeVector::new(Space::N, unit(i)))?;
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut e = vec![Int::zero(); n];
            e[i] = -Int::one();
            e[j] = Int::one();
            out.push(make_lnd(dd, &ctx, &e, RationalSection::one())?);
        }
    }
    Ok(out)
}

/// Convenience for the standard family: H = c·[point].
pub fn prime_divisor(base: Base, point: DivisorPoint, multiplicity: i64) -> Result<QDivisor> {
    QDivisor::new(base, vec![(point, rat_int(multiplicity))])
}

/// True when exists_fiber_lnd holds for at least one ray (used by reports).
pub fn has_any_fiber_lnd(dd: &PolyhedralDivisor) -> Result<bool> {
    for ray in dd.tail().rays()? {
        let ctx = RayContext::new(dd.tail(), &ray)?;
        if exists_fiber_lnd(dd, &ctx) == TriState::True {
            return Ok(true);
        }
    }
    Ok(false)
}
