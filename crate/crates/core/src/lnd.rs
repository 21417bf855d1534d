//! Homogeneous locally nilpotent derivations of fiber type on the section
//! ring of a polyhedral divisor.
//!
//! For a ray rho of the tail cone with primitive generator rho0, the
//! admissible degree set is S_rho = { e : <e, rho0> = -1 } ∩ sigma1_dual,
//! where sigma1 is spanned by the remaining rays. A degree e in S_rho
//! determines the Q-divisor D_e = -sum_H g_H(e)·H built from the linear
//! piece of each coefficient's support function at the face tau dual to rho,
//! and the section space Phi_e = H^0(Y, O(-D_e)). Every pair of e in S_rho
//! and nonzero phi in Phi_e yields a derivation acting by
//! f·chi^m -> <m, rho0>·phi·f·chi^(m+e), with kernel the part graded by
//! tau ∩ M. Equivalence classes (equal kernels) correspond to the rays on
//! which the evaluation is big over the relative interior of tau.

use num::{One, Signed, Zero};

use crate::arith::{add_vec, dot_int, dot_int_rat, int_to_rat_vec, max_norm, Int, Rat};
use crate::cone::{Cone, LatticeBox};
use crate::curve::{h0, section_basis, section_in, Base, DimReport, QDivisor, TriState};
use crate::divisor::{Element, GeneratorReport, HomogeneousElement, PolyhedralDivisor};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, Space};
use crate::section::RationalSection;

/// Everything attached to one ray of the tail cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayContext {
    sigma: Cone,
    rho0: Vec<Int>,
    mu: Vec<Int>,
    tau: Cone,
    sigma1_dual: Cone,
}

impl RayContext {
    /// Builds the context for a ray of the (pointed) tail cone.
    pub fn new(sigma: &Cone, rho: &LatticeVector) -> Result<Self> {
        let rays = sigma.rays()?;
        let rho0 = crate::arith::primitive(&rho.coords);
        if rho.space != Space::N || !rays.iter().any(|r| r.coords == rho0) {
            return Err(Error::NotARay);
        }
        let tau = sigma.dual_face_of_ray(&LatticeVector::new(Space::N, rho0.clone()))?;
        let other_rays: Vec<Vec<Int>> = rays
            .iter()
            .filter(|r| r.coords != rho0)
            .map(|r| r.coords.clone())
            .collect();
        let sigma1 = Cone::from_generators_raw(Space::N, sigma.rank(), &other_rays);
        let sigma1_dual = sigma1.dual();
        let mu = smallest_copairing_one(&rho0);
        Ok(RayContext { sigma: sigma.clone(), rho0, mu, tau, sigma1_dual })
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    /// Primitive generator of the ray, in N.
    pub fn rho0(&self) -> &[Int] {
        &self.rho0
    }

    /// A lattice vector with <mu, rho0> = 1 (normal-form witness only; the
    /// degree set does not depend on the choice).
    pub fn mu(&self) -> &[Int] {
        &self.mu
    }

    /// The codimension-1 face of the weight cone dual to the ray.
    pub fn tau(&self) -> &Cone {
        &self.tau
    }

    pub fn sigma1_dual(&self) -> &Cone {
        &self.sigma1_dual
    }

    /// Membership in S_rho: <e, rho0> = -1 and e in sigma1_dual.
    pub fn s_rho_contains(&self, e: &[Int]) -> bool {
        if e.len() != self.rho0.len() {
            return false;
        }
        let pairing = dot_int(e, &self.rho0);
        pairing == -Int::one() && self.sigma1_dual.contains_int_raw(e)
    }

    /// All elements of S_rho with max-norm at most `bound`, in lexicographic
    /// order.
    pub fn s_rho_enumerate(&self, bound: u32) -> Vec<Vec<Int>> {
        let b = Int::from(bound);
        LatticeBox::new(self.rho0.len(), &b)
            .filter(|e| self.s_rho_contains(e))
            .collect()
    }
}

/// Minimum-norm, then lexicographically smallest mu with <mu, rho0> = 1.
fn smallest_copairing_one(rho0: &[Int]) -> Vec<Int> {
    let mut bound = Int::one();
    loop {
        let found = LatticeBox::new(rho0.len(), &bound).find(|mu| dot_int(mu, rho0).is_one());
        if let Some(mu) = found {
            return mu;
        }
        bound += 1;
        assert!(bound <= max_norm(rho0) + 1, "primitive vectors admit a copairing");
    }
}

/// The Q-divisor D_e = -sum_H g_H(e)·H, with g_H the linear piece of the
/// support function of the coefficient at H on the unique maximal cone
/// containing tau. When the tail cone is not full-dimensional, tau may fail
/// to lie in a single maximal cone; the coefficient is then the defining
/// maximum over all pieces (which the unique-piece formula shortcuts).
pub fn d_e(dd: &PolyhedralDivisor, ctx: &RayContext, e: &[Int]) -> Result<QDivisor> {
    if !ctx.s_rho_contains(e) {
        return Err(Error::NotInSRho);
    }
    let e_rat = int_to_rat_vec(e);
    let mut coeffs = Vec::new();
    for (point, delta) in dd.coeffs() {
        let value = match delta.piece_containing_face(ctx.tau()) {
            Ok(piece) => -piece.functional(&e_rat),
            Err(Error::FaceNotCovered) => max_over_pieces(delta, &e_rat),
            Err(other) => return Err(other),
        };
        coeffs.push((point.clone(), value));
    }
    QDivisor::new(dd.base(), coeffs)
}

fn max_over_pieces(delta: &crate::polyhedron::TailedPolyhedron, e_rat: &[Rat]) -> Rat {
    delta
        .linear_pieces()
        .iter()
        .map(|p| -p.functional(e_rat))
        .max()
        .expect("at least one piece")
}

/// Slow evaluation of D_e: coefficientwise max over all linear pieces of
/// -g_r(e). Agrees with `d_e` on S_rho by concavity; kept as the
/// independent route for cross-checking.
pub fn d_e_slow(dd: &PolyhedralDivisor, ctx: &RayContext, e: &[Int]) -> Result<QDivisor> {
    if !ctx.s_rho_contains(e) {
        return Err(Error::NotInSRho);
    }
    let e_rat = int_to_rat_vec(e);
    let mut coeffs = Vec::new();
    for (point, delta) in dd.coeffs() {
        let value: Rat = delta
            .linear_pieces()
            .iter()
            .map(|p| -p.functional(&e_rat))
            .max()
            .expect("at least one piece");
        coeffs.push((point.clone(), value));
    }
    QDivisor::new(dd.base(), coeffs)
}

/// Report on the section space Phi_e = H^0(Y, O(-D_e)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpace {
    pub e: Vec<Int>,
    pub divisor: QDivisor,
    pub dim: DimReport,
    pub basis: Option<Vec<RationalSection>>,
}

pub fn phi_e(dd: &PolyhedralDivisor, ctx: &RayContext, e: &[Int]) -> Result<PhiSpace> {
    let divisor = d_e(dd, ctx, e)?;
    let neg = divisor.neg();
    let dim = h0(&neg);
    let basis = if dd.base().has_sections() {
        Some(section_basis(&neg)?)
    } else {
        None
    };
    Ok(PhiSpace { e: e.to_vec(), divisor, dim, basis })
}

/// Existence criterion for a fiber-type derivation along the ray: the
/// evaluation D(m) must be big for every lattice vector m in the relative
/// interior of tau. On affine bases this always holds. On projective bases
/// the degree of the evaluation is piecewise linear on tau, so the test
/// refines tau by the coefficient quasifans and applies the zero-set rule
/// on each full-dimensional cell: the degree must be nonnegative with zero
/// set avoiding the relative interior of tau.
pub fn exists_fiber_lnd(dd: &PolyhedralDivisor, ctx: &RayContext) -> TriState {
    if dd.base().is_affine() {
        return TriState::True;
    }
    let tau = ctx.tau();
    let tau_dim = tau.dim();
    // Common refinement of tau by the linear pieces of every coefficient,
    // with the linear degree functional of each cell.
    let mut cells: Vec<(Cone, Vec<Rat>)> = vec![(tau.clone(), vec![Rat::zero(); dd.rank()])];
    for delta in dd.coeffs().values() {
        let mut refined = Vec::new();
        for piece in delta.linear_pieces() {
            for (cone, functional) in &cells {
                let Ok(cell) = cone.intersect(&piece.cone) else { continue };
                if cell.dim() == tau_dim {
                    refined.push((cell, crate::arith::add_vec_rat(functional, &piece.vertex)));
                }
            }
        }
        cells = refined;
    }
    for (cell, functional) in &cells {
        let value = |m: &[Int]| dot_int_rat(m, functional);
        // The sample lies in relint(cell) ⊆ relint(tau) since the cell has
        // full dimension in tau.
        if !value(&cell.relint_sample()).is_positive() {
            return TriState::False;
        }
        if cell.generator_vectors().iter().any(|g| value(g).is_negative()) {
            return TriState::False;
        }
        // Nonnegative on the cell, positive inside: the zero set must stay
        // in the relative boundary of tau.
        let normal = crate::arith::primitive_from_rat(functional);
        let mut ineqs = cell.inequality_vectors().to_vec();
        ineqs.push(normal.clone());
        ineqs.push(crate::arith::neg_vec(&normal));
        let zero_set = Cone::from_inequalities_raw(Space::M, dd.rank(), &ineqs);
        let z = zero_set.relint_sample();
        if tau.in_relint_raw(&int_to_rat_vec(&z)) {
            return TriState::False;
        }
    }
    TriState::True
}

/// A validated homogeneous locally nilpotent derivation of fiber type:
/// the triple of a ray, a degree e in S_rho, and a nonzero section phi in
/// Phi_e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberLnd {
    dd: PolyhedralDivisor,
    ctx: RayContext,
    e: Vec<Int>,
    phi: RationalSection,
}

/// Constructs the derivation, verifying e in S_rho, phi nonzero, and
/// phi in Phi_e. Refused on bases without section arithmetic.
pub fn make_lnd(
    dd: &PolyhedralDivisor,
    ctx: &RayContext,
    e: &[Int],
    phi: RationalSection,
) -> Result<FiberLnd> {
    if !ctx.s_rho_contains(e) {
        return Err(Error::NotInSRho);
    }
    if phi.is_zero() {
        return Err(Error::ZeroPhi);
    }
    if !dd.base().has_sections() {
        return Err(Error::Unsupported("derivation construction on an abstract curve"));
    }
    let divisor = d_e(dd, ctx, e)?;
    let membership = match dd.base() {
        Base::Point => phi.is_constant(),
        _ => section_in(&phi, &divisor.neg())?,
    };
    if !membership {
        return Err(Error::PhiNotInPhiE);
    }
    Ok(FiberLnd { dd: dd.clone(), ctx: ctx.clone(), e: e.to_vec(), phi })
}

impl FiberLnd {
    pub fn divisor(&self) -> &PolyhedralDivisor {
        &self.dd
    }

    pub fn context(&self) -> &RayContext {
        &self.ctx
    }

    /// The degree of the derivation.
    pub fn degree(&self) -> &[Int] {
        &self.e
    }

    pub fn phi(&self) -> &RationalSection {
        &self.phi
    }

    /// Applies the derivation: f·chi^m -> m0·phi·f·chi^(m+e) with
    /// m0 = <m, rho0>; zero exactly when the degree lies in tau.
    pub fn apply(&self, elt: &HomogeneousElement) -> Result<Element> {
        // Validate the element against this derivation's divisor.
        self.dd
            .element(elt.section.clone(), elt.degree.clone())
            .map_err(|_| Error::ContextMismatch)?;
        match self.apply_validated(elt)? {
            Element::Zero => Ok(Element::Zero),
            Element::Term(t) => {
                let term = self
                    .dd
                    .element(t.section, t.degree)
                    .map_err(|_| Error::MembershipViolation)?;
                Ok(Element::Term(term))
            }
        }
    }

    /// Application step for elements already known to be members (outputs of
    /// previous applications). The image lies in its graded piece by the
    /// section-space lemma; `apply` re-verifies that for single steps, the
    /// iterate helpers do not re-prove it at every link of a chain.
    fn apply_validated(&self, elt: &HomogeneousElement) -> Result<Element> {
        let m0 = dot_int(&elt.degree, &self.ctx.rho0);
        if m0.is_zero() {
            return Ok(Element::Zero);
        }
        let section = self
            .phi
            .mul(&elt.section)
            .scale(&Rat::from_integer(m0));
        let degree = add_vec(&elt.degree, &self.e);
        Ok(Element::Term(HomogeneousElement { section, degree }))
    }

    pub fn apply_element(&self, elt: &Element) -> Result<Element> {
        match elt {
            Element::Zero => Ok(Element::Zero),
            Element::Term(t) => self.apply(t),
        }
    }

    /// Smallest n with the n-th iterate vanishing on the element; equals
    /// <m, rho0> + 1 for a nonzero element of degree m.
    pub fn nilpotency_order(&self, elt: &HomogeneousElement) -> Result<u32> {
        let mut current = self.apply(elt)?;
        let mut n = 1;
        while let Element::Term(t) = current {
            current = self.apply_validated(&t)?;
            n += 1;
        }
        Ok(n)
    }

    /// The exponential sum exp(t·d) applied to an element: the finite list
    /// of nonzero terms t^k/k!·d^k(elt), in increasing k.
    pub fn exp_action(&self, time: &Rat, elt: &Element) -> Result<Vec<HomogeneousElement>> {
        let mut terms = Vec::new();
        let mut current = match elt {
            Element::Zero => Element::Zero,
            Element::Term(t) => {
                self.dd
                    .element(t.section.clone(), t.degree.clone())
                    .map_err(|_| Error::ContextMismatch)?;
                elt.clone()
            }
        };
        let mut factor = Rat::one();
        let mut k: u64 = 0;
        while let Element::Term(t) = &current {
            if !factor.is_zero() {
                terms.push(HomogeneousElement {
                    section: t.section.scale(&factor),
                    degree: t.degree.clone(),
                });
            }
            current = self.apply_validated(t)?;
            k += 1;
            factor = factor * time / Rat::from_integer(Int::from(k));
        }
        terms.retain(|t| !t.section.is_zero());
        Ok(terms)
    }

    /// Kernel of the derivation: the subring graded by tau ∩ M. The
    /// generator list is the bounded generator extraction restricted to
    /// degrees in tau (generators of the full ring with degree in a face
    /// generate the face subring).
    pub fn kernel_description(&self, bound: u32) -> Result<KernelReport> {
        let report = self.dd.generator_candidates(bound)?;
        let generators = report
            .generators
            .into_iter()
            .filter(|g| self.ctx.tau.contains_int_raw(&g.degree))
            .collect();
        Ok(KernelReport {
            weight_monoid: self.ctx.tau.clone(),
            generators: GeneratorReport { generators, complete_up_to: bound },
        })
    }

    /// Two fiber-type derivations on the same divisor are equivalent (have
    /// equal kernels) exactly when their rays agree.
    pub fn equivalent(&self, other: &FiberLnd) -> Result<bool> {
        if self.dd != other.dd {
            return Err(Error::ContextMismatch);
        }
        Ok(self.ctx.rho0 == other.ctx.rho0)
    }
}

/// Kernel report: weight monoid and bounded ring generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub weight_monoid: Cone,
    pub generators: GeneratorReport,
}

/// One equivalence class per ray: the existence verdict and a witness pair
/// (e, phi) found by scanning S_rho up to the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub ray: Vec<Int>,
    pub exists: TriState,
    pub witness: Option<ClassWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassWitness {
    pub e: Vec<Int>,
    /// First basis element of Phi_e on bases with sections.
    pub phi: Option<RationalSection>,
}

/// Equivalence classes of fiber-type derivations: one entry per ray of the
/// tail cone, in lexicographic ray order.
pub fn list_equivalence_classes(dd: &PolyhedralDivisor, bound: u32) -> Result<Vec<ClassReport>> {
    let mut out = Vec::new();
    for ray in dd.tail().rays()? {
        let ctx = RayContext::new(dd.tail(), &ray)?;
        let exists = exists_fiber_lnd(dd, &ctx);
        let witness = if exists == TriState::True {
            find_witness(dd, &ctx, bound)?
        } else {
            None
        };
        out.push(ClassReport { ray: ray.coords, exists, witness });
    }
    Ok(out)
}

/// First e in S_rho with dim Phi_e > 0, scanning by increasing max-norm and
/// lexicographically within a norm (small witnesses keep the section data
/// small), together with the first basis section where available.
pub fn find_witness(
    dd: &PolyhedralDivisor,
    ctx: &RayContext,
    bound: u32,
) -> Result<Option<ClassWitness>> {
    let mut candidates = ctx.s_rho_enumerate(bound);
    candidates.sort_by_key(|e| (max_norm(e), e.clone()));
    for e in candidates {
        let phi = phi_e(dd, ctx, &e)?;
        if phi.dim.is_positive() == Some(true) {
            let section = phi.basis.and_then(|b| b.into_iter().next());
            return Ok(Some(ClassWitness { e, phi: section }));
        }
    }
    Ok(None)
}
