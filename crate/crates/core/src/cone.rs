//! Rational polyhedral cones in a fixed-rank ambient lattice, dual-aware:
//! every cone carries both a canonical generator list and a canonical
//! inequality list describing the same set.
//!
//! Conversion between the two descriptions runs Fourier–Motzkin elimination
//! on the membership system `x = G^T λ, λ ≥ 0`, then prunes the resulting
//! inequalities to facets by an activity-rank test against the generators.
//! Lineality is carried as ± pairs: a non-pointed cone lists both signs of a
//! lineality basis among its generators, and an equality constraint appears
//! as a ± pair of inequalities.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::arith::{
    add_vec, dot_int, dot_int_rat, int_to_rat_vec, is_zero_vec, max_norm, neg_vec,
    orient_leading_positive, primitive, primitive_from_rat, sub_vec_rat, Int, Rat,
};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalVector, Space};
use crate::linalg::{nullspace_int, rank_int, reduce_mod_rowspan, rref};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    is_eq: bool,
    coeffs: Vec<Int>,
}

impl Row {
    fn normalized(mut self) -> Self {
        self.coeffs = primitive(&self.coeffs);
        if self.is_eq {
            self.coeffs = orient_leading_positive(&self.coeffs);
        }
        self
    }
}

fn normalize_rows(rows: Vec<Row>) -> Vec<Row> {
    let set: BTreeSet<Row> = rows
        .into_iter()
        .filter(|r| !is_zero_vec(&r.coeffs))
        .map(Row::normalized)
        .collect();
    set.into_iter().collect()
}

/// `a*r - b*pivot` with `a = pivot[v] > 0`, `b = r[v]`; zeroes column `v` and
/// preserves the direction of inequalities.
fn combine_with_pivot(r: &Row, pivot: &[Int], a: &Int, v: usize) -> Row {
    let b = &r.coeffs[v];
    let coeffs = r
        .coeffs
        .iter()
        .zip(pivot)
        .map(|(x, p)| x * a - p * b)
        .collect();
    Row { is_eq: r.is_eq, coeffs }
}

/// Converts a generator description of `cone(gens)` into its canonical
/// H-representation: a basis of the orthogonal complement of the span
/// (equalities) and the irredundant facet inequalities.
fn generators_to_halfspaces(gens: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let gens: Vec<Vec<Int>> = {
        let set: BTreeSet<Vec<Int>> = gens
            .iter()
            .map(|g| primitive(g))
            .filter(|g| !is_zero_vec(g))
            .collect();
        set.into_iter().collect()
    };
    let k = gens.len();
    let d = rank_int(&gens);

    // Membership system over (x, lambda): x_j - sum_i lambda_i g_i[j] = 0,
    // lambda_i >= 0.
    let mut rows: Vec<Row> = Vec::with_capacity(n + k);
    for j in 0..n {
        let mut coeffs = vec![Int::zero(); n + k];
        coeffs[j] = Int::one();
        for (i, g) in gens.iter().enumerate() {
            coeffs[n + i] = -g[j].clone();
        }
        rows.push(Row { is_eq: true, coeffs });
    }
    for i in 0..k {
        let mut coeffs = vec![Int::zero(); n + k];
        coeffs[n + i] = Int::one();
        rows.push(Row { is_eq: false, coeffs });
    }
    rows = normalize_rows(rows);

    for v in (n..n + k).rev() {
        if let Some(idx) = rows.iter().position(|r| r.is_eq && !r.coeffs[v].is_zero()) {
            let mut pivot = rows.remove(idx);
            if pivot.coeffs[v].is_negative() {
                pivot.coeffs = neg_vec(&pivot.coeffs);
            }
            let a = pivot.coeffs[v].clone();
            rows = rows
                .into_iter()
                .map(|r| {
                    if r.coeffs[v].is_zero() {
                        r
                    } else {
                        combine_with_pivot(&r, &pivot.coeffs, &a, v)
                    }
                })
                .collect();
        } else {
            let (mut zero, rest): (Vec<Row>, Vec<Row>) =
                rows.into_iter().partition(|r| r.coeffs[v].is_zero());
            let pos: Vec<Row> = rest.iter().filter(|r| r.coeffs[v].is_positive()).cloned().collect();
            let neg: Vec<Row> = rest.iter().filter(|r| r.coeffs[v].is_negative()).cloned().collect();
            for p in &pos {
                for q in &neg {
                    let a = p.coeffs[v].clone();
                    let b = -q.coeffs[v].clone();
                    let coeffs = p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(x, y)| x * &b + y * &a)
                        .collect();
                    zero.push(Row { is_eq: false, coeffs });
                }
            }
            rows = zero;
        }
        rows = normalize_rows(rows);
    }

    debug_assert!(rows.iter().all(|r| r.coeffs[n..].iter().all(Zero::is_zero)));

    // Canonical equalities: a basis of span(gens)^perp.
    let equalities = nullspace_int(&gens, n);
    let eq_rat: Vec<Vec<Rat>> = equalities.iter().map(|e| int_to_rat_vec(e)).collect();
    let (eq_rref, eq_pivots) = rref(&eq_rat);

    // Reduce inequality rows modulo the equality span, then keep facets only:
    // a valid inequality is a facet iff its active generators span a
    // (d-1)-dimensional subspace.
    let mut facets: BTreeSet<Vec<Int>> = BTreeSet::new();
    for r in rows {
        if r.is_eq {
            continue;
        }
        let reduced = reduce_mod_rowspan(&int_to_rat_vec(&r.coeffs[..n]), &eq_rref, &eq_pivots);
        let a = primitive_from_rat(&reduced);
        if is_zero_vec(&a) {
            continue;
        }
        debug_assert!(gens.iter().all(|g| !dot_int(&a, g).is_negative()));
        let active: Vec<Vec<Int>> = gens.iter().filter(|g| dot_int(&a, g).is_zero()).cloned().collect();
        if d >= 1 && rank_int(&active) == d - 1 {
            facets.insert(a);
        }
    }
    (equalities, facets.into_iter().collect())
}

/// Pointed or non-pointed rational polyhedral cone with both representations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    rank: usize,
    space: Space,
    generators: Vec<Vec<Int>>,
    inequalities: Vec<Vec<Int>>,
    dim: usize,
    lineality_dim: usize,
}

fn with_sign_pairs(rays: Vec<Vec<Int>>, lines: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut out: BTreeSet<Vec<Int>> = rays.into_iter().collect();
    for l in lines {
        out.insert(l.clone());
        out.insert(neg_vec(l));
    }
    out.into_iter().collect()
}

impl Cone {
    /// Cone spanned by the given integral vectors.
    pub fn from_generators(space: Space, rank: usize, gens: &[Vec<Int>]) -> Result<Self> {
        for g in gens {
            crate::arith::check_rank(rank, g)?;
        }
        Ok(Self::from_generators_raw(space, rank, gens))
    }

    pub(crate) fn from_generators_raw(space: Space, rank: usize, gens: &[Vec<Int>]) -> Self {
        let (eq, facets) = generators_to_halfspaces(gens, rank);
        let inequalities = with_sign_pairs(facets, &eq);
        let (lineality, extreme) = generators_to_halfspaces(&inequalities, rank);
        let generators = with_sign_pairs(extreme, &lineality);
        let dim = rank_int(&generators);
        Cone {
            rank,
            space,
            generators,
            inequalities,
            dim,
            lineality_dim: lineality.len(),
        }
    }

    /// Cone cut out by `<a, x> >= 0` for the given integral normals.
    pub fn from_inequalities(space: Space, rank: usize, ineqs: &[Vec<Int>]) -> Result<Self> {
        for a in ineqs {
            crate::arith::check_rank(rank, a)?;
        }
        Ok(Self::from_inequalities_raw(space, rank, ineqs))
    }

    pub(crate) fn from_inequalities_raw(space: Space, rank: usize, ineqs: &[Vec<Int>]) -> Self {
        // V-representation of { x : Ax >= 0 }: facets of cone(A) plus the
        // nullspace of A as lineality.
        let (null, facets) = generators_to_halfspaces(ineqs, rank);
        let gens = with_sign_pairs(facets, &null);
        Self::from_generators_raw(space, rank, &gens)
    }

    pub fn zero(space: Space, rank: usize) -> Self {
        Self::from_generators_raw(space, rank, &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Canonical generator list: extreme rays modulo lineality, plus a ± pair
    /// for each lineality basis vector. Sorted, primitive.
    pub fn generator_vectors(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Canonical inequality list: facet normals plus ± pairs of equality
    /// normals, as vectors in the dual space. Sorted, primitive.
    pub fn inequality_vectors(&self) -> &[Vec<Int>] {
        &self.inequalities
    }

    pub fn generators(&self) -> Vec<LatticeVector> {
        self.generators
            .iter()
            .map(|g| LatticeVector::new(self.space, g.clone()))
            .collect()
    }

    pub fn inequalities(&self) -> Vec<LatticeVector> {
        self.inequalities
            .iter()
            .map(|a| LatticeVector::new(self.space.dual(), a.clone()))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// The dual cone { u : <u, v> >= 0 for all v }. The two canonical lists
    /// swap roles, so double dualization is the identity.
    pub fn dual(&self) -> Cone {
        Cone {
            rank: self.rank,
            space: self.space.dual(),
            generators: self.inequalities.clone(),
            inequalities: self.generators.clone(),
            dim: self.rank - self.lineality_dim,
            lineality_dim: self.rank - self.dim,
        }
    }

    pub(crate) fn contains_raw(&self, v: &[Rat]) -> bool {
        self.inequalities.iter().all(|a| !dot_int_rat(a, v).is_negative())
    }

    pub(crate) fn contains_int_raw(&self, v: &[Int]) -> bool {
        self.inequalities.iter().all(|a| !dot_int(a, v).is_negative())
    }

    pub(crate) fn in_relint_raw(&self, v: &[Rat]) -> bool {
        if !self.contains_raw(v) {
            return false;
        }
        let set: BTreeSet<&Vec<Int>> = self.inequalities.iter().collect();
        self.inequalities.iter().all(|a| {
            let is_equality = set.contains(&neg_vec(a));
            is_equality || dot_int_rat(a, v).is_positive()
        })
    }

    fn check_vector(&self, space: Space, len: usize) -> Result<()> {
        if space != self.space {
            return Err(Error::SpaceMismatch);
        }
        if len != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: len });
        }
        Ok(())
    }

    /// Membership via the inequality representation.
    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        self.check_vector(v.space, v.coords.len())?;
        Ok(self.contains_raw(&v.coords))
    }

    pub fn contains_lattice(&self, v: &LatticeVector) -> Result<bool> {
        self.check_vector(v.space, v.coords.len())?;
        Ok(self.contains_int_raw(&v.coords))
    }

    /// Relative-interior membership, taken within the linear span: strict on
    /// every inequality that is not identically zero on the cone.
    pub fn in_relint(&self, v: &RationalVector) -> Result<bool> {
        self.check_vector(v.space, v.coords.len())?;
        Ok(self.in_relint_raw(&v.coords))
    }

    /// An integral point of the relative interior (the sum of the canonical
    /// generators; the zero cone yields the origin).
    pub fn relint_sample(&self) -> Vec<Int> {
        let mut s = vec![Int::zero(); self.rank];
        for g in &self.generators {
            s = add_vec(&s, g);
        }
        s
    }

    /// Primitive generators of the one-dimensional faces, sorted
    /// lexicographically. The zero cone has none.
    pub fn rays(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(self.generators())
    }

    /// Intersection, via the union of the inequality systems.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend_from_slice(&other.inequalities);
        Ok(Cone::from_inequalities_raw(self.space, self.rank, &ineqs))
    }

    /// The codimension-1 face of the dual cone dual to the ray `rho`:
    /// tau = sigma_dual ∩ rho_perp.
    pub fn dual_face_of_ray(&self, rho: &LatticeVector) -> Result<Cone> {
        self.check_vector(rho.space, rho.coords.len())?;
        let r = primitive(&rho.coords);
        let rays = self.rays()?;
        if !rays.iter().any(|g| g.coords == r) {
            return Err(Error::NotARay);
        }
        let mut ineqs = self.generators.clone();
        ineqs.push(r.clone());
        ineqs.push(neg_vec(&r));
        Cone::from_inequalities(self.space.dual(), self.rank, &ineqs)
    }

    /// Unique minimal generating set of the monoid `cone ∩ lattice`.
    pub fn hilbert_basis(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        if self.generators.is_empty() {
            return Ok(Vec::new());
        }
        // Every irreducible element is a sub-unit combination of linearly
        // independent primitive rays, so its max-norm is below the sum of
        // the ray norms.
        let bound: Int = self.generators.iter().map(|r| max_norm(r)).sum();
        // A grading strictly positive on the cone minus the origin.
        let mut grading = vec![Int::zero(); self.rank];
        for a in &self.inequalities {
            grading = add_vec(&grading, a);
        }
        let mut points: Vec<Vec<Int>> = Vec::new();
        for p in LatticeBox::new(self.rank, &bound) {
            if !is_zero_vec(&p) && self.contains_int_raw(&p) {
                points.push(p);
            }
        }
        points.sort_by_key(|p| (dot_int(&grading, p), p.clone()));
        let mut basis: Vec<Vec<Int>> = Vec::new();
        'outer: for p in points {
            for b in &basis {
                let q: Vec<Int> = p.iter().zip(b).map(|(x, y)| x - y).collect();
                if !is_zero_vec(&q) && self.contains_int_raw(&q) {
                    continue 'outer;
                }
            }
            basis.push(p);
        }
        basis.sort();
        Ok(basis
            .into_iter()
            .map(|b| LatticeVector::new(self.space, b))
            .collect())
    }

    /// All lattice vectors v with v ∈ (cone + shift) and max-norm(v) ≤ bound,
    /// in lexicographic order.
    pub fn lattice_points(&self, shift: &RationalVector, bound: u32) -> Result<Vec<LatticeVector>> {
        self.check_vector(shift.space, shift.coords.len())?;
        let b = Int::from(bound);
        let mut out = Vec::new();
        for v in LatticeBox::new(self.rank, &b) {
            let translated = sub_vec_rat(&int_to_rat_vec(&v), &shift.coords);
            if self.contains_raw(&translated) {
                out.push(LatticeVector::new(self.space, v));
            }
        }
        Ok(out)
    }
}

/// Lexicographic iterator over the integer box [-bound, bound]^rank.
pub(crate) struct LatticeBox {
    rank: usize,
    bound: Int,
    current: Option<Vec<Int>>,
}

impl LatticeBox {
    pub(crate) fn new(rank: usize, bound: &Int) -> Self {
        let start = if bound.is_negative() {
            None
        } else {
            Some(vec![-bound.clone(); rank])
        };
        LatticeBox { rank, bound: bound.clone(), current: start }
    }
}

impl Iterator for LatticeBox {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        let cur = self.current.clone()?;
        if self.rank == 0 {
            self.current = None;
            return Some(cur);
        }
        let mut next = cur.clone();
        let mut i = self.rank;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.bound {
                next[i] += 1;
                for x in next.iter_mut().skip(i + 1) {
                    *x = -self.bound.clone();
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}
