//! Polyhedra with a fixed pointed tail cone: Minkowski sums of a compact
//! polytope and the tail, their concave piecewise-linear support functions
//! `h(m) = min <m, Δ>` on the dual of the tail, and the maximal linear
//! pieces of those support functions.

use crate::arith::{add_vec_rat, dot_rat, int_to_rat_vec, primitive_from_rat, sub_vec_rat, Rat};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{RationalVector, Space};

/// Element of Pol_sigma(N_Q): conv(vertices) + tail, with the tail equal to
/// the recession cone. Construction drops non-extreme vertices, so the
/// vertex list is always irredundant; the argmin regions computed for the
/// pruning are kept as the linear pieces of the support function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailedPolyhedron {
    tail: Cone,
    tail_dual: Cone,
    vertices: Vec<Vec<Rat>>,
    pieces: Vec<LinearPiece>,
}

/// One maximal cone of the normal quasifan of a support function, restricted
/// to the dual of the tail: the region where a single vertex is the
/// minimizer. The linear functional of the piece is `m -> <m, vertex>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPiece {
    pub cone: Cone,
    pub vertex: Vec<Rat>,
}

impl LinearPiece {
    /// Value of the linear extension `g = <., vertex>` at any m, inside or
    /// outside the piece.
    pub fn functional(&self, m: &[Rat]) -> Rat {
        dot_rat(m, &self.vertex)
    }
}

/// Cone of the region where `vertex` beats every vertex in `others`:
/// tail_dual ∩ { m : <m, other - vertex> >= 0 }.
fn argmin_region(tail_dual: &Cone, vertex: &[Rat], others: &[Vec<Rat>]) -> Cone {
    let mut ineqs = tail_dual.inequality_vectors().to_vec();
    for w in others {
        if w != vertex {
            ineqs.push(primitive_from_rat(&sub_vec_rat(w, vertex)));
        }
    }
    Cone::from_inequalities_raw(tail_dual.space(), tail_dual.rank(), &ineqs)
}

impl TailedPolyhedron {
    /// Builds conv(vertices) + tail. The tail must be a pointed cone in N;
    /// redundant (non-extreme) vertices are removed. A vertex is extreme
    /// exactly when its argmin region in the dual of the tail is
    /// full-dimensional.
    pub fn new(tail: Cone, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if tail.space() != Space::N {
            return Err(Error::SpaceMismatch);
        }
        if !tail.is_pointed() {
            return Err(Error::NotPointed);
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("a tailed polyhedron needs at least one vertex".into()));
        }
        for v in &vertices {
            crate::arith::check_rank_rat(tail.rank(), v)?;
        }
        let tail_dual = tail.dual();
        let mut unique: Vec<Vec<Rat>> = Vec::new();
        for v in vertices {
            if !unique.contains(&v) {
                unique.push(v);
            }
        }
        // A dominated vertex never constrains an argmin region, so the
        // regions computed against the full list equal those against the
        // extreme vertices alone.
        let mut pieces: Vec<LinearPiece> = unique
            .iter()
            .map(|v| LinearPiece {
                cone: argmin_region(&tail_dual, v, &unique),
                vertex: v.clone(),
            })
            .filter(|p| p.cone.is_full_dimensional())
            .collect();
        pieces.sort_by(|a, b| a.vertex.cmp(&b.vertex));
        let vertices: Vec<Vec<Rat>> = pieces.iter().map(|p| p.vertex.clone()).collect();
        Ok(TailedPolyhedron { tail, tail_dual, vertices, pieces })
    }

    /// Single-point polyhedron `p + tail`.
    pub fn point(tail: Cone, p: Vec<Rat>) -> Result<Self> {
        Self::new(tail, vec![p])
    }

    /// The tail cone itself (vertex at the origin).
    pub fn tail_only(tail: Cone) -> Result<Self> {
        let rank = tail.rank();
        Self::new(tail, vec![vec![Rat::from_integer(0.into()); rank]])
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn tail_dual(&self) -> &Cone {
        &self.tail_dual
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.tail.rank()
    }

    /// True if the polyhedron equals its tail cone.
    pub fn is_tail_only(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(num::Zero::is_zero)
    }

    /// Support function `h(m) = min over vertices of <m, v>`, defined for
    /// m in the dual of the tail (outside, the minimum over the polyhedron
    /// would be -infinity).
    pub fn support_eval(&self, m: &RationalVector) -> Result<Rat> {
        if m.space != Space::M {
            return Err(Error::SpaceMismatch);
        }
        crate::arith::check_rank_rat(self.rank(), &m.coords)?;
        if !self.tail_dual.contains_raw(&m.coords) {
            return Err(Error::OutsideDualCone);
        }
        Ok(self.support_eval_raw(&m.coords))
    }

    pub(crate) fn support_eval_raw(&self, m: &[Rat]) -> Rat {
        self.vertices
            .iter()
            .map(|v| dot_rat(m, v))
            .min()
            .expect("vertex list is nonempty")
    }

    /// The maximal linear pieces of the support function: one
    /// full-dimensional argmin region per vertex, covering the dual of the
    /// tail. Sorted by vertex.
    pub fn linear_pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    /// The unique maximal piece whose cone contains the face `tau` of the
    /// dual of the tail. `tau` must be a codimension-1 face for uniqueness.
    pub fn piece_containing_face(&self, tau: &Cone) -> Result<LinearPiece> {
        if tau.space() != Space::M || tau.rank() != self.rank() {
            return Err(Error::FaceNotCovered);
        }
        let sample = int_to_rat_vec(&tau.relint_sample());
        let mut found: Vec<&LinearPiece> = self
            .pieces
            .iter()
            .filter(|p| p.cone.contains_raw(&sample))
            .collect();
        match found.len() {
            1 => Ok(found.pop().expect("length checked").clone()),
            _ => Err(Error::FaceNotCovered),
        }
    }

    /// Minkowski sum; both summands must have the same tail cone.
    pub fn minkowski_sum(&self, other: &TailedPolyhedron) -> Result<TailedPolyhedron> {
        if self.tail != other.tail {
            return Err(Error::TailMismatch);
        }
        let mut sums = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(add_vec_rat(a, b));
            }
        }
        TailedPolyhedron::new(self.tail.clone(), sums)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat_int};
    use crate::lattice::LatticeVector;

    fn quadrant() -> Cone {
        Cone::from_generators(Space::N, 2, &[vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap()
    }

    fn rv(coords: &[i64]) -> Vec<Rat> {
        coords.iter().map(|&x| rat_int(x)).collect()
    }

    fn m(coords: &[i64]) -> RationalVector {
        RationalVector::new(Space::M, coords.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn support_of_translated_cone() {
        let delta = TailedPolyhedron::point(quadrant(), rv(&[1, 1])).unwrap();
        assert_eq!(delta.support_eval(&m(&[2, 3])).unwrap(), rat_int(5));
        assert_eq!(delta.support_eval(&m(&[0, 0])).unwrap(), rat_int(0));
        assert_eq!(delta.support_eval(&m(&[-1, 0])), Err(Error::OutsideDualCone));
    }

    #[test]
    fn support_of_tail_only_is_zero() {
        let delta = TailedPolyhedron::tail_only(quadrant()).unwrap();
        assert!(delta.is_tail_only());
        assert_eq!(delta.support_eval(&m(&[3, 7])).unwrap(), rat_int(0));
    }

    #[test]
    fn support_minimizes_over_vertices() {
        let delta = TailedPolyhedron::new(quadrant(), vec![rv(&[0, 0]), rv(&[1, -1])]).unwrap();
        assert_eq!(delta.vertices().len(), 2);
        assert_eq!(delta.support_eval(&m(&[1, 2])).unwrap(), rat_int(-1));
    }

    #[test]
    fn single_vertex_has_one_piece_covering_dual() {
        let delta = TailedPolyhedron::point(quadrant(), rv(&[1, 1])).unwrap();
        let pieces = delta.linear_pieces();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].cone, quadrant().dual());
        assert_eq!(pieces[0].functional(&rv(&[2, 3])), rat_int(5));
    }

    #[test]
    fn two_vertices_split_the_dual() {
        let delta = TailedPolyhedron::new(quadrant(), vec![rv(&[0, 0]), rv(&[1, -1])]).unwrap();
        let pieces = delta.linear_pieces();
        assert_eq!(pieces.len(), 2);
        // On each piece the support function equals the attached functional.
        for p in pieces {
            let s = int_to_rat_vec(&p.cone.relint_sample());
            assert_eq!(delta.support_eval_raw(&s), p.functional(&s));
        }
    }

    #[test]
    fn dominated_vertex_is_pruned() {
        // (1,1) lies in (0,0) + quadrant, so it is not a vertex.
        let delta = TailedPolyhedron::new(quadrant(), vec![rv(&[0, 0]), rv(&[1, 1])]).unwrap();
        assert_eq!(delta.vertices(), &[rv(&[0, 0])]);
        assert_eq!(delta.linear_pieces().len(), 1);
    }

    #[test]
    fn piece_containing_codim_one_face() {
        let sigma = quadrant();
        let rho = LatticeVector::new(Space::N, vec![int(1), int(0)]);
        let tau = sigma.dual_face_of_ray(&rho).unwrap();

        let single = TailedPolyhedron::point(sigma.clone(), rv(&[1, 1])).unwrap();
        let p = single.piece_containing_face(&tau).unwrap();
        assert_eq!(p.vertex, rv(&[1, 1]));

        // With two vertices the piece through tau = cone((0,1)) is the one
        // minimizing there: <(0,1),(1,-1)> = -1 < 0.
        let two = TailedPolyhedron::new(sigma, vec![rv(&[0, 0]), rv(&[1, -1])]).unwrap();
        let p = two.piece_containing_face(&tau).unwrap();
        assert_eq!(p.vertex, rv(&[1, -1]));
    }

    #[test]
    fn minkowski_sum_adds_vertices_and_supports() {
        let a = TailedPolyhedron::new(quadrant(), vec![rv(&[0, 0]), rv(&[1, -1])]).unwrap();
        let b = TailedPolyhedron::point(quadrant(), rv(&[1, 1])).unwrap();
        let s = a.minkowski_sum(&b).unwrap();
        assert_eq!(s.vertices(), &[rv(&[1, 1]), rv(&[2, 0])]);

        let p = TailedPolyhedron::point(quadrant(), rv(&[1, 0])).unwrap();
        let q = TailedPolyhedron::point(quadrant(), rv(&[0, 2])).unwrap();
        assert_eq!(p.minkowski_sum(&q).unwrap().vertices(), &[rv(&[1, 2])]);

        // Identity element.
        let e = TailedPolyhedron::tail_only(quadrant()).unwrap();
        assert_eq!(a.minkowski_sum(&e).unwrap(), a);

        let other_tail = Cone::from_generators(Space::N, 2, &[vec![int(1), int(0)]]).unwrap();
        let c = TailedPolyhedron::tail_only(other_tail).unwrap();
        assert_eq!(a.minkowski_sum(&c), Err(Error::TailMismatch));
    }
}
