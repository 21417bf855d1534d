//! Geometry kernel properties on randomized cones: duality involution,
//! facet/ray correspondence, Hilbert bases against brute force, and a naive
//! double-description oracle for the Fourier-Motzkin conversion.

use num::{BigInt, BigRational, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tvariety::arith::{dot_int, int_to_rat_vec};
use tvariety::lattice::{LatticeVector, RationalVector, Space};
use tvariety::Cone;

type Int = BigInt;
type Rat = BigRational;

fn int(x: i64) -> Int {
    Int::from(x)
}

fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

fn random_vec(rng: &mut StdRng, rank: usize, bound: i64) -> Vec<Int> {
    (0..rank).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

fn random_cone(rng: &mut StdRng, rank: usize) -> Cone {
    let k = rng.gen_range(0..=rank + 2);
    let gens: Vec<Vec<Int>> = (0..k).map(|_| random_vec(rng, rank, 3)).collect();
    Cone::from_generators(Space::N, rank, &gens).unwrap()
}

// ---------------------------------------------------------------------------
// Oracle: naive double description and Caratheodory membership, independent
// of the Fourier-Motzkin path in the library.
// ---------------------------------------------------------------------------

/// V-representation of { x : <a, x> >= 0 for all a } by incremental
/// halfspace insertion, starting from the generators of the full space.
fn dd_halfspaces_to_rays(ineqs: &[Vec<Int>], rank: usize) -> Vec<Vec<Int>> {
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for i in 0..rank {
        let mut plus = vec![Int::zero(); rank];
        plus[i] = int(1);
        let mut minus = vec![Int::zero(); rank];
        minus[i] = int(-1);
        rays.push(plus);
        rays.push(minus);
    }
    for a in ineqs {
        let mut next: Vec<Vec<Int>> = Vec::new();
        let pos: Vec<&Vec<Int>> = rays.iter().filter(|r| dot_int(a, r).is_positive()).collect();
        let neg: Vec<&Vec<Int>> = rays.iter().filter(|r| dot_int(a, r).is_negative()).collect();
        for r in &rays {
            if !dot_int(a, r).is_negative() {
                next.push(r.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let vp = dot_int(a, p);
                let vn = -dot_int(a, n);
                let combo: Vec<Int> = p
                    .iter()
                    .zip(n.iter())
                    .map(|(pi, ni)| pi * &vn + ni * &vp)
                    .collect();
                if combo.iter().any(|x| !x.is_zero()) {
                    next.push(combo);
                }
            }
        }
        rays = next;
    }
    rays
}

/// Solves sum λ_i rows_i = target exactly (rows linearly independent not
/// required: plain elimination with consistency check).
fn solve_nonneg_combination(rows: &[&Vec<Int>], target: &[Rat]) -> Option<Vec<Rat>> {
    let n = target.len();
    let k = rows.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = rows.iter().map(|r| Rat::from_integer(r[j].clone())).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let mut pivot_of_col = vec![usize::MAX; k];
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=k {
                    let d = &aug[r][j] * &f;
                    aug[i][j] = &aug[i][j] - d;
                }
            }
        }
        pivot_of_col[c] = r;
        r += 1;
    }
    for row in aug.iter().skip(r) {
        if row[..k].iter().all(Zero::is_zero) && !row[k].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); k];
    for c in 0..k {
        if pivot_of_col[c] != usize::MAX {
            x[c] = aug[pivot_of_col[c]][k].clone();
        }
    }
    for j in 0..n {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            acc += xi * Rat::from_integer(rows[i][j].clone());
        }
        if acc != target[j] {
            return None;
        }
    }
    Some(x)
}

/// Caratheodory membership: v lies in cone(gens) iff some subset of at most
/// `rank` generators expresses it with nonnegative coefficients.
fn in_cone_of(gens: &[Vec<Int>], v: &[Int], rank: usize) -> bool {
    let target = int_to_rat_vec(v);
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    let k = gens.len();
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
    for size in 1..=rank.min(k) {
        let mut stack: Vec<Vec<usize>> = vec![];
        fn extend(acc: &mut Vec<Vec<usize>>, cur: Vec<usize>, size: usize, k: usize) {
            if cur.len() == size {
                acc.push(cur);
                return;
            }
            let start = cur.last().map_or(0, |&x| x + 1);
            for i in start..k {
                let mut next = cur.clone();
                next.push(i);
                extend(acc, next, size, k);
            }
        }
        extend(&mut stack, Vec::new(), size, k);
        subsets.extend(stack);
    }
    for subset in subsets {
        if subset.is_empty() {
            continue;
        }
        let rows: Vec<&Vec<Int>> = subset.iter().map(|&i| &gens[i]).collect();
        if let Some(coeffs) = solve_nonneg_combination(&rows, &target) {
            if coeffs.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn cones_set_equal(a_gens: &[Vec<Int>], b_gens: &[Vec<Int>], rank: usize) -> bool {
    a_gens.iter().all(|g| in_cone_of(b_gens, g, rank))
        && b_gens.iter().all(|g| in_cone_of(a_gens, g, rank))
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

#[test]
fn dual_involution_and_pairing_nonnegativity() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let rank = rng.gen_range(1..=3);
        let c = random_cone(&mut rng, rank);
        let d = c.dual();
        assert_eq!(d.dual(), c, "double dual is the identity");
        for u in d.generator_vectors() {
            for g in c.generator_vectors() {
                assert!(
                    !dot_int(u, g).is_negative(),
                    "dual generator pairs nonnegatively"
                );
            }
        }
        // Set equality of the double dual via mutual membership.
        assert!(cones_set_equal(
            c.generator_vectors(),
            d.dual().generator_vectors(),
            rank
        ));
    }
}

#[test]
fn double_description_oracle_agrees_with_fourier_motzkin() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..40 {
        let rank = rng.gen_range(1..=3);
        let c = random_cone(&mut rng, rank);
        // The dual's generator list against the DD oracle applied to the
        // halfspace system { <g, x> >= 0 : g generator of c }.
        let oracle = dd_halfspaces_to_rays(c.generator_vectors(), rank);
        let dual = c.dual();
        assert!(
            cones_set_equal(dual.generator_vectors(), &oracle, rank),
            "dual of {:?} disagrees with the double-description oracle",
            c.generator_vectors()
        );
    }
}

#[test]
fn ray_face_bijection_for_full_dimensional_cones() {
    let mut rng = StdRng::seed_from_u64(37);
    let mut tested = 0;
    while tested < 25 {
        let rank = rng.gen_range(2..=3);
        let c = random_cone(&mut rng, rank);
        if !c.is_pointed() || !c.is_full_dimensional() || c.dim() == 0 {
            continue;
        }
        tested += 1;
        let rays = c.rays().unwrap();
        // Codimension-1 faces of the dual are cut out by the facet normals
        // of the dual, which are exactly the rays of c.
        let dual = c.dual();
        assert_eq!(
            rays.len(),
            dual.inequality_vectors().len(),
            "rays biject with codimension-1 faces of the dual"
        );
        let mut faces = Vec::new();
        for ray in &rays {
            let tau = c.dual_face_of_ray(ray).unwrap();
            assert_eq!(tau.dim(), rank - 1, "dual face has codimension 1");
            assert!(!faces.contains(&tau), "distinct rays give distinct faces");
            faces.push(tau);
        }
    }
}

#[test]
fn hilbert_basis_generates_all_bounded_points() {
    let mut rng = StdRng::seed_from_u64(53);
    let mut tested = 0;
    while tested < 20 {
        let rank = 2;
        let c = random_cone(&mut rng, rank);
        if !c.is_pointed() {
            continue;
        }
        tested += 1;
        let basis: Vec<Vec<Int>> =
            c.hilbert_basis().unwrap().into_iter().map(|v| v.coords).collect();
        let zero = RationalVector::new(Space::N, vec![Rat::zero(); rank]);
        let points = c.lattice_points(&zero, 6).unwrap();
        for p in points {
            assert!(
                monoid_member(&p.coords, &basis, &c),
                "{:?} must be a nonnegative combination of the Hilbert basis {:?}",
                p.coords,
                basis
            );
        }
        // Minimality: no basis element decomposes into two nonzero members.
        for b in &basis {
            for other in &basis {
                let diff: Vec<Int> = b.iter().zip(other).map(|(x, y)| x - y).collect();
                if diff.iter().all(|x| x.is_zero()) || diff.iter().all(|x| -x == Int::zero()) {
                    continue;
                }
                if b != other && diff.iter().any(|x| !x.is_zero()) {
                    let lv = LatticeVector::new(Space::N, diff.clone());
                    if c.contains_lattice(&lv).unwrap() && basis.contains(&diff) {
                        panic!("basis element {b:?} = {other:?} + {diff:?} is reducible");
                    }
                }
            }
        }
    }
}

fn monoid_member(p: &[Int], basis: &[Vec<Int>], cone: &Cone) -> bool {
    if p.iter().all(Zero::is_zero) {
        return true;
    }
    for b in basis {
        let rest: Vec<Int> = p.iter().zip(b).map(|(x, y)| x - y).collect();
        let lv = LatticeVector::new(Space::N, rest.clone());
        if cone.contains_lattice(&lv).unwrap() && monoid_member(&rest, basis, cone) {
            return true;
        }
    }
    false
}

#[test]
fn relative_interior_implies_membership() {
    let mut rng = StdRng::seed_from_u64(71);
    for _ in 0..60 {
        let rank = rng.gen_range(1..=3);
        let c = random_cone(&mut rng, rank);
        let v = RationalVector::new(Space::N, int_to_rat_vec(&random_vec(&mut rng, rank, 4)));
        if c.in_relint(&v).unwrap() {
            assert!(c.contains(&v).unwrap());
        }
        // The canonical relative-interior sample really is interior.
        let s = RationalVector::new(Space::N, int_to_rat_vec(&c.relint_sample()));
        assert!(c.in_relint(&s).unwrap());
    }
}

#[test]
fn from_inequalities_agrees_with_membership() {
    let mut rng = StdRng::seed_from_u64(89);
    for _ in 0..40 {
        let rank = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=3);
        let ineqs: Vec<Vec<Int>> = (0..k).map(|_| random_vec(&mut rng, rank, 3)).collect();
        let c = Cone::from_inequalities(Space::N, rank, &ineqs).unwrap();
        for _ in 0..30 {
            let v = random_vec(&mut rng, rank, 4);
            let direct = ineqs.iter().all(|a| !dot_int(a, &v).is_negative());
            let via_cone = c
                .contains(&RationalVector::new(Space::N, int_to_rat_vec(&v)))
                .unwrap();
            assert_eq!(direct, via_cone, "ineqs {ineqs:?} at {v:?}");
        }
    }
}

#[test]
fn slanted_dual_cone_matches_hand_computation() {
    let c = Cone::from_generators(Space::N, 2, &[ivec(&[1, 0]), ivec(&[1, 2])]).unwrap();
    let d = c.dual();
    assert_eq!(d.generator_vectors(), &[ivec(&[0, 1]), ivec(&[2, -1])]);
    let hb: Vec<Vec<Int>> = d.hilbert_basis().unwrap().into_iter().map(|v| v.coords).collect();
    assert_eq!(hb, vec![ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[2, -1])]);
}
