//! Exact linear algebra over the rationals: row reduction, rank, and
//! nullspace bases with deterministic output.

use num::{One, Zero};

use crate::arith::{orient_leading_positive, primitive_from_rat, Int, Rat};

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped)
/// and the pivot column of each row.
pub fn rref(rows: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut mat: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..ncols {
                    let d = &mat[r][j] * &f;
                    mat[i][j] = &mat[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    mat.truncate(r);
    (mat, pivots)
}

pub fn rank_int(rows: &[Vec<Int>]) -> usize {
    let rat_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    rref(&rat_rows).0.len()
}

/// Basis of { x : <row, x> = 0 for every row }, as primitive integer vectors
/// with positive leading coordinate, sorted. `ncols` is the ambient dimension
/// (needed when `rows` is empty).
pub fn nullspace_int(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let rat_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let (red, pivots) = rref(&rat_rows);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(orient_leading_positive(&primitive_from_rat(&v)));
    }
    basis.sort();
    basis
}

/// Reduces `v` modulo the row span of `basis_rref` (rows in RREF with the
/// given pivot columns): subtracts multiples of basis rows so that all pivot
/// coordinates of the result vanish.
pub fn reduce_mod_rowspan(v: &[Rat], basis_rref: &[Vec<Rat>], pivots: &[usize]) -> Vec<Rat> {
    let mut out = v.to_vec();
    for (row, &p) in basis_rref.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = out[p].clone();
            for j in 0..out.len() {
                let d = &row[j] * &f;
                out[j] = &out[j] - d;
            }
        }
    }
    out
}
