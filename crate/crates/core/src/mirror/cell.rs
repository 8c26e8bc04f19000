//! The open Bruhat cell `N · w₀ w_L⁻¹ T · N ∩ B₊` in `SL_n`.
//!
//! `N` is the lower unitriangular group and `B₊` the upper triangular Borel.

use num_complex::Complex64;
use serde::Serialize;

use super::jet::Scalar;
use crate::error::{Error, Result};
use crate::exactalg::NumericMatrix;

/// Maximal runs of consecutive simple roots in `subset`, as index ranges of the
/// corresponding diagonal blocks of `gl_n`.
pub fn levi_blocks(n: usize, subset: &[usize]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 0..n {
        // rows i and i+1 share a block iff simple root i is in the Levi
        if i + 1 == n || !subset.contains(&i) {
            blocks.push((start, i + 1));
            start = i + 1;
        }
    }
    blocks
}

/// Signed reversal `r` of size `m` with `r[i][m−1−i] = (−1)^i`; its determinant is 1.
fn signed_reversal(m: usize) -> Vec<(usize, f64)> {
    (0..m)
        .map(|i| (m - 1 - i, if i % 2 == 0 { 1.0 } else { -1.0 }))
        .collect()
}

/// A signed permutation matrix stored as `row i ↦ (column, sign)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignedPermutation {
    pub entries: Vec<(usize, f64)>,
}

impl SignedPermutation {
    pub fn to_matrix(&self) -> NumericMatrix {
        let n = self.entries.len();
        let mut m = NumericMatrix::zeros(n, n);
        for (i, &(j, s)) in self.entries.iter().enumerate() {
            m[(i, j)] = Complex64::new(s, 0.0);
        }
        m
    }

    pub fn inverse(&self) -> Self {
        let mut entries = vec![(0, 0.0); self.entries.len()];
        for (i, &(j, s)) in self.entries.iter().enumerate() {
            entries[j] = (i, s);
        }
        SignedPermutation { entries }
    }

    pub fn compose(&self, other: &Self) -> Self {
        SignedPermutation {
            entries: self
                .entries
                .iter()
                .map(|&(j, s)| {
                    let (k, t) = other.entries[j];
                    (k, s * t)
                })
                .collect(),
        }
    }
}

/// `w̄₀`: antidiagonal with alternating signs, determinant 1.
pub fn w0_representative(n: usize) -> SignedPermutation {
    SignedPermutation {
        entries: signed_reversal(n),
    }
}

/// `w̄_L`: the same construction on each Levi block.
pub fn levi_longest_representative(n: usize, subset: &[usize]) -> SignedPermutation {
    let mut entries = vec![(0, 0.0); n];
    for (a, b) in levi_blocks(n, subset) {
        for (i, (j, s)) in signed_reversal(b - a).into_iter().enumerate() {
            entries[a + i] = (a + j, s);
        }
    }
    SignedPermutation { entries }
}

/// `w̄₀ w̄_L⁻¹`.
pub fn cell_representative(n: usize, subset: &[usize]) -> SignedPermutation {
    w0_representative(n).compose(&levi_longest_representative(n, subset).inverse())
}

/// Determinants of the top-right `k × k` corners of `b`, `k = 1..n`.
pub fn antidiagonal_minors(b: &NumericMatrix) -> Vec<Complex64> {
    let n = b.nrows();
    (1..=n)
        .map(|k| b.view((0, n - k), (k, k)).into_owned().determinant())
        .collect()
}

/// `b = n₁ · w̄₀ w̄_L⁻¹ · t · n₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct CellPoint {
    pub b: NumericMatrix,
    pub n1: NumericMatrix,
    pub t: Vec<Complex64>,
    pub n2: NumericMatrix,
    pub levi: Vec<usize>,
}

impl CellPoint {
    pub fn assemble(&self) -> NumericMatrix {
        let n = self.b.nrows();
        let w = cell_representative(n, &self.levi).to_matrix();
        let t = NumericMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.t.clone()));
        &self.n1 * w * t * &self.n2
    }

    pub fn residual(&self) -> f64 {
        (self.assemble() - &self.b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

const CELL_TOL: f64 = 1e-12;

/// Factor an upper triangular `b` with determinant 1 as `n₁ · w̄₀ · t · n₂`.
/// Only the torus Levi is supported here; see [`super::MirrorProblem`] for general `L`.
pub fn bruhat_factorize(b: &NumericMatrix, levi: &[usize]) -> Result<CellPoint> {
    if !levi.is_empty() {
        return Err(Error::InvalidArgument(
            "factorization is implemented for L = T only".into(),
        ));
    }
    let n = b.nrows();
    if !b.is_square() || n == 0 {
        return Err(Error::InvalidArgument("b must be square".into()));
    }
    let scale = b.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for i in 0..n {
        for j in 0..i {
            if b[(i, j)].norm() > 1e-12 * scale {
                return Err(Error::InvalidArgument("b must be upper triangular".into()));
            }
        }
    }
    if (b.determinant() - 1.0).norm() > 1e-10 * scale.powi(n as i32) {
        return Err(Error::InvalidArgument("b must have determinant 1".into()));
    }
    for (k, m) in antidiagonal_minors(b).iter().enumerate() {
        if m.norm() < CELL_TOL {
            return Err(Error::NotInCell(format!(
                "top-right {}x{} minor vanishes",
                k + 1,
                k + 1
            )));
        }
    }
    // c = w̄₀⁻¹ b = U L' with U upper unitriangular and L' lower; reversing rows
    // and columns turns this into a Doolittle LU of J c J.
    let w0 = w0_representative(n).to_matrix();
    let c = w0.transpose() * b;
    let rev = |m: &NumericMatrix| NumericMatrix::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)]);
    let (l, u) = doolittle(&rev(&c))?;
    let upper = rev(&l);
    let lower = rev(&u);
    let t: Vec<Complex64> = (0..n).map(|i| lower[(i, i)]).collect();
    let n2 = NumericMatrix::from_fn(n, n, |i, j| lower[(i, j)] / t[i]);
    let n1 = &w0 * upper * w0.transpose();
    Ok(CellPoint {
        b: b.clone(),
        n1,
        t,
        n2,
        levi: Vec::new(),
    })
}

fn doolittle(m: &NumericMatrix) -> Result<(NumericMatrix, NumericMatrix)> {
    let rows: Vec<Vec<Complex64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    let (l, u) = lu_generic(&rows)?;
    let n = m.nrows();
    Ok((
        NumericMatrix::from_fn(n, n, |i, j| l[i][j]),
        NumericMatrix::from_fn(n, n, |i, j| u[i][j]),
    ))
}

/// Doolittle `g = L U` without pivoting over any [`Scalar`]; a vanishing pivot
/// means `g` is outside the big cell.
pub fn lu_generic<S: Scalar>(g: &[Vec<S>]) -> Result<(Vec<Vec<S>>, Vec<Vec<S>>)> {
    let n = g.len();
    let zero = g[0][0].lift(Complex64::new(0.0, 0.0));
    let one = g[0][0].lift(Complex64::new(1.0, 0.0));
    let mut l = vec![vec![zero.clone(); n]; n];
    let mut u = vec![vec![zero.clone(); n]; n];
    let scale = g.iter().flatten().map(|x| x.value().norm()).fold(1.0, f64::max);
    for k in 0..n {
        for j in k..n {
            let mut acc = g[k][j].clone();
            for m in 0..k {
                acc = acc - l[k][m].clone() * u[m][j].clone();
            }
            u[k][j] = acc;
        }
        let piv = u[k][k].value();
        if !(piv.norm() > 1e-14 * scale) || !piv.re.is_finite() || !piv.im.is_finite() {
            return Err(Error::NotInCell(format!("vanishing pivot at step {k}")));
        }
        l[k][k] = one.clone();
        for i in k + 1..n {
            let mut acc = g[i][k].clone();
            for m in 0..k {
                acc = acc - l[i][m].clone() * u[m][k].clone();
            }
            l[i][k] = acc / u[k][k].clone();
        }
    }
    Ok((l, u))
}

/// Inverse of a lower unitriangular matrix by forward substitution.
pub fn lower_unitriangular_inverse<S: Scalar>(l: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = l.len();
    let zero = l[0][0].lift(Complex64::new(0.0, 0.0));
    let one = l[0][0].lift(Complex64::new(1.0, 0.0));
    let mut inv = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        inv[j][j] = one.clone();
        for i in j + 1..n {
            let mut acc = zero.clone();
            for k in j..i {
                acc = acc - l[i][k].clone() * inv[k][j].clone();
            }
            inv[i][j] = acc;
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn w0_has_unit_determinant() {
        for n in 1..=5 {
            assert!((w0_representative(n).to_matrix().determinant() - c(1.0)).norm() < 1e-14);
            for subset in [vec![], vec![0], vec![0, 1]] {
                if subset.iter().all(|&k| k + 1 < n) {
                    let m = cell_representative(n, &subset).to_matrix();
                    assert!((m.determinant() - c(1.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn blocks() {
        assert_eq!(levi_blocks(3, &[]), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(levi_blocks(3, &[0]), vec![(0, 2), (2, 3)]);
        assert_eq!(levi_blocks(4, &[0, 2]), vec![(0, 2), (2, 4)]);
        assert_eq!(levi_blocks(3, &[0, 1]), vec![(0, 3)]);
    }

    #[test]
    fn two_by_two_closed_form() {
        // b = [[a, c], [0, 1/a]]: t = (1/c, c), n₂ entry a/c, n₁ entry 1/(ac)
        for (a, cc) in [(1.0, 1.0), (2.0, -0.5), (-1.5, 3.0)] {
            let b = NumericMatrix::from_row_slice(2, 2, &[c(a), c(cc), c(0.0), c(1.0 / a)]);
            let f = bruhat_factorize(&b, &[]).unwrap();
            assert!((f.t[0] - c(1.0 / cc)).norm() < 1e-14);
            assert!((f.t[1] - c(cc)).norm() < 1e-14);
            assert!((f.n2[(1, 0)] - c(a / cc)).norm() < 1e-14);
            assert!((f.n1[(1, 0)] - c(1.0 / (a * cc))).norm() < 1e-14);
            assert!(f.residual() < 1e-14);
        }
    }

    #[test]
    fn identity_not_in_cell() {
        let i = NumericMatrix::identity(3, 3);
        assert!(matches!(bruhat_factorize(&i, &[]), Err(Error::NotInCell(_))));
        let lower = NumericMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(1.0), c(1.0)]);
        assert!(bruhat_factorize(&lower, &[]).is_err());
    }

    #[test]
    fn generic_lu_and_inverse() {
        let g = vec![vec![c(2.0), c(1.0)], vec![c(4.0), c(5.0)]];
        let (l, u) = lu_generic(&g).unwrap();
        assert_eq!(l[1][0], c(2.0));
        assert_eq!(u[1][1], c(3.0));
        let inv = lower_unitriangular_inverse(&l);
        assert_eq!(inv[1][0], c(-2.0));
    }
}
