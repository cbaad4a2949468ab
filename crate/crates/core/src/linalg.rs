//! Dense complex linear algebra with a fixed tolerance policy.
//!
//! Everything goes through one reduced-row-echelon routine with partial
//! pivoting. A pivot counts as zero when its modulus is at most
//! `rank_eps × max |entry|` of the input matrix.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use thiserror::Error;

use crate::C64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("non-finite entry")]
    NonFinite,
    #[error("tolerances must be positive with residual_eps < 1")]
    BadTolerance,
}

/// Absolute residual bound and relative pivot threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    pub residual_eps: f64,
    pub rank_eps: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            residual_eps: 1e-9,
            rank_eps: 1e-8,
        }
    }
}

impl ToleranceProfile {
    pub fn new(residual_eps: f64, rank_eps: f64) -> Result<Self, LinalgError> {
        let ok = residual_eps > 0.0 && residual_eps < 1.0 && rank_eps > 0.0 && rank_eps.is_finite();
        if ok {
            Ok(ToleranceProfile {
                residual_eps,
                rank_eps,
            })
        } else {
            Err(LinalgError::BadTolerance)
        }
    }

    /// Scale-aware zero test: `|v| ≤ residual_eps × (1 + scale)`.
    pub fn is_zero(&self, v: C64, scale: f64) -> bool {
        v.norm() <= self.residual_eps * (1.0 + scale)
    }
}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows"));
        }
        let data: Vec<C64> = rows.iter().flatten().copied().collect();
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Appends one row; the matrix must be empty or have matching width.
    pub fn push_row(&mut self, row: &[C64]) {
        if self.rows == 0 && self.data.is_empty() {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row width");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

struct Echelon {
    m: ComplexMatrix,
    pivots: Vec<usize>,
}

/// Reduces in place over the first `ncols` columns (trailing columns are
/// carried along, as for an augmented system).
fn rref(mut m: ComplexMatrix, ncols: usize, threshold: f64) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.rows {
            break;
        }
        let (p, best) = (r..m.rows)
            .map(|i| (i, m[(i, c)].norm()))
            .fold((r, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best <= threshold {
            continue;
        }
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = m[(r, c)].inv();
        for j in 0..m.cols {
            m[(r, j)] *= inv;
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m[(i, c)];
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m.cols {
                let v = m[(r, j)];
                m[(i, j)] -= factor * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { m, pivots }
}

fn threshold(a: &ComplexMatrix, tol: &ToleranceProfile) -> f64 {
    tol.rank_eps * a.max_abs()
}

/// Numerical rank.
pub fn rank(a: &ComplexMatrix, tol: &ToleranceProfile) -> usize {
    if a.max_abs() == 0.0 {
        return 0;
    }
    rref(a.clone(), a.cols, threshold(a, tol)).pivots.len()
}

fn basis_from(e: &Echelon, ncols: usize) -> Vec<Vec<C64>> {
    let mut is_pivot = vec![false; ncols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![C64::new(0.0, 0.0); ncols];
        v[free] = C64::new(1.0, 0.0);
        for (row, &pc) in e.pivots.iter().enumerate() {
            v[pc] = -e.m[(row, free)];
        }
        gauge(&mut v);
        out.push(v);
    }
    out
}

/// Rescales to ∞-norm 1 with the first largest-modulus entry real positive.
pub fn gauge(v: &mut [C64]) {
    let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return;
    }
    let lead = v
        .iter()
        .position(|z| z.norm() >= m * (1.0 - 1e-12))
        .unwrap_or(0);
    let phase = v[lead].conj() / (v[lead].norm() * m);
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[lead] = C64::new(v[lead].re, 0.0);
}

/// Basis of the numerical nullspace, each vector in canonical gauge.
pub fn nullspace(a: &ComplexMatrix, tol: &ToleranceProfile) -> Vec<Vec<C64>> {
    if a.rows == 0 || a.max_abs() == 0.0 {
        return (0..a.cols)
            .map(|i| {
                let mut v = vec![C64::new(0.0, 0.0); a.cols];
                v[i] = C64::new(1.0, 0.0);
                v
            })
            .collect();
    }
    let e = rref(a.clone(), a.cols, threshold(a, tol));
    basis_from(&e, a.cols)
}

/// Consistent affine system: a minimal-norm particular solution plus a
/// nullspace basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<C64>,
    pub nullspace: Vec<Vec<C64>>,
}

pub fn residual_bound(a: &ComplexMatrix, tol: &ToleranceProfile) -> f64 {
    tol.residual_eps * a.max_abs().max(1.0)
}

pub fn solve_affine(
    a: &ComplexMatrix,
    b: &[C64],
    tol: &ToleranceProfile,
) -> Result<AffineSolution, LinalgError> {
    if b.len() != a.rows {
        return Err(LinalgError::Dimension("right-hand side length"));
    }
    let n = a.cols;
    let mut aug = ComplexMatrix::zeros(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, n)] = b[i];
    }
    let thr = threshold(a, tol);
    let e = if a.max_abs() == 0.0 {
        Echelon {
            m: aug,
            pivots: Vec::new(),
        }
    } else {
        rref(aug, n, thr)
    };

    let mut x = vec![C64::new(0.0, 0.0); n];
    for (row, &pc) in e.pivots.iter().enumerate() {
        x[pc] = e.m[(row, n)];
    }
    let basis = basis_from(&e, n);

    // project out the nullspace component to reach the minimal-norm solution
    let ortho = orthonormalize(&basis);
    for q in &ortho {
        let dot: C64 = q.iter().zip(&x).map(|(qi, xi)| qi.conj() * xi).sum();
        for (xi, qi) in x.iter_mut().zip(q) {
            *xi -= dot * qi;
        }
    }

    let ax = a.mul_vec(&x);
    let residual = ax
        .iter()
        .zip(b)
        .map(|(l, r)| (l - r).norm())
        .fold(0.0, f64::max);
    if residual > residual_bound(a, tol) {
        return Err(LinalgError::Inconsistent { residual });
    }
    Ok(AffineSolution {
        particular: x,
        nullspace: basis,
    })
}

fn orthonormalize(vs: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let dot: C64 = q.iter().zip(&w).map(|(qi, wi)| qi.conj() * wi).sum();
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= dot * qi;
                }
            }
        }
        let norm = Float::sqrt(w.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-14 {
            for wi in w.iter_mut() {
                *wi /= norm;
            }
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let tol = ToleranceProfile::default();
        assert_eq!(rank(&ComplexMatrix::identity(2), &tol), 2);
        assert_eq!(rank(&real(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol), 1);
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), w],
            vec![w, w * w],
            vec![w * w, c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(rank(&m, &tol), 1);
        assert_eq!(rank(&ComplexMatrix::zeros(3, 2), &tol), 0);
    }

    #[test]
    fn nullspace_examples() {
        let tol = ToleranceProfile::default();
        assert!(nullspace(&ComplexMatrix::identity(2), &tol).is_empty());
        assert_eq!(nullspace(&ComplexMatrix::zeros(2, 2), &tol).len(), 2);
        let ns = nullspace(&real(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![c(1.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn gauge_is_canonical() {
        let mut v = vec![c(0.0, 0.5), c(0.0, -2.0), c(1.0, 0.0)];
        gauge(&mut v);
        assert_eq!(v[1], c(1.0, 0.0));
        assert!((v[0] - c(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn affine_examples() {
        let tol = ToleranceProfile::default();
        let s = solve_affine(
            &ComplexMatrix::identity(2),
            &[c(1.0, 0.0), c(2.0, 0.0)],
            &tol,
        )
        .unwrap();
        assert_eq!(s.particular, vec![c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(s.nullspace.is_empty());

        let s = solve_affine(&real(&[&[1.0, 1.0]]), &[c(2.0, 0.0)], &tol).unwrap();
        assert!((s.particular[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((s.particular[1] - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(s.nullspace, vec![vec![c(1.0, 0.0), c(-1.0, 0.0)]]);

        let err =
            solve_affine(&real(&[&[1.0], &[1.0]]), &[c(0.0, 0.0), c(1.0, 0.0)], &tol).unwrap_err();
        assert!(matches!(err, LinalgError::Inconsistent { .. }));
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceProfile::new(1e-9, 1e-8).is_ok());
        assert!(ToleranceProfile::new(0.0, 1e-8).is_err());
        assert!(ToleranceProfile::new(1.5, 1e-8).is_err());
        assert!(ToleranceProfile::new(1e-9, -1.0).is_err());
    }
}
