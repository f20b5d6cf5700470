//! Dense complex linear algebra sized for the two-atom problem.
//!
//! Every matrix in the crate is 2x2 or 4x4, so no external eigensolver is
//! pulled in: Hermitian eigendecomposition is a cyclic complex Jacobi
//! iteration, which at these dimensions converges to machine precision in a
//! handful of sweeps and keeps the eigenvector matrix unitary by
//! construction.

use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    /// Operands disagree in dimension.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// A square matrix was required.
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    /// Hermiticity defect max|m - m^dagger| exceeded the tolerance.
    #[error("matrix is not Hermitian: defect {0:.3e}")]
    NotHermitian(f64),
}

pub type NumericsResult<T> = Result<T, NumericsError>;

/// Single knob for every absolute tolerance used by validity checks.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { atol: 1e-12 }
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec {
    entries: Vec<C64>,
}

impl CVec {
    pub fn new(entries: Vec<C64>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: vec![C64::new(0.0, 0.0); dim] }
    }

    pub fn from_reals(xs: &[f64]) -> Self {
        Self { entries: xs.iter().map(|&x| C64::new(x, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.entries.iter()
    }

    /// Inner product <self|other>, conjugating `self`.
    pub fn dot(&self, other: &CVec) -> C64 {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: C64) -> CVec {
        CVec::new(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &CVec) -> CVec {
        assert_eq!(self.dim(), other.dim(), "add of mismatched dimensions");
        CVec::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CVec) -> CVec {
        assert_eq!(self.dim(), other.dim(), "sub of mismatched dimensions");
        CVec::new(self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect())
    }

    pub fn normalized(&self) -> CVec {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        self.scale(C64::new(1.0 / n, 0.0))
    }

    pub fn max_abs_diff(&self, other: &CVec) -> f64 {
        assert_eq!(self.dim(), other.dim(), "diff of mismatched dimensions");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for CVec {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.entries[i]
    }
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self { rows: r, cols: c, entries }
    }

    pub fn from_reals(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, C64::new(x, 0.0));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matmul of mismatched dimensions");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &CVec) -> CVec {
        assert_eq!(self.cols, v.dim(), "matvec of mismatched dimensions");
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..self.cols {
                *slot += self.get(i, j) * v[j];
            }
        }
        CVec::new(out)
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add of mismatched dimensions");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub of mismatched dimensions");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: C64) -> CMat {
        let entries = self.entries.iter().map(|a| a * c).collect();
        CMat { rows: self.rows, cols: self.cols, entries }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "diff of mismatched dimensions");
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max|m - m^dagger| over entries; zero for exactly Hermitian input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.hermiticity_defect() <= tol.atol
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

/// Kronecker product, row-major blocks of `a[i][j] * b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let f = a.get(ia, ja);
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out.set(ia * b.rows() + ib, ja * b.cols() + jb, f * b.get(ib, jb));
                }
            }
        }
    }
    out
}

/// Hermitian eigendecomposition: real eigenvalues ascending, orthonormal
/// eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

impl HermEig {
    /// Column `k` as a vector.
    pub fn eigenvector(&self, k: usize) -> CVec {
        CVec::new((0..self.eigenvectors.rows()).map(|i| self.eigenvectors.get(i, k)).collect())
    }

    /// V diag(lambda) V^dagger, for reconstruction checks.
    pub fn reconstruct(&self) -> CMat {
        let n = self.eigenvalues.len();
        let mut d = CMat::zeros(n, n);
        for (i, &l) in self.eigenvalues.iter().enumerate() {
            d.set(i, i, C64::new(l, 0.0));
        }
        self.eigenvectors.mul(&d).mul(&self.eigenvectors.dagger())
    }
}

pub fn herm_eig(m: &CMat) -> NumericsResult<HermEig> {
    herm_eig_with(m, &Tolerances::default())
}

/// Cyclic complex Jacobi. Each (p, q) step factors the 2x2 block through a
/// phase that makes it real symmetric, then applies the standard stable
/// rotation; the accumulated V stays unitary because every step is.
pub fn herm_eig_with(m: &CMat, tol: &Tolerances) -> NumericsResult<HermEig> {
    if !m.is_square() {
        return Err(NumericsError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let defect = m.hermiticity_defect();
    if defect > tol.atol {
        return Err(NumericsError::NotHermitian(defect));
    }

    let n = m.rows();
    let mut a = m.clone();
    // symmetrize away the sub-tolerance defect so the iteration sees an
    // exactly Hermitian matrix
    for i in 0..n {
        for j in 0..n {
            let h = (a.get(i, j) + a.get(j, i).conj()) * C64::new(0.5, 0.0);
            a.set(i, j, h);
            a.set(j, i, h.conj());
        }
        let d = a.get(i, i);
        a.set(i, i, C64::new(d.re, 0.0));
    }
    let mut v = CMat::identity(n);

    let scale: f64 = a.entries.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(HermEig { eigenvalues: vec![0.0; n], eigenvectors: v });
    }
    let target = (f64::EPSILON * scale).powi(2);

    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a.get(p, q).norm_sqr())
            .sum();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{i alpha}
                let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // R[p][p] = c, R[p][q] = s, R[q][p] = -s e^{-ia}, R[q][q] = c e^{-ia}
                let rqp = -s * phase.conj();
                let rqq = c * phase.conj();
                // rows: R^dagger A
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c + aqj * rqp.conj());
                    a.set(q, j, apj * s + aqj * rqq.conj());
                }
                // columns: (R^dagger A) R, and accumulate V R
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c + aiq * rqp);
                    a.set(i, q, aip * s + aiq * rqq);
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c + viq * rqp);
                    v.set(i, q, vip * s + viq * rqq);
                }
                // pin the rotated pair exactly
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
                let dp = a.get(p, p);
                let dq = a.get(q, q);
                a.set(p, p, C64::new(dp.re, 0.0));
                a.set(q, q, C64::new(dq.re, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = CMat::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, k, v.get(i, src));
        }
    }
    Ok(HermEig { eigenvalues, eigenvectors: vectors })
}

/// <state|op|state>. Real within 1e-12 whenever `op` is Hermitian.
pub fn expectation(state: &CVec, op: &CMat) -> NumericsResult<C64> {
    if !op.is_square() {
        return Err(NumericsError::NotSquare { rows: op.rows(), cols: op.cols() });
    }
    if op.rows() != state.dim() {
        return Err(NumericsError::DimensionMismatch(op.rows(), state.dim()));
    }
    Ok(state.dot(&op.mul_vec(state)))
}
