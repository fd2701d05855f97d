//! Dense complex matrices and a cyclic Jacobi Hermitian eigensolver.
//!
//! Everything here is row-major and dense. Dimensions stay small (the reduced
//! operators are a handful of rows, the full-space Hamiltonians a few hundred),
//! so clarity wins over blocking or SIMD.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexVector = Vec<Complex64>;

/// Tolerance on `‖M − M†‖_max` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `‖U†U − I‖_max` accepted as unitary.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance on `|‖ψ‖² − 1|` accepted as a normalized state.
pub const STATE_NORM_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-14;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian inner product `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::default(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(
            rows.iter().all(|r| r.as_ref().len() == n_cols),
            "ragged rows"
        );
        Self::from_fn(n_rows, n_cols, |r, c| {
            Complex64::new(rows[r].as_ref()[c], 0.0)
        })
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
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

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> ComplexVector {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        max_abs_diff(&self.data, &other.data)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `‖M − M†‖_max`, or infinity for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::default() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `‖M†M − I‖_max ≤ tol`. Non-square matrices are never unitary.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let gram = &m.adjoint() * m;
    gram.max_abs_diff(&ComplexMatrix::identity(m.rows())) <= tol
}

/// Spectral decomposition `M = V·diag(λ)·V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V·f(λ)·V†` for a spectral function `f`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * weights[k] * v[(c, k)].conj())
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::new(l, 0.0))
    }

    /// `exp(itM)`.
    pub fn propagator(&self, t: f64) -> ComplexMatrix {
        self.spectral_map(|l| Complex64::from_polar(1.0, t * l))
    }

    /// `exp(itM)·ψ` without forming the propagator.
    pub fn evolve(&self, t: f64, psi: &[Complex64]) -> ComplexVector {
        let coeffs = self.spectral_coefficients(psi);
        self.evolve_coefficients(t, &coeffs)
    }

    /// Coordinates `V†ψ` of a state in the eigenbasis.
    pub fn spectral_coefficients(&self, psi: &[Complex64]) -> ComplexVector {
        assert_eq!(psi.len(), self.dim(), "state dimension mismatch");
        let v = &self.eigenvectors;
        (0..self.dim())
            .map(|k| (0..self.dim()).map(|r| v[(r, k)].conj() * psi[r]).sum())
            .collect()
    }

    /// Rebuilds `exp(itM)·ψ` from precomputed `V†ψ`.
    pub fn evolve_coefficients(&self, t: f64, coeffs: &[Complex64]) -> ComplexVector {
        let n = self.dim();
        let phased: Vec<Complex64> = coeffs
            .iter()
            .zip(&self.eigenvalues)
            .map(|(a, &l)| a * Complex64::from_polar(1.0, t * l))
            .collect();
        let v = &self.eigenvectors;
        (0..n)
            .map(|r| (0..n).map(|k| v[(r, k)] * phased[k]).sum())
            .collect()
    }

    /// Single amplitude `⟨row|exp(itM)|ψ⟩` from precomputed `V†ψ`.
    pub fn amplitude(&self, row: usize, t: f64, coeffs: &[Complex64]) -> Complex64 {
        let v = &self.eigenvectors;
        coeffs
            .iter()
            .zip(&self.eigenvalues)
            .enumerate()
            .map(|(k, (a, &l))| v[(row, k)] * a * Complex64::from_polar(1.0, t * l))
            .sum()
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ContractViolation(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::ContractViolation(
            "matrix has non-finite entries".into(),
        ));
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::ContractViolation(format!(
            "matrix is not Hermitian (max |M - M^H| = {defect:e})"
        )));
    }
    Ok(())
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation acts on a `(p, q)` plane as
///
/// ```text
/// W = [  c           s·e^{iφ} ]      where a_pq = |a_pq|·e^{iφ}
///     [ -s·e^{-iφ}   c        ]
/// ```
///
/// which is the real Jacobi rotation conjugated by the phase that makes
/// `a_pq` real, so `W†AW` has a zero in position `(p, q)`. Sweeps stop once
/// the off-diagonal Frobenius mass is at most `1e-14·‖M‖_F`.
pub fn hermitian_eigendecompose(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let n = m.rows();
    // Symmetrize so that round-off in the input does not leak into the iteration.
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::new(m[(r, r)].re, 0.0)
        } else {
            (m[(r, c)] + m[(c, r)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    let mut converged = false;
    let mut off = off_diagonal_norm(&a);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_diagonal: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let phase = apq / abs;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * abs);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let w_pq = phase * s;
    let w_qp = -phase.conj() * s;

    let n = a.rows();
    // A <- A·W
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * w_qp;
        a[(k, q)] = akp * w_pq + akq * c;
    }
    // A <- W†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * w_qp.conj();
        a[(q, k)] = apk * w_pq.conj() + aqk * c;
    }
    a[(p, q)] = Complex64::default();
    a[(q, p)] = Complex64::default();
    a[(p, p)] = Complex64::new(app - t * abs, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * abs, 0.0);
    // V <- V·W
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * c;
    }
}

/// `exp(itM)` for Hermitian `M`, via its eigendecomposition.
pub fn unitary_exp(m: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(hermitian_eigendecompose(m)?.propagator(t))
}
