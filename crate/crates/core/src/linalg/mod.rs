//! Dense complex matrices for small dimensions.

mod eigen;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

pub use eigen::{hermitian_eigen, HermitianEigen};

pub type C64 = num_complex::Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `exp(iθ)`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let m = CMatrix { rows, cols, data };
        m.ensure_finite()?;
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// `|ψ⟩⟨φ|`.
    pub fn outer(psi: &[C64], phi: &[C64]) -> Self {
        Self::from_fn(psi.len(), phi.len(), |i, j| psi[i] * phi[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn ensure_same_shape(&self, other: &CMatrix, op: &'static str) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            })
        }
    }

    /// Matrix product.
    pub fn mat_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        self.ensure_finite()?;
        other.ensure_finite()?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &CMatrix) -> CMatrix {
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * p..(k + 1) * p];
                for (o, &b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        CMatrix {
            rows: n,
            cols: p,
            data: out,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Result<C64> {
        let n = self.ensure_square()?;
        Ok((0..n).map(|i| self.data[i * n + i]).sum())
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> Result<C64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                op: "trace_product",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut acc = ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.data[i * self.cols + k] * other.data[k * other.cols + i];
            }
        }
        Ok(acc)
    }

    /// Hilbert-Schmidt (Frobenius) norm `√Tr[A†A]`.
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        self.ensure_same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn hs_distance(&self, other: &CMatrix) -> Result<f64> {
        self.ensure_same_shape(other, "hs_distance")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Max-norm of `A - A†`.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.ensure_square()?;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        Ok(dev)
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let dev = self.hermitian_deviation()?;
        if dev <= tol * self.max_abs().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation: dev })
        }
    }

    /// Max-norm of `A†A - 1`.
    pub fn unitary_deviation(&self) -> Result<f64> {
        let n = self.ensure_square()?;
        let g = self.adjoint().mul_unchecked(self);
        Ok(g.max_abs_diff(&CMatrix::identity(n))?)
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let dev = self.unitary_deviation()?;
        if dev <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation: dev })
        }
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Non-negative integer power of a square matrix.
    pub fn pow(&self, k: usize) -> Result<CMatrix> {
        let n = self.ensure_square()?;
        let mut result = CMatrix::identity(n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(result)
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        })
    }

    /// `(A - A†)/(2i)`.
    pub fn antihermitian_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) - self.get(j, i).conj()) * C64::new(0.0, -0.5)
        })
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        Ok(&self.mat_mul(other)? - &other.mat_mul(self)?)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &CMatrix) -> Result<CMatrix> {
        Ok(&self.mat_mul(other)? + &other.mat_mul(self)?)
    }

    /// `A · x` for a column vector `x`.
    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: (self.rows, self.cols),
                right: (x.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(C64, C64) -> C64) -> CMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// `⟨φ|ψ⟩`.
pub fn inner(phi: &[C64], psi: &[C64]) -> C64 {
    phi.iter().zip(psi).map(|(a, b)| a.conj() * b).sum()
}

pub fn vector_norm(psi: &[C64]) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

// Operator forms panic on shape mismatch; use the `Result` methods where the
// shapes are not already known to agree.

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        self.mul_unchecked(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: C64) -> CMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: f64) -> CMatrix {
        self.scale(C64::new(rhs, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pseudo_random(n: usize, seed: u64) -> CMatrix {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        CMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn identity_product() {
        let i3 = CMatrix::identity(3);
        assert_eq!(i3.mat_mul(&i3).unwrap(), i3);
    }

    #[test]
    fn pauli_x_squares_to_identity() {
        let x = CMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        assert_eq!(x.mat_mul(&x).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn product_matches_triple_loop() {
        let a = pseudo_random(4, 1);
        let b = pseudo_random(4, 2);
        let p = a.mat_mul(&b).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += a.get(i, k) * b.get(k, j);
                }
                assert!((p.get(i, j) - s).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn product_shape_errors() {
        let a = CMatrix::zeros(2, 3);
        assert!(matches!(
            a.mat_mul(&a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let r = CMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]);
        assert_eq!(r, Err(Error::NonFinite));
        let bad = CMatrix::from_fn(1, 1, |_, _| c(f64::INFINITY, 0.0));
        assert_eq!(bad.mat_mul(&CMatrix::identity(1)), Err(Error::NonFinite));
        assert!(matches!(
            CMatrix::from_vec(2, 2, vec![ZERO; 3]),
            Err(Error::EntryCount { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(CMatrix::identity(4).adjoint(), CMatrix::identity(4));
        let a = CMatrix::from_vec(2, 2, vec![ZERO, I, ZERO, ZERO]).unwrap();
        let expected = CMatrix::from_vec(2, 2, vec![ZERO, ZERO, -I, ZERO]).unwrap();
        assert_eq!(a.adjoint(), expected);
        let r = pseudo_random(5, 9);
        assert_eq!(r.adjoint().adjoint(), r);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(CMatrix::identity(5).trace().unwrap(), c(5.0, 0.0));
        assert!(matches!(
            CMatrix::zeros(2, 3).trace(),
            Err(Error::NotSquare { .. })
        ));
        let a = pseudo_random(8, 3);
        let b = pseudo_random(8, 4);
        let ab = a.mat_mul(&b).unwrap().trace().unwrap();
        let ba = b.mat_mul(&a).unwrap().trace().unwrap();
        assert!((ab - ba).norm() <= 1e-12 * ab.norm().max(1.0));
        assert!((a.trace_product(&b).unwrap() - ab).norm() < 1e-13);
    }

    #[test]
    fn hs_norm_examples() {
        assert_eq!(CMatrix::zeros(3, 3).hs_norm(), 0.0);
        assert!((CMatrix::identity(7).hs_norm() - 7f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = pseudo_random(3, 7);
        let mut r = CMatrix::identity(3);
        for _ in 0..5 {
            r = &r * &a;
        }
        assert!(a.pow(5).unwrap().max_abs_diff(&r).unwrap() < 1e-13);
        assert_eq!(a.pow(0).unwrap(), CMatrix::identity(3));
    }

    #[test]
    fn cartesian_parts_recombine() {
        let a = pseudo_random(4, 11);
        let re = a.hermitian_part();
        let im = a.antihermitian_part();
        assert!(re.hermitian_deviation().unwrap() < 1e-15);
        assert!(im.hermitian_deviation().unwrap() < 1e-15);
        let back = &re + &im.scale(I);
        assert!(back.max_abs_diff(&a).unwrap() < 1e-15);
    }
}
