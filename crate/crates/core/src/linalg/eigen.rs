//! Cyclic complex Jacobi diagonalisation of Hermitian matrices.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{CMatrix, C64, ONE, ZERO};
use crate::{tol, Error, Result};

/// Eigen-decomposition `M = V diag(λ) V†`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: CMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        CMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v.get(i, k) * v.get(j, k).conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

fn off_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalises a Hermitian matrix.
///
/// Stops once the off-diagonal Hilbert-Schmidt norm falls below
/// `tol · ‖M‖_HS`. Eigenvectors of (near-)degenerate eigenvalues are
/// re-orthonormalised so the returned basis is unitary to rounding.
pub fn hermitian_eigen(m: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    let n = m.ensure_square()?;
    m.ensure_finite()?;
    m.ensure_hermitian(tol::HERMITIAN)?;

    // Work on the exactly Hermitian part.
    let h = m.hermitian_part();
    let mut a: Vec<C64> = h.as_slice().to_vec();
    let mut v = CMatrix::identity(n);
    let target = tol * h.hs_norm();

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == tol::EIGEN_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vecs = CMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    orthonormalise_clusters(&mut vecs, &eigenvalues, h.hs_norm());

    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: vecs,
        sweeps,
    })
}

/// One unitary rotation in the `(p, q)` plane annihilating `a[p][q]`.
fn rotate(a: &mut [C64], v: &mut CMatrix, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let pc = phase.conj();
    // G restricted to (p, q).
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = pc * (-s);
    let g_qq = pc * c;

    // A ← A G
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * g_pp + akq * g_qp;
        a[k * n + q] = akp * g_pq + akq * g_qq;
    }
    // A ← G† A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);

    // V ← V G
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * g_pp + vkq * g_qp);
        v.set(k, q, vkp * g_pq + vkq * g_qq);
    }
}

fn orthonormalise_clusters(vecs: &mut CMatrix, values: &[f64], scale: f64) {
    let n = values.len();
    let gap = 1e-10 * scale.max(1.0);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            for j in start..end {
                for k in start..j {
                    let mut dot = ZERO;
                    for i in 0..n {
                        dot += vecs.get(i, k).conj() * vecs.get(i, j);
                    }
                    for i in 0..n {
                        let x = vecs.get(i, j) - vecs.get(i, k) * dot;
                        vecs.set(i, j, x);
                    }
                }
                let norm = (0..n).map(|i| vecs.get(i, j).norm_sqr()).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for i in 0..n {
                        let x = vecs.get(i, j) / norm;
                        vecs.set(i, j, x);
                    }
                } else {
                    vecs.set(j, j, ONE);
                }
            }
        }
        start = end;
    }
}
