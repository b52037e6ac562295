//! Clock and shift operators, the trig quartet, δ-dressed operators and the
//! moment primitives everything else is built from.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{cis, hermitian_eigen, vector_norm, CMatrix, C64, ONE, ZERO};
use crate::{tol, Error, Operator, Result};

/// The pair `(U, V)` in dimension `N`, optionally phase-rotated.
#[derive(Clone, Debug)]
pub struct SchwingerPair {
    n: usize,
    u: CMatrix,
    v: CMatrix,
    u_phase: C64,
    v_phase: C64,
    omega: C64,
    sin_half: f64,
    cos_half: f64,
}

impl SchwingerPair {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension { dim: n, min: 2 });
        }
        let half = PI / n as f64;
        // cos(π/2) is not exactly zero in floating point; N = 2 relies on it being so.
        let cos_half = if n == 2 { 0.0 } else { half.cos() };
        let mut pair = SchwingerPair {
            n,
            u: CMatrix::zeros(n, n),
            v: CMatrix::zeros(n, n),
            u_phase: ONE,
            v_phase: ONE,
            omega: root_of_unity(n, 1),
            sin_half: half.sin(),
            cos_half,
        };
        pair.u = pair.u_pow(1);
        pair.v = pair.v_pow(1);
        Ok(pair)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    /// `ω = exp(2πi/N)`.
    pub fn omega(&self) -> C64 {
        self.omega
    }

    /// Commutation angle `Φ = 2π/N`.
    pub fn phi(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// `sin(π/N)`.
    pub fn sin_half(&self) -> f64 {
        self.sin_half
    }

    /// `cos(π/N)`, exactly zero for `N = 2`.
    pub fn cos_half(&self) -> f64 {
        self.cos_half
    }

    /// `sin(2π/N) = 2 sin(π/N) cos(π/N)`.
    pub fn sin_phi(&self) -> f64 {
        2.0 * self.sin_half * self.cos_half
    }

    /// `A = tan(π/N)`; infinite for `N = 2`.
    pub fn a(&self) -> f64 {
        if self.cos_half == 0.0 {
            f64::INFINITY
        } else {
            self.sin_half / self.cos_half
        }
    }

    /// `ε = A/(1+A)`, written as `sin/(sin + cos)` so that `N = 2` gives 1.
    pub fn epsilon(&self) -> f64 {
        self.sin_half / (self.sin_half + self.cos_half)
    }

    pub fn u_phase(&self) -> C64 {
        self.u_phase
    }

    pub fn v_phase(&self) -> C64 {
        self.v_phase
    }

    /// `U^k` for any integer `k`.
    pub fn u_pow(&self, k: i64) -> CMatrix {
        let n = self.n;
        let ph = phase_pow(self.u_phase, k);
        let diag: Vec<C64> = (0..n)
            .map(|a| root_of_unity(n, (a as i64) * k) * ph)
            .collect();
        CMatrix::from_diag(&diag)
    }

    /// `V^k` for any integer `k`; `V^k|u_α⟩ = |u_{α-k}⟩` up to the phase.
    pub fn v_pow(&self, k: i64) -> CMatrix {
        let n = self.n;
        let ph = phase_pow(self.v_phase, k);
        let mut m = CMatrix::zeros(n, n);
        for a in 0..n {
            m.set(wrap(a as i64 - k, n), a, ph);
        }
        m
    }

    /// `U^α V^β`.
    pub fn weyl_monomial(&self, alpha: i64, beta: i64) -> CMatrix {
        let n = self.n;
        let ph = phase_pow(self.u_phase, alpha) * phase_pow(self.v_phase, beta);
        let mut m = CMatrix::zeros(n, n);
        for b in 0..n {
            let row = wrap(b as i64 - beta, n);
            m.set(row, b, root_of_unity(n, row as i64 * alpha) * ph);
        }
        m
    }

    pub fn trig(&self) -> TrigQuartet {
        TrigQuartet {
            c_u: self.u.hermitian_part(),
            s_u: self.u.antihermitian_part(),
            c_v: self.v.hermitian_part(),
            s_v: self.v.antihermitian_part(),
        }
    }

    /// `U → e^{iφ}U`, `V → e^{iθ}V`.
    pub fn phase_rotate(&self, phi: f64, theta: f64) -> SchwingerPair {
        let mut p = self.clone();
        p.u_phase = self.u_phase * cis(phi);
        p.v_phase = self.v_phase * cis(theta);
        p.u = self.u.scale(cis(phi));
        p.v = self.v.scale(cis(theta));
        p
    }
}

/// `exp(2πi k/N)` with the exponent reduced mod `N` first.
pub fn root_of_unity(n: usize, k: i64) -> C64 {
    let r = wrap(k, n);
    match (4 * r).checked_rem(n) {
        Some(0) => {
            // Quarter turns are exact.
            match 4 * r / n {
                0 => ONE,
                1 => C64::new(0.0, 1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, -1.0),
            }
        }
        _ => cis(2.0 * PI * r as f64 / n as f64),
    }
}

#[inline]
pub(crate) fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

fn phase_pow(p: C64, k: i64) -> C64 {
    if p == ONE {
        ONE
    } else {
        p.powi(k as i32)
    }
}

/// `C_U = Re U`, `S_U = Im U`, `C_V = Re V`, `S_V = Im V`.
#[derive(Clone, Debug)]
pub struct TrigQuartet {
    pub c_u: CMatrix,
    pub s_u: CMatrix,
    pub c_v: CMatrix,
    pub s_v: CMatrix,
}

impl TrigQuartet {
    /// U-side operators `[C_U, S_U]`.
    pub fn u_side(&self) -> [&CMatrix; 2] {
        [&self.c_u, &self.s_u]
    }

    /// V-side operators `[C_V, S_V]`.
    pub fn v_side(&self) -> [&CMatrix; 2] {
        [&self.c_v, &self.s_v]
    }
}

/// A validated density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    rho: CMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(rho: CMatrix) -> Result<Self> {
        let n = rho.ensure_square()?;
        if n == 0 {
            return Err(Error::Dimension { dim: 0, min: 1 });
        }
        rho.ensure_finite()?;
        let dev = rho.hermitian_deviation()?;
        if dev > tol::HERMITIAN {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = rho.trace()?;
        let terr = (tr - ONE).norm();
        if terr > tol::TRACE {
            return Err(Error::InvalidState {
                reason: "trace differs from one",
                value: tr.re,
            });
        }
        let rho = rho.hermitian_part();
        let eig = hermitian_eigen(&rho, tol::EIGEN)?;
        let lo = eig.eigenvalues[0];
        if lo < tol::PSD_FLOOR {
            return Err(Error::InvalidState {
                reason: "negative eigenvalue",
                value: lo,
            });
        }
        Ok(DensityMatrix { rho })
    }

    /// `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn from_state_vector(psi: &[C64]) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::Dimension { dim: 0, min: 1 });
        }
        let norm = vector_norm(psi);
        if !norm.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm == 0.0 {
            return Err(Error::InvalidState {
                reason: "zero state vector",
                value: 0.0,
            });
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(DensityMatrix {
            rho: CMatrix::outer(&unit, &unit).hermitian_part(),
        })
    }

    /// `GG†/Tr[GG†]`, positive by construction.
    pub fn from_gram(g: &CMatrix) -> Result<Self> {
        g.ensure_square()?;
        let w = g.mat_mul(&g.adjoint())?;
        let tr = w.trace()?.re;
        if tr <= 0.0 {
            return Err(Error::InvalidState {
                reason: "zero Gram matrix",
                value: tr,
            });
        }
        Ok(DensityMatrix {
            rho: w.scale(C64::new(1.0 / tr, 0.0)).hermitian_part(),
        })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        DensityMatrix {
            rho: CMatrix::identity(n).scale(C64::new(1.0 / n as f64, 0.0)),
        }
    }

    /// `|u_α⟩⟨u_α|`.
    pub fn basis_u(n: usize, alpha: usize) -> Self {
        let mut psi = alloc::vec![ZERO; n];
        psi[alpha % n] = ONE;
        DensityMatrix {
            rho: CMatrix::outer(&psi, &psi),
        }
    }

    /// `|v_β⟩⟨v_β|` with `|v_β⟩ = N^{-1/2} Σ_α ω^{αβ}|u_α⟩`.
    pub fn basis_v(n: usize, beta: usize) -> Self {
        let s = 1.0 / (n as f64).sqrt();
        let psi: Vec<C64> = (0..n)
            .map(|a| root_of_unity(n, (a * beta) as i64) * s)
            .collect();
        DensityMatrix {
            rho: CMatrix::outer(&psi, &psi).hermitian_part(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix {
        self.rho
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> f64 {
        self.rho.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// FNV-1a over the entry bit patterns.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for z in self.rho.as_slice() {
            for part in [z.re.to_bits(), z.im.to_bits()] {
                for byte in part.to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }

    /// `Tr[Oρ]`.
    pub fn expect(&self, o: &CMatrix) -> Result<C64> {
        expectation(self, o)
    }
}

/// `⟨O⟩ = Tr[Oρ]`.
pub fn expectation(rho: &DensityMatrix, o: &CMatrix) -> Result<C64> {
    o.trace_product(&rho.rho)
}

/// `1 - |m|²` clamped into `[0, 1]` after a tolerance check.
pub fn variance_from_mean(m: C64) -> Result<f64> {
    let v = 1.0 - m.norm_sqr();
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    if v < -tol::VARIANCE_CLAMP || v > 1.0 + tol::VARIANCE_CLAMP {
        return Err(Error::OutOfRange {
            what: "unitary variance",
            value: v,
        });
    }
    Ok(v.clamp(0.0, 1.0))
}

/// `V_O = 1 - |⟨O⟩|²` for unitary `O`.
pub fn variance_unitary(rho: &DensityMatrix, o: &CMatrix) -> Result<f64> {
    o.ensure_unitary(tol::UNITARY)?;
    variance_from_mean(expectation(rho, o)?)
}

/// `V ↦ V/(1-V)`.
pub fn delta_variance(v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange {
            what: "unitary variance",
            value: v,
        });
    }
    if v == 1.0 {
        return Err(Error::VarianceAtOne);
    }
    Ok(v / (1.0 - v))
}

/// `(1 - |m|²)/|m|²`, the δ-variance written through the mean.
///
/// Same value as `delta_variance(1 - |m|²)`, without the cancellation in
/// `1 - V` that costs digits when `|m|` is small.
pub fn delta_variance_from_mean(m: C64) -> Result<f64> {
    let q = m.norm_sqr();
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }
    if q == 0.0 {
        return Err(Error::VarianceAtOne);
    }
    if q > 1.0 + tol::VARIANCE_CLAMP {
        return Err(Error::OutOfRange {
            what: "unitary mean modulus",
            value: q.sqrt(),
        });
    }
    Ok(((1.0 - q) / q).max(0.0))
}

/// `W ↦ W/(1+W)`, inverse of [`delta_variance`].
pub fn delta_variance_inverse(w: f64) -> Result<f64> {
    if !(w >= 0.0) {
        return Err(Error::OutOfRange {
            what: "delta variance",
            value: w,
        });
    }
    if w.is_infinite() {
        return Ok(1.0);
    }
    Ok(w / (1.0 + w))
}

/// `½⟨{X,Y}⟩ - ⟨X⟩⟨Y⟩` for arbitrary (not necessarily Hermitian) operators.
pub fn complex_covariance(rho: &DensityMatrix, x: &CMatrix, y: &CMatrix) -> Result<C64> {
    let xy = expectation(rho, &x.mat_mul(y)?)?;
    let yx = expectation(rho, &y.mat_mul(x)?)?;
    Ok((xy + yx) * 0.5 - expectation(rho, x)? * expectation(rho, y)?)
}

fn ensure_pair_hermitian(a: &CMatrix, b: &CMatrix) -> Result<()> {
    a.ensure_hermitian(tol::HERMITIAN)?;
    b.ensure_hermitian(tol::HERMITIAN)
}

/// `C(A,B) = ⟨½{A,B}⟩ - ⟨A⟩⟨B⟩` for Hermitian `A`, `B`.
pub fn covariance(rho: &DensityMatrix, a: &CMatrix, b: &CMatrix) -> Result<f64> {
    ensure_pair_hermitian(a, b)?;
    let ab = expectation(rho, &a.mat_mul(b)?)?;
    Ok(ab.re - expectation(rho, a)?.re * expectation(rho, b)?.re)
}

pub fn variance(rho: &DensityMatrix, a: &CMatrix) -> Result<f64> {
    covariance(rho, a, a)
}

/// `C²(A,B) + ¼|⟨[A,B]⟩|²`, the lower bound on `V_A V_B`.
pub fn rs_bound(rho: &DensityMatrix, a: &CMatrix, b: &CMatrix) -> Result<f64> {
    ensure_pair_hermitian(a, b)?;
    let ab = expectation(rho, &a.mat_mul(b)?)?;
    let c = ab.re - expectation(rho, a)?.re * expectation(rho, b)?.re;
    // ⟨[A,B]⟩ = 2i Im⟨AB⟩
    Ok(c * c + ab.im * ab.im)
}

/// Real and imaginary parts of `δU = U/⟨U⟩ - 1` and `δV`, tied to one state.
#[derive(Clone, Debug)]
pub struct DressedQuartet {
    pub c_du: CMatrix,
    pub s_du: CMatrix,
    pub c_dv: CMatrix,
    pub s_dv: CMatrix,
    pub delta_u: CMatrix,
    pub delta_v: CMatrix,
    pub mean_u: C64,
    pub mean_v: C64,
    fingerprint: u64,
}

impl DressedQuartet {
    /// Fails with [`Error::StateMismatch`] unless `rho` is the dressing state.
    pub fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.fingerprint() == self.fingerprint {
            Ok(())
        } else {
            Err(Error::StateMismatch)
        }
    }

    /// Expectation on the dressing state, refusing any other.
    pub fn expect(&self, rho: &DensityMatrix, o: &CMatrix) -> Result<C64> {
        self.check_state(rho)?;
        expectation(rho, o)
    }

    /// Covariance on the dressing state, refusing any other.
    pub fn covariance(&self, rho: &DensityMatrix, a: &CMatrix, b: &CMatrix) -> Result<f64> {
        self.check_state(rho)?;
        covariance(rho, a, b)
    }
}

/// Checks `|m| > MEAN_CUTOFF`.
pub fn admissible_mean(op: Operator, m: C64) -> Result<C64> {
    let modulus = m.norm();
    if modulus > tol::MEAN_CUTOFF {
        Ok(m)
    } else {
        Err(Error::VanishingMean { op, modulus })
    }
}

pub fn dressed_quartet(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<DressedQuartet> {
    check_dim(pair, rho)?;
    let mean_u = admissible_mean(Operator::U, expectation(rho, pair.u())?)?;
    let mean_v = admissible_mean(Operator::V, expectation(rho, pair.v())?)?;
    let n = pair.dim();
    let id = CMatrix::identity(n);
    let delta_u = &pair.u().scale(mean_u.inv()) - &id;
    let delta_v = &pair.v().scale(mean_v.inv()) - &id;
    Ok(DressedQuartet {
        c_du: delta_u.hermitian_part(),
        s_du: delta_u.antihermitian_part(),
        c_dv: delta_v.hermitian_part(),
        s_dv: delta_v.antihermitian_part(),
        delta_u,
        delta_v,
        mean_u,
        mean_v,
        fingerprint: rho.fingerprint(),
    })
}

pub(crate) fn check_dim(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<()> {
    if pair.dim() == rho.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op: "state",
            left: (pair.dim(), pair.dim()),
            right: (rho.dim(), rho.dim()),
        })
    }
}
