//! Discrete phase space for odd `N`: displacement and phase-point operators,
//! Weyl and Wigner functions, and moment reconstruction from Weyl data.
//!
//! Labels live in the symmetric interval `[-ℓ, ℓ]`, `ℓ = (N-1)/2`. Labels
//! outside it are reduced mod `N` and the reduction is reported.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{root_of_unity, wrap, DensityMatrix};
use crate::linalg::{CMatrix, C64, ZERO};
use crate::{tol, Error, Result};

/// Largest `N` whose operator grids are built eagerly.
pub const CACHE_LIMIT: usize = 31;

/// `2⁻¹ mod N` for odd `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularHalf {
    pub n: usize,
    pub inv2: usize,
}

impl ModularHalf {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::EvenDimension { dim: n });
        }
        if n < 3 {
            return Err(Error::Dimension { dim: n, min: 3 });
        }
        Ok(ModularHalf { n, inv2: (n + 1) / 2 })
    }

    /// `ℓ = (N-1)/2`.
    pub fn ell(&self) -> i64 {
        (self.n as i64 - 1) / 2
    }

    /// `{2⁻¹k} ∈ [0, N)`.
    pub fn half(&self, k: i64) -> usize {
        wrap(self.inv2 as i64 * wrap(k, self.n) as i64, self.n)
    }

    /// `ω^k`.
    pub fn omega(&self, k: i64) -> C64 {
        root_of_unity(self.n, k)
    }

    /// Reduces `k` into `[-ℓ, ℓ]`; the flag is set when `k` was outside.
    pub fn reduce(&self, k: i64) -> (i64, bool) {
        let l = self.ell();
        let r = wrap(k + l, self.n) as i64 - l;
        (r, r != k)
    }

    /// All labels `-ℓ..=ℓ`.
    pub fn labels(&self) -> impl Iterator<Item = i64> {
        let l = self.ell();
        -l..=l
    }

    fn index(&self, a: i64, b: i64) -> usize {
        let l = self.ell();
        let (a, _) = self.reduce(a);
        let (b, _) = self.reduce(b);
        ((a + l) as usize) * self.n + (b + l) as usize
    }
}

/// A grid operator tagged with whether its labels had to be reduced.
#[derive(Clone, Debug)]
pub struct Labelled<T> {
    pub value: T,
    pub wrapped: bool,
}

/// `D(η,ξ) = ω^{-{2⁻¹ηξ}} Σ_γ ω^{γη} |u_γ⟩⟨u_{γ-ξ}|`, i.e. `ω^{-{2⁻¹ηξ}} U^η V^{-ξ}`.
pub fn displacement(mh: &ModularHalf, eta: i64, xi: i64) -> Labelled<CMatrix> {
    let (e, w1) = mh.reduce(eta);
    let (x, w2) = mh.reduce(xi);
    Labelled {
        value: displacement_matrix(mh, e, x),
        wrapped: w1 || w2,
    }
}

fn displacement_matrix(mh: &ModularHalf, eta: i64, xi: i64) -> CMatrix {
    let n = mh.n;
    let h = mh.half(eta * xi) as i64;
    let mut m = CMatrix::zeros(n, n);
    for g in 0..n {
        let col = wrap(g as i64 - xi, n);
        m.set(g, col, mh.omega(g as i64 * eta - h));
    }
    m
}

/// `Σ_{η,ξ} ω^{-(ην-ξμ)} D(η,ξ)` accumulated entrywise, divided by `N`.
fn phase_point_matrix(mh: &ModularHalf, mu: i64, nu: i64) -> CMatrix {
    let n = mh.n;
    let inv_n = 1.0 / n as f64;
    let mut m = CMatrix::zeros(n, n);
    for eta in mh.labels() {
        for xi in mh.labels() {
            let ph = mh.omega(-(eta * nu - xi * mu));
            let h = mh.half(eta * xi) as i64;
            for g in 0..n {
                let col = wrap(g as i64 - xi, n);
                let z = m.get(g, col) + ph * mh.omega(g as i64 * eta - h) * inv_n;
                m.set(g, col, z);
            }
        }
    }
    m
}

/// `Δ(μ,ν) = (1/N) Σ_{η,ξ} ω^{-(ην-ξμ)} D(η,ξ)`.
pub fn phase_point(mh: &ModularHalf, mu: i64, nu: i64) -> Labelled<CMatrix> {
    let (m, w1) = mh.reduce(mu);
    let (v, w2) = mh.reduce(nu);
    Labelled {
        value: phase_point_matrix(mh, m, v),
        wrapped: w1 || w2,
    }
}

#[derive(Clone, Debug)]
enum Store {
    Eager(Vec<CMatrix>),
    Lazy,
}

/// `D(η,ξ)` for all labels; built eagerly up to [`CACHE_LIMIT`].
#[derive(Clone, Debug)]
pub struct DisplacementGrid {
    pub mh: ModularHalf,
    store: Store,
}

impl DisplacementGrid {
    pub fn new(n: usize) -> Result<Self> {
        let mh = ModularHalf::new(n)?;
        let store = if n <= CACHE_LIMIT {
            let mut v = Vec::with_capacity(n * n);
            for e in mh.labels() {
                for x in mh.labels() {
                    v.push(displacement_matrix(&mh, e, x));
                }
            }
            Store::Eager(v)
        } else {
            Store::Lazy
        };
        Ok(DisplacementGrid { mh, store })
    }

    pub fn get(&self, eta: i64, xi: i64) -> CMatrix {
        match &self.store {
            Store::Eager(v) => v[self.mh.index(eta, xi)].clone(),
            Store::Lazy => displacement(&self.mh, eta, xi).value,
        }
    }
}

/// `Δ(μ,ν)` for all labels; built eagerly up to [`CACHE_LIMIT`].
#[derive(Clone, Debug)]
pub struct PhasePointGrid {
    pub mh: ModularHalf,
    store: Store,
}

impl PhasePointGrid {
    pub fn new(n: usize) -> Result<Self> {
        let mh = ModularHalf::new(n)?;
        let store = if n <= CACHE_LIMIT {
            let mut v = Vec::with_capacity(n * n);
            for m in mh.labels() {
                for nu in mh.labels() {
                    v.push(phase_point_matrix(&mh, m, nu));
                }
            }
            Store::Eager(v)
        } else {
            Store::Lazy
        };
        Ok(PhasePointGrid { mh, store })
    }

    pub fn get(&self, mu: i64, nu: i64) -> CMatrix {
        match &self.store {
            Store::Eager(v) => v[self.mh.index(mu, nu)].clone(),
            Store::Lazy => phase_point(&self.mh, mu, nu).value,
        }
    }

    /// `O(μ,ν) = Tr[Δ(μ,ν) O]`, row-major over the label grid.
    pub fn symbol(&self, o: &CMatrix) -> Result<Vec<C64>> {
        let mut out = Vec::with_capacity(self.mh.n * self.mh.n);
        for m in self.mh.labels() {
            for nu in self.mh.labels() {
                out.push(self.get(m, nu).trace_product(o)?);
            }
        }
        Ok(out)
    }

    /// `O = (1/N) Σ O(μ,ν) Δ(μ,ν)`.
    pub fn reconstruct(&self, symbol: &[C64]) -> Result<CMatrix> {
        let n = self.mh.n;
        if symbol.len() != n * n {
            return Err(Error::EntryCount {
                expected: n * n,
                found: symbol.len(),
            });
        }
        let mut acc = CMatrix::zeros(n, n);
        let mut k = 0;
        for m in self.mh.labels() {
            for nu in self.mh.labels() {
                acc = &acc + &self.get(m, nu).scale(symbol[k] / n as f64);
                k += 1;
            }
        }
        Ok(acc)
    }
}

/// `W̃(η,ξ) = Tr[D(η,ξ) ρ]`, row-major over `η, ξ ∈ [-ℓ, ℓ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylFunction {
    pub mh: ModularHalf,
    pub values: Vec<C64>,
}

impl WeylFunction {
    /// Value at any integer labels (reduced mod `N`).
    pub fn get(&self, eta: i64, xi: i64) -> C64 {
        self.values[self.mh.index(eta, xi)]
    }

    /// `W(μ,ν) = (1/N) Σ_{η,ξ} ω^{-(ην-ξμ)} W̃(η,ξ)`.
    pub fn to_wigner(&self) -> WignerFunction {
        let mh = self.mh;
        let inv_n = 1.0 / mh.n as f64;
        let mut values = Vec::with_capacity(mh.n * mh.n);
        for m in mh.labels() {
            for nu in mh.labels() {
                let mut s = ZERO;
                for e in mh.labels() {
                    for x in mh.labels() {
                        s += mh.omega(-(e * nu - x * m)) * self.get(e, x);
                    }
                }
                values.push(s * inv_n);
            }
        }
        WignerFunction { mh, values }
    }

    /// `V_U = 1 - |W̃(1,0)|²`.
    pub fn variance_u(&self) -> f64 {
        1.0 - self.get(1, 0).norm_sqr()
    }

    /// `V_V = 1 - |W̃(0,-1)|²`.
    pub fn variance_v(&self) -> f64 {
        1.0 - self.get(0, -1).norm_sqr()
    }
}

/// `W(μ,ν) = Tr[Δ(μ,ν) ρ]`, row-major over `μ, ν ∈ [-ℓ, ℓ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerFunction {
    pub mh: ModularHalf,
    pub values: Vec<C64>,
}

impl WignerFunction {
    pub fn get(&self, mu: i64, nu: i64) -> C64 {
        self.values[self.mh.index(mu, nu)]
    }

    /// `W̃(η,ξ) = (1/N) Σ_{μ,ν} ω^{ην-ξμ} W(μ,ν)`.
    pub fn to_weyl(&self) -> WeylFunction {
        let mh = self.mh;
        let inv_n = 1.0 / mh.n as f64;
        let mut values = Vec::with_capacity(mh.n * mh.n);
        for e in mh.labels() {
            for x in mh.labels() {
                let mut s = ZERO;
                for m in mh.labels() {
                    for nu in mh.labels() {
                        s += mh.omega(e * nu - x * m) * self.get(m, nu);
                    }
                }
                values.push(s * inv_n);
            }
        }
        WeylFunction { mh, values }
    }

    /// `(1/N) Σ W(μ,ν)`.
    pub fn total(&self) -> C64 {
        self.values.iter().sum::<C64>() / self.mh.n as f64
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `⟨O⟩ = (1/N) Σ O(μ,ν) W(μ,ν)` from the symbol of `O`.
    pub fn mean_value(&self, symbol: &[C64]) -> C64 {
        symbol
            .iter()
            .zip(&self.values)
            .map(|(o, w)| o * w)
            .sum::<C64>()
            / self.mh.n as f64
    }
}

fn odd_dim(rho: &DensityMatrix) -> Result<ModularHalf> {
    ModularHalf::new(rho.dim())
}

pub fn weyl_function(rho: &DensityMatrix) -> Result<WeylFunction> {
    let mh = odd_dim(rho)?;
    let n = mh.n;
    let r = rho.matrix();
    let mut values = Vec::with_capacity(n * n);
    for e in mh.labels() {
        for x in mh.labels() {
            let h = mh.half(e * x) as i64;
            let mut s = ZERO;
            for g in 0..n {
                let col = wrap(g as i64 - x, n);
                s += mh.omega(g as i64 * e - h) * r.get(col, g);
            }
            values.push(s);
        }
    }
    Ok(WeylFunction { mh, values })
}

/// Direct traces against the phase-point operators, cross-checked against
/// the Fourier transform of the Weyl grid.
pub fn wigner_function(rho: &DensityMatrix) -> Result<WignerFunction> {
    let mh = odd_dim(rho)?;
    let r = rho.matrix();
    let mut values = Vec::with_capacity(mh.n * mh.n);
    for m in mh.labels() {
        for nu in mh.labels() {
            values.push(phase_point_matrix(&mh, m, nu).trace_product(r)?);
        }
    }
    let w = WignerFunction { mh, values };
    let via = weyl_function(rho)?.to_wigner();
    let dev = w
        .values
        .iter()
        .zip(&via.values)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if dev > tol::IDENTITY {
        return Err(Error::Inconsistent {
            what: "Weyl-Wigner duality",
            residual: dev,
        });
    }
    Ok(w)
}

/// `⟨U^α V^β⟩ = ω^{-αβ + {2⁻¹αβ}} W̃(α, -β)`.
pub fn reconstruct_uv_moment(w: &WeylFunction, alpha: i64, beta: i64) -> Labelled<C64> {
    let mh = w.mh;
    let (a, w1) = mh.reduce(alpha);
    let (b, w2) = mh.reduce(beta);
    let ph = mh.omega(-a * b + mh.half(a * b) as i64);
    Labelled {
        value: ph * w.get(a, -b),
        wrapped: w1 || w2,
    }
}

/// Cross moments of the trig quartet rebuilt from the four central Weyl values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigProducts {
    pub cc: C64,
    pub cs: C64,
    pub sc: C64,
    pub ss: C64,
}

fn unitary_cross_moments(w: &WeylFunction) -> [C64; 4] {
    let mh = w.mh;
    let q = mh.omega(1 - mh.inv2 as i64);
    let qi = q.conj();
    [
        qi * w.get(1, -1), // ⟨UV⟩
        q * w.get(1, 1),   // ⟨UV†⟩
        q * w.get(-1, -1), // ⟨U†V⟩
        qi * w.get(-1, 1), // ⟨U†V†⟩
    ]
}

pub fn reconstruct_trig_products(w: &WeylFunction) -> TrigProducts {
    let [uv, uvd, udv, udvd] = unitary_cross_moments(w);
    let quarter = 0.25;
    let minus_i_quarter = C64::new(0.0, -0.25);
    TrigProducts {
        cc: (uv + uvd + udv + udvd) * quarter,
        cs: (uv - uvd + udv - udvd) * minus_i_quarter,
        sc: (uv + uvd - udv - udvd) * minus_i_quarter,
        ss: -(uv - uvd - udv + udvd) * quarter,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrigProductBounds {
    pub cc_upper: f64,
    pub cc_lower: f64,
    pub cs_upper: f64,
    pub cs_lower: f64,
    /// `⟨C_U²⟩ = ½ + ¼[W̃(2,0) + W̃(-2,0)]`
    pub cu2: f64,
    /// `⟨C_V²⟩ = ½ + ¼[W̃(0,2) + W̃(0,-2)]`
    pub cv2: f64,
    /// `⟨C_U²⟩⟨C_V²⟩`, an upper bound on `|⟨C_U C_V⟩|²`.
    pub cauchy_upper: f64,
}

/// Triangle-inequality bounds on `|⟨C_U C_V⟩|`, `|⟨S_U S_V⟩|` (first pair) and
/// `|⟨C_U S_V⟩|`, `|⟨S_U C_V⟩|` (second pair), plus the Cauchy-Schwarz bound.
///
/// The lower bounds use the reverse triangle inequality `||a| - |b||`.
pub fn trig_product_bounds(w: &WeylFunction) -> TrigProductBounds {
    let a = (w.get(-1, -1) + w.get(1, 1)).norm();
    let b = (w.get(1, -1) + w.get(-1, 1)).norm();
    let ad = (w.get(-1, -1) - w.get(1, 1)).norm();
    let bd = (w.get(1, -1) - w.get(-1, 1)).norm();
    let cu2 = 0.5 + 0.25 * (w.get(2, 0) + w.get(-2, 0)).re;
    let cv2 = 0.5 + 0.25 * (w.get(0, 2) + w.get(0, -2)).re;
    TrigProductBounds {
        cc_upper: 0.25 * (a + b),
        cc_lower: 0.25 * (a - b).abs(),
        cs_upper: 0.25 * (ad + bd),
        cs_lower: 0.25 * (ad - bd).abs(),
        cu2,
        cv2,
        cauchy_upper: cu2 * cv2,
    }
}

/// Max-norm deviation of a grid of operators from `(1/N) Tr[Δ†Δ'] = δδ'`.
pub fn phase_point_orthogonality(grid: &PhasePointGrid) -> Result<f64> {
    let mh = grid.mh;
    let labels: Vec<(i64, i64)> = mh
        .labels()
        .flat_map(|m| mh.labels().map(move |v| (m, v)))
        .collect();
    let mats: Vec<CMatrix> = labels.iter().map(|&(m, v)| grid.get(m, v)).collect();
    let mut worst: f64 = 0.0;
    for (i, a) in mats.iter().enumerate() {
        let ad = a.adjoint();
        for (j, b) in mats.iter().enumerate() {
            let g = ad.trace_product(b)? / mh.n as f64;
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - C64::new(want, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Max-norm Hermiticity defect over all phase-point operators.
pub fn phase_point_hermiticity(grid: &PhasePointGrid) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in grid.mh.labels() {
        for v in grid.mh.labels() {
            worst = worst.max(grid.get(m, v).hermitian_deviation()?);
        }
    }
    Ok(worst)
}

/// All label pairs in row-major grid order.
pub fn label_pairs(mh: &ModularHalf) -> Vec<(i64, i64)> {
    let mut v = vec![];
    for a in mh.labels() {
        for b in mh.labels() {
            v.push((a, b));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SchwingerPair;
    use crate::linalg::ONE;

    fn lcg(seed: u64) -> impl FnMut() -> f64 {
        let mut s = seed.wrapping_add(0x2545_f491_4f6c_dd1d);
        move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        }
    }

    fn random_mixed(n: usize, seed: u64) -> DensityMatrix {
        let mut r = lcg(seed);
        let g = CMatrix::from_fn(n, n, |_, _| C64::new(r(), r()));
        DensityMatrix::from_gram(&g).unwrap()
    }

    fn random_op(n: usize, seed: u64) -> CMatrix {
        let mut r = lcg(seed);
        CMatrix::from_fn(n, n, |_, _| C64::new(r(), r()))
    }

    #[test]
    fn modular_half() {
        assert_eq!(ModularHalf::new(3).unwrap().inv2, 2);
        assert_eq!(ModularHalf::new(5).unwrap().inv2, 3);
        assert_eq!(ModularHalf::new(4), Err(Error::EvenDimension { dim: 4 }));
        assert!(ModularHalf::new(1).is_err());
        for n in [3, 5, 7, 9, 11] {
            let mh = ModularHalf::new(n).unwrap();
            assert_eq!((2 * mh.inv2) % n, 1);
            for e in -10..=10i64 {
                for x in -10..=10i64 {
                    assert_eq!((2 * mh.half(e * x)) % n, wrap(e * x, n));
                    let h = mh.omega(-(mh.half(e * x) as i64));
                    assert!((h * h - mh.omega(-e * x)).norm() < 1e-12);
                }
            }
        }
        let mh = ModularHalf::new(3).unwrap();
        assert_eq!(mh.reduce(2), (-1, true));
        assert_eq!(mh.reduce(-1), (-1, false));
    }

    #[test]
    fn displacement_basics() {
        for n in [3, 5, 7] {
            let mh = ModularHalf::new(n).unwrap();
            let grid = DisplacementGrid::new(n).unwrap();
            assert_eq!(grid.get(0, 0), CMatrix::identity(n));
            for (e, x) in label_pairs(&mh) {
                assert!(grid.get(e, x).unitary_deviation().unwrap() < 1e-12);
            }
        }
        let mh = ModularHalf::new(5).unwrap();
        assert!(displacement(&mh, 3, 0).wrapped);
        assert!(!displacement(&mh, 2, -2).wrapped);
    }

    #[test]
    fn displacement_v_basis_form() {
        let n = 7;
        let mh = ModularHalf::new(n).unwrap();
        let s = 1.0 / (n as f64).sqrt();
        let v = |b: i64| -> Vec<C64> { (0..n).map(|a| mh.omega(a as i64 * b) * s).collect() };
        for (e, x) in label_pairs(&mh) {
            let mut m = CMatrix::zeros(n, n);
            for b in 0..n as i64 {
                let term = CMatrix::outer(&v(b + e), &v(b)).scale(mh.omega(-x * b));
                m = &m + &term;
            }
            let m = m.scale(mh.omega(-(mh.half(e * x) as i64)));
            let d = displacement(&mh, e, x).value;
            assert!(d.max_abs_diff(&m).unwrap() < 1e-12);
        }
    }

    #[test]
    fn displacement_trace_formula() {
        let n = 5;
        let mh = ModularHalf::new(n).unwrap();
        let p = SchwingerPair::new(n).unwrap();
        for (e, x) in label_pairs(&mh) {
            let d = displacement(&mh, e, x).value;
            for a in mh.labels() {
                for b in mh.labels() {
                    let t = d.trace_product(&p.weyl_monomial(a, b)).unwrap();
                    let want = if wrap(e + a, n) == 0 && wrap(x - b, n) == 0 {
                        mh.omega(-(mh.half(e * x) as i64) + e * b) * n as f64
                    } else {
                        ZERO
                    };
                    assert!((t - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn displacement_conjugation() {
        let n = 7;
        let mh = ModularHalf::new(n).unwrap();
        let p = SchwingerPair::new(n).unwrap();
        let mut r = lcg(5);
        for _ in 0..30 {
            let pick = |r: &mut dyn FnMut() -> f64| ((r() + 0.5) * n as f64) as i64 - 3;
            let (a, b, e, x) = (pick(&mut r), pick(&mut r), pick(&mut r), pick(&mut r));
            let d = displacement(&mh, e, x).value;
            let m = p.weyl_monomial(a, b);
            let lhs = &(&d.adjoint() * &m) * &d;
            let rhs = m.scale(mh.omega(a * x + b * e));
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }
    }

    #[test]
    fn phase_point_orthonormal_and_hermitian() {
        for n in [3, 5, 7] {
            let grid = PhasePointGrid::new(n).unwrap();
            assert!(phase_point_orthogonality(&grid).unwrap() < 1e-10);
            assert!(phase_point_hermiticity(&grid).unwrap() < 1e-12);
        }
    }

    #[test]
    fn phase_point_trace_formula() {
        let n = 5;
        let mh = ModularHalf::new(n).unwrap();
        let p = SchwingerPair::new(n).unwrap();
        let grid = PhasePointGrid::new(n).unwrap();
        for (m, v) in label_pairs(&mh) {
            let d = grid.get(m, v);
            for a in mh.labels() {
                for b in mh.labels() {
                    let t = d.trace_product(&p.weyl_monomial(a, b)).unwrap();
                    let want = mh.omega(b * m + a * v - a * b + mh.half(a * b) as i64);
                    assert!((t - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn operator_reconstruction() {
        let n = 7;
        let grid = PhasePointGrid::new(n).unwrap();
        for seed in 0..5 {
            let o = random_op(n, seed);
            let back = grid.reconstruct(&grid.symbol(&o).unwrap()).unwrap();
            assert!(back.max_abs_diff(&o).unwrap() < 1e-10);
        }
    }

    #[test]
    fn weyl_examples() {
        let u0 = DensityMatrix::basis_u(3, 0);
        let w = weyl_function(&u0).unwrap();
        for e in -1..=1 {
            assert!((w.get(e, 0) - ONE).norm() < 1e-15);
        }
        for n in [3, 5, 7] {
            let w = weyl_function(&DensityMatrix::maximally_mixed(n)).unwrap();
            for (e, x) in label_pairs(&w.mh) {
                let want = if e == 0 && x == 0 { ONE } else { ZERO };
                assert!((w.get(e, x) - want).norm() < 1e-15);
            }
            let rho = random_mixed(n, n as u64);
            let w = weyl_function(&rho).unwrap();
            assert!((w.get(0, 0) - ONE).norm() < 1e-12);
            assert!(w.values.iter().all(|z| z.norm() <= 1.0 + 1e-12));
        }
        assert_eq!(
            weyl_function(&DensityMatrix::maximally_mixed(4)),
            Err(Error::EvenDimension { dim: 4 })
        );
    }

    #[test]
    fn wigner_examples() {
        for n in [3, 5, 7] {
            let w = wigner_function(&DensityMatrix::maximally_mixed(n)).unwrap();
            for z in &w.values {
                assert!((z - C64::new(1.0 / n as f64, 0.0)).norm() < 1e-14);
            }
        }
        let rho = random_mixed(7, 2);
        let w = wigner_function(&rho).unwrap();
        assert!(w.max_imag() < 1e-10);
        assert!((w.total() - ONE).norm() < 1e-10);
        let back = w.to_weyl();
        let direct = weyl_function(&rho).unwrap();
        for (a, b) in back.values.iter().zip(&direct.values) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn mean_value_from_symbols() {
        let n = 5;
        let grid = PhasePointGrid::new(n).unwrap();
        for seed in 0..5 {
            let rho = random_mixed(n, seed);
            let o = random_op(n, seed + 100);
            let w = wigner_function(&rho).unwrap();
            let got = w.mean_value(&grid.symbol(&o).unwrap());
            let want = rho.expect(&o).unwrap();
            assert!((got - want).norm() < 1e-10);
        }
    }

    #[test]
    fn moments_from_weyl() {
        for n in [3, 5, 7] {
            let p = SchwingerPair::new(n).unwrap();
            let t = p.trig();
            for seed in 0..10 {
                let rho = random_mixed(n, seed);
                let w = weyl_function(&rho).unwrap();
                for a in w.mh.labels() {
                    for b in w.mh.labels() {
                        let got = reconstruct_uv_moment(&w, a, b).value;
                        let want = rho.expect(&p.weyl_monomial(a, b)).unwrap();
                        assert!((got - want).norm() < 1e-10);
                    }
                }
                let vu = crate::algebra::variance_unitary(&rho, p.u()).unwrap();
                let vv = crate::algebra::variance_unitary(&rho, p.v()).unwrap();
                assert!((w.variance_u() - vu).abs() < 1e-12);
                assert!((w.variance_v() - vv).abs() < 1e-12);
                let tp = reconstruct_trig_products(&w);
                let pairs = [
                    (tp.cc, &t.c_u, &t.c_v),
                    (tp.cs, &t.c_u, &t.s_v),
                    (tp.sc, &t.s_u, &t.c_v),
                    (tp.ss, &t.s_u, &t.s_v),
                ];
                for (got, x, y) in pairs {
                    let want = rho.expect(&(x * y)).unwrap();
                    assert!((got - want).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn localized_sine_product_vanishes() {
        let w = weyl_function(&DensityMatrix::basis_u(5, 0)).unwrap();
        assert!(reconstruct_trig_products(&w).sc.norm() < 1e-15);
    }

    #[test]
    fn bound_examples() {
        for n in [3, 5, 7] {
            let p = SchwingerPair::new(n).unwrap();
            let t = p.trig();
            for seed in 0..20 {
                let rho = random_mixed(n, seed * 7 + 1);
                let w = weyl_function(&rho).unwrap();
                let b = trig_product_bounds(&w);
                let tp = reconstruct_trig_products(&w);
                for (v, lo, hi) in [
                    (tp.cc.norm(), b.cc_lower, b.cc_upper),
                    (tp.ss.norm(), b.cc_lower, b.cc_upper),
                    (tp.cs.norm(), b.cs_lower, b.cs_upper),
                    (tp.sc.norm(), b.cs_lower, b.cs_upper),
                ] {
                    assert!(v - lo >= -1e-10 && hi - v >= -1e-10);
                }
                let cu2 = rho.expect(&(&t.c_u * &t.c_u)).unwrap().re;
                let cv2 = rho.expect(&(&t.c_v * &t.c_v)).unwrap().re;
                assert!((b.cu2 - cu2).abs() < 1e-10 && (b.cv2 - cv2).abs() < 1e-10);
                assert!(tp.cc.norm_sqr() <= b.cauchy_upper + 1e-10);
            }
        }
        let w = weyl_function(&DensityMatrix::maximally_mixed(5)).unwrap();
        let b = trig_product_bounds(&w);
        assert!(b.cc_upper < 1e-15 && b.cs_upper < 1e-15);
        assert!(reconstruct_trig_products(&w).cc.norm() < 1e-15);
    }
}
