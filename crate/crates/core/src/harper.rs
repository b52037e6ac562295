//! Harper Hamiltonian ground states, which minimise the scaled uncertainty
//! product, plus closed-form ground states for small dimensions.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{expectation, root_of_unity, variance_from_mean, DensityMatrix, SchwingerPair};
use crate::linalg::{hermitian_eigen, CMatrix, HermitianEigen, C64};
use crate::{tol, Error, Result};

/// `H(θ) = -sin θ C_U - cos θ C_V`.
#[derive(Clone, Debug)]
pub struct HarperHamiltonian {
    pub n: usize,
    pub theta: f64,
    pub h: CMatrix,
}

impl HarperHamiltonian {
    pub fn new(n: usize, theta: f64) -> Result<Self> {
        let pair = SchwingerPair::new(n)?;
        Self::with_pair(&pair, theta)
    }

    pub fn with_pair(pair: &SchwingerPair, theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::OutOfRange {
                what: "theta",
                value: theta,
            });
        }
        let t = pair.trig();
        let h = &t.c_u.scale(C64::new(-theta.sin(), 0.0)) - &t.c_v.scale(C64::new(theta.cos(), 0.0));
        Ok(HarperHamiltonian {
            n: pair.dim(),
            theta,
            h,
        })
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        hermitian_eigen(&self.h, tol::EIGEN)
    }
}

/// Discrete Fourier operator, `⟨u_α|𝔉|u_β⟩ = ω^{αβ}/√N`, mapping `|u_β⟩ ↦ |v_β⟩`.
#[derive(Clone, Debug)]
pub struct FourierOperator {
    pub n: usize,
    pub f: CMatrix,
}

impl FourierOperator {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension { dim: n, min: 2 });
        }
        let s = 1.0 / (n as f64).sqrt();
        let f = CMatrix::from_fn(n, n, |a, b| root_of_unity(n, (a * b) as i64) * s);
        Ok(FourierOperator { n, f })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundStateResult {
    pub n: usize,
    pub theta_star: f64,
    pub h0: f64,
    /// Gap `h₁ - h₀`.
    pub gap: f64,
    pub psi0: Vec<C64>,
    pub v0_u: f64,
    pub v0_v: f64,
    pub v0_du: f64,
    pub v0_dv: f64,
    /// `ε⁻¹ V_δU` on the ground state.
    pub s0: f64,
    /// `S0²`, the minimum of `S_δU S_δV`.
    pub r1: f64,
}

impl GroundStateResult {
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_state_vector(&self.psi0).expect("ground state is a unit vector")
    }
}

/// Rotates `v` so its largest-modulus entry (lowest index on ties) is real positive.
pub fn fix_phase(v: &mut [C64]) {
    let mut k = 0;
    let mut best = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best * (1.0 + 1e-12) {
            best = m;
            k = i;
        }
    }
    if best <= 0.0 {
        return;
    }
    let ph = v[k].conj() / best;
    for z in v.iter_mut() {
        *z *= ph;
    }
    v[k] = C64::new(v[k].re, 0.0);
}

/// Ground state of `H(θ)` with the derived variances and bounds.
pub fn ground_state_at(n: usize, theta: f64) -> Result<GroundStateResult> {
    let pair = SchwingerPair::new(n)?;
    let ham = HarperHamiltonian::with_pair(&pair, theta)?;
    let eig = ham.eigen()?;
    let h0 = eig.eigenvalues[0];
    let gap = eig.eigenvalues[1] - h0;
    if gap <= tol::GROUND_GAP {
        return Err(Error::DegenerateGround { gap });
    }
    let mut psi0 = eig.eigenvector(0);
    fix_phase(&mut psi0);
    let rho = DensityMatrix::from_state_vector(&psi0)?;
    let v0_u = variance_from_mean(expectation(&rho, pair.u())?)?;
    let v0_v = variance_from_mean(expectation(&rho, pair.v())?)?;
    let v0_du = crate::algebra::delta_variance(v0_u)?;
    let v0_dv = crate::algebra::delta_variance(v0_v)?;
    let s0 = v0_du / pair.epsilon();
    Ok(GroundStateResult {
        n,
        theta_star: theta,
        h0,
        gap,
        psi0,
        v0_u,
        v0_v,
        v0_du,
        v0_dv,
        s0,
        r1: s0 * s0,
    })
}

/// Ground state at `θ = π/4`.
pub fn ground_state(n: usize) -> Result<GroundStateResult> {
    ground_state_at(n, FRAC_PI_4)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaScan {
    pub theta_star: f64,
    pub value_star: f64,
    /// `(θ, cos θ |⟨U⟩| + sin θ |⟨V⟩|)` on the grid.
    pub curve: Vec<(f64, f64)>,
}

/// `cos θ |⟨U⟩| + sin θ |⟨V⟩|` on the ground state of `H(θ)`.
pub fn scan_objective(pair: &SchwingerPair, theta: f64) -> Result<f64> {
    let ham = HarperHamiltonian::with_pair(pair, theta)?;
    let eig = ham.eigen()?;
    let psi = eig.eigenvector(0);
    let rho = DensityMatrix::from_state_vector(&psi)?;
    let mu = expectation(&rho, pair.u())?.norm();
    let mv = expectation(&rho, pair.v())?.norm();
    Ok(theta.cos() * mu + theta.sin() * mv)
}

/// Grid search over `[0, π/2]` followed by golden-section refinement to `1e-6`.
pub fn theta_scan(n: usize, grid_points: usize) -> Result<ThetaScan> {
    if grid_points < 3 {
        return Err(Error::OutOfRange {
            what: "grid points",
            value: grid_points as f64,
        });
    }
    let pair = SchwingerPair::new(n)?;
    let step = FRAC_PI_2 / (grid_points - 1) as f64;
    let mut curve = Vec::with_capacity(grid_points);
    for k in 0..grid_points {
        let th = (k as f64 * step).min(FRAC_PI_2);
        curve.push((th, scan_objective(&pair, th)?));
    }
    let best = curve
        .iter()
        .enumerate()
        .fold(0, |b, (i, p)| if p.1 > curve[b].1 { i } else { b });
    let lo = curve[best.saturating_sub(1)].0;
    let hi = curve[(best + 1).min(grid_points - 1)].0;
    let (theta_star, value_star) = golden_max(|t| scan_objective(&pair, t), lo, hi, 1e-6)?;
    Ok(ThetaScan {
        theta_star,
        value_star,
        curve,
    })
}

fn golden_max(
    f: impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}

/// Ground state at `θ = π/4` written in radicals, evaluated to 30 digits.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormGroundState {
    pub n: usize,
    /// Normalised amplitudes over `|u_0⟩ … |u_{N-1}⟩`.
    pub coefficients: Vec<f64>,
    /// Unnormalised amplitude expressions, one per distinct coefficient.
    pub radicals: &'static [&'static str],
    pub h0: f64,
    pub h0_radical: &'static str,
    pub expected_v_delta: f64,
    pub v_delta_radical: &'static str,
    pub expected_s0: f64,
    pub s0_radical: &'static str,
}

impl ClosedFormGroundState {
    pub fn expected_r1(&self) -> f64 {
        self.expected_s0 * self.expected_s0
    }
}

#[allow(clippy::excessive_precision)]
pub fn closed_form(n: usize) -> Result<ClosedFormGroundState> {
    let cf = match n {
        2 => ClosedFormGroundState {
            n,
            coefficients: alloc::vec![
                0.923879532511286756128183189397,
                0.382683432365089771728459984030,
            ],
            radicals: &["√(2+√2)/2", "√(2-√2)/2"],
            h0: -1.0,
            h0_radical: "-1",
            expected_v_delta: 1.0,
            v_delta_radical: "1",
            expected_s0: 1.0,
            s0_radical: "1",
        },
        3 => {
            let a0 = 0.888073833977115262160764596418;
            let a1 = 0.325057583671868143161124167775;
            ClosedFormGroundState {
                n,
                coefficients: alloc::vec![a0, a1, a1],
                radicals: &["√((3+√3)/6)", "√((3-√3)/12)"],
                h0: -0.965925826289068286749743199729,
                h0_radical: "-(√6+√2)/4",
                expected_v_delta: 1.14359353944898165178042926795,
                v_delta_radical: "15-8√3",
                expected_s0: 1.80384757729336811941766097548,
                s0_radical: "7-3√3",
            }
        }
        4 => {
            let a1 = 0.353553390593273762200422181052;
            ClosedFormGroundState {
                n,
                coefficients: alloc::vec![
                    0.853553390593273762200422181052,
                    a1,
                    0.146446609406726237799577818948,
                    a1,
                ],
                radicals: &["(2+√2)/4", "√2/4", "(2-√2)/4"],
                h0: -1.0,
                h0_radical: "-1",
                expected_v_delta: 1.0,
                v_delta_radical: "1",
                expected_s0: 2.0,
                s0_radical: "2",
            }
        }
        5 => {
            let a1 = 0.394109802866694175196764753896;
            let a2 = 0.109948886700311197521324187258;
            ClosedFormGroundState {
                n,
                coefficients: alloc::vec![0.815584092044146710935528300616, a1, a2, a2, a1],
                radicals: &["1", "(√5+√(2(35+√5))-7)/8", "(3√5-√(2(35+√5))+3)/8"],
                h0: -1.04879774458023809948810037954,
                h0_radical: "-(√2+√10+2√(35+√5))/16",
                expected_v_delta: 0.81822031645714000189570109107,
                v_delta_radical: "(45-√5-√(110+38√5))/(19+√5+√(110+38√5))",
                expected_s0: 1.94440396699094971695184316828,
                s0_radical: "V_δ/ε",
            }
        }
        6 => {
            let b1 = 0.426803766697925098657616235342;
            let b2 = 0.115256549373408829336707469135;
            let b3 = 0.0452379100834029766693432683344;
            ClosedFormGroundState {
                n,
                coefficients: alloc::vec![0.779142141466678811500521746277, b1, b2, b3, b2, b1],
                radicals: &[
                    "1",
                    "(-4+√6+√14)/4",
                    "(10-3√6-3√14+2√21)/4",
                    "-4+2√6+√14-√21",
                ],
                h0: -1.09445052965836697100726552379,
                h0_radical: "-√(10+2√21)/4",
                expected_v_delta: 0.669697220176639973647811225088,
                v_delta_radical: "19-4√21",
                expected_s0: 1.82964683121022146464990267003,
                s0_radical: "19(1+√3)-4√(42(2+√3))",
            }
        }
        _ => {
            return Err(Error::OutOfRange {
                what: "closed-form dimension",
                value: n as f64,
            })
        }
    };
    Ok(cf)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierCheck {
    /// `‖H𝔉 - 𝔉H‖_HS` at `θ = π/4`.
    pub comm_norm: f64,
    /// `⟨ψ₀|𝔉|ψ₀⟩`
    pub f0: C64,
}

pub fn fourier_commutation_check(n: usize) -> Result<FourierCheck> {
    let ham = HarperHamiltonian::new(n, FRAC_PI_4)?;
    let four = FourierOperator::new(n)?;
    let comm = ham.h.commutator(&four.f)?;
    let g = ground_state(n)?;
    let fpsi = four.f.apply(&g.psi0)?;
    Ok(FourierCheck {
        comm_norm: comm.hs_norm(),
        f0: crate::linalg::inner(&g.psi0, &fpsi),
    })
}

/// All eigenvectors of `H(θ)`, phase-fixed, with the largest imaginary part left over.
pub fn harper_functions(n: usize, theta: f64) -> Result<(HermitianEigen, f64)> {
    let mut eig = HarperHamiltonian::new(n, theta)?.eigen()?;
    let mut max_im: f64 = 0.0;
    for k in 0..n {
        let mut v = eig.eigenvector(k);
        fix_phase(&mut v);
        for (i, z) in v.iter().enumerate() {
            max_im = max_im.max(z.im.abs());
            eig.eigenvectors.set(i, k, *z);
        }
    }
    Ok((eig, max_im))
}

/// Largest residual of `sin θ cos(2πα/N) f_α + ½cos θ (f_{α-1} + f_{α+1}) + h f_α = 0`
/// over all eigenpairs.
pub fn harper_recurrence_check(n: usize, theta: f64) -> Result<f64> {
    let ham = HarperHamiltonian::new(n, theta)?;
    let eig = ham.eigen()?;
    let (s, c) = (theta.sin(), theta.cos());
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let f = eig.eigenvector(k);
        let h = eig.eigenvalues[k];
        for a in 0..n {
            let prev = f[(a + n - 1) % n];
            let next = f[(a + 1) % n];
            let ca = root_of_unity(n, a as i64).re;
            let r = f[a] * (s * ca) + (prev + next) * (0.5 * c) + f[a] * h;
            worst = worst.max(r.norm());
        }
    }
    Ok(worst)
}
