//! Numerical tolerances shared across the crate.

/// Default relative off-diagonal tolerance for the Jacobi eigensolver.
pub const EIGEN: f64 = 1e-12;

/// Sweep cap for the Jacobi eigensolver.
pub const EIGEN_MAX_SWEEPS: usize = 100;

/// Max-norm deviation from Hermiticity accepted on inputs.
pub const HERMITIAN: f64 = 1e-12;

/// Max-norm deviation of `O†O` from the identity accepted for unitaries.
pub const UNITARY: f64 = 1e-12;

/// Allowed deviation of a density matrix trace from one.
pub const TRACE: f64 = 1e-12;

/// Smallest eigenvalue admitted for a density matrix.
pub const PSD_FLOOR: f64 = -1e-10;

/// Out-of-range slop tolerated before unitary variances are clamped to `[0, 1]`.
pub const VARIANCE_CLAMP: f64 = 1e-12;

/// `|⟨O⟩|` at or below this makes the δ-operator undefined.
pub const MEAN_CUTOFF: f64 = 1e-10;

/// Exact algebraic identities.
pub const IDENTITY: f64 = 1e-10;

/// Inequalities are accepted when their (scaled) slack is at least `-SLACK`.
pub const SLACK: f64 = 1e-9;

/// Absolute tolerance of the phase condition `⟨S_U⟩ = ⟨S_V⟩ = 0`, `⟨C_U⟩, ⟨C_V⟩ ≥ 0`.
pub const PHASE_CONDITION: f64 = 1e-8;

/// Minimum Harper gap `h₁ - h₀` for a nondegenerate ground state.
pub const GROUND_GAP: f64 = 1e-8;

/// Scale used to compare quantities that can grow like `1/|⟨U⟩|²`.
#[inline]
pub fn scale(a: f64, b: f64) -> f64 {
    let m = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    if m > 1.0 {
        m
    } else {
        1.0
    }
}

/// `|a - b|` relative to [`scale`].
#[inline]
pub fn rel_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / scale(a, b)
}
