use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which member of the Schwinger pair an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    U,
    V,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::U => f.write_str("U"),
            Operator::V => f.write_str("V"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operand shapes are incompatible.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare { rows: usize, cols: usize },
    /// `rows × cols` does not match the number of entries supplied.
    EntryCount { expected: usize, found: usize },
    NonFinite,
    NotHermitian { deviation: f64 },
    NotUnitary { deviation: f64 },
    NoConvergence { sweeps: usize, off_norm: f64 },
    /// Hilbert space dimension below the minimum an operation needs.
    Dimension { dim: usize, min: usize },
    /// Phase-space operations are only defined for odd `N`.
    EvenDimension { dim: usize },
    /// `|⟨O⟩|` is too small for `δO = (O - ⟨O⟩)/⟨O⟩` to exist.
    VanishingMean { op: Operator, modulus: f64 },
    /// A unitary variance equal to one has no δ counterpart.
    VarianceAtOne,
    InvalidState { reason: &'static str, value: f64 },
    OutOfRange { what: &'static str, value: f64 },
    DegenerateGround { gap: f64 },
    /// Two evaluation routes of the same quantity disagree.
    Inconsistent { what: &'static str, residual: f64 },
    /// A dressed quartet was combined with a state other than the one it was built on.
    StateMismatch,
    /// A sampler was asked for an ensemble its configuration does not select.
    EnsembleMismatch { expected: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::EntryCount { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::NonFinite => f.write_str("non-finite matrix entry"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (max deviation {deviation:e})")
            }
            Error::NoConvergence { sweeps, off_norm } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::Dimension { dim, min } => write!(f, "dimension {dim} is below the minimum {min}"),
            Error::EvenDimension { dim } => {
                write!(f, "phase-space requires odd dimension (got {dim})")
            }
            Error::VanishingMean { op, modulus } => write!(
                f,
                "delta operator undefined: |<{op}>| = {modulus:e} is below the cutoff"
            ),
            Error::VarianceAtOne => f.write_str("delta variance undefined for unit variance"),
            Error::InvalidState { reason, value } => {
                write!(f, "invalid density matrix: {reason} ({value:e})")
            }
            Error::OutOfRange { what, value } => write!(f, "{what} out of range ({value})"),
            Error::DegenerateGround { gap } => {
                write!(f, "Harper ground level is degenerate (gap {gap:e})")
            }
            Error::Inconsistent { what, residual } => {
                write!(f, "internal consistency failure in {what} (residual {residual:e})")
            }
            Error::EnsembleMismatch { expected } => {
                write!(f, "sampler configuration does not select the {expected} ensemble")
            }
            Error::StateMismatch => {
                f.write_str("dressed operators evaluated on a state other than their dressing state")
            }
        }
    }
}

impl core::error::Error for Error {}
