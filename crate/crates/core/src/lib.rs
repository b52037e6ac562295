//! Schwinger clock/shift operator algebra, uncertainty bound hierarchies,
//! Harper ground states and odd-dimensional discrete phase space.
//!
//! Everything here is pure computation on small dense complex matrices and
//! builds without `std` (an allocator is required). File formats, the CLI
//! and parallel drivers live in the `schwinger` crate.
//!
//! All matrices are written in the eigenbasis `{|u_α⟩}` of the clock
//! operator `U`, so `U = diag(1, ω, …, ω^{N-1})` and the shift operator `V`
//! is the cyclic permutation `V|u_α⟩ = |u_{α-1}⟩`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod bounds;
mod error;
pub mod harper;
pub mod linalg;
pub mod phase_space;
pub mod sampling;
pub mod tol;

pub use error::{Error, Operator, Result};
pub use linalg::{CMatrix, HermitianEigen, C64};

pub use algebra::{DensityMatrix, DressedQuartet, SchwingerPair, TrigQuartet};
pub use bounds::BoundReport;
pub use harper::{ClosedFormGroundState, FourierOperator, GroundStateResult, HarperHamiltonian};
pub use phase_space::{ModularHalf, WeylFunction, WignerFunction};
pub use sampling::{Ensemble, SamplerConfig};
