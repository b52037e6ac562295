//! Reproducible random states.
//!
//! Sample `i` of a configuration is a pure function of `(seed, i)`:
//!
//! 1. A ChaCha20 generator is keyed with the 8 little-endian bytes of `seed`
//!    followed by 24 zero bytes, and its stream id is set to `i`.
//! 2. Each complex Gaussian entry draws two `u64` words `a`, `b` and sets
//!    `u₁ = ((a >> 11) + 1)·2⁻⁵³ ∈ (0, 1]`, `u₂ = (b >> 11)·2⁻⁵³ ∈ [0, 1)`,
//!    `r = √(-2 ln u₁)`, entry `= r cos 2πu₂ + i r sin 2πu₂`.
//! 3. Entries are filled row-major (a vector for pure states, an `N×N`
//!    matrix `G` for mixed states).
//!
//! Pure states are `g/‖g‖`; mixed states are `GG†/Tr[GG†]`.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::DensityMatrix;
use crate::linalg::{CMatrix, C64};
use crate::{tol, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Ensemble {
    /// Haar-random pure states.
    #[default]
    PureHaar,
    /// Hilbert-Schmidt mixed states.
    MixedHs,
}

impl Ensemble {
    pub fn as_str(&self) -> &'static str {
        match self {
            Ensemble::PureHaar => "pure-haar",
            Ensemble::MixedHs => "mixed-hs",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure-haar" => Ok(Ensemble::PureHaar),
            "mixed-hs" => Ok(Ensemble::MixedHs),
            _ => Err(Error::EnsembleMismatch {
                expected: "pure-haar or mixed-hs",
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SamplerConfig {
    pub dim: usize,
    pub ensemble: Ensemble,
    pub count: u64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(dim: usize, ensemble: Ensemble, count: u64, seed: u64) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Dimension { dim, min: 1 });
        }
        if count < 1 {
            return Err(Error::OutOfRange {
                what: "sample count",
                value: 0.0,
            });
        }
        Ok(SamplerConfig {
            dim,
            ensemble,
            count,
            seed,
        })
    }

    /// Sample `index`, independent of `count`.
    pub fn sample_at(&self, index: u64) -> Result<DensityMatrix> {
        match self.ensemble {
            Ensemble::PureHaar => DensityMatrix::from_state_vector(&pure_vector(self, index)),
            Ensemble::MixedHs => DensityMatrix::from_gram(&gaussian_matrix(self, index)),
        }
    }

    /// Samples `start..end` (clipped to `count`), in index order.
    pub fn range(&self, start: u64, end: u64) -> Samples {
        Samples {
            config: *self,
            next: start,
            end: end.min(self.count),
        }
    }

    pub fn iter(&self) -> Samples {
        self.range(0, self.count)
    }
}

fn generator(seed: u64, index: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha20Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

const TWO_POW_M53: f64 = 1.0 / (1u64 << 53) as f64;

/// Standard complex Gaussian by Box-Muller (unit variance per component).
fn complex_gaussian(rng: &mut ChaCha20Rng) -> C64 {
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * TWO_POW_M53;
    let u2 = (rng.next_u64() >> 11) as f64 * TWO_POW_M53;
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (TAU * u2).sin_cos();
    C64::new(r * c, r * s)
}

/// Unnormalised Gaussian vector behind pure sample `index`.
pub fn gaussian_vector(config: &SamplerConfig, index: u64) -> Vec<C64> {
    let mut rng = generator(config.seed, index);
    (0..config.dim).map(|_| complex_gaussian(&mut rng)).collect()
}

/// Gaussian matrix `G` behind mixed sample `index`, filled row-major.
pub fn gaussian_matrix(config: &SamplerConfig, index: u64) -> CMatrix {
    let mut rng = generator(config.seed, index);
    let n = config.dim;
    let data: Vec<C64> = (0..n * n).map(|_| complex_gaussian(&mut rng)).collect();
    CMatrix::from_vec(n, n, data).expect("Box-Muller output is finite")
}

/// Normalised state vector of pure sample `index`.
pub fn pure_vector(config: &SamplerConfig, index: u64) -> Vec<C64> {
    let g = gaussian_vector(config, index);
    let norm = crate::linalg::vector_norm(&g);
    g.into_iter().map(|z| z / norm).collect()
}

/// Iterator over a contiguous index range of a configuration.
#[derive(Clone, Debug)]
pub struct Samples {
    config: SamplerConfig,
    next: u64,
    end: u64,
}

impl Samples {
    pub fn position(&self) -> u64 {
        self.next
    }
}

impl Iterator for Samples {
    type Item = Result<DensityMatrix>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let i = self.next;
        self.next += 1;
        Some(self.config.sample_at(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.end.saturating_sub(self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Samples {}

pub fn sample_pure(config: &SamplerConfig) -> Result<Samples> {
    if config.ensemble != Ensemble::PureHaar {
        return Err(Error::EnsembleMismatch {
            expected: "pure-haar",
        });
    }
    Ok(config.iter())
}

pub fn sample_mixed(config: &SamplerConfig) -> Result<Samples> {
    if config.ensemble != Ensemble::MixedHs {
        return Err(Error::EnsembleMismatch {
            expected: "mixed-hs",
        });
    }
    Ok(config.iter())
}

/// Counts of samples whose `⟨U⟩` or `⟨V⟩` vanishes, which have no δ statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Admissibility {
    pub total: u64,
    pub vanishing_u: u64,
    pub vanishing_v: u64,
    pub excluded: u64,
}

impl Admissibility {
    /// Records one sample; returns whether it is admissible.
    pub fn record(&mut self, mean_u: C64, mean_v: C64) -> bool {
        let bad_u = mean_u.norm() <= tol::MEAN_CUTOFF;
        let bad_v = mean_v.norm() <= tol::MEAN_CUTOFF;
        self.total += 1;
        self.vanishing_u += bad_u as u64;
        self.vanishing_v += bad_v as u64;
        self.excluded += (bad_u || bad_v) as u64;
        !(bad_u || bad_v)
    }

    pub fn admitted(&self) -> u64 {
        self.total - self.excluded
    }

    pub fn excluded_fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.excluded as f64 / self.total as f64
        }
    }

    pub fn merge(&mut self, other: &Admissibility) {
        self.total += other.total;
        self.vanishing_u += other.vanishing_u;
        self.vanishing_v += other.vanishing_v;
        self.excluded += other.excluded;
    }
}
