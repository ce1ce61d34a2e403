//! Finite-dimensional verification toolkit for order and domination phenomena
//! on matrix spaces: singular-value majorization, order intervals and positive
//! solids, the positivity hierarchy of linear maps (positive / k-positive /
//! completely positive / decomposable) with certificates, Schur multipliers,
//! and a certified corpus of named constructions.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod decompose;
pub mod doc;
pub mod eig;
pub mod error;
pub mod majorization;
pub mod maps;
pub mod matrix;
pub mod order;
pub mod paulsen;
pub mod report;
pub mod schur;
pub mod seesaw;

pub use config::{SpaceConstants, ToleranceConfig};
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;

use rand_chacha::rand_core::SeedableRng;

/// Deterministic RNG used by every randomized sweep in the toolkit.
pub fn rng_from_seed(seed: u64) -> rand_chacha::ChaCha12Rng {
    rand_chacha::ChaCha12Rng::seed_from_u64(seed)
}
