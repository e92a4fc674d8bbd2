//! Exact combinatorics for untwisted affine Littelmann paths: level-zero
//! crystals B(λ)_cl with their degree function, Demazure crystals, and the
//! character identities tying them to Demazure characters of level one.

pub mod character;
pub mod cli;
pub mod crystal;
pub mod decomposition;
pub mod demazure;
pub mod error;
pub mod export;
pub mod path;
pub mod root_data;
pub mod selftest;

pub use crystal::{CrystalGraph, NormalizedCrystal};
pub use error::{Error, Result};
pub use path::{HProfile, Path};
pub use root_data::{FiniteType, Lattice, RootSystem, ShortSubsystem, Weight, WeylWord};

/// Exact rationals used for coordinates and breakpoints.
pub type Q = num_rational::Ratio<i64>;
