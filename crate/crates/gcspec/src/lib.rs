//! Goldberg-Coxeter subdivisions `GC_{k,l}(X)` of 3- and 4-valent maps, their
//! combinatorial Laplacian spectra, and the closed-form cluster and torus
//! eigenvalues that control them.

pub mod cluster;
pub mod colorings;
pub mod error;
pub mod gc;
pub mod graphcore;
pub mod lattice;
pub mod spectra;

pub use error::{Error, Result};
