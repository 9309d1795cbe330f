//! The spin glass `H(S) = (sum_i q_i S_i)^2` over positive integer weights,
//! which is the two-way number partitioning problem in disguise.
//!
//! - [`instance`]: seeded weights and the `npp v1` text format
//! - [`spinmodel`]: configurations, energies, exact spectra, ground eigenspaces
//! - [`statmech`]: partition function, mean and free energy, zero-temperature limit
//! - [`solvers`]: brute force, meet-in-the-middle, Schroeppel–Shamir, Karmarkar–Karp, complete KK
//! - [`correspondence`]: cross-checks, scaling studies, phase sweeps
//! - [`cli`]: the `ising-npp` command
//!
//! All energies are exact integers; floating point appears only in thermodynamics.

pub mod cli;
pub mod correspondence;
pub mod error;
pub mod instance;
pub mod numeric;
pub mod solvers;
pub mod spinmodel;
pub mod statmech;
mod word;

pub use error::{Error, Result};
