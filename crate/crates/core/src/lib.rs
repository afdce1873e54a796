//! Periodic box-ball system.
//!
//! Crystal elements and the combinatorial R, carrier time evolutions on a
//! ring of `L` boxes, the KKR bijection with rigged configurations, the
//! action-angle transform that linearizes the dynamics, exact string-center
//! linear algebra, period formulas, and brute-force oracles.

pub mod bethe;
pub mod crystal;
pub mod dynamics;
pub mod error;
pub mod kkr;
pub mod oracle;
pub mod periods;
pub mod scattering;

pub use bethe::{BetheRoots, StringSystem};
pub use crystal::{CrystalElement, RMatrixOutput, TensorWord};
pub use dynamics::{EvolutionResult, Path, Weyl};
pub use error::{Error, Result};
pub use kkr::{ActionVariable, RiggedConfiguration};
pub use oracle::Census;
pub use periods::PeriodReport;
pub use scattering::AngleRep;
