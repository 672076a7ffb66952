//! Variability regions for Schur-class interpolation problems.
//!
//! The crate computes, for a given set of interpolation constraints, the
//! exact region filled by `f(z)` as `f` ranges over all analytic self-maps
//! of the unit disk that satisfy the constraints.

pub mod chain;
pub mod cli;
pub mod divided;
pub mod error;
pub mod function;
pub mod hyperbolic;
pub mod json;
pub mod oracle;
pub mod variability;

pub use chain::{evaluate_chain, ChainConfig, ChainEvaluation, ChainStage};
pub use divided::{build_table, DifferenceTable, EntryStatus, InterpolationData, SchurParameter, TableEntry};
pub use error::{Error, Result};
pub use function::{Blaschke, DiskMap, NestedChain, SchurFunction};
pub use hyperbolic::{ClosedDisk, ExtendedComplex, Tolerances};
pub use variability::{
    hyperbolic_region, multipoint_region, schur_region, schur_solvability, MultipointProblem, RegionKind,
    SolvabilityClass, VariabilityRegion,
};
