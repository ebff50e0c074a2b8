//! Solvabilizers, solvable radicals and non-solvable graphs of finite
//! permutation groups.
//!
//! Two elements `x, y` of a group `G` are adjacent in the non-solvable graph
//! when `<x, y>` is not solvable. The solvabilizer `Sol_G(x)` collects the
//! `y` for which `<x, y>` is solvable, so the degree of `x` is
//! `|G| - |Sol_G(x)|`. The elements pairing solvably with everything form
//! the solvable radical; they are the isolated vertices, and the induced
//! graph on the remaining elements is the main object studied here.

pub mod catalog;
pub mod error;
pub mod graph;
pub mod group;
pub mod perm;
pub mod solvabilizer;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{GraphMode, NsGraph};
pub use group::{FiniteGroup, DEFAULT_GUARD};
pub use perm::Permutation;
pub use solvabilizer::{Analysis, EngineConfig, OrdSolProfile, SolvabilizerResult};
pub use structure::{SubgroupSet, VerdictCache};
pub use verify::{verify_all, verify_check, CheckResult, CheckStatus, VerificationReport, VerifyConfig};

/// Version stamped into every JSON document.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Version of the JSON document layouts.
pub const SCHEMA_VERSION: u32 = 1;
