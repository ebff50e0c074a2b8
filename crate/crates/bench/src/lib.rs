//! Shared fixtures for the engine benchmarks.

use solvgraph_core::{catalog, Analysis, EngineConfig, FiniteGroup, DEFAULT_GUARD};

/// Catalog groups the benchmarks run on.
pub const GROUPS: &[&str] = &["A5", "SL25", "PSL27"];

pub fn group(name: &str) -> FiniteGroup {
    catalog::lookup(name)
        .unwrap_or_else(|| panic!("{name} is not in the catalog"))
        .group(DEFAULT_GUARD)
        .expect("catalog groups are valid")
}

pub fn analysis(name: &str) -> Analysis {
    Analysis::new(group(name), EngineConfig::default()).expect("catalog groups analyze")
}
