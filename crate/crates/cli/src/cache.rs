//! On-disk cache of `analyze` reports.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use solvgraph_core::{FiniteGroup, ENGINE_VERSION, SCHEMA_VERSION};

use crate::args::Options;

/// Key over the generators, the engine version and every option that can
/// change the report.
pub fn key(g: &FiniteGroup, opts: &Options) -> String {
    let mut h = Sha256::new();
    h.update(format!("engine {ENGINE_VERSION} schema {SCHEMA_VERSION}\n"));
    h.update(format!("degree {}\n", g.degree()));
    for p in g.generators() {
        h.update(format!("{p}\n"));
    }
    h.update(format!(
        "exact-independence {} k44-budget {} audit {} seed {}\n",
        opts.exact_independence, opts.k44_budget, opts.audit, opts.seed
    ));
    hex::encode(h.finalize())
}

pub fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("analyze-{key}.json"))
}

pub fn load(dir: &Path, key: &str) -> Option<String> {
    std::fs::read_to_string(path(dir, key)).ok()
}

pub fn store(dir: &Path, key: &str, text: &str) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    // write-then-rename so a concurrent reader never sees a partial file
    let tmp = dir.join(format!(".analyze-{key}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path(dir, key))
}
