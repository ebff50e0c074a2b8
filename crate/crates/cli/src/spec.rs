use std::path::Path;

use solvgraph_core::catalog;
use solvgraph_core::group::parse_generator_file;
use solvgraph_core::FiniteGroup;

use crate::CliError;

/// A group named on the command line, either from the catalog or a
/// generator file.
pub struct GroupSpec {
    pub name: String,
    pub group: FiniteGroup,
}

impl GroupSpec {
    pub fn resolve(spec: &str, guard: usize) -> Result<Self, CliError> {
        if let Some(entry) = catalog::lookup(spec) {
            return Ok(GroupSpec {
                name: entry.name.to_string(),
                group: entry.group(guard)?,
            });
        }
        let path = Path::new(spec);
        if !path.exists() {
            return Err(CliError::Usage(format!(
                "`{spec}` is neither a catalog group nor an existing generator file (see `solvgraph catalog`)"
            )));
        }
        let text = std::fs::read_to_string(path)?;
        let (degree, gens) = parse_generator_file(&text)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string());
        Ok(GroupSpec {
            name,
            group: FiniteGroup::generate(degree, &gens, guard)?,
        })
    }
}
