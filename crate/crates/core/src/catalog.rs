//! Built-in groups, stored as permutation generators.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub degree: usize,
    pub generators: &'static [&'static str],
    /// Checked whenever the entry is materialized.
    pub order: usize,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "trivial",
        description: "trivial group",
        degree: 1,
        generators: &[],
        order: 1,
    },
    CatalogEntry {
        name: "C2",
        description: "cyclic group of order 2",
        degree: 2,
        generators: &["(1 2)"],
        order: 2,
    },
    CatalogEntry {
        name: "C6",
        description: "cyclic group of order 6",
        degree: 6,
        generators: &["(1 2 3 4 5 6)"],
        order: 6,
    },
    CatalogEntry {
        name: "S3",
        description: "symmetric group on 3 letters",
        degree: 3,
        generators: &["(1 2 3)", "(1 2)"],
        order: 6,
    },
    CatalogEntry {
        name: "D10",
        description: "dihedral group of order 10",
        degree: 5,
        generators: &["(1 2 3 4 5)", "(2 5)(3 4)"],
        order: 10,
    },
    CatalogEntry {
        name: "A4",
        description: "alternating group on 4 letters",
        degree: 4,
        generators: &["(1 2 3)", "(2 3 4)"],
        order: 12,
    },
    CatalogEntry {
        name: "S4",
        description: "symmetric group on 4 letters",
        degree: 4,
        generators: &["(1 2 3 4)", "(1 2)"],
        order: 24,
    },
    CatalogEntry {
        name: "Q8",
        description: "quaternion group, regular representation",
        degree: 8,
        generators: &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"],
        order: 8,
    },
    CatalogEntry {
        name: "A5",
        description: "alternating group on 5 letters",
        degree: 5,
        generators: &["(1 2 3 4 5)", "(1 2 3)"],
        order: 60,
    },
    CatalogEntry {
        name: "S5",
        description: "symmetric group on 5 letters",
        degree: 5,
        generators: &["(1 2 3 4 5)", "(1 2)"],
        order: 120,
    },
    // [[1,1],[0,1]] and [[0,-1],[1,0]] acting on the 24 nonzero vectors of F_5^2,
    // vector (a, b) numbered 5a + b in lexicographic order
    CatalogEntry {
        name: "SL25",
        description: "SL(2,5) acting on the nonzero vectors of F_5^2",
        degree: 24,
        generators: &[
            "(1 6 11 16 21)(2 12 22 7 17)(3 18 8 23 13)(4 24 19 14 9)",
            "(1 20 4 5)(2 15 3 10)(6 21 24 9)(7 16 23 14)(8 11 22 19)(12 17 18 13)",
        ],
        order: 120,
    },
    // x -> x + 1 and x -> -1/x on the projective line over F_7, infinity = 8
    CatalogEntry {
        name: "PSL27",
        description: "PSL(2,7) acting on the projective line over F_7",
        degree: 8,
        generators: &["(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)"],
        order: 168,
    },
    CatalogEntry {
        name: "A5xC2",
        description: "direct product of A5 and C2",
        degree: 7,
        generators: &["(1 2 3 4 5)", "(1 2 3)", "(6 7)"],
        order: 120,
    },
];

impl CatalogEntry {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|s| Permutation::parse(s, self.degree))
            .collect()
    }

    pub fn group(&self, guard: usize) -> Result<FiniteGroup> {
        let g = FiniteGroup::generate(self.degree, &self.permutations()?, guard)?;
        if g.order() != self.order {
            return Err(Error::InvariantViolation(format!(
                "catalog group {} has order {}, expected {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

/// Case-insensitive lookup; `SL(2,5)`-style spellings are accepted too.
pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    let norm: String = name
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ',' | ' ' | '_'))
        .collect::<String>()
        .to_ascii_lowercase()
        .replace('×', "x");
    CATALOG.iter().find(|e| e.name.to_ascii_lowercase() == norm)
}
