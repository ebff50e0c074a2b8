//! Solvabilizers `Sol_G(x)`, degrees and the `Ord(Sol_G)` profile.
//!
//! [`Analysis`] runs the full pair sweep for a group. Only one anchor per
//! conjugacy class is scanned directly, and classes reached as coprime
//! powers of an earlier anchor reuse its row, since `<x, y> = <x^i, y>`
//! whenever `gcd(i, o(x)) = 1`. Every other row is transported by
//! conjugation, and a seeded fraction of the transported rows is re-scanned
//! directly as an audit.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphMode, NsGraph};
use crate::group::{ConjugacyClasses, FiniteGroup};
use crate::perm::gcd;
use crate::structure::{self, SubgroupSet, VerdictCache};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct EngineConfig {
    /// Fraction of transported rows re-checked by a direct scan.
    pub audit_fraction: f64,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            audit_fraction: 0.10,
            seed: 1,
        }
    }
}

/// `<x, y>` is solvable. Consults and fills the verdict cache.
pub fn sol_pair(g: &FiniteGroup, cache: &VerdictCache, x: usize, y: usize) -> bool {
    cache.pair_verdict(g, &structure::two_generated(g, x, y))
}

/// `Sol_G(x)` by scanning every `y`. Members of a coset `y<x>` share one
/// verdict because `<x, y x^k> = <x, y>`, so each coset is decided once.
pub fn direct_row(g: &FiniteGroup, cache: &VerdictCache, x: usize) -> FixedBitSet {
    let n = g.order();
    let powers = g.powers(x);
    let mut decided = FixedBitSet::with_capacity(n);
    let mut row = FixedBitSet::with_capacity(n);
    for y in 0..n {
        if decided.contains(y) {
            continue;
        }
        let solvable = sol_pair(g, cache, x, y);
        for &p in &powers {
            let z = g.mul(y, p);
            decided.insert(z);
            row.set(z, solvable);
        }
    }
    row
}

/// `{a in A : <a, b> solvable for all b in B}`.
pub fn solvabilizer_of_set(
    g: &FiniteGroup,
    cache: &VerdictCache,
    a: &[usize],
    b: &[usize],
) -> Result<Vec<usize>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("solvabilizer needs nonempty sets".into()));
    }
    let mut out: Vec<usize> = a
        .iter()
        .copied()
        .filter(|&x| b.iter().all(|&y| sol_pair(g, cache, x, y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Writes `members` as a disjoint union of cosets `r<x>`, taking the least
/// uncovered member as the next representative.
pub fn coset_decomposition(g: &FiniteGroup, x: usize, members: &FixedBitSet) -> Result<Vec<usize>> {
    let powers = g.powers(x);
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut reps = Vec::new();
    for r in members.ones() {
        if covered.contains(r) {
            continue;
        }
        for &p in &powers {
            let z = g.mul(r, p);
            if !members.contains(z) || covered.put(z) {
                return Err(Error::InvariantViolation(format!(
                    "Sol_G({x}) is not a disjoint union of <x>-cosets at representative {r}"
                )));
            }
        }
        reps.push(r);
    }
    Ok(reps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SolvabilizerResult {
    pub element: usize,
    pub order: usize,
    #[serde(skip)]
    pub members: Vec<usize>,
    pub members_count: usize,
    pub degree: usize,
    /// Representatives `r` with `Sol_G(x)` the disjoint union of `r<x>`.
    pub cosets: Vec<usize>,
}

impl SolvabilizerResult {
    fn build(g: &FiniteGroup, x: usize, row: &FixedBitSet) -> Result<Self> {
        let members: Vec<usize> = row.ones().collect();
        let cosets = coset_decomposition(g, x, row)?;
        Ok(SolvabilizerResult {
            element: x,
            order: g.element_order(x),
            members_count: members.len(),
            degree: g.order() - members.len(),
            members,
            cosets,
        })
    }

    /// Checks the structural facts every solvabilizer must satisfy.
    pub fn validate(&self, g: &FiniteGroup, radical: &SubgroupSet) -> Result<()> {
        let x = self.element;
        let has = |y: usize| self.members.binary_search(&y).is_ok();
        let fail = |what: &str| {
            Err(Error::InvariantViolation(format!(
                "Sol_G({}) [{}]: {what}",
                x,
                g.label(x)
            )))
        };
        if !has(x) {
            return fail("does not contain x");
        }
        if !radical.members().iter().all(|&r| has(r)) {
            return fail("misses part of the radical");
        }
        if !g.normalizer_of_cyclic(x).into_iter().all(has) {
            return fail("misses part of N_G(<x>)");
        }
        let size = self.members.len();
        let centralizer = g.order() / g.conjugacy_classes().classes[g.conjugacy_classes().class_of[x]].len();
        if !size.is_multiple_of(radical.len())
            || !size.is_multiple_of(self.order)
            || !size.is_multiple_of(centralizer)
        {
            return fail("size fails a divisibility constraint");
        }
        if self.degree != g.order() - size {
            return fail("degree mismatch");
        }
        if self.cosets.len() * self.order != size {
            return fail("coset decomposition does not cover the set");
        }
        Ok(())
    }
}

/// Multiset `{|Sol_G(x)| : x in G}` as value -> count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdSolProfile {
    pub counts: BTreeMap<usize, usize>,
}

impl OrdSolProfile {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// The set `Ord(Sol_G)` without multiplicities.
    pub fn values(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }
}

/// How a row of the solvabilizer table was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    CoprimePower { of: usize, exponent: usize },
    Conjugated { from: usize, by: usize },
}

enum Anchor {
    Direct(usize),
    Power {
        element: usize,
        of: usize,
        exponent: usize,
    },
}

impl Anchor {
    fn element(&self) -> usize {
        match *self {
            Anchor::Direct(x) => x,
            Anchor::Power { element, .. } => element,
        }
    }
}

/// The complete solvabilizer table of a group plus everything derived from it.
pub struct Analysis {
    group: FiniteGroup,
    config: EngineConfig,
    cache: VerdictCache,
    rows: Vec<FixedBitSet>,
    provenance: Vec<Provenance>,
    audited: Vec<usize>,
    radical: SubgroupSet,
    full: OnceLock<NsGraph>,
    induced: OnceLock<NsGraph>,
}

impl Analysis {
    pub fn new(group: FiniteGroup, config: EngineConfig) -> Result<Self> {
        if !(0.0..=1.0).contains(&config.audit_fraction) {
            return Err(Error::Precondition(format!(
                "audit fraction {} outside [0, 1]",
                config.audit_fraction
            )));
        }
        let cache = VerdictCache::new();
        let n = group.order();
        let classes = group.conjugacy_classes();
        let anchors = choose_anchors(&group, classes);

        let direct: Vec<(usize, FixedBitSet)> = anchors
            .par_iter()
            .filter_map(|a| match a {
                Anchor::Direct(x) => Some((*x, direct_row(&group, &cache, *x))),
                Anchor::Power { .. } => None,
            })
            .collect();

        let mut rows: Vec<Option<FixedBitSet>> = vec![None; n];
        let mut provenance = vec![Provenance::Direct; n];
        for (x, row) in direct {
            rows[x] = Some(row);
        }
        for a in &anchors {
            if let Anchor::Power {
                element,
                of,
                exponent,
            } = *a
            {
                rows[element] = rows[of].clone();
                provenance[element] = Provenance::CoprimePower { of, exponent };
            }
        }
        for (c, a) in anchors.iter().enumerate() {
            let anchor = a.element();
            let t_anchor = classes.conjugator_from_leader(anchor);
            let source = rows[anchor].clone().expect("anchor rows are filled");
            for &z in &classes.classes[c] {
                if z == anchor {
                    continue;
                }
                let by = group.mul(classes.conjugator_from_leader(z), group.inv(t_anchor));
                debug_assert_eq!(group.conjugate(by, anchor), z);
                let mut row = FixedBitSet::with_capacity(n);
                for y in source.ones() {
                    row.insert(group.conjugate(by, y));
                }
                rows[z] = Some(row);
                provenance[z] = Provenance::Conjugated { from: anchor, by };
            }
        }
        let rows: Vec<FixedBitSet> = rows
            .into_iter()
            .map(|r| r.expect("every class is covered by an anchor"))
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let audited: Vec<usize> = (0..n)
            .filter(|&z| provenance[z] != Provenance::Direct)
            .filter(|_| rng.gen_bool(config.audit_fraction))
            .collect();
        let mismatch = audited
            .par_iter()
            .find_first(|&&z| direct_row(&group, &cache, z) != rows[z]);
        if let Some(&z) = mismatch {
            return Err(Error::InvariantViolation(format!(
                "audit: transported Sol_G({z}) differs from a direct scan"
            )));
        }

        let radical_members: Vec<usize> = (0..n).filter(|&x| rows[x].count_ones(..) == n).collect();
        let radical = structure::validate_radical(&group, &radical_members)?;

        let analysis = Analysis {
            group,
            config,
            cache,
            rows,
            provenance,
            audited,
            radical,
            full: OnceLock::new(),
            induced: OnceLock::new(),
        };
        (0..n).into_par_iter().try_for_each(|x| {
            analysis
                .solvabilizer(x)?
                .validate(&analysis.group, &analysis.radical)
        })?;
        Ok(analysis)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn cache(&self) -> &VerdictCache {
        &self.cache
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.group.conjugacy_classes()
    }

    pub fn radical(&self) -> &SubgroupSet {
        &self.radical
    }

    /// `Sol_G(x)` as a bit row over element indices.
    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn provenance(&self, x: usize) -> Provenance {
        self.provenance[x]
    }

    /// Elements whose transported rows were re-scanned.
    pub fn audited(&self) -> &[usize] {
        &self.audited
    }

    /// Table lookup for `<x, y>` solvable.
    pub fn sol(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    /// Fresh computation of `<x, y>` solvable, bypassing the table.
    pub fn sol_pair(&self, x: usize, y: usize) -> bool {
        sol_pair(&self.group, &self.cache, x, y)
    }

    /// Fresh direct scan of `Sol_G(x)`, bypassing the table.
    pub fn direct_row(&self, x: usize) -> FixedBitSet {
        direct_row(&self.group, &self.cache, x)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.group.order() - self.rows[x].count_ones(..)
    }

    pub fn is_group_solvable(&self) -> bool {
        self.radical.len() == self.group.order()
    }

    /// Vertex count `|G| - |Sol(G)|` of the induced graph.
    pub fn n_hat(&self) -> usize {
        self.group.order() - self.radical.len()
    }

    pub fn solvabilizer(&self, x: usize) -> Result<SolvabilizerResult> {
        SolvabilizerResult::build(&self.group, x, &self.rows[x])
    }

    pub fn all_solvabilizers(&self) -> Result<Vec<SolvabilizerResult>> {
        (0..self.group.order()).map(|x| self.solvabilizer(x)).collect()
    }

    pub fn ord_sol(&self) -> OrdSolProfile {
        let mut counts = BTreeMap::new();
        for row in &self.rows {
            *counts.entry(row.count_ones(..)).or_insert(0) += 1;
        }
        OrdSolProfile { counts }
    }

    pub fn graph(&self, mode: GraphMode) -> &NsGraph {
        match mode {
            GraphMode::Full => self.full.get_or_init(|| NsGraph::build(self, mode)),
            GraphMode::Induced => self.induced.get_or_init(|| NsGraph::build(self, mode)),
        }
    }
}

fn choose_anchors(g: &FiniteGroup, classes: &ConjugacyClasses) -> Vec<Anchor> {
    let mut anchors: Vec<Option<Anchor>> = (0..classes.len()).map(|_| None).collect();
    for c in 0..classes.len() {
        if anchors[c].is_some() {
            continue;
        }
        let x = classes.leader(c);
        anchors[c] = Some(Anchor::Direct(x));
        let o = g.element_order(x);
        let powers = g.powers(x);
        for (i, &y) in powers.iter().enumerate().skip(2) {
            if gcd(i as u64, o as u64) != 1 {
                continue;
            }
            let d = classes.class_of[y];
            if anchors[d].is_none() {
                anchors[d] = Some(Anchor::Power {
                    element: y,
                    of: x,
                    exponent: i,
                });
            }
        }
    }
    anchors
        .into_iter()
        .map(|a| a.expect("all classes anchored"))
        .collect()
}
