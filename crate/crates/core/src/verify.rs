//! Mechanical checks of the structural facts about solvabilizers and the
//! non-solvable graph, run against one concrete group.
//!
//! Every check is a read-only consumer of a finished [`Analysis`]. Where a
//! check would otherwise compare the accelerated table with itself, it
//! re-derives the values through fresh pair verdicts instead.

use std::cell::OnceCell;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{GraphMode, DEFAULT_EXACT_INDEPENDENCE, DEFAULT_K44_BUDGET};
use crate::group::FiniteGroup;
use crate::perm::gcd;
use crate::solvabilizer::{solvabilizer_of_set, Analysis, EngineConfig};
use crate::structure::{self, QuotientGroup, SubgroupSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerifyConfig {
    #[serde(flatten)]
    pub engine: EngineConfig,
    pub exact_independence: usize,
    pub k44_budget: u64,
    /// Conjugating elements drawn for the conjugation check.
    pub conjugation_samples: usize,
    /// Proper subgroups containing the radical drawn for the embedding checks.
    pub subgroup_samples: usize,
    /// Emit per-check wall time. Off by default so reports are reproducible
    /// byte for byte.
    pub record_timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            engine: EngineConfig::default(),
            exact_independence: DEFAULT_EXACT_INDEPENDENCE,
            k44_budget: DEFAULT_K44_BUDGET,
            conjugation_samples: 8,
            subgroup_samples: 8,
            record_timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
    NotApplicable(String),
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped(_) => "skipped",
            CheckStatus::NotApplicable(_) => "not-applicable",
        }
    }

    fn reason(&self) -> Option<&str> {
        match self {
            CheckStatus::Skipped(r) | CheckStatus::NotApplicable(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub code: &'static str,
    pub id: &'static str,
    pub statement: &'static str,
    pub status: CheckStatus,
    pub witness: Option<Value>,
    pub elapsed: Duration,
    timed: bool,
}

impl Serialize for CheckResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut doc = json!({
            "code": self.code,
            "id": self.id,
            "statement": self.statement,
            "status": self.status.as_str(),
            "witness": self.witness,
            "ms": if self.timed {
                json!(self.elapsed.as_secs_f64() * 1e3)
            } else {
                Value::Null
            },
        });
        if let Some(reason) = self.status.reason() {
            doc["reason"] = json!(reason);
        }
        doc.serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

impl GroupDescriptor {
    pub fn new(name: &str, g: &FiniteGroup) -> Self {
        GroupDescriptor {
            name: name.to_string(),
            degree: g.degree(),
            order: g.order(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub not_applicable: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub engine_version: &'static str,
    pub group: GroupDescriptor,
    pub params: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    /// No check failed or was skipped.
    pub fn all_pass_or_na(&self) -> bool {
        self.summary.fail == 0 && self.summary.skipped == 0
    }

    pub fn any_fail(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn check(&self, code_or_id: &str) -> Option<&CheckResult> {
        self.checks
            .iter()
            .find(|c| c.code == code_or_id || c.id == code_or_id)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

type Outcome = (CheckStatus, Option<Value>);
type CheckFn = fn(&Ctx) -> Result<Outcome>;

struct CheckDef {
    code: &'static str,
    id: &'static str,
    aliases: &'static [&'static str],
    statement: &'static str,
    run: CheckFn,
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        code: "C01",
        id: "connectivity-witness",
        aliases: &[],
        statement: "any two non-radical x, y have some z with <x,z> and <y,z> both non-solvable",
        run: c01_connectivity,
    },
    CheckDef {
        code: "C02",
        id: "diam-2",
        aliases: &[],
        statement: "the induced non-solvable graph has diameter exactly 2",
        run: c02_diameter,
    },
    CheckDef {
        code: "C03",
        id: "involution-pairs",
        aliases: &[],
        statement: "two involutions always generate a solvable subgroup",
        run: c03_involutions,
    },
    CheckDef {
        code: "C04",
        id: "quotient-solvabilizer",
        aliases: &[],
        statement: "Sol_{G/N}(xN) = Sol_G(x)/N for every normal N inside Sol(G)",
        run: c04_quotient,
    },
    CheckDef {
        code: "C05",
        id: "conjugation-solvabilizer",
        aliases: &[],
        statement: "Sol_G(gxg^-1) = g Sol_G(x) g^-1",
        run: c05_conjugation,
    },
    CheckDef {
        code: "C06",
        id: "monotone-solvabilizer",
        aliases: &[],
        statement: "A subset of B implies Sol_A(x) subset of Sol_B(x)",
        run: c06_monotone,
    },
    CheckDef {
        code: "C07",
        id: "divisibility",
        aliases: &[],
        statement: "|Sol_G(x)| is divisible by |Sol(G)|, o(x) and |C_G(x)|",
        run: c07_divisibility,
    },
    CheckDef {
        code: "C08",
        id: "coprime-power",
        aliases: &[],
        statement: "Sol_G(x) = Sol_G(x^i) and deg(x) = deg(x^i) for i coprime to o(x)",
        run: c08_coprime_power,
    },
    CheckDef {
        code: "C09",
        id: "absorption",
        aliases: &[],
        statement: "a solvable subgroup H lies in Sol_G(x) for every x in H",
        run: c09_absorption,
    },
    CheckDef {
        code: "C10",
        id: "degree-bounds",
        aliases: &[],
        statement: "2o(x) <= deg(x), 5 < deg(x) < n-1, deg(x) not prime",
        run: c10_degree_bounds,
    },
    CheckDef {
        code: "C11",
        id: "s-group-dichotomy",
        aliases: &["s-group-witness"],
        statement: "G is solvable iff every Sol_G(x) is a subgroup",
        run: c11_s_group,
    },
    CheckDef {
        code: "C12",
        id: "k44-and-nonplanar",
        aliases: &[],
        statement: "the induced graph contains K_{4,4}, hence is not planar",
        run: c12_k44,
    },
    CheckDef {
        code: "C13",
        id: "irregular",
        aliases: &[],
        statement: "the induced graph is not regular",
        run: c13_irregular,
    },
    CheckDef {
        code: "C14",
        id: "not-tree",
        aliases: &[],
        statement: "the induced graph is not a tree",
        run: c14_not_tree,
    },
    CheckDef {
        code: "C15",
        id: "alpha-bound",
        aliases: &[],
        statement: "alpha(S_G) >= max o(x), and every <x> is independent",
        run: c15_alpha,
    },
    CheckDef {
        code: "C16",
        id: "subgraph-embedding",
        aliases: &[],
        statement: "induced graph of H embeds for H containing Sol(G); xN ~ yN iff x ~ y",
        run: c16_embedding,
    },
    CheckDef {
        code: "C17",
        id: "vertex-count-nonisomorphism",
        aliases: &[],
        statement: "proper H and nontrivial G/N give induced graphs with a different vertex count",
        run: c17_vertex_counts,
    },
    CheckDef {
        code: "C18",
        id: "normalizer-in-solvabilizer",
        aliases: &[],
        statement: "N_G(<x>) and local subgroups N_G(H), x in H solvable, lie in Sol_G(x)",
        run: c18_normalizers,
    },
    CheckDef {
        code: "C19",
        id: "normal-cyclic-subgroups",
        aliases: &[],
        statement: "if every cyclic subgroup is normal then G is solvable",
        run: c19_dedekind,
    },
    CheckDef {
        code: "C20",
        id: "deg-not-n-minus-2",
        aliases: &[],
        statement: "no non-radical vertex has degree n-2, so deg(x) <= n-3",
        run: c20_not_n_minus_2,
    },
    CheckDef {
        code: "C21",
        id: "radical-isolated",
        aliases: &[],
        statement: "the isolated vertices of S_G are exactly the radical",
        run: c21_radical_isolated,
    },
];

/// All registered `(code, id)` pairs in execution order.
pub fn registered_checks() -> Vec<(&'static str, &'static str)> {
    CHECKS.iter().map(|c| (c.code, c.id)).collect()
}

struct QuotientCase {
    quotient: QuotientGroup,
    analysis: Analysis,
}

struct SubgroupCase {
    subgroup: SubgroupSet,
    analysis: Analysis,
    embedding: Vec<usize>,
}

struct Ctx<'a> {
    an: &'a Analysis,
    cfg: &'a VerifyConfig,
    two_generated: Vec<SubgroupSet>,
    quotients: OnceCell<Vec<QuotientCase>>,
    subgroups: OnceCell<Vec<SubgroupCase>>,
}

impl<'a> Ctx<'a> {
    fn new(an: &'a Analysis, cfg: &'a VerifyConfig) -> Self {
        Ctx {
            an,
            cfg,
            two_generated: an.cache().two_generated_subgroups(an.group()),
            quotients: OnceCell::new(),
            subgroups: OnceCell::new(),
        }
    }

    fn g(&self) -> &FiniteGroup {
        self.an.group()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.engine.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn non_radical(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g().order()).filter(|&x| !self.an.radical().contains(x))
    }

    /// Quotients by every normal subgroup of G inside the radical.
    fn quotients(&self) -> Result<&[QuotientCase]> {
        if self.quotients.get().is_none() {
            let mut cases = Vec::new();
            for n in structure::normal_subgroups_within(self.g(), self.an.radical()) {
                let quotient = structure::quotient_group(self.g(), &n)?;
                let qg = FiniteGroup::from_elements(
                    quotient.group.degree(),
                    quotient.group.generators().to_vec(),
                    quotient.group.elements().to_vec(),
                )?;
                let analysis = Analysis::new(qg, self.cfg.engine.clone())?;
                cases.push(QuotientCase { quotient, analysis });
            }
            let _ = self.quotients.set(cases);
        }
        Ok(self.quotients.get().expect("initialized above"))
    }

    /// Sampled proper subgroups containing the radical: every non-solvable
    /// candidate first, then a seeded pick of solvable ones.
    fn subgroups(&self) -> Result<&[SubgroupCase]> {
        if self.subgroups.get().is_none() {
            let g = self.g();
            let radical = self.an.radical();
            let mut candidates: Vec<SubgroupSet> = Vec::new();
            for h in &self.two_generated {
                let mut seed = radical.generators().to_vec();
                seed.extend_from_slice(h.generators());
                let s = structure::closure(g, &seed);
                if s.len() < g.order() && !candidates.contains(&s) {
                    candidates.push(s);
                }
            }
            let (mut picked, mut solvable): (Vec<_>, Vec<_>) = candidates
                .into_iter()
                .partition(|s| !structure::is_solvable(g, s));
            picked.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members().cmp(b.members())));
            picked.truncate(self.cfg.subgroup_samples);
            solvable.sort_by(|a, b| a.members().cmp(b.members()));
            solvable.shuffle(&mut self.rng(16));
            let room = self.cfg.subgroup_samples.saturating_sub(picked.len());
            picked.extend(solvable.into_iter().take(room));
            let mut cases = Vec::new();
            for subgroup in picked {
                let (h, embedding) = structure::subgroup_as_group(g, &subgroup)?;
                let analysis = Analysis::new(h, self.cfg.engine.clone())?;
                cases.push(SubgroupCase {
                    subgroup,
                    analysis,
                    embedding,
                });
            }
            let _ = self.subgroups.set(cases);
        }
        Ok(self.subgroups.get().expect("initialized above"))
    }
}

fn pass(w: Value) -> Result<Outcome> {
    Ok((CheckStatus::Pass, Some(w)))
}

fn fail(w: Value) -> Result<Outcome> {
    Ok((CheckStatus::Fail, Some(w)))
}

fn not_applicable(reason: &str) -> Result<Outcome> {
    Ok((CheckStatus::NotApplicable(reason.to_string()), None))
}

const SOLVABLE_NA: &str = "G is solvable, so the non-solvable graph has no edges";

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn bits_of(n: usize, it: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for x in it {
        b.insert(x);
    }
    b
}

fn c01_connectivity(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let graph = cx.an.graph(GraphMode::Induced);
    let vs = graph.vertices();
    let mut sample = Vec::new();
    let mut pairs = 0usize;
    for (i, &x) in vs.iter().enumerate() {
        for &y in &vs[i..] {
            pairs += 1;
            match graph.common_neighbor(x, y) {
                Some(z) => {
                    if sample.len() < 3 && x != y {
                        sample.push([x, y, z]);
                    }
                }
                None => return fail(json!({ "pair": [x, y] })),
            }
        }
    }
    pass(json!({ "pairs-checked": pairs, "sample": sample }))
}

fn c02_diameter(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let graph = cx.an.graph(GraphMode::Induced);
    let report = graph.diameter()?;
    for &(x, y, z) in &report.common_neighbors {
        if !(graph.adjacent(x, z) && graph.adjacent(y, z)) {
            return fail(json!({ "bad-common-neighbor": [x, y, z] }));
        }
    }
    let w = json!({
        "diameter": report.diameter,
        "nonadjacent-pairs": report.common_neighbors.len(),
        "sample": report.common_neighbors.first().map(|&(x, y, z)| [x, y, z]),
    });
    if report.diameter == 2 {
        pass(w)
    } else {
        fail(w)
    }
}

fn c03_involutions(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let invols: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == 2).collect();
    if invols.len() < 2 {
        return not_applicable("fewer than two involutions");
    }
    for (i, &x) in invols.iter().enumerate() {
        for &y in &invols[i + 1..] {
            if !cx.an.sol_pair(x, y) || !cx.an.sol(x, y) {
                return fail(json!({ "pair": [x, y] }));
            }
        }
    }
    pass(json!({ "involutions": invols.len() }))
}

fn c04_quotient(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let mut sizes = Vec::new();
    for case in cx.quotients()? {
        let q = &case.quotient;
        let n_size = q.normal.len();
        for x in 0..g.order() {
            let row = cx.an.row(x);
            let image = bits_of(q.group.order(), row.ones().map(|y| q.coset_of[y]));
            let target = case.analysis.row(q.coset_of[x]);
            if &image != target || row.count_ones(..) != n_size * target.count_ones(..) {
                return fail(json!({ "normal-order": n_size, "element": x }));
            }
        }
        sizes.push(n_size);
    }
    pass(json!({ "normal-subgroup-orders": sizes, "elements-checked": g.order() }))
}

fn c05_conjugation(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let mut pool: Vec<usize> = (1..g.order()).collect();
    pool.shuffle(&mut cx.rng(5));
    let mut samples: Vec<usize> = g.generator_indices().to_vec();
    samples.extend(pool.into_iter().take(cx.cfg.conjugation_samples));
    samples.sort_unstable();
    samples.dedup();
    let classes = cx.an.classes();
    let mut checked = 0;
    for class in &classes.classes {
        let x = class[0];
        let base = cx.an.direct_row(x);
        for &h in &samples {
            let z = g.conjugate(h, x);
            let moved = bits_of(g.order(), base.ones().map(|y| g.conjugate(h, y)));
            let direct = cx.an.direct_row(z);
            if direct != moved || cx.an.row(z) != &direct {
                return fail(json!({ "element": x, "conjugator": h }));
            }
            checked += 1;
        }
    }
    pass(json!({ "conjugators": samples, "pairs-checked": checked }))
}

fn c06_monotone(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let mut rng = cx.rng(6);
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut chains = 0;
    for x in 0..g.order() {
        let a = g.cyclic_subgroup(x);
        if seen.contains(&a) {
            continue;
        }
        seen.push(a.clone());
        let a_bits = bits_of(g.order(), a.iter().copied());
        let over: Vec<&SubgroupSet> = cx
            .two_generated
            .iter()
            .filter(|h| h.len() > a.len() && a_bits.is_subset(h.bits()))
            .collect();
        let whole = SubgroupSet::whole(g);
        let b = over.choose(&mut rng).copied().unwrap_or(&whole);
        for &y in &a {
            let sol_a = solvabilizer_of_set(g, cx.an.cache(), &a, &[y])?;
            let sol_b = solvabilizer_of_set(g, cx.an.cache(), b.members(), &[y])?;
            let in_b = sol_a.iter().all(|z| sol_b.binary_search(z).is_ok());
            let in_g = sol_b.iter().all(|&z| cx.an.row(y).contains(z));
            if !(in_b && in_g) {
                return fail(json!({ "a-order": a.len(), "b-order": b.len(), "element": y }));
            }
        }
        chains += 1;
    }
    pass(json!({ "chains": chains }))
}

fn c07_divisibility(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let r = cx.an.radical().len();
    for x in 0..g.order() {
        let size = cx.an.row(x).count_ones(..);
        let c = g.centralizer(x).len();
        let o = g.element_order(x);
        if !size.is_multiple_of(r)
            || !size.is_multiple_of(o)
            || !size.is_multiple_of(c)
            || !cx.an.degree(x).is_multiple_of(c)
        {
            return fail(
                json!({ "element": x, "sol-size": size, "radical": r, "order": o, "centralizer": c }),
            );
        }
    }
    pass(json!({ "elements-checked": g.order(), "radical-order": r }))
}

fn c08_coprime_power(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let mut checked = 0;
    for class in &cx.an.classes().classes {
        let x = class[0];
        let o = g.element_order(x);
        let base = cx.an.direct_row(x);
        for (i, &y) in g.powers(x).iter().enumerate().skip(2) {
            if gcd(i as u64, o as u64) != 1 {
                continue;
            }
            if cx.an.direct_row(y) != base
                || cx.an.row(y) != cx.an.row(x)
                || cx.an.degree(y) != cx.an.degree(x)
            {
                return fail(json!({ "element": x, "exponent": i }));
            }
            checked += 1;
        }
    }
    pass(json!({ "powers-checked": checked }))
}

fn c09_absorption(cx: &Ctx) -> Result<Outcome> {
    let mut count = 0;
    for h in cx
        .two_generated
        .iter()
        .filter(|h| structure::is_solvable(cx.g(), h))
    {
        for &x in h.members() {
            if !h.bits().is_subset(cx.an.row(x)) {
                return fail(json!({ "subgroup-order": h.len(), "element": x }));
            }
        }
        count += 1;
    }
    pass(json!({ "solvable-two-generated-subgroups": count }))
}

fn c10_degree_bounds(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let n = cx.an.n_hat();
    let mut degrees = Vec::new();
    for x in cx.non_radical() {
        let d = cx.an.degree(x);
        let o = cx.g().element_order(x);
        if 2 * o > d || d <= 5 || d + 1 >= n || is_prime(d) {
            return fail(json!({ "element": x, "degree": d, "order": o, "n": n }));
        }
        degrees.push(d);
    }
    degrees.sort_unstable();
    degrees.dedup();
    pass(json!({ "n": n, "degrees": degrees }))
}

fn c11_s_group(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    if cx.an.is_group_solvable() {
        for x in 0..g.order() {
            let members: Vec<usize> = cx.an.row(x).ones().collect();
            if members.len() != g.order() || structure::closure(g, &members).len() != members.len() {
                return fail(json!({ "not-a-subgroup": x }));
            }
        }
        return pass(json!({ "every-solvabilizer-is-a-subgroup": true }));
    }
    for x in cx.non_radical() {
        let row = cx.an.row(x);
        for y in row.ones() {
            for z in row.ones() {
                let yz = g.mul(y, z);
                if !row.contains(yz) {
                    let fresh = cx.an.sol_pair(x, y) && cx.an.sol_pair(x, z) && !cx.an.sol_pair(x, yz);
                    if !fresh {
                        return fail(json!({ "inconsistent-triple": [x, y, z] }));
                    }
                    return pass(json!({
                        "x": x, "y": y, "z": z, "yz": yz,
                        "labels": [g.label(x), g.label(y), g.label(z), g.label(yz)],
                    }));
                }
            }
        }
    }
    fail(json!({ "reason": "every Sol_G(x) is closed in a non-solvable group" }))
}

fn c12_k44(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let graph = cx.an.graph(GraphMode::Induced);
    match graph.find_k44(cx.cfg.k44_budget) {
        Ok(Some(w)) if graph.is_k44(&w) => pass(json!({ "left": w.left, "right": w.right, "planar": false })),
        Ok(Some(w)) => fail(json!({ "invalid-witness": w })),
        Ok(None) => Err(Error::InvariantViolation(
            "no K_{4,4} in the induced graph".into(),
        )),
        Err(e) => Err(e),
    }
}

fn c13_irregular(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let r = cx.an.graph(GraphMode::Induced).is_regular();
    match r.witness {
        Some(w) if !r.regular => pass(json!({ "degrees": w })),
        _ => fail(json!({ "regular": true })),
    }
}

fn c14_not_tree(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let graph = cx.an.graph(GraphMode::Induced);
    let tree = graph.is_tree();
    let cycle = graph.odd_cycle();
    let cycle_ok = cycle.as_ref().is_some_and(|c| {
        c.len() % 2 == 1 && (0..c.len()).all(|i| graph.adjacent(c[i], c[(i + 1) % c.len()]))
    });
    let w = json!({
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "odd-cycle": cycle,
    });
    if !tree && cycle_ok {
        pass(w)
    } else {
        fail(w)
    }
}

fn c15_alpha(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let g = cx.g();
    let full = cx.an.graph(GraphMode::Full);
    let alpha = full.independence_number(cx.cfg.exact_independence);
    let max_order = g.max_element_order();
    if !full.is_independent(&alpha.set) || alpha.value < max_order || alpha.value < cx.an.radical().len() {
        return fail(json!({ "alpha": alpha, "max-order": max_order }));
    }
    for x in 0..g.order() {
        if !full.is_independent(&g.cyclic_subgroup(x)) {
            return fail(json!({ "cyclic-not-independent": x }));
        }
    }
    // an independent set A of the induced graph has A ∪ Sol(G) ⊆ Sol_G(x) for x in A
    let a: Vec<usize> = alpha
        .set
        .iter()
        .copied()
        .filter(|&x| !cx.an.radical().contains(x))
        .collect();
    let mut union = bits_of(g.order(), a.iter().copied());
    union.union_with(cx.an.radical().bits());
    if let Some(&x) = a.iter().find(|&&x| !union.is_subset(cx.an.row(x))) {
        return fail(json!({ "independent-set-not-absorbed": x }));
    }
    let induced = cx
        .an
        .graph(GraphMode::Induced)
        .independence_number(cx.cfg.exact_independence);
    pass(json!({
        "alpha-full": { "value": alpha.value, "kind": alpha.kind },
        "alpha-induced": { "value": induced.value, "kind": induced.kind },
        "max-order": max_order,
    }))
}

fn c16_embedding(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let g = cx.g();
    let big = cx.an.graph(GraphMode::Induced);
    let mut subgroups = Vec::new();
    for case in cx.subgroups()? {
        let small = case.analysis.graph(GraphMode::Induced);
        for (a, b) in small.edges() {
            let (x, y) = (case.embedding[a], case.embedding[b]);
            if !big.adjacent(x, y) {
                return fail(json!({ "subgroup-order": case.subgroup.len(), "edge": [x, y] }));
            }
        }
        subgroups.push(json!({ "order": case.subgroup.len(), "edges": small.edge_count() }));
    }
    let mut quotients = Vec::new();
    for case in cx.quotients()? {
        let q = &case.quotient;
        for x in cx.non_radical() {
            for y in cx.non_radical() {
                let upstairs = !cx.an.sol(x, y);
                let downstairs = !case.analysis.sol(q.coset_of[x], q.coset_of[y]);
                if upstairs != downstairs {
                    return fail(json!({ "normal-order": q.normal.len(), "pair": [x, y] }));
                }
            }
        }
        quotients.push(g.order() / q.normal.len());
    }
    pass(json!({ "subgroups": subgroups, "quotient-orders": quotients }))
}

fn c17_vertex_counts(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let n = cx.an.n_hat();
    let mut subgroup_counts = Vec::new();
    for case in cx.subgroups()? {
        let m = case.analysis.n_hat();
        if m == n {
            return fail(json!({ "subgroup-order": case.subgroup.len(), "vertices": m }));
        }
        subgroup_counts.push(m);
    }
    let mut quotient_counts = Vec::new();
    for case in cx.quotients()?.iter().filter(|c| !c.quotient.normal.is_trivial()) {
        let m = case.analysis.n_hat();
        if m == n {
            return fail(json!({ "normal-order": case.quotient.normal.len(), "vertices": m }));
        }
        quotient_counts.push(m);
    }
    pass(
        json!({ "n": n, "subgroup-vertex-counts": subgroup_counts, "quotient-vertex-counts": quotient_counts }),
    )
}

fn c18_normalizers(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    for x in 0..g.order() {
        let nrm = bits_of(g.order(), g.normalizer_of_cyclic(x));
        if !nrm.is_subset(cx.an.row(x)) {
            return fail(json!({ "element": x }));
        }
    }
    let mut local = 0;
    for h in cx
        .two_generated
        .iter()
        .filter(|h| !h.is_trivial() && structure::is_solvable(g, h))
    {
        let k = structure::normalizer(g, h);
        if let Some(&x) = h.members().iter().find(|&&x| !k.bits().is_subset(cx.an.row(x))) {
            return fail(json!({ "local-subgroup-order": k.len(), "element": x }));
        }
        local += 1;
    }
    pass(json!({ "cyclic-normalizers": g.order(), "local-subgroups": local }))
}

fn c19_dedekind(cx: &Ctx) -> Result<Outcome> {
    let g = cx.g();
    let non_normal = (0..g.order()).find(|&x| {
        let cyc = bits_of(g.order(), g.powers(x));
        !g.generator_indices()
            .iter()
            .all(|&h| cyc.contains(g.conjugate(h, x)))
    });
    match (non_normal, cx.an.is_group_solvable()) {
        (None, true) => pass(json!({ "all-cyclic-subgroups-normal": true })),
        (None, false) => fail(json!({ "all-cyclic-subgroups-normal": true, "solvable": false })),
        (Some(x), false) => pass(json!({ "non-normal-cyclic-generator": x, "label": g.label(x) })),
        (Some(_), true) => not_applicable("some cyclic subgroup is not normal"),
    }
}

fn c20_not_n_minus_2(cx: &Ctx) -> Result<Outcome> {
    if cx.an.is_group_solvable() {
        return not_applicable(SOLVABLE_NA);
    }
    let n = cx.an.n_hat();
    let mut max = 0;
    for x in cx.non_radical() {
        let d = cx.an.degree(x);
        if d + 2 == n || d + 3 > n {
            return fail(json!({ "element": x, "degree": d, "n": n }));
        }
        max = max.max(d);
    }
    pass(json!({ "n": n, "max-degree": max }))
}

fn c21_radical_isolated(cx: &Ctx) -> Result<Outcome> {
    let full = cx.an.graph(GraphMode::Full);
    for x in 0..cx.g().order() {
        let isolated = full.degree_of(x) == Some(0);
        if isolated != cx.an.radical().contains(x) {
            return fail(json!({ "element": x, "isolated": isolated }));
        }
    }
    pass(json!({ "radical-order": cx.an.radical().len() }))
}

fn run_one(cx: &Ctx, def: &CheckDef) -> CheckResult {
    let start = Instant::now();
    let (status, witness) = match (def.run)(cx) {
        Ok(outcome) => outcome,
        Err(Error::BudgetExceeded { budget }) => (
            CheckStatus::Skipped(format!("search budget of {budget} probes exhausted")),
            None,
        ),
        Err(e) => (CheckStatus::Fail, Some(json!({ "error": e.to_string() }))),
    };
    CheckResult {
        code: def.code,
        id: def.id,
        statement: def.statement,
        status,
        witness,
        elapsed: start.elapsed(),
        timed: cx.cfg.record_timing,
    }
}

fn find_check(id: &str) -> Result<&'static CheckDef> {
    CHECKS
        .iter()
        .find(|c| c.code.eq_ignore_ascii_case(id) || c.id == id || c.aliases.contains(&id))
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Runs every registered check on a finished analysis.
pub fn verify_analysis(an: &Analysis, name: &str, cfg: &VerifyConfig) -> VerificationReport {
    let cx = Ctx::new(an, cfg);
    let checks: Vec<CheckResult> = CHECKS.iter().map(|def| run_one(&cx, def)).collect();
    let mut summary = Summary {
        total: checks.len(),
        ..Summary::default()
    };
    for c in &checks {
        match c.status {
            CheckStatus::Pass => summary.pass += 1,
            CheckStatus::Fail => summary.fail += 1,
            CheckStatus::Skipped(_) => summary.skipped += 1,
            CheckStatus::NotApplicable(_) => summary.not_applicable += 1,
        }
    }
    VerificationReport {
        schema_version: crate::SCHEMA_VERSION,
        engine_version: crate::ENGINE_VERSION,
        group: GroupDescriptor::new(name, an.group()),
        params: cfg.clone(),
        checks,
        summary,
    }
}

/// Analyzes `group` and runs every registered check. Only a failure of the
/// analysis itself is an error; failing checks are recorded in the report.
pub fn verify_all(group: FiniteGroup, name: &str, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let an = Analysis::new(group, cfg.engine.clone())?;
    Ok(verify_analysis(&an, name, cfg))
}

/// Runs one check, addressed by code (`C20`), id (`deg-not-n-minus-2`) or alias.
pub fn verify_check(an: &Analysis, id: &str, cfg: &VerifyConfig) -> Result<CheckResult> {
    let def = find_check(id)?;
    Ok(run_one(&Ctx::new(an, cfg), def))
}
