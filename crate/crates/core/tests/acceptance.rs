//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criteria 1 and 5 compare the engine against a naive oracle defined
//! below: plain permutation vectors, closure by breadth-first search,
//! derived series from all commutator pairs, no caching and no use of
//! conjugacy.

use std::collections::{HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use solvgraph_core::catalog::{self, CATALOG};
use solvgraph_core::graph::IndependenceKind;
use solvgraph_core::{
    verify_all, Analysis, CheckStatus, EngineConfig, FiniteGroup, GraphMode, VerifyConfig, DEFAULT_GUARD,
};

type Perm = Vec<u8>;
type Criterion = fn() -> Result<String, String>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j as usize] = i as u8;
    }
    r
}

fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id: Perm = (0..degree as u8).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out
}

fn derived(degree: usize, h: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut current: HashSet<Perm> = closure(degree, &gens).into_iter().collect();
    for a in h {
        for b in h {
            let c = compose(&compose(&invert(a), &invert(b)), &compose(a, b));
            if !current.contains(&c) {
                gens.push(c);
                current = closure(degree, &gens).into_iter().collect();
                if current.len() == h.len() {
                    return current.into_iter().collect();
                }
            }
        }
    }
    current.into_iter().collect()
}

fn oracle_solvable(degree: usize, gens: &[Perm]) -> bool {
    let mut h = closure(degree, gens);
    loop {
        if h.len() == 1 {
            return true;
        }
        let d = derived(degree, &h);
        if d.len() == h.len() {
            return false;
        }
        h = d;
    }
}

fn perms_of(g: &FiniteGroup) -> Vec<Perm> {
    g.elements()
        .iter()
        .map(|p| p.images().iter().map(|&i| i as u8).collect())
        .collect()
}

/// Sol_G(x) for every x by the naive double loop, rows in element-index order.
fn oracle_rows(g: &FiniteGroup) -> Vec<Vec<bool>> {
    let perms = perms_of(g);
    let n = perms.len();
    let degree = g.degree();
    let threads = std::thread::available_parallelism().map_or(4, |p| p.get());
    let chunk = n.div_ceil(threads).max(1);
    let xs: Vec<usize> = (0..n).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|part| {
                let perms = &perms;
                s.spawn(move || {
                    part.iter()
                        .map(|&x| {
                            (0..n)
                                .map(|y| oracle_solvable(degree, &[perms[x].clone(), perms[y].clone()]))
                                .collect::<Vec<bool>>()
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn rows_match(an: &Analysis, oracle: &[Vec<bool>]) -> Result<(), String> {
    let results = an.all_solvabilizers().map_err(|e| e.to_string())?;
    for (x, want) in oracle.iter().enumerate() {
        let row = an.row(x);
        for (y, &s) in want.iter().enumerate() {
            if row.contains(y) != s {
                return Err(format!(
                    "element {x}, partner {y}: engine {} oracle {s}",
                    row.contains(y)
                ));
            }
        }
        let members: Vec<usize> = (0..want.len()).filter(|&y| want[y]).collect();
        if results[x].members != members || results[x].members_count != members.len() {
            return Err(format!("all_solvabilizers entry {x} differs"));
        }
    }
    Ok(())
}

fn group(name: &str) -> FiniteGroup {
    catalog::lookup(name)
        .unwrap_or_else(|| panic!("{name} missing from catalog"))
        .group(DEFAULT_GUARD)
        .unwrap()
}

fn analysis(name: &str) -> Analysis {
    Analysis::new(group(name), EngineConfig::default()).unwrap()
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const NON_SOLVABLE: &[&str] = &["A5", "S5", "SL25", "PSL27", "A5xC2"];
const SOLVABLE: &[&str] = &["S3", "D10", "A4", "S4", "Q8", "C6"];

fn a5_ground_truth() -> Result<String, String> {
    let start = Instant::now();
    let an = analysis("A5");
    let g = an.group();
    ensure(g.order() == 60, || format!("|G| = {}", g.order()))?;
    ensure(an.radical().len() == 1, || {
        format!("|R| = {}", an.radical().len())
    })?;
    ensure(an.n_hat() == 59, || format!("n = {}", an.n_hat()))?;
    ensure(an.graph(GraphMode::Induced).vertex_count() == 59, || {
        "induced graph size".into()
    })?;
    let oracle = oracle_rows(g);
    rows_match(&an, &oracle)?;
    let mut involution = None;
    for (x, row) in oracle.iter().enumerate().skip(1) {
        let size = row.iter().filter(|&&s| s).count();
        let expected = match g.element_order(x) {
            5 => Some(10),
            3 => Some(24),
            _ => None,
        };
        if let Some(e) = expected {
            ensure(size == e && an.degree(x) == 60 - e, || {
                format!("element {x}: |Sol| {size}")
            })?;
        } else {
            ensure(*involution.get_or_insert(size) == size, || {
                "involution sizes differ".into()
            })?;
            ensure(an.degree(x) == 60 - size, || format!("element {x}: degree"))?;
        }
    }
    let report = verify_all(group("A5"), "A5", &VerifyConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.summary.pass == report.summary.total, || {
        format!("A5 battery {:?}", report.summary)
    })?;
    within(start.elapsed(), Duration::from_secs(10), "A5 suite")?;
    let inv = involution.unwrap_or(0);
    Ok(format!(
        "|Sol| = 10/24/{inv}, deg = 50/36/{}, battery 21/21, {:.2?}",
        60 - inv,
        start.elapsed()
    ))
}

fn sl25_radical_and_quotient() -> Result<String, String> {
    let start = Instant::now();
    let an = analysis("SL25");
    ensure(an.radical().len() == 2, || {
        format!("|R| = {}", an.radical().len())
    })?;
    for x in 0..an.group().order() {
        let size = an.row(x).count_ones(..);
        ensure(size.is_multiple_of(2), || format!("|Sol(x{x})| = {size}"))?;
    }
    let cfg = VerifyConfig::default();
    let c04 = solvgraph_core::verify_check(&an, "C04", &cfg).map_err(|e| e.to_string())?;
    ensure(c04.status == CheckStatus::Pass, || {
        format!("C04 {:?} {:?}", c04.status, c04.witness)
    })?;
    let orders = c04
        .witness
        .as_ref()
        .and_then(|w| w.get("normal-subgroup-orders"))
        .cloned();
    ensure(
        orders
            .as_ref()
            .and_then(|o| o.as_array())
            .is_some_and(|o| o.iter().any(|v| v == 2)),
        || format!("quotient by the centre not covered: {orders:?}"),
    )?;
    within(start.elapsed(), Duration::from_secs(60), "SL(2,5) suite")?;
    Ok(format!(
        "|R| = 2, all |Sol| even, C04 pass on quotients by {}, {:.2?}",
        orders.unwrap(),
        start.elapsed()
    ))
}

fn non_solvable_battery() -> Result<String, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for &name in NON_SOLVABLE {
        let g = group(name);
        let involutions = (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
        let report = verify_all(g, name, &VerifyConfig::default()).map_err(|e| e.to_string())?;
        for c in &report.checks {
            let ok = match &c.status {
                CheckStatus::Pass => true,
                // vacuous only when the group has fewer than two involutions
                CheckStatus::NotApplicable(_) => c.code == "C03" && involutions < 2,
                _ => false,
            };
            ensure(ok, || format!("{name} {} {:?} {:?}", c.id, c.status, c.witness))?;
        }
        ensure(
            report
                .check("C11")
                .and_then(|c| c.witness.as_ref())
                .is_some_and(|w| w.get("yz").is_some()),
            || format!("{name}: no S-group witness triple"),
        )?;
        notes.push(format!("{name} {}/{}", report.summary.pass, report.summary.total));
    }
    within(start.elapsed(), Duration::from_secs(600), "non-solvable battery")?;
    Ok(format!(
        "{} (SL25 has one involution: C03 n/a), {:.2?}",
        notes.join(", "),
        start.elapsed()
    ))
}

fn solvable_groups() -> Result<String, String> {
    let mut notes = Vec::new();
    for &name in SOLVABLE {
        let start = Instant::now();
        let an = analysis(name);
        let g = an.group();
        let n = g.order();
        ensure(an.graph(GraphMode::Full).edge_count() == 0, || {
            format!("{name}: edges present")
        })?;
        ensure(an.radical().len() == n, || {
            format!("{name}: radical {}", an.radical().len())
        })?;
        for x in 0..n {
            let members: Vec<usize> = an.row(x).ones().collect();
            ensure(members.len() == n, || format!("{name}: Sol(x{x}) != G"))?;
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| an.row(x).contains(g.mul(a, b))));
            ensure(closed, || format!("{name}: Sol(x{x}) not closed"))?;
        }
        let report = solvgraph_core::verify::verify_analysis(&an, name, &VerifyConfig::default());
        ensure(
            report.check("C11").is_some_and(|c| c.status == CheckStatus::Pass),
            || format!("{name}: S-group check"),
        )?;
        ensure(!report.any_fail(), || format!("{name}: {:?}", report.summary))?;
        within(start.elapsed(), Duration::from_secs(1), name)?;
        notes.push(format!("{name} {:.0?}", start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn oracle_equivalence() -> Result<String, String> {
    let start = Instant::now();
    let mut count = 0;
    for entry in CATALOG.iter().filter(|e| e.order <= 200) {
        let an = analysis(entry.name);
        let oracle = oracle_rows(an.group());
        rows_match(&an, &oracle).map_err(|e| format!("{}: {e}", entry.name))?;
        count += 1;
    }
    Ok(format!(
        "{count} catalog groups match elementwise, {:.2?}",
        start.elapsed()
    ))
}

fn determinism() -> Result<String, String> {
    let mut sizes = Vec::new();
    for name in ["A5", "SL25"] {
        let cfg = VerifyConfig::default();
        let a = verify_all(group(name), name, &cfg)
            .and_then(|r| r.to_json())
            .map_err(|e| e.to_string())?;
        let b = verify_all(group(name), name, &cfg)
            .and_then(|r| r.to_json())
            .map_err(|e| e.to_string())?;
        ensure(a.as_bytes() == b.as_bytes(), || format!("{name}: reports differ"))?;
        sizes.push(format!("{name} {} bytes", a.len()));
    }
    Ok(format!("byte-identical reports ({})", sizes.join(", ")))
}

fn alpha_bound() -> Result<String, String> {
    let an = analysis("A5");
    let g = an.group();
    let alpha = an.graph(GraphMode::Full).independence_number(150);
    ensure(alpha.kind == IndependenceKind::Exact, || {
        "independence not exact".into()
    })?;
    ensure(alpha.value >= g.max_element_order() && alpha.value >= 5, || {
        format!("alpha = {}", alpha.value)
    })?;
    ensure(alpha.set.len() == alpha.value, || {
        "set size differs from value".into()
    })?;
    let perms = perms_of(g);
    for (i, &x) in alpha.set.iter().enumerate() {
        for &y in &alpha.set[i + 1..] {
            ensure(
                oracle_solvable(g.degree(), &[perms[x].clone(), perms[y].clone()]),
                || format!("{x} and {y} are adjacent"),
            )?;
        }
    }
    Ok(format!(
        "alpha = {} (exact) >= max o(x) = {}, set verified by oracle",
        alpha.value,
        g.max_element_order()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("A5 ground truth", a5_ground_truth),
        ("SL(2,5) radical and quotient", sl25_radical_and_quotient),
        ("non-solvable battery", non_solvable_battery),
        ("solvable groups", solvable_groups),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
        ("alpha bound", alpha_bound),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
