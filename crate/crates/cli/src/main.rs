mod args;
mod cache;
mod spec;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use solvgraph_core::catalog::CATALOG;
use solvgraph_core::graph::{ExportFormat, Independence, K44Witness};
use solvgraph_core::solvabilizer::Provenance;
use solvgraph_core::verify::{verify_analysis, GroupDescriptor};
use solvgraph_core::{
    verify_check, Analysis, CheckStatus, Error, GraphMode, OrdSolProfile, ENGINE_VERSION, SCHEMA_VERSION,
};

use args::{Cli, Command, Format, Options};
use spec::GroupSpec;

const EXIT_FAIL: u8 = 1;
const EXIT_ENGINE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_GUARD: u8 = 4;
const EXIT_IO: u8 = 5;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("cached report {0} differs from a fresh computation")]
    StaleCache(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::UnknownCheck(_)) => EXIT_USAGE,
            CliError::StaleCache(_) => EXIT_ENGINE,
            CliError::Core(e) => match e {
                Error::Parse(_)
                | Error::PointOutOfRange { .. }
                | Error::RepeatedPoint(_)
                | Error::DegreeMismatch { .. } => EXIT_PARSE,
                Error::GuardExceeded { .. } => EXIT_GUARD,
                Error::Io(_) => EXIT_IO,
                _ => EXIT_ENGINE,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("solvgraph: cannot size thread pool: {e}");
            return ExitCode::from(EXIT_ENGINE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("solvgraph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Analyze { spec } => analyze(spec, opts),
        Command::Verify { spec, check } => verify(spec, check.as_deref(), opts),
        Command::Graph { spec, mode } => graph(spec, (*mode).into(), opts),
        Command::Ordsol { spec } => ordsol(spec, opts),
        Command::Compare { left, right } => compare(left, right, opts),
        Command::Catalog => catalog(opts),
    }
}

fn with_path(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::from(std::io::Error::new(
        e.kind(),
        format!("cannot write {}: {e}", path.display()),
    ))
}

fn emit(opts: &Options, text: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| with_path(path, e))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn text_or_json(opts: &Options, what: &str) -> Result<bool, CliError> {
    match opts.format {
        None | Some(Format::Json) => Ok(false),
        Some(Format::Text) => Ok(true),
        Some(f) => Err(CliError::Usage(format!(
            "--format {f:?} is only valid for `graph`, not `{what}`"
        ))),
    }
}

fn load(spec: &str, opts: &Options) -> Result<(String, Analysis), CliError> {
    let GroupSpec { name, group } = GroupSpec::resolve(spec, opts.guard)?;
    Ok((name, Analysis::new(group, opts.engine())?))
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct ClassRow {
    leader: usize,
    label: String,
    size: usize,
    element_order: usize,
    centralizer_size: usize,
    sol_size: usize,
    degree: usize,
    cosets: usize,
    provenance: Provenance,
}

#[derive(Serialize, Default)]
#[serde(rename_all = "kebab-case")]
struct GraphInvariants {
    vertices: usize,
    edges: usize,
    diameter: Option<usize>,
    regular: Option<bool>,
    tree: Option<bool>,
    odd_cycle: Option<Vec<usize>>,
    k44: Option<K44Witness>,
    planar: Option<bool>,
    k44_status: String,
    independence_full: Option<Independence>,
    independence_induced: Option<Independence>,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct AnalyzeReport {
    schema_version: u32,
    engine_version: &'static str,
    group: GroupDescriptor,
    params: Value,
    solvable: bool,
    radical: Vec<String>,
    classes: Vec<ClassRow>,
    ord_sol: BTreeMap<usize, usize>,
    degree_sequence: Vec<usize>,
    invariants: GraphInvariants,
}

fn analyze_report(name: &str, an: &Analysis, opts: &Options) -> Result<AnalyzeReport, CliError> {
    let g = an.group();
    let mut classes = Vec::new();
    for class in &an.classes().classes {
        let x = class[0];
        let sol = an.solvabilizer(x)?;
        classes.push(ClassRow {
            leader: x,
            label: g.label(x),
            size: class.len(),
            element_order: g.element_order(x),
            centralizer_size: g.order() / class.len(),
            sol_size: sol.members_count,
            degree: sol.degree,
            cosets: sol.cosets.len(),
            provenance: an.provenance(x),
        });
    }
    let induced = an.graph(GraphMode::Induced);
    let mut inv = GraphInvariants {
        vertices: induced.vertex_count(),
        edges: induced.edge_count(),
        ..GraphInvariants::default()
    };
    if an.is_group_solvable() {
        inv.k44_status = "not-applicable: the graph has no edges".into();
    } else {
        inv.diameter = Some(induced.diameter()?.diameter);
        inv.regular = Some(induced.is_regular().regular);
        inv.tree = Some(induced.is_tree());
        inv.odd_cycle = induced.odd_cycle();
        match induced.find_k44(opts.k44_budget) {
            Ok(Some(w)) => {
                inv.k44 = Some(w);
                inv.planar = Some(false);
                inv.k44_status = "found".into();
            }
            Ok(None) => inv.k44_status = "absent".into(),
            Err(Error::BudgetExceeded { budget }) => {
                inv.k44_status = format!("budget of {budget} probes exhausted")
            }
            Err(e) => return Err(e.into()),
        }
        inv.independence_full = Some(
            an.graph(GraphMode::Full)
                .independence_number(opts.exact_independence),
        );
        inv.independence_induced = Some(induced.independence_number(opts.exact_independence));
    }
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION,
        group: GroupDescriptor::new(name, g),
        params: json!({
            "engine": an.config(),
            "exact-independence": opts.exact_independence,
            "k44-budget": opts.k44_budget,
        }),
        solvable: an.is_group_solvable(),
        radical: an.radical().members().iter().map(|&x| g.label(x)).collect(),
        classes,
        ord_sol: an.ord_sol().counts,
        degree_sequence: induced.degree_sequence(),
        invariants: inv,
    })
}

fn analyze_text(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "group {} (degree {}, order {})",
        r.group.name, r.group.degree, r.group.order
    );
    let _ = writeln!(s, "solvable: {}", r.solvable);
    let _ = writeln!(s, "radical: order {}", r.radical.len());
    let _ = writeln!(
        s,
        "{:>6} {:>5} {:>5} {:>6} {:>6}  leader",
        "class", "o(x)", "|C|", "|Sol|", "deg"
    );
    for c in &r.classes {
        let _ = writeln!(
            s,
            "{:>6} {:>5} {:>5} {:>6} {:>6}  {}",
            c.size, c.element_order, c.centralizer_size, c.sol_size, c.degree, c.label
        );
    }
    let i = &r.invariants;
    let _ = writeln!(s, "induced graph: {} vertices, {} edges", i.vertices, i.edges);
    if let Some(d) = i.diameter {
        let _ = writeln!(s, "diameter: {d}");
    }
    let _ = writeln!(s, "K44: {}", i.k44_status);
    for (mode, ind) in [
        ("full", &i.independence_full),
        ("induced", &i.independence_induced),
    ] {
        if let Some(ind) = ind {
            let _ = writeln!(
                s,
                "alpha ({mode}): {} ({})",
                ind.value,
                format!("{:?}", ind.kind).to_lowercase()
            );
        }
    }
    s
}

fn analyze(spec: &str, opts: &Options) -> Result<u8, CliError> {
    let text_mode = text_or_json(opts, "analyze")?;
    let GroupSpec { name, group } = GroupSpec::resolve(spec, opts.guard)?;
    let key = cache::key(&group, opts);
    let cached = opts.cache.as_deref().and_then(|dir| cache::load(dir, &key));
    if let (Some(json), false, false) = (&cached, opts.check_cache, text_mode) {
        emit(opts, json)?;
        return Ok(0);
    }
    let an = Analysis::new(group, opts.engine())?;
    let report = analyze_report(&name, &an, opts)?;
    let json = to_json(&report)?;
    if let Some(dir) = opts.cache.as_deref() {
        match &cached {
            Some(old) if old != &json => {
                return Err(CliError::StaleCache(cache::path(dir, &key).display().to_string()))
            }
            Some(_) => {}
            None => cache::store(dir, &key, &json)?,
        }
    }
    emit(opts, &if text_mode { analyze_text(&report) } else { json })?;
    Ok(0)
}

fn verify(spec: &str, check: Option<&str>, opts: &Options) -> Result<u8, CliError> {
    let text_mode = text_or_json(opts, "verify")?;
    let (name, an) = load(spec, opts)?;
    let cfg = opts.verify_config();
    let report = match check {
        Some(id) => {
            let c = verify_check(&an, id, &cfg)?;
            let failed = c.status == CheckStatus::Fail;
            let doc = json!({
                "schema-version": SCHEMA_VERSION,
                "engine-version": ENGINE_VERSION,
                "group": GroupDescriptor::new(&name, an.group()),
                "params": cfg,
                "checks": [c],
            });
            emit(opts, &to_json(&doc)?)?;
            return Ok(if failed { EXIT_FAIL } else { 0 });
        }
        None => verify_analysis(&an, &name, &cfg),
    };
    let out = if text_mode {
        let mut s = String::new();
        for c in &report.checks {
            let _ = writeln!(s, "{} {:<30} {}", c.code, c.id, c.status.as_str());
        }
        let m = &report.summary;
        let _ = writeln!(
            s,
            "{}: {} pass, {} fail, {} skipped, {} not applicable",
            report.group.name, m.pass, m.fail, m.skipped, m.not_applicable
        );
        s
    } else {
        to_json(&report)?
    };
    emit(opts, &out)?;
    Ok(if report.any_fail() { EXIT_FAIL } else { 0 })
}

fn graph(spec: &str, mode: GraphMode, opts: &Options) -> Result<u8, CliError> {
    let format = match opts.format {
        None | Some(Format::Dot) => ExportFormat::Dot,
        Some(Format::Graphml) => ExportFormat::GraphMl,
        Some(Format::Json) => ExportFormat::Json,
        Some(Format::Text) => return Err(CliError::Usage("`graph` supports dot, graphml and json".into())),
    };
    let (_, an) = load(spec, opts)?;
    let g = an.graph(mode);
    match &opts.out {
        Some(path) => g.export(format, path).map_err(|e| match e {
            Error::Io(io) => with_path(path, io),
            other => other.into(),
        })?,
        None => print!("{}", g.render(format)?),
    }
    Ok(0)
}

fn profile_doc(name: &str, an: &Analysis) -> Value {
    let profile = an.ord_sol();
    json!({
        "group": GroupDescriptor::new(name, an.group()),
        "values": profile.values(),
        "profile": profile.counts,
    })
}

fn profile_text(p: &OrdSolProfile) -> String {
    p.counts
        .iter()
        .map(|(v, c)| format!("{v}^{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn ordsol(spec: &str, opts: &Options) -> Result<u8, CliError> {
    let text_mode = text_or_json(opts, "ordsol")?;
    let (name, an) = load(spec, opts)?;
    let out = if text_mode {
        format!("{name}: {}\n", profile_text(&an.ord_sol()))
    } else {
        let mut doc = profile_doc(&name, &an);
        doc["schema-version"] = json!(SCHEMA_VERSION);
        to_json(&doc)?
    };
    emit(opts, &out)?;
    Ok(0)
}

const COMPARE_NOTE: &str =
    "coinciding solvabilizer sizes are reported as data only; they do not decide whether the groups are isomorphic";

fn compare(left: &str, right: &str, opts: &Options) -> Result<u8, CliError> {
    let text_mode = text_or_json(opts, "compare")?;
    let (ln, la) = load(left, opts)?;
    let (rn, ra) = load(right, opts)?;
    let (lp, rp) = (la.ord_sol(), ra.ord_sol());
    let values_equal = lp.values() == rp.values();
    let profiles_equal = lp == rp;
    let out = if text_mode {
        format!(
            "{ln}: {}\n{rn}: {}\nsame Ord(Sol) values: {values_equal}\nsame multiplicities: {profiles_equal}\nnote: {COMPARE_NOTE}\n",
            profile_text(&lp),
            profile_text(&rp)
        )
    } else {
        to_json(&json!({
            "schema-version": SCHEMA_VERSION,
            "left": profile_doc(&ln, &la),
            "right": profile_doc(&rn, &ra),
            "values-equal": values_equal,
            "profiles-equal": profiles_equal,
            "same-order": la.group().order() == ra.group().order(),
            "note": COMPARE_NOTE,
        }))?
    };
    emit(opts, &out)?;
    Ok(0)
}

fn catalog(opts: &Options) -> Result<u8, CliError> {
    let out = if text_or_json(opts, "catalog")? {
        let mut s = String::new();
        for e in CATALOG {
            let _ = writeln!(
                s,
                "{:<8} order {:>4}  degree {:>2}  {}",
                e.name, e.order, e.degree, e.description
            );
        }
        s
    } else {
        let entries: Vec<Value> = CATALOG
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "description": e.description,
                    "degree": e.degree,
                    "order": e.order,
                    "generators": e.generators,
                })
            })
            .collect();
        to_json(&json!({ "schema-version": SCHEMA_VERSION, "groups": entries }))?
    };
    emit(opts, &out)?;
    Ok(0)
}
