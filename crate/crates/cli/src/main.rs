use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use marked_polytopes::corpus::{agreement_suites, generate, CorpusParams};
use marked_polytopes::ehrhart::{ehrhart_by_counting, ehrhart_formula_marked_order};
use marked_polytopes::marked::{build_chain_hrep, build_chain_order_hrep, build_order_hrep};
use marked_polytopes::polytope::{enumerate_vertices, irredundant, parse_rational};
use marked_polytopes::two_level::{
    chain_order_two_level_criterion, chain_two_level_criterion, is_two_level_direct, order_two_level_criterion,
};
use marked_polytopes::{
    fixtures, limits, ChainOrderPartition, Error, HRepresentation, MarkedPoset, Poset, Rational, UnivariatePolynomial,
    VRepresentation,
};

/// Marked order, chain and chain-order polytopes of marked posets.
#[derive(Parser)]
#[command(name = "mpp", version)]
struct Cli {
    /// Override every enumeration work cap.
    #[arg(long, env = "MPP_WORK_CAP", global = true)]
    work_cap: Option<u64>,

    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check strictness and regularity of the marking.
    Validate(Input),
    /// Print the H-representation, vertices or facets of a polytope.
    Polytope {
        #[command(flatten)]
        input: Input,
        /// Read a raw H-representation instead of a marked poset.
        #[arg(long, conflicts_with_all = ["file", "builtin"])]
        hrep: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Family::Order)]
        family: Family,
        #[arg(long, value_enum, default_value_t = Emit::Hrep)]
        emit: Emit,
    },
    /// Decide 2-levelness geometrically, combinatorially or both.
    TwoLevel {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Family::Order)]
        family: Family,
        #[arg(long, value_enum, default_value_t = TwoLevelMethod::Both)]
        method: TwoLevelMethod,
    },
    /// Ehrhart polynomial by lattice-point counting and/or the extension sum.
    Ehrhart {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Family::Order)]
        family: Family,
        #[arg(long, value_enum, default_value_t = EhrhartMethod::Both)]
        method: EhrhartMethod,
    },
    /// Run the agreement suites on random strict regular marked posets.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        max_unmarked: usize,
        /// Largest poset (by unmarked elements) whose C/O splits are all checked.
        #[arg(long, default_value_t = 4)]
        max_chain_order: usize,
    },
}

#[derive(Args)]
struct Input {
    /// Marked poset document (JSON).
    file: Option<PathBuf>,
    /// Built-in poset: figure1, trapezoid, diamond:lo,hi, segment:lo,hi, pm:m,c.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Order,
    Chain,
    ChainOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Hrep,
    Vertices,
    Facets,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwoLevelMethod {
    Direct,
    Criterion,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EhrhartMethod {
    Formula,
    Count,
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDocument {
    #[serde(default)]
    name: String,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
    marked: BTreeMap<String, MarkValue>,
    partition: Option<PartitionDocument>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionDocument {
    chain: Vec<String>,
    order: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MarkValue {
    Int(i64),
    Text(String),
}

enum Failure {
    /// Exit 2: bad invocation or unreadable input.
    Usage(String),
    /// Exit 1: the computation failed or a check did not hold.
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

struct Loaded {
    name: String,
    mp: MarkedPoset,
    partition: Option<ChainOrderPartition>,
}

fn load(input: &Input) -> CliResult<Loaded> {
    if let Some(b) = &input.builtin {
        let mp = fixtures::builtin(b).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(Loaded { name: b.clone(), mp, partition: None });
    }
    let Some(path) = &input.file else {
        return Err(Failure::Usage("give a poset file or --builtin".into()));
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc: PosetDocument =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let invalid = |e: Error| Failure::Usage(format!("{}: {e}", path.display()));
    let poset = Poset::new(&doc.elements, &doc.covers).map_err(invalid)?;
    let marks = doc
        .marked
        .iter()
        .map(|(id, v)| {
            let value = match v {
                MarkValue::Int(i) => Rational::from_integer((*i).into()),
                MarkValue::Text(s) => parse_rational(s)?,
            };
            Ok((id.clone(), value))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(invalid)?;
    let mp = MarkedPoset::new(poset, &marks).map_err(invalid)?;
    let partition = doc
        .partition
        .map(|p| ChainOrderPartition::new(&mp, &p.chain, &p.order))
        .transpose()
        .map_err(invalid)?;
    let name = if doc.name.is_empty() { path.display().to_string() } else { doc.name };
    Ok(Loaded { name, mp, partition })
}

fn family_hrep(loaded: &Loaded, family: Family) -> CliResult<HRepresentation> {
    Ok(match family {
        Family::Order => build_order_hrep(&loaded.mp)?,
        Family::Chain => build_chain_hrep(&loaded.mp)?,
        Family::ChainOrder => {
            let part = loaded
                .partition
                .as_ref()
                .ok_or_else(|| Failure::Usage("chain-order needs a `partition` in the document".into()))?;
            build_chain_order_hrep(&loaded.mp, part)?
        }
    })
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Order => "order",
        Family::Chain => "chain",
        Family::ChainOrder => "chain-order",
    }
}

struct Report {
    text: String,
    result: Value,
    ok: bool,
}

fn rows_json(h: &HRepresentation) -> Value {
    let canon = h.canonical();
    let row = |c: &marked_polytopes::LinearInequality| {
        json!({
            "coeffs": c.coeffs().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "rhs": c.rhs().to_string(),
        })
    };
    json!({
        "coordinates": h.coordinates(),
        "inequalities": canon.inequalities().iter().map(row).collect::<Vec<_>>(),
        "equalities": canon.equalities().iter().map(row).collect::<Vec<_>>(),
    })
}

fn vertices_json(v: &VRepresentation) -> Value {
    v.vertices()
        .iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect()
}

fn poly_json(p: &UnivariatePolynomial) -> Value {
    json!(p.coefficient_strings())
}

fn cmd_validate(loaded: &Loaded) -> Report {
    let r = loaded.mp.validate();
    let mut text = format!("strict: {}\nregular: {}\n", r.strict, r.regular);
    if r.violations.is_empty() {
        text.push_str("violations: none\n");
    } else {
        text.push_str("violations:\n");
        for v in &r.violations {
            let _ = writeln!(text, "  {v}");
        }
    }
    Report {
        text,
        result: json!({
            "strict": r.strict,
            "regular": r.regular,
            "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
        ok: r.strict && r.regular,
    }
}

fn cmd_polytope(h: &HRepresentation, emit: Emit) -> CliResult<Report> {
    Ok(match emit {
        Emit::Hrep => Report { text: h.to_string(), result: rows_json(h), ok: true },
        Emit::Facets => {
            let f = irredundant(h)?;
            Report { text: f.to_string(), result: rows_json(&f), ok: true }
        }
        Emit::Vertices => {
            let v = enumerate_vertices(h)?;
            Report { text: v.to_string(), result: vertices_json(&v), ok: true }
        }
    })
}

fn criterion(loaded: &Loaded, family: Family) -> CliResult<bool> {
    Ok(match family {
        Family::Order => order_two_level_criterion(&loaded.mp)?,
        Family::Chain => chain_two_level_criterion(&loaded.mp)?.two_level,
        Family::ChainOrder => {
            let part = loaded
                .partition
                .as_ref()
                .ok_or_else(|| Failure::Usage("chain-order needs a `partition` in the document".into()))?;
            chain_order_two_level_criterion(&loaded.mp, part)?
        }
    })
}

fn cmd_two_level(loaded: &Loaded, family: Family, method: TwoLevelMethod) -> CliResult<Report> {
    let h = family_hrep(loaded, family)?;
    let mut text = String::new();
    let mut result = json!({ "family": family_name(family) });
    let mut direct = None;
    let mut crit = None;
    if method != TwoLevelMethod::Criterion {
        let d = is_two_level_direct(&h)?;
        let _ = writeln!(text, "direct: {}", d.two_level);
        if let Some(w) = &d.witness {
            let values: Vec<String> = w.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                text,
                "witness: {} takes values {{{}}}",
                HRepresentation::format_row(&w.facet, "<="),
                values.join(", ")
            );
            result["witness"] = json!({ "facet": HRepresentation::format_row(&w.facet, "<="), "values": values });
        }
        result["direct"] = json!(d.two_level);
        direct = Some(d.two_level);
    }
    if method != TwoLevelMethod::Direct {
        let c = criterion(loaded, family)?;
        let _ = writeln!(text, "criterion: {c}");
        result["criterion"] = json!(c);
        crit = Some(c);
    }
    let ok = match (direct, crit) {
        (Some(d), Some(c)) => {
            let agree = d == c;
            text.push_str(if agree { "AGREE\n" } else { "DISAGREE\n" });
            result["agree"] = json!(agree);
            agree
        }
        _ => true,
    };
    Ok(Report { text, result, ok })
}

fn cmd_ehrhart(loaded: &Loaded, family: Family, method: EhrhartMethod) -> CliResult<Report> {
    let mut text = String::new();
    let mut result = json!({ "family": family_name(family) });
    let mut counted = None;
    let mut formula = None;
    if method != EhrhartMethod::Formula {
        let h = family_hrep(loaded, family)?;
        let p = ehrhart_by_counting(&h)?;
        let _ = writeln!(text, "count: {p}");
        result["count"] = poly_json(&p);
        counted = Some(p);
    }
    if method != EhrhartMethod::Count {
        if !matches!(family, Family::Order) {
            text.push_str("note: formula evaluated on the marked order polytope, which has the same Ehrhart polynomial\n");
        }
        let p = ehrhart_formula_marked_order(&loaded.mp)?;
        let _ = writeln!(text, "formula: {p}");
        result["formula"] = poly_json(&p);
        formula = Some(p);
    }
    let poly = formula.as_ref().or(counted.as_ref()).expect("some method ran");
    let _ = writeln!(text, "Ehr(n) = {}", poly.to_expression());
    let ok = match (&counted, &formula) {
        (Some(c), Some(f)) => {
            let matched = c == f;
            text.push_str(if matched { "MATCH\n" } else { "MISMATCH\n" });
            result["match"] = json!(matched);
            matched
        }
        _ => true,
    };
    Ok(Report { text, result, ok })
}

fn cmd_corpus(seed: u64, trials: usize, max_unmarked: usize, max_chain_order: usize) -> CliResult<Report> {
    if max_unmarked == 0 {
        return Err(Failure::Usage("--max-unmarked must be at least 1".into()));
    }
    let params = CorpusParams { max_unmarked, ..CorpusParams::default() };
    let corpus = generate(seed, trials, &params)?;
    let mut per_suite: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut passed = 0;
    let mut failures = Vec::new();
    for (i, mp) in corpus.iter().enumerate() {
        let outcomes = agreement_suites(mp, max_chain_order)?;
        let mut all = true;
        for o in &outcomes {
            let e = per_suite.entry(o.suite).or_default();
            e.1 += 1;
            if o.passed {
                e.0 += 1;
            } else {
                all = false;
                failures.push(format!("trial {i}: {} ({})", o.suite, o.detail));
            }
        }
        passed += usize::from(all);
    }
    let mut text = format!("seed: {seed}\nmax unmarked: {max_unmarked}\n");
    for (suite, (ok, total)) in &per_suite {
        let _ = writeln!(text, "{suite}: {ok}/{total} pass");
    }
    for f in &failures {
        let _ = writeln!(text, "FAIL {f}");
    }
    let _ = writeln!(text, "{passed}/{trials} pass");
    let suites: BTreeMap<&str, Value> = per_suite
        .iter()
        .map(|(k, (ok, total))| (*k, json!({ "passed": ok, "total": total })))
        .collect();
    Ok(Report {
        text,
        result: json!({ "seed": seed, "trials": trials, "passed": passed, "suites": suites, "failures": failures }),
        ok: passed == trials,
    })
}

fn run(cli: &Cli) -> CliResult<(String, Report)> {
    Ok(match &cli.command {
        Command::Validate(input) => {
            let loaded = load(input)?;
            (loaded.name.clone(), cmd_validate(&loaded))
        }
        Command::Polytope { input, hrep: Some(path), emit, .. } => {
            if input.file.is_some() || input.builtin.is_some() {
                return Err(Failure::Usage("--hrep replaces the poset input".into()));
            }
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let h: HRepresentation = text.parse().map_err(|e: Error| Failure::Usage(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), cmd_polytope(&h, *emit)?)
        }
        Command::Polytope { input, hrep: None, family, emit } => {
            let loaded = load(input)?;
            let h = family_hrep(&loaded, *family)?;
            (loaded.name.clone(), cmd_polytope(&h, *emit)?)
        }
        Command::TwoLevel { input, family, method } => {
            let loaded = load(input)?;
            (loaded.name.clone(), cmd_two_level(&loaded, *family, *method)?)
        }
        Command::Ehrhart { input, family, method } => {
            let loaded = load(input)?;
            (loaded.name.clone(), cmd_ehrhart(&loaded, *family, *method)?)
        }
        Command::Corpus { seed, trials, max_unmarked, max_chain_order } => {
            ("corpus".to_string(), cmd_corpus(*seed, *trials, *max_unmarked, *max_chain_order)?)
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Polytope { .. } => "polytope",
        Command::TwoLevel { .. } => "two-level",
        Command::Ehrhart { .. } => "ehrhart",
        Command::Corpus { .. } => "corpus",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.work_cap {
        limits::set_work_cap(cap);
    }
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok((input, report)) => {
            if cli.json {
                println!("{}", json!({ "command": name, "input": input, "result": report.result }));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            if cli.json {
                println!("{}", json!({ "command": name, "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
