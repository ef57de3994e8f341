//! Command-line front end for `ffqe`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 semantic error (field,
//! variables, enumeration limits), 3 budget exhausted.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ffqe::engine::{self, EliminationMethod, OrderKind, QeError, QeOptions, RoundTrace};
use ffqe::field::{prime_power, FieldError, FieldSpec};
use ffqe::groebner::{buchberger_with_budget, Budget, GbStats, GroebnerError, Ideal};
use ffqe::oracle::{OracleError, OracleOptions, DEFAULT_MAX_POINTS};
use ffqe::poly::{MonomialOrder, PolyError, Ring, VarTable};
use ffqe::syntax::ParseError;
use ffqe::Formula;

/// Largest field order accepted on the command line.
const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Parser, Debug)]
#[command(name = "ffqe", version, about = "Quantifier elimination over finite fields")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Field order q (a prime power). Defaults to a `# field: q` line in the input.
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Modulus for extension fields, as a polynomial in the generator.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Name of the generator of an extension field.
    #[arg(long, global = true, default_value = "w")]
    generator: String,
    /// Comma-separated variable names, used as a tiebreak within rank groups.
    #[arg(long, global = true)]
    order: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = TermOrder::Lex)]
    term_order: TermOrder,
    #[arg(long, global = true, value_enum, default_value_t = EngineKind::Groebner)]
    engine: EngineKind,
    /// How each round's elimination ideal is computed.
    #[arg(long, global = true, value_enum, default_value_t = Elimination::Auto)]
    elimination: Elimination,
    /// Reduce the output modulo the field polynomials of the free variables.
    #[arg(long, global = true)]
    simplify: bool,
    /// Force the output into conjunctive normal form.
    #[arg(long, global = true)]
    cnf: bool,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, env = "FFQE_BUDGET_SECS")]
    budget_secs: Option<f64>,
    /// Abort when an intermediate basis exceeds this many elements.
    #[arg(long, global = true)]
    max_basis: Option<usize>,
    /// Enumeration limit of the oracle engine, in points.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: u64,
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print per-round statistics (to stderr in text mode).
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum EngineKind {
    Groebner,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Elimination {
    Auto,
    ChangeOfOrder,
    Direct,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TermOrder {
    Lex,
    BlockGrevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a quantifier-free formula equivalent to FILE.
    Qe { file: PathBuf },
    /// Print the truth value of the closed formula in FILE.
    Decide { file: PathBuf },
    /// Print a satisfying assignment of the existential formula in FILE, or `none`.
    Witness { file: PathBuf },
    /// Print the reduced lexicographic Gröbner basis of the given polynomials.
    Gb {
        /// Comma-separated polynomials.
        #[arg(long)]
        polys: String,
        /// Comma-separated variables, highest first.
        #[arg(long)]
        vars: String,
        /// Add the field polynomial of every variable.
        #[arg(long)]
        field_polys: bool,
    },
    /// Regenerate corpus files.
    Corpus {
        #[command(subcommand)]
        which: CorpusKind,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusKind {
    /// The S2VD verification formulas and the walk-through example.
    S2vd { dir: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Semantic(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Semantic(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn status(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage_error",
            Failure::Semantic(_) => "semantic_error",
            Failure::Budget(_) => "budget_exhausted",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Semantic(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<QeError> for Failure {
    fn from(e: QeError) -> Self {
        match e {
            QeError::BudgetExhausted(_) => Failure::Budget(e.to_string()),
            QeError::Oracle(o) => o.into(),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted(_) => Failure::Budget(e.to_string()),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

/// A clause literal: `poly = 0` when `eq`, else `poly != 0`.
#[derive(Serialize, Debug)]
struct Literal {
    eq: bool,
    poly: String,
}

#[derive(Serialize, Debug, Default)]
struct Stats {
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rounds: Vec<RoundStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    groebner: Option<GbStatsJson>,
}

#[derive(Serialize, Debug)]
struct RoundStats {
    round: usize,
    quantifier: String,
    block: Vec<String>,
    input_literals: usize,
    fresh_u: usize,
    fresh_v: usize,
    fresh_z: usize,
    groebner_runs: usize,
    output_literals: usize,
    elapsed_ms: f64,
    bases: Vec<Vec<String>>,
}

#[derive(Serialize, Debug)]
struct GbStatsJson {
    input_generators: usize,
    pairs_created: usize,
    pairs_reduced: usize,
    product_criterion: usize,
    chain_criterion: usize,
    zero_reductions: usize,
    max_intermediate: usize,
    output_size: usize,
}

impl From<&GbStats> for GbStatsJson {
    fn from(s: &GbStats) -> Self {
        GbStatsJson {
            input_generators: s.input_generators,
            pairs_created: s.pairs_created,
            pairs_reduced: s.pairs_reduced,
            product_criterion: s.product_criterion,
            chain_criterion: s.chain_criterion,
            zero_reductions: s.zero_reductions,
            max_intermediate: s.max_intermediate,
            output_size: s.output_size,
        }
    }
}

impl From<&RoundTrace> for RoundStats {
    fn from(t: &RoundTrace) -> Self {
        RoundStats {
            round: t.round,
            quantifier: t.quantifier.keyword().to_string(),
            block: t.block.clone(),
            input_literals: t.input_literals,
            fresh_u: t.fresh_u,
            fresh_v: t.fresh_v,
            fresh_z: t.fresh_z,
            groebner_runs: t.eliminations.len(),
            output_literals: t.output_literals,
            elapsed_ms: t.elapsed.as_secs_f64() * 1e3,
            bases: t.eliminations.iter().map(|e| e.basis.clone()).collect(),
        }
    }
}

/// The single JSON object printed with `--json`.
#[derive(Serialize, Debug)]
struct JsonOutput {
    status: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<Vec<Vec<Literal>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Option<Vec<(String, String)>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    files: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    stats: Stats,
}

impl JsonOutput {
    fn new(command: &'static str) -> JsonOutput {
        JsonOutput {
            status: "ok",
            command,
            formula: None,
            value: None,
            witness: None,
            basis: None,
            files: None,
            error: None,
            stats: Stats::default(),
        }
    }
}

/// What a successful command produced: its text rendering and JSON fields.
struct Outcome {
    text: String,
    json: JsonOutput,
    trace: Vec<RoundTrace>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            if cli.opts.json {
                out.json.stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                println!("{}", serde_json::to_string(&out.json).expect("serializable"));
            } else {
                if cli.opts.trace {
                    for t in &out.trace {
                        eprintln!("{t}");
                    }
                }
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("ffqe: {}", f.message());
            if cli.opts.json {
                let mut j = JsonOutput::new(name);
                j.status = f.status();
                j.error = Some(f.message().to_string());
                j.stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
                println!("{}", serde_json::to_string(&j).expect("serializable"));
            }
            ExitCode::from(f.code())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Qe { .. } => "qe",
        Command::Decide { .. } => "decide",
        Command::Witness { .. } => "witness",
        Command::Gb { .. } => "gb",
        Command::Corpus { .. } => "corpus",
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Qe { file } => {
            let (phi, field) = load(file, o)?;
            let mut json = JsonOutput::new("qe");
            let (formula, trace) = match o.engine {
                EngineKind::Groebner => {
                    let mut opts = qe_options(o)?;
                    opts.cnf |= o.json;
                    let out = engine::qe(&phi, &field, &opts)?;
                    (out.formula, out.trace)
                }
                EngineKind::Oracle => {
                    let mut f = engine::qe_by_enumeration(&phi, &field, &oracle_options(o))?;
                    if o.simplify {
                        f = engine::simplify(&f, &field)?;
                    }
                    (f, Vec::new())
                }
            };
            if o.json {
                let clauses = engine::cnf_clauses(&formula)
                    .ok_or_else(|| Failure::Semantic("output is not in conjunctive normal form".into()))?;
                json.formula = Some(
                    clauses
                        .into_iter()
                        .map(|c| c.into_iter().map(|(eq, poly)| Literal { eq, poly }).collect())
                        .collect(),
                );
                json.stats.rounds = trace.iter().map(RoundStats::from).collect();
            }
            Ok(Outcome { text: formula.to_string(), json, trace })
        }
        Command::Decide { file } => {
            let (phi, field) = load(file, o)?;
            let (value, trace) = match o.engine {
                EngineKind::Groebner => {
                    let free = phi.free_variables();
                    if !free.is_empty() {
                        return Err(QeError::NotClosed(free).into());
                    }
                    let out = engine::qe(&phi, &field, &qe_options(o)?)?;
                    match out.formula.fold_constants() {
                        Formula::True => (true, out.trace),
                        Formula::False => (false, out.trace),
                        other => return Err(Failure::Semantic(format!("closed formula reduced to `{other}`"))),
                    }
                }
                EngineKind::Oracle => (engine::decide_by_enumeration(&phi, &field, &oracle_options(o))?, Vec::new()),
            };
            let mut json = JsonOutput::new("decide");
            json.value = Some(value);
            json.formula = Some(if value { Vec::new() } else { vec![Vec::new()] });
            json.stats.rounds = trace.iter().map(RoundStats::from).collect();
            Ok(Outcome { text: value.to_string(), json, trace })
        }
        Command::Witness { file } => {
            let (phi, field) = load(file, o)?;
            let found = engine::witness(&phi, &field, &oracle_options(o))?;
            let mut json = JsonOutput::new("witness");
            json.witness =
                Some(found.as_ref().map(|a| a.iter().map(|(n, v)| (n.to_string(), v.to_string())).collect()));
            let text = found.map(|a| a.to_string()).unwrap_or_else(|| "none".into());
            Ok(Outcome { text, json, trace: Vec::new() })
        }
        Command::Gb { polys, vars, field_polys } => {
            let q = o.field.ok_or_else(|| Failure::Usage("gb requires --field".into()))?;
            let field = build_field(q, o)?;
            let names = split_list(vars);
            let table = VarTable::new(&names).map_err(|v| Failure::Semantic(format!("duplicate variable `{v}`")))?;
            let order = match o.term_order {
                TermOrder::Lex => MonomialOrder::Lex,
                TermOrder::BlockGrevlex => MonomialOrder::BlockGrevlex { block: names.len() },
            };
            let ring = Ring::new(field, table, order);
            let gens = split_list(polys)
                .iter()
                .map(|p| ring.parse(p).map_err(|e| Failure::Usage(format!("{p}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let mut ideal = Ideal::new(&ring, gens)?;
            if *field_polys {
                ideal = ideal.with_all_field_polynomials();
            }
            let (gb, stats) = buchberger_with_budget(&ideal, &budget(o))?;
            let basis: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
            let mut json = JsonOutput::new("gb");
            json.basis = Some(basis.clone());
            json.stats.groebner = Some(GbStatsJson::from(&stats));
            Ok(Outcome { text: basis.join("\n"), json, trace: Vec::new() })
        }
        Command::Corpus { which: CorpusKind::S2vd { dir } } => {
            let paths =
                ffqe::s2vd::write_corpus(dir).map_err(|e| Failure::Semantic(format!("{}: {e}", dir.display())))?;
            let files: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            let mut json = JsonOutput::new("corpus");
            json.files = Some(files.clone());
            Ok(Outcome { text: files.join("\n"), json, trace: Vec::new() })
        }
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(String::from).collect()
}

fn budget(o: &GlobalOpts) -> Budget {
    Budget {
        deadline: o.budget_secs.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        max_basis: o.max_basis,
        max_terms: None,
    }
}

fn qe_options(o: &GlobalOpts) -> Result<QeOptions, Failure> {
    let var_order = o.order.as_deref().map(split_list).unwrap_or_default();
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = var_order.iter().find(|v| !seen.insert(v.as_str())) {
        return Err(Failure::Usage(format!("--order mentions `{dup}` twice")));
    }
    Ok(QeOptions {
        timeout: o.budget_secs.map(|s| Duration::from_secs_f64(s.max(0.0))),
        max_basis: o.max_basis,
        simplify: o.simplify,
        cnf: o.cnf,
        trace: o.trace || o.json,
        method: match o.elimination {
            Elimination::Auto => EliminationMethod::Auto,
            Elimination::ChangeOfOrder => EliminationMethod::ChangeOfOrder,
            Elimination::Direct => EliminationMethod::Direct,
        },
        order: match o.term_order {
            TermOrder::Lex => OrderKind::Lex,
            TermOrder::BlockGrevlex => OrderKind::BlockGrevlex,
        },
        var_order,
    })
}

fn oracle_options(o: &GlobalOpts) -> OracleOptions {
    OracleOptions { max_points: o.max_points }
}

fn build_field(q: u64, o: &GlobalOpts) -> Result<FieldSpec, Failure> {
    if q > MAX_FIELD_ORDER {
        return Err(Failure::Semantic(format!("field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}")));
    }
    let (p, r) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    let field = match &o.modulus {
        None => FieldSpec::new(p, r, None)?,
        Some(text) => {
            let base = FieldSpec::prime(p)?;
            let ring = Ring::lex(&base, &[o.generator.as_str()])?;
            let m = ring.parse(text).map_err(|e| Failure::Usage(format!("--modulus: {e}")))?;
            let coeffs = m.to_univariate(0).ok_or_else(|| Failure::Usage("--modulus must be univariate".into()))?;
            FieldSpec::new(p, r, Some(&coeffs))?
        }
    };
    Ok(if r > 1 { field.with_generator_name(&o.generator)? } else { field })
}

/// Field order from a `# field: q` comment line.
fn field_from_header(text: &str) -> Option<u64> {
    text.lines().filter_map(|l| l.trim().strip_prefix('#')).find_map(|c| {
        let c = c.trim();
        c.strip_prefix("field:").and_then(|v| v.trim().parse().ok())
    })
}

fn read_input(file: &Path) -> Result<String, Failure> {
    if file == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))
    }
}

fn load(file: &Path, o: &GlobalOpts) -> Result<(Formula, FieldSpec), Failure> {
    let text = read_input(file)?;
    let q = o
        .field
        .or_else(|| field_from_header(&text))
        .ok_or_else(|| Failure::Usage("no --field given and no `# field: q` line in the input".into()))?;
    let field = build_field(q, o)?;
    let phi =
        ffqe::logic::parse(&text, &field).map_err(|e: ParseError| Failure::Usage(format!("{}:{e}", file.display())))?;
    Ok((phi, field))
}
