//! Command-line front end for `cubefree`: one JSON report per invocation.

pub mod claims;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cubefree::construction::{block_vector, cd_layers, construct_cd};
use cubefree::counting::{
    count_schur_triples, count_triples_by_layer, layer_profile, schur_lower_bound,
};
use cubefree::detection::find_d_cube;
use cubefree::group::centred_set;
use cubefree::oracle::{alon_freiman_verify_all, keylemma_verify_all, DEFAULT_BUDGET};
use cubefree::search::{
    max_cube_free_brute_force, max_cube_free_exact, max_cube_free_layer_unions,
    min_schur_exhaustive, validate_solution, CoverModel, CubePatterns, SearchOptions,
    DEFAULT_SEARCH_BUDGET,
};
use cubefree::{Error, GroupContext, ResidueSet};

use claims::{Hooks, Level, DEFAULT_SEED};
use report::{RunReport, Status};

pub const BUDGET_VAR: &str = "CUBEFREE_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "cubefree",
    version,
    about = "Projective-cube-free subsets of Z_{2^n}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build C_d and report its block vector and layers.
    Construct(ConstructArgs),
    /// Find the lexicographically smallest d-cube inside a set.
    FindCube(FindCubeArgs),
    /// Count Schur triples and the layer lower bound.
    CountSt(CountStArgs),
    /// Minimum Schur triple count over all M-subsets.
    MinSchur(MinSchurArgs),
    /// Largest d-cube-free set, or a solver model for it.
    MaxSearch(MaxSearchArgs),
    /// Exhaustive check of a zero-sum statement.
    VerifyLemma(VerifyLemmaArgs),
    /// Rerun the acceptance checks.
    VerifyClaims(VerifyClaimsArgs),
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug, Serialize)]
struct FindCubeArgs {
    /// Comma list (`2,3,5`), JSON array, or path to a JSON file.
    #[arg(long)]
    set: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: usize,
}

#[derive(Args, Debug, Serialize)]
struct CountStArgs {
    #[arg(long)]
    set: String,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug, Serialize)]
struct MinSchurArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u64,
    /// Only scan sets containing 1 (valid when M > 2^{n-1}).
    #[arg(long)]
    symmetry: bool,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum Mode {
    Exact,
    Exhaustive,
    Layers,
    Lp,
    Cnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum Patterns {
    All,
    Conc2,
}

#[derive(Args, Debug, Serialize)]
struct MaxSearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Required by `--mode cnf`.
    #[arg(long)]
    target: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    symmetry: bool,
    /// Start branch-and-bound from C_d.
    #[arg(long)]
    seed_construction: bool,
    #[arg(long, value_enum, default_value = "all")]
    patterns: Patterns,
    /// Write the model here instead of embedding it in the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver output (`name value` lines) to check against the LP model.
    #[arg(long)]
    solution: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
enum Lemma {
    Keylemma,
    AlonFreiman,
}

#[derive(Args, Debug, Serialize)]
struct VerifyLemmaArgs {
    #[arg(long, value_enum, default_value = "keylemma")]
    lemma: Lemma,
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    x: usize,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyClaimsArgs {
    #[arg(long, value_enum, default_value = "smoke")]
    level: Level,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Restrict to these claim ids.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, Status), Failure>;

/// `--budget`, else `CUBEFREE_BUDGET`, else the default.
fn budget(flag: Option<u64>, default: u64) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_VAR}={v} is not a count"))),
        Err(_) => Ok(default),
    }
}

/// Residues from a comma list, a JSON array, or a JSON file. Negative values
/// wrap; values at or above `2^n` are rejected.
pub fn parse_set(spec: &str, ctx: &GroupContext) -> cubefree::Result<ResidueSet> {
    let trimmed = spec.trim();
    let text = if !trimmed.starts_with('[') && Path::new(trimmed).is_file() {
        std::fs::read_to_string(trimmed)
            .map_err(|e| Error::Parse(format!("cannot read {trimmed}: {e}")))?
    } else {
        trimmed.to_string()
    };
    let text = text.trim();
    let values: Vec<i64> = if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON set: {e}")))?
    } else if text.is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("`{}` is not an integer", t.trim())))
            })
            .collect::<cubefree::Result<_>>()?
    };
    let modulus = ctx.modulus() as i64;
    let mut set = ResidueSet::empty(*ctx);
    for v in values {
        if v >= modulus || v < -modulus {
            return Err(Error::Parse(format!("{v} is outside Z_{modulus}")));
        }
        set.insert(ctx.reduce(v));
    }
    Ok(set)
}

fn construct(args: &ConstructArgs) -> Outcome {
    let ctx = GroupContext::new(args.n)?;
    let set = construct_cd(args.d, &ctx)?;
    let blocks = if args.d >= 2 {
        block_vector(args.d)?.lengths
    } else {
        Vec::new()
    };
    Ok((
        json!({
            "d": args.d,
            "n": args.n,
            "block_vector": blocks,
            "layers": cd_layers(args.d)?,
            "size": set.len(),
            "set": set,
        }),
        Status::Ok,
    ))
}

fn find_cube(args: &FindCubeArgs) -> Outcome {
    let ctx = GroupContext::new(args.n)?;
    if args.d == 0 {
        return Err(Failure::Usage("--d must be positive".into()));
    }
    let set = parse_set(&args.set, &ctx)?;
    let witness = find_d_cube(&set, args.d);
    Ok((
        json!({
            "set": set,
            "found": witness.is_some(),
            "witness": witness,
        }),
        Status::Ok,
    ))
}

fn count_st(args: &CountStArgs) -> Outcome {
    let ctx = GroupContext::new(args.n)?;
    let set = parse_set(&args.set, &ctx)?;
    let profile = layer_profile(&set);
    Ok((
        json!({
            "set": set,
            "schur_triples": count_schur_triples(&set),
            "lower_bound": schur_lower_bound(&profile, &ctx),
            "profile": profile,
            "by_layer": count_triples_by_layer(&set),
        }),
        Status::Ok,
    ))
}

fn min_schur(args: &MinSchurArgs) -> Outcome {
    let ctx = GroupContext::new(args.n)?;
    let b = budget(args.budget, DEFAULT_SEARCH_BUDGET)?;
    let cert = min_schur_exhaustive(&ctx, args.m, args.symmetry, b)?;
    let centred = count_schur_triples(&centred_set(args.m, &ctx)?);
    Ok((
        json!({
            "certificate": cert,
            "centred_count": centred,
            "centred_attains": centred == cert.optimum,
        }),
        Status::Ok,
    ))
}

fn emit_model(text: String, out: &Option<PathBuf>) -> Result<Value, Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(json!({ "path": path, "bytes": text.len() }))
        }
        None => Ok(json!({ "text": text })),
    }
}

fn max_search(args: &MaxSearchArgs) -> Outcome {
    let ctx = GroupContext::new(args.n)?;
    let b = budget(args.budget, DEFAULT_SEARCH_BUDGET)?;
    let opts = SearchOptions {
        budget: b,
        symmetry: args.symmetry,
        seed_with_construction: args.seed_construction,
    };
    let patterns = match args.patterns {
        Patterns::All => CubePatterns::All,
        Patterns::Conc2 => CubePatterns::Conc2,
    };
    let result = match args.mode {
        Mode::Exact => json!({ "certificate": max_cube_free_exact(&ctx, args.d, opts)? }),
        Mode::Exhaustive => json!({ "certificate": max_cube_free_brute_force(&ctx, args.d)? }),
        Mode::Layers => json!({ "certificate": max_cube_free_layer_unions(&ctx, args.d)? }),
        Mode::Lp => {
            let model = CoverModel::build(&ctx, args.d, patterns, b)?;
            let mut result = json!({
                "variables": model.variable_count(),
                "constraints": model.constraints.len(),
                "model": emit_model(model.to_lp(), &args.out)?,
            });
            if let Some(path) = &args.solution {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                result["solution"] =
                    serde_json::to_value(validate_solution(&model, &text)?).expect("plain data");
            }
            result
        }
        Mode::Cnf => {
            let target = args
                .target
                .ok_or_else(|| Failure::Usage("--mode cnf needs --target".into()))?;
            let model = CoverModel::build(&ctx, args.d, CubePatterns::All, b)?;
            let cnf = model.to_cnf(target);
            json!({
                "variables": cnf.num_vars,
                "clauses": cnf.clauses.len(),
                "model": emit_model(cnf.to_dimacs(), &args.out)?,
            })
        }
    };
    Ok((result, Status::Ok))
}

fn verify_lemma(args: &VerifyLemmaArgs) -> Outcome {
    let b = budget(args.budget, DEFAULT_BUDGET)?;
    let report = match args.lemma {
        Lemma::Keylemma => keylemma_verify_all(args.k, args.x, b)?,
        Lemma::AlonFreiman => alon_freiman_verify_all(args.k, b)?,
    };
    let status = if report.counterexamples.is_empty() {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok((serde_json::to_value(report).expect("plain data"), status))
}

fn verify_claims(args: &VerifyClaimsArgs, hooks: Hooks) -> Outcome {
    let outcomes = claims::run_claims(args.level, args.seed, hooks, &args.only);
    let failed: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.name)
        .collect();
    let status = if failed.is_empty() {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok((
        json!({
            "level": args.level,
            "seed": args.seed,
            "passed": outcomes.len() - failed.len(),
            "failed": failed,
            "claims": outcomes,
        }),
        status,
    ))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct(_) => "construct",
        Command::FindCube(_) => "find-cube",
        Command::CountSt(_) => "count-st",
        Command::MinSchur(_) => "min-schur",
        Command::MaxSearch(_) => "max-search",
        Command::VerifyLemma(_) => "verify-lemma",
        Command::VerifyClaims(_) => "verify-claims",
    }
}

fn parameters(c: &Command) -> Value {
    let v = match c {
        Command::Construct(a) => serde_json::to_value(a),
        Command::FindCube(a) => serde_json::to_value(a),
        Command::CountSt(a) => serde_json::to_value(a),
        Command::MinSchur(a) => serde_json::to_value(a),
        Command::MaxSearch(a) => serde_json::to_value(a),
        Command::VerifyLemma(a) => serde_json::to_value(a),
        Command::VerifyClaims(a) => serde_json::to_value(a),
    };
    v.expect("arguments are plain data")
}

/// Parses `args` (program name first), runs the command and writes the JSON
/// report to `out`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_hooks(args, Hooks::default(), out, err)
}

pub fn run_with_hooks<I, T>(
    args: I,
    hooks: Hooks,
    out: &mut impl Write,
    err: &mut impl Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let started = Instant::now();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let report = RunReport {
                command: String::new(),
                parameters: Value::Null,
                result: json!({ "error": e.kind().to_string() }),
                status: Status::UsageError,
                elapsed_ms: 0.0,
            };
            let _ = writeln!(out, "{}", report.to_json());
            return Status::UsageError.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Construct(a) => construct(a),
        Command::FindCube(a) => find_cube(a),
        Command::CountSt(a) => count_st(a),
        Command::MinSchur(a) => min_schur(a),
        Command::MaxSearch(a) => max_search(a),
        Command::VerifyLemma(a) => verify_lemma(a),
        Command::VerifyClaims(a) => verify_claims(a, hooks),
    };
    let (result, status) = match outcome {
        Ok(pair) => pair,
        Err(failure) => {
            let (message, status) = match failure {
                Failure::Usage(m) => (m, Status::UsageError),
                Failure::Core(e @ Error::Capacity(_)) => (e.to_string(), Status::BudgetExceeded),
                Failure::Core(e) => (e.to_string(), Status::UsageError),
            };
            let _ = writeln!(err, "error: {message}");
            (json!({ "error": message }), status)
        }
    };
    let report = RunReport {
        command: command_name(&cli.command).into(),
        parameters: parameters(&cli.command),
        result,
        status,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let _ = writeln!(out, "{}", report.to_json());
    status.exit_code()
}
