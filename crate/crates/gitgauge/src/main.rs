//! Batch command-line front end: every operation of the stability calculus
//! behind one binary, JSON in and JSON out.
//!
//! Exit codes: 0 success, 1 invalid input (with a diagnostic naming the
//! violated invariant on standard error), 2 infeasible or unbounded
//! problem. Output bytes are canonical: object keys sorted, rationals
//! reduced and rendered "p/q" or bare integers; --pretty changes
//! indentation only. GITGAUGE_THREADS caps the worker pool.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exact_geometry::rational::{format_rat, parse_rat};
use exact_geometry::Rat;
use git_core::{InstanceFile, Support, WeightSystem};
use mundet_core::{DatumFile, EnergyBudget, EnumerationMode, MundetError};
use scaled_combinatorics::{Mode, TypeFile, ValuationFile};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gitgauge", version, about = "Exact stability calculus for torus actions, gauged maps and scaled curves")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert-Mumford classification of a support under a torus action.
    Classify(InstanceArgs),
    /// Kirwan-Ness candidates and the stratum partition.
    Kn(InstanceArgs),
    #[command(subcommand)]
    Mundet(MundetCmd),
    #[command(subcommand)]
    Scaled(ScaledCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Args)]
struct InstanceArgs {
    /// Weight-system instance file.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum MundetCmd {
    /// Combined bundle-plus-section stability at a polarization power.
    Classify {
        /// Gauged-map datum file.
        #[arg(long)]
        input: String,
        /// Polarization power, "p/q" or an integer.
        #[arg(long, default_value = "1")]
        k: String,
    },
    /// Exact wall values in the polarization power.
    Walls {
        #[arg(long)]
        input: String,
    },
    /// All semistable degree-feasible data under an energy cap.
    Enumerate {
        /// Weight-system instance file.
        #[arg(long)]
        input: String,
        /// Energy cap, "p/q" or an integer.
        #[arg(long)]
        energy: String,
        /// Stability regime for the enumeration.
        #[arg(long, value_enum, default_value_t = KMode::LargeK)]
        mode: KMode,
        /// Polarization power for --mode at-k.
        #[arg(long)]
        k: Option<String>,
        /// One JSON object per line instead of a single array.
        #[arg(long)]
        stream: bool,
    },
    /// Dimension of the quot-scheme compactification chart.
    QuotDim {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 0)]
        genus: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KMode {
    LargeK,
    AtK,
}

#[derive(Subcommand)]
enum ScaledCmd {
    /// All stable scaled-curve types with n labelled markings.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CliMode::Projective)]
        mode: CliMode,
        /// One JSON object per line instead of a single array.
        #[arg(long)]
        stream: bool,
    },
    /// Validation, stability and stratum report for a type file.
    Check {
        #[arg(long)]
        input: String,
    },
    /// Limiting scaling classes of a one-parameter degeneration.
    Limit {
        /// Type file providing the tree.
        #[arg(long)]
        input: String,
        /// Valuation file with edge valuations and delta.
        #[arg(long)]
        valuations: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    Projective,
    Affine,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Projective => Mode::Projective,
            CliMode::Affine => Mode::Affine,
        }
    }
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Brute-force lattice scan of the Hilbert-Mumford criterion.
    Classify {
        #[arg(long)]
        input: String,
        /// Lattice box radius; defaults to the certified witness radius.
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Brute-force lattice scan of the combined weight.
    Mundet {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "1")]
        k: String,
        #[arg(long)]
        radius: Option<i64>,
    },
    /// Grid bracketing of wall crossings.
    Walls {
        #[arg(long)]
        input: String,
        /// Comma-separated increasing positive powers, e.g. "1/4,1/2,1,2".
        #[arg(long)]
        grid: String,
    },
    /// Exhaustive regeneration of stable types, diffed per mode.
    Trees {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CliMode::Projective)]
        mode: CliMode,
        /// Vertex cap; defaults to 2n + 2.
        #[arg(long)]
        cap: Option<usize>,
    },
}

enum Failure {
    Input(String),
    Infeasible(String),
}

impl From<git_core::GitError> for Failure {
    fn from(e: git_core::GitError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<MundetError> for Failure {
    fn from(e: MundetError) -> Self {
        match e {
            MundetError::UnboundedFamily | MundetError::RiemannRochViolated { .. } => {
                Failure::Infeasible(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<scaled_combinatorics::ScaledError> for Failure {
    fn from(e: scaled_combinatorics::ScaledError) -> Self {
        Failure::Input(e.to_string())
    }
}

enum Output {
    One(Value),
    Stream(Vec<Value>),
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GITGAUGE_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // a second build_global in one process is harmless; the
                // first pool wins
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("input error: GITGAUGE_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    // flag and usage errors are input errors (exit 1), not clap's default 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.cmd) {
        Ok(Output::One(v)) => {
            print_value(&v, cli.pretty);
            ExitCode::SUCCESS
        }
        Ok(Output::Stream(vs)) => {
            for v in vs {
                print_value(&v, cli.pretty);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Infeasible(msg)) => {
            eprintln!("infeasible: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_value(v: &Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    } else {
        println!("{}", serde_json::to_string(v).expect("serializable"));
    }
}

fn run(cmd: &Cmd) -> Result<Output, Failure> {
    match cmd {
        Cmd::Classify(args) => classify(args),
        Cmd::Kn(args) => kn(args),
        Cmd::Mundet(m) => mundet(m),
        Cmd::Scaled(s) => scaled(s),
        Cmd::Oracle(o) => oracle(o),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn read_instance(path: &str) -> Result<(WeightSystem, Support), Failure> {
    let file: InstanceFile = read_json(path)?;
    let (ws, support) = file.into_parts()?;
    let support = support.unwrap_or_else(|| Support::full(ws.num_weights()));
    Ok((ws, support))
}

fn parse_k(s: &str) -> Result<Rat, Failure> {
    let k = parse_rat(s).map_err(|e| Failure::Input(e.to_string()))?;
    if !num::Signed::is_positive(&k) {
        return Err(Failure::Input("polarization power k must be positive".into()));
    }
    Ok(k)
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rat(x))).collect())
}

fn classify(args: &InstanceArgs) -> Result<Output, Failure> {
    let (ws, support) = read_instance(&args.input)?;
    let class = git_core::classify(&ws, &support);
    let diag = git_core::dimension_diagnostics(&ws, &support);
    Ok(Output::One(json!({
        "semistable": class.semistable,
        "polystable": class.polystable,
        "stable": class.stable,
        "dimension_diagnostics": diag,
    })))
}

fn kn(args: &InstanceArgs) -> Result<Output, Failure> {
    let (ws, _) = read_instance(&args.input)?;
    let candidates = git_core::kn_candidates(&ws)?;
    let strata: Vec<Value> = git_core::kn_partition(&ws)?
        .into_iter()
        .map(|st| {
            json!({
                "lambda": rats_json(&st.lambda),
                "fixed_support_filter": st.fixed_support_filter,
                "members": st.members.iter().map(|m| json!({
                    "support": m.support.to_vec(),
                    "limit_support": m.limit_support,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Output::One(json!({
        "candidates": candidates.iter().map(|c| rats_json(c)).collect::<Vec<_>>(),
        "strata": strata,
    })))
}

fn mundet(cmd: &MundetCmd) -> Result<Output, Failure> {
    match cmd {
        MundetCmd::Classify { input, k } => {
            let file: DatumFile = read_json(input)?;
            let d = file.into_datum()?;
            let k = parse_k(k)?;
            let class = mundet_core::mundet_classify(&d, &k)?;
            let large = mundet_core::large_k_semistable(&d)?;
            let feas = mundet_core::degree_feasible(&d);
            Ok(Output::One(json!({
                "semistable": class.semistable,
                "stable": class.stable,
                "energy": format_rat(&mundet_core::energy(&d)),
                "degree_feasible": feas.feasible,
                "large_k": { "semistable": large.semistable,
                             "threshold": format_rat(&large.threshold) },
            })))
        }
        MundetCmd::Walls { input } => {
            let file: DatumFile = read_json(input)?;
            let d = file.into_datum()?;
            let set = mundet_core::walls(d.ws(), d.support(), d.dp())?;
            Ok(Output::One(json!({
                "walls": set.walls.iter().map(format_rat).collect::<Vec<_>>(),
                "degenerate_supports": set
                    .degenerate_supports
                    .iter()
                    .map(Support::to_vec)
                    .collect::<Vec<_>>(),
            })))
        }
        MundetCmd::Enumerate {
            input,
            energy,
            mode,
            k,
            stream,
        } => {
            let (ws, _) = read_instance(input)?;
            let cap = parse_rat(energy).map_err(|e| Failure::Input(e.to_string()))?;
            let budget = EnergyBudget::new(cap)?;
            let mode = match mode {
                KMode::LargeK => EnumerationMode::LargeK,
                KMode::AtK => {
                    let k = k
                        .as_deref()
                        .ok_or_else(|| Failure::Input("--mode at-k requires --k".into()))?;
                    EnumerationMode::AtK(parse_k(k)?)
                }
            };
            let data = mundet_core::enumerate_bounded(&ws, &budget, &mode)?;
            let items: Vec<Value> = data
                .iter()
                .map(|d| serde_json::to_value(DatumFile::from_datum(d)).expect("serializable"))
                .collect();
            if *stream {
                Ok(Output::Stream(items))
            } else {
                Ok(Output::One(Value::Array(items)))
            }
        }
        MundetCmd::QuotDim { input, genus } => {
            if *genus < 0 {
                return Err(Failure::Input("genus must be nonnegative".into()));
            }
            let file: DatumFile = read_json(input)?;
            let d = file.into_datum()?;
            let dim = mundet_core::quot_dimension(&d, *genus)?;
            Ok(Output::One(json!({ "dimension": dim })))
        }
    }
}

fn scaled(cmd: &ScaledCmd) -> Result<Output, Failure> {
    match cmd {
        ScaledCmd::Enumerate { n, mode, stream } => {
            if *n > 8 {
                return Err(Failure::Input("marking count capped at 8".into()));
            }
            let types = scaled_combinatorics::enumerate_types(*n, (*mode).into());
            let items: Vec<Value> = types
                .iter()
                .map(|ty| serde_json::to_value(TypeFile::from_type(ty)).expect("serializable"))
                .collect();
            if *stream {
                Ok(Output::Stream(items))
            } else {
                Ok(Output::One(Value::Array(items)))
            }
        }
        ScaledCmd::Check { input } => {
            let file: TypeFile = read_json(input)?;
            let ty = file.into_type()?;
            let violations = scaled_combinatorics::validate_type(&ty);
            let stability = scaled_combinatorics::is_stable_type(&ty);
            let report = if violations.is_empty() && stability.stable {
                serde_json::to_value(scaled_combinatorics::stratum_report(&ty))
                    .expect("serializable")
            } else {
                Value::Null
            };
            Ok(Output::One(json!({
                "violations": violations,
                "stable": stability.stable,
                "special_points": stability.special_points,
                "canonical_form": scaled_combinatorics::canonical_form(&ty),
                "report": report,
            })))
        }
        ScaledCmd::Limit { input, valuations } => {
            let ty = read_json::<TypeFile>(input)?.into_type()?;
            let val = read_json::<ValuationFile>(valuations)?.into_valuations()?;
            let classes = scaled_combinatorics::tropical_limit(ty.tree(), &val)?;
            Ok(Output::One(json!({ "classes": classes })))
        }
    }
}

fn oracle(cmd: &OracleCmd) -> Result<Output, Failure> {
    match cmd {
        OracleCmd::Classify { input, radius } => {
            let (ws, support) = read_instance(input)?;
            let radius = match radius {
                Some(r) => *r,
                None => git_core::unstable_witness(&ws, &support).map_or(1, |(_, r)| r),
            };
            let budget = oracle_budget(radius)?;
            let v = oracles::brute_force_classify(&ws, &support, &budget);
            Ok(Output::One(json!({
                "semistable": v.semistable,
                "witness": v.witness,
                "radius": radius,
            })))
        }
        OracleCmd::Mundet { input, k, radius } => {
            let file: DatumFile = read_json(input)?;
            let d = file.into_datum()?;
            let k = parse_k(k)?;
            let radius = match radius {
                Some(r) => *r,
                None => certified_mundet_radius(&d, &k)?,
            };
            let budget = oracle_budget(radius)?;
            let v = oracles::brute_force_mundet(&d, &k, &budget);
            Ok(Output::One(json!({
                "semistable": v.semistable,
                "witness": v.witness,
                "radius": radius,
            })))
        }
        OracleCmd::Walls { input, grid } => {
            let file: DatumFile = read_json(input)?;
            let d = file.into_datum()?;
            let grid: Vec<Rat> = grid
                .split(',')
                .map(|s| parse_rat(s.trim()).map_err(|e| Failure::Input(e.to_string())))
                .collect::<Result<_, _>>()?;
            if !grid.windows(2).all(|w| w[0] < w[1]) {
                return Err(Failure::Input("grid must be strictly increasing".into()));
            }
            if !grid.iter().all(num::Signed::is_positive) {
                return Err(Failure::Input("grid powers must be positive".into()));
            }
            let brackets = oracles::scan_walls(d.ws(), d.support(), d.dp(), &grid);
            Ok(Output::One(json!({
                "brackets": brackets
                    .iter()
                    .map(|(lo, hi)| vec![format_rat(lo), format_rat(hi)])
                    .collect::<Vec<_>>(),
            })))
        }
        OracleCmd::Trees { n, mode, cap } => {
            if *n > 4 {
                return Err(Failure::Input("oracle tree check capped at n = 4".into()));
            }
            let cap = cap.unwrap_or(2 * n + 2);
            let report = oracles::exhaustive_tree_check(*n, (*mode).into(), cap)
                .map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Output::One(json!({
                "oracle_count": report.oracle_count,
                "enumerated_count": report.enumerated_count,
                "missing": report.missing,
                "extra": report.extra,
                "agrees": report.agrees(),
            })))
        }
    }
}

fn oracle_budget(radius: i64) -> Result<oracles::OracleBudget, Failure> {
    oracles::OracleBudget::new(radius, vec![exact_geometry::rat_i(1)], 4)
        .map_err(|e| Failure::Input(e.to_string()))
}

// The combined weight at power k equals k times the plain weight of the
// system with theta moved to the shifted point, so that system's
// separating certificate certifies the scan radius.
fn certified_mundet_radius(
    d: &mundet_core::GaugedMapDatum,
    k: &Rat,
) -> Result<i64, Failure> {
    let shift: Vec<Rat> = d
        .ws()
        .theta()
        .iter()
        .zip(d.dp_vee())
        .map(|(t, v)| t - v / k)
        .collect();
    let shifted = WeightSystem::new(
        d.ws().rank(),
        d.ws().weights().to_vec(),
        shift,
        Some(d.ws().metric().clone()),
    )?;
    Ok(git_core::unstable_witness(&shifted, d.support()).map_or(1, |(_, r)| r))
}
