//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or probe fails to
//! confirm, 2 on usage errors.  `MODHOM_THREADS` caps the worker pool;
//! outputs on stdout are identical for every thread count.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use modhom::forms::{basis_of, FormClass};
use modhom::hochschild::parse_chain;
use modhom::homology::{cyclic_report, derham_report, hkr_cycle_probe, CyclicVariant, DimensionReport, ProbeOutcome};
use modhom::modpair::{ModulusPair, Multidegree};
use modhom::monoids::{FgAbMonoid, MonoidMap, RepletionIso};
use modhom::verify::{run_all, run_suite, Suite, SuiteConfig, SuiteReport};
use modhom::arith::IntMatrix;

#[derive(Parser)]
#[command(name = "modhom", version, about = "Exact multigraded Hochschild, cyclic, and log de Rham computations for monomial modulus pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild dimension tables in fixed multidegrees
    Dims(DimsArgs),
    /// de Rham cohomology of the pole-bounded forms complex
    Cohomology(CohomologyArgs),
    /// Cyclic, negative cyclic, or periodic dimension tables
    Cyclic(CyclicArgs),
    /// Run randomized verification suites
    Verify(VerifyArgs),
    /// Decide whether a cycle is homologous to its own form image
    Probe(ProbeArgs),
    /// Repletion data for a map of free-by-free monoids
    Monoid(MonoidArgs),
}

#[derive(Args)]
struct PairArgs {
    /// Number of modulus variables
    #[arg(long)]
    s: usize,
    /// Number of pole-free variables
    #[arg(long)]
    t: usize,
    /// Modulus exponents, comma separated, one per modulus variable
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    r: Vec<i64>,
}

impl PairArgs {
    fn build(&self) -> Result<ModulusPair, String> {
        ModulusPair::new(self.s, self.t, self.r.clone()).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct DegArgs {
    /// One multidegree, comma separated (x components then y components)
    #[arg(long, allow_hyphen_values = true, conflicts_with = "deg_window")]
    deg: Option<String>,
    /// Inclusive window `lo..hi`; reports every multidegree inside it
    #[arg(long, allow_hyphen_values = true)]
    deg_window: Option<String>,
}

impl DegArgs {
    fn degrees(&self, pair: &ModulusPair) -> Result<Vec<Multidegree>, String> {
        match (&self.deg, &self.deg_window) {
            (Some(text), None) => {
                Ok(vec![pair.parse_multidegree(text).map_err(|e| e.to_string())?])
            }
            (None, Some(window)) => {
                let (lo, hi) = parse_window(window)?;
                Ok(window_degrees(pair, lo, hi))
            }
            (None, None) => Ok(vec![Multidegree::zero(pair.s(), pair.t())]),
            (Some(_), Some(_)) => Err("give either --deg or --deg-window".to_string()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    deg: DegArgs,
    /// Largest homological degree to report
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Restrict to chains with no poles at all
    #[arg(long)]
    no_poles: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    deg: DegArgs,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Hc,
    Hcminus,
    Hp,
}

impl From<VariantArg> for CyclicVariant {
    fn from(v: VariantArg) -> CyclicVariant {
        match v {
            VariantArg::Hc => CyclicVariant::HC,
            VariantArg::Hcminus => CyclicVariant::HCMinus,
            VariantArg::Hp => CyclicVariant::HP,
        }
    }
}

#[derive(Args)]
struct CyclicArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[command(flatten)]
    deg: DegArgs,
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Smallest homological degree to report
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    n_min: i64,
    /// Largest homological degree to report
    #[arg(long, default_value_t = 6)]
    n_max: i64,
    /// Compute through the truncated-column total complex instead of the
    /// rank formula
    #[arg(long)]
    bicomplex: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 200)]
    samples: u64,
    #[arg(long, default_value_t = 17)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    max_s: usize,
    #[arg(long, default_value_t = 2)]
    max_t: usize,
    #[arg(long, default_value_t = 3)]
    max_r: i64,
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    #[arg(long, default_value_t = 2)]
    exponent_window: i64,
    #[arg(long, default_value_t = 2)]
    multidegree_window: i64,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Chain to probe, e.g. `x1^-1*y1 (x) x1 + 2 y1 (x) x1`
    #[arg(long)]
    chain: String,
    /// Largest pole bound to escalate through
    #[arg(long, default_value_t = 4)]
    pole_bound: i64,
}

#[derive(Args)]
struct MonoidArgs {
    /// Source monoid, e.g. `N^2` or `N+Z`
    #[arg(long)]
    source: String,
    /// Target monoid
    #[arg(long)]
    target: String,
    /// Matrix of the map on group completions: rows joined by `;`,
    /// entries by `,`
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    /// Number of bar slots
    #[arg(long, default_value_t = 2)]
    slots: usize,
    /// Optional tuple to split: slots joined by `;`, entries by `,`
    #[arg(long, allow_hyphen_values = true)]
    tuple: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("MODHOM_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("pool is built once");
            }
            _ => {
                eprintln!("MODHOM_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = match cli.command {
        Command::Dims(args) => cmd_dims(args),
        Command::Cohomology(args) => cmd_cohomology(args),
        Command::Cyclic(args) => cmd_cyclic(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Probe(args) => cmd_probe(args),
        Command::Monoid(args) => cmd_monoid(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("window `{text}` is not of the form lo..hi"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Every multidegree with x components in `[lo, hi]` and y components in
/// `[max(lo, 0), hi]`, in odometer order.
fn window_degrees(pair: &ModulusPair, lo: i64, hi: i64) -> Vec<Multidegree> {
    let mut out = vec![Multidegree::zero(pair.s(), pair.t())];
    for j in 0..pair.s() {
        out = out
            .into_iter()
            .flat_map(|d| {
                (lo..=hi).map(move |v| {
                    let mut next = d.clone();
                    next.dx[j] = v;
                    next
                })
            })
            .collect();
    }
    let y_lo = lo.max(0);
    for l in 0..pair.t() {
        out = out
            .into_iter()
            .flat_map(|d| {
                (y_lo..=hi).map(move |v| {
                    let mut next = d.clone();
                    next.dy[l] = v;
                    next
                })
            })
            .collect();
    }
    out
}

fn emit_reports(reports: &[DimensionReport], format: OutFormat) {
    match format {
        OutFormat::Json => {
            if reports.len() == 1 {
                println!("{}", serde_json::to_string(&reports[0]).expect("serializable"));
            } else {
                println!("{}", serde_json::to_string(reports).expect("serializable"));
            }
        }
        OutFormat::Csv => {
            println!("s,t,r,deg,variant,n,dim");
            for rep in reports {
                let r = join(rep.pair.r());
                let deg = join(&rep.deg.flat());
                for (n, dim) in &rep.dims {
                    println!(
                        "{},{},{},{},{},{},{}",
                        rep.pair.s(),
                        rep.pair.t(),
                        r,
                        deg,
                        rep.variant,
                        n,
                        dim
                    );
                }
            }
        }
    }
}

fn join(values: &[i64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

fn cmd_dims(args: DimsArgs) -> Result<ExitCode, String> {
    let pair = args.pair.build()?;
    let degrees = args.deg.degrees(&pair)?;
    let (class, variant) = if args.no_poles {
        (FormClass::POmega, "PHH")
    } else {
        (FormClass::MOmega, "MHH")
    };
    let mut reports = Vec::new();
    for deg in degrees {
        let mut dims = BTreeMap::new();
        for n in 0..=args.n_max {
            let count = basis_of(&pair, class, n, &deg).map_err(|e| e.to_string())?.len();
            dims.insert(n as i64, count);
        }
        reports.push(DimensionReport {
            pair: pair.clone(),
            deg,
            variant: variant.to_string(),
            dims,
        });
    }
    emit_reports(&reports, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_cohomology(args: CohomologyArgs) -> Result<ExitCode, String> {
    let pair = args.pair.build()?;
    let degrees = args.deg.degrees(&pair)?;
    let reports: Vec<DimensionReport> = degrees
        .into_iter()
        .map(|deg| derham_report(&pair, &deg).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    emit_reports(&reports, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_cyclic(args: CyclicArgs) -> Result<ExitCode, String> {
    let pair = args.pair.build()?;
    if args.n_min > args.n_max {
        return Err(format!("empty degree range {}..{}", args.n_min, args.n_max));
    }
    let degrees = args.deg.degrees(&pair)?;
    let variant = CyclicVariant::from(args.variant);
    let reports: Vec<DimensionReport> = degrees
        .into_iter()
        .map(|deg| {
            cyclic_report(&pair, &deg, variant, args.n_min..=args.n_max, args.bicomplex)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    emit_reports(&reports, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let cfg = SuiteConfig {
        seed: args.seed,
        samples: args.samples,
        max_s: args.max_s,
        max_t: args.max_t,
        max_r: args.max_r,
        max_n: args.max_n,
        exponent_window: args.exponent_window,
        multidegree_window: args.multidegree_window,
    };
    let reports: Vec<SuiteReport> = if args.suite == "all" {
        run_all(&cfg)
    } else {
        let suite: Suite = args.suite.parse().map_err(|e: modhom::verify::VerifyError| e.to_string())?;
        vec![run_suite(suite, &cfg)]
    };
    for rep in &reports {
        eprintln!(
            "suite {}: {} ({} cases, {:.2}s)",
            rep.suite,
            match rep.status {
                modhom::verify::SuiteStatus::Pass => "pass",
                modhom::verify::SuiteStatus::Fail => "FAIL",
                modhom::verify::SuiteStatus::Skipped => "skipped",
            },
            rep.cases,
            rep.elapsed_secs
        );
    }
    println!("{}", serde_json::to_string(&reports).expect("serializable"));
    if reports.iter().all(|r| r.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

#[derive(Serialize)]
struct ProbeReport {
    outcome: ProbeOutcome,
    pole_bound: i64,
    degree: usize,
    deg: Option<Multidegree>,
}

fn cmd_probe(args: ProbeArgs) -> Result<ExitCode, String> {
    let pair = args.pair.build()?;
    let chain = parse_chain(&pair, &args.chain).map_err(|e| e.to_string())?;
    let mut outcome = ProbeOutcome::Inconclusive;
    let mut used_bound = args.pole_bound;
    for bound in 0..=args.pole_bound {
        match hkr_cycle_probe(&chain, bound) {
            Ok(ProbeOutcome::Confirmed) => {
                outcome = ProbeOutcome::Confirmed;
                used_bound = bound;
                break;
            }
            Ok(ProbeOutcome::Inconclusive) => continue,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(1));
            }
        }
    }
    let report = ProbeReport {
        outcome,
        pole_bound: used_bound,
        degree: chain.degree(),
        deg: chain.multidegree(),
    };
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(if outcome == ProbeOutcome::Confirmed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct MonoidReport {
    source: FgAbMonoid,
    target: FgAbMonoid,
    slots: usize,
    invariant_factors: Vec<String>,
    free_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    total: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<Vec<String>>>,
}

fn cmd_monoid(args: MonoidArgs) -> Result<ExitCode, String> {
    let source = FgAbMonoid::parse(&args.source).map_err(|e| e.to_string())?;
    let target = FgAbMonoid::parse(&args.target).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<BigInt>> = parse_rows(&args.matrix)?;
    if rows.len() != target.dim() || rows.iter().any(|r| r.len() != source.dim()) {
        return Err(format!(
            "matrix must be {} rows of {} entries",
            target.dim(),
            source.dim()
        ));
    }
    let mut matrix = IntMatrix::zero(target.dim(), source.dim());
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            matrix.set(i, j, e.clone());
        }
    }
    let map = MonoidMap::new(source, target, matrix).map_err(|e| e.to_string())?;
    let iso = RepletionIso::new(map, args.slots).map_err(|e| e.to_string())?;
    let mut report = MonoidReport {
        source,
        target,
        slots: args.slots,
        invariant_factors: iso
            .quotient_invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect(),
        free_rank: iso.quotient_free_rank(),
        membership: None,
        total: None,
        classes: None,
    };
    if let Some(tuple_text) = &args.tuple {
        let tuple = parse_rows(tuple_text)?;
        if tuple.len() != args.slots || tuple.iter().any(|g| g.len() != target.dim()) {
            return Err(format!(
                "tuple must be {} slots of {} entries",
                args.slots,
                target.dim()
            ));
        }
        report.membership = Some(iso.membership(&tuple));
        let (total, classes) = iso.forward(&tuple);
        report.total = Some(total.iter().map(|e| e.to_string()).collect());
        report.classes = Some(
            classes
                .iter()
                .map(|c| c.iter().map(|e| e.to_string()).collect())
                .collect(),
        );
    }
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn parse_rows(text: &str) -> Result<Vec<Vec<BigInt>>, String> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<BigInt>()
                        .map_err(|_| format!("bad integer `{}`", e.trim()))
                })
                .collect()
        })
        .collect()
}
