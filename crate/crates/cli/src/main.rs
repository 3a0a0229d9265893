//! `perfcode` command-line front end. Every command prints one JSON report
//! envelope; the exit code depends only on the report's status.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perfcode::components::ComponentSpec;
use perfcode::nr::{canonical_alignment, min_pairwise_distance, transported_components};
use perfcode::perfect::{nonlinearity_witness, verify_antipodal_sampled};
use perfcode::sts::{find_triple_partitions, PartitionConstraints};
use perfcode::theorem::hamming_triple_system;
use perfcode::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "perfcode", version, about = "Perfect codes, switching and Preparata-like subcodes")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical Hamming code H_n.
    Hamming(HammingArgs),
    /// Vasil'ev code of length 2k+1.
    Vasilev(VasilevArgs),
    /// Switched code C(beta) of length 2k+1.
    Switch(SwitchArgs),
    /// Radius-1 ball partition check.
    VerifyPerfect(VerifyPerfectArgs),
    /// Steiner triple system of codeword neighbours at distance 3.
    Sts(StsArgs),
    /// Partitions of the point set into triples of a triple system.
    Partition(PartitionArgs),
    /// Nordstrom-Robinson code from the octacode; --out receives the
    /// codewords one per line and the report goes to stdout.
    Nr,
    /// Hamming code enclosing the Nordstrom-Robinson code.
    Enclosing(EnclosingArgs),
    /// Trace of the Nordstrom-Robinson code on the linear components.
    TraceCheck,
    /// No Preparata-like subcode in a switched code.
    CheckTheorem(CheckTheoremArgs),
}

#[derive(Args, Debug, Serialize)]
struct SamplingArgs {
    /// Sample this many random words instead of a full scan.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SamplingArgs {
    fn mode(&self) -> VerifyMode {
        match self.samples {
            Some(samples) => VerifyMode::Sampled { samples, seed: self.seed },
            None => VerifyMode::Exhaustive,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct HammingArgs {
    #[arg(long)]
    n: usize,
    /// Write the parity-check matrix as rows of 0/1.
    #[arg(long)]
    parity_check_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct VasilevArgs {
    #[arg(long)]
    k: Option<usize>,
    /// JSON file {"k": .., "lambda": {"<word>": 0|1}}.
    #[arg(long)]
    lambda: Option<PathBuf>,
    /// Set lambda to 1 at this codeword of H_k (repeatable).
    #[arg(long = "one-at", conflicts_with = "lambda", requires = "k")]
    one_at: Vec<String>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug, Serialize)]
struct ComponentArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    beta: String,
}

impl ComponentArgs {
    fn spec(&self) -> Result<ComponentSpec> {
        Ok(ComponentSpec::new(self.k, parse_word(&self.beta)?)?)
    }
}

#[derive(Args, Debug, Serialize)]
struct SwitchArgs {
    #[command(flatten)]
    component: ComponentArgs,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug, Serialize)]
struct VerifyPerfectArgs {
    /// Canonical Hamming code of this length.
    #[arg(long, group = "source")]
    hamming: Option<usize>,
    /// Vasil'ev lambda JSON file.
    #[arg(long, group = "source")]
    vasilev: Option<PathBuf>,
    /// Newline-separated codewords.
    #[arg(long, group = "source")]
    words: Option<PathBuf>,
    /// Switched code C(beta); needs --k and --beta.
    #[arg(long, group = "source", requires_all = ["k", "beta"])]
    switch: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    beta: Option<String>,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug, Serialize)]
struct StsArgs {
    /// Canonical Hamming code of this length.
    #[arg(long, group = "source")]
    hamming: Option<usize>,
    /// Newline-separated codewords.
    #[arg(long, group = "source")]
    words: Option<PathBuf>,
    /// Centre codeword; the zero word by default.
    #[arg(long)]
    at: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct PartitionArgs {
    /// Use the triple system of the canonical Hamming code of this length.
    #[arg(long, group = "source")]
    hamming: Option<usize>,
    /// Triple system JSON file {"n": .., "triples": [[a, b, c], ..]}.
    #[arg(long, group = "source")]
    sts: Option<PathBuf>,
    /// Triple that every partition must contain, e.g. 1,2,3.
    #[arg(long, value_parser = parse_triple)]
    require: Option<[usize; 3]>,
    /// Points left out of the partition.
    #[arg(long, value_delimiter = ',')]
    exclude: Vec<usize>,
    #[arg(long)]
    max_solutions: Option<usize>,
    /// Search-tree node budget.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct EnclosingArgs {
    #[arg(long)]
    parity_check_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModeArg {
    Algebraic,
    Exhaustive,
}

#[derive(Args, Debug, Serialize)]
struct CheckTheoremArgs {
    #[arg(long)]
    t: usize,
    /// Weight-3 codeword of H_k, k = 2^(2t-1) - 1.
    #[arg(long)]
    beta: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Algebraic)]
    mode: ModeArg,
    /// Node budget for each exact-cover search.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Serialize)]
struct ReportEnvelope {
    command: &'static str,
    parameters: Value,
    status: Status,
    result: Value,
    timing: Option<Value>,
    version: &'static str,
}

struct Outcome {
    status: Status,
    result: Value,
}

fn parse_word(text: &str) -> Result<Word> {
    text.parse().with_context(|| format!("invalid word {text:?}"))
}

fn parse_triple(text: &str) -> std::result::Result<[usize; 3], String> {
    let points: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    points.try_into().map_err(|_| "expected three comma-separated points".to_owned())
}

fn read_words(path: &Path) -> Result<ExplicitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let words: Vec<Word> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_word)
        .collect::<Result<_>>()?;
    let Some(first) = words.first() else {
        bail!("{} holds no codewords", path.display());
    };
    Ok(ExplicitCode::new(first.len(), words)?)
}

fn read_vasilev(path: &Path) -> Result<VasilevSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(VasilevSpec::from_json(&text)?)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Linearity when the code is small enough to enumerate, else null.
fn linearity(oracle: &dyn CodeOracle) -> Value {
    match nonlinearity_witness(oracle) {
        Ok(None) => json!({ "linear": true, "witness": null }),
        Ok(Some((a, b))) => json!({ "linear": false, "witness": [a, b, a + b] }),
        Err(_) => json!({ "linear": null, "witness": null }),
    }
}

fn antipodal(oracle: &dyn CodeOracle, sampling: &SamplingArgs) -> Result<bool> {
    match sampling.samples {
        Some(samples) => Ok(verify_antipodal_sampled(oracle, samples, sampling.seed)),
        None => Ok(verify_antipodal(oracle)?),
    }
}

fn hamming(args: &HammingArgs) -> Result<Outcome> {
    let h = canonical_hamming(args.n)?;
    let pc = h.parity_check();
    if let Some(path) = &args.parity_check_out {
        write_text(path, &pc.to_text())?;
    }
    let rows: Vec<String> = pc.to_text().lines().map(str::to_owned).collect();
    Ok(Outcome {
        status: Status::Pass,
        result: json!({
            "n": args.n,
            "dimension": h.dimension(),
            "parity_check": rows,
            "weight3_codewords": h.weight3_codewords(),
        }),
    })
}

fn vasilev_cmd(args: &VasilevArgs) -> Result<Outcome> {
    let mut spec = match (&args.lambda, args.k) {
        (Some(path), k) => {
            let spec = read_vasilev(path)?;
            if k.is_some_and(|k| k != spec.k()) {
                bail!("--k {} disagrees with k = {} in {}", k.unwrap(), spec.k(), path.display());
            }
            spec
        }
        (None, Some(k)) => VasilevSpec::zero(k)?,
        (None, None) => bail!("either --k or --lambda is required"),
    };
    if !args.one_at.is_empty() {
        let ones = args.one_at.iter().map(|w| parse_word(w)).collect::<Result<Vec<_>>>()?;
        spec = VasilevSpec::new(spec.k(), ones.into_iter().map(|w| (w, 1)))?;
    }
    let code = vasilev(spec.clone());
    let report = verify_perfect(&code, args.sampling.mode())?;
    let anti = antipodal(&code, &args.sampling)?;
    Ok(Outcome {
        status: Status::of(report.is_perfect),
        result: json!({
            "spec": serde_json::from_str::<Value>(&spec.to_json())?,
            "n": code.len(),
            "perfectness": report,
            "linearity": linearity(&code),
            "antipodal": anti,
        }),
    })
}

fn switch_cmd(args: &SwitchArgs) -> Result<Outcome> {
    let spec = args.component.spec()?;
    let code = switched_code(spec);
    let report = verify_perfect(&code, args.sampling.mode())?;
    // any word of R(β) + e^n lies outside H_n
    let probe = spec.element(0).flip(spec.coordinate())?;
    let hamming = canonical_hamming(spec.n())?;
    let differs = code.contains(&probe) && !hamming.contains(&probe);
    Ok(Outcome {
        status: Status::of(report.is_perfect && differs),
        result: json!({
            "k": spec.k(),
            "beta": spec.beta(),
            "n": spec.n(),
            "switched_coordinate": spec.coordinate(),
            "perfectness": report,
            "differs_from_hamming": differs,
            "witness_outside_hamming": probe,
            "linearity": linearity(&code),
        }),
    })
}

fn verify_perfect_cmd(args: &VerifyPerfectArgs) -> Result<Outcome> {
    let mode = args.sampling.mode();
    let report = if let Some(n) = args.hamming {
        verify_perfect(&canonical_hamming(n)?, mode)?
    } else if let Some(path) = &args.vasilev {
        verify_perfect(&vasilev(read_vasilev(path)?), mode)?
    } else if let Some(path) = &args.words {
        verify_perfect(&read_words(path)?, mode)?
    } else if args.switch {
        let beta = parse_word(args.beta.as_deref().expect("required by clap"))?;
        let spec = ComponentSpec::new(args.k.expect("required by clap"), beta)?;
        verify_perfect(&switched_code(spec), mode)?
    } else {
        bail!("one of --hamming, --vasilev, --words or --switch is required");
    };
    Ok(Outcome {
        status: Status::of(report.is_perfect),
        result: to_value(report),
    })
}

fn sts_cmd(args: &StsArgs) -> Result<Outcome> {
    let code: Box<dyn CodeOracle> = if let Some(n) = args.hamming {
        Box::new(canonical_hamming(n)?)
    } else if let Some(path) = &args.words {
        Box::new(read_words(path)?)
    } else {
        bail!("one of --hamming or --words is required");
    };
    let at = match &args.at {
        Some(w) => parse_word(w)?,
        None => Word::zero(code.len())?,
    };
    let ts = neighborhood_sts(code.as_ref(), &at)?;
    let valid = validate_sts(&ts);
    Ok(Outcome {
        status: Status::of(valid),
        result: json!({ "at": at, "valid": valid, "size": ts.len(), "system": ts }),
    })
}

fn partition_cmd(args: &PartitionArgs) -> Result<Outcome> {
    let ts = if let Some(n) = args.hamming {
        hamming_triple_system(n)?
    } else if let Some(path) = &args.sts {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    } else {
        bail!("one of --hamming or --sts is required");
    };
    let constraints = PartitionConstraints {
        required_triple: args.require,
        excluded_points: args.exclude.iter().copied().collect(),
    };
    let search = find_triple_partitions(&ts, &constraints, args.max_solutions, args.budget)?;
    let status = match search.status {
        SearchStatus::Complete => Status::Pass,
        SearchStatus::BudgetExhausted => Status::Inconclusive,
    };
    Ok(Outcome {
        status,
        result: json!({
            "count": search.partitions.len(),
            "search": search,
        }),
    })
}

fn nr_cmd(dump: Option<&Path>) -> Result<Outcome> {
    let nr = nordstrom_robinson()?;
    if let Some(path) = dump {
        write_text(path, &nr.to_text())?;
    }
    let d = min_pairwise_distance(nr.words());
    let d_ext = min_pairwise_distance(nr.extended());
    let params = verify_preparata_parameters(nr.words(), 15);
    Ok(Outcome {
        status: Status::of(params && d == Some(5) && d_ext == Some(6)),
        result: json!({
            "size": nr.words().len(),
            "min_distance": d,
            "extended_min_distance": d_ext,
            "preparata_parameters": params,
            "origin_included": nr.origin_included(),
            "octacode_generator": nr::OCTACODE_GENERATOR,
        }),
    })
}

fn enclosing_cmd(args: &EnclosingArgs) -> Result<Outcome> {
    let nr = nordstrom_robinson()?;
    let h = enclosing_hamming(&nr)?;
    if let Some(path) = &args.parity_check_out {
        write_text(path, &h.parity_check().to_text())?;
    }
    let words = h.enumerate_codewords()?;
    let d = h.min_distance()?;
    let perfect = verify_perfect(&h, VerifyMode::Exhaustive)?.is_perfect;
    let contains_nr = nr.words().iter().all(|w| h.contains(w).unwrap_or(false));
    let outside: Vec<&Word> = words.iter().filter(|w| !nr.contains(w)).collect();
    let mut failures = Vec::new();
    for alpha in &outside {
        if !preparata_partition_condition(&h, nr.words(), alpha)?.holds {
            failures.push(**alpha);
        }
    }
    let map = canonical_alignment(&h)?;
    let rows: Vec<String> = h.parity_check().to_text().lines().map(str::to_owned).collect();
    Ok(Outcome {
        status: Status::of(
            words.len() == 2048 && d == 3 && perfect && contains_nr && failures.is_empty(),
        ),
        result: json!({
            "size": words.len(),
            "min_distance": d,
            "is_perfect": perfect,
            "contains_nr": contains_nr,
            "parity_check": rows,
            "coordinate_map_to_canonical": map.as_slice(),
            "partition_condition": {
                "checked": outside.len(),
                "holding": outside.len() - failures.len(),
                "failures": failures,
            },
        }),
    })
}

fn trace_check_cmd() -> Result<Outcome> {
    let nr = nordstrom_robinson()?;
    let h = enclosing_hamming(&nr)?;
    let reports = transported_components(&h)?
        .iter()
        .map(|r| component_trace_check(&nr, r, &h))
        .collect::<perfcode::Result<Vec<_>>>()?;
    let all = reports.iter().all(|r| r.is_perfect_in_graph);
    Ok(Outcome {
        status: Status::of(all && reports.len() == 16),
        result: json!({ "all_perfect": all, "components": reports }),
    })
}

fn check_theorem_cmd(args: &CheckTheoremArgs) -> Result<Outcome> {
    let beta = parse_word(&args.beta)?;
    let cert = match args.mode {
        ModeArg::Algebraic => verify_theorem_algebraic(args.t, &beta)?,
        ModeArg::Exhaustive => verify_theorem_exhaustive(args.t, &beta, args.budget)?,
    };
    let status = match cert.overall_status {
        OverallStatus::Pass => Status::Pass,
        OverallStatus::Fail => Status::Fail,
        OverallStatus::Inconclusive => Status::Inconclusive,
    };
    Ok(Outcome { status, result: to_value(cert) })
}

fn dispatch(cli: &Cli) -> Result<(&'static str, Value, Outcome)> {
    Ok(match &cli.command {
        Command::Hamming(a) => ("hamming", to_value(a), hamming(a)?),
        Command::Vasilev(a) => ("vasilev", to_value(a), vasilev_cmd(a)?),
        Command::Switch(a) => ("switch", to_value(a), switch_cmd(a)?),
        Command::VerifyPerfect(a) => ("verify-perfect", to_value(a), verify_perfect_cmd(a)?),
        Command::Sts(a) => ("sts", to_value(a), sts_cmd(a)?),
        Command::Partition(a) => ("partition", to_value(a), partition_cmd(a)?),
        Command::Nr => ("nr", json!({ "out": cli.out }), nr_cmd(cli.out.as_deref())?),
        Command::Enclosing(a) => ("enclosing", to_value(a), enclosing_cmd(a)?),
        Command::TraceCheck => ("trace-check", json!({}), trace_check_cmd()?),
        Command::CheckTheorem(a) => ("check-theorem", to_value(a), check_theorem_cmd(a)?),
    })
}

fn run(cli: &Cli) -> Result<Status> {
    let start = Instant::now();
    let (command, parameters, outcome) = dispatch(cli)?;
    let timing = cli
        .timing
        .then(|| json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 }));
    let envelope = ReportEnvelope {
        command,
        parameters,
        status: outcome.status,
        result: outcome.result,
        timing,
        version: env!("CARGO_PKG_VERSION"),
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    // `nr` uses --out for its codeword dump
    match (&cli.out, &cli.command) {
        (Some(path), c) if !matches!(c, Command::Nr) => write_text(path, &text)?,
        _ => print!("{text}"),
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
