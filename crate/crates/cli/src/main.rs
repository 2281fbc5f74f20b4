use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use tableau_descents::characters::{character_via_descent_weights, normalized_character};
use tableau_descents::{
    count_syt, enumerate_syt, hecke_exponents, maj_generating_function, mn_character,
    moment_report, run_concentration_experiment, run_oracle_suite, sample_statistics,
    sample_tableaux, ConcentrationConfig, CycleType, DescentFunction, Error, GrowthWitness,
    Partition, RandomSource, DEFAULT_ENUMERATION_CAP,
};

/// Descent statistics of standard Young tableaux.
#[derive(Parser, Debug, Serialize)]
#[command(name = "sytstat", version)]
struct Cli {
    /// Largest number of tableaux any enumeration may visit.
    #[arg(long, global = true, env = "SYTSTAT_CAP", default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,

    /// Wrap the JSON result in {command, version, input, result, timing_ms}.
    #[arg(long, global = true)]
    envelope: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Number of standard tableaux of a shape.
    Count(ShapeArg),
    /// Every standard tableau of a shape.
    Enumerate(EnumerateArgs),
    /// Generating function of maj over the tableaux of a shape.
    Genfun(GenfunArgs),
    /// Irreducible character value chi^shape(mu).
    Char(CharArgs),
    /// Exact expectation and variance of a descent statistic.
    Moments(MomentsArgs),
    /// Statistics of uniformly sampled tableaux.
    Sample(SampleArgs),
    /// Monte Carlo concentration experiment.
    Concentrate(ConcentrateArgs),
    /// Hecke algebra eigenvalue exponents.
    Hecke(HeckeArgs),
    /// Cross-check the closed forms against enumeration.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct ShapeArg {
    /// Comma-separated weakly decreasing parts, e.g. 5,4,2,1.
    #[arg(long)]
    shape: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableauFormat {
    Json,
    Text,
}

#[derive(Args, Debug, Serialize)]
struct EnumerateArgs {
    #[command(flatten)]
    shape: ShapeArg,
    /// json: one tableau per line; text: rows per line, blank line between tableaux.
    #[arg(long, value_enum, default_value_t = TableauFormat::Json)]
    format: TableauFormat,
}

#[derive(Args, Debug, Serialize)]
struct GenfunArgs {
    #[command(flatten)]
    shape: ShapeArg,
    #[arg(long, value_enum, default_value_t = TableauFormat::Json)]
    format: TableauFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CharMethod {
    Mn,
    DescentWeights,
}

#[derive(Args, Debug, Serialize)]
struct CharArgs {
    #[command(flatten)]
    shape: ShapeArg,
    /// Cycle type, comma-separated.
    #[arg(long)]
    mu: String,
    #[arg(long, value_enum, default_value_t = CharMethod::Mn)]
    method: CharMethod,
}

#[derive(Args, Debug, Serialize)]
struct StatArg {
    /// des, maj, power:ALPHA or table:FILE.
    #[arg(long, default_value = "des")]
    stat: String,
}

#[derive(Args, Debug, Serialize)]
struct MomentsArgs {
    #[command(flatten)]
    shape: ShapeArg,
    #[command(flatten)]
    stat: StatArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SampleFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
struct SeedArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    #[command(flatten)]
    shape: ShapeArg,
    #[arg(long, visible_alias = "samples")]
    count: usize,
    #[command(flatten)]
    seeds: SeedArgs,
    #[command(flatten)]
    stat: StatArg,
    #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
    format: SampleFormat,
    /// Print the sampled tableaux as JSON lines instead of statistic values.
    #[arg(long)]
    emit_tableaux: bool,
}

#[derive(Args, Debug, Serialize)]
struct ConcentrateArgs {
    #[command(flatten)]
    shape: ShapeArg,
    #[arg(long)]
    samples: usize,
    #[command(flatten)]
    seeds: SeedArgs,
    #[command(flatten)]
    stat: StatArg,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Row bound: the first row must not exceed delta * n.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Relative deviation; defaults to n^(-1/2 + epsilon).
    #[arg(long)]
    t: Option<f64>,
    /// Growth witness C1,C2,ALPHA with C1 i^ALPHA <= f(i) <= C2 i^ALPHA.
    #[arg(long)]
    witness: Option<String>,
    /// Also write the sampled values to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct HeckeArgs {
    #[command(flatten)]
    shape: ShapeArg,
    /// Include the multiset of maj values mod n.
    #[arg(long)]
    omega: bool,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    max_n: usize,
}

/// Failure classes, mapped to the process exit code.
enum Failure {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(format!("serialization: {e}"))
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// What a command produced: one JSON document, or a line stream.
enum Output {
    Json(String),
    Lines(String),
}

fn shape(arg: &ShapeArg) -> CmdResult<Partition> {
    Ok(arg.shape.parse::<Partition>()?)
}

fn stat(arg: &StatArg) -> CmdResult<DescentFunction> {
    match arg.stat.strip_prefix("table:") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("reading {path}: {e}")))?;
            Ok(DescentFunction::parse_table(&text)?)
        }
        None => Ok(arg.stat.parse()?),
    }
}

fn json<T: Serialize>(value: &T) -> CmdResult<Output> {
    Ok(Output::Json(serde_json::to_string(value)?))
}

fn run(cli: &Cli) -> CmdResult<Output> {
    match &cli.command {
        Command::Count(a) => {
            let n = count_syt(&shape(a)?)?;
            json(&serde_json::json!({ "count": n.to_string() }))
        }
        Command::Enumerate(a) => {
            let lambda = shape(&a.shape)?;
            let mut out = String::new();
            for (k, t) in enumerate_syt(&lambda, cli.cap)?.enumerate() {
                match a.format {
                    TableauFormat::Json => {
                        out.push_str(&serde_json::to_string(&t)?);
                        out.push('\n');
                    }
                    TableauFormat::Text => {
                        if k > 0 {
                            out.push('\n');
                        }
                        writeln!(out, "{t}").expect("writing to a String");
                    }
                }
            }
            Ok(Output::Lines(out))
        }
        Command::Genfun(a) => {
            let g = maj_generating_function(&shape(&a.shape)?)?;
            match a.format {
                TableauFormat::Json => json(&g),
                TableauFormat::Text => Ok(Output::Lines(format!("{g}\n"))),
            }
        }
        Command::Char(a) => {
            let lambda = shape(&a.shape)?;
            let mu = CycleType::new(a.mu.parse::<Partition>()?);
            let chi = match a.method {
                CharMethod::Mn => mn_character(&lambda, &mu)?,
                CharMethod::DescentWeights => character_via_descent_weights(&lambda, &mu, cli.cap)?,
            };
            let normalized = normalized_character(&lambda, &mu)?;
            // chi may exceed 64 bits, so it is written as a raw JSON number
            Ok(Output::Json(format!(
                "{{\"chi\":{chi},\"normalized\":\"{normalized}\"}}"
            )))
        }
        Command::Moments(a) => json(&moment_report(&shape(&a.shape)?, &stat(&a.stat)?)?),
        Command::Sample(a) => {
            let lambda = shape(&a.shape)?;
            let f = stat(&a.stat)?;
            let src = RandomSource::new(a.seeds.seed, a.seeds.stream);
            if a.emit_tableaux {
                if a.count == 0 {
                    return Err(Failure::Domain("sample count must be >= 1".into()));
                }
                let mut out = String::new();
                for t in sample_tableaux(&lambda, a.count, &src, a.seeds.workers)? {
                    out.push_str(&serde_json::to_string(&t)?);
                    out.push('\n');
                }
                return Ok(Output::Lines(out));
            }
            let values = sample_statistics(&lambda, &f, a.count, &src, a.seeds.workers)?;
            match a.format {
                SampleFormat::Csv => Ok(Output::Lines(csv_lines(&values))),
                SampleFormat::Json => json(&serde_json::json!({
                    "shape": lambda,
                    "stat": f.label(),
                    "seed": a.seeds.seed,
                    "stream": a.seeds.stream,
                    "values": values,
                })),
            }
        }
        Command::Concentrate(a) => {
            let lambda = shape(&a.shape)?;
            let f = stat(&a.stat)?;
            let mut cfg = ConcentrationConfig::new(a.delta, a.epsilon, a.samples, a.seeds.seed)?;
            cfg.stream = a.seeds.stream;
            cfg.workers = a.seeds.workers;
            cfg.t = a.t;
            cfg.witness = a.witness.as_deref().map(parse_witness).transpose()?;
            let report = run_concentration_experiment(&cfg, &lambda, &f)?;
            if let Some(path) = &a.csv {
                std::fs::write(path, format!("value\n{}", csv_lines(&report.samples)))?;
            }
            json(&report)
        }
        Command::Hecke(a) => json(&hecke_exponents(&shape(&a.shape)?, a.omega, cli.cap)?),
        Command::Verify(a) => {
            let report = run_oracle_suite(a.max_n)?;
            if !report.passed {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| c.name)
                    .collect();
                eprintln!("sytstat: failed checks: {}", failed.join(", "));
                print_payload(cli, Output::Json(serde_json::to_string(&report)?), 0.0)?;
                return Err(Failure::Internal("oracle suite failed".into()));
            }
            json(&report)
        }
    }
}

fn parse_witness(s: &str) -> CmdResult<GrowthWitness> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("witness {s:?} is not C1,C2,ALPHA")))?;
    match parts[..] {
        [c1, c2, alpha] => Ok(GrowthWitness::new(c1, c2, alpha)?),
        _ => Err(Failure::Usage(format!("witness {s:?} is not C1,C2,ALPHA"))),
    }
}

fn csv_lines(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 4);
    for v in values {
        writeln!(out, "{v}").expect("writing to a String");
    }
    out
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count(_) => "count",
        Command::Enumerate(_) => "enumerate",
        Command::Genfun(_) => "genfun",
        Command::Char(_) => "char",
        Command::Moments(_) => "moments",
        Command::Sample(_) => "sample",
        Command::Concentrate(_) => "concentrate",
        Command::Hecke(_) => "hecke",
        Command::Verify(_) => "verify",
    }
}

#[derive(Serialize)]
struct OutputEnvelope<'a> {
    command: &'static str,
    version: &'static str,
    input: &'a Cli,
    result: &'a RawValue,
    timing_ms: f64,
}

fn print_payload(cli: &Cli, output: Output, timing_ms: f64) -> CmdResult<()> {
    let text = match output {
        Output::Json(body) if cli.envelope => {
            let raw = RawValue::from_string(body)?;
            let env = OutputEnvelope {
                command: command_name(&cli.command),
                version: env!("CARGO_PKG_VERSION"),
                input: cli,
                result: &raw,
                timing_ms,
            };
            serde_json::to_string(&env)? + "\n"
        }
        Output::Json(body) => body + "\n",
        Output::Lines(_) if cli.envelope => {
            return Err(Failure::Usage(
                "--envelope needs a single JSON result; this output is a line stream".into(),
            ))
        }
        Output::Lines(body) => body,
    };
    let mut out = BufWriter::new(io::stdout().lock());
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = run(&cli)
        .and_then(|out| print_payload(&cli, out, start.elapsed().as_secs_f64() * 1000.0));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sytstat: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
