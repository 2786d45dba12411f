//! Command-line front end: ingest CSV records, evaluate forecasts, and
//! emit figures and machine-readable reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric or
//! degeneracy error. File outputs are written atomically (write to a
//! temporary sibling, then rename).

use std::ffi::OsString;
use std::fs;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};
use serde_json::json;

use crate::analysis::{self, DEFAULT_SIGN_TOLERANCE};
use crate::data::{complete_cases, parse_csv, CsvFormat, DataError, ForecastRecord};
use crate::decomp;
use crate::figure::{self, FigureKind, FigureSpec};
use crate::murphy;
use crate::reliability;
use crate::roc;
use crate::scoring::{mean_score, ScoringRule};
use crate::sim::{sample_scenario, Scenario, ScenarioSample};

#[derive(Parser)]
#[command(
    name = "triptych",
    version,
    about = "Diagnostics for probability forecasts of binary outcomes",
    long_about = "Evaluate probabilistic classifiers: Murphy curves, reliability \
                  diagrams, ROC curves, score decompositions, MCB-DSC plots, \
                  crossing analysis, and scenario simulation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean scores per forecaster under one or more scoring rules
    Scores(ScoresArgs),
    /// MCB/DSC/UNC decomposition of a mean score per forecaster
    Decompose(DecomposeArgs),
    /// Murphy curves as exact piecewise-linear data or a figure
    Murphy(MurphyArgs),
    /// Reliability diagrams with consistency bands
    Reliability(ReliabilityArgs),
    /// Raw or concave ROC curves with AUC
    Roc(RocArgs),
    /// Three-panel figure: Murphy curve, reliability diagram, ROC curve
    Triptych(TriptychArgs),
    /// Miscalibration-discrimination scatter for many forecasters
    Mcbdsc(McbdscArgs),
    /// Sign-change and dominance report for a pair of forecasters
    Crossings(CrossingsArgs),
    /// Sample an idealized scenario as wide CSV
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV file; `-` or absent reads standard input
    input: Option<PathBuf>,
    /// Restrict to these forecasters (comma-separated; default: all)
    #[arg(long, value_delimiter = ',')]
    forecasters: Vec<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; absent writes to standard output
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct ScoresArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Scoring rules, comma-separated
    #[arg(long, value_delimiter = ',', default_value = "brier,log,misclass")]
    score: Vec<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Scoring rule to decompose
    #[arg(long, default_value = "brier")]
    score: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MurphyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BandArgs {
    /// Consistency band coverage level
    #[arg(long, default_value_t = 0.9)]
    level: f64,
    /// Band resampling replicates; 0 disables the band
    #[arg(long, default_value_t = 1000)]
    resamples: usize,
    /// Seed of the band resampler
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct ReliabilityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    band: BandArgs,
    /// Histogram display bins
    #[arg(long, default_value_t = 10)]
    bins: usize,
    /// Restrict the x axis to the support of the forecast distribution
    #[arg(long, action = ArgAction::SetTrue)]
    support_range: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RocArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Concave curves from re-calibrated forecasts (default)
    #[arg(long, action = ArgAction::SetTrue, conflicts_with = "raw")]
    concave: bool,
    /// Raw curves from the forecasts as issued
    #[arg(long, action = ArgAction::SetTrue)]
    raw: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TriptychArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    band: BandArgs,
    /// Raw ROC curves instead of concave ones
    #[arg(long, action = ArgAction::SetTrue)]
    raw: bool,
    /// Restrict reliability panels to the forecast support
    #[arg(long, action = ArgAction::SetTrue)]
    support_range: bool,
    /// Output directory for triptych.svg and triptych.json
    #[arg(long, short = 'o', default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct McbdscArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Scoring rule behind the decomposition
    #[arg(long, default_value = "brier")]
    score: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CrossingsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// The two forecasters to compare, comma-separated
    #[arg(long, value_delimiter = ',')]
    cols: Vec<String>,
    /// Tolerance for classifying a difference value as zero
    #[arg(long, default_value_t = DEFAULT_SIGN_TOLERANCE)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario A, B, or C
    #[arg(long)]
    scenario: String,
    /// Sample size
    #[arg(long)]
    n: usize,
    /// Seed of the sampler
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; absent writes to standard output
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

/// Error carrying the process exit code.
enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<crate::scoring::ScoreError> for CliError {
    fn from(e: crate::scoring::ScoreError) -> Self {
        match e {
            crate::scoring::ScoreError::UnknownName(_)
            | crate::scoring::ScoreError::InvalidTheta(_)
            | crate::scoring::ScoreError::InvalidBetaParams(..) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numeric(other.to_string()),
        }
    }
}

impl From<roc::RocError> for CliError {
    fn from(e: roc::RocError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<analysis::AnalysisError> for CliError {
    fn from(e: analysis::AnalysisError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<decomp::DecompError> for CliError {
    fn from(e: decomp::DecompError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<reliability::BandError> for CliError {
    fn from(e: reliability::BandError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<crate::sim::SimError> for CliError {
    fn from(e: crate::sim::SimError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Entry point used by the binary: parse, dispatch, map errors to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Scores(args) => run_scores(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Murphy(args) => run_murphy(args),
        Command::Reliability(args) => run_reliability(args),
        Command::Roc(args) => run_roc(args),
        Command::Triptych(args) => run_triptych(args),
        Command::Mcbdsc(args) => run_mcbdsc(args),
        Command::Crossings(args) => run_crossings(args),
        Command::Simulate(args) => run_simulate(args),
    }
}

/// Read the input CSV, auto-detecting the wide or long layout from the
/// header, and restrict to jointly complete cases of the selection.
fn load_records(input: &InputArgs) -> Result<Vec<ForecastRecord>, CliError> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)?,
        _ => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            buffer
        }
    };
    let format = match text.lines().next() {
        Some(header) if header.trim() == "forecaster,forecast,outcome" => CsvFormat::Long,
        _ => CsvFormat::Wide,
    };
    let dataset = parse_csv(text.as_bytes(), format)?;
    let dataset = if input.forecasters.is_empty() {
        dataset
    } else {
        let names: Vec<&str> = input.forecasters.iter().map(String::as_str).collect();
        dataset.select(&names)?
    };
    let dataset = complete_cases(&dataset)?;
    Ok(dataset.records()?)
}

fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(content.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Print to stdout; a closed pipe on the reading side is not an error.
fn print_stdout(content: &str) -> Result<(), CliError> {
    match std::io::stdout().lock().write_all(content.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.into()),
    }
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_atomic(path, content),
        None => print_stdout(content),
    }
}

fn check_format(output: &OutputArgs, allowed: &[&str]) -> Result<(), CliError> {
    if allowed.contains(&output.format.as_str()) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "format {:?} not supported here; expected one of {allowed:?}",
            output.format
        )))
    }
}

fn parse_rules(names: &[String]) -> Result<Vec<ScoringRule>, CliError> {
    names
        .iter()
        .map(|name| name.parse::<ScoringRule>().map_err(CliError::from))
        .collect()
}

fn run_scores(args: ScoresArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "csv"])?;
    let rules = parse_rules(&args.score)?;
    let records = load_records(&args.input)?;

    if args.output.format == "csv" {
        let mut out = String::from("forecaster,score,mean\n");
        for record in &records {
            for &rule in &rules {
                let mean = mean_score(rule, record)?;
                out.push_str(&format!("{},{},{}\n", record.name(), rule, mean));
            }
        }
        return emit(&args.output, &out);
    }

    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|record| {
            let mut scores = serde_json::Map::new();
            for &rule in &rules {
                let mean = mean_score(rule, record)?;
                scores.insert(rule.name(), serde_json::to_value(mean).unwrap());
            }
            Ok(json!({ "forecaster": record.name(), "mean_scores": scores }))
        })
        .collect::<Result<_, CliError>>()?;
    emit(&args.output, &pretty(&json!(rows)))
}

fn run_decompose(args: DecomposeArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "csv"])?;
    let rule: ScoringRule = args.score.parse().map_err(CliError::from)?;
    let records = load_records(&args.input)?;

    let decompositions: Vec<(String, decomp::ScoreDecomposition)> = records
        .iter()
        .map(|record| {
            decomp::corp_decomposition(rule, record)
                .map(|d| (record.name().to_string(), d))
                .map_err(CliError::from)
        })
        .collect::<Result<_, _>>()?;

    if args.output.format == "csv" {
        let mut out = String::from("forecaster,rule,mean,mcb,dsc,unc\n");
        for (name, d) in &decompositions {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                name, d.rule, d.mean, d.mcb, d.dsc, d.unc
            ));
        }
        return emit(&args.output, &out);
    }

    let rows: Vec<serde_json::Value> = decompositions
        .iter()
        .map(|(name, d)| {
            let mut value = serde_json::to_value(d).unwrap();
            value["forecaster"] = json!(name);
            value
        })
        .collect();
    emit(&args.output, &pretty(&json!(rows)))
}

fn run_murphy(args: MurphyArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "svg"])?;
    let records = load_records(&args.input)?;
    let curves: Vec<(String, murphy::MurphyGeometry)> = records
        .iter()
        .map(|record| {
            (
                record.name().to_string(),
                murphy::murphy_curve(record).geometry(),
            )
        })
        .collect();

    if args.output.format == "svg" {
        let names: Vec<String> = curves.iter().map(|(n, _)| n.clone()).collect();
        let spec = FigureSpec::with_palette(FigureKind::Murphy, &names);
        return emit(&args.output, &figure::murphy_svg(&curves, &spec));
    }
    let rows: Vec<serde_json::Value> = curves
        .iter()
        .map(|(name, geometry)| {
            let mut value = serde_json::to_value(geometry).unwrap();
            value["name"] = json!(name);
            value
        })
        .collect();
    emit(&args.output, &pretty(&json!(rows)))
}

fn build_diagrams(
    records: &[ForecastRecord],
    band: &BandArgs,
    bins: usize,
) -> Result<Vec<(String, reliability::ReliabilityDiagram)>, CliError> {
    records
        .iter()
        .map(|record| {
            let band = if band.resamples > 0 {
                Some(reliability::consistency_band(
                    record.forecasts(),
                    band.level,
                    band.resamples,
                    band.seed,
                )?)
            } else {
                None
            };
            Ok((
                record.name().to_string(),
                reliability::reliability_curve_with(record, bins, band),
            ))
        })
        .collect()
}

fn run_reliability(args: ReliabilityArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "svg"])?;
    let records = load_records(&args.input)?;
    let diagrams = build_diagrams(&records, &args.band, args.bins)?;

    if args.output.format == "svg" {
        let names: Vec<String> = diagrams.iter().map(|(n, _)| n.clone()).collect();
        let spec = FigureSpec::with_palette(FigureKind::Reliability, &names);
        return emit(
            &args.output,
            &figure::reliability_svg(&diagrams, &spec, args.support_range),
        );
    }
    let rows: Vec<serde_json::Value> = diagrams
        .iter()
        .map(|(name, diagram)| {
            let mut value = serde_json::to_value(diagram).unwrap();
            value["name"] = json!(name);
            value
        })
        .collect();
    emit(&args.output, &pretty(&json!(rows)))
}

fn build_roc_curves(
    records: &[ForecastRecord],
    raw: bool,
) -> Result<Vec<(String, roc::RocCurve)>, CliError> {
    records
        .iter()
        .map(|record| {
            let curve = if raw {
                roc::roc_curve(record)?
            } else {
                roc::concave_roc(record)?
            };
            Ok((record.name().to_string(), curve))
        })
        .collect()
}

fn run_roc(args: RocArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "svg"])?;
    let records = load_records(&args.input)?;
    let curves = build_roc_curves(&records, args.raw)?;

    if args.output.format == "svg" {
        let names: Vec<String> = curves.iter().map(|(n, _)| n.clone()).collect();
        let spec = FigureSpec::with_palette(FigureKind::Roc, &names);
        return emit(&args.output, &figure::roc_svg(&curves, &spec));
    }
    let rows: Vec<serde_json::Value> = curves
        .iter()
        .map(|(name, curve)| {
            let mut value = serde_json::to_value(curve).unwrap();
            value["name"] = json!(name);
            value
        })
        .collect();
    emit(&args.output, &pretty(&json!(rows)))
}

fn run_triptych(args: TriptychArgs) -> Result<(), CliError> {
    let records = load_records(&args.input)?;
    let curves: Vec<(String, murphy::MurphyGeometry)> = records
        .iter()
        .map(|record| {
            (
                record.name().to_string(),
                murphy::murphy_curve(record).geometry(),
            )
        })
        .collect();
    let diagrams = build_diagrams(&records, &args.band, 10)?;
    let roc_curves = build_roc_curves(&records, args.raw)?;

    let names: Vec<String> = records.iter().map(|r| r.name().to_string()).collect();
    let spec = FigureSpec::with_palette(FigureKind::Triptych, &names);
    let svg = figure::triptych_svg(&curves, &diagrams, &roc_curves, &spec, args.support_range);

    let model = json!({
        "forecasters": names,
        "murphy": curves
            .iter()
            .map(|(name, geometry)| {
                let mut value = serde_json::to_value(geometry).unwrap();
                value["name"] = json!(name);
                value
            })
            .collect::<Vec<_>>(),
        "reliability": diagrams
            .iter()
            .map(|(name, diagram)| {
                let mut value = serde_json::to_value(diagram).unwrap();
                value["name"] = json!(name);
                value
            })
            .collect::<Vec<_>>(),
        "roc": roc_curves
            .iter()
            .map(|(name, curve)| {
                let mut value = serde_json::to_value(curve).unwrap();
                value["name"] = json!(name);
                value
            })
            .collect::<Vec<_>>(),
    });

    fs::create_dir_all(&args.out)?;
    write_atomic(&args.out.join("triptych.svg"), &svg)?;
    write_atomic(&args.out.join("triptych.json"), &pretty(&model))?;
    Ok(())
}

fn run_mcbdsc(args: McbdscArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json", "svg"])?;
    let rule: ScoringRule = args.score.parse().map_err(CliError::from)?;
    let records = load_records(&args.input)?;
    let decompositions: Vec<(String, decomp::ScoreDecomposition)> = records
        .iter()
        .map(|record| {
            decomp::corp_decomposition(rule, record)
                .map(|d| (record.name().to_string(), d))
                .map_err(CliError::from)
        })
        .collect::<Result<_, _>>()?;
    let plot = decomp::mcb_dsc_plot(&decompositions)?;

    if args.output.format == "svg" {
        let spec = FigureSpec::with_palette(FigureKind::McbDsc, &[]);
        return emit(&args.output, &figure::mcbdsc_svg(&plot, &spec));
    }
    emit(&args.output, &pretty(&serde_json::to_value(&plot).unwrap()))
}

fn run_crossings(args: CrossingsArgs) -> Result<(), CliError> {
    check_format(&args.output, &["json"])?;
    if args.cols.len() != 2 {
        return Err(CliError::Usage(format!(
            "--cols needs exactly two forecasters, got {}",
            args.cols.len()
        )));
    }
    let mut input = args.input;
    input.forecasters = args.cols.clone();
    let records = load_records(&input)?;
    let report = analysis::crossing_report(&records[0], &records[1], args.tol)?;
    let mut value = serde_json::to_value(report).unwrap();
    value["first"] = json!(records[0].name());
    value["second"] = json!(records[1].name());
    emit(&args.output, &pretty(&value))
}

/// Format a sample as wide CSV consumable by the parser; forecasts use
/// shortest round-trip decimal notation.
fn sample_to_csv(sample: &ScenarioSample) -> String {
    let mut out = String::from("y");
    for (name, _) in &sample.forecasts {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for row in 0..sample.len() {
        out.push(if sample.outcomes[row] { '1' } else { '0' });
        for (_, values) in &sample.forecasts {
            out.push(',');
            out.push_str(&format!("{}", values[row]));
        }
        out.push('\n');
    }
    out
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let scenario: Scenario = args.scenario.parse().map_err(CliError::from)?;
    let sample = sample_scenario(scenario, args.n, args.seed)?;
    let csv = sample_to_csv(&sample);
    match &args.out {
        Some(path) => write_atomic(path, &csv),
        None => print_stdout(&csv),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}
