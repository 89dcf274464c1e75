//! The `tieless` command line.
//!
//! Settings resolve in the order: command-line flag, then the JSON config file
//! (`--config` or `TIELESS_CONFIG`), then built-in defaults. Exit status is 0
//! on success, 1 when a ranking fails validation and 2 on usage or input
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dfg::{
    build_colored_dfg, emit_dot, format_duration, split_from_ranking, split_top_k_median,
    ColoredDfg, VariantSequence,
};
use crate::error::{Error, Result};
use crate::graphs::{
    build_component_dag, build_directed_graph, build_incomparability_graph, compute_depths,
    connected_components, sparsify,
};
use crate::io;
use crate::model::{
    box_summary, build_comparison_matrix, ComparisonMatrix, Dataset, QuantileLimits,
};
use crate::rankers::{rank_with, validate_partial_ranking, Method, RankingFile};
use crate::reliability::{quantile_sweep, reliability_report, QuantileSweep};
use crate::synth::{generate, SynthSpec};

#[derive(Debug, Parser)]
#[command(name = "tieless", version, about = "Rank noisy measurements with ties")]
pub struct Cli {
    /// JSON file with default settings.
    #[arg(long, global = true, env = "TIELESS_CONFIG")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank the objects of one input with one methodology.
    Rank(RankArgs),
    /// Rank at several quantile limits and score rank reliability.
    Sweep(SweepArgs),
    /// Colour the directly-follows graph of a fast/slow split.
    Dfg(DfgArgs),
    /// Check a ranking file against an input.
    Validate(ValidateArgs),
    /// Draw normally distributed measurements.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// `id,value` rows.
    Csv,
    /// `{"objects": [{"id", "values"}]}`.
    Json,
    /// `{"ids": [...], "better": [[a, b], ...]}`.
    Edges,
    /// `case,activity,timestamp` rows; variants become the objects.
    Eventlog,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Defaults to csv for `.csv` files and json otherwise.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Quantile limits `L,U` of the comparison intervals.
    #[arg(long, value_name = "L,U")]
    pub limits: Option<QuantileLimits>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub method: Option<Method>,
    /// Ranking JSON; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Writes the graphs G, H, U and G' to one DOT file.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Writes per-object box-plot statistics as JSON.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long)]
    pub method: Option<Method>,
    /// A single limit to sweep over.
    #[arg(long, value_name = "L,U", conflicts_with_all = ["sweep", "sweep_file"])]
    pub limits: Option<QuantileLimits>,
    /// Limits separated by `;`, e.g. "25,75;30,70".
    #[arg(long, value_name = "L1,U1;L2,U2", conflicts_with = "sweep_file")]
    pub sweep: Option<String>,
    /// JSON array of `[L, U]` pairs.
    #[arg(long)]
    pub sweep_file: Option<PathBuf>,
    /// Report JSON; without it a table is printed instead.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DfgArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub method: Option<Method>,
    /// Ranks whose objects form the green class, e.g. "0,1".
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub green_ranks: Option<Vec<usize>>,
    /// Ranks whose objects form the red class; defaults to every other rank.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub red_ranks: Option<Vec<usize>>,
    /// Green is the K objects with the lowest median, red the rest.
    #[arg(long, value_name = "K", conflicts_with_all = ["green_ranks", "red_ranks"])]
    pub top_k_median: Option<usize>,
    /// Sequence JSON; not needed for event logs.
    #[arg(long)]
    pub sequences: Option<PathBuf>,
    /// DOT output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Ranking JSON as written by `rank`.
    #[arg(long)]
    pub ranking: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// `{"objects": [{"id", "mu", "sigma", "m"}]}`; a four-object demo spec
    /// is used when absent.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Config file contents. Every field is optional and is overridden by the
/// matching flag.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub format: Option<InputFormat>,
    pub method: Option<Method>,
    pub limits: Option<QuantileLimits>,
    pub sweep: Option<Vec<QuantileLimits>>,
    pub green_ranks: Option<Vec<usize>>,
    pub red_ranks: Option<Vec<usize>>,
    pub top_k_median: Option<usize>,
    pub sequences: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub seed: Option<u64>,
    pub spec: Option<PathBuf>,
}

/// Parses the process arguments, runs the command and maps the outcome to an
/// exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Invalid) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The command ran but the checked ranking is not valid.
    Invalid,
}

pub fn run(cli: Cli) -> Result<Status> {
    let cfg = match &cli.config {
        Some(p) => io::load_json(p)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Rank(a) => cmd_rank(&a, &cfg),
        Command::Sweep(a) => cmd_sweep(&a, &cfg),
        Command::Dfg(a) => cmd_dfg(&a, &cfg),
        Command::Validate(a) => cmd_validate(&a, &cfg),
        Command::Synth(a) => cmd_synth(&a, &cfg),
    }
}

/// Measurements and sequences recovered from the input, when its format has them.
struct Loaded {
    dataset: Option<Dataset>,
    sequences: Option<Vec<VariantSequence>>,
    log: Option<crate::dfg::EventLog>,
}

fn require_input(flag: &Option<PathBuf>, cfg: &RunConfig) -> Result<PathBuf> {
    flag.clone()
        .or_else(|| cfg.input.clone())
        .ok_or_else(|| Error::Usage("no input file (use --input)".into()))
}

fn resolve_format(flag: Option<InputFormat>, cfg: &RunConfig, path: &Path) -> InputFormat {
    flag.or(cfg.format)
        .unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => InputFormat::Csv,
            _ => InputFormat::Json,
        })
}

fn load(path: &Path, format: InputFormat) -> Result<(Loaded, Option<ComparisonMatrix>)> {
    let mut loaded = Loaded {
        dataset: None,
        sequences: None,
        log: None,
    };
    let cm = match format {
        InputFormat::Csv => {
            loaded.dataset = Some(io::load_measurements_csv(path)?);
            None
        }
        InputFormat::Json => {
            loaded.dataset = Some(io::load_measurements_json(path)?);
            None
        }
        InputFormat::Edges => Some(io::load_edge_list(path)?),
        InputFormat::Eventlog => {
            let log = io::load_event_log(path)?;
            loaded.dataset = Some(log.dataset()?);
            loaded.sequences = Some(log.sequences());
            loaded.log = Some(log);
            None
        }
    };
    Ok((loaded, cm))
}

fn matrix(
    loaded: &Loaded,
    direct: Option<ComparisonMatrix>,
    limits: QuantileLimits,
) -> Result<ComparisonMatrix> {
    match direct {
        Some(cm) => Ok(cm),
        None => build_comparison_matrix(
            loaded
                .dataset
                .as_ref()
                .expect("measurement formats carry a dataset"),
            limits,
        ),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => io::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// G with depths, its sparsification H, the incomparability graph U and the
/// component DAG G', concatenated.
pub fn order_graphs_dot(cm: &ComparisonMatrix) -> Result<String> {
    let g = build_directed_graph(cm)?;
    let d = compute_depths(&g)?;
    let h = sparsify(&g, &d);
    let u = build_incomparability_graph(cm);
    let comps = connected_components(&u);
    let gp = build_component_dag(&comps, cm)?;
    Ok([
        g.to_dot("G", Some(&d)),
        h.to_dot("H", Some(&d)),
        u.to_dot("U"),
        gp.to_dot("G'"),
    ]
    .concat())
}

#[derive(Serialize)]
struct SummaryFile {
    limits: QuantileLimits,
    objects: Vec<crate::model::BoxSummary>,
}

fn cmd_rank(a: &RankArgs, cfg: &RunConfig) -> Result<Status> {
    let path = require_input(&a.input.input, cfg)?;
    let format = resolve_format(a.input.format, cfg, &path);
    let method = a
        .method
        .or(cfg.method)
        .ok_or_else(|| Error::Usage("rank needs --method (M1, M2 or M3)".into()))?;
    let limits = a.input.limits.or(cfg.limits).unwrap_or_default();
    let summary = a.summary.clone().or_else(|| cfg.summary.clone());
    let dot = a.dot.clone().or_else(|| cfg.dot.clone());
    let out = a.out.clone().or_else(|| cfg.out.clone());

    let (loaded, direct) = load(&path, format)?;
    if summary.is_some() && loaded.dataset.is_none() {
        return Err(Error::Usage(
            "--summary needs measurements, not an edge list".into(),
        ));
    }
    let cm = matrix(&loaded, direct, limits)?;
    let (ranking, arrangement) = rank_with(method, &cm)?;
    if let Some(p) = &summary {
        let ds = loaded.dataset.as_ref().expect("checked above");
        let objects = ds
            .objects()
            .iter()
            .map(|m| box_summary(m, limits))
            .collect::<Result<Vec<_>>>()?;
        io::write_text(p, &to_json(&SummaryFile { limits, objects })?)?;
    }
    if let Some(p) = &dot {
        io::write_text(p, &order_graphs_dot(&cm)?)?;
    }
    let file = RankingFile::new(&ranking, arrangement.as_ref());
    emit(out.as_deref(), &to_json(&file)?)?;
    Ok(Status::Ok)
}

fn parse_sweep(s: &str) -> Result<Vec<QuantileLimits>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

fn cmd_sweep(a: &SweepArgs, cfg: &RunConfig) -> Result<Status> {
    let path = require_input(&a.input, cfg)?;
    let format = resolve_format(a.format, cfg, &path);
    let method = a.method.or(cfg.method).unwrap_or(Method::M1);
    let limits = if let Some(l) = a.limits {
        vec![l]
    } else if let Some(s) = &a.sweep {
        parse_sweep(s)?
    } else if let Some(p) = &a.sweep_file {
        io::load_json(p)?
    } else if let Some(v) = &cfg.sweep {
        v.clone()
    } else if let Some(l) = cfg.limits {
        vec![l]
    } else {
        QuantileLimits::default_sweep()
    };
    if limits.is_empty() {
        return Err(Error::Usage("the sweep needs at least one limit".into()));
    }
    let out = a.out.clone().or_else(|| cfg.out.clone());
    let (loaded, direct) = load(&path, format)?;
    if direct.is_some() {
        return Err(Error::Usage(
            "sweep needs measurements, not an edge list".into(),
        ));
    }
    let ds = loaded.dataset.expect("measurement formats carry a dataset");
    let sweep: QuantileSweep = quantile_sweep(&ds, &limits, method)?;
    let report = reliability_report(&sweep);
    match &out {
        Some(p) => {
            io::write_text(p, &to_json(&report)?)?;
            println!("selected {}", report.selected_limits());
        }
        None => print!("{}", report.render_table()),
    }
    Ok(Status::Ok)
}

fn cmd_dfg(a: &DfgArgs, cfg: &RunConfig) -> Result<Status> {
    let path = require_input(&a.input.input, cfg)?;
    let format = resolve_format(a.input.format, cfg, &path);
    let limits = a.input.limits.or(cfg.limits).unwrap_or_default();
    let top_k = a
        .top_k_median
        .or(if a.green_ranks.is_some() || a.red_ranks.is_some() {
            None
        } else {
            cfg.top_k_median
        });
    let green_ranks = a.green_ranks.clone().or_else(|| cfg.green_ranks.clone());
    let red_ranks = a.red_ranks.clone().or_else(|| cfg.red_ranks.clone());
    let out = a.out.clone().or_else(|| cfg.out.clone());

    let (loaded, direct) = load(&path, format)?;
    let sequences = match (
        &loaded.sequences,
        a.sequences.clone().or_else(|| cfg.sequences.clone()),
    ) {
        (_, Some(p)) => io::load_sequences(&p)?,
        (Some(s), None) => s.clone(),
        (None, None) => {
            return Err(Error::Usage(
                "dfg needs --sequences (or an event log input)".into(),
            ))
        }
    };

    let split = match (top_k, green_ranks) {
        (Some(k), _) => {
            let ds = loaded.dataset.as_ref().ok_or_else(|| {
                Error::Usage("--top-k-median needs measurements, not an edge list".into())
            })?;
            split_top_k_median(ds, k)?
        }
        (None, Some(green)) => {
            let method = a.method.or(cfg.method).ok_or_else(|| {
                Error::Usage("splitting by rank needs --method (M1, M2 or M3)".into())
            })?;
            let cm = matrix(&loaded, direct, limits)?;
            let (ranking, _) = rank_with(method, &cm)?;
            let red = red_ranks
                .unwrap_or_else(|| (0..ranking.len()).filter(|r| !green.contains(r)).collect());
            split_from_ranking(&ranking, &green, &red)?
        }
        (None, None) => {
            return Err(Error::Usage(
                "dfg needs --green-ranks or --top-k-median".into(),
            ))
        }
    };

    let mut dfg: ColoredDfg = build_colored_dfg(&sequences, &split)?;
    if let Some(log) = &loaded.log {
        let ids: Vec<String> = split.green().iter().chain(split.red()).cloned().collect();
        let notes = log
            .transition_medians(&ids)
            .into_iter()
            .map(|(k, s)| (k, format!("median {}", format_duration(s))))
            .collect();
        dfg.annotate(&notes);
    }
    emit(out.as_deref(), &emit_dot(&dfg))?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ValidationOutput {
    valid: bool,
    violations: Vec<String>,
    notes: Vec<String>,
}

fn cmd_validate(a: &ValidateArgs, cfg: &RunConfig) -> Result<Status> {
    let path = require_input(&a.input.input, cfg)?;
    let format = resolve_format(a.input.format, cfg, &path);
    let limits = a.input.limits.or(cfg.limits).unwrap_or_default();
    let out = a.out.clone().or_else(|| cfg.out.clone());
    let (loaded, direct) = load(&path, format)?;
    let cm = matrix(&loaded, direct, limits)?;
    let file: RankingFile = io::load_json(&a.ranking)?;
    let ranking = file.to_ranking(cm.ids()).map_err(|e| Error::Input {
        path: a.ranking.clone(),
        message: e.to_string(),
    })?;
    let report = validate_partial_ranking(&cm, &ranking);
    let output = ValidationOutput {
        valid: report.is_valid(),
        violations: report.violations.iter().map(|v| v.to_string()).collect(),
        notes: report.notes.clone(),
    };
    emit(out.as_deref(), &to_json(&output)?)?;
    Ok(if report.is_valid() {
        Status::Ok
    } else {
        Status::Invalid
    })
}

fn cmd_synth(a: &SynthArgs, cfg: &RunConfig) -> Result<Status> {
    let spec = match a.spec.clone().or_else(|| cfg.spec.clone()) {
        Some(p) => io::load_json(&p)?,
        None => SynthSpec::four_variants(),
    };
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let out = a.out.clone().or_else(|| cfg.out.clone());
    let ds = generate(&spec, seed)?;
    emit(out.as_deref(), &to_json(&ds)?)?;
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_list_parses() {
        let v = parse_sweep("25,75; 30,70;").unwrap();
        assert_eq!(v, QuantileLimits::default_sweep()[..2]);
        assert!(parse_sweep("25,75;80,20").is_err());
    }

    #[test]
    fn conflicting_sweep_flags() {
        let r = Cli::try_parse_from([
            "tieless",
            "sweep",
            "--input",
            "x.json",
            "--limits",
            "25,75",
            "--sweep-file",
            "s.json",
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn config_round_trips() {
        let cfg = RunConfig {
            method: Some(Method::M2),
            sweep: Some(QuantileLimits::default_sweep()),
            format: Some(InputFormat::Edges),
            ..RunConfig::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }
}
