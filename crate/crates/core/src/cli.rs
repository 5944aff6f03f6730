//! Command-line front end.
//!
//! Generation subcommands read every input record, map them on a bounded
//! worker pool, and write results in input order, so output bytes never
//! depend on `--workers`. Each output gets a `<output>.stats.json` sidecar.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::annotation::{AnnotatedPair, NliLabel};
use crate::example::{GeneratedExample, SkipReason};
use crate::io::{self, DatasetError, RunStats, TransformStats};
use crate::lifespan::{birthday_for, BirthdayConfig};
use crate::metrics::{self, ConfusionCounts};
use crate::passive::Passivizer;
use crate::person::reverse_persons;

#[derive(Debug, Parser)]
#[command(name = "syntax-distract", version, about = "Generate adversarial-distraction NLI examples and score predictions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Annotated pairs, one JSON object per line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Passive hypotheses, plus passive reversals of entailments with --reversals.
    Passivize {
        #[command(flatten)]
        common: GenerateArgs,
        #[arg(long)]
        reversals: bool,
    },
    /// Swap two person names across the root verb's arguments.
    PersonReverse {
        #[command(flatten)]
        common: GenerateArgs,
    },
    /// Insert synthetic life spans and ask about birth or death dates.
    Birthday {
        #[command(flatten)]
        common: GenerateArgs,
        #[arg(long, default_value_t = 2018)]
        reference_year: i32,
        #[arg(long, default_value_t = 800)]
        min_birth_year: i32,
        #[arg(long, default_value_t = 2000)]
        max_birth_year: i32,
        #[arg(long, default_value_t = 20)]
        min_lifespan: i32,
        #[arg(long, default_value_t = 100)]
        max_lifespan: i32,
    },
    /// Label retrieved FEVER evidence against claims and prefix page titles.
    LabelFever {
        #[arg(long)]
        claims: PathBuf,
        #[arg(long)]
        retrieved: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Accuracy and Cohen's kappa from two label files.
    Evaluate {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Inverse-frequency class weights (mean 1) from a label file.
    ClassWeights {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] DatasetError),
    #[error("{0}")]
    Metrics(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Metrics(_) => 1,
        }
    }
}

/// Parses `argv` (program name first), runs, and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parallel_map<T, R, F>(items: &[T], workers: u32, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers as usize)
        .build()
        .expect("worker pool starts");
    pool.install(|| items.par_iter().map(f).collect())
}

fn finish(output: &Path, examples: &[GeneratedExample], stats: &RunStats) -> Result<(), CliError> {
    io::write_examples_to(examples, output)?;
    io::write_stats(stats, io::stats_path(output))?;
    Ok(())
}

/// Runs one generator over every pair and tallies the outcome under `name`.
fn generate<F>(pairs: &[AnnotatedPair], workers: u32, names: &[&str], f: F) -> (Vec<GeneratedExample>, RunStats)
where
    F: Fn(&AnnotatedPair) -> Vec<Result<GeneratedExample, SkipReason>> + Sync + Send,
{
    let results = parallel_map(pairs, workers, f);
    let mut stats: RunStats = names.iter().map(|n| (n.to_string(), TransformStats::default())).collect();
    let mut out = Vec::new();
    for per_pair in results {
        for (name, result) in names.iter().zip(per_pair) {
            let entry = stats.get_mut(*name).expect("known transform");
            match result {
                Ok(ex) => {
                    entry.record(Ok(()));
                    out.push(ex);
                }
                Err(reason) => entry.record(Err(reason)),
            }
        }
    }
    (out, stats)
}

fn read_labels(path: &Path) -> Result<Vec<NliLabel>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DatasetError::Io { path: path.to_path_buf(), source: e })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.parse().map_err(|e| {
                CliError::Data(DatasetError::MalformedRecord { path: path.to_path_buf(), line: i + 1, msg: format!("{e}") })
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct ClassCounts {
    gold: u64,
    pred: u64,
    correct: u64,
}

#[derive(Debug, Serialize)]
struct EvalReport {
    accuracy: f64,
    kappa: f64,
    per_class_counts: BTreeMap<NliLabel, ClassCounts>,
}

fn emit_json<T: Serialize>(value: &T, output: Option<&Path>) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
    print!("{body}");
    if let Some(path) = output {
        std::fs::write(path, &body).map_err(|e| DatasetError::Io { path: path.to_path_buf(), source: e })?;
    }
    Ok(())
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Passivize { common, reversals } => {
            let pairs = io::read_annotated(&common.input)?;
            let passivizer = Passivizer::builtin();
            let names: &[&str] = if *reversals { &["passive", "passive_reversal"] } else { &["passive"] };
            let (out, stats) = generate(&pairs, common.workers, names, |pair| {
                let mut r = vec![passivizer.to_passive(pair)];
                if *reversals {
                    r.push(passivizer.to_passive_reversal(pair));
                }
                r
            });
            finish(&common.output, &out, &stats)
        }
        Command::PersonReverse { common } => {
            let pairs = io::read_annotated(&common.input)?;
            let (out, stats) = generate(&pairs, common.workers, &["person_reversal"], |pair| vec![reverse_persons(pair)]);
            finish(&common.output, &out, &stats)
        }
        Command::Birthday { common, reference_year, min_birth_year, max_birth_year, min_lifespan, max_lifespan } => {
            let config = BirthdayConfig {
                seed: common.seed,
                reference_year: *reference_year,
                birth_years: (*min_birth_year, *max_birth_year),
                lifespan_years: (*min_lifespan, *max_lifespan),
            };
            config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            let pairs = io::read_annotated(&common.input)?;
            let (out, stats) = generate(&pairs, common.workers, &["birthday"], |pair| vec![birthday_for(pair, &config)]);
            finish(&common.output, &out, &stats)
        }
        Command::LabelFever { claims, retrieved, output } => {
            let pairs = io::read_fever(claims, retrieved)?;
            let examples: Vec<GeneratedExample> = pairs.iter().map(|p| p.to_example()).collect();
            let mut by_label = TransformStats::default();
            for _ in &examples {
                by_label.record(Ok(()));
            }
            let stats: RunStats = [("original".to_string(), by_label)].into();
            finish(output, &examples, &stats)
        }
        Command::Evaluate { gold, pred, output } => {
            let g = read_labels(gold)?;
            let p = read_labels(pred)?;
            let conf = ConfusionCounts::from_labels(&g, &p).map_err(|e| CliError::Metrics(e.to_string()))?;
            let report = EvalReport {
                accuracy: metrics::accuracy(&conf).map_err(|e| CliError::Metrics(e.to_string()))?,
                kappa: metrics::cohen_kappa(&conf).map_err(|e| CliError::Metrics(e.to_string()))?,
                per_class_counts: NliLabel::ALL
                    .iter()
                    .map(|l| {
                        let i = l.index();
                        (*l, ClassCounts { gold: conf.gold_marginal(i), pred: conf.pred_marginal(i), correct: conf.counts[i][i] })
                    })
                    .collect(),
            };
            emit_json(&report, output.as_deref())
        }
        Command::ClassWeights { input, output } => {
            let labels = read_labels(input)?;
            let mut counts: BTreeMap<NliLabel, u64> = NliLabel::ALL.iter().map(|l| (*l, 0)).collect();
            for l in labels {
                *counts.entry(l).or_default() += 1;
            }
            let weights = metrics::class_weights_from_counts::<f64>(&counts).map_err(|e| CliError::Metrics(e.to_string()))?;
            #[derive(Serialize)]
            struct Report {
                counts: BTreeMap<NliLabel, u64>,
                weights: BTreeMap<NliLabel, f64>,
            }
            emit_json(&Report { counts, weights: weights.weights }, output.as_deref())
        }
    }
}
