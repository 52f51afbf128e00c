//! Command-line driver. Exit codes: 0 success, 1 usage error, 2 data error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{extract_tuples, parse_treebank, read_queries, read_tuple_file, write_tuple_file, Kind};
use crate::corpus::{Normalization, TupleRecord};
use crate::counts::{load_model, save_model, FrequencyDatabase};
use crate::estimator::{estimate, estimate_cb4};
use crate::eval::{baseline_most_frequent, distance_analysis, evaluate, render_baselines, stratified_split, SplitSpec};

#[derive(Debug, Parser)]
#[command(name = "ppbackoff", version, about = "Backed-off PP attachment disambiguation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "test-fraction-pp1", default_value_t = 0.05)]
    pub pp1: f64,
    #[arg(long = "test-fraction-pp2", default_value_t = 0.10)]
    pub pp2: f64,
    #[arg(long = "test-fraction-pp3", default_value_t = 0.10)]
    pub pp3: f64,
}

impl SplitArgs {
    fn spec(&self) -> Result<SplitSpec, CliError> {
        let fractions = [self.pp1, self.pp2, self.pp3];
        for (kind, f) in Kind::ALL.iter().zip(fractions) {
            if !(f > 0.0 && f < 1.0) {
                return Err(CliError::Usage(format!("--test-fraction-pp{kind} must lie in (0, 1), got {f}")));
            }
        }
        Ok(SplitSpec { fractions, seed: self.seed })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Estimator {
    /// Cascades over the PP tables (first-PP triple, two- and three-PP tuples).
    Backoff,
    /// Reference 4-gram estimator over (v, n1, p, n2) for single-PP queries.
    Cb4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract tuples from a treebank of blank-line-separated bracketings.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "lower")]
        normalization: Normalization,
    },
    /// Count a tuple file into a model. With --test-output, hold out a nested
    /// stratified test set first and write it there.
    Train {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "lower")]
        normalization: Normalization,
        #[arg(long = "test-output")]
        test_output: Option<PathBuf>,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Decide attachments for query lines (tuple lines without the config column).
    Predict {
        #[arg(long)]
        model: PathBuf,
        /// Query file; standard input when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "backoff")]
        estimator: Estimator,
    },
    /// Score a model on a test tuple file, broken down by back-off level.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Chance and most-frequent-configuration baselines over a tuple file.
    Baseline {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Attachment by preposition and distance from the verb.
    DistanceStats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

fn data_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| data_err(path, e))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    String::from_utf8(read(path)?).map_err(|_| data_err(path, "not valid UTF-8"))
}

fn read_tuples(path: &Path) -> Result<Vec<TupleRecord>, CliError> {
    read_tuple_file(&read(path)?).map_err(|e| data_err(path, e))
}

fn read_model(path: &Path) -> Result<FrequencyDatabase, CliError> {
    load_model(&read(path)?).map_err(|e| data_err(path, e))
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| data_err(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Data(format!("<stdout>: {e}"))),
    }
}

fn execute(config: RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    match config.command {
        Command::Extract { input, output, normalization } => {
            let text = read_text(&input)?;
            let records = extract_tuples(parse_treebank(&text), normalization).map_err(|e| data_err(&input, e))?;
            emit(output.as_deref(), &write_tuple_file(&records), stdout)
        }
        Command::Train { input, output, normalization, test_output, split } => {
            let spec = split.spec()?;
            let records = read_tuples(&input)?;
            let train = match &test_output {
                Some(test_path) => {
                    let s = stratified_split(&records, &spec).map_err(|e| data_err(&input, e))?;
                    fs::write(test_path, write_tuple_file(&s.all_tests())).map_err(|e| data_err(test_path, e))?;
                    s.train
                }
                None => records,
            };
            let db = FrequencyDatabase::build(&train, normalization).map_err(|e| data_err(&input, e))?;
            fs::write(&output, save_model(&db)).map_err(|e| data_err(&output, e))
        }
        Command::Predict { model, input, output, estimator } => {
            let db = read_model(&model)?;
            let (text, source) = match &input {
                Some(path) => (read_text(path)?, path.clone()),
                None => {
                    let mut s = String::new();
                    std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                        .map_err(|e| CliError::Data(format!("<stdin>: {e}")))?;
                    (s, PathBuf::from("<stdin>"))
                }
            };
            let queries = read_queries(&text).map_err(|e| data_err(&source, e))?;
            let mut out = String::new();
            for q in &queries {
                let decision = match (estimator, q.kind, q.final_noun.as_deref()) {
                    (Estimator::Cb4, Kind::One, Some(n2)) => {
                        estimate_cb4(&db, &q.heads.v, &q.heads.n1, &q.heads.p1, n2)
                    }
                    (Estimator::Cb4, _, _) => {
                        return Err(data_err(
                            &source,
                            format!("query {}: cb4 needs a one-PP query with a final noun", q.id),
                        ))
                    }
                    (Estimator::Backoff, _, _) => estimate(&db, &q.heads),
                };
                out.push_str(&format!(
                    "{}\tlevel={}\t{:.3}\n",
                    decision.config,
                    decision.level,
                    decision.probability()
                ));
            }
            emit(output.as_deref(), &out, stdout)
        }
        Command::Evaluate { model, input, output, format } => {
            let db = read_model(&model)?;
            let tests = read_tuples(&input)?;
            let report = evaluate(&db, &tests);
            let text = match format {
                ReportFormat::Text => report.render_table(),
                ReportFormat::Tsv => report.render_tsv(),
            };
            emit(output.as_deref(), &text, stdout)
        }
        Command::Baseline { input, output } => {
            let records = read_tuples(&input)?;
            let rows = baseline_most_frequent(&records, &records);
            emit(output.as_deref(), &render_baselines(&rows), stdout)
        }
        Command::DistanceStats { input, output } => {
            let records = read_tuples(&input)?;
            emit(output.as_deref(), &distance_analysis(&records).render(), stdout)
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(config, stdout) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}
