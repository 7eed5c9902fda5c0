use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minmax_algebra::cli::{self, Outcome, QuantileSource, EXIT_PARSE};
use minmax_algebra::search::{SearchConfig, SyntheticSpec};

#[derive(Parser)]
#[command(
    name = "mmalg",
    version,
    about = "Min/max/mean expression algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Bitonic,
    Opt8,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression on each row of a CSV of frames.
    Eval {
        /// Expression text, e.g. "(diff (max s0 s1) s2)".
        expr: String,
        /// Frames CSV; stdin when omitted.
        #[arg(long)]
        frames: Option<PathBuf>,
    },
    /// Print a min/max circuit selecting the k-th smallest of n inputs.
    SynthQuantile {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "bitonic")]
        source: Source,
    },
    /// Check by zero-one enumeration whether a network sorts.
    VerifyNetwork {
        /// Network file; stdin when omitted.
        network: Option<PathBuf>,
    },
    /// Evolve a classifier on a labelled dataset.
    Train {
        #[arg(long)]
        data: PathBuf,
        /// `key = value` configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides applied after the file, as key=value.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Write the classifier here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a saved classifier to a dataset.
    Classify {
        #[arg(long)]
        classifier: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Generate a synthetic two-class dataset.
    GenData {
        #[arg(long, default_value_t = 8)]
        width: usize,
        #[arg(long, default_value_t = 500)]
        frames_per_class: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,4")]
        class1_bumps: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,6")]
        class2_bumps: Vec<usize>,
        #[arg(long, default_value_t = 3.0)]
        height: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
        shift_min: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        shift_max: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run property suites: core, means, circuits, rewrite, classifiers or all.
    Check {
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn usage_error(msg: String) -> Outcome {
    Outcome {
        stderr: format!("error: {msg}\n"),
        code: EXIT_PARSE,
        ..Default::default()
    }
}

fn train(
    data: &PathBuf,
    config: Option<&PathBuf>,
    overrides: &[String],
    out: Option<&PathBuf>,
) -> io::Result<Outcome> {
    let file_text = config.map(std::fs::read_to_string).transpose()?;
    let mut cfg = SearchConfig::default();
    let applied = (|| {
        if let Some(text) = &file_text {
            cfg.apply_text(text)?;
        }
        for kv in overrides {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                minmax_algebra::Error::InvalidConfig(format!("override `{kv}` is not key=value"))
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()
    })();
    if let Err(e) = applied {
        return Ok(usage_error(e.to_string()));
    }
    let mut outcome = cli::cmd_train(&cfg, &std::fs::read_to_string(data)?);
    if let (Some(path), 0) = (out, outcome.code) {
        std::fs::write(path, std::mem::take(&mut outcome.stdout))?;
    }
    Ok(outcome)
}

fn run(command: Command) -> io::Result<Outcome> {
    Ok(match command {
        Command::Eval { expr, frames } => cli::cmd_eval(&expr, &read_input(frames.as_ref())?),
        Command::SynthQuantile { n, k, source } => cli::cmd_synth_quantile(
            n,
            k,
            match source {
                Source::Bitonic => QuantileSource::Bitonic,
                Source::Opt8 => QuantileSource::Opt8,
            },
        ),
        Command::VerifyNetwork { network } => cli::cmd_verify(&read_input(network.as_ref())?),
        Command::Train {
            data,
            config,
            overrides,
            out,
        } => train(&data, config.as_ref(), &overrides, out.as_ref())?,
        Command::Classify { classifier, data } => cli::cmd_classify(
            &std::fs::read_to_string(classifier)?,
            &std::fs::read_to_string(data)?,
        ),
        Command::GenData {
            width,
            frames_per_class,
            class1_bumps,
            class2_bumps,
            height,
            sigma,
            shift_min,
            shift_max,
            seed,
        } => cli::cmd_gen_data(&SyntheticSpec {
            width,
            frames_per_class,
            class1_bumps,
            class2_bumps,
            bump_height: height,
            noise_sigma: sigma,
            shift_range: (shift_min, shift_max),
            seed,
        }),
        Command::Check { suite } => cli::cmd_check(&suite),
    })
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse().command).unwrap_or_else(|e| usage_error(e.to_string()));
    // a closed pipe on stdout is not worth reporting
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
