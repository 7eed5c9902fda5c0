//! Command implementations behind the `mmalg` binary.
//!
//! Each command takes already-read inputs and returns an [`Outcome`] with
//! the text for standard output and standard error plus an exit code, so
//! the commands can be driven and tested without a process boundary.
//!
//! Exit codes: 0 success, 1 failed check, 2 parse or usage error,
//! 3 data mismatch.

use std::fmt::Write as _;

use crate::checks;
use crate::classifier::{evaluate_on_dataset, Classifier, Dataset};
use crate::error::Error;
use crate::network::{batcher_bitonic, optimal_network_8, verify_sorts, ComparatorNetwork};
use crate::parse::parse_expr;
use crate::program::Program;
use crate::quantile::quantile_circuit;
use crate::search::{evolve, generate_synthetic, SearchConfig, SyntheticSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::WidthMismatch { .. }
        | Error::Dataset(_)
        | Error::EmptyDataset
        | Error::OutOfRange { .. } => EXIT_DATA,
        _ => EXIT_PARSE,
    }
}

fn failure(err: Error) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
        code: exit_code(&err),
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped.
pub fn format_significant(v: f64) -> String {
    const DIGITS: i32 = 12;
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..DIGITS).contains(&exp) {
        format!(
            "{}e{}{:02}",
            trim(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim(&format!("{v:.decimals$}"))
    }
}

/// Numeric frame rows, either a dataset CSV (header starting with `label`,
/// labels ignored) or bare comma-separated rows without a header.
fn read_frames(csv_text: &str) -> Result<Vec<Vec<f64>>, Error> {
    let first = csv_text
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("");
    if first.trim_start().starts_with("label") {
        let data: Dataset = csv_text.parse()?;
        return Ok(data.frames().iter().map(|f| f.values.clone()).collect());
    }
    csv_text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(no, line)| {
            line.split(',')
                .map(|cell| {
                    let cell = cell.trim();
                    cell.parse::<f64>().map_err(|_| {
                        Error::Dataset(format!("line {}: bad number `{cell}`", no + 1))
                    })
                })
                .collect()
        })
        .collect()
}

/// `eval`: one value per frame row.
pub fn cmd_eval(expr_text: &str, frames_csv: &str) -> Outcome {
    let run = || -> Result<String, Error> {
        let expr = parse_expr(expr_text.trim())?;
        let program = Program::compile(&expr);
        let mut out = String::new();
        let mut stack = Vec::new();
        for frame in read_frames(frames_csv)? {
            let v = program.evaluate_with(&frame, &mut stack)?;
            writeln!(out, "{}", format_significant(v)).unwrap();
        }
        Ok(out)
    };
    run().map_or_else(failure, Outcome::ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantileSource {
    Bitonic,
    Opt8,
}

/// `synth-quantile`: the circuit on stdout, its size and depth on stderr.
pub fn cmd_synth_quantile(n: usize, k: usize, source: QuantileSource) -> Outcome {
    let net = match source {
        QuantileSource::Bitonic => batcher_bitonic(n),
        QuantileSource::Opt8 if n == 8 => optimal_network_8(),
        QuantileSource::Opt8 => {
            return failure(Error::InvalidNetwork(format!("opt8 needs n = 8, got {n}")))
        }
    };
    match quantile_circuit(n, k, &net) {
        Ok(e) => Outcome {
            stdout: format!("{e}\n"),
            stderr: format!("size: {}, depth: {}\n", e.size(), e.depth()),
            code: EXIT_OK,
        },
        Err(e) => failure(e),
    }
}

/// `verify-network`: exit 1 when the network does not sort.
pub fn cmd_verify(network_text: &str) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let net: ComparatorNetwork = network_text.parse()?;
        let sorts = verify_sorts(&net)?;
        Ok(Outcome {
            stdout: format!(
                "sorts: {}, depth: {}, comparators: {}\n",
                if sorts { "yes" } else { "no" },
                net.depth(),
                net.comparator_count()
            ),
            stderr: String::new(),
            code: if sorts { EXIT_OK } else { EXIT_CHECK_FAILED },
        })
    };
    run().unwrap_or_else(failure)
}

/// `train`: the classifier file on stdout, training metrics on stderr.
pub fn cmd_train(config: &SearchConfig, dataset_csv: &str) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let data: Dataset = dataset_csv.parse()?;
        let result = evolve(&data, config)?;
        let metrics = evaluate_on_dataset(&result.best, &data)?;
        let mut stderr = format!(
            "best fitness: {}\nevaluations: {}\n",
            result.best_fitness, result.evaluations
        );
        stderr.push_str(&metrics.to_string());
        Ok(Outcome {
            stdout: result.best.to_string(),
            stderr,
            code: EXIT_OK,
        })
    };
    run().unwrap_or_else(failure)
}

/// `classify`: one verdict per frame (`1`, `2`, `abstain`), then metrics
/// when every frame is labelled.
pub fn cmd_classify(classifier_text: &str, dataset_csv: &str) -> Outcome {
    let run = || -> Result<String, Error> {
        let cl: Classifier = classifier_text.parse()?;
        let data: Dataset = dataset_csv.parse()?;
        let mut out = String::new();
        for verdict in cl.classify_all(&data)? {
            writeln!(out, "{verdict}").unwrap();
        }
        if !data.is_empty() && data.frames().iter().all(|f| f.label.is_some()) {
            out.push_str(&evaluate_on_dataset(&cl, &data)?.to_string());
        }
        Ok(out)
    };
    run().map_or_else(failure, Outcome::ok)
}

/// `gen-data`: a labelled dataset CSV.
pub fn cmd_gen_data(spec: &SyntheticSpec) -> Outcome {
    generate_synthetic(spec).map_or_else(failure, |d| Outcome::ok(d.to_csv_string()))
}

/// `check`: runs a property suite (or `all`); exit 1 if anything fails.
pub fn cmd_check(suite: &str) -> Outcome {
    match checks::run_suite(suite) {
        Ok(outcomes) => {
            let mut stdout = String::new();
            for o in &outcomes {
                writeln!(stdout, "{o}").unwrap();
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(
                stdout,
                "{} passed, {failed} failed",
                outcomes.len() - failed
            )
            .unwrap();
            Outcome {
                stdout,
                stderr: String::new(),
                code: if failed == 0 {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                },
            }
        }
        Err(e) => failure(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(2.0), "2");
        assert_eq!(format_significant(-1.5), "-1.5");
        assert_eq!(format_significant(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_significant(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_significant(0.0001234), "0.0001234");
        assert_eq!(format_significant(0.00001234), "1.234e-05");
        assert_eq!(format_significant(999999999999.9), "1e+12");
        assert_eq!(format_significant(0.0), "0");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cmd_eval("(diff s0 s1)", "5,3\n").stdout, "2\n");
        assert_eq!(cmd_eval("(mean 0 s0 s1)", "1,3\n").stdout, "2\n");
        assert_eq!(cmd_eval("(mean -inf s0 s1 s2)", "4,1,9\n").stdout, "1\n");
        assert_eq!(
            cmd_eval("(max s0 s1)", "label,ch0,ch1\n1,2,7\n2,-1,-3\n").stdout,
            "7\n-1\n"
        );
        assert_eq!(cmd_eval("(min s0", "1\n").code, EXIT_PARSE);
        assert_eq!(cmd_eval("(diff s0 s5)", "1,2\n").code, EXIT_DATA);
        assert_eq!(cmd_eval("s0", "x\n").code, EXIT_DATA);
    }

    #[test]
    fn synth_examples() {
        let out = cmd_synth_quantile(2, 2, QuantileSource::Bitonic);
        assert_eq!(out.stdout, "(max s0 s1)\n");
        assert_eq!(out.stderr, "size: 3, depth: 1\n");
        assert_eq!(
            cmd_synth_quantile(4, 2, QuantileSource::Opt8).code,
            EXIT_PARSE
        );
        assert_eq!(
            cmd_synth_quantile(4, 9, QuantileSource::Bitonic).code,
            EXIT_PARSE
        );
    }

    #[test]
    fn verify_examples() {
        let out = cmd_verify(&batcher_bitonic(8).to_string());
        assert_eq!(out.stdout, "sorts: yes, depth: 6, comparators: 24\n");
        assert_eq!(out.code, EXIT_OK);
        let out = cmd_verify("width 3\n0:1\n");
        assert!(out.stdout.starts_with("sorts: no"));
        assert_eq!(out.code, EXIT_CHECK_FAILED);
        assert_eq!(cmd_verify("width x").code, EXIT_PARSE);
    }

    #[test]
    fn bad_generator_parameters_are_usage_errors() {
        let spec = SyntheticSpec {
            class1_bumps: vec![9],
            ..SyntheticSpec::default()
        };
        assert_eq!(cmd_gen_data(&spec).code, EXIT_PARSE);
    }

    #[test]
    fn classify_without_labels_prints_only_verdicts() {
        let out = cmd_classify("Z\nnone\n(diff s0 s1)\n", "label,ch0,ch1\n,1,2\n,2,1\n");
        assert_eq!(out.stdout, "1\n2\n");
        assert_eq!(
            cmd_classify("Z\nnone\n(diff s0 s1)\n", "label,ch0\n1,2\n").code,
            EXIT_DATA
        );
        assert_eq!(cmd_classify("Z\n", "label,ch0\n1,2\n").code, EXIT_PARSE);
        assert_eq!(
            cmd_classify("Q\nnone\ns0\n", "label,ch0\n1,2\n").code,
            EXIT_PARSE
        );
    }
}
