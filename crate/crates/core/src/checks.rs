//! Self-contained property suites, runnable from the command line.
//!
//! Each suite draws its inputs from a fixed seed and compares the library
//! against direct oracles (full sorts, permutation enumeration, plain
//! formulas). A suite passes when every property holds at its tolerance.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::{volume_invariance_test, Classifier, SpectralFrame, Verdict};
use crate::error::{Error, Result};
use crate::expr::{Alpha, Expr, HomogeneityDegree};
use crate::means::{additive_mean, mean_ordering_check, power_mean};
use crate::network::{batcher_bitonic, optimal_network_8, verify_sorts};
use crate::parse::parse_expr;
use crate::quantile::{quantile_circuit, second_largest_depth2, SecondLargest};
use crate::rewrite::NExpr;
use crate::search::{default_palette, random_expr, random_expr_of_degree, Budget};

pub const SUITES: [&str; 5] = ["core", "means", "circuits", "rewrite", "classifiers"];

const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

/// Runs one suite by name, or all of them for `"all"`.
pub fn run_suite(name: &str) -> Result<Vec<CheckOutcome>> {
    match name {
        "all" => Ok(SUITES
            .iter()
            .flat_map(|s| run_suite(s).expect("known suite"))
            .collect()),
        "core" => Ok(core_suite()),
        "means" => Ok(means_suite()),
        "circuits" => Ok(circuits_suite()),
        "rewrite" => Ok(rewrite_suite()),
        "classifiers" => Ok(classifiers_suite()),
        other => Err(Error::InvalidConfig(format!(
            "unknown suite `{other}`; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

struct Suite {
    name: &'static str,
    outcomes: Vec<CheckOutcome>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            outcomes: Vec::new(),
        }
    }

    fn record(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.outcomes.push(CheckOutcome {
            suite: self.name,
            name,
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check built from a fallible closure; an error is a failure.
    fn check(&mut self, name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) {
        match body() {
            Ok((passed, detail)) => self.record(name, passed, detail),
            Err(e) => self.record(name, false, format!("error: {e}")),
        }
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn random_frame(rng: &mut impl Rng, width: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..width).map(|_| rng.random_range(lo..hi)).collect()
}

fn kth_smallest(frame: &[f64], k: usize) -> f64 {
    let mut v = frame.to_vec();
    v.sort_by(f64::total_cmp);
    v[k - 1]
}

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut counters = vec![0; n];
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            items.swap(j, i);
            out.push(items.clone());
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    out
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn core_suite() -> Vec<CheckOutcome> {
    let mut suite = Suite::new("core");
    let palette = default_palette();
    let width = 6;
    let budget = Budget {
        max_depth: 8,
        max_size: 50,
    };

    suite.check("parse-print-round-trip", || {
        let mut rng = rng(1);
        for _ in 0..10_000 {
            let e = random_expr(width, budget, &palette, &mut rng);
            let text = e.to_string();
            let back = parse_expr(&text)?;
            if back != e || back.to_string() != text {
                return Ok((false, format!("round trip changed `{text}`")));
            }
        }
        Ok((true, "10000 random expressions".into()))
    });

    suite.check("support-soundness", || {
        let mut rng = rng(2);
        for _ in 0..2_000 {
            let e = random_expr(width, budget, &palette, &mut rng);
            let support = e.support();
            let s = random_frame(&mut rng, width, -10.0, 10.0);
            let mut t = s.clone();
            for (i, v) in t.iter_mut().enumerate() {
                if !support.contains(&i) {
                    *v = rng.random_range(-50.0..50.0);
                }
            }
            if e.evaluate(&s)?.to_bits() != e.evaluate(&t)?.to_bits() {
                return Ok((false, format!("off-support change altered `{e}`")));
            }
        }
        Ok((true, "2000 expressions, exact equality".into()))
    });

    suite.check("homogeneity-soundness", || {
        let mut rng = rng(3);
        let mut worst: f64 = 0.0;
        let mut claimed = 0;
        for i in 0..3_000 {
            let e = match i % 3 {
                0 => random_expr(width, budget, &palette, &mut rng),
                1 => {
                    random_expr_of_degree(width, budget, &palette, HomogeneityDegree::One, &mut rng)
                }
                _ => random_expr_of_degree(
                    width,
                    budget,
                    &palette,
                    HomogeneityDegree::Zero,
                    &mut rng,
                ),
            };
            let expected_gain = match e.homogeneity_degree() {
                HomogeneityDegree::One => 1.0,
                HomogeneityDegree::Zero => 0.0,
                HomogeneityDegree::Unknown => continue,
            };
            claimed += 1;
            let s = random_frame(&mut rng, width, -10.0, 10.0);
            let c = rng.random_range(-100.0..100.0);
            let shifted: Vec<f64> = s.iter().map(|v| v + c).collect();
            let err = (e.evaluate(&shifted)? - e.evaluate(&s)? - expected_gain * c).abs();
            worst = worst.max(err);
        }
        Ok((
            worst <= 1e-9,
            format!("{claimed} claims, max error {worst:.3e} (tol 1e-9)"),
        ))
    });

    suite.outcomes
}

fn means_suite() -> Vec<CheckOutcome> {
    let mut suite = Suite::new("means");
    let grid: Vec<Alpha> = [-8.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 8.0]
        .into_iter()
        .map(Alpha::Finite)
        .collect();

    suite.check("ordering-in-alpha", || {
        let mut rng = rng(10);
        let (result, elapsed) = timed(|| -> Result<bool> {
            for _ in 0..10_000 {
                let n = rng.random_range(2..=16);
                // log-uniform over [1e-3, 1e3]
                let xs: Vec<f64> = (0..n)
                    .map(|_| 10f64.powf(rng.random_range(-3.0..=3.0)))
                    .collect();
                if !mean_ordering_check(&xs, &grid)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        let ok = result? && elapsed < Duration::from_secs(5);
        Ok((
            ok,
            format!("10000 vectors in {:.2}s (limit 5s)", elapsed.as_secs_f64()),
        ))
    });

    suite.check("geometric-limit", || {
        let mut rng = rng(11);
        let mut worst: f64 = 0.0;
        for _ in 0..1_000 {
            let n = rng.random_range(2..=16);
            let xs = random_frame(&mut rng, n, 0.1, 10.0);
            let g = (xs.iter().map(|x| x.ln()).sum::<f64>() / n as f64).exp();
            let m = power_mean(Alpha::Finite(1e-7), &xs)?;
            worst = worst.max((m - g).abs() / g);
        }
        Ok((
            worst < 1e-5,
            format!("max relative error {worst:.3e} (tol 1e-5)"),
        ))
    });

    suite.check("additive-mean-at-zero", || {
        let mut rng = rng(12);
        let mut worst: f64 = 0.0;
        for _ in 0..1_000 {
            let n = rng.random_range(1..=16);
            let xs = random_frame(&mut rng, n, -500.0, 500.0);
            let mean = xs.iter().sum::<f64>() / n as f64;
            worst = worst.max((additive_mean(Alpha::Finite(0.0), &xs)? - mean).abs());
        }
        Ok((worst <= 1e-12, format!("max error {worst:.3e} (tol 1e-12)")))
    });

    suite.check("extreme-limits-at-40", || {
        let mut rng = rng(13);
        let mut worst: f64 = 0.0;
        for _ in 0..1_000 {
            let n = rng.random_range(2..=16);
            let mut xs = random_frame(&mut rng, n, -10.0, 10.0);
            // separate the smallest and the largest entry from the rest by >= 1
            let (lo, hi) = xs
                .iter()
                .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
            xs.push(lo - 1.0 - rng.random_range(0.0..2.0));
            xs.push(hi + 1.0 + rng.random_range(0.0..2.0));
            let (min, max) = (kth_smallest(&xs, 1), kth_smallest(&xs, xs.len()));
            worst = worst
                .max((additive_mean(Alpha::Finite(-40.0), &xs)? - min).abs())
                .max((additive_mean(Alpha::Finite(40.0), &xs)? - max).abs());
        }
        Ok((
            worst < 1e-6,
            format!("max |A(±40) - min/max| = {worst:.3e} (tol 1e-6)"),
        ))
    });

    suite.check("additive-homogeneity", || {
        let mut rng = rng(14);
        let alphas = [
            Alpha::NegInf,
            Alpha::Finite(-40.0),
            Alpha::Finite(-2.0),
            Alpha::Finite(-0.5),
            Alpha::Finite(0.0),
            Alpha::Finite(0.5),
            Alpha::Finite(2.0),
            Alpha::Finite(40.0),
            Alpha::PosInf,
        ];
        let mut worst: f64 = 0.0;
        for _ in 0..1_000 {
            let n = rng.random_range(1..=16);
            let xs = random_frame(&mut rng, n, -500.0, 500.0);
            for alpha in alphas {
                let base = additive_mean(alpha, &xs)?;
                for c in [-100.0, -1.0, 0.5, 100.0] {
                    let shifted: Vec<f64> = xs.iter().map(|x| x + c).collect();
                    let v = additive_mean(alpha, &shifted)?;
                    if !v.is_finite() {
                        return Ok((false, format!("non-finite result at alpha {alpha}")));
                    }
                    worst = worst.max((v - base - c).abs());
                }
            }
        }
        Ok((worst <= 1e-9, format!("max error {worst:.3e} (tol 1e-9)")))
    });

    suite.check("multiplicative-homogeneity", || {
        let mut rng = rng(15);
        let mut worst: f64 = 0.0;
        for _ in 0..1_000 {
            let n = rng.random_range(1..=16);
            let xs = random_frame(&mut rng, n, 0.01, 100.0);
            let c = 10f64.powf(rng.random_range(-3.0..3.0));
            let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
            for alpha in grid.iter().copied().chain([Alpha::NegInf, Alpha::PosInf]) {
                let expected = c * power_mean(alpha, &xs)?;
                let rel = (power_mean(alpha, &scaled)? - expected).abs() / expected;
                worst = worst.max(rel);
            }
        }
        Ok((
            worst <= 1e-9,
            format!("max relative error {worst:.3e} (tol 1e-9)"),
        ))
    });

    suite.check("monotone-in-arguments", || {
        let mut rng = rng(16);
        for _ in 0..1_000 {
            let n = rng.random_range(1..=16);
            let xs = random_frame(&mut rng, n, 0.01, 100.0);
            let mut ys = xs.clone();
            let i = rng.random_range(0..n);
            ys[i] += rng.random_range(0.0..10.0);
            for alpha in grid.iter().copied().chain([Alpha::NegInf, Alpha::PosInf]) {
                if power_mean(alpha, &ys)? < power_mean(alpha, &xs)?
                    || additive_mean(alpha, &ys)? < additive_mean(alpha, &xs)?
                {
                    return Ok((false, format!("decrease at alpha {alpha}")));
                }
            }
        }
        Ok((true, "1000 vectors, all alphas".into()))
    });

    suite.outcomes
}

fn circuits_suite() -> Vec<CheckOutcome> {
    let mut suite = Suite::new("circuits");

    suite.check("bitonic-zero-one", || {
        let (all, elapsed) = timed(|| -> Result<bool> {
            for n in 1..=16 {
                if !verify_sorts(&batcher_bitonic(n))? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        let ok = all? && elapsed < Duration::from_secs(60);
        Ok((
            ok,
            format!("n = 1..=16 in {:.2}s (limit 60s)", elapsed.as_secs_f64()),
        ))
    });

    suite.check("optimal-8", || {
        let net = optimal_network_8();
        let sorts = verify_sorts(&net)?;
        Ok((
            sorts && net.depth() == 6,
            format!("sorts: {sorts}, depth: {}", net.depth()),
        ))
    });

    suite.check("quantiles-exhaustive", || {
        for n in 1..=6 {
            let net = batcher_bitonic(n);
            let perms = permutations(n);
            for k in 1..=n {
                let e = quantile_circuit(n, k, &net)?;
                for p in &perms {
                    let frame: Vec<f64> = p.iter().map(|&i| (i * 10 + 3) as f64).collect();
                    if e.evaluate(&frame)? != kth_smallest(&frame, k) {
                        return Ok((false, format!("n={n} k={k} frame {frame:?}")));
                    }
                }
            }
        }
        Ok((true, "n <= 6, every rank, every permutation".into()))
    });

    suite.check("quantiles-random-8", || {
        let mut rng = rng(20);
        let sources = [
            ("bitonic", batcher_bitonic(8)),
            ("opt8", optimal_network_8()),
        ];
        let circuits = sources
            .iter()
            .map(|(name, net)| {
                (1..=8)
                    .map(|k| quantile_circuit(8, k, net))
                    .collect::<Result<Vec<_>>>()
                    .map(|c| (*name, net.depth(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        for (name, depth, cs) in &circuits {
            if cs.iter().any(|e| e.depth() > *depth) {
                return Ok((false, format!("{name}: circuit deeper than network")));
            }
        }
        for _ in 0..10_000 {
            let frame = random_frame(&mut rng, 8, -100.0, 100.0);
            for (name, _, cs) in &circuits {
                for (k, e) in cs.iter().enumerate() {
                    let v = e.evaluate(&frame)?;
                    if v != kth_smallest(&frame, k + 1) || !frame.contains(&v) {
                        return Ok((false, format!("{name} k={} on {frame:?}", k + 1)));
                    }
                }
            }
        }
        Ok((
            true,
            "10000 frames, both sources, all ranks, outputs are inputs".into(),
        ))
    });

    suite.check("quantile-duality", || {
        let mut rng = rng(21);
        for n in [3, 5, 8, 11] {
            let net = batcher_bitonic(n);
            for k in 1..=n {
                let low = quantile_circuit(n, k, &net)?;
                let high = quantile_circuit(n, n + 1 - k, &net)?;
                for _ in 0..200 {
                    let frame = random_frame(&mut rng, n, -10.0, 10.0);
                    let negated: Vec<f64> = frame.iter().map(|v| -v).collect();
                    if low.evaluate(&frame)? != -high.evaluate(&negated)? {
                        return Ok((false, format!("n={n} k={k}")));
                    }
                }
            }
        }
        Ok((true, "q_k(x) = -q_(n+1-k)(-x)".into()))
    });

    suite.check("second-largest", || {
        let variants = [SecondLargest::MinOfMaxes, SecondLargest::MaxOfMins];
        for n in 2..=6 {
            let es = variants
                .iter()
                .map(|&v| second_largest_depth2(n, v))
                .collect::<Result<Vec<_>>>()?;
            if n > 2 && es.iter().any(|e| e.depth() != 2) {
                return Ok((false, format!("n={n}: depth is not 2")));
            }
            for p in permutations(n) {
                let frame: Vec<f64> = p.iter().map(|&i| i as f64).collect();
                let want = kth_smallest(&frame, n - 1);
                for e in &es {
                    if e.evaluate(&frame)? != want {
                        return Ok((false, format!("n={n} on {frame:?}")));
                    }
                }
            }
        }
        let mut rng = rng(22);
        for n in 2..=12 {
            let es = variants
                .iter()
                .map(|&v| second_largest_depth2(n, v))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..10_000 {
                let frame = random_frame(&mut rng, n, -100.0, 100.0);
                let want = kth_smallest(&frame, n - 1);
                let (a, b) = (es[0].evaluate(&frame)?, es[1].evaluate(&frame)?);
                if a != b || a != want {
                    return Ok((false, format!("n={n} on {frame:?}")));
                }
            }
        }
        Ok((
            true,
            "exhaustive n <= 6, 10000 random frames per n <= 12".into(),
        ))
    });

    suite.outcomes
}

/// Random negation/min/max/avg tree with at most `nodes` nodes.
fn random_nexpr(rng: &mut impl Rng, width: usize, nodes: usize) -> NExpr {
    if nodes < 3 || rng.random_bool(0.25) {
        if nodes >= 2 && rng.random_bool(0.3) {
            return NExpr::neg(random_nexpr(rng, width, nodes - 1));
        }
        let i = rng.random_range(0..width);
        return if rng.random_bool(0.2) {
            NExpr::NegInput(i)
        } else {
            NExpr::Input(i)
        };
    }
    let op = rng.random_range(0..4);
    if op == 3 {
        return NExpr::neg(random_nexpr(rng, width, nodes - 1));
    }
    let arity = rng.random_range(2..=3).min(nodes - 1);
    let mut remaining = nodes - 1;
    let children = (0..arity)
        .map(|i| {
            let share = (remaining - (arity - i - 1)).min(remaining / (arity - i) + 2);
            let c = random_nexpr(rng, width, share.max(1));
            remaining -= c.size();
            c
        })
        .collect();
    match op {
        0 => NExpr::Min(children),
        1 => NExpr::Max(children),
        _ => NExpr::Avg(children),
    }
}

fn rewrite_suite() -> Vec<CheckOutcome> {
    let mut suite = Suite::new("rewrite");
    suite.check("negation-elimination", || {
        let mut rng = rng(30);
        let width = 5;
        let mut worst: f64 = 0.0;
        let mut with_neg = 0;
        for _ in 0..10_000 {
            let e = random_nexpr(&mut rng, width, 50);
            let out = e.eliminate_negation();
            with_neg += usize::from(e.neg_count() > 0);
            if out.neg_count() != 0 || out.size() > e.size() {
                return Ok((false, format!("bad rewrite of `{e}`")));
            }
            if e.neg_count() == 0 && out != e {
                return Ok((false, format!("negation-free `{e}` was changed")));
            }
            let frame = random_frame(&mut rng, width, 0.0, 1.0);
            worst = worst.max((e.evaluate(&frame)? - out.evaluate(&frame)?).abs());
        }
        Ok((
            worst <= 1e-12,
            format!("10000 trees ({with_neg} with negation), max error {worst:.3e} (tol 1e-12)"),
        ))
    });
    suite.outcomes
}

fn classifiers_suite() -> Vec<CheckOutcome> {
    let mut suite = Suite::new("classifiers");
    let palette = default_palette();
    let width = 6;
    let budget = Budget {
        max_depth: 6,
        max_size: 40,
    };

    suite.check("z-equals-b-at-zero", || {
        let mut rng = rng(40);
        for _ in 0..500 {
            let e = random_expr(width, budget, &palette, &mut rng);
            let z = Classifier::z(e.clone())?;
            let b = Classifier::b(e, 0.0)?;
            for _ in 0..20 {
                let s = random_frame(&mut rng, width, -5.0, 5.0);
                if z.classify(&s)? != b.classify(&s)? {
                    return Ok((false, format!("verdicts differ for `{}`", z.expr())));
                }
            }
        }
        Ok((true, "500 expressions x 20 frames".into()))
    });

    suite.check("a-plus-rejects-positive-threshold", || {
        let e = Expr::diff(Expr::Input(0), Expr::Input(1));
        let rejected = [1e-300, 0.5, 7.0].iter().all(|&c| {
            matches!(
                Classifier::a_plus(e.clone(), c),
                Err(Error::InvalidThreshold(_))
            )
        });
        let accepted = [0.0, -3.0]
            .iter()
            .all(|&c| Classifier::a_plus(e.clone(), c).is_ok());
        Ok((
            rejected && accepted,
            "c > 0 rejected, c <= 0 accepted".into(),
        ))
    });

    suite.check("abstention", || {
        let e = Expr::Input(0);
        let z = Classifier::z(e.clone())?;
        let b = Classifier::b(e.clone(), 2.0)?;
        let a = Classifier::a(e.clone(), -1.0)?;
        let ap = Classifier::a_plus(e, -1.0)?;
        let ok = z.classify(&[0.0])? == Verdict::Abstain
            && b.classify(&[2.0])? == Verdict::Abstain
            && a.classify(&[-0.5])? == Verdict::Abstain
            && a.classify(&[-1.0])? == Verdict::Abstain
            && a.classify(&[5.0])? == Verdict::Abstain
            && a.classify(&[-1.5])? == Verdict::Class1
            && ap.classify(&[-0.5])? == Verdict::Abstain
            && ap.classify(&[-2.0])? == Verdict::Class1;
        Ok((ok, "ties abstain; A/A+ abstain unless f(s) < c".into()))
    });

    suite.check("threshold-monotonicity", || {
        let mut rng = rng(41);
        for _ in 0..500 {
            let e = random_expr(width, budget, &palette, &mut rng);
            let c1 = rng.random_range(-5.0..5.0);
            let c2 = c1 + rng.random_range(0.0..5.0);
            let (lo, hi) = (Classifier::b(e.clone(), c1)?, Classifier::b(e, c2)?);
            for _ in 0..20 {
                let s = random_frame(&mut rng, width, -5.0, 5.0);
                if lo.classify(&s)? == Verdict::Class1 && hi.classify(&s)? != Verdict::Class1 {
                    return Ok((false, format!("class 1 lost raising c for `{}`", lo.expr())));
                }
            }
        }
        Ok((true, "class 1 at c1 stays class 1 at c2 > c1".into()))
    });

    suite.check("volume-invariance", || {
        let mut rng = rng(42);
        let mut tested = 0;
        for _ in 0..500 {
            let e =
                random_expr_of_degree(width, budget, &palette, HomogeneityDegree::Zero, &mut rng);
            let cl = Classifier::z(e)?;
            let frames: Vec<SpectralFrame> = (0..20)
                .map(|_| SpectralFrame::new(random_frame(&mut rng, width, -10.0, 10.0), None))
                .collect();
            if !volume_invariance_test(&cl, &frames, &[-100.0, 100.0])? {
                return Ok((false, format!("verdict changed for `{}`", cl.expr())));
            }
            tested += 1;
        }
        Ok((
            true,
            format!("{tested} degree-zero Z classifiers under shifts ±100"),
        ))
    });

    suite.outcomes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heap_permutations() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        let mut sorted = perms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn random_nexpr_respects_node_budget() {
        let mut rng = rng(99);
        for _ in 0..2_000 {
            assert!(random_nexpr(&mut rng, 4, 50).size() <= 50);
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope").is_err());
    }
}
