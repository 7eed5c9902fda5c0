//! Small hand-checked cases, one assertion group per documented example.

use std::collections::BTreeSet;

use minmax_algebra::cli::{cmd_check, cmd_eval, cmd_synth_quantile, cmd_verify, QuantileSource};
use minmax_algebra::means::{additive_mean, mean_ordering_check, power_mean};
use minmax_algebra::search::{mutate, random_expr, Budget, SearchConfig};
use minmax_algebra::{
    batcher_bitonic, eliminate_negation, evaluate_on_dataset, optimal_network_8, quantile_circuit,
    second_largest_depth2, volume_invariance_test, Alpha, Classifier, ComparatorNetwork, Dataset,
    Expr, HomogeneityDegree, Label, NExpr, SecondLargest, SpectralFrame, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(i: usize) -> Expr {
    Expr::Input(i)
}

fn e(text: &str) -> Expr {
    text.parse().unwrap()
}

#[test]
fn support() {
    assert_eq!(Expr::Zero.support(), BTreeSet::new());
    assert_eq!(s(3).support(), BTreeSet::from([3]));
    assert_eq!(
        Expr::diff(Expr::min2(s(0), s(1)), s(1)).support(),
        BTreeSet::from([0, 1])
    );
}

#[test]
fn homogeneity_degree() {
    assert_eq!(s(0).homogeneity_degree(), HomogeneityDegree::One);
    let mean = Expr::mean(Alpha::Finite(2.0), vec![s(0), s(1)]).unwrap();
    assert_eq!(
        Expr::diff(mean, Expr::max2(s(2), s(3))).homogeneity_degree(),
        HomogeneityDegree::Zero
    );
    assert_eq!(
        Expr::diff(s(0), Expr::Zero).homogeneity_degree(),
        HomogeneityDegree::Unknown
    );
}

#[test]
fn size_and_depth() {
    assert_eq!((s(0).size(), s(0).depth()), (1, 0));
    let m = Expr::min2(s(0), s(1));
    assert_eq!((m.size(), m.depth()), (3, 1));
    let t = Expr::max2(Expr::min2(s(0), s(1)), Expr::min2(s(2), s(3)));
    assert_eq!((t.size(), t.depth()), (7, 2));
}

#[test]
fn parsing() {
    assert_eq!(e("(min s0 s1)"), Expr::min2(s(0), s(1)));
    assert_eq!(
        e("(diff (mean inf s0 s1) (mean -inf s0 s1))"),
        Expr::diff(
            Expr::Mean(Alpha::PosInf, vec![s(0), s(1)]),
            Expr::Mean(Alpha::NegInf, vec![s(0), s(1)])
        )
    );
}

#[test]
fn power_means() {
    assert_eq!(power_mean(Alpha::Finite(1.0), &[2.5; 7]).unwrap(), 2.5);
    let g = power_mean(Alpha::Finite(1e-8), &[1.0, 2.0, 4.0]).unwrap();
    assert!((g - 2.0).abs() / 2.0 < 1e-6);
}

#[test]
fn additive_means() {
    let xs = [1.5, -2.0, 7.25, 0.5];
    let arith = xs.iter().sum::<f64>() / 4.0;
    assert!((additive_mean(Alpha::Finite(0.0), &xs).unwrap() - arith).abs() < 1e-12);
    assert_eq!(
        additive_mean(Alpha::NegInf, &[3.0, -1.5, 7.0]).unwrap(),
        -1.5
    );
    let v = additive_mean(Alpha::Finite(2.0), &[0.0, 2f64.ln()]).unwrap();
    assert!((v - 0.5 * 2.5f64.ln()).abs() < 1e-14);
    assert!((v - 0.45815).abs() < 1e-5);
}

#[test]
fn ordering_checks() {
    let grid: Vec<Alpha> = [-1.0, 0.0, 1.0, 2.0]
        .into_iter()
        .map(Alpha::Finite)
        .collect();
    assert!(mean_ordering_check(&[1.0, 2.0, 4.0], &grid).unwrap());
    let wide = [
        Alpha::NegInf,
        Alpha::Finite(-3.0),
        Alpha::Finite(0.5),
        Alpha::PosInf,
    ];
    assert!(mean_ordering_check(&[3.0; 5], &wide).unwrap());
    for a in wide {
        assert!((power_mean(a, &[3.0; 5]).unwrap() - 3.0).abs() < 1e-15);
    }
}

#[test]
fn bitonic_depths() {
    let one = batcher_bitonic(1);
    assert_eq!((one.comparator_count(), one.depth()), (0, 0));
    assert_eq!(batcher_bitonic(4).depth(), 3);
    assert_eq!(batcher_bitonic(8).depth(), 6);
}

#[test]
fn optimal_eight() {
    let opt = optimal_network_8();
    assert!(minmax_algebra::verify_sorts(&opt).unwrap());
    assert_eq!(opt.depth(), 6);
    let mut v: Vec<i32> = (1..=8).collect();
    opt.apply(&mut v);
    assert_eq!(v, (1..=8).collect::<Vec<_>>());
}

#[test]
fn verification() {
    use minmax_algebra::verify_sorts;
    assert!(verify_sorts(&batcher_bitonic(8)).unwrap());
    assert!(!verify_sorts(&ComparatorNetwork::new(3, vec![vec![(0, 1)]]).unwrap()).unwrap());
    assert!(verify_sorts(&ComparatorNetwork::new(1, vec![]).unwrap()).unwrap());
}

#[test]
fn quantiles() {
    assert_eq!(
        quantile_circuit(2, 1, &batcher_bitonic(2)).unwrap(),
        Expr::min2(s(0), s(1))
    );
    let q = quantile_circuit(4, 2, &batcher_bitonic(4)).unwrap();
    let base = [10.0, 20.0, 30.0, 40.0];
    let mut count = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    if BTreeSet::from(idx).len() == 4 {
                        let frame = idx.map(|i| base[i]);
                        assert_eq!(q.evaluate(&frame).unwrap(), 20.0);
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(count, 24);
    for variant in [SecondLargest::MinOfMaxes, SecondLargest::MaxOfMins] {
        let e = second_largest_depth2(2, variant).unwrap();
        assert_eq!(e.evaluate(&[4.0, -1.0]).unwrap(), -1.0);
    }
}

#[test]
fn negation_rewrites() {
    let n = |t: &str| t.parse::<NExpr>().unwrap();
    assert_eq!(
        eliminate_negation(&n("(neg (min s0 s1))")),
        n("(max ns0 ns1)")
    );
    assert_eq!(eliminate_negation(&n("(neg (neg s2))")), n("s2"));
    let orig = n("(neg (avg s0 (max s1 s2)))");
    let want = n("(avg ns0 (min ns1 ns2))");
    assert_eq!(eliminate_negation(&orig), want);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let f: Vec<f64> = (0..3)
            .map(|_| rand::Rng::random_range(&mut rng, 0.0..=1.0))
            .collect();
        assert!((orig.evaluate(&f).unwrap() - want.evaluate(&f).unwrap()).abs() < 1e-12);
    }
    assert_eq!(n("(min s0 s1)").evaluate(&[0.3, 0.8]).unwrap(), 0.3);
    assert_eq!(n("(neg s0)").evaluate(&[0.25]).unwrap(), 0.75);
    assert!((n("(avg s0 s1)").evaluate(&[0.2, 0.6]).unwrap() - 0.4).abs() < 1e-15);
}

#[test]
fn classifier_rules() {
    let z = Classifier::z(e("(diff s0 s1)")).unwrap();
    assert_eq!(z.classify(&[3.0, 5.0]).unwrap(), Verdict::Class1);
    assert_eq!(z.classify(&[4.0, 4.0]).unwrap(), Verdict::Abstain);
    let a = Classifier::a(e("s0"), -1.0).unwrap();
    assert_eq!(a.classify(&[-0.5]).unwrap(), Verdict::Abstain);
}

fn frame(values: &[f64], label: Label) -> SpectralFrame {
    SpectralFrame::new(values.to_vec(), Some(label))
}

#[test]
fn metrics() {
    let data = Dataset::new(
        2,
        vec![
            frame(&[1.0, 2.0], Label::Class1),
            frame(&[0.0, 3.0], Label::Class1),
            frame(&[5.0, 1.0], Label::Class2),
            frame(&[4.0, 0.0], Label::Class2),
        ],
    )
    .unwrap();
    let m = evaluate_on_dataset(&Classifier::z(e("(diff s0 s1)")).unwrap(), &data).unwrap();
    assert_eq!((m.accuracy, m.coverage), (Some(1.0), 1.0));
    let never = Classifier::z(Expr::Zero).unwrap();
    let m = evaluate_on_dataset(&never, &data).unwrap();
    assert_eq!((m.accuracy, m.coverage), (None, 0.0));
}

#[test]
fn volume_invariance() {
    let frames = [
        SpectralFrame::new(vec![1.0, 3.0], None),
        SpectralFrame::new(vec![2.0, -1.0], None),
    ];
    let diff = Classifier::z(e("(diff s0 s1)")).unwrap();
    assert!(volume_invariance_test(&diff, &frames, &[-10.0, 0.0, 10.0]).unwrap());
    let level = Classifier::z(s(0)).unwrap();
    let quiet = [SpectralFrame::new(vec![-5.0], None)];
    assert!(!volume_invariance_test(&level, &quiet, &[10.0]).unwrap());
    assert!(volume_invariance_test(&level, &quiet, &[0.0]).unwrap());
}

#[test]
fn generators() {
    let palette = SearchConfig::default().palette;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let leaf = random_expr(
            4,
            Budget {
                max_depth: 0,
                max_size: 10,
            },
            &palette,
            &mut rng,
        );
        assert!(leaf.is_leaf());
    }
    let budget = Budget {
        max_depth: 5,
        max_size: 30,
    };
    let a = random_expr(4, budget, &palette, &mut ChaCha8Rng::seed_from_u64(9));
    let b = random_expr(4, budget, &palette, &mut ChaCha8Rng::seed_from_u64(9));
    assert_eq!(a, b);

    let cfg = SearchConfig {
        max_depth: 3,
        max_size: 9,
        ..SearchConfig::default()
    };
    for _ in 0..200 {
        let m = mutate(&s(2), 4, &cfg, &mut rng);
        assert!(m.depth() <= 3 && m.size() <= 9, "{m}");
    }
}

#[test]
fn commands() {
    assert_eq!(cmd_eval("(diff s0 s1)", "5,3\n").stdout, "2\n");
    assert_eq!(cmd_eval("(mean 0 s0 s1)", "1,3\n").stdout, "2\n");
    assert_eq!(cmd_eval("(mean -inf s0 s1 s2)", "4,1,9\n").stdout, "1\n");
    assert_eq!(
        cmd_synth_quantile(2, 2, QuantileSource::Bitonic).stdout,
        "(max s0 s1)\n"
    );
    let q = cmd_synth_quantile(8, 1, QuantileSource::Opt8).stdout;
    let q: Expr = q.trim().parse().unwrap();
    let f = [0.5, -3.0, 2.0, 7.0, -1.0, 4.0, 0.0, 1.0];
    assert_eq!(q.evaluate(&f).unwrap(), -3.0);
    let net = batcher_bitonic(8);
    assert_eq!(
        cmd_verify(&net.to_string()).stdout,
        format!(
            "sorts: yes, depth: 6, comparators: {}\n",
            net.comparator_count()
        )
    );
}

#[test]
fn means_check_suite_passes() {
    let out = cmd_check("means");
    assert_eq!(out.code, 0, "{}", out.stdout);
}
