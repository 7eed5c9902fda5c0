use minmax_algebra::search::{
    evolve, evolve_observed, generate_synthetic, Fitness, SearchConfig, SyntheticSpec,
};
use minmax_algebra::{
    evaluate_on_dataset, Classifier, ClassifierKind, Dataset, Expr, HomogeneityDegree, Label,
    SpectralFrame,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_config() -> SearchConfig {
    SearchConfig {
        population: 60,
        generations: 8,
        ..SearchConfig::default()
    }
}

fn small_data(seed: u64) -> Dataset {
    generate_synthetic(&SyntheticSpec {
        frames_per_class: 60,
        noise_sigma: 1.5,
        seed,
        ..SyntheticSpec::default()
    })
    .unwrap()
}

/// Width-2 data labelled by the sign of `s0 - s1`.
fn sign_data() -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let frames = (0..200)
        .map(|_| loop {
            let (a, b): (f64, f64) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            if (a - b).abs() > 1e-3 {
                let label = if a - b < 0.0 {
                    Label::Class1
                } else {
                    Label::Class2
                };
                break SpectralFrame::new(vec![a, b], Some(label));
            }
        })
        .collect();
    Dataset::new(2, frames).unwrap()
}

#[test]
fn same_seed_same_result() {
    let data = small_data(3);
    let cfg = small_config();
    assert_eq!(evolve(&data, &cfg).unwrap(), evolve(&data, &cfg).unwrap());
}

#[test]
fn result_is_independent_of_thread_count() {
    let data = small_data(4);
    let cfg = small_config();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let a = single.install(|| evolve(&data, &cfg).unwrap());
    let b = evolve(&data, &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn elitism_keeps_best_fitness_monotone() {
    for fitness in [
        Fitness::Accuracy,
        Fitness::AccuracyCoverage,
        Fitness::Margin,
    ] {
        for kind in [
            ClassifierKind::Z,
            ClassifierKind::B,
            ClassifierKind::A,
            ClassifierKind::APlus,
        ] {
            let cfg = SearchConfig {
                fitness,
                kind,
                ..small_config()
            };
            let r = evolve(&small_data(5), &cfg).unwrap();
            assert_eq!(r.fitness_trace.len(), cfg.generations + 1);
            assert!(
                r.fitness_trace.windows(2).all(|w| w[1] >= w[0]),
                "{:?}",
                r.fitness_trace
            );
            assert_eq!(r.best_fitness, *r.fitness_trace.last().unwrap());
            assert_eq!(r.evaluations, cfg.population * (cfg.generations + 1));
            assert_eq!(r.best.kind(), kind);
        }
    }
}

#[test]
fn every_individual_respects_budget_and_width() {
    let cfg = SearchConfig {
        max_depth: 4,
        max_size: 15,
        ..small_config()
    };
    let data = small_data(6);
    let mut seen = 0;
    evolve_observed(&data, &cfg, |_, pop: &[Expr]| {
        for e in pop {
            e.validate().unwrap();
            assert!(e.depth() <= 4 && e.size() <= 15, "{e}");
            assert!(e.min_width() <= data.width());
            let alphas_ok = e.preorder().iter().all(|n| match n {
                Expr::Mean(a, _) => cfg.palette.contains(a),
                _ => true,
            });
            assert!(alphas_ok, "{e}");
            seen += 1;
        }
    })
    .unwrap();
    assert_eq!(seen, cfg.population * (cfg.generations + 1));
}

#[test]
fn volume_invariant_search_stays_degree_zero() {
    let cfg = SearchConfig {
        volume_invariant: true,
        kind: ClassifierKind::B,
        ..small_config()
    };
    evolve_observed(&small_data(7), &cfg, |_, pop: &[Expr]| {
        for e in pop {
            assert_eq!(e.homogeneity_degree(), HomogeneityDegree::Zero, "{e}");
        }
    })
    .unwrap();
}

#[test]
fn finds_the_sign_of_a_difference() {
    let cfg = SearchConfig {
        population: 100,
        generations: 30,
        seed: 7,
        ..SearchConfig::default()
    };
    let r = evolve(&sign_data(), &cfg).unwrap();
    assert_eq!(r.best_fitness, 1.0, "best {}", r.best);
}

#[test]
fn zero_generations_returns_best_initial_individual() {
    let cfg = SearchConfig {
        generations: 0,
        ..small_config()
    };
    let r = evolve(&small_data(8), &cfg).unwrap();
    assert_eq!(r.fitness_trace.len(), 1);
    assert_eq!(r.evaluations, cfg.population);
}

#[test]
fn rejects_unusable_inputs() {
    let empty = Dataset::new(3, vec![]).unwrap();
    assert!(evolve(&empty, &small_config()).is_err());
    let unlabelled = Dataset::new(1, vec![SpectralFrame::new(vec![1.0], None)]).unwrap();
    assert!(evolve(&unlabelled, &small_config()).is_err());
    let bad = SearchConfig {
        population: 0,
        ..small_config()
    };
    assert!(evolve(&small_data(1), &bad).is_err());
}

#[test]
fn hand_built_discriminator_separates_default_profiles() {
    let data = generate_synthetic(&SyntheticSpec {
        frames_per_class: 5_000,
        ..SyntheticSpec::default()
    })
    .unwrap();
    // class 1 bumps: 1, 4; class 2 bumps: 2, 6
    let cl: Classifier = "Z\nnone\n(diff (mean 0 s2 s6) (mean 0 s1 s4))"
        .parse()
        .unwrap();
    let m = evaluate_on_dataset(&cl, &data).unwrap();
    assert!(m.accuracy.unwrap() >= 0.99, "{m}");
}

#[test]
fn degree_zero_classifier_is_robust_to_volume() {
    let spec = SyntheticSpec {
        frames_per_class: 200,
        noise_sigma: 1.5,
        shift_range: (0.0, 0.0),
        ..SyntheticSpec::default()
    };
    let cfg = SearchConfig {
        volume_invariant: true,
        kind: ClassifierKind::B,
        ..small_config()
    };
    let r = evolve(&generate_synthetic(&spec).unwrap(), &cfg).unwrap();
    let flat = evaluate_on_dataset(
        &r.best,
        &generate_synthetic(&SyntheticSpec {
            seed: 11,
            ..spec.clone()
        })
        .unwrap(),
    )
    .unwrap();
    let loud = evaluate_on_dataset(
        &r.best,
        &generate_synthetic(&SyntheticSpec {
            seed: 11,
            shift_range: (-40.0, 40.0),
            ..spec
        })
        .unwrap(),
    )
    .unwrap();
    let (a, b) = (flat.accuracy.unwrap(), loud.accuracy.unwrap());
    assert!((a - b).abs() <= 0.02, "{a} vs {b}");
}
