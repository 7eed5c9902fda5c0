// Evolve a classifier on synthetic data.

use minmax_algebra::search::{evolve, generate_synthetic, SearchConfig, SyntheticSpec};
use minmax_algebra::{evaluate_on_dataset, ClassifierKind, HomogeneityDegree};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let train = generate_synthetic(&SyntheticSpec {
        frames_per_class: 150,
        ..SyntheticSpec::default()
    })?;
    let test = generate_synthetic(&SyntheticSpec {
        frames_per_class: 150,
        seed: 8,
        ..SyntheticSpec::default()
    })?;

    let config = SearchConfig {
        population: 80,
        generations: 15,
        kind: ClassifierKind::B,
        volume_invariant: true,
        ..SearchConfig::default()
    };
    let result = evolve(&train, &config)?;
    println!("fitness by generation: {:?}", result.fitness_trace);
    print!("best classifier:\n{}", result.best);
    assert_eq!(
        result.best.expr().homogeneity_degree(),
        HomogeneityDegree::Zero
    );

    println!("held-out:\n{}", evaluate_on_dataset(&result.best, &test)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
