// Min/max circuits selecting an order statistic.

use minmax_algebra::{
    batcher_bitonic, optimal_network_8, quantile_circuit, second_largest_depth2, SecondLargest,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let frame = [0.3, -1.2, 2.5, 0.9, 1.7, -0.4, 3.1, 0.0];

    for (name, net) in [
        ("bitonic", batcher_bitonic(8)),
        ("opt8", optimal_network_8()),
    ] {
        let median = quantile_circuit(8, 4, &net)?;
        println!(
            "{name:>7} lower median: size {}, depth {}, value {}",
            median.size(),
            median.depth(),
            median.evaluate(&frame)?
        );
    }

    let mut sorted = frame;
    sorted.sort_by(f64::total_cmp);
    for k in 1..=8 {
        let q = quantile_circuit(8, k, &optimal_network_8())?;
        assert_eq!(q.evaluate(&frame)?, sorted[k - 1]);
    }

    // second largest in depth 2
    for variant in [SecondLargest::MinOfMaxes, SecondLargest::MaxOfMins] {
        let e = second_largest_depth2(4, variant)?;
        println!("{variant:?}: {e}");
        assert_eq!(e.evaluate(&[4.0, 9.0, 1.0, 7.0])?, 7.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
