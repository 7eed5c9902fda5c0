// Build, print, parse and verify comparator networks.

use minmax_algebra::{batcher_bitonic, optimal_network_8, verify_sorts, ComparatorNetwork};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [4, 6, 8, 13, 16] {
        let net = batcher_bitonic(n);
        println!(
            "bitonic n={n:>2}: depth {:>2}, {:>3} comparators, sorts: {}",
            net.depth(),
            net.comparator_count(),
            verify_sorts(&net)?
        );
    }

    let opt = optimal_network_8();
    println!("\noptimal 8-input network:\n{opt}");
    assert_eq!(opt.depth(), 6);
    assert!(verify_sorts(&opt)?);

    // the text form round-trips
    let back: ComparatorNetwork = opt.to_string().parse()?;
    assert_eq!(back, opt);

    // dropping the last layer breaks it
    let broken = ComparatorNetwork::new(8, opt.layers()[..5].to_vec())?;
    println!("without last layer, sorts: {}", verify_sorts(&broken)?);

    let mut values = [5, 3, 8, 1, 9, 2, 7, 4];
    opt.apply(&mut values);
    println!("sorted: {values:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
