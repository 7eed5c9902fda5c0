// Power means and additive means across the alpha range.

use minmax_algebra::means::{additive_mean, power_mean};
use minmax_algebra::Alpha;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let xs = [1.0, 2.0, 4.0, 8.0];
    let alphas = [
        Alpha::NegInf,
        Alpha::Finite(-1.0),
        Alpha::Finite(0.0),
        Alpha::Finite(1.0),
        Alpha::Finite(2.0),
        Alpha::PosInf,
    ];

    println!("{:>6}  {:>12}  {:>12}", "alpha", "power", "additive");
    let mut last = f64::NEG_INFINITY;
    for a in alphas {
        let p = power_mean(a, &xs)?;
        let m = additive_mean(a, &xs)?;
        println!("{:>6}  {p:>12.6}  {m:>12.6}", a.to_string());
        assert!(p >= last);
        last = p;
    }

    // additive means of log values are logs of power means
    let logs: Vec<f64> = xs.iter().map(|x: &f64| x.ln()).collect();
    let via_logs = additive_mean(Alpha::Finite(2.0), &logs)?;
    let direct = power_mean(Alpha::Finite(2.0), &xs)?.ln();
    assert!((via_logs - direct).abs() < 1e-12);

    // large magnitudes do not overflow
    let loud = [480.0, 495.0, 500.0];
    println!(
        "A_8 of {loud:?} = {}",
        additive_mean(Alpha::Finite(8.0), &loud)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
