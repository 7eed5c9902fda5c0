// Rewrite `[0, 1]` circuits so that negation only touches inputs.

use minmax_algebra::{eliminate_negation, NExpr};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e: NExpr = "(neg (min s0 (avg s1 (neg (max s2 s3)))))".parse()?;
    let r = eliminate_negation(&e);
    println!("before: {e}  ({} negations)", e.neg_count());
    println!("after:  {r}  ({} negations)", r.neg_count());
    assert_eq!(r.neg_count(), 0);

    let frame = [0.2, 0.9, 0.4, 0.7];
    let (a, b) = (e.evaluate(&frame)?, r.evaluate(&frame)?);
    println!("values: {a} vs {b}");
    assert!((a - b).abs() < 1e-12);

    // inputs must lie in [0, 1]
    assert!(e.evaluate(&[0.2, 1.5, 0.0, 0.0]).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
