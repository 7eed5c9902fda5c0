// Parse an expression, inspect it, and evaluate it on a frame.

use minmax_algebra::{parse_expr, Expr, HomogeneityDegree, Program};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // spectral tilt: loudest of the low channels minus a soft max of the high ones
    let e: Expr = "(diff (max s0 s1 s2) (mean 2 s5 s6 s7))".parse()?;
    println!("expression:  {e}");
    println!("support:     {:?}", e.support());
    println!("size/depth:  {}/{}", e.size(), e.depth());
    assert_eq!(e.homogeneity_degree(), HomogeneityDegree::Zero);

    let frame = [1.0, 4.0, 2.0, 0.0, 0.0, -1.0, 0.5, -2.0];
    let v = e.evaluate(&frame)?;
    println!("f(frame)   = {v:.6}");

    // degree zero: adding a constant to every channel changes nothing
    let louder: Vec<f64> = frame.iter().map(|x| x + 30.0).collect();
    let w = e.evaluate(&louder)?;
    println!("f(frame+30)= {w:.6}");
    assert!((v - w).abs() < 1e-9);

    // compiled form for bulk evaluation
    let program = Program::compile(&e);
    assert_eq!(program.evaluate(&frame)?, v);

    // parse errors carry a position
    match parse_expr("(min s0\n  (max s1 s2)") {
        Err(err) => println!("parse error: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
