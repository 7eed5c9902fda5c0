// The command layer behind the `mmalg` binary, driven in-process.

use minmax_algebra::cli::{cmd_check, cmd_eval, cmd_synth_quantile, QuantileSource};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let out = cmd_eval("(diff (max s0 s1) s2)", "1,5,2\n0.5,0.25,1\n");
    print!("eval:\n{}", out.stdout);
    assert_eq!(out.code, 0);

    let out = cmd_synth_quantile(5, 3, QuantileSource::Bitonic);
    print!("median of 5 ({}):\n{}", out.stderr.trim(), out.stdout);

    let out = cmd_check("circuits");
    print!("{}", out.stdout);
    println!("exit code {}", out.code);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
