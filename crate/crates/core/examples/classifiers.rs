// A hand-built volume-invariant classifier on synthetic data.

use minmax_algebra::search::{generate_synthetic, SyntheticSpec};
use minmax_algebra::{evaluate_on_dataset, volume_invariance_test, Classifier, Verdict};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // class 1 has bumps on channels 1 and 4, class 2 on 2 and 6
    let data = generate_synthetic(&SyntheticSpec::default())?;
    let cl: Classifier = "Z\nnone\n(diff (mean 0 s2 s6) (mean 0 s1 s4))\n".parse()?;
    let metrics = evaluate_on_dataset(&cl, &data)?;
    println!("{metrics}");

    let frames = &data.frames()[..50];
    assert!(volume_invariance_test(
        &cl,
        frames,
        &[-100.0, -3.5, 42.0, 100.0]
    )?);

    // a one-sided classifier abstains outside its region
    let cautious: Classifier = "A\n-1\n(diff (mean 0 s2 s6) (mean 0 s1 s4))\n".parse()?;
    let verdicts = cautious.classify_all(&data)?;
    let abstained = verdicts.iter().filter(|v| **v == Verdict::Abstain).count();
    println!("one-sided: abstained on {abstained} of {}", verdicts.len());
    println!("{}", evaluate_on_dataset(&cautious, &data)?);

    print!("saved form:\n{cl}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
