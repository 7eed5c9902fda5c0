//! Synthetic two-class spectral data: formant-like bump profiles, Gaussian
//! noise, and a random global shift per frame standing in for volume.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::classifier::{Dataset, Label, SpectralFrame};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub width: usize,
    pub frames_per_class: usize,
    pub class1_bumps: Vec<usize>,
    pub class2_bumps: Vec<usize>,
    pub bump_height: f64,
    pub noise_sigma: f64,
    /// Inclusive range of the per-frame shift; equal ends give a fixed shift.
    pub shift_range: (f64, f64),
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            width: 8,
            frames_per_class: 500,
            class1_bumps: vec![1, 4],
            class2_bumps: vec![2, 6],
            bump_height: 3.0,
            noise_sigma: 0.5,
            shift_range: (-5.0, 5.0),
            seed: 7,
        }
    }
}

/// One generated frame before the shift is applied.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDraw {
    pub label: Label,
    pub unshifted: Vec<f64>,
    pub shift: f64,
}

impl SyntheticDraw {
    pub fn frame(&self) -> SpectralFrame {
        SpectralFrame::new(
            self.unshifted.iter().map(|v| v + self.shift).collect(),
            Some(self.label),
        )
    }
}

impl SyntheticSpec {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.width < 2 {
            return bad(format!("width {} is below 2", self.width));
        }
        if let Some(b) = self
            .class1_bumps
            .iter()
            .chain(&self.class2_bumps)
            .find(|&&b| b >= self.width)
        {
            return bad(format!("bump channel {b} is outside width {}", self.width));
        }
        if !self.bump_height.is_finite()
            || !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite())
        {
            return bad("bump height and noise sigma must be finite, sigma non-negative".into());
        }
        let (lo, hi) = self.shift_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return bad(format!("bad shift range [{lo}, {hi}]"));
        }
        Ok(())
    }

    pub fn profile(&self, label: Label) -> Vec<f64> {
        let bumps = match label {
            Label::Class1 => &self.class1_bumps,
            Label::Class2 => &self.class2_bumps,
        };
        let mut p = vec![0.0; self.width];
        for &b in bumps {
            p[b] = self.bump_height;
        }
        p
    }

    /// Frames alternate class 1, class 2. Noise and shifts come from
    /// separate streams, so changing the shift range leaves the unshifted
    /// draws untouched.
    pub fn draws(&self) -> Result<Vec<SyntheticDraw>> {
        self.validate()?;
        let mut noise_rng = ChaCha8Rng::seed_from_u64(self.seed);
        noise_rng.set_stream(0);
        let mut shift_rng = ChaCha8Rng::seed_from_u64(self.seed);
        shift_rng.set_stream(1);
        let noise = Normal::new(0.0, self.noise_sigma).expect("sigma validated");
        let (lo, hi) = self.shift_range;
        let profiles = [self.profile(Label::Class1), self.profile(Label::Class2)];
        let mut out = Vec::with_capacity(2 * self.frames_per_class);
        for _ in 0..self.frames_per_class {
            for (label, profile) in [Label::Class1, Label::Class2].into_iter().zip(&profiles) {
                let unshifted = profile
                    .iter()
                    .map(|p| p + noise.sample(&mut noise_rng))
                    .collect();
                let shift = if lo == hi {
                    lo
                } else {
                    shift_rng.random_range(lo..=hi)
                };
                out.push(SyntheticDraw {
                    label,
                    unshifted,
                    shift,
                });
            }
        }
        Ok(out)
    }
}

pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<Dataset> {
    let frames = spec.draws()?.iter().map(SyntheticDraw::frame).collect();
    Dataset::new(spec.width, frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_unshifted_frames_are_profiles() {
        let spec = SyntheticSpec {
            noise_sigma: 0.0,
            shift_range: (0.0, 0.0),
            frames_per_class: 3,
            ..SyntheticSpec::default()
        };
        let data = generate_synthetic(&spec).unwrap();
        assert_eq!(data.len(), 6);
        for frame in data.frames() {
            assert_eq!(frame.values, spec.profile(frame.label.unwrap()));
        }
        assert_eq!(
            spec.profile(Label::Class1),
            vec![0.0, 3.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn shift_is_additive_and_independent_of_noise() {
        let spec = SyntheticSpec {
            frames_per_class: 50,
            ..SyntheticSpec::default()
        };
        let draws = spec.draws().unwrap();
        for d in &draws {
            assert!((-5.0..=5.0).contains(&d.shift));
            for (f, u) in d.frame().values.iter().zip(&d.unshifted) {
                assert!((f - d.shift - u).abs() < 1e-12);
            }
        }
        let flat = SyntheticSpec {
            shift_range: (0.0, 0.0),
            ..spec.clone()
        };
        let flat_draws = flat.draws().unwrap();
        for (a, b) in draws.iter().zip(&flat_draws) {
            assert_eq!(a.unshifted, b.unshifted);
        }
        assert_eq!(spec.draws().unwrap(), draws);
    }

    #[test]
    fn rejects_bad_specs() {
        for spec in [
            SyntheticSpec {
                width: 1,
                class1_bumps: vec![],
                class2_bumps: vec![],
                ..Default::default()
            },
            SyntheticSpec {
                class2_bumps: vec![8],
                ..Default::default()
            },
            SyntheticSpec {
                noise_sigma: -1.0,
                ..Default::default()
            },
            SyntheticSpec {
                shift_range: (1.0, -1.0),
                ..Default::default()
            },
        ] {
            assert!(generate_synthetic(&spec).is_err());
        }
    }
}
