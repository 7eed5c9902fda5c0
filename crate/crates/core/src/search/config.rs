use std::fmt;
use std::str::FromStr;

use crate::classifier::ClassifierKind;
use crate::error::{Error, Result};
use crate::expr::Alpha;
use crate::parse::parse_alpha;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fitness {
    /// Accuracy over decided frames (zero when nothing is decided).
    Accuracy,
    /// Correct verdicts over all frames.
    AccuracyCoverage,
    /// Mean of `(1 + tanh(y (c - f(s)))) / 2` with `y = +1` for class 1 and
    /// `-1` for class 2: a smooth score rewarding distance from the threshold.
    Margin,
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fitness::Accuracy => "accuracy",
            Fitness::AccuracyCoverage => "accuracy_coverage",
            Fitness::Margin => "margin",
        })
    }
}

impl FromStr for Fitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accuracy" => Ok(Fitness::Accuracy),
            "accuracy_coverage" => Ok(Fitness::AccuracyCoverage),
            "margin" => Ok(Fitness::Margin),
            other => Err(Error::InvalidConfig(format!("unknown fitness `{other}`"))),
        }
    }
}

/// Evolutionary search parameters.
///
/// The text form is one `key = value` per line; see [`SearchConfig::set`]
/// for the keys. Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament: usize,
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub max_depth: usize,
    pub max_size: usize,
    /// Ascending set of exponents available to mean nodes.
    pub palette: Vec<Alpha>,
    pub kind: ClassifierKind,
    pub seed: u64,
    pub fitness: Fitness,
    /// Restrict candidates to expressions of homogeneity degree zero.
    pub volume_invariant: bool,
}

pub fn default_palette() -> Vec<Alpha> {
    vec![
        Alpha::NegInf,
        Alpha::Finite(-2.0),
        Alpha::Finite(-1.0),
        Alpha::Finite(0.0),
        Alpha::Finite(1.0),
        Alpha::Finite(2.0),
        Alpha::PosInf,
    ]
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            population: 200,
            generations: 50,
            tournament: 4,
            mutation_prob: 0.2,
            crossover_prob: 0.7,
            max_depth: 8,
            max_size: 64,
            palette: default_palette(),
            kind: ClassifierKind::Z,
            seed: 7,
            fitness: Fitness::AccuracyCoverage,
            volume_invariant: false,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population == 0 {
            return Err(invalid("population must be positive"));
        }
        if self.tournament == 0 {
            return Err(invalid("tournament size must be positive"));
        }
        for (name, p) in [
            ("mutation", self.mutation_prob),
            ("crossover", self.crossover_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("{name} probability {p} is outside [0, 1]")));
            }
        }
        if self.max_size == 0 {
            return Err(invalid("max_size must be positive"));
        }
        if self.volume_invariant && (self.max_depth == 0 || self.max_size < 3) {
            return Err(invalid(
                "volume_invariant needs max_depth >= 1 and max_size >= 3",
            ));
        }
        if self.palette.is_empty() {
            return Err(invalid("alpha palette is empty"));
        }
        if self.palette.iter().any(|a| !a.is_valid()) {
            return Err(invalid("alpha palette holds an invalid value"));
        }
        if self
            .palette
            .windows(2)
            .any(|w| w[0].total_cmp(&w[1]).is_ge())
        {
            return Err(invalid("alpha palette must be strictly ascending"));
        }
        Ok(())
    }

    /// Sets one field from its text form.
    ///
    /// Keys: `population`, `generations`, `tournament`, `mutation`,
    /// `crossover`, `max_depth`, `max_size`, `palette` (comma separated
    /// alpha literals), `kind` (`Z`, `B`, `A`, `A+`), `seed`, `fitness`
    /// (`accuracy`, `accuracy_coverage`, `margin`), `volume_invariant`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| invalid(format!("`{key}`: cannot parse `{value}`")))
        }
        match key {
            "population" => self.population = num(key, value)?,
            "generations" => self.generations = num(key, value)?,
            "tournament" => self.tournament = num(key, value)?,
            "mutation" => self.mutation_prob = num(key, value)?,
            "crossover" => self.crossover_prob = num(key, value)?,
            "max_depth" => self.max_depth = num(key, value)?,
            "max_size" => self.max_size = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "volume_invariant" => self.volume_invariant = num(key, value)?,
            "fitness" => self.fitness = value.parse()?,
            "kind" => {
                self.kind = value
                    .parse()
                    .map_err(|_| invalid(format!("unknown classifier kind `{value}`")))?
            }
            "palette" => {
                let mut palette = value
                    .split(',')
                    .map(|a| {
                        parse_alpha(a.trim())
                            .ok_or_else(|| invalid(format!("bad alpha `{}`", a.trim())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                palette.sort_by(Alpha::total_cmp);
                palette.dedup_by(|a, b| a.total_cmp(b).is_eq());
                self.palette = palette;
            }
            other => return Err(invalid(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected `key = value`", no + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }
}

impl FromStr for SearchConfig {
    type Err = Error;

    /// Defaults overridden by the given lines, then validated.
    fn from_str(s: &str) -> Result<Self> {
        let mut config = SearchConfig::default();
        config.apply_text(s)?;
        config.validate()?;
        Ok(config)
    }
}

impl fmt::Display for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let palette: Vec<String> = self.palette.iter().map(Alpha::to_string).collect();
        writeln!(f, "population = {}", self.population)?;
        writeln!(f, "generations = {}", self.generations)?;
        writeln!(f, "tournament = {}", self.tournament)?;
        writeln!(f, "mutation = {}", self.mutation_prob)?;
        writeln!(f, "crossover = {}", self.crossover_prob)?;
        writeln!(f, "max_depth = {}", self.max_depth)?;
        writeln!(f, "max_size = {}", self.max_size)?;
        writeln!(f, "palette = {}", palette.join(", "))?;
        writeln!(f, "kind = {}", self.kind)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "fitness = {}", self.fitness)?;
        writeln!(f, "volume_invariant = {}", self.volume_invariant)
    }
}
