//! Threshold classifiers over expressions, labelled spectral datasets, and
//! evaluation metrics.
//!
//! For an expression `f` and threshold `c` the verdict on a frame `s` is
//!
//! | kind  | `f(s) < c` | `f(s) > c` | `f(s) = c` |
//! |-------|------------|------------|------------|
//! | `Z`   | class 1    | class 2    | abstain    |
//! | `B`   | class 1    | class 2    | abstain    |
//! | `A`   | class 1    | abstain    | abstain    |
//! | `A+`  | class 1    | abstain    | abstain    |
//!
//! `Z` uses `c = 0`, and `A+` is `A` with `c ≤ 0`.

use std::fmt;
use std::io;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::parse::parse_expr;
use crate::program::Program;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Class1,
    Class2,
}

impl Label {
    fn index(self) -> usize {
        match self {
            Label::Class1 => 0,
            Label::Class2 => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Class1,
    Class2,
    Abstain,
}

impl Verdict {
    pub fn label(self) -> Option<Label> {
        match self {
            Verdict::Class1 => Some(Label::Class1),
            Verdict::Class2 => Some(Label::Class2),
            Verdict::Abstain => None,
        }
    }

    fn index(self) -> usize {
        match self {
            Verdict::Class1 => 0,
            Verdict::Class2 => 1,
            Verdict::Abstain => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Class1 => "1",
            Verdict::Class2 => "2",
            Verdict::Abstain => "abstain",
        })
    }
}

/// One log-scale spectral frame, optionally labelled.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFrame {
    pub values: Vec<f64>,
    pub label: Option<Label>,
}

impl SpectralFrame {
    pub fn new(values: Vec<f64>, label: Option<Label>) -> Self {
        Self { values, label }
    }

    /// The frame with `c` added to every channel.
    pub fn shifted(&self, c: f64) -> SpectralFrame {
        SpectralFrame {
            values: self.values.iter().map(|v| v + c).collect(),
            label: self.label,
        }
    }
}

/// Frames of a common width with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    width: usize,
    frames: Vec<SpectralFrame>,
}

impl Dataset {
    pub fn new(width: usize, frames: Vec<SpectralFrame>) -> Result<Self> {
        for (row, frame) in frames.iter().enumerate() {
            if frame.values.len() != width {
                return Err(Error::Dataset(format!(
                    "frame {row} has {} channels, expected {width}",
                    frame.values.len()
                )));
            }
            if frame.values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dataset(format!(
                    "frame {row} has a non-finite value"
                )));
            }
        }
        Ok(Self { width, frames })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn frames(&self) -> &[SpectralFrame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Reads the `label,ch0,...,chW-1` CSV format. Labels are `1` or `2`;
    /// an empty label cell leaves the frame unlabelled.
    pub fn read_csv<R: io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers().map_err(csv_error)?.clone();
        if header.get(0) != Some("label") {
            return Err(Error::Dataset("header must start with `label`".into()));
        }
        for (i, name) in header.iter().enumerate().skip(1) {
            if name != format!("ch{}", i - 1) {
                return Err(Error::Dataset(format!(
                    "header column {i} is `{name}`, expected `ch{}`",
                    i - 1
                )));
            }
        }
        let width = header.len() - 1;
        let mut frames = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(csv_error)?;
            let line = record.position().map_or(0, |p| p.line());
            let label = match record.get(0) {
                Some("1") => Some(Label::Class1),
                Some("2") => Some(Label::Class2),
                Some("") => None,
                other => {
                    return Err(Error::Dataset(format!(
                        "line {line}: bad label {:?}",
                        other.unwrap_or_default()
                    )))
                }
            };
            let values = record
                .iter()
                .skip(1)
                .map(|cell| {
                    cell.parse::<f64>()
                        .map_err(|_| Error::Dataset(format!("line {line}: bad number `{cell}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            frames.push(SpectralFrame::new(values, label));
        }
        Dataset::new(width, frames)
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec!["label".to_string()];
        header.extend((0..self.width).map(|i| format!("ch{i}")));
        wtr.write_record(&header).map_err(csv_error)?;
        for frame in &self.frames {
            let label = match frame.label {
                Some(Label::Class1) => "1",
                Some(Label::Class2) => "2",
                None => "",
            };
            let mut row = vec![label.to_string()];
            row.extend(frame.values.iter().map(f64::to_string));
            wtr.write_record(&row).map_err(csv_error)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dataset::read_csv(s.as_bytes())
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Dataset(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    Z,
    B,
    A,
    APlus,
}

impl ClassifierKind {
    /// Whether the kind carries a fitted threshold.
    pub fn has_threshold(self) -> bool {
        self != ClassifierKind::Z
    }

    /// Whether the kind can only ever decide class 1.
    pub fn is_one_sided(self) -> bool {
        matches!(self, ClassifierKind::A | ClassifierKind::APlus)
    }
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassifierKind::Z => "Z",
            ClassifierKind::B => "B",
            ClassifierKind::A => "A",
            ClassifierKind::APlus => "A+",
        })
    }
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(ClassifierKind::Z),
            "B" => Ok(ClassifierKind::B),
            "A" => Ok(ClassifierKind::A),
            "A+" => Ok(ClassifierKind::APlus),
            other => Err(Error::ClassifierFormat(format!(
                "unknown classifier kind `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classifier {
    kind: ClassifierKind,
    expr: Expr,
    threshold: f64,
}

impl Classifier {
    /// `threshold` must be `None` for `Z` and a finite value otherwise;
    /// `A+` additionally requires it to be `≤ 0`.
    pub fn new(kind: ClassifierKind, expr: Expr, threshold: Option<f64>) -> Result<Self> {
        expr.validate()?;
        let threshold = match (kind, threshold) {
            (ClassifierKind::Z, None) => 0.0,
            (ClassifierKind::Z, Some(_)) => {
                return Err(Error::InvalidThreshold(
                    "Z classifiers have no threshold".into(),
                ))
            }
            (_, None) => return Err(Error::InvalidThreshold(format!("{kind} needs a threshold"))),
            (_, Some(c)) if !c.is_finite() => {
                return Err(Error::InvalidThreshold(format!("{c} is not finite")))
            }
            (ClassifierKind::APlus, Some(c)) if c > 0.0 => {
                return Err(Error::InvalidThreshold(format!(
                    "A+ requires c <= 0, got {c}"
                )))
            }
            (_, Some(c)) => c,
        };
        Ok(Self {
            kind,
            expr,
            threshold,
        })
    }

    pub fn z(expr: Expr) -> Result<Self> {
        Self::new(ClassifierKind::Z, expr, None)
    }

    pub fn b(expr: Expr, c: f64) -> Result<Self> {
        Self::new(ClassifierKind::B, expr, Some(c))
    }

    pub fn a(expr: Expr, c: f64) -> Result<Self> {
        Self::new(ClassifierKind::A, expr, Some(c))
    }

    pub fn a_plus(expr: Expr, c: f64) -> Result<Self> {
        Self::new(ClassifierKind::APlus, expr, Some(c))
    }

    pub fn kind(&self) -> ClassifierKind {
        self.kind
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn threshold(&self) -> Option<f64> {
        self.kind.has_threshold().then_some(self.threshold)
    }

    /// The verdict for an already evaluated `f(s)`. Ties abstain.
    pub fn decide(&self, value: f64) -> Verdict {
        decide(self.kind, self.threshold, value)
    }

    pub fn classify(&self, frame: &[f64]) -> Result<Verdict> {
        Ok(self.decide(self.expr.evaluate(frame)?))
    }

    /// Verdicts for every frame of a dataset, in order.
    pub fn classify_all(&self, dataset: &Dataset) -> Result<Vec<Verdict>> {
        let program = Program::compile(&self.expr);
        let values = program.evaluate_all(dataset.frames().iter().map(|f| &f.values[..]))?;
        Ok(values.into_iter().map(|v| self.decide(v)).collect())
    }
}

pub(crate) fn decide(kind: ClassifierKind, c: f64, value: f64) -> Verdict {
    if value < c {
        Verdict::Class1
    } else if value > c && !kind.is_one_sided() {
        Verdict::Class2
    } else {
        Verdict::Abstain
    }
}

impl fmt::Display for Classifier {
    /// Three lines: kind, threshold (`none` for `Z`), expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.kind)?;
        match self.threshold() {
            Some(c) => writeln!(f, "{c}")?,
            None => writeln!(f, "none")?,
        }
        writeln!(f, "{}", self.expr)
    }
}

impl FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut next = |what: &str| {
            lines
                .next()
                .ok_or_else(|| Error::ClassifierFormat(format!("missing the {what}")))
        };
        let kind: ClassifierKind = next("kind")?.parse()?;
        let threshold = match next("threshold")? {
            "none" => None,
            text => Some(
                text.parse::<f64>()
                    .map_err(|_| Error::InvalidThreshold(format!("`{text}`")))?,
            ),
        };
        let expr = parse_expr(next("expression")?)?;
        Classifier::new(kind, expr, threshold)
    }
}

/// Verdict-by-label counts. Rows are verdicts (class 1, class 2, abstain),
/// columns true labels.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Confusion {
    counts: [[usize; 2]; 3],
}

impl Confusion {
    pub fn get(&self, verdict: Verdict, label: Label) -> usize {
        self.counts[verdict.index()][label.index()]
    }

    pub fn add(&mut self, verdict: Verdict, label: Label) {
        self.counts[verdict.index()][label.index()] += 1;
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn decided(&self) -> usize {
        self.counts[..2].iter().flatten().sum()
    }

    pub fn correct(&self) -> usize {
        self.counts[0][0] + self.counts[1][1]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub confusion: Confusion,
    /// Decided frames over all frames.
    pub coverage: f64,
    /// Correct over decided frames; `None` when nothing was decided.
    pub accuracy: Option<f64>,
}

impl Metrics {
    pub fn from_confusion(confusion: Confusion) -> Self {
        let decided = confusion.decided();
        Self {
            confusion,
            coverage: decided as f64 / confusion.total() as f64,
            accuracy: (decided > 0).then(|| confusion.correct() as f64 / decided as f64),
        }
    }
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.accuracy {
            Some(a) => writeln!(f, "accuracy: {a}")?,
            None => writeln!(f, "accuracy: undefined")?,
        }
        writeln!(f, "coverage: {}", self.coverage)?;
        writeln!(f, "confusion (verdict \\ label): label1 label2")?;
        for verdict in [Verdict::Class1, Verdict::Class2, Verdict::Abstain] {
            writeln!(
                f,
                "  {verdict}: {} {}",
                self.confusion.get(verdict, Label::Class1),
                self.confusion.get(verdict, Label::Class2)
            )?;
        }
        Ok(())
    }
}

/// Classifies every labelled frame and tallies the results.
pub fn evaluate_on_dataset(cl: &Classifier, dataset: &Dataset) -> Result<Metrics> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let verdicts = cl.classify_all(dataset)?;
    let mut confusion = Confusion::default();
    for (row, (frame, verdict)) in dataset.frames().iter().zip(verdicts).enumerate() {
        let label = frame
            .label
            .ok_or_else(|| Error::Dataset(format!("frame {row} is unlabelled")))?;
        confusion.add(verdict, label);
    }
    Ok(Metrics::from_confusion(confusion))
}

/// True iff shifting every channel of every frame by each of `shifts`
/// leaves every verdict unchanged.
pub fn volume_invariance_test(
    cl: &Classifier,
    frames: &[SpectralFrame],
    shifts: &[f64],
) -> Result<bool> {
    for frame in frames {
        let base = cl.classify(&frame.values)?;
        for &c in shifts {
            if cl.classify(&frame.shifted(c).values)? != base {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
