//! Layered comparator networks: construction, application, exhaustive
//! verification, and a line-oriented text format.
//!
//! A comparator `(i, j)` with `i < j` leaves the smaller value on channel
//! `i`, so a sorting network sorts ascending.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, ParseError, ParseErrorKind, Result};

pub type Comparator = (usize, usize);

/// Largest width [`verify_sorts`] will enumerate (2^24 vectors).
pub const VERIFY_WIDTH_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparatorNetwork {
    width: usize,
    layers: Vec<Vec<Comparator>>,
}

impl ComparatorNetwork {
    /// Builds a network, checking that every comparator is ordered and in
    /// range and that no channel appears twice within a layer.
    pub fn new(width: usize, layers: Vec<Vec<Comparator>>) -> Result<Self> {
        for (depth, layer) in layers.iter().enumerate() {
            let mut used = vec![false; width];
            for &(i, j) in layer {
                if i >= j || j >= width {
                    return Err(Error::InvalidNetwork(format!(
                        "layer {depth}: comparator {i}:{j} must satisfy i < j < {width}"
                    )));
                }
                for c in [i, j] {
                    if std::mem::replace(&mut used[c], true) {
                        return Err(Error::InvalidNetwork(format!(
                            "layer {depth}: channel {c} used twice"
                        )));
                    }
                }
            }
        }
        Ok(Self { width, layers })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn layers(&self) -> &[Vec<Comparator>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn comparator_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn comparators(&self) -> impl Iterator<Item = Comparator> + '_ {
        self.layers.iter().flatten().copied()
    }

    /// Runs the network over `values` in place.
    ///
    /// # Panics
    ///
    /// If `values.len()` differs from the network width.
    pub fn apply<T: PartialOrd>(&self, values: &mut [T]) {
        assert_eq!(values.len(), self.width, "network width mismatch");
        for (i, j) in self.comparators() {
            if values[j] < values[i] {
                values.swap(i, j);
            }
        }
    }

    /// Applies the network to the 0/1 vector encoded in the low `width` bits.
    fn apply_bits(&self, mut bits: u32) -> u32 {
        for (i, j) in self.comparators() {
            if (bits >> i) & 1 == 1 && (bits >> j) & 1 == 0 {
                bits ^= (1 << i) | (1 << j);
            }
        }
        bits
    }
}

/// Exhaustive zero-one check: true iff the network sorts all `2^width`
/// binary vectors, which certifies it for every real input.
pub fn verify_sorts(net: &ComparatorNetwork) -> Result<bool> {
    let n = net.width;
    if n > VERIFY_WIDTH_BUDGET {
        return Err(Error::WidthBudget {
            width: n,
            budget: VERIFY_WIDTH_BUDGET,
        });
    }
    let comparators: Vec<Comparator> = net.comparators().collect();
    let flat = ComparatorNetwork {
        width: n,
        layers: vec![comparators],
    };
    Ok((0..1u32 << n).into_par_iter().all(|v| {
        let out = flat.apply_bits(v);
        let ones = out.count_ones() as usize;
        // sorted ascending: all ones sit on the top channels
        let expected = ((1u64 << ones) - 1) << (n - ones);
        u64::from(out) == expected
    }))
}

/// Batcher's bitonic sorter in its all-ascending form.
///
/// Widths that are not powers of two are padded with virtual `+inf`
/// channels above `n`. Those channels never move (every comparator keeps
/// the larger value on its higher channel), so comparators touching them
/// are dropped, together with any layer left empty.
pub fn batcher_bitonic(n: usize) -> ComparatorNetwork {
    let padded = n.max(1).next_power_of_two();
    let mut layers = Vec::new();
    let mut block = 2;
    while block <= padded {
        // merge step: mirror pairs inside each block
        layers.push(
            (0..padded)
                .filter_map(|i| {
                    let partner = i ^ (block - 1);
                    (partner > i).then_some((i, partner))
                })
                .collect::<Vec<_>>(),
        );
        let mut stride = block / 4;
        while stride > 0 {
            layers.push(
                (0..padded)
                    .filter(|i| i & stride == 0)
                    .map(|i| (i, i | stride))
                    .collect(),
            );
            stride /= 2;
        }
        block *= 2;
    }
    let layers = layers
        .into_iter()
        .map(|layer| {
            layer
                .into_iter()
                .filter(|&(_, j)| j < n)
                .collect::<Vec<_>>()
        })
        .filter(|layer| !layer.is_empty())
        .collect();
    ComparatorNetwork { width: n, layers }
}

/// A width-8 sorting network of depth 6 with 19 comparators.
pub fn optimal_network_8() -> ComparatorNetwork {
    ComparatorNetwork {
        width: 8,
        layers: vec![
            vec![(0, 2), (1, 3), (4, 6), (5, 7)],
            vec![(0, 4), (1, 5), (2, 6), (3, 7)],
            vec![(0, 1), (2, 3), (4, 5), (6, 7)],
            vec![(2, 4), (3, 5)],
            vec![(1, 4), (3, 6)],
            vec![(1, 2), (3, 4), (5, 6)],
        ],
    }
}

impl fmt::Display for ComparatorNetwork {
    /// `width n` followed by one line of space-separated `i:j` pairs per layer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "width {}", self.width)?;
        for layer in &self.layers {
            let pairs: Vec<String> = layer.iter().map(|(i, j)| format!("{i}:{j}")).collect();
            writeln!(f, "{}", pairs.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ComparatorNetwork {
    type Err = Error;

    /// Blank lines are skipped.
    fn from_str(text: &str) -> Result<Self> {
        let syntax = |line, column, msg: String| {
            Error::Parse(ParseError::new(ParseErrorKind::Syntax, (line, column), msg))
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, l)| (no + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| syntax(1, 1, "missing `width n` header".into()))?;
        let width = header
            .trim()
            .strip_prefix("width")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| syntax(header_no, 1, format!("bad header `{}`", header.trim())))?;
        let mut layers = Vec::new();
        for (no, line) in lines {
            let mut layer = Vec::new();
            for token in line.split_whitespace() {
                let column = token.as_ptr() as usize - line.as_ptr() as usize + 1;
                let pair = token
                    .split_once(':')
                    .and_then(|(i, j)| Some((i.parse().ok()?, j.parse().ok()?)))
                    .ok_or_else(|| syntax(no, column, format!("bad comparator `{token}`")))?;
                layer.push(pair);
            }
            layers.push(layer);
        }
        ComparatorNetwork::new(width, layers)
    }
}
