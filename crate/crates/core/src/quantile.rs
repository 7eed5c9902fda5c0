//! Order-statistic circuits built from `min` / `max` gates.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::network::{verify_sorts, ComparatorNetwork};

/// Gate of a shared (DAG) min/max circuit. Operands index earlier gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Input(usize),
    Min(usize, usize),
    Max(usize, usize),
}

/// Feed-forward min/max circuit with shared gates and one output per
/// channel, obtained by replacing each comparator with a `min`/`max` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateCircuit {
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl GateCircuit {
    pub fn from_network(net: &ComparatorNetwork) -> Self {
        let mut gates: Vec<Gate> = (0..net.width()).map(Gate::Input).collect();
        let mut outputs: Vec<usize> = (0..net.width()).collect();
        for (i, j) in net.comparators() {
            let (a, b) = (outputs[i], outputs[j]);
            gates.push(Gate::Min(a, b));
            outputs[i] = gates.len() - 1;
            gates.push(Gate::Max(a, b));
            outputs[j] = gates.len() - 1;
        }
        Self { gates, outputs }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Keeps only the gates feeding `channel`, which becomes the single
    /// output. Gate order is preserved.
    pub fn eliminate_dead_code(&self, channel: usize) -> GateCircuit {
        let mut live = vec![false; self.gates.len()];
        live[self.outputs[channel]] = true;
        for g in (0..self.gates.len()).rev() {
            if !live[g] {
                continue;
            }
            if let Gate::Min(a, b) | Gate::Max(a, b) = self.gates[g] {
                live[a] = true;
                live[b] = true;
            }
        }
        let mut renumber = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (g, gate) in self.gates.iter().enumerate() {
            if !live[g] {
                continue;
            }
            renumber[g] = gates.len();
            gates.push(match *gate {
                Gate::Input(i) => Gate::Input(i),
                Gate::Min(a, b) => Gate::Min(renumber[a], renumber[b]),
                Gate::Max(a, b) => Gate::Max(renumber[a], renumber[b]),
            });
        }
        GateCircuit {
            outputs: vec![renumber[self.outputs[channel]]],
            gates,
        }
    }

    /// Expands output `index` into a tree. Shared gates are duplicated.
    pub fn to_expr(&self, index: usize) -> Expr {
        self.expand(self.outputs[index])
    }

    fn expand(&self, gate: usize) -> Expr {
        match self.gates[gate] {
            Gate::Input(i) => Expr::Input(i),
            Gate::Min(a, b) => Expr::min2(self.expand(a), self.expand(b)),
            Gate::Max(a, b) => Expr::max2(self.expand(a), self.expand(b)),
        }
    }
}

/// Expression over `s0..s(n-1)` built only from binary `min` / `max`
/// computing the `rank`-th smallest input (1-based).
///
/// The source network must sort; its depth bounds the depth of the result.
pub fn quantile_circuit(n: usize, rank: usize, source: &ComparatorNetwork) -> Result<Expr> {
    if source.width() != n {
        return Err(Error::InvalidNetwork(format!(
            "source network has width {}, expected {n}",
            source.width()
        )));
    }
    if rank == 0 || rank > n {
        return Err(Error::InvalidRank { rank, width: n });
    }
    if !verify_sorts(source)? {
        return Err(Error::UnsortedNetwork);
    }
    Ok(GateCircuit::from_network(source)
        .eliminate_dead_code(rank - 1)
        .to_expr(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondLargest {
    /// `min` over the `n` maxima that each leave out one input.
    MinOfMaxes,
    /// `max` over all pairwise minima.
    MaxOfMins,
}

/// Depth-2 circuit with arbitrary-arity gates for the second largest of `n`
/// inputs. At `n = 2` the one-operand gates collapse and the result is a
/// single `min`.
pub fn second_largest_depth2(n: usize, variant: SecondLargest) -> Result<Expr> {
    if n < 2 {
        return Err(Error::InvalidRank { rank: 2, width: n });
    }
    if n == 2 {
        return Ok(Expr::min2(Expr::Input(0), Expr::Input(1)));
    }
    Ok(match variant {
        SecondLargest::MinOfMaxes => Expr::Min(
            (0..n)
                .map(|skip| Expr::Max((0..n).filter(|&i| i != skip).map(Expr::Input).collect()))
                .collect(),
        ),
        SecondLargest::MaxOfMins => Expr::Max(
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| Expr::min2(Expr::Input(i), Expr::Input(j))))
                .collect(),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{batcher_bitonic, optimal_network_8};

    fn kth_smallest(frame: &[f64], k: usize) -> f64 {
        let mut v = frame.to_vec();
        v.sort_by(f64::total_cmp);
        v[k - 1]
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn two_inputs() {
        let net = batcher_bitonic(2);
        assert_eq!(
            quantile_circuit(2, 1, &net).unwrap(),
            Expr::min2(Expr::Input(0), Expr::Input(1))
        );
        assert_eq!(
            quantile_circuit(2, 2, &net).unwrap().to_string(),
            "(max s0 s1)"
        );
        assert_eq!(
            quantile_circuit(1, 1, &batcher_bitonic(1)).unwrap(),
            Expr::Input(0)
        );
    }

    #[test]
    fn median_of_four_on_all_permutations() {
        let circuit = quantile_circuit(4, 2, &batcher_bitonic(4)).unwrap();
        for p in permutations(4) {
            let frame: Vec<f64> = p.iter().map(|&i| 10.0 * (i + 1) as f64).collect();
            assert_eq!(circuit.evaluate(&frame).unwrap(), 20.0);
        }
    }

    #[test]
    fn circuits_are_binary_and_shallow() {
        for (net, n) in [(optimal_network_8(), 8), (batcher_bitonic(7), 7)] {
            for k in 1..=n {
                let e = quantile_circuit(n, k, &net).unwrap();
                assert!(e.depth() <= net.depth());
                assert!(e.preorder().iter().all(|node| match node {
                    Expr::Min(c) | Expr::Max(c) => c.len() == 2,
                    Expr::Input(_) => true,
                    _ => false,
                }));
            }
        }
    }

    #[test]
    fn dead_code_elimination_keeps_only_the_cone() {
        let full = GateCircuit::from_network(&optimal_network_8());
        assert_eq!(full.gates().len(), 8 + 2 * 19);
        let min_cone = full.eliminate_dead_code(0);
        // min of 8 needs 7 min gates over 8 inputs
        assert_eq!(min_cone.gates().len(), 15);
        assert!(min_cone.gates()[8..]
            .iter()
            .all(|g| matches!(g, Gate::Min(..))));
        assert_eq!(min_cone.to_expr(0), full.to_expr(0));
    }

    #[test]
    fn rejects_bad_arguments() {
        let net = batcher_bitonic(4);
        assert!(matches!(
            quantile_circuit(4, 0, &net),
            Err(Error::InvalidRank { .. })
        ));
        assert!(quantile_circuit(4, 5, &net).is_err());
        assert!(quantile_circuit(5, 1, &net).is_err());
        let partial = ComparatorNetwork::new(3, vec![vec![(0, 1)]]).unwrap();
        assert!(matches!(
            quantile_circuit(3, 1, &partial),
            Err(Error::UnsortedNetwork)
        ));
    }

    #[test]
    fn second_largest_variants() {
        for variant in [SecondLargest::MinOfMaxes, SecondLargest::MaxOfMins] {
            let e = second_largest_depth2(2, variant).unwrap();
            assert_eq!(e.evaluate(&[3.0, 9.0]).unwrap(), 3.0);
            let e = second_largest_depth2(4, variant).unwrap();
            assert_eq!(e.depth(), 2);
            for p in permutations(4) {
                let frame: Vec<f64> = p.iter().map(|&i| (i + 1) as f64).collect();
                assert_eq!(e.evaluate(&frame).unwrap(), kth_smallest(&frame, 3));
            }
        }
        let e = second_largest_depth2(5, SecondLargest::MaxOfMins).unwrap();
        assert_eq!(e.children().len(), 10);
        assert!(second_largest_depth2(1, SecondLargest::MinOfMaxes).is_err());
    }
}
