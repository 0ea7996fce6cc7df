//! Brute-force reference implementations.
//!
//! The distance measure for node failures is the graph weight: the
//! size of a minimum vertex cover of the nonzero edges. A code
//! corrects `rho` failures exactly when nonzero codewords all have
//! weight above `rho`, so an exact cover search plus exhaustive
//! codeword enumeration gives ground truth for small parameters. The
//! pattern verifier drives the production decoders over every failure
//! pattern and is the centerpiece of the self test.

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::decode::{decode_double, decode_erasures};
use crate::graph::{CodeSpec, LabeledGraph};
use crate::matrix::SystematicForm;
use crate::{Error, Result};

/// Smallest vertex cover of the nonzero edges with size at most `cap`,
/// or `None` if every cover is larger.
///
/// Self loops force their node into the cover; the remainder is an
/// exact search by increasing subset size, so the first hit is minimal.
pub fn cover_within(g: &LabeledGraph, cap: usize) -> Option<usize> {
    let edges = g.nonzero_edges();
    let forced: Vec<usize> =
        edges.iter().filter(|&&(i, j)| i == j).map(|&(i, _)| i).collect();
    if forced.len() > cap {
        return None;
    }
    let uncovered: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(i, j)| !forced.contains(&i) && !forced.contains(&j))
        .collect();
    if uncovered.is_empty() {
        return Some(forced.len());
    }
    let mut free: Vec<usize> =
        uncovered.iter().flat_map(|&(i, j)| [i, j]).collect();
    free.sort_unstable();
    free.dedup();
    for extra in 1..=free.len().min(cap - forced.len()) {
        for combo in free.iter().combinations(extra) {
            let covers = uncovered
                .iter()
                .all(|&(i, j)| combo.contains(&&i) || combo.contains(&&j));
            if covers {
                return Some(forced.len() + extra);
            }
        }
    }
    None
}

/// Exact graph weight: the minimum vertex cover size of the nonzero
/// edges. Exponential search, intended for small `n`.
pub fn graph_weight(g: &LabeledGraph) -> usize {
    cover_within(g, g.node_count()).expect("the full node set always covers")
}

/// Distance between two labelings: the weight of their difference.
pub fn distance(a: &LabeledGraph, b: &LabeledGraph) -> usize {
    let mut diff = a.clone();
    diff.xor_assign(b);
    graph_weight(&diff)
}

/// Outcome of an exhaustive minimum-distance enumeration.
#[derive(Clone, Debug)]
pub struct DistanceReport {
    pub spec: CodeSpec,
    pub dimension: usize,
    pub min_distance: usize,
    /// A codeword attaining the minimum.
    pub witness: LabeledGraph,
}

/// Enumerate all `2^k` codewords and take the minimum weight.
///
/// Refuses to run when the dimension exceeds `max_dim`; the intended
/// range is `n <= 7`.
pub fn min_distance(spec: &CodeSpec, max_dim: usize) -> Result<DistanceReport> {
    let form = SystematicForm::new(*spec);
    let dim = form.dimension();
    if dim > max_dim {
        return Err(Error::DimensionTooLarge { dim, cap: max_dim });
    }
    assert!(dim >= 1, "the zero code has no minimum distance");
    let mut best = usize::MAX;
    let mut witness = None;
    for index in 1..1u64 << dim {
        let g = form.encode_index(index);
        // Only a strictly better cover matters, which caps the search.
        let cap = best.saturating_sub(1).min(spec.n());
        if let Some(w) = cover_within(&g, cap) {
            best = w;
            witness = Some(g);
        }
    }
    Ok(DistanceReport {
        spec: *spec,
        dimension: dim,
        min_distance: best,
        witness: witness.expect("a nonzero codeword exists when dim >= 1"),
    })
}

/// Outcome of driving a decoder over every failure pattern.
#[derive(Clone, Debug)]
pub struct PatternReport {
    pub spec: CodeSpec,
    pub rho: usize,
    pub trials: usize,
    pub patterns: usize,
    pub decodes: usize,
    pub mismatches: usize,
    pub first_failure: Option<String>,
}

impl PatternReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    /// Machine-readable summary, one `key=value` per line.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("spec={}", self.spec),
            format!("rho={}", self.rho),
            format!("trials={}", self.trials),
            format!("patterns={}", self.patterns),
            format!("decodes={}", self.decodes),
            format!("mismatches={}", self.mismatches),
            format!("status={}", if self.passed() { "pass" } else { "fail" }),
        ];
        if let Some(first) = &self.first_failure {
            lines.push(format!("first_failure={first}"));
        }
        lines
    }
}

/// Round-trip `trials` random codewords through every failure pattern
/// of `rho` nodes, decoding with the structured decoder for up to two
/// failures and the linear solver beyond.
pub fn verify_all_patterns(
    spec: &CodeSpec,
    rho: usize,
    trials: usize,
    seed: u64,
) -> Result<PatternReport> {
    if rho > spec.radius() {
        return Err(Error::TooManyFailures { got: rho, radius: spec.radius() });
    }
    let n = spec.n();
    let form = SystematicForm::new(*spec);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let patterns: Vec<Vec<usize>> = (0..n).combinations(rho).collect();
    let mut mismatches = 0;
    let mut first_failure = None;
    for trial in 0..trials {
        let g = form.random_codeword(&mut rng);
        for pattern in &patterns {
            let eg = g.erase(pattern)?;
            let decoded = if rho <= 2 && n >= 5 {
                decode_double(&eg, spec)
            } else {
                decode_erasures(&eg, spec)
            };
            let ok = matches!(&decoded, Ok(d) if *d == g);
            if !ok {
                mismatches += 1;
                first_failure.get_or_insert_with(|| {
                    let why = match decoded {
                        Ok(_) => "decoded to a different graph".to_string(),
                        Err(e) => e.to_string(),
                    };
                    format!("trial {trial} pattern {pattern:?}: {why}")
                });
            }
        }
    }
    Ok(PatternReport {
        spec: *spec,
        rho,
        trials,
        patterns: patterns.len(),
        decodes: trials * patterns.len(),
        mismatches,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Code;

    fn graph_with(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        let mut g = LabeledGraph::zeros(n);
        for &(i, j) in edges {
            g.set(i, j, true);
        }
        g
    }

    #[test]
    fn weight_of_simple_supports() {
        assert_eq!(graph_weight(&LabeledGraph::zeros(5)), 0);
        assert_eq!(graph_weight(&graph_with(5, &[(1, 0)])), 1);
        assert_eq!(graph_weight(&graph_with(5, &[(2, 2)])), 1);
        // A star is covered by its center.
        assert_eq!(graph_weight(&graph_with(5, &[(1, 0), (2, 0), (3, 0), (4, 0)])), 1);
        // Disjoint edges need one node each.
        assert_eq!(graph_weight(&graph_with(5, &[(1, 0), (3, 2)])), 2);
        // Self loops force their nodes even when an edge could share.
        assert_eq!(graph_weight(&graph_with(5, &[(0, 0), (1, 1), (1, 0)])), 2);
        // Full support forces every node.
        assert_eq!(graph_weight(&LabeledGraph::from_fn(4, |_, _| true)), 4);
    }

    #[test]
    fn weight_of_a_five_cycle_is_three() {
        let cycle: Vec<(usize, usize)> = (0..5).map(|v| ((v + 1) % 5, v)).collect();
        assert_eq!(graph_weight(&graph_with(5, &cycle)), 3);
    }

    #[test]
    fn cover_within_caps_the_search() {
        let g = graph_with(5, &[(1, 0), (3, 2)]);
        assert_eq!(cover_within(&g, 1), None);
        assert_eq!(cover_within(&g, 2), Some(2));
        assert_eq!(cover_within(&LabeledGraph::zeros(5), 0), Some(0));
    }

    #[test]
    fn distance_is_symmetric_and_reflexive() {
        let a = graph_with(5, &[(1, 0), (2, 2), (4, 3)]);
        let b = graph_with(5, &[(1, 0), (4, 2)]);
        assert_eq!(distance(&a, &a), 0);
        assert_eq!(distance(&a, &b), distance(&b, &a));
        // a ^ b has support {(2,2), (4,3), (4,2)}: loop at 2 plus two
        // edges sharing node 4.
        assert_eq!(distance(&a, &b), 2);
    }

    #[test]
    fn exhaustive_distances_meet_the_family_bounds() {
        let c2 = CodeSpec::new(5, Code::C2).unwrap();
        let report = min_distance(&c2, 20).unwrap();
        assert_eq!(report.dimension, 6);
        assert!(report.min_distance >= 3, "double-failure code needs weight > 2");
        assert_eq!(graph_weight(&report.witness), report.min_distance);

        let c3 = CodeSpec::new(5, Code::C3).unwrap();
        let report = min_distance(&c3, 20).unwrap();
        assert!(report.min_distance >= 4, "triple-failure code needs weight > 3");
        assert_eq!(graph_weight(&report.witness), report.min_distance);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let spec = CodeSpec::new(11, Code::C2).unwrap();
        assert_eq!(
            min_distance(&spec, 20).unwrap_err(),
            Error::DimensionTooLarge { dim: 45, cap: 20 }
        );
    }

    #[test]
    fn pattern_verifier_passes_and_counts() {
        let spec = CodeSpec::new(5, Code::C2).unwrap();
        let report = verify_all_patterns(&spec, 2, 3, 7).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure);
        assert_eq!((report.patterns, report.decodes), (10, 30));

        let c3 = CodeSpec::new(5, Code::C3).unwrap();
        let report = verify_all_patterns(&c3, 3, 2, 7).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure);
        assert_eq!(report.patterns, 10);
    }

    #[test]
    fn pattern_verifier_rejects_excessive_rho() {
        let spec = CodeSpec::new(5, Code::C2).unwrap();
        assert_eq!(
            verify_all_patterns(&spec, 3, 1, 0).unwrap_err(),
            Error::TooManyFailures { got: 3, radius: 2 }
        );
    }
}
