//! Erasure decoding as plain linear algebra.
//!
//! Restricting every parity-check row to the erased columns gives a
//! small GF(2) system whose right-hand side is the parity of the
//! surviving labels. For any failure pattern within the correction
//! radius the restriction has full column rank, so elimination yields
//! the unique fill-in. This path is slower than the structured decoder
//! (`O(n^3)` worst case against `O(n^2)`) but covers triple failures
//! and serves as an independent cross-check.

use crate::graph::{
    constraint_d, constraint_s, constraint_t, Code, CodeSpec, ErasedGraph, LabeledGraph,
};
use crate::matrix::{BitMatrix, SolveOutcome};
use crate::{Error, Result};

use super::verified;

/// The parity-check system restricted to the erased edges.
pub struct ErasureSystem {
    unknowns: Vec<(usize, usize)>,
    matrix: BitMatrix,
    rhs: Vec<bool>,
}

impl ErasureSystem {
    /// Erased edges as unordered pairs `(i, j)`, `i >= j`, in canonical
    /// index order; one system column each.
    pub fn unknowns(&self) -> &[(usize, usize)] {
        &self.unknowns
    }

    /// One row per constraint of the code family.
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Surviving parity of each constraint, i.e. what the erased edges
    /// must sum to.
    pub fn rhs(&self) -> &[bool] {
        &self.rhs
    }
}

/// Build the restricted system for a failure pattern.
///
/// # Panics
///
/// Panics when no node has failed; with nothing erased there is no
/// system to build.
pub fn build_erasure_system(eg: &ErasedGraph, spec: &CodeSpec) -> Result<ErasureSystem> {
    let n = spec.n();
    if eg.node_count() != n {
        return Err(Error::NodeCountMismatch { expected: n, got: eg.node_count() });
    }
    assert!(!eg.failed().is_empty(), "erasure system needs at least one failure");

    let mut unknowns = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            if eg.is_erased(i, j) {
                unknowns.push((i, j));
            }
        }
    }
    let column: std::collections::HashMap<(usize, usize), usize> =
        unknowns.iter().copied().enumerate().map(|(c, e)| (e, c)).collect();

    let mut matrix = BitMatrix::zeros(spec.constraint_rows(), unknowns.len());
    let mut rhs = vec![false; spec.constraint_rows()];
    let mut add_row = |row: usize, edges: Vec<(usize, usize)>| {
        for &(i, j) in &edges {
            if let Some(&c) = column.get(&(i.max(j), i.min(j))) {
                matrix.set(row, c, true);
            }
        }
        rhs[row] = eg.surviving_parity(&edges);
    };
    for h in 0..n {
        add_row(h, constraint_s(n, h));
        add_row(n + h, constraint_d(n, h));
        if spec.code() == Code::C3 {
            add_row(2 * n + h, constraint_t(n, h));
        }
    }
    Ok(ErasureSystem { unknowns, matrix, rhs })
}

/// Decode any failure pattern within the radius of the code family by
/// solving the restricted system.
pub fn decode_erasures(eg: &ErasedGraph, spec: &CodeSpec) -> Result<LabeledGraph> {
    if eg.node_count() != spec.n() {
        return Err(Error::NodeCountMismatch { expected: spec.n(), got: eg.node_count() });
    }
    if eg.failed().len() > spec.radius() {
        return Err(Error::TooManyFailures {
            got: eg.failed().len(),
            radius: spec.radius(),
        });
    }
    if eg.failed().is_empty() {
        return verified(eg.zero_filled(), spec);
    }
    let system = build_erasure_system(eg, spec)?;
    let values = match system.matrix().solve(system.rhs()) {
        SolveOutcome::Unique(values) => values,
        SolveOutcome::RankDeficient => return Err(Error::Undecodable),
        SolveOutcome::Inconsistent => {
            return Err(Error::Inconsistent("restricted system has no solution"))
        }
    };
    let mut out = eg.zero_filled();
    for (&(i, j), value) in system.unknowns().iter().zip(values) {
        out.set(i, j, value);
    }
    verified(out, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SystematicForm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn spec(n: usize, code: Code) -> CodeSpec {
        CodeSpec::new(n, code).unwrap()
    }

    #[test]
    fn system_shape_for_a_double_failure() {
        let s = spec(5, Code::C2);
        let g = LabeledGraph::zeros(5);
        let sys = build_erasure_system(&g.erase(&[0, 2]).unwrap(), &s).unwrap();
        // 2n - 1 erased edges, one column each; 2n constraint rows.
        assert_eq!(sys.unknowns().len(), 9);
        assert_eq!((sys.matrix().rows(), sys.matrix().cols()), (10, 9));
        assert_eq!(sys.rhs().len(), 10);
        assert_eq!(sys.matrix().rank(), 9, "restriction must have full column rank");
    }

    #[test]
    fn triple_failures_roundtrip_under_c3() {
        let s = spec(11, Code::C3);
        let form = SystematicForm::new(s);
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..5 {
            let g = form.random_codeword(&mut rng);
            for &fails in &[[0usize, 1, 2], [0, 5, 10], [2, 3, 9], [1, 4, 7]] {
                let eg = g.erase(&fails).unwrap();
                assert_eq!(decode_erasures(&eg, &s).unwrap(), g, "fails={fails:?}");
            }
        }
    }

    #[test]
    fn all_failure_counts_roundtrip_at_n5() {
        let s = spec(5, Code::C3);
        let form = SystematicForm::new(s);
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let g = form.random_codeword(&mut rng);
        assert_eq!(decode_erasures(&g.erase(&[]).unwrap(), &s).unwrap(), g);
        for a in 0..5 {
            assert_eq!(decode_erasures(&g.erase(&[a]).unwrap(), &s).unwrap(), g);
            for b in a + 1..5 {
                assert_eq!(decode_erasures(&g.erase(&[a, b]).unwrap(), &s).unwrap(), g);
                for c in b + 1..5 {
                    assert_eq!(
                        decode_erasures(&g.erase(&[a, b, c]).unwrap(), &s).unwrap(),
                        g
                    );
                }
            }
        }
    }

    #[test]
    fn radius_is_enforced_per_family() {
        let c2 = spec(5, Code::C2);
        let g = LabeledGraph::zeros(5);
        assert_eq!(
            decode_erasures(&g.erase(&[0, 1, 2]).unwrap(), &c2),
            Err(Error::TooManyFailures { got: 3, radius: 2 })
        );
        let c3 = spec(5, Code::C3);
        assert_eq!(
            decode_erasures(&g.erase(&[0, 1, 2, 3]).unwrap(), &c3),
            Err(Error::TooManyFailures { got: 4, radius: 3 })
        );
        assert!(decode_erasures(&g.erase(&[0, 1, 2]).unwrap(), &c3).is_ok());
    }

    #[test]
    fn corrupted_survivors_are_rejected_or_visible() {
        let s = spec(11, Code::C3);
        let form = SystematicForm::new(s);
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for _ in 0..10 {
            let g = form.random_codeword(&mut rng);
            let mut bad = g.clone();
            bad.set(7, 8, !bad.get(7, 8));
            match decode_erasures(&bad.erase(&[0, 1, 2]).unwrap(), &s) {
                Err(Error::Inconsistent(_)) => {}
                Ok(decoded) => assert_ne!(decoded, g),
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
    }

    #[test]
    fn agrees_with_the_structured_decoder() {
        use crate::decode::decode_double;
        let s = spec(7, Code::C2);
        let form = SystematicForm::new(s);
        let mut rng = ChaCha12Rng::seed_from_u64(43);
        for _ in 0..10 {
            let g = form.random_codeword(&mut rng);
            for a in 0..7 {
                for b in a + 1..7 {
                    let eg = g.erase(&[a, b]).unwrap();
                    assert_eq!(
                        decode_double(&eg, &s).unwrap(),
                        decode_erasures(&eg, &s).unwrap()
                    );
                }
            }
        }
    }
}
