//! GF(2) linear algebra: packed bit matrices, Gaussian elimination,
//! the parity-check matrices of both code families, and a systematic
//! encoder derived from them.

use crate::bits::BitVec;
use crate::graph::{self, Code, CodeSpec, LabeledGraph};
use crate::{Error, Result};

/// A dense matrix over GF(2); rows are word-packed bit vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Result of solving `A x = b` for a single right-hand side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    /// The system has exactly one solution.
    Unique(Vec<bool>),
    /// The coefficient matrix does not have full column rank.
    RankDeficient,
    /// No solution: some constraint contradicts the others.
    Inconsistent,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVec::new(cols); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    /// Weight of a row; handy for structural checks.
    pub fn row_weight(&self, r: usize) -> usize {
        self.rows[r].count_ones()
    }

    /// In-place reduction to reduced row echelon form. Returns the
    /// pivot columns in ascending order; their count is the rank.
    ///
    /// Pivots are chosen leftmost-first, so the reduction — and
    /// everything derived from it, like the systematic form — is
    /// deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) =
                (next_row..self.rows.len()).find(|&r| self.rows[r].get(col))
            else {
                continue;
            };
            self.rows.swap(next_row, pivot_row);
            let pivot = self.rows[next_row].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows.len() {
                break;
            }
        }
        pivots
    }

    /// Rank over GF(2); the matrix itself is left untouched.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solve `A x = rhs` expecting a unique solution.
    pub fn solve(&self, rhs: &[bool]) -> SolveOutcome {
        assert_eq!(rhs.len(), self.rows(), "rhs length must match row count");
        // Augment with the right-hand side as an extra column.
        let mut aug = BitMatrix::zeros(self.rows(), self.cols + 1);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                aug.rows[r].set(c, true);
            }
            aug.rows[r].set(self.cols, rhs[r]);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return SolveOutcome::Inconsistent;
        }
        if pivots.len() < self.cols {
            return SolveOutcome::RankDeficient;
        }
        // Full column rank and consistent: row r reads x_(pivot r) = b_r.
        let x = (0..self.cols).map(|r| aug.rows[r].get(self.cols)).collect();
        SolveOutcome::Unique(x)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for row in &self.rows {
            for c in 0..self.cols {
                write!(f, "{}", row.get(c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The parity-check matrix of a code: one column per edge in canonical
/// order, rows `S_0..S_(n-1)`, then `D_0..D_(n-1)`, then for c3
/// `T_0..T_(n-1)`.
pub fn parity_check_matrix(spec: &CodeSpec) -> BitMatrix {
    let n = spec.n();
    let mut m = BitMatrix::zeros(spec.constraint_rows(), spec.edge_count());
    let mut fill = |row: usize, edges: &[(usize, usize)]| {
        for &(i, j) in edges {
            m.set(row, graph::edge_index(i, j, n), true);
        }
    };
    for h in 0..n {
        fill(h, &graph::constraint_s(n, h));
        fill(n + h, &graph::constraint_d(n, h));
        if spec.code() == Code::C3 {
            fill(2 * n + h, &graph::constraint_t(n, h));
        }
    }
    m
}

/// Systematic view of a code: the parity-check pivots name the
/// redundancy positions, everything else carries information.
#[derive(Clone)]
pub struct SystematicForm {
    spec: CodeSpec,
    info_positions: Vec<usize>,
    parity_positions: Vec<usize>,
    // Row r of the reduced parity-check matrix; its pivot is
    // parity_positions[r] and its other nonzeros sit on info columns.
    solve_rows: Vec<BitVec>,
}

impl SystematicForm {
    pub fn new(spec: CodeSpec) -> Self {
        let mut h = parity_check_matrix(&spec);
        let pivots = h.rref();
        let rank = pivots.len();
        let parity: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let info_positions =
            (0..spec.edge_count()).filter(|c| !parity.contains(c)).collect();
        let mut rows = h.rows;
        rows.truncate(rank);
        SystematicForm {
            spec,
            info_positions,
            parity_positions: pivots,
            solve_rows: rows,
        }
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    /// Measured redundancy: the rank of the parity-check matrix.
    pub fn rank(&self) -> usize {
        self.parity_positions.len()
    }

    /// Number of information bits per codeword.
    pub fn dimension(&self) -> usize {
        self.spec.edge_count() - self.rank()
    }

    /// Edge indices that carry information bits, ascending.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    /// Edge indices that carry redundancy bits, ascending.
    pub fn parity_positions(&self) -> &[usize] {
        &self.parity_positions
    }

    /// Place `info` on the information positions and fill every parity
    /// position so that all constraints hold.
    pub fn encode(&self, info: &[bool]) -> Result<LabeledGraph> {
        if info.len() != self.dimension() {
            return Err(Error::InfoLength { expected: self.dimension(), got: info.len() });
        }
        let n = self.spec.n();
        let mut labels = BitVec::new(self.spec.edge_count());
        for (&pos, &bit) in self.info_positions.iter().zip(info) {
            labels.set(pos, bit);
        }
        for (row, &pos) in self.solve_rows.iter().zip(&self.parity_positions) {
            // The reduced row relates this parity bit to info bits only.
            let mut parity = false;
            for (&ipos, &bit) in self.info_positions.iter().zip(info) {
                parity ^= bit && row.get(ipos);
            }
            labels.set(pos, parity);
        }
        let mut g = LabeledGraph::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                g.set(i, j, labels.get(graph::edge_index(i, j, n)));
            }
        }
        Ok(g)
    }

    /// Codeword number `index` under the natural enumeration: bit `b`
    /// of `index` is information bit `b`. Only meaningful when the
    /// dimension fits in a word.
    pub fn encode_index(&self, index: u64) -> LabeledGraph {
        let k = self.dimension();
        assert!(k <= 63 && (k == 63 || index < 1 << k), "index out of range");
        let info: Vec<bool> = (0..k).map(|b| index >> b & 1 == 1).collect();
        self.encode(&info).expect("length matches by construction")
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> LabeledGraph {
        let info: Vec<bool> = (0..self.dimension()).map(|_| rng.random()).collect();
        self.encode(&info).expect("length matches by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_codeword;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn from_rows(cols: usize, rows: &[&[u8]]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v == 1);
            }
        }
        m
    }

    #[test]
    fn rank_of_cyclic_dependency() {
        // Three rows summing to zero have rank 2.
        let m = from_rows(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(BitMatrix::zeros(4, 4).rank(), 0);
        let mut id = BitMatrix::zeros(4, 4);
        for i in 0..4 {
            id.set(i, i, true);
        }
        assert_eq!(id.rank(), 4);
    }

    #[test]
    fn rref_reports_leftmost_pivots() {
        let mut m = from_rows(4, &[&[0, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1]]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        // Reduced rows have zeros on the other pivot columns.
        assert!(!m.get(0, 1) && !m.get(1, 0));
        assert!(m.rows[2].is_zero());
    }

    #[test]
    fn solve_unique_inconsistent_and_deficient() {
        let a = from_rows(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        match a.solve(&[true, false, true]) {
            SolveOutcome::Unique(x) => assert_eq!(x, vec![true, true]),
            other => panic!("expected unique solution, got {other:?}"),
        }
        assert_eq!(a.solve(&[true, false, false]), SolveOutcome::Inconsistent);
        let b = from_rows(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(b.solve(&[false, false]), SolveOutcome::RankDeficient);
        assert_eq!(b.solve(&[true, false]), SolveOutcome::Inconsistent);
    }

    fn c2(n: usize) -> CodeSpec {
        CodeSpec::new(n, Code::C2).unwrap()
    }

    fn c3(n: usize) -> CodeSpec {
        CodeSpec::new(n, Code::C3).unwrap()
    }

    #[test]
    fn parity_check_shape_and_row_weights() {
        let h = parity_check_matrix(&c2(5));
        assert_eq!((h.rows(), h.cols()), (10, 15));
        for r in 0..5 {
            assert_eq!(h.row_weight(r), 4); // S rows: n - 1
            assert_eq!(h.row_weight(5 + r), 3); // D rows: (n + 1) / 2
        }
        let h3 = parity_check_matrix(&c3(5));
        assert_eq!((h3.rows(), h3.cols()), (15, 15));
        for r in 0..5 {
            assert_eq!(h3.row_weight(10 + r), 4); // T rows: n - 1
        }
    }

    #[test]
    fn family_row_sums() {
        // The S rows sum to zero (each off-diagonal edge appears twice),
        // as do the T rows; the D rows sum to the all-ones vector.
        let h = parity_check_matrix(&c3(11));
        let mut s_sum = BitVec::new(h.cols());
        let mut d_sum = BitVec::new(h.cols());
        let mut t_sum = BitVec::new(h.cols());
        for r in 0..11 {
            s_sum.xor_assign(&h.rows[r]);
            d_sum.xor_assign(&h.rows[11 + r]);
            t_sum.xor_assign(&h.rows[22 + r]);
        }
        assert!(s_sum.is_zero());
        assert!(t_sum.is_zero());
        assert_eq!(d_sum.count_ones(), h.cols());
    }

    #[test]
    fn c2_rank_is_2n_minus_1() {
        for n in [5, 7, 11] {
            assert_eq!(parity_check_matrix(&c2(n)).rank(), 2 * n - 1, "n={n}");
        }
    }

    #[test]
    fn c3_rank_is_within_one_of_the_bound() {
        for n in [5, 11] {
            let rank = parity_check_matrix(&c3(n)).rank();
            assert!(
                rank == 3 * n - 3 || rank == 3 * n - 2,
                "n={n} measured rank {rank}"
            );
        }
    }

    #[test]
    fn systematic_dimensions() {
        let form = SystematicForm::new(c2(5));
        assert_eq!(form.rank(), 9);
        assert_eq!(form.dimension(), 6);
        assert_eq!(form.info_positions().len() + form.parity_positions().len(), 15);
    }

    #[test]
    fn encode_zero_gives_zero_graph() {
        let form = SystematicForm::new(c2(5));
        assert!(form.encode(&vec![false; 6]).unwrap().is_zero());
    }

    #[test]
    fn encode_rejects_wrong_length() {
        let form = SystematicForm::new(c2(5));
        assert_eq!(
            form.encode(&[true; 4]).unwrap_err(),
            Error::InfoLength { expected: 6, got: 4 }
        );
    }

    #[test]
    fn encodings_are_codewords_and_info_reads_back() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for spec in [c2(5), c2(7), c3(5), c3(11)] {
            let form = SystematicForm::new(spec);
            for _ in 0..20 {
                let info: Vec<bool> =
                    (0..form.dimension()).map(|_| rng.random()).collect();
                let g = form.encode(&info).unwrap();
                assert!(is_codeword(&g, &spec).unwrap(), "{spec}");
                let n = spec.n();
                let read: Vec<bool> = form
                    .info_positions()
                    .iter()
                    .map(|&idx| {
                        // Invert the canonical index to an (i, j) pair.
                        let mut i = 0;
                        while graph::edge_index(i, 0, n) + i < idx {
                            i += 1;
                        }
                        g.get(i, idx - graph::edge_index(i, 0, n))
                    })
                    .collect();
                assert_eq!(read, info, "{spec}: systematic positions corrupted");
            }
        }
    }

    #[test]
    fn encode_index_covers_distinct_codewords() {
        let form = SystematicForm::new(c2(5));
        let mut seen = std::collections::HashSet::new();
        for idx in 0..1u64 << form.dimension() {
            let g = form.encode_index(idx);
            assert!(seen.insert(g.nonzero_edges()), "duplicate codeword");
        }
        assert_eq!(seen.len(), 64);
    }
}
