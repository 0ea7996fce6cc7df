//! Labeled complete graphs, node erasures, and the constraint families
//! that define the two code constructions.
//!
//! A graph over `n` nodes stores one bit per edge of the complete
//! undirected graph with self loops, `n(n+1)/2` bits in all. Labels are
//! addressed by unordered node pairs `<i,j>`; the canonical layout is
//! the lower triangle of the symmetric adjacency matrix, row by row.
//!
//! Three families of parity constraints are used, all index arithmetic
//! modulo `n`:
//!
//! * `S_h`: the `n - 1` edges incident to node `h`, self loop excluded.
//! * `D_m`: the edges `<k,l>` with `k + l = m`; for odd prime `n` these
//!   are `(n+1)/2` edges including exactly one self loop.
//! * `T_s`: the edges `<k,l>` with `k + 2l = s` and `k != l`, giving
//!   `n - 1` edges and never a self loop.

use crate::bits::BitVec;
use crate::ring::{self, RingPoly};
use crate::{Error, Result};

/// Canonical index of edge `<i,j>` in the lower-triangle layout.
///
/// For `i >= j` the index is `i(i+1)/2 + j`; arguments may come in
/// either order. Indices are dense in `0..n(n+1)/2`.
///
/// # Panics
///
/// Panics if either node is out of range.
pub fn edge_index(i: usize, j: usize, n: usize) -> usize {
    assert!(i < n && j < n, "edge <{i},{j}> out of range for n = {n}");
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

/// Number of edges of the complete graph with self loops.
pub fn edge_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// A complete undirected graph with self loops and binary edge labels.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    labels: BitVec,
}

impl LabeledGraph {
    /// The all-zero labeling.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "graph needs at least one node");
        LabeledGraph { n, labels: BitVec::new(edge_count(n)) }
    }

    /// Build a labeling from a predicate on unordered pairs. The
    /// predicate is consulted once per edge, with `i >= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                g.set(i, j, f(i, j));
            }
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        edge_count(self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.labels.get(edge_index(i, j, self.n))
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.labels.set(edge_index(i, j, self.n), value);
    }

    pub fn is_zero(&self) -> bool {
        self.labels.is_zero()
    }

    /// XOR of two labelings; the difference graph in characteristic 2.
    pub fn xor_assign(&mut self, other: &LabeledGraph) {
        assert_eq!(self.n, other.n, "node count mismatch");
        self.labels.xor_assign(&other.labels);
    }

    /// Unordered pairs `(i, j)` with `i >= j` carrying a nonzero label.
    pub fn nonzero_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..=i {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// XOR of the labels over a set of edges.
    pub fn parity(&self, edges: &[(usize, usize)]) -> bool {
        edges.iter().fold(false, |acc, &(i, j)| acc ^ self.get(i, j))
    }

    /// Neighborhood polynomial of node `i`: coefficient of `x^l` is the
    /// label of `<i,l>`. With `include_self_loop = false` this is the
    /// polynomial the decoders call `a_i`; with it, `a'_i`.
    pub fn neighborhood_poly(&self, i: usize, include_self_loop: bool) -> RingPoly {
        let mut p = RingPoly::zero(self.n);
        for l in 0..self.n {
            if l == i && !include_self_loop {
                continue;
            }
            p.set_coeff(l, self.get(i, l));
        }
        p
    }

    /// Relabel nodes by `v -> v + c (mod n)`, carrying edge labels along:
    /// the result has `label(<i+c, j+c>) = label(<i,j>)`.
    pub fn shift_labels(&self, c: usize) -> LabeledGraph {
        let n = self.n;
        let c = c % n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                out.set((i + c) % n, (j + c) % n, self.get(i, j));
            }
        }
        out
    }

    /// Mark the given nodes as failed, erasing their neighborhoods.
    pub fn erase(&self, failed: &[usize]) -> Result<ErasedGraph> {
        ErasedGraph::new(self.clone(), failed)
    }
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LabeledGraph(n={}, nonzero={:?})", self.n, self.nonzero_edges())
    }
}

/// A labeled graph with some nodes failed: every edge touching a failed
/// node is erased, and reading an erased label is an error.
#[derive(Clone, Debug)]
pub struct ErasedGraph {
    graph: LabeledGraph,
    failed: Vec<usize>,
}

impl ErasedGraph {
    /// Erase the neighborhoods of `failed` in `graph`. Duplicate node
    /// indices are collapsed; out-of-range indices are rejected.
    pub fn new(mut graph: LabeledGraph, failed: &[usize]) -> Result<Self> {
        let n = graph.node_count();
        let mut failed = failed.to_vec();
        failed.sort_unstable();
        failed.dedup();
        if let Some(&node) = failed.iter().find(|&&f| f >= n) {
            return Err(Error::NodeOutOfRange { node, n });
        }
        // Force erased labels to the placeholder 0 so stale values
        // cannot leak through the zero-filled view.
        for &f in &failed {
            for l in 0..n {
                graph.set(f, l, false);
            }
        }
        Ok(ErasedGraph { graph, failed })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Failed nodes, sorted ascending.
    pub fn failed(&self) -> &[usize] {
        &self.failed
    }

    pub fn is_failed(&self, node: usize) -> bool {
        self.failed.binary_search(&node).is_ok()
    }

    pub fn is_erased(&self, i: usize, j: usize) -> bool {
        self.is_failed(i) || self.is_failed(j)
    }

    /// Read a surviving label; erased positions are an error, never a
    /// silent zero.
    pub fn get(&self, i: usize, j: usize) -> Result<bool> {
        if self.is_erased(i, j) {
            return Err(Error::ErasedRead { i, j });
        }
        Ok(self.graph.get(i, j))
    }

    /// XOR of the surviving labels of a constraint, skipping erased
    /// edges.
    pub fn surviving_parity(&self, edges: &[(usize, usize)]) -> bool {
        edges
            .iter()
            .filter(|&&(i, j)| !self.is_erased(i, j))
            .fold(false, |acc, &(i, j)| acc ^ self.graph.get(i, j))
    }

    /// The graph with erased labels forced to zero, e.g. for
    /// serialization. Decoding should go through [`crate::decode`].
    pub fn zero_filled(&self) -> LabeledGraph {
        self.graph.clone()
    }

    /// Relabel nodes by `v -> v + c (mod n)`; failed nodes move along.
    pub fn shift_labels(&self, c: usize) -> ErasedGraph {
        let n = self.node_count();
        let failed: Vec<usize> = self.failed.iter().map(|&f| (f + c) % n).collect();
        ErasedGraph::new(self.graph.shift_labels(c), &failed)
            .expect("shift keeps nodes in range")
    }
}

/// The two code families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Code {
    /// Double-node-failure correcting: constraints `S_h` and `D_m`,
    /// redundancy exactly `2n - 1`.
    C2,
    /// Triple-node-failure correcting: adds the `T_s` constraints,
    /// redundancy at most `3n - 2`. Requires 2 primitive modulo `n`.
    C3,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::C2 => "c2",
            Code::C3 => "c3",
        }
    }

    /// How many node failures the family corrects.
    pub fn radius(self) -> usize {
        match self {
            Code::C2 => 2,
            Code::C3 => 3,
        }
    }
}

impl std::fmt::Display for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Code {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "c2" => Ok(Code::C2),
            "c3" => Ok(Code::C3),
            other => Err(format!("unknown code family {other:?}, expected c2 or c3")),
        }
    }
}

/// A validated (node count, code family) pair. Construction enforces
/// the arithmetic preconditions, so holders can rely on them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CodeSpec {
    n: usize,
    code: Code,
}

impl CodeSpec {
    pub fn new(n: usize, code: Code) -> Result<Self> {
        if !ring::is_prime(n) {
            return Err(Error::NotPrime(n));
        }
        if code == Code::C3 {
            if n < 5 {
                return Err(Error::ModulusTooSmall { code: "c3", min: 5, n });
            }
            if !ring::is_two_primitive(n) {
                return Err(Error::TwoNotPrimitive(n));
            }
        }
        Ok(CodeSpec { n, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn radius(&self) -> usize {
        self.code.radius()
    }

    pub fn edge_count(&self) -> usize {
        edge_count(self.n)
    }

    /// Rows of the parity-check matrix: `2n` for c2, `3n` for c3.
    pub fn constraint_rows(&self) -> usize {
        match self.code {
            Code::C2 => 2 * self.n,
            Code::C3 => 3 * self.n,
        }
    }

    /// Lower bound on the redundancy of any code correcting `radius`
    /// node failures over `n` nodes: `radius * n - C(radius, 2)`.
    pub fn singleton_redundancy(&self) -> usize {
        let (n, rho) = (self.n, self.radius());
        rho * n - rho * (rho - 1) / 2
    }
}

impl std::fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[n={}]", self.code, self.n)
    }
}

/// Edges of the neighborhood constraint `S_h`: `<h,l>` for `l != h`,
/// ascending in `l`.
pub fn constraint_s(n: usize, h: usize) -> Vec<(usize, usize)> {
    assert!(h < n);
    (0..n).filter(|&l| l != h).map(|l| ordered(h, l)).collect()
}

/// Edges of the diagonal constraint `D_m`: unordered `<k,l>` with
/// `k + l = m (mod n)`, listed by ascending canonical representative.
pub fn constraint_d(n: usize, m: usize) -> Vec<(usize, usize)> {
    assert!(m < n);
    (0..n)
        .filter_map(|k| {
            let l = (m + n - k) % n;
            (k >= l).then_some((k, l))
        })
        .collect()
}

/// Edges of the skew constraint `T_s`: unordered `<k,l>` with
/// `k + 2l = s (mod n)` and `k != l`. Needs `gcd(2, n) = 1`. The one
/// solution with `k = l` — at node `s / 3 (mod n)` when `gcd(3, n) = 1`
/// — is excluded, so the set never contains a self loop.
pub fn constraint_t(n: usize, s: usize) -> Vec<(usize, usize)> {
    assert!(s < n);
    assert!(n % 2 != 0, "T_s needs an odd modulus");
    let inv2 = ring::mod_inverse(2, n);
    (0..n)
        .filter_map(|k| {
            let l = (s + n - k) % n * inv2 % n;
            (k != l).then_some(ordered(k, l))
        })
        .collect()
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether every constraint of the code family holds in `g`.
pub fn is_codeword(g: &LabeledGraph, spec: &CodeSpec) -> Result<bool> {
    let n = spec.n();
    if g.node_count() != n {
        return Err(Error::NodeCountMismatch { expected: n, got: g.node_count() });
    }
    for h in 0..n {
        if g.parity(&constraint_s(n, h)) || g.parity(&constraint_d(n, h)) {
            return Ok(false);
        }
        if spec.code() == Code::C3 && g.parity(&constraint_t(n, h)) {
            return Ok(false);
        }
    }
    Ok(true)
}
