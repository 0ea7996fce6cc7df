//! Structured decoder for up to two failed nodes.
//!
//! After relabeling so the failures sit at nodes `0` and `i`, all
//! unknown labels are the two neighborhoods `a_0` and `a_i`. Two
//! syndrome polynomials over `R_n` can be assembled from survivors:
//!
//! * `S1 = a_0 + a_i`, computable in full;
//! * `S2 = a_0 + a_i * x^i`, computable except at exponents `0` and
//!   `2i`, where the self loops `e_00` and `e_ii` intrude.
//!
//! A telescoping walk along the orbit of the generator `i` recovers the
//! cross edges `<0,2i>` and `<i,n-i>`, which pin down both self loops;
//! then `S1 + S2 = a_i * (1 + x^i)` collapses to a chain of single-bit
//! equations solvable by forward substitution. Everything is `O(n^2)`
//! bit operations.

use crate::graph::{constraint_d, constraint_s, CodeSpec, ErasedGraph, LabeledGraph};
use crate::ring::RingPoly;
use crate::{Error, Result};

use super::verified;

/// Decode a graph with at most two failed nodes.
///
/// Works for both code families (a triple-failure code also corrects
/// any two failures). Requires `n >= 5`; the reconstruction is checked
/// against every constraint before being returned.
pub fn decode_double(eg: &ErasedGraph, spec: &CodeSpec) -> Result<LabeledGraph> {
    let n = spec.n();
    if eg.node_count() != n {
        return Err(Error::NodeCountMismatch { expected: n, got: eg.node_count() });
    }
    if n < 5 {
        return Err(Error::DecodeTooSmall(n));
    }
    match *eg.failed() {
        [] => verified(eg.zero_filled(), spec),
        [single] => decode_single(eg, spec, single),
        [_, _] => decode_pair(eg, spec),
        ref more => Err(Error::TooManyFailures { got: more.len(), radius: 2 }),
    }
}

/// One failed node: every incident edge is the lone erased member of
/// some constraint, so each label is a direct parity of survivors.
fn decode_single(eg: &ErasedGraph, spec: &CodeSpec, i: usize) -> Result<LabeledGraph> {
    let n = spec.n();
    let mut out = eg.zero_filled();
    for l in 0..n {
        if l != i {
            // <i,l> is the only erased edge of S_l.
            out.set(i, l, eg.surviving_parity(&constraint_s(n, l)));
        }
    }
    // <i,i> is the only erased edge of D_2i.
    out.set(i, i, eg.surviving_parity(&constraint_d(n, 2 * i % n)));
    verified(out, spec)
}

fn decode_pair(eg: &ErasedGraph, spec: &CodeSpec) -> Result<LabeledGraph> {
    let n = spec.n();
    let (normalized, shift) = normalize_failures(eg);
    let i = normalized.failed()[1];

    let pair = SyndromePair::compute(&normalized, i);
    let (e00, eii) = recover_self_loops(&normalized, i);
    let a_i = solve_chain(&pair.combined(e00, eii), i)?;
    let a_0 = pair.s1() + &a_i;
    if a_0.coeff(0) {
        return Err(Error::Inconsistent("recovered neighborhood carries a self loop"));
    }

    let mut out = normalized.zero_filled();
    for l in 1..n {
        out.set(0, l, a_0.coeff(l));
    }
    for l in 0..n {
        if l != i {
            out.set(i, l, a_i.coeff(l));
        }
    }
    out.set(0, 0, e00);
    out.set(i, i, eii);
    // Undo the relabeling and re-check every constraint.
    verified(out.shift_labels((n - shift) % n), spec)
}

/// Relabel so the two failures land on nodes `0` and `i`. Returns the
/// shifted graph and the shift amount `c` that was applied; undo with
/// `shift_labels(n - c)`.
///
/// # Panics
///
/// Panics unless exactly two nodes have failed.
pub fn normalize_failures(eg: &ErasedGraph) -> (ErasedGraph, usize) {
    let [a, _b] = *eg.failed() else {
        panic!("normalize_failures expects exactly two failed nodes");
    };
    let n = eg.node_count();
    let c = (n - a) % n;
    (eg.shift_labels(c), c)
}

/// The two syndrome polynomials of a normalized double failure.
///
/// `s1` is complete. `s2` is stored with its two unresolved
/// coefficients (exponents `0` and `2i`) holding only the diagonal
/// parities; adding the self loops `e_00` and `e_ii` completes them.
pub struct SyndromePair {
    s1: RingPoly,
    s2_partial: RingPoly,
    n: usize,
    i: usize,
}

impl SyndromePair {
    /// Assemble both syndromes from survivors. Expects the failed pair
    /// to be `{0, i}` with `n >= 5`.
    pub fn compute(eg: &ErasedGraph, i: usize) -> Self {
        let n = eg.node_count();
        assert!(n >= 5, "syndromes need n >= 5");
        assert_eq!(eg.failed(), &[0, i], "failures must be normalized to {{0, i}}");

        // S1 = a_0 + a_i. At exponents away from the failures the S_k
        // constraint leaves exactly <k,0> and <k,i> unknown, which is
        // the coefficient wanted. At exponents 0 and i the coefficient
        // is the shared edge <0,i>, the lone erased member of D_i.
        let mut s1 = RingPoly::zero(n);
        let e_0i = eg.surviving_parity(&constraint_d(n, i));
        s1.set_coeff(0, e_0i);
        s1.set_coeff(i, e_0i);
        for k in 1..n {
            if k != i {
                s1.set_coeff(k, eg.surviving_parity(&constraint_s(n, k)));
            }
        }

        // S2 = a_0 + a_i * x^i. D_l misses exactly <0,l> and <i,l-i>,
        // whose sum is the coefficient of x^l — except at l = i where
        // those names alias the same edge and the coefficient is 0, and
        // at l = 0 and l = 2i where a self loop is part of the parity.
        let mut s2 = RingPoly::zero(n);
        for l in 0..n {
            if l != i {
                s2.set_coeff(l, eg.surviving_parity(&constraint_d(n, l)));
            }
        }
        SyndromePair { s1, s2_partial: s2, n, i }
    }

    pub fn s1(&self) -> &RingPoly {
        &self.s1
    }

    /// Exponents of `s2` that stay unknown until the self loops are
    /// recovered: `0` and `2i`.
    pub fn pending_exponents(&self) -> (usize, usize) {
        (0, 2 * self.i % self.n)
    }

    /// `s2` with the self loops folded in.
    pub fn s2(&self, e00: bool, eii: bool) -> RingPoly {
        let (p0, p2i) = self.pending_exponents();
        let mut s2 = self.s2_partial.clone();
        s2.set_coeff(p0, s2.coeff(p0) ^ e00);
        s2.set_coeff(p2i, s2.coeff(p2i) ^ eii);
        s2
    }

    /// `s1 + s2`, the polynomial the chain solver consumes.
    pub fn combined(&self, e00: bool, eii: bool) -> RingPoly {
        self.s1() + &self.s2(e00, eii)
    }
}

/// Telescoping walk that recovers the cross edge `<0, 2i>`.
///
/// Starting from `<0,i>` (the lone erased edge of `D_i`), each odd
/// multiple `l*i` of the generator contributes two parities: the
/// neighborhood constraint at node `l*i` yields
/// `e(0,li) + e(i,li)`, and the diagonal through `(l+1)*i` yields
/// `e(i,li) + e(0,(l+1)i)`. Their sum telescopes, so after the walk the
/// accumulator equals the sum of `e(0,m)` over all `m` except `0` and
/// `2i` — which by the constraint `S_0` is exactly `e(0, 2i)`.
fn orbit_edge_sum(eg: &ErasedGraph, i: usize) -> bool {
    let n = eg.node_count();
    let mut sum = eg.surviving_parity(&constraint_d(n, i));
    let mut l = 3;
    while l < n - 1 {
        sum ^= eg.surviving_parity(&constraint_s(n, l * i % n));
        sum ^= eg.surviving_parity(&constraint_d(n, (l + 1) * i % n));
        l += 2;
    }
    sum
}

/// Recover the two erased self loops `(e_00, e_ii)` of a normalized
/// double failure.
///
/// The orbit walk gives `<0,2i>` directly; relabeling by `n - i` swaps
/// the failures onto `{0, n-i}` and the same walk there lands on
/// `<i, n-i>`. Each of `D_0` and `D_2i` then contains exactly one
/// remaining unknown, its self loop.
pub fn recover_self_loops(eg: &ErasedGraph, i: usize) -> (bool, bool) {
    let n = eg.node_count();
    assert_eq!(eg.failed(), &[0, i], "failures must be normalized to {{0, i}}");
    let e_0_2i = orbit_edge_sum(eg, i);
    let mirrored = eg.shift_labels(n - i);
    let e_i_ni = orbit_edge_sum(&mirrored, n - i);
    // D_0 misses <0,0> and <i,n-i>; D_2i misses <i,i> and <0,2i>.
    let e00 = eg.surviving_parity(&constraint_d(n, 0)) ^ e_i_ni;
    let eii = eg.surviving_parity(&constraint_d(n, 2 * i % n)) ^ e_0_2i;
    (e00, eii)
}

/// Solve `s = a_i * (1 + x^i)` for `a_i`.
///
/// Coefficient `2i` of `s` is `e(i,2i)` outright; from there the
/// relation `e(i,k) = s_k + e(i,k-i)` walks the whole orbit of `i`,
/// ending at `e(i,0)`, which must close the loop by matching `s_i`.
pub fn solve_chain(s: &RingPoly, i: usize) -> Result<RingPoly> {
    let n = s.modulus();
    let mut a = RingPoly::zero(n);
    let mut prev = s.coeff(2 * i % n);
    a.set_coeff(2 * i % n, prev);
    for m in 3..=n {
        let k = m * i % n;
        prev ^= s.coeff(k);
        a.set_coeff(k, prev);
    }
    if a.coeff(0) != s.coeff(i) {
        return Err(Error::Inconsistent("syndrome chain does not close"));
    }
    Ok(a)
}
