//! Binary erasure-correcting codes over complete graphs.
//!
//! Data is stored on the edges of a complete undirected graph with self
//! loops: a graph over `n` nodes carries `n(n+1)/2` bits, one per edge.
//! A node failure erases every edge touching that node. The two code
//! families implemented here protect against such failures:
//!
//! * [`Code::C2`] corrects any two node failures and spends exactly
//!   `2n - 1` redundancy bits, meeting the Singleton-like lower bound
//!   for this metric.
//! * [`Code::C3`] corrects any three node failures with at most `3n - 2`
//!   redundancy bits, at most one bit above the lower bound. It needs
//!   2 to be a primitive root modulo `n`.
//!
//! Both require `n` prime. Encoding goes through a systematic form of
//! the parity-check matrix ([`SystematicForm`]); decoding of up to two
//! failures runs in `O(n^2)` bit operations ([`decode_double`]), and a
//! generic linear-algebra decoder ([`decode_erasures`]) covers the
//! triple-failure case. The [`oracle`] module holds brute-force
//! reference implementations (exact graph weight, exhaustive distance
//! enumeration, all-pattern round-trip verification) used to validate
//! the fast paths.
//!
//! ```
//! use edgecode::{decode_double, Code, CodeSpec, SystematicForm};
//!
//! let spec = CodeSpec::new(5, Code::C2)?;
//! let form = SystematicForm::new(spec);
//! let stored = form.encode(&[false, true, false, false, true, true])?;
//! let damaged = stored.erase(&[1, 3])?; // nodes 1 and 3 fail
//! assert_eq!(decode_double(&damaged, &spec)?, stored);
//! # Ok::<(), edgecode::Error>(())
//! ```

mod bits;
pub mod decode;
pub mod format;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod ring;

pub use decode::{build_erasure_system, decode_double, decode_erasures, SyndromePair};
pub use graph::{is_codeword, Code, CodeSpec, ErasedGraph, LabeledGraph};
pub use matrix::{parity_check_matrix, BitMatrix, SystematicForm};
pub use oracle::{
    distance, graph_weight, min_distance, verify_all_patterns, DistanceReport, PatternReport,
};
pub use ring::{is_prime, is_two_primitive, Gf2Poly, RingPoly};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus is not a prime number.
    #[error("n must be prime, got {0}")]
    NotPrime(usize),
    /// The code family needs a larger modulus than the one given.
    #[error("{code} requires n >= {min}, got {n}")]
    ModulusTooSmall { code: &'static str, min: usize, n: usize },
    /// c3 only exists when 2 generates the multiplicative group mod n.
    #[error("c3 requires 2 to be a primitive root modulo n, which fails for n = {0}")]
    TwoNotPrimitive(usize),
    /// A graph was paired with a spec of a different size.
    #[error("graph has {got} nodes but the code is defined over {expected}")]
    NodeCountMismatch { expected: usize, got: usize },
    /// A failed-node index does not name a node of the graph.
    #[error("node index {node} out of range for n = {n}")]
    NodeOutOfRange { node: usize, n: usize },
    /// An erased edge label was read.
    #[error("edge <{i},{j}> is erased")]
    ErasedRead { i: usize, j: usize },
    /// More nodes failed than the code can correct.
    #[error("{got} failed nodes exceed the {radius}-failure correction radius")]
    TooManyFailures { got: usize, radius: usize },
    /// The structured double decoder only supports n >= 5.
    #[error("the double decoder requires n >= 5, got {0}")]
    DecodeTooSmall(usize),
    /// The surviving labels do not belong to any codeword.
    #[error("surviving edges are inconsistent: {0}")]
    Inconsistent(&'static str),
    /// The erasure pattern leaves the linear system rank-deficient.
    #[error("erasure pattern is not decodable: restricted system is rank-deficient")]
    Undecodable,
    /// An information vector of the wrong length was supplied.
    #[error("info vector has {got} bits, expected {expected}")]
    InfoLength { expected: usize, got: usize },
    /// Exhaustive enumeration was asked for a code too large to enumerate.
    #[error("code dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    /// A graph file (or other textual input) failed to parse.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
