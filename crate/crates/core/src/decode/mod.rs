//! Failure decoders.
//!
//! [`decode_double`] recovers up to two failed nodes using the ring
//! structure of the constraints in `O(n^2)` bit operations.
//! [`decode_erasures`] sets up the restricted parity-check system over
//! the erased positions and solves it by elimination; it is the only
//! decoder for three failures and doubles as an independent reference
//! for the structured path.
//!
//! Both decoders re-verify every constraint on the reconstructed graph
//! and report inconsistent survivors as [`crate::Error::Inconsistent`]
//! rather than returning a non-codeword.

mod double;
mod linear;

pub use double::{
    decode_double, normalize_failures, recover_self_loops, solve_chain, SyndromePair,
};
pub use linear::{build_erasure_system, decode_erasures, ErasureSystem};

use crate::graph::{is_codeword, CodeSpec, LabeledGraph};
use crate::{Error, Result};

/// Final gate shared by the decoders: a reconstruction that violates
/// any constraint means the survivors never belonged to a codeword.
fn verified(g: LabeledGraph, spec: &CodeSpec) -> Result<LabeledGraph> {
    if is_codeword(&g, spec)? {
        Ok(g)
    } else {
        Err(Error::Inconsistent("reconstructed graph fails re-verification"))
    }
}
