//! GC-content balancing by codeword-vs-complement selection.
//!
//! Every odd-length DNA word has nonzero disparity `#GC - #AT`, and the
//! complement of a codeword negates it. Emitting whichever of `{c, c̄}`
//! opposes the running stream disparity keeps the global disparity within
//! `m + 1` for schemes whose bridges contribute at most one unbalanced
//! symbol, at the cost of one message bit per codeword.

use crate::codec::{disparity_of, Codeword, Symbol};
use crate::error::{Error, Result};

/// Running disparity across an encoded stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DisparityState {
    /// Signed cumulative disparity of everything committed so far.
    pub running: i64,
    pub frames_seen: u64,
    pub symbols_seen: u64,
}

impl DisparityState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn commit(&mut self, disparity: i64, symbols: usize) {
        self.running += disparity;
        self.symbols_seen += symbols as u64;
    }
}

/// Picks `c` or its complement against the running disparity.
///
/// Returns the original when the running disparity is zero or already
/// opposes the codeword's sign; the state is not mutated here (the stream
/// layer commits once bridge symbols are known).
pub fn select_balanced(c: Codeword, state: &DisparityState) -> Result<(Codeword, bool)> {
    if c.len().is_multiple_of(2) {
        return Err(Error::InvalidParams(
            "balancing requires odd codeword length (odd words always have nonzero disparity)"
                .into(),
        ));
    }
    let d = c.disparity()?;
    if state.running != 0 && d.signum() == state.running.signum() {
        Ok((c.complement(), true))
    } else {
        Ok((c, false))
    }
}

/// Absolute disparity `|#GC - #AT|` of a whole sequence.
pub fn global_disparity(seq: &[Symbol]) -> u64 {
    disparity_of(seq).unsigned_abs()
}

/// Fraction of G/C symbols, in `[0, 1]`.
pub fn gc_content(seq: &[Symbol]) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::InvalidParams("GC-content of an empty sequence".into()));
    }
    let gc = seq.iter().filter(|s| s.is_gc()).count();
    Ok(gc as f64 / seq.len() as f64)
}
