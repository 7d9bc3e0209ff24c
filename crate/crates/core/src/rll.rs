//! Binary run-length-limited codes via difference vectors, and the 16-ary
//! tandem-repeat-avoiding mapping.
//!
//! XOR-ing adjacent bits of a binary word with runs capped at `ell` yields a
//! word one bit shorter with no `ell` consecutive zeros (a zero marks two
//! equal neighbours). Restricted to words starting with 0 the map is a
//! bijection, so ranking the `(0, ell-1)` RLL code reduces to ranking the
//! run-limited code: the 0-leading words are exactly the lower half of the
//! lexicographic order.

use num_bigint::BigUint;

use crate::cardinality::{CardinalityTable, CodeParams};
use crate::codec::{rank, unrank, Codeword, Symbol};
use crate::error::{Error, Result};

/// Difference vector `v_i = c_{i+1} XOR c_i` of a binary codeword, one bit
/// shorter than the input, leftmost difference first.
pub fn difference_vector(c: &Codeword) -> Result<Vec<u8>> {
    if c.params().q != 2 {
        return Err(Error::InvalidParams("difference vectors are defined for q = 2".into()));
    }
    if c.len() < 2 {
        return Err(Error::InvalidParams("difference vectors need m >= 2".into()));
    }
    Ok(c.symbols()
        .windows(2)
        .map(|w| w[0].value() ^ w[1].value())
        .collect())
}

/// A `(0, ell-1)` run-length-limited code: binary words of length `m - 1`
/// with no `ell` consecutive zeros, indexed through the length-`m`
/// run-limited code with `q = 2`.
pub struct RllCode {
    params: CodeParams,
    table: CardinalityTable,
}

impl RllCode {
    /// `m` is the *source* codeword length; RLL words have length `m - 1`
    /// and zero-runs capped at `ell - 1`.
    pub fn new(m: usize, ell: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidParams("need ell >= 2 for a nonempty zero-run bound".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParams("need m >= 2".into()));
        }
        let params = CodeParams::new(2, ell, m)?;
        let table = CardinalityTable::build(2, ell, m)?;
        Ok(RllCode { params, table })
    }

    /// RLL codeword length `n = m - 1`.
    pub fn codeword_len(&self) -> usize {
        self.params.m - 1
    }

    /// Longest permitted zero-run, `ell - 1`.
    pub fn zero_run_limit(&self) -> usize {
        self.params.ell - 1
    }

    /// Codebook size: half the source code (one half per leading bit).
    pub fn cardinality(&self) -> BigUint {
        self.table.cardinality(self.params.m).unwrap() >> 1
    }

    /// Whether `v` satisfies the zero-run constraint.
    pub fn is_valid(&self, v: &[u8]) -> bool {
        v.len() == self.codeword_len()
            && v.iter().all(|&b| b <= 1)
            && !v
                .windows(self.params.ell)
                .any(|w| w.iter().all(|&b| b == 0))
    }

    /// Index of an RLL word: integrate it back to the 0-leading source word
    /// and rank that.
    pub fn rank(&self, v: &[u8]) -> Result<BigUint> {
        if !self.is_valid(v) {
            return Err(Error::ConstraintViolation(format!(
                "not a ({}, {}) RLL word of length {}",
                0,
                self.zero_run_limit(),
                self.codeword_len()
            )));
        }
        let mut bits = Vec::with_capacity(self.params.m);
        let mut current = 0u8;
        bits.push(Symbol::new(0));
        for &d in v {
            current ^= d;
            bits.push(Symbol::new(current));
        }
        let word = Codeword::new(self.params, bits)?;
        rank(&self.table, &word)
    }

    /// RLL word with the given index: unrank in the source code (0-leading
    /// words occupy `[0, N/2)`) and take the difference vector.
    pub fn unrank(&self, index: &BigUint) -> Result<Vec<u8>> {
        if *index >= self.cardinality() {
            return Err(Error::OutOfRange(format!(
                "index {index} >= RLL cardinality {}",
                self.cardinality()
            )));
        }
        let word = unrank(&self.table, index, &self.params)?;
        debug_assert_eq!(word.first(), Symbol::new(0));
        difference_vector(&word)
    }
}

/// Maps a 16-ary word with no repeated adjacent symbols to quaternary pairs
/// `(v div 4, v mod 4)`. The image has no five-symbol alternation
/// `L1 L2 L1 L2 L1` and no run longer than 4.
pub fn q16_tandem_map(c: &Codeword) -> Result<Vec<Symbol>> {
    if c.params().q != 16 || c.params().ell != 1 {
        return Err(Error::InvalidParams("tandem mapping needs q = 16 and ell = 1".into()));
    }
    let mut out = Vec::with_capacity(2 * c.len());
    for s in c.symbols() {
        out.push(Symbol::new(s.value() / 4));
        out.push(Symbol::new(s.value() % 4));
    }
    Ok(out)
}
