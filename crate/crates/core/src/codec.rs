//! Lexicographic rank/unrank for run-length-limited codewords.
//!
//! Codewords of length `m` over a `q`-ary alphabet with no run longer than
//! `ell` are ordered lexicographically; `rank` maps a codeword to its index
//! in `[0, N(m))` and `unrank` inverts the map. Both walk the word once,
//! left to right, accumulating per-symbol contributions read off the shared
//! [`CardinalityTable`]. Positions are indexed `c_{m-1} c_{m-2} ... c_0`
//! with `c_{m-1}` the leftmost (most significant) symbol.

use num_bigint::BigUint;
use num_traits::Zero;
use std::fmt;

use crate::cardinality::{CardinalityTable, CodeParams};
use crate::error::{Error, Result};

/// One `q`-ary symbol. For `q = 4` the DNA rendering is
/// `A = 0 < T = 1 < G = 2 < C = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

pub const DNA_ALPHABET: [char; 4] = ['A', 'T', 'G', 'C'];

impl Symbol {
    pub const A: Symbol = Symbol(0);
    pub const T: Symbol = Symbol(1);
    pub const G: Symbol = Symbol(2);
    pub const C: Symbol = Symbol(3);

    pub fn new(value: u8) -> Symbol {
        Symbol(value)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Mirror symbol `q - 1 - v`; for DNA this swaps A<->C and T<->G.
    pub fn complement(self, q: u8) -> Symbol {
        Symbol(q - 1 - self.0)
    }

    /// True for G and C under the DNA rendering.
    pub fn is_gc(self) -> bool {
        self.0 >= 2
    }

    /// +1 for G/C, -1 for A/T.
    pub fn disparity(self) -> i64 {
        if self.is_gc() {
            1
        } else {
            -1
        }
    }

    pub fn to_char(self, q: u8) -> char {
        if q == 4 {
            DNA_ALPHABET[self.0 as usize]
        } else {
            char::from_digit(self.0 as u32, 36).unwrap_or('?')
        }
    }

    pub fn from_char(ch: char, q: u8) -> Result<Symbol> {
        let v = if q == 4 {
            match ch.to_ascii_uppercase() {
                'A' => 0,
                'T' => 1,
                'G' => 2,
                'C' => 3,
                other => return Err(Error::Parse(format!("'{other}' is not a DNA symbol"))),
            }
        } else {
            let d = ch
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("'{ch}' is not a symbol digit")))?;
            if d >= q as u32 {
                return Err(Error::Parse(format!("symbol '{ch}' outside alphabet of size {q}")));
            }
            d as u8
        };
        Ok(Symbol(v as u8))
    }
}

/// Parses a symbol string: DNA letters for `q = 4` (case-insensitive),
/// digits otherwise.
pub fn symbols_from_str(text: &str, q: u8) -> Result<Vec<Symbol>> {
    text.trim().chars().map(|ch| Symbol::from_char(ch, q)).collect()
}

/// Renders symbols as uppercase DNA (`q = 4`) or digits.
pub fn symbols_to_string(symbols: &[Symbol], q: u8) -> String {
    symbols.iter().map(|s| s.to_char(q)).collect()
}

/// Length of the longest run of identical symbols (0 for an empty slice).
pub fn longest_run(symbols: &[Symbol]) -> usize {
    let mut longest = 0;
    let mut run = 0;
    let mut prev: Option<Symbol> = None;
    for &s in symbols {
        run = if prev == Some(s) { run + 1 } else { 1 };
        longest = longest.max(run);
        prev = Some(s);
    }
    longest
}

/// Signed disparity `#GC - #AT` of a DNA symbol sequence.
pub fn disparity_of(symbols: &[Symbol]) -> i64 {
    symbols.iter().map(|s| s.disparity()).sum()
}

/// A validated constrained codeword: length `m`, symbols below `q`, and no
/// run of identical symbols longer than `ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    params: CodeParams,
    symbols: Vec<Symbol>,
}

impl Codeword {
    pub fn new(params: CodeParams, symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.len() != params.m {
            return Err(Error::InvalidParams(format!(
                "expected {} symbols, got {}",
                params.m,
                symbols.len()
            )));
        }
        if let Some(bad) = symbols.iter().find(|s| s.value() >= params.q) {
            return Err(Error::OutOfRange(format!(
                "symbol value {} outside alphabet of size {}",
                bad.value(),
                params.q
            )));
        }
        let run = longest_run(&symbols);
        if run > params.ell {
            return Err(Error::ConstraintViolation(format!(
                "run of length {run} exceeds limit {}",
                params.ell
            )));
        }
        Ok(Codeword { params, symbols })
    }

    pub fn from_str(text: &str, q: u8, ell: usize) -> Result<Self> {
        let symbols = symbols_from_str(text, q)?;
        let params = CodeParams::new(q, ell, symbols.len())?;
        Codeword::new(params, symbols)
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Leftmost (most significant) symbol.
    pub fn first(&self) -> Symbol {
        self.symbols[0]
    }

    /// Rightmost (least significant) symbol.
    pub fn last(&self) -> Symbol {
        *self.symbols.last().unwrap()
    }

    /// Symbol-wise mirror; valid because the constraint set is symmetric.
    pub fn complement(&self) -> Codeword {
        let symbols = self.symbols.iter().map(|s| s.complement(self.params.q)).collect();
        Codeword { params: self.params, symbols }
    }

    /// `#GC - #AT`; defined for the DNA alphabet only.
    pub fn disparity(&self) -> Result<i64> {
        if self.params.q != 4 {
            return Err(Error::InvalidParams("disparity requires q = 4".into()));
        }
        Ok(disparity_of(&self.symbols))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&symbols_to_string(&self.symbols, self.params.q))
    }
}

/// Number of valid completions through a symbol `delta` at position `i`,
/// when the already-fixed prefix ends with a run of `run_len` copies of
/// `run_sym` (`None` for an empty prefix).
///
/// If `delta` extends that run, only continuations keeping the total run
/// within `ell` remain: the count drops from `S(i) + ... + S(i-ell+1)` to
/// `S(i) + ... + S(i-ell+run_len+1)`, and to zero once the run is saturated.
fn completions_through(
    table: &CardinalityTable,
    run: Option<(Symbol, usize)>,
    delta: Symbol,
    i: usize,
) -> BigUint {
    let ell = table.ell();
    let run_len = match run {
        Some((sym, len)) if sym == delta => len,
        _ => 0,
    };
    if run_len >= ell {
        return BigUint::zero();
    }
    table.window_sum(i as isize, ell - run_len)
}

/// Contribution of choosing `candidate` at position `i`: the number of valid
/// words that agree with the prefix and continue with some symbol below
/// `candidate`. Summing these over all positions yields the rank.
pub fn symbol_contribution(
    table: &CardinalityTable,
    run: Option<(Symbol, usize)>,
    candidate: Symbol,
    i: usize,
) -> Result<BigUint> {
    if candidate.value() >= table.q() {
        return Err(Error::OutOfRange(format!(
            "candidate symbol {} outside alphabet of size {}",
            candidate.value(),
            table.q()
        )));
    }
    if let Some((_, len)) = run {
        if len > table.ell() {
            return Err(Error::ConstraintViolation(format!(
                "prefix run length {len} exceeds limit {}",
                table.ell()
            )));
        }
    }
    if i >= table.horizon() {
        return Err(Error::OutOfRange(format!(
            "position {i} outside table horizon {}",
            table.horizon()
        )));
    }
    let mut total = BigUint::zero();
    for v in 0..candidate.value() {
        total += completions_through(table, run, Symbol::new(v), i);
    }
    Ok(total)
}

/// Lexicographic index of `c` in `[0, N(m))`.
pub fn rank(table: &CardinalityTable, c: &Codeword) -> Result<BigUint> {
    let params = c.params();
    check_table_match(table, &params)?;
    let m = params.m;
    let mut index = BigUint::zero();
    let mut run: Option<(Symbol, usize)> = None;
    for (idx, &sym) in c.symbols().iter().enumerate() {
        let i = m - 1 - idx;
        index += symbol_contribution(table, run, sym, i)?;
        run = Some(match run {
            Some((prev, len)) if prev == sym => (sym, len + 1),
            _ => (sym, 1),
        });
    }
    Ok(index)
}

/// The unique codeword with rank `index`.
///
/// At each position the largest symbol whose cumulative contribution still
/// fits into the residual is chosen; ties between equal contributions go to
/// the larger symbol, which is exactly what skips run-saturated symbols
/// (their own continuation count is zero).
pub fn unrank(table: &CardinalityTable, index: &BigUint, params: &CodeParams) -> Result<Codeword> {
    check_table_match(table, params)?;
    let m = params.m;
    if m > table.horizon() {
        return Err(Error::OutOfRange(format!(
            "m = {m} beyond table horizon {}",
            table.horizon()
        )));
    }
    let n = table.cardinality(m)?;
    if *index >= n {
        return Err(Error::OutOfRange(format!("index {index} >= N(m) = {n}")));
    }
    let mut residual = index.clone();
    let mut run: Option<(Symbol, usize)> = None;
    let mut symbols = Vec::with_capacity(m);
    for idx in 0..m {
        let i = m - 1 - idx;
        let mut chosen = Symbol::new(0);
        let mut chosen_below = BigUint::zero();
        let mut below = BigUint::zero();
        for v in 0..params.q {
            if below <= residual {
                chosen = Symbol::new(v);
                chosen_below = below.clone();
            } else {
                break;
            }
            below += completions_through(table, run, Symbol::new(v), i);
        }
        residual -= chosen_below;
        run = Some(match run {
            Some((prev, len)) if prev == chosen => (chosen, len + 1),
            _ => (chosen, 1),
        });
        symbols.push(chosen);
    }
    debug_assert!(residual.is_zero());
    Codeword::new(*params, symbols)
}

fn check_table_match(table: &CardinalityTable, params: &CodeParams) -> Result<()> {
    if table.q() != params.q || table.ell() != params.ell {
        return Err(Error::InvalidParams(format!(
            "table is for (q={}, ell={}), params want (q={}, ell={})",
            table.q(),
            table.ell(),
            params.q,
            params.ell
        )));
    }
    Ok(())
}
