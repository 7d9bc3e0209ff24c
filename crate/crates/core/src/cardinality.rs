//! Cardinality tables for run-length-limited codes.
//!
//! For alphabet size `q` and run limit `ell`, the number `N(m)` of length-`m`
//! words with no run of identical symbols longer than `ell` satisfies
//! `N(m) = (q-1) * [N(m-1) + ... + N(m-ell)]` with `N(m) = q^m` for
//! `1 <= m <= ell`. Every other module queries these counts, so the table is
//! built once and shared.
//!
//! The table stores the weighted values `S(i) = (q-1) * N(i) / q` instead of
//! `N(i)`: each `S(i)` is an exact integer (the recursion's fractional
//! anchor `N(0) = q/(q-1)` becomes `S(0) = 1`), and `S` is exactly what the
//! rank/unrank rule consumes.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Selects one code from the family: alphabet size `q`, run limit `ell`,
/// codeword length `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub q: u8,
    pub ell: usize,
    pub m: usize,
}

impl CodeParams {
    pub fn new(q: u8, ell: usize, m: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("alphabet size q = {q}, need q >= 2")));
        }
        if ell < 1 {
            return Err(Error::InvalidParams("run limit ell must be >= 1".into()));
        }
        if m < 1 {
            return Err(Error::InvalidParams("codeword length m must be >= 1".into()));
        }
        Ok(CodeParams { q, ell, m })
    }
}

/// Precomputed weighted cardinalities `S(0..=horizon)` for one `(q, ell)`.
///
/// Immutable after construction (aside from [`extend`](Self::extend)), so it
/// can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityTable {
    q: u8,
    ell: usize,
    s: Vec<BigUint>,
}

impl CardinalityTable {
    /// Builds `S(0..=m_max)`.
    ///
    /// `S(0) = 1`, `S(i) = (q-1) * q^(i-1)` for `1 <= i <= ell`, and
    /// `S(i) = (q-1) * [S(i-1) + ... + S(i-ell)]` above that.
    pub fn build(q: u8, ell: usize, m_max: usize) -> Result<Self> {
        CodeParams::new(q, ell, m_max.max(1))?;
        let mut table = CardinalityTable { q, ell, s: vec![BigUint::one()] };
        table.extend(m_max);
        Ok(table)
    }

    /// Appends entries up to `m_max` without recomputing existing ones.
    pub fn extend(&mut self, m_max: usize) {
        let q = BigUint::from(self.q);
        let qm1 = BigUint::from(self.q - 1);
        for i in self.s.len()..=m_max {
            let next = if i <= self.ell {
                &qm1 * q.pow(i as u32 - 1)
            } else {
                let sum: BigUint = self.s[i - self.ell..i].iter().sum();
                &qm1 * sum
            };
            self.s.push(next);
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Largest `m` the table can answer queries for.
    pub fn horizon(&self) -> usize {
        self.s.len() - 1
    }

    /// `S(i)`, taking `S(i) = 0` for `i < 0`.
    pub fn weighted(&self, i: isize) -> BigUint {
        if i < 0 {
            BigUint::zero()
        } else {
            self.s[i as usize].clone()
        }
    }

    /// `S(i) + S(i-1) + ... + S(i-terms+1)`, skipping negative indices.
    pub(crate) fn window_sum(&self, i: isize, terms: usize) -> BigUint {
        let mut total = BigUint::zero();
        for t in 0..terms as isize {
            if i - t >= 0 {
                total += &self.s[(i - t) as usize];
            }
        }
        total
    }

    fn check_range(&self, m: usize) -> Result<()> {
        if m < 1 {
            return Err(Error::OutOfRange("m = 0 has no codebook size".into()));
        }
        if m > self.horizon() {
            return Err(Error::OutOfRange(format!(
                "m = {m} beyond table horizon {}",
                self.horizon()
            )));
        }
        Ok(())
    }

    /// Codebook size `N(m) = q * S(m) / (q-1)`, exact.
    pub fn cardinality(&self, m: usize) -> Result<BigUint> {
        self.check_range(m)?;
        let prod = &self.s[m] * self.q;
        debug_assert!((&prod % (self.q - 1)).is_zero());
        Ok(prod / (self.q - 1))
    }

    /// Message length in bits under balancing: `floor(log2(N(m) / 2))`.
    pub fn adder_size_bits(&self, m: usize) -> Result<u64> {
        let n = self.cardinality(m)?;
        Ok(n.bits() - 2)
    }

    /// Bits of offline memory for the values `S(0), ..., S(m-1)` that the
    /// rank/unrank rule consumes (each stored at its exact bit width).
    pub fn storage_overhead_bits(&self, m: usize) -> Result<u64> {
        self.check_range(m)?;
        Ok(self.s[..m].iter().map(|v| v.bits()).sum())
    }

    /// Serializes as a header line `q ell m_max` followed by one decimal
    /// integer per line, `S(0)` first.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q, self.ell, self.horizon());
        for v in &self.s {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format and revalidates every
    /// entry against the recursion.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty table dump".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("bad header '{header}', want 'q ell m_max'")));
        }
        let q: u8 = fields[0].parse().map_err(|_| Error::Parse("bad q in header".into()))?;
        let ell: usize = fields[1].parse().map_err(|_| Error::Parse("bad ell in header".into()))?;
        let m_max: usize = fields[2].parse().map_err(|_| Error::Parse("bad m_max in header".into()))?;
        let mut s = Vec::with_capacity(m_max + 1);
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v = line
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad table entry '{line}'")))?;
            s.push(v);
        }
        if s.len() != m_max + 1 {
            return Err(Error::Parse(format!(
                "expected {} entries per header, found {}",
                m_max + 1,
                s.len()
            )));
        }
        let rebuilt = CardinalityTable::build(q, ell, m_max)?;
        if rebuilt.s != s {
            return Err(Error::Parse("table entries disagree with the recursion".into()));
        }
        Ok(rebuilt)
    }
}
