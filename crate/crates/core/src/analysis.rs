//! Achievable rates and capacity of the run-length constraint.
//!
//! The constraint's transition diagram has `ell` states tracking the current
//! run length; its adjacency matrix is a companion-style matrix whose
//! dominant eigenvalue `beta` gives the normalized capacity
//! `log2(beta) / log2(q)`. `beta` is the unique root of
//! `x^ell - (q-1)(x^(ell-1) + ... + x + 1)` in `(q-1, q]`, which bisection
//! brackets for free. Finite-length rates divide the per-frame message bits
//! by twice the frame length (one DNA symbol carries two bits).

use crate::bridging::BridgeScheme;
use crate::cardinality::CardinalityTable;
use crate::error::{Error, Result};

/// Adjacency matrix of the run-length transition diagram: `ell` states,
/// first column all `q - 1` (start a new run), shifted identity above the
/// diagonal (extend the current run).
pub fn fstd_adjacency(q: u8, ell: usize) -> Vec<Vec<u64>> {
    let mut f = vec![vec![0u64; ell]; ell];
    for (h, row) in f.iter_mut().enumerate() {
        row[0] = (q - 1) as u64;
        if h + 1 < ell {
            row[h + 1] = 1;
        }
    }
    f
}

/// Largest real positive eigenvalue of the constraint graph, by bisection on
/// `(q-1, q]` to absolute tolerance `1e-12`.
pub fn beta_max(q: u8, ell: usize) -> f64 {
    let qm1 = (q - 1) as f64;
    let poly = |x: f64| -> f64 {
        let mut acc = 0.0;
        for _ in 0..ell {
            acc = acc * x + qm1;
        }
        x.powi(ell as i32) - acc
    };
    let (mut lo, mut hi) = (qm1, q as f64);
    // poly(q) = 1 > 0; poly(q-1) <= 0 with equality only for q=2, ell=1.
    if poly(lo) >= 0.0 {
        return lo;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if poly(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Normalized capacity `log2(beta_max) / log2(q)`.
pub fn capacity(q: u8, ell: usize) -> f64 {
    beta_max(q, ell).log2() / (q as f64).log2()
}

/// Dominant eigenvalue by power iteration (the matrix is primitive for
/// q >= 2, so the iteration converges to the top eigenvalue).
pub fn dominant_eigenvalue(matrix: &[Vec<u64>], tol: f64) -> f64 {
    let n = matrix.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0f64;
    for _ in 0..100_000 {
        let mut w = vec![0.0f64; n];
        for (h, row) in matrix.iter().enumerate() {
            for (p, &entry) in row.iter().enumerate() {
                w[p] += entry as f64 * v[h];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in w.iter_mut() {
            *x /= norm;
        }
        // Rayleigh quotient with the normalized iterate.
        let mut mv = vec![0.0f64; n];
        for (h, row) in matrix.iter().enumerate() {
            for (p, &entry) in row.iter().enumerate() {
                mv[p] += entry as f64 * w[h];
            }
        }
        let next = w.iter().zip(&mv).map(|(a, b)| a * b).sum::<f64>();
        if (next - lambda).abs() < tol {
            return next;
        }
        lambda = next;
        v = w;
    }
    lambda
}

/// An exact rate: message bits over twice the frame symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rate {
    pub num: u64,
    pub den: u64,
}

impl Rate {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Four decimals, ties rounded half-even.
    pub fn to_decimal_4(&self) -> String {
        let scaled = self.num as u128 * 10_000;
        let den = self.den as u128;
        let mut q = scaled / den;
        let r = scaled % den;
        if 2 * r > den || (2 * r == den && q % 2 == 1) {
            q += 1;
        }
        format!("{}.{:04}", q / 10_000, q % 10_000)
    }
}

/// Normalized rate of one scheme at length `m` (for scheme III, `m = 3m'`).
///
/// With balancing the codeword index carries `floor(log2 N(m)) - 1` bits;
/// without it, `floor(log2 N(m))`. Bridge bits are added per scheme and the
/// total is divided by `2 * frame length`.
pub fn rate(
    scheme: BridgeScheme,
    table: &CardinalityTable,
    m: usize,
    balancing: bool,
) -> Result<Rate> {
    if scheme == BridgeScheme::III && !m.is_multiple_of(3) {
        return Err(Error::InvalidParams(format!("scheme III needs 3 | m, got m = {m}")));
    }
    let floor_log2_n = table.cardinality(m)?.bits() - 1;
    let codeword_bits = floor_log2_n - balancing as u64;
    let (bridge_symbols, bridge_bits) = scheme.arity();
    Ok(Rate {
        num: codeword_bits + bridge_bits as u64,
        den: 2 * (m + bridge_symbols) as u64,
    })
}

/// The four balanced rate columns over length grids, plus the capacity row.
#[derive(Debug, Clone)]
pub struct RateTable {
    /// Rows of `(m, R1, R2, R3, m', R4)`.
    pub rows: Vec<(usize, Rate, Rate, Rate, usize, Rate)>,
    pub capacity: f64,
}

/// Computes balanced rates for schemes I/II-A/II-B at each `m` and scheme III
/// at each `m'` (codeword length `3m'`). The grids must have equal length.
pub fn rate_table(
    table: &CardinalityTable,
    ms: &[usize],
    m_primes: &[usize],
) -> Result<RateTable> {
    if ms.len() != m_primes.len() {
        return Err(Error::InvalidParams("length grids must match row-for-row".into()));
    }
    let mut rows = Vec::with_capacity(ms.len());
    for (&m, &mp) in ms.iter().zip(m_primes) {
        rows.push((
            m,
            rate(BridgeScheme::I, table, m, true)?,
            rate(BridgeScheme::IIA, table, m, true)?,
            rate(BridgeScheme::IIB, table, m, true)?,
            mp,
            rate(BridgeScheme::III, table, 3 * mp, true)?,
        ));
    }
    Ok(RateTable { rows, capacity: capacity(table.q(), table.ell()) })
}

impl RateTable {
    pub fn to_text(&self) -> String {
        let mut out = String::from("   m      R1 |    m      R2 |    m      R3 |   m'      R4\n");
        for (m, r1, r2, r3, mp, r4) in &self.rows {
            out.push_str(&format!(
                "{m:>4}  {} | {m:>4}  {} | {m:>4}  {} | {mp:>4}  {}\n",
                r1.to_decimal_4(),
                r2.to_decimal_4(),
                r3.to_decimal_4(),
                r4.to_decimal_4()
            ));
        }
        out.push_str(&format!(
            " cap  {:.4} |  cap  {:.4} |  cap  {:.4} |  cap  {:.4}\n",
            self.capacity, self.capacity, self.capacity, self.capacity
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,R1,R2,R3,m_prime,R4\n");
        for (m, r1, r2, r3, mp, r4) in &self.rows {
            out.push_str(&format!(
                "{m},{},{},{},{mp},{}\n",
                r1.to_decimal_4(),
                r2.to_decimal_4(),
                r3.to_decimal_4(),
                r4.to_decimal_4()
            ));
        }
        out.push_str(&format!("capacity,{0:.4},{0:.4},{0:.4},,{0:.4}\n", self.capacity));
        out
    }
}

/// `log2` of a big integer with enough precision for rate plots.
pub fn log2_big(x: &num_bigint::BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let mut v = 0u64;
        for (i, d) in x.iter_u64_digits().enumerate() {
            if i == 0 {
                v = d;
            }
        }
        (v as f64).log2()
    } else {
        let top: num_bigint::BigUint = x >> (bits - 53);
        let mut v = 0u64;
        for (i, d) in top.iter_u64_digits().enumerate() {
            if i == 0 {
                v = d;
            }
        }
        (v as f64).log2() + (bits - 53) as f64
    }
}
