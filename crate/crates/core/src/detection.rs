//! Substitution channel and no-detection analysis.
//!
//! The channel is `(1-p, p/3, p/3, p/3)`-symmetric: each symbol is replaced,
//! independently with probability `p`, by one of the other three uniformly.
//! A checksum over `n` symbols misses an `r`-error pattern exactly when the
//! mod-4 error sum vanishes; `C(r)` counts such patterns, giving the
//! analytic bounds below. Monte-Carlo runs exercise the full encode ->
//! corrupt -> decode pipeline and compare against those bounds.

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bridging::BridgeScheme;
use crate::codec::Symbol;
use crate::error::{Error, Result};
use crate::stream::{StreamCodec, StreamConfig};

/// Applies the symmetric substitution channel. Deterministic per seed.
pub fn substitute_channel(dna: &[Symbol], p: f64, seed: u64) -> Result<Vec<Symbol>> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = dna.to_vec();
    substitute_in_place(&mut out, p, &mut rng);
    Ok(out)
}

fn substitute_in_place(dna: &mut [Symbol], p: f64, rng: &mut impl Rng) {
    for s in dna.iter_mut() {
        if rng.gen::<f64>() < p {
            // One of the three other symbols, uniformly.
            let shift = rng.gen_range(1..4u8);
            *s = Symbol::new((s.value() + shift) % 4);
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("substitution probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// Number of error patterns at `r` fixed positions whose mod-4 sum is zero:
/// `C(r) = (3^r - 3*(-1)^(r-1)) / 4`, equivalently the recurrence
/// `C(r) = 3^(r-1) - C(r-1)` with `C(2) = 3`.
pub fn undetected_pattern_count(r: u32) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::OutOfRange("undetected patterns need r >= 2".into()));
    }
    let pow = BigUint::from(3u8).pow(r);
    // 3^r + 3 for even r, 3^r - 3 for odd r; both divisible by 4.
    let num = if r.is_multiple_of(2) { pow + 3u8 } else { pow - 3u8 };
    Ok(num / 4u8)
}

fn binomial(n: usize, r: usize) -> f64 {
    let mut value = 1.0f64;
    for k in 0..r {
        value = value * (n - k) as f64 / (k + 1) as f64;
    }
    value
}

/// Coarse bound on the per-checksum no-detection probability over `n`
/// symbols: at most a third of multi-error events slip past the checksum.
pub fn bound_i(n: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if n < 2 {
        return Err(Error::OutOfRange("bound needs n >= 2".into()));
    }
    let q = 1.0 - p;
    Ok((1.0 - q.powi(n as i32) - n as f64 * p * q.powi(n as i32 - 1)) / 3.0)
}

/// Sharper bound: sums the exact per-`r` miss fraction `C(r)/3^r` against the
/// binomial error-weight distribution, truncated at `terms` (the series is
/// exact once `terms >= n`).
pub fn bound_ii(n: usize, p: f64, terms: usize) -> Result<f64> {
    check_probability(p)?;
    if n < 2 || terms < 2 {
        return Err(Error::OutOfRange("bound needs n >= 2 and terms >= 2".into()));
    }
    let q = 1.0 - p;
    let mut total = 0.0;
    for r in 2..=terms.min(n) {
        let miss_fraction = (1.0 - (-1.0f64 / 3.0).powi(r as i32 - 1)) / 4.0;
        total += miss_fraction * binomial(n, r) * p.powi(r as i32) * q.powi((n - r) as i32);
    }
    Ok(total)
}

/// Full (untruncated) form of [`bound_ii`].
pub fn bound_ii_full(n: usize, p: f64) -> Result<f64> {
    bound_ii(n, p, n)
}

/// Frame-level no-detection bound for scheme III with constituent length
/// `m_prime`: all three checksums must be satisfied while at least one span
/// is errored. Each span covers `m_prime + 1` symbols.
pub fn p_un_scheme_iii(m_prime: usize, p: f64) -> Result<f64> {
    if m_prime < 1 {
        return Err(Error::OutOfRange("m_prime must be >= 1".into()));
    }
    let p1 = bound_ii_full(m_prime + 1, p)?;
    let clean = (1.0 - p).powi(m_prime as i32 + 1);
    Ok(3.0 * p1 * clean * clean + 3.0 * p1 * p1 * clean + p1 * p1 * p1)
}

/// Outcome counts of a Monte-Carlo detection run.
///
/// `errored`/`undetected` classify a frame by *any* changed symbol; the
/// `restricted_*` twins count only changes inside the checksum-covered span
/// (codeword plus `L4 L3` for II-B, codeword plus the middle pattern for
/// III, the whole frame for II-A), matching what the analytic bounds model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetectionStats {
    pub frames: u64,
    pub errored: u64,
    pub detected: u64,
    pub undetected: u64,
    pub restricted_errored: u64,
    pub restricted_undetected: u64,
}

impl DetectionStats {
    fn merge(self, other: Self) -> Self {
        DetectionStats {
            frames: self.frames + other.frames,
            errored: self.errored + other.errored,
            detected: self.detected + other.detected,
            undetected: self.undetected + other.undetected,
            restricted_errored: self.restricted_errored + other.restricted_errored,
            restricted_undetected: self.restricted_undetected + other.restricted_undetected,
        }
    }

    /// Undetected-error rate per frame.
    pub fn undetected_per_frame(&self) -> f64 {
        self.undetected as f64 / self.frames as f64
    }

    /// Undetected rate among errored frames.
    pub fn undetected_given_errored(&self) -> f64 {
        if self.errored == 0 {
            0.0
        } else {
            self.undetected as f64 / self.errored as f64
        }
    }

    /// Binomial standard error of the per-frame undetected rate.
    pub fn std_error(&self) -> f64 {
        let rate = self.undetected_per_frame();
        (rate * (1.0 - rate) / self.frames as f64).sqrt()
    }

    /// 95% confidence half-width for the per-frame undetected rate.
    pub fn ci95_half_width(&self) -> f64 {
        1.96 * self.std_error()
    }

    /// Key=value record, one line.
    pub fn to_record(&self) -> String {
        format!(
            "frames={} errored={} detected={} undetected={} rate={} ci95={} restricted_errored={} restricted_undetected={}",
            self.frames,
            self.errored,
            self.detected,
            self.undetected,
            format_sig6(self.undetected_per_frame()),
            format_sig6(self.ci95_half_width()),
            self.restricted_errored,
            self.restricted_undetected,
        )
    }
}

/// Whether frame position `pos` lies in the checksum-covered span: the whole
/// frame for II-A (every bridge symbol carries message information), codeword
/// plus `L4 L3` for II-B, codeword plus the middle checksum pattern for III.
fn in_restricted_span(scheme: BridgeScheme, m: usize, pos: usize) -> bool {
    match scheme {
        BridgeScheme::I => pos < m,
        BridgeScheme::IIA => true,
        BridgeScheme::IIB => pos < m + 2,
        BridgeScheme::III => pos < m || (m + 1..m + 4).contains(&pos),
    }
}

/// Encodes random single-frame messages, corrupts them through the channel,
/// decodes, and classifies each frame as clean, errored-and-flagged, or
/// errored-and-unflagged. Deterministic per seed and independent of worker
/// count (trials are chunked, one RNG stream per chunk).
pub fn monte_carlo_detection(
    config: &StreamConfig,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<DetectionStats> {
    check_probability(p)?;
    if trials < 1 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    if config.scheme == BridgeScheme::I {
        return Err(Error::InvalidParams("scheme I has no detection capability".into()));
    }
    let codec = StreamCodec::new(*config)?;
    let bits_per_frame = codec.layout().bits_per_frame();
    let m = config.params.m;

    const CHUNK: u64 = 4096;
    let chunks = trials.div_ceil(CHUNK);
    let total = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk + 1);
            let count = CHUNK.min(trials - chunk * CHUNK);
            let mut stats = DetectionStats::default();
            let mut bits = vec![false; bits_per_frame];
            for _ in 0..count {
                for b in bits.iter_mut() {
                    *b = rng.gen::<bool>();
                }
                let clean = codec.encode(&bits).expect("encode random frame");
                let mut received = clean.clone();
                substitute_in_place(&mut received, p, &mut rng);
                let (_, report) = codec.decode(&received).expect("decode frame");
                let errored = received != clean;
                let restricted_errored = received
                    .iter()
                    .zip(&clean)
                    .enumerate()
                    .any(|(pos, (a, b))| a != b && in_restricted_span(config.scheme, m, pos));
                let flagged = !report.is_clean();
                stats.frames += 1;
                stats.errored += errored as u64;
                stats.restricted_errored += restricted_errored as u64;
                if errored && flagged {
                    stats.detected += 1;
                }
                if errored && !flagged {
                    stats.undetected += 1;
                }
                if restricted_errored && !flagged {
                    stats.restricted_undetected += 1;
                }
            }
            stats
        })
        .reduce(DetectionStats::default, DetectionStats::merge);
    Ok(total)
}

/// Log-spaced grid over `[lo, hi]`, inclusive.
pub fn log_spaced_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (llo + (lhi - llo) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Decimal with six significant digits.
pub(crate) fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV comparing scheme III (`m = 3 * m_prime`, bound per constituent and
/// frame-level) against scheme II-B at length `m` over a probability grid.
/// Monte-Carlo columns are appended when `mc` supplies aligned rates.
pub fn bound_curves_csv(
    m_prime: usize,
    m: usize,
    grid: &[f64],
    mc: Option<(&[f64], &[f64])>,
) -> Result<String> {
    let mut out = String::from("p,bound_III,pun_III,bound_IIB");
    if mc.is_some() {
        out.push_str(",mc_III,mc_IIB");
    }
    out.push('\n');
    for (i, &p) in grid.iter().enumerate() {
        let b3 = bound_ii_full(m_prime + 1, p)?;
        let pun3 = p_un_scheme_iii(m_prime, p)?;
        let b2b = bound_ii_full(m + 2, p)?;
        out.push_str(&format!(
            "{},{},{},{}",
            format_sig6(p),
            format_sig6(b3),
            format_sig6(pun3),
            format_sig6(b2b)
        ));
        if let Some((mc3, mc2b)) = mc {
            out.push_str(&format!(",{},{}", format_sig6(mc3[i]), format_sig6(mc2b[i])));
        }
        out.push('\n');
    }
    Ok(out)
}
