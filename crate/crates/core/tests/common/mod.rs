#![allow(dead_code)]

//! Shared helpers for the integration suites: brute-force codebook
//! enumeration (the independent oracle for rank/unrank), random codeword
//! sampling, and the single-substitution sweep harness.

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;

use dloco::codec::longest_run;
use dloco::stream::StreamCodec;
use dloco::{CardinalityTable, CodeParams, Codeword, Symbol};

/// Every valid codeword of the `(q, ell, m)` code, in lexicographic order,
/// by filtering all `q^m` strings. Independent of the codec under test.
pub fn enumerate_codebook(q: u8, ell: usize, m: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut word = vec![0u8; m];
    loop {
        let symbols: Vec<Symbol> = word.iter().map(|&v| Symbol::new(v)).collect();
        if longest_run(&symbols) <= ell {
            out.push(symbols);
        }
        // Counting in base q from the right preserves lexicographic order.
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if word[pos] + 1 < q {
                word[pos] += 1;
                for v in &mut word[pos + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

pub fn random_codeword(
    table: &CardinalityTable,
    params: &CodeParams,
    rng: &mut impl Rng,
) -> Codeword {
    let n = table.cardinality(params.m).unwrap();
    let index = rng.gen_biguint_below(&n);
    dloco::codec::unrank(table, &index, params).unwrap()
}

pub fn random_bits(count: usize, rng: &mut impl Rng) -> Vec<bool> {
    (0..count).map(|_| rng.gen()).collect()
}

/// One undetected single-substitution found by [`sweep_frames`].
#[derive(Debug, Clone)]
pub struct SweepMiss {
    /// Position within the frame (codeword symbols first, then bridge).
    pub position: usize,
    pub original: Symbol,
    pub substituted: Symbol,
}

/// Outcome of sweeping every single-symbol substitution over random frames.
#[derive(Debug, Default)]
pub struct SweepOutcome {
    pub variants: u64,
    pub misses: Vec<SweepMiss>,
}

/// Encodes `frames` random two-frame streams and, for each frame, tries all
/// `3 * frame_len` single substitutions, requiring the owning frame to be
/// flagged. Undetected variants are returned, not asserted.
pub fn sweep_frames(codec: &StreamCodec, streams: usize, rng: &mut impl Rng) -> SweepOutcome {
    let layout = codec.layout();
    let scheme = codec.config().scheme;
    let bits_per_stream = layout.stream_bits(2, scheme);
    let mut outcome = SweepOutcome::default();
    for _ in 0..streams {
        let bits = random_bits(bits_per_stream, rng);
        let clean = codec.encode(&bits).unwrap();
        let frame_count = 2usize;
        for frame in 0..frame_count {
            let start = frame * layout.frame_symbols;
            let end = match scheme {
                dloco::bridging::BridgeScheme::I if frame + 1 == frame_count => start + layout.m,
                _ => start + layout.frame_symbols,
            };
            for pos in start..end {
                for shift in 1..4u8 {
                    let mut corrupted = clean.clone();
                    let substituted = Symbol::new((clean[pos].value() + shift) % 4);
                    corrupted[pos] = substituted;
                    let (_, report) = codec.decode(&corrupted).unwrap();
                    outcome.variants += 1;
                    if !report.frame_is_flagged(frame) {
                        outcome.misses.push(SweepMiss {
                            position: pos - start,
                            original: clean[pos],
                            substituted,
                        });
                    }
                }
            }
        }
    }
    outcome
}

/// Convenience constructor used across suites.
pub fn codec(m: usize, scheme: dloco::bridging::BridgeScheme, balancing: bool) -> StreamCodec {
    let config = dloco::stream::StreamConfig::new(
        CodeParams::new(4, 3, m).unwrap(),
        scheme,
        balancing,
    )
    .unwrap();
    StreamCodec::new(config).unwrap()
}

#[allow(dead_code)]
pub fn biguint(v: u64) -> BigUint {
    BigUint::from(v)
}
