//! Stream-level properties: round trips across schemes and balancing, the
//! whole-stream run constraint, rate realization, disparity bounds, and the
//! exact single-substitution detection envelope of each scheme.

mod common;

use common::{codec, random_bits, sweep_frames};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dloco::balancing::{gc_content, global_disparity};
use dloco::bridging::BridgeScheme;
use dloco::codec::{disparity_of, longest_run};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip_all_schemes(
        seed in any::<u64>(),
        m_pick in 0usize..3,
        scheme_pick in 0usize..4,
        balancing in any::<bool>(),
        frames in 1usize..5,
    ) {
        let m = [9, 21, 33][m_pick];
        let scheme = BridgeScheme::ALL[scheme_pick];
        let codec = codec(m, scheme, balancing);
        let bit_count = codec.layout().stream_bits(frames, scheme);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = random_bits(bit_count, &mut rng);
        let dna = codec.encode(&bits).unwrap();
        prop_assert_eq!(dna.len(), codec.layout().stream_symbols(frames, scheme));
        prop_assert!(longest_run(&dna) <= 3, "run constraint across the whole stream");
        let (decoded, report) = codec.decode(&dna).unwrap();
        prop_assert!(report.is_clean(), "{}", report.to_text());
        prop_assert_eq!(decoded, bits);
    }

    #[test]
    fn partial_tail_zero_pads(seed in any::<u64>(), extra in 1usize..17) {
        let codec = codec(9, BridgeScheme::IIB, false);
        let per = codec.layout().bits_per_frame();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = random_bits(per + extra, &mut rng);
        let dna = codec.encode(&bits).unwrap();
        let (decoded, report) = codec.decode(&dna).unwrap();
        prop_assert!(report.is_clean());
        prop_assert_eq!(&decoded[..bits.len()], &bits[..]);
        prop_assert!(decoded[bits.len()..].iter().all(|b| !b));
    }
}

#[test]
fn boundary_runs_never_exceed_limit() {
    // Long streams at m = 21 under every scheme, checking runs across every
    // codeword/bridge boundary and both stream ends.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for scheme in BridgeScheme::ALL {
        for balancing in [false, true] {
            let codec = codec(21, scheme, balancing);
            for _ in 0..150 {
                let bits = random_bits(codec.layout().stream_bits(8, scheme), &mut rng);
                let dna = codec.encode(&bits).unwrap();
                assert!(longest_run(&dna) <= 3, "{scheme} balancing={balancing}");
            }
        }
    }
}

#[test]
fn per_frame_rate_matches_formula() {
    let table = dloco::CardinalityTable::build(4, 3, 33).unwrap();
    for scheme in BridgeScheme::ALL {
        for balancing in [false, true] {
            for m in [9usize, 15, 21, 33] {
                let codec = codec(m, scheme, balancing);
                let rate = dloco::analysis::rate(scheme, &table, m, balancing).unwrap();
                assert_eq!(codec.layout().bits_per_frame() as u64, rate.num, "{scheme} m={m}");
                assert_eq!(2 * codec.layout().frame_symbols as u64, rate.den);
            }
        }
    }
}

#[test]
fn balanced_running_disparity_bounds() {
    // Schemes I, II-B, III keep the running disparity within m+1 after every
    // frame; II-A within m + 2K + 1 at the end of K frames.
    let m = 21usize;
    let frames = 12usize;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for scheme in [BridgeScheme::I, BridgeScheme::IIB, BridgeScheme::III] {
        let codec = codec(m, scheme, true);
        let layout = codec.layout();
        for _ in 0..60 {
            let bits = random_bits(layout.stream_bits(frames, scheme), &mut rng);
            let dna = codec.encode(&bits).unwrap();
            for k in 1..=frames {
                let cut = match scheme {
                    // Scheme I: measure at codeword commits (its trailing
                    // bridge belongs to the next frame's selection basis).
                    BridgeScheme::I => (k - 1) * layout.frame_symbols + layout.m,
                    _ => k * layout.frame_symbols,
                };
                let d = disparity_of(&dna[..cut.min(dna.len())]);
                assert!(
                    d.unsigned_abs() <= (m + 1) as u64,
                    "{scheme} frame {k}: running {d}"
                );
            }
        }
    }
    let codec = codec(m, BridgeScheme::IIA, true);
    for _ in 0..60 {
        let bits = random_bits(codec.layout().stream_bits(frames, BridgeScheme::IIA), &mut rng);
        let dna = codec.encode(&bits).unwrap();
        assert!(global_disparity(&dna) <= (m + 2 * frames + 1) as u64);
    }
}

#[test]
fn balanced_gc_content_windows() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let codec10 = codec(21, BridgeScheme::IIB, true);
    for _ in 0..100 {
        let bits = random_bits(codec10.layout().stream_bits(10, BridgeScheme::IIB), &mut rng);
        let dna = codec10.encode(&bits).unwrap();
        let gc = gc_content(&dna).unwrap();
        assert!((0.45..=0.55).contains(&gc), "K=10 gc={gc}");
    }
    for _ in 0..40 {
        let bits = random_bits(codec10.layout().stream_bits(25, BridgeScheme::IIB), &mut rng);
        let dna = codec10.encode(&bits).unwrap();
        let gc = gc_content(&dna).unwrap();
        assert!((0.48..=0.52).contains(&gc), "K=25 gc={gc}");
    }
}

#[test]
fn balancing_never_uses_upper_half_as_message() {
    // The message index always stays below 2^codeword_bits <= N/2; the
    // decoder's fold therefore never flags a clean balanced stream.
    let codec = codec(9, BridgeScheme::I, true);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let bits = random_bits(codec.layout().stream_bits(6, BridgeScheme::I), &mut rng);
        let dna = codec.encode(&bits).unwrap();
        let (decoded, report) = codec.decode(&dna).unwrap();
        assert!(report.is_clean());
        assert_eq!(decoded, bits);
    }
}

/// Scheme III detects every single substitution.
#[test]
fn scheme_iii_sweep_has_no_misses() {
    let codec = codec(21, BridgeScheme::III, false);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let outcome = sweep_frames(&codec, 60, &mut rng);
    assert!(outcome.variants > 0);
    assert!(
        outcome.misses.is_empty(),
        "scheme III missed {:?}",
        outcome.misses.first()
    );
}

/// Schemes II-A and II-B have a characterized blind spot: a corrupted frame
/// can coincide with the valid encoding of different message bits. For II-B
/// that needs the substitution to hit the codeword's final symbol with a
/// value shift of 2 (the carried bit flips along with the candidate set);
/// II-A additionally admits misses on the checksum symbol itself. No other
/// position is ever missed.
#[test]
fn scheme_ii_sweep_misses_only_in_known_blind_spots() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let m = 21usize;

    let codec_b = codec(m, BridgeScheme::IIB, false);
    let outcome = sweep_frames(&codec_b, 60, &mut rng);
    assert!(!outcome.misses.is_empty(), "the II-B blind spot exists");
    for miss in &outcome.misses {
        assert_eq!(miss.position, m - 1, "II-B misses only the final codeword symbol");
        let shift = (4 + miss.substituted.value() - miss.original.value()) % 4;
        assert_eq!(shift, 2, "II-B misses only +-2 value shifts");
    }

    let codec_a = codec(m, BridgeScheme::IIA, false);
    let outcome = sweep_frames(&codec_a, 60, &mut rng);
    assert!(!outcome.misses.is_empty(), "the II-A blind spot exists");
    for miss in &outcome.misses {
        let is_last_codeword = miss.position == m - 1
            && (4 + miss.substituted.value() - miss.original.value()) % 4 == 2;
        let is_checksum = miss.position == m + 1;
        assert!(
            is_last_codeword || is_checksum,
            "unexpected II-A miss at {:?}",
            miss
        );
    }
}

#[test]
fn corrupted_stream_flags_owning_frame() {
    let codec = codec(9, BridgeScheme::IIA, false);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let bits = random_bits(codec.layout().stream_bits(4, BridgeScheme::IIA), &mut rng);
    let dna = codec.encode(&bits).unwrap();
    // Corrupt one symbol in frame 2's codeword.
    let mut corrupted = dna.clone();
    let pos = 2 * codec.layout().frame_symbols + 4;
    corrupted[pos] = dloco::Symbol::new((corrupted[pos].value() + 1) % 4);
    let (_, report) = codec.decode(&corrupted).unwrap();
    assert!(report.frame_is_flagged(2));
    assert!(!report.frame_is_flagged(0));
    let text = report.to_text();
    assert!(text.contains("frame=2"));
    assert!(text.ends_with("frames=4 flagged=1\n"));
}
