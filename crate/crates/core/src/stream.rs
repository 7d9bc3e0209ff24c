//! Message stream to DNA sequence and back.
//!
//! A stream is a chain of frames, each one codeword plus its bridge. Per
//! frame the encoder consumes `L` message bits as a big-integer index,
//! unranks it (optionally balancing against the running disparity), and
//! appends the bridge carrying any further message bits. Scheme I bridges
//! exist only *between* codewords; schemes II/III also emit a trailing
//! bridge with the right-neighbour exclusion dropped.
//!
//! Decoding cuts fixed-length frames, ranks each codeword back to its
//! index, folds complements when balancing is on, and re-derives every
//! bridge relation; anything inconsistent lands in the [`DecodeReport`]
//! rather than aborting the decode.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

use crate::balancing::{select_balanced, DisparityState};
use crate::bridging::{
    bridge_decode, encode_parts, known_bridge_disparity, segment_checksums, BridgeScheme,
    DetectionFlag,
};
use crate::cardinality::{CardinalityTable, CodeParams};
use crate::codec::{disparity_of, rank, unrank, Codeword, Symbol};
use crate::error::{Error, Result};

/// Everything that parameterizes one stream: code family, bridging scheme,
/// and whether balancing halves the per-codeword message space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamConfig {
    pub params: CodeParams,
    pub scheme: BridgeScheme,
    pub balancing: bool,
}

impl StreamConfig {
    pub fn new(params: CodeParams, scheme: BridgeScheme, balancing: bool) -> Result<Self> {
        scheme.validate(&params)?;
        if balancing && params.m.is_multiple_of(2) {
            return Err(Error::InvalidParams("balancing requires odd m".into()));
        }
        if balancing && params.q != 4 {
            return Err(Error::InvalidParams("balancing requires q = 4".into()));
        }
        Ok(StreamConfig { params, scheme, balancing })
    }
}

/// Shape of one frame: symbol count and message-bit split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameLayout {
    /// Codeword length in symbols.
    pub m: usize,
    /// Symbols per full frame (codeword plus bridge).
    pub frame_symbols: usize,
    /// Message bits consumed by the codeword index.
    pub codeword_bits: usize,
    /// Message bits carried inside the bridge.
    pub bridge_bits: usize,
}

impl FrameLayout {
    /// Message bits per full frame.
    pub fn bits_per_frame(&self) -> usize {
        self.codeword_bits + self.bridge_bits
    }

    /// Total message bits across `k` frames (scheme I has no trailing bridge,
    /// so its last frame carries no bridge bit).
    pub fn stream_bits(&self, k: usize, scheme: BridgeScheme) -> usize {
        match scheme {
            BridgeScheme::I => k * self.codeword_bits + k.saturating_sub(1),
            _ => k * self.bits_per_frame(),
        }
    }

    /// Total symbols across `k` frames.
    pub fn stream_symbols(&self, k: usize, scheme: BridgeScheme) -> usize {
        match scheme {
            BridgeScheme::I => k * self.frame_symbols - usize::from(k > 0),
            _ => k * self.frame_symbols,
        }
    }
}

/// Per-frame decode findings; only non-clean frames are recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameReport {
    pub frame: usize,
    pub flags: Vec<DetectionFlag>,
    pub index_out_of_range: bool,
    pub run_violation: bool,
}

impl FrameReport {
    fn is_clean(&self) -> bool {
        self.flags.is_empty() && !self.index_out_of_range && !self.run_violation
    }
}

impl fmt::Display for FrameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "frame={}", self.frame)?;
        if self.run_violation {
            write!(f, " run-violation")?;
        }
        if self.index_out_of_range {
            write!(f, " index-out-of-range")?;
        }
        for flag in &self.flags {
            write!(f, " {flag}")?;
        }
        Ok(())
    }
}

/// Decode summary: flagged frames plus totals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecodeReport {
    pub total_frames: usize,
    pub flagged: Vec<FrameReport>,
}

impl DecodeReport {
    pub fn is_clean(&self) -> bool {
        self.flagged.is_empty()
    }

    pub fn flagged_frames(&self) -> usize {
        self.flagged.len()
    }

    pub fn frame_is_flagged(&self, frame: usize) -> bool {
        self.flagged.iter().any(|r| r.frame == frame)
    }

    /// One line per flagged frame plus a totals line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.flagged {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&format!(
            "frames={} flagged={}\n",
            self.total_frames,
            self.flagged.len()
        ));
        out
    }
}

/// A bridge whose right-neighbour-dependent symbols are not yet resolved.
struct PendingBridge {
    left_end: Symbol,
    sums: Vec<Symbol>,
    bits: Vec<bool>,
    /// Disparity already committed for this bridge when it was formed.
    committed_disparity: i64,
}

/// Encoder/decoder for one stream configuration, holding the shared table.
pub struct StreamCodec {
    config: StreamConfig,
    table: CardinalityTable,
    layout: FrameLayout,
}

impl StreamCodec {
    pub fn new(config: StreamConfig) -> Result<Self> {
        let table = CardinalityTable::build(config.params.q, config.params.ell, config.params.m)?;
        Self::with_table(config, table)
    }

    /// Reuses an existing table (must match `q` and `ell` and reach `m`).
    pub fn with_table(config: StreamConfig, table: CardinalityTable) -> Result<Self> {
        let params = config.params;
        if table.q() != params.q || table.ell() != params.ell || table.horizon() < params.m {
            return Err(Error::InvalidParams("table does not cover the stream parameters".into()));
        }
        let n = table.cardinality(params.m)?;
        let floor_log2_n = (n.bits() - 1) as usize;
        let codeword_bits = floor_log2_n - usize::from(config.balancing);
        let (bridge_symbols, bridge_bits) = config.scheme.arity();
        let layout = FrameLayout {
            m: params.m,
            frame_symbols: params.m + bridge_symbols,
            codeword_bits,
            bridge_bits,
        };
        Ok(StreamCodec { config, table, layout })
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn table(&self) -> &CardinalityTable {
        &self.table
    }

    pub fn layout(&self) -> FrameLayout {
        self.layout
    }

    /// Frames needed to carry `bit_count` message bits.
    pub fn frames_for_bits(&self, bit_count: usize) -> usize {
        match self.config.scheme {
            // K frames carry K*L + (K-1) bits.
            BridgeScheme::I => (bit_count + 1).div_ceil(self.layout.codeword_bits + 1),
            _ => bit_count.div_ceil(self.layout.bits_per_frame()),
        }
    }

    /// Encodes a message bit stream into a DNA symbol sequence. A final
    /// partial block is zero-padded; the caller keeps the original bit count
    /// if it needs to trim after decoding.
    pub fn encode(&self, bits: &[bool]) -> Result<Vec<Symbol>> {
        if bits.is_empty() {
            return Err(Error::InvalidParams("empty message".into()));
        }
        let frames = self.frames_for_bits(bits.len());
        let total_bits = self.layout.stream_bits(frames, self.config.scheme);
        let mut padded = bits.to_vec();
        padded.resize(total_bits, false);

        let mut cursor = 0usize;
        let mut take = |count: usize| {
            let slice = &padded[cursor..cursor + count];
            cursor += count;
            slice.to_vec()
        };

        let mut out: Vec<Symbol> = Vec::with_capacity(self.layout.stream_symbols(frames, self.config.scheme));
        let mut state = DisparityState::new();
        let mut pending: Option<PendingBridge> = None;

        for k in 0..frames {
            let index = bits_to_index(&take(self.layout.codeword_bits));
            let mut c = unrank(&self.table, &index, &self.config.params)?;
            if self.config.balancing {
                (c, _) = select_balanced(c, &state)?;
            }
            if let Some(p) = pending.take() {
                self.resolve_bridge(p, Some(c.first()), &mut out, &mut state);
            }
            state.commit(c.disparity().unwrap_or(0), c.len());
            state.frames_seen += 1;
            out.extend_from_slice(c.symbols());

            let last_frame = k + 1 == frames;
            if self.config.scheme == BridgeScheme::I && last_frame {
                break; // no trailing bridge
            }
            let bridge_bits = take(self.layout.bridge_bits);
            let sums = segment_checksums(self.config.scheme, c.symbols())?;
            let p = PendingBridge {
                left_end: c.last(),
                committed_disparity: known_bridge_disparity(self.config.scheme, c.last(), &sums, &bridge_bits),
                sums,
                bits: bridge_bits,
            };
            state.commit(p.committed_disparity, 0);
            pending = Some(p);
        }
        if let Some(p) = pending.take() {
            self.resolve_bridge(p, None, &mut out, &mut state);
        }
        debug_assert_eq!(state.running, disparity_of(&out));
        Ok(out)
    }

    fn resolve_bridge(
        &self,
        p: PendingBridge,
        right_start: Option<Symbol>,
        out: &mut Vec<Symbol>,
        state: &mut DisparityState,
    ) {
        let symbols = encode_parts(self.config.scheme, p.left_end, right_start, &p.sums, &p.bits);
        state.commit(disparity_of(&symbols) - p.committed_disparity, symbols.len());
        out.extend_from_slice(&symbols);
    }

    /// Decodes a DNA symbol sequence back to message bits plus a report.
    ///
    /// Frames whose codeword violates the run constraint (or whose index
    /// falls outside the message space) contribute zero bits and a flag;
    /// detection is the contract, not correction.
    pub fn decode(&self, dna: &[Symbol]) -> Result<(Vec<bool>, DecodeReport)> {
        let m = self.config.params.m;
        let per_frame = self.layout.frame_symbols;
        let frames = match self.config.scheme {
            // K frames occupy K*(m+1) - 1 symbols.
            BridgeScheme::I => {
                if dna.is_empty() || !(dna.len() + 1).is_multiple_of(per_frame) {
                    return Err(Error::InvalidParams(format!(
                        "stream length {} is not K*{per_frame} - 1",
                        dna.len()
                    )));
                }
                (dna.len() + 1) / per_frame
            }
            _ => {
                if dna.is_empty() || !dna.len().is_multiple_of(per_frame) {
                    return Err(Error::InvalidParams(format!(
                        "stream length {} is not a multiple of the frame length {per_frame}",
                        dna.len()
                    )));
                }
                dna.len() / per_frame
            }
        };

        let violating = run_violation_frames(dna, self.config.params.ell, per_frame, frames);
        let mut bits = Vec::with_capacity(self.layout.stream_bits(frames, self.config.scheme));
        let mut report = DecodeReport { total_frames: frames, ..Default::default() };

        for (k, &run_violation) in violating.iter().enumerate() {
            let start = k * per_frame;
            let cw_syms = &dna[start..start + m];
            let mut frame_report = FrameReport {
                frame: k,
                flags: Vec::new(),
                index_out_of_range: false,
                run_violation,
            };

            match Codeword::new(self.config.params, cw_syms.to_vec()) {
                Ok(c) => {
                    let index = rank(&self.table, &c)?;
                    let (message, in_range) = self.fold_index(index);
                    if !in_range {
                        frame_report.index_out_of_range = true;
                        bits.extend(std::iter::repeat_n(false, self.layout.codeword_bits));
                    } else {
                        bits.extend(index_to_bits(&message, self.layout.codeword_bits));
                    }
                }
                Err(_) => {
                    // Detection, not correction: the frame's message bits are
                    // zero-filled rather than guessed.
                    frame_report.run_violation = true;
                    bits.extend(std::iter::repeat_n(false, self.layout.codeword_bits));
                }
            }

            let last_frame = k + 1 == frames;
            let has_bridge = self.config.scheme != BridgeScheme::I || !last_frame;
            if has_bridge {
                let bridge_syms = &dna[start + m..start + per_frame];
                let right_start = if last_frame { None } else { Some(dna[start + per_frame]) };
                let left_end = cw_syms[m - 1];
                let (bridge_bits, flags) =
                    bridge_decode(self.config.scheme, bridge_syms, cw_syms, left_end, right_start)?;
                frame_report.flags = flags;
                bits.extend(bridge_bits);
            }

            if !frame_report.is_clean() {
                report.flagged.push(frame_report);
            }
        }
        Ok((bits, report))
    }

    /// Maps a received codeword index to its message index. With balancing,
    /// complements occupy the mirrored upper half of the codebook.
    fn fold_index(&self, index: BigUint) -> (BigUint, bool) {
        let space = BigUint::one() << self.layout.codeword_bits;
        if !self.config.balancing {
            let ok = index < space;
            return (index, ok);
        }
        let folded = if index < space {
            index
        } else {
            self.table.cardinality(self.config.params.m).unwrap() - BigUint::one() - index
        };
        let ok = folded < space;
        (folded, ok)
    }
}

/// Marks every frame intersected by a run longer than `ell` anywhere in the
/// stream (runs can cross codeword/bridge boundaries).
fn run_violation_frames(dna: &[Symbol], ell: usize, per_frame: usize, frames: usize) -> Vec<bool> {
    let mut flagged = vec![false; frames];
    let mut run_start = 0usize;
    for pos in 1..=dna.len() {
        let run_ends = pos == dna.len() || dna[pos] != dna[pos - 1];
        if run_ends {
            if pos - run_start > ell {
                let first = (run_start / per_frame).min(frames - 1);
                let last = ((pos - 1) / per_frame).min(frames - 1);
                for f in &mut flagged[first..=last] {
                    *f = true;
                }
            }
            run_start = pos;
        }
    }
    flagged
}

/// Interprets bits (most significant first) as an index.
pub fn bits_to_index(bits: &[bool]) -> BigUint {
    let mut value = BigUint::zero();
    for &b in bits {
        value <<= 1u8;
        if b {
            value += 1u8;
        }
    }
    value
}

/// Fixed-width big-endian bit rendering of an index.
pub fn index_to_bits(value: &BigUint, width: usize) -> Vec<bool> {
    (0..width).rev().map(|k| value.bit(k as u64)).collect()
}
