//! Bridging symbols between consecutive codewords.
//!
//! Fixed-length constrained codewords need separator symbols so that no
//! forbidden run appears at a boundary. The four schemes here also carry
//! message bits and/or mod-4 checksums:
//!
//! - **I**: one symbol, 1 message bit, no detection.
//! - **II-A**: `L4 L3 L5`, 2 message bits folded into the checksum `L3`.
//! - **II-B**: `L4 L3 L5`, 1 message bit; `L5` is drawn from the AT/GC class
//!   opposite to `L3`, cancelling its disparity.
//! - **III**: `L4 L31 L32 L33 L5` for codewords split into thirds, one raw
//!   checksum per third, no message bits; `L4`/`L5` are class-opposed to the
//!   checksums next to them.
//!
//! Decoding re-derives every relation and reports each violated one as a
//! structured [`DetectionFlag`]; carried bits are still returned best-effort.

use std::fmt;

use crate::cardinality::CodeParams;
use crate::codec::{Codeword, Symbol};
use crate::error::{Error, Result};

/// The four bridging schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BridgeScheme {
    I,
    IIA,
    IIB,
    III,
}

impl BridgeScheme {
    pub const ALL: [BridgeScheme; 4] = [BridgeScheme::I, BridgeScheme::IIA, BridgeScheme::IIB, BridgeScheme::III];

    /// `(bridge symbols, carried message bits)` per codeword boundary.
    pub fn arity(self) -> (usize, usize) {
        match self {
            BridgeScheme::I => (1, 1),
            BridgeScheme::IIA => (3, 2),
            BridgeScheme::IIB => (3, 1),
            BridgeScheme::III => (5, 0),
        }
    }

    /// Checks the code family supports this scheme. Bridging works over the
    /// DNA alphabet, so q = 4 throughout.
    pub fn validate(self, params: &CodeParams) -> Result<()> {
        match self {
            BridgeScheme::I => {
                if params.q != 4 {
                    Err(Error::InvalidParams(format!(
                        "bridging needs q = 4, got q = {}",
                        params.q
                    )))
                } else {
                    Ok(())
                }
            }
            BridgeScheme::IIA | BridgeScheme::IIB => {
                if params.q != 4 || params.ell < 3 {
                    Err(Error::InvalidParams(format!(
                        "scheme {self} needs q = 4 and ell >= 3, got q = {}, ell = {}",
                        params.q, params.ell
                    )))
                } else {
                    Ok(())
                }
            }
            BridgeScheme::III => {
                if params.q != 4 || params.ell != 3 {
                    Err(Error::InvalidParams(format!(
                        "scheme III needs q = 4 and ell = 3, got q = {}, ell = {}",
                        params.q, params.ell
                    )))
                } else if !params.m.is_multiple_of(3) {
                    Err(Error::InvalidParams(format!(
                        "scheme III needs 3 | m, got m = {}",
                        params.m
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "i" => Ok(BridgeScheme::I),
            "iia" | "ii-a" => Ok(BridgeScheme::IIA),
            "iib" | "ii-b" => Ok(BridgeScheme::IIB),
            "iii" => Ok(BridgeScheme::III),
            other => Err(Error::Parse(format!("unknown bridging scheme '{other}'"))),
        }
    }
}

impl fmt::Display for BridgeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BridgeScheme::I => write!(f, "I"),
            BridgeScheme::IIA => write!(f, "II-A"),
            BridgeScheme::IIB => write!(f, "II-B"),
            BridgeScheme::III => write!(f, "III"),
        }
    }
}

/// One violated decode relation. Positions index into the bridge symbol
/// sequence; segments index checksum spans (always 0 except for scheme III).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionFlag {
    /// A recomputed checksum disagrees with the received checksum symbol.
    ChecksumMismatch { segment: usize },
    /// A bit-carrying bridge symbol is not an extreme of its candidate set.
    InvalidBridgeSymbol { position: usize },
    /// A class-determined bridge symbol is not the value the rule dictates.
    ClassViolation { position: usize },
}

impl fmt::Display for DetectionFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetectionFlag::ChecksumMismatch { segment } => write!(f, "checksum-mismatch(segment={segment})"),
            DetectionFlag::InvalidBridgeSymbol { position } => write!(f, "invalid-bridge-symbol(position={position})"),
            DetectionFlag::ClassViolation { position } => write!(f, "class-violation(position={position})"),
        }
    }
}

/// Bridge symbols emitted after one codeword, plus the message bits they carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub scheme: BridgeScheme,
    pub symbols: Vec<Symbol>,
    pub carried_bits: Vec<bool>,
}

/// Mod-4 sum of the sequence under `A=0, T=1, G=2, C=3`.
pub fn checksum(seq: &[Symbol]) -> Result<Symbol> {
    if seq.is_empty() {
        return Err(Error::InvalidParams("checksum of an empty sequence".into()));
    }
    let sum: u32 = seq.iter().map(|s| s.value() as u32).sum();
    Ok(Symbol::new((sum % 4) as u8))
}

/// Candidate set `{A,T,G,C}` minus up to two excluded symbols, ascending.
fn candidates(excl1: Option<Symbol>, excl2: Option<Symbol>) -> Vec<Symbol> {
    (0..4)
        .map(Symbol::new)
        .filter(|s| Some(*s) != excl1 && Some(*s) != excl2)
        .collect()
}

fn extreme(set: &[Symbol], high: bool) -> Symbol {
    if high {
        *set.last().unwrap()
    } else {
        set[0]
    }
}

/// The two symbols of the AT/GC class *opposite* to `anchor`'s class.
fn opposite_class(anchor: Symbol) -> [Symbol; 2] {
    if anchor.is_gc() {
        [Symbol::A, Symbol::T]
    } else {
        [Symbol::G, Symbol::C]
    }
}

/// Highest symbol of the class opposite to `anchor`, skipping `excl`.
fn class_pick(anchor: Symbol, excl: Option<Symbol>) -> Symbol {
    let class = opposite_class(anchor);
    class.iter().rev().copied().find(|s| Some(*s) != excl).unwrap()
}

fn add_mod4(a: Symbol, delta: u8) -> Symbol {
    Symbol::new((a.value() + delta) % 4)
}

/// Per-scheme checksum inputs: the whole codeword, or its thirds. Works on
/// raw symbols so the decoder can checksum received segments that are not
/// valid codewords.
pub(crate) fn segment_checksums(scheme: BridgeScheme, symbols: &[Symbol]) -> Result<Vec<Symbol>> {
    match scheme {
        BridgeScheme::I => Ok(vec![]),
        BridgeScheme::IIA | BridgeScheme::IIB => Ok(vec![checksum(symbols)?]),
        BridgeScheme::III => {
            if !symbols.len().is_multiple_of(3) {
                return Err(Error::InvalidParams(format!(
                    "scheme III checksums need 3 | m, got length {}",
                    symbols.len()
                )));
            }
            let third = symbols.len() / 3;
            (0..3).map(|k| checksum(&symbols[k * third..(k + 1) * third])).collect()
        }
    }
}

/// Disparity of the bridge parts that do not depend on the right neighbour.
///
/// For schemes II-B and III the neighbour-dependent symbols are class-opposed
/// to checksum symbols and cancel them, so this already equals the full
/// bridge disparity; the stream layer uses that to balance against a running
/// disparity that is complete before the next codeword is chosen.
pub(crate) fn known_bridge_disparity(
    scheme: BridgeScheme,
    left_end: Symbol,
    sums: &[Symbol],
    bits: &[bool],
) -> i64 {
    match scheme {
        BridgeScheme::I => 0,
        BridgeScheme::IIA => {
            let l3 = add_mod4(sums[0], 2 * bits[0] as u8 + bits[1] as u8);
            let l4 = extreme(&candidates(Some(left_end), Some(l3)), bits[0]);
            l3.disparity() + l4.disparity()
        }
        BridgeScheme::IIB => {
            let l3 = add_mod4(sums[0], 2 * bits[0] as u8);
            let l4 = extreme(&candidates(Some(left_end), Some(l3)), bits[0]);
            l4.disparity()
        }
        BridgeScheme::III => sums[1].disparity(),
    }
}

/// Builds the bridge symbols from precomputed checksum segments. `right_start`
/// is the first symbol of the following codeword, absent at end of stream
/// (the exclusion is simply dropped there).
pub(crate) fn encode_parts(
    scheme: BridgeScheme,
    left_end: Symbol,
    right_start: Option<Symbol>,
    sums: &[Symbol],
    bits: &[bool],
) -> Vec<Symbol> {
    match scheme {
        BridgeScheme::I => {
            let set = candidates(Some(left_end), right_start);
            vec![extreme(&set, bits[0])]
        }
        BridgeScheme::IIA => {
            let l3 = add_mod4(sums[0], 2 * bits[0] as u8 + bits[1] as u8);
            let l4 = extreme(&candidates(Some(left_end), Some(l3)), bits[0]);
            let l5 = extreme(&candidates(right_start, Some(l3)), bits[1]);
            vec![l4, l3, l5]
        }
        BridgeScheme::IIB => {
            let l3 = add_mod4(sums[0], 2 * bits[0] as u8);
            let l4 = extreme(&candidates(Some(left_end), Some(l3)), bits[0]);
            let l5 = class_pick(l3, right_start);
            vec![l4, l3, l5]
        }
        BridgeScheme::III => {
            let l4 = class_pick(sums[0], Some(left_end));
            let l5 = class_pick(sums[2], right_start);
            vec![l4, sums[0], sums[1], sums[2], l5]
        }
    }
}

/// Encodes the bridge following `codeword`, carrying `bits`.
///
/// `left_end` is the codeword's final symbol and `right_start` the next
/// codeword's first symbol (absent at end of stream). The emitted sequence
/// order is exactly how the symbols appear on the strand.
pub fn bridge_encode(
    scheme: BridgeScheme,
    left_end: Symbol,
    right_start: Option<Symbol>,
    codeword: &Codeword,
    bits: &[bool],
) -> Result<Bridge> {
    scheme.validate(&codeword.params())?;
    let (_, want_bits) = scheme.arity();
    if bits.len() != want_bits {
        return Err(Error::InvalidParams(format!(
            "scheme {scheme} carries {want_bits} bits, got {}",
            bits.len()
        )));
    }
    let sums = segment_checksums(scheme, codeword.symbols())?;
    let symbols = encode_parts(scheme, left_end, right_start, &sums, bits);
    Ok(Bridge { scheme, symbols, carried_bits: bits.to_vec() })
}

/// Reads a bit off an extreme-coded symbol, or flags it.
fn read_extreme_bit(
    set: &[Symbol],
    symbol: Symbol,
    position: usize,
    flags: &mut Vec<DetectionFlag>,
) -> bool {
    if symbol == extreme(set, false) {
        false
    } else if symbol == extreme(set, true) {
        true
    } else {
        flags.push(DetectionFlag::InvalidBridgeSymbol { position });
        false
    }
}

/// Recovers the carried bits from received bridge symbols and verifies every
/// checkable relation against the received codeword symbols and boundary
/// symbols. The codeword is passed as raw symbols: checksums are well-defined
/// even when the received segment violates the run constraint.
///
/// Violations come back as flags, not errors; bits are best-effort.
pub fn bridge_decode(
    scheme: BridgeScheme,
    bridge_symbols: &[Symbol],
    codeword: &[Symbol],
    left_end: Symbol,
    right_start: Option<Symbol>,
) -> Result<(Vec<bool>, Vec<DetectionFlag>)> {
    let (want_syms, _) = scheme.arity();
    if bridge_symbols.len() != want_syms {
        return Err(Error::InvalidParams(format!(
            "scheme {scheme} bridges have {want_syms} symbols, got {}",
            bridge_symbols.len()
        )));
    }
    let mut flags = Vec::new();
    let sums = segment_checksums(scheme, codeword)?;
    let bits = match scheme {
        BridgeScheme::I => {
            let set = candidates(Some(left_end), right_start);
            vec![read_extreme_bit(&set, bridge_symbols[0], 0, &mut flags)]
        }
        BridgeScheme::IIA => {
            let (l4, l3, l5) = (bridge_symbols[0], bridge_symbols[1], bridge_symbols[2]);
            let b1 = read_extreme_bit(&candidates(Some(left_end), Some(l3)), l4, 0, &mut flags);
            let b2 = read_extreme_bit(&candidates(right_start, Some(l3)), l5, 2, &mut flags);
            if add_mod4(sums[0], 2 * b1 as u8 + b2 as u8) != l3 {
                flags.push(DetectionFlag::ChecksumMismatch { segment: 0 });
            }
            vec![b1, b2]
        }
        BridgeScheme::IIB => {
            let (l4, l3, l5) = (bridge_symbols[0], bridge_symbols[1], bridge_symbols[2]);
            let b = read_extreme_bit(&candidates(Some(left_end), Some(l3)), l4, 0, &mut flags);
            if add_mod4(sums[0], 2 * b as u8) != l3 {
                flags.push(DetectionFlag::ChecksumMismatch { segment: 0 });
            }
            if l5 != class_pick(l3, right_start) {
                flags.push(DetectionFlag::ClassViolation { position: 2 });
            }
            vec![b]
        }
        BridgeScheme::III => {
            for k in 0..3 {
                if bridge_symbols[1 + k] != sums[k] {
                    flags.push(DetectionFlag::ChecksumMismatch { segment: k });
                }
            }
            if bridge_symbols[0] != class_pick(bridge_symbols[1], Some(left_end)) {
                flags.push(DetectionFlag::ClassViolation { position: 0 });
            }
            if bridge_symbols[4] != class_pick(bridge_symbols[3], right_start) {
                flags.push(DetectionFlag::ClassViolation { position: 4 });
            }
            vec![]
        }
    };
    Ok((bits, flags))
}
