//! Constrained codes for DNA data storage: fixed-length codewords over
//! `{A, T, G, C}` (and general `q`-ary alphabets) with homopolymer runs
//! capped at `ell`, indexed lexicographically so that encoding and decoding
//! are big-integer arithmetic instead of lookup tables.
//!
//! The crate covers the full write/read pipeline and its analysis:
//!
//! - [`cardinality`]: exact codebook-size tables powering everything else.
//! - [`codec`]: rank/unrank between indices and codewords.
//! - [`bridging`]: inter-codeword bridging symbols with checksum-based
//!   substitution-error detection (schemes I, II-A, II-B, III).
//! - [`balancing`]: codeword-vs-complement selection keeping GC-content
//!   near 50%.
//! - [`stream`]: binary message stream to DNA sequence and back, with a
//!   per-frame detection report.
//! - [`detection`]: the symmetric substitution channel, analytic
//!   no-detection bounds, and Monte-Carlo experiments.
//! - [`analysis`]: achievable rates, transition-diagram capacity, and the
//!   adder/storage complexity tables.
//! - [`rll`]: binary run-length-limited codes via difference vectors, and
//!   the 16-ary tandem-repeat-avoiding mapping.

pub mod analysis;
pub mod balancing;
pub mod bridging;
pub mod cardinality;
pub mod codec;
pub mod detection;
pub mod error;
pub mod rll;
pub mod stream;

pub use cardinality::{CardinalityTable, CodeParams};
pub use codec::{Codeword, Symbol};
pub use error::{Error, Result};
