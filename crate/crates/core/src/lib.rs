//! Succinct sequences and the retrieval structures built on them.
//!
//! The centre of the crate is [`WaveletTree`], a balanced wavelet tree over
//! an integer sequence. Beyond `access`, `rank` and `select` it answers
//! range counting and reporting, range quantiles, range next-value queries
//! and adaptive multi-range intersection (see [`rangeops`]). Three
//! retrieval layers sit on top:
//!
//! * [`docindex`]: document listing, frequencies and intersections over
//!   arbitrary byte-string collections through a suffix array and a
//!   wavelet tree of the document array.
//! * [`hierdoc`]: the same queries restricted to XML-like retrievable units.
//! * [`invindex`]: a single wavelet tree over concatenated frequency-sorted
//!   postings that serves both ranked and docid-ordered access.

pub mod bitvec;
pub mod docindex;
pub mod error;
pub mod hierdoc;
pub mod invindex;
pub mod rangeops;
pub mod stats;
pub mod wavelet;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;

mod ser;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/bitvectors.md")]
    mod bitvectors {}
    #[doc = include_str!("../../../book/src/wavelet-tree.md")]
    mod wavelet_tree {}
    #[doc = include_str!("../../../book/src/range-queries.md")]
    mod range_queries {}
    #[doc = include_str!("../../../book/src/documents.md")]
    mod documents {}
    #[doc = include_str!("../../../book/src/hierarchy.md")]
    mod hierarchy {}
    #[doc = include_str!("../../../book/src/inverted.md")]
    mod inverted {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}

pub use bitvec::{BitVec, BitVecBuilder, SparseBitVec};
pub use error::{Error, Result};
pub use wavelet::{NodeCursor, Report, WaveletTree};
