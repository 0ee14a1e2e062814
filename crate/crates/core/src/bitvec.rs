//! Plain and sparse bit vectors with rank and select.
//!
//! Positions in the public API are 1-based: `rank1(i)` counts the set bits
//! among positions `1..=i` and `select1(j)` returns the position of the
//! `j`th set bit. Storage is 0-based internally.
//!
//! [`BitVec`] samples absolute ranks every 512 bits and relative ranks
//! every 64-bit word, so `rank` is two lookups plus one popcount. `select`
//! binary searches the superblock samples (narrowed by sparse select hints)
//! and then scans at most eight words.
//!
//! [`SparseBitVec`] stores the set positions with the Elias–Fano split:
//! high halves in unary inside a [`BitVec`], low halves packed at a fixed
//! width.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::ser;

const WORD: usize = 64;
const WORDS_PER_SUPER: usize = 8;
const SUPER: usize = WORD * WORDS_PER_SUPER;
const SELECT_SAMPLE: usize = 1024;

/// Immutable bit vector supporting rank, select and access.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    ones: usize,
    words: Vec<u64>,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    select1_hints: Vec<u32>,
    select0_hints: Vec<u32>,
}

/// Incremental construction of a [`BitVec`].
#[derive(Clone, Debug, Default)]
pub struct BitVecBuilder {
    len: usize,
    words: Vec<u64>,
}

impl BitVecBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            len: 0,
            words: Vec::with_capacity(bits.div_ceil(WORD)),
        }
    }

    /// A builder holding `len` zero bits.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / WORD] |= 1 << (self.len % WORD);
        }
        self.len += 1;
    }

    /// Sets the bit at 1-based position `i`.
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i >= 1 && i <= self.len, "position {i} outside 1..={}", self.len);
        let k = i - 1;
        if bit {
            self.words[k / WORD] |= 1 << (k % WORD);
        } else {
            self.words[k / WORD] &= !(1 << (k % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn build(self) -> BitVec {
        BitVec::from_words(self.words, self.len)
    }
}

impl FromIterator<bool> for BitVec {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut b = BitVecBuilder::new();
        for bit in iter {
            b.push(bit);
        }
        b.build()
    }
}

impl BitVec {
    /// Parses a string of `0`/`1` characters; anything else is ignored.
    pub fn from_bit_str(s: &str) -> Self {
        s.bytes()
            .filter(|b| *b == b'0' || *b == b'1')
            .map(|b| b == b'1')
            .collect()
    }

    /// A vector of `len` bits with ones at the given 1-based positions.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut b = BitVecBuilder::zeros(len);
        for p in ones {
            b.set(p, true);
        }
        b.build()
    }

    fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.truncate(len.div_ceil(WORD));
        if !len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % WORD)) - 1;
            }
        }
        let mut bv = BitVec {
            len,
            ones: 0,
            words,
            supers: Vec::new(),
            blocks: Vec::new(),
            select1_hints: Vec::new(),
            select0_hints: Vec::new(),
        };
        bv.build_index();
        bv
    }

    fn build_index(&mut self) {
        let nwords = self.words.len();
        // Superblock 0 and the first word of each superblock always count
        // zero, so those samples are implicit.
        self.supers = Vec::with_capacity(nwords.div_ceil(WORDS_PER_SUPER).saturating_sub(1));
        self.blocks = Vec::with_capacity(nwords - nwords.div_ceil(WORDS_PER_SUPER));
        self.select1_hints.clear();
        self.select0_hints.clear();
        let mut total = 0usize;
        let mut in_super = 0usize;
        for (w, &word) in self.words.iter().enumerate() {
            if w.is_multiple_of(WORDS_PER_SUPER) {
                if w > 0 {
                    self.supers.push(total as u64);
                }
                in_super = 0;
            } else {
                self.blocks.push(in_super as u16);
            }
            let sb = (w / WORDS_PER_SUPER) as u32;
            let c = word.count_ones() as usize;
            // Record the superblock of every SELECT_SAMPLE-th one and zero.
            let next1 = (self.select1_hints.len() + 1) * SELECT_SAMPLE;
            if total < next1 && total + c >= next1 {
                self.select1_hints.push(sb);
            }
            let bits_here = if w + 1 == nwords && !self.len.is_multiple_of(WORD) {
                self.len % WORD
            } else {
                WORD
            };
            let zeros_before = w * WORD - total;
            let next0 = (self.select0_hints.len() + 1) * SELECT_SAMPLE;
            if zeros_before < next0 && zeros_before + bits_here - c >= next0 {
                self.select0_hints.push(sb);
            }
            total += c;
            in_super += c;
        }
        self.ones = total;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    /// Bit at 1-based position `i`. Panics outside `1..=len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "position {i} outside 1..={}", self.len);
        self.get0(i - 1)
    }

    pub fn checked_get(&self, i: usize) -> Option<bool> {
        (i >= 1 && i <= self.len).then(|| self.get0(i - 1))
    }

    #[inline]
    fn get0(&self, k: usize) -> bool {
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    /// Number of ones among positions `1..=i`. Panics if `i > len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank position {i} exceeds length {}", self.len);
        if i == self.len {
            return self.ones;
        }
        let w = i / WORD;
        let base = self.super_count(w / WORDS_PER_SUPER) + self.block_count(w);
        let rem = i % WORD;
        if rem == 0 {
            base
        } else {
            base + (self.words[w] & ((1u64 << rem) - 1)).count_ones() as usize
        }
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn checked_rank1(&self, i: usize) -> Option<usize> {
        (i <= self.len).then(|| self.rank1(i))
    }

    /// Position of the `j`th one, or `None` when `j` is 0 or exceeds the
    /// number of ones.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.ones {
            return None;
        }
        let (lo, hi) = self.hint_window(&self.select1_hints, j);
        let ones_before = |sb: usize| self.super_count(sb);
        let sb = last_below(lo, hi, j, ones_before);
        let first = sb * WORDS_PER_SUPER;
        let last = (first + WORDS_PER_SUPER).min(self.words.len());
        let mut w = first;
        while w + 1 < last && ones_before(sb) + self.block_count(w + 1) < j {
            w += 1;
        }
        let r = j - ones_before(sb) - self.block_count(w);
        Some(w * WORD + select_in_word(self.words[w], r) + 1)
    }

    /// Position of the `j`th zero, or `None` when out of range.
    pub fn select0(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_zeros() {
            return None;
        }
        let (lo, hi) = self.hint_window(&self.select0_hints, j);
        let zeros_before = |sb: usize| sb * SUPER - self.super_count(sb);
        let sb = last_below(lo, hi, j, zeros_before);
        let first = sb * WORDS_PER_SUPER;
        let last = (first + WORDS_PER_SUPER).min(self.words.len());
        let block_zeros = |w: usize| (w - first) * WORD - self.block_count(w);
        let mut w = first;
        while w + 1 < last && zeros_before(sb) + block_zeros(w + 1) < j {
            w += 1;
        }
        let r = j - zeros_before(sb) - block_zeros(w);
        Some(w * WORD + select_in_word(!self.words[w], r) + 1)
    }

    #[inline]
    fn super_count(&self, sb: usize) -> usize {
        if sb == 0 {
            0
        } else {
            self.supers[sb - 1] as usize
        }
    }

    #[inline]
    fn block_count(&self, w: usize) -> usize {
        if w.is_multiple_of(WORDS_PER_SUPER) {
            0
        } else {
            self.blocks[w - w / WORDS_PER_SUPER - 1] as usize
        }
    }

    fn hint_window(&self, hints: &[u32], j: usize) -> (usize, usize) {
        let h = (j - 1) / SELECT_SAMPLE;
        let lo = if h >= 1 { hints[h - 1] as usize } else { 0 };
        let hi = if h < hints.len() {
            hints[h] as usize
        } else {
            self.supers.len()
        };
        (lo, hi)
    }

    /// Bits spent on rank/select samples, excluding the payload.
    pub fn aux_bits(&self) -> usize {
        self.supers.len() * 64
            + self.blocks.len() * 16
            + (self.select1_hints.len() + self.select0_hints.len()) * 32
    }

    /// Payload bits (the bit sequence itself).
    pub fn payload_bits(&self) -> usize {
        self.len
    }

    /// Iterates over all bits in order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |k| self.get0(k))
    }

    /// Iterates over the 1-based positions of the set bits.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * WORD + t + 1)
            })
        })
    }

    /// Flag bit 0 of the header records whether the samples follow the
    /// payload; when clear the loader rebuilds them.
    pub fn write_to(&self, w: &mut impl Write, store_aux: bool) -> Result<()> {
        ser::put_u64(w, u64::from(store_aux))?;
        ser::put_usize(w, self.len)?;
        for &x in &self.words {
            ser::put_u64(w, x)?;
        }
        if store_aux {
            ser::put_words(w, &self.supers)?;
            let packed: Vec<u64> = self
                .blocks
                .chunks(4)
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .fold(0u64, |acc, (k, &b)| acc | (u64::from(b) << (16 * k)))
                })
                .collect();
            ser::put_words(w, &packed)?;
            let hints = |h: &[u32]| h.iter().map(|&x| u64::from(x)).collect::<Vec<_>>();
            ser::put_words(w, &hints(&self.select1_hints))?;
            ser::put_words(w, &hints(&self.select0_hints))?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let flags = ser::get_u64(r)?;
        if flags > 1 {
            return Err(Error::Format(format!("unknown bit vector flags {flags:#x}")));
        }
        let len = ser::get_usize(r)?;
        if len > ser::MAX_LEN {
            return Err(Error::Format(format!("bit vector length {len} too large")));
        }
        let nwords = len.div_ceil(WORD);
        let words = (0..nwords)
            .map(|_| ser::get_u64(r))
            .collect::<Result<Vec<_>>>()?;
        let bv = BitVec::from_words(words, len);
        if flags & 1 == 1 {
            // Stored samples must agree with the payload; they are cheap to
            // recompute, so mismatches are reported rather than trusted.
            let supers = ser::get_words(r, ser::MAX_LEN)?;
            let packed = ser::get_words(r, ser::MAX_LEN)?;
            let h1 = ser::get_words(r, ser::MAX_LEN)?;
            let h0 = ser::get_words(r, ser::MAX_LEN)?;
            let blocks: Vec<u16> = packed
                .iter()
                .flat_map(|&x| (0..4).map(move |k| (x >> (16 * k)) as u16))
                .take(bv.blocks.len())
                .collect();
            let same = supers == bv.supers
                && blocks == bv.blocks
                && h1.iter().map(|&x| x as u32).eq(bv.select1_hints.iter().copied())
                && h0.iter().map(|&x| x as u32).eq(bv.select0_hints.iter().copied());
            if !same {
                return Err(Error::Format("bit vector samples disagree with payload".into()));
            }
        }
        Ok(bv)
    }
}

/// Largest superblock index in `[lo, hi]` whose sampled count is `< j`.
#[inline]
fn last_below(mut lo: usize, mut hi: usize, j: usize, count: impl Fn(usize) -> usize) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if count(mid) < j {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// 0-based offset of the `r`th (1-based) set bit of `word`.
#[inline]
fn select_in_word(mut word: u64, r: usize) -> usize {
    debug_assert!(r >= 1 && r <= word.count_ones() as usize);
    for _ in 1..r {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}

/// Fixed-width packed unsigned integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntVec {
    width: usize,
    len: usize,
    words: Vec<u64>,
}

impl IntVec {
    pub(crate) fn new(width: usize, len: usize) -> Self {
        assert!(width <= 64);
        Self {
            width,
            len,
            words: vec![0; (width * len).div_ceil(WORD)],
        }
    }

    pub(crate) fn set(&mut self, k: usize, v: u64) {
        if self.width == 0 {
            return;
        }
        let mask = if self.width == 64 { u64::MAX } else { (1 << self.width) - 1 };
        let v = v & mask;
        let bit = k * self.width;
        let (w, off) = (bit / WORD, bit % WORD);
        self.words[w] = (self.words[w] & !(mask << off)) | (v << off);
        if off + self.width > WORD {
            let spill = off + self.width - WORD;
            let hi_mask = (1u64 << spill) - 1;
            self.words[w + 1] = (self.words[w + 1] & !hi_mask) | (v >> (self.width - spill));
        }
    }

    pub(crate) fn get(&self, k: usize) -> u64 {
        if self.width == 0 {
            return 0;
        }
        let mask = if self.width == 64 { u64::MAX } else { (1 << self.width) - 1 };
        let bit = k * self.width;
        let (w, off) = (bit / WORD, bit % WORD);
        let mut v = self.words[w] >> off;
        if off + self.width > WORD {
            v |= self.words[w + 1] << (WORD - off);
        }
        v & mask
    }

    pub(crate) fn bits(&self) -> usize {
        self.words.len() * WORD
    }

    fn write_to(&self, w: &mut impl Write) -> Result<()> {
        ser::put_usize(w, self.width)?;
        ser::put_usize(w, self.len)?;
        ser::put_words(w, &self.words)
    }

    fn read_from(r: &mut impl Read) -> Result<Self> {
        let width = ser::get_usize(r)?;
        let len = ser::get_usize(r)?;
        if width > 64 || len > ser::MAX_LEN {
            return Err(Error::Format("bad packed integer header".into()));
        }
        let words = ser::get_words(r, ser::MAX_LEN)?;
        if words.len() != (width * len).div_ceil(WORD) {
            return Err(Error::Format("packed integer payload size mismatch".into()));
        }
        Ok(Self { width, len, words })
    }
}

/// Sparse bit vector over positions `1..=universe` in Elias–Fano form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBitVec {
    universe: usize,
    ones: usize,
    low_width: usize,
    highs: BitVec,
    lows: IntVec,
}

impl SparseBitVec {
    /// Builds from strictly increasing 1-based positions within `1..=universe`.
    pub fn from_positions(universe: usize, positions: &[usize]) -> Result<Self> {
        let ones = positions.len();
        for (k, &p) in positions.iter().enumerate() {
            if p == 0 || p > universe {
                return Err(Error::OutOfRange {
                    what: "sparse position",
                    value: p,
                    lo: 1,
                    hi: universe,
                });
            }
            if k > 0 && positions[k - 1] >= p {
                return Err(Error::Invalid("sparse positions must be strictly increasing".into()));
            }
        }
        let low_width = if ones == 0 || universe <= ones {
            0
        } else {
            (universe / ones).ilog2() as usize
        };
        let mut highs = BitVecBuilder::zeros(ones + (universe >> low_width) + 1);
        let mut lows = IntVec::new(low_width, ones);
        for (k, &p) in positions.iter().enumerate() {
            let x = p - 1;
            highs.set((x >> low_width) + k + 1, true);
            lows.set(k, x as u64);
        }
        Ok(Self {
            universe,
            ones,
            low_width,
            highs: highs.build(),
            lows,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Position of the `j`th set bit, or `None` when out of range.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.ones {
            return None;
        }
        let high = self.highs.select1(j)? - j;
        Some(((high << self.low_width) | self.lows.get(j - 1) as usize) + 1)
    }

    /// Number of set bits among positions `1..=i`. Panics if `i > universe`.
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.universe, "rank position {i} exceeds universe {}", self.universe);
        if i == 0 || self.ones == 0 {
            return 0;
        }
        let x = i - 1;
        let h = x >> self.low_width;
        let low = (x & ((1usize << self.low_width) - 1)) as u64;
        // Elements with a smaller high part precede the h-th zero.
        let mut k = if h == 0 {
            0
        } else {
            self.highs.select0(h).expect("high bucket exists") - h
        };
        while k < self.ones && self.highs.get(h + k + 1) && self.lows.get(k) <= low {
            k += 1;
        }
        k
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.universe, "position {i} outside 1..={}", self.universe);
        self.rank1(i) > self.rank1(i - 1)
    }

    /// Iterates over the set positions in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.highs.ones().enumerate().map(move |(k, pos)| {
            let high = pos - 1 - k;
            ((high << self.low_width) | self.lows.get(k) as usize) + 1
        })
    }

    /// Total bits including the unary high part and its rank/select samples.
    pub fn size_bits(&self) -> usize {
        self.highs.payload_bits() + self.highs.aux_bits() + self.lows.bits()
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        ser::put_usize(w, self.universe)?;
        ser::put_usize(w, self.ones)?;
        ser::put_usize(w, self.low_width)?;
        self.highs.write_to(w, false)?;
        self.lows.write_to(w)
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        let universe = ser::get_usize(r)?;
        let ones = ser::get_usize(r)?;
        let low_width = ser::get_usize(r)?;
        let highs = BitVec::read_from(r)?;
        let lows = IntVec::read_from(r)?;
        if low_width > 63
            || highs.count_ones() != ones
            || lows.len != ones
            || lows.width != low_width
            || highs.len() != ones + (universe >> low_width) + 1
        {
            return Err(Error::Format("inconsistent sparse bit vector".into()));
        }
        Ok(Self {
            universe,
            ones,
            low_width,
            highs,
            lows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_rank1(bits: &[bool], i: usize) -> usize {
        bits[..i].iter().filter(|b| **b).count()
    }

    fn naive_select(bits: &[bool], j: usize, value: bool) -> Option<usize> {
        bits.iter()
            .enumerate()
            .filter(|(_, b)| **b == value)
            .nth(j.checked_sub(1)?)
            .map(|(k, _)| k + 1)
    }

    #[test]
    fn worked_bitmap() {
        let b = BitVec::from_bit_str("00100010010");
        assert_eq!(b.rank1(11), 3);
        assert_eq!(b.rank1(0), 0);
        assert_eq!(b.rank1(4), 1);
        // Ones sit at 3, 7 and 10.
        assert_eq!(b.select1(2), Some(7));
        assert_eq!(b.select1(4), None);
        assert!(b.get(3));
        assert!(!b.get(11));
        assert_eq!(BitVec::from_bit_str("1").select1(1), Some(1));
        assert!(!BitVec::from_bit_str("0").get(1));
    }

    #[test]
    fn out_of_range_is_rejected() {
        let b = BitVec::from_bit_str("0110");
        assert_eq!(b.checked_rank1(5), None);
        assert_eq!(b.checked_get(0), None);
        assert_eq!(b.checked_get(5), None);
        assert_eq!(b.select1(0), None);
        assert_eq!(b.select0(3), None);
        assert!(std::panic::catch_unwind(|| b.rank1(5)).is_err());
    }

    #[test]
    fn random_vectors_match_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(len, density) in &[(1usize, 0.5), (63, 0.5), (64, 0.1), (1000, 0.01), (5000, 0.5), (1 << 20, 0.3), (70_000, 0.999)] {
            let bits: Vec<bool> = (0..len).map(|_| rng.random_bool(density)).collect();
            let bv: BitVec = bits.iter().copied().collect();
            let ones = bits.iter().filter(|b| **b).count();
            assert_eq!(bv.count_ones(), ones);
            assert_eq!(bv.rank1(len), ones);
            // Prefix ranks are cheap to tabulate for the oracle.
            let mut prefix = vec![0usize; len + 1];
            for k in 0..len {
                prefix[k + 1] = prefix[k] + bits[k] as usize;
            }
            let ones_pos: Vec<usize> = (0..len).filter(|&k| bits[k]).map(|k| k + 1).collect();
            let zeros_pos: Vec<usize> = (0..len).filter(|&k| !bits[k]).map(|k| k + 1).collect();
            for _ in 0..10_000 {
                let i = rng.random_range(0..=len);
                assert_eq!(bv.rank1(i), prefix[i]);
                assert_eq!(bv.rank0(i) + bv.rank1(i), i);
                if i >= 1 {
                    assert_eq!(bv.get(i), bits[i - 1]);
                    if bv.rank1(i) >= 1 {
                        assert!(bv.select1(bv.rank1(i)).unwrap() <= i);
                    }
                }
                let j = rng.random_range(0..=ones + 1);
                assert_eq!(bv.select1(j), j.checked_sub(1).and_then(|k| ones_pos.get(k).copied()));
                let j = rng.random_range(0..=len - ones + 1);
                assert_eq!(bv.select0(j), j.checked_sub(1).and_then(|k| zeros_pos.get(k).copied()));
            }
            assert!(bv.aux_bits() * 2 <= len, "aux {} for len {len}", bv.aux_bits());
        }
    }

    #[test]
    fn aux_space_stays_under_half() {
        for len in (0..1200).chain([3000, 1 << 16]) {
            for pattern in [0u8, 1, 2] {
                let bv: BitVec = (0..len)
                    .map(|k| match pattern {
                        0 => false,
                        1 => true,
                        _ => k % 3 == 0,
                    })
                    .collect();
                assert!(bv.aux_bits() * 2 <= bv.payload_bits());
            }
        }
    }

    #[test]
    fn serialization_with_and_without_samples() {
        let bv: BitVec = (0..5000).map(|k| k % 7 == 3).collect();
        for store in [false, true] {
            let mut buf = Vec::new();
            bv.write_to(&mut buf, store).unwrap();
            assert_eq!(&buf[8..16], &5000u64.to_le_bytes());
            let back = BitVec::read_from(&mut buf.as_slice()).unwrap();
            assert_eq!(back, bv);
        }
        let mut buf = Vec::new();
        bv.write_to(&mut buf, false).unwrap();
        buf[0] = 9;
        assert!(BitVec::read_from(&mut buf.as_slice()).is_err());
    }

    #[test]
    fn sparse_select_and_rank() {
        let positions = [3usize, 4, 10, 200, 201, 999, 1000];
        let s = SparseBitVec::from_positions(1000, &positions).unwrap();
        for (k, &p) in positions.iter().enumerate() {
            assert_eq!(s.select1(k + 1), Some(p));
        }
        assert_eq!(s.select1(0), None);
        assert_eq!(s.select1(8), None);
        for i in 0..=1000 {
            assert_eq!(s.rank1(i), positions.iter().filter(|&&p| p <= i).count());
        }
        assert!(s.get(200) && !s.get(202));
        assert_eq!(s.ones().collect::<Vec<_>>(), positions);
        assert!(SparseBitVec::from_positions(10, &[3, 3]).is_err());
        assert!(SparseBitVec::from_positions(10, &[11]).is_err());
        let empty = SparseBitVec::from_positions(10, &[]).unwrap();
        assert_eq!(empty.rank1(10), 0);
        assert_eq!(empty.select1(1), None);
    }

    #[test]
    fn sparse_space_is_compressed() {
        let positions: Vec<usize> = (1..=1000).map(|k| k * 1000).collect();
        let s = SparseBitVec::from_positions(1_000_000, &positions).unwrap();
        // u·log(U/u) + O(u) bits, far below a plain bitmap of the universe.
        assert!(s.size_bits() < 1000 * (10 + 4));
        let mut buf = Vec::new();
        s.write_to(&mut buf).unwrap();
        assert_eq!(SparseBitVec::read_from(&mut buf.as_slice()).unwrap(), s);
    }

    proptest! {
        #[test]
        fn select_inverts_rank(bits in proptest::collection::vec(any::<bool>(), 1..3000)) {
            let bv: BitVec = bits.iter().copied().collect();
            for j in 1..=bv.count_ones() {
                let p = bv.select1(j).unwrap();
                prop_assert!(bv.get(p));
                prop_assert_eq!(bv.rank1(p), j);
            }
            for j in 1..=bv.count_zeros() {
                let p = bv.select0(j).unwrap();
                prop_assert!(!bv.get(p));
                prop_assert_eq!(bv.rank0(p), j);
            }
            prop_assert_eq!(bv.select1(bv.count_ones() + 1), None);
            for i in 0..=bits.len() {
                prop_assert_eq!(bv.rank1(i), naive_rank1(&bits, i));
            }
            prop_assert_eq!(bv.select0(1), naive_select(&bits, 1, false));
        }

        #[test]
        fn sparse_matches_dense(mut pos in proptest::collection::btree_set(1usize..5000, 0..300), extra in 0usize..100) {
            let positions: Vec<usize> = std::mem::take(&mut pos).into_iter().collect();
            let universe = positions.last().copied().unwrap_or(1) + extra;
            let s = SparseBitVec::from_positions(universe, &positions).unwrap();
            let dense = BitVec::from_ones(universe, positions.iter().copied());
            for j in 0..=positions.len() + 1 {
                prop_assert_eq!(s.select1(j), dense.select1(j));
            }
            for i in 0..=universe {
                prop_assert_eq!(s.rank1(i), dense.rank1(i));
            }
        }
    }
}
