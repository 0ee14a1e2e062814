//! Balanced wavelet tree with levelwise concatenated bitmaps.
//!
//! Symbols of the input alphabet `[1, sigma]` are first mapped to compact
//! codes `[1, u]`, where `u` is the number of distinct symbols present. The
//! tree over the codes is balanced: a node for codes `[a, b]` sends
//! `[a, (a+b)/2]` left and the rest right, so sibling leaf counts differ by
//! at most one and the height is `ceil(log2 u)`.
//!
//! Nodes are not stored. Every level keeps one bitmap of length `n` holding
//! the bits of all nodes at that depth side by side, and a [`NodeCursor`]
//! carries the node's interval inside its level. A leaf that sits above the
//! last level passes its positions through unchanged, padded with zero bits
//! that are never consulted.

use std::io::{Read, Write};

use crate::bitvec::{BitVec, BitVecBuilder, SparseBitVec};
use crate::error::{check_range, Error, Result};
use crate::{ser, stats};

/// Mapping between original symbols `[1, sigma]` and codes `[1, u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Alphabet {
    /// Every symbol of `[1, sigma]` occurs.
    Identity,
    /// Plain bitmap over `[1, sigma]` marking the symbols present.
    Dense(BitVec),
    /// Elias–Fano bitmap, chosen when fewer than half the symbols occur.
    Sparse(SparseBitVec),
}

/// A wavelet-tree node: its depth, its interval inside that depth's
/// bitmap, and the range of codes below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeCursor {
    pub(crate) depth: usize,
    /// 0-based offset of the node's first position in the level bitmap.
    pub(crate) start: usize,
    pub(crate) len: usize,
    pub(crate) lo: usize,
    pub(crate) hi: usize,
    /// Zeros of the level bitmap strictly before `start`.
    pub(crate) zeros_before: usize,
}

impl NodeCursor {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// 1-based interval `[l, r]` within the level bitmap; empty when `r < l`.
    pub fn interval(&self) -> (usize, usize) {
        (self.start + 1, self.start + self.len)
    }

    /// Code range `[a, b]` of the leaves below this node.
    pub fn code_range(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn is_leaf(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    pub(crate) fn mid(&self) -> usize {
        (self.lo + self.hi) / 2
    }
}

/// Balanced wavelet tree over a sequence `S[1, n]` of symbols in `[1, sigma]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveletTree {
    n: usize,
    sigma: usize,
    u: usize,
    alphabet: Alphabet,
    levels: Vec<BitVec>,
}

impl WaveletTree {
    /// Builds the tree; every symbol must lie in `[1, sigma]`.
    pub fn new(seq: &[usize], sigma: usize) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&bad) = seq.iter().find(|&&s| s == 0 || s > sigma) {
            return Err(Error::OutOfRange {
                what: "symbol",
                value: bad,
                lo: 1,
                hi: sigma,
            });
        }
        let mut distinct = seq.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let u = distinct.len();
        let alphabet = if u == sigma {
            Alphabet::Identity
        } else if u < sigma / 2 {
            Alphabet::Sparse(SparseBitVec::from_positions(sigma, &distinct)?)
        } else {
            Alphabet::Dense(BitVec::from_ones(sigma, distinct.iter().copied()))
        };
        let codes: Vec<usize> = seq
            .iter()
            .map(|s| distinct.binary_search(s).expect("symbol present") + 1)
            .collect();
        let levels = build_levels(codes, u);
        Ok(Self {
            n: seq.len(),
            sigma,
            u,
            alphabet,
            levels,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of distinct symbols present.
    pub fn distinct(&self) -> usize {
        self.u
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// The concatenated bitmap of depth `d` (the root is depth 0).
    pub fn level(&self, d: usize) -> &BitVec {
        &self.levels[d]
    }

    /// Total payload bits over all level bitmaps.
    pub fn level_bits(&self) -> usize {
        self.levels.iter().map(BitVec::payload_bits).sum()
    }

    /// Rank/select sample bits over all level bitmaps.
    pub fn aux_bits(&self) -> usize {
        self.levels.iter().map(BitVec::aux_bits).sum()
    }

    /// Bits spent on the symbol/code mapping.
    pub fn alphabet_bits(&self) -> usize {
        match &self.alphabet {
            Alphabet::Identity => 0,
            Alphabet::Dense(b) => b.payload_bits() + b.aux_bits(),
            Alphabet::Sparse(s) => s.size_bits(),
        }
    }

    /// Original symbol carried by code `c`.
    #[inline]
    pub fn symbol_of(&self, code: usize) -> usize {
        match &self.alphabet {
            Alphabet::Identity => code,
            Alphabet::Dense(b) => b.select1(code).expect("code within [1, u]"),
            Alphabet::Sparse(s) => s.select1(code).expect("code within [1, u]"),
        }
    }

    /// Code of `symbol`, or `None` when it does not occur.
    pub fn code_of(&self, symbol: usize) -> Option<usize> {
        if symbol == 0 || symbol > self.sigma {
            return None;
        }
        match &self.alphabet {
            Alphabet::Identity => Some(symbol),
            Alphabet::Dense(b) => b.get(symbol).then(|| b.rank1(symbol)),
            Alphabet::Sparse(s) => {
                let r = s.rank1(symbol);
                (r > s.rank1(symbol - 1)).then_some(r)
            }
        }
    }

    /// Number of present symbols strictly smaller than `x`.
    pub(crate) fn codes_below(&self, x: usize) -> usize {
        let x = x.clamp(1, self.sigma + 1);
        match &self.alphabet {
            Alphabet::Identity => x - 1,
            Alphabet::Dense(b) => b.rank1(x - 1),
            Alphabet::Sparse(s) => s.rank1(x - 1),
        }
    }

    /// Codes `[cs, ce]` of the symbols in `[ys, ye]`, or `None` if none occur.
    pub(crate) fn code_range(&self, ys: usize, ye: usize) -> Option<(usize, usize)> {
        if ys > ye || ye == 0 || ys > self.sigma {
            return None;
        }
        let cs = self.codes_below(ys) + 1;
        let ce = self.codes_below(ye.saturating_add(1).min(self.sigma + 1));
        (cs <= ce).then_some((cs, ce))
    }

    pub fn root(&self) -> NodeCursor {
        NodeCursor {
            depth: 0,
            start: 0,
            len: self.n,
            lo: 1,
            hi: self.u,
            zeros_before: 0,
        }
    }

    /// Zeros among the first `i` positions of `node`.
    #[inline]
    pub(crate) fn rank0_in(&self, node: &NodeCursor, i: usize) -> usize {
        self.levels[node.depth].rank0(node.start + i) - node.zeros_before
    }

    #[inline]
    fn child(&self, depth: usize, start: usize, len: usize, lo: usize, hi: usize) -> NodeCursor {
        let zeros_before = match self.levels.get(depth) {
            Some(level) => level.rank0(start),
            None => 0,
        };
        NodeCursor {
            depth,
            start,
            len,
            lo,
            hi,
            zeros_before,
        }
    }

    /// Left and right children of an internal node.
    #[inline]
    pub fn children(&self, node: &NodeCursor) -> (NodeCursor, NodeCursor) {
        debug_assert!(!node.is_leaf());
        let k = self.rank0_in(node, node.len);
        let mid = node.mid();
        let left = self.child(node.depth + 1, node.start, k, node.lo, mid);
        let right = self.child(node.depth + 1, node.start + k, node.len - k, mid + 1, node.hi);
        (left, right)
    }

    /// Maps a node-local interval `[i, j]` to its images in both children.
    #[inline]
    pub(crate) fn split(&self, node: &NodeCursor, i: usize, j: usize) -> ((usize, usize), (usize, usize)) {
        let il = self.rank0_in(node, i - 1) + 1;
        let jl = self.rank0_in(node, j);
        ((il, jl), (i + 1 - il, j - jl))
    }

    /// `S[i]`.
    pub fn access(&self, i: usize) -> Result<usize> {
        check_range("position", i, 1, self.n)?;
        let mut node = self.root();
        let mut i = i;
        loop {
            stats::visit();
            if node.is_leaf() {
                return Ok(self.symbol_of(node.lo));
            }
            let (left, right) = self.children(&node);
            if self.levels[node.depth].get(node.start + i) {
                i -= self.rank0_in(&node, i);
                node = right;
            } else {
                i = self.rank0_in(&node, i);
                node = left;
            }
        }
    }

    /// Occurrences of `symbol` in `S[1, i]`.
    pub fn rank(&self, symbol: usize, i: usize) -> Result<usize> {
        check_range("symbol", symbol, 1, self.sigma)?;
        check_range("position", i, 0, self.n)?;
        let Some(code) = self.code_of(symbol) else {
            return Ok(0);
        };
        Ok(self.rank_code(code, i))
    }

    pub(crate) fn rank_code(&self, code: usize, mut i: usize) -> usize {
        let mut node = self.root();
        loop {
            stats::visit();
            if node.is_leaf() || i == 0 {
                return i;
            }
            let zeros = self.rank0_in(&node, i);
            let (left, right) = self.children(&node);
            if code <= node.mid() {
                i = zeros;
                node = left;
            } else {
                i -= zeros;
                node = right;
            }
        }
    }

    /// Position of the `j`th occurrence of `symbol`, or `None` if there are
    /// fewer than `j` occurrences.
    pub fn select(&self, symbol: usize, j: usize) -> Result<Option<usize>> {
        check_range("symbol", symbol, 1, self.sigma)?;
        Ok(self.code_of(symbol).and_then(|code| self.select_code(code, j)))
    }

    pub(crate) fn select_code(&self, code: usize, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let mut path = Vec::with_capacity(self.height());
        let mut node = self.root();
        while !node.is_leaf() {
            stats::visit();
            let (left, right) = self.children(&node);
            path.push(node);
            node = if code <= node.mid() { left } else { right };
        }
        stats::visit();
        if node.len < j {
            return None;
        }
        let mut j = j;
        for parent in path.iter().rev() {
            let level = &self.levels[parent.depth];
            let went_left = code <= parent.mid();
            let global = if went_left {
                level.select0(parent.zeros_before + j)
            } else {
                level.select1(parent.start - parent.zeros_before + j)
            };
            j = global.expect("occurrence exists in parent") - parent.start;
        }
        Some(j)
    }

    /// Validates a position range; `Ok(false)` means it is empty.
    pub(crate) fn check_positions(&self, xs: usize, xe: usize) -> Result<bool> {
        if xs > xe {
            return Ok(false);
        }
        check_range("range start", xs, 1, self.n)?;
        check_range("range end", xe, 1, self.n)?;
        Ok(true)
    }

    /// Number of positions in `[xs, xe]` holding a symbol in `[ys, ye]`.
    pub fn count(&self, xs: usize, xe: usize, ys: usize, ye: usize) -> Result<usize> {
        if !self.check_positions(xs, xe)? {
            return Ok(0);
        }
        let Some((cs, ce)) = self.code_range(ys, ye) else {
            return Ok(0);
        };
        Ok(self.count_codes(&self.root(), xs, xe, cs, ce))
    }

    /// Range counting below `node` for node-local positions `[i, j]` and codes `[cs, ce]`.
    pub(crate) fn count_codes(&self, node: &NodeCursor, i: usize, j: usize, cs: usize, ce: usize) -> usize {
        stats::visit();
        if i > j || node.hi < cs || node.lo > ce {
            return 0;
        }
        if cs <= node.lo && node.hi <= ce {
            return j - i + 1;
        }
        let (left, right) = self.children(node);
        let ((il, jl), (ir, jr)) = self.split(node, i, j);
        self.count_codes(&left, il, jl, cs, ce) + self.count_codes(&right, ir, jr, cs, ce)
    }

    /// Distinct symbols of `S[xs, xe]` within `[ys, ye]` with their
    /// frequencies, in increasing symbol order.
    pub fn report(&self, xs: usize, xe: usize, ys: usize, ye: usize) -> Result<Report<'_>> {
        let mut stack = Vec::new();
        let codes = self.code_range(ys, ye).unwrap_or((1, 0));
        if self.check_positions(xs, xe)? && codes.0 <= codes.1 {
            stack.push((self.root(), xs, xe));
        }
        Ok(Report {
            wt: self,
            stack,
            codes,
        })
    }

    /// The subsequence `S_v` handled by `node`, as original symbols.
    pub fn node_sequence(&self, node: &NodeCursor) -> Vec<usize> {
        (1..=node.len).map(|i| self.access_from(node, i)).collect()
    }

    fn access_from(&self, node: &NodeCursor, mut i: usize) -> usize {
        let mut node = *node;
        while !node.is_leaf() {
            let (left, right) = self.children(&node);
            let zeros = self.rank0_in(&node, i);
            if self.levels[node.depth].get(node.start + i) {
                i -= zeros;
                node = right;
            } else {
                i = zeros;
                node = left;
            }
        }
        self.symbol_of(node.lo)
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(b"WVT1")?;
        ser::put_usize(w, self.n)?;
        ser::put_usize(w, self.sigma)?;
        ser::put_usize(w, self.u)?;
        ser::put_usize(w, self.height())?;
        match &self.alphabet {
            Alphabet::Identity => ser::put_u64(w, 0)?,
            Alphabet::Dense(b) => {
                ser::put_u64(w, 1)?;
                b.write_to(w, false)?;
            }
            Alphabet::Sparse(s) => {
                ser::put_u64(w, 2)?;
                s.write_to(w)?;
            }
        }
        for level in &self.levels {
            level.write_to(w, false)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        ser::expect_magic(r, b"WVT1")?;
        let n = ser::get_usize(r)?;
        let sigma = ser::get_usize(r)?;
        let u = ser::get_usize(r)?;
        let height = ser::get_usize(r)?;
        if n == 0 || u == 0 || u > sigma || u > n || height != ceil_log2(u) {
            return Err(Error::Format("inconsistent wavelet tree header".into()));
        }
        let alphabet = match ser::get_u64(r)? {
            0 if u == sigma => Alphabet::Identity,
            1 => Alphabet::Dense(BitVec::read_from(r)?),
            2 => Alphabet::Sparse(SparseBitVec::read_from(r)?),
            other => return Err(Error::Format(format!("unknown alphabet kind {other}"))),
        };
        let present = match &alphabet {
            Alphabet::Identity => sigma,
            Alphabet::Dense(b) => {
                if b.len() != sigma {
                    return Err(Error::Format("alphabet bitmap length mismatch".into()));
                }
                b.count_ones()
            }
            Alphabet::Sparse(s) => {
                if s.universe() != sigma {
                    return Err(Error::Format("alphabet universe mismatch".into()));
                }
                s.count_ones()
            }
        };
        if present != u {
            return Err(Error::Format("alphabet size mismatch".into()));
        }
        let levels = (0..height)
            .map(|_| BitVec::read_from(r))
            .collect::<Result<Vec<_>>>()?;
        if levels.iter().any(|l| l.len() != n) {
            return Err(Error::Format("level length mismatch".into()));
        }
        Ok(Self {
            n,
            sigma,
            u,
            alphabet,
            levels,
        })
    }
}

pub(crate) fn ceil_log2(u: usize) -> usize {
    if u <= 1 {
        0
    } else {
        (u - 1).ilog2() as usize + 1
    }
}

/// One stable partition per level.
fn build_levels(mut codes: Vec<usize>, u: usize) -> Vec<BitVec> {
    let n = codes.len();
    let height = ceil_log2(u);
    let mut levels = Vec::with_capacity(height);
    // (start, len, lo, hi) of every node at the current depth, left to right.
    let mut nodes = vec![(0usize, n, 1usize, u)];
    let mut next = Vec::with_capacity(n);
    for _ in 0..height {
        let mut bits = BitVecBuilder::with_capacity(n);
        let mut next_nodes = Vec::with_capacity(nodes.len() * 2);
        next.clear();
        for &(start, len, lo, hi) in &nodes {
            let slice = &codes[start..start + len];
            if lo == hi {
                for _ in slice {
                    bits.push(false);
                }
                next.extend_from_slice(slice);
                next_nodes.push((start, len, lo, hi));
                continue;
            }
            let mid = (lo + hi) / 2;
            let mut zeros = 0;
            for &c in slice {
                bits.push(c > mid);
                if c <= mid {
                    next.push(c);
                    zeros += 1;
                }
            }
            next.extend(slice.iter().filter(|&&c| c > mid));
            next_nodes.push((start, zeros, lo, mid));
            next_nodes.push((start + zeros, len - zeros, mid + 1, hi));
        }
        levels.push(bits.build());
        std::mem::swap(&mut codes, &mut next);
        nodes = next_nodes;
    }
    levels
}

/// Iterator returned by [`WaveletTree::report`].
#[derive(Clone, Debug)]
pub struct Report<'a> {
    wt: &'a WaveletTree,
    stack: Vec<(NodeCursor, usize, usize)>,
    codes: (usize, usize),
}

impl Iterator for Report<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let (cs, ce) = self.codes;
        while let Some((node, i, j)) = self.stack.pop() {
            stats::visit();
            if node.is_leaf() {
                return Some((self.wt.symbol_of(node.lo), j - i + 1));
            }
            let (left, right) = self.wt.children(&node);
            let ((il, jl), (ir, jr)) = self.wt.split(&node, i, j);
            if ir <= jr && right.lo <= ce {
                self.stack.push((right, ir, jr));
            }
            if il <= jl && left.hi >= cs {
                self.stack.push((left, il, jl));
            }
        }
        None
    }
}
