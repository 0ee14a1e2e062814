//! Balanced parentheses with excess search.
//!
//! `1` is an opening and `0` a closing parenthesis. The excess at `x` is
//! `opens - closes` over positions `1..=x`. Every navigation operation is a
//! forward or backward search for the first position whose excess drops to
//! a target; a min-excess value per 64-bit word plus a segment tree over
//! words keeps that logarithmic.

use std::io::{Read, Write};

use crate::bitvec::BitVec;
use crate::error::{Error, Result};

const W: usize = 64;

#[derive(Clone, Debug)]
pub struct BalancedParens {
    bits: BitVec,
    /// Marks the opening parenthesis of every leaf `()`.
    leaves: BitVec,
    word_min: Vec<i64>,
    tree: Vec<i64>,
    tree_size: usize,
}

impl BalancedParens {
    pub fn new(bits: BitVec) -> Result<Self> {
        let mut depth: i64 = 0;
        for (k, b) in bits.iter().enumerate() {
            depth += if b { 1 } else { -1 };
            if depth < 0 {
                return Err(Error::Invalid(format!("unbalanced parentheses at {}", k + 1)));
            }
        }
        if depth != 0 {
            return Err(Error::Invalid("unbalanced parentheses at end".into()));
        }
        let len = bits.len();
        let leaves: BitVec = (1..=len).map(|p| bits.get(p) && p < len && !bits.get(p + 1)).collect();
        let words = len.div_ceil(W);
        let mut word_min = Vec::with_capacity(words);
        let mut e = 0i64;
        for w in 0..words {
            let mut m = i64::MAX;
            for p in w * W + 1..=((w + 1) * W).min(len) {
                e += if bits.get(p) { 1 } else { -1 };
                m = m.min(e);
            }
            word_min.push(m);
        }
        let tree_size = words.next_power_of_two().max(1);
        let mut tree = vec![i64::MAX; 2 * tree_size];
        tree[tree_size..tree_size + words].copy_from_slice(&word_min);
        for v in (1..tree_size).rev() {
            tree[v] = tree[2 * v].min(tree[2 * v + 1]);
        }
        Ok(Self {
            bits,
            leaves,
            word_min,
            tree,
            tree_size,
        })
    }

    pub fn from_bit_str(s: &str) -> Result<Self> {
        Self::new(BitVec::from_bit_str(s))
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_open(&self, p: usize) -> bool {
        self.bits.get(p)
    }

    pub fn excess(&self, x: usize) -> i64 {
        2 * self.bits.rank1(x) as i64 - x as i64
    }

    fn step(&self, p: usize) -> i64 {
        if self.bits.get(p) {
            1
        } else {
            -1
        }
    }

    /// Smallest `q > i` with `excess(q) <= target`.
    fn fwd(&self, i: usize, target: i64) -> Option<usize> {
        let len = self.len();
        let w0 = i / W;
        let mut e = self.excess(i);
        for q in i + 1..=((w0 + 1) * W).min(len) {
            e += self.step(q);
            if e <= target {
                return Some(q);
            }
        }
        let w = self.first_leq(w0 + 1, target)?;
        let mut e = self.excess(w * W);
        for q in w * W + 1..=((w + 1) * W).min(len) {
            e += self.step(q);
            if e <= target {
                return Some(q);
            }
        }
        unreachable!("word minimum promised a hit")
    }

    /// Largest `x < i` (with `x >= 0`) such that `excess(x) <= target`.
    fn bwd(&self, i: usize, target: i64) -> Option<usize> {
        if i == 0 {
            return None;
        }
        let mut x = i - 1;
        if x > 0 {
            let w = (x - 1) / W;
            let mut e = self.excess(x);
            while x > w * W {
                if e <= target {
                    return Some(x);
                }
                e -= self.step(x);
                x -= 1;
            }
            if w > 0 {
                if let Some(w2) = self.last_leq(w - 1, target) {
                    let mut x = ((w2 + 1) * W).min(self.len());
                    let mut e = self.excess(x);
                    loop {
                        if e <= target {
                            return Some(x);
                        }
                        e -= self.step(x);
                        x -= 1;
                    }
                }
            }
        }
        (target >= 0).then_some(0)
    }

    fn first_leq(&self, from: usize, target: i64) -> Option<usize> {
        self.first_in(1, 0, self.tree_size, from, target)
    }

    fn first_in(&self, v: usize, lo: usize, hi: usize, from: usize, target: i64) -> Option<usize> {
        if hi <= from || self.tree[v] > target || lo >= self.word_min.len() {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.first_in(2 * v, lo, mid, from, target)
            .or_else(|| self.first_in(2 * v + 1, mid, hi, from, target))
    }

    fn last_leq(&self, to: usize, target: i64) -> Option<usize> {
        self.last_in(1, 0, self.tree_size, to, target)
    }

    fn last_in(&self, v: usize, lo: usize, hi: usize, to: usize, target: i64) -> Option<usize> {
        if lo > to || self.tree[v] > target {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.last_in(2 * v + 1, mid, hi, to, target)
            .or_else(|| self.last_in(2 * v, lo, mid, to, target))
    }

    fn check_open(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.len() || !self.bits.get(p) {
            return Err(Error::NotANode(p));
        }
        Ok(())
    }

    pub fn find_close(&self, p: usize) -> Result<usize> {
        self.check_open(p)?;
        Ok(self.fwd(p, self.excess(p) - 1).expect("balanced"))
    }

    /// Opening parenthesis matching the closing one at `q`.
    pub fn find_open(&self, q: usize) -> Result<usize> {
        if q == 0 || q > self.len() || self.bits.get(q) {
            return Err(Error::Invalid(format!("position {q} is not a closing parenthesis")));
        }
        Ok(self.bwd(q, self.excess(q)).expect("balanced") + 1)
    }

    /// Parent of the node opened at `p`; `None` for top-level nodes.
    pub fn enclose(&self, p: usize) -> Result<Option<usize>> {
        self.check_open(p)?;
        let e = self.excess(p - 1);
        if e == 0 {
            return Ok(None);
        }
        Ok(self.bwd(p - 1, e - 1).map(|x| x + 1))
    }

    pub fn subtree_size(&self, p: usize) -> Result<usize> {
        Ok((self.find_close(p)? - p).div_ceil(2))
    }

    /// Depth of the node opened at `p`, top-level nodes having depth 1.
    pub fn depth(&self, p: usize) -> usize {
        self.excess(p) as usize
    }

    pub fn max_depth(&self) -> usize {
        let mut e = 0i64;
        let mut best = 0;
        for b in self.bits.iter() {
            e += if b { 1 } else { -1 };
            best = best.max(e);
        }
        best as usize
    }

    pub fn node_count(&self) -> usize {
        self.len() / 2
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.count_ones()
    }

    /// Leaves whose opening parenthesis lies in `1..=x`.
    pub fn rank_leaf(&self, x: usize) -> usize {
        self.leaves.rank1(x)
    }

    pub fn select_leaf(&self, i: usize) -> Option<usize> {
        self.leaves.select1(i)
    }

    /// `j`th opening parenthesis.
    pub fn select_open(&self, j: usize) -> Option<usize> {
        self.bits.select1(j)
    }

    pub fn rank_open(&self, x: usize) -> usize {
        self.bits.rank1(x)
    }

    /// Leaf ids `[first, last]` below the node opened at `p`.
    pub fn leaf_range(&self, p: usize) -> Result<(usize, usize)> {
        let close = self.find_close(p)?;
        Ok((self.rank_leaf(p - 1) + 1, self.rank_leaf(close)))
    }

    pub fn size_bits(&self) -> usize {
        self.bits.payload_bits() + self.bits.aux_bits() + self.leaves.payload_bits() + self.leaves.aux_bits() + 64 * (self.word_min.len() + self.tree.len())
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        self.bits.write_to(w, false)
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        Self::new(BitVec::read_from(r)?).map_err(|e| Error::Format(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Matching pairs by a stack scan.
    fn pairs(s: &[bool]) -> Vec<usize> {
        let mut m = vec![0; s.len() + 1];
        let mut stack = Vec::new();
        for (k, &b) in s.iter().enumerate() {
            if b {
                stack.push(k + 1);
            } else {
                let o = stack.pop().unwrap();
                m[o] = k + 1;
                m[k + 1] = o;
            }
        }
        m
    }

    fn parents(s: &[bool]) -> Vec<Option<usize>> {
        let mut out = vec![None; s.len() + 1];
        let mut stack: Vec<usize> = Vec::new();
        for (k, &b) in s.iter().enumerate() {
            if b {
                out[k + 1] = stack.last().copied();
                stack.push(k + 1);
            } else {
                stack.pop();
            }
        }
        out
    }

    #[test]
    fn small_tree() {
        // (()()) : root at 1, leaves at 2 and 4.
        let bp = BalancedParens::from_bit_str("110100").unwrap();
        assert_eq!(bp.find_close(1).unwrap(), 6);
        assert_eq!(bp.find_close(2).unwrap(), 3);
        assert_eq!(bp.find_open(5).unwrap(), 4);
        assert_eq!(bp.enclose(4).unwrap(), Some(1));
        assert_eq!(bp.enclose(1).unwrap(), None);
        assert_eq!(bp.leaf_range(1).unwrap(), (1, 2));
        assert_eq!(bp.leaf_range(4).unwrap(), (2, 2));
        assert_eq!(bp.subtree_size(1).unwrap(), 3);
        assert_eq!(bp.leaf_count(), 2);
        assert!(matches!(bp.find_close(3), Err(Error::NotANode(3))));
        assert!(BalancedParens::from_bit_str("1001").is_err());
        assert!(BalancedParens::from_bit_str("110").is_err());
    }

    fn balanced() -> impl Strategy<Value = Vec<bool>> {
        proptest::collection::vec(any::<bool>(), 0..700).prop_map(|raw| {
            // Turn an arbitrary walk into a sequence of balanced forests.
            let mut out = Vec::new();
            let mut depth = 0usize;
            for b in raw {
                if b || depth == 0 {
                    out.push(true);
                    depth += 1;
                } else {
                    out.push(false);
                    depth -= 1;
                }
            }
            out.extend(std::iter::repeat_n(false, depth));
            out
        })
    }

    proptest! {
        #[test]
        fn navigation_matches_stack_scan(s in balanced()) {
            let bp = BalancedParens::new(s.iter().copied().collect()).unwrap();
            let m = pairs(&s);
            let par = parents(&s);
            for p in 1..=s.len() {
                if s[p - 1] {
                    prop_assert_eq!(bp.find_close(p).unwrap(), m[p]);
                    prop_assert_eq!(bp.enclose(p).unwrap(), par[p]);
                } else {
                    prop_assert_eq!(bp.find_open(p).unwrap(), m[p]);
                }
            }
        }
    }
}
