//! Range quantile, range next value and range intersection on a
//! [`WaveletTree`], plus the fingered variants that reuse the previous
//! root-to-leaf path.
//!
//! All queries descend the tree carrying node-local intervals. When a node
//! holds positions `[i, j]`, its left child holds
//! `[rank0(i-1)+1, rank0(j)]` and its right child holds
//! `[i - rank0(i-1), j - rank0(j)]`, so the two child intervals always
//! partition the parent's.

use crate::error::{check_range, Error, Result};
use crate::stats;
use crate::wavelet::{NodeCursor, WaveletTree};

/// Answer of a range next value query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NextValue {
    pub symbol: usize,
    /// Occurrences of `symbol` in the queried range.
    pub freq: usize,
    /// 1-based rank of the first copy of `symbol` in the sorted range.
    pub rank: usize,
}

impl WaveletTree {
    /// The `k`th smallest value of `S[i, j]` and its frequency in the range.
    pub fn rqq(&self, i: usize, j: usize, k: usize) -> Result<(usize, usize)> {
        check_range("range start", i, 1, self.len())?;
        check_range("range end", j, i, self.len())?;
        check_range("quantile", k, 1, j - i + 1)?;
        let (mut node, mut i, mut j, mut k) = (self.root(), i, j, k);
        loop {
            stats::visit();
            if node.is_leaf() {
                return Ok((self.symbol_of(node.lo), j - i + 1));
            }
            let (left, right) = self.children(&node);
            let ((il, jl), (ir, jr)) = self.split(&node, i, j);
            let nl = jl + 1 - il;
            if k <= nl {
                (node, i, j) = (left, il, jl);
            } else {
                (node, i, j, k) = (right, ir, jr, k - nl);
            }
        }
    }

    /// Smallest value `>= x` in `S[i, j]`, or `None` if there is none.
    ///
    /// An empty interval (`i > j`) yields `None`.
    pub fn rnv(&self, i: usize, j: usize, x: usize) -> Result<Option<NextValue>> {
        RnvFinger::new(self, i, j)?.next_geq(x)
    }

    /// Distinct values at sorted positions `k..=k2` of `S[i, j]`, in
    /// increasing order, each with the number of those positions it fills.
    pub fn mrqq(&self, i: usize, j: usize, k: usize, k2: usize) -> Result<Mrqq<'_>> {
        check_range("range start", i, 1, self.len())?;
        check_range("range end", j, i, self.len())?;
        check_range("first quantile", k, 1, j - i + 1)?;
        check_range("last quantile", k2, k, j - i + 1)?;
        Ok(Mrqq {
            wt: self,
            stack: vec![(self.root(), i, j, k, k2)],
        })
    }

    /// Symbols of `[ys, ye]` occurring in at least `threshold` of the given
    /// ranges, in increasing order, with their frequency in every range.
    ///
    /// Ranges with `i > j` are accepted and count as empty.
    pub fn rint(
        &self,
        ranges: &[(usize, usize)],
        threshold: usize,
        ys: usize,
        ye: usize,
    ) -> Result<RangeIntersection<'_>> {
        if ranges.is_empty() {
            return Err(Error::Invalid("range intersection needs at least one range".into()));
        }
        check_range("threshold", threshold, 1, ranges.len())?;
        let mut normalized = Vec::with_capacity(ranges.len());
        for &(i, j) in ranges {
            if self.check_positions(i, j)? {
                normalized.push((i, j));
            } else {
                normalized.push((1, 0));
            }
        }
        let slack = ranges.len() - threshold;
        let codes = self.code_range(ys, ye).unwrap_or((1, 0));
        let empty = normalized.iter().filter(|(i, j)| i > j).count();
        let mut stack = Vec::new();
        if empty <= slack && codes.0 <= codes.1 {
            stack.push((self.root(), normalized));
        }
        Ok(RangeIntersection {
            wt: self,
            slack,
            codes,
            stack,
        })
    }

    /// Symbols common to `S[i1, j1]` and `S[i2, j2]` found by alternating
    /// fingered next-value probes; yields `(symbol, f1, f2)`.
    pub fn rint_via_rnv(&self, first: (usize, usize), second: (usize, usize)) -> Result<RnvIntersection<'_>> {
        let mut a = RnvFinger::new(self, first.0, first.1)?;
        let b = RnvFinger::new(self, second.0, second.1)?;
        let pending = a.next_geq(1)?;
        Ok(RnvIntersection { a, b, pending })
    }
}

/// Iterator returned by [`WaveletTree::mrqq`].
#[derive(Clone, Debug)]
pub struct Mrqq<'a> {
    wt: &'a WaveletTree,
    stack: Vec<(NodeCursor, usize, usize, usize, usize)>,
}

impl Iterator for Mrqq<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        while let Some((node, i, j, k, k2)) = self.stack.pop() {
            stats::visit();
            if node.is_leaf() {
                return Some((self.wt.symbol_of(node.lo), k2 - k + 1));
            }
            let (left, right) = self.wt.children(&node);
            let ((il, jl), (ir, jr)) = self.wt.split(&node, i, j);
            let nl = jl + 1 - il;
            // Quantiles are node-local: the right child sees k - nl.
            if k2 > nl {
                self.stack.push((right, ir, jr, k.saturating_sub(nl).max(1), k2 - nl));
            }
            if k <= nl {
                self.stack.push((left, il, jl, k, k2.min(nl)));
            }
        }
        None
    }
}

/// Iterator returned by [`WaveletTree::rint`]; yields `(symbol, freqs)`.
#[derive(Clone, Debug)]
pub struct RangeIntersection<'a> {
    wt: &'a WaveletTree,
    /// How many ranges may be empty before a branch is abandoned.
    slack: usize,
    codes: (usize, usize),
    stack: Vec<(NodeCursor, Vec<(usize, usize)>)>,
}

impl Iterator for RangeIntersection<'_> {
    type Item = (usize, Vec<usize>);

    fn next(&mut self) -> Option<(usize, Vec<usize>)> {
        let (cs, ce) = self.codes;
        while let Some((node, ranges)) = self.stack.pop() {
            stats::visit();
            if node.is_leaf() {
                let freqs = ranges.iter().map(|&(i, j)| (j + 1).saturating_sub(i)).collect();
                return Some((self.wt.symbol_of(node.lo), freqs));
            }
            let (left, right) = self.wt.children(&node);
            let mut lr = Vec::with_capacity(ranges.len());
            let mut rr = Vec::with_capacity(ranges.len());
            let (mut lempty, mut rempty) = (0, 0);
            for &(i, j) in &ranges {
                if i > j {
                    lr.push((1, 0));
                    rr.push((1, 0));
                    lempty += 1;
                    rempty += 1;
                    continue;
                }
                let ((il, jl), (ir, jr)) = self.wt.split(&node, i, j);
                lempty += usize::from(il > jl);
                rempty += usize::from(ir > jr);
                lr.push((il, jl));
                rr.push((ir, jr));
            }
            if rempty <= self.slack && right.lo <= ce {
                self.stack.push((right, rr));
            }
            if lempty <= self.slack && left.hi >= cs {
                self.stack.push((left, lr));
            }
        }
        None
    }
}

/// One step of the remembered root-to-leaf path.
#[derive(Clone, Copy, Debug)]
struct PathStep {
    node: NodeCursor,
    i: usize,
    j: usize,
    /// Elements of the queried range smaller than every code below `node`.
    below: usize,
}

/// Fingered range next value search over a frozen interval.
///
/// Successive calls must use strictly increasing arguments; each call
/// climbs from the previous answer's leaf to the lowest ancestor whose code
/// range contains the new argument and resumes the search there.
#[derive(Clone, Debug)]
pub struct RnvFinger<'a> {
    wt: &'a WaveletTree,
    path: Vec<PathStep>,
    last_x: Option<usize>,
    exhausted: bool,
}

impl<'a> RnvFinger<'a> {
    /// A finger over `S[i, j]`; `i > j` gives an always-empty finger.
    pub fn new(wt: &'a WaveletTree, i: usize, j: usize) -> Result<Self> {
        let nonempty = wt.check_positions(i, j)?;
        let mut path = Vec::with_capacity(wt.height() + 1);
        path.push(PathStep {
            node: wt.root(),
            i,
            j,
            below: 0,
        });
        Ok(Self {
            wt,
            path,
            last_x: None,
            exhausted: !nonempty,
        })
    }

    /// Smallest value `>= x` in the frozen interval.
    pub fn next_geq(&mut self, x: usize) -> Result<Option<NextValue>> {
        if x == 0 {
            return Err(Error::OutOfRange {
                what: "next-value argument",
                value: 0,
                lo: 1,
                hi: self.wt.sigma() + 1,
            });
        }
        if let Some(prev) = self.last_x {
            if x <= prev {
                return Err(Error::NonMonotone {
                    what: "next-value argument",
                    previous: prev,
                    got: x,
                });
            }
        }
        let first_call = self.last_x.is_none();
        self.last_x = Some(x);
        if self.exhausted {
            return Ok(None);
        }
        let cx = self.wt.codes_below(x) + 1;
        if cx > self.wt.distinct() {
            self.exhausted = true;
            return Ok(None);
        }
        if !first_call {
            while self.path.len() > 1 {
                let top = self.path.last().expect("non-empty path").node;
                if top.lo <= cx && cx <= top.hi {
                    break;
                }
                self.path.pop();
            }
        }
        if self.descend(cx) {
            return Ok(Some(self.hit()));
        }
        // Nothing >= cx below the top node: back up to the nearest
        // ancestor we left through its left child and try its right.
        loop {
            let child = self.path.pop().expect("non-empty path");
            let Some(parent) = self.path.last().copied() else {
                self.exhausted = true;
                self.path.push(child);
                return Ok(None);
            };
            if child.node.lo != parent.node.lo {
                continue;
            }
            let (_, right) = self.wt.children(&parent.node);
            let ((il, jl), (ir, jr)) = self.wt.split(&parent.node, parent.i, parent.j);
            self.path.push(PathStep {
                node: right,
                i: ir,
                j: jr,
                below: parent.below + (jl + 1 - il),
            });
            if self.descend(right.lo) {
                return Ok(Some(self.hit()));
            }
        }
    }

    fn hit(&self) -> NextValue {
        let leaf = self.path.last().expect("non-empty path");
        NextValue {
            symbol: self.wt.symbol_of(leaf.node.lo),
            freq: leaf.j + 1 - leaf.i,
            rank: leaf.below + 1,
        }
    }

    /// Extends the path from its top to the leaf of the smallest code
    /// `>= cx` below it. On failure the path is left as it was.
    fn descend(&mut self, cx: usize) -> bool {
        let top = *self.path.last().expect("non-empty path");
        stats::visit();
        if top.i > top.j || top.node.hi < cx {
            return false;
        }
        if top.node.is_leaf() {
            return true;
        }
        let (left, right) = self.wt.children(&top.node);
        let ((il, jl), (ir, jr)) = self.wt.split(&top.node, top.i, top.j);
        let right_step = PathStep {
            node: right,
            i: ir,
            j: jr,
            below: top.below + (jl + 1 - il),
        };
        if cx <= top.node.mid() {
            self.path.push(PathStep {
                node: left,
                i: il,
                j: jl,
                below: top.below,
            });
            if self.descend(cx) {
                return true;
            }
            self.path.pop();
        }
        self.path.push(right_step);
        if self.descend(cx) {
            return true;
        }
        self.path.pop();
        false
    }
}

/// Iterator returned by [`WaveletTree::rint_via_rnv`].
#[derive(Clone, Debug)]
pub struct RnvIntersection<'a> {
    a: RnvFinger<'a>,
    b: RnvFinger<'a>,
    pending: Option<NextValue>,
}

impl Iterator for RnvIntersection<'_> {
    type Item = (usize, usize, usize);

    fn next(&mut self) -> Option<(usize, usize, usize)> {
        loop {
            let x1 = self.pending?;
            // Both fingers only ever see strictly increasing arguments.
            let Some(x2) = self.b.next_geq(x1.symbol).expect("monotone probe") else {
                self.pending = None;
                return None;
            };
            if x2.symbol == x1.symbol {
                self.pending = self.a.next_geq(x1.symbol + 1).expect("monotone probe");
                return Some((x1.symbol, x1.freq, x2.freq));
            }
            self.pending = self.a.next_geq(x2.symbol).expect("monotone probe");
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct FingerLevel {
    node: NodeCursor,
    i: usize,
    j: usize,
    /// Values of the frozen range skipped to the left before this node.
    skipped: usize,
    /// Largest quantile whose descent agrees with the current one down to
    /// and including this level.
    max_shared: usize,
}

/// Fingered range quantile search over a frozen interval `[i*, j*]`.
#[derive(Clone, Debug)]
pub struct QuantileFinger<'a> {
    wt: &'a WaveletTree,
    range_len: usize,
    levels: Vec<FingerLevel>,
    last_k: usize,
}

impl<'a> QuantileFinger<'a> {
    pub fn new(wt: &'a WaveletTree, i: usize, j: usize) -> Result<Self> {
        check_range("range start", i, 1, wt.len())?;
        check_range("range end", j, i, wt.len())?;
        let levels = vec![FingerLevel {
            node: wt.root(),
            i,
            j,
            skipped: 0,
            max_shared: usize::MAX,
        }];
        Ok(Self {
            wt,
            range_len: j - i + 1,
            levels,
            last_k: 0,
        })
    }

    /// `rqq(i*, j*, k)`; `k` may not decrease between calls.
    pub fn seek(&mut self, k: usize) -> Result<(usize, usize)> {
        check_range("quantile", k, 1, self.range_len)?;
        if k < self.last_k {
            return Err(Error::NonMonotone {
                what: "quantile",
                previous: self.last_k,
                got: k,
            });
        }
        if self.last_k > 0 {
            // Keep the deepest level whose parent decision still holds for k.
            let mut depth = self.levels.len() - 1;
            while depth > 0 && k > self.levels[depth - 1].max_shared {
                depth -= 1;
            }
            self.levels.truncate(depth + 1);
        }
        self.last_k = k;
        loop {
            let depth = self.levels.len() - 1;
            let st = self.levels[depth];
            stats::visit();
            if st.node.is_leaf() {
                return Ok((self.wt.symbol_of(st.node.lo), st.j + 1 - st.i));
            }
            let (left, right) = self.wt.children(&st.node);
            let ((il, jl), (ir, jr)) = self.wt.split(&st.node, st.i, st.j);
            let nl = jl + 1 - il;
            let inherited = if depth == 0 {
                usize::MAX
            } else {
                self.levels[depth - 1].max_shared
            };
            let next = if k - st.skipped <= nl {
                self.levels[depth].max_shared = st.skipped + nl;
                FingerLevel {
                    node: left,
                    i: il,
                    j: jl,
                    skipped: st.skipped,
                    max_shared: usize::MAX,
                }
            } else {
                self.levels[depth].max_shared = inherited;
                FingerLevel {
                    node: right,
                    i: ir,
                    j: jr,
                    skipped: st.skipped + nl,
                    max_shared: usize::MAX,
                }
            };
            self.levels.push(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats;
    use proptest::prelude::*;

    fn abracadabra() -> WaveletTree {
        let seq: Vec<usize> = b"abracadabra"
            .iter()
            .map(|c| match c {
                b'a' => 1,
                b'b' => 2,
                b'c' => 3,
                b'd' => 4,
                _ => 5,
            })
            .collect();
        WaveletTree::new(&seq, 5).unwrap()
    }

    fn sorted(seq: &[usize], i: usize, j: usize) -> Vec<usize> {
        let mut v = seq[i - 1..j].to_vec();
        v.sort_unstable();
        v
    }

    #[test]
    fn rqq_examples() {
        let wt = abracadabra();
        assert_eq!(wt.rqq(1, 11, 6).unwrap(), (2, 2));
        assert_eq!(wt.rqq(1, 11, 11).unwrap(), (5, 2));
        assert_eq!(wt.rqq(4, 4, 1).unwrap(), (1, 1));
        assert!(wt.rqq(1, 11, 12).is_err());
        assert!(wt.rqq(1, 11, 0).is_err());
        assert!(wt.rqq(3, 2, 1).is_err());
    }

    #[test]
    fn rnv_examples() {
        let wt = abracadabra();
        let hit = |symbol, freq, rank| Some(NextValue { symbol, freq, rank });
        assert_eq!(wt.rnv(2, 5, 3).unwrap(), hit(3, 1, 3));
        assert_eq!(wt.rnv(2, 5, 6).unwrap(), None);
        assert_eq!(wt.rnv(1, 11, 1).unwrap(), hit(1, 5, 1));
        assert_eq!(wt.rnv(5, 4, 1).unwrap(), None);
        assert!(wt.rnv(1, 12, 1).is_err());
    }

    #[test]
    fn rnv_finger_sweeps_distinct_values() {
        let wt = abracadabra();
        let mut f = RnvFinger::new(&wt, 1, 11).unwrap();
        assert_eq!(f.next_geq(1).unwrap().unwrap().symbol, 1);
        assert_eq!(f.next_geq(2).unwrap(), Some(NextValue { symbol: 2, freq: 2, rank: 6 }));
        let rest: Vec<usize> = (3..=5).map(|x| f.next_geq(x).unwrap().unwrap().symbol).collect();
        assert_eq!(rest, vec![3, 4, 5]);
        assert_eq!(f.next_geq(6).unwrap(), None);
        assert_eq!(f.next_geq(9).unwrap(), None);
        assert!(matches!(f.next_geq(9), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn rint_examples() {
        let wt = abracadabra();
        let both: Vec<_> = wt.rint(&[(1, 4), (5, 8)], 2, 1, 5).unwrap().collect();
        assert_eq!(both, vec![(1, vec![2, 2])]);
        let any: Vec<_> = wt.rint(&[(1, 4), (5, 8)], 1, 1, 5).unwrap().collect();
        assert_eq!(
            any,
            vec![(1, vec![2, 2]), (2, vec![1, 0]), (3, vec![0, 1]), (4, vec![0, 1]), (5, vec![1, 0])]
        );
        // "rdr" against "ca": no common symbol.
        assert_eq!(wt.rint(&[(3, 3), (5, 5)], 2, 1, 5).unwrap().count(), 0);
        let via: Vec<_> = wt.rint_via_rnv((1, 4), (5, 8)).unwrap().collect();
        assert_eq!(via, vec![(1, 2, 2)]);
        assert_eq!(wt.rint_via_rnv((3, 3), (5, 5)).unwrap().count(), 0);
        assert!(wt.rint(&[(1, 4)], 2, 1, 5).is_err());
    }

    #[test]
    fn mrqq_examples() {
        let wt = abracadabra();
        assert_eq!(wt.mrqq(1, 11, 4, 7).unwrap().collect::<Vec<_>>(), vec![(1, 2), (2, 2)]);
        assert_eq!(wt.mrqq(1, 11, 6, 6).unwrap().collect::<Vec<_>>(), vec![(2, 1)]);
        let full: Vec<_> = wt.mrqq(1, 11, 1, 11).unwrap().collect();
        assert_eq!(full, wt.report(1, 11, 1, 5).unwrap().collect::<Vec<_>>());
        assert!(wt.mrqq(1, 11, 5, 4).is_err());
    }

    #[test]
    fn quantile_finger_examples() {
        let wt = abracadabra();
        let mut f = QuantileFinger::new(&wt, 1, 11).unwrap();
        assert_eq!(f.seek(2).unwrap(), (1, 5));
        assert_eq!(f.seek(6).unwrap(), (2, 2));
        assert_eq!(f.seek(6).unwrap(), (2, 2));
        assert!(matches!(f.seek(5), Err(Error::NonMonotone { .. })));
        let mut f = QuantileFinger::new(&wt, 1, 11).unwrap();
        let sweep: Vec<usize> = (1..=11).map(|k| f.seek(k).unwrap().0).collect();
        assert_eq!(sweep, vec![1, 1, 1, 1, 1, 2, 2, 3, 4, 5, 5]);
    }

    #[test]
    fn finger_sweep_touches_fewer_nodes() {
        let seq: Vec<usize> = (0..4096).map(|k| (k * 7919) % 1000 + 1).collect();
        let wt = WaveletTree::new(&seq, 1000).unwrap();
        let (_, fresh) = stats::measure(|| {
            for k in 1..=4096 {
                wt.rqq(1, 4096, k).unwrap();
            }
        });
        let (_, fingered) = stats::measure(|| {
            let mut f = QuantileFinger::new(&wt, 1, 4096).unwrap();
            for k in 1..=4096 {
                f.seek(k).unwrap();
            }
        });
        assert!(fingered * 2 < fresh, "fingered {fingered} vs fresh {fresh}");
    }

    fn instance() -> impl Strategy<Value = (Vec<usize>, usize)> {
        prop_oneof![Just(2usize), Just(5), Just(64), Just(1000)]
            .prop_flat_map(|sigma| (proptest::collection::vec(1..=sigma, 1..300), Just(sigma)))
    }

    proptest! {
        #[test]
        fn rqq_matches_sort((seq, sigma) in instance(), a in 0usize..300, b in 0usize..300, kk in 0usize..300) {
            let wt = WaveletTree::new(&seq, sigma).unwrap();
            let n = seq.len();
            let (i, j) = { let (x, y) = (a % n + 1, b % n + 1); (x.min(y), x.max(y)) };
            let s = sorted(&seq, i, j);
            let k = kk % s.len() + 1;
            let v = s[k - 1];
            prop_assert_eq!(wt.rqq(i, j, k).unwrap(), (v, s.iter().filter(|&&x| x == v).count()));
        }

        #[test]
        fn rnv_matches_sort((seq, sigma) in instance(), a in 0usize..300, b in 0usize..300, x in 1usize..1002) {
            let wt = WaveletTree::new(&seq, sigma).unwrap();
            let n = seq.len();
            let (i, j) = { let (p, q) = (a % n + 1, b % n + 1); (p.min(q), p.max(q)) };
            let x = x.min(sigma + 1);
            let s = sorted(&seq, i, j);
            let expected = s.iter().position(|&v| v >= x).map(|p| NextValue {
                symbol: s[p],
                freq: s.iter().filter(|&&v| v == s[p]).count(),
                rank: p + 1,
            });
            let got = wt.rnv(i, j, x).unwrap();
            prop_assert_eq!(got, expected);
            if let Some(hit) = got {
                prop_assert_eq!(wt.rqq(i, j, hit.rank).unwrap().0, hit.symbol);
            }
        }

        #[test]
        fn fingered_calls_equal_fresh((seq, sigma) in instance(), a in 0usize..300, b in 0usize..300, steps in proptest::collection::vec(1usize..40, 1..30)) {
            let wt = WaveletTree::new(&seq, sigma).unwrap();
            let n = seq.len();
            let (i, j) = { let (p, q) = (a % n + 1, b % n + 1); (p.min(q), p.max(q)) };
            let mut rf = RnvFinger::new(&wt, i, j).unwrap();
            let mut qf = QuantileFinger::new(&wt, i, j).unwrap();
            let (mut x, mut k) = (0, 0);
            for s in steps {
                x += s;
                prop_assert_eq!(rf.next_geq(x).unwrap(), wt.rnv(i, j, x).unwrap());
                k = (k + s / 4).clamp(1, j - i + 1);
                prop_assert_eq!(qf.seek(k).unwrap(), wt.rqq(i, j, k).unwrap());
            }
        }

        #[test]
        fn mrqq_windows_compose((seq, sigma) in instance(), a in 0usize..300, b in 0usize..300, p in 0usize..300, q in 0usize..300, r in 0usize..300) {
            let wt = WaveletTree::new(&seq, sigma).unwrap();
            let n = seq.len();
            let (i, j) = { let (x, y) = (a % n + 1, b % n + 1); (x.min(y), x.max(y)) };
            let len = j - i + 1;
            let mut ks = [p % len + 1, q % len + 1, r % len + 1];
            ks.sort_unstable();
            let [k, m, k2] = ks;
            let s = sorted(&seq, i, j);
            let mut expected: Vec<(usize, usize)> = Vec::new();
            for &v in &s[k - 1..k2] {
                match expected.last_mut() {
                    Some((sym, f)) if *sym == v => *f += 1,
                    _ => expected.push((v, 1)),
                }
            }
            let whole: Vec<_> = wt.mrqq(i, j, k, k2).unwrap().collect();
            prop_assert_eq!(&whole, &expected);
            // Splitting the window at m and merging equal neighbours gives the same answer.
            let mut merged: Vec<(usize, usize)> = wt.mrqq(i, j, k, m).unwrap().collect();
            if m < k2 {
                for (sym, f) in wt.mrqq(i, j, m + 1, k2).unwrap() {
                    match merged.last_mut() {
                        Some((s0, f0)) if *s0 == sym => *f0 += f,
                        _ => merged.push((sym, f)),
                    }
                }
            }
            prop_assert_eq!(merged, expected);
        }

        #[test]
        fn rint_agrees_with_rnv_route((seq, sigma) in instance(), r in proptest::collection::vec(0usize..300, 4)) {
            let wt = WaveletTree::new(&seq, sigma).unwrap();
            let n = seq.len();
            let iv = |x: usize, y: usize| { let (p, q) = (x % n + 1, y % n + 1); (p.min(q), p.max(q)) };
            let (a, b) = (iv(r[0], r[1]), iv(r[2], r[3]));
            let direct: Vec<(usize, usize, usize)> = wt.rint(&[a, b], 2, 1, sigma).unwrap().map(|(s, f)| (s, f[0], f[1])).collect();
            let via: Vec<_> = wt.rint_via_rnv(a, b).unwrap().collect();
            prop_assert_eq!(direct, via);
        }
    }
}
