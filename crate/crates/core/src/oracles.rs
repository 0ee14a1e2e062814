//! Brute-force reference implementations used by the test suites.
//!
//! Nothing here touches a succinct structure: every answer comes from
//! scanning plain vectors, sorting, or walking an explicit pointer tree.
//! Positions and ids are 1-based like the rest of the crate.

use std::collections::{BTreeMap, BTreeSet};

pub fn rank(seq: &[usize], c: usize, i: usize) -> usize {
    seq[..i].iter().filter(|&&x| x == c).count()
}

pub fn select(seq: &[usize], c: usize, j: usize) -> Option<usize> {
    if j == 0 {
        return None;
    }
    seq.iter()
        .enumerate()
        .filter(|&(_, &x)| x == c)
        .nth(j - 1)
        .map(|(p, _)| p + 1)
}

/// `S[i, j]` sorted; empty when `i > j`.
pub fn sorted_range(seq: &[usize], i: usize, j: usize) -> Vec<usize> {
    if i > j {
        return Vec::new();
    }
    let mut v = seq[i - 1..j].to_vec();
    v.sort_unstable();
    v
}

/// Distinct values of `S[i, j]` within `[ys, ye]` with frequencies.
pub fn tally(seq: &[usize], i: usize, j: usize, ys: usize, ye: usize) -> Vec<(usize, usize)> {
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    for v in sorted_range(seq, i, j) {
        if ys <= v && v <= ye {
            *out.entry(v).or_default() += 1;
        }
    }
    out.into_iter().collect()
}

/// `(symbol, freq, rank)` of the smallest value `>= x` in `S[i, j]`.
pub fn next_value(seq: &[usize], i: usize, j: usize, x: usize) -> Option<(usize, usize, usize)> {
    let s = sorted_range(seq, i, j);
    let p = s.iter().position(|&v| v >= x)?;
    Some((s[p], s.iter().filter(|&&v| v == s[p]).count(), p + 1))
}

/// Symbols present in at least `t` of the ranges, with per-range counts.
pub fn threshold_intersection(seq: &[usize], ranges: &[(usize, usize)], t: usize) -> Vec<(usize, Vec<usize>)> {
    let tallies: Vec<BTreeMap<usize, usize>> = ranges
        .iter()
        .map(|&(i, j)| tally(seq, i, j, 1, usize::MAX).into_iter().collect())
        .collect();
    let all: BTreeSet<usize> = tallies.iter().flat_map(|m| m.keys().copied()).collect();
    all.into_iter()
        .filter_map(|c| {
            let freqs: Vec<usize> = tallies.iter().map(|m| m.get(&c).copied().unwrap_or(0)).collect();
            (freqs.iter().filter(|&&f| f > 0).count() >= t).then_some((c, freqs))
        })
        .collect()
}

/// Alternation measure of an intersection instance.
///
/// `coverage[c]` is 0 when the `c`th distinct symbol of the sequence occurs
/// in every range, otherwise a 1-based index of some range missing it,
/// chosen to minimise the number of switches between neighbours. `alpha`
/// counts the zeros plus those switches.
#[derive(Clone, Debug)]
pub struct AlternationOracle {
    pub coverage: Vec<usize>,
    pub zeros: usize,
    pub switches: usize,
    pub alpha: usize,
}

impl AlternationOracle {
    pub fn new(seq: &[usize], ranges: &[(usize, usize)]) -> Self {
        let symbols: BTreeSet<usize> = seq.iter().copied().collect();
        let present: Vec<BTreeSet<usize>> = ranges
            .iter()
            .map(|&(i, j)| if i > j { BTreeSet::new() } else { seq[i - 1..j].iter().copied().collect() })
            .collect();
        let allowed: Vec<Vec<usize>> = symbols
            .iter()
            .map(|c| {
                let missing: Vec<usize> = (0..ranges.len()).filter(|&r| !present[r].contains(c)).map(|r| r + 1).collect();
                if missing.is_empty() {
                    vec![0]
                } else {
                    missing
                }
            })
            .collect();
        let k = ranges.len();
        let inf = usize::MAX / 2;
        // best[v]: fewest switches so far with the current symbol mapped to v.
        let mut best = vec![inf; k + 1];
        let mut choice: Vec<Vec<usize>> = Vec::with_capacity(allowed.len());
        for (idx, opts) in allowed.iter().enumerate() {
            let mut next = vec![inf; k + 1];
            let mut from = vec![0; k + 1];
            if idx == 0 {
                for &v in opts {
                    next[v] = 0;
                }
            } else {
                let (arg, low) = best.iter().enumerate().min_by_key(|&(_, &b)| b).map(|(a, &b)| (a, b)).unwrap();
                for &v in opts {
                    if best[v] <= low + 1 {
                        next[v] = best[v];
                        from[v] = v;
                    } else {
                        next[v] = low + 1;
                        from[v] = arg;
                    }
                }
            }
            choice.push(from);
            best = next;
        }
        let mut coverage = vec![0; allowed.len()];
        let mut switches = 0;
        if !allowed.is_empty() {
            let (mut v, &s) = best.iter().enumerate().min_by_key(|&(_, &b)| b).unwrap();
            switches = s;
            for idx in (0..allowed.len()).rev() {
                coverage[idx] = v;
                v = choice[idx][v];
            }
        }
        let zeros = allowed.iter().filter(|o| o[0] == 0).count();
        Self {
            coverage,
            zeros,
            switches,
            alpha: zeros + switches,
        }
    }
}

/// Occurrences of `pattern` in `text`, overlapping ones included.
pub fn occurrences(text: &[u8], pattern: &[u8]) -> usize {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len()).filter(|w| *w == pattern).count()
}

/// `(doc, tf)` for every document containing `pattern`.
pub fn doc_listing(docs: &[Vec<u8>], pattern: &[u8]) -> Vec<(usize, usize)> {
    docs.iter()
        .enumerate()
        .map(|(d, text)| (d + 1, occurrences(text, pattern)))
        .filter(|&(_, tf)| tf > 0)
        .collect()
}

/// Explicit XML-like tree in preorder. Node 0 is the root.
#[derive(Clone, Debug, Default)]
pub struct OracleTree {
    pub nodes: Vec<OracleNode>,
}

#[derive(Clone, Debug)]
pub struct OracleNode {
    /// `#text` for text children of mixed-content elements.
    pub tag: String,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Text of a leaf; always empty for inner nodes.
    pub text: Vec<u8>,
}

impl OracleTree {
    /// Appends a node under `parent`. Children must be added in document
    /// order and depth-first so that node ids stay in preorder.
    pub fn add(&mut self, parent: Option<usize>, tag: &str, text: &[u8]) -> usize {
        let id = self.nodes.len();
        self.nodes.push(OracleNode {
            tag: tag.to_string(),
            parent,
            children: Vec::new(),
            text: text.to_vec(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        id
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].children.is_empty()
    }

    /// Leaf node ids in preorder; leaf `i` (1-based) is document `i`.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_texts(&self) -> Vec<Vec<u8>> {
        self.leaves().into_iter().map(|v| self.nodes[v].text.clone()).collect()
    }

    /// Position of each node's opening parenthesis in the preorder
    /// parenthesis sequence.
    pub fn open_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.nodes.len()];
        let mut counter = 0;
        self.walk(0, &mut counter, &mut pos);
        pos
    }

    fn walk(&self, v: usize, counter: &mut usize, pos: &mut [usize]) {
        *counter += 1;
        pos[v] = *counter;
        for &c in &self.nodes[v].children {
            self.walk(c, counter, pos);
        }
        *counter += 1;
    }

    /// `[first, last]` leaf ids below `v`.
    pub fn leaf_range(&self, v: usize) -> (usize, usize) {
        let leaves = self.leaves();
        let below: Vec<usize> = (1..=leaves.len()).filter(|&i| self.is_ancestor_or_self(v, leaves[i - 1])).collect();
        (below[0], *below.last().unwrap())
    }

    pub fn is_ancestor_or_self(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.nodes[v].parent {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Lowest ancestor-or-self of leaf `i` satisfying `pred`.
    pub fn lowest_ancestor(&self, i: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
        let mut v = Some(self.leaves()[i - 1]);
        while let Some(x) = v {
            if pred(x) {
                return Some(x);
            }
            v = self.nodes[x].parent;
        }
        None
    }

    pub fn lowest_tagged(&self, i: usize, tag: &str) -> Option<usize> {
        self.lowest_ancestor(i, |v| self.nodes[v].tag == tag)
    }

    /// Occurrences of `pattern` in the leaves below `v`.
    pub fn freq(&self, v: usize, pattern: &[u8]) -> usize {
        let (l, r) = self.leaf_range(v);
        let leaves = self.leaves();
        (l..=r).map(|i| occurrences(&self.nodes[leaves[i - 1]].text, pattern)).sum()
    }

    /// Lowest `tag` units holding an occurrence in a leaf of `[dmin, dmax]`,
    /// in preorder.
    pub fn units_with(&self, tag: &str, pattern: &[u8], dmin: usize, dmax: usize) -> Vec<usize> {
        let leaves = self.leaves();
        let units: BTreeSet<usize> = (dmin.max(1)..=dmax.min(leaves.len()))
            .filter(|&i| occurrences(&self.nodes[leaves[i - 1]].text, pattern) > 0)
            .filter_map(|i| self.lowest_tagged(i, tag))
            .collect();
        units.into_iter().collect()
    }

    /// Serializes as the minimal XML accepted by the hierarchical index.
    pub fn to_xml(&self) -> String {
        let mut out = String::new();
        self.write_xml(0, &mut out);
        out
    }

    fn write_xml(&self, v: usize, out: &mut String) {
        let node = &self.nodes[v];
        if node.tag == "#text" {
            out.push_str(&String::from_utf8_lossy(&node.text));
            return;
        }
        out.push('<');
        out.push_str(&node.tag);
        out.push('>');
        if node.children.is_empty() {
            out.push_str(&String::from_utf8_lossy(&node.text));
        }
        for &c in &node.children {
            self.write_xml(c, out);
        }
        out.push_str("</");
        out.push_str(&node.tag);
        out.push('>');
    }
}

/// Lowercased alphanumeric runs.
pub fn tokens(text: &[u8]) -> Vec<String> {
    String::from_utf8_lossy(text)
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Term -> doc -> tf, built by plain counting.
pub fn postings(docs: &[Vec<u8>]) -> BTreeMap<String, BTreeMap<usize, usize>> {
    let mut out: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    for (d, text) in docs.iter().enumerate() {
        for w in tokens(text) {
            *out.entry(w).or_default().entry(d + 1).or_default() += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternation_counts_switches() {
        // Range 1 holds {1,2}, range 2 holds {3,4}: coverage 2 2 1 1, one switch.
        let seq = [1, 2, 3, 4];
        let a = AlternationOracle::new(&seq, &[(1, 2), (3, 4)]);
        assert_eq!((a.zeros, a.switches, a.alpha), (0, 1, 1));
        // Interleaved values force a switch at every step.
        let seq = [1, 3, 5, 2, 4, 6];
        let a = AlternationOracle::new(&seq, &[(1, 3), (4, 6)]);
        assert_eq!(a.alpha, 5);
        let seq = [1, 2, 1, 2];
        let a = AlternationOracle::new(&seq, &[(1, 2), (3, 4)]);
        assert_eq!((a.zeros, a.switches), (2, 0));
    }

    #[test]
    fn tree_helpers() {
        let mut t = OracleTree::default();
        let a = t.add(None, "a", b"");
        let b1 = t.add(Some(a), "b", b"x");
        let b2 = t.add(Some(a), "b", b"y");
        assert_eq!(t.open_positions(), vec![1, 2, 4]);
        assert_eq!(t.leaf_range(a), (1, 2));
        assert_eq!(t.lowest_tagged(2, "b"), Some(b2));
        assert_eq!(t.units_with("b", b"x", 1, 2), vec![b1]);
        assert_eq!(t.to_xml(), "<a><b>x</b><b>y</b></a>");
    }
}
