//! Document retrieval restricted to XML-like retrievable units.
//!
//! Text lives only at the leaves of the tree, and leaf `i` (in preorder) is
//! document `i` of an underlying [`DocIndex`]. The topology is stored as
//! balanced parentheses `P`, a wavelet tree `Tag` gives the tag of every
//! parenthesis, and for each tag `t` the parentheses of the `t` nodes form
//! their own sequence `P_t`. A node is named by the position of its opening
//! parenthesis in `P`.
//!
//! ```
//! use wvx::hierdoc::HierIndex;
//!
//! let h = HierIndex::from_xml(b"<a><b>x</b><b>y</b></a>").unwrap();
//! let b = h.tag_id("b").unwrap();
//! let second_b = h.expand_tag(b, 2).unwrap().unwrap();
//! assert_eq!(h.leaf_range(second_b).unwrap(), (2, 2));
//! assert_eq!(h.hdlist(b, b"y", None).unwrap(), vec![second_b]);
//! ```

mod parens;
pub mod xml;

use std::io::{Read, Write};

pub use parens::BalancedParens;

use crate::bitvec::BitVec;
use crate::docindex::DocIndex;
use crate::error::{check_range, Error, Result};
use crate::rangeops::RnvFinger;
use crate::ser;
use crate::wavelet::{NodeCursor, WaveletTree};

#[derive(Clone, Debug)]
pub struct HierIndex {
    tags: Vec<String>,
    parens: BalancedParens,
    tag_seq: WaveletTree,
    per_tag: Vec<BalancedParens>,
    /// Whether some `t` node has a `t` ancestor.
    nests: Vec<bool>,
    /// Leaves without any text.
    empty_leaves: BitVec,
    docs: DocIndex,
}

/// Retrievable units given by an explicit set of marked nodes.
#[derive(Clone, Debug)]
pub struct UnitMask {
    marks: BitVec,
    parens: BalancedParens,
}

impl HierIndex {
    pub fn from_xml(input: &[u8]) -> Result<Self> {
        Self::from_nodes(&xml::parse(input)?)
    }

    /// Builds from preorder nodes such as those produced by [`xml::parse`].
    pub fn from_nodes(nodes: &[xml::XmlNode]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut tags: Vec<String> = nodes.iter().map(|n| n.tag.clone()).collect();
        tags.sort_unstable();
        tags.dedup();
        let id_of = |tag: &str| tags.binary_search_by(|t| t.as_str().cmp(tag)).expect("tag listed") + 1;
        let mut bits = Vec::with_capacity(2 * nodes.len());
        let mut tag_seq = Vec::with_capacity(2 * nodes.len());
        let mut texts = Vec::new();
        // (node, next child to visit)
        let mut stack = vec![(0usize, 0usize)];
        bits.push(true);
        tag_seq.push(id_of(&nodes[0].tag));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&c) = nodes[v].children.get(*next) {
                *next += 1;
                if c >= nodes.len() || nodes[c].parent != Some(v) {
                    return Err(Error::Invalid(format!("node {c} is not a proper child of {v}")));
                }
                bits.push(true);
                tag_seq.push(id_of(&nodes[c].tag));
                stack.push((c, 0));
            } else {
                if nodes[v].children.is_empty() {
                    texts.push(nodes[v].text.clone());
                }
                bits.push(false);
                tag_seq.push(id_of(&nodes[v].tag));
                stack.pop();
            }
        }
        if bits.len() != 2 * nodes.len() {
            return Err(Error::Invalid("nodes do not form a single tree".into()));
        }
        let empty_leaves: BitVec = texts.iter().map(Vec::is_empty).collect();
        let parens = BalancedParens::new(bits.into_iter().collect())?;
        let tag_seq = WaveletTree::new(&tag_seq, tags.len())?;
        let per_tag = (1..=tags.len()).map(|t| tag_parens(&parens, &tag_seq, t)).collect::<Result<Vec<_>>>()?;
        let nests = per_tag.iter().map(|pt| pt.max_depth() > 1).collect();
        Ok(Self {
            tags,
            parens,
            tag_seq,
            per_tag,
            nests,
            empty_leaves,
            docs: DocIndex::new(texts)?,
        })
    }

    /// Number of distinct tags `τ`.
    pub fn tag_count(&self) -> usize {
        self.tags.len()
    }

    pub fn tag_id(&self, name: &str) -> Option<usize> {
        self.tags.binary_search_by(|t| t.as_str().cmp(name)).ok().map(|k| k + 1)
    }

    pub fn tag_name(&self, t: usize) -> Result<&str> {
        check_range("tag", t, 1, self.tags.len())?;
        Ok(&self.tags[t - 1])
    }

    /// Tag of the node opened at `p`.
    pub fn tag_of(&self, p: usize) -> Result<usize> {
        self.check_node(p)?;
        self.tag_seq.access(p)
    }

    pub fn node_count(&self) -> usize {
        self.parens.node_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.parens.leaf_count()
    }

    pub fn parens(&self) -> &BalancedParens {
        &self.parens
    }

    pub fn tag_sequence(&self) -> &WaveletTree {
        &self.tag_seq
    }

    pub fn tag_parens(&self, t: usize) -> Result<&BalancedParens> {
        check_range("tag", t, 1, self.tags.len())?;
        Ok(&self.per_tag[t - 1])
    }

    /// Whether tag `t` ever appears below another `t` node.
    pub fn tag_nests(&self, t: usize) -> Result<bool> {
        check_range("tag", t, 1, self.tags.len())?;
        Ok(self.nests[t - 1])
    }

    pub fn is_empty_leaf(&self, i: usize) -> Result<bool> {
        check_range("leaf", i, 1, self.leaf_count())?;
        Ok(self.empty_leaves.get(i))
    }

    /// The index over leaf texts; leaf `i` is document `i`.
    pub fn documents(&self) -> &DocIndex {
        &self.docs
    }

    fn check_node(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.parens.len() || !self.parens.is_open(p) {
            return Err(Error::NotANode(p));
        }
        Ok(())
    }

    /// Node of leaf `i`.
    pub fn leaf_node(&self, i: usize) -> Result<usize> {
        check_range("leaf", i, 1, self.leaf_count())?;
        Ok(self.parens.select_leaf(i).expect("leaf exists"))
    }

    /// Lowest ancestor-or-self of leaf `i` tagged `t`.
    pub fn expand_tag(&self, t: usize, i: usize) -> Result<Option<usize>> {
        check_range("tag", t, 1, self.tags.len())?;
        let j = self.leaf_node(i)?;
        let mut r = self.tag_seq.rank(t, j)?;
        if r == 0 {
            return Ok(None);
        }
        let pt = &self.per_tag[t - 1];
        if !pt.is_open(r) {
            match pt.enclose(pt.find_open(r)?)? {
                Some(o) => r = o,
                None => return Ok(None),
            }
        }
        self.tag_seq.select(t, r)
    }

    /// Leaf ids `[dl, dr]` below the node opened at `p`.
    pub fn leaf_range(&self, p: usize) -> Result<(usize, usize)> {
        self.check_node(p)?;
        self.parens.leaf_range(p)
    }

    pub fn parent(&self, p: usize) -> Result<Option<usize>> {
        self.parens.enclose(p)
    }

    /// Occurrences of `q` in the leaves below `p`.
    pub fn hdfreq(&self, q: &[u8], p: usize) -> Result<usize> {
        let (dl, dr) = self.leaf_range(p)?;
        let Some((sp, ep)) = self.docs.pattern_search(q)? else {
            return Ok(0);
        };
        self.docs.document_array().count(sp, ep, dl, dr)
    }

    fn leaf_bounds(&self, range: Option<(usize, usize)>) -> Result<(usize, usize)> {
        let (lo, hi) = range.unwrap_or((1, self.leaf_count()));
        if lo <= hi {
            check_range("first leaf", lo, 1, self.leaf_count())?;
            check_range("last leaf", hi, 1, self.leaf_count())?;
        }
        Ok((lo, hi))
    }

    /// First leaf of the next `t` node opening after position `j` of `P`.
    fn next_unit_leaf(&self, t: usize, j: usize) -> Result<usize> {
        let pt = &self.per_tag[t - 1];
        let r = self.tag_seq.rank(t, j)?;
        let Some(next) = pt.select_open(pt.rank_open(r) + 1) else {
            return Ok(usize::MAX);
        };
        let p = self.tag_seq.select(t, next)?.expect("tag occurrence exists");
        Ok(self.parens.rank_leaf(p - 1) + 1)
    }

    /// Lowest `t` units holding an occurrence of `q` in a leaf of `range`,
    /// in preorder. Leaves with no `t` ancestor are skipped.
    pub fn hdlist(&self, t: usize, q: &[u8], range: Option<(usize, usize)>) -> Result<Vec<usize>> {
        check_range("tag", t, 1, self.tags.len())?;
        let (lo, hi) = self.leaf_bounds(range)?;
        let Some((sp, ep)) = self.docs.pattern_search(q)? else {
            return Ok(Vec::new());
        };
        let mut finger = RnvFinger::new(self.docs.document_array(), sp, ep)?;
        let mut out = Vec::new();
        let mut x = lo;
        while x <= hi {
            let Some(hit) = finger.next_geq(x)? else {
                break;
            };
            let d = hit.symbol;
            if d > hi {
                break;
            }
            x = d + 1;
            if let Some(p) = self.expand_tag(t, d)? {
                out.push(p);
                let (_, dr) = self.leaf_range(p)?;
                x = dr + 1;
                if self.nests[t - 1] {
                    // A nested unit may start before this one ends.
                    x = x.min(self.next_unit_leaf(t, self.leaf_node(d)?)?);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Units tagged `t` holding both `q1` and `q2`, in preorder, with the
    /// frequency of each pattern below the unit. `range` is first widened to
    /// cover the lowest `t` units around its two end leaves.
    pub fn hdint(&self, t: usize, q1: &[u8], q2: &[u8], range: Option<(usize, usize)>) -> Result<Vec<(usize, usize, usize)>> {
        check_range("tag", t, 1, self.tags.len())?;
        let (mut lo, mut hi) = self.leaf_bounds(range)?;
        let (Some(r1), Some(r2)) = (self.docs.pattern_search(q1)?, self.docs.pattern_search(q2)?) else {
            return Ok(Vec::new());
        };
        if lo > hi {
            return Ok(Vec::new());
        }
        if let Some(p) = self.expand_tag(t, lo)? {
            lo = self.leaf_range(p)?.0;
        }
        if let Some(p) = self.expand_tag(t, hi)? {
            hi = self.leaf_range(p)?.1;
        }
        if self.nests[t - 1] {
            let a = self.hdlist(t, q1, Some((lo, hi)))?;
            let b = self.hdlist(t, q2, Some((lo, hi)))?;
            let mut out = Vec::new();
            for p in a {
                if b.binary_search(&p).is_ok() {
                    out.push((p, self.hdfreq(q1, p)?, self.hdfreq(q2, p)?));
                }
            }
            return Ok(out);
        }
        let mut out = Vec::new();
        let d = self.docs.document_array();
        self.hdint_rec(t, d.root(), r1, r2, (lo, hi), &mut out)?;
        Ok(out)
    }

    fn hdint_rec(
        &self,
        t: usize,
        node: NodeCursor,
        (i1, j1): (usize, usize),
        (i2, j2): (usize, usize),
        (lo, hi): (usize, usize),
        out: &mut Vec<(usize, usize, usize)>,
    ) -> Result<()> {
        if i1 > j1 || i2 > j2 || lo > hi {
            return Ok(());
        }
        crate::stats::visit();
        let wt = self.docs.document_array();
        // Every document owns at least its terminator, so codes are documents.
        if node.is_leaf() {
            let doc = wt.symbol_of(node.code_range().0);
            if let Some(p) = self.expand_tag(t, doc)? {
                out.push((p, j1 + 1 - i1, j2 + 1 - i2));
            }
            return Ok(());
        }
        let (left, right) = wt.children(&node);
        let (l1, r1) = wt.split(&node, i1, j1);
        let (l2, r2) = wt.split(&node, i2, j2);
        let (llo, lhi) = (lo.max(left.code_range().0), hi.min(left.code_range().1));
        let (rlo, rhi) = (lo.max(right.code_range().0), hi.min(right.code_range().1));
        let mut unit = None;
        if llo <= lhi && rlo <= rhi {
            // A unit straddling the split must be handled here, whole.
            if let Some(p) = self.expand_tag(t, lhi)? {
                if Some(p) == self.expand_tag(t, rlo)? {
                    let (dl, dr) = self.leaf_range(p)?;
                    let f1 = wt.count_codes(&node, i1, j1, dl, dr);
                    let f2 = wt.count_codes(&node, i2, j2, dl, dr);
                    unit = Some((p, dl, dr, f1, f2));
                }
            }
        }
        let (lhi, rlo) = match unit {
            Some((_, dl, dr, ..)) => (lhi.min(dl - 1), rlo.max(dr + 1)),
            None => (lhi, rlo),
        };
        self.hdint_rec(t, left, l1, l2, (llo, lhi), out)?;
        if let Some((p, _, _, f1, f2)) = unit {
            if f1 > 0 && f2 > 0 {
                out.push((p, f1, f2));
            }
        }
        self.hdint_rec(t, right, r1, r2, (rlo, rhi), out)
    }

    /// Range of leaves of the lowest marked ancestor-or-self of leaf `i`.
    pub fn expand_marked(&self, mask: &UnitMask, i: usize) -> Result<Option<(usize, usize)>> {
        if mask.marks.len() != self.parens.len() {
            return Err(Error::Invalid("mask does not belong to this tree".into()));
        }
        let j = self.leaf_node(i)?;
        let r = mask.marks.rank1(j);
        if r == 0 {
            return Ok(None);
        }
        let q = if mask.parens.is_open(r) {
            r
        } else {
            match mask.parens.enclose(mask.parens.find_open(r)?)? {
                Some(o) => o,
                None => return Ok(None),
            }
        };
        let p = mask.marks.select1(q).expect("mark exists");
        Ok(Some(self.leaf_range(p)?))
    }

    pub fn space_bits(&self) -> (usize, usize, usize) {
        (
            self.parens.size_bits(),
            self.tag_seq.level_bits() + self.tag_seq.aux_bits() + self.tag_seq.alphabet_bits(),
            self.per_tag.iter().map(BalancedParens::size_bits).sum(),
        )
    }

    pub fn write_to(&self, w: &mut impl Write, store_text: bool) -> Result<()> {
        w.write_all(b"WVH1")?;
        ser::put_usize(w, self.tags.len())?;
        for t in &self.tags {
            ser::put_bytes(w, t.as_bytes())?;
        }
        self.parens.write_to(w)?;
        self.tag_seq.write_to(w)?;
        for pt in &self.per_tag {
            pt.write_to(w)?;
        }
        self.empty_leaves.write_to(w, false)?;
        self.docs.write_to(w, store_text)
    }

    /// `leaf_texts` must be supplied when the index was saved without text.
    pub fn read_from(r: &mut impl Read, leaf_texts: Option<Vec<Vec<u8>>>) -> Result<Self> {
        ser::expect_magic(r, b"WVH1")?;
        let count = ser::get_usize(r)?;
        if count == 0 || count > ser::MAX_LEN {
            return Err(Error::Format(format!("bad tag count {count}")));
        }
        let mut tags = Vec::new();
        for _ in 0..count {
            let raw = ser::get_bytes(r, 1 << 20)?;
            tags.push(String::from_utf8(raw).map_err(|_| Error::Format("tag name is not UTF-8".into()))?);
        }
        if tags.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format("tag names are not sorted".into()));
        }
        let parens = BalancedParens::read_from(r)?;
        let tag_seq = WaveletTree::read_from(r)?;
        if tag_seq.len() != parens.len() || tag_seq.sigma() != count {
            return Err(Error::Format("tag sequence does not match the tree".into()));
        }
        let mut per_tag = Vec::with_capacity(count);
        for t in 1..=count {
            let pt = BalancedParens::read_from(r)?;
            if pt.bits() != tag_parens(&parens, &tag_seq, t)?.bits() {
                return Err(Error::Format(format!("parentheses of tag {t} disagree with the tree")));
            }
            per_tag.push(pt);
        }
        let empty_leaves = BitVec::read_from(r)?;
        let docs = DocIndex::read_from(r, leaf_texts)?;
        if empty_leaves.len() != parens.leaf_count() || docs.docs() != parens.leaf_count() {
            return Err(Error::Format("leaf count mismatch".into()));
        }
        let nests = per_tag.iter().map(|pt| pt.max_depth() > 1).collect();
        Ok(Self {
            tags,
            parens,
            tag_seq,
            per_tag,
            nests,
            empty_leaves,
            docs,
        })
    }
}

/// The parentheses of `P` at positions tagged `t`.
pub fn tag_parens(parens: &BalancedParens, tag_seq: &WaveletTree, t: usize) -> Result<BalancedParens> {
    let mut bits = Vec::new();
    let mut j = 1;
    while let Some(p) = tag_seq.select(t, j)? {
        bits.push(parens.is_open(p));
        j += 1;
    }
    BalancedParens::new(bits.into_iter().collect())
}

impl UnitMask {
    /// Marks the given nodes of `h` as retrievable units.
    pub fn from_nodes(h: &HierIndex, nodes: &[usize]) -> Result<Self> {
        let mut marks = vec![false; h.parens.len()];
        for &p in nodes {
            h.check_node(p)?;
            marks[p - 1] = true;
            marks[h.parens.find_close(p)? - 1] = true;
        }
        let bits: Vec<bool> = marks.iter().enumerate().filter(|(_, &m)| m).map(|(k, _)| h.parens.is_open(k + 1)).collect();
        Ok(Self {
            marks: marks.into_iter().collect(),
            parens: BalancedParens::new(bits.into_iter().collect())?,
        })
    }

    /// All nodes tagged `t`.
    pub fn for_tag(h: &HierIndex, t: usize) -> Result<Self> {
        check_range("tag", t, 1, h.tags.len())?;
        let mut nodes = Vec::new();
        let mut j = 1;
        while let Some(p) = h.tag_seq.select(t, j)? {
            if h.parens.is_open(p) {
                nodes.push(p);
            }
            j += 1;
        }
        Self::from_nodes(h, &nodes)
    }

    pub fn marked(&self) -> usize {
        self.marks.count_ones() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::OracleTree;
    use proptest::prelude::*;

    const SAMPLE: &[u8] = b"<a><b>x</b><b>y</b></a>";

    #[test]
    fn sample_shape() {
        let h = HierIndex::from_xml(SAMPLE).unwrap();
        assert_eq!(h.tag_count(), 2);
        assert_eq!(h.leaf_count(), 2);
        assert_eq!(h.parens().bits().iter().map(|b| if b { '(' } else { ')' }).collect::<String>(), "(()())");
        let (a, b) = (h.tag_id("a").unwrap(), h.tag_id("b").unwrap());
        assert_eq!(h.expand_tag(b, 2).unwrap(), Some(4));
        assert_eq!(h.expand_tag(b, 1).unwrap(), Some(2));
        assert_eq!(h.expand_tag(a, 2).unwrap(), Some(1));
        assert_eq!(h.leaf_range(1).unwrap(), (1, 2));
        assert_eq!(h.leaf_range(2).unwrap(), (1, 1));
        assert!(matches!(h.leaf_range(3), Err(Error::NotANode(3))));
        assert_eq!(h.hdfreq(b"y", 1).unwrap(), 1);
        assert_eq!(h.hdfreq(b"x", 4).unwrap(), 0);
        assert_eq!(h.hdfreq(b"z", 1).unwrap(), 0);
    }

    #[test]
    fn sample_listing_and_intersection() {
        let h = HierIndex::from_xml(b"<a><b>xy</b><b>y</b></a>").unwrap();
        let (a, b) = (h.tag_id("a").unwrap(), h.tag_id("b").unwrap());
        assert_eq!(h.hdlist(b, b"y", None).unwrap(), vec![2, 4]);
        assert_eq!(h.hdlist(a, b"y", None).unwrap(), vec![1]);
        assert!(h.hdlist(b, b"q", None).unwrap().is_empty());
        let h = HierIndex::from_xml(SAMPLE).unwrap();
        assert_eq!(h.hdint(a, b"x", b"y", None).unwrap(), vec![(1, 1, 1)]);
        assert!(h.hdint(b, b"x", b"y", None).unwrap().is_empty());
        assert_eq!(h.hdint(b, b"x", b"x", None).unwrap(), vec![(2, 1, 1)]);
    }

    #[test]
    fn untagged_leaves_are_skipped() {
        let h = HierIndex::from_xml(b"<a><b>x</b><b>y</b><c>z</c></a>").unwrap();
        let b = h.tag_id("b").unwrap();
        assert_eq!(h.expand_tag(b, 3).unwrap(), None);
        assert_eq!(h.hdlist(b, b"z", None).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn marked_units() {
        let h = HierIndex::from_xml(SAMPLE).unwrap();
        let root = UnitMask::from_nodes(&h, &[1]).unwrap();
        assert_eq!(h.expand_marked(&root, 2).unwrap(), Some((1, 2)));
        let bs = UnitMask::from_nodes(&h, &[2, 4]).unwrap();
        assert_eq!(h.expand_marked(&bs, 2).unwrap(), Some((2, 2)));
        let first = UnitMask::from_nodes(&h, &[2]).unwrap();
        assert_eq!(h.expand_marked(&first, 2).unwrap(), None);
    }

    #[test]
    fn nested_units_are_all_found() {
        // s1 holds leaves 1 and 4; s2 (inside s1) holds leaves 2 and 3.
        let h = HierIndex::from_xml(b"<s><p>k</p><s><p>k</p><p>k</p></s><p>k</p></s>").unwrap();
        let s = h.tag_id("s").unwrap();
        assert!(h.tag_nests(s).unwrap());
        assert_eq!(h.hdlist(s, b"k", None).unwrap(), vec![1, 4]);
        assert_eq!(h.hdint(s, b"k", b"k", None).unwrap(), vec![(1, 4, 4), (4, 2, 2)]);
    }

    #[test]
    fn serialization_round_trip() {
        let h = HierIndex::from_xml(b"<r><s><t>ab</t><t>b</t></s><s>ba<t/></s></r>").unwrap();
        let mut buf = Vec::new();
        h.write_to(&mut buf, true).unwrap();
        let back = HierIndex::read_from(&mut buf.as_slice(), None).unwrap();
        let s = back.tag_id("s").unwrap();
        assert_eq!(back.hdlist(s, b"b", None).unwrap(), h.hdlist(s, b"b", None).unwrap());
        assert!(back.is_empty_leaf(4).unwrap());
        assert_eq!(back.tag_name(back.tag_of(9).unwrap()).unwrap(), "#text");
    }

    fn random_tree() -> impl Strategy<Value = OracleTree> {
        (proptest::collection::vec((0usize..1000, 0usize..4, 0usize..3, proptest::collection::vec(b'a'..=b'c', 0..4)), 1..40))
            .prop_map(|spec| {
                let mut t = OracleTree::default();
                let tags = ["s", "p", "q", "s"];
                t.add(None, "s", b"");
                let mut open = vec![0usize];
                let mut texts = Vec::new();
                for (pick, tag, depth, text) in spec {
                    let parent = open[pick % open.len()];
                    let id = t.add(Some(parent), tags[tag], b"");
                    texts.push((id, text));
                    if depth > 0 {
                        open.push(id);
                    }
                    // Keep ids in preorder: only allow attaching below the newest path.
                    open.retain(|&v| t.is_ancestor_or_self(v, id));
                }
                for (id, text) in texts {
                    if t.is_leaf(id) {
                        t.nodes[id].text = text;
                    }
                }
                t
            })
    }

    proptest! {
        #[test]
        fn agrees_with_tree_walks(tree in random_tree(), q in proptest::collection::vec(b'a'..=b'c', 1..3)) {
            let h = HierIndex::from_xml(tree.to_xml().as_bytes()).unwrap();
            let pos = tree.open_positions();
            let leaves = tree.leaves().len();
            prop_assert_eq!(h.leaf_count(), leaves);
            for name in ["s", "p", "q"] {
                let Some(t) = h.tag_id(name) else { continue };
                for i in 1..=leaves {
                    prop_assert_eq!(h.expand_tag(t, i).unwrap(), tree.lowest_tagged(i, name).map(|v| pos[v]));
                }
                let expected: Vec<usize> = tree.units_with(name, &q, 1, leaves).into_iter().map(|v| pos[v]).collect();
                prop_assert_eq!(h.hdlist(t, &q, None).unwrap(), expected);
                let mask = UnitMask::for_tag(&h, t).unwrap();
                for i in 1..=leaves {
                    let via_tag = h.expand_tag(t, i).unwrap().map(|p| h.leaf_range(p).unwrap());
                    prop_assert_eq!(h.expand_marked(&mask, i).unwrap(), via_tag);
                }
            }
        }
    }
}
