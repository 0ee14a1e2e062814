//! Inverted index answering both ranked and docid-ordered access from one
//! wavelet tree.
//!
//! Each postings list `L_t` is sorted by decreasing term frequency (ties by
//! increasing document id) and all lists are concatenated into one sequence
//! `L` stored as a wavelet tree over document ids. A sparse bitmap marks the
//! start `s_t` of every list. Reading `L[s_t..]` gives the frequency order;
//! range quantiles over the same interval give the docid order `F_t`.
//!
//! Term frequencies are not stored per entry. For each term, `T_t` marks the
//! distinct tf values and `R_t` marks the first entry of each run of equal
//! tf, so the tf of entry `i` is `select1(T_t, v_t - rank1(R_t, i) + 1)`.
//!
//! ```
//! use wvx::invindex::{InvIndex, TermRange};
//!
//! let docs = [b"to be or not to be".to_vec(), b"be quick".to_vec()];
//! let ix = InvIndex::from_docs(&docs, None).unwrap();
//! let be = ix.term_id("be").unwrap();
//! assert_eq!(ix.lt_get(be, 1).unwrap(), (1, 2));
//! assert_eq!(ix.ft_get(TermRange::single(be), 2).unwrap(), 2);
//! assert_eq!(ix.persin_prefix(be, 2).unwrap(), 1);
//! ```

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::bitvec::{BitVec, SparseBitVec};
use crate::error::{check_range, Error, Result};
use crate::rangeops::{QuantileFinger, RnvFinger};
use crate::ser;
use crate::wavelet::WaveletTree;

/// Contiguous block of term ids `[first, last]`, such as all the variants
/// of one stem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermRange {
    pub first: usize,
    pub last: usize,
}

impl TermRange {
    pub fn new(first: usize, last: usize) -> Self {
        Self { first, last }
    }

    pub fn single(t: usize) -> Self {
        Self { first: t, last: t }
    }
}

#[derive(Clone, Debug)]
struct TfRuns {
    /// Distinct tf values present, length = max tf.
    values: BitVec,
    /// First entry of each run of equal tf, length = df.
    starts: BitVec,
}

/// Stem key, term and postings of one term during construction.
type Entry = (String, String, Vec<(usize, usize)>);

#[derive(Clone, Debug)]
pub struct InvIndex {
    terms: Vec<String>,
    /// Grouping key of each term; equal to the term unless a stem map was given.
    keys: Vec<String>,
    m: usize,
    total_tokens: usize,
    lists: WaveletTree,
    bounds: SparseBitVec,
    tf: Vec<TfRuns>,
}

/// Lowercased runs of alphanumeric characters.
pub fn tokenize(text: &[u8]) -> Vec<String> {
    let text = String::from_utf8_lossy(text);
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            cur.extend(ch.to_lowercase());
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

impl InvIndex {
    /// Tokenizes `docs` and indexes every term. With `stems`, terms mapped
    /// to the same stem get adjacent ids so that they form a [`TermRange`].
    pub fn from_docs(docs: &[Vec<u8>], stems: Option<&BTreeMap<String, String>>) -> Result<Self> {
        let mut counts: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
        let mut total = 0;
        for (d, text) in docs.iter().enumerate() {
            for w in tokenize(text) {
                *counts.entry(w).or_default().entry(d + 1).or_default() += 1;
                total += 1;
            }
        }
        let mut entries: Vec<Entry> = counts
            .into_iter()
            .map(|(term, per_doc)| {
                let key = stems.and_then(|s| s.get(&term)).cloned().unwrap_or_else(|| term.clone());
                (key, term, per_doc.into_iter().collect())
            })
            .collect();
        entries.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let mut keys = Vec::with_capacity(entries.len());
        let mut terms = Vec::with_capacity(entries.len());
        let mut postings = Vec::with_capacity(entries.len());
        for (k, t, p) in entries {
            keys.push(k);
            terms.push(t);
            postings.push(p);
        }
        Self::from_parts(terms, keys, docs.len(), postings, total)
    }

    /// Builds from explicit `(doc, tf)` postings. Terms must be strictly
    /// increasing; list order does not matter.
    pub fn from_postings(terms: Vec<String>, m: usize, postings: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("terms must be strictly increasing".into()));
        }
        let total = postings.iter().flatten().map(|&(_, tf)| tf).sum();
        Self::from_parts(terms.clone(), terms, m, postings, total)
    }

    fn from_parts(
        terms: Vec<String>,
        keys: Vec<String>,
        m: usize,
        mut postings: Vec<Vec<(usize, usize)>>,
        total_tokens: usize,
    ) -> Result<Self> {
        if terms.len() != postings.len() {
            return Err(Error::Invalid("one postings list per term is required".into()));
        }
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut seq = Vec::new();
        let mut starts = Vec::with_capacity(terms.len());
        let mut tf = Vec::with_capacity(terms.len());
        for (t, list) in postings.iter_mut().enumerate() {
            if list.is_empty() {
                return Err(Error::Invalid(format!("term `{}` has an empty list", terms[t])));
            }
            list.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let mut docs: Vec<usize> = list.iter().map(|&(d, _)| d).collect();
            docs.sort_unstable();
            if docs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("term `{}` lists a document twice", terms[t])));
            }
            for &(d, f) in list.iter() {
                check_range("document", d, 1, m)?;
                check_range("term frequency", f, 1, usize::MAX)?;
            }
            starts.push(seq.len() + 1);
            seq.extend(list.iter().map(|&(d, _)| d));
            let max_tf = list[0].1;
            tf.push(TfRuns {
                values: BitVec::from_ones(max_tf, list.iter().map(|&(_, f)| f).collect::<std::collections::BTreeSet<_>>()),
                starts: (0..list.len()).map(|i| i == 0 || list[i].1 != list[i - 1].1).collect(),
            });
        }
        let bounds = SparseBitVec::from_positions(seq.len(), &starts)?;
        let lists = WaveletTree::new(&seq, m)?;
        Ok(Self {
            terms,
            keys,
            m,
            total_tokens,
            lists,
            bounds,
            tf,
        })
    }

    /// Vocabulary size `ν`.
    pub fn vocab_len(&self) -> usize {
        self.terms.len()
    }

    pub fn docs(&self) -> usize {
        self.m
    }

    /// Total postings `n = Σ df_t`.
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// Tokens in the collection, or the sum of tf for hand-built indexes.
    pub fn total_tokens(&self) -> usize {
        self.total_tokens
    }

    pub fn lists(&self) -> &WaveletTree {
        &self.lists
    }

    pub fn term(&self, t: usize) -> Result<&str> {
        self.check_term(t)?;
        Ok(&self.terms[t - 1])
    }

    pub fn term_id(&self, term: &str) -> Option<usize> {
        self.terms.iter().position(|x| x == term).map(|k| k + 1)
    }

    /// Resolves `spec`: `prefix*` selects every term whose stem key starts
    /// with `prefix`; otherwise every term whose key equals `spec`.
    pub fn stem_range(&self, spec: &str) -> Option<TermRange> {
        let (first, last) = match spec.strip_suffix('*') {
            Some(prefix) => (
                self.keys.partition_point(|k| k.as_str() < prefix),
                self.keys.partition_point(|k| k.as_str() < prefix || k.starts_with(prefix)),
            ),
            None => (
                self.keys.partition_point(|k| k.as_str() < spec),
                self.keys.partition_point(|k| k.as_str() <= spec),
            ),
        };
        (first < last).then(|| TermRange::new(first + 1, last))
    }

    fn check_term(&self, t: usize) -> Result<()> {
        check_range("term", t, 1, self.terms.len())
    }

    fn check_doc(&self, d: usize) -> Result<()> {
        check_range("document", d, 1, self.m)
    }

    fn start(&self, t: usize) -> usize {
        self.bounds.select1(t).expect("term exists")
    }

    /// Positions `[s_t, s_{t'+1} - 1]` of `L` covered by the range.
    pub fn interval(&self, range: TermRange) -> Result<(usize, usize)> {
        self.check_term(range.first)?;
        check_range("last term", range.last, range.first, self.terms.len())?;
        let end = self.bounds.select1(range.last + 1).unwrap_or(self.len() + 1) - 1;
        Ok((self.start(range.first), end))
    }

    pub fn df(&self, t: usize) -> Result<usize> {
        let (s, e) = self.interval(TermRange::single(t))?;
        Ok(e + 1 - s)
    }

    /// Term owning position `i` of `L`.
    pub fn term_at(&self, i: usize) -> Result<usize> {
        check_range("list position", i, 1, self.len())?;
        Ok(self.bounds.rank1(i))
    }

    /// tf of the `i`th entry of `L_t`.
    pub fn tf_at(&self, t: usize, i: usize) -> Result<usize> {
        check_range("list offset", i, 1, self.df(t)?)?;
        let runs = &self.tf[t - 1];
        let v = runs.values.count_ones();
        Ok(runs.values.select1(v - runs.starts.rank1(i) + 1).expect("run value exists"))
    }

    /// `(doc, tf)` of the `i`th entry of `L_t`.
    pub fn lt_get(&self, t: usize, i: usize) -> Result<(usize, usize)> {
        let tf = self.tf_at(t, i)?;
        Ok((self.lists.access(self.start(t) + i - 1)?, tf))
    }

    /// Entries `i..=i2` of `L_t` as `(doc, tf)`, in increasing doc order.
    pub fn lt_segment(&self, t: usize, i: usize, i2: usize) -> Result<Vec<(usize, usize)>> {
        let df = self.df(t)?;
        check_range("segment start", i, 1, df)?;
        check_range("segment end", i2, i, df)?;
        let s = self.start(t);
        self.lists
            .report(s + i - 1, s + i2 - 1, 1, self.m)?
            .map(|(d, _)| {
                let off = self.contains(t, d)?.expect("listed doc is present");
                Ok((d, self.tf_at(t, off)?))
            })
            .collect()
    }

    /// `k`th smallest document of `F_{t,t'}`.
    pub fn ft_get(&self, range: TermRange, k: usize) -> Result<usize> {
        let (s, e) = self.interval(range)?;
        Ok(self.lists.rqq(s, e, k)?.0)
    }

    /// `F[k..=k2]` as distinct docs with multiplicity (always 1 for a single term).
    pub fn ft_segment(&self, range: TermRange, k: usize, k2: usize) -> Result<Vec<(usize, usize)>> {
        let (s, e) = self.interval(range)?;
        Ok(self.lists.mrqq(s, e, k, k2)?.collect())
    }

    /// Distinct documents of the range with their number of entries.
    pub fn distinct_docs(&self, range: TermRange) -> Result<Vec<(usize, usize)>> {
        let (s, e) = self.interval(range)?;
        Ok(self.lists.report(s, e, 1, self.m)?.collect())
    }

    pub fn ft_iter(&self, range: TermRange) -> Result<FtIter<'_>> {
        let (s, e) = self.interval(range)?;
        Ok(FtIter {
            quantiles: QuantileFinger::new(&self.lists, s, e)?,
            next_values: RnvFinger::new(&self.lists, s, e)?,
            len: e + 1 - s,
            rank: 0,
            doc: 0,
            last_x: 0,
            exhausted: false,
        })
    }

    /// Documents within `docs` (default all) present in at least
    /// `threshold` of the ranges, with per-range entry counts.
    pub fn intersect(
        &self,
        ranges: &[TermRange],
        threshold: usize,
        docs: Option<(usize, usize)>,
    ) -> Result<Vec<(usize, Vec<usize>)>> {
        let intervals = ranges.iter().map(|&r| self.interval(r)).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = docs.unwrap_or((1, self.m));
        if lo <= hi {
            self.check_doc(lo)?;
            self.check_doc(hi)?;
        }
        Ok(self.lists.rint(&intervals, threshold, lo, hi)?.collect())
    }

    /// Terms occurring in document `d`, increasing.
    pub fn local_vocab(&self, d: usize) -> Result<Vec<usize>> {
        self.check_doc(d)?;
        let mut out = Vec::new();
        let mut i = 1;
        while let Some(p) = self.lists.select(d, i)? {
            out.push(self.bounds.rank1(p));
            i += 1;
        }
        Ok(out)
    }

    /// Offset of `d` within `L_t`, if listed.
    pub fn contains(&self, t: usize, d: usize) -> Result<Option<usize>> {
        self.check_doc(d)?;
        let (s, e) = self.interval(TermRange::single(t))?;
        let before = self.lists.rank(d, s - 1)?;
        if self.lists.rank(d, e)? == before {
            return Ok(None);
        }
        let p = self.lists.select(d, before + 1)?.expect("occurrence exists");
        Ok(Some(p - s + 1))
    }

    /// Length of the prefix of `L_t` whose tf values are all at least `f`.
    pub fn persin_prefix(&self, t: usize, f: usize) -> Result<usize> {
        let df = self.df(t)?;
        check_range("tf threshold", f, 1, usize::MAX)?;
        let runs = &self.tf[t - 1];
        let v = runs.values.count_ones();
        let below = runs.values.rank1(f.min(runs.values.len() + 1) - 1);
        let r = v - below;
        Ok(match r {
            0 => 0,
            r if r == v => df,
            r => runs.starts.select1(r + 1).expect("run exists") - 1,
        })
    }

    /// Adds the tf of every document in the Persin prefix of `L_t` to the
    /// doc-sorted accumulator.
    pub fn persin_round(&self, acc: &[(usize, usize)], t: usize, f: usize) -> Result<Vec<(usize, usize)>> {
        if acc.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Invalid("accumulator must be sorted by document".into()));
        }
        let p = self.persin_prefix(t, f)?;
        let fresh = if p == 0 { Vec::new() } else { self.lt_segment(t, 1, p)? };
        let mut out = Vec::with_capacity(acc.len() + fresh.len());
        let (mut a, mut b) = (acc.iter().peekable(), fresh.into_iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&y)) if x.0 == y.0 => {
                    out.push((x.0, x.1 + y.1));
                    a.next();
                    b.next();
                }
                (Some(&&x), Some(&y)) if x.0 < y.0 => {
                    out.push(x);
                    a.next();
                }
                (_, Some(&y)) => {
                    out.push(y);
                    b.next();
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, None) => break,
            }
        }
        Ok(out)
    }

    /// Σ tf of `d` over the terms of the range.
    pub fn sum_tf_stemmed(&self, range: TermRange, d: usize) -> Result<usize> {
        self.check_doc(d)?;
        let (s, e) = self.interval(range)?;
        let mut j = self.lists.rank(d, s - 1)? + 1;
        let mut sum = 0;
        while let Some(p) = self.lists.select(d, j)? {
            if p > e {
                break;
            }
            let t = self.bounds.rank1(p);
            sum += self.tf_at(t, p - self.start(t) + 1)?;
            j += 1;
        }
        Ok(sum)
    }

    /// Bits used by `L`, the list boundaries and all tf encodings.
    pub fn space_bits(&self) -> (usize, usize, usize) {
        (
            self.lists.level_bits() + self.lists.aux_bits() + self.lists.alphabet_bits(),
            self.bounds.size_bits(),
            self.tf
                .iter()
                .map(|r| r.values.payload_bits() + r.values.aux_bits() + r.starts.payload_bits() + r.starts.aux_bits())
                .sum(),
        )
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        w.write_all(b"WVI1")?;
        ser::put_usize(w, self.m)?;
        ser::put_usize(w, self.total_tokens)?;
        ser::put_usize(w, self.terms.len())?;
        for (t, k) in self.terms.iter().zip(&self.keys) {
            ser::put_bytes(w, t.as_bytes())?;
            ser::put_bytes(w, k.as_bytes())?;
        }
        self.lists.write_to(w)?;
        self.bounds.write_to(w)?;
        for runs in &self.tf {
            runs.values.write_to(w, false)?;
            runs.starts.write_to(w, false)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        ser::expect_magic(r, b"WVI1")?;
        let m = ser::get_usize(r)?;
        let total_tokens = ser::get_usize(r)?;
        let nu = ser::get_usize(r)?;
        if nu == 0 || nu > ser::MAX_LEN {
            return Err(Error::Format(format!("bad vocabulary size {nu}")));
        }
        let string = |r: &mut dyn Read| -> Result<String> {
            let mut r = r;
            String::from_utf8(ser::get_bytes(&mut r, 1 << 20)?).map_err(|_| Error::Format("term is not UTF-8".into()))
        };
        let mut terms = Vec::new();
        let mut keys = Vec::new();
        for _ in 0..nu {
            terms.push(string(r)?);
            keys.push(string(r)?);
        }
        let lists = WaveletTree::read_from(r)?;
        let bounds = SparseBitVec::read_from(r)?;
        if lists.sigma() != m || bounds.universe() != lists.len() || bounds.count_ones() != nu {
            return Err(Error::Format("postings do not match the vocabulary".into()));
        }
        let mut tf = Vec::with_capacity(nu);
        for t in 1..=nu {
            let values = BitVec::read_from(r)?;
            let starts = BitVec::read_from(r)?;
            let df = bounds.select1(t + 1).unwrap_or(lists.len() + 1) - bounds.select1(t).expect("term exists");
            if starts.len() != df || values.count_ones() != starts.count_ones() || !starts.get(1) {
                return Err(Error::Format(format!("tf encoding of term {t} is inconsistent")));
            }
            tf.push(TfRuns { values, starts });
        }
        Ok(Self {
            terms,
            keys,
            m,
            total_tokens,
            lists,
            bounds,
            tf,
        })
    }
}

/// Fingered cursor over `F_{t,t'}` with rank and document seeks.
///
/// Seeks must move forward: `seek_rank(k)` needs `k` at least the current
/// rank and `seek_doc(d)` needs `d` at least the current document.
#[derive(Clone, Debug)]
pub struct FtIter<'a> {
    quantiles: QuantileFinger<'a>,
    next_values: RnvFinger<'a>,
    len: usize,
    rank: usize,
    doc: usize,
    last_x: usize,
    exhausted: bool,
}

impl FtIter<'_> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `F[k]`.
    pub fn seek_rank(&mut self, k: usize) -> Result<usize> {
        if self.exhausted {
            return Err(Error::Invalid("iterator is exhausted".into()));
        }
        if k < self.rank {
            return Err(Error::NonMonotone {
                what: "rank",
                previous: self.rank,
                got: k,
            });
        }
        let (doc, _) = self.quantiles.seek(k)?;
        self.rank = k;
        self.doc = doc;
        Ok(doc)
    }

    /// First document `>= d` and its rank, or `None` once past the end.
    pub fn seek_doc(&mut self, d: usize) -> Result<Option<(usize, usize)>> {
        if self.exhausted {
            return Ok(None);
        }
        if d < self.doc {
            return Err(Error::NonMonotone {
                what: "document",
                previous: self.doc,
                got: d,
            });
        }
        if d == self.doc && self.rank > 0 {
            return Ok(Some((self.doc, self.rank)));
        }
        let x = d.max(self.last_x + 1).max(1);
        match self.next_values.next_geq(x)? {
            Some(hit) => {
                self.last_x = x;
                // Keep the quantile finger's rank monotone as well.
                self.rank = self.rank.max(hit.rank);
                self.doc = hit.symbol;
                Ok(Some((hit.symbol, hit.rank)))
            }
            None => {
                self.exhausted = true;
                Ok(None)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use proptest::prelude::*;

    /// One term whose list has tf runs 3 3 2 1 1 1.
    fn runs_example() -> InvIndex {
        let list = vec![(4, 3), (2, 3), (5, 2), (1, 1), (3, 1), (6, 1)];
        InvIndex::from_postings(vec!["w".into()], 6, vec![list]).unwrap()
    }

    #[test]
    fn tf_runs_example() {
        let ix = runs_example();
        let tfs: Vec<usize> = (1..=6).map(|i| ix.tf_at(1, i).unwrap()).collect();
        assert_eq!(tfs, vec![3, 3, 2, 1, 1, 1]);
        assert_eq!(ix.lt_get(1, 1).unwrap(), (2, 3));
        assert_eq!(ix.lt_get(1, 2).unwrap(), (4, 3));
        assert_eq!(ix.persin_prefix(1, 2).unwrap(), 3);
        assert_eq!(ix.persin_prefix(1, 3).unwrap(), 2);
        assert_eq!(ix.persin_prefix(1, 1).unwrap(), 6);
        assert_eq!(ix.persin_prefix(1, 4).unwrap(), 0);
        assert!(ix.tf_at(1, 7).is_err());
    }

    #[test]
    fn dual_views() {
        let ix = runs_example();
        let w = TermRange::single(1);
        assert_eq!(ix.ft_get(w, 1).unwrap(), 1);
        assert_eq!(ix.ft_get(w, 6).unwrap(), 6);
        assert_eq!(ix.ft_segment(w, 2, 4).unwrap(), vec![(2, 1), (3, 1), (4, 1)]);
        assert_eq!(ix.lt_segment(1, 1, 3).unwrap(), vec![(2, 3), (4, 3), (5, 2)]);
        assert_eq!(ix.lt_segment(1, 2, 2).unwrap(), vec![(4, 3)]);
        assert_eq!(ix.contains(1, 5).unwrap(), Some(3));
        let round = ix.persin_round(&[(1, 10), (5, 1)], 1, 2).unwrap();
        assert_eq!(round, vec![(1, 10), (2, 3), (4, 3), (5, 3)]);
        assert_eq!(ix.persin_round(&[(1, 10)], 1, 9).unwrap(), vec![(1, 10)]);
    }

    fn hand_corpus() -> InvIndex {
        let terms = vec!["ant".into(), "ants".into(), "bee".into(), "cat".into()];
        let postings = vec![
            vec![(2, 1), (7, 2)],
            vec![(3, 1)],
            vec![(2, 4), (5, 1), (7, 1)],
            vec![(1, 1), (9, 3)],
        ];
        InvIndex::from_postings(terms, 9, postings).unwrap()
    }

    #[test]
    fn intersections_and_stems() {
        let ix = hand_corpus();
        let (ant, ants, bee, cat) = (1, 2, 3, 4);
        let pair = [TermRange::single(ant), TermRange::single(bee)];
        assert_eq!(ix.intersect(&pair, 2, None).unwrap(), vec![(2, vec![1, 1]), (7, vec![1, 1])]);
        let docs: Vec<usize> = ix.intersect(&pair, 1, None).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(docs, vec![2, 5, 7]);
        assert!(ix.intersect(&[TermRange::single(ants), TermRange::single(cat)], 2, None).unwrap().is_empty());
        let stem = ix.stem_range("ant*").unwrap();
        assert_eq!(stem, TermRange::new(ant, ants));
        assert_eq!(ix.stem_range("ant"), Some(TermRange::single(ant)));
        assert_eq!(ix.stem_range("zz*"), None);
        assert_eq!(ix.distinct_docs(stem).unwrap(), vec![(2, 1), (3, 1), (7, 1)]);
        let with_bee: Vec<usize> = ix.intersect(&[stem, TermRange::single(bee)], 2, None).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(with_bee, vec![2, 7]);
        assert_eq!(ix.sum_tf_stemmed(stem, 7).unwrap(), 2);
        assert_eq!(ix.sum_tf_stemmed(TermRange::new(1, 4), 2).unwrap(), 5);
        assert_eq!(ix.local_vocab(7).unwrap(), vec![ant, bee]);
        assert!(ix.local_vocab(4).unwrap().is_empty());
        assert_eq!(ix.contains(cat, 2).unwrap(), None);
    }

    #[test]
    fn fingered_merge_intersection() {
        let ix = hand_corpus();
        let mut a = ix.ft_iter(TermRange::single(1)).unwrap();
        let mut b = ix.ft_iter(TermRange::single(3)).unwrap();
        let mut out = Vec::new();
        let mut x = a.seek_doc(1).unwrap();
        while let Some((d, _)) = x {
            match b.seek_doc(d).unwrap() {
                None => break,
                Some((e, _)) if e == d => {
                    out.push(d);
                    x = a.seek_doc(d + 1).unwrap();
                }
                Some((e, _)) => x = a.seek_doc(e).unwrap(),
            }
        }
        assert_eq!(out, vec![2, 7]);
        assert_eq!(a.seek_doc(100).unwrap(), None);
        assert!(a.seek_rank(1).is_err());
        let mut c = ix.ft_iter(TermRange::single(3)).unwrap();
        assert_eq!(c.seek_rank(2).unwrap(), 5);
        assert_eq!(c.seek_doc(5).unwrap(), Some((5, 2)));
        assert!(matches!(c.seek_doc(4), Err(Error::NonMonotone { .. })));
        assert_eq!(c.seek_doc(6).unwrap(), Some((7, 3)));
        assert!(matches!(c.seek_rank(2), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn tokenizer() {
        assert_eq!(tokenize(b"Hello, wORLD! x2-y"), vec!["hello", "world", "x2", "y"]);
        assert!(tokenize(b" ,;").is_empty());
    }

    #[test]
    fn stem_map_groups_variants() {
        let docs = [b"ran run runs".to_vec(), b"rung apple".to_vec()];
        let stems: BTreeMap<String, String> = [("ran", "run"), ("runs", "run")].into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let ix = InvIndex::from_docs(&docs, Some(&stems)).unwrap();
        let r = ix.stem_range("run").unwrap();
        let names: Vec<&str> = (r.first..=r.last).map(|t| ix.term(t).unwrap()).collect();
        assert_eq!(names, vec!["ran", "run", "runs"]);
        assert_eq!(ix.sum_tf_stemmed(r, 1).unwrap(), 3);
    }

    #[test]
    fn serialization_round_trip() {
        let ix = hand_corpus();
        let mut buf = Vec::new();
        ix.write_to(&mut buf).unwrap();
        let back = InvIndex::read_from(&mut buf.as_slice()).unwrap();
        for t in 1..=4 {
            for i in 1..=ix.df(t).unwrap() {
                assert_eq!(back.lt_get(t, i).unwrap(), ix.lt_get(t, i).unwrap());
            }
        }
        assert_eq!(back.stem_range("ant*"), ix.stem_range("ant*"));
    }

    fn corpus() -> impl Strategy<Value = Vec<Vec<u8>>> {
        let word = prop_oneof![Just("a"), Just("ab"), Just("abc"), Just("b"), Just("ba"), Just("c"), Just("cab")];
        proptest::collection::vec(proptest::collection::vec(word, 0..12).prop_map(|ws| ws.join(" ").into_bytes()), 1..10)
            .prop_filter("needs a token", |docs| docs.iter().any(|d| !d.is_empty()))
    }

    proptest! {
        #[test]
        fn matches_postings_oracle(docs in corpus()) {
            let ix = InvIndex::from_docs(&docs, None).unwrap();
            let truth = oracles::postings(&docs);
            prop_assert_eq!(ix.vocab_len(), truth.len());
            prop_assert_eq!(ix.len(), truth.values().map(|m| m.len()).sum::<usize>());
            for (term, per_doc) in &truth {
                let t = ix.term_id(term).unwrap();
                let df = ix.df(t).unwrap();
                prop_assert_eq!(df, per_doc.len());
                let lt: Vec<(usize, usize)> = (1..=df).map(|i| ix.lt_get(t, i).unwrap()).collect();
                prop_assert!(lt.windows(2).all(|w| w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0)));
                let mut sorted = lt.clone();
                sorted.sort_unstable();
                prop_assert_eq!(&sorted, &per_doc.iter().map(|(&d, &f)| (d, f)).collect::<Vec<_>>());
                let ft: Vec<usize> = (1..=df).map(|k| ix.ft_get(TermRange::single(t), k).unwrap()).collect();
                prop_assert_eq!(ft, per_doc.keys().copied().collect::<Vec<_>>());
                for f in 1..=lt[0].1 + 1 {
                    let p = ix.persin_prefix(t, f).unwrap();
                    prop_assert!(p == 0 || lt[p - 1].1 >= f);
                    prop_assert!(p == df || lt[p].1 < f);
                }
            }
            for d in 1..=docs.len() {
                let expected: Vec<usize> = truth.iter().filter(|(_, m)| m.contains_key(&d)).map(|(w, _)| ix.term_id(w).unwrap()).collect();
                prop_assert_eq!(ix.local_vocab(d).unwrap(), expected);
            }
        }
    }
}
