//! Document retrieval over a collection of byte strings.
//!
//! The documents are concatenated, each followed by a terminator, and a
//! suffix array `A` is built over the result. The document array `D`
//! (`D[i]` is the document holding suffix `A[i]`) is kept as a wavelet
//! tree, so that for the suffix-array interval `[sp, ep]` of a pattern:
//!
//! * listing the documents is `report(D, sp, ep)`,
//! * the frequency in one document is a rank difference,
//! * intersecting several patterns is a range intersection over their
//!   intervals.
//!
//! ```
//! use wvx::docindex::DocIndex;
//!
//! let idx = DocIndex::new(vec![b"ana".to_vec(), b"banana".to_vec()]).unwrap();
//! let hits: Vec<_> = idx.dlist(b"an", None).unwrap().collect();
//! assert_eq!(hits, vec![(1, 1), (2, 2)]);
//! assert_eq!(idx.dfreq(b"na", 2).unwrap(), 2);
//! ```

use std::io::{Read, Write};

use crate::bitvec::SparseBitVec;
use crate::error::{check_range, Error, Result};
use crate::rangeops::RangeIntersection;
use crate::ser;
use crate::wavelet::{Report, WaveletTree};

/// Byte appended to every document. Documents may not contain it.
pub const TERMINATOR: u8 = 0;

#[derive(Clone, Debug)]
pub struct DocIndex {
    /// Concatenation of all documents, each followed by [`TERMINATOR`].
    text: Vec<u8>,
    doc_bounds: SparseBitVec,
    sa: Vec<usize>,
    darray: WaveletTree,
}

impl DocIndex {
    pub fn new(docs: Vec<Vec<u8>>) -> Result<Self> {
        if docs.is_empty() {
            return Err(Error::EmptySequence);
        }
        let text = concat(&docs)?;
        let m = docs.len();
        let mut starts = Vec::with_capacity(m);
        let mut pos = 1;
        for d in &docs {
            starts.push(pos);
            pos += d.len() + 1;
        }
        let doc_bounds = SparseBitVec::from_positions(text.len(), &starts)?;
        let sa = suffix_array(&text, m);
        let dseq: Vec<usize> = sa.iter().map(|&p| doc_bounds.rank1(p)).collect();
        let darray = WaveletTree::new(&dseq, m)?;
        Ok(Self {
            text,
            doc_bounds,
            sa,
            darray,
        })
    }

    /// Number of documents `m`.
    pub fn docs(&self) -> usize {
        self.doc_bounds.count_ones()
    }

    /// Length `n` of the concatenation, terminators included.
    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    /// Document `d` without its terminator.
    pub fn doc(&self, d: usize) -> Result<&[u8]> {
        check_range("document", d, 1, self.docs())?;
        let start = self.doc_bounds.select1(d).expect("document exists");
        let end = self.doc_bounds.select1(d + 1).unwrap_or(self.text.len() + 1);
        Ok(&self.text[start - 1..end - 2])
    }

    /// Document holding text position `p`.
    pub fn doc_of_position(&self, p: usize) -> Result<usize> {
        check_range("text position", p, 1, self.text.len())?;
        Ok(self.doc_bounds.rank1(p))
    }

    /// The suffix array, 1-based positions.
    pub fn suffix_array(&self) -> &[usize] {
        &self.sa
    }

    pub fn document_array(&self) -> &WaveletTree {
        &self.darray
    }

    /// Suffix-array interval `[sp, ep]` of the suffixes prefixed by `q`.
    pub fn pattern_search(&self, q: &[u8]) -> Result<Option<(usize, usize)>> {
        if q.is_empty() || q.contains(&TERMINATOR) {
            return Err(Error::InvalidPattern);
        }
        let prefix = |p: usize| {
            let s = &self.text[p - 1..];
            &s[..s.len().min(q.len())]
        };
        let sp = self.sa.partition_point(|&p| prefix(p) < q);
        let ep = self.sa.partition_point(|&p| prefix(p) <= q);
        Ok((sp < ep).then_some((sp + 1, ep)))
    }

    /// Interval of `q`, or the empty `(1, 0)`.
    fn interval(&self, q: &[u8]) -> Result<(usize, usize)> {
        Ok(self.pattern_search(q)?.unwrap_or((1, 0)))
    }

    fn doc_range(&self, range: Option<(usize, usize)>) -> Result<(usize, usize)> {
        let (lo, hi) = range.unwrap_or((1, self.docs()));
        if lo <= hi {
            check_range("first document", lo, 1, self.docs())?;
            check_range("last document", hi, 1, self.docs())?;
        }
        Ok((lo, hi))
    }

    /// Documents of `range` (default: all) containing `q`, increasing, with
    /// the number of occurrences in each.
    pub fn dlist(&self, q: &[u8], range: Option<(usize, usize)>) -> Result<Report<'_>> {
        let (sp, ep) = self.interval(q)?;
        let (lo, hi) = self.doc_range(range)?;
        self.darray.report(sp, ep, lo, hi)
    }

    /// Occurrences of `q` in document `d`.
    pub fn dfreq(&self, q: &[u8], d: usize) -> Result<usize> {
        check_range("document", d, 1, self.docs())?;
        let (sp, ep) = self.interval(q)?;
        if sp > ep {
            return Ok(0);
        }
        Ok(self.darray.rank(d, ep)? - self.darray.rank(d, sp - 1)?)
    }

    /// Total occurrences of `q` in the collection.
    pub fn occurrences(&self, q: &[u8]) -> Result<usize> {
        let (sp, ep) = self.interval(q)?;
        Ok((ep + 1).saturating_sub(sp))
    }

    /// Documents of `range` holding at least `threshold` of the patterns,
    /// with the frequency of every pattern.
    pub fn dint(
        &self,
        patterns: &[&[u8]],
        threshold: usize,
        range: Option<(usize, usize)>,
    ) -> Result<RangeIntersection<'_>> {
        let intervals = patterns.iter().map(|q| self.interval(q)).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = self.doc_range(range)?;
        self.darray.rint(&intervals, threshold, lo, hi)
    }

    /// Space of the succinct parts, in bits: (document array, boundaries).
    pub fn space_bits(&self) -> (usize, usize) {
        (
            self.darray.level_bits() + self.darray.aux_bits() + self.darray.alphabet_bits(),
            self.doc_bounds.size_bits(),
        )
    }

    /// Serializes the index. Without `store_text` the caller must hand the
    /// documents back to [`DocIndex::read_from`].
    pub fn write_to(&self, w: &mut impl Write, store_text: bool) -> Result<()> {
        w.write_all(b"WVD1")?;
        ser::put_u64(w, u64::from(store_text))?;
        self.doc_bounds.write_to(w)?;
        if store_text {
            ser::put_bytes(w, &self.text)?;
        }
        ser::put_usize(w, self.sa.len())?;
        for &p in &self.sa {
            ser::put_usize(w, p)?;
        }
        self.darray.write_to(w)
    }

    pub fn read_from(r: &mut impl Read, docs: Option<Vec<Vec<u8>>>) -> Result<Self> {
        ser::expect_magic(r, b"WVD1")?;
        let stored = ser::get_u64(r)? != 0;
        let doc_bounds = SparseBitVec::read_from(r)?;
        let text = if stored {
            ser::get_bytes(r, ser::MAX_LEN)?
        } else {
            let docs = docs.ok_or_else(|| Error::Format("index was saved without text; the corpus is required".into()))?;
            concat(&docs)?
        };
        if text.len() != doc_bounds.universe() {
            return Err(Error::Format("text length does not match the saved document boundaries".into()));
        }
        let n = ser::get_usize(r)?;
        if n != text.len() {
            return Err(Error::Format("suffix array length does not match the text".into()));
        }
        let mut sa = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for _ in 0..n {
            let p = ser::get_usize(r)?;
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Format("suffix array is not a permutation".into()));
            }
            sa.push(p);
        }
        let darray = WaveletTree::read_from(r)?;
        if darray.len() != n || darray.sigma() != doc_bounds.count_ones() {
            return Err(Error::Format("document array does not match the collection".into()));
        }
        let idx = Self {
            text,
            doc_bounds,
            sa,
            darray,
        };
        for d in 1..=idx.docs() {
            let start = idx.doc_bounds.select1(d).expect("document exists");
            let end = idx.doc_bounds.select1(d + 1).unwrap_or(n + 1);
            if idx.text[end - 2] != TERMINATOR || idx.text[start - 1..end - 2].contains(&TERMINATOR) {
                return Err(Error::Format("supplied corpus does not match the saved index".into()));
            }
        }
        Ok(idx)
    }
}

fn concat(docs: &[Vec<u8>]) -> Result<Vec<u8>> {
    let mut text = Vec::with_capacity(docs.iter().map(|d| d.len() + 1).sum());
    for (k, d) in docs.iter().enumerate() {
        if let Some(offset) = d.iter().position(|&b| b == TERMINATOR) {
            return Err(Error::TerminatorInDocument { doc: k + 1, offset });
        }
        text.extend_from_slice(d);
        text.push(TERMINATOR);
    }
    Ok(text)
}

/// Suffix array of `text` (1-based) by prefix doubling with radix sorting.
///
/// Terminators sort below every byte and among themselves by position, so
/// the `d`th terminator gets initial rank `d - 1` and byte `b` gets `m + b`.
fn suffix_array(text: &[u8], m: usize) -> Vec<usize> {
    let n = text.len();
    let mut rank = Vec::with_capacity(n);
    let mut seen = 0;
    for &b in text {
        if b == TERMINATOR {
            rank.push(seen);
            seen += 1;
        } else {
            rank.push(m + b as usize);
        }
    }
    let mut sa: Vec<usize> = (0..n).collect();
    let mut tmp = vec![0; n];
    let mut buckets = vec![0usize; (m + 256).max(n) + 2];
    let mut k = 1;
    loop {
        // Sort by (rank[i], rank[i + k]) with shifted keys; 0 means "past the end".
        let second = |i: usize| if i + k < n { rank[i + k] + 1 } else { 0 };
        let classes = rank.iter().max().map_or(0, |&r| r + 2);
        counting_sort(&(0..n).collect::<Vec<_>>(), &mut tmp, &mut buckets[..classes], second);
        counting_sort(&tmp, &mut sa, &mut buckets[..classes], |i| rank[i] + 1);
        let mut next = vec![0; n];
        for w in 1..n {
            let (a, b) = (sa[w - 1], sa[w]);
            next[b] = next[a] + usize::from((rank[a], second(a)) != (rank[b], second(b)));
        }
        rank = next;
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa.into_iter().map(|p| p + 1).collect()
}

fn counting_sort(input: &[usize], output: &mut [usize], buckets: &mut [usize], key: impl Fn(usize) -> usize) {
    buckets.fill(0);
    for &i in input {
        buckets[key(i)] += 1;
    }
    let mut sum = 0;
    for b in buckets.iter_mut() {
        let c = *b;
        *b = sum;
        sum += c;
    }
    for &i in input {
        let slot = &mut buckets[key(i)];
        output[*slot] = i;
        *slot += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;
    use proptest::prelude::*;

    fn ana_banana() -> DocIndex {
        DocIndex::new(vec![b"ana".to_vec(), b"banana".to_vec()]).unwrap()
    }

    #[test]
    fn pattern_intervals() {
        let idx = ana_banana();
        let size = |q: &[u8]| idx.pattern_search(q).unwrap().map_or(0, |(s, e)| e + 1 - s);
        assert_eq!(size(b"an"), 3);
        assert_eq!(size(b"a"), 5);
        assert_eq!(size(b"bananas"), 0);
        assert_eq!(size(b"x"), 0);
        assert!(matches!(idx.pattern_search(b""), Err(Error::InvalidPattern)));
        assert!(matches!(idx.pattern_search(b"a\0"), Err(Error::InvalidPattern)));
    }

    #[test]
    fn listing_and_frequencies() {
        let idx = ana_banana();
        assert_eq!(idx.dlist(b"an", None).unwrap().collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);
        assert_eq!(idx.dlist(b"an", Some((2, 2))).unwrap().collect::<Vec<_>>(), vec![(2, 2)]);
        assert_eq!(idx.dlist(b"zz", None).unwrap().count(), 0);
        assert_eq!(idx.dfreq(b"na", 2).unwrap(), 2);
        assert_eq!(idx.dfreq(b"a", 1).unwrap(), 2);
        assert_eq!(idx.dfreq(b"b", 1).unwrap(), 0);
        assert!(idx.dfreq(b"a", 3).is_err());
    }

    #[test]
    fn intersections() {
        let idx = ana_banana();
        let pats: [&[u8]; 2] = [b"an", b"ba"];
        assert_eq!(idx.dint(&pats, 2, None).unwrap().collect::<Vec<_>>(), vec![(2, vec![2, 1])]);
        assert_eq!(
            idx.dint(&pats, 1, None).unwrap().collect::<Vec<_>>(),
            vec![(1, vec![1, 0]), (2, vec![2, 1])]
        );
        let absent: [&[u8]; 2] = [b"an", b"q"];
        assert_eq!(idx.dint(&absent, 2, None).unwrap().count(), 0);
        assert_eq!(idx.dint(&absent, 1, None).unwrap().count(), 2);
    }

    #[test]
    fn terminator_rejected() {
        let err = DocIndex::new(vec![b"ok".to_vec(), b"b\0d".to_vec()]).unwrap_err();
        assert!(matches!(err, Error::TerminatorInDocument { doc: 2, offset: 1 }));
        assert!(matches!(DocIndex::new(vec![]), Err(Error::EmptySequence)));
    }

    #[test]
    fn empty_documents_are_allowed() {
        let idx = DocIndex::new(vec![b"".to_vec(), b"ab".to_vec(), b"".to_vec()]).unwrap();
        assert_eq!(idx.doc(1).unwrap(), b"");
        assert_eq!(idx.doc(2).unwrap(), b"ab");
        assert_eq!(idx.dlist(b"b", None).unwrap().collect::<Vec<_>>(), vec![(2, 1)]);
    }

    #[test]
    fn serialization_with_and_without_text() {
        let docs = vec![b"mississippi".to_vec(), b"missing".to_vec()];
        let idx = DocIndex::new(docs.clone()).unwrap();
        for store in [true, false] {
            let mut buf = Vec::new();
            idx.write_to(&mut buf, store).unwrap();
            let supplied = (!store).then(|| docs.clone());
            let back = DocIndex::read_from(&mut buf.as_slice(), supplied).unwrap();
            assert_eq!(back.suffix_array(), idx.suffix_array());
            assert_eq!(back.dlist(b"ss", None).unwrap().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        }
        let mut buf = Vec::new();
        idx.write_to(&mut buf, false).unwrap();
        assert!(DocIndex::read_from(&mut buf.as_slice(), None).is_err());
        let wrong = vec![b"mississipp".to_vec(), b"missing!".to_vec()];
        assert!(DocIndex::read_from(&mut buf.as_slice(), Some(wrong)).is_err());
    }

    fn collection() -> impl Strategy<Value = Vec<Vec<u8>>> {
        proptest::collection::vec(proptest::collection::vec(b'a'..=b'c', 0..30), 1..8)
    }

    proptest! {
        #[test]
        fn suffixes_are_sorted(docs in collection()) {
            let idx = DocIndex::new(docs).unwrap();
            // Compare with terminators mapped below every byte and ordered by position.
            let key = |p: usize| -> Vec<(u8, usize)> {
                idx.text[p - 1..].iter().enumerate().map(|(o, &b)| if b == 0 { (0, p + o) } else { (1 + b - b'a', 0) }).collect()
            };
            for w in idx.suffix_array().windows(2) {
                prop_assert!(key(w[0]) < key(w[1]));
            }
            for i in 1..=idx.text_len() {
                let d = idx.doc_of_position(idx.suffix_array()[i - 1]).unwrap();
                prop_assert_eq!(idx.document_array().access(i).unwrap(), d);
            }
        }

        #[test]
        fn listing_matches_scan(docs in collection(), q in proptest::collection::vec(b'a'..=b'c', 1..4)) {
            let idx = DocIndex::new(docs.clone()).unwrap();
            let expected = oracles::doc_listing(&docs, &q);
            let got: Vec<_> = idx.dlist(&q, None).unwrap().collect();
            prop_assert_eq!(&got, &expected);
            for d in 1..=docs.len() {
                prop_assert_eq!(idx.dfreq(&q, d).unwrap(), oracles::occurrences(&docs[d - 1], &q));
            }
            let total: usize = expected.iter().map(|x| x.1).sum();
            prop_assert_eq!(idx.occurrences(&q).unwrap(), total);
        }
    }
}
