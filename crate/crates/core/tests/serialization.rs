use std::panic;

use wvx::docindex::DocIndex;
use wvx::hierdoc::HierIndex;
use wvx::invindex::{InvIndex, TermRange};
use wvx::{BitVec, SparseBitVec, WaveletTree};

fn docs() -> Vec<Vec<u8>> {
    ["to be or not to be", "that is the question", "", "be quick"]
        .iter()
        .map(|s| s.as_bytes().to_vec())
        .collect()
}

fn bytes(f: impl FnOnce(&mut Vec<u8>)) -> Vec<u8> {
    let mut buf = Vec::new();
    f(&mut buf);
    buf
}

/// Every strict prefix must be rejected, and no single-byte corruption may
/// panic.
fn check_robust<T>(raw: &[u8], load: impl Fn(&[u8]) -> wvx::Result<T> + panic::RefUnwindSafe) {
    for cut in 0..raw.len() {
        assert!(load(&raw[..cut]).is_err(), "prefix of {cut} bytes accepted");
    }
    for at in (0..raw.len()).step_by(3) {
        let mut bad = raw.to_vec();
        bad[at] ^= 0x5A;
        let r = panic::catch_unwind(|| load(&bad).is_ok());
        assert!(r.is_ok(), "panic after corrupting byte {at}");
    }
}

#[test]
fn bit_vectors() {
    let bv: BitVec = (0..3000).map(|k| k % 5 == 1).collect();
    for store in [false, true] {
        let raw = bytes(|b| bv.write_to(b, store).unwrap());
        let back = BitVec::read_from(&mut raw.as_slice()).unwrap();
        assert_eq!(back, bv);
        check_robust(&raw[..200.min(raw.len())], |r| BitVec::read_from(&mut &r[..]));
    }
    let sp = SparseBitVec::from_positions(10_000, &[3, 70, 71, 9000]).unwrap();
    let raw = bytes(|b| sp.write_to(b).unwrap());
    let back = SparseBitVec::read_from(&mut raw.as_slice()).unwrap();
    assert_eq!(back.ones().collect::<Vec<_>>(), vec![3, 70, 71, 9000]);
    check_robust(&raw, |r| SparseBitVec::read_from(&mut &r[..]));
}

#[test]
fn wavelet_tree() {
    let seq: Vec<usize> = (0..500).map(|k| (k * 7919) % 37 + 1).collect();
    let wt = WaveletTree::new(&seq, 40).unwrap();
    let raw = bytes(|b| wt.write_to(b).unwrap());
    let back = WaveletTree::read_from(&mut raw.as_slice()).unwrap();
    for i in 1..=seq.len() {
        assert_eq!(back.access(i).unwrap(), seq[i - 1]);
    }
    assert_eq!(back.rqq(10, 400, 77).unwrap(), wt.rqq(10, 400, 77).unwrap());
    check_robust(&raw, |r| WaveletTree::read_from(&mut &r[..]));
}

#[test]
fn document_index() {
    let ix = DocIndex::new(docs()).unwrap();
    let with_text = bytes(|b| ix.write_to(b, true).unwrap());
    let without = bytes(|b| ix.write_to(b, false).unwrap());
    assert!(without.len() < with_text.len());
    let a = DocIndex::read_from(&mut with_text.as_slice(), None).unwrap();
    let b = DocIndex::read_from(&mut without.as_slice(), Some(docs())).unwrap();
    for q in [&b"be"[..], b"t", b"question", b"zz"] {
        let expected: Vec<_> = ix.dlist(q, None).unwrap().collect();
        assert_eq!(a.dlist(q, None).unwrap().collect::<Vec<_>>(), expected);
        assert_eq!(b.dlist(q, None).unwrap().collect::<Vec<_>>(), expected);
    }
    assert!(DocIndex::read_from(&mut without.as_slice(), None).is_err());
    // Same-shape substitutions are caught by the CLI digest, not here.
    let mut wrong = docs();
    wrong[1].push(b'!');
    assert!(DocIndex::read_from(&mut without.as_slice(), Some(wrong)).is_err());
    check_robust(&with_text, |r| DocIndex::read_from(&mut &r[..], None));
}

#[test]
fn hierarchical_index() {
    let xml = b"<book><ch><p>be or not</p><p>to be</p></ch><ch><p>question</p></ch></book>";
    let h = HierIndex::from_xml(xml).unwrap();
    let raw = bytes(|b| h.write_to(b, true).unwrap());
    let back = HierIndex::read_from(&mut raw.as_slice(), None).unwrap();
    let ch = back.tag_id("ch").unwrap();
    assert_eq!(back.hdlist(ch, b"be", None).unwrap(), h.hdlist(ch, b"be", None).unwrap());
    assert_eq!(back.hdint(ch, b"be", b"to", None).unwrap(), h.hdint(ch, b"be", b"to", None).unwrap());
    check_robust(&raw, |r| HierIndex::read_from(&mut &r[..], None));
}

#[test]
fn inverted_index() {
    let ix = InvIndex::from_docs(&docs(), None).unwrap();
    let raw = bytes(|b| ix.write_to(b).unwrap());
    let back = InvIndex::read_from(&mut raw.as_slice()).unwrap();
    let be = back.term_id("be").unwrap();
    assert_eq!(back.lt_get(be, 1).unwrap(), ix.lt_get(be, 1).unwrap());
    assert_eq!(back.ft_get(TermRange::single(be), 2).unwrap(), 4);
    assert_eq!(back.local_vocab(4).unwrap(), ix.local_vocab(4).unwrap());
    check_robust(&raw, |r| InvIndex::read_from(&mut &r[..]));
}
