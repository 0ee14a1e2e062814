//! Index bundles, corpus ingestion and query dispatch behind the `wvx`
//! binary. Kept as a library so tests can compare in-memory answers with
//! what the binary prints.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use wvx::docindex::DocIndex;
use wvx::hierdoc::xml::{self, XmlNode};
use wvx::hierdoc::HierIndex;
use wvx::invindex::{InvIndex, TermRange};
use wvx::WaveletTree;

pub const MAGIC: &[u8; 4] = b"WVIX";
pub const VERSION: u64 = 1;
pub const DEFAULT_SEP: u8 = 0x1E;

const SEC_DOC: u64 = 1;
const SEC_HIER: u64 = 2;
const SEC_INV: u64 = 3;
const SEC_DIGEST: u64 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] wvx::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Format(_) => 6,
            CliError::Core(e) => match e {
                wvx::Error::Io(_) => 3,
                wvx::Error::TerminatorInDocument { .. } => 4,
                wvx::Error::Xml { .. } => 5,
                wvx::Error::Format(_) => 6,
                _ => 7,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Doc,
    Hier,
    Inv,
    Combined,
}

impl Mode {
    fn code(self) -> u64 {
        match self {
            Mode::Doc => 1,
            Mode::Hier => 2,
            Mode::Inv => 3,
            Mode::Combined => 4,
        }
    }

    fn from_code(c: u64) -> Option<Self> {
        Some(match c {
            1 => Mode::Doc,
            2 => Mode::Hier,
            3 => Mode::Inv,
            4 => Mode::Combined,
            _ => return None,
        })
    }
}

/// Reads a corpus: every regular file of a directory in filename order, or
/// one file split on `sep` (a trailing empty record is dropped).
pub fn load_corpus(path: &Path, sep: u8) -> Result<Vec<Vec<u8>>> {
    let meta = fs::metadata(path).map_err(io_err(path))?;
    if meta.is_dir() {
        let mut files = Vec::new();
        for entry in fs::read_dir(path).map_err(io_err(path))? {
            let entry = entry.map_err(io_err(path))?;
            if entry.file_type().map_err(io_err(path))?.is_file() {
                files.push(entry.path());
            }
        }
        files.sort();
        files.iter().map(|f| fs::read(f).map_err(io_err(f))).collect()
    } else {
        let raw = fs::read(path).map_err(io_err(path))?;
        let mut docs: Vec<Vec<u8>> = raw.split(|&b| b == sep).map(<[u8]>::to_vec).collect();
        if docs.len() > 1 && docs.last().is_some_and(Vec::is_empty) {
            docs.pop();
        }
        Ok(docs)
    }
}

/// `term<whitespace>stem` per line; blank lines and `#` comments ignored.
pub fn load_stem_map(path: &Path) -> Result<BTreeMap<String, String>> {
    let raw = fs::read_to_string(path).map_err(io_err(path))?;
    let mut map = BTreeMap::new();
    for (n, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(t), Some(s), None) => {
                map.insert(t.to_lowercase(), s.to_lowercase());
            }
            _ => return Err(CliError::Usage(format!("{}:{}: expected `term stem`", path.display(), n + 1))),
        }
    }
    Ok(map)
}

fn leaf_texts(nodes: &[XmlNode]) -> Vec<Vec<u8>> {
    nodes.iter().filter(|n| n.children.is_empty()).map(|n| n.text.clone()).collect()
}

fn digest_docs(docs: &[Vec<u8>]) -> [u8; 32] {
    let mut h = Sha256::new();
    for d in docs {
        h.update((d.len() as u64).to_le_bytes());
        h.update(d);
    }
    h.finalize().into()
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub sep: Option<u8>,
    pub store_text: bool,
    pub stem_map: Option<BTreeMap<String, String>>,
}

/// Everything one index file holds.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub mode: Mode,
    pub doc: Option<DocIndex>,
    pub hier: Option<HierIndex>,
    pub inv: Option<InvIndex>,
    store_text: bool,
    digest: [u8; 32],
}

impl Bundle {
    pub fn build(mode: Mode, input: &Path, opts: &BuildOptions) -> Result<Self> {
        let sep = opts.sep.unwrap_or(DEFAULT_SEP);
        let mut bundle = Bundle {
            mode,
            doc: None,
            hier: None,
            inv: None,
            store_text: opts.store_text,
            digest: [0; 32],
        };
        if mode == Mode::Hier {
            let raw = fs::read(input).map_err(io_err(input))?;
            let nodes = xml::parse(&raw)?;
            bundle.digest = digest_docs(&leaf_texts(&nodes));
            bundle.hier = Some(HierIndex::from_nodes(&nodes)?);
            return Ok(bundle);
        }
        let docs = load_corpus(input, sep)?;
        bundle.digest = digest_docs(&docs);
        if matches!(mode, Mode::Inv | Mode::Combined) {
            bundle.inv = Some(InvIndex::from_docs(&docs, opts.stem_map.as_ref())?);
        }
        if matches!(mode, Mode::Doc | Mode::Combined) {
            bundle.doc = Some(DocIndex::new(docs)?);
        }
        Ok(bundle)
    }

    /// Build statistics as `key, value` pairs.
    pub fn summary(&self) -> Vec<(String, String)> {
        let mut out = vec![("mode".to_string(), format!("{:?}", self.mode).to_lowercase())];
        let combined = self.mode == Mode::Combined;
        let mut put = |k: &str, v: usize| out.push((k.to_string(), v.to_string()));
        if let Some(d) = &self.doc {
            let (da, bounds) = d.space_bits();
            put("m", d.docs());
            put("n", d.text_len());
            put("u", d.document_array().distinct());
            put("bits_doc_array", da);
            put("bits_doc_bounds", bounds);
            put("bits_suffix_array", 64 * d.suffix_array().len());
        }
        if let Some(h) = &self.hier {
            let (p, tags, per_tag) = h.space_bits();
            put("nodes", h.node_count());
            put("leaves", h.leaf_count());
            put("tau", h.tag_count());
            put("u", h.tag_sequence().distinct());
            put("bits_parens", p);
            put("bits_tag_sequence", tags);
            put("bits_tag_parens", per_tag);
        }
        if let Some(ix) = &self.inv {
            let (l, bounds, tf) = ix.space_bits();
            // In combined mode m is already printed and n, u would clash.
            if !combined {
                put("m", ix.docs());
            }
            put(if combined { "inv_n" } else { "n" }, ix.len());
            put("nu", ix.vocab_len());
            put(if combined { "inv_u" } else { "u" }, ix.lists().distinct());
            put("bits_postings", l);
            put("bits_list_bounds", bounds);
            put("bits_tf", tf);
        }
        out
    }

    pub fn save(&self, w: &mut impl Write) -> Result<()> {
        let mut sections: Vec<(u64, Vec<u8>)> = Vec::new();
        if let Some(d) = &self.doc {
            let mut buf = Vec::new();
            d.write_to(&mut buf, self.store_text)?;
            sections.push((SEC_DOC, buf));
        }
        if let Some(h) = &self.hier {
            let mut buf = Vec::new();
            h.write_to(&mut buf, self.store_text)?;
            sections.push((SEC_HIER, buf));
        }
        if let Some(ix) = &self.inv {
            let mut buf = Vec::new();
            ix.write_to(&mut buf)?;
            sections.push((SEC_INV, buf));
        }
        if !self.store_text && (self.doc.is_some() || self.hier.is_some()) {
            sections.push((SEC_DIGEST, self.digest.to_vec()));
        }
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        let mut put = |x: u64| out.extend_from_slice(&x.to_le_bytes());
        put(VERSION);
        put(self.mode.code());
        put(sections.len() as u64);
        let mut offset = (4 + 8 * 3 + 24 * sections.len()) as u64;
        for (kind, body) in &sections {
            put(*kind);
            put(offset);
            put(body.len() as u64);
            offset += body.len() as u64;
        }
        for (_, body) in &sections {
            out.extend_from_slice(body);
        }
        w.write_all(&out).map_err(|e| CliError::Core(e.into()))
    }

    /// Loads a bundle. `corpus` is needed when the text was not stored; it
    /// must be the input the index was built from.
    pub fn load(raw: &[u8], corpus: Option<&Path>, sep: Option<u8>) -> Result<Self> {
        let bad = |msg: &str| CliError::Format(format!("not a valid index: {msg}"));
        if raw.len() < 32 || &raw[..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        let word = |at: usize| -> Result<u64> {
            raw.get(at..at + 8)
                .map(|b| u64::from_le_bytes(b.try_into().expect("8 bytes")))
                .ok_or_else(|| bad("truncated header"))
        };
        let version = word(4)?;
        if version != VERSION {
            return Err(CliError::Format(format!("unsupported index version {version}")));
        }
        let mode = Mode::from_code(word(12)?).ok_or_else(|| bad("unknown mode"))?;
        let count = word(20)? as usize;
        if count > 8 {
            return Err(bad("too many sections"));
        }
        let mut sections = BTreeMap::new();
        for s in 0..count {
            let base = 28 + 24 * s;
            let (kind, off, len) = (word(base)?, word(base + 8)? as usize, word(base + 16)? as usize);
            let body = off
                .checked_add(len)
                .and_then(|end| raw.get(off..end))
                .ok_or_else(|| bad("section out of bounds"))?;
            sections.insert(kind, body);
        }
        let digest: Option<[u8; 32]> = match sections.get(&SEC_DIGEST) {
            Some(b) => Some((*b).try_into().map_err(|_| bad("digest size"))?),
            None => None,
        };
        let store_text = digest.is_none();
        let wanted = |c: bool| -> Result<Option<Vec<Vec<u8>>>> {
            if store_text || !c {
                return Ok(None);
            }
            let path = corpus.ok_or_else(|| CliError::Usage("index was built without --store-text; pass --corpus".into()))?;
            let docs = if mode == Mode::Hier {
                let raw = fs::read(path).map_err(io_err(path))?;
                leaf_texts(&xml::parse(&raw)?)
            } else {
                load_corpus(path, sep.unwrap_or(DEFAULT_SEP))?
            };
            if Some(digest_docs(&docs)) != digest {
                return Err(CliError::Format(format!("{} is not the corpus this index was built from", path.display())));
            }
            Ok(Some(docs))
        };
        let need = |kind: u64| -> Result<Option<&[u8]>> {
            let expected = match kind {
                SEC_DOC => matches!(mode, Mode::Doc | Mode::Combined),
                SEC_HIER => mode == Mode::Hier,
                _ => matches!(mode, Mode::Inv | Mode::Combined),
            };
            match (expected, sections.get(&kind)) {
                (true, Some(b)) => Ok(Some(b)),
                (true, None) => Err(bad("missing section")),
                (false, Some(_)) => Err(bad("unexpected section")),
                (false, None) => Ok(None),
            }
        };
        let doc = match need(SEC_DOC)? {
            Some(mut b) => Some(DocIndex::read_from(&mut b, wanted(true)?)?),
            None => None,
        };
        let hier = match need(SEC_HIER)? {
            Some(mut b) => Some(HierIndex::read_from(&mut b, wanted(true)?)?),
            None => None,
        };
        let inv = match need(SEC_INV)? {
            Some(mut b) => Some(InvIndex::read_from(&mut b)?),
            None => None,
        };
        Ok(Bundle {
            mode,
            doc,
            hier,
            inv,
            store_text,
            digest: digest.unwrap_or([0; 32]),
        })
    }

    pub fn load_file(path: &Path, corpus: Option<&Path>, sep: Option<u8>) -> Result<Self> {
        let mut raw = Vec::new();
        fs::File::open(path)
            .and_then(|mut f| f.read_to_end(&mut raw))
            .map_err(io_err(path))?;
        Self::load(&raw, corpus, sep)
    }
}

/// Sequence targeted by the raw wavelet-tree subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Seq {
    /// Document array of the document index.
    Docs,
    /// Preorder tag sequence of the hierarchical index.
    Tags,
    /// Concatenated postings of the inverted index.
    Postings,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Dlist { pattern: Vec<u8> },
    Dfreq { pattern: Vec<u8>, doc: usize },
    Dint { patterns: Vec<Vec<u8>> },
    Hdlist { tag: String, pattern: Vec<u8> },
    Hdint { tag: String, first: Vec<u8>, second: Vec<u8> },
    Hdfreq { pattern: Vec<u8>, node: usize },
    Rqq { i: usize, j: usize, k: usize },
    Rnv { i: usize, j: usize, x: usize },
    Rint { ranges: Vec<(usize, usize)> },
    Count { i: usize, j: usize },
    Report { i: usize, j: usize },
    FtGet { term: String, k: usize },
    FtSeg { term: String, k: usize, k2: usize },
    LtSeg { term: String, i: usize, i2: usize },
    Intersect { terms: Vec<String> },
    StemIntersect { stems: Vec<String> },
    VocabOf { doc: usize },
    Contains { term: String, doc: usize },
    PersinPrefix { term: String, f: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryOptions {
    /// Document range for listing queries, symbol range for rint/count/report.
    pub range: Option<(usize, usize)>,
    pub threshold: Option<usize>,
    pub seq: Option<Seq>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(usize),
    List(Vec<usize>),
    Text(String),
}

/// One output line: named fields in a fixed order.
pub type Record = Vec<(&'static str, Value)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub records: Vec<Record>,
    pub warnings: Vec<String>,
    pub node_visits: u64,
}

impl Output {
    /// Tab-separated lines, or JSON objects one per line.
    pub fn render(&self, json: bool) -> String {
        let mut s = String::new();
        for rec in &self.records {
            if json {
                let obj: serde_json::Map<String, serde_json::Value> = rec
                    .iter()
                    .map(|(k, v)| {
                        let v = match v {
                            Value::Num(n) => serde_json::json!(n),
                            Value::List(l) => serde_json::json!(l),
                            Value::Text(t) => serde_json::json!(t),
                        };
                        (k.to_string(), v)
                    })
                    .collect();
                s.push_str(&serde_json::Value::Object(obj).to_string());
            } else {
                let cells: Vec<String> = rec
                    .iter()
                    .map(|(_, v)| match v {
                        Value::Num(n) => n.to_string(),
                        Value::List(l) => l.iter().map(usize::to_string).collect::<Vec<_>>().join("\t"),
                        Value::Text(t) => t.clone(),
                    })
                    .collect();
                s.push_str(&cells.join("\t"));
            }
            s.push('\n');
        }
        s
    }
}

fn num(k: &'static str, v: usize) -> (&'static str, Value) {
    (k, Value::Num(v))
}

impl Bundle {
    fn docs_index(&self) -> Result<&DocIndex> {
        self.doc
            .as_ref()
            .or_else(|| self.hier.as_ref().map(HierIndex::documents))
            .ok_or_else(|| CliError::Usage("this query needs a doc, hier or combined index".into()))
    }

    fn hier_index(&self) -> Result<&HierIndex> {
        self.hier.as_ref().ok_or_else(|| CliError::Usage("this query needs a hier index".into()))
    }

    fn inv_index(&self) -> Result<&InvIndex> {
        self.inv.as_ref().ok_or_else(|| CliError::Usage("this query needs an inv or combined index".into()))
    }

    fn sequence(&self, seq: Option<Seq>) -> Result<&WaveletTree> {
        let seq = seq.unwrap_or(match self.mode {
            Mode::Doc | Mode::Combined => Seq::Docs,
            Mode::Hier => Seq::Tags,
            Mode::Inv => Seq::Postings,
        });
        Ok(match seq {
            Seq::Docs => self.docs_index()?.document_array(),
            Seq::Tags => self.hier_index()?.tag_sequence(),
            Seq::Postings => self.inv_index()?.lists(),
        })
    }

    /// Runs `q`. Unknown terms and tags are reported as warnings with an
    /// empty result rather than as errors.
    pub fn query(&self, q: &Query, opts: &QueryOptions) -> Result<Output> {
        let mut warnings = Vec::new();
        let (records, node_visits) = {
            let before = wvx::stats::node_visits();
            let r = self.run(q, opts, &mut warnings)?;
            (r, wvx::stats::node_visits() - before)
        };
        Ok(Output {
            records,
            warnings,
            node_visits,
        })
    }

    fn run(&self, q: &Query, opts: &QueryOptions, warnings: &mut Vec<String>) -> Result<Vec<Record>> {
        let range = opts.range;
        Ok(match q {
            Query::Dlist { pattern } => self
                .docs_index()?
                .dlist(pattern, range)?
                .map(|(d, f)| vec![num("doc", d), num("tf", f)])
                .collect(),
            Query::Dfreq { pattern, doc } => vec![vec![num("tf", self.docs_index()?.dfreq(pattern, *doc)?)]],
            Query::Dint { patterns } => {
                let refs: Vec<&[u8]> = patterns.iter().map(Vec::as_slice).collect();
                let t = opts.threshold.unwrap_or(refs.len());
                self.docs_index()?
                    .dint(&refs, t, range)?
                    .map(|(d, fs)| vec![num("doc", d), ("tf", Value::List(fs))])
                    .collect()
            }
            Query::Hdlist { tag, pattern } => {
                let h = self.hier_index()?;
                match self.tag(h, tag, warnings) {
                    Some(t) => h.hdlist(t, pattern, range)?.into_iter().map(|p| vec![num("node", p)]).collect(),
                    None => Vec::new(),
                }
            }
            Query::Hdint { tag, first, second } => {
                let h = self.hier_index()?;
                match self.tag(h, tag, warnings) {
                    Some(t) => h
                        .hdint(t, first, second, range)?
                        .into_iter()
                        .map(|(p, f1, f2)| vec![num("node", p), ("tf", Value::List(vec![f1, f2]))])
                        .collect(),
                    None => Vec::new(),
                }
            }
            Query::Hdfreq { pattern, node } => vec![vec![num("tf", self.hier_index()?.hdfreq(pattern, *node)?)]],
            Query::Rqq { i, j, k } => {
                let (s, f) = self.sequence(opts.seq)?.rqq(*i, *j, *k)?;
                vec![vec![num("symbol", s), num("freq", f)]]
            }
            Query::Rnv { i, j, x } => match self.sequence(opts.seq)?.rnv(*i, *j, *x)? {
                Some(nv) => vec![vec![num("symbol", nv.symbol), num("freq", nv.freq), num("rank", nv.rank)]],
                None => Vec::new(),
            },
            Query::Rint { ranges } => {
                let wt = self.sequence(opts.seq)?;
                let t = opts.threshold.unwrap_or(ranges.len());
                let (lo, hi) = range.unwrap_or((1, wt.sigma()));
                wt.rint(ranges, t, lo, hi)?
                    .map(|(s, fs)| vec![num("symbol", s), ("freq", Value::List(fs))])
                    .collect()
            }
            Query::Count { i, j } => {
                let wt = self.sequence(opts.seq)?;
                let (lo, hi) = range.unwrap_or((1, wt.sigma()));
                vec![vec![num("count", wt.count(*i, *j, lo, hi)?)]]
            }
            Query::Report { i, j } => {
                let wt = self.sequence(opts.seq)?;
                let (lo, hi) = range.unwrap_or((1, wt.sigma()));
                wt.report(*i, *j, lo, hi)?
                    .map(|(s, f)| vec![num("symbol", s), num("freq", f)])
                    .collect()
            }
            Query::FtGet { term, k } => {
                let ix = self.inv_index()?;
                match self.term(ix, term, warnings) {
                    Some(t) => vec![vec![num("doc", ix.ft_get(TermRange::single(t), *k)?)]],
                    None => Vec::new(),
                }
            }
            Query::FtSeg { term, k, k2 } => {
                let ix = self.inv_index()?;
                match self.term(ix, term, warnings) {
                    Some(t) => ix
                        .ft_segment(TermRange::single(t), *k, *k2)?
                        .into_iter()
                        .map(|(d, _)| vec![num("doc", d)])
                        .collect(),
                    None => Vec::new(),
                }
            }
            Query::LtSeg { term, i, i2 } => {
                let ix = self.inv_index()?;
                match self.term(ix, term, warnings) {
                    Some(t) => ix
                        .lt_segment(t, *i, *i2)?
                        .into_iter()
                        .map(|(d, f)| vec![num("doc", d), num("tf", f)])
                        .collect(),
                    None => Vec::new(),
                }
            }
            Query::Intersect { terms } => {
                let ix = self.inv_index()?;
                let mut ranges = Vec::new();
                for term in terms {
                    match self.term(ix, term, warnings) {
                        Some(t) => ranges.push(TermRange::single(t)),
                        None => return Ok(Vec::new()),
                    }
                }
                self.intersect(ix, &ranges, opts)?
            }
            Query::StemIntersect { stems } => {
                let ix = self.inv_index()?;
                let mut ranges = Vec::new();
                for stem in stems {
                    match ix.stem_range(stem) {
                        Some(r) => ranges.push(r),
                        None => {
                            warnings.push(format!("no term matches `{stem}`"));
                            return Ok(Vec::new());
                        }
                    }
                }
                self.intersect(ix, &ranges, opts)?
            }
            Query::VocabOf { doc } => {
                let ix = self.inv_index()?;
                ix.local_vocab(*doc)?
                    .into_iter()
                    .map(|t| Ok(vec![("term", Value::Text(ix.term(t)?.to_string()))]))
                    .collect::<Result<_>>()?
            }
            Query::Contains { term, doc } => {
                let ix = self.inv_index()?;
                match self.term(ix, term, warnings) {
                    Some(t) => match ix.contains(t, *doc)? {
                        Some(off) => vec![vec![num("offset", off), num("tf", ix.tf_at(t, off)?)]],
                        None => Vec::new(),
                    },
                    None => Vec::new(),
                }
            }
            Query::PersinPrefix { term, f } => {
                let ix = self.inv_index()?;
                match self.term(ix, term, warnings) {
                    Some(t) => vec![vec![num("prefix", ix.persin_prefix(t, *f)?)]],
                    None => Vec::new(),
                }
            }
        })
    }

    fn intersect(&self, ix: &InvIndex, ranges: &[TermRange], opts: &QueryOptions) -> Result<Vec<Record>> {
        let t = opts.threshold.unwrap_or(ranges.len());
        ix.intersect(ranges, t, opts.range)?
            .into_iter()
            .map(|(d, counts)| {
                let tfs = ranges
                    .iter()
                    .zip(&counts)
                    .map(|(&r, &c)| if c == 0 { Ok(0) } else { ix.sum_tf_stemmed(r, d) })
                    .collect::<wvx::Result<Vec<_>>>()?;
                Ok(vec![num("doc", d), ("tf", Value::List(tfs))])
            })
            .collect()
    }

    fn term(&self, ix: &InvIndex, term: &str, warnings: &mut Vec<String>) -> Option<usize> {
        let t = ix.term_id(&term.to_lowercase());
        if t.is_none() {
            warnings.push(format!("unknown term `{term}`"));
        }
        t
    }

    fn tag(&self, h: &HierIndex, tag: &str, warnings: &mut Vec<String>) -> Option<usize> {
        let t = h.tag_id(tag);
        if t.is_none() {
            warnings.push(format!("unknown tag `{tag}`"));
        }
        t
    }
}

/// Parses `a:b`.
pub fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    Ok((a, b))
}

/// Renders the build summary as `key<TAB>value` lines.
pub fn render_summary(pairs: &[(String, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}\t{v}");
    }
    s
}
