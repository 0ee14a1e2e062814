use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wvx_cli::{parse_range, render_summary, BuildOptions, Bundle, CliError, Mode, Query, QueryOptions, Seq};

#[derive(Parser)]
#[command(name = "wvx", version, about = "Wavelet-tree document and postings indexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a corpus or an XML document.
    Build {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Directory (one file per document), record-separated file, or XML file for hier.
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Record separator byte for single-file corpora.
        #[arg(long, default_value_t = wvx_cli::DEFAULT_SEP)]
        sep: u8,
        /// Keep the raw text in the index so queries need no --corpus.
        #[arg(long)]
        store_text: bool,
        /// File of `term stem` pairs grouping term variants.
        #[arg(long)]
        stem_map: Option<PathBuf>,
    },
    /// Answer a query against an index file.
    Query(QueryArgs),
}

#[derive(Args)]
struct QueryArgs {
    /// Index file written by `build`.
    index: PathBuf,
    /// Corpus the index was built from, required if built without --store-text.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Record separator byte of a single-file --corpus.
    #[arg(long, global = true)]
    sep: Option<u8>,
    /// Document range (listing queries) or symbol range (rint, count, report).
    #[arg(long, global = true, value_parser = parse_range)]
    range: Option<(usize, usize)>,
    /// Minimum number of lists a result must appear in; defaults to all.
    #[arg(long, global = true)]
    threshold: Option<usize>,
    /// Sequence used by rqq, rnv, rint, count and report.
    #[arg(long, global = true, value_enum)]
    seq: Option<Seq>,
    /// JSON lines instead of tab-separated output.
    #[arg(long, global = true)]
    json: bool,
    /// Print node-visit counters on standard error.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    query: QueryCmd,
}

#[derive(Subcommand)]
enum QueryCmd {
    /// Documents containing a pattern, with occurrence counts.
    Dlist { pattern: String },
    /// Occurrences of a pattern in one document.
    Dfreq { pattern: String, doc: usize },
    /// Documents containing at least --threshold of the patterns.
    Dint {
        #[arg(required = true, num_args = 1..)]
        patterns: Vec<String>,
    },
    /// Units tagged TAG whose text contains a pattern.
    Hdlist { tag: String, pattern: String },
    /// Units tagged TAG containing both patterns.
    Hdint { tag: String, first: String, second: String },
    /// Occurrences of a pattern below a node.
    Hdfreq { pattern: String, node: usize },
    /// k-th smallest symbol of positions i..=j.
    Rqq { i: usize, j: usize, k: usize },
    /// Smallest symbol >= x in positions i..=j.
    Rnv { i: usize, j: usize, x: usize },
    /// Symbols shared by at least --threshold of the position ranges a:b.
    Rint {
        #[arg(required = true, num_args = 1.., value_parser = parse_range)]
        ranges: Vec<(usize, usize)>,
    },
    /// Positions i..=j holding a symbol within --range.
    Count { i: usize, j: usize },
    /// Distinct symbols of positions i..=j within --range, with frequencies.
    Report { i: usize, j: usize },
    /// k-th document of a term's docid-ordered list.
    FtGet { term: String, k: usize },
    /// Entries k..=k2 of a term's docid-ordered list.
    FtSeg { term: String, k: usize, k2: usize },
    /// Entries i..=i2 of a term's frequency-ordered list, by document.
    LtSeg { term: String, i: usize, i2: usize },
    /// Documents holding at least --threshold of the terms.
    Intersect {
        #[arg(required = true, num_args = 1..)]
        terms: Vec<String>,
    },
    /// Like intersect, over stems (`prefix*` or a stem-map key).
    StemIntersect {
        #[arg(required = true, num_args = 1..)]
        stems: Vec<String>,
    },
    /// Terms of a document.
    VocabOf { doc: usize },
    /// Offset of a document within a term's frequency-ordered list.
    Contains { term: String, doc: usize },
    /// Length of the prefix of a term's list with tf at least f.
    PersinPrefix { term: String, f: usize },
}

impl QueryCmd {
    fn into_query(self) -> Query {
        let b = |s: String| s.into_bytes();
        match self {
            QueryCmd::Dlist { pattern } => Query::Dlist { pattern: b(pattern) },
            QueryCmd::Dfreq { pattern, doc } => Query::Dfreq { pattern: b(pattern), doc },
            QueryCmd::Dint { patterns } => Query::Dint {
                patterns: patterns.into_iter().map(b).collect(),
            },
            QueryCmd::Hdlist { tag, pattern } => Query::Hdlist { tag, pattern: b(pattern) },
            QueryCmd::Hdint { tag, first, second } => Query::Hdint {
                tag,
                first: b(first),
                second: b(second),
            },
            QueryCmd::Hdfreq { pattern, node } => Query::Hdfreq { pattern: b(pattern), node },
            QueryCmd::Rqq { i, j, k } => Query::Rqq { i, j, k },
            QueryCmd::Rnv { i, j, x } => Query::Rnv { i, j, x },
            QueryCmd::Rint { ranges } => Query::Rint { ranges },
            QueryCmd::Count { i, j } => Query::Count { i, j },
            QueryCmd::Report { i, j } => Query::Report { i, j },
            QueryCmd::FtGet { term, k } => Query::FtGet { term, k },
            QueryCmd::FtSeg { term, k, k2 } => Query::FtSeg { term, k, k2 },
            QueryCmd::LtSeg { term, i, i2 } => Query::LtSeg { term, i, i2 },
            QueryCmd::Intersect { terms } => Query::Intersect { terms },
            QueryCmd::StemIntersect { stems } => Query::StemIntersect { stems },
            QueryCmd::VocabOf { doc } => Query::VocabOf { doc },
            QueryCmd::Contains { term, doc } => Query::Contains { term, doc },
            QueryCmd::PersinPrefix { term, f } => Query::PersinPrefix { term, f },
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    let write_out = |out: &mut io::StdoutLock, s: &str| {
        out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    };
    match cli.command {
        Command::Build {
            mode,
            input,
            output,
            sep,
            store_text,
            stem_map,
        } => {
            let opts = BuildOptions {
                sep: Some(sep),
                store_text,
                stem_map: stem_map.as_deref().map(wvx_cli::load_stem_map).transpose()?,
            };
            let bundle = Bundle::build(mode, &input, &opts)?;
            let mut buf = Vec::new();
            bundle.save(&mut buf)?;
            fs::write(&output, &buf).map_err(|source| CliError::Io { path: output, source })?;
            write_out(&mut stdout, &render_summary(&bundle.summary()))
        }
        Command::Query(args) => {
            let bundle = Bundle::load_file(&args.index, args.corpus.as_deref(), args.sep)?;
            let opts = QueryOptions {
                range: args.range,
                threshold: args.threshold,
                seq: args.seq,
            };
            let out = bundle.query(&args.query.into_query(), &opts)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if args.stats || std::env::var("WVX_STATS").is_ok_and(|v| v == "1") {
                eprintln!("node_visits\t{}", out.node_visits);
            }
            write_out(&mut stdout, &out.render(args.json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wvx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
