//! Command-line front end: one subcommand per capability, line-delimited
//! JSON on stdout, diagnostics on stderr.
//!
//! Exit status: 0 on success, 1 when a hypothesis or verification fails,
//! 2 on malformed input.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use palper::audit::{self, AuditReport};
use palper::construct::{self, Certificate, CrossingPair};
use palper::corpus::{self, Famous};
use palper::generic::{build_table, published_table, Parity, PeriodTable};
use palper::gword::{essential_centres_in_gword, gword_chain, gword_params, gword_period};
use palper::palperiod::{decompose_ps, enumerate_parameterizations, find_maximal_pps, find_pps_naive, OccurrenceRecord};
use palper::{Error, HalfPos, Span, Word};

#[derive(Parser)]
#[command(name = "palper", version, about = "Palindromic periodicities in finite words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the maximal palindromic periodicities of a word.
    Detect(DetectArgs),
    /// List every (offset, half-period) under which a word is a palindromic periodicity.
    Params(WordArg),
    /// Build a palindromic periodicity from palindromes and periods.
    Construct {
        #[command(subcommand)]
        theorem: Theorem,
    },
    /// Analyse g-word parameters, optionally deriving the period on a word.
    Gword(GwordArgs),
    /// Least periods of generic double palindromic periodicities.
    Table(TableArgs),
    /// Count maximal palindromic periodicities in prefixes of a classical word.
    Census(CensusArgs),
    /// Run the exhaustive property sweeps.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WordArg {
    /// Word in letter form (`accab`) or integer form (`i:0,2,2,0,1`).
    #[arg(long)]
    word: Word,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WordSource {
    #[arg(long)]
    word: Option<Word>,
    /// File with one word per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    source: WordSource,
    /// Use the exhaustive quadratic-space oracle instead of the fast scan.
    #[arg(long)]
    naive: bool,
}

#[derive(Subcommand)]
enum Theorem {
    /// A palindrome with period p and length at least 2p+1.
    PeriodicPalindrome {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        period: usize,
    },
    /// Common prefix of u'u^ω and v'v^ω with v the reverse of u.
    ReversePrefixes {
        #[arg(long)]
        u: Word,
        /// Length of the suffix u' of u.
        #[arg(long)]
        u_suffix: usize,
        /// Length of the suffix v' of v.
        #[arg(long)]
        v_suffix: usize,
        #[arg(long)]
        len: usize,
    },
    /// Two palindromes containing each other's centres.
    Crossing {
        #[arg(long)]
        word: Word,
        /// First palindrome as `start:end`.
        #[arg(long, value_parser = parse_span)]
        first: Span,
        #[arg(long, value_parser = parse_span)]
        second: Span,
    },
    /// Overlapping palindromes where one does not contain the other's centre.
    Chained {
        #[arg(long)]
        word: Word,
        #[arg(long, value_parser = parse_span)]
        first: Span,
        #[arg(long, value_parser = parse_span)]
        second: Span,
    },
    /// An inner palindrome crossing the centre of a palindromic word.
    Nested {
        #[arg(long)]
        word: Word,
        #[arg(long, value_parser = parse_span)]
        inner: Span,
    },
    /// A palindromic border at least half as long as the word.
    Border {
        #[arg(long)]
        word: Word,
        #[arg(long)]
        border: usize,
    },
}

/// A value in ℤ/2 given either as a fraction (`13/2`, `6.5`) or doubled.
#[derive(Args)]
struct GwordArgs {
    /// Lattice offset r.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "r2")]
    r: Option<HalfPos>,
    /// Lattice offset given doubled (`--r2 13` is `--r 13/2`).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "r")]
    r2: Option<i64>,
    /// Centre c of the g-word.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "c2")]
    c: Option<HalfPos>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "c")]
    c2: Option<i64>,
    /// Half-period h.
    #[arg(long, required_unless_present = "h2")]
    h: Option<HalfPos>,
    #[arg(long, conflicts_with = "h")]
    h2: Option<i64>,
    /// Word to derive the period on; its g-word is `word[i+1..i+n]`.
    #[arg(long)]
    word: Option<Word>,
    /// Embedding offset i of the g-word in the word.
    #[arg(long, default_value_t = 0)]
    embed: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Same,
    Opposite,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Same => Parity::Same,
            ParityArg::Opposite => Parity::Opposite,
        }
    }
}

#[derive(Args)]
struct TableArgs {
    /// First half-period h1 (fraction syntax).
    #[arg(long, required_unless_present = "h1_doubled")]
    h1: Option<HalfPos>,
    /// First half-period given doubled.
    #[arg(long, conflicts_with = "h1")]
    h1_doubled: Option<i64>,
    /// Second half-period h2 (fraction syntax).
    #[arg(long, required_unless_present = "h2_doubled")]
    h2: Option<HalfPos>,
    #[arg(long, conflicts_with = "h2")]
    h2_doubled: Option<i64>,
    #[arg(long, value_enum)]
    parity: ParityArg,
    /// Lengths as `max:min` (decreasing), a single length, or a comma list.
    #[arg(long, value_parser = parse_lengths)]
    lengths: Lengths,
    /// Print TSV instead of JSON.
    #[arg(long)]
    tsv: bool,
    /// Compare against a TSV table; without a path, the bundled published table.
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    diff: Option<String>,
}

#[derive(Clone)]
struct Lengths(Vec<usize>);

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    famous: Famous,
    #[arg(long)]
    n: usize,
    /// Distance between reported prefix lengths; defaults to `n`.
    #[arg(long)]
    stride: Option<usize>,
    /// Largest prefix length allowed.
    #[arg(long, default_value_t = corpus::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Tables,
    DppLemma,
    Table2Threshold,
    PeriodicPalindrome,
    Crossing,
    Chained,
    Detection,
    FwSharpness,
    Inference,
    Gword,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run; all when omitted.
    #[arg(long, value_enum, num_args = 1..)]
    suite: Vec<Suite>,
    /// Longest binary word in the exhaustive corpora.
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    /// Random ternary words per length above 10 in the construction audits.
    #[arg(long, default_value_t = 2000)]
    ternary_samples: usize,
    /// Random ternary words of length up to 60 for the detection audit.
    #[arg(long, default_value_t = 1000)]
    random: usize,
    /// Largest doubled half-period in the lemma sweeps.
    #[arg(long, default_value_t = 16)]
    max_period: i64,
}

fn parse_span(s: &str) -> Result<Span, String> {
    let (a, b) = s.split_once(':').or_else(|| s.split_once("..")).ok_or("expected start:end")?;
    let a = a.trim().parse().map_err(|_| format!("bad start `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad end `{b}`"))?;
    Span::new(a, b).map_err(|e| e.to_string())
}

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad length `{t}`"));
    let v: Vec<usize> = if let Some((hi, lo)) = s.split_once(':') {
        let (hi, lo) = (num(hi)?, num(lo)?);
        if hi < lo {
            return Err(format!("range {hi}:{lo} must be decreasing"));
        }
        (lo..=hi).rev().collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if v.is_empty() || v.contains(&0) {
        return Err("lengths must be positive".into());
    }
    Ok(Lengths(v))
}

/// Either of the two spellings of a ℤ/2 argument.
fn half(frac: Option<HalfPos>, doubled: Option<i64>) -> HalfPos {
    frac.or(doubled.map(HalfPos)).expect("clap enforces one of the two")
}

type Out = BufWriter<io::StdoutLock<'static>>;

/// A closed stdout (e.g. piping into `head`) ends the run quietly.
fn io_failed(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    Error::Verification(format!("writing output: {e}"))
}

fn emit<T: Serialize>(out: &mut Out, value: &T) -> Result<(), Error> {
    let line = serde_json::to_string(value).map_err(|e| Error::Verification(e.to_string()))?;
    writeln!(out, "{line}").map_err(io_failed)
}

#[derive(Serialize)]
struct DetectLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(flatten)]
    occurrence: OccurrenceRecord,
}

fn detect(out: &mut Out, args: DetectArgs) -> Result<(), Error> {
    let words: Vec<(Option<usize>, Word)> = match (args.source.word, args.source.file) {
        (Some(w), _) => vec![(None, w)],
        (None, Some(path)) => {
            let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            text.lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(k, l)| Ok((Some(k + 1), l.trim().parse()?)))
                .collect::<Result<_, Error>>()?
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    for (line, w) in words {
        let occs = if args.naive { find_pps_naive(&w) } else { find_maximal_pps(&w) };
        for o in occs {
            emit(out, &DetectLine { line, occurrence: o.record(&w) })?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ParamLine {
    doubled_offset: i64,
    offset: String,
    doubled_half_period: i64,
    half_period: String,
    period: usize,
    p: String,
    s: String,
}

fn params(out: &mut Out, args: WordArg) -> Result<(), Error> {
    for (r, h) in enumerate_parameterizations(&args.word) {
        let d = decompose_ps(&args.word, r, h)?;
        emit(
            out,
            &ParamLine {
                doubled_offset: r.0,
                offset: r.to_string(),
                doubled_half_period: h.0,
                half_period: h.to_string(),
                period: h.0 as usize,
                p: d.p.to_string(),
                s: d.s.to_string(),
            },
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct FactorOut {
    start: usize,
    end: usize,
    factor: String,
}

#[derive(Serialize)]
struct CertificateOut {
    theorem: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    start: usize,
    end: usize,
    doubled_offset: i64,
    offset: String,
    doubled_half_period: i64,
    half_period: String,
    period: usize,
    doubled_essential_centres: Vec<i64>,
    essential_centres: Vec<String>,
    p: String,
    s: String,
    witnesses: Vec<FactorOut>,
}

fn certificate_out(theorem: &'static str, w: &Word, cert: &Certificate, show_word: bool) -> Result<CertificateOut, Error> {
    let pp = &cert.periodicity;
    let d = pp.decomposition(w)?;
    let factor = |s: Span| -> Result<FactorOut, Error> {
        Ok(FactorOut { start: s.start, end: s.end, factor: w.factor(s)?.to_string() })
    };
    Ok(CertificateOut {
        theorem,
        word: show_word.then(|| w.to_string()),
        start: pp.span.start,
        end: pp.span.end,
        doubled_offset: pp.offset.0,
        offset: pp.offset.to_string(),
        doubled_half_period: pp.half_period.0,
        half_period: pp.half_period.to_string(),
        period: cert.period,
        doubled_essential_centres: pp.essential_centres.iter().map(|c| c.0).collect(),
        essential_centres: pp.essential_centres.iter().map(|c| c.to_string()).collect(),
        p: d.p.to_string(),
        s: d.s.to_string(),
        witnesses: cert.witnesses.iter().map(|&s| factor(s)).collect::<Result<_, _>>()?,
    })
}

fn construct_cmd(out: &mut Out, theorem: Theorem) -> Result<(), Error> {
    let record = match theorem {
        Theorem::PeriodicPalindrome { word, period } => {
            let cert = construct::from_periodic_palindrome(&word, period)?;
            certificate_out("periodic-palindrome", &word, &cert, false)?
        }
        Theorem::ReversePrefixes { u, u_suffix, v_suffix, len } => {
            let (word, cert) = construct::from_reverse_prefixes(&u, u_suffix, v_suffix, len)?;
            certificate_out("reverse-prefixes", &word, &cert, true)?
        }
        Theorem::Crossing { word, first, second } => {
            let cert = construct::from_crossing_palindromes(&word, CrossingPair::from_spans(first, second))?;
            certificate_out("crossing", &word, &cert, false)?
        }
        Theorem::Chained { word, first, second } => {
            let cert = construct::from_chained_palindromes(&word, CrossingPair::from_spans(first, second))?;
            certificate_out("chained", &word, &cert, false)?
        }
        Theorem::Nested { word, inner } => {
            let cert = construct::from_nested_crossing(&word, inner)?;
            certificate_out("nested", &word, &cert, false)?
        }
        Theorem::Border { word, border } => {
            let cert = construct::from_palindromic_border(&word, border)?;
            certificate_out("border", &word, &cert, false)?
        }
    };
    emit(out, &record)
}

#[derive(Serialize)]
struct LevelOut {
    n: usize,
    doubled_offset: i64,
    offset: String,
    doubled_centre: i64,
    centre: String,
    doubled_half_period: i64,
    half_period: String,
    start: usize,
    end: usize,
}

#[derive(Serialize)]
struct FactOut {
    start: usize,
    end: usize,
    period: usize,
}

#[derive(Serialize)]
struct GwordOut {
    g: usize,
    n: usize,
    doubled_offset: i64,
    offset: String,
    doubled_centre: i64,
    centre: String,
    doubled_half_period: i64,
    half_period: String,
    embed: usize,
    doubled_essential_centres: [i64; 2],
    essential_centres: [String; 2],
    levels: Vec<LevelOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period_fact: Option<FactOut>,
}

fn gword_cmd(out: &mut Out, args: GwordArgs) -> Result<(), Error> {
    let (r, c, h) = (half(args.r, args.r2), half(args.c, args.c2), half(args.h, args.h2));
    let p = gword_params(r, c, h)?;
    let (e1, e2) = essential_centres_in_gword(&p, args.embed);
    let levels = gword_chain(&p)?
        .into_iter()
        .map(|(q, span)| LevelOut {
            n: q.n,
            doubled_offset: q.offset_r.0,
            offset: q.offset_r.to_string(),
            doubled_centre: q.centre_c.0,
            centre: q.centre_c.to_string(),
            doubled_half_period: q.half_period_h.0,
            half_period: q.half_period_h.to_string(),
            start: span.start + args.embed,
            end: span.end + args.embed,
        })
        .collect();
    let period_fact = match &args.word {
        Some(w) => {
            let f = gword_period(w, &p, args.embed)?;
            Some(FactOut { start: f.span.start, end: f.span.end, period: f.period })
        }
        None => None,
    };
    emit(
        out,
        &GwordOut {
            g: p.g,
            n: p.n,
            doubled_offset: p.offset_r.0,
            offset: p.offset_r.to_string(),
            doubled_centre: p.centre_c.0,
            centre: p.centre_c.to_string(),
            doubled_half_period: p.half_period_h.0,
            half_period: p.half_period_h.to_string(),
            embed: args.embed,
            doubled_essential_centres: [e1.0, e2.0],
            essential_centres: [e1.to_string(), e2.to_string()],
            levels,
            period_fact,
        },
    )
}

#[derive(Serialize)]
struct DiffSummary {
    cells: usize,
    mismatches: usize,
    matched: bool,
}

fn table_cmd(out: &mut Out, args: TableArgs) -> Result<bool, Error> {
    let (h1, h2) = (half(args.h1, args.h1_doubled), half(args.h2, args.h2_doubled));
    let parity = Parity::from(args.parity);
    let table = build_table(h1, h2, parity, &args.lengths.0)?;
    let Some(path) = args.diff else {
        if args.tsv {
            write!(out, "{}", table.to_tsv()).map_err(io_failed)?;
        } else {
            emit(out, &table)?;
        }
        return Ok(true);
    };
    let expected = if path.is_empty() {
        let (four, six) = (HalfPos::from_int(4), HalfPos::from_int(6));
        if (h1, h2) != (four, six) {
            return Err(Error::Parse("the bundled tables have h1 = 4, h2 = 6; pass a table path".into()));
        }
        published_table(parity)
    } else {
        let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        PeriodTable::from_tsv(&text, h1, h2)?
    };
    let diffs = table.diff(&expected);
    for d in &diffs {
        emit(out, d)?;
    }
    let cells = expected.rows.len() * expected.lengths.len();
    emit(out, &DiffSummary { cells, mismatches: diffs.len(), matched: diffs.is_empty() })?;
    if !diffs.is_empty() {
        eprintln!("palper: {} of {cells} cells differ", diffs.len());
    }
    Ok(diffs.is_empty())
}

fn census_cmd(out: &mut Out, args: CensusArgs) -> Result<(), Error> {
    let stride = args.stride.unwrap_or(args.n);
    for rec in corpus::census(args.famous, args.n, stride, args.budget)? {
        emit(out, &rec)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyLine {
    #[serde(flatten)]
    report: AuditReport,
    passed: bool,
    seconds: f64,
}

fn verify_cmd(out: &mut Out, args: VerifyArgs) -> Result<bool, Error> {
    let suites = if args.suite.is_empty() { Suite::value_variants().to_vec() } else { args.suite };
    let needs_theorems = suites.iter().any(|s| {
        matches!(s, Suite::PeriodicPalindrome | Suite::Crossing | Suite::Chained)
    });
    let theorem_words = if needs_theorems {
        let mut words = audit::Corpus::exhaustive(2, args.max_len).words();
        words.extend(
            audit::Corpus { alphabet: 3, exhaustive_len: 10.min(args.max_len), max_len: args.max_len, samples: args.ternary_samples, seed: 0x5eed }
                .words(),
        );
        words
    } else {
        Vec::new()
    };
    let mut all_passed = true;
    for suite in suites {
        let start = Instant::now();
        let reports = match suite {
            Suite::Tables => vec![audit::audit_tables()],
            Suite::DppLemma => vec![audit::audit_dpp_lemma(args.max_period)],
            Suite::Table2Threshold => vec![audit::audit_table2_threshold(40)],
            Suite::PeriodicPalindrome => vec![audit::audit_periodic_palindrome(&theorem_words)],
            Suite::Crossing => {
                let (both, unit) = audit::audit_crossing(&theorem_words);
                vec![both, unit]
            }
            Suite::Chained => vec![audit::audit_chained(&theorem_words)],
            Suite::Detection => {
                let mut words = audit::Corpus::exhaustive(2, args.max_len).words();
                words.extend(audit::random_words(args.random, 3, 60, 0xdec0de));
                vec![audit::audit_detection(&words)]
            }
            Suite::FwSharpness => vec![audit::audit_fw_sharpness(6)],
            Suite::Inference => vec![audit::audit_inference(&audit::Corpus::exhaustive(2, args.max_len).words())],
            Suite::Gword => vec![audit::audit_gword(2 * args.max_period.max(20))],
        };
        let seconds = start.elapsed().as_secs_f64();
        for report in reports {
            let passed = report.passed();
            all_passed &= passed;
            emit(out, &VerifyLine { report, passed, seconds })?;
        }
        out.flush().map_err(io_failed)?;
    }
    Ok(all_passed)
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mut out: Out = BufWriter::new(io::stdout().lock());
    let ok = match cli.command {
        Command::Detect(a) => detect(&mut out, a).map(|_| true),
        Command::Params(a) => params(&mut out, a).map(|_| true),
        Command::Construct { theorem } => construct_cmd(&mut out, theorem).map(|_| true),
        Command::Gword(a) => gword_cmd(&mut out, a).map(|_| true),
        Command::Table(a) => table_cmd(&mut out, a),
        Command::Census(a) => census_cmd(&mut out, a).map(|_| true),
        Command::Verify(a) => verify_cmd(&mut out, a),
    }?;
    out.flush().map_err(io_failed)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("palper: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
