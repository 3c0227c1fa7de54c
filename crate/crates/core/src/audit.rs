//! Exhaustive and sampled property sweeps shared by `palper verify` and the
//! acceptance suite. Each sweep counts the cases it checked and keeps the
//! first few counterexamples.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{
    from_chained_palindromes, from_crossing_palindromes, from_periodic_palindrome, CrossingPair,
};
use crate::generic::{build_table, dpp_bound, generic_word, lattice_pairs, published_table, GenericSpec, Lattice, Parity};
use crate::gword::{gword_params, gword_period};
use crate::half::HalfPos;
use crate::inference::{fw_refine, Inference, PeriodFact};
use crate::palindrome::palindrome_lengths;
use crate::palperiod::{find_maximal_pps, find_pps_naive};
use crate::parallel;
use crate::word::{self, Letter, Span, Word};

const KEPT_EXAMPLES: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub suite: String,
    pub cases: u64,
    pub failures: u64,
    /// The first few counterexamples, in corpus order.
    pub examples: Vec<String>,
}

impl AuditReport {
    pub fn new(suite: &str) -> Self {
        AuditReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    fn absorb(mut self, other: AuditReport) -> Self {
        self.cases += other.cases;
        self.failures += other.failures;
        let room = KEPT_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
        self
    }
}

/// Which words a sweep runs over: every word up to `exhaustive_len`, then
/// `samples` random words for each longer length up to `max_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub alphabet: u32,
    pub exhaustive_len: usize,
    pub max_len: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Corpus {
    pub fn exhaustive(alphabet: u32, max_len: usize) -> Self {
        Corpus { alphabet, exhaustive_len: max_len, max_len, samples: 0, seed: 0 }
    }

    pub fn words(&self) -> Vec<Vec<Letter>> {
        let k = self.alphabet as u64;
        let mut out = Vec::new();
        for n in 1..=self.exhaustive_len.min(self.max_len) {
            let total = k.pow(n as u32);
            out.extend((0..total).map(|mut code| {
                (0..n)
                    .map(|_| {
                        let l = (code % k) as Letter;
                        code /= k;
                        l
                    })
                    .collect()
            }));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for n in self.exhaustive_len + 1..=self.max_len {
            for _ in 0..self.samples {
                out.push((0..n).map(|_| rng.gen_range(0..self.alphabet)).collect());
            }
        }
        out
    }
}

/// Runs `check` on every word of `corpus` in parallel and merges the reports
/// in corpus order.
fn sweep(suite: &str, corpus: &[Vec<Letter>], check: impl Fn(&Word, &mut AuditReport) + Sync) -> AuditReport {
    let parts: Vec<AuditReport> = parallel::install(|| {
        corpus
            .par_chunks(256)
            .map(|chunk| {
                let mut rep = AuditReport::new(suite);
                for letters in chunk {
                    check(&Word::from_letters(letters.clone()), &mut rep);
                }
                rep
            })
            .collect()
    });
    parts.into_iter().fold(AuditReport::new(suite), AuditReport::absorb)
}

/// Published tables rebuilt cell by cell.
pub fn audit_tables() -> AuditReport {
    let mut rep = AuditReport::new("tables");
    for (parity, lengths) in [(Parity::Same, 6..=16), (Parity::Opposite, 8..=18)] {
        let lengths: Vec<usize> = lengths.rev().collect();
        let expected = published_table(parity);
        let built = build_table(expected.h1, expected.h2, parity, &lengths).expect("valid table parameters");
        let diffs = built.diff(&expected);
        for row in &expected.rows {
            for &len in &expected.lengths {
                let bad = diffs.iter().find(|d| d.r1 == row.r1 && d.r2 == row.r2 && d.len == len);
                rep.check(bad.is_none(), || format!("{bad:?}"));
            }
        }
    }
    rep
}

/// The two-lattice periodicity lemma on generic words at exactly the bound
/// length, for every pair of doubled half-periods in `2..=max_period` and
/// every pair of half-integer offsets. Identical parameter pairs describe a
/// single palindromic periodicity, not a double one, and are skipped.
pub fn audit_dpp_lemma(max_period: i64) -> AuditReport {
    let cases: Vec<(i64, i64)> = (2..=max_period).flat_map(|a| (2..=max_period).map(move |b| (a, b))).collect();
    let parts: Vec<AuditReport> = parallel::install(|| {
        cases
            .par_iter()
            .map(|&(h1, h2)| {
                let mut rep = AuditReport::new("dpp-lemma");
                for r1 in 0..h1 {
                    for r2 in 0..h2 {
                        if (r1, h1) == (r2, h2) {
                            continue;
                        }
                        let (l1, l2) = ((HalfPos(r1), HalfPos(h1)), (HalfPos(r2), HalfPos(h2)));
                        let (len, g) = dpp_bound(l1.0, l1.1, l2.0, l2.1);
                        let spec = GenericSpec::double(len, l1, l2).expect("positive parameters");
                        let p = word::least_period(generic_word(&spec).letters());
                        rep.check(g % p == 0, || format!("2h1={h1} 2h2={h2} 2r1={r1} 2r2={r2}: period {p}, gcd {g}"));
                    }
                }
                rep
            })
            .collect()
    });
    parts.into_iter().fold(AuditReport::new("dpp-lemma"), AuditReport::absorb)
}

/// Every opposite-parity offset pair for `h1 = 4`, `h2 = 6` has least period
/// 2 at each length in `13..=max_len`.
pub fn audit_table2_threshold(max_len: usize) -> AuditReport {
    let mut rep = AuditReport::new("table2-threshold");
    let lengths: Vec<usize> = (13..=max_len).rev().collect();
    let t = build_table(HalfPos::from_int(4), HalfPos::from_int(6), Parity::Opposite, &lengths).expect("valid");
    for row in &t.rows {
        for (&len, &p) in t.lengths.iter().zip(&row.periods) {
            rep.check(p == 2, || format!("r1={} r2={} len={len}: period {p}", row.r1, row.r2));
        }
    }
    rep
}

/// All non-empty palindromic factors as spans.
fn palindromic_factors(w: &Word) -> Vec<Span> {
    let n = w.len();
    let lens = palindrome_lengths(w.letters());
    let mut out = Vec::new();
    for c in 2..=2 * n {
        let mut len = lens[c];
        while len > 0 {
            let start = (c + 1 - len) / 2;
            out.push(Span { start, end: start + len - 1 });
            len = len.saturating_sub(2);
        }
    }
    out
}

/// A palindrome with period `p` and length at least `2p + 1` is a
/// palindromic periodicity with period `p`.
pub fn audit_periodic_palindrome(corpus: &[Vec<Letter>]) -> AuditReport {
    sweep("periodic-palindrome", corpus, |w, rep| {
        if !w.is_palindrome() {
            return;
        }
        for p in 1..=(w.len().saturating_sub(1)) / 2 {
            if word::has_period(w.letters(), p) {
                let res = from_periodic_palindrome(w, p);
                rep.check(res.is_ok(), || format!("{w} p={p}: {:?}", res.err()));
            }
        }
    })
}

/// Crossing palindromes give a palindromic periodicity with period
/// `2(c2 - c1)`. Returns the main report and the report restricted to
/// centres half a position apart (period 1).
pub fn audit_crossing(corpus: &[Vec<Letter>]) -> (AuditReport, AuditReport) {
    let both = sweep("crossing-palindromes", corpus, |w, rep| {
        let pals = palindromic_factors(w);
        for &a in &pals {
            for &b in &pals {
                let pair = CrossingPair::from_spans(a, b);
                let (c1, r1, c2, r2) = (pair.first.centre.0, pair.first.radius.0, pair.second.centre.0, pair.second.radius.0);
                let chain = c1 - r1 <= c2 - r2 && c2 - r2 <= c1 && c1 < c2 && c2 <= c1 + r1 && c1 + r1 <= c2 + r2;
                if !chain || pair.first.span() != a {
                    continue;
                }
                let res = from_crossing_palindromes(w, pair);
                let ok = matches!(&res, Ok(c) if c.period == (c2 - c1) as usize);
                // tag period-1 cases so the caller can split them out
                let tag = if c2 - c1 == 1 { "period-1 " } else { "" };
                rep.check(ok, || format!("{tag}{w} {a} {b}: {:?}", res.err()));
            }
        }
    });
    let unit = sweep("crossing-period-1", corpus, |w, rep| {
        let pals = palindromic_factors(w);
        for &a in &pals {
            for &b in &pals {
                let pair = CrossingPair::from_spans(a, b);
                let (c1, r1, c2, r2) = (pair.first.centre.0, pair.first.radius.0, pair.second.centre.0, pair.second.radius.0);
                if c2 - c1 != 1 || pair.first.span() != a {
                    continue;
                }
                if !(c1 - r1 <= c2 - r2 && c2 - r2 <= c1 && c2 <= c1 + r1 && c1 + r1 <= c2 + r2) {
                    continue;
                }
                let res = from_crossing_palindromes(w, pair);
                let span = res.as_ref().map(|c| c.periodicity.span).unwrap_or(a);
                let ok = res.is_ok() && word::has_period(w.slice(span), 1);
                rep.check(ok, || format!("{w} {a} {b}"));
            }
        }
    });
    (both, unit)
}

/// Chained palindromes `w[a..b]`, `w[c..d]` give a palindromic periodicity on
/// `w[a..d]` with period `d - a - b + c`.
pub fn audit_chained(corpus: &[Vec<Letter>]) -> AuditReport {
    sweep("chained-palindromes", corpus, |w, rep| {
        let pals = palindromic_factors(w);
        for &x in &pals {
            for &y in &pals {
                let (a, b, c, d) = (x.start as i64, x.end as i64, y.start as i64, y.end as i64);
                if !(a <= c && c <= b && b <= d && a + b < c + d) {
                    continue;
                }
                if !(2 * b < c + d || 2 * c > a + b) {
                    continue;
                }
                let res = from_chained_palindromes(w, CrossingPair::from_spans(x, y));
                let ok = matches!(&res, Ok(cert) if cert.period == (d - a - b + c) as usize
                    && cert.periodicity.span == Span { start: x.start, end: y.end });
                rep.check(ok, || format!("{w} {x} {y}: {:?}", res.err()));
            }
        }
    })
}

/// The fast detector agrees with the exhaustive oracle.
pub fn audit_detection(corpus: &[Vec<Letter>]) -> AuditReport {
    sweep("detection", corpus, |w, rep| {
        let (fast, naive) = (find_maximal_pps(w), find_pps_naive(w));
        rep.check(fast == naive, || format!("{w}: fast {fast:?} naive {naive:?}"));
    })
}

/// `len` random words over `alphabet` letters with lengths in `1..=max_len`.
pub fn random_words(count: usize, alphabet: u32, max_len: usize, seed: u64) -> Vec<Vec<Letter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_len);
            (0..n).map(|_| rng.gen_range(0..alphabet)).collect()
        })
        .collect()
}

/// For `p, q <= max` with `gcd(p, q) < min(p, q)`, a word of length
/// `p + q - gcd - 1` with periods `p` and `q` but not `gcd(p, q)`.
pub fn audit_fw_sharpness(max: usize) -> AuditReport {
    let mut rep = AuditReport::new("fw-sharpness");
    for p in 1..=max {
        for q in 1..=max {
            let g = p.gcd(&q);
            if g >= p.min(q) {
                continue;
            }
            let len = p + q - g - 1;
            let witness = fw_witness(len, p, q);
            let ok = word::has_period(witness.letters(), p)
                && word::has_period(witness.letters(), q)
                && !word::has_period(witness.letters(), g)
                && fw_refine(len, p, q).is_none()
                && fw_refine(len + 1, p, q) == Some(g);
            rep.check(ok, || format!("p={p} q={q}: {witness}"));
        }
    }
    rep
}

/// The freest word of length `len` with periods `p` and `q`.
pub fn fw_witness(len: usize, p: usize, q: usize) -> Word {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(len);
    for i in 0..len {
        for d in [p, q] {
            if i + d < len {
                uf.union(i, i + d);
            }
        }
    }
    let mut seen = std::collections::BTreeMap::new();
    Word::from_letters(
        (0..len)
            .map(|i| {
                let k = seen.len() as Letter;
                *seen.entry(uf.find(i)).or_insert(k)
            })
            .collect(),
    )
}

/// The five inference operations in checked mode: whenever the premises
/// hold on the letters, the conclusion must too.
pub fn audit_inference(corpus: &[Vec<Letter>]) -> AuditReport {
    sweep("inference", corpus, |w, rep| {
        let n = w.len();
        let inf = Inference::checked(w);
        let whole = Span::whole(n);
        let periods: Vec<usize> = (1..=n).filter(|&p| word::has_period(w.letters(), p)).collect();
        let fact = |span, period| PeriodFact { span, period };
        for &p in &periods {
            for &q in &periods {
                let (f, g) = (fact(whole, p), fact(whole, q));
                let res = inf.fw(&f, &g);
                rep.check(res.is_ok(), || format!("fw {w} p={p} q={q}: {res:?}"));
                if p > q {
                    let res = inf.la_derive(&f, &g);
                    rep.check(res.is_ok(), || format!("la {w} p={p} q={q}: {res:?}"));
                }
            }
        }
        // l4: factors of length >= q with a period dividing q
        for &q in &periods {
            for start in 1..=n {
                for end in start + q - 1..=n {
                    let span = Span { start, end };
                    let r = word::least_period(w.slice(span));
                    if q % r == 0 {
                        let res = inf.l4_extend(&fact(whole, q), &fact(span, r));
                        rep.check(res.is_ok(), || format!("l4 {w} q={q} {span} r={r}: {res:?}"));
                    }
                }
            }
        }
        // overlap merge: maximal p-periodic stretches starting at each position
        for p in 1..=n / 2 {
            let reach: Vec<usize> = (1..=n)
                .map(|a| (a..=n).take_while(|&b| word::has_period(w.slice(Span { start: a, end: b }), p)).last().unwrap_or(a))
                .collect();
            for a in 1..=n {
                for c in a + 1..=n {
                    let (left, right) = (Span { start: a, end: reach[a - 1] }, Span { start: c, end: reach[c - 1] });
                    if left.overlap(&right) >= p {
                        let res = inf.overlap_merge(&fact(left, p), &fact(right, p));
                        rep.check(res.is_ok(), || format!("merge {w} {left} {right} p={p}: {res:?}"));
                    }
                }
            }
        }
        // equal factors inside the whole word
        for &p in &periods {
            for q in p..n {
                for i in 0..n {
                    for j in i + 2..(i + q).min(n + 1) {
                        if j + q > n {
                            break;
                        }
                        if w.slice(Span { start: i + 1, end: i + q }) != w.slice(Span { start: j + 1, end: j + q }) {
                            continue;
                        }
                        let res = inf.equal_factor_refine(&fact(whole, p), i, j, q);
                        rep.check(res.is_ok(), || format!("equal {w} p={p} i={i} j={j} q={q}: {res:?}"));
                    }
                }
            }
        }
    })
}

/// Generic palindromic periodicity of length `len` (lattice `anchor mod
/// period`, doubled) with a generic palindrome grafted on `[a..b]`.
pub fn grafted_word(len: usize, anchor: i64, period: i64, a: usize, b: usize) -> Word {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(len + 1);
    let lattice = Lattice { offset: HalfPos(anchor), half_period: HalfPos(period) };
    for (x, y) in lattice_pairs(len, lattice) {
        uf.union(x, y);
    }
    for x in a..=b {
        uf.union(x, a + b - x);
    }
    let mut seen = std::collections::BTreeMap::new();
    Word::from_letters(
        (1..=len)
            .map(|x| {
                let k = seen.len() as Letter;
                *seen.entry(uf.find(x)).or_insert(k)
            })
            .collect(),
    )
}

/// The g-word period theorem on generic words: for every parameter set with
/// `2h <= max_period` and `n >= 2g`, several embeddings and word lengths,
/// [`gword_period`] derives period `g` on the whole word.
pub fn audit_gword(max_period: i64) -> AuditReport {
    let mut params = Vec::new();
    for period in 2..=max_period {
        for dist in 1..period {
            let n = period - dist.gcd(&period);
            if let Ok(p) = gword_params(HalfPos(n + 1 - dist), HalfPos(n + 1), HalfPos(period)) {
                if p.n >= 2 * p.g {
                    params.push(p);
                }
            }
        }
    }
    let parts: Vec<AuditReport> = parallel::install(|| {
        params
            .par_iter()
            .map(|p| {
                let mut rep = AuditReport::new("gword-period");
                let period = p.half_period_h.0 as usize;
                for i in [0, 1, p.g, period / 2] {
                    let base = (p.n + i).max(period);
                    for len in [base, base + 1, base + p.g, p.n + i + period] {
                        let anchor = 2 * i as i64 + p.offset_r.0;
                        let w = grafted_word(len, anchor, period as i64, i + 1, i + p.n);
                        let res = gword_period(&w, p, i);
                        let ok = matches!(&res, Ok(f) if f.span == Span::whole(len) && f.period == p.g);
                        rep.check(ok, || format!("{p:?} i={i} len={len}: {res:?}"));
                    }
                }
                rep
            })
            .collect()
    });
    parts.into_iter().fold(AuditReport::new("gword-period"), AuditReport::absorb)
}

/// Corpus for the construction audits: binary up to 12, ternary exhaustive
/// up to 10 and sampled at 11 and 12.
pub fn theorem_corpus(ternary_samples: usize) -> Vec<Vec<Letter>> {
    let mut words = Corpus::exhaustive(2, 12).words();
    words.extend(
        Corpus { alphabet: 3, exhaustive_len: 10, max_len: 12, samples: ternary_samples, seed: 0x5eed }.words(),
    );
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        assert_eq!(Corpus::exhaustive(2, 3).words().len(), 2 + 4 + 8);
        let c = Corpus { alphabet: 3, exhaustive_len: 2, max_len: 4, samples: 5, seed: 1 };
        assert_eq!(c.words().len(), 3 + 9 + 10);
        assert_eq!(c.words(), c.words());
    }

    #[test]
    fn small_sweeps_pass() {
        let words = Corpus::exhaustive(2, 8).words();
        assert!(audit_periodic_palindrome(&words).passed());
        let (cross, unit) = audit_crossing(&words);
        assert!(cross.passed() && unit.passed() && unit.cases > 0);
        assert!(audit_chained(&words).passed());
        assert!(audit_detection(&words).passed());
        assert!(audit_inference(&Corpus::exhaustive(2, 7).words()).passed());
        assert!(audit_fw_sharpness(6).passed());
        assert!(audit_dpp_lemma(8).passed());
        assert!(audit_gword(16).passed());
    }

    #[test]
    fn fw_witness_example() {
        let w = fw_witness(4, 3, 5);
        assert_eq!(w.least_period().unwrap(), 3);
        assert_eq!(fw_witness(3, 2, 3).to_string(), "aba");
    }
}
