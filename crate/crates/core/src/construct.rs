//! Ways a palindromic periodicity arises from palindromes and periods.
//!
//! Every constructor re-checks its hypotheses on the letters and returns a
//! [`Certificate`]: the certified periodicity, its period and the
//! palindromes the argument exhibits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::half::HalfPos;
use crate::palindrome::PalOcc;
use crate::palperiod::PalPeriodicity;
use crate::word::{self, Span, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub periodicity: PalPeriodicity,
    pub period: usize,
    /// Palindromic factors exhibited by the construction, each verified.
    pub witnesses: Vec<Span>,
}

/// Two palindrome occurrences in one word, `first` having the smaller centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingPair {
    pub first: PalOcc,
    pub second: PalOcc,
}

impl CrossingPair {
    /// Orders the two occurrences by centre.
    pub fn from_spans(a: Span, b: Span) -> Self {
        let (x, y) = (PalOcc::from_span(a), PalOcc::from_span(b));
        if x.centre <= y.centre {
            CrossingPair { first: x, second: y }
        } else {
            CrossingPair { first: y, second: x }
        }
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn span(start: i64, end: i64) -> Span {
    Span { start: start as usize, end: end as usize }
}

fn palindrome_at(w: &Word, s: Span) -> Result<()> {
    s.check_in(w.len())?;
    if word::is_palindrome(w.slice(s)) {
        Ok(())
    } else {
        Err(hypothesis(format!("w{s} is not a palindrome")))
    }
}

fn finish(w: &Word, region: Span, anchor: i64, period: usize, witnesses: Vec<Span>) -> Result<Certificate> {
    for &s in &witnesses {
        palindrome_at(w, s).map_err(|e| Error::Verification(e.to_string()))?;
    }
    let periodicity = PalPeriodicity::certify_lattice(w, region, anchor, HalfPos(period as i64))?;
    if !word::has_period(w.slice(region), period) {
        return Err(Error::Verification(format!("w{region} lacks period {period}")));
    }
    Ok(Certificate { periodicity, period, witnesses })
}

/// A palindrome with period `p` and length at least `2p + 1` is a
/// palindromic periodicity with period `p`.
pub fn from_periodic_palindrome(w: &Word, p: usize) -> Result<Certificate> {
    let n = w.len();
    if p == 0 {
        return Err(Error::ZeroPeriod);
    }
    if !w.is_palindrome() {
        return Err(hypothesis("word is not a palindrome"));
    }
    if !word::has_period(w.letters(), p) {
        return Err(hypothesis(format!("word lacks period {p}")));
    }
    if n < 2 * p + 1 {
        return Err(hypothesis(format!("length {n} below {}", 2 * p + 1)));
    }
    let (n, p) = (n as i64, p as i64);
    let witnesses = if n % 2 == 0 {
        // the length-p factor following the centre
        vec![span(n / 2 + 1, n / 2 + p)]
    } else if p % 2 == 1 {
        let c = (n + 1) / 2;
        vec![span(c - (p - 1) / 2, c + (p - 1) / 2)]
    } else {
        // s of length p - 1 centred at c, then a single letter t
        let c = (n + 1) / 2;
        vec![span(c - (p - 2) / 2, c + (p - 2) / 2), span(c + p / 2, c + p / 2)]
    };
    finish(w, Span::whole(n as usize), n + 1, p as usize, witnesses)
}

/// Common prefix of `u'u^ω` and `v'v^ω`, `v` the reverse of `u` and `u'`, `v'`
/// suffixes of lengths `u_suffix_len`, `v_suffix_len`, has period `|u|`.
/// Returns the prefix of length `target_len` with its certificate.
pub fn from_reverse_prefixes(
    u: &Word,
    u_suffix_len: usize,
    v_suffix_len: usize,
    target_len: usize,
) -> Result<(Word, Certificate)> {
    let n = u.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if u_suffix_len > n || v_suffix_len > n {
        return Err(hypothesis("suffix longer than u"));
    }
    if target_len < n {
        return Err(hypothesis(format!("target length {target_len} below |u| = {n}")));
    }
    let (j, k) = (u_suffix_len, v_suffix_len);
    let us = u.letters();
    // (u'u^ω)[i] and (v'v^ω)[i], 1-based
    let left = |i: usize| us[(i + n - 1 + n - j) % n];
    let right = |i: usize| us[n - 1 - (i + n - 1 + n - k) % n];
    if let Some(i) = (1..=target_len).find(|&i| left(i) != right(i)) {
        return Err(hypothesis(format!("prefixes disagree at position {i}")));
    }
    let w = Word::new((1..=target_len).map(left).collect(), u.alphabet_size())?;
    let (j, k, n_i) = (j as i64, k as i64, n as i64);
    let (lo, hi) = (j.min(k), j.max(k));
    let witnesses = [span(hi + 1, lo + n_i), span(lo + n_i + 1, hi + n_i)]
        .into_iter()
        .filter(|s| s.end <= target_len)
        .collect();
    let cert = finish(&w, Span::whole(target_len), j + k + 1, n, witnesses)?;
    Ok((w, cert))
}

/// Two palindromes that contain each other's centres, neither a proper factor
/// of the other: the union has period `2(c2 - c1)`.
pub fn from_crossing_palindromes(w: &Word, pair: CrossingPair) -> Result<Certificate> {
    let (c1, r1) = (pair.first.centre.0, pair.first.radius.0);
    let (c2, r2) = (pair.second.centre.0, pair.second.radius.0);
    palindrome_at(w, pair.first.span())?;
    palindrome_at(w, pair.second.span())?;
    let chain = c1 - r1 <= c2 - r2 && c2 - r2 <= c1 && c1 < c2 && c2 <= c1 + r1 && c1 + r1 <= c2 + r2;
    if !chain {
        return Err(hypothesis(format!(
            "c1-r1 <= c2-r2 <= c1 < c2 <= c1+r1 <= c2+r2 fails for {}±{}, {}±{}",
            pair.first.centre, pair.first.radius, pair.second.centre, pair.second.radius
        )));
    }
    let union = span((c1 - r1) / 2, (c2 + r2) / 2);
    let period = (c2 - c1) as usize;
    let mut witnesses = Vec::new();
    if c1 % 2 == 0 {
        let c = c1 / 2;
        witnesses.push(span(c, c));
        witnesses.push(span(c + 1, c2 - c - 1));
    } else {
        let (s, t) = (span((c1 - 1) / 2, (c1 + 1) / 2), span((c1 + 3) / 2, (2 * c2 - c1 - 3) / 2));
        // adjacent half-integer centres leave no room for t
        if t.end + 1 >= t.start {
            witnesses.push(s);
            witnesses.push(t);
        }
    }
    finish(w, union, c1, period, witnesses)
}

/// Palindromes `w[a..b]`, `w[c..d]` with `a <= c <= b <= d`, one not containing
/// the other's centre: `w[a..d]` has half-period equal to the distance
/// between the centres.
pub fn from_chained_palindromes(w: &Word, pair: CrossingPair) -> Result<Certificate> {
    let (first, second) = (pair.first.span(), pair.second.span());
    palindrome_at(w, first)?;
    palindrome_at(w, second)?;
    let (a, b) = (first.start as i64, first.end as i64);
    let (c, d) = (second.start as i64, second.end as i64);
    if !(a + b < c + d) {
        return Err(hypothesis("centres must be distinct and ordered"));
    }
    if !(a <= c && c <= b && b <= d) {
        return Err(hypothesis(format!("a <= c <= b <= d fails for [{a}..{b}], [{c}..{d}]")));
    }
    let witnesses = if 2 * b < c + d {
        vec![first, span(b + 1, c + d - b - 1)]
    } else if 2 * c > a + b {
        vec![second, span(a + b - c + 1, c - 1)]
    } else {
        return Err(hypothesis("each palindrome contains the other's centre"));
    };
    let period = (c + d - a - b) as usize;
    finish(w, span(a, d), a + b, period, witnesses)
}

/// `w[1..n]` and `w[k+1..k+l]` palindromes with `1 < k+1 < k+l < n`
/// containing each other's centres. The inner palindrome is a palindromic
/// periodicity with period `2|c2 - c1|`; the side where `c2 < c1` is handled
/// by reversing the word.
pub fn from_nested_crossing(w: &Word, inner: Span) -> Result<Certificate> {
    let n = w.len();
    if inner.start < 2 || inner.end >= n || inner.end <= inner.start {
        return Err(hypothesis(format!("need 1 < k+1 < k+l < n, got {inner} in length {n}")));
    }
    palindrome_at(w, Span::whole(n))?;
    palindrome_at(w, inner)?;
    let (c1, c2) = (n as i64 + 1, (inner.start + inner.end) as i64);
    if !(2 * inner.start as i64 <= c1 && c1 <= 2 * inner.end as i64) {
        return Err(hypothesis("inner palindrome does not contain the outer centre"));
    }
    if c1 == c2 {
        return Err(Error::Degenerate("concentric palindromes".into()));
    }
    if c1 < c2 {
        return nested_right(w, inner);
    }
    let mirror = |s: Span| Span { start: n + 1 - s.end, end: n + 1 - s.start };
    let rev = w.reverse();
    let cert = nested_right(&rev, mirror(inner))?;
    let witnesses: Vec<Span> = cert.witnesses.iter().map(|&s| mirror(s)).collect();
    let anchor = 2 * (n as i64 + 1) - (cert.periodicity.essential_centres[0].0);
    finish(w, inner, anchor, cert.period, witnesses)
}

fn nested_right(w: &Word, inner: Span) -> Result<Certificate> {
    let n = w.len();
    let k = inner.start - 1;
    let nested = Span { start: k + 1, end: n - k };
    let pair = CrossingPair::from_spans(nested, inner);
    let c2 = (inner.start + inner.end) as i64;
    if c2 <= 2 * nested.end as i64 {
        from_crossing_palindromes(w, pair)
    } else {
        from_chained_palindromes(w, pair)
    }
}

/// A palindromic border of length `m >= |w|/2` makes `w` a palindromic
/// periodicity with period `|w| - m`.
pub fn from_palindromic_border(w: &Word, m: usize) -> Result<Certificate> {
    let n = w.len();
    if m == 0 || m >= n {
        return Err(hypothesis(format!("border length {m} must be in 1..{n}")));
    }
    if 2 * m < n {
        return Err(hypothesis(format!("border {m} shorter than half of {n}")));
    }
    if w.letters()[..m] != w.letters()[n - m..] {
        return Err(hypothesis(format!("{m} is not a border")));
    }
    palindrome_at(w, Span { start: 1, end: m })?;
    let (n_i, m_i) = (n as i64, m as i64);
    if 2 * n >= 3 * m {
        // w = s t s t s with s = w[n-m+1..m]
        let s = span(n_i - m_i + 1, m_i);
        let t = span(2 * m_i - n_i + 1, n_i - m_i);
        finish(w, Span::whole(n), n_i + 1, n - m, vec![s, t])
    } else {
        let pair = CrossingPair::from_spans(Span { start: 1, end: m }, Span { start: n - m + 1, end: n });
        from_crossing_palindromes(w, pair)
    }
}
