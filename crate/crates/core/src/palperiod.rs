//! Palindromic periodicities: recognition, `(p, s)` decomposition,
//! parameter enumeration and detection of maximal occurrences.
//!
//! A word `w` of length `n` is a palindromic periodicity with offset `r` and
//! half-period `h` when every lattice point `r, r+h, r+2h, ...` inside `w` is
//! the centre of a palindromic prefix or suffix, the longest such prefix and
//! suffix together cover `w`, `w` has period `2h`, and `n >= 2h`. The offset
//! is the first lattice point inside the word, so `1/2 <= r <= h`.
//!
//! Equivalently `w` is a prefix of `(ps)^ω` with `p = w[1..2r-1]` and
//! `s = w[2r..2h]` palindromes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfPos;
use crate::palindrome::palindrome_lengths;
use crate::word::{self, Letter, Span, Word};

/// How strictly to read the definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Factor of `(ps)^ω` of length at least `|ps|`.
    #[default]
    Body,
    /// Additionally requires `max(|p|, |s|) >= 2`.
    Abstract,
}

/// A certified palindromic periodicity on a span of some word.
///
/// `offset` is relative to the span start; `essential_centres` are absolute
/// positions in the word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalPeriodicity {
    pub span: Span,
    pub offset: HalfPos,
    pub half_period: HalfPos,
    pub essential_centres: Vec<HalfPos>,
}

impl PalPeriodicity {
    /// Checks `w[span]` against `(offset, half_period)` and builds the record.
    pub fn certify(w: &Word, span: Span, offset: HalfPos, half_period: HalfPos) -> Result<Self> {
        span.check_in(w.len())?;
        if !satisfies(w.slice(span), offset.0, half_period.0) {
            return Err(Error::Verification(format!(
                "w{span} is not a palindromic periodicity with offset {offset}, half-period {half_period}"
            )));
        }
        let base = 2 * (span.start as i64 - 1);
        let essential_centres = lattice_in(span.len(), offset.0, half_period.0)
            .map(|c| HalfPos(base + c))
            .collect();
        Ok(PalPeriodicity { span, offset, half_period, essential_centres })
    }

    /// Certifies `w[span]` under the lattice of absolute doubled centres
    /// `≡ anchor (mod 2h)`.
    pub fn certify_lattice(w: &Word, span: Span, anchor: i64, half_period: HalfPos) -> Result<Self> {
        let offset = relative_offset(span.start, anchor, half_period.0);
        Self::certify(w, span, offset, half_period)
    }

    /// The full period `2h`.
    pub fn period(&self) -> usize {
        self.half_period.0 as usize
    }

    pub fn decomposition(&self, w: &Word) -> Result<PSDecomposition> {
        decompose_ps(&w.factor(self.span)?, self.offset, self.half_period)
    }
}

/// First lattice point of `{anchor + k·H}` inside a span starting at `start`,
/// relative to that start.
pub(crate) fn relative_offset(start: usize, anchor: i64, h2: i64) -> HalfPos {
    let shift = 2 * (start as i64 - 1);
    HalfPos((anchor - shift - 1).rem_euclid(h2) + 1)
}

fn lattice_in(n: usize, r2: i64, h2: i64) -> impl Iterator<Item = i64> {
    let top = 2 * n as i64;
    (0..).map(move |k| r2 + k * h2).take_while(move |&c| c <= top)
}

/// The alternative definition, with palindromicity of `s[a..=b]` (1-based)
/// supplied by the caller.
pub(crate) fn satisfies_with(
    n: usize,
    r2: i64,
    h2: i64,
    periodic: bool,
    is_pal: impl Fn(usize, usize) -> bool,
) -> bool {
    if h2 < 1 || r2 < 1 || r2 > h2 || (n as i64) < h2 || !periodic {
        return false;
    }
    let n2 = n as i64;
    let (mut longest_prefix, mut longest_suffix) = (0i64, 0i64);
    for c in lattice_in(n, r2, h2) {
        // prefix w[1..c-1] and suffix w[c-n..n]
        let prefix = c - 1 <= n2 && (c == 1 || is_pal(1, (c - 1) as usize));
        let suffix = c - n2 >= 1 && is_pal((c - n2) as usize, n);
        if !prefix && !suffix {
            return false;
        }
        if prefix {
            longest_prefix = longest_prefix.max(c - 1);
        }
        if suffix {
            longest_suffix = longest_suffix.max(2 * n2 - c + 1);
        }
    }
    longest_prefix + longest_suffix >= n2
}

fn satisfies(s: &[Letter], r2: i64, h2: i64) -> bool {
    let periodic = h2 >= 1 && word::has_period(s, h2 as usize);
    satisfies_with(s.len(), r2, h2, periodic, |a, b| word::is_palindrome(&s[a - 1..b]))
}

/// Whether `w` is a palindromic periodicity with the given offset and half-period.
pub fn is_pal_periodicity(w: &Word, offset: HalfPos, half_period: HalfPos) -> bool {
    satisfies(w.letters(), offset.0, half_period.0)
}

pub fn is_pal_periodicity_with(w: &Word, offset: HalfPos, half_period: HalfPos, strictness: Strictness) -> bool {
    if !is_pal_periodicity(w, offset, half_period) {
        return false;
    }
    match strictness {
        Strictness::Body => true,
        Strictness::Abstract => {
            let p_len = offset.0 - 1;
            let s_len = half_period.0 - p_len;
            p_len.max(s_len) >= 2
        }
    }
}

/// `w` as a prefix of `(ps)^ω`: `p` centred at the offset, `s` at offset + h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSDecomposition {
    pub p: Word,
    pub s: Word,
}

pub fn decompose_ps(w: &Word, offset: HalfPos, half_period: HalfPos) -> Result<PSDecomposition> {
    if !is_pal_periodicity(w, offset, half_period) {
        return Err(Error::Premise(format!(
            "{w} is not a palindromic periodicity with offset {offset}, half-period {half_period}"
        )));
    }
    let p_len = (offset.0 - 1) as usize;
    let h2 = half_period.0 as usize;
    let p = Word::new(w.letters()[..p_len].to_vec(), w.alphabet_size())?;
    let s = Word::new(w.letters()[p_len..h2].to_vec(), w.alphabet_size())?;
    Ok(PSDecomposition { p, s })
}

/// Every `(offset, half_period)` certifying `w`, ordered by `(2h, 2r)`.
pub fn enumerate_parameterizations(w: &Word) -> Vec<(HalfPos, HalfPos)> {
    let n = w.len() as i64;
    let mut out = Vec::new();
    for h2 in 1..=n {
        if !word::has_period(w.letters(), h2 as usize) {
            continue;
        }
        for r2 in 1..=h2 {
            if satisfies(w.letters(), r2, h2) {
                out.push((HalfPos(r2), HalfPos(h2)));
            }
        }
    }
    out
}

/// Parity pattern of the palindromes at the essential centres.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentreParity {
    AllEven,
    Alternating,
    AllOdd,
}

/// Largest alphabet a palindromic periodicity with half-period `h` can use.
pub fn max_alphabet_size(half_period: HalfPos, parity: CentreParity) -> Result<HalfPos> {
    let h2 = half_period.0;
    if h2 < 1 {
        return Err(Error::Degenerate(format!("half-period {half_period}")));
    }
    let integral = half_period.is_integer();
    match (parity, integral) {
        (CentreParity::AllEven, true) => Ok(half_period),
        (CentreParity::AllOdd, true) => Ok(HalfPos(h2 + 2)),
        (CentreParity::Alternating, false) => Ok(HalfPos(h2 + 1)),
        _ => Err(Error::Premise(format!("{parity:?} centres impossible with half-period {half_period}"))),
    }
}

/// A detected palindromic periodicity: `offset` is relative to `span.start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub span: Span,
    pub half_period: HalfPos,
    pub offset: HalfPos,
}

impl Occurrence {
    pub fn period(&self) -> usize {
        self.half_period.0 as usize
    }

    pub fn record(&self, w: &Word) -> OccurrenceRecord {
        let p_len = (self.offset.0 - 1) as usize;
        let first = self.span.start - 1;
        let piece = |a: usize, b: usize| Word::from_letters(w.letters()[a..b].to_vec()).to_string();
        OccurrenceRecord {
            start: self.span.start,
            end: self.span.end,
            doubled_offset: self.offset.0,
            offset: self.offset.to_string(),
            doubled_half_period: self.half_period.0,
            half_period: self.half_period.to_string(),
            period: self.period(),
            p: piece(first, first + p_len),
            s: piece(first + p_len, first + self.period()),
        }
    }
}

/// Serialized form of an [`Occurrence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceRecord {
    pub start: usize,
    pub end: usize,
    pub doubled_offset: i64,
    pub offset: String,
    pub doubled_half_period: i64,
    pub half_period: String,
    pub period: usize,
    pub p: String,
    pub s: String,
}

/// Maximal palindromic periodicities of `w`.
///
/// An occurrence is reported when its span is strictly longer than its
/// period `2h`, no one-letter extension keeps the same lattice of essential
/// centres, and no strictly larger span has a palindromic periodicity with the
/// same `h`. Among lattices certifying the same span and `h` the smallest
/// offset is kept. Output is sorted by `(start, end, 2h)`.
///
/// Runs over the palindrome lists from Manacher: the first period of an
/// occurrence is `p·s` with `p` a palindrome starting at the span start and
/// `s` one starting right after it, and the span is the maximal
/// `2h`-periodic stretch to the right.
pub fn find_maximal_pps(w: &Word) -> Vec<Occurrence> {
    let s = w.letters();
    let n = s.len();
    if n < 2 {
        return Vec::new();
    }
    let lens = palindrome_lengths(s);
    // starts[x]: lengths of non-empty palindromes beginning at x, ascending
    let mut starts: Vec<Vec<u32>> = vec![Vec::new(); n + 2];
    for c in 2..=2 * n {
        let mut len = lens[c];
        while len > 0 {
            let a = (c + 1 - len) / 2;
            starts[a].push(len as u32);
            len = len.saturating_sub(2);
        }
    }
    for v in &mut starts {
        v.sort_unstable();
    }

    let mut seen = vec![usize::MAX; n + 1];
    let mut out = Vec::new();
    for start in 1..n {
        let left = |h: usize| start == 1 || s[start - 2] != s[start - 2 + h];
        let prefixes = std::iter::once(0u32).chain(starts[start].iter().copied());
        for l in prefixes {
            let l = l as usize;
            if start + l > n {
                break;
            }
            for &m in &starts[start + l] {
                let h = l + m as usize;
                if start + h > n {
                    break;
                }
                if seen[h] == start || s[start - 1] != s[start - 1 + h] || !left(h) {
                    continue;
                }
                seen[h] = start;
                let mut end = start + h;
                while end < n && s[end] == s[end - h] {
                    end += 1;
                }
                out.push(Occurrence {
                    span: Span { start, end },
                    half_period: HalfPos(h as i64),
                    offset: HalfPos(l as i64 + 1),
                });
            }
        }
    }
    out.sort_unstable_by_key(|o| (o.span.start, o.span.end, o.half_period));
    out
}

/// Exhaustive oracle for [`find_maximal_pps`]: every span, every lattice,
/// maximality by explicit one-letter extension, then the dominance filter.
pub fn find_pps_naive(w: &Word) -> Vec<Occurrence> {
    let s = w.letters();
    let n = s.len();
    if n < 2 {
        return Vec::new();
    }
    // pal[a][b]: w[a..b] palindrome (1-based, b >= a - 1)
    let mut pal = vec![vec![false; n + 2]; n + 2];
    for a in (1..=n + 1).rev() {
        for b in a - 1..=n {
            pal[a][b] = b < a + 1 || (s[a - 1] == s[b - 1] && pal[a + 1][b - 1]);
        }
    }
    // reach[a][h]: last index b such that w[a..b] has period h
    let mut reach = vec![vec![0usize; n + 1]; n + 2];
    for h in 1..=n {
        for a in (1..=n).rev() {
            reach[a][h] = if a + h <= n && s[a - 1] == s[a + h - 1] {
                if a < n { reach[a + 1][h].max(a + h) } else { a + h }
            } else {
                (a + h - 1).min(n)
            };
        }
    }
    let holds = |a: usize, b: usize, r2: i64, h2: i64| -> bool {
        if a < 1 || b > n || b < a {
            return false;
        }
        let periodic = reach[a][h2 as usize] >= b;
        satisfies_with(b + 1 - a, r2, h2, periodic, |x, y| pal[a + x - 1][a + y - 1])
    };

    let mut found: Vec<Occurrence> = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let len = b + 1 - a;
            for h in 1..len {
                let h2 = h as i64;
                let mut best: Option<i64> = None;
                for r2 in 1..=h2 {
                    if !holds(a, b, r2, h2) {
                        continue;
                    }
                    let anchor = 2 * (a as i64 - 1) + r2;
                    let left = a > 1 && holds(a - 1, b, relative_offset(a - 1, anchor, h2).0, h2);
                    let right = holds(a, b + 1, r2, h2);
                    if !left && !right {
                        best = Some(best.map_or(r2, |x| x.min(r2)));
                    }
                }
                if let Some(r2) = best {
                    found.push(Occurrence {
                        span: Span { start: a, end: b },
                        half_period: HalfPos(h2),
                        offset: HalfPos(r2),
                    });
                }
            }
        }
    }
    let dominated = |o: &Occurrence| {
        found.iter().any(|q| q.half_period == o.half_period && q.span != o.span && q.span.contains_span(&o.span))
    };
    let mut out: Vec<Occurrence> = found.iter().filter(|o| !dominated(o)).copied().collect();
    out.sort_unstable_by_key(|o| (o.span.start, o.span.end, o.half_period));
    out
}
