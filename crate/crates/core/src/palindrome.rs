//! Palindrome occurrences: radii at every centre, maximal palindromes and
//! nesting.
//!
//! A centre `c` and radius `r` live in ℤ/2; the occurrence covers
//! `w[c-r..c+r]`. The empty palindrome between `w[k]` and `w[k+1]` has
//! centre `k + 1/2` and radius `-1/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfPos;
use crate::word::{Letter, Span, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PalOcc {
    pub centre: HalfPos,
    pub radius: HalfPos,
}

impl PalOcc {
    /// Occurrence covering `span`; the caller is responsible for palindromicity.
    pub fn from_span(span: Span) -> Self {
        let (a, b) = (span.start as i64, span.end as i64);
        PalOcc { centre: HalfPos(a + b), radius: HalfPos(b - a) }
    }

    pub fn span(&self) -> Span {
        Span {
            start: ((self.centre.0 - self.radius.0) / 2) as usize,
            end: ((self.centre.0 + self.radius.0) / 2) as usize,
        }
    }

    pub fn len(&self) -> usize {
        (self.radius.0 + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.radius.0 < 0
    }

    /// `w[i] = w[2c - i]` across the whole span.
    pub fn holds_in(&self, w: &Word) -> bool {
        let parity_ok = (self.centre.0 - self.radius.0).rem_euclid(2) == 0;
        let span = self.span();
        parity_ok
            && self.radius.0 >= -1
            && span.start >= 1
            && span.end <= w.len()
            && w.slice(span).iter().eq(w.slice(span).iter().rev())
    }

    /// The palindrome `w[c-r+i..c+r-i]` nested in this one.
    pub fn nested(&self, i: usize) -> Result<PalOcc> {
        let max = self.radius.floor();
        if i == 0 || (i as i64) > max {
            return Err(Error::IndexOutOfRange { index: i as i64, max: max.max(0) });
        }
        Ok(PalOcc { centre: self.centre, radius: HalfPos(self.radius.0 - 2 * i as i64) })
    }
}

/// Length of the longest palindrome centred at doubled centre `c`, by
/// expansion. `c` ranges over `1..=2n+1`.
pub(crate) fn expand_len(s: &[Letter], c: i64) -> usize {
    let n = s.len() as i64;
    // positions (1-based) a, b with a + b = c
    let (mut a, mut b, mut len) = if c % 2 == 0 { (c / 2 - 1, c / 2 + 1, 1) } else { ((c - 1) / 2, (c + 1) / 2, 0) };
    while a >= 1 && b <= n && s[(a - 1) as usize] == s[(b - 1) as usize] {
        a -= 1;
        b += 1;
        len += 2;
    }
    len
}

/// Manacher: `lens[c]` is the maximal palindrome length at doubled centre
/// `c`, for `c` in `0..=2n+1` (entries 0 and 2n+1 are the outer empty centres).
pub fn palindrome_lengths(s: &[Letter]) -> Vec<usize> {
    let n = s.len();
    let m = 2 * n + 1;
    // interleave with a separator: t[k] is a gap for even k, s[(k-1)/2] for odd k
    let at = |k: usize| -> i64 { if k.is_multiple_of(2) { -1 } else { s[(k - 1) / 2] as i64 } };
    let mut d = vec![0usize; m];
    let (mut l, mut r) = (0usize, 0usize); // rightmost palindrome t[l..r)
    for k in 0..m {
        let mut rad = if k < r { d[l + r - 1 - k].min(r - k - 1) } else { 0 };
        while k > rad && k + rad + 1 < m && at(k - rad - 1) == at(k + rad + 1) {
            rad += 1;
        }
        d[k] = rad;
        if k + rad + 1 > r {
            l = k - rad;
            r = k + rad + 1;
        }
    }
    let mut lens = Vec::with_capacity(m + 1);
    lens.push(0);
    lens.extend_from_slice(&d);
    lens
}

fn occ_from_len(c: i64, len: usize) -> PalOcc {
    PalOcc { centre: HalfPos(c), radius: HalfPos(len as i64 - 1) }
}

/// Largest radius at `centre`; the empty marker `-1/2` when even nothing fits.
pub fn max_radius_at(w: &Word, centre: HalfPos) -> Result<HalfPos> {
    if !centre.in_span(1, w.len() as i64) {
        return Err(Error::CentreOutOfRange(centre.to_string()));
    }
    Ok(HalfPos(expand_len(w.letters(), centre.0) as i64 - 1))
}

/// All maximal palindromes: non-empty, and none of `w[c-r-1..c+r+1]`,
/// `w[c-r..c+r+1]`, `w[c-r-1..c+r]` is a palindrome. Ordered by centre.
pub fn maximal_palindromes(w: &Word) -> Vec<PalOcc> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let lens = palindrome_lengths(w.letters());
    let mut out = Vec::new();
    for c in 2..=2 * n {
        let len = lens[c];
        if len == 0 {
            continue;
        }
        let occ = occ_from_len(c as i64, len);
        let span = occ.span();
        let right = span.end < n && lens[c + 1] > len;
        let left = span.start > 1 && lens[c - 1] > len;
        if !right && !left {
            out.push(occ);
        }
    }
    out
}
