//! Periodicity lemmas as fact-deriving operations.
//!
//! Each lemma takes [`PeriodFact`]s about one word and returns a new fact.
//! Under [`Inference::checked`] every premise and conclusion is re-verified
//! against the letters, so a wrong derivation surfaces as
//! [`Error::Verification`] instead of a silently bad fact.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{self, Span, Word};

/// "The factor at `span` has period `period`."
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodFact {
    pub span: Span,
    pub period: usize,
}

impl PeriodFact {
    pub fn new(span: Span, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        Ok(PeriodFact { span, period })
    }

    pub fn holds_in(&self, w: &Word) -> bool {
        self.span.check_in(w.len()).is_ok() && word::has_period(w.slice(self.span), self.period)
    }

    pub fn verify(&self, w: &Word) -> Result<()> {
        if self.holds_in(w) {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "{} does not have period {}",
                self.span, self.period
            )))
        }
    }
}

/// Fine and Wilf: periods `p` and `q` on a word of length at least
/// `p + q - gcd(p, q)` give period `gcd(p, q)`.
pub fn fw_refine(len: usize, p: usize, q: usize) -> Option<usize> {
    if p == 0 || q == 0 {
        return None;
    }
    let g = p.gcd(&q);
    (len + g >= p + q).then_some(g)
}

/// Runs the lemmas against one word, optionally verifying every step.
#[derive(Debug, Clone, Copy)]
pub struct Inference<'a> {
    word: &'a Word,
    checked: bool,
}

impl<'a> Inference<'a> {
    /// Derivations are trusted; only structural preconditions are enforced.
    pub fn new(word: &'a Word) -> Self {
        Inference { word, checked: false }
    }

    /// Premises and conclusions are verified on the letters.
    pub fn checked(word: &'a Word) -> Self {
        Inference { word, checked: true }
    }

    pub fn word(&self) -> &'a Word {
        self.word
    }

    fn premise(&self, f: &PeriodFact) -> Result<()> {
        f.span.check_in(self.word.len())?;
        if self.checked && !f.holds_in(self.word) {
            return Err(Error::Premise(format!("{} lacks period {}", f.span, f.period)));
        }
        Ok(())
    }

    fn conclude(&self, f: PeriodFact) -> Result<PeriodFact> {
        if self.checked {
            f.verify(self.word)?;
        }
        Ok(f)
    }

    /// Fine and Wilf on a single span carrying two periods.
    pub fn fw(&self, f: &PeriodFact, g: &PeriodFact) -> Result<Option<PeriodFact>> {
        if f.span != g.span {
            return Err(Error::Premise("facts on different spans".into()));
        }
        self.premise(f)?;
        self.premise(g)?;
        match fw_refine(f.span.len(), f.period, g.period) {
            Some(d) => Ok(Some(self.conclude(PeriodFact { span: f.span, period: d })?)),
            None => Ok(None),
        }
    }

    /// Periods `p > q` on one span: the prefix and the suffix of length
    /// `|span| - q` both have period `p - q`. Returns `(prefix, suffix)`.
    pub fn la_derive(&self, f: &PeriodFact, g: &PeriodFact) -> Result<(PeriodFact, PeriodFact)> {
        if f.span != g.span {
            return Err(Error::Premise("facts on different spans".into()));
        }
        let (p, q) = (f.period, g.period);
        if p <= q {
            return Err(Error::Premise(format!("need p > q, got p={p}, q={q}")));
        }
        if f.span.len() < q {
            return Err(Error::Premise("span shorter than q".into()));
        }
        self.premise(f)?;
        self.premise(g)?;
        let keep = f.span.len() - q;
        let prefix = PeriodFact {
            span: Span { start: f.span.start, end: f.span.start + keep - 1 },
            period: p - q,
        };
        let suffix = PeriodFact {
            span: Span { start: f.span.end + 1 - keep, end: f.span.end },
            period: p - q,
        };
        Ok((self.conclude(prefix)?, self.conclude(suffix)?))
    }

    /// A span with period `q` containing a factor of length at least `q`
    /// with period `r`, `r | q`, has period `r`.
    pub fn l4_extend(&self, whole: &PeriodFact, inner: &PeriodFact) -> Result<PeriodFact> {
        if !whole.span.contains_span(&inner.span) {
            return Err(Error::Premise(format!("{} not inside {}", inner.span, whole.span)));
        }
        if inner.span.len() < whole.period {
            return Err(Error::Premise(format!(
                "inner length {} below period {}",
                inner.span.len(),
                whole.period
            )));
        }
        if !whole.period.is_multiple_of(inner.period) {
            return Err(Error::Premise(format!(
                "{} does not divide {}",
                inner.period, whole.period
            )));
        }
        self.premise(whole)?;
        self.premise(inner)?;
        self.conclude(PeriodFact { span: whole.span, period: inner.period })
    }

    /// `uv` and `vw` with period `p` and `|v| >= p` give `uvw` period `p`.
    pub fn overlap_merge(&self, left: &PeriodFact, right: &PeriodFact) -> Result<PeriodFact> {
        if left.period != right.period {
            return Err(Error::Premise(format!(
                "periods differ: {} vs {}",
                left.period, right.period
            )));
        }
        let overlap = left.span.overlap(&right.span);
        if overlap < left.period {
            return Err(Error::Premise(format!(
                "overlap {overlap} below period {}",
                left.period
            )));
        }
        self.premise(left)?;
        self.premise(right)?;
        let span = Span {
            start: left.span.start.min(right.span.start),
            end: left.span.end.max(right.span.end),
        };
        self.conclude(PeriodFact { span, period: left.period })
    }

    /// Period `p` on the span and `w[i+1..i+q] = w[j+1..j+q]` with
    /// `i+1 < j < i+q`, `q >= p` give period `gcd(p, j-i)` on the span.
    /// Positions are absolute; the factor equality is always checked.
    pub fn equal_factor_refine(&self, f: &PeriodFact, i: usize, j: usize, q: usize) -> Result<PeriodFact> {
        if !(i + 1 < j && j < i + q) {
            return Err(Error::Premise(format!("need i+1 < j < i+q, got i={i}, j={j}, q={q}")));
        }
        if q < f.period {
            return Err(Error::Premise(format!("q={q} below period {}", f.period)));
        }
        if i + 1 < f.span.start || j + q > f.span.end {
            return Err(Error::Premise("factors leave the span".into()));
        }
        self.premise(f)?;
        let a = Span { start: i + 1, end: i + q };
        let b = Span { start: j + 1, end: j + q };
        if self.word.slice(a) != self.word.slice(b) {
            return Err(Error::Premise(format!("w{a} != w{b}")));
        }
        self.conclude(PeriodFact { span: f.span, period: f.period.gcd(&(j - i)) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn fact(start: usize, end: usize, period: usize) -> PeriodFact {
        PeriodFact { span: Span { start, end }, period }
    }

    #[test]
    fn fw_examples() {
        assert_eq!(fw_refine(4, 2, 3), Some(1));
        assert_eq!(fw_refine(3, 2, 3), None);
        assert_eq!(fw_refine(16, 8, 12), Some(4));
    }

    #[test]
    fn la_examples() {
        let word = w("aaaaaaaaaa");
        let inf = Inference::checked(&word);
        let (pre, suf) = inf.la_derive(&fact(1, 10, 5), &fact(1, 10, 3)).unwrap();
        assert_eq!(pre, fact(1, 7, 2));
        assert_eq!(suf, fact(4, 10, 2));

        let word = w("aaaaaa");
        let (pre, suf) = Inference::checked(&word).la_derive(&fact(1, 6, 4), &fact(1, 6, 1)).unwrap();
        assert_eq!((pre, suf), (fact(1, 5, 3), fact(2, 6, 3)));

        let word = w("abcda");
        let (pre, suf) = Inference::checked(&word).la_derive(&fact(1, 5, 5), &fact(1, 5, 4)).unwrap();
        assert_eq!((pre, suf), (fact(1, 1, 1), fact(5, 5, 1)));

        assert!(Inference::new(&word).la_derive(&fact(1, 5, 3), &fact(1, 5, 4)).is_err());
    }

    #[test]
    fn l4_examples() {
        let word = w(&"abc".repeat(7)[..20]);
        let inf = Inference::checked(&word);
        assert_eq!(inf.l4_extend(&fact(1, 20, 6), &fact(4, 9, 3)).unwrap(), fact(1, 20, 3));

        let word = w("abcdabcd");
        let inf = Inference::checked(&word);
        assert_eq!(inf.l4_extend(&fact(1, 8, 4), &fact(2, 5, 4)).unwrap(), fact(1, 8, 4));

        let word = w("aaaaaaaaa");
        let inf = Inference::checked(&word);
        assert_eq!(inf.l4_extend(&fact(1, 9, 3), &fact(3, 5, 1)).unwrap(), fact(1, 9, 1));
        assert!(inf.l4_extend(&fact(1, 9, 3), &fact(3, 4, 1)).is_err());
        assert!(inf.l4_extend(&fact(1, 9, 4), &fact(1, 6, 3)).is_err());
    }

    #[test]
    fn overlap_examples() {
        let word = w("ababababab");
        let inf = Inference::checked(&word);
        assert_eq!(inf.overlap_merge(&fact(1, 6, 2), &fact(5, 10, 2)).unwrap(), fact(1, 10, 2));
        assert!(inf.overlap_merge(&fact(1, 4, 2), &fact(4, 8, 2)).is_err());
        let word = w("aaaaaaaaa");
        let inf = Inference::checked(&word);
        assert_eq!(inf.overlap_merge(&fact(1, 5, 1), &fact(5, 9, 1)).unwrap(), fact(1, 9, 1));
        assert!(inf.overlap_merge(&fact(1, 5, 1), &fact(5, 9, 2)).is_err());
    }

    #[test]
    fn equal_factor_examples() {
        let word = w("abababab");
        let inf = Inference::checked(&word);
        assert_eq!(inf.equal_factor_refine(&fact(1, 8, 2), 0, 2, 4).unwrap(), fact(1, 8, 2));
        assert!(inf.equal_factor_refine(&fact(1, 8, 2), 0, 1, 4).is_err());
        // unequal factors are rejected even when the rest is fine
        let word = w("abcabcab");
        let inf = Inference::new(&word);
        assert!(inf.equal_factor_refine(&fact(1, 8, 3), 0, 2, 3).is_err());
    }

    #[test]
    fn checked_mode_rejects_false_premise() {
        let word = w("abcd");
        assert!(Inference::checked(&word).overlap_merge(&fact(1, 3, 1), &fact(2, 4, 1)).is_err());
    }
}
