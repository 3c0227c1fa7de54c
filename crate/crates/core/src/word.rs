//! Finite words over a small integer alphabet, with 1-based logical indexing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter is a small non-negative integer below the word's alphabet size.
pub type Letter = u32;

/// Letters rendered as single ASCII characters: `a..z` then `A..Z`.
const ASCII_LETTERS: u32 = 52;

/// An inclusive 1-based span `[start..end]`; `end == start - 1` is the empty factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || end + 1 < start {
            return Err(Error::BadSpan { start, end, len: end });
        }
        Ok(Span { start, end })
    }

    /// The whole of a word of length `n`.
    pub fn whole(n: usize) -> Self {
        Span { start: 1, end: n }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end + 1 == self.start
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Number of positions shared with `other`.
    pub fn overlap(&self, other: &Span) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        (hi + 1).saturating_sub(lo)
    }

    pub(crate) fn check_in(&self, n: usize) -> Result<()> {
        if self.start == 0 || self.end > n || self.end + 1 < self.start {
            return Err(Error::BadSpan { start: self.start, end: self.end, len: n });
        }
        Ok(())
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.start, self.end)
    }
}

/// A finite word `w[1..n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: u32,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: u32) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet) {
            return Err(Error::LetterOutOfAlphabet { letter: bad, alphabet });
        }
        Ok(Word { letters, alphabet: alphabet.max(1) })
    }

    /// Builds a word whose alphabet is exactly large enough for its letters.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let alphabet = letters.iter().max().map_or(1, |m| m + 1);
        Word { letters, alphabet }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new(), alphabet: 1 }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet
    }

    /// Storage view, 0-based.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `w[i]`, 1-based.
    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        self.letters[i - 1]
    }

    /// `w[span]`, keeping the alphabet.
    pub fn factor(&self, span: Span) -> Result<Word> {
        span.check_in(self.len())?;
        Ok(Word {
            letters: self.letters[span.start - 1..span.end].to_vec(),
            alphabet: self.alphabet,
        })
    }

    pub fn slice(&self, span: Span) -> &[Letter] {
        &self.letters[span.start - 1..span.end]
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters, alphabet: self.alphabet }
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.letters)
    }

    /// Concatenation; the alphabet is the larger of the two.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, alphabet: self.alphabet.max(other.alphabet) }
    }

    /// True iff `w[i] = w[i+p]` whenever both indices are in the word.
    pub fn has_period(&self, p: usize) -> Result<bool> {
        if p == 0 {
            return Err(Error::ZeroPeriod);
        }
        Ok(has_period(&self.letters, p))
    }

    pub fn least_period(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(least_period(&self.letters))
    }

    /// All border lengths, longest first, excluding `|w|` itself.
    pub fn borders(&self) -> Vec<usize> {
        let n = self.len();
        let fail = failure_function(&self.letters);
        let mut out = Vec::new();
        let mut k = if n == 0 { 0 } else { fail[n] };
        while k > 0 {
            out.push(k);
            k = fail[k];
        }
        out
    }

    /// The period `|w| - k` forced by a border of length `k`.
    pub fn period_from_border(&self, k: usize) -> Result<usize> {
        let n = self.len();
        if k >= n || self.letters[..k] != self.letters[n - k..] {
            return Err(Error::NotBorder(k));
        }
        let p = n - k;
        if !has_period(&self.letters, p) {
            return Err(Error::Verification(format!("border {k} without period {p}")));
        }
        Ok(p)
    }

    /// Renders letters as decimal digits when every letter is below 10.
    pub fn to_digits(&self) -> Option<String> {
        self.letters
            .iter()
            .map(|&l| char::from_digit(l, 10))
            .collect()
    }
}

pub(crate) fn is_palindrome(s: &[Letter]) -> bool {
    s.iter().eq(s.iter().rev())
}

pub(crate) fn has_period(s: &[Letter], p: usize) -> bool {
    p >= s.len() || s[p..].iter().zip(s).all(|(a, b)| a == b)
}

pub(crate) fn least_period(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 1;
    }
    n - failure_function(s)[n]
}

/// KMP failure function: `fail[k]` is the longest proper border of `s[..k]`.
fn failure_function(s: &[Letter]) -> Vec<usize> {
    let n = s.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

fn render_letter(l: Letter) -> char {
    if l < 26 {
        (b'a' + l as u8) as char
    } else {
        (b'A' + (l - 26) as u8) as char
    }
}

impl fmt::Display for Word {
    /// `accab` for letters below 52, otherwise the integer form `i:3,0,1,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l < ASCII_LETTERS) {
            for &l in &self.letters {
                write!(f, "{}", render_letter(l))?;
            }
            Ok(())
        } else {
            f.write_str("i:")?;
            for (k, l) in self.letters.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            Ok(())
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let line = s.trim_end_matches(['\n', '\r']);
        if let Some(rest) = line.strip_prefix("i:") {
            if rest.is_empty() {
                return Ok(Word::empty());
            }
            let letters = rest
                .split(',')
                .map(|t| t.trim().parse::<Letter>().map_err(|_| Error::Parse(format!("bad letter `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Word::from_letters(letters));
        }
        let letters = line
            .chars()
            .map(|c| match c {
                'a'..='z' => Ok(c as u32 - 'a' as u32),
                'A'..='Z' => Ok(c as u32 - 'A' as u32 + 26),
                _ => Err(Error::Parse(format!("unexpected character `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_letters(letters))
    }
}

/// Convenience for tests and examples: panics on malformed input.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reverse_examples() {
        assert_eq!(w("abc").reverse(), w("cba"));
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("acca").reverse(), w("acca"));
    }

    #[test]
    fn period_examples() {
        assert!(w("accabaccab").has_period(5).unwrap());
        assert!(!w("accabaccab").has_period(4).unwrap());
        assert!(w("ab").has_period(7).unwrap());
        assert_eq!(w("ab").has_period(0), Err(Error::ZeroPeriod));
    }

    #[test]
    fn least_period_examples() {
        assert_eq!(w("aaaa").least_period().unwrap(), 1);
        assert_eq!(w("accabaccab").least_period().unwrap(), 5);
        assert_eq!(w("abcbab").least_period().unwrap(), 4);
        assert_eq!(w("").least_period(), Err(Error::EmptyWord));
    }

    #[test]
    fn border_examples() {
        assert_eq!(w("accabaccab").borders(), vec![5]);
        assert_eq!(w("aaaa").borders(), vec![3, 2, 1]);
        assert!(w("abc").borders().is_empty());
        assert_eq!(w("accabaccab").period_from_border(5).unwrap(), 5);
        assert_eq!(w("aaaa").period_from_border(3).unwrap(), 1);
        assert_eq!(w("abab").period_from_border(2).unwrap(), 2);
        assert_eq!(w("abab").period_from_border(1), Err(Error::NotBorder(1)));
    }

    #[test]
    fn text_format() {
        assert_eq!(w("i:3,0,1,2").letters(), &[3, 0, 1, 2]);
        let big = Word::from_letters(vec![60, 0, 7]);
        assert_eq!(big.to_string(), "i:60,0,7");
        assert_eq!(big.to_string().parse::<Word>().unwrap(), big);
        assert_eq!(w("xyzABC").to_string(), "xyzABC");
        assert!("ab1".parse::<Word>().is_err());
        assert_eq!(Word::from_letters(vec![1, 2, 2]).to_digits().unwrap(), "122");
    }

    fn brute_borders(s: &[Letter]) -> Vec<usize> {
        let n = s.len();
        (1..n).rev().filter(|&k| s[..k] == s[n - k..]).collect()
    }

    fn brute_least_period(s: &[Letter]) -> usize {
        let n = s.len();
        (1..=n)
            .find(|&p| (0..n.saturating_sub(p)).all(|i| s[i] == s[i + p]))
            .unwrap()
    }

    proptest! {
        #[test]
        fn text_round_trip(letters in prop::collection::vec(0u32..70, 0..30)) {
            let word = Word::from_letters(letters);
            let text = word.to_string();
            let back: Word = text.parse().unwrap();
            prop_assert_eq!(&back, &word);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn period_and_border_facts(letters in prop::collection::vec(0u32..3, 1..25)) {
            let word = Word::from_letters(letters.clone());
            prop_assert_eq!(word.reverse().reverse(), word.clone());
            prop_assert_eq!(word.borders(), brute_borders(&letters));
            let lp = word.least_period().unwrap();
            prop_assert_eq!(lp, brute_least_period(&letters));
            prop_assert!(lp <= word.len());
            for q in 1..lp {
                prop_assert!(!word.has_period(q).unwrap());
            }
            for k in word.borders() {
                prop_assert!(word.has_period(word.len() - k).unwrap());
            }
            // a period of the word is a period of each factor
            for p in 1..=word.len() {
                if word.has_period(p).unwrap() {
                    for a in 1..=word.len() {
                        for b in a..=word.len() {
                            let f = word.factor(Span { start: a, end: b }).unwrap();
                            prop_assert!(f.has_period(p).unwrap());
                        }
                    }
                }
            }
        }
    }
}
