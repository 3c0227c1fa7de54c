//! g-words: palindromes sitting at a non-lattice centre of a palindromic
//! periodicity, their recursive decomposition, and the periodicity lemma
//! for words carrying two palindromic periodicities.
//!
//! Parameters are kept in the g-word's own frame: the g-word is positions
//! `1..=n`, its centre is `c = (n + 1)/2` and `r` is the lattice point just
//! below `c`, so `r < c < r + h`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generic::dpp_bound;
use crate::half::HalfPos;
use crate::inference::{Inference, PeriodFact};
use crate::palperiod::{is_pal_periodicity, PalPeriodicity};
use crate::word::{self, Span, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GWordParams {
    pub offset_r: HalfPos,
    pub centre_c: HalfPos,
    pub half_period_h: HalfPos,
    pub g: usize,
    pub n: usize,
}

/// Computes `g = gcd(2|c - r|, 2h)` and `n = 2h - g`, then moves to the
/// g-word's own frame. `r` may be any point of the lattice `r + kh`.
pub fn gword_params(r: HalfPos, c: HalfPos, h: HalfPos) -> Result<GWordParams> {
    if h.0 < 1 {
        return Err(Error::ZeroPeriod);
    }
    let period = h.0;
    // doubled values: 2|c - r| is the distance from c down to the lattice
    let dist = (c.0 - r.0).rem_euclid(period);
    if dist == 0 {
        return Err(Error::Degenerate(format!("centre {c} lies on the lattice, so the g-word is empty")));
    }
    let g = dist.gcd(&period);
    let n = period - g;
    let shift = n + 1 - c.0;
    if shift % 2 != 0 {
        return Err(Error::Hypothesis(format!(
            "a g-word of length {n} cannot be centred at {c}"
        )));
    }
    Ok(GWordParams {
        offset_r: HalfPos(n + 1 - dist),
        centre_c: HalfPos(n + 1),
        half_period_h: h,
        g: g as usize,
        n: n as usize,
    })
}

/// The two lattice points inside the g-word `w[i+1..i+n]`, `(i + r, i + r + h)`.
pub fn essential_centres_in_gword(p: &GWordParams, embed_offset_i: usize) -> (HalfPos, HalfPos) {
    let i = HalfPos::from_int(embed_offset_i as i64);
    (i + p.offset_r, i + p.offset_r + p.half_period_h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GWordStep {
    /// `2(c - r) = h`: the g-word is itself a palindrome of length `g`.
    PalindromeOfLengthG,
    /// A shorter g-word with the same `g`. Without `reflected` it is the
    /// prefix `1..=n'` of the current g-word; with it, the suffix, and its
    /// parameters are read in the reversed frame.
    Prefix { params: GWordParams, reflected: bool },
}

/// One step of the g-word recursion.
pub fn gword_step(p: &GWordParams) -> Result<GWordStep> {
    let (r, c, h) = (p.offset_r.0, p.centre_c.0, p.half_period_h.0);
    let twice = 2 * (c - r);
    if twice == h {
        return Ok(GWordStep::PalindromeOfLengthG);
    }
    // The reversed frame swaps r and r + h around c; the lattice point below
    // c there is 2c - r - h.
    let (r, reflected) = if twice < h { (r, false) } else { (2 * c - r - h, true) };
    let next = gword_params(HalfPos(2 * c - r - h), HalfPos(r), HalfPos(r + h - c))?;
    if next.centre_c.0 != r {
        return Err(Error::Verification(format!("shorter g-word is not centred at {}", HalfPos(r))));
    }
    if next.g != p.g {
        return Err(Error::Verification(format!("step changed g from {} to {}", p.g, next.g)));
    }
    if !(p.n <= 2 * next.n && next.n < p.n) {
        return Err(Error::Verification(format!("step length {} not in [{}/2, {})", next.n, p.n, p.n)));
    }
    Ok(GWordStep::Prefix { params: next, reflected })
}

/// Parameters of every g-word in the recursion, outermost first, each with
/// its span inside the outermost frame.
pub fn gword_chain(p: &GWordParams) -> Result<Vec<(GWordParams, Span)>> {
    let mut chain = vec![(*p, Span::whole(p.n))];
    // frame map x -> base + sign * x into the outermost frame
    let (mut base, mut sign) = (0i64, 1i64);
    loop {
        let (cur, _) = *chain.last().expect("non-empty");
        match gword_step(&cur)? {
            GWordStep::PalindromeOfLengthG => return Ok(chain),
            GWordStep::Prefix { params, reflected } => {
                if reflected {
                    base += sign * (cur.n as i64 + 1);
                    sign = -sign;
                }
                let ends = [base + sign, base + sign * params.n as i64];
                let span = Span { start: ends[0].min(ends[1]) as usize, end: ends[0].max(ends[1]) as usize };
                chain.push((params, span));
            }
        }
    }
}

fn mirror(span: Span, centre: i64) -> Span {
    Span { start: (centre - span.end as i64) as usize, end: (centre - span.start as i64) as usize }
}

/// A period fact mirrored through the palindrome `w[pal]`.
fn reflect_in(inf: &Inference, fact: &PeriodFact, pal: Span) -> Result<PeriodFact> {
    if !pal.contains_span(&fact.span) {
        return Err(Error::Premise(format!("{} not inside {}", fact.span, pal)));
    }
    if !word::is_palindrome(inf.word().slice(pal)) {
        return Err(Error::Premise(format!("w{pal} is not a palindrome")));
    }
    let out = PeriodFact { span: mirror(fact.span, (pal.start + pal.end) as i64), period: fact.period };
    out.verify(inf.word())?;
    Ok(out)
}

/// Joins two facts with the same period `p` whose spans touch or overlap,
/// start a multiple of `p` apart and open with the same block of `p`
/// letters. The block equality is read from the letters.
fn splice(inf: &Inference, a: &PeriodFact, b: &PeriodFact) -> Result<PeriodFact> {
    let (left, right) = if a.span.start <= b.span.start { (a, b) } else { (b, a) };
    let p = left.period;
    if right.period != p || right.span.start > left.span.end + 1 || (right.span.start - left.span.start) % p != 0 {
        return Err(Error::Premise("facts are not aligned".into()));
    }
    if left.span.len() < p || right.span.len() < p {
        return Err(Error::Premise("fact shorter than its period".into()));
    }
    let block = |s: usize| inf.word().slice(Span { start: s, end: s + p - 1 });
    if block(left.span.start) != block(right.span.start) {
        return Err(Error::Premise("opening blocks differ".into()));
    }
    if right.span.end <= left.span.end {
        return Ok(*left);
    }
    let out = PeriodFact { span: Span { start: left.span.start, end: right.span.end }, period: p };
    out.verify(inf.word())?;
    Ok(out)
}

/// Merges by overlap when the overlap allows it, otherwise by splicing.
fn join(inf: &Inference, a: &PeriodFact, b: &PeriodFact) -> Result<PeriodFact> {
    if a.span.overlap(&b.span) >= a.period {
        inf.overlap_merge(a, b)
    } else {
        splice(inf, a, b)
    }
}

/// Period `g` on all of `w`, where `w` is a palindromic periodicity with
/// half-period `h` whose lattice passes through `i + r`, and `w[i+1..i+n]`
/// is the g-word.
///
/// The fact is built up the g-word recursion: the innermost g-word has
/// length `g`, and each level mirrors the fact through its palindrome and
/// joins the two halves. Reflections in the lattice of `w` then grow it to
/// at least `2h` letters, and the period `2h` of `w` carries it to the
/// whole word. Every step is verified on the letters.
pub fn gword_period(w: &Word, p: &GWordParams, i: usize) -> Result<PeriodFact> {
    let (n, g, period) = (p.n, p.g, p.half_period_h.0 as usize);
    let frame = Span { start: i + 1, end: i + n };
    frame.check_in(w.len())?;
    if n < 2 * g {
        return Err(Error::Hypothesis(format!("g-word length {n} below 2g = {}", 2 * g)));
    }
    if !word::is_palindrome(w.slice(frame)) {
        return Err(Error::Hypothesis(format!("w{frame} is not a palindrome")));
    }
    let anchor = 2 * i as i64 + p.offset_r.0;
    PalPeriodicity::certify_lattice(w, Span::whole(w.len()), anchor, p.half_period_h)
        .map_err(|e| Error::Hypothesis(e.to_string()))?;

    let inf = Inference::checked(w);
    let chain = gword_chain(p)?;
    let shift = |s: Span| Span { start: s.start + i, end: s.end + i };
    let (_, base) = chain.last().expect("non-empty");
    let base = shift(*base);
    if !word::is_palindrome(w.slice(base)) {
        return Err(Error::Verification(format!("base block w{base} is not a palindrome")));
    }
    let mut fact = PeriodFact::new(base, g)?;
    for (_, span) in chain.iter().rev().skip(1) {
        let span = shift(*span);
        let image = reflect_in(&inf, &fact, span)?;
        fact = join(&inf, &fact, &image)?;
        if fact.span != span {
            return Err(Error::Verification(format!("joined fact {} does not cover {}", fact.span, span)));
        }
    }
    let centre = (frame.start + frame.end) as i64;
    extend_through_lattice(&inf, fact, centre, anchor, period)
}

/// Grows a period fact inside a palindromic periodicity with lattice
/// `anchor (mod period)` until l4_extend applies or the word is covered.
///
/// The fact's span contains a palindrome centred at `centre` whose length is
/// at least the fact's period `g`, and `g` divides the distance from `centre`
/// to every lattice centre. Reflecting in a lattice centre is then a
/// translation by a multiple of `g` composed with a symmetry of the fact,
/// so the mirror image of any part of the span continues the same periodic
/// pattern, however short it is.
fn extend_through_lattice(
    inf: &Inference,
    mut fact: PeriodFact,
    centre: i64,
    anchor: i64,
    period: usize,
) -> Result<PeriodFact> {
    let w = inf.word();
    let len = w.len();
    let g = fact.period;
    if (anchor - centre).rem_euclid(g as i64) != 0 {
        return Err(Error::Premise(format!("lattice is out of phase with period {g}")));
    }
    let whole = PeriodFact::new(Span::whole(len), period)?;
    let first = 2 + (anchor - 2).rem_euclid(period as i64);
    loop {
        if fact.span == whole.span {
            return Ok(fact);
        }
        if fact.span.len() >= period {
            return inf.l4_extend(&whole, &fact);
        }
        let (s, e) = (fact.span.start as i64, fact.span.end as i64);
        let mut best = fact.span;
        for c in (first..=2 * len as i64).step_by(period) {
            // the part of the span whose mirror image stays inside w
            let (lo, hi) = (s.max(c - len as i64), e.min(c - 1));
            if lo > hi {
                continue;
            }
            let (a, b) = (c - hi, c - lo);
            if a > e + 1 || b < s - 1 {
                continue;
            }
            let joined = Span { start: a.min(s) as usize, end: b.max(e) as usize };
            if joined.len() > best.len() {
                best = joined;
            }
        }
        if best == fact.span {
            return Err(Error::Verification(format!("period {g} on {} cannot be extended", fact.span)));
        }
        fact = PeriodFact { span: best, period: g };
        fact.verify(w)?;
    }
}

/// A word that is a palindromic periodicity in two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePP {
    pub word: Word,
    /// `(offset, half-period)`, offsets relative to the word as in
    /// [`is_pal_periodicity`].
    pub params1: (HalfPos, HalfPos),
    pub params2: (HalfPos, HalfPos),
}

impl DoublePP {
    pub fn new(word: Word, params1: (HalfPos, HalfPos), params2: (HalfPos, HalfPos)) -> Result<Self> {
        for (r, h) in [params1, params2] {
            if !is_pal_periodicity(&word, r, h) {
                return Err(Error::Hypothesis(format!(
                    "not a palindromic periodicity with offset {r}, half-period {h}"
                )));
            }
        }
        Ok(DoublePP { word, params1, params2 })
    }

    /// `(bound, gcd)`: the length from which the lemma applies and the
    /// period it gives.
    pub fn bound(&self) -> (usize, usize) {
        let ((r1, h1), (r2, h2)) = (self.params1, self.params2);
        dpp_bound(r1, h1, r2, h2)
    }
}

/// At length at least `2h1 + 2h2 - gcd(2(r2 - r1), 2h1, 2h2)` the word has
/// period `gcd(2(r2 - r1), 2h1, 2h2)`. Shorter words give `None`. The fact
/// is verified on the letters.
pub fn dpp_periodicity_lemma(d: &DoublePP) -> Result<Option<PeriodFact>> {
    let (bound, g) = d.bound();
    if d.word.len() < bound {
        return Ok(None);
    }
    let fact = PeriodFact::new(Span::whole(d.word.len()), g)?;
    fact.verify(&d.word)?;
    Ok(Some(fact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::{generic_word, GenericSpec};
    use crate::palindrome::max_radius_at;
    use crate::word::w;

    fn hp(s: &str) -> HalfPos {
        s.parse().unwrap()
    }

    const WORD3: &str = "cdefgbbgfedccdefgbbgfedccdefgaagfedccdefgbbgfedccdefgaagfedc";

    fn paper_params() -> GWordParams {
        gword_params(hp("13/2"), hp("49/2"), hp("30")).unwrap()
    }

    #[test]
    fn params_examples() {
        let p = paper_params();
        assert_eq!((p.g, p.n), (12, 48));
        assert_eq!((p.offset_r, p.centre_c), (hp("13/2"), hp("49/2")));
        assert!(matches!(gword_params(hp("1"), hp("1"), hp("3")), Err(Error::Degenerate(_))));
        // g = 2 and n = 2 would need the centre at 3/2
        assert!(gword_params(hp("1"), hp("2"), hp("2")).is_err());
        let q = gword_params(hp("1/2"), hp("3/2"), hp("2")).unwrap();
        assert_eq!((q.g, q.n, q.offset_r), (2, 2, hp("1/2")));
    }

    #[test]
    fn essential_centres_example() {
        assert_eq!(essential_centres_in_gword(&paper_params(), 0), (hp("13/2"), hp("73/2")));
    }

    #[test]
    fn step_example() {
        let p = paper_params();
        let GWordStep::Prefix { params, reflected } = gword_step(&p).unwrap() else { panic!() };
        assert!(reflected);
        assert_eq!(params.g, 12);
        assert!(24 <= params.n && params.n < 48);
        let chain = gword_chain(&p).unwrap();
        assert_eq!(chain.last().unwrap().0.n, 12);
    }

    /// Every valid parameter set up to `2h = max`.
    fn all_params(max: i64) -> Vec<GWordParams> {
        let mut out = Vec::new();
        for period in 2..=max {
            for dist in 1..period {
                let g = dist.gcd(&period);
                let n = period - g;
                if let Ok(p) = gword_params(HalfPos(n + 1 - dist), HalfPos(n + 1), HalfPos(period)) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn case_a_found_by_search() {
        let p = all_params(12)
            .into_iter()
            .find(|p| 2 * (p.centre_c.0 - p.offset_r.0) == p.half_period_h.0)
            .unwrap();
        assert_eq!(gword_step(&p).unwrap(), GWordStep::PalindromeOfLengthG);
        assert_eq!(p.n, p.g);
    }

    #[test]
    fn lattice_points_and_steps_exhaustive() {
        for p in all_params(60) {
            assert_eq!(p.n % p.g, 0);
            let h = p.half_period_h.0;
            let inside: Vec<i64> = (-4 * h..4 * h)
                .map(|k| p.offset_r.0 + k * h)
                .filter(|&c| 1 <= c && c <= 2 * p.n as i64 + 1)
                .collect();
            assert_eq!(inside, vec![p.offset_r.0, p.offset_r.0 + h], "{p:?}");
            let chain = gword_chain(&p).unwrap();
            let steps = chain.len() - 1;
            // lengths drop by a multiple of g each step, like subtractive gcd
            assert!(steps < p.n / p.g, "{p:?} took {steps} steps");
            assert!(chain.windows(2).all(|w| (w[0].0.n - w[1].0.n) % p.g == 0));
            assert_eq!(chain.last().unwrap().0.n, p.g);
        }
    }

    #[test]
    fn paper_words() {
        let w2 = w(&"abcdeffedcba".repeat(5));
        let fact = gword_period(&w2, &paper_params(), 6).unwrap();
        assert_eq!(fact, PeriodFact { span: Span::whole(60), period: 12 });

        let w3 = w(WORD3);
        assert_eq!(w3.len(), 60);
        assert!(matches!(gword_period(&w3, &paper_params(), 6), Err(Error::Hypothesis(_))));
        let radius = max_radius_at(&w3, HalfPos(61)).unwrap();
        assert_eq!(radius.0 + 1, 46);
        let central = Span { start: (61 - radius.0) as usize / 2, end: (61 + radius.0) as usize / 2 };
        assert_eq!(word::least_period(w3.slice(central)), 24);
        assert!(!word::has_period(w3.letters(), 12));
    }

    #[test]
    fn unary_word() {
        let p = paper_params();
        let fact = gword_period(&w(&"a".repeat(70)), &p, 3).unwrap();
        assert_eq!((fact.span, fact.period), (Span::whole(70), 12));
    }

    #[test]
    fn period_theorem_on_generic_words() {
        let report = crate::audit::audit_gword(40);
        assert!(report.passed(), "{:?}", report.examples);
        assert!(report.cases > 1000);
    }

    #[test]
    fn dpp_examples() {
        let int = HalfPos::from_int;
        let mk = |len| {
            let spec = GenericSpec::double(len, (int(0), int(4)), (int(2), int(6))).unwrap();
            let word = generic_word(&spec);
            let rel = |r: HalfPos, h: HalfPos| HalfPos((r.0 - 1).rem_euclid(h.0) + 1);
            DoublePP::new(word, (rel(int(0), int(4)), int(4)), (rel(int(2), int(6)), int(6))).unwrap()
        };
        let d = mk(16);
        assert_eq!(d.bound(), (16, 4));
        assert_eq!(dpp_periodicity_lemma(&d).unwrap().unwrap().period, 4);
        assert_eq!(dpp_periodicity_lemma(&mk(15)).unwrap(), None);
        assert_eq!(word::least_period(mk(15).word.letters()), 8);
    }
}
