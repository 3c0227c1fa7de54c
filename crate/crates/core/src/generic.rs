//! The generic-word oracle and the double palindromic periodicity tables.
//!
//! A generic word identifies exactly the positions forced equal by a set of
//! reflection lattices, so every word obeying the same lattices is a letter
//! renaming of it. Its least period is therefore the largest least period
//! any such word can have.

use std::fmt::Write as _;

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfPos;
use crate::parallel;
use crate::word::{self, Word};

/// Reflection lattice: centres `offset + k * half_period` for every integer `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub offset: HalfPos,
    pub half_period: HalfPos,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericSpec {
    pub len: usize,
    pub constraints: Vec<Lattice>,
}

impl GenericSpec {
    pub fn new(len: usize, constraints: Vec<Lattice>) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyWord);
        }
        if constraints.iter().any(|c| c.half_period.0 < 1) {
            return Err(Error::ZeroPeriod);
        }
        Ok(GenericSpec { len, constraints })
    }

    /// Two lattices given by plain offsets and half-periods.
    pub fn double(len: usize, (r1, h1): (HalfPos, HalfPos), (r2, h2): (HalfPos, HalfPos)) -> Result<Self> {
        Self::new(
            len,
            vec![Lattice { offset: r1, half_period: h1 }, Lattice { offset: r2, half_period: h2 }],
        )
    }
}

/// Positions `i`, `j` with `i + j` a doubled lattice centre, both in `1..=n`.
pub(crate) fn lattice_pairs(n: usize, lattice: Lattice) -> impl Iterator<Item = (usize, usize)> {
    let (r2, h2) = (lattice.offset.0, lattice.half_period.0);
    let n = n as i64;
    let first = 2 + (r2 - 2).rem_euclid(h2);
    (first..=2 * n).step_by(h2 as usize).flat_map(move |c| {
        let lo = (c - n).max(1);
        (lo..=(c - 1) / 2).map(move |i| (i as usize, (c - i) as usize))
    })
}

/// The generic word; classes are lettered in order of their first position.
pub fn generic_word(spec: &GenericSpec) -> Word {
    let n = spec.len;
    let mut uf = UnionFind::<usize>::new(n + 1);
    for &lattice in &spec.constraints {
        for (i, j) in lattice_pairs(n, lattice) {
            uf.union(i, j);
        }
    }
    let mut letter_of_root = vec![u32::MAX; n + 1];
    let mut next = 0;
    let letters = (1..=n)
        .map(|i| {
            let root = uf.find(i);
            if letter_of_root[root] == u32::MAX {
                letter_of_root[root] = next;
                next += 1;
            }
            letter_of_root[root]
        })
        .collect();
    Word::from_letters(letters)
}

/// Least period of the generic word: the maximum over all words obeying `spec`.
pub fn max_least_period(spec: &GenericSpec) -> usize {
    word::least_period(generic_word(spec).letters())
}

/// Number of letters a single-lattice generic word of length at least
/// `2h` uses, i.e. the classes in one full period.
pub fn alphabet_size_of_generic(spec: &GenericSpec) -> Result<HalfPos> {
    let [lattice] = spec.constraints.as_slice() else {
        return Err(Error::Premise("exactly one constraint expected".into()));
    };
    if (spec.len as i64) < lattice.half_period.0 {
        return Err(Error::Premise(format!("length {} below one period", spec.len)));
    }
    Ok(HalfPos::from_int(generic_word(spec).alphabet_size() as i64))
}

/// Which offset pairs a table covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Same,
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r1: HalfPos,
    pub r2: HalfPos,
    /// Least periods, one per entry of [`PeriodTable::lengths`].
    pub periods: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodTable {
    pub h1: HalfPos,
    pub h2: HalfPos,
    /// Word lengths, decreasing.
    pub lengths: Vec<usize>,
    pub rows: Vec<TableRow>,
}

/// Integer offsets `0 <= r < h`.
fn offsets(h: HalfPos) -> impl Iterator<Item = i64> {
    (0..).take_while(move |&r| 2 * r < h.0)
}

/// Least periods of generic double palindromic periodicities for every
/// integer offset pair of the given parity (rows ordered by `r1`, then `r2`)
/// and every length in `lengths`.
pub fn build_table(h1: HalfPos, h2: HalfPos, parity: Parity, lengths: &[usize]) -> Result<PeriodTable> {
    if h1.0 < 1 || h2.0 < 1 {
        return Err(Error::ZeroPeriod);
    }
    if lengths.contains(&0) {
        return Err(Error::EmptyWord);
    }
    let pairs: Vec<(i64, i64)> = offsets(h1)
        .flat_map(|r1| offsets(h2).map(move |r2| (r1, r2)))
        .filter(|(r1, r2)| ((r1 - r2) % 2 == 0) == (parity == Parity::Same))
        .collect();
    let rows = parallel::install(|| {
        pairs
            .par_iter()
            .map(|&(r1, r2)| {
                let (r1, r2) = (HalfPos::from_int(r1), HalfPos::from_int(r2));
                let periods = lengths
                    .iter()
                    .map(|&n| {
                        let spec = GenericSpec::double(n, (r1, h1), (r2, h2)).expect("validated");
                        max_least_period(&spec)
                    })
                    .collect();
                TableRow { r1, r2, periods }
            })
            .collect()
    });
    Ok(PeriodTable { h1, h2, lengths: lengths.to_vec(), rows })
}

/// `2h1 + 2h2 - gcd(2(r2 - r1), 2h1, 2h2)`, the length from which the
/// two-lattice periodicity lemma applies, with the gcd.
pub fn dpp_bound(r1: HalfPos, h1: HalfPos, r2: HalfPos, h2: HalfPos) -> (usize, usize) {
    // doubled values: 2(r2 - r1) is r2.0 - r1.0 and 2h is h.0
    let g = (r2.0 - r1.0).abs().gcd(&h1.0).gcd(&h2.0) as usize;
    ((h1.0 + h2.0) as usize - g, g)
}

/// A cell where two tables disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub r1: HalfPos,
    pub r2: HalfPos,
    pub len: usize,
    pub expected: Option<usize>,
    pub actual: Option<usize>,
}

impl PeriodTable {
    pub fn cell(&self, r1: HalfPos, r2: HalfPos, len: usize) -> Option<usize> {
        let col = self.lengths.iter().position(|&l| l == len)?;
        let row = self.rows.iter().find(|row| row.r1 == r1 && row.r2 == r2)?;
        row.periods.get(col).copied()
    }

    /// Header `r1 r2 len<max> … len<min>`, one tab-separated row per offset pair.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("r1\tr2");
        for l in &self.lengths {
            write!(out, "\tlen{l}").unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{}\t{}", row.r1, row.r2).unwrap();
            for p in &row.periods {
                write!(out, "\t{p}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Reads the TSV layout written by [`PeriodTable::to_tsv`]. The
    /// half-periods are not part of the layout and are supplied by the caller.
    pub fn from_tsv(text: &str, h1: HalfPos, h2: HalfPos) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
        let cols: Vec<&str> = header.split('\t').collect();
        if cols.len() < 2 || cols[0] != "r1" || cols[1] != "r2" {
            return Err(Error::Parse(format!("bad table header `{header}`")));
        }
        let lengths = cols[2..]
            .iter()
            .map(|c| {
                c.strip_prefix("len")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad length column `{c}`")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let rows = lines
            .map(|line| {
                let fields: Vec<&str> = line.split('\t').collect();
                if fields.len() != lengths.len() + 2 {
                    return Err(Error::Parse(format!("row `{line}` has {} fields", fields.len())));
                }
                let periods = fields[2..]
                    .iter()
                    .map(|f| f.parse().map_err(|_| Error::Parse(format!("bad period `{f}`"))))
                    .collect::<Result<_>>()?;
                Ok(TableRow { r1: fields[0].parse()?, r2: fields[1].parse()?, periods })
            })
            .collect::<Result<_>>()?;
        Ok(PeriodTable { h1, h2, lengths, rows })
    }

    /// Every cell of `expected` that `self` lacks or disagrees with, plus
    /// cells only `self` has.
    pub fn diff(&self, expected: &PeriodTable) -> Vec<CellDiff> {
        let mut out = Vec::new();
        let mut push = |r1, r2, len, e: Option<usize>, a: Option<usize>| {
            if e != a {
                out.push(CellDiff { r1, r2, len, expected: e, actual: a });
            }
        };
        for row in &expected.rows {
            for (&len, &p) in expected.lengths.iter().zip(&row.periods) {
                push(row.r1, row.r2, len, Some(p), self.cell(row.r1, row.r2, len));
            }
        }
        for row in &self.rows {
            for (&len, &p) in self.lengths.iter().zip(&row.periods) {
                if expected.cell(row.r1, row.r2, len).is_none() {
                    push(row.r1, row.r2, len, None, Some(p));
                }
            }
        }
        out
    }
}

pub const PUBLISHED_TABLE_SAME: &str = include_str!("../../../tables/table1.tsv");
pub const PUBLISHED_TABLE_OPPOSITE: &str = include_str!("../../../tables/table2.tsv");

/// The published table for `h1 = 4`, `h2 = 6` and the given parity.
pub fn published_table(parity: Parity) -> PeriodTable {
    let text = match parity {
        Parity::Same => PUBLISHED_TABLE_SAME,
        Parity::Opposite => PUBLISHED_TABLE_OPPOSITE,
    };
    PeriodTable::from_tsv(text, HalfPos::from_int(4), HalfPos::from_int(6)).expect("bundled table parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::palperiod::is_pal_periodicity;

    fn int(v: i64) -> HalfPos {
        HalfPos::from_int(v)
    }

    fn single(n: usize, r2: i64, h2: i64) -> GenericSpec {
        GenericSpec::new(n, vec![Lattice { offset: HalfPos(r2), half_period: HalfPos(h2) }]).unwrap()
    }

    #[test]
    fn generic_examples() {
        assert_eq!(generic_word(&single(6, 2, 4)).to_string(), "abcbab");
        let w = generic_word(&GenericSpec::double(6, (int(0), int(4)), (int(0), int(6))).unwrap());
        assert_eq!(word::least_period(w.letters()), 6);
        let spec = GenericSpec::double(9, (int(0), int(4)), (int(1), int(6))).unwrap();
        assert_eq!(max_least_period(&spec), 6);
        assert_eq!(max_least_period(&GenericSpec::double(16, (int(0), int(4)), (int(2), int(6))).unwrap()), 4);
        assert_eq!(max_least_period(&GenericSpec::double(15, (int(0), int(4)), (int(2), int(6))).unwrap()), 8);
        assert_eq!(max_least_period(&GenericSpec::double(7, (int(1), int(4)), (int(1), int(6))).unwrap()), 7);
        for r1 in 0..4 {
            for r2 in 0..6 {
                if (r1 - r2) % 2 != 0 {
                    let spec = GenericSpec::double(13, (int(r1), int(4)), (int(r2), int(6))).unwrap();
                    assert_eq!(max_least_period(&spec), 2);
                }
            }
        }
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(alphabet_size_of_generic(&single(12, 2, 6)).unwrap(), int(4));
        assert_eq!(alphabet_size_of_generic(&single(10, 2, 5)).unwrap(), int(3));
        assert_eq!(alphabet_size_of_generic(&single(8, 1, 4)).unwrap(), int(2));
    }

    #[test]
    fn generic_words_are_pal_periodicities() {
        for h2 in 1..=12i64 {
            for r2 in 1..=h2 {
                for n in h2 as usize..=3 * h2 as usize {
                    let w = generic_word(&single(n, r2, h2));
                    assert!(is_pal_periodicity(&w, HalfPos(r2), HalfPos(h2)), "n={n} R={r2} H={h2}");
                }
            }
        }
    }

    #[test]
    fn tables_reproduce_published() {
        let lengths: Vec<usize> = (6..=16).rev().collect();
        let t1 = build_table(int(4), int(6), Parity::Same, &lengths).unwrap();
        assert_eq!(t1.diff(&published_table(Parity::Same)), vec![]);
        assert_eq!(t1.to_tsv(), PUBLISHED_TABLE_SAME);
        let lengths: Vec<usize> = (8..=18).rev().collect();
        let t2 = build_table(int(4), int(6), Parity::Opposite, &lengths).unwrap();
        assert_eq!(t2.diff(&published_table(Parity::Opposite)), vec![]);
    }

    #[test]
    fn diff_reports_changed_cell() {
        let mut t = published_table(Parity::Same);
        t.rows[1].periods[1] = 5;
        let d = t.diff(&published_table(Parity::Same));
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].r1, d[0].r2, d[0].len, d[0].expected, d[0].actual), (int(0), int(2), 15, Some(8), Some(5)));
    }

    #[test]
    fn bound_and_lemma_on_tables() {
        assert_eq!(dpp_bound(int(0), int(4), int(2), int(6)), (16, 4));
        assert_eq!(dpp_bound(int(0), int(4), int(1), int(6)), (18, 2));
        for parity in [Parity::Same, Parity::Opposite] {
            let t = published_table(parity);
            for row in &t.rows {
                let (bound, g) = dpp_bound(row.r1, t.h1, row.r2, t.h2);
                for (&len, &p) in t.lengths.iter().zip(&row.periods) {
                    if len >= bound {
                        assert_eq!(g % p, 0);
                    }
                }
            }
        }
    }
}
