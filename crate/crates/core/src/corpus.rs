//! Classical infinite words and a census of their maximal palindromic
//! periodicities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::palperiod::find_maximal_pps;
use crate::parallel;
use crate::word::{Letter, Word};

/// Longest prefix the census will generate unless told otherwise.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Fixed point of 0 → 01, 1 → 10: letter `i` is the parity of the ones in `i`.
pub fn thue_morse(n: usize) -> Word {
    Word::from_letters((0..n).map(|i| i.count_ones() & 1).collect())
}

/// Fixed point of a → ab, b → a, with a and b as letters 0 and 1.
pub fn fibonacci_word(n: usize) -> Word {
    let mut s: Vec<Letter> = vec![0];
    while s.len() < n {
        s = s.iter().flat_map(|&l| if l == 0 { vec![0, 1] } else { vec![0] }).collect();
    }
    s.truncate(n);
    Word::new(s, 2).expect("binary letters")
}

/// The self-describing run-length word over {1, 2} starting 1, 2, 2.
pub fn kolakoski(n: usize) -> Word {
    let mut s: Vec<Letter> = vec![1, 2, 2];
    let mut read = 2;
    while s.len() < n {
        let next = if s[s.len() - 1] == 1 { 2 } else { 1 };
        for _ in 0..s[read] {
            s.push(next);
        }
        read += 1;
    }
    s.truncate(n);
    Word::new(s, 3).expect("letters 1 and 2")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Famous {
    ThueMorse,
    Fibonacci,
    Kolakoski,
}

impl Famous {
    pub const ALL: [Famous; 3] = [Famous::ThueMorse, Famous::Fibonacci, Famous::Kolakoski];

    pub fn name(self) -> &'static str {
        match self {
            Famous::ThueMorse => "thue-morse",
            Famous::Fibonacci => "fibonacci",
            Famous::Kolakoski => "kolakoski",
        }
    }

    pub fn prefix(self, n: usize) -> Word {
        match self {
            Famous::ThueMorse => thue_morse(n),
            Famous::Fibonacci => fibonacci_word(n),
            Famous::Kolakoski => kolakoski(n),
        }
    }
}

impl fmt::Display for Famous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Famous {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Famous::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub word: Famous,
    pub prefix_len: usize,
    /// Maximal palindromic periodicities in the prefix.
    pub count: usize,
    /// Occurrences per doubled half-period (the period `2h`).
    pub histogram: BTreeMap<i64, usize>,
    /// Smallest position covered by the most occurrences; absent when there
    /// are none.
    pub max_density_position: Option<usize>,
}

/// Prefix lengths `stride, 2·stride, …` and finally `n` itself.
pub fn stride_schedule(n: usize, stride: usize) -> Vec<usize> {
    let stride = stride.max(1);
    let mut out: Vec<usize> = (1..).map(|k| k * stride).take_while(|&l| l < n).collect();
    if n > 0 {
        out.push(n);
    }
    out
}

/// Census of one prefix.
pub fn census_record(word: Famous, prefix: &Word) -> CensusRecord {
    let occs = find_maximal_pps(prefix);
    let mut histogram = BTreeMap::new();
    let mut cover = vec![0i64; prefix.len() + 2];
    for o in &occs {
        *histogram.entry(o.half_period.0).or_insert(0) += 1;
        cover[o.span.start] += 1;
        cover[o.span.end + 1] -= 1;
    }
    let mut best: Option<(i64, usize)> = None;
    let mut depth = 0;
    for (pos, delta) in cover.iter().enumerate().take(prefix.len() + 1).skip(1) {
        depth += delta;
        if depth > 0 && best.is_none_or(|(d, _)| depth > d) {
            best = Some((depth, pos));
        }
    }
    CensusRecord {
        word,
        prefix_len: prefix.len(),
        count: occs.len(),
        histogram,
        max_density_position: best.map(|(_, p)| p),
    }
}

/// One record per prefix length of the stride schedule, in increasing
/// length. Prefixes are scanned in parallel; output order is fixed.
pub fn census(word: Famous, n: usize, stride: usize, budget: usize) -> Result<Vec<CensusRecord>> {
    if n > budget {
        return Err(Error::Budget { requested: n, budget });
    }
    let full = word.prefix(n);
    let lengths = stride_schedule(n, stride);
    Ok(parallel::install(|| {
        lengths
            .par_iter()
            .map(|&len| {
                let prefix = Word::from_letters(full.letters()[..len].to_vec());
                census_record(word, &prefix)
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::palperiod::find_pps_naive;

    #[test]
    fn generator_examples() {
        assert_eq!(thue_morse(8).to_digits().unwrap(), "01101001");
        assert_eq!(thue_morse(1).to_digits().unwrap(), "0");
        assert_eq!(thue_morse(16).to_digits().unwrap(), "0110100110010110");
        assert_eq!(fibonacci_word(8).to_string(), "abaababa");
        assert_eq!(fibonacci_word(1).to_string(), "a");
        assert_eq!(fibonacci_word(13).to_string(), "abaababaabaab");
        assert_eq!(kolakoski(12).to_digits().unwrap(), "122112122122");
        assert_eq!(kolakoski(3).to_digits().unwrap(), "122");
        assert_eq!(kolakoski(1).to_digits().unwrap(), "1");
        assert!(thue_morse(0).is_empty());
    }

    #[test]
    fn thue_morse_is_morphic() {
        let mut s = vec![0u32];
        while s.len() < 1024 {
            s = s.iter().flat_map(|&l| [l, 1 - l]).collect();
        }
        assert_eq!(thue_morse(1024).letters(), &s[..]);
    }

    #[test]
    fn fibonacci_by_concatenation() {
        let (mut prev, mut cur) = (vec![0u32], vec![0u32, 1]);
        while cur.len() < 2000 {
            let next = [cur.clone(), prev].concat();
            prev = cur;
            cur = next;
        }
        assert_eq!(fibonacci_word(2000).letters(), &cur[..2000]);
    }

    #[test]
    fn kolakoski_is_its_own_run_lengths() {
        let k = kolakoski(5000);
        let s = k.letters();
        let mut runs = Vec::new();
        let mut i = 0;
        while i < s.len() {
            let j = (i..s.len()).find(|&j| s[j] != s[i]).unwrap_or(s.len());
            runs.push((j - i) as u32);
            i = j;
        }
        // the last run may be cut short by the prefix
        runs.pop();
        assert_eq!(&s[..runs.len()], &runs[..]);
    }

    #[test]
    fn census_examples() {
        let recs = census(Famous::ThueMorse, 64, 64, DEFAULT_BUDGET).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].count, find_pps_naive(&thue_morse(64)).len());

        let recs = census(Famous::Fibonacci, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((recs.len(), recs[0].count, recs[0].max_density_position), (1, 0, None));

        let recs = census(Famous::Kolakoski, 32, 16, DEFAULT_BUDGET).unwrap();
        assert_eq!(recs.iter().map(|r| r.prefix_len).collect::<Vec<_>>(), vec![16, 32]);
        for r in &recs {
            assert_eq!(r.count, find_pps_naive(&kolakoski(r.prefix_len)).len());
            assert_eq!(r.histogram.values().sum::<usize>(), r.count);
        }

        assert!(matches!(census(Famous::ThueMorse, 100, 10, 50), Err(Error::Budget { .. })));
        assert_eq!("kolakoski".parse::<Famous>().unwrap(), Famous::Kolakoski);
        assert!("tribonacci".parse::<Famous>().is_err());
    }

    #[test]
    fn counts_match_naive_on_small_prefixes() {
        for word in Famous::ALL {
            for n in 1..=64 {
                let prefix = word.prefix(n);
                assert_eq!(census_record(word, &prefix).count, find_pps_naive(&prefix).len(), "{word} {n}");
            }
        }
    }

    #[test]
    fn counts_do_not_decrease() {
        for word in Famous::ALL {
            let counts: Vec<usize> = (1..=400).map(|n| find_maximal_pps(&word.prefix(n)).len()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{word}");
        }
    }

    #[test]
    fn schedule() {
        assert_eq!(stride_schedule(100, 30), vec![30, 60, 90, 100]);
        assert_eq!(stride_schedule(90, 30), vec![30, 60, 90]);
        assert_eq!(stride_schedule(0, 5), Vec::<usize>::new());
    }
}
