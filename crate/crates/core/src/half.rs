//! Exact arithmetic on ℤ/2: every centre, radius, offset and half-period is
//! stored as twice its value.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A value in ℤ/2, stored doubled (`HalfPos(13)` is 13/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfPos(pub i64);

impl HalfPos {
    pub const ZERO: HalfPos = HalfPos(0);
    /// Radius of the empty palindrome.
    pub const EMPTY_RADIUS: HalfPos = HalfPos(-1);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfPos(doubled)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfPos(2 * v)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Largest integer not above the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    /// Membership in the integer span `[a..b]`: `a-1/2` belongs, `b+1/2` does not.
    pub fn in_span(self, start: i64, end: i64) -> bool {
        2 * start - 1 <= self.0 && self.0 <= 2 * end
    }
}

impl Add for HalfPos {
    type Output = HalfPos;
    fn add(self, rhs: HalfPos) -> HalfPos {
        HalfPos(self.0 + rhs.0)
    }
}

impl Sub for HalfPos {
    type Output = HalfPos;
    fn sub(self, rhs: HalfPos) -> HalfPos {
        HalfPos(self.0 - rhs.0)
    }
}

impl Neg for HalfPos {
    type Output = HalfPos;
    fn neg(self) -> HalfPos {
        HalfPos(-self.0)
    }
}

impl fmt::Display for HalfPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts `6`, `13/2`, `6.5` and `-1/2`.
impl FromStr for HalfPos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::HalfPos(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(HalfPos(2 * num)),
                "2" => Ok(HalfPos(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = t.split_once('.') {
            let neg = int.starts_with('-');
            let whole: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let half = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let sign = if neg { -1 } else { 1 };
            return Ok(HalfPos(2 * whole + sign * half));
        }
        t.parse::<i64>().map(HalfPos::from_int).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("13/2".parse::<HalfPos>().unwrap(), HalfPos(13));
        assert_eq!("6.5".parse::<HalfPos>().unwrap(), HalfPos(13));
        assert_eq!("6".parse::<HalfPos>().unwrap(), HalfPos(12));
        assert_eq!("-1/2".parse::<HalfPos>().unwrap(), HalfPos(-1));
        assert_eq!("-0.5".parse::<HalfPos>().unwrap(), HalfPos(-1));
        assert_eq!("-2.5".parse::<HalfPos>().unwrap(), HalfPos(-5));
        assert!("1/3".parse::<HalfPos>().is_err());
        assert!("1.25".parse::<HalfPos>().is_err());
        assert_eq!(HalfPos(13).to_string(), "13/2");
        assert_eq!(HalfPos(-1).to_string(), "-1/2");
        assert_eq!(HalfPos(12).to_string(), "6");
    }

    #[test]
    fn membership_convention() {
        for a in 1..6 {
            for b in a..8 {
                assert!(HalfPos(2 * a - 1).in_span(a, b));
                assert!(!HalfPos(2 * b + 1).in_span(a, b));
                assert!(HalfPos(2 * b).in_span(a, b));
                assert!(!HalfPos(2 * a - 2).in_span(a, b));
            }
        }
    }

    #[test]
    fn floor_of_negative_half() {
        assert_eq!(HalfPos(-1).floor(), -1);
        assert_eq!(HalfPos(5).floor(), 2);
        assert_eq!(HalfPos(4).floor(), 2);
    }
}
