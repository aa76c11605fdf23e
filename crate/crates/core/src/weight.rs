//! Lexicographic weights: a primary length plus a tiebreak component.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Add;

/// Largest primary length accepted from input files.
pub const MAX_LEN: u64 = 1 << 40;

/// Path weight ordered by `len` first and `tie` second.
///
/// `Weight::INF` marks an unusable arc and unreachable distances. Addition
/// saturates to `INF`; use [`Weight::checked_add`] when overflow must be seen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub len: u64,
    pub tie: u64,
}

impl Weight {
    pub const ZERO: Weight = Weight { len: 0, tie: 0 };
    pub const INF: Weight = Weight { len: u64::MAX, tie: u64::MAX };

    pub const fn new(len: u64, tie: u64) -> Self {
        Weight { len, tie }
    }

    pub fn is_inf(self) -> bool {
        self == Weight::INF
    }

    pub fn checked_add(self, o: Weight) -> Option<Weight> {
        if self.is_inf() || o.is_inf() {
            return None;
        }
        let len = self.len.checked_add(o.len)?;
        let tie = self.tie.checked_add(o.tie)?;
        let w = Weight { len, tie };
        if w.is_inf() {
            None
        } else {
            Some(w)
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        self.checked_add(o).unwrap_or(Weight::INF)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            write!(f, "inf")
        } else if self.tie == 0 {
            write!(f, "{}", self.len)
        } else {
            write!(f, "{}/{}", self.len, self.tie)
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "inf" {
            return Ok(Weight::INF);
        }
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let len: u64 = a.parse().map_err(|_| format!("bad weight `{s}`"))?;
        let tie: u64 = match b {
            Some(b) => b.parse().map_err(|_| format!("bad tiebreak `{s}`"))?,
            None => 0,
        };
        if len >= MAX_LEN {
            return Err(format!("weight {len} exceeds limit {MAX_LEN}"));
        }
        Ok(Weight { len, tie })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic() {
        assert!(Weight::new(1, 100) < Weight::new(2, 0));
        assert!(Weight::new(2, 1) < Weight::new(2, 3));
        assert!(Weight::new(u64::MAX - 1, 0) < Weight::INF);
    }

    #[test]
    fn add_saturates_and_checked_reports() {
        assert_eq!(Weight::new(1, 2) + Weight::new(3, 4), Weight::new(4, 6));
        assert_eq!(Weight::INF + Weight::ZERO, Weight::INF);
        assert_eq!(Weight::new(u64::MAX, 0).checked_add(Weight::new(1, 0)), None);
        assert_eq!(Weight::new(3, 0).checked_add(Weight::INF), None);
    }

    #[test]
    fn parse_round_trip() {
        for w in [Weight::new(5, 0), Weight::new(7, 99), Weight::INF] {
            let s = w.to_string();
            assert_eq!(s.parse::<Weight>().unwrap(), w);
        }
        assert!("12x".parse::<Weight>().is_err());
        assert!(format!("{}", MAX_LEN).parse::<Weight>().is_err());
    }
}
