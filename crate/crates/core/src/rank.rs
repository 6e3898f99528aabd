//! Extended rank values.

use std::cmp::Ordering;
use std::fmt;

/// An extended rank: the two sentinel values `-2` and `-1`, a finite rank,
/// or `∞` (no periodic completion exists).
///
/// The total order is `NegTwo < NegOne < Fin(0) < Fin(1) < … < Infinite`.
/// Parity is meaningful for finite ranks; `-2` behaves as even and `-1` as
/// odd wherever acceptance of sentinel-ranked states matters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rank {
    NegTwo,
    NegOne,
    Fin(u32),
    Infinite,
}

impl Rank {
    /// Numeric key used for ordering.
    fn key(self) -> i64 {
        match self {
            Rank::NegTwo => -2,
            Rank::NegOne => -1,
            Rank::Fin(n) => n as i64,
            Rank::Infinite => i64::MAX,
        }
    }

    pub fn is_fin(self) -> bool {
        matches!(self, Rank::Fin(_))
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Rank::NegTwo | Rank::NegOne)
    }

    /// Even/odd classification; `None` for `Infinite`.
    pub fn parity_even(self) -> Option<bool> {
        match self {
            Rank::NegTwo => Some(true),
            Rank::NegOne => Some(false),
            Rank::Fin(n) => Some(n % 2 == 0),
            Rank::Infinite => None,
        }
    }

    /// Integer encoding used by the `dpa v1` text format.
    pub fn to_int(self) -> Option<i64> {
        match self {
            Rank::NegTwo => Some(-2),
            Rank::NegOne => Some(-1),
            Rank::Fin(n) => Some(n as i64),
            Rank::Infinite => None,
        }
    }

    pub fn from_int(n: i64) -> Option<Rank> {
        match n {
            -2 => Some(Rank::NegTwo),
            -1 => Some(Rank::NegOne),
            n if n >= 0 => Some(Rank::Fin(n as u32)),
            _ => None,
        }
    }
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::NegTwo => write!(f, "-2"),
            Rank::NegOne => write!(f, "-1"),
            Rank::Fin(n) => write!(f, "{n}"),
            Rank::Infinite => write!(f, "inf"),
        }
    }
}
