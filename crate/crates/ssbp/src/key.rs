//! Ordered weight/capacity values with tie-breaking.
//!
//! The recursive solver assumes all edge weights are distinct. We get that
//! for free by ordering on `(value, id)` pairs: every edge carries a unique
//! id, and capacities carry the id of the edge they were derived from, or
//! `CAPACITY_ID` for user-supplied initial capacities. A capacity that is
//! numerically equal to a threshold (threshold keys always come from edges,
//! id >= 0) therefore sorts strictly below it, one convention everywhere.

use std::cmp::Ordering;
use std::fmt;

/// Tie-break id used for user-supplied initial capacities.
pub const CAPACITY_ID: i64 = -1;

/// A finite ordered value: numeric weight plus tie-break id.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Key {
    pub value: f64,
    pub id: i64,
}

// Values are finite by construction (no NaN), so equality is total.
impl Eq for Key {}

impl Key {
    pub fn new(value: f64, id: i64) -> Self {
        debug_assert!(value.is_finite());
        Key { value, id }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // Values are always finite, so partial_cmp cannot fail.
        self.value
            .partial_cmp(&other.value)
            .unwrap()
            .then(self.id.cmp(&other.id))
    }
}

/// Edge weight: finite (restricted) or +inf (unrestricted).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Weight {
    Finite(Key),
    Unrestricted,
}

impl Weight {
    pub fn finite(value: f64, id: i64) -> Self {
        Weight::Finite(Key::new(value, id))
    }

    pub fn is_restricted(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn key(&self) -> Option<Key> {
        match self {
            Weight::Finite(k) => Some(*k),
            Weight::Unrestricted => None,
        }
    }

    /// Numeric value, +inf for unrestricted edges.
    pub fn value(&self) -> f64 {
        match self {
            Weight::Finite(k) => k.value,
            Weight::Unrestricted => f64::INFINITY,
        }
    }

    pub fn as_capacity(&self) -> Capacity {
        match self {
            Weight::Finite(k) => Capacity::Finite(*k),
            Weight::Unrestricted => Capacity::PosInf,
        }
    }
}

/// Node capacity / bottleneck label: -inf, finite, or +inf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Capacity {
    NegInf,
    Finite(Key),
    PosInf,
}

impl Capacity {
    /// Capacity from a user-supplied numeric value (`CAPACITY_ID` tie-break).
    pub fn from_value(value: f64) -> Self {
        if value == f64::INFINITY {
            Capacity::PosInf
        } else if value == f64::NEG_INFINITY {
            Capacity::NegInf
        } else {
            Capacity::Finite(Key::new(value, CAPACITY_ID))
        }
    }

    /// Numeric value, ignoring the tie-break id.
    pub fn value(&self) -> f64 {
        match self {
            Capacity::NegInf => f64::NEG_INFINITY,
            Capacity::Finite(k) => k.value,
            Capacity::PosInf => f64::INFINITY,
        }
    }

    pub fn min(self, other: Capacity) -> Capacity {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Capacity) -> Capacity {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::NegInf => write!(f, "-inf"),
            Capacity::PosInf => write!(f, "inf"),
            Capacity::Finite(k) => write!(f, "{}", k.value),
        }
    }
}
