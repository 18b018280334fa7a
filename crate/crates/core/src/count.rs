use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// A nonnegative count that may be infinite (multiplicities over infinite vertex groups).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(BigUint),
    Infinite,
}

impl Count {
    pub fn zero() -> Self {
        Count::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        Count::from(1u64)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Count::Finite(n) if n.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Count::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Infinite => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| n.to_u64())
    }
}

impl From<u64> for Count {
    fn from(n: u64) -> Self {
        Count::Finite(BigUint::from(n))
    }
}

impl From<usize> for Count {
    fn from(n: usize) -> Self {
        Count::Finite(BigUint::from(n))
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a + b),
            _ => Count::Infinite,
        }
    }
}

/// `0 * ∞ = 0`: an infinite multiplicity of a trivial summand contributes nothing.
impl Mul for Count {
    type Output = Count;

    fn mul(self, rhs: Count) -> Count {
        if self.is_zero() || rhs.is_zero() {
            return Count::zero();
        }
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a * b),
            _ => Count::Infinite,
        }
    }
}

impl Sum for Count {
    fn sum<I: Iterator<Item = Count>>(iter: I) -> Count {
        iter.fold(Count::zero(), |a, b| a + b)
    }
}

impl PartialOrd for Count {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Count {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => a.cmp(b),
            (Count::Finite(_), Count::Infinite) => Less,
            (Count::Infinite, Count::Finite(_)) => Greater,
            (Count::Infinite, Count::Infinite) => Equal,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite => f.write_str("∞"),
        }
    }
}

impl serde::Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => match n.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&n.to_string()),
            },
            Count::Infinite => s.serialize_str("inf"),
        }
    }
}
