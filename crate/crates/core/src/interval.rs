use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// A closed rational interval certified to contain some true value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "rational::serde_q")]
    lo: Q,
    #[serde(with = "rational::serde_q")]
    hi: Q,
}

impl RationalInterval {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(Error::Invalid(format!(
                "empty interval [{}, {}]",
                rational::format_rational(&lo),
                rational::format_rational(&hi)
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Q) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Q::zero())
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(RationalInterval { lo, hi })
    }

    /// Multiplication by a nonnegative rational.
    pub fn scale(&self, c: &Q) -> Self {
        assert!(!c.is_negative(), "scaling by a negative factor");
        RationalInterval {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    /// Product with a nonnegative interval, for nonnegative `self`.
    pub fn mul_nonneg(&self, other: &Self) -> Self {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RationalInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_integer(2.into())
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format_rational(&self.lo),
            rational::format_rational(&self.hi)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn basic_ops() {
        let a = RationalInterval::new(q(1, 3), q(1, 2)).unwrap();
        let b = RationalInterval::new(q(1, 4), q(1, 3)).unwrap();
        assert!(a.overlaps(&b));
        assert_eq!(a.intersection(&b), Some(RationalInterval::point(q(1, 3))));
        assert_eq!((&a + &b).to_string(), "[7/12, 5/6]");
        assert_eq!(a.width(), q(1, 6));
        assert!(RationalInterval::new(q(1, 2), q(1, 3)).is_err());
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"lo":{"num":"1","den":"3"},"hi":{"num":"1","den":"2"}}"#
        );
        assert_eq!(serde_json::from_str::<RationalInterval>(&json).unwrap(), a);
    }
}
