//! p-adic numbers to a tracked number of unit digits.
//!
//! A nonzero value is stored as `p^v * u` where `u` is a unit known modulo `p^N`
//! (`N` the precision). The absolute value `p^-v` is therefore exact even though
//! the digits are not. Zero is a separate variant so that it never masquerades as
//! a number of large valuation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes::Prime;
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicApprox {
    prime: Prime,
    value: Repr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    Unit {
        valuation: i64,
        /// Residue in `[0, p^precision)`, never divisible by `p`.
        unit: BigInt,
        precision: u32,
    },
}

/// An exact absolute value `p^-valuation`, or the zero norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PPower {
    Zero,
    Power { prime: u64, valuation: Q },
}

impl PPower {
    pub fn from_valuation(prime: u64, valuation: Q) -> Self {
        PPower::Power { prime, valuation }
    }

    pub fn one(prime: u64) -> Self {
        PPower::Power {
            prime,
            valuation: Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PPower::Zero)
    }

    pub fn valuation(&self) -> Option<&Q> {
        match self {
            PPower::Zero => None,
            PPower::Power { valuation, .. } => Some(valuation),
        }
    }

    /// The value as a rational when the exponent is integral.
    pub fn to_rational(&self) -> Option<Q> {
        match self {
            PPower::Zero => Some(Q::zero()),
            PPower::Power { prime, valuation } => valuation
                .is_integer()
                .then(|| rational::pow_rat(*prime, -valuation.to_integer().to_i64().unwrap())),
        }
    }

    pub fn mul(&self, other: &PPower) -> PPower {
        match (self, other) {
            (PPower::Zero, _) | (_, PPower::Zero) => PPower::Zero,
            (
                PPower::Power { prime, valuation },
                PPower::Power {
                    prime: p2,
                    valuation: v2,
                },
            ) => {
                assert_eq!(prime, p2, "absolute values at different primes");
                PPower::Power {
                    prime: *prime,
                    valuation: valuation + v2,
                }
            }
        }
    }
}

impl PartialOrd for PPower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (PPower::Zero, PPower::Zero) => Some(Ordering::Equal),
            (PPower::Zero, _) => Some(Ordering::Less),
            (_, PPower::Zero) => Some(Ordering::Greater),
            (
                PPower::Power { prime, valuation },
                PPower::Power {
                    prime: p2,
                    valuation: v2,
                },
            ) => (prime == p2).then(|| v2.cmp(valuation)),
        }
    }
}

impl fmt::Display for PPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PPower::Zero => write!(f, "0"),
            PPower::Power { prime, valuation } => {
                write!(f, "{}^({})", prime, rational::format_rational(&-valuation))
            }
        }
    }
}

fn modulus(p: Prime, n: u32) -> BigInt {
    rational::pow_int(p.get(), n)
}

/// Split a nonzero integer into `p^v * rest` with `p` not dividing `rest`.
fn split_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i64;
    while m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    (v, m)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

impl PAdicApprox {
    pub fn zero(prime: Prime) -> Self {
        PAdicApprox {
            prime,
            value: Repr::Zero,
        }
    }

    /// Expand a rational to `precision` unit digits.
    pub fn from_rational(r: &Q, prime: Prime, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if r.is_zero() {
            return Ok(Self::zero(prime));
        }
        let p = prime.get();
        let (vn, un) = split_p(r.numer(), p);
        let (vd, ud) = split_p(r.denom(), p);
        let m = modulus(prime, precision);
        let unit = (un * inverse_mod(&ud, &m)).mod_floor(&m);
        Ok(PAdicApprox {
            prime,
            value: Repr::Unit {
                valuation: vn - vd,
                unit,
                precision,
            },
        })
    }

    pub fn from_int(n: i64, prime: Prime, precision: u32) -> Result<Self> {
        Self::from_rational(&rational::qi(n), prime, precision)
    }

    /// Build from explicit digits `d_0..d_{N-1}` (with `d_0 != 0`).
    pub fn from_digits(prime: Prime, valuation: i64, digits: &[u32]) -> Result<Self> {
        let p = prime.get();
        if digits.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        if digits[0] == 0 {
            return Err(Error::Invalid("leading unit digit must be nonzero".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d as u64 >= p) {
            return Err(Error::Invalid(format!(
                "digit {d} out of range for p = {p}"
            )));
        }
        let pb = BigInt::from(p);
        let unit = digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &pb + BigInt::from(d));
        Ok(PAdicApprox {
            prime,
            value: Repr::Unit {
                valuation,
                unit,
                precision: digits.len() as u32,
            },
        })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, Repr::Zero)
    }

    /// `None` stands for the valuation of zero.
    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            Repr::Zero => None,
            Repr::Unit { valuation, .. } => Some(*valuation),
        }
    }

    /// Number of tracked unit digits; `None` for the exact zero.
    pub fn precision(&self) -> Option<u32> {
        match &self.value {
            Repr::Zero => None,
            Repr::Unit { precision, .. } => Some(*precision),
        }
    }

    /// The value is known modulo `p^absolute_precision`.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.value {
            Repr::Zero => None,
            Repr::Unit {
                valuation,
                precision,
                ..
            } => Some(valuation + *precision as i64),
        }
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match &self.value {
            Repr::Zero => None,
            Repr::Unit { unit, .. } => Some(unit),
        }
    }

    pub fn digits(&self) -> Vec<u32> {
        match &self.value {
            Repr::Zero => Vec::new(),
            Repr::Unit {
                unit, precision, ..
            } => {
                let pb = BigInt::from(self.prime.get());
                let mut m = unit.clone();
                (0..*precision)
                    .map(|_| {
                        let (q, r) = m.div_rem(&pb);
                        m = q;
                        r.to_u32().unwrap()
                    })
                    .collect()
            }
        }
    }

    /// The rational `p^v * unit` represented by the tracked digits.
    pub fn to_rational(&self) -> Q {
        match &self.value {
            Repr::Zero => Q::zero(),
            Repr::Unit {
                valuation, unit, ..
            } => rational::pow_rat(self.prime.get(), *valuation) * Q::from_integer(unit.clone()),
        }
    }

    pub fn norm(&self) -> PPower {
        match &self.value {
            Repr::Zero => PPower::Zero,
            Repr::Unit { valuation, .. } => {
                PPower::from_valuation(self.prime.get(), Q::from_integer(BigInt::from(*valuation)))
            }
        }
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match &self.value {
            Repr::Zero => self.clone(),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = modulus(self.prime, *precision);
                PAdicApprox {
                    prime: self.prime,
                    value: Repr::Unit {
                        valuation: *valuation,
                        unit: (-unit).mod_floor(&m),
                        precision: *precision,
                    },
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        let (
            Repr::Unit {
                valuation: vx,
                unit: ux,
                ..
            },
            Repr::Unit {
                valuation: vy,
                unit: uy,
                ..
            },
        ) = (&self.value, &other.value)
        else {
            return Ok(if self.is_zero() {
                other.clone()
            } else {
                self.clone()
            });
        };
        let p = self.prime.get();
        let abs = self
            .absolute_precision()
            .unwrap()
            .min(other.absolute_precision().unwrap());
        let low = (*vx).min(*vy);
        let scale = |v: i64, u: &BigInt| u * rational::pow_int(p, (v - low) as u32);
        let span = (abs - low) as u32;
        let m = modulus(self.prime, span);
        let sum = (scale(*vx, ux) + scale(*vy, uy)).mod_floor(&m);
        if sum.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        let (shift, rest) = split_p(&sum, p);
        let precision = span - shift as u32;
        Ok(PAdicApprox {
            prime: self.prime,
            value: Repr::Unit {
                valuation: low + shift,
                unit: rest.mod_floor(&modulus(self.prime, precision)),
                precision,
            },
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        match (&self.value, &other.value) {
            (Repr::Zero, _) | (_, Repr::Zero) => Ok(Self::zero(self.prime)),
            (
                Repr::Unit {
                    valuation: vx,
                    unit: ux,
                    precision: nx,
                },
                Repr::Unit {
                    valuation: vy,
                    unit: uy,
                    precision: ny,
                },
            ) => {
                let precision = (*nx).min(*ny);
                let m = modulus(self.prime, precision);
                Ok(PAdicApprox {
                    prime: self.prime,
                    value: Repr::Unit {
                        valuation: vx + vy,
                        unit: (ux * uy).mod_floor(&m),
                        precision,
                    },
                })
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.value {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = modulus(self.prime, *precision);
                Ok(PAdicApprox {
                    prime: self.prime,
                    value: Repr::Unit {
                        valuation: -valuation,
                        unit: inverse_mod(unit, &m),
                        precision: *precision,
                    },
                })
            }
        }
    }

    /// Whether `r` agrees with this value to the tracked precision.
    pub fn represents(&self, r: &Q) -> bool {
        match &self.value {
            Repr::Zero => r.is_zero(),
            Repr::Unit { .. } => {
                if r.is_zero() {
                    return false;
                }
                match PAdicApprox::from_rational(r, self.prime, self.precision().unwrap()) {
                    Ok(other) => other == *self,
                    Err(_) => false,
                }
            }
        }
    }
}

impl fmt::Display for PAdicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime.get();
        match &self.value {
            Repr::Zero => write!(f, "{p}^INF * ()"),
            Repr::Unit {
                valuation,
                precision,
                ..
            } => {
                let digits: Vec<String> = self.digits().iter().map(u32::to_string).collect();
                write!(
                    f,
                    "{p}^{valuation} * ({}) mod {p}^({})",
                    digits.join(","),
                    valuation + *precision as i64
                )
            }
        }
    }
}

impl FromStr for PAdicApprox {
    type Err = Error;

    /// Parses `p^v * (d0,d1,...) mod p^(v+N)`; the `mod` suffix is optional but
    /// must be consistent when present. Zero is written `p^INF * ()`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::parse(0, format!("{msg} in p-adic literal {s:?}"));
        let (head, rest) = t.split_once('*').ok_or_else(|| bad("missing '*'"))?;
        let (p, v) = head.split_once('^').ok_or_else(|| bad("missing '^'"))?;
        let p: u64 = p.parse().map_err(|_| bad("bad prime"))?;
        let prime = Prime::new(p)?;
        let (body, modpart) = match rest.split_once("mod") {
            Some((b, m)) => (b, Some(m)),
            None => (rest, None),
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| bad("digits must be parenthesized"))?;
        if v.eq_ignore_ascii_case("INF") {
            if !inner.is_empty() {
                return Err(bad("zero carries no digits"));
            }
            return Ok(PAdicApprox::zero(prime));
        }
        let v: i64 = v.parse().map_err(|_| bad("bad valuation"))?;
        let digits = inner
            .split(',')
            .map(|d| d.parse::<u32>().map_err(|_| bad("bad digit")))
            .collect::<Result<Vec<_>>>()?;
        let x = PAdicApprox::from_digits(prime, v, &digits)?;
        if let Some(m) = modpart {
            let (mp, me) = m.split_once('^').ok_or_else(|| bad("bad modulus"))?;
            let me = me.trim_start_matches('(').trim_end_matches(')');
            let me: i64 = me.parse().map_err(|_| bad("bad modulus exponent"))?;
            if mp != p.to_string() || me != x.absolute_precision().unwrap() {
                return Err(bad("modulus does not match valuation and digit count"));
            }
        }
        Ok(x)
    }
}

/// Residue of a p-integral rational modulo `p^exponent`.
pub fn residue_mod(r: &Q, p: u64, exponent: i64) -> Option<BigInt> {
    if !rational::is_p_integral(r, p) || exponent < 0 {
        return None;
    }
    let m = rational::pow_int(p, exponent as u32);
    let inv = inverse_mod(&r.denom().mod_floor(&m), &m);
    Some((r.numer() * inv).mod_floor(&m))
}
