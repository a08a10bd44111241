//! Helpers for exact rational arithmetic shared by every module.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (quo, rem) = m.div_rem(&pb);
        if !rem.is_zero() {
            return Some(v);
        }
        m = quo;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn valuation(r: &Q, p: u64) -> Option<i64> {
    let vn = int_valuation(r.numer(), p)? as i64;
    let vd = int_valuation(r.denom(), p).unwrap_or(0) as i64;
    Some(vn - vd)
}

pub fn is_p_integral(r: &Q, p: u64) -> bool {
    !r.denom().is_multiple_of(&BigInt::from(p))
}

/// `p^e` as an exact rational, any sign of `e`.
pub fn pow_rat(p: u64, e: i64) -> Q {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

pub fn pow_int(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Rational enclosure `[lo, hi]` of the nonnegative `m`-th root of `x`, with
/// `hi - lo <= 1/scale`. Both ends coincide when the root is exact at that scale.
pub fn nth_root_bounds(x: &Q, m: u32, scale: &BigInt) -> (Q, Q) {
    assert!(!x.is_negative(), "root of a negative rational");
    assert!(m >= 1);
    if m == 1 {
        return (x.clone(), x.clone());
    }
    // floor((x * scale^m)^(1/m)) = floor(root(num * scale^m * den^(m-1)) / den)
    let num = x.numer().to_biguint().unwrap();
    let den = x.denom().to_biguint().unwrap();
    let s = scale.to_biguint().unwrap();
    let big = &num * s.pow(m) * den.pow(m - 1);
    let r: BigUint = big.nth_root(m);
    // r = floor(root(big)); root(x) * scale = root(big) / den
    let lo_int = &r / &den;
    let lo = Q::new(BigInt::from(lo_int.clone()), scale.clone());
    let exact = r.pow(m) == big && (&r % &den).is_zero();
    if exact {
        (lo.clone(), lo)
    } else {
        let hi = Q::new(BigInt::from(lo_int + 1u32), scale.clone());
        (lo, hi)
    }
}

pub fn sqrt_bounds(x: &Q, scale: &BigInt) -> (Q, Q) {
    nth_root_bounds(x, 2, scale)
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::parse(0, format!("not a rational: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Q::new(n, d))
}

pub fn format_rational(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering truncated toward zero to `digits` places. Display only.
pub fn to_decimal(r: &Q, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let int = a.trunc().to_integer();
    let frac = a.fract();
    let scaled = (frac * Q::from_integer(BigInt::from(10u32).pow(digits as u32)))
        .trunc()
        .to_integer();
    let mut fs = scaled.to_string();
    while fs.len() < digits {
        fs.insert(0, '0');
    }
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{fs}")
    }
}

pub fn to_f64(r: &Q) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // scale both down to keep them in range
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn sign_of(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Serde adapter writing a rational as `{"num": "...", "den": "..."}` with
/// decimal integer strings.
pub mod serde_q {
    use super::Q;
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Frac {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        Frac {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let f = Frac::deserialize(d)?;
        let n: BigInt = f.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = f.den.parse().map_err(D::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Q::new(n, den))
    }
}

/// Serde adapter for integers as decimal strings.
pub mod serde_z {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&z.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
