//! Dense univariate polynomials with integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Q};

/// Coefficients are stored in ascending order with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Clears denominators of a rational coefficient list and takes the
    /// primitive part.
    pub fn from_rationals(coeffs: &[Q]) -> Self {
        let l = rational::lcm_all(coeffs.iter().map(|c| c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        Self::new(ints).primitive_part()
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -BigInt::one();
        v[n] += BigInt::one();
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one() && self.leading().is_positive()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Reversal `x^n f(1/x)`; its roots are the inverses of the roots of `f`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + Q::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `f(x)` without building the rational value.
    pub fn sign_at(&self, x: &Q) -> i8 {
        let n = x.numer();
        let d = x.denom();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // sum c_i n^i d^(deg - i), evaluated from the top
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        rational::sign_of(&acc)
    }

    /// Pseudo-division: `lc(g)^(deg f - deg g + 1) * f = q * g + r`.
    pub fn pseudo_div_rem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero(), "pseudo-division by zero");
        if self.is_zero() || self.degree() < g.degree() {
            return (Self::zero(), self.clone());
        }
        let dg = g.degree();
        let lc = g.leading();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dg + 1;
        let mut q = vec![BigInt::zero(); steps];
        for k in (0..steps).rev() {
            let top = r[k + dg].clone();
            for x in q.iter_mut() {
                *x *= &lc;
            }
            q[k] += &top;
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] -= &top * gc;
            }
            debug_assert!(r[k + dg].is_zero());
        }
        r.truncate(dg);
        (Self::new(q), Self::new(r))
    }

    pub fn pseudo_rem(&self, g: &Self) -> Self {
        self.pseudo_div_rem(g).1
    }

    /// Quotient `f / g` when it lies in `Z[x]` with zero remainder.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        assert!(!g.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < g.degree() {
            return None;
        }
        let dg = g.degree();
        let lc = g.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dg + 1];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dg].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[k + i] -= &c * gc;
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.div_exact(self).is_some()
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// `f / gcd(f, f')`, primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides f over Z for primitive f")
            .primitive_part()
    }

    /// `f(x + c)` for an integer shift.
    pub fn shift(&self, c: &BigInt) -> Self {
        // Horner on polynomials: f(x + c) = (...(a_n (x+c) + a_{n-1})(x+c) ...)
        let xc = IntPolynomial::new(vec![c.clone(), BigInt::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &xc) + &Self::constant(a.clone())
        })
    }

    pub fn to_rationals(&self) -> Vec<Q> {
        self.coeffs
            .iter()
            .map(|c| Q::from_integer(c.clone()))
            .collect()
    }

    /// Bracket form `[cn, ..., c1, c0]`, leading coefficient first.
    pub fn to_bracket_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().rev().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    /// Human form such as `5x^2 - 6x + 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Remainder of `a` modulo `b` over the rationals (ascending coefficients).
pub fn rem_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut b = b.to_vec();
    while b.last().is_some_and(Zero::is_zero) {
        b.pop();
    }
    assert!(!b.is_empty(), "remainder by zero polynomial");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lc;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

pub fn mul_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

/// `x^n mod f` in `Q[x]`.
pub fn x_pow_mod(n: u64, f: &IntPolynomial) -> Vec<Q> {
    let fq = f.to_rationals();
    let mut result = vec![Q::one()];
    let mut base = rem_q(&[Q::zero(), Q::one()], &fq);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = rem_q(&mul_q(&result, &base), &fq);
        }
        base = rem_q(&mul_q(&base, &base), &fq);
        e >>= 1;
    }
    rem_q(&result, &fq)
}
