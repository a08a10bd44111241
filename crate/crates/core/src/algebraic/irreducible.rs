//! Sound but incomplete irreducibility certificates over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::cyclotomic::cyclotomic_factors;
use crate::poly::IntPolynomial;
use crate::primes::{factor_u64, primes_up_to};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityCheck {
    Proven,
    Unknown,
}

/// How many small primes the modular test tries.
const MODULAR_PRIMES: usize = 40;
/// Eisenstein is tried at every prime up to this bound.
const EISENSTEIN_BOUND: u64 = 1000;

/// Polynomials over F_p, ascending, trimmed.
type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(p as i128));
    g.x.rem_euclid(p as i128) as u64
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mul_mod_p(*r.last().unwrap(), inv, p);
        for (i, &mc) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - mul_mod_p(c, mc, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(v)
}

fn fp_mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    fp_rem(&fp_mul(a, b, p), m, p)
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut result = fp_rem(&vec![1], m, p);
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `f` of degree `n` over F_p is irreducible iff
/// `x^(p^n) = x mod f` and `gcd(x^(p^(n/q)) - x, f) = 1` for every prime `q | n`.
fn fp_is_irreducible(f: &Fp, p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x: Fp = vec![0, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![fp_rem(&x, f, p)];
    for k in 1..=n {
        let next = fp_powmod(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if fp_sub(&frob[n], &fp_rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    factor_u64(n as u64).iter().all(|&(q, _)| {
        let h = fp_sub(&frob[n / q as usize], &x, p);
        fp_gcd(&h, f, p).len() == 1
    })
}

fn reduce(f: &IntPolynomial, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn eisenstein(f: &IntPolynomial, p: u64) -> bool {
    let pb = BigInt::from(p);
    let n = f.degree();
    let c = f.coeffs();
    !c[n].is_multiple_of(&pb)
        && c[..n].iter().all(|x| x.is_multiple_of(&pb))
        && !c[0].is_multiple_of(&(&pb * &pb))
}

/// Certifies irreducibility over Q when a cheap exact criterion applies:
/// degree one, being a cyclotomic polynomial, irreducibility modulo a small prime not dividing the leading
/// coefficient, or Eisenstein for `f(x)`, `f(x + 1)`, `f(x - 1)`.
/// Never reports `Proven` for a reducible polynomial.
pub fn check_irreducible(f: &IntPolynomial) -> IrreducibilityCheck {
    if f.is_constant() {
        return IrreducibilityCheck::Unknown;
    }
    let f = f.primitive_part();
    if f.degree() == 1 {
        return IrreducibilityCheck::Proven;
    }
    if !f.is_squarefree() || f.coeff(0).is_zero() {
        return IrreducibilityCheck::Unknown;
    }
    if f.leading().is_one() {
        let (found, rest) = cyclotomic_factors(&f);
        if found.len() == 1 && rest.is_constant() {
            return IrreducibilityCheck::Proven;
        }
    }
    let lc = f.leading();
    for p in primes_up_to(1000).into_iter().take(MODULAR_PRIMES) {
        if lc.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let fp = reduce(&f, p);
        if fp_is_irreducible(&fp, p) {
            return IrreducibilityCheck::Proven;
        }
    }
    let shifts = [f.clone(), f.shift(&BigInt::one()), f.shift(&-BigInt::one())];
    for p in primes_up_to(EISENSTEIN_BOUND) {
        if shifts.iter().any(|g| eisenstein(g, p)) {
            return IrreducibilityCheck::Proven;
        }
    }
    IrreducibilityCheck::Unknown
}
