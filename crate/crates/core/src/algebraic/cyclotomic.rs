//! Cyclotomic polynomials and the exact root-of-unity test.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::primes::{divisors, euler_phi, factor_u64, moebius};

/// The `d`-th cyclotomic polynomial.
///
/// Built for the radical `r` of `d` as `prod_{e | r} (x^e - 1)^mu(r/e)`, then
/// `Phi_d(x) = Phi_r(x^(d/r))`.
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic index must be positive");
    let rad: u64 = factor_u64(d).iter().map(|&(p, _)| p).product();
    let mut num = IntPolynomial::one();
    let mut den = Vec::new();
    for e in divisors(rad) {
        let factor = IntPolynomial::x_pow_minus_one(e as usize);
        match moebius(rad / e) {
            1 => num = &num * &factor,
            -1 => den.push(factor),
            _ => {}
        }
    }
    let phi_rad = den.iter().fold(num, |acc, f| {
        acc.div_exact(f)
            .expect("x^e - 1 divides the Moebius numerator")
    });
    let stretch = (d / rad) as usize;
    if stretch == 1 {
        return phi_rad;
    }
    let mut coeffs = vec![BigInt::from(0); phi_rad.degree() * stretch + 1];
    for (i, c) in phi_rad.coeffs().iter().enumerate() {
        coeffs[i * stretch] = c.clone();
    }
    IntPolynomial::new(coeffs)
}

/// Largest index worth testing for a factor of degree at most `n`:
/// `phi(d) >= sqrt(d / 2)` gives `d <= 2 n^2`.
pub fn index_bound(n: usize) -> u64 {
    2 * (n as u64) * (n as u64)
}

/// The cyclotomic indices `d` whose `Phi_d` divide `f`, and the cofactor left
/// after dividing all of them out. `f` must be squarefree.
pub fn cyclotomic_factors(f: &IntPolynomial) -> (Vec<u64>, IntPolynomial) {
    let mut g = f.primitive_part();
    let n = g.degree();
    let mut found = Vec::new();
    for d in 1..=index_bound(n).max(1) {
        if g.degree() == 0 {
            break;
        }
        if euler_phi(d) as usize > g.degree() {
            continue;
        }
        if let Some(q) = g.div_exact(&cyclotomic(d)) {
            g = q;
            found.push(d);
        }
    }
    (found, g)
}

/// If every root of the squarefree polynomial `f` is a root of unity, the
/// least common multiple of their orders.
pub fn root_of_unity_order(f: &IntPolynomial) -> Result<Option<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let g = f.primitive_part();
    // products of cyclotomic polynomials are monic with constant term +-1
    if g.leading() != BigInt::from(1) || num_traits::Signed::abs(&g.coeff(0)) != BigInt::from(1) {
        return Ok(None);
    }
    let (orders, rest) = cyclotomic_factors(&g);
    if !rest.is_constant() {
        return Ok(None);
    }
    Ok(Some(orders.iter().fold(1u64, |acc, &d| acc.lcm(&d))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Independent construction: divide `x^d - 1` by every `Phi_e`, `e | d`, `e < d`.
    fn cyclotomic_by_division(d: u64) -> IntPolynomial {
        let mut f = IntPolynomial::x_pow_minus_one(d as usize);
        for e in divisors(d) {
            if e < d {
                f = f.div_exact(&cyclotomic_by_division(e)).unwrap();
            }
        }
        f
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        for d in 1..=60 {
            assert_eq!(cyclotomic(d), cyclotomic_by_division(d), "d = {d}");
            assert_eq!(cyclotomic(d).degree() as u64, euler_phi(d));
        }
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105)
            .coeffs()
            .iter()
            .any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn orders() {
        assert_eq!(root_of_unity_order(&p(&[1, -1, 1])).unwrap(), Some(6));
        assert_eq!(root_of_unity_order(&p(&[5, -6, 5])).unwrap(), None);
        let f = &p(&[1, 1, 1]) * &p(&[1, 1]);
        assert_eq!(root_of_unity_order(&f).unwrap(), Some(6));
        assert_eq!(root_of_unity_order(&p(&[-1, -1, 1])).unwrap(), None);
        assert_eq!(
            root_of_unity_order(&p(&[1, -2, 1])),
            Err(Error::NotSquarefree)
        );
        assert_eq!(
            root_of_unity_order(&p(&[3])),
            Err(Error::ConstantPolynomial)
        );
        // sign and content do not matter
        assert_eq!(root_of_unity_order(&p(&[-3, 3])).unwrap(), Some(1));
    }

    #[test]
    fn every_small_cyclotomic_recovers_its_index() {
        for d in 1..=index_bound(16) {
            if euler_phi(d) <= 16 {
                assert_eq!(root_of_unity_order(&cyclotomic(d)).unwrap(), Some(d));
            }
        }
    }
}
