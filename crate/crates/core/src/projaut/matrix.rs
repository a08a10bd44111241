use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::rational::{self, Q};

/// Square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(QMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::qi(v)).collect())
                .collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        QMatrix {
            n,
            data: vec![Q::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Q::one())
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, v) in d.iter().enumerate() {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    /// Companion matrix of `f / lc(f)`: ones on the subdiagonal, negated
    /// normalized coefficients in the last column.
    pub fn companion(f: &IntPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let n = f.degree();
        let lc = Q::from_integer(f.leading());
        let mut m = Self::zero(n);
        for i in 1..n {
            m.data[i * n + i - 1] = Q::one();
        }
        for i in 0..n {
            m.data[i * n + n - 1] = -Q::from_integer(f.coeff(i)) / &lc;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        QMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        QMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.n).map(|i| self.data[i * self.n + i].clone()).sum()
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut out = Self::zero(n);
        for i in 0..a {
            for j in 0..a {
                let x = &self.data[i * a + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * n + (j * b + l)] = x * &other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn is_scalar(&self) -> bool {
        let c = &self.data[0];
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = &self.data[i * self.n + j];
                if i == j {
                    v == c
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn det(&self) -> Q {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &a[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &p;
                inv[col * n + j] /= &p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[col * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(QMatrix { n, data: inv })
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &IntPolynomial) -> Self {
        let mut acc = Self::zero(self.n);
        for c in f.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .add(&Self::scalar(self.n, Q::from_integer(c.clone())));
        }
        acc
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .data
            .chunks(self.n)
            .map(|r| {
                r.iter()
                    .map(rational::format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Minimal polynomial as a primitive integer polynomial with positive
/// leading coefficient: the first linear dependency among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &QMatrix) -> IntPolynomial {
    struct Row {
        pivot: usize,
        vec: Vec<Q>,
        combo: Vec<Q>,
    }
    let mut basis: Vec<Row> = Vec::new();
    let mut power = QMatrix::identity(m.dim());
    for k in 0..=m.dim() {
        let mut w = power.entries().to_vec();
        let mut combo = vec![Q::zero(); k + 1];
        combo[k] = Q::one();
        for row in &basis {
            if w[row.pivot].is_zero() {
                continue;
            }
            let f = &w[row.pivot] / &row.vec[row.pivot];
            for (x, y) in w.iter_mut().zip(&row.vec) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(&row.combo) {
                *x -= &f * y;
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return IntPolynomial::from_rationals(&combo),
            Some(pivot) => basis.push(Row {
                pivot,
                vec: w,
                combo,
            }),
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by the dimension")
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recursion, kept independent of `minimal_polynomial`.
pub fn characteristic_polynomial(m: &QMatrix) -> IntPolynomial {
    let n = m.dim();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = QMatrix::zero(n);
    for k in 1..=n {
        mk = m
            .mul(&mk)
            .add(&QMatrix::scalar(n, coeffs[n - k + 1].clone()));
        coeffs[n - k] = -m.mul(&mk).trace() / Q::from_integer(k.into());
    }
    IntPolynomial::from_rationals(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64(&[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.det(), qi(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), QMatrix::identity(2));
        let s = QMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        assert_eq!(s.det(), qi(0));
        let h = QMatrix::new(vec![vec![qi(1), q(1, 2)], vec![q(1, 2), q(1, 3)]]).unwrap();
        assert_eq!(h.det(), q(1, 12));
    }

    #[test]
    fn kron_shape() {
        let a = QMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        let k = a.kron(&QMatrix::identity(2));
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(2, 0), &qi(3));
        assert_eq!(k.get(3, 1), &qi(3));
        assert_eq!(k.get(2, 1), &qi(0));
        assert_eq!(a.kron(&a).det(), a.det().pow(4));
    }

    #[test]
    fn minimal_polynomials() {
        let id = QMatrix::identity(3);
        assert_eq!(minimal_polynomial(&id), IntPolynomial::from_i64(&[-1, 1]));
        let j = QMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(minimal_polynomial(&j), IntPolynomial::from_i64(&[1, -2, 1]));
        let phi5 = IntPolynomial::from_i64(&[1, 1, 1, 1, 1]);
        let c = QMatrix::companion(&phi5).unwrap();
        assert_eq!(minimal_polynomial(&c), phi5);
        assert_eq!(characteristic_polynomial(&c), phi5);
        assert!(c.eval_poly(&phi5).is_scalar() && c.eval_poly(&phi5).get(0, 0).is_zero());
        let d = QMatrix::diagonal(&[qi(2), qi(2), qi(3)]);
        assert_eq!(minimal_polynomial(&d), IntPolynomial::from_i64(&[6, -5, 1]));
        assert_eq!(
            characteristic_polynomial(&d),
            IntPolynomial::from_i64(&[-12, 16, -7, 1])
        );
    }

    #[test]
    fn display() {
        let m = QMatrix::new(vec![vec![qi(1), q(-1, 2)], vec![qi(0), qi(3)]]).unwrap();
        assert_eq!(m.to_string(), "1,-1/2;0,3");
    }
}
