//! Finite order of projective automorphisms.
//!
//! `M` has finite order in `PGL` exactly when the conjugation operator
//! `R: X -> M X M^{-1}` has finite order in `GL`. The eigenvalues of `R` are
//! the ratios `a_i / a_j` of eigenvalues of `M`, so the question reduces to
//! cyclotomic tests on the minimal polynomial of `R`. When it fails, a place
//! where some ratio has absolute value above 1 certifies infinite order.

mod matrix;
mod tiling;

use num_integer::Integer;

use crate::algebraic::cyclotomic::cyclotomic_factors;
use crate::algebraic::{root_of_unity_order, AlgebraicNumberSpec, IntPolynomial};
use crate::error::{Error, Result};
use crate::places::{
    find_witness_with, Conditionality, WitnessCertificate, WitnessConfig, WitnessOutcome,
};
use crate::primes::factor_u64;

pub use matrix::{characteristic_polynomial, minimal_polynomial, QMatrix};
pub use tiling::{verify_shell_tiling, ShellLedger, TranslateEntry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteReason {
    /// The minimal polynomial has a repeated factor, so `M` has a nontrivial
    /// Jordan block.
    NotSemisimple { minimal_polynomial: IntPolynomial },
    /// A ratio of eigenvalues (an eigenvalue, for normalized diagonal input)
    /// is large at some place.
    EigenvalueWitness {
        certificate: Box<WitnessCertificate>,
        eigenvalue_index: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    FiniteOrder {
        order: u64,
        conditionality: Conditionality,
    },
    InfiniteOrder(InfiniteReason),
}

impl OrderVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderVerdict::FiniteOrder { .. })
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            OrderVerdict::FiniteOrder { order, .. } => Some(*order),
            OrderVerdict::InfiniteOrder(_) => None,
        }
    }
}

pub fn is_semisimple(m: &QMatrix) -> bool {
    minimal_polynomial(m).is_squarefree()
}

/// Order of `M` in `GL_n(Q)`, if finite.
pub fn linear_order(m: &QMatrix) -> Option<u64> {
    let f = minimal_polynomial(m);
    if !f.is_squarefree() {
        return None;
    }
    root_of_unity_order(&f).ok().flatten()
}

/// The operator `X -> M X M^{-1}` on `n x n` matrices, as `M (x) M^{-T}` in
/// row-major coordinates.
pub fn conjugation_operator(m: &QMatrix) -> Result<QMatrix> {
    Ok(m.kron(&m.inverse()?.transpose()))
}

pub fn projective_order(m: &QMatrix) -> Result<OrderVerdict> {
    projective_order_with(m, &WitnessConfig::default())
}

pub fn projective_order_with(m: &QMatrix, cfg: &WitnessConfig) -> Result<OrderVerdict> {
    let r = conjugation_operator(m)?;
    let min_m = minimal_polynomial(m);
    if !min_m.is_squarefree() {
        return Ok(OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple {
            minimal_polynomial: min_m,
        }));
    }
    let min_r = minimal_polynomial(&r);
    if let Some(order) = root_of_unity_order(&min_r)? {
        return Ok(OrderVerdict::FiniteOrder {
            order,
            conditionality: Conditionality::Unconditional,
        });
    }
    // the part of min_r without cyclotomic factors has a root that is not a
    // root of unity; any witness for it bounds an eigenvalue ratio
    let (_, rest) = cyclotomic_factors(&min_r);
    let alpha = AlgebraicNumberSpec::new(&rest)?;
    match find_witness_with(&alpha, cfg)? {
        WitnessOutcome::Witness(certificate) => Ok(OrderVerdict::InfiniteOrder(
            InfiniteReason::EigenvalueWitness {
                certificate,
                eigenvalue_index: None,
            },
        )),
        WitnessOutcome::RootOfUnity { .. } => Err(Error::Invalid(
            "non-cyclotomic cofactor reported as roots of unity".into(),
        )),
    }
}

/// Order of `diag(1, a_1, ..., a_N)` in `PGL`: with the leading entry fixed
/// at 1 the eigenvalue ratios against it are the `a_i` themselves, so the
/// order is the lcm of their orders, and a witness for any `a_i` shows it
/// is infinite.
pub fn certify_diagonal(eigenvalues: &[AlgebraicNumberSpec]) -> Result<OrderVerdict> {
    certify_diagonal_with(eigenvalues, &WitnessConfig::default())
}

pub fn certify_diagonal_with(
    eigenvalues: &[AlgebraicNumberSpec],
    cfg: &WitnessConfig,
) -> Result<OrderVerdict> {
    match eigenvalues.first() {
        Some(a0) if a0.is_one() => {}
        _ => return Err(Error::NotNormalized),
    }
    let mut order = 1u64;
    let mut conditionality = Conditionality::Unconditional;
    for (i, a) in eigenvalues.iter().enumerate().skip(1) {
        match find_witness_with(a, cfg)? {
            WitnessOutcome::RootOfUnity {
                order: d,
                conditionality: c,
            } => {
                order = order.lcm(&d);
                if c == Conditionality::ConditionalOnIrreducibility {
                    conditionality = c;
                }
            }
            WitnessOutcome::Witness(certificate) => {
                return Ok(OrderVerdict::InfiniteOrder(
                    InfiniteReason::EigenvalueWitness {
                        certificate,
                        eigenvalue_index: Some(i),
                    },
                ))
            }
        }
    }
    Ok(OrderVerdict::FiniteOrder {
        order,
        conditionality,
    })
}

/// `M^n` is scalar while `M^{n/q}` is not for each prime `q | n`.
pub fn check_projective_order(m: &QMatrix, n: u64) -> bool {
    if n == 0 || !m.pow(n).is_scalar() {
        return false;
    }
    factor_u64(n)
        .iter()
        .all(|&(q, _)| !m.pow(n / q).is_scalar())
}

/// Rechecks a verdict about `M` along paths independent of the producer:
/// exact powers for finite order, a vanishing non-squarefree annihilator for
/// Jordan blocks, and the witness plus divisibility of the characteristic
/// polynomial of the conjugation operator for eigenvalue witnesses.
pub fn verify_matrix_verdict(m: &QMatrix, verdict: &OrderVerdict) -> Result<()> {
    let reject = |s: &str| Err(Error::Rejected(s.into()));
    match verdict {
        OrderVerdict::FiniteOrder { order, .. } => {
            if check_projective_order(m, *order) {
                Ok(())
            } else {
                reject("matrix power is not minimal scalar")
            }
        }
        OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple { minimal_polynomial }) => {
            let zero = |f: &IntPolynomial| {
                let v = m.eval_poly(f);
                v.is_scalar() && v.get(0, 0) == &num_traits::Zero::zero()
            };
            // if M were diagonalizable its minimal polynomial would divide the
            // squarefree part of any annihilator
            if minimal_polynomial.is_zero() || !zero(minimal_polynomial) {
                return reject("evidence polynomial does not annihilate the matrix");
            }
            if zero(&minimal_polynomial.squarefree_part()) {
                return reject("squarefree part also annihilates; no Jordan block shown");
            }
            Ok(())
        }
        OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness { certificate, .. }) => {
            certificate.verify()?;
            let chi = characteristic_polynomial(&conjugation_operator(m)?);
            if !certificate.alpha.defining_poly().divides(&chi) {
                return reject("witnessed number is not an eigenvalue ratio");
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::cyclotomic::cyclotomic;
    use crate::places::Place;
    use crate::rational::{q, qi};

    fn companion(d: u64) -> QMatrix {
        QMatrix::companion(&cyclotomic(d)).unwrap()
    }

    #[test]
    fn semisimplicity() {
        let j = QMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        assert!(!is_semisimple(&j));
        assert!(is_semisimple(&QMatrix::diagonal(&[qi(1), qi(-1)])));
        let golden = QMatrix::companion(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        assert!(is_semisimple(&golden));
    }

    #[test]
    fn linear_orders() {
        assert_eq!(linear_order(&QMatrix::diagonal(&[qi(1), qi(-1)])), Some(2));
        assert_eq!(linear_order(&companion(12)), Some(12));
        assert_eq!(
            linear_order(&QMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap()),
            None
        );
    }

    #[test]
    fn projective_orders() {
        let j = QMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        let v = projective_order(&j).unwrap();
        assert!(matches!(
            v,
            OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple { .. })
        ));
        verify_matrix_verdict(&j, &v).unwrap();
        let v = projective_order(&QMatrix::diagonal(&[qi(1), qi(-1)])).unwrap();
        assert_eq!(v.order(), Some(2));
        // for even d, M^{d/2} = -I is already scalar
        for (d, proj) in [(3, 3), (4, 2), (5, 5), (6, 3), (8, 4), (12, 6)] {
            let m = companion(d);
            assert_eq!(linear_order(&m), Some(d));
            let v = projective_order(&m).unwrap();
            assert_eq!(v.order(), Some(proj), "Phi_{d}");
            verify_matrix_verdict(&m, &v).unwrap();
        }
        // M^2 = -I is already scalar
        let rot = QMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(projective_order(&rot).unwrap().order(), Some(2));
    }

    #[test]
    fn infinite_order_witness() {
        let m = QMatrix::diagonal(&[qi(1), qi(2)]);
        let v = projective_order(&m).unwrap();
        match &v {
            OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness {
                certificate, ..
            }) => {
                // ratios 2 and 1/2
                assert!(matches!(
                    certificate.place,
                    Place::NonArchimedean { prime: 2, .. }
                ));
            }
            other => panic!("{other:?}"),
        }
        verify_matrix_verdict(&m, &v).unwrap();
        let golden = QMatrix::companion(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap();
        let v = projective_order(&golden).unwrap();
        assert!(!v.is_finite());
        verify_matrix_verdict(&golden, &v).unwrap();
        assert!(verify_matrix_verdict(
            &golden,
            &OrderVerdict::FiniteOrder {
                order: 6,
                conditionality: Conditionality::Unconditional
            }
        )
        .is_err());
    }

    #[test]
    fn scalar_invariance() {
        let m = companion(5).scale(&q(-7, 3));
        assert_eq!(projective_order(&m).unwrap().order(), Some(5));
    }

    #[test]
    fn diagonal_specs() {
        let one = AlgebraicNumberSpec::rational(&qi(1));
        let kron = AlgebraicNumberSpec::new(&IntPolynomial::from_i64(&[5, -6, 5])).unwrap();
        match certify_diagonal(&[one.clone(), kron]).unwrap() {
            OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness {
                certificate,
                eigenvalue_index,
            }) => {
                assert_eq!(eigenvalue_index, Some(1));
                assert_eq!(certificate.norm_bound.as_rational(), Some(qi(5)));
            }
            other => panic!("{other:?}"),
        }
        let minus_one = AlgebraicNumberSpec::rational(&qi(-1));
        let i = AlgebraicNumberSpec::new(&IntPolynomial::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(
            certify_diagonal(&[one.clone(), minus_one.clone(), i]).unwrap(),
            OrderVerdict::FiniteOrder {
                order: 4,
                conditionality: Conditionality::Unconditional
            }
        );
        assert_eq!(certify_diagonal(&[one]).unwrap().order(), Some(1));
        assert_eq!(certify_diagonal(&[minus_one]), Err(Error::NotNormalized));
    }
}
