//! Places where an algebraic number is large.
//!
//! For a number `alpha` that is not a root of unity, the witness finder
//! produces a place of `Q(alpha)` (a root choice in C, or a prime together with
//! a Newton polygon slope) at which `|alpha| > 1`, along with an exact lower
//! bound that can be rechecked from the defining polynomial alone. Roots of
//! unity are recognized exactly by cyclotomic divisibility. The three outcomes
//! are exhaustive: non-integral numbers always have a p-adic witness at a
//! prime dividing the leading coefficient, and integral numbers that are not
//! roots of unity have a conjugate of modulus above one.

pub mod newton;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::cyclotomic::{cyclotomic, cyclotomic_factors};
use crate::algebraic::{
    count_roots_in_box, root_of_unity_order, AlgebraicNumberSpec, ComplexBox, IntPolynomial,
    Irreducibility, RootIsolator,
};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::primes::{prime_divisors, Prime};
use crate::rational::{self, Q};
use crate::roots::{modulus_scale, sqrt_lower_above};

pub use newton::{newton_polygon, HullSegment, NewtonPolygon};

pub const SLOPE_CONVENTION: &str = "root valuation = -slope";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Place {
    Archimedean {
        #[serde(rename = "box")]
        root_box: ComplexBox,
        root_index: usize,
    },
    NonArchimedean {
        prime: u64,
        #[serde(with = "rational::serde_q")]
        slope: Q,
        segment_index: usize,
    },
}

/// Exact lower bound for `|rho(alpha)|` at the place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormBound {
    /// The value `p^exponent`.
    PPower {
        p: u64,
        #[serde(with = "rational::serde_q")]
        exponent: Q,
    },
    Rational(#[serde(with = "rational::serde_q")] Q),
}

impl NormBound {
    /// The bound as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Q> {
        match self {
            NormBound::Rational(q) => Some(q.clone()),
            NormBound::PPower { p, exponent } => exponent.is_integer().then(|| {
                rational::pow_rat(
                    *p,
                    num_traits::ToPrimitive::to_i64(&exponent.to_integer()).unwrap(),
                )
            }),
        }
    }

    pub fn exceeds_one(&self) -> bool {
        match self {
            NormBound::Rational(q) => q > &Q::one(),
            NormBound::PPower { exponent, .. } => exponent.is_positive(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditionality {
    Unconditional,
    ConditionalOnIrreducibility,
}

impl Conditionality {
    fn from_irreducibility(i: Irreducibility) -> Self {
        match i {
            Irreducibility::Proven => Conditionality::Unconditional,
            Irreducibility::Unchecked => Conditionality::ConditionalOnIrreducibility,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub alpha: AlgebraicNumberSpec,
    pub place: Place,
    pub norm_bound: NormBound,
    /// Enclosure of `|rho(alpha)|` for archimedean places.
    pub modulus: Option<RationalInterval>,
    pub conditionality: Conditionality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    RootOfUnity {
        order: u64,
        conditionality: Conditionality,
    },
    Witness(Box<WitnessCertificate>),
}

impl WitnessOutcome {
    pub fn certificate(&self) -> Option<&WitnessCertificate> {
        match self {
            WitnessOutcome::Witness(c) => Some(c),
            WitnessOutcome::RootOfUnity { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    pub initial_eps: Q,
    pub max_doublings: u32,
    pub prime_search_bound: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            initial_eps: rational::q(1, 16),
            max_doublings: 40,
            prime_search_bound: 1000,
        }
    }
}

fn require_squarefree(f: &IntPolynomial) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

fn padic_place(f: &IntPolynomial, prime_search_bound: u64) -> Result<Option<(Place, NormBound)>> {
    let f = f.primitive_part();
    let lc = f.leading();
    if lc.is_one() {
        return Ok(None);
    }
    for p in prime_divisors(&lc, prime_search_bound)? {
        let np = newton_polygon(&f, Prime::new(p)?)?;
        // slopes increase left to right; the last one is the steepest
        if let Some((idx, seg)) = np
            .segments()
            .iter()
            .enumerate()
            .rev()
            .find(|(_, s)| s.slope.is_positive())
        {
            return Ok(Some((
                Place::NonArchimedean {
                    prime: p,
                    slope: seg.slope.clone(),
                    segment_index: idx,
                },
                NormBound::PPower {
                    p,
                    exponent: seg.slope.clone(),
                },
            )));
        }
    }
    Ok(None)
}

/// Non-archimedean witness: a prime dividing the leading coefficient at which
/// the Newton polygon has a positive slope `s`, giving a conjugate of absolute
/// value `p^s`. `None` exactly when the primitive part of `f` is monic.
pub fn padic_witness(f: &IntPolynomial) -> Result<Option<WitnessCertificate>> {
    padic_witness_with(f, &WitnessConfig::default())
}

pub fn padic_witness_with(
    f: &IntPolynomial,
    cfg: &WitnessConfig,
) -> Result<Option<WitnessCertificate>> {
    require_squarefree(f)?;
    let alpha = AlgebraicNumberSpec::new(f)?;
    padic_for(&alpha, cfg)
}

fn padic_for(
    alpha: &AlgebraicNumberSpec,
    cfg: &WitnessConfig,
) -> Result<Option<WitnessCertificate>> {
    Ok(
        padic_place(alpha.defining_poly(), cfg.prime_search_bound)?.map(|(place, norm_bound)| {
            WitnessCertificate {
                alpha: alpha.clone(),
                place,
                norm_bound,
                modulus: None,
                conditionality: Conditionality::from_irreducibility(alpha.irreducibility()),
            }
        }),
    )
}

/// Archimedean witness: refines root boxes, halving the tolerance each round,
/// until some box lies strictly outside the unit circle. Returns `None` once
/// every root is certified to lie strictly inside the unit disc.
pub fn archimedean_witness(
    f: &IntPolynomial,
    initial_eps: &Q,
) -> Result<Option<WitnessCertificate>> {
    let cfg = WitnessConfig {
        initial_eps: initial_eps.clone(),
        ..WitnessConfig::default()
    };
    require_squarefree(f)?;
    archimedean_for(&AlgebraicNumberSpec::new(f)?, &cfg)
}

pub fn archimedean_witness_with(
    f: &IntPolynomial,
    cfg: &WitnessConfig,
) -> Result<Option<WitnessCertificate>> {
    require_squarefree(f)?;
    archimedean_for(&AlgebraicNumberSpec::new(f)?, cfg)
}

fn archimedean_for(
    alpha: &AlgebraicNumberSpec,
    cfg: &WitnessConfig,
) -> Result<Option<WitnessCertificate>> {
    let mut iso = RootIsolator::new(alpha.defining_poly())?;
    let mut eps = cfg.initial_eps.clone();
    let one = Q::one();
    for _ in 0..=cfg.max_doublings {
        let boxes = iso.isolate(&eps)?;
        for (i, b) in boxes.iter().enumerate() {
            let lo_sq = b.min_abs_sq();
            if lo_sq <= one {
                continue;
            }
            if let Some(bound) = sqrt_lower_above(&lo_sq, &one) {
                let modulus = b.modulus_bounds(&modulus_scale(b));
                return Ok(Some(WitnessCertificate {
                    alpha: alpha.clone(),
                    place: Place::Archimedean {
                        root_box: b.clone(),
                        root_index: i,
                    },
                    norm_bound: NormBound::Rational(bound),
                    modulus: Some(modulus),
                    conditionality: Conditionality::from_irreducibility(alpha.irreducibility()),
                }));
            }
        }
        if boxes.iter().all(|b| b.max_abs_sq() < one) {
            return Ok(None);
        }
        eps /= rational::qi(2);
    }
    Err(Error::MaxPrecisionExceeded(cfg.max_doublings))
}

/// Order of the particular root picked by the selector, when every root of the
/// defining polynomial is a root of unity.
fn selected_order(alpha: &AlgebraicNumberSpec, bx: &ComplexBox) -> Result<Option<u64>> {
    let (indices, _) = cyclotomic_factors(alpha.defining_poly());
    for d in indices {
        if count_roots_in_box(&cyclotomic(d), bx)? == 1 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Decides whether `alpha` is a root of unity; if not, finds a place where
/// `|alpha| > 1`. Tries, in order: cyclotomic divisibility, p-adic Newton
/// polygons at primes dividing the leading coefficient, complex root boxes.
pub fn find_witness(alpha: &AlgebraicNumberSpec) -> Result<WitnessOutcome> {
    find_witness_with(alpha, &WitnessConfig::default())
}

pub fn find_witness_with(
    alpha: &AlgebraicNumberSpec,
    cfg: &WitnessConfig,
) -> Result<WitnessOutcome> {
    let f = alpha.defining_poly();
    require_squarefree(f)?;
    if f.coeff(0).is_zero() {
        return Err(Error::Invalid(
            "0 is a root of the defining polynomial".into(),
        ));
    }
    if let Some(order) = root_of_unity_order(f)? {
        let (factors, _) = cyclotomic_factors(f);
        let selected = match alpha.root_selector() {
            Some(bx) => selected_order(alpha, bx)?,
            None => None,
        };
        let (order, conditionality) = match selected {
            Some(d) => (d, Conditionality::Unconditional),
            None if factors.len() == 1 => (order, Conditionality::Unconditional),
            None => (
                order,
                Conditionality::from_irreducibility(alpha.irreducibility()),
            ),
        };
        return Ok(WitnessOutcome::RootOfUnity {
            order,
            conditionality,
        });
    }
    if let Some(cert) = padic_for(alpha, cfg)? {
        return Ok(WitnessOutcome::Witness(Box::new(cert)));
    }
    match archimedean_for(alpha, cfg)? {
        Some(cert) => Ok(WitnessOutcome::Witness(Box::new(cert))),
        // a monic integer polynomial with all roots strictly inside the unit
        // disc has constant term of absolute value below one, i.e. zero
        None => Err(Error::Invalid(
            "integral polynomial with every root inside the unit disc".into(),
        )),
    }
}

impl WitnessCertificate {
    /// Rechecks the certificate from the defining polynomial and the place
    /// alone: the hull slope for a prime, or the box count and modulus bounds
    /// for a complex root.
    pub fn verify(&self) -> Result<()> {
        let f = self.alpha.defining_poly();
        let reject = |m: &str| Err(Error::Rejected(m.to_string()));
        if !f.is_squarefree() || f.is_constant() {
            return reject("defining polynomial must be squarefree and nonconstant");
        }
        if !self.norm_bound.exceeds_one() {
            return reject("norm bound does not exceed 1");
        }
        match &self.place {
            Place::NonArchimedean {
                prime,
                slope,
                segment_index,
            } => {
                let p = Prime::new(*prime)
                    .map_err(|_| Error::Rejected("place prime is not prime".into()))?;
                let np = newton_polygon(f, p)?;
                let Some(seg) = np.segments().get(*segment_index) else {
                    return reject("segment index out of range");
                };
                if &seg.slope != slope {
                    return reject("slope does not match the recomputed hull");
                }
                if !slope.is_positive() {
                    return reject("slope must be positive");
                }
                match &self.norm_bound {
                    NormBound::PPower { p: bp, exponent } if bp == prime && exponent <= slope => {
                        Ok(())
                    }
                    _ => reject("norm bound is not p^slope at the place prime"),
                }
            }
            Place::Archimedean { root_box, .. } => {
                if count_roots_in_box(f, root_box)? != 1 {
                    return reject("box does not isolate exactly one root");
                }
                let lo_sq = root_box.min_abs_sq();
                let NormBound::Rational(q) = &self.norm_bound else {
                    return reject("archimedean bound must be rational");
                };
                if q.is_negative() || q * q > lo_sq {
                    return reject("norm bound exceeds the minimum modulus over the box");
                }
                if let Some(m) = &self.modulus {
                    if m.lo().is_negative()
                        || m.lo() * m.lo() > lo_sq
                        || m.hi() * m.hi() < root_box.max_abs_sq()
                    {
                        return reject("modulus interval does not enclose the box moduli");
                    }
                }
                Ok(())
            }
        }
    }
}

/// `|r|_inf * prod_p |r|_p == 1`, checked exactly over the primes dividing
/// the numerator and denominator.
pub fn product_formula_check(r: &Q) -> Result<bool> {
    if r.is_zero() {
        return Err(Error::Invalid(
            "product formula needs a nonzero rational".into(),
        ));
    }
    let mut product = r.abs();
    let support: BigInt = r.numer().abs() * r.denom();
    if support > BigInt::one() {
        for p in prime_divisors(&support, 1_000_000)? {
            let v = rational::valuation(r, p).unwrap();
            product *= rational::pow_rat(p, -v);
        }
    }
    Ok(product.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn padic_cases() {
        let cert = padic_witness(&p(&[5, -6, 5])).unwrap().unwrap();
        assert_eq!(
            cert.place,
            Place::NonArchimedean {
                prime: 5,
                slope: qi(1),
                segment_index: 1
            }
        );
        assert_eq!(cert.norm_bound.as_rational(), Some(qi(5)));
        cert.verify().unwrap();
        assert!(padic_witness(&p(&[-1, -1, 1])).unwrap().is_none());
        let c = padic_witness(&p(&[-3, 2])).unwrap().unwrap();
        assert_eq!(c.norm_bound.as_rational(), Some(qi(2)));
        assert_eq!(padic_witness(&p(&[1, -2, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn fractional_slope() {
        // 4x^2 - 2 ... primitive 2x^2 - 1: roots +-1/sqrt2, |.|_2 = 2^(1/2)
        let c = padic_witness(&p(&[-1, 0, 2])).unwrap().unwrap();
        assert_eq!(
            c.norm_bound,
            NormBound::PPower {
                p: 2,
                exponent: q(1, 2)
            }
        );
        assert_eq!(c.norm_bound.as_rational(), None);
        c.verify().unwrap();
    }

    #[test]
    fn golden_ratio() {
        let c = archimedean_witness(&p(&[-1, -1, 1]), &q(1, 1 << 20))
            .unwrap()
            .unwrap();
        c.verify().unwrap();
        let m = c.modulus.clone().unwrap();
        assert!(m.lo() > &q(1618, 1000) && m.hi() < &q(1619, 1000));
        assert!(c.norm_bound.as_rational().unwrap() > q(1618, 1000));
        let two = archimedean_witness(&p(&[-2, 1]), &q(1, 1 << 10))
            .unwrap()
            .unwrap();
        let m = two.modulus.unwrap();
        assert!(m.contains(&qi(2)));
    }

    #[test]
    fn inside_disc_gives_none() {
        assert!(archimedean_witness(&p(&[-1, 3]), &q(1, 4))
            .unwrap()
            .is_none());
    }

    #[test]
    fn trichotomy_examples() {
        let kronecker = AlgebraicNumberSpec::new(&p(&[5, -6, 5])).unwrap();
        match find_witness(&kronecker).unwrap() {
            WitnessOutcome::Witness(c) => {
                assert!(matches!(c.place, Place::NonArchimedean { prime: 5, .. }));
                assert_eq!(c.norm_bound.as_rational(), Some(qi(5)));
                assert_eq!(c.conditionality, Conditionality::Unconditional);
            }
            other => panic!("{other:?}"),
        }
        let phi12 = AlgebraicNumberSpec::new(&p(&[1, 0, -1, 0, 1])).unwrap();
        assert_eq!(
            find_witness(&phi12).unwrap(),
            WitnessOutcome::RootOfUnity {
                order: 12,
                conditionality: Conditionality::Unconditional
            }
        );
        let golden = AlgebraicNumberSpec::new(&p(&[-1, -1, 1])).unwrap();
        assert!(matches!(
            find_witness(&golden).unwrap(),
            WitnessOutcome::Witness(c) if matches!(c.place, Place::Archimedean { .. })
        ));
    }

    #[test]
    fn selector_picks_the_order() {
        // (x + 1)(x^2 + 1): -1 has order 2, i has order 4
        let f = &p(&[1, 1]) * &p(&[1, 0, 1]);
        let a = AlgebraicNumberSpec::new(&f).unwrap();
        assert_eq!(
            find_witness(&a).unwrap(),
            WitnessOutcome::RootOfUnity {
                order: 4,
                conditionality: Conditionality::ConditionalOnIrreducibility
            }
        );
        let around_minus_one =
            ComplexBox::from_bounds(q(-3, 2), q(-1, 2), q(-1, 2), q(1, 2)).unwrap();
        let a = a.with_selector(around_minus_one).unwrap();
        assert_eq!(
            find_witness(&a).unwrap(),
            WitnessOutcome::RootOfUnity {
                order: 2,
                conditionality: Conditionality::Unconditional
            }
        );
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut c = padic_witness(&p(&[5, -6, 5])).unwrap().unwrap();
        c.place = Place::NonArchimedean {
            prime: 5,
            slope: qi(2),
            segment_index: 1,
        };
        assert!(c.verify().is_err());
        let mut g = archimedean_witness(&p(&[-1, -1, 1]), &q(1, 64))
            .unwrap()
            .unwrap();
        g.norm_bound = NormBound::Rational(qi(2));
        assert!(g.verify().is_err());
    }

    #[test]
    fn zero_root_rejected() {
        let a = AlgebraicNumberSpec::unchecked(&p(&[0, 1, 1])).unwrap();
        assert!(matches!(find_witness(&a), Err(Error::Invalid(_))));
    }

    #[test]
    fn product_formula() {
        assert!(product_formula_check(&qi(50)).unwrap());
        assert!(product_formula_check(&qi(1)).unwrap());
        assert!(product_formula_check(&q(-3, 4)).unwrap());
        assert!(product_formula_check(&qi(0)).is_err());
    }
}
