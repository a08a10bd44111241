//! JSON certificate documents and their verifiers.
//!
//! Every document carries enough data to be rechecked from scratch. The
//! verifiers avoid the code that produced the result where a cheaper
//! independent check exists: cyclotomic claims are checked by division into
//! `x^n - 1`, finite orders by exact matrix powers, integrals by exhaustive
//! residue enumeration, and tilings by summing sphere measures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::{
    check_irreducible, count_roots_in_box, cyclotomic, AlgebraicNumberSpec, ComplexBox,
    IntPolynomial, Irreducibility, IrreducibilityCheck,
};
use crate::error::{Error, Result};
use crate::haar::{Cylinder, MultiPoly, PolyDensity, PolyMap};
use crate::interval::RationalInterval;
use crate::parse::{parse_matrix, parse_multipoly};
use crate::places::{
    Conditionality, NormBound, Place, WitnessCertificate, WitnessOutcome, SLOPE_CONVENTION,
};
use crate::primes::{factor_u64, Prime};
use crate::projaut::{verify_matrix_verdict, InfiniteReason, OrderVerdict, ShellLedger};
use crate::rational::{self, Q};

/// An algebraic number as stored in documents. Coefficients are decimal
/// strings, leading coefficient first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDoc {
    pub alpha_poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_selector: Option<ComplexBox>,
    pub irreducibility: Irreducibility,
}

impl AlphaDoc {
    pub fn from_spec(a: &AlgebraicNumberSpec) -> Self {
        AlphaDoc {
            alpha_poly: poly_strings(a.defining_poly()),
            root_selector: a.root_selector().cloned(),
            irreducibility: a.irreducibility(),
        }
    }

    pub fn to_spec(&self) -> Result<AlgebraicNumberSpec> {
        AlgebraicNumberSpec::from_parts(
            &strings_poly(&self.alpha_poly)?,
            self.root_selector.clone(),
            self.irreducibility,
        )
    }
}

fn poly_strings(f: &IntPolynomial) -> Vec<String> {
    f.coeffs().iter().rev().map(|c| c.to_string()).collect()
}

fn strings_poly(v: &[String]) -> Result<IntPolynomial> {
    let mut c = v
        .iter()
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(0, format!("bad integer {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    c.reverse();
    Ok(IntPolynomial::new(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessResult {
    RootOfUnity {
        order: u64,
        conditionality: Conditionality,
    },
    Witness {
        place: Place,
        norm_bound: NormBound,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<RationalInterval>,
        conditionality: Conditionality,
        slope_convention: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    #[serde(flatten)]
    pub alpha: AlphaDoc,
    #[serde(flatten)]
    pub result: WitnessResult,
}

impl WitnessDoc {
    pub fn new(alpha: &AlgebraicNumberSpec, outcome: &WitnessOutcome) -> Self {
        let result = match outcome {
            WitnessOutcome::RootOfUnity {
                order,
                conditionality,
            } => WitnessResult::RootOfUnity {
                order: *order,
                conditionality: *conditionality,
            },
            WitnessOutcome::Witness(c) => WitnessResult::Witness {
                place: c.place.clone(),
                norm_bound: c.norm_bound.clone(),
                modulus: c.modulus.clone(),
                conditionality: c.conditionality,
                slope_convention: SLOPE_CONVENTION.to_string(),
            },
        };
        let alpha = match outcome {
            WitnessOutcome::Witness(c) => &c.alpha,
            _ => alpha,
        };
        WitnessDoc {
            alpha: AlphaDoc::from_spec(alpha),
            result,
        }
    }

    pub fn from_certificate(c: &WitnessCertificate) -> Self {
        Self::new(&c.alpha, &WitnessOutcome::Witness(Box::new(c.clone())))
    }

    pub fn is_root_of_unity(&self) -> bool {
        matches!(self.result, WitnessResult::RootOfUnity { .. })
    }

    /// Rebuilds the certificate for a witness outcome.
    pub fn certificate(&self) -> Result<Option<WitnessCertificate>> {
        match &self.result {
            WitnessResult::RootOfUnity { .. } => Ok(None),
            WitnessResult::Witness {
                place,
                norm_bound,
                modulus,
                conditionality,
                ..
            } => Ok(Some(WitnessCertificate {
                alpha: self.alpha.to_spec()?,
                place: place.clone(),
                norm_bound: norm_bound.clone(),
                modulus: modulus.clone(),
                conditionality: *conditionality,
            })),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OrderInput {
    Matrix {
        matrix: String,
    },
    /// Diagonal automorphism; the list starts with the normalized entry 1.
    Eigenvalues {
        eigenvalues: Vec<AlphaDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ReasonDoc {
    NotSemisimple {
        minimal_polynomial: Vec<String>,
    },
    EigenvalueWitness {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eigenvalue_index: Option<usize>,
        witness: WitnessDoc,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerdictDoc {
    FiniteOrder {
        order: u64,
        conditionality: Conditionality,
    },
    InfiniteOrder(ReasonDoc),
}

impl VerdictDoc {
    pub fn from_verdict(v: &OrderVerdict) -> Self {
        match v {
            OrderVerdict::FiniteOrder {
                order,
                conditionality,
            } => VerdictDoc::FiniteOrder {
                order: *order,
                conditionality: *conditionality,
            },
            OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple { minimal_polynomial }) => {
                VerdictDoc::InfiniteOrder(ReasonDoc::NotSemisimple {
                    minimal_polynomial: poly_strings(minimal_polynomial),
                })
            }
            OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness {
                certificate,
                eigenvalue_index,
            }) => VerdictDoc::InfiniteOrder(ReasonDoc::EigenvalueWitness {
                eigenvalue_index: *eigenvalue_index,
                witness: WitnessDoc::from_certificate(certificate),
            }),
        }
    }

    pub fn to_verdict(&self) -> Result<OrderVerdict> {
        Ok(match self {
            VerdictDoc::FiniteOrder {
                order,
                conditionality,
            } => OrderVerdict::FiniteOrder {
                order: *order,
                conditionality: *conditionality,
            },
            VerdictDoc::InfiniteOrder(ReasonDoc::NotSemisimple { minimal_polynomial }) => {
                OrderVerdict::InfiniteOrder(InfiniteReason::NotSemisimple {
                    minimal_polynomial: strings_poly(minimal_polynomial)?,
                })
            }
            VerdictDoc::InfiniteOrder(ReasonDoc::EigenvalueWitness {
                eigenvalue_index,
                witness,
            }) => {
                let certificate = witness.certificate()?.ok_or_else(|| {
                    Error::Rejected("eigenvalue witness has no certificate".into())
                })?;
                OrderVerdict::InfiniteOrder(InfiniteReason::EigenvalueWitness {
                    certificate: Box::new(certificate),
                    eigenvalue_index: *eigenvalue_index,
                })
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub input: OrderInput,
    #[serde(flatten)]
    pub verdict: VerdictDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralDoc {
    pub prime: u64,
    pub density: String,
    pub nvars: usize,
    pub root_index: u32,
    pub region: Cylinder,
    pub depth: u32,
    pub interval: RationalInterval,
    /// Decimal midpoint, for reading only.
    pub approx: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureDoc {
    pub prime: u64,
    pub region: Cylinder,
    /// Components of a map pushing the source measure onto `region`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
    #[serde(default = "one_u32")]
    pub root_index: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    pub interval: RationalInterval,
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Witness(WitnessDoc),
    Order(OrderDoc),
    Integral(IntegralDoc),
    Measure(MeasureDoc),
    Tiling(ShellLedger),
}

impl Document {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }
}

pub fn integral_doc(
    d: &PolyDensity,
    region: &Cylinder,
    depth: u32,
    interval: RationalInterval,
) -> IntegralDoc {
    IntegralDoc {
        prime: region.prime().get(),
        density: d.poly().to_string(),
        nvars: d.nvars(),
        root_index: d.root_index(),
        region: region.clone(),
        depth,
        approx: rational::to_decimal(&interval.midpoint(), 12),
        interval,
    }
}

/// Largest residue count the verifiers will enumerate.
pub const ENUMERATION_LIMIT: u64 = 1 << 21;

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Rejected(msg.into()))
}

/// Whether every root of `f` satisfies `z^n = 1`.
fn divides_x_n_minus_1(f: &IntPolynomial, n: u64) -> bool {
    f.divides(&IntPolynomial::x_pow_minus_one(n as usize))
}

fn verify_root_of_unity(alpha: &AlgebraicNumberSpec, order: u64) -> Result<()> {
    if order == 0 {
        return reject("order must be positive");
    }
    let f = alpha.defining_poly();
    if let Some(bx) = alpha.root_selector() {
        // the selected root is a root of Phi_order
        let phi = cyclotomic(order);
        if !phi.divides(f) || count_roots_in_box(&phi, bx)? != 1 {
            return reject("selected root is not a primitive root of unity of that order");
        }
        return Ok(());
    }
    if !divides_x_n_minus_1(f, order) {
        return reject("defining polynomial does not divide x^n - 1");
    }
    for (q, _) in factor_u64(order) {
        if divides_x_n_minus_1(f, order / q) {
            return reject("a smaller exponent already annihilates every root");
        }
    }
    Ok(())
}

fn verify_irreducibility_claim(a: &AlphaDoc, f: &IntPolynomial) -> Result<()> {
    if a.irreducibility == Irreducibility::Proven
        && check_irreducible(f) != IrreducibilityCheck::Proven
    {
        return reject("irreducibility is claimed but could not be proven");
    }
    Ok(())
}

pub fn verify_witness_doc(doc: &WitnessDoc) -> Result<()> {
    let alpha = doc.alpha.to_spec()?;
    verify_irreducibility_claim(&doc.alpha, alpha.defining_poly())?;
    match &doc.result {
        WitnessResult::RootOfUnity { order, .. } => verify_root_of_unity(&alpha, *order),
        WitnessResult::Witness {
            conditionality,
            slope_convention,
            ..
        } => {
            if slope_convention != SLOPE_CONVENTION {
                return reject("unknown slope convention");
            }
            if *conditionality == Conditionality::Unconditional
                && alpha.irreducibility() != Irreducibility::Proven
            {
                return reject("unconditional witness needs a proven irreducible polynomial");
            }
            doc.certificate()?.expect("witness outcome").verify()
        }
    }
}

fn verify_order_doc(doc: &OrderDoc) -> Result<()> {
    let verdict = doc.verdict.to_verdict()?;
    match &doc.input {
        OrderInput::Matrix { matrix } => {
            let m = parse_matrix(matrix)?;
            if m.det().is_zero() {
                return reject("matrix is singular");
            }
            if let VerdictDoc::InfiniteOrder(ReasonDoc::EigenvalueWitness { witness, .. }) =
                &doc.verdict
            {
                verify_witness_doc(witness)?;
            }
            verify_matrix_verdict(&m, &verdict)
        }
        OrderInput::Eigenvalues { eigenvalues } => {
            let specs = eigenvalues
                .iter()
                .map(AlphaDoc::to_spec)
                .collect::<Result<Vec<_>>>()?;
            if !specs.first().is_some_and(|a| a.is_one()) {
                return reject("eigenvalue list must start with 1");
            }
            match &doc.verdict {
                VerdictDoc::FiniteOrder { order, .. } => verify_diagonal_order(&specs, *order),
                VerdictDoc::InfiniteOrder(ReasonDoc::EigenvalueWitness {
                    eigenvalue_index,
                    witness,
                }) => {
                    let Some(i) = eigenvalue_index.filter(|&i| i < specs.len()) else {
                        return reject("eigenvalue index out of range");
                    };
                    if specs[i].defining_poly() != &strings_poly(&witness.alpha.alpha_poly)? {
                        return reject("witness is about a different eigenvalue");
                    }
                    verify_witness_doc(witness)
                }
                VerdictDoc::InfiniteOrder(ReasonDoc::NotSemisimple { .. }) => {
                    reject("diagonal automorphisms are semisimple")
                }
            }
        }
    }
}

fn verify_diagonal_order(specs: &[AlgebraicNumberSpec], order: u64) -> Result<()> {
    if order == 0 {
        return reject("order must be positive");
    }
    let killed_by = |a: &AlgebraicNumberSpec, n: u64| -> Result<bool> {
        match a.root_selector() {
            Some(bx) => {
                for d in crate::primes::divisors(n) {
                    let phi = cyclotomic(d);
                    if phi.divides(a.defining_poly()) && count_roots_in_box(&phi, bx)? == 1 {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            None => Ok(divides_x_n_minus_1(a.defining_poly(), n)),
        }
    };
    for a in specs {
        if !killed_by(a, order)? {
            return reject("an eigenvalue is not an order-th root of unity");
        }
    }
    for (q, _) in factor_u64(order) {
        let mut all = true;
        for a in specs {
            all &= killed_by(a, order / q)?;
        }
        if all {
            return reject("order is not minimal");
        }
    }
    Ok(())
}

/// Exhaustive bracket for `int_region |f|^{1/m}` over residues mod `p^D`,
/// optionally restricted to points whose image under `map` lies in `base`.
fn enumeration_bracket(
    f: &MultiPoly,
    m: u32,
    region: &Cylinder,
    depth: u32,
    filter: Option<(&PolyMap, &Cylinder)>,
) -> RationalInterval {
    let p = region.prime().get();
    let n = region.dim();
    let step = rational::pow_int(p, region.depth());
    let free = depth - region.depth();
    let per_axis = rational::pow_int(p, free);
    let count: u64 = (0..n).fold(1u64, |acc, _| acc * u64::try_from(&per_axis).unwrap());
    let cell = rational::pow_rat(p, -((depth as i64) * n as i64));
    let scale = rational::pow_int(p, depth + 6);
    let value = |v: i64| -> (Q, Q) {
        if v % m as i64 == 0 {
            let x = rational::pow_rat(p, -v / m as i64);
            (x.clone(), x)
        } else {
            rational::nth_root_bounds(&rational::pow_rat(p, -v), m, &scale)
        }
    };
    let (mut lo, mut hi) = (Q::zero(), Q::zero());
    for idx in 0..count {
        let mut rest = idx;
        let point: Vec<BigInt> = region
            .center()
            .iter()
            .map(|c| {
                let k = BigInt::from(rest % u64::try_from(&per_axis).unwrap());
                rest /= u64::try_from(&per_axis).unwrap();
                c + &step * k
            })
            .collect();
        if let Some((map, base)) = filter {
            let bm = rational::pow_int(p, base.depth());
            let inside = map
                .eval_int(&point)
                .iter()
                .zip(base.center())
                .all(|(y, b)| {
                    let r = crate::padic::residue_mod(y, p, base.depth() as i64)
                        .expect("integral image");
                    r == b.mod_floor(&bm)
                });
            if !inside {
                continue;
            }
        }
        let fv = f.eval_int(&point);
        let v = rational::valuation(&fv, p)
            .map(|v| v.min(depth as i64))
            .unwrap_or(depth as i64);
        let (a, b) = value(v);
        if v < depth as i64 {
            lo += a * &cell;
        }
        hi += b * &cell;
    }
    RationalInterval::new(lo, hi).expect("ordered bracket")
}

fn enumeration_size(p: u64, dims: usize, free: u32) -> Option<u64> {
    let per = p.checked_pow(free)?;
    per.checked_pow(dims as u32)
        .filter(|&c| c <= ENUMERATION_LIMIT)
}

fn check_against_bracket(
    claimed: &RationalInterval,
    bracket: &RationalInterval,
    slack: &Q,
) -> Result<()> {
    if !claimed.contains_interval(bracket) {
        return reject(format!(
            "claimed {claimed} does not contain the enumerated bracket {bracket}"
        ));
    }
    if claimed.width() > bracket.width() + slack {
        return reject(format!(
            "claimed {claimed} is looser than the enumerated bracket {bracket}"
        ));
    }
    Ok(())
}

fn verify_integral_doc(doc: &IntegralDoc) -> Result<()> {
    let p = Prime::new(doc.prime)?;
    if doc.region.prime() != p {
        return Err(Error::PrimeMismatch(doc.prime, doc.region.prime().get()));
    }
    let f = parse_multipoly(&doc.density, Some(doc.nvars))?;
    let d = PolyDensity::new(f.clone(), doc.root_index)?;
    if !f.is_p_integral(doc.prime) {
        return reject("density is not p-integral");
    }
    let depth = doc.depth.max(doc.region.depth());
    let slack = rational::pow_rat(doc.prime, -(depth as i64 + 2)) * doc.region.measure();
    match enumeration_size(doc.prime, doc.nvars, depth - doc.region.depth()) {
        Some(_) => check_against_bracket(
            &doc.interval,
            &enumeration_bracket(&f, doc.root_index, &doc.region, depth, None),
            &slack,
        ),
        None => {
            let again = crate::haar::integrate(&d, &doc.region, doc.depth)?;
            if again != doc.interval {
                return reject("recomputed integral differs");
            }
            Ok(())
        }
    }
}

fn verify_measure_doc(doc: &MeasureDoc) -> Result<()> {
    let p = Prime::new(doc.prime)?;
    if doc.region.prime() != p {
        return Err(Error::PrimeMismatch(doc.prime, doc.region.prime().get()));
    }
    let Some(map) = &doc.map else {
        // cylinder measure: count the residue classes it contains
        let classes = rational::pow_int(doc.prime, doc.region.depth()).pow(doc.region.dim() as u32);
        if doc.interval != RationalInterval::point(Q::new(BigInt::one(), classes)) {
            return reject("cylinder measure is not p^{-mn}");
        }
        return Ok(());
    };
    let n = doc
        .source_dim
        .ok_or_else(|| Error::Invalid("map without source_dim".into()))?;
    let comps = map
        .iter()
        .map(|s| parse_multipoly(s, Some(n)))
        .collect::<Result<Vec<_>>>()?;
    let pi = PolyMap::new(comps)?;
    let f = match &doc.density {
        Some(s) => parse_multipoly(s, Some(n))?,
        None => MultiPoly::one(n),
    };
    let depth = doc
        .depth
        .ok_or_else(|| Error::Invalid("pushforward without depth".into()))?;
    let source = Cylinder::unit(p, n);
    let slack = rational::pow_rat(doc.prime, -(depth as i64 + 2));
    match enumeration_size(doc.prime, n, depth) {
        Some(_) if depth >= doc.region.depth() => check_against_bracket(
            &doc.interval,
            &enumeration_bracket(&f, doc.root_index, &source, depth, Some((&pi, &doc.region))),
            &slack,
        ),
        _ => {
            let d = PolyDensity::new(f, doc.root_index)?;
            let again = crate::haar::pushforward_cylinder_measure(&pi, &doc.region, &d, depth)?;
            if again != doc.interval {
                return reject("recomputed pushforward differs");
            }
            Ok(())
        }
    }
}

fn verify_tiling(l: &ShellLedger) -> Result<()> {
    let p = Prime::new(l.prime)?.get();
    if l.scale == 0 {
        return reject("scale must be positive");
    }
    let s = l.scale as i64;
    let m = l.range as i64;
    let sphere = |j: i64| rational::pow_rat(p, j) * Q::new(BigInt::from(p - 1), BigInt::from(p));
    let mu_a: Q = (0..s).map(sphere).sum();
    if l.shell_measure != mu_a {
        return reject("shell measure");
    }
    if l.translates.len() as i64 != 2 * m + 1 {
        return reject("wrong number of translates");
    }
    let mut total = Q::zero();
    let mut next = -m * s;
    for (t, n) in l.translates.iter().zip(-m..=m) {
        if t.n != n || t.first_sphere != next || t.end_sphere != next + s {
            return reject(format!("translate {n} does not continue the partition"));
        }
        next += s;
        let spheres: Q = (t.first_sphere..t.end_sphere).map(sphere).sum();
        if t.sphere_sum != spheres || t.measure != spheres {
            return reject(format!("translate {n} measure"));
        }
        total += spheres;
    }
    // the annulus as a geometric series, summed in closed form
    let a = -m * s;
    let b = (m + 1) * s;
    let annulus = rational::pow_rat(p, a) * (rational::pow_rat(p, b - a) - Q::one())
        / Q::from_integer(p.into());
    if l.ledger_total != total || l.annulus_measure != annulus || total != annulus {
        return reject("ledger total does not match the annulus");
    }
    if l.invariant_total != Q::from_integer((2 * m + 1).into()) * &mu_a {
        return reject("invariant total");
    }
    if !(l.balanced && l.partition_ok) {
        return reject("ledger claims imbalance");
    }
    Ok(())
}

/// Rechecks a document. `Err(Rejected)` and any other error both mean the
/// document does not certify its claim.
pub fn verify_document(doc: &Document) -> Result<()> {
    match doc {
        Document::Witness(w) => verify_witness_doc(w),
        Document::Order(o) => verify_order_doc(o),
        Document::Integral(i) => verify_integral_doc(i),
        Document::Measure(m) => verify_measure_doc(m),
        Document::Tiling(t) => verify_tiling(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::integrate;
    use crate::places::find_witness;
    use crate::projaut::{certify_diagonal, projective_order, verify_shell_tiling};
    use crate::rational::qi;

    fn roundtrip(doc: &Document) -> Document {
        let back = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(&back, doc);
        back
    }

    #[test]
    fn witness_documents() {
        for c in [
            &[5i64, -6, 5][..],
            &[-1, -1, 1],
            &[1, 0, 1],
            &[1, 1, 1, 1, 1],
            &[-1, 0, 2],
        ] {
            let a = AlgebraicNumberSpec::new(&IntPolynomial::from_i64(c)).unwrap();
            let out = find_witness(&a).unwrap();
            let doc = roundtrip(&Document::Witness(WitnessDoc::new(&a, &out)));
            verify_document(&doc).unwrap();
        }
        let a = AlgebraicNumberSpec::new(&IntPolynomial::from_i64(&[5, -6, 5])).unwrap();
        let json = Document::Witness(WitnessDoc::new(&a, &find_witness(&a).unwrap())).to_json();
        assert!(json.contains(r#""alpha_poly": ["#));
        assert!(json.contains(r#""type": "non_archimedean""#));
        assert!(json.contains(r#""slope_convention""#));
    }

    #[test]
    fn tampered_witness_rejected() {
        let a = AlgebraicNumberSpec::new(&IntPolynomial::from_i64(&[1, 0, 1])).unwrap();
        let mut doc = WitnessDoc::new(&a, &find_witness(&a).unwrap());
        doc.result = WitnessResult::RootOfUnity {
            order: 8,
            conditionality: Conditionality::Unconditional,
        };
        assert!(verify_witness_doc(&doc).is_err());
        doc.result = WitnessResult::RootOfUnity {
            order: 2,
            conditionality: Conditionality::Unconditional,
        };
        assert!(verify_witness_doc(&doc).is_err());
    }

    #[test]
    fn order_documents() {
        for s in [
            "1,1;0,1",
            "0,-1;1,0",
            "1,0;0,2",
            "0,1;1,1",
            "0,0,1;1,0,0;0,1,0",
        ] {
            let m = parse_matrix(s).unwrap();
            let v = projective_order(&m).unwrap();
            let doc = Document::Order(OrderDoc {
                input: OrderInput::Matrix {
                    matrix: m.to_string(),
                },
                verdict: VerdictDoc::from_verdict(&v),
            });
            verify_document(&roundtrip(&doc)).unwrap();
        }
        let eig = crate::parse::parse_eigenvalues("1;-1;[1,0,1]").unwrap();
        let v = certify_diagonal(&eig).unwrap();
        let doc = Document::Order(OrderDoc {
            input: OrderInput::Eigenvalues {
                eigenvalues: eig.iter().map(AlphaDoc::from_spec).collect(),
            },
            verdict: VerdictDoc::from_verdict(&v),
        });
        verify_document(&roundtrip(&doc)).unwrap();
        let Document::Order(mut bad) = doc else {
            unreachable!()
        };
        bad.verdict = VerdictDoc::FiniteOrder {
            order: 8,
            conditionality: Conditionality::Unconditional,
        };
        assert!(verify_document(&Document::Order(bad)).is_err());
    }

    #[test]
    fn integral_and_measure_documents() {
        let p = Prime::new(3).unwrap();
        let f = parse_multipoly("x^2 - 1", Some(1)).unwrap();
        for m in [1, 2] {
            let d = PolyDensity::new(f.clone(), m).unwrap();
            let r = Cylinder::unit(p, 1);
            let iv = integrate(&d, &r, 6).unwrap();
            let doc = Document::Integral(integral_doc(&d, &r, 6, iv));
            verify_document(&roundtrip(&doc)).unwrap();
        }
        let d = PolyDensity::new(f, 1).unwrap();
        let r = Cylinder::unit(p, 1);
        let mut doc = integral_doc(&d, &r, 6, integrate(&d, &r, 6).unwrap());
        doc.interval = RationalInterval::point(qi(1));
        assert!(verify_document(&Document::Integral(doc)).is_err());

        let base = Cylinder::from_ints(p, &[1], 1).unwrap();
        let doc = Document::Measure(MeasureDoc {
            prime: 3,
            region: base.clone(),
            map: Some(vec!["x^2".into()]),
            source_dim: Some(1),
            density: None,
            root_index: 1,
            depth: Some(5),
            interval: RationalInterval::point(rational::q(2, 3)),
        });
        verify_document(&roundtrip(&doc)).unwrap();
        let plain = Document::Measure(MeasureDoc {
            prime: 3,
            region: Cylinder::from_ints(p, &[1, 2], 2).unwrap(),
            map: None,
            source_dim: None,
            density: None,
            root_index: 1,
            depth: None,
            interval: RationalInterval::point(rational::q(1, 81)),
        });
        verify_document(&roundtrip(&plain)).unwrap();
    }

    #[test]
    fn tiling_documents() {
        let l = verify_shell_tiling(Prime::new(2).unwrap(), 2, 3).unwrap();
        let doc = roundtrip(&Document::Tiling(l.clone()));
        verify_document(&doc).unwrap();
        let mut bad = l;
        bad.ledger_total += qi(1);
        assert!(verify_document(&Document::Tiling(bad)).is_err());
    }
}
