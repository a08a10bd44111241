//! Haar measure on `Z_p^n` and certified integration of `|f|_p^{1/m}`.
//!
//! Regions are cylinders `a + p^k Z_p^n`. Integration subdivides residue
//! classes: on a depth-`k` cylinder with center `a`, `f(x) = f(a) mod p^k`
//! for p-integral `f`, so `v_p(f)` is constant there as soon as
//! `v_p(f(a)) < k`. Cylinders still unresolved at the depth cap are bounded
//! by `[0, p^{-k/m} mu]`.

mod multipoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::padic::residue_mod;
use crate::primes::Prime;
use crate::rational::{self, Q};

pub use multipoly::{determinant, MultiPoly};

/// The set `center + p^depth Z_p^n`. Centers are kept reduced into
/// `[0, p^depth)`, so equal cylinders compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CylinderRepr", into = "CylinderRepr")]
pub struct Cylinder {
    prime: Prime,
    center: Vec<BigInt>,
    depth: u32,
}

#[derive(Serialize, Deserialize)]
struct CylinderRepr {
    prime: u64,
    center: Vec<String>,
    depth: u32,
}

impl TryFrom<CylinderRepr> for Cylinder {
    type Error = Error;
    fn try_from(r: CylinderRepr) -> Result<Self> {
        let center = r
            .center
            .iter()
            .map(|s| rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Cylinder::new(Prime::new(r.prime)?, &center, r.depth)
    }
}

impl From<Cylinder> for CylinderRepr {
    fn from(c: Cylinder) -> Self {
        CylinderRepr {
            prime: c.prime.get(),
            center: c.center.iter().map(|z| z.to_string()).collect(),
            depth: c.depth,
        }
    }
}

impl Cylinder {
    pub fn new(prime: Prime, center: &[Q], depth: u32) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::Invalid("cylinder needs dimension at least 1".into()));
        }
        let center = center
            .iter()
            .map(|c| residue_mod(c, prime.get(), depth as i64).ok_or(Error::NonIntegralDensity))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cylinder {
            prime,
            center,
            depth,
        })
    }

    pub fn from_ints(prime: Prime, center: &[i64], depth: u32) -> Result<Self> {
        let c: Vec<Q> = center.iter().map(|&v| rational::qi(v)).collect();
        Self::new(prime, &c, depth)
    }

    /// The unit polydisc `Z_p^n`.
    pub fn unit(prime: Prime, n: usize) -> Self {
        Cylinder {
            prime,
            center: vec![BigInt::zero(); n.max(1)],
            depth: 0,
        }
    }

    /// The cylinder around the same center at another depth.
    pub fn with_depth(&self, depth: u32) -> Self {
        let c: Vec<Q> = self
            .center
            .iter()
            .map(|z| Q::from_integer(z.clone()))
            .collect();
        Cylinder::new(self.prime, &c, depth).expect("integral center")
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[BigInt] {
        &self.center
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn measure(&self) -> Q {
        cylinder_measure(self)
    }

    fn modulus(&self) -> BigInt {
        rational::pow_int(self.prime.get(), self.depth)
    }

    /// The `p^n` cylinders of depth one more, in lexicographic digit order.
    pub fn children(&self) -> Vec<Cylinder> {
        let p = self.prime.get();
        let step = self.modulus();
        let n = self.dim();
        let count = (p as usize).pow(n as u32);
        (0..count)
            .map(|mut idx| {
                let mut center = self.center.clone();
                for c in center.iter_mut().rev() {
                    let digit = (idx % p as usize) as u64;
                    idx /= p as usize;
                    *c += &step * digit;
                }
                Cylinder {
                    prime: self.prime,
                    center,
                    depth: self.depth + 1,
                }
            })
            .collect()
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        let m = self.modulus();
        x.len() == self.dim()
            && x.iter().zip(&self.center).all(|(xi, c)| {
                residue_mod(xi, self.prime.get(), self.depth as i64)
                    .is_some_and(|r| r == c.mod_floor(&m))
            })
    }

    pub fn contains(&self, other: &Cylinder) -> bool {
        self.prime == other.prime && self.dim() == other.dim() && other.depth >= self.depth && {
            let m = self.modulus();
            other
                .center
                .iter()
                .zip(&self.center)
                .all(|(a, b)| a.mod_floor(&m) == *b)
        }
    }

    /// Cylinders are nested or disjoint.
    pub fn is_disjoint(&self, other: &Cylinder) -> bool {
        !(self.contains(other) || other.contains(self))
    }
}

/// `mu(a + p^m Z_p^n) = p^{-mn}`.
pub fn cylinder_measure(c: &Cylinder) -> Q {
    rational::pow_rat(c.prime.get(), -((c.depth as i64) * c.dim() as i64))
}

/// The density `|f|_p^{1/m}` on `Q_p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDensity {
    f: MultiPoly,
    root_index: u32,
}

impl PolyDensity {
    pub fn new(f: MultiPoly, root_index: u32) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if root_index == 0 {
            return Err(Error::Invalid("root index must be at least 1".into()));
        }
        Ok(PolyDensity { f, root_index })
    }

    /// The constant density 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        PolyDensity {
            f: MultiPoly::one(n),
            root_index: 1,
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn root_index(&self) -> u32 {
        self.root_index
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Rescales `f` by a power of `p` so its coefficients are p-integral with
    /// at least one unit. Returns the new density and the exponent `e` with
    /// `f = p^e * g`, so that `|f|^{1/m} = p^{-e/m} |g|^{1/m}`.
    pub fn normalized(&self, p: Prime) -> (PolyDensity, i64) {
        let e = self.f.min_coeff_valuation(p.get()).unwrap_or(0);
        let g = self.f.scale(&rational::pow_rat(p.get(), -e));
        (
            PolyDensity {
                f: g,
                root_index: self.root_index,
            },
            e,
        )
    }
}

/// Polynomial map `Z_p^n -> Q_p^b` with its jacobian determinant when square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<MultiPoly>,
    jacobian_det: Option<MultiPoly>,
}

impl PolyMap {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Invalid("map needs at least one component".into()));
        };
        let n = first.nvars();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.nvars(),
            });
        }
        let jacobian_det = (components.len() == n).then(|| {
            let rows: Vec<Vec<MultiPoly>> = components
                .iter()
                .map(|c| (0..n).map(|j| c.partial(j)).collect())
                .collect();
            determinant(&rows, n)
        });
        Ok(PolyMap {
            components,
            jacobian_det,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| MultiPoly::var(n, i)).collect()).unwrap()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn source_dim(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn jacobian_det(&self) -> Option<&MultiPoly> {
        self.jacobian_det.as_ref()
    }

    pub fn eval_int(&self, x: &[BigInt]) -> Vec<Q> {
        self.components.iter().map(|c| c.eval_int(x)).collect()
    }
}

/// Enclosure of `p^{-v/m}` at scale `p^{depth+2}`. Enclosures at a finer
/// depth nest inside coarser ones.
fn power_enclosure(p: u64, v: i64, m: u32, depth: u32) -> (Q, Q) {
    if v % m as i64 == 0 {
        let x = rational::pow_rat(p, -v / m as i64);
        return (x.clone(), x);
    }
    let scale = rational::pow_int(p, depth + 2);
    rational::nth_root_bounds(&rational::pow_rat(p, -v), m, &scale)
}

/// Upper bound for the density on a cylinder where `v_p(f) >= k`, with slack
/// `p^{-(depth+2)}` when irrational so bounds stay nested as `depth` grows.
fn tail_upper(p: u64, k: u32, m: u32, depth: u32) -> Q {
    let (_, hi) = power_enclosure(p, k as i64, m, depth);
    if k % m == 0 {
        hi
    } else {
        hi + rational::pow_rat(p, -(depth as i64 + 2))
    }
}

struct Accum {
    lo: Q,
    hi: Q,
}

fn check_integral(d: &PolyDensity, region: &Cylinder, max_depth: u32) -> Result<()> {
    if max_depth == 0 {
        return Err(Error::DepthZero);
    }
    if d.nvars() != region.dim() {
        return Err(Error::DimensionMismatch {
            expected: region.dim(),
            got: d.nvars(),
        });
    }
    if !d.f.is_p_integral(region.prime.get()) {
        return Err(Error::NonIntegralDensity);
    }
    Ok(())
}

fn integrate_rec(d: &PolyDensity, c: &Cylinder, max_depth: u32, acc: &mut Accum) {
    let p = c.prime.get();
    let m = d.root_index;
    let k = c.depth;
    let mu = c.measure();
    let val = rational::valuation(&d.f.eval_int(&c.center), p);
    match val {
        Some(v) if v < k as i64 => {
            let (lo, hi) = power_enclosure(p, v, m, max_depth);
            acc.lo += &lo * &mu;
            acc.hi += &hi * &mu;
        }
        _ if k >= max_depth => {
            acc.hi += tail_upper(p, k, m, max_depth) * &mu;
        }
        _ => {
            for child in c.children() {
                integrate_rec(d, &child, max_depth, acc);
            }
        }
    }
}

/// Certified enclosure of `int_region |f|_p^{1/m} dmu`, subdividing down to
/// depth `max_depth`. The width is at most the unresolved measure times
/// `p^{-max_depth/m}` plus `p^{-(max_depth+2)}` of rounding when `m > 1`.
pub fn integrate(d: &PolyDensity, region: &Cylinder, max_depth: u32) -> Result<RationalInterval> {
    check_integral(d, region, max_depth)?;
    let mut acc = Accum {
        lo: Q::zero(),
        hi: Q::zero(),
    };
    integrate_rec(d, region, max_depth, &mut acc);
    RationalInterval::new(acc.lo, acc.hi)
}

/// Measure left unresolved by `integrate` at `max_depth`.
pub fn unresolved_measure(d: &PolyDensity, region: &Cylinder, max_depth: u32) -> Result<Q> {
    check_integral(d, region, max_depth)?;
    fn rec(d: &PolyDensity, c: &Cylinder, max_depth: u32) -> Q {
        let v = rational::valuation(&d.f.eval_int(&c.center), c.prime.get());
        match v {
            Some(v) if v < c.depth as i64 => Q::zero(),
            _ if c.depth >= max_depth => c.measure(),
            _ => c.children().iter().map(|ch| rec(d, ch, max_depth)).sum(),
        }
    }
    Ok(rec(d, region, max_depth))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Membership {
    In,
    Out,
    Undecided,
}

/// Position of `pi(c)` relative to `base`, valid because p-integral
/// components satisfy `pi(a + p^k t) = pi(a) mod p^k`.
fn classify(pi: &PolyMap, c: &Cylinder, base: &Cylinder) -> Membership {
    let p = c.prime.get();
    let image = pi.eval_int(&c.center);
    let k = c.depth.min(base.depth);
    let modulus = rational::pow_int(p, k);
    let agrees = image.iter().zip(&base.center).all(|(y, b)| {
        residue_mod(y, p, k as i64).expect("p-integral image") == b.mod_floor(&modulus)
    });
    if !agrees {
        Membership::Out
    } else if c.depth >= base.depth {
        Membership::In
    } else {
        Membership::Undecided
    }
}

/// Enclosure of `int_{pi^{-1}(base) cap Z_p^n} d dmu`: the pushforward of the
/// density measure along `pi`, evaluated on a base cylinder.
pub fn pushforward_cylinder_measure(
    pi: &PolyMap,
    base: &Cylinder,
    d: &PolyDensity,
    max_depth: u32,
) -> Result<RationalInterval> {
    let p = base.prime;
    let n = pi.source_dim();
    if pi.target_dim() != base.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            got: pi.target_dim(),
        });
    }
    let source = Cylinder::unit(p, n);
    check_integral(d, &source, max_depth)?;
    if !pi.components.iter().all(|c| c.is_p_integral(p.get())) {
        return Err(Error::NonIntegralDensity);
    }
    let mut total = RationalInterval::zero();
    let mut stack = vec![source];
    while let Some(c) = stack.pop() {
        match classify(pi, &c, base) {
            Membership::Out => {}
            Membership::In => total = &total + &integrate(d, &c, max_depth.max(c.depth))?,
            Membership::Undecided if c.depth >= max_depth => {
                // the density is at most 1 on the unit polydisc
                total = &total + &RationalInterval::new(Q::zero(), c.measure())?;
            }
            Membership::Undecided => stack.extend(c.children()),
        }
    }
    Ok(total)
}

/// Both sides of the change of variables formula at a fixed depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfVariablesReport {
    /// `int_{phi(Z_p^n)} d(y) dmu(y)`.
    pub lhs: RationalInterval,
    /// `int_{Z_p^n} d(phi(x)) |det J(x)| dmu(x)`.
    pub rhs: RationalInterval,
    pub overlap: bool,
}

/// Unit on the whole polydisc by coefficient inspection: unit constant
/// term, every other coefficient divisible by `p`.
fn is_unit_on_polydisc(j: &MultiPoly, p: u64) -> bool {
    let c0 = j.constant_term();
    rational::valuation(&c0, p) == Some(0)
        && j.terms().all(|(e, c)| {
            e.iter().all(|&k| k == 0) || rational::valuation(c, p).is_some_and(|v| v >= 1)
        })
}

fn residues(p: u64, n: usize) -> Vec<Vec<BigInt>> {
    let count = (p as usize).pow(n as u32);
    (0..count)
        .map(|mut idx| {
            let mut v = vec![BigInt::zero(); n];
            for slot in v.iter_mut().rev() {
                *slot = BigInt::from(idx % p as usize);
                idx /= p as usize;
            }
            v
        })
        .collect()
}

/// Checks `int_{phi(U)} f dmu = int_U f(phi) |det J_phi| dmu` on `U = Z_p^n`
/// for maps with unit jacobian that are bijective mod p. Such maps send each
/// residue disc `a + pZ_p^n` onto `phi(a) + pZ_p^n`, so the left side is a sum
/// over image discs.
pub fn change_of_variables_check(
    phi: &PolyMap,
    d: &PolyDensity,
    p: Prime,
    max_depth: u32,
) -> Result<ChangeOfVariablesReport> {
    let n = phi.source_dim();
    let Some(jac) = phi.jacobian_det() else {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: phi.target_dim(),
        });
    };
    if d.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.nvars(),
        });
    }
    if !phi.components.iter().all(|c| c.is_p_integral(p.get())) {
        return Err(Error::NonIntegralDensity);
    }
    if !is_unit_on_polydisc(jac, p.get()) {
        return Err(Error::NonUnitJacobian);
    }
    let pm = p.get();
    let mut seen = std::collections::HashSet::new();
    let mut lhs = RationalInterval::zero();
    for a in residues(pm, n) {
        let image: Vec<Q> = phi.eval_int(&a);
        let disc = Cylinder::new(p, &image, 1)?;
        if !seen.insert(disc.center.clone()) {
            return Err(Error::NotInjective);
        }
        lhs = &lhs + &integrate(d, &disc, max_depth)?;
    }
    let m = d.root_index;
    let pulled = d.f.compose(&phi.components).mul(&jac.pow(m));
    let rhs = integrate(
        &PolyDensity::new(pulled, m)?,
        &Cylinder::unit(p, n),
        max_depth,
    )?;
    Ok(ChangeOfVariablesReport {
        overlap: lhs.overlaps(&rhs),
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingReport {
    /// `int |c f|^{1/m}`.
    pub scaled: RationalInterval,
    /// `int |f|^{1/m}`.
    pub base: RationalInterval,
    /// Enclosure of `|c|_p^{1/m}`.
    pub factor: RationalInterval,
    /// `factor * base`.
    pub predicted: RationalInterval,
    pub consistent: bool,
}

/// Checks `int |c f|^{1/m} = |c|_p^{1/m} int |f|^{1/m}` by interval overlap.
pub fn scaling_law_check(
    c: &Q,
    d: &PolyDensity,
    region: &Cylinder,
    max_depth: u32,
) -> Result<ScalingReport> {
    if c.is_zero() {
        return Err(Error::Invalid("scaling factor must be nonzero".into()));
    }
    let p = region.prime.get();
    let m = d.root_index;
    let scaled_density = PolyDensity::new(d.f.scale(c), m)?;
    let scaled = integrate(&scaled_density, region, max_depth)?;
    let base = integrate(d, region, max_depth)?;
    let v = rational::valuation(c, p).unwrap();
    let (lo, hi) = power_enclosure(p, v, m, max_depth);
    let factor = RationalInterval::new(lo, hi)?;
    let predicted = base.mul_nonneg(&factor);
    Ok(ScalingReport {
        consistent: scaled.overlaps(&predicted),
        scaled,
        base,
        factor,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn x1() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    fn dens(f: MultiPoly, m: u32) -> PolyDensity {
        PolyDensity::new(f, m).unwrap()
    }

    #[test]
    fn cylinder_basics() {
        let c = Cylinder::from_ints(pr(3), &[7], 4).unwrap();
        assert_eq!(c.measure(), q(1, 81));
        assert_eq!(Cylinder::unit(pr(5), 3).measure(), qi(1));
        assert_eq!(
            Cylinder::from_ints(pr(2), &[1, 0, 1], 2).unwrap().measure(),
            q(1, 64)
        );
        let kids = c.children();
        assert_eq!(kids.len(), 3);
        assert!(kids.iter().all(|k| c.contains(k)));
        assert!(kids[0].is_disjoint(&kids[1]));
        assert_eq!(kids.iter().map(Cylinder::measure).sum::<Q>(), c.measure());
        let neg = Cylinder::new(pr(3), &[q(-1, 2)], 2).unwrap();
        assert_eq!(neg.center(), &[BigInt::from(4)]);
        assert!(neg.contains_point(&[q(-1, 2)]));
        assert_eq!(
            Cylinder::new(pr(3), &[q(1, 3)], 1),
            Err(Error::NonIntegralDensity)
        );
    }

    #[test]
    fn cylinder_json_roundtrip() {
        let c = Cylinder::from_ints(pr(3), &[1, 2], 2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"prime":3,"center":["1","2"],"depth":2}"#);
        assert_eq!(serde_json::from_str::<Cylinder>(&s).unwrap(), c);
    }

    #[test]
    fn abs_x_encloses_series() {
        for p in [2u64, 3, 5] {
            let r = integrate(&dens(x1(), 1), &Cylinder::unit(pr(p), 1), 12).unwrap();
            assert!(r.contains(&q(p as i64, p as i64 + 1)));
            assert!(r.width() <= rational::pow_rat(p, -12));
        }
    }

    #[test]
    fn constant_density_is_exact() {
        let c = Cylinder::from_ints(pr(5), &[3, 1], 2).unwrap();
        let r = integrate(&PolyDensity::one(2), &c, 4).unwrap();
        assert_eq!(r, RationalInterval::point(q(1, 625)));
        let half = dens(MultiPoly::constant(1, qi(9)), 2);
        let r = integrate(&half, &Cylinder::unit(pr(3), 1), 3).unwrap();
        assert_eq!(r, RationalInterval::point(q(1, 3)));
    }

    #[test]
    fn root_index_two() {
        // (1 - 1/3) / (1 - 3^{-3/2}), bracketed by bounding 3^{-3/2}
        let r = integrate(&dens(x1(), 2), &Cylinder::unit(pr(3), 1), 10).unwrap();
        let (lo, hi) = rational::nth_root_bounds(&q(1, 27), 2, &BigInt::from(10u64.pow(12)));
        let t_lo = q(2, 3) / (qi(1) - lo);
        let t_hi = q(2, 3) / (qi(1) - hi);
        assert!(r.lo() <= &t_lo && r.hi() >= &t_hi, "{r}");
    }

    #[test]
    fn errors() {
        let u = Cylinder::unit(pr(3), 1);
        assert_eq!(integrate(&dens(x1(), 1), &u, 0), Err(Error::DepthZero));
        let f = x1().scale(&q(1, 3));
        assert_eq!(
            integrate(&dens(f.clone(), 1), &u, 3),
            Err(Error::NonIntegralDensity)
        );
        let (g, e) = dens(f, 1).normalized(pr(3));
        assert_eq!(e, -1);
        assert_eq!(g.poly(), &x1());
        assert_eq!(
            PolyDensity::new(MultiPoly::zero(1), 1),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn pushforward_examples() {
        let p = pr(3);
        let proj = PolyMap::new(vec![MultiPoly::var(2, 0)]).unwrap();
        for m in 0..4 {
            let base = Cylinder::from_ints(p, &[1], m).unwrap();
            let r = pushforward_cylinder_measure(&proj, &base, &PolyDensity::one(2), 6).unwrap();
            assert_eq!(
                r,
                RationalInterval::point(rational::pow_rat(3, -(m as i64)))
            );
        }
        let square = PolyMap::new(vec![x1().pow(2)]).unwrap();
        let base = Cylinder::from_ints(p, &[1], 1).unwrap();
        let r = pushforward_cylinder_measure(&square, &base, &PolyDensity::one(1), 6).unwrap();
        assert_eq!(r, RationalInterval::point(q(2, 3)));
        let id = PolyMap::identity(1);
        let r =
            pushforward_cylinder_measure(&id, &Cylinder::unit(p, 1), &dens(x1(), 1), 8).unwrap();
        assert_eq!(
            r,
            integrate(&dens(x1(), 1), &Cylinder::unit(p, 1), 8).unwrap()
        );
    }

    #[test]
    fn change_of_variables() {
        let p = pr(3);
        let d = dens(x1(), 1);
        let phi = PolyMap::new(vec![x1().add(&x1().pow(2).scale(&qi(3)))]).unwrap();
        let rep = change_of_variables_check(&phi, &d, p, 8).unwrap();
        assert!(rep.overlap);
        let rep = change_of_variables_check(&PolyMap::identity(1), &d, p, 8).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        let unit = PolyMap::new(vec![x1().scale(&qi(2))]).unwrap();
        let rep = change_of_variables_check(&unit, &d, p, 8).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        let bad = PolyMap::new(vec![x1().scale(&qi(3))]).unwrap();
        assert_eq!(
            change_of_variables_check(&bad, &d, p, 4),
            Err(Error::NonUnitJacobian)
        );
        // unit jacobian 1 + 6x^2, yet every x lands in 3Z_3
        let fold = PolyMap::new(vec![x1().add(&x1().pow(3).scale(&qi(2)))]).unwrap();
        assert_eq!(
            change_of_variables_check(&fold, &d, p, 4),
            Err(Error::NotInjective)
        );
    }

    #[test]
    fn scaling_law() {
        let u = Cylinder::unit(pr(3), 1);
        let d = dens(x1().sub(&MultiPoly::one(1)), 1);
        let r = scaling_law_check(&qi(3), &d, &u, 8).unwrap();
        assert!(r.consistent);
        assert_eq!(r.factor, RationalInterval::point(q(1, 3)));
        let r = scaling_law_check(&qi(2), &d, &u, 8).unwrap();
        assert_eq!(r.scaled, r.base);
        let d2 = dens(x1(), 2);
        let r = scaling_law_check(&qi(9), &d2, &u, 8).unwrap();
        assert!(r.consistent);
        assert_eq!(r.factor, RationalInterval::point(q(1, 3)));
    }

    #[test]
    fn nesting_in_depth() {
        let d = dens(x1().pow(2).sub(&MultiPoly::one(1)), 2);
        let u = Cylinder::unit(pr(2), 1);
        let mut prev = integrate(&d, &u, 1).unwrap();
        for depth in 2..10 {
            let next = integrate(&d, &u, depth).unwrap();
            assert!(
                prev.contains_interval(&next),
                "depth {depth}: {prev} vs {next}"
            );
            prev = next;
        }
    }
}
