//! Certified isolation of the complex roots of an integer polynomial.
//!
//! Root counts in a box come from the winding number of `f` along the box
//! boundary, computed exactly as a Cauchy index with signed remainder
//! sequences. Boxes are split along lines that avoid every root, so no count
//! is ever taken across a zero of `f`. Everything is exact rational arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::poly::IntPolynomial;
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexBox {
    pub real: RationalInterval,
    pub imag: RationalInterval,
}

impl ComplexBox {
    pub fn new(real: RationalInterval, imag: RationalInterval) -> Self {
        ComplexBox { real, imag }
    }

    pub fn from_bounds(x0: Q, x1: Q, y0: Q, y1: Q) -> Result<Self> {
        Ok(ComplexBox {
            real: RationalInterval::new(x0, x1)?,
            imag: RationalInterval::new(y0, y1)?,
        })
    }

    /// Larger of the two side lengths.
    pub fn width(&self) -> Q {
        self.real.width().max(self.imag.width())
    }

    pub fn touches(&self, other: &ComplexBox) -> bool {
        self.real.overlaps(&other.real) && self.imag.overlaps(&other.imag)
    }

    pub fn contains_box(&self, other: &ComplexBox) -> bool {
        self.real.contains_interval(&other.real) && self.imag.contains_interval(&other.imag)
    }

    /// Exact minimum of `|z|^2` over the box.
    pub fn min_abs_sq(&self) -> Q {
        fn axis(i: &RationalInterval) -> Q {
            if i.lo() <= &Q::zero() && &Q::zero() <= i.hi() {
                Q::zero()
            } else {
                (i.lo() * i.lo()).min(i.hi() * i.hi())
            }
        }
        axis(&self.real) + axis(&self.imag)
    }

    /// Exact maximum of `|z|^2` over the box.
    pub fn max_abs_sq(&self) -> Q {
        fn axis(i: &RationalInterval) -> Q {
            (i.lo() * i.lo()).max(i.hi() * i.hi())
        }
        axis(&self.real) + axis(&self.imag)
    }

    /// Rational enclosure of `{|z| : z in box}` with endpoint error below `1/scale`.
    pub fn modulus_bounds(&self, scale: &BigInt) -> RationalInterval {
        let (lo, _) = rational::sqrt_bounds(&self.min_abs_sq(), scale);
        let (_, hi) = rational::sqrt_bounds(&self.max_abs_sq(), scale);
        RationalInterval::new(lo, hi).expect("min modulus below max modulus")
    }

    fn corners(&self) -> [Cq; 4] {
        let (x0, x1) = (self.real.lo(), self.real.hi());
        let (y0, y1) = (self.imag.lo(), self.imag.hi());
        [
            Cq::new(x0.clone(), y0.clone()),
            Cq::new(x1.clone(), y0.clone()),
            Cq::new(x1.clone(), y1.clone()),
            Cq::new(x0.clone(), y1.clone()),
        ]
    }
}

/// Complex number with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cq {
    re: Q,
    im: Q,
}

impl Cq {
    fn new(re: Q, im: Q) -> Self {
        Cq { re, im }
    }

    fn real(re: Q) -> Self {
        Cq { re, im: Q::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Cq) -> Cq {
        Cq::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Cq) -> Cq {
        Cq::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Cq) -> Cq {
        Cq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

fn eval_complex(f: &IntPolynomial, z: &Cq) -> Cq {
    f.coeffs().iter().rev().fold(Cq::real(Q::zero()), |acc, c| {
        acc.mul(z).add(&Cq::real(Q::from_integer(c.clone())))
    })
}

/// Coefficients of `c * f(z0 + t * d)` split into real and imaginary parts,
/// each scaled by a positive constant into `Z[t]`.
fn edge_polys(f: &IntPolynomial, rot: &Cq, z0: &Cq, d: &Cq) -> (IntPolynomial, IntPolynomial) {
    // Horner over Q(i)[t]
    let mut acc: Vec<Cq> = Vec::new();
    for c in f.coeffs().iter().rev() {
        let mut next = vec![Cq::real(Q::zero()); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k] = next[k].add(&a.mul(z0));
            next[k + 1] = next[k + 1].add(&a.mul(d));
        }
        next[0] = next[0].add(&Cq::real(Q::from_integer(c.clone())));
        acc = next;
    }
    let acc: Vec<Cq> = acc.iter().map(|a| a.mul(rot)).collect();
    let re: Vec<Q> = acc.iter().map(|a| a.re.clone()).collect();
    let im: Vec<Q> = acc.iter().map(|a| a.im.clone()).collect();
    (positive_integral(&re), positive_integral(&im))
}

/// Scales a rational polynomial into `Z[t]` by a positive factor only, so the
/// sign of every value is kept.
fn positive_integral(coeffs: &[Q]) -> IntPolynomial {
    let l = rational::lcm_all(coeffs.iter().map(|c| c.denom()));
    let p = IntPolynomial::new(
        coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect(),
    );
    shrink_positive(&p)
}

fn shrink_positive(p: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.content();
    IntPolynomial::new(p.coeffs().iter().map(|x| x / &c).collect())
}

/// Signed remainder sequence `p0, p1, -rem(p0, p1), ...`, with every entry
/// scaled by positive constants.
fn signed_remainder_sequence(p0: &IntPolynomial, p1: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![shrink_positive(p0), shrink_positive(p1)];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() {
            seq.pop();
            break;
        }
        let r = if a.degree() < b.degree() || a.is_zero() {
            a.clone()
        } else {
            let delta = a.degree() - b.degree();
            let r = a.pseudo_rem(b);
            // prem multiplies by lc(b)^(delta+1); undo its sign
            if b.leading().is_negative() && delta % 2 == 0 {
                -&r
            } else {
                r
            }
        };
        let next = shrink_positive(&-&r);
        if next.is_zero() {
            break;
        }
        seq.push(next);
    }
    seq
}

fn sign_variations(seq: &[IntPolynomial], t: &Q) -> i64 {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(t);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Cauchy index of `q/p` over `(0, 1)`; `p` must not vanish at 0 or 1.
fn cauchy_index_unit(p: &IntPolynomial, q: &IntPolynomial) -> i64 {
    let seq = signed_remainder_sequence(p, q);
    sign_variations(&seq, &Q::zero()) - sign_variations(&seq, &Q::one())
}

/// Whether `g` has a real root in the closed interval `[0, 1]`.
fn has_root_in_unit(g: &IntPolynomial) -> bool {
    if g.is_zero() {
        return true;
    }
    if g.is_constant() {
        return false;
    }
    if g.sign_at(&Q::zero()) == 0 || g.sign_at(&Q::one()) == 0 {
        return true;
    }
    cauchy_index_unit(g, &g.derivative()) > 0
}

/// Whether `f` vanishes somewhere on the segment `[a, b]`.
fn root_on_segment(f: &IntPolynomial, a: &Cq, b: &Cq) -> bool {
    let d = b.sub(a);
    let (u, v) = edge_polys(f, &Cq::real(Q::one()), a, &d);
    has_root_in_unit(&u.gcd(&v))
}

fn winding_count(f: &IntPolynomial, bx: &ComplexBox, check_boundary: bool) -> Result<usize> {
    let corners = bx.corners();
    let values: Vec<Cq> = corners.iter().map(|z| eval_complex(f, z)).collect();
    if values.iter().any(Cq::is_zero) {
        return Err(Error::Invalid("root on box corner".into()));
    }
    // rotate so that the real part is nonzero at every corner
    let rot = (0i64..)
        .map(|k| Cq::new(Q::one(), rational::qi(k)))
        .find(|c| values.iter().all(|v| !c.mul(v).re.is_zero()))
        .unwrap();
    let mut index = 0i64;
    for i in 0..4 {
        let a = &corners[i];
        let b = &corners[(i + 1) % 4];
        let d = b.sub(a);
        if check_boundary {
            let (u, v) = edge_polys(f, &Cq::real(Q::one()), a, &d);
            if has_root_in_unit(&u.gcd(&v)) {
                return Err(Error::Invalid("root on box boundary".into()));
            }
        }
        let (u, v) = edge_polys(f, &rot, a, &d);
        index += cauchy_index_unit(&u, &v);
    }
    debug_assert!(index % 2 == 0 && index <= 0);
    Ok((-index / 2) as usize)
}

/// Number of roots of `f` (with multiplicity) inside a closed box whose
/// boundary avoids every root. Errors if a root lies on the boundary.
pub fn count_roots_in_box(f: &IntPolynomial, bx: &ComplexBox) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    winding_count(f, bx, true)
}

/// Split fractions near 1/2: 1/2 first, then dyadic offsets of growing depth.
fn split_fractions() -> impl Iterator<Item = Q> {
    let half = rational::q(1, 2);
    std::iter::once(half.clone()).chain((1u32..).flat_map(move |level| {
        let den = BigInt::from(2u32).pow(level + 4);
        let half = half.clone();
        (1..=3i64).flat_map(move |s| {
            let off = Q::new(BigInt::from(s), den.clone());
            [&half + &off, &half - &off]
        })
    }))
}

#[derive(Clone, Debug)]
struct Node {
    bx: ComplexBox,
    count: usize,
    parent: usize,
}

/// Incremental quadtree isolation. Levels are cached so repeated calls with
/// shrinking tolerances only pay for the new levels.
#[derive(Clone, Debug)]
pub struct RootIsolator {
    f: IntPolynomial,
    levels: Vec<Vec<Node>>,
}

impl RootIsolator {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let f = f.primitive_part();
        let lc = Q::from_integer(f.leading().abs());
        let cauchy = f.coeffs()[..f.degree()]
            .iter()
            .map(|c| Q::from_integer(c.abs()) / &lc)
            .fold(Q::zero(), |m, x| m.max(x))
            + Q::one();
        let mut radius = Q::one();
        while radius <= cauchy {
            radius *= rational::qi(2);
        }
        // the Cauchy bound is strict, so the boundary of [-r, r]^2 is root-free
        let root_box = split_fractions()
            .map(|t| {
                let r = &radius * (Q::one() + t);
                ComplexBox::from_bounds(-r.clone(), r.clone(), -r.clone(), r).unwrap()
            })
            .find(|b| b.corners().iter().all(|z| !eval_complex(&f, z).is_zero()))
            .unwrap();
        let n = f.degree();
        Ok(RootIsolator {
            f,
            levels: vec![vec![Node {
                bx: root_box,
                count: n,
                parent: 0,
            }]],
        })
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.f
    }

    fn split(&self, bx: &ComplexBox) -> [ComplexBox; 4] {
        let f = &self.f;
        let (x0, x1) = (bx.real.lo().clone(), bx.real.hi().clone());
        let (y0, y1) = (bx.imag.lo().clone(), bx.imag.hi().clone());
        let w = &x1 - &x0;
        let h = &y1 - &y0;
        let mx = split_fractions()
            .map(|t| &x0 + &w * t)
            .find(|mx| {
                !root_on_segment(
                    f,
                    &Cq::new(mx.clone(), y0.clone()),
                    &Cq::new(mx.clone(), y1.clone()),
                )
            })
            .unwrap();
        let my = split_fractions()
            .map(|t| &y0 + &h * t)
            .find(|my| {
                !root_on_segment(
                    f,
                    &Cq::new(x0.clone(), my.clone()),
                    &Cq::new(x1.clone(), my.clone()),
                )
            })
            .unwrap();
        let mk = |a: &Q, b: &Q, c: &Q, d: &Q| {
            ComplexBox::from_bounds(a.clone(), b.clone(), c.clone(), d.clone()).unwrap()
        };
        [
            mk(&x0, &mx, &y0, &my),
            mk(&mx, &x1, &y0, &my),
            mk(&x0, &mx, &my, &y1),
            mk(&mx, &x1, &my, &y1),
        ]
    }

    fn extend(&mut self) {
        let last = self.levels.last().unwrap();
        let mut next = Vec::new();
        for (i, node) in last.iter().enumerate() {
            let children = self.split(&node.bx);
            let mut seen = 0;
            for (k, child) in children.into_iter().enumerate() {
                let count = if k == 3 {
                    node.count - seen
                } else {
                    winding_count(&self.f, &child, false).expect("split lines avoid roots")
                };
                seen += count;
                if count > 0 {
                    next.push(Node {
                        bx: child,
                        count,
                        parent: i,
                    });
                }
            }
            debug_assert_eq!(seen, node.count);
        }
        self.levels.push(next);
    }

    /// Boxes of width at most `eps`, one per root, pairwise disjoint.
    ///
    /// A root is reported at the first level where its box holds one root, is
    /// narrow enough, and touches no other box of that level. Reporting at the
    /// first such level makes the output for `eps / 2` nest inside the output
    /// for `eps`.
    pub fn isolate(&mut self, eps: &Q) -> Result<Vec<ComplexBox>> {
        if !eps.is_positive() {
            return Err(Error::Invalid(
                "isolation tolerance must be positive".into(),
            ));
        }
        let n = self.f.degree();
        let mut done: Vec<Option<ComplexBox>> = vec![None];
        let mut out = Vec::new();
        let mut level = 0;
        loop {
            if level == self.levels.len() {
                self.extend();
            }
            let nodes = &self.levels[level];
            let inherited: Vec<Option<ComplexBox>> = nodes
                .iter()
                .map(|nd| {
                    if level == 0 {
                        None
                    } else {
                        done[nd.parent].clone()
                    }
                })
                .collect();
            let mut now = inherited.clone();
            for (i, nd) in nodes.iter().enumerate() {
                if now[i].is_some() || nd.count != 1 || nd.bx.width() > *eps {
                    continue;
                }
                let alone = nodes
                    .iter()
                    .enumerate()
                    .all(|(j, other)| j == i || !nd.bx.touches(&other.bx));
                if alone {
                    now[i] = Some(nd.bx.clone());
                    out.push(nd.bx.clone());
                }
            }
            if out.len() == n {
                break;
            }
            done = now;
            level += 1;
        }
        out.sort_by(|a, b| {
            a.real
                .lo()
                .cmp(b.real.lo())
                .then_with(|| a.imag.lo().cmp(b.imag.lo()))
        });
        Ok(out)
    }

    /// Count-one boxes at the deepest level computed so far; neighbours may
    /// share edges.
    pub fn deepest_single_root_boxes(&self) -> Vec<ComplexBox> {
        self.levels
            .last()
            .unwrap()
            .iter()
            .filter(|n| n.count == 1)
            .map(|n| n.bx.clone())
            .collect()
    }
}

/// One box per root, each of width at most `eps`, pairwise disjoint.
pub fn isolate_roots(f: &IntPolynomial, eps: &Q) -> Result<Vec<ComplexBox>> {
    RootIsolator::new(f)?.isolate(eps)
}

/// Scale for modulus enclosures: comfortably finer than the box width.
pub fn modulus_scale(bx: &ComplexBox) -> BigInt {
    let w = bx.width();
    let bits = if w.is_zero() {
        64
    } else {
        (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as u64 + 32
    };
    BigInt::one() << bits
}

/// Lower bound `q` with `q^2 <= x`, refined until it exceeds `floor` when possible.
pub fn sqrt_lower_above(x: &Q, floor: &Q) -> Option<Q> {
    if x <= &(floor * floor) {
        return None;
    }
    let mut bits = 16u64;
    loop {
        let (lo, _) = rational::sqrt_bounds(x, &(BigInt::one() << bits));
        if &lo > floor {
            return Some(lo);
        }
        bits *= 2;
        if bits > 1 << 16 {
            return None;
        }
    }
}
