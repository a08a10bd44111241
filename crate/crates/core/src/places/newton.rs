//! Newton polygons of integer polynomials at a prime.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::primes::Prime;
use crate::rational::{self, Q};

/// One edge of the lower hull. Its `length` roots have valuation `-slope`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullSegment {
    #[serde(with = "rational::serde_q")]
    pub slope: Q,
    pub length: usize,
    pub start: usize,
    pub end: usize,
}

/// Lower convex hull of the points `(i, v_p(c_i))` for nonzero `c_i`, read
/// left to right. Slope convention: a segment of slope `s` accounts for
/// `length` roots of valuation `-s`, i.e. absolute value `p^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    prime: u64,
    points: Vec<(usize, i64)>,
    vertices: Vec<(usize, i64)>,
    segments: Vec<HullSegment>,
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

pub fn newton_polygon(f: &IntPolynomial, p: Prime) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<(usize, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, rational::int_valuation(c, p.get()).unwrap() as i64))
        .collect();
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            HullSegment {
                slope: Q::new(BigInt::from(b.1 - a.1), BigInt::from((b.0 - a.0) as i64)),
                length: b.0 - a.0,
                start: a.0,
                end: b.0,
            }
        })
        .collect();
    Ok(NewtonPolygon {
        prime: p.get(),
        points,
        vertices: hull,
        segments,
    })
}

impl NewtonPolygon {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn points(&self) -> &[(usize, i64)] {
        &self.points
    }

    pub fn vertices(&self) -> &[(usize, i64)] {
        &self.vertices
    }

    pub fn segments(&self) -> &[HullSegment] {
        &self.segments
    }

    /// `(valuation, count)` pairs for the nonzero roots.
    pub fn root_valuations(&self) -> Vec<(Q, usize)> {
        self.segments
            .iter()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    /// Number of roots equal to zero (the index of the first nonzero coefficient).
    pub fn zero_roots(&self) -> usize {
        self.points.first().map(|p| p.0).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn prime(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn square_root_of_p() {
        for pr in [2u64, 3, 7] {
            let np = newton_polygon(&p(&[-(pr as i64), 0, 1]), prime(pr)).unwrap();
            assert_eq!(np.points(), &[(0, 1), (2, 0)]);
            assert_eq!(np.segments().len(), 1);
            assert_eq!(np.segments()[0].slope, q(-1, 2));
            assert_eq!(np.segments()[0].length, 2);
            assert_eq!(np.root_valuations(), vec![(q(1, 2), 2)]);
        }
    }

    #[test]
    fn inverse_of_p() {
        let np = newton_polygon(&p(&[-1, 5]), prime(5)).unwrap();
        assert_eq!(np.segments()[0].slope, qi(1));
        assert_eq!(np.root_valuations(), vec![(qi(-1), 1)]);
    }

    #[test]
    fn three_plus_four_i_over_five() {
        let np = newton_polygon(&p(&[5, -6, 5]), prime(5)).unwrap();
        assert_eq!(np.points(), &[(0, 1), (1, 0), (2, 1)]);
        let slopes: Vec<(Q, usize)> = np
            .segments()
            .iter()
            .map(|s| (s.slope.clone(), s.length))
            .collect();
        assert_eq!(slopes, vec![(qi(-1), 1), (qi(1), 1)]);
    }

    #[test]
    fn collinear_points_merge() {
        // 1 + 2x + 4x^2 at p = 2: points (0,0), (1,1), (2,2) on one line
        let np = newton_polygon(&p(&[1, 2, 4]), prime(2)).unwrap();
        assert_eq!(np.vertices(), &[(0, 0), (2, 2)]);
        assert_eq!(np.segments()[0].length, 2);
        // zero roots are skipped: x^2 (x - 3)
        let np = newton_polygon(&p(&[0, 0, -3, 1]), prime(3)).unwrap();
        assert_eq!(np.zero_roots(), 2);
        assert_eq!(np.segments()[0].slope, qi(-1));
    }
}
