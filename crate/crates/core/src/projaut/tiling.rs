use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::Prime;
use crate::rational::{self, Q};

/// One translate `alpha^N A` of the shell `A = {1 <= |y| < p^s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateEntry {
    pub n: i64,
    /// Sphere indices `j` with `|y| = p^j`, half open `[first, end)`.
    pub first_sphere: i64,
    pub end_sphere: i64,
    /// `p^{Ns} mu(A)`.
    #[serde(with = "rational::serde_q")]
    pub measure: Q,
    /// Sum of the sphere measures it covers.
    #[serde(with = "rational::serde_q")]
    pub sphere_sum: Q,
}

/// Exact measure ledger for the tiling of `Q_p \ {0}` by translates of a shell
/// under multiplication by `alpha` with `|alpha| = p^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellLedger {
    pub prime: u64,
    pub scale: u32,
    pub range: u32,
    #[serde(with = "rational::serde_q")]
    pub shell_measure: Q,
    pub translates: Vec<TranslateEntry>,
    /// Translates are pairwise disjoint and cover exactly the spheres
    /// `-Ms <= j < (M+1)s`.
    pub partition_ok: bool,
    #[serde(with = "rational::serde_q")]
    pub ledger_total: Q,
    /// `mu{p^{-Ms} <= |y| < p^{(M+1)s}}` as a difference of two balls.
    #[serde(with = "rational::serde_q")]
    pub annulus_measure: Q,
    /// Total weighted by `|alpha|^{-N}`: `(2M+1) mu(A)`, unbounded in `M`.
    #[serde(with = "rational::serde_q")]
    pub invariant_total: Q,
    pub balanced: bool,
}

/// `mu{|y| = p^j} = p^j (1 - 1/p)`.
pub fn sphere_measure(p: u64, j: i64) -> Q {
    rational::pow_rat(p, j) * (Q::one() - rational::q(1, p as i64))
}

/// `mu{|y| <= p^j} = p^j`.
fn ball_measure(p: u64, j: i64) -> Q {
    rational::pow_rat(p, j)
}

pub fn verify_shell_tiling(p: Prime, s: u32, m: u32) -> Result<ShellLedger> {
    if s == 0 {
        return Err(Error::Invalid("shell scale must be positive".into()));
    }
    let p = p.get();
    let si = s as i64;
    let mi = m as i64;
    let shell_measure: Q = (0..si).map(|j| sphere_measure(p, j)).sum();

    let mut translates = Vec::new();
    let mut covered = Vec::new();
    for n in -mi..=mi {
        let first = n * si;
        let end = first + si;
        covered.extend(first..end);
        translates.push(TranslateEntry {
            n,
            first_sphere: first,
            end_sphere: end,
            measure: rational::pow_rat(p, n * si) * &shell_measure,
            sphere_sum: (first..end).map(|j| sphere_measure(p, j)).sum(),
        });
    }
    let expected: Vec<i64> = (-mi * si..(mi + 1) * si).collect();
    let partition_ok = covered == expected;

    let ledger_total: Q = translates.iter().map(|t| t.measure.clone()).sum();
    // {p^a <= |y| < p^b} = ball(p^{b-1}) minus ball(p^{a-1})
    let annulus_measure = ball_measure(p, (mi + 1) * si - 1) - ball_measure(p, -mi * si - 1);
    let sphere_total: Q = expected.iter().map(|&j| sphere_measure(p, j)).sum();
    let invariant_total: Q = translates
        .iter()
        .map(|t| rational::pow_rat(p, -t.n * si) * &t.measure)
        .sum();

    let balanced = partition_ok
        && translates.iter().all(|t| t.measure == t.sphere_sum)
        && ledger_total == annulus_measure
        && ledger_total == sphere_total
        && invariant_total == Q::from_integer((2 * mi + 1).into()) * &shell_measure
        && !shell_measure.is_zero();

    Ok(ShellLedger {
        prime: p,
        scale: s,
        range: m,
        shell_measure,
        translates,
        partition_ok,
        ledger_total,
        annulus_measure,
        invariant_total,
        balanced,
    })
}
