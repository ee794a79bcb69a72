//! Fast exact computation of the joint statistic matrices, the bivariate
//! cluster polynomials, the univariate descent/peak/left-peak families, and
//! the closed-form products, all driven by insertion recurrences. Everything
//! here is cross-checked against brute-force enumeration in the tests and
//! the acceptance suite.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyalg::{BivarPoly, IntPoly};
use crate::{Error, Result};

pub use crate::stirling::cardinality as family_cardinality;

/// Identifies which joint count table is requested. The cluster-side and
/// Stirling-side kinds satisfy identical recurrences with identical bases,
/// so the paired kinds produce bitwise-equal tables; both are exposed so
/// callers can name the distribution they mean.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixKind {
    /// `(des, pk)` over inverse-cluster permutations.
    DesPk,
    /// `(lplat, ascplat)` over r-Stirling permutations.
    LplatAscplat,
    /// `(des, lpk)` over inverse-cluster permutations.
    DesLpk,
    /// `(lplat, lascplat)` over r-Stirling permutations.
    LplatLascplat,
}

impl MatrixKind {
    fn tracks_left_peaks(self) -> bool {
        matches!(self, MatrixKind::DesLpk | MatrixKind::LplatLascplat)
    }
}

/// Joint count table: `entry(i, j)` counts members of the family with first
/// statistic `i` and second statistic `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatMatrix {
    pub r: usize,
    pub k: usize,
    pub kind: MatrixKind,
    pub table: BivarPoly,
}

/// Compute a joint count table by the four-term insertion recurrence,
/// starting from the order-1 base (a single entry at `(1, 0)`, or `(1, 1)`
/// for the left-peak kinds).
pub fn stat_matrix(r: usize, k: usize, kind: MatrixKind) -> Result<StatMatrix> {
    if r < 2 || k < 1 {
        return Err(Error::InvalidInput("stat matrix needs r >= 2 and k >= 1".into()));
    }
    let left = kind.tracks_left_peaks();
    let base_j = usize::from(left);
    let mut cur = vec![vec![BigInt::zero(); base_j + 1]; 2];
    cur[1][base_j] = BigInt::from(1);
    for kk in 1..k {
        let imax = cur.len() - 1;
        let jmax = cur.iter().map(|row| row.len()).max().unwrap() - 1;
        let mut next = vec![vec![BigInt::zero(); jmax + 2]; imax + 2];
        let get = |i: isize, j: isize| -> BigInt {
            if i < 0 || j < 0 {
                return BigInt::zero();
            }
            cur.get(i as usize)
                .and_then(|row| row.get(j as usize))
                .cloned()
                .unwrap_or_else(BigInt::zero)
        };
        let rk = (r * kk) as i64;
        for i in 0..=imax as isize + 1 {
            for j in 0..=jmax as isize + 1 {
                let mut v = get(i, j) * BigInt::from(j as i64);
                v += get(i, j - 1) * BigInt::from(i - j + 1);
                if left {
                    v += get(i - 1, j) * BigInt::from(j as i64);
                    v += get(i - 1, j - 1) * BigInt::from(rk - (i as i64) - (j as i64) + 3);
                } else {
                    v += get(i - 1, j) * BigInt::from(j as i64 + 1);
                    v += get(i - 1, j - 1) * BigInt::from(rk - (i as i64) - (j as i64) + 2);
                }
                assert!(
                    v >= BigInt::zero(),
                    "insertion recurrence produced a negative count at ({}, {})",
                    i,
                    j
                );
                next[i as usize][j as usize] = v;
            }
        }
        cur = next;
    }
    let table = BivarPoly::from_rows(cur.into_iter().map(IntPoly::from_coeffs).collect());
    debug_assert_eq!(table.total(), family_cardinality(r, k));
    Ok(StatMatrix { r, k, kind, table })
}

/// Bivariate joint distribution polynomial in `(t, y)`: the `(des, pk)`
/// flavor satisfies
/// `C_{k+1} = (1 + rky) t C_k + (1-t) t y dC_k/dt + (1+t)(1-y) y dC_k/dy`
/// from base `t`; the `(des, lpk)` flavor replaces the first term by
/// `(1 + rk) t y C_k` and starts from `t y`.
pub fn joint_poly(r: usize, k: usize, left_peaks: bool) -> Result<BivarPoly> {
    Ok(joint_poly_family(r, k, left_peaks)?.pop().unwrap())
}

/// The family `k = 1, ..., kmax` (index `k - 1`).
pub fn joint_poly_family(r: usize, kmax: usize, left_peaks: bool) -> Result<Vec<BivarPoly>> {
    if r < 2 || kmax < 1 {
        return Err(Error::InvalidInput("joint polynomials need r >= 2 and k >= 1".into()));
    }
    let t = BivarPoly::monomial(BigInt::from(1), 1, 0);
    let y = BivarPoly::monomial(BigInt::from(1), 0, 1);
    let ty = t.mul(&y);
    let one = BivarPoly::one();
    // (1-t) t y and (1+t)(1-y) y, shared by both recurrences
    let dt_coeff = one.sub(&t).mul(&ty);
    let dy_coeff = one.add(&t).mul(&one.sub(&y)).mul(&y);
    let mut cur = if left_peaks { ty.clone() } else { t.clone() };
    let mut family = vec![cur.clone()];
    for kk in 1..kmax {
        let rk = BigInt::from(r * kk);
        let lead_coeff = if left_peaks {
            // (1 + rk) t y
            ty.scale(&(BigInt::from(1) + &rk))
        } else {
            // (1 + rk y) t
            t.add(&ty.scale(&rk))
        };
        let next = lead_coeff
            .mul(&cur)
            .add(&dt_coeff.mul(&cur.deriv_first()))
            .add(&dy_coeff.mul(&cur.deriv_second()));
        family.push(next.clone());
        cur = next;
    }
    Ok(family)
}

/// The univariate statistic selected for the fast polynomial families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UniStat {
    Des,
    Pk,
    Lpk,
}

impl UniStat {
    pub fn name(self) -> &'static str {
        match self {
            UniStat::Des => "des",
            UniStat::Pk => "pk",
            UniStat::Lpk => "lpk",
        }
    }
}

/// Distribution polynomial of a single statistic over the order-`k` family,
/// computed by the first-order recurrences
///
/// * des:  `f_{k+1} = (1 + rk) t f_k + t (1-t) f_k'`, base `t`;
/// * pk:   `f_{k+1} = (1 + rk t) f_k + 2 t (1-t) f_k'`, base `1`;
/// * lpk:  `f_{k+1} = (1 + rk) t f_k + 2 t (1-t) f_k'`, base `t`.
pub fn uni_poly(r: usize, k: usize, stat: UniStat) -> Result<IntPoly> {
    Ok(uni_poly_family(r, k, stat)?.pop().unwrap())
}

/// The family `k = 1, ..., kmax` (index `k - 1`).
pub fn uni_poly_family(r: usize, kmax: usize, stat: UniStat) -> Result<Vec<IntPoly>> {
    if r < 2 || kmax < 1 {
        return Err(Error::InvalidInput("polynomial families need r >= 2 and k >= 1".into()));
    }
    let t = IntPoly::var();
    let t_one_minus_t = IntPoly::from_i64s(&[0, 1, -1]);
    let mut cur = match stat {
        UniStat::Pk => IntPoly::one(),
        UniStat::Des | UniStat::Lpk => t.clone(),
    };
    let mut family = vec![cur.clone()];
    for kk in 1..kmax {
        let rk = BigInt::from(r * kk);
        let deriv_scale = BigInt::from(match stat {
            UniStat::Des => 1,
            UniStat::Pk | UniStat::Lpk => 2,
        });
        let lead = match stat {
            // (1 + rk t)
            UniStat::Pk => IntPoly::from_coeffs(vec![BigInt::from(1), rk]),
            // (1 + rk) t
            UniStat::Des | UniStat::Lpk => t.scale(&(BigInt::from(1) + rk)),
        };
        let next = lead
            .mul(&cur)
            .add(&t_one_minus_t.mul(&cur.derivative()).scale(&deriv_scale));
        family.push(next.clone());
        cur = next;
    }
    Ok(family)
}

/// `prod_{j=1}^{k-1} ((r-2) j + 2)`: the leading coefficient of the peak
/// polynomial (the number of family members with the maximum `k - 1`
/// peaks).
pub fn peak_leading_coefficient(r: usize, k: usize) -> BigInt {
    let mut prod = BigInt::from(1);
    for j in 1..k {
        prod *= BigInt::from((r - 2) * j + 2);
    }
    prod
}

/// `prod_{j=1}^{k-1} ((r-2) j + 1)`: conjectured count of family members
/// with the maximum `k` left peaks.
pub fn left_peak_leading_conjectured(r: usize, k: usize) -> BigInt {
    let mut prod = BigInt::from(1);
    for j in 1..k {
        prod *= BigInt::from((r - 2) * j + 1);
    }
    prod
}
