//! Hadamard-product evaluation of the refined cluster-method formulas for
//! the two non-overlapping pattern families, plus a brute-force oracle with
//! the same output shape and a direct verifier of the unrefined cluster
//! expansion.
//!
//! The engine works in three steps: assemble a base series in `(x, t, s)`
//! whose inner sum runs over cluster sizes, take the Hadamard geometric sum
//! in `t`, and read each length `n` off the `x^n` slice, clearing the
//! rational prefactors and (for the peak statistics) undoing the
//! `u = 4t/(1+t)^2` substitution. Every step that could silently go wrong
//! is guarded by an exactness assertion instead.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::clusters::{cluster_counts, head_pattern_word};
use crate::perm::{brute_distribution, for_each_perm, Perm, StatKind};
use crate::polyalg::{
    divide_out, geometric_pow, substitute_u, ts_mul_poly, unsubstitute_u, BivarPoly, IntPoly, Rat,
    TruncSeries,
};
use crate::recurrences::{uni_poly_family, UniStat};
use crate::{Error, Result};

/// Which member of the two mirror-image pattern families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    /// `2 1 3 4 ... m`
    Head,
    /// `1 2 ... (m-2) m (m-1)`
    Tail,
}

/// A non-overlapping pattern `2 1 3 4 ... m` or its reverse-complement
/// `1 2 ... (m-2) m (m-1)`, with `m >= 3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PatternFamily {
    pub m: usize,
    pub variant: Variant,
}

impl PatternFamily {
    pub fn new(m: usize, variant: Variant) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidInput("pattern families need length m >= 3".into()));
        }
        Ok(PatternFamily { m, variant })
    }

    pub fn pattern(&self) -> Perm {
        let word = match self.variant {
            Variant::Head => head_pattern_word(self.m),
            Variant::Tail => {
                let mut w: Vec<u32> = (1..=self.m as u32 - 2).collect();
                w.push(self.m as u32);
                w.push(self.m as u32 - 1);
                w
            }
        };
        Perm::new(word).unwrap()
    }

    /// Recognize a supported pattern.
    pub fn recognize(sigma: &Perm) -> Option<PatternFamily> {
        let m = sigma.n();
        if m < 3 {
            return None;
        }
        for variant in [Variant::Head, Variant::Tail] {
            let fam = PatternFamily { m, variant };
            if fam.pattern() == *sigma {
                return Some(fam);
            }
        }
        None
    }
}

/// The three inverse statistics the refined cluster method tracks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvStat {
    Ides,
    Ipk,
    Ilpk,
}

impl InvStat {
    pub fn name(self) -> &'static str {
        match self {
            InvStat::Ides => "ides",
            InvStat::Ipk => "ipk",
            InvStat::Ilpk => "ilpk",
        }
    }

    /// The exponent shift applied to the statistic in the refined
    /// polynomials (`+1` for ides and ipk, none for ilpk).
    pub fn shift(self) -> usize {
        match self {
            InvStat::Ides | InvStat::Ipk => 1,
            InvStat::Ilpk => 0,
        }
    }

    fn stat_kind(self) -> StatKind {
        match self {
            InvStat::Ides => StatKind::Ides,
            InvStat::Ipk => StatKind::Ipk,
            InvStat::Ilpk => StatKind::Ilpk,
        }
    }
}

/// A family of refined distribution polynomials in `(s, t)`, indexed by the
/// permutation length `n = 0..=nmax`; `s` tracks pattern occurrences
/// (truncated at `smax`), `t` the shifted statistic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatPolyFamily {
    pub family: PatternFamily,
    pub stat: InvStat,
    pub smax: usize,
    pub polys: Vec<BivarPoly>,
}

impl StatPolyFamily {
    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }

    /// The avoidance polynomial: the `s^0` slice of row `n`.
    pub fn avoidance(&self, n: usize) -> IntPoly {
        self.polys[n].row(0)
    }

    /// Check the structural invariants: row 0 is 1, every row respects the
    /// statistic's degree bound, and setting `s = 1` gives total mass `n!`
    /// (only meaningful when `smax` covers all occurrence counts, so the
    /// mass check is applied when `smax >= (n-1)/(m-1)`).
    fn assert_invariants(&self) -> Result<()> {
        if self.polys[0] != BivarPoly::one() {
            return Err(Error::Consistency("length-0 polynomial must be 1".into()));
        }
        let mut factorial = BigInt::one();
        for (n, p) in self.polys.iter().enumerate() {
            if n > 0 {
                factorial *= BigInt::from(n as u64);
            }
            let tbound = match self.stat {
                InvStat::Ides => n,
                InvStat::Ipk => (n + 1) / 2,
                InvStat::Ilpk => n / 2,
            };
            if let Some(d) = p.second_degree() {
                if n > 0 && d > tbound {
                    return Err(Error::Consistency(format!(
                        "{} polynomial at n={} has t-degree {} above the bound {}",
                        self.stat.name(),
                        n,
                        d,
                        tbound
                    )));
                }
            }
            if n == 0 || self.smax * (self.family.m - 1) >= n.saturating_sub(1) {
                if p.total() != factorial {
                    return Err(Error::Consistency(format!(
                        "{} polynomial at n={} has mass {} instead of {}",
                        self.stat.name(),
                        n,
                        p.total(),
                        factorial
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Largest number of marked occurrences that can contribute at length
/// `nmax`: the cluster of `k` occurrences has length `(m-1)k + 1`.
fn kmax_for(m: usize, nmax: usize) -> usize {
    nmax.saturating_sub(1) / (m - 1)
}

/// `(s - 1)^k` truncated at degree `sdeg`.
fn s_minus_one_pow(k: usize, sdeg: usize) -> Vec<BigInt> {
    (0..=sdeg.min(k))
        .map(|i| {
            let b = crate::polyalg::binomial(k, i);
            if (k - i) % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// `(1 + t)^p` as an integer polynomial.
fn one_plus_t_pow(p: usize) -> IntPoly {
    IntPoly::from_coeffs((0..=p).map(|i| crate::polyalg::binomial(p, i)).collect())
}

/// `(1 - t)^p` as an integer polynomial.
fn one_minus_t_pow(p: usize) -> IntPoly {
    IntPoly::from_coeffs(
        (0..=p)
            .map(|i| {
                let b = crate::polyalg::binomial(p, i);
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect(),
    )
}

fn closure_series(
    m: usize,
    nmax: usize,
    smax: usize,
    stat: InvStat,
    variant: Variant,
) -> Result<TruncSeries> {
    let tdeg = 2 * nmax + 2;
    let kmax = kmax_for(m, nmax);
    let mut base = TruncSeries::zero(nmax, tdeg, smax);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    match stat {
        InvStat::Ides => {
            // t x / (1-t)^2
            let lead = ts_mul_poly(&geometric_pow(2, tdeg), &IntPoly::var(), tdeg);
            base.add_t_series_term(&lead, 1, &[BigInt::one()]);
            let cdes = uni_poly_family(m - 1, kmax.max(1), UniStat::Des)?;
            for k in 1..=kmax {
                let j = (m - 1) * k + 1;
                // t C(t) / (1-t)^(j+1), attached to x^j (s-1)^k
                let num = cdes[k - 1].shift_up(1);
                let ts = ts_mul_poly(&geometric_pow(j + 1, tdeg), &num, tdeg);
                base.add_t_series_term(&ts, j, &s_minus_one_pow(k, smax));
            }
        }
        InvStat::Ipk => {
            // 2 t x / (1-t)^2
            let lead = ts_mul_poly(&geometric_pow(2, tdeg), &IntPoly::var(), tdeg);
            let lead: Vec<Rat> = lead.iter().map(|c| c * Rat::from_integer(BigInt::from(2))).collect();
            base.add_t_series_term(&lead, 1, &[BigInt::one()]);
            let which = match variant {
                Variant::Head => UniStat::Pk,
                Variant::Tail => UniStat::Lpk,
            };
            let family = uni_poly_family(m - 1, kmax.max(1), which)?;
            for k in 1..=kmax {
                let j = (m - 1) * k + 1;
                // u C(u) (1+t)^(j+1) / (2 (1-t)^(j+1)) at x^j (s-1)^k
                let ucu = substitute_u(&family[k - 1].shift_up(1), tdeg);
                let ts = ts_mul_poly(&ucu, &one_plus_t_pow(j + 1), tdeg);
                let ts = ts_mul_series_scaled(&ts, &geometric_pow(j + 1, tdeg), &half, tdeg);
                base.add_t_series_term(&ts, j, &s_minus_one_pow(k, smax));
            }
        }
        InvStat::Ilpk => {
            // (1+t) x / (1-t)^2
            let lead = ts_mul_poly(&geometric_pow(2, tdeg), &one_plus_t_pow(1), tdeg);
            base.add_t_series_term(&lead, 1, &[BigInt::one()]);
            let family = uni_poly_family(m - 1, kmax.max(1), UniStat::Lpk)?;
            for k in 1..=kmax {
                let j = (m - 1) * k + 1;
                // C(u) (1+t)^j / (1-t)^(j+1) at x^j (s-1)^k
                let cu = substitute_u(&family[k - 1], tdeg);
                let ts = ts_mul_poly(&cu, &one_plus_t_pow(j), tdeg);
                let ts = ts_mul_series_scaled(&ts, &geometric_pow(j + 1, tdeg), &Rat::one(), tdeg);
                base.add_t_series_term(&ts, j, &s_minus_one_pow(k, smax));
            }
        }
    }
    base.hadamard_sum_closure()
}

fn ts_mul_series_scaled(a: &[Rat], b: &[Rat], scale: &Rat, tdeg: usize) -> Vec<Rat> {
    crate::polyalg::ts_mul_series(a, b, tdeg)
        .into_iter()
        .map(|c| c * scale)
        .collect()
}

/// Refined inverse-descent family for both pattern variants (their refined
/// distributions coincide); the requested variant is recorded in the
/// output.
pub fn ides_family(m: usize, variant: Variant, nmax: usize, smax: usize) -> Result<StatPolyFamily> {
    let family = PatternFamily::new(m, variant)?;
    let closure = closure_series(m, nmax, smax, InvStat::Ides, variant)?;
    let mut polys = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let rows: Vec<IntPoly> = (0..=smax)
            .map(|e| divide_out(&closure.t_series_at(n, e), n))
            .collect::<Result<_>>()?;
        polys.push(BivarPoly::from_rows(rows));
    }
    let out = StatPolyFamily {
        family,
        stat: InvStat::Ides,
        smax,
        polys,
    };
    out.assert_invariants()?;
    Ok(out)
}

/// Refined inverse-peak family; the head and tail variants genuinely differ
/// (the tail engine runs on the left-peak cluster polynomials).
pub fn ipk_family(m: usize, variant: Variant, nmax: usize, smax: usize) -> Result<StatPolyFamily> {
    let family = PatternFamily::new(m, variant)?;
    let closure = closure_series(m, nmax, smax, InvStat::Ipk, variant)?;
    let tdeg = closure.tdeg;
    let two = Rat::from_integer(BigInt::from(2));
    let mut polys = vec![BivarPoly::one()];
    for n in 1..=nmax {
        let onemt = one_minus_t_pow(n + 1);
        let invpt = crate::polyalg::inv_one_plus_t_pow(n + 1, tdeg);
        let rows: Vec<IntPoly> = (0..=smax)
            .map(|e| {
                let ts = closure.t_series_at(n, e);
                let h = ts_mul_poly(&ts, &onemt, tdeg);
                let h = ts_mul_series_scaled(&h, &invpt, &two, tdeg);
                unsubstitute_u(&h, (n + 1) / 2)
            })
            .collect::<Result<_>>()?;
        polys.push(BivarPoly::from_rows(rows));
    }
    let out = StatPolyFamily {
        family,
        stat: InvStat::Ipk,
        smax,
        polys,
    };
    out.assert_invariants()?;
    Ok(out)
}

/// Refined inverse-left-peak family (shared by both variants).
pub fn ilpk_family(m: usize, variant: Variant, nmax: usize, smax: usize) -> Result<StatPolyFamily> {
    let family = PatternFamily::new(m, variant)?;
    let closure = closure_series(m, nmax, smax, InvStat::Ilpk, variant)?;
    let tdeg = closure.tdeg;
    let mut polys = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let onemt = one_minus_t_pow(n + 1);
        let invpt = crate::polyalg::inv_one_plus_t_pow(n, tdeg);
        let rows: Vec<IntPoly> = (0..=smax)
            .map(|e| {
                let ts = closure.t_series_at(n, e);
                let h = ts_mul_poly(&ts, &onemt, tdeg);
                let h = ts_mul_series_scaled(&h, &invpt, &Rat::one(), tdeg);
                unsubstitute_u(&h, n / 2)
            })
            .collect::<Result<_>>()?;
        polys.push(BivarPoly::from_rows(rows));
    }
    let out = StatPolyFamily {
        family,
        stat: InvStat::Ilpk,
        smax,
        polys,
    };
    out.assert_invariants()?;
    Ok(out)
}

/// Dispatch by statistic.
pub fn fast_family(
    m: usize,
    variant: Variant,
    stat: InvStat,
    nmax: usize,
    smax: usize,
) -> Result<StatPolyFamily> {
    match stat {
        InvStat::Ides => ides_family(m, variant, nmax, smax),
        InvStat::Ipk => ipk_family(m, variant, nmax, smax),
        InvStat::Ilpk => ilpk_family(m, variant, nmax, smax),
    }
}

/// Brute-force oracle with the same output shape as the fast families:
/// scans the full symmetric group for every length.
pub fn brute_family(
    m: usize,
    variant: Variant,
    stat: InvStat,
    nmax: usize,
    max_n: usize,
) -> Result<StatPolyFamily> {
    let family = PatternFamily::new(m, variant)?;
    let sigma = family.pattern();
    let mut polys = vec![BivarPoly::one()];
    let mut smax = 0;
    for n in 1..=nmax {
        let p = brute_distribution(n, &sigma, stat.stat_kind(), stat.shift(), max_n)?;
        smax = smax.max(p.first_degree().unwrap_or(0));
        polys.push(p);
    }
    let out = StatPolyFamily {
        family,
        stat,
        smax,
        polys,
    };
    out.assert_invariants()?;
    Ok(out)
}

/// Result of verifying the unrefined cluster-method expansion for one
/// pattern.
#[derive(Clone, Debug)]
pub struct ClusterMethodReport {
    pub sigma: Perm,
    pub nmax: usize,
    /// Mismatches as `(n, s-exponent)`.
    pub failures: Vec<(usize, usize)>,
}

impl ClusterMethodReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify that the reciprocal of `1 - x - R(s-1, x)` built from enumerated
/// marked clusters reproduces the brute-force occurrence-refined
/// exponential generating function, exactly in `s` and `x`, for all lengths
/// up to `nmax`. Works for overlapping patterns too.
pub fn check_cluster_method(
    sigma: &Perm,
    nmax: usize,
    max_cluster_n: usize,
    max_brute_n: usize,
) -> Result<ClusterMethodReport> {
    let m = sigma.n();
    if nmax > max_brute_n {
        return Err(Error::ResourceLimit(format!(
            "cluster-method verification up to n={} exceeds the brute-force bound {}",
            nmax, max_brute_n
        )));
    }
    let counts = cluster_counts(sigma, nmax, max_cluster_n)?;
    let sdeg = nmax.saturating_sub(m) + 2;
    // D = 1 - x - R(s-1, x) as [x][s] rational coefficients of the EGF.
    let mut d = vec![vec![Rat::zero(); sdeg + 1]; nmax + 1];
    d[0][0] = Rat::one();
    d[1][0] = -Rat::one();
    let mut factorial = BigInt::one();
    for n in 1..=nmax {
        factorial *= BigInt::from(n as u64);
        for (k, &c) in counts[n].iter().enumerate() {
            if c == 0 {
                continue;
            }
            let weight = Rat::new(BigInt::from(c), factorial.clone());
            for (e, b) in s_minus_one_pow(k, sdeg).iter().enumerate() {
                d[n][e] = &d[n][e] - &weight * Rat::from_integer(b.clone());
            }
        }
    }
    // E = D^{-1}, truncated in x; D has constant coefficient 1.
    let mut e = vec![vec![Rat::zero(); sdeg + 1]; nmax + 1];
    e[0][0] = Rat::one();
    for n in 1..=nmax {
        let mut row = vec![Rat::zero(); sdeg + 1];
        for i in 1..=n {
            for sa in 0..=sdeg {
                if d[i][sa].is_zero() {
                    continue;
                }
                for sb in 0..=sdeg - sa {
                    row[sa + sb] = &row[sa + sb] - &d[i][sa] * &e[n - i][sb];
                }
            }
        }
        e[n] = row;
    }
    // Brute side: occurrence counts over the full symmetric group.
    let mut failures = Vec::new();
    let mut factorial = BigInt::one();
    for n in 1..=nmax {
        factorial *= BigInt::from(n as u64);
        let mut occ_counts = vec![0u64; sdeg + 1];
        for_each_perm(n, |w| {
            let pi = Perm::new(w.to_vec()).unwrap();
            occ_counts[pi.count_occurrences(sigma)] += 1;
        });
        for s in 0..=sdeg {
            let fast = &e[n][s] * Rat::from_integer(factorial.clone());
            if !fast.denom().is_one() || fast.numer() != &BigInt::from(occ_counts[s]) {
                failures.push((n, s));
            }
        }
    }
    Ok(ClusterMethodReport {
        sigma: sigma.clone(),
        nmax,
        failures,
    })
}
