//! Truncated power series in `x` over truncated series in `t`, with an
//! optional bounded-degree refinement variable `s`, and the univariate
//! `t`-series operations used to extract polynomial families from them.
//!
//! The Hadamard product acts term-wise on `t` only: the coefficient of `t^m`
//! in `f * g` is the ordinary `(x, s)`-product of the `t^m` coefficients of
//! `f` and `g`. Because of that, all Hadamard machinery here works one
//! `t`-slice at a time.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, IntPoly, Rat};
use crate::{Error, Result};

/// Univariate series in `t`, truncated at `len() - 1`.
pub type TSeries = Vec<Rat>;

/// Power series truncated at `x^xdeg`, with coefficients truncated at
/// `t^tdeg` and carrying a polynomial variable `s` truncated at `s^sdeg`.
///
/// Truncation orders are fixed at construction and all arithmetic preserves
/// them; results are exact up to the stated orders.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    pub xdeg: usize,
    pub tdeg: usize,
    pub sdeg: usize,
    /// coeff[t][x][s]
    coeff: Vec<Vec<Vec<Rat>>>,
}

impl TruncSeries {
    pub fn zero(xdeg: usize, tdeg: usize, sdeg: usize) -> Self {
        TruncSeries {
            xdeg,
            tdeg,
            sdeg,
            coeff: vec![vec![vec![Rat::zero(); sdeg + 1]; xdeg + 1]; tdeg + 1],
        }
    }

    /// The Hadamard identity in `t`: the all-ones series `sum_m t^m`.
    pub fn hadamard_one(xdeg: usize, tdeg: usize, sdeg: usize) -> Self {
        let mut s = TruncSeries::zero(xdeg, tdeg, sdeg);
        for m in 0..=tdeg {
            s.coeff[m][0][0] = Rat::one();
        }
        s
    }

    pub fn get(&self, x: usize, t: usize, s: usize) -> &Rat {
        &self.coeff[t][x][s]
    }

    pub fn add_assign_at(&mut self, x: usize, t: usize, s: usize, v: Rat) {
        let c = &mut self.coeff[t][x][s];
        *c = &*c + v;
    }

    /// Add `series_in_t x^xexp * s_poly(s)` to `self`, clipping to the
    /// truncation box.
    pub fn add_t_series_term(&mut self, ts: &[Rat], xexp: usize, s_poly: &[BigInt]) {
        if xexp > self.xdeg {
            return;
        }
        for (m, c) in ts.iter().enumerate().take(self.tdeg + 1) {
            if c.is_zero() {
                continue;
            }
            for (e, b) in s_poly.iter().enumerate().take(self.sdeg + 1) {
                if b.is_zero() {
                    continue;
                }
                self.add_assign_at(xexp, m, e, c * Rat::from_integer(b.clone()));
            }
        }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &TruncSeries, f: impl Fn(&Rat, &Rat) -> Rat) -> TruncSeries {
        assert_eq!((self.xdeg, self.tdeg, self.sdeg), (other.xdeg, other.tdeg, other.sdeg));
        let mut out = TruncSeries::zero(self.xdeg, self.tdeg, self.sdeg);
        for m in 0..=self.tdeg {
            for x in 0..=self.xdeg {
                for s in 0..=self.sdeg {
                    out.coeff[m][x][s] = f(&self.coeff[m][x][s], &other.coeff[m][x][s]);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeff
            .iter()
            .all(|t| t.iter().all(|x| x.iter().all(|c| c.is_zero())))
    }

    /// Ordinary (non-Hadamard) truncated product in all three variables.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!((self.xdeg, self.tdeg, self.sdeg), (other.xdeg, other.tdeg, other.sdeg));
        let mut out = TruncSeries::zero(self.xdeg, self.tdeg, self.sdeg);
        for ta in 0..=self.tdeg {
            for xa in 0..=self.xdeg {
                for sa in 0..=self.sdeg {
                    let a = &self.coeff[ta][xa][sa];
                    if a.is_zero() {
                        continue;
                    }
                    for tb in 0..=self.tdeg - ta {
                        for xb in 0..=self.xdeg - xa {
                            for sb in 0..=self.sdeg - sa {
                                let b = &other.coeff[tb][xb][sb];
                                if b.is_zero() {
                                    continue;
                                }
                                let c = &mut out.coeff[ta + tb][xa + xb][sa + sb];
                                *c = &*c + a * b;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Hadamard product in `t`: slice-wise ordinary `(x, s)` products.
    pub fn hadamard_mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!((self.xdeg, self.tdeg, self.sdeg), (other.xdeg, other.tdeg, other.sdeg));
        let mut out = TruncSeries::zero(self.xdeg, self.tdeg, self.sdeg);
        for m in 0..=self.tdeg {
            out.coeff[m] = xs_mul(&self.coeff[m], &other.coeff[m], self.xdeg, self.sdeg);
        }
        out
    }

    /// `n`-fold Hadamard power; the 0th power is the all-ones series.
    pub fn hadamard_power(&self, n: usize) -> TruncSeries {
        let mut acc = TruncSeries::hadamard_one(self.xdeg, self.tdeg, self.sdeg);
        for _ in 0..n {
            acc = acc.hadamard_mul(self);
        }
        acc
    }

    /// `sum_{n>=0} self^{*<n>}`, the Hadamard geometric sum. Every monomial
    /// of `self` must have `x`-exponent at least 1, so that each `t`-slice
    /// sums to the truncated inverse of `1 - slice`; otherwise the sum
    /// diverges and an error is returned.
    pub fn hadamard_sum_closure(&self) -> Result<TruncSeries> {
        for (m, slice) in self.coeff.iter().enumerate() {
            if slice[0].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidInput(format!(
                    "hadamard closure of a series with an x-free monomial at t^{}",
                    m
                )));
            }
        }
        let mut out = TruncSeries::zero(self.xdeg, self.tdeg, self.sdeg);
        for m in 0..=self.tdeg {
            out.coeff[m] = xs_geometric_sum(&self.coeff[m], self.xdeg, self.sdeg);
        }
        Ok(out)
    }

    /// The `t`-series at fixed `x`- and `s`-exponents.
    pub fn t_series_at(&self, x: usize, s: usize) -> TSeries {
        (0..=self.tdeg).map(|m| self.coeff[m][x][s].clone()).collect()
    }
}

/// Ordinary truncated product of two `(x, s)` coefficient matrices.
fn xs_mul(a: &[Vec<Rat>], b: &[Vec<Rat>], xdeg: usize, sdeg: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::zero(); sdeg + 1]; xdeg + 1];
    for xa in 0..=xdeg {
        for sa in 0..=sdeg {
            let va = &a[xa][sa];
            if va.is_zero() {
                continue;
            }
            for xb in 0..=xdeg - xa {
                for sb in 0..=sdeg - sa {
                    let vb = &b[xb][sb];
                    if vb.is_zero() {
                        continue;
                    }
                    let c = &mut out[xa + xb][sa + sb];
                    *c = &*c + va * vb;
                }
            }
        }
    }
    out
}

/// `sum_{n>=0} M^n = (1 - M)^{-1}` for a matrix `M` with zero `x^0` row,
/// truncated at (`xdeg`, `sdeg`).
fn xs_geometric_sum(m: &[Vec<Rat>], xdeg: usize, sdeg: usize) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![Rat::zero(); sdeg + 1]; xdeg + 1];
    out[0][0] = Rat::one();
    for x in 1..=xdeg {
        // out[x] = sum_{i=1..x} M[i] * out[x-i]  (product in s, truncated)
        let mut row = vec![Rat::zero(); sdeg + 1];
        for i in 1..=x {
            for sa in 0..=sdeg {
                let va = &m[i][sa];
                if va.is_zero() {
                    continue;
                }
                for sb in 0..=sdeg - sa {
                    let vb = &out[x - i][sb];
                    if vb.is_zero() {
                        continue;
                    }
                    let c = &mut row[sa + sb];
                    *c = &*c + va * vb;
                }
            }
        }
        out[x] = row;
    }
    out
}

/// `1/(1-t)^j` truncated at degree `tdeg` (all-ones series for `j = 1`).
pub fn geometric_pow(j: usize, tdeg: usize) -> TSeries {
    (0..=tdeg)
        .map(|m| {
            if j == 0 {
                if m == 0 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            } else {
                Rat::from_integer(binomial(m + j - 1, j - 1))
            }
        })
        .collect()
}

/// `1/(1+t)^j` truncated at degree `tdeg`.
pub fn inv_one_plus_t_pow(j: usize, tdeg: usize) -> TSeries {
    geometric_pow(j, tdeg)
        .into_iter()
        .enumerate()
        .map(|(m, b)| if m % 2 == 0 { b } else { -b })
        .collect()
}

/// Truncated product of two `t`-series (lengths give the truncation).
pub fn ts_mul_series(a: &[Rat], b: &[Rat], tdeg: usize) -> TSeries {
    let mut out = vec![Rat::zero(); tdeg + 1];
    for (i, va) in a.iter().enumerate().take(tdeg + 1) {
        if va.is_zero() {
            continue;
        }
        for (j, vb) in b.iter().enumerate().take(tdeg + 1 - i) {
            if vb.is_zero() {
                continue;
            }
            let c = &mut out[i + j];
            *c = &*c + va * vb;
        }
    }
    out
}

/// Truncated product of a `t`-series with an integer polynomial.
pub fn ts_mul_poly(a: &[Rat], p: &IntPoly, tdeg: usize) -> TSeries {
    let pb: Vec<Rat> = p.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
    ts_mul_series(a, &pb, tdeg)
}

/// True when every entry is an integer.
pub fn ts_is_integral(a: &[Rat]) -> bool {
    a.iter().all(|c| c.denom().is_one())
}

/// Exact composition `g(u(t))` truncated at degree `tdeg`, where
/// `u = 4t/(1+t)^2 = sum_j (-1)^(j+1) 4j t^j`.
pub fn substitute_u(g: &IntPoly, tdeg: usize) -> TSeries {
    let u = u_series(tdeg);
    let mut acc = vec![Rat::zero(); tdeg + 1];
    // Horner from the top coefficient down.
    for d in (0..g.coeffs().len()).rev() {
        acc = ts_mul_series(&acc, &u, tdeg);
        acc[0] = &acc[0] + Rat::from_integer(g.coeff(d));
    }
    acc
}

fn u_series(tdeg: usize) -> TSeries {
    (0..=tdeg)
        .map(|j| {
            if j == 0 {
                Rat::zero()
            } else {
                let c = BigInt::from(4 * j as i64);
                Rat::from_integer(if j % 2 == 1 { c } else { -c })
            }
        })
        .collect()
}

/// Invert [`substitute_u`]: find the unique polynomial `g` of degree at most
/// `dmax` with `h = g(u(t))`, by triangular elimination (`u^j` has `t`-order
/// `j` with leading coefficient `4^j`). The residual must vanish through the
/// full truncation of `h` and the coefficients of `g` must be integers;
/// anything else reports a consistency error.
pub fn unsubstitute_u(h: &[Rat], dmax: usize) -> Result<IntPoly> {
    let tdeg = h.len() - 1;
    if tdeg < 2 * dmax {
        return Err(Error::InvalidInput(format!(
            "series truncated at t^{} is too short to unsubstitute with degree bound {}",
            tdeg, dmax
        )));
    }
    let u = u_series(tdeg);
    let mut u_pow = vec![Rat::zero(); tdeg + 1];
    u_pow[0] = Rat::one();
    let mut residual = h.to_vec();
    let mut coeffs = Vec::with_capacity(dmax + 1);
    let four = Rat::from_integer(BigInt::from(4));
    let mut lead = Rat::one(); // 4^j
    for j in 0..=dmax {
        let g_j = &residual[j] / &lead;
        if !g_j.denom().is_one() {
            return Err(Error::Consistency(format!(
                "non-integral coefficient {} at degree {} while inverting the u-substitution",
                g_j, j
            )));
        }
        for (m, c) in u_pow.iter().enumerate() {
            residual[m] = &residual[m] - &g_j * c;
        }
        coeffs.push(g_j.to_integer());
        u_pow = ts_mul_series(&u_pow, &u, tdeg);
        lead = &lead * &four;
    }
    if let Some(m) = residual.iter().position(|c| !c.is_zero()) {
        return Err(Error::Consistency(format!(
            "nonzero residual at t^{} after inverting the u-substitution with degree bound {}",
            m, dmax
        )));
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Multiply a truncated `t`-series by `(1-t)^(n+1)` and assert the product
/// is an integer polynomial of degree at most `n + 1`; the non-vanishing
/// tail is checked through the full truncation of the input.
pub fn divide_out(series: &[Rat], n: usize) -> Result<IntPoly> {
    let tdeg = series.len() - 1;
    if tdeg < 2 * n + 2 {
        return Err(Error::InvalidInput(format!(
            "series truncated at t^{} is too short to divide out (1-t)^{}",
            tdeg,
            n + 1
        )));
    }
    // (1-t)^(n+1) expanded with alternating binomial coefficients.
    let mut onemt = IntPoly::one();
    let step = IntPoly::from_i64s(&[1, -1]);
    for _ in 0..=n {
        onemt = onemt.mul(&step);
    }
    let prod = ts_mul_poly(series, &onemt, tdeg);
    for (m, c) in prod.iter().enumerate() {
        if m > n + 1 && !c.is_zero() {
            return Err(Error::Consistency(format!(
                "non-vanishing tail coefficient {} at t^{} after multiplying by (1-t)^{}",
                c,
                m,
                n + 1
            )));
        }
        if m <= n + 1 && !c.denom().is_one() {
            return Err(Error::Consistency(format!(
                "non-integral coefficient {} at t^{} after multiplying by (1-t)^{}",
                c,
                m,
                n + 1
            )));
        }
    }
    Ok(IntPoly::from_coeffs(
        prod[..=n + 1].iter().map(|c| c.to_integer()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn u_expansion_matches_closed_form() {
        // u = 4t - 8t^2 + 12t^3 - 16t^4 + ...
        let u = substitute_u(&IntPoly::var(), 4);
        assert_eq!(u, vec![rat(0), rat(4), rat(-8), rat(12), rat(-16)]);
        // constant polynomials pass through
        assert_eq!(substitute_u(&IntPoly::one(), 3)[0], rat(1));
        // t^2 -> 16 t^2 when truncated at degree 2
        let sq = substitute_u(&IntPoly::monomial(BigInt::from(1), 2), 2);
        assert_eq!(sq, vec![rat(0), rat(0), rat(16)]);
    }

    #[test]
    fn unsubstitute_round_trips() {
        let g = IntPoly::from_i64s(&[1, 10, 4]);
        let h = substitute_u(&g, 10);
        assert_eq!(unsubstitute_u(&h, 2).unwrap(), g);
        // linear case from first principles
        let h = substitute_u(&IntPoly::var(), 4);
        assert_eq!(unsubstitute_u(&h, 1).unwrap(), IntPoly::var());
    }

    #[test]
    fn unsubstitute_rejects_off_image_series() {
        // 4t - 8t^2 + 13t^3 is not g(u) for any linear g.
        let h = vec![rat(0), rat(4), rat(-8), rat(13)];
        assert!(unsubstitute_u(&h, 1).is_err());
    }

    #[test]
    fn divide_out_round_trips() {
        // (t + 2t^2)/(1-t)^3 expanded, then recovered with n = 2.
        let num = IntPoly::from_i64s(&[0, 1, 2]);
        let series = ts_mul_poly(&geometric_pow(3, 12), &num, 12);
        assert_eq!(divide_out(&series, 2).unwrap(), num);
    }

    #[test]
    fn divide_out_accepts_polynomial_result_below_bound() {
        // 1/(1-t) * (1-t)^4 = (1-t)^3, a polynomial of degree 3 = n.
        let series = geometric_pow(1, 10);
        let got = divide_out(&series, 3).unwrap();
        assert_eq!(got, IntPoly::from_i64s(&[1, -3, 3, -1]));
    }

    #[test]
    fn divide_out_rejects_non_polynomial() {
        // 1/(1-t)^4 * (1-t)^3 = 1/(1-t): tail never vanishes.
        let series = geometric_pow(4, 10);
        assert!(divide_out(&series, 2).is_err());
    }

    #[test]
    fn hadamard_product_is_termwise_in_t() {
        // (1 + 2t) * (1 + 3t) = 1 + 6t under the Hadamard product.
        let mut a = TruncSeries::zero(0, 1, 0);
        a.add_assign_at(0, 0, 0, rat(1));
        a.add_assign_at(0, 1, 0, rat(2));
        let mut b = TruncSeries::zero(0, 1, 0);
        b.add_assign_at(0, 0, 0, rat(1));
        b.add_assign_at(0, 1, 0, rat(3));
        let h = a.hadamard_mul(&b);
        assert_eq!(*h.get(0, 0, 0), rat(1));
        assert_eq!(*h.get(0, 1, 0), rat(6));
    }

    #[test]
    fn hadamard_power_one_is_identity() {
        let mut f = TruncSeries::zero(2, 2, 1);
        f.add_assign_at(1, 1, 0, rat(3));
        f.add_assign_at(2, 2, 1, rat(-5));
        assert_eq!(f.hadamard_power(1), f);
        assert_eq!(
            f.hadamard_power(0),
            TruncSeries::hadamard_one(2, 2, 1)
        );
    }

    #[test]
    fn closure_is_geometric_fixpoint() {
        // closure = ones + f * closure (Hadamard in t).
        let mut f = TruncSeries::zero(3, 2, 1);
        f.add_assign_at(1, 0, 0, rat(2));
        f.add_assign_at(1, 1, 1, rat(1));
        f.add_assign_at(2, 2, 0, rat(-3));
        let c = f.hadamard_sum_closure().unwrap();
        let rhs = TruncSeries::hadamard_one(3, 2, 1).add(&f.hadamard_mul(&c));
        assert_eq!(c, rhs);
    }

    #[test]
    fn closure_refuses_x_free_monomials() {
        let mut f = TruncSeries::zero(2, 1, 0);
        f.add_assign_at(0, 1, 0, rat(1));
        assert!(f.hadamard_sum_closure().is_err());
    }

    #[test]
    fn worked_hadamard_power_example() {
        // f = 3xt + t^2/(1-xy) has n-fold Hadamard power
        // (3x)^n t + t^2/(1-xy)^n; check n = 3 through x^4 with s playing y.
        let xdeg = 4;
        let sdeg = 4;
        let mut f = TruncSeries::zero(xdeg, 2, sdeg);
        f.add_assign_at(1, 1, 0, rat(3));
        for i in 0..=xdeg.min(sdeg) {
            f.add_assign_at(i, 2, i, rat(1)); // 1/(1-xy) = sum (xy)^i
        }
        let p = f.hadamard_power(3);
        assert_eq!(*p.get(3, 1, 0), rat(27));
        assert_eq!(*p.get(1, 1, 0), rat(0));
        // t^2 slice: 1/(1-xy)^3 = sum C(i+2,2) (xy)^i
        for i in 0..=xdeg.min(sdeg) {
            assert_eq!(
                *p.get(i, 2, i),
                Rat::from_integer(binomial(i + 2, 2))
            );
        }
        // the t^0 slice of f is zero, so it stays zero in the cube
        assert_eq!(*p.get(0, 0, 0), rat(0));
    }
}
