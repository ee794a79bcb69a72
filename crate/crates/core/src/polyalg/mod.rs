//! Exact polynomial and truncated-power-series arithmetic.
//!
//! [`IntPoly`] and [`BivarPoly`] are dense polynomials over `BigInt`;
//! [`TruncSeries`] is a series in `x` truncated at a fixed order whose
//! coefficients are truncated series in `t` (and optionally a bounded-degree
//! polynomial variable `s`) over exact rationals. The Hadamard product acts
//! on the `t` variable only.

mod bivar;
mod intpoly;
mod series;

pub use bivar::BivarPoly;
pub use intpoly::IntPoly;
pub use series::{
    divide_out, geometric_pow, inv_one_plus_t_pow, substitute_u, ts_is_integral, ts_mul_poly,
    ts_mul_series, unsubstitute_u, TSeries, TruncSeries,
};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the series layer.
pub type Rat = BigRational;

/// `n choose k` over arbitrary-precision integers; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from(n - i);
        num /= BigInt::from(i + 1); // exact at every step: product of i+1 consecutive integers
    }
    num
}
