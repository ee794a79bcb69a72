use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;

/// Dense bivariate polynomial over arbitrary-precision integers.
///
/// `rows[i]` is the coefficient polynomial of the *first* variable's
/// exponent `i`, as a polynomial in the *second* variable. Which letters the
/// two variables stand for depends on use: joint statistic distributions use
/// `(t, y)`, refined pattern families use `(s, t)`. The bounding box is kept
/// tight (no zero top row).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivarPoly {
    rows: Vec<IntPoly>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        BivarPoly {
            rows: vec![IntPoly::one()],
        }
    }

    pub fn monomial(c: BigInt, i: usize, j: usize) -> Self {
        let mut rows = vec![IntPoly::zero(); i + 1];
        rows[i] = IntPoly::monomial(c, j);
        BivarPoly::from_rows(rows)
    }

    pub fn from_rows(mut rows: Vec<IntPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BivarPoly { rows }
    }

    /// Build from a grid of `u64` counts, `grid[i][j]`.
    pub fn from_counts(grid: &[Vec<u64>]) -> Self {
        BivarPoly::from_rows(
            grid.iter()
                .map(|row| {
                    IntPoly::from_coeffs(row.iter().map(|&c| BigInt::from(c)).collect())
                })
                .collect(),
        )
    }

    /// Interpret a univariate polynomial in the first variable.
    pub fn from_first_var(p: &IntPoly) -> Self {
        BivarPoly::from_rows(
            p.coeffs()
                .iter()
                .map(|c| IntPoly::constant(c.clone()))
                .collect(),
        )
    }

    /// Interpret a univariate polynomial in the second variable.
    pub fn from_second_var(p: &IntPoly) -> Self {
        BivarPoly::from_rows(vec![p.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[IntPoly] {
        &self.rows
    }

    /// Degree in the first variable, `None` for zero.
    pub fn first_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in the second variable, `None` for zero.
    pub fn second_degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.rows.get(i).map_or_else(BigInt::zero, |r| r.coeff(j))
    }

    /// The coefficient polynomial (in the second variable) of first-variable
    /// exponent `i`.
    pub fn row(&self, i: usize) -> IntPoly {
        self.rows.get(i).cloned().unwrap_or_else(IntPoly::zero)
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut rows = vec![IntPoly::zero(); self.rows.len().max(other.rows.len())];
        for (i, r) in self.rows.iter().enumerate() {
            rows[i] = rows[i].add(r);
        }
        for (i, r) in other.rows.iter().enumerate() {
            rows[i] = rows[i].add(r);
        }
        BivarPoly::from_rows(rows)
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly {
            rows: self.rows.iter().map(|r| r.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero();
        }
        let mut rows = vec![IntPoly::zero(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j] = rows[i + j].add(&a.mul(b));
            }
        }
        BivarPoly::from_rows(rows)
    }

    pub fn scale(&self, c: &BigInt) -> BivarPoly {
        BivarPoly::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    /// Multiply by `first^a * second^b`.
    pub fn shift(&self, a: usize, b: usize) -> BivarPoly {
        if self.is_zero() {
            return BivarPoly::zero();
        }
        let mut rows = vec![IntPoly::zero(); a];
        rows.extend(self.rows.iter().map(|r| r.shift_up(b)));
        BivarPoly { rows }
    }

    /// Partial derivative with respect to the first variable.
    pub fn deriv_first(&self) -> BivarPoly {
        if self.rows.len() <= 1 {
            return BivarPoly::zero();
        }
        BivarPoly::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.scale(&BigInt::from(i)))
                .collect(),
        )
    }

    /// Partial derivative with respect to the second variable.
    pub fn deriv_second(&self) -> BivarPoly {
        BivarPoly::from_rows(self.rows.iter().map(|r| r.derivative()).collect())
    }

    /// Set the first variable to 1, leaving a polynomial in the second.
    pub fn eval_first_one(&self) -> IntPoly {
        self.rows
            .iter()
            .fold(IntPoly::zero(), |acc, r| acc.add(r))
    }

    /// Set the second variable to 1, leaving a polynomial in the first.
    pub fn eval_second_one(&self) -> IntPoly {
        IntPoly::from_coeffs(self.rows.iter().map(|r| r.eval_one()).collect())
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.rows.iter().map(|r| r.eval_one()).sum()
    }

    /// Swap the roles of the two variables.
    pub fn transpose(&self) -> BivarPoly {
        let jmax = match self.second_degree() {
            None => return BivarPoly::zero(),
            Some(j) => j,
        };
        let rows = (0..=jmax)
            .map(|j| {
                IntPoly::from_coeffs(self.rows.iter().map(|r| r.coeff(j)).collect())
            })
            .collect();
        BivarPoly::from_rows(rows)
    }

    /// Render with explicit variable names, ascending in the first then the
    /// second exponent, e.g. `t^2+t^2y+ty` for variables `("t", "y")`.
    pub fn format_vars(&self, first: &str, second: &str) -> String {
        use num_traits::Signed;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !out.is_empty() && c.is_positive() {
                    out.push('+');
                }
                if c.is_negative() {
                    out.push('-');
                }
                let unsigned = c.abs().to_string();
                let has_var = i > 0 || j > 0;
                if unsigned != "1" || !has_var {
                    out.push_str(&unsigned);
                }
                if i > 0 {
                    out.push_str(first);
                    if i > 1 {
                        out.push_str(&format!("^{}", i));
                    }
                }
                if j > 0 {
                    out.push_str(second);
                    if j > 1 {
                        out.push_str(&format!("^{}", j));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_vars("t", "y"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_shape() {
        let p = BivarPoly::monomial(BigInt::from(3), 2, 1);
        assert_eq!(p.first_degree(), Some(2));
        assert_eq!(p.second_degree(), Some(1));
        assert_eq!(p.coeff(2, 1), BigInt::from(3));
        assert_eq!(p.coeff(0, 0), BigInt::from(0));
    }

    #[test]
    fn mul_and_specialize() {
        // (t + y)^2 = t^2 + 2ty + y^2
        let t = BivarPoly::monomial(BigInt::from(1), 1, 0);
        let y = BivarPoly::monomial(BigInt::from(1), 0, 1);
        let sq = t.add(&y).mul(&t.add(&y));
        assert_eq!(sq.coeff(1, 1), BigInt::from(2));
        assert_eq!(sq.eval_first_one().to_string(), "1+2t+t^2");
        assert_eq!(sq.total(), BigInt::from(4));
    }

    #[test]
    fn transpose_round_trip() {
        let p = BivarPoly::from_counts(&[vec![1, 2], vec![0, 3, 4]]);
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!(p.transpose().coeff(1, 0), BigInt::from(2));
    }

    #[test]
    fn derivative_rules() {
        // d/dt (t^2 y) = 2 t y, d/dy (t^2 y) = t^2
        let p = BivarPoly::monomial(BigInt::from(1), 2, 1);
        assert_eq!(p.deriv_first(), BivarPoly::monomial(BigInt::from(2), 1, 1));
        assert_eq!(p.deriv_second(), BivarPoly::monomial(BigInt::from(1), 2, 0));
    }

    #[test]
    fn formatting() {
        let p = BivarPoly::from_counts(&[vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(p.format_vars("t", "y"), "ty+t^2+t^2y");
    }
}
