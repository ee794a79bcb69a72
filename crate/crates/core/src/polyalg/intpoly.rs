use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense univariate polynomial over arbitrary-precision integers.
///
/// Coefficients are stored in ascending degree order with no trailing zeros;
/// the zero polynomial is the empty coefficient vector and its degree is
/// `None`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::from(1))
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        IntPoly::from_coeffs(vec![BigInt::from(0), BigInt::from(1)])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::from(0); degree + 1];
        coeffs[degree] = c;
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sum of all coefficients, i.e. the value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Sign of the value at the rational point `num/den` (`den > 0`),
    /// computed homogeneously (`sum c_i num^i den^(deg-i)`) so only integer
    /// arithmetic is used.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        debug_assert!(den.is_positive());
        let n = match self.degree() {
            Some(n) => n,
            None => return 0,
        };
        let mut total = BigInt::zero();
        let mut num_pow = BigInt::from(1);
        let mut den_pows = vec![BigInt::from(1); n + 1];
        for i in 1..=n {
            den_pows[i] = &den_pows[i - 1] * den;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += c * &num_pow * &den_pows[n - i];
            }
            if i < n {
                num_pow *= num;
            }
        }
        bigint_sign(&total)
    }

    /// Sign of the leading coefficient (0 for the zero polynomial).
    pub fn sign_at_pos_infinity(&self) -> i8 {
        self.leading().map_or(0, bigint_sign)
    }

    pub fn sign_at_neg_infinity(&self) -> i8 {
        match self.degree() {
            None => 0,
            Some(n) => {
                let s = self.sign_at_pos_infinity();
                if n % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content, keeping coefficient signs.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division; `None` when `other` does not divide `self` over the
    /// integers.
    pub fn exact_div(&self, other: &IntPoly) -> Option<IntPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dn = self.degree()?;
        let dd = other.degree()?;
        if dn < dd {
            return None;
        }
        let lead = other.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quo[i] = q.clone();
            for (j, c) in other.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quo))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`,
    /// computed without fractions. Requires `deg self >= deg d` and `d != 0`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut steps = self.degree().map_or(0, |n| n + 1 - dd);
        while let Some(rn) = rem.degree() {
            if rn < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            // rem <- lc(d)*rem - top * t^(rn-dd) * d
            let mut next = rem.scale(&lead);
            next = next.sub(&d.shift_up(rn - dd).scale(&top));
            debug_assert!(next.degree().map_or(true, |m| m < rn));
            rem = next;
            steps -= 1;
        }
        // Pad with the remaining multiplier so the result is exactly
        // lc^(delta+1) * (self mod d).
        for _ in 0..steps {
            rem = rem.scale(&lead);
        }
        rem
    }

    /// Coefficient reversal: `t^d * p(1/t)` where `d = deg p`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    /// Render with an arbitrary variable name, e.g. `1+10t+4t^2`.
    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() && c.is_positive() {
                out.push('+');
            }
            let unsigned = c.abs().to_string();
            if c.is_negative() {
                out.push('-');
            }
            match i {
                0 => out.push_str(&unsigned),
                _ => {
                    if unsigned != "1" {
                        out.push_str(&unsigned);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{}", i));
                    }
                }
            }
        }
        out
    }
}

fn bigint_sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    #[test]
    fn normalization_and_degree() {
        assert!(IntPoly::from_i64s(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[1, 2, 3]).degree(), Some(2));
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = p(&[1, -2, 5]);
        let b = p(&[0, 7, 0, 3]);
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn pseudo_rem_matches_rational_remainder() {
        // (t^3 + 2t + 1) mod (2t^2 + 3): remainder t/2 + 1 up to the
        // multiplier lc^2 = 4, so pseudo remainder is 2t + 4.
        let a = p(&[1, 2, 0, 1]);
        let d = p(&[3, 0, 2]);
        assert_eq!(a.pseudo_rem(&d), p(&[4, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]); // (t+1)^2
        let d = p(&[1, 1]);
        assert_eq!(a.exact_div(&d), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 1, 1]).exact_div(&d), None);
    }

    #[test]
    fn sign_at_rational_points() {
        let f = p(&[-1, 0, 1]); // t^2 - 1
        assert_eq!(f.sign_at(&BigInt::from(0), &BigInt::from(1)), -1);
        assert_eq!(f.sign_at(&BigInt::from(3), &BigInt::from(2)), 1);
        assert_eq!(f.sign_at(&BigInt::from(1), &BigInt::from(1)), 0);
        assert_eq!(f.sign_at_neg_infinity(), 1);
        assert_eq!(p(&[0, 1]).sign_at_neg_infinity(), -1);
    }

    #[test]
    fn display_matches_table_style() {
        assert_eq!(p(&[1, 10, 4]).to_string(), "1+10t+4t^2");
        assert_eq!(p(&[0, 1, 22, 58, 24]).to_string(), "t+22t^2+58t^3+24t^4");
        assert_eq!(p(&[0, -1, 1]).to_string(), "-t+t^2");
    }

    #[test]
    fn reversal() {
        assert_eq!(p(&[1, 10, 4]).reversed(), p(&[4, 10, 1]));
    }
}
