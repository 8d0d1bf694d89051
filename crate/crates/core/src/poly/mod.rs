//! Dense integer polynomials in `q` and the game polynomial `φ_T(q)`.

mod montecarlo;
mod phi;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use montecarlo::{
    estimate_event_probability, sample_event, trial_rng, MonteCarloEstimate, Trial,
};
pub use phi::{phi, phi_via_prunings};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. Trailing zeros are never stored; the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn q() -> Self {
        IntPolynomial::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coefficients(vec![c.into()])
    }

    /// `c q^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        IntPolynomial::from_coefficients(coeffs)
    }

    pub fn from_coefficients<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = IntPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    #[cfg(test)]
    pub(crate) fn coefficients_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    /// Coefficient of `q^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in exact rationals.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(-q)`.
    pub fn compose_neg_q(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial { coeffs }
    }

    /// `p(q²)`.
    pub fn compose_q_squared(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// `q^k p(q)`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// `p(q) (1 + q)^k`, by `k` rounds of adding the shifted polynomial.
    pub fn mul_one_plus_q_pow(&self, k: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        for _ in 0..k {
            coeffs.push(BigInt::zero());
            for d in (1..coeffs.len()).rev() {
                let lower = coeffs[d - 1].clone();
                coeffs[d] += lower;
            }
        }
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(IntPolynomial::one(), |acc, _| acc * self)
    }

    /// Coefficients weakly increase and then weakly decrease.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut k = 0;
        while k + 1 < c.len() && c[k] <= c[k + 1] {
            k += 1;
        }
        while k + 1 < c.len() && c[k] >= c[k + 1] {
            k += 1;
        }
        k + 1 >= c.len()
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Ascending terms, e.g. `1 + 2*q - q^3`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{magnitude}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{magnitude}*q^{k}")?,
            }
        }
        Ok(())
    }
}
