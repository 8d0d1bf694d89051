use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Formal power series with exact rational coefficients, truncated after
/// `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Terms past `order` are dropped; missing terms are zero.
    pub fn from_coefficients(order: usize, coeffs: Vec<BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// `-log(1 - x) = Σ_{k≥1} x^k / k`.
    pub fn neg_log_one_minus_x(order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 1..=order {
            s.coeffs[k] = BigRational::new(BigInt::one(), BigInt::from(k));
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "{what} needs a series without constant term"
            )))
        }
    }

    /// `log(1 + f) = Σ_{k≥1} (-1)^{k-1} f^k / k` for `f(0) = 0`; the sum is
    /// finite after truncation since `f^k = O(x^k)`.
    pub fn log_one_plus(&self) -> Result<Self> {
        self.require_no_constant("log(1 + f)")?;
        let order = self.order();
        let mut out = Self::zero(order);
        let mut power = self.clone();
        for k in 1..=order {
            let c = BigRational::new(
                if k % 2 == 1 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                },
                BigInt::from(k),
            );
            out = &out + &power.scale(&c);
            power = &power * self;
        }
        Ok(out)
    }

    /// `exp(f) = Σ_{k≥0} f^k / k!` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        self.require_no_constant("exp(f)")?;
        let order = self.order();
        let mut out = Self::one(order);
        let mut term = Self::one(order);
        for k in 1..=order {
            term = (&term * self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Product truncated at the common order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        let order = self.order();
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}
