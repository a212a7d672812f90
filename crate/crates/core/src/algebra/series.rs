use super::{integer, Rational};
use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

/// A power series truncated at a fixed order: coefficients of `t^0 ..= t^order`.
///
/// Binary operations truncate to the smaller of the two operand orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, integer(1))
    }

    /// `coeff · t^degree`, truncated to `order`.
    pub fn monomial(order: usize, degree: usize, coeff: Rational) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = coeff;
        }
        s
    }

    /// Builds a series from leading coefficients, zero-padded up to `order`.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for i in k..=order {
            s.coeffs[i] = self.coeffs[i - k].clone();
        }
        s
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    /// `exp(self)` for a series with zero constant term, via the recurrence
    /// `k·e_k = Σ_{j=1..k} j·a_j·e_{k-j}` obtained from `E' = A'·E`.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let order = self.order();
        let mut e = vec![Rational::zero(); order + 1];
        e[0] = integer(1);
        for k in 1..=order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += integer(j as i64) * &self.coeffs[j] * &e[k - j];
                }
            }
            e[k] = acc / integer(k as i64);
        }
        Some(PowerSeries { coeffs: e })
    }
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

/// Truncated Cauchy product.
impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}
