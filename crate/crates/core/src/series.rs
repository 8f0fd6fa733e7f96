//! Truncated power series in `u` with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::gaussian::GaussianRational;
use crate::rational;

/// `Σ_{j ≤ K} c_j u^j + O(u^{K+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct USeries {
    coefficients: Vec<GaussianRational>,
}

impl USeries {
    /// The zero series known up to and including `u^order`.
    pub fn zero(order: usize) -> Self {
        USeries { coefficients: vec![GaussianRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = c;
        s
    }

    pub fn from_coefficients(coefficients: Vec<GaussianRational>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs at least the constant term");
        USeries { coefficients }
    }

    /// Highest power of `u` that is exact.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[GaussianRational] {
        &self.coefficients
    }

    /// Coefficient of `u^j`; zero past the truncation order.
    pub fn coefficient(&self, j: usize) -> GaussianRational {
        self.coefficients.get(j).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_to(&mut self, j: usize, c: &GaussianRational) {
        if let Some(slot) = self.coefficients.get_mut(j) {
            *slot += c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        USeries { coefficients: self.coefficients[..keep].to_vec() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        USeries { coefficients: self.coefficients.iter().map(|a| a * c).collect() }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        USeries { coefficients: self.coefficients.iter().map(|a| a.scale(c)).collect() }
    }

    /// Every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coefficients.iter().all(GaussianRational::is_real)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Lowest power with a non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    /// `cos(c·u)`, with `c` rational.
    pub fn cos(c: &BigRational, order: usize) -> Self {
        Self::trig(c, order, 0)
    }

    /// `sin(c·u)`, with `c` rational.
    pub fn sin(c: &BigRational, order: usize) -> Self {
        Self::trig(c, order, 1)
    }

    fn trig(c: &BigRational, order: usize, parity: usize) -> Self {
        let mut out = Self::zero(order);
        let mut power = BigRational::one();
        let mut fact = BigRational::one();
        for j in 0..=order {
            if j > 0 {
                power *= c;
                fact *= rational::int(j as i64);
            }
            if j % 2 == parity {
                let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
                out.coefficients[j] = GaussianRational::real(&power / &fact * rational::int(sign));
            }
        }
        out
    }
}

impl<'a> Add<&'a USeries> for &'a USeries {
    type Output = USeries;
    fn add(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        USeries {
            coefficients: (0..=order).map(|j| &self.coefficients[j] + &rhs.coefficients[j]).collect(),
        }
    }
}

impl<'a> Sub<&'a USeries> for &'a USeries {
    type Output = USeries;
    fn sub(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        USeries {
            coefficients: (0..=order).map(|j| &self.coefficients[j] - &rhs.coefficients[j]).collect(),
        }
    }
}

impl<'a> Mul<&'a USeries> for &'a USeries {
    type Output = USeries;
    fn mul(self, rhs: &USeries) -> USeries {
        let order = self.order().min(rhs.order());
        let mut out = USeries::zero(order);
        for (i, a) in self.coefficients.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coefficients[i + j] += &(a * b);
                }
            }
        }
        out
    }
}

impl fmt::Display for USeries {
    /// `u - (1/24)*u^3 + O(u^5)`, lowest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = if c.re.is_zero() { c.im < BigRational::zero() } else { c.im.is_zero() && c.re < BigRational::zero() };
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let monomial = match j {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{j}"),
            };
            let coeff = if monomial.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                String::new()
            } else if magnitude.is_real() && !magnitude.re.is_integer() {
                format!("({magnitude})*")
            } else {
                format!("{magnitude}*")
            };
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{sign}{coeff}{monomial}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}
