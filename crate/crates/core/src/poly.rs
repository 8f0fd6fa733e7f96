//! Laurent polynomials in `s = q^{1/2}` with Gaussian-rational coefficients.
//!
//! Exponents are stored in units of `q^{1/2}`, so `s^e` means `q^{e/2}` and no
//! rational exponent is ever needed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::gaussian::GaussianRational;
use crate::rational;
use crate::series::USeries;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<(i64, GaussianRational)>", from = "Vec<(i64, GaussianRational)>")]
pub struct RefinedPolynomial {
    terms: BTreeMap<i64, GaussianRational>,
}

impl RefinedPolynomial {
    pub fn zero() -> Self {
        RefinedPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, c)
    }

    /// `c · s^e`.
    pub fn monomial(e: i64, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        RefinedPolynomial { terms }
    }

    /// `s^e`.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(e, GaussianRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-zero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i64) -> GaussianRational {
        self.terms.get(&e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RefinedPolynomial { terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect() }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&GaussianRational::real(c.clone()))
    }

    /// `s ↦ s^{-1}`.
    pub fn antipode(&self) -> Self {
        RefinedPolynomial { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> GaussianRational {
        self.terms.values().fold(GaussianRational::zero(), |acc, c| acc + c.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Order-`k` Taylor expansion of `p(q = e^{iu})`: each `s^e` becomes
    /// `Σ_{j ≤ k} (i e u / 2)^j / j!`.
    pub fn substitute_exponential(&self, k: usize) -> USeries {
        let mut out = USeries::zero(k);
        for (&e, c) in &self.terms {
            let half = rational::ratio(e, 2);
            let mut power = BigRational::one();
            let mut fact = BigRational::one();
            for j in 0..=k {
                if j > 0 {
                    power *= &half;
                    fact *= rational::int(j as i64);
                }
                let term = GaussianRational::i_pow(j as i64).scale(&(&power / &fact));
                out.add_to(j, &(&term * c));
            }
        }
        out
    }

    /// The polynomial is invariant under `s ↦ s^{-1}`.
    pub fn is_palindromic(&self) -> bool {
        self.antipode() == *self
    }
}

/// `q^{m/2} + q^{-m/2}`.
pub fn bracket_plus(m: i64) -> RefinedPolynomial {
    RefinedPolynomial::s_pow(m) + RefinedPolynomial::s_pow(-m)
}

/// `q^{m/2} - q^{-m/2}`.
pub fn bracket_minus(m: i64) -> RefinedPolynomial {
    RefinedPolynomial::s_pow(m) - RefinedPolynomial::s_pow(-m)
}

impl<'a> Add<&'a RefinedPolynomial> for &'a RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn add(self, rhs: &RefinedPolynomial) -> RefinedPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RefinedPolynomial> for &'a RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn sub(self, rhs: &RefinedPolynomial) -> RefinedPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c.clone());
        }
        out
    }
}

impl Sub for RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Neg for RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn neg(self) -> Self {
        RefinedPolynomial { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<'a> Mul<&'a RefinedPolynomial> for &'a RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn mul(self, rhs: &RefinedPolynomial) -> RefinedPolynomial {
        let mut out = RefinedPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for RefinedPolynomial {
    type Output = RefinedPolynomial;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl std::iter::Sum for RefinedPolynomial {
    fn sum<I: Iterator<Item = RefinedPolynomial>>(iter: I) -> Self {
        iter.fold(RefinedPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for RefinedPolynomial {
    fn product<I: Iterator<Item = RefinedPolynomial>>(iter: I) -> Self {
        iter.fold(RefinedPolynomial::one(), |acc, p| &acc * &p)
    }
}

impl From<RefinedPolynomial> for Vec<(i64, GaussianRational)> {
    fn from(p: RefinedPolynomial) -> Self {
        p.terms.into_iter().collect()
    }
}

impl From<Vec<(i64, GaussianRational)>> for RefinedPolynomial {
    fn from(v: Vec<(i64, GaussianRational)>) -> Self {
        RefinedPolynomial::from_terms(v)
    }
}

fn q_power(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "q".to_string(),
        e if e % 2 == 0 => format!("q^{}", e / 2),
        e => format!("q^({}/2)", e),
    }
}

impl fmt::Display for RefinedPolynomial {
    /// Terms from the highest power of `q` down, e.g.
    /// `q^2 - 2*q + 2*q^-1 - q^-2` or `(1/2)*q^(1/2) + (1/2)*q^(-1/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = if c.re.is_zero() { c.im.is_negative() } else { c.im.is_zero() && c.re.is_negative() };
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let monomial = q_power(e);
            let coeff = if monomial.is_empty() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                String::new()
            } else if magnitude.is_real() && !magnitude.re.is_integer() {
                format!("({})*", magnitude)
            } else {
                format!("{}*", magnitude)
            };
            match (idx, negative) {
                (0, true) => write!(f, "-{coeff}{monomial}")?,
                (0, false) => write!(f, "{coeff}{monomial}")?,
                (_, true) => write!(f, " - {coeff}{monomial}")?,
                (_, false) => write!(f, " + {coeff}{monomial}")?,
            }
        }
        Ok(())
    }
}
