//! Integer lattice vectors and validation of the discrete counting data.
//!
//! A counting problem is a multiset of non-zero end directions (stored in a
//! fixed order) together with one descendant exponent per marked point.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ProblemError;

/// A vector in Z².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Determinant of the matrix with columns `self`, `other`.
    pub fn wedge(&self, other: &LatticeVector) -> i128 {
        wedge(*self, *other)
    }

    /// Lattice length; `None` for the zero vector.
    pub fn lattice_length(&self) -> Option<u64> {
        lattice_length(*self).ok()
    }
}

/// `v.x * w.y - v.y * w.x`, computed in 128 bits so that no `i64` input
/// can overflow.
pub fn wedge(v: LatticeVector, w: LatticeVector) -> i128 {
    v.x as i128 * w.y as i128 - v.y as i128 * w.x as i128
}

/// Largest `l` such that `v = l * w` with `w` integral, i.e. `gcd(|x|, |y|)`.
pub fn lattice_length(v: LatticeVector) -> Result<u64, ProblemError> {
    if v.is_zero() {
        return Err(ProblemError::NoLatticeLength);
    }
    Ok(v.x.unsigned_abs().gcd(&v.y.unsigned_abs()))
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for LatticeVector {
    fn add_assign(&mut self, rhs: LatticeVector) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self * rhs.x, self * rhs.y)
    }
}

impl std::iter::Sum for LatticeVector {
    fn sum<I: Iterator<Item = LatticeVector>>(iter: I) -> LatticeVector {
        iter.fold(LatticeVector::ZERO, |acc, v| acc + v)
    }
}

impl<'a> std::iter::Sum<&'a LatticeVector> for LatticeVector {
    fn sum<I: Iterator<Item = &'a LatticeVector>>(iter: I) -> LatticeVector {
        iter.fold(LatticeVector::ZERO, |acc, v| acc + *v)
    }
}

impl From<(i64, i64)> for LatticeVector {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeVector::new(x, y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The ordered list of end directions. Entries are non-zero and sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Degree {
    entries: Vec<LatticeVector>,
}

impl Degree {
    pub fn new(entries: Vec<LatticeVector>) -> Result<Self, ProblemError> {
        if let Some(index) = entries.iter().position(LatticeVector::is_zero) {
            return Err(ProblemError::ZeroEntry { index });
        }
        let sum: LatticeVector = entries.iter().sum();
        if !sum.is_zero() {
            return Err(ProblemError::NonZeroSum { sum });
        }
        Ok(Degree { entries })
    }

    pub fn entries(&self) -> &[LatticeVector] {
        &self.entries
    }

    /// Number of ends, `|Δ°|`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct directions in sorted order with their multiplicities.
    pub fn distinct(&self) -> Vec<(LatticeVector, usize)> {
        let mut sorted = self.entries.clone();
        sorted.sort();
        let mut out: Vec<(LatticeVector, usize)> = Vec::new();
        for v in sorted {
            match out.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

/// Descendant exponents `k_1, ..., k_n`, one per marked point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescendantProfile {
    k: Vec<u32>,
}

impl DescendantProfile {
    pub fn new(k: Vec<u32>) -> Self {
        DescendantProfile { k }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.k
    }

    /// Number of marked points.
    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn total(&self) -> usize {
        self.k.iter().map(|&k| k as usize).sum()
    }

    /// Valency of the vertex carrying marked point `i` (0-based).
    pub fn valency(&self, i: usize) -> usize {
        self.k[i] as usize + 2
    }
}

/// A validated counting problem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Problem {
    pub degree: Degree,
    pub profile: DescendantProfile,
}

impl Problem {
    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn r(&self) -> usize {
        self.degree.len()
    }

    /// Number of unpointed trivalent vertices of every curve, `|Δ°| - 2 - Σk`.
    pub fn trivalent_count(&self) -> usize {
        (self.r() - self.profile.total()).saturating_sub(2)
    }

    /// Number of bounded edges of every counted type, `2n - 2`.
    pub fn bounded_edge_count(&self) -> usize {
        2 * self.n() - 2
    }
}

/// Checks non-zero entries, zero sum, non-negative exponents and the balance
/// equation `n - 1 + |Δ°| = 2n + Σ k_i`.
pub fn validate_problem(
    delta: &[LatticeVector],
    k: &[i64],
) -> Result<(Degree, DescendantProfile), ProblemError> {
    let degree = Degree::new(delta.to_vec())?;
    let mut exps = Vec::with_capacity(k.len());
    for (index, &value) in k.iter().enumerate() {
        if value < 0 {
            return Err(ProblemError::NegativeExponent { index, value });
        }
        exps.push(u32::try_from(value).map_err(|_| ProblemError::NegativeExponent { index, value })?);
    }
    let n = k.len() as i64;
    let r = degree.len() as i64;
    let total: i64 = k.iter().sum();
    let lhs = n - 1 + r;
    let rhs = 2 * n + total;
    if lhs != rhs {
        return Err(ProblemError::Balance { lhs, rhs });
    }
    Ok((degree, DescendantProfile::new(exps)))
}

impl Problem {
    pub fn new(delta: &[LatticeVector], k: &[i64]) -> Result<Self, ProblemError> {
        let (degree, profile) = validate_problem(delta, k)?;
        Ok(Problem { degree, profile })
    }

    /// `P²` in degree `d`: `d` copies each of `(1,0)`, `(0,1)`, `(-1,-1)`,
    /// through `3d - 1` points without descendants.
    pub fn projective_plane(d: usize) -> Self {
        let mut delta = Vec::with_capacity(3 * d);
        for v in [(-1, -1), (0, 1), (1, 0)] {
            delta.extend(std::iter::repeat_n(LatticeVector::from(v), d));
        }
        Problem::new(&delta, &vec![0; 3 * d - 1]).expect("P2 data is balanced")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(v(1, 0), v(0, 1)), 1);
        assert_eq!(wedge(v(1, 1), v(2, 2)), 0);
        assert_eq!(wedge(v(2, 1), v(1, 1)), 1);
    }

    #[test]
    fn lattice_length_examples() {
        assert_eq!(lattice_length(v(2, 4)).unwrap(), 2);
        assert_eq!(lattice_length(v(1, 0)).unwrap(), 1);
        assert_eq!(lattice_length(v(-3, -6)).unwrap(), 3);
        assert_eq!(lattice_length(v(0, 0)), Err(ProblemError::NoLatticeLength));
    }

    #[test]
    fn validate_worked_example() {
        let delta = [v(-1, 0), v(-1, 0), v(0, -1), v(1, 0), v(1, 0), v(0, 1)];
        let (deg, prof) = validate_problem(&delta, &[0, 1, 0, 0]).unwrap();
        assert_eq!(deg.len(), 6);
        assert_eq!(prof.n(), 4);
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            validate_problem(&[v(1, 0), v(-1, 0)], &[]),
            Err(ProblemError::Balance { lhs: 1, rhs: 0 })
        );
        assert!(validate_problem(&[v(1, 0), v(0, 1), v(-1, -1)], &[0, 0]).is_ok());
        assert_eq!(
            validate_problem(&[v(1, 0), v(0, 0), v(-1, 0)], &[0]),
            Err(ProblemError::ZeroEntry { index: 1 })
        );
        assert_eq!(
            validate_problem(&[v(1, 0), v(1, 0)], &[0]),
            Err(ProblemError::NonZeroSum { sum: v(2, 0) })
        );
        assert_eq!(
            validate_problem(&[v(1, 0), v(-1, 0)], &[-1]),
            Err(ProblemError::NegativeExponent { index: 0, value: -1 })
        );
    }

    #[test]
    fn projective_plane_counts() {
        let p = Problem::projective_plane(3);
        assert_eq!((p.n(), p.r(), p.trivalent_count()), (8, 9, 7));
    }

    proptest! {
        #[test]
        fn wedge_is_antisymmetric(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
            prop_assert_eq!(wedge(v(a, b), v(c, d)), -wedge(v(c, d), v(a, b)));
            prop_assert_eq!(wedge(v(a, b), v(a, b)), 0);
        }

        #[test]
        fn wedge_is_bilinear(a in -100i64..100, b in -100i64..100, c in -100i64..100, d in -100i64..100, e in -100i64..100, f in -100i64..100) {
            prop_assert_eq!(wedge(v(a, b) + v(e, f), v(c, d)), wedge(v(a, b), v(c, d)) + wedge(v(e, f), v(c, d)));
        }

        #[test]
        fn lattice_length_is_homogeneous(a in -500i64..500, b in -500i64..500, c in -20i64..20) {
            prop_assume!(a != 0 || b != 0);
            prop_assume!(c != 0);
            let base = lattice_length(v(a, b)).unwrap();
            prop_assert_eq!(lattice_length(c * v(a, b)).unwrap(), c.unsigned_abs() * base);
        }
    }
}
