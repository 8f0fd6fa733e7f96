//! Series-level identities: the cosine formula for `I_{g,d}`, vertex
//! generating series, and the Moyal product on Fourier symbols.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::count::curve_multiplicity;
use crate::gaussian::GaussianRational;
use crate::lattice::{wedge, LatticeVector};
use crate::moduli::VertexMarker;
use crate::multiplicity::{for_each_permutation, mu, Normalization};
use crate::rational;
use crate::series::USeries;
use crate::solver::ParametrizedTropicalCurve;

fn half(w: i128) -> BigRational {
    BigRational::new(w.into(), 2.into())
}

/// `1/(d+1)! Σ_σ Π_{j=1}^{d} cos(u·(a_{σ(j+1)} B_j − b_{σ(j+1)} A_j)/2)`,
/// with `A_j`, `B_j` the prefix sums of the permuted entries.
pub fn igd_series(a: &[i64], b: &[i64], order: usize) -> USeries {
    assert_eq!(a.len(), b.len(), "a and b must have the same length");
    assert!(!a.is_empty(), "need at least one entry");
    let pairs: Vec<LatticeVector> = a.iter().zip(b).map(|(&x, &y)| LatticeVector::new(x, y)).collect();
    let mut acc = USeries::zero(order);
    for_each_permutation(&pairs, |perm| {
        let mut term = USeries::one(order);
        let mut prefix = LatticeVector::ZERO;
        for (j, v) in perm.iter().enumerate() {
            if j > 0 {
                let w = v.x as i128 * prefix.y as i128 - v.y as i128 * prefix.x as i128;
                term = &term * &USeries::cos(&half(w), order);
            }
            prefix += *v;
        }
        acc = &acc + &term;
    });
    acc.scale_rational(&(BigRational::one() / rational::factorial(pairs.len())))
}

/// `2 sin(u·|v1 ∧ v2|/2)`, the series of an unpointed trivalent vertex.
pub fn f3u_series(v1: LatticeVector, v2: LatticeVector, order: usize) -> USeries {
    USeries::sin(&half(wedge(v1, v2).abs()), order).scale_rational(&rational::int(2))
}

/// `1/(2^{m-2}(m-1)!) Σ_σ Π_{j=1}^{m-2} 2cos(u·(δ_{σ(j+1)} ∧ Σ_{l≤j} δ_{σ(l)})/2)`,
/// `σ` running over orderings of the first `m - 1` vectors.
pub fn fmp_series(vectors: &[LatticeVector], order: usize) -> USeries {
    let m = vectors.len();
    assert!(m >= 3, "a pointed vertex series needs at least 3 vectors");
    assert!(vectors.iter().sum::<LatticeVector>().is_zero(), "vectors must be balanced");
    let mut acc = USeries::zero(order);
    for_each_permutation(&vectors[..m - 1], |perm| {
        let mut term = USeries::one(order);
        let mut prefix = LatticeVector::ZERO;
        for (j, v) in perm.iter().enumerate() {
            if j > 0 {
                term = &term * &USeries::cos(&half(wedge(*v, prefix)), order).scale_rational(&rational::int(2));
            }
            prefix += *v;
        }
        acc = &acc + &term;
    });
    let norm = rational::int(1 << (m - 2)) * rational::factorial(m - 1);
    acc.scale_rational(&(BigRational::one() / norm))
}

/// `μ(vectors)` under `q = e^{iu}`, divided by `(m-1)!`.
pub fn mu_series(vectors: &[LatticeVector], order: usize) -> USeries {
    let m = mu(vectors).expect("balanced vectors");
    m.substitute_exponential(order)
        .scale_rational(&(BigRational::one() / rational::factorial(vectors.len() - 1)))
}

/// A finite Fourier series `Σ c_{a,b}(ε) e^{i(ay + bx)}` whose coefficients
/// are truncated series in `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierSymbol {
    order: usize,
    terms: BTreeMap<(i64, i64), USeries>,
}

impl FourierSymbol {
    pub fn zero(order: usize) -> Self {
        FourierSymbol { order, terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        Self::frequency(0, 0, c, order)
    }

    /// `c·e^{i(ay + bx)}`.
    pub fn frequency(a: i64, b: i64, c: GaussianRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_term((a, b), &USeries::constant(c, order));
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), USeries> {
        &self.terms
    }

    /// Coefficient series of `e^{i(ay + bx)}`.
    pub fn coefficient(&self, a: i64, b: i64) -> USeries {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| USeries::zero(self.order))
    }

    pub fn add_term(&mut self, freq: (i64, i64), c: &USeries) {
        let order = self.order;
        let slot = self.terms.entry(freq).or_insert_with(|| USeries::zero(order));
        *slot = &*slot + &c.truncate(order);
        if slot.is_zero() {
            self.terms.remove(&freq);
        }
    }

    pub fn add(&self, other: &FourierSymbol) -> FourierSymbol {
        let mut out = FourierSymbol { order: self.order.min(other.order), terms: BTreeMap::new() };
        for (f, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(*f, c);
        }
        out
    }

    fn map_terms(&self, f: impl Fn((i64, i64), &USeries) -> USeries) -> FourierSymbol {
        let mut out = FourierSymbol::zero(self.order);
        for (freq, c) in &self.terms {
            out.add_term(*freq, &f(*freq, c));
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> FourierSymbol {
        self.map_terms(|_, s| s.scale(c))
    }

    /// `∂_x`: multiplies `e^{i(ay + bx)}` by `i·b`.
    pub fn dx(&self) -> FourierSymbol {
        self.map_terms(|(_, b), s| s.scale(&(GaussianRational::i() * GaussianRational::from_int(b))))
    }

    /// `∂_y`: multiplies `e^{i(ay + bx)}` by `i·a`.
    pub fn dy(&self) -> FourierSymbol {
        self.map_terms(|(a, _), s| s.scale(&(GaussianRational::i() * GaussianRational::from_int(a))))
    }

    /// Multiplies every coefficient by `ε^k`.
    fn shift(&self, k: usize) -> FourierSymbol {
        self.map_terms(|_, s| {
            let mut out = USeries::zero(self.order);
            for (j, c) in s.coefficients().iter().enumerate() {
                out.add_to(j + k, c);
            }
            out
        })
    }

    /// Commutative pointwise product.
    pub fn pointwise(&self, other: &FourierSymbol) -> FourierSymbol {
        let mut out = FourierSymbol::zero(self.order.min(other.order));
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

/// `f ⋆ g = Σ_n Σ_{k1+k2=n} (−1)^{k2}(iε)^n/(2^n k1! k2!) ∂_x^{k1}∂_y^{k2} f · ∂_x^{k2}∂_y^{k1} g`,
/// truncated at the common `ε` order.
pub fn moyal_star(f: &FourierSymbol, g: &FourierSymbol) -> FourierSymbol {
    let order = f.order.min(g.order);
    // derivs[k1][k2] = ∂_x^{k1} ∂_y^{k2}
    let table = |s: &FourierSymbol| -> Vec<Vec<FourierSymbol>> {
        let mut rows = Vec::with_capacity(order + 1);
        let mut x = s.clone();
        for k1 in 0..=order {
            if k1 > 0 {
                x = x.dx();
            }
            let mut row = Vec::with_capacity(order + 1 - k1);
            let mut y = x.clone();
            for k2 in 0..=order - k1 {
                if k2 > 0 {
                    y = y.dy();
                }
                row.push(y.clone());
            }
            rows.push(row);
        }
        rows
    };
    let (df, dg) = (table(f), table(g));
    let mut out = FourierSymbol::zero(order);
    for n in 0..=order {
        let prefactor = GaussianRational::i_pow(n as i64).scale(&(BigRational::one() / rational::int(1 << n)));
        for k1 in 0..=n {
            let k2 = n - k1;
            let sign = if k2 % 2 == 0 { 1 } else { -1 };
            let c = prefactor.scale(
                &(rational::int(sign) / (rational::factorial(k1) * rational::factorial(k2))),
            );
            let term = df[k1][k2].pointwise(&dg[k2][k1]).scale(&c).shift(n);
            out = out.add(&term);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoyalReport {
    /// The averaged star product agrees with the averaged cosine product
    /// read as a series in `ε`.
    pub passed: bool,
    /// Whether it also agrees after the literal substitution `u = iε`.
    pub literal_u_equals_i_eps_holds: bool,
    pub star: USeries,
    pub cosine: USeries,
}

/// Compares the average over all orderings of the iterated star product of
/// `e^{i(a_j y + b_j x)}` with the average of
/// `Π_j cos(u(a_{j+1}(b_1+…+b_j) − b_{j+1}(a_1+…+a_j))/2)`, both as series
/// in `ε`.
///
/// The star product produces the phases `e^{iεW/2}`, whose symmetrization is
/// `cos(εW/2)`, so the cosine side matches with `u = ε`; `u = iε` would turn
/// every cosine into `cosh(εW/2)`.
pub fn verify_moyal_claim(a: &[i64], b: &[i64], order: usize) -> MoyalReport {
    assert_eq!(a.len(), b.len(), "a and b must have the same length");
    assert!(a.len() >= 2, "need d >= 1");
    let idx: Vec<usize> = (0..a.len()).collect();
    let total = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
    let mut star = USeries::zero(order);
    let mut cosine = USeries::zero(order);
    let mut literal = USeries::zero(order);
    for_each_permutation(&idx, |perm| {
        let mut product = FourierSymbol::frequency(a[perm[0]], b[perm[0]], GaussianRational::one(), order);
        let (mut sa, mut sb) = (a[perm[0]], b[perm[0]]);
        let mut cos_term = USeries::one(order);
        let mut cosh_term = USeries::one(order);
        for &j in &perm[1..] {
            let next = FourierSymbol::frequency(a[j], b[j], GaussianRational::one(), order);
            product = moyal_star(&product, &next);
            let w = a[j] as i128 * sb as i128 - b[j] as i128 * sa as i128;
            cos_term = &cos_term * &USeries::cos(&half(w), order);
            cosh_term = &cosh_term * &cosh(&half(w), order);
            sa += a[j];
            sb += b[j];
        }
        star = &star + &product.coefficient(total.0, total.1);
        cosine = &cosine + &cos_term;
        literal = &literal + &cosh_term;
    });
    let norm = BigRational::one() / rational::factorial(a.len());
    let (star, cosine, literal) = (star.scale_rational(&norm), cosine.scale_rational(&norm), literal.scale_rational(&norm));
    MoyalReport { passed: star == cosine, literal_u_equals_i_eps_holds: star == literal, star, cosine }
}

/// `cosh(c·ε)` = `cos(c·u)` at `u = iε`.
fn cosh(c: &BigRational, order: usize) -> USeries {
    let cos = USeries::cos(c, order);
    let coefficients = cos
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, x)| x * &GaussianRational::i_pow(j as i64))
        .collect();
    USeries::from_coefficients(coefficients)
}

/// Checks that the product of the vertex series of `curve` equals its raw
/// multiplicity at `q = e^{iu}`, with the `(−i)` factors kept.
pub fn curve_series_consistency(curve: &ParametrizedTropicalCurve, order: usize) -> bool {
    let t = &curve.combinatorial_type;
    let mut product = USeries::one(order);
    for (v, marker) in t.vertices.iter().enumerate() {
        let out = t.outgoing(v);
        let factor = match marker {
            VertexMarker::Unpointed => f3u_series(out[0], out[1], order),
            VertexMarker::Pointed(_) if out.len() == 2 => USeries::one(order),
            VertexMarker::Pointed(_) => fmp_series(&out, order),
        };
        product = &product * &factor;
    }
    match curve_multiplicity(curve, Normalization::Raw) {
        Ok(m) => m.substitute_exponential(order) == product,
        Err(_) => false,
    }
}

/// Coefficient of `u^j` as a rational, for real series.
pub fn real_coefficient(s: &USeries, j: usize) -> BigRational {
    let c = s.coefficient(j);
    debug_assert!(c.im.is_zero());
    c.re
}
