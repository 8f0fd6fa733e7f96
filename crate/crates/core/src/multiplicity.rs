//! Vertex multiplicities.
//!
//! A pointed vertex with outgoing vectors `a_1, ..., a_N` is weighted through
//! the cyclic orders of its vectors: each cyclic order `ω` contributes
//! `q^{k(ω)/2}` where `k(ω)` sums the wedges of all pairs after the first
//! position. An unpointed trivalent vertex carries `(-i)[a_1 ∧ a_2]_-`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MultiplicityError;
use crate::gaussian::GaussianRational;
use crate::lattice::{wedge, LatticeVector};
use crate::poly::{bracket_minus, bracket_plus, RefinedPolynomial};
use crate::rational;

/// Which factors of the vertex multiplicities are kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Every factor: `(-i)` per trivalent vertex and `1/(N-1)!` per pointed vertex.
    Raw,
    /// Drops the `(-i)` of trivalent vertices.
    #[default]
    Definition,
    /// Additionally drops the `1/(N-1)!` of pointed vertices.
    Example,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [Normalization::Raw, Normalization::Definition, Normalization::Example];

    pub fn as_str(&self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::Definition => "definition",
            Normalization::Example => "example",
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "raw" => Ok(Normalization::Raw),
            "definition" => Ok(Normalization::Definition),
            "example" => Ok(Normalization::Example),
            other => Err(format!("unknown convention {other:?} (expected raw, definition or example)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicityKind {
    UnpointedTrivalent,
    Pointed,
}

/// A cyclic order of `{0, ..., N-1}`, stored as the representative that
/// starts with `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicOrder {
    representative: Vec<usize>,
}

impl CyclicOrder {
    /// `representative` must be a permutation; it is rotated to start at 0.
    pub fn new(representative: Vec<usize>) -> Self {
        let start = representative.iter().position(|&x| x == 0).expect("permutation contains 0");
        let mut rep = representative;
        rep.rotate_left(start);
        CyclicOrder { representative: rep }
    }

    pub fn representative(&self) -> &[usize] {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }
}

/// Visits every permutation of `items` (Heap's algorithm).
pub(crate) fn for_each_permutation<T: Clone>(items: &[T], mut visit: impl FnMut(&[T])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// All `(N-1)!` cyclic orders of `N` elements.
pub fn cyclic_orders(n: usize) -> Vec<CyclicOrder> {
    if n == 0 {
        return Vec::new();
    }
    let rest: Vec<usize> = (1..n).collect();
    let mut out = Vec::new();
    for_each_permutation(&rest, |perm| {
        let mut rep = Vec::with_capacity(n);
        rep.push(0);
        rep.extend_from_slice(perm);
        out.push(CyclicOrder { representative: rep });
    });
    out
}

fn check_balanced(vectors: &[LatticeVector], min: usize) -> Result<(), MultiplicityError> {
    if vectors.len() < min {
        return Err(MultiplicityError::TooFew { min, got: vectors.len() });
    }
    let sum: LatticeVector = vectors.iter().sum();
    if !sum.is_zero() {
        return Err(MultiplicityError::Unbalanced { sum });
    }
    Ok(())
}

/// `Σ_{i<j} a_{ρ(i)} ∧ a_{ρ(j)}` over positions after the first of the
/// ordering `ρ`.
fn k_of_ordering(vectors: &[LatticeVector], ordering: &[usize]) -> i128 {
    let mut prefix = LatticeVector::ZERO;
    let mut k = 0i128;
    for &idx in &ordering[1..] {
        k += wedge(prefix, vectors[idx]);
        prefix += vectors[idx];
    }
    k
}

/// `k(ω)` for balanced `vectors`, evaluated on the stored representative.
pub fn k_omega(vectors: &[LatticeVector], omega: &CyclicOrder) -> Result<i128, MultiplicityError> {
    check_balanced(vectors, 2)?;
    assert_eq!(vectors.len(), omega.len(), "cyclic order size must match the vectors");
    Ok(k_of_ordering(vectors, omega.representative()))
}

/// `μ_N = Σ_ω q^{k(ω)/2}` over all cyclic orders.
pub fn mu(vectors: &[LatticeVector]) -> Result<RefinedPolynomial, MultiplicityError> {
    check_balanced(vectors, 2)?;
    let n = vectors.len();
    let mut counts: HashMap<i128, i64> = HashMap::new();
    let rest: Vec<usize> = (1..n).collect();
    let mut ordering = vec![0usize; n];
    for_each_permutation(&rest, |perm| {
        ordering[1..].copy_from_slice(perm);
        *counts.entry(k_of_ordering(vectors, &ordering)).or_insert(0) += 1;
    });
    Ok(RefinedPolynomial::from_terms(
        counts.into_iter().map(|(k, c)| (exponent(k), GaussianRational::from_int(c))),
    ))
}

fn exponent(k: i128) -> i64 {
    i64::try_from(k).expect("exponent exceeds i64")
}

/// Memo table for the recursive Blechman–Shustin multiplicity, keyed on the
/// sorted multiset of vectors. Confine one table to one thread.
#[derive(Debug, Default)]
pub struct ThetaMemo {
    table: HashMap<Vec<LatticeVector>, RefinedPolynomial>,
}

impl ThetaMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn theta(&mut self, vectors: &[LatticeVector]) -> Result<RefinedPolynomial, MultiplicityError> {
        check_balanced(vectors, 3)?;
        Ok(self.theta_unchecked(vectors))
    }

    fn theta_unchecked(&mut self, vectors: &[LatticeVector]) -> RefinedPolynomial {
        let mut key = vectors.to_vec();
        key.sort();
        if let Some(hit) = self.table.get(&key) {
            return hit.clone();
        }
        let n = key.len();
        let value = if n == 3 {
            bracket_plus(exponent(wedge(key[0], key[1])))
        } else {
            let mut acc = RefinedPolynomial::zero();
            for i in 0..n {
                for j in i + 1..n {
                    let merged = key[i] + key[j];
                    let mut reduced: Vec<LatticeVector> = key
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != i && l != j)
                        .map(|(_, v)| *v)
                        .collect();
                    reduced.push(merged);
                    let inner = self.theta_unchecked(&reduced);
                    acc = &acc + &(&inner * &bracket_plus(exponent(wedge(key[i], key[j]))));
                }
            }
            acc
        };
        self.table.insert(key, value.clone());
        value
    }
}

/// `θ_3 = [a_1 ∧ a_2]_+`, and `θ_N = Σ_{i<j} θ_{N-1}(…, a_i + a_j) θ_3(a_i, a_j, -(a_i + a_j))`.
pub fn theta_bs(vectors: &[LatticeVector]) -> Result<RefinedPolynomial, MultiplicityError> {
    ThetaMemo::new().theta(vectors)
}

/// Multiplicity of one vertex under the chosen normalization.
pub fn vertex_multiplicity(
    kind: MultiplicityKind,
    vectors: &[LatticeVector],
    normalization: Normalization,
) -> Result<RefinedPolynomial, MultiplicityError> {
    match kind {
        MultiplicityKind::UnpointedTrivalent => {
            if vectors.len() != 3 || vectors.iter().any(LatticeVector::is_zero) {
                return Err(MultiplicityError::WrongArity { got: vectors.len() });
            }
            check_balanced(vectors, 3)?;
            let w = exponent(wedge(vectors[0], vectors[1]).abs());
            let bracket = bracket_minus(w);
            Ok(match normalization {
                Normalization::Raw => bracket.scale(&-GaussianRational::i()),
                Normalization::Definition | Normalization::Example => bracket,
            })
        }
        MultiplicityKind::Pointed => {
            check_balanced(vectors, 2)?;
            if vectors.len() == 2 {
                return Ok(RefinedPolynomial::one());
            }
            let m = mu(vectors)?;
            Ok(match normalization {
                Normalization::Example => m,
                Normalization::Raw | Normalization::Definition => {
                    m.scale_rational(&(rational::int(1) / rational::factorial(vectors.len() - 1)))
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn square() -> Vec<LatticeVector> {
        vec![v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]
    }

    #[test]
    fn cyclic_order_count() {
        for n in 1..7 {
            let orders = cyclic_orders(n);
            let expected: usize = (1..n).product();
            assert_eq!(orders.len(), expected);
            let distinct: std::collections::HashSet<_> = orders.iter().collect();
            assert_eq!(distinct.len(), expected);
        }
    }

    #[test]
    fn k_omega_examples() {
        let vs = [v(1, 0), v(0, 1), v(-1, -1)];
        assert_eq!(wedge(vs[0], vs[1]), 1);
        assert_eq!(k_omega(&vs, &CyclicOrder::new(vec![0, 1, 2])).unwrap(), 1);
        assert_eq!(k_omega(&vs, &CyclicOrder::new(vec![0, 2, 1])).unwrap(), -1);
        let pair = [v(2, 3), v(-2, -3)];
        assert_eq!(k_omega(&pair, &CyclicOrder::new(vec![0, 1])).unwrap(), 0);
        assert!(matches!(
            k_omega(&[v(1, 0), v(1, 0)], &CyclicOrder::new(vec![0, 1])),
            Err(MultiplicityError::Unbalanced { .. })
        ));
    }

    #[test]
    fn mu_examples() {
        let vs = [v(1, 0), v(0, 1), v(-1, -1)];
        assert_eq!(mu(&vs).unwrap(), bracket_plus(1));
        assert_eq!(mu(&[v(1, 2), v(-1, -2)]).unwrap(), RefinedPolynomial::one());
    }

    /// Independent enumeration of all orderings of the four square directions:
    /// every one of the 24 orderings is generated, k is summed over all pairs
    /// after the first slot, and each cyclic class is counted once by dividing
    /// by the 4 rotations.
    #[test]
    fn mu_square_by_exhaustion() {
        let vs = square();
        let mut tally: HashMap<i128, i64> = HashMap::new();
        let idx = [0usize, 1, 2, 3];
        for a in idx {
            for b in idx {
                for c in idx {
                    for d in idx {
                        let ord = [a, b, c, d];
                        let mut seen = [false; 4];
                        if ord.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                            continue;
                        }
                        let mut k = 0i128;
                        for i in 1..4 {
                            for j in i + 1..4 {
                                let (p, q) = (vs[ord[i]], vs[ord[j]]);
                                k += (p.x * q.y - p.y * q.x) as i128;
                            }
                        }
                        *tally.entry(k).or_insert(0) += 1;
                    }
                }
            }
        }
        let expected = RefinedPolynomial::from_terms(
            tally.into_iter().map(|(k, c)| (k as i64, GaussianRational::real(ratio(c, 4)))),
        );
        // Frozen from the enumeration above: q + 4 + q^{-1}.
        let frozen = RefinedPolynomial::from_terms([
            (2, GaussianRational::from_int(1)),
            (0, GaussianRational::from_int(4)),
            (-2, GaussianRational::from_int(1)),
        ]);
        assert_eq!(expected, frozen);
        assert_eq!(mu(&vs).unwrap(), frozen);
    }

    #[test]
    fn theta_examples() {
        let vs = [v(1, 0), v(0, 1), v(-1, -1)];
        assert_eq!(theta_bs(&vs).unwrap(), bracket_plus(1));
        let parallel = [v(1, 1), v(2, 2), v(-3, -3)];
        assert_eq!(theta_bs(&parallel).unwrap(), RefinedPolynomial::constant(GaussianRational::from_int(2)));
        let sq = square();
        assert_eq!(theta_bs(&sq).unwrap(), mu(&sq).unwrap().scale_rational(&int(4)));
        assert_eq!(theta_bs(&[v(1, 0), v(-1, 0)]), Err(MultiplicityError::TooFew { min: 3, got: 2 }));
    }

    #[test]
    fn vertex_multiplicity_examples() {
        let vs = [v(1, 0), v(0, 1), v(-1, -1)];
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::UnpointedTrivalent, &vs, Normalization::Example).unwrap(),
            bracket_minus(1)
        );
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::UnpointedTrivalent, &vs, Normalization::Raw).unwrap(),
            bracket_minus(1).scale(&-GaussianRational::i())
        );
        let flipped = [v(0, 1), v(1, 0), v(-1, -1)];
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::UnpointedTrivalent, &flipped, Normalization::Definition).unwrap(),
            bracket_minus(1)
        );
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::Pointed, &vs, Normalization::Example).unwrap(),
            bracket_plus(1)
        );
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::Pointed, &vs, Normalization::Definition).unwrap(),
            bracket_plus(1).scale_rational(&ratio(1, 2))
        );
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::Pointed, &[v(3, 1), v(-3, -1)], Normalization::Raw).unwrap(),
            RefinedPolynomial::one()
        );
        assert_eq!(
            vertex_multiplicity(MultiplicityKind::UnpointedTrivalent, &square(), Normalization::Raw),
            Err(MultiplicityError::WrongArity { got: 4 })
        );
    }

    #[test]
    fn normalization_parses() {
        for n in Normalization::ALL {
            assert_eq!(n.as_str().parse::<Normalization>().unwrap(), n);
        }
        assert!("other".parse::<Normalization>().is_err());
    }

    pub(crate) fn balanced(max_n: usize) -> impl Strategy<Value = Vec<LatticeVector>> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((-5i64..=5, -5i64..=5), n - 1).prop_map(|head| {
                let mut vs: Vec<LatticeVector> = head.into_iter().map(LatticeVector::from).collect();
                let sum: LatticeVector = vs.iter().sum();
                vs.push(-sum);
                vs
            })
        })
    }

    proptest! {
        #[test]
        fn k_omega_independent_of_rotation(vs in balanced(6), shift in 0usize..6) {
            let n = vs.len();
            for omega in cyclic_orders(n) {
                let mut rotated = omega.representative().to_vec();
                rotated.rotate_left(shift % n);
                prop_assert_eq!(k_of_ordering(&vs, &rotated), k_omega(&vs, &omega).unwrap());
            }
        }

        #[test]
        fn mu_is_palindromic_and_counts_orders(vs in balanced(6)) {
            let m = mu(&vs).unwrap();
            prop_assert!(m.is_palindromic());
            let orders: i64 = (1..vs.len() as i64).product();
            prop_assert_eq!(m.at_one(), GaussianRational::from_int(orders));
            let pointed = vertex_multiplicity(MultiplicityKind::Pointed, &vs, Normalization::Definition).unwrap();
            prop_assert_eq!(pointed.at_one(), GaussianRational::from_int(1));
        }

        #[test]
        fn mu_is_a_multiset_function(vs in balanced(6), seed in 0u64..1000) {
            let mut shuffled = vs.clone();
            let len = shuffled.len();
            for i in 0..len {
                let j = (seed as usize * 7 + i * 13) % len;
                shuffled.swap(i, j);
            }
            prop_assert_eq!(mu(&shuffled).unwrap(), mu(&vs).unwrap());
        }

        #[test]
        fn theta_is_a_scaled_mu(vs in balanced(6).prop_filter("N >= 3", |vs| vs.len() >= 3)) {
            let n = vs.len();
            let scale = rational::factorial(n) / rational::factorial(3);
            prop_assert_eq!(theta_bs(&vs).unwrap(), mu(&vs).unwrap().scale_rational(&scale));
        }
    }
}
