//! Exact realization of combinatorial types through marked points.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bareiss::{self, LinearOutcome};
use crate::lattice::LatticeVector;
use crate::moduli::{CombinatorialType, VertexMarker};
use crate::rational;

/// A point of Q², serialized as `["x", "y"]` with exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    /// `self + t·v`.
    pub fn offset(&self, t: &BigRational, v: LatticeVector) -> Self {
        RationalPoint {
            x: &self.x + t * BigRational::from_integer(BigInt::from(v.x)),
            y: &self.y + t * BigRational::from_integer(BigInt::from(v.y)),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational::format(&self.x), rational::format(&self.y))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [rational::format(&self.x), rational::format(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(RationalPoint {
            x: rational::parse(&x).map_err(serde::de::Error::custom)?,
            y: rational::parse(&y).map_err(serde::de::Error::custom)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub points: Vec<RationalPoint>,
    /// Seed the points were sampled from, if any.
    pub seed: Option<u64>,
}

impl PointConfiguration {
    pub fn new(points: Vec<RationalPoint>) -> Self {
        PointConfiguration { points, seed: None }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn pairwise_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.points.iter().all(|p| seen.insert(p))
    }
}

/// A combinatorial type with vertex positions and bounded-edge lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametrizedTropicalCurve {
    #[serde(rename = "type")]
    pub combinatorial_type: CombinatorialType,
    pub positions: Vec<RationalPoint>,
    #[serde(with = "rational::serde_vec")]
    pub lengths: Vec<BigRational>,
}

impl ParametrizedTropicalCurve {
    /// Re-substitutes the defining equations: edge displacements, positive
    /// lengths, and marked vertices on their points.
    pub fn verify(&self, points: &PointConfiguration) -> Result<(), String> {
        let t = &self.combinatorial_type;
        if self.positions.len() != t.vertex_count() || self.lengths.len() != t.edges.len() {
            return Err("positions or lengths have the wrong size".into());
        }
        for (e, len) in t.edges.iter().zip(&self.lengths) {
            if !len.is_positive() {
                return Err(format!("edge {}-{} has non-positive length {}", e.from, e.to, rational::format(len)));
            }
            if self.positions[e.from].offset(len, e.weight) != self.positions[e.to] {
                return Err(format!("edge {}-{} does not match its weight and length", e.from, e.to));
            }
        }
        for (v, m) in t.vertices.iter().enumerate() {
            if let VertexMarker::Pointed(i) = *m {
                if points.points.get(i) != Some(&self.positions[v]) {
                    return Err(format!("vertex {v} is not at point {}", i + 1));
                }
            }
        }
        Ok(())
    }

    /// Segments (with primitive-free weight up to sign) and end rays; two
    /// curves with equal keys have the same image.
    pub fn image_key(&self) -> Vec<String> {
        let t = &self.combinatorial_type;
        let mut key: Vec<String> = t
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (&self.positions[e.from], &self.positions[e.to]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                let w = if e.weight > LatticeVector::ZERO { e.weight } else { -e.weight };
                format!("S{a}{b}{w}")
            })
            .chain(t.ends.iter().map(|e| format!("R{}{}", self.positions[e.vertex], e.direction)))
            .collect();
        key.sort();
        key
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(ParametrizedTropicalCurve),
    /// The linear system is singular; if it is also consistent, the points
    /// are not generic for this type.
    Singular { consistent: bool },
    /// The unique solution has an edge of length `<= 0`; `zero` flags an edge
    /// of length exactly zero.
    NonPositiveLength { zero: bool },
}

/// The linear system of a type: unknowns are the root position and the edge
/// lengths, rows are the coordinates of the marked vertices. The root is the
/// vertex of the first marked point.
pub fn incidence_matrix(t: &CombinatorialType) -> Vec<Vec<BigInt>> {
    let n_unknowns = 2 + t.edges.len();
    let root = t.pointed_vertex(0).expect("type has a first marked point");
    let adj = t.adjacency();
    // Signed path coefficients from the root to every vertex.
    let mut path: Vec<Option<Vec<i64>>> = vec![None; t.vertex_count()];
    path[root] = Some(vec![0; t.edges.len()]);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &(w, e) in &adj[v] {
            if path[w].is_none() {
                let mut p = path[v].clone().expect("visited");
                p[e] = if t.edges[e].from == v { 1 } else { -1 };
                path[w] = Some(p);
                stack.push(w);
            }
        }
    }
    let mut rows = Vec::new();
    let marked = t.marked_count();
    for i in 0..marked {
        let v = t.pointed_vertex(i).expect("marked points are contiguous");
        let p = path[v].as_ref().expect("tree is connected");
        for coord in 0..2 {
            let mut row = vec![BigInt::zero(); n_unknowns];
            row[coord] = BigInt::from(1);
            for (e, &sign) in p.iter().enumerate() {
                if sign != 0 {
                    let w = t.edges[e].weight;
                    let c = if coord == 0 { w.x } else { w.y };
                    row[2 + e] = BigInt::from(sign * c);
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Finds the unique curve of type `t` through `p`, if there is one.
pub fn solve_through_points(t: &CombinatorialType, p: &PointConfiguration) -> SolveOutcome {
    let a = incidence_matrix(t);
    if a.len() != 2 + t.edges.len() || p.len() != t.marked_count() {
        // Not a square system: the type is not rigid for these points.
        return SolveOutcome::Singular { consistent: false };
    }
    let b: Vec<BigRational> = p.points.iter().flat_map(|q| [q.x.clone(), q.y.clone()]).collect();
    match bareiss::solve_rational_rhs(&a, &b) {
        LinearOutcome::Singular { consistent } => SolveOutcome::Singular { consistent },
        LinearOutcome::Unique(x) => {
            let lengths = x[2..].to_vec();
            if lengths.iter().any(|l| !l.is_positive()) {
                return SolveOutcome::NonPositiveLength { zero: lengths.iter().any(Zero::is_zero) };
            }
            let root = t.pointed_vertex(0).expect("root");
            let mut positions = vec![None; t.vertex_count()];
            positions[root] = Some(RationalPoint::new(x[0].clone(), x[1].clone()));
            let adj = t.adjacency();
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(w, e) in &adj[v] {
                    if positions[w].is_none() {
                        let edge = &t.edges[e];
                        let dir = if edge.from == v { edge.weight } else { -edge.weight };
                        positions[w] = Some(positions[v].as_ref().expect("visited").offset(&lengths[e], dir));
                        stack.push(w);
                    }
                }
            }
            SolveOutcome::Solved(ParametrizedTropicalCurve {
                combinatorial_type: t.clone(),
                positions: positions.into_iter().map(|q| q.expect("tree is connected")).collect(),
                lengths,
            })
        }
    }
}

const PRIME_LADDER: [i64; 24] = [
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097, 1103, 1109,
    1117, 1123, 1129, 1151, 1153, 1163,
];

/// Pseudo-random points `(a/p, b/p')` with numerators in `[-bound, bound]`
/// and a distinct prime denominator per coordinate.
pub fn sample_generic_points(n: usize, seed: u64, bound: i64) -> PointConfiguration {
    assert!(bound >= 1, "bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let points: Vec<RationalPoint> = (0..n)
            .map(|i| {
                let den = |j: usize| BigInt::from(PRIME_LADDER[j % PRIME_LADDER.len()] + 2 * (j / PRIME_LADDER.len()) as i64);
                let x = BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), den(2 * i));
                let y = BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), den(2 * i + 1));
                RationalPoint::new(x, y)
            })
            .collect();
        let config = PointConfiguration { points, seed: Some(seed) };
        if config.pairwise_distinct() {
            return config;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub passed: bool,
    pub diagnostics: Vec<String>,
}

/// Checks the solve outcomes of all types for signs of non-generic points:
/// a consistent singular system, a zero edge length, or two types whose
/// solutions have the same image.
pub fn genericity_audit<'a, I>(results: I) -> AuditReport
where
    I: IntoIterator<Item = (usize, &'a SolveOutcome)>,
{
    let mut diagnostics = Vec::new();
    let mut images: HashMap<Vec<String>, usize> = HashMap::new();
    for (id, outcome) in results {
        match outcome {
            SolveOutcome::Singular { consistent: true } => {
                diagnostics.push(format!("type {id}: singular system with solutions"));
            }
            SolveOutcome::NonPositiveLength { zero: true } => {
                diagnostics.push(format!("type {id}: solution has an edge of length zero"));
            }
            SolveOutcome::Solved(curve) => {
                if let Some(other) = images.insert(curve.image_key(), id) {
                    diagnostics.push(format!("types {other} and {id}: solutions have the same image"));
                }
            }
            _ => {}
        }
    }
    AuditReport { passed: diagnostics.is_empty(), diagnostics }
}
