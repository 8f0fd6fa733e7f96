//! Refined counts: assembling curve multiplicities into `N_trop(q)` and
//! expanding the result under `q = e^{iu}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CountError;
use crate::gaussian::GaussianRational;
use crate::guided;
use crate::lattice::{LatticeVector, Problem};
use crate::moduli::{enumerate_types, labelings, CombinatorialType, EndLabeling, VertexMarker};
use crate::multiplicity::{vertex_multiplicity, MultiplicityKind, Normalization};
use crate::poly::RefinedPolynomial;
use crate::rational;
use crate::series::USeries;
use crate::solver::{
    genericity_audit, sample_generic_points, solve_through_points, ParametrizedTropicalCurve, PointConfiguration,
    SolveOutcome,
};

/// Seeds tried before giving up on finding generic points.
pub const MAX_ATTEMPTS: usize = 32;
/// Numerator bound for sampled coordinates.
pub const SAMPLE_BOUND: i64 = 1000;

/// How the rigid curves are found.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Grow the curve outward from the marked points.
    #[default]
    Guided,
    /// Solve every combinatorial type. Only feasible for small problems.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub normalization: Normalization,
    pub labeling: EndLabeling,
    pub strategy: Strategy,
    pub max_attempts: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            normalization: Normalization::default(),
            labeling: EndLabeling::default(),
            strategy: Strategy::default(),
            max_attempts: MAX_ATTEMPTS,
        }
    }
}

/// Where the point configuration comes from.
#[derive(Clone, Debug)]
pub enum PointSource {
    /// Sample with this seed, moving on to `seed + 1, ...` if the points turn
    /// out not to be generic.
    Seed(u64),
    /// Use exactly these points.
    Fixed(PointConfiguration),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedProvenance {
    /// Seed asked for, if the points were sampled.
    pub requested: Option<u64>,
    /// Seed whose points were used.
    pub used: Option<u64>,
    pub attempts: usize,
    pub points: PointConfiguration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveContribution {
    pub curve: ParametrizedTropicalCurve,
    /// Product of the vertex multiplicities.
    pub multiplicity: RefinedPolynomial,
    /// Factor applied to `multiplicity` in the sum: `1` for labeled ends,
    /// otherwise the share of labelings, see [`relabeling_weight`].
    #[serde(with = "crate::rational::serde_str")]
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub polynomial: RefinedPolynomial,
    pub convention: Normalization,
    pub labeling: EndLabeling,
    /// Number of unpointed trivalent vertices, the same on every curve.
    pub trivalent: usize,
    pub curves: Vec<CurveContribution>,
    pub provenance: SeedProvenance,
}

/// Product of the vertex multiplicities of one curve.
pub fn curve_multiplicity(
    curve: &ParametrizedTropicalCurve,
    normalization: Normalization,
) -> Result<RefinedPolynomial, CountError> {
    let t = &curve.combinatorial_type;
    let mut acc = RefinedPolynomial::one();
    for (v, marker) in t.vertices.iter().enumerate() {
        let kind = match marker {
            VertexMarker::Pointed(_) => MultiplicityKind::Pointed,
            VertexMarker::Unpointed => MultiplicityKind::UnpointedTrivalent,
        };
        let m = vertex_multiplicity(kind, &t.outgoing(v), normalization)
            .map_err(|e| CountError::Inconsistent(format!("vertex {v}: {e}")))?;
        acc = &acc * &m;
    }
    Ok(acc)
}

/// Weight of an unlabeled curve: its number of end labelings divided by the
/// number of permutations of equal degree vectors, which works out to
/// `1 / Π c!` over the groups of `c` equal ends attached to one vertex. The
/// weighted sum equals the labeled count divided by the symmetry of the
/// degree, and does not depend on the points.
pub fn relabeling_weight(t: &CombinatorialType) -> BigRational {
    let mut groups: BTreeMap<(usize, LatticeVector), usize> = BTreeMap::new();
    for e in &t.ends {
        *groups.entry((e.vertex, e.direction)).or_default() += 1;
    }
    let denominator = groups.values().fold(BigRational::one(), |acc, &c| acc * rational::factorial(c));
    BigRational::one() / denominator
}

/// Rigid curves through `points`, or a description of why the points are
/// not generic.
fn rigid_curves(
    problem: &Problem,
    points: &PointConfiguration,
    strategy: Strategy,
) -> Result<Result<Vec<ParametrizedTropicalCurve>, String>, CountError> {
    let curves = match strategy {
        Strategy::Guided => match guided::curves_through_points(&problem.degree, &problem.profile, points) {
            Ok(c) => c,
            Err(e) => return Ok(Err(e.0)),
        },
        Strategy::Exhaustive => {
            let types = enumerate_types(&problem.degree, &problem.profile, EndLabeling::UpToRelabeling);
            let outcomes: Vec<SolveOutcome> = types.par_iter().map(|t| solve_through_points(t, points)).collect();
            let audit = genericity_audit(outcomes.iter().enumerate());
            if !audit.passed {
                return Ok(Err(audit.diagnostics.join("; ")));
            }
            outcomes
                .into_iter()
                .filter_map(|o| match o {
                    SolveOutcome::Solved(c) => Some(c),
                    _ => None,
                })
                .collect()
        }
    };
    // Independent re-check of every curve by the linear solver, then the
    // audit over the found curves (distinct images).
    let rechecked: Vec<SolveOutcome> = curves
        .par_iter()
        .map(|c| solve_through_points(&c.combinatorial_type, points))
        .collect();
    for (c, o) in curves.iter().zip(&rechecked) {
        c.combinatorial_type.check(&problem.degree, &problem.profile).map_err(CountError::Inconsistent)?;
        c.verify(points).map_err(CountError::Inconsistent)?;
        match o {
            SolveOutcome::Solved(s) if s == c => {}
            SolveOutcome::Singular { consistent: true } | SolveOutcome::NonPositiveLength { zero: true } => {
                return Ok(Err(format!("curve of type {} is degenerate", c.combinatorial_type)));
            }
            _ => {
                return Err(CountError::Inconsistent(format!(
                    "linear solve disagrees with the search on type {}",
                    c.combinatorial_type
                )))
            }
        }
    }
    let audit = genericity_audit(rechecked.iter().enumerate());
    if !audit.passed {
        return Ok(Err(audit.diagnostics.join("; ")));
    }
    Ok(Ok(curves))
}

/// `N_trop(q)`: the sum over rigid curves through generic points of the
/// product of their vertex multiplicities.
pub fn count_refined(problem: &Problem, source: PointSource, options: CountOptions) -> Result<CountResult, CountError> {
    let n = problem.n();
    let (mut config, requested) = match source {
        PointSource::Seed(seed) => (sample_generic_points(n, seed, SAMPLE_BOUND), Some(seed)),
        PointSource::Fixed(p) => {
            if p.len() != n {
                return Err(CountError::PointCount { expected: n, got: p.len() });
            }
            (p, None)
        }
    };
    let budget = if requested.is_some() { options.max_attempts.max(1) } else { 1 };
    let mut diagnostics = Vec::new();
    for attempt in 0..budget {
        if attempt > 0 {
            let seed = requested.expect("resampling needs a seed") + attempt as u64;
            config = sample_generic_points(n, seed, SAMPLE_BOUND);
        }
        let curves = match rigid_curves(problem, &config, options.strategy)? {
            Ok(c) => c,
            Err(why) => {
                diagnostics.push(format!("attempt {}: {why}", attempt + 1));
                continue;
            }
        };
        let curves: Vec<(ParametrizedTropicalCurve, BigRational)> = match options.labeling {
            EndLabeling::UpToRelabeling => curves
                .into_iter()
                .map(|c| {
                    let w = relabeling_weight(&c.combinatorial_type);
                    (c, w)
                })
                .collect(),
            EndLabeling::Labeled => curves
                .into_iter()
                .flat_map(|c| {
                    labelings(&c.combinatorial_type, &problem.degree).into_iter().map(move |t| {
                        (ParametrizedTropicalCurve { combinatorial_type: t, ..c.clone() }, BigRational::one())
                    })
                })
                .collect(),
        };
        let contributions: Vec<CurveContribution> = curves
            .into_par_iter()
            .map(|(curve, weight)| {
                let multiplicity = curve_multiplicity(&curve, options.normalization)?;
                Ok(CurveContribution { curve, multiplicity, weight })
            })
            .collect::<Result<_, CountError>>()?;
        let polynomial = contributions.iter().map(|c| c.multiplicity.scale_rational(&c.weight)).sum();
        return Ok(CountResult {
            polynomial,
            convention: options.normalization,
            labeling: options.labeling,
            trivalent: problem.trivalent_count(),
            curves: contributions,
            provenance: SeedProvenance {
                requested,
                used: config.seed,
                attempts: attempt + 1,
                points: config,
            },
        });
    }
    Err(CountError::NotGeneric { attempts: budget, diagnostics: diagnostics.join("; ") })
}

/// The series `Σ_g N_g u^{2g+T}` of a count, with its genus coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UExpansion {
    pub series: USeries,
    pub trivalent: usize,
    /// `N_g` for `2g + T <= K`.
    #[serde(with = "crate::rational::serde_vec")]
    pub genus_coefficients: Vec<BigRational>,
}

/// `(-i)^T · N_trop` (unless already raw) under `q = e^{iu}`, to order `K`.
/// The result must be real, vanish below `u^T` and step in even powers.
pub fn u_expansion(result: &CountResult, order: usize) -> Result<UExpansion, CountError> {
    let t = result.trivalent;
    if order < t {
        return Err(CountError::Inconsistent(format!("truncation {order} is below the leading order {t}")));
    }
    let lifted = match result.convention {
        Normalization::Raw => result.polynomial.clone(),
        Normalization::Definition | Normalization::Example => {
            result.polynomial.scale(&GaussianRational::i_pow(-(t as i64)))
        }
    };
    let series = lifted.substitute_exponential(order);
    check_expansion(&series, t)?;
    let genus_coefficients = (t..=order).step_by(2).map(|j| series.coefficient(j).re).collect();
    Ok(UExpansion { series, trivalent: t, genus_coefficients })
}

fn check_expansion(series: &USeries, t: usize) -> Result<(), CountError> {
    if !series.is_real() {
        return Err(CountError::Inconsistent(format!("u-expansion is not real: {series}")));
    }
    for (j, c) in series.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if j < t {
            return Err(CountError::Inconsistent(format!("u-expansion has a term u^{j} below u^{t}")));
        }
        if !(j - t).is_multiple_of(2) {
            return Err(CountError::Inconsistent(format!("u-expansion has a term u^{j} of the wrong parity")));
        }
    }
    Ok(())
}

/// The genus-zero coefficient `N_0`.
pub fn classical_limit(result: &CountResult) -> Result<BigRational, CountError> {
    Ok(u_expansion(result, result.trivalent)?.genus_coefficients[0].clone())
}

/// `antipode(N) = (-1)^T N`.
pub fn antipode_symmetric(result: &CountResult) -> bool {
    let sign = if result.trivalent.is_multiple_of(2) { 1 } else { -1 };
    result.polynomial.antipode() == result.polynomial.scale(&GaussianRational::from_int(sign))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub passed: bool,
    pub counts: Vec<(u64, RefinedPolynomial)>,
}

/// Counts with each seed; passes iff all polynomials agree.
pub fn invariance_suite(problem: &Problem, seeds: &[u64], options: CountOptions) -> Result<InvarianceReport, CountError> {
    if seeds.len() < 2 {
        return Err(CountError::Inconsistent("invariance needs at least two seeds".into()));
    }
    let counts: Vec<(u64, RefinedPolynomial)> = seeds
        .par_iter()
        .map(|&seed| Ok((seed, count_refined(problem, PointSource::Seed(seed), options)?.polynomial)))
        .collect::<Result<_, CountError>>()?;
    let passed = counts.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(InvarianceReport { passed, counts })
}
