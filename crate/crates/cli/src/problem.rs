//! Problem files: JSON with exact rationals written as `"num/den"` strings.
//!
//! ```json
//! { "delta": [[1, 0], [0, 1], [-1, -1]], "k": [0, 0],
//!   "points": [["0", "0"], ["1", "2"]], "seed": 3,
//!   "convention": "definition", "truncation": 7 }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use tropcount::solver::{PointConfiguration, RationalPoint};
use tropcount::{LatticeVector, Normalization, Problem};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub delta: Vec<(i64, i64)>,
    #[serde(default)]
    pub k: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<RationalPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<Normalization>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    pub fn problem(&self) -> Result<Problem, CliError> {
        let delta: Vec<LatticeVector> = self.delta.iter().map(|&v| v.into()).collect();
        Problem::new(&delta, &self.k).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// The given points, checked against the problem.
    pub fn point_configuration(&self, problem: &Problem) -> Result<Option<PointConfiguration>, CliError> {
        let Some(points) = &self.points else {
            return Ok(None);
        };
        let config = PointConfiguration::new(points.clone());
        if config.len() != problem.n() {
            return Err(CliError::Validation(format!(
                "{} points given, the problem needs {}",
                config.len(),
                problem.n()
            )));
        }
        if !config.pairwise_distinct() {
            return Err(CliError::Validation("points are not pairwise distinct".into()));
        }
        Ok(Some(config))
    }
}
