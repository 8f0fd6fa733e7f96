//! Canonical text and JSON reports.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use tropcount::count::{CountResult, UExpansion};
use tropcount::moduli::VertexMarker;
use tropcount::rational;

/// Everything `count` prints. The JSON form round-trips exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub delta: Vec<(i64, i64)>,
    pub k: Vec<u32>,
    /// The polynomial as printed in the text report.
    pub polynomial_text: String,
    pub result: CountResult,
    pub expansion: UExpansion,
}

impl CountReport {
    pub fn new(result: CountResult, expansion: UExpansion, delta: Vec<(i64, i64)>, k: Vec<u32>) -> Self {
        CountReport { delta, k, polynomial_text: result.polynomial.to_string(), result, expansion }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let r = &self.result;
        let mut out = String::new();
        let delta: Vec<String> = self.delta.iter().map(|(x, y)| format!("({x},{y})")).collect();
        let _ = writeln!(out, "delta: {}", delta.join(" "));
        let _ = writeln!(out, "k: {:?}", self.k);
        let _ = writeln!(out, "convention: {}", r.convention);
        let p = &r.provenance;
        match (p.requested, p.used) {
            (Some(req), Some(used)) => {
                let _ = writeln!(out, "seed: {used} (requested {req}, {} attempt(s))", p.attempts);
            }
            _ => {
                let _ = writeln!(out, "seed: none (points given)");
            }
        }
        let points: Vec<String> = p.points.points.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "points: {}", points.join(" "));
        let _ = writeln!(out, "N_trop = {}", self.polynomial_text);
        let _ = writeln!(out, "curves: {}", r.curves.len());
        for (i, c) in r.curves.iter().enumerate() {
            let t = &c.curve.combinatorial_type;
            let _ = writeln!(out, "  curve {}: weight {}, multiplicity {}", i + 1, rational::format(&c.weight), c.multiplicity);
            for (v, pos) in c.curve.positions.iter().enumerate() {
                let label = match t.vertices[v] {
                    VertexMarker::Pointed(j) => format!("p{}", j + 1),
                    VertexMarker::Unpointed => "-".to_string(),
                };
                let _ = writeln!(out, "    v{v} {label} at {pos}, valency {}", t.valency(v));
            }
            for (e, len) in t.edges.iter().zip(&c.curve.lengths) {
                let _ = writeln!(out, "    v{} -> v{} direction {} length {}", e.from, e.to, e.weight, rational::format(len));
            }
        }
        let x = &self.expansion;
        let _ = writeln!(out, "u-expansion (T = {}): {}", x.trivalent, x.series);
        for (g, n) in x.genus_coefficients.iter().enumerate() {
            let _ = writeln!(out, "  N_{g} = {}", rational::format(n));
        }
        out
    }
}
