//! Static SVG pictures of counted curves.

use std::fmt::Write;

use num_traits::ToPrimitive;

use tropcount::solver::{ParametrizedTropicalCurve, PointConfiguration, RationalPoint};
use tropcount::LatticeVector;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;

fn approx(p: &RationalPoint) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))
}

/// Axis-aligned box in curve coordinates.
#[derive(Clone, Copy, Debug)]
struct Frame {
    min: (f64, f64),
    max: (f64, f64),
}

impl Frame {
    fn around(points: &[(f64, f64)], ends: &[LatticeVector]) -> Frame {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        let span = (max.0 - min.0).max(max.1 - min.1).max(1.0);
        // Pad by the largest end direction, scaled to the picture.
        let longest = ends.iter().map(|d| d.x.abs().max(d.y.abs())).max().unwrap_or(1) as f64;
        let pad = 0.25 * span * longest.max(1.0);
        let (w, h) = (max.0 - min.0 + 2.0 * pad, max.1 - min.1 + 2.0 * pad);
        // Square frame so lattice directions keep their angles.
        let side = w.max(h);
        let (cx, cy) = ((min.0 + max.0) / 2.0, (min.1 + max.1) / 2.0);
        Frame { min: (cx - side / 2.0, cy - side / 2.0), max: (cx + side / 2.0, cy + side / 2.0) }
    }

    fn to_svg(self, (x, y): (f64, f64)) -> (f64, f64) {
        let scale = (SIZE - 2.0 * MARGIN) / (self.max.0 - self.min.0);
        (MARGIN + (x - self.min.0) * scale, SIZE - MARGIN - (y - self.min.1) * scale)
    }

    /// Where the ray from `p` along `d` leaves the frame.
    fn exit(&self, p: (f64, f64), d: LatticeVector) -> (f64, f64) {
        let (dx, dy) = (d.x as f64, d.y as f64);
        let mut t = f64::INFINITY;
        if dx > 0.0 {
            t = t.min((self.max.0 - p.0) / dx);
        } else if dx < 0.0 {
            t = t.min((self.min.0 - p.0) / dx);
        }
        if dy > 0.0 {
            t = t.min((self.max.1 - p.1) / dy);
        } else if dy < 0.0 {
            t = t.min((self.min.1 - p.1) / dy);
        }
        let t = if t.is_finite() { t.max(0.0) } else { 0.0 };
        (p.0 + t * dx, p.1 + t * dy)
    }
}

/// One SVG document for `curve`; the layout depends only on the exact data.
pub fn curve_svg(curve: &ParametrizedTropicalCurve, points: &PointConfiguration, title: &str) -> String {
    let t = &curve.combinatorial_type;
    let positions: Vec<(f64, f64)> = curve.positions.iter().map(approx).collect();
    let marked: Vec<(f64, f64)> = points.points.iter().map(approx).collect();
    let all: Vec<(f64, f64)> = positions.iter().chain(&marked).copied().collect();
    let end_dirs: Vec<LatticeVector> = t.ends.iter().map(|e| e.direction).collect();
    let frame = Frame::around(&all, &end_dirs);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, "  <title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);

    let _ = writeln!(svg, r#"  <g id="edges" stroke="black" stroke-linecap="round">"#);
    for e in &t.edges {
        let (a, b) = (frame.to_svg(positions[e.from]), frame.to_svg(positions[e.to]));
        let w = e.weight.lattice_length().unwrap_or(1);
        let _ = writeln!(
            svg,
            r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke-width="{}"/>"#,
            a.0, a.1, b.0, b.1, 1 + w
        );
        if w > 1 {
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let _ = writeln!(svg, r#"    <text x="{:.3}" y="{:.3}" font-size="12" stroke="none">{w}</text>"#, mid.0 + 4.0, mid.1 - 4.0);
        }
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(svg, r#"  <g id="ends" stroke="black" stroke-dasharray="6 3">"#);
    for e in &t.ends {
        let start = positions[e.vertex];
        let (a, b) = (frame.to_svg(start), frame.to_svg(frame.exit(start, e.direction)));
        let _ = writeln!(
            svg,
            r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke-width="1.5"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(svg, r#"  <g id="vertices" font-size="11" fill="steelblue">"#);
    for (v, &p) in positions.iter().enumerate() {
        let (x, y) = frame.to_svg(p);
        let _ = writeln!(svg, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
        let _ = writeln!(svg, r#"    <text x="{:.3}" y="{:.3}">{}</text>"#, x + 5.0, y + 14.0, t.valency(v));
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(svg, r#"  <g id="points" stroke="crimson" stroke-width="2" font-size="13" fill="crimson">"#);
    for (i, &p) in marked.iter().enumerate() {
        let (x, y) = frame.to_svg(p);
        let _ = writeln!(
            svg,
            r#"    <path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}"/>"#,
            x - 6.0, y - 6.0, x + 6.0, y + 6.0, x - 6.0, y + 6.0, x + 6.0, y - 6.0
        );
        let _ = writeln!(svg, r#"    <text x="{:.3}" y="{:.3}" stroke="none">p{}</text>"#, x + 8.0, y - 8.0, i + 1);
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, "</svg>");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_points_lie_on_the_frame() {
        let f = Frame { min: (-1.0, -1.0), max: (1.0, 1.0) };
        assert_eq!(f.exit((0.0, 0.0), LatticeVector::new(1, 0)), (1.0, 0.0));
        assert_eq!(f.exit((0.0, 0.0), LatticeVector::new(-1, -1)), (-1.0, -1.0));
        assert_eq!(f.exit((0.5, 0.0), LatticeVector::new(1, 2)), (1.0, 1.0));
    }
}
