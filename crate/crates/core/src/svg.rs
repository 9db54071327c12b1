//! SVG rendering of a moment polygon with its root data and cone test.
//!
//! Geometry is converted to `f64` only here. The viewport is the bounding box
//! of everything drawn (polygon, arrow tips, 2ρ_θ, barycenter) widened by 10%
//! on each side; cone rays are clipped to it. Screen y points down, so every
//! y coordinate is negated on output.

use std::fmt::Write as _;

use crate::casedb::CaseRecord;
use crate::criterion::Verdict;
use crate::error::Result;
use crate::rootdata::realize;

type Pt = (f64, f64);

const MARGIN: f64 = 0.10;

struct Frame {
    min: Pt,
    max: Pt,
}

impl Frame {
    fn around(points: &[Pt]) -> Frame {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        let (dx, dy) = ((max.0 - min.0) * MARGIN, (max.1 - min.1) * MARGIN);
        Frame {
            min: (min.0 - dx, min.1 - dy),
            max: (max.0 + dx, max.1 + dy),
        }
    }

    fn width(&self) -> f64 {
        self.max.0 - self.min.0
    }

    fn height(&self) -> f64 {
        self.max.1 - self.min.1
    }

    /// Largest `t ≥ 0` keeping `p + t·d` inside the frame (slab clipping).
    fn exit_time(&self, p: Pt, d: Pt) -> f64 {
        let mut t = f64::INFINITY;
        for (pi, di, lo, hi) in [
            (p.0, d.0, self.min.0, self.max.0),
            (p.1, d.1, self.min.1, self.max.1),
        ] {
            if di > 0.0 {
                t = t.min((hi - pi) / di);
            } else if di < 0.0 {
                t = t.min((lo - pi) / di);
            }
        }
        t.max(0.0)
    }
}

fn num(v: f64) -> String {
    // Fixed precision keeps output stable; "-0.000000" is normalised away.
    let s = format!("{v:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".into()
    } else {
        s
    }
}

fn arrow(out: &mut String, class: &str, label: &str, tip: Pt) {
    let _ = writeln!(
        out,
        r#"  <line class="{class}" x1="0.000000" y1="0.000000" x2="{}" y2="{}" marker-end="url(#arrow)"/>"#,
        num(tip.0),
        num(-tip.1)
    );
    let _ = writeln!(
        out,
        r#"  <text class="label" x="{}" y="{}">{label}</text>"#,
        num(tip.0),
        num(-tip.1)
    );
}

/// Renders the figure for `case` given its computed verdict.
pub fn render(case: &CaseRecord, verdict: &Verdict) -> Result<String> {
    let roots = realize(case.restricted_type);
    let vertices = verdict
        .polytope_vertices
        .iter()
        .map(|v| v.to_f64())
        .collect::<Result<Vec<Pt>>>()?;
    let simple = roots
        .simple_roots
        .iter()
        .map(|v| v.to_f64())
        .collect::<Result<Vec<Pt>>>()?;
    let weights = roots
        .fundamental_weights
        .iter()
        .map(|v| v.to_f64())
        .collect::<Result<Vec<Pt>>>()?;
    let apex = verdict.two_rho_theta.to_f64()?;
    let bary = verdict.barycenter.to_f64()?;
    let gens = verdict
        .cone_generators
        .iter()
        .map(|v| v.to_f64())
        .collect::<Result<Vec<Pt>>>()?;

    let mut extent = vertices.clone();
    extent.extend(&simple);
    extent.extend(&weights);
    extent.extend([(0.0, 0.0), apex, bary]);
    let frame = Frame::around(&extent);
    let unit = frame.width().max(frame.height()) / 200.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="600" height="{}">"#,
        num(frame.min.0),
        num(-frame.max.1),
        num(frame.width()),
        num(frame.height()),
        num((600.0 * frame.height() / frame.width()).round())
    );
    let _ = writeln!(
        out,
        "  <title>Moment polytope of case {}: {}</title>",
        verdict.case_id,
        xml_escape(&verdict.name)
    );
    let _ = writeln!(
        out,
        r#"  <defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>"#
    );
    let _ = writeln!(
        out,
        r#"  <style>line, path {{ vector-effect: non-scaling-stroke; }} .polytope {{ fill: #dde8f6; stroke: #1f3b73; stroke-width: 2; }} .root {{ stroke: #444; stroke-width: 1.5; }} .weight {{ stroke: #8a2be2; stroke-width: 1.5; }} .cone-ray {{ stroke: #b22222; stroke-width: 1.5; stroke-dasharray: 6 4; }} .label {{ font-size: {}px; }}</style>"#,
        num(6.0 * unit)
    );

    let mut d = String::new();
    for (i, &(x, y)) in vertices.iter().enumerate() {
        let _ = write!(
            d,
            "{} {} {} ",
            if i == 0 { "M" } else { "L" },
            num(x),
            num(-y)
        );
    }
    d.push('Z');
    let _ = writeln!(out, r#"  <path class="polytope" d="{d}"/>"#);

    for (i, &tip) in simple.iter().enumerate() {
        arrow(&mut out, "root", &format!("α{}", i + 1), tip);
    }
    for (i, &tip) in weights.iter().enumerate() {
        arrow(&mut out, "weight", &format!("ϖ{}", i + 1), tip);
    }

    for &g in &gens {
        let t = frame.exit_time(apex, g);
        let end = (apex.0 + t * g.0, apex.1 + t * g.1);
        let _ = writeln!(
            out,
            r#"  <line class="cone-ray" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(apex.0),
            num(-apex.1),
            num(end.0),
            num(-end.1)
        );
    }

    let r = 2.5 * unit;
    let _ = writeln!(
        out,
        r##"  <rect class="two-rho" x="{}" y="{}" width="{}" height="{}" fill="#b22222"/>"##,
        num(apex.0 - r),
        num(-apex.1 - r),
        num(2.0 * r),
        num(2.0 * r)
    );
    let _ = writeln!(
        out,
        r##"  <circle class="barycenter" cx="{}" cy="{}" r="{}" fill="#000"/>"##,
        num(bary.0),
        num(-bary.1),
        num(r)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
