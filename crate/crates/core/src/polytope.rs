//! Moment polytopes as exact half-plane intersections.

use std::cmp::Ordering;

use crate::casedb::CaseRecord;
use crate::error::{Error, Result};
use crate::qfield::QuadNum;
use crate::rootdata::{pairing, Vec2};

/// `{p : ⟨normal, p⟩ ≥ offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub normal: Vec2,
    pub offset: QuadNum,
}

impl HalfPlane {
    pub fn new(normal: Vec2, offset: QuadNum) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::DegenerateInput("half-plane with zero normal".into()));
        }
        Ok(HalfPlane { normal, offset })
    }

    /// Sign of `⟨normal, p⟩ - offset`.
    pub fn slack_sign(&self, p: &Vec2) -> i8 {
        (pairing(&self.normal, p) - &self.offset).signum()
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        self.slack_sign(p) >= 0
    }
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    /// Wraps a vertex list, checking that it is strictly convex and CCW.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegenerateInput(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            if !(b - a).cross(&(c - b)).is_positive() {
                return Err(Error::DegenerateInput(
                    "vertices are not strictly convex in counter-clockwise order".into(),
                ));
            }
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Twice the signed area (shoelace sum).
    pub fn twice_signed_area(&self) -> QuadNum {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Axis-aligned bounding box in floating point: `(min, max)`.
    pub fn bounding_box_f64(&self) -> Result<((f64, f64), (f64, f64))> {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            let (x, y) = v.to_f64()?;
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        Ok((lo, hi))
    }
}

/// One half-plane per generator of `Q_X`, translated by `2ρ_θ`:
/// `⟨v, p - 2ρ_θ⟩ ≥ -1`.
pub fn halfplanes_from_case(case: &CaseRecord) -> Vec<HalfPlane> {
    case.scaled_color_normals()
        .into_iter()
        .chain(case.gstable_normals.iter().cloned())
        .map(|v| {
            let offset = pairing(&v, &case.two_rho_theta) - QuadNum::one();
            HalfPlane { normal: v, offset }
        })
        .collect()
}

fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> Option<Vec2> {
    let det = a.normal.cross(&b.normal);
    if det.is_zero() {
        return None;
    }
    let inv = det.inv().ok()?;
    let x = (&a.offset * &b.normal.y - &b.offset * &a.normal.y) * &inv;
    let y = (&a.normal.x * &b.offset - &b.normal.x * &a.offset) * &inv;
    Some(Vec2::new(x, y))
}

/// Whether some nonzero direction `d` has `⟨n, d⟩ ≥ 0` for every normal.
/// Assumes the normals span the plane, so any such cone is pointed and has
/// an extreme ray orthogonal to one of the normals.
fn has_recession_direction(halfplanes: &[HalfPlane]) -> bool {
    halfplanes.iter().any(|h| {
        let d = h.normal.perp();
        [d.clone(), -d].iter().any(|dir| {
            halfplanes
                .iter()
                .all(|g| pairing(&g.normal, dir).signum() >= 0)
        })
    })
}

fn lex_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
}

/// Andrew's monotone chain; drops collinear points. Output is CCW.
fn convex_hull(mut points: Vec<Vec2>) -> Vec<Vec2> {
    points.sort_by(lex_cmp);
    points.dedup();
    if points.len() < 3 {
        return points;
    }
    let turn = |o: &Vec2, a: &Vec2, b: &Vec2| (a - o).cross(&(b - o)).signum();
    let mut lower: Vec<Vec2> = Vec::new();
    for p in &points {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for p in points.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Exact bounded intersection of half-planes.
pub fn intersect(halfplanes: &[HalfPlane]) -> Result<Polygon> {
    if halfplanes.iter().any(|h| h.normal.is_zero()) {
        return Err(Error::DegenerateInput("half-plane with zero normal".into()));
    }
    let Some(first) = halfplanes.first() else {
        return Err(Error::UnboundedRegion);
    };
    let spans_plane = halfplanes
        .iter()
        .any(|h| !first.normal.cross(&h.normal).is_zero());

    if !spans_plane {
        // All boundaries parallel: the feasible set is a strip, a half-plane,
        // or empty. Reduce to an interval along the common normal.
        let mut lower: Option<QuadNum> = None;
        let mut upper: Option<QuadNum> = None;
        let base2 = pairing(&first.normal, &first.normal);
        for h in halfplanes {
            // h.normal = c · first.normal
            let c = pairing(&h.normal, &first.normal) * base2.inv()?;
            let bound = &h.offset * &c.inv()?;
            if c.is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        return match (lower, upper) {
            (Some(l), Some(u)) if l > u => Err(Error::EmptyRegion),
            _ => Err(Error::UnboundedRegion),
        };
    }

    // The feasible set is pointed, so it is nonempty iff it has a vertex.
    let mut candidates = Vec::new();
    for (i, a) in halfplanes.iter().enumerate() {
        for b in &halfplanes[i + 1..] {
            if let Some(p) = line_intersection(a, b) {
                if halfplanes.iter().all(|h| h.contains(&p)) {
                    candidates.push(p);
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if has_recession_direction(halfplanes) {
        return Err(Error::UnboundedRegion);
    }
    let hull = convex_hull(candidates);
    if hull.len() < 3 {
        return Err(Error::LowerDimensional);
    }
    Polygon::new(hull)
}

/// Exact membership; `strict` asks for the interior.
pub fn contains(poly: &Polygon, p: &Vec2, strict: bool) -> bool {
    let vs = poly.vertices();
    let n = vs.len();
    (0..n).all(|i| {
        let a = &vs[i];
        let b = &vs[(i + 1) % n];
        let s = (b - a).cross(&(p - a)).signum();
        if strict {
            s > 0
        } else {
            s >= 0
        }
    })
}

pub type Triangle = [Vec2; 3];

/// Fan triangulation from `vertices[0]`.
pub fn triangulate(poly: &Polygon) -> Vec<Triangle> {
    triangulate_from(poly, 0)
}

/// Fan triangulation from the vertex at `apex`.
pub fn triangulate_from(poly: &Polygon, apex: usize) -> Vec<Triangle> {
    let vs = poly.vertices();
    let n = vs.len();
    let a = &vs[apex % n];
    (1..n - 1)
        .map(|k| {
            [
                a.clone(),
                vs[(apex + k) % n].clone(),
                vs[(apex + k + 1) % n].clone(),
            ]
        })
        .collect()
}
