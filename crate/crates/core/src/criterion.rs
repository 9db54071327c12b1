//! Kähler–Einstein existence test: is the Duistermaat–Heckman barycenter in
//! the interior of the cone `2ρ_θ + C⁺_θ`?

use crate::casedb::CaseRecord;
use crate::dhmeasure::moments;
use crate::error::{Error, Result};
use crate::qfield::QuadNum;
use crate::rootdata::{decompose, realize, RootSystem, Vec2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeTest {
    pub inside: bool,
    pub s: QuadNum,
    pub t: QuadNum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub case_id: u32,
    pub name: String,
    pub polytope_vertices: Vec<Vec2>,
    pub volume: QuadNum,
    pub barycenter: Vec2,
    pub two_rho_theta: Vec2,
    pub cone_generators: [Vec2; 2],
    pub cone_coefficients: (QuadNum, QuadNum),
    pub ke_exists: bool,
    pub proportionality: Option<QuadNum>,
}

/// Generators of the positive restricted cone.
///
/// A2 cases use the doubled simple roots `2α1, 2α2`; G2 cases use
/// `α1 = (1, 0)` and `2α2 = (-3, √3)`. Only the rays matter.
pub fn cone_generators(case: &CaseRecord) -> [Vec2; 2] {
    let r = realize(case.restricted_type);
    let two = QuadNum::from_int(2);
    let [a1, a2] = r.simple_roots;
    match case.restricted_type {
        RootSystem::A2 => [a1.scale(&two), a2.scale(&two)],
        RootSystem::G2 => [a1, a2.scale(&two)],
    }
}

/// Solves `s·g1 + t·g2 = point - apex`; inside iff `s > 0` and `t > 0`.
pub fn in_relative_interior(point: &Vec2, apex: &Vec2, gens: &[Vec2; 2]) -> Result<ConeTest> {
    let (s, t) = decompose(&(point - apex), &gens[0], &gens[1])
        .map_err(|_| Error::DegenerateInput("cone generators are linearly dependent".into()))?;
    Ok(ConeTest {
        inside: s.is_positive() && t.is_positive(),
        s,
        t,
    })
}

/// `c` with `point = c · direction`, if one exists.
pub fn proportionality(point: &Vec2, direction: &Vec2) -> Option<QuadNum> {
    let c = if !direction.x.is_zero() {
        point.x.checked_div(&direction.x).ok()?
    } else {
        point.y.checked_div(&direction.y).ok()?
    };
    (direction.scale(&c) == *point).then_some(c)
}

pub fn verdict_with_generators(case: &CaseRecord, gens: &[Vec2; 2]) -> Result<Verdict> {
    let m = moments(case)?;
    let barycenter = m.barycenter()?;
    let cone = in_relative_interior(&barycenter, &case.two_rho_theta, gens)?;
    Ok(Verdict {
        case_id: case.id,
        name: case.name.clone(),
        polytope_vertices: m.polygon.vertices().to_vec(),
        volume: m.volume,
        proportionality: proportionality(&barycenter, &case.two_rho_theta),
        barycenter,
        two_rho_theta: case.two_rho_theta.clone(),
        cone_generators: gens.clone(),
        cone_coefficients: (cone.s, cone.t),
        ke_exists: cone.inside,
    })
}

/// Full pipeline for one case.
pub fn verdict(case: &CaseRecord) -> Result<Verdict> {
    verdict_with_generators(case, &cone_generators(case))
}
