//! Shared reference data and property checks for the integration targets.
//!
//! The reference polygons and densities here are written out by hand from the
//! closed-form descriptions (vertices as multiples of fundamental weights,
//! positive roots in coordinates), not taken from the library's case builder.
//! Integrals go through Green's theorem along the boundary, so nothing is
//! shared with the triangle pullback used by the engine.

#![allow(dead_code)]

use ke_polytope::dhmeasure::{integrate_polygon, integrate_triangles, Poly2};
use ke_polytope::polytope::{contains, triangulate_from, Polygon};
use ke_polytope::{QuadNum, Rat, Vec2};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn q(rn: i64, rd: i64, sn: i64, sd: i64) -> QuadNum {
    QuadNum::frac(rn, rd, sn, sd)
}

pub fn v(x: QuadNum, y: QuadNum) -> Vec2 {
    Vec2::new(x, y)
}

pub fn big(s: &str) -> QuadNum {
    QuadNum::new(Rat::zero(), s.parse().unwrap())
}

pub struct Reference {
    pub id: u32,
    pub vertices: Vec<Vec2>,
    pub positive_roots: Vec<Vec2>,
    pub multiplicity: u32,
    pub volume: QuadNum,
    pub barycenter: Vec2,
    pub proportionality: Option<QuadNum>,
}

/// ϖ1 = (1/2, √3/6), ϖ2 = (0, √3/3) for A2; ϖ1 = (1/2, √3/2), ϖ2 = (0, √3)
/// for G2.
fn a2_triangle(k: i64) -> Vec<Vec2> {
    vec![
        Vec2::zero(),
        v(q(k, 2, 0, 1), q(0, 1, k, 6)),
        v(QuadNum::zero(), q(0, 1, k, 3)),
    ]
}

fn a2_roots() -> Vec<Vec2> {
    vec![
        v(q(1, 1, 0, 1), QuadNum::zero()),
        v(q(-1, 2, 0, 1), q(0, 1, 1, 2)),
        v(q(1, 2, 0, 1), q(0, 1, 1, 2)),
    ]
}

fn g2_roots() -> Vec<Vec2> {
    vec![
        v(q(1, 1, 0, 1), QuadNum::zero()),
        v(q(-3, 2, 0, 1), q(0, 1, 1, 2)),
        v(q(-1, 2, 0, 1), q(0, 1, 1, 2)),
        v(q(1, 2, 0, 1), q(0, 1, 1, 2)),
        v(q(3, 2, 0, 1), q(0, 1, 1, 2)),
        v(QuadNum::zero(), QuadNum::sqrt3()),
    ]
}

pub fn references() -> Vec<Reference> {
    let a2 = |id, k, m, vol: QuadNum, bx: QuadNum, by: QuadNum, c| Reference {
        id,
        vertices: a2_triangle(k),
        positive_roots: a2_roots(),
        multiplicity: m,
        volume: vol,
        barycenter: v(bx, by),
        proportionality: Some(c),
    };
    vec![
        a2(
            1,
            6,
            1,
            q(0, 1, 27, 5),
            q(5, 4, 0, 1),
            q(0, 1, 5, 4),
            q(5, 4, 0, 1),
        ),
        a2(
            2,
            5,
            2,
            q(0, 1, 78125, 18432),
            q(10, 9, 0, 1),
            q(0, 1, 10, 9),
            q(10, 9, 0, 1),
        ),
        a2(
            3,
            18,
            4,
            big("847288609443/490"),
            q(21, 5, 0, 1),
            q(0, 1, 21, 5),
            q(21, 20, 0, 1),
        ),
        a2(
            4,
            34,
            8,
            big("5770627412348402378939569991057/501930"),
            q(221, 27, 0, 1),
            q(0, 1, 221, 27),
            q(221, 216, 0, 1),
        ),
        Reference {
            id: 5,
            vertices: vec![
                Vec2::zero(),
                v(q(4, 1, 0, 1), q(0, 1, 4, 1)),
                v(QuadNum::zero(), q(0, 1, 4, 1)),
            ],
            positive_roots: g2_roots(),
            multiplicity: 1,
            volume: q(0, 1, 29952, 1),
            barycenter: v(q(512, 273, 0, 1), q(0, 1, 32, 9)),
            proportionality: None,
        },
        Reference {
            id: 6,
            vertices: vec![
                Vec2::zero(),
                v(q(7, 2, 0, 1), q(0, 1, 7, 2)),
                v(QuadNum::zero(), q(0, 1, 7, 2)),
            ],
            positive_roots: g2_roots(),
            multiplicity: 2,
            volume: big("34755472161711/720896"),
            barycenter: v(q(139601, 79360, 0, 1), q(0, 1, 49, 15)),
            proportionality: None,
        },
    ]
}

pub fn reference_density(r: &Reference) -> Poly2 {
    let mut f = Poly2::one();
    for a in &r.positive_roots {
        let lin = Poly2::affine(&QuadNum::zero(), &a.x, &a.y);
        f = &f * &lin.pow(r.multiplicity);
    }
    f
}

/// `∫∫_P f dA = ∮ F dy` with `∂F/∂x = f`, boundary taken counter-clockwise.
pub fn green_integral(f: &Poly2, vertices: &[Vec2]) -> QuadNum {
    let mut big_f = Poly2::zero();
    for (&(i, j), c) in f.terms() {
        let k = Rat::frac(1, i as i64 + 1);
        big_f = &big_f + &Poly2::monomial(c.scale(&k), i + 1, j);
    }
    let n = vertices.len();
    let mut total = QuadNum::zero();
    for e in 0..n {
        let a = &vertices[e];
        let b = &vertices[(e + 1) % n];
        let d = b - a;
        if d.y.is_zero() {
            continue;
        }
        // Edge parameter t lives in the x slot of the substituted polynomial.
        let xt = Poly2::affine(&a.x, &d.x, &QuadNum::zero());
        let yt = Poly2::affine(&a.y, &d.y, &QuadNum::zero());
        let g = big_f.substitute(&xt, &yt);
        let mut edge = QuadNum::zero();
        for (&(k, _), c) in g.terms() {
            edge += &c.scale(&Rat::frac(1, k as i64 + 1));
        }
        total += &(edge * &d.y);
    }
    total
}

pub struct GreenMoments {
    pub volume: QuadNum,
    pub barycenter: Vec2,
}

pub fn green_moments(r: &Reference) -> GreenMoments {
    let f = reference_density(r);
    let volume = green_integral(&f, &r.vertices);
    let mx = green_integral(&(&f * &Poly2::x()), &r.vertices);
    let my = green_integral(&(&f * &Poly2::y()), &r.vertices);
    let inv = volume.inv().unwrap();
    GreenMoments {
        barycenter: v(mx * &inv, my * &inv),
        volume,
    }
}

/// Equality of vertex lists up to cyclic rotation.
pub fn same_cycle(a: &[Vec2], b: &[Vec2]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

// ---- strategies -----------------------------------------------------------

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rat::frac(n, d))
}

pub fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| Rat::frac(n, d))
}

pub fn quad() -> impl Strategy<Value = QuadNum> {
    (small_rat(), small_rat()).prop_map(|(r, s)| QuadNum::new(r, s))
}

pub fn vec2() -> impl Strategy<Value = Vec2> {
    (quad(), quad()).prop_map(|(x, y)| Vec2::new(x, y))
}

// ---- property checks --------------------------------------------------------

pub fn field_axioms(a: &QuadNum, b: &QuadNum, c: &QuadNum) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &QuadNum::zero(), a.clone());
    prop_assert_eq!(a * &QuadNum::one(), a.clone());
    if !a.is_zero() {
        prop_assert_eq!(a * &a.inv().unwrap(), QuadNum::one());
    }
    Ok(())
}

/// `p = Σ ⟨p, α_i^∨⟩ ϖ_i` and `⟨α_i^∨, ϖ_j⟩ = δ_ij`.
pub fn duality(p: &Vec2) -> Result<(), TestCaseError> {
    use ke_polytope::rootdata::{pairing, realize, RootSystem};
    for label in [RootSystem::A2, RootSystem::G2] {
        let r = realize(label);
        let coroots = r.simple_coroots().unwrap();
        for (i, cr) in coroots.iter().enumerate() {
            for (j, w) in r.fundamental_weights.iter().enumerate() {
                prop_assert_eq!(pairing(cr, w), QuadNum::from_int((i == j) as i64));
            }
        }
        let rebuilt = &r.fundamental_weights[0].scale(&pairing(p, &coroots[0]))
            + &r.fundamental_weights[1].scale(&pairing(p, &coroots[1]));
        prop_assert_eq!(&rebuilt, p);
    }
    Ok(())
}

/// Integrals do not depend on the triangulation apex, scale as `λ^(d+2)` for
/// homogeneous degree-`d` densities, and commute with translation.
pub fn integration_laws(
    id: usize,
    exps: (u32, u32),
    lambda: &Rat,
    shift: &Vec2,
) -> Result<(), TestCaseError> {
    let r = &references()[id];
    let poly = Polygon::new(r.vertices.clone()).unwrap();
    let f = &Poly2::monomial(QuadNum::one(), exps.0, exps.1) + &reference_density(r);

    // Cut the third corner off so the fan triangulations genuinely differ.
    let half = q(1, 2, 0, 1);
    let [v0, v1, v2] = [&r.vertices[0], &r.vertices[1], &r.vertices[2]];
    let quad = vec![
        v0.clone(),
        v1.clone(),
        v2 + &(v1 - v2).scale(&half),
        v2 + &(v0 - v2).scale(&half),
    ];
    let cut = Polygon::new(quad.clone()).unwrap();
    let base = integrate_triangles(&f, &triangulate_from(&cut, 0)).unwrap();
    for apex in 1..4 {
        prop_assert_eq!(
            integrate_triangles(&f, &triangulate_from(&cut, apex)).unwrap(),
            base.clone()
        );
    }
    prop_assert_eq!(green_integral(&f, &quad), base);

    let h = reference_density(r);
    let d = h.degree();
    let l = QuadNum::from_rat(lambda.clone());
    let scaled = Polygon::new(r.vertices.iter().map(|p| p.scale(&l)).collect()).unwrap();
    prop_assert_eq!(
        integrate_polygon(&h, &scaled).unwrap(),
        integrate_polygon(&h, &poly).unwrap() * l.pow(d + 2)
    );

    let moved = Polygon::new(r.vertices.iter().map(|p| p + shift).collect()).unwrap();
    let pulled = f.substitute(
        &Poly2::affine(&shift.x, &QuadNum::one(), &QuadNum::zero()),
        &Poly2::affine(&shift.y, &QuadNum::zero(), &QuadNum::one()),
    );
    prop_assert_eq!(
        integrate_polygon(&f, &moved).unwrap(),
        integrate_polygon(&pulled, &poly).unwrap()
    );
    Ok(())
}

/// Positive convex combinations are interior, edge points are on the
/// boundary, and points pushed out past a vertex are outside.
pub fn membership(id: usize, w: (Rat, Rat, Rat), t: &Rat) -> Result<(), TestCaseError> {
    let r = &references()[id];
    let poly = Polygon::new(r.vertices.clone()).unwrap();
    let vs = poly.vertices();
    let total = &(&w.0 + &w.1) + &w.2;
    let wq = |x: &Rat| QuadNum::from_rat(x.checked_div(&total).unwrap());
    let inner = &(&vs[0].scale(&wq(&w.0)) + &vs[1].scale(&wq(&w.1))) + &vs[2].scale(&wq(&w.2));
    prop_assert!(contains(&poly, &inner, true));
    prop_assert!(contains(&poly, &inner, false));

    let tq = QuadNum::from_rat(t.clone());
    for i in 0..vs.len() {
        let a = &vs[i];
        let b = &vs[(i + 1) % vs.len()];
        let on_edge = a + &(b - a).scale(&tq);
        prop_assert!(contains(&poly, &on_edge, false));
        prop_assert!(!contains(&poly, &on_edge, true));

        let centroid = (&(&vs[0] + &vs[1]) + &vs[2]).scale(&q(1, 3, 0, 1));
        let outside = a + &(a - &centroid).scale(&tq);
        prop_assert!(!contains(&poly, &outside, false));
    }
    Ok(())
}

/// Rotation by `k·60°`, whose matrix has entries in Q(√3).
pub fn rotate60(p: &Vec2, k: u32) -> Vec2 {
    let (c, s) = (q(1, 2, 0, 1), q(0, 1, 1, 2));
    let mut out = p.clone();
    for _ in 0..k % 6 {
        out = v(
            &(&c * &out.x) - &(&s * &out.y),
            &(&s * &out.x) + &(&c * &out.y),
        );
    }
    out
}

/// Cone membership is unchanged by positive rescaling of the generators and
/// by rotating generators, apex and point together.
pub fn cone_invariance(
    id: usize,
    point: &Vec2,
    l1: &Rat,
    l2: &Rat,
    k: u32,
) -> Result<(), TestCaseError> {
    use ke_polytope::criterion::{cone_generators, in_relative_interior};
    let case = ke_polytope::builtin_case(id as u32 + 1).unwrap();
    let gens = cone_generators(&case);
    let apex = case.two_rho_theta.clone();
    let base = in_relative_interior(point, &apex, &gens).unwrap();

    let (q1, q2) = (QuadNum::from_rat(l1.clone()), QuadNum::from_rat(l2.clone()));
    let scaled = [gens[0].scale(&q1), gens[1].scale(&q2)];
    let s = in_relative_interior(point, &apex, &scaled).unwrap();
    prop_assert_eq!(s.inside, base.inside);
    prop_assert_eq!(&s.s * &q1, base.s.clone());
    prop_assert_eq!(&s.t * &q2, base.t.clone());

    let rotated = [rotate60(&gens[0], k), rotate60(&gens[1], k)];
    let rt = in_relative_interior(&rotate60(point, k), &rotate60(&apex, k), &rotated).unwrap();
    prop_assert_eq!(rt, base);
    Ok(())
}
