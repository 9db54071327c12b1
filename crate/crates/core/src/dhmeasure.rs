//! Duistermaat–Heckman density and exact integration over polygons.
//!
//! The density is a product of linear forms `⟨α, p⟩^m` over the positive roots
//! of the realization. It is expanded into a [`Poly2`] and integrated over each
//! fan triangle by pulling it back to the standard simplex, where
//! `∫ u^a v^b = a! b! / (a + b + 2)!`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::One;

use crate::casedb::CaseRecord;
use crate::error::{Error, Result};
use crate::polytope::{halfplanes_from_case, intersect, triangulate, Polygon, Triangle};
use crate::qfield::{QuadNum, Rat};
use crate::rootdata::{realize, Vec2};

/// Sparse bivariate polynomial `Σ c_ij x^i y^j` with no stored zero terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), QuadNum>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: QuadNum) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Poly2::constant(QuadNum::one())
    }

    pub fn monomial(c: QuadNum, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    pub fn x() -> Self {
        Poly2::monomial(QuadNum::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly2::monomial(QuadNum::one(), 0, 1)
    }

    /// `c + a·x + b·y`.
    pub fn affine(c: &QuadNum, a: &QuadNum, b: &QuadNum) -> Self {
        let mut p = Poly2::zero();
        p.add_term((0, 0), c.clone());
        p.add_term((1, 0), a.clone());
        p.add_term((0, 1), b.clone());
        p
    }

    /// The linear form `p ↦ ⟨v, p⟩`.
    pub fn linear_form(v: &Vec2) -> Self {
        Poly2::affine(&QuadNum::zero(), &v.x, &v.y)
    }

    fn add_term(&mut self, key: (u32, u32), c: QuadNum) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &QuadNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> QuadNum {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|&(i, j)| i + j == d)
    }

    pub fn scale(&self, k: &QuadNum) -> Poly2 {
        let mut out = Poly2::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, c * k);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly2 {
        let mut acc = Poly2::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, p: &Vec2) -> QuadNum {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * &p.x.pow(i) * p.y.pow(j))
            .sum()
    }

    /// `self(x(u, v), y(u, v))`, the result expressed in the variables of `x` and `y`.
    pub fn substitute(&self, x: &Poly2, y: &Poly2) -> Poly2 {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let powers = |base: &Poly2, n: u32| {
            let mut v = vec![Poly2::one()];
            for k in 1..=n as usize {
                let next = &v[k - 1] * base;
                v.push(next);
            }
            v
        };
        let xp = powers(x, max_i);
        let yp = powers(y, max_j);
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let t = &xp[i as usize] * &yp[j as usize];
            for (&key, d) in &t.terms {
                out.add_term(key, c * d);
            }
        }
        out
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&key, c) in &rhs.terms {
            out.add_term(key, c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Π_α ⟨α, p⟩^multiplicity` over the given roots.
pub fn density_from_roots(roots: &[Vec2], multiplicity: u32) -> Poly2 {
    roots.iter().fold(Poly2::one(), |acc, r| {
        &acc * &Poly2::linear_form(r).pow(multiplicity)
    })
}

/// Duistermaat–Heckman density of a case: the positive roots of its
/// restricted type, each raised to the case multiplicity.
pub fn density(case: &CaseRecord) -> Poly2 {
    density_from_roots(
        &realize(case.restricted_type).positive_roots,
        case.multiplicity,
    )
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for k in 1..=n {
        let next = &out[k - 1] * BigInt::from(k);
        out.push(next);
    }
    out
}

/// Exact `∫∫_tri f dx dy`.
pub fn integrate_triangle(f: &Poly2, tri: &Triangle) -> Result<QuadNum> {
    let [v0, v1, v2] = tri;
    let e1 = v1 - v0;
    let e2 = v2 - v0;
    let jacobian = e1.cross(&e2);
    if jacobian.is_zero() {
        return Err(Error::DegenerateInput("triangle has zero area".into()));
    }
    // p = v0 + u·e1 + v·e2, expressed as polynomials in (u, v).
    let x = Poly2::affine(&v0.x, &e1.x, &e2.x);
    let y = Poly2::affine(&v0.y, &e1.y, &e2.y);
    let pulled = f.substitute(&x, &y);
    let fact = factorials(pulled.degree() as usize + 2);
    let mut total = QuadNum::zero();
    for (&(a, b), c) in pulled.terms() {
        let (a, b) = (a as usize, b as usize);
        let weight = Rat::new(&fact[a] * &fact[b], fact[a + b + 2].clone())?;
        total += &c.scale(&weight);
    }
    Ok(total * jacobian.abs())
}

/// Sum of triangle integrals over any list of triangles.
pub fn integrate_triangles(f: &Poly2, triangles: &[Triangle]) -> Result<QuadNum> {
    triangles
        .iter()
        .map(|t| integrate_triangle(f, t))
        .sum::<Result<QuadNum>>()
}

pub fn integrate_polygon(f: &Poly2, poly: &Polygon) -> Result<QuadNum> {
    integrate_triangles(f, &triangulate(poly))
}

/// Zeroth and first moments of the density over a case's moment polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DhMoments {
    pub polygon: Polygon,
    pub volume: QuadNum,
    pub first_moment: Vec2,
}

impl DhMoments {
    pub fn barycenter(&self) -> Result<Vec2> {
        if self.volume.is_zero() {
            return Err(Error::ZeroMass);
        }
        let inv = self.volume.inv()?;
        Ok(self.first_moment.scale(&inv))
    }
}

pub fn moments_over(f: &Poly2, polygon: Polygon) -> Result<DhMoments> {
    let tris = triangulate(&polygon);
    let volume = integrate_triangles(f, &tris)?;
    let mx = integrate_triangles(&(f * &Poly2::x()), &tris)?;
    let my = integrate_triangles(&(f * &Poly2::y()), &tris)?;
    Ok(DhMoments {
        polygon,
        volume,
        first_moment: Vec2::new(mx, my),
    })
}

pub fn moments(case: &CaseRecord) -> Result<DhMoments> {
    let polygon = intersect(&halfplanes_from_case(case))?;
    moments_over(&density(case), polygon)
}

pub fn volume(case: &CaseRecord) -> Result<QuadNum> {
    let polygon = intersect(&halfplanes_from_case(case))?;
    integrate_polygon(&density(case), &polygon)
}

pub fn barycenter(case: &CaseRecord) -> Result<Vec2> {
    moments(case)?.barycenter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casedb::builtin_case;
    use crate::polytope::{contains, triangulate_from};

    fn q(rn: i64, rd: i64, sn: i64, sd: i64) -> QuadNum {
        QuadNum::frac(rn, rd, sn, sd)
    }

    fn pi(x: i64, y: i64) -> Vec2 {
        Vec2::new(QuadNum::from_int(x), QuadNum::from_int(y))
    }

    #[test]
    fn case_one_density_expansion() {
        let d = density(&builtin_case(1).unwrap());
        let mut expected = Poly2::monomial(q(3, 4, 0, 1), 1, 2);
        expected = &expected + &Poly2::monomial(q(-1, 4, 0, 1), 3, 0);
        assert_eq!(d, expected);
    }

    #[test]
    fn case_two_density_is_square() {
        let d1 = density(&builtin_case(1).unwrap());
        assert_eq!(density(&builtin_case(2).unwrap()), &d1 * &d1);
    }

    #[test]
    fn empty_product_is_one() {
        let roots = realize(crate::rootdata::RootSystem::G2).positive_roots;
        assert_eq!(density_from_roots(&roots, 0), Poly2::one());
    }

    #[test]
    fn degrees() {
        let degs: Vec<u32> = (1..=6)
            .map(|i| density(&builtin_case(i).unwrap()).degree())
            .collect();
        assert_eq!(degs, vec![3, 6, 12, 24, 6, 12]);
    }

    #[test]
    fn simplex_integrals() {
        let std_tri = [pi(0, 0), pi(1, 0), pi(0, 1)];
        assert_eq!(
            integrate_triangle(&Poly2::one(), &std_tri).unwrap(),
            q(1, 2, 0, 1)
        );
        assert_eq!(
            integrate_triangle(&Poly2::x(), &std_tri).unwrap(),
            q(1, 6, 0, 1)
        );
        let big = [pi(0, 0), pi(2, 0), pi(0, 2)];
        let xy = &Poly2::x() * &Poly2::y();
        assert_eq!(integrate_triangle(&xy, &big).unwrap(), q(2, 3, 0, 1));
        // Orientation does not matter.
        let cw = [pi(0, 0), pi(0, 2), pi(2, 0)];
        assert_eq!(integrate_triangle(&xy, &cw).unwrap(), q(2, 3, 0, 1));
    }

    #[test]
    fn degenerate_triangle() {
        let flat = [pi(0, 0), pi(1, 1), pi(2, 2)];
        assert!(matches!(
            integrate_triangle(&Poly2::one(), &flat),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn case_one_values() {
        let c = builtin_case(1).unwrap();
        assert_eq!(volume(&c).unwrap(), q(0, 1, 27, 5));
        assert_eq!(
            barycenter(&c).unwrap(),
            Vec2::new(q(5, 4, 0, 1), q(0, 1, 5, 4))
        );
    }

    #[test]
    fn zero_mass() {
        let m = DhMoments {
            polygon: Polygon::new(vec![pi(0, 0), pi(1, 0), pi(0, 1)]).unwrap(),
            volume: QuadNum::zero(),
            first_moment: Vec2::zero(),
        };
        assert!(matches!(m.barycenter(), Err(Error::ZeroMass)));
    }

    #[test]
    fn apex_independence_and_scaling() {
        let c = builtin_case(1).unwrap();
        let f = density(&c);
        // A quadrilateral with no special alignment.
        let quad = Polygon::new(vec![
            pi(0, 0),
            Vec2::new(q(3, 1, 0, 1), q(0, 1, 0, 1)),
            Vec2::new(q(4, 1, 0, 1), q(1, 1, 1, 2)),
            Vec2::new(q(1, 2, 0, 1), q(0, 1, 2, 1)),
        ])
        .unwrap();
        let base = integrate_polygon(&f, &quad).unwrap();
        for apex in 1..4 {
            assert_eq!(
                integrate_triangles(&f, &triangulate_from(&quad, apex)).unwrap(),
                base
            );
        }
        let doubled = Polygon::new(
            quad.vertices()
                .iter()
                .map(|v| v.scale(&QuadNum::from_int(2)))
                .collect(),
        )
        .unwrap();
        assert!(f.is_homogeneous());
        assert_eq!(
            integrate_polygon(&f, &doubled).unwrap(),
            base * QuadNum::from_int(32)
        );
    }

    #[test]
    fn density_positive_at_polytope_centroids() {
        for id in 1..=6 {
            let c = builtin_case(id).unwrap();
            let poly = intersect(&halfplanes_from_case(&c)).unwrap();
            let n = poly.vertices().len() as i64;
            let centroid = poly
                .vertices()
                .iter()
                .fold(Vec2::zero(), |a, v| &a + v)
                .scale_rat(&Rat::frac(1, n));
            assert!(contains(&poly, &centroid, true));
            assert!(density(&c).eval(&centroid).is_positive(), "case {id}");
        }
    }
}
