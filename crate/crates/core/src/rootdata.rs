//! Euclidean realizations of the rank-two root systems A2 and G2.
//!
//! The same plane carries roots, weights, coroots and coweights; the pairing
//! between them is the ordinary dot product of the realization.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::{QuadNum, Rat};

/// Exact point or vector of the plane.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl Vec2 {
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        Vec2 { x, y }
    }

    pub fn zero() -> Self {
        Vec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &QuadNum) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    pub fn scale_rat(&self, k: &Rat) -> Vec2 {
        Vec2::new(self.x.scale(k), self.y.scale(k))
    }

    /// z-component of the 2D cross product `self × other`.
    pub fn cross(&self, other: &Vec2) -> QuadNum {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }

    pub fn to_f64(&self) -> Result<(f64, f64)> {
        Ok((self.x.to_f64()?, self.y.to_f64()?))
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        &self + &rhs
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        &self - &rhs
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        -&self
    }
}

/// Euclidean pairing of the realization.
pub fn pairing(u: &Vec2, v: &Vec2) -> QuadNum {
    &u.x * &v.x + &u.y * &v.y
}

/// `2α / ⟨α, α⟩`.
pub fn coroot(alpha: &Vec2) -> Result<Vec2> {
    if alpha.is_zero() {
        return Err(Error::DegenerateInput("coroot of the zero vector".into()));
    }
    let norm2 = pairing(alpha, alpha);
    Ok(alpha.scale(&(QuadNum::from_int(2) * norm2.inv()?)))
}

/// Solves `rows[0]·p = rhs[0]`, `rows[1]·p = rhs[1]` for `p` by Cramer's rule.
pub fn solve_rows(rows: [&Vec2; 2], rhs: [&QuadNum; 2]) -> Result<Vec2> {
    let det = rows[0].cross(rows[1]);
    if det.is_zero() {
        return Err(Error::DegenerateInput("singular 2x2 system".into()));
    }
    let inv = det.inv()?;
    let x = (rhs[0] * &rows[1].y - rhs[1] * &rows[0].y) * &inv;
    let y = (&rows[0].x * rhs[1] - &rows[1].x * rhs[0]) * &inv;
    Ok(Vec2::new(x, y))
}

/// Coefficients `(s, t)` with `s·a + t·b = target`.
pub fn decompose(target: &Vec2, a: &Vec2, b: &Vec2) -> Result<(QuadNum, QuadNum)> {
    let det = a.cross(b);
    if det.is_zero() {
        return Err(Error::DegenerateInput(
            "basis vectors are linearly dependent".into(),
        ));
    }
    let inv = det.inv()?;
    let s = target.cross(b) * &inv;
    let t = a.cross(target) * &inv;
    Ok((s, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSystem {
    A2,
    G2,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystem::A2 => f.pad("A2"),
            RootSystem::G2 => f.pad("G2"),
        }
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A2" => Ok(RootSystem::A2),
            "G2" => Ok(RootSystem::G2),
            other => Err(Error::Parse(format!("unknown root system {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemRealization {
    pub label: RootSystem,
    pub simple_roots: [Vec2; 2],
    /// Positive roots, each with its coordinates `(a, b)` in `a·α1 + b·α2`.
    pub positive_roots: Vec<Vec2>,
    pub positive_root_coords: Vec<(u32, u32)>,
    pub fundamental_weights: [Vec2; 2],
    pub fundamental_coweights: [Vec2; 2],
}

impl RootSystemRealization {
    pub fn simple_coroots(&self) -> Result<[Vec2; 2]> {
        Ok([
            coroot(&self.simple_roots[0])?,
            coroot(&self.simple_roots[1])?,
        ])
    }

    /// Sum of the positive roots.
    pub fn positive_root_sum(&self) -> Vec2 {
        self.positive_roots
            .iter()
            .fold(Vec2::zero(), |acc, r| &acc + r)
    }

    /// `a·α1^∨ + b·α2^∨`.
    pub fn from_coroot_basis(&self, a: &Rat, b: &Rat) -> Result<Vec2> {
        let [c1, c2] = self.simple_coroots()?;
        Ok(&c1.scale_rat(a) + &c2.scale_rat(b))
    }

    /// `a·ϖ1^∨ + b·ϖ2^∨`.
    pub fn from_coweight_basis(&self, a: &Rat, b: &Rat) -> Vec2 {
        let [w1, w2] = &self.fundamental_coweights;
        &w1.scale_rat(a) + &w2.scale_rat(b)
    }

    /// Coordinates of `v` in the simple-coroot basis: `⟨v, ϖ_j⟩`.
    pub fn coroot_coordinates(&self, v: &Vec2) -> [QuadNum; 2] {
        [
            pairing(v, &self.fundamental_weights[0]),
            pairing(v, &self.fundamental_weights[1]),
        ]
    }

    /// Coordinates of `v` in the fundamental-coweight basis: `⟨v, α_j⟩`.
    pub fn coweight_coordinates(&self, v: &Vec2) -> [QuadNum; 2] {
        [
            pairing(v, &self.simple_roots[0]),
            pairing(v, &self.simple_roots[1]),
        ]
    }

    /// Coordinates of `p` in the fundamental-weight basis: `⟨α_j^∨, p⟩`.
    pub fn weight_coordinates(&self, p: &Vec2) -> Result<[QuadNum; 2]> {
        let [c1, c2] = self.simple_coroots()?;
        Ok([pairing(&c1, p), pairing(&c2, p)])
    }
}

fn v(x: QuadNum, y: QuadNum) -> Vec2 {
    Vec2::new(x, y)
}

/// Fundamental weights dual to the simple coroots and fundamental coweights
/// dual to the simple roots.
pub fn solve_fundamental(simple_roots: &[Vec2; 2]) -> Result<([Vec2; 2], [Vec2; 2])> {
    let c1 = coroot(&simple_roots[0])?;
    let c2 = coroot(&simple_roots[1])?;
    let (one, zero) = (QuadNum::one(), QuadNum::zero());
    let weights = [
        solve_rows([&c1, &c2], [&one, &zero])?,
        solve_rows([&c1, &c2], [&zero, &one])?,
    ];
    let coweights = [
        solve_rows([&simple_roots[0], &simple_roots[1]], [&one, &zero])?,
        solve_rows([&simple_roots[0], &simple_roots[1]], [&zero, &one])?,
    ];
    Ok((weights, coweights))
}

pub fn realize(label: RootSystem) -> RootSystemRealization {
    let half_sqrt3 = QuadNum::frac(0, 1, 1, 2);
    let a1 = v(QuadNum::one(), QuadNum::zero());
    let (a2, coords): (Vec2, Vec<(u32, u32)>) = match label {
        RootSystem::A2 => (
            v(QuadNum::frac(-1, 2, 0, 1), half_sqrt3),
            vec![(1, 0), (0, 1), (1, 1)],
        ),
        RootSystem::G2 => (
            v(QuadNum::frac(-3, 2, 0, 1), half_sqrt3),
            vec![(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)],
        ),
    };
    let positive_roots = coords
        .iter()
        .map(|&(a, b)| {
            &a1.scale(&QuadNum::from_int(a as i64)) + &a2.scale(&QuadNum::from_int(b as i64))
        })
        .collect();
    let simple_roots = [a1, a2];
    let (fundamental_weights, fundamental_coweights) =
        solve_fundamental(&simple_roots).expect("simple roots are independent");
    RootSystemRealization {
        label,
        simple_roots,
        positive_roots,
        positive_root_coords: coords,
        fundamental_weights,
        fundamental_coweights,
    }
}
