//! Case records: the six built-in symmetric varieties and JSON case files.
//!
//! A record carries everything the pipeline needs in realized coordinates:
//! the images of the colors with their anticanonical coefficients, the images
//! of the G-stable divisors, the restricted root type with its multiplicity
//! and the vector 2ρ_θ. Case files may give normals either in the simple
//! coroot basis (colors), the fundamental coweight basis (G-stable divisors),
//! or directly as realized vectors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::{QuadNum, Rat};
use crate::rootdata::{self, realize, RootSystem, Vec2};

/// Reference results stored alongside a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub polytope_vertices: Vec<Vec2>,
    pub volume: QuadNum,
    pub barycenter: Vec2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportionality: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRecord {
    /// 1..=6 for built-in cases, 0 for user-supplied ones without an id.
    pub id: u32,
    pub name: String,
    pub description: Option<String>,
    pub dimension: Option<u32>,
    pub fano_index: Option<u32>,
    pub restricted_type: RootSystem,
    pub multiplicity: u32,
    pub color_normals: Vec<Vec2>,
    pub color_coefficients: Vec<u32>,
    pub gstable_normals: Vec<Vec2>,
    pub two_rho_theta: Vec2,
    /// 2 when the spherical weight lattice is twice the weight lattice.
    pub weight_lattice_scale: u32,
    pub expected: Option<Expected>,
}

impl CaseRecord {
    /// Checks every record invariant, naming the violated clause.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Validation(msg.to_string()));
        if self.color_normals.len() != self.color_coefficients.len() {
            return fail("color_normals and color_coefficients differ in length");
        }
        if self.color_coefficients.iter().any(|&m| m < 1) {
            return fail("color_coefficients must be ≥ 1");
        }
        if self.multiplicity < 1 {
            return fail("multiplicity must be ≥ 1");
        }
        if self.color_normals.iter().any(Vec2::is_zero) {
            return fail("color normals must be nonzero");
        }
        if self.gstable_normals.iter().any(Vec2::is_zero) {
            return fail("gstable normals must be nonzero");
        }
        if !matches!(self.weight_lattice_scale, 1 | 2) {
            return fail("weight_lattice_scale must be 1 or 2");
        }
        let coroots = realize(self.restricted_type).simple_coroots()?;
        if coroots
            .iter()
            .any(|c| !rootdata::pairing(c, &self.two_rho_theta).is_positive())
        {
            return fail("two_rho_theta not strictly dominant");
        }
        Ok(())
    }

    /// Normalized color generators `ρ(D_i)/m_i`.
    pub fn scaled_color_normals(&self) -> Vec<Vec2> {
        self.color_normals
            .iter()
            .zip(&self.color_coefficients)
            .map(|(n, &m)| n.scale_rat(&Rat::frac(1, m as i64)))
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn a2_case(
    id: u32,
    name: &str,
    description: &str,
    dimension: u32,
    fano_index: u32,
    multiplicity: u32,
    color_scale: Rat,
    coefficient: u32,
    gstable_coroot: Rat,
    two_rho_scale: i64,
    weight_lattice_scale: u32,
) -> CaseRecord {
    let r = realize(RootSystem::A2);
    let zero = Rat::zero();
    let color_normals = vec![
        r.from_coroot_basis(&color_scale, &zero).unwrap(),
        r.from_coroot_basis(&zero, &color_scale).unwrap(),
    ];
    let gstable = r
        .from_coroot_basis(&gstable_coroot, &gstable_coroot)
        .unwrap();
    // 2ρ_θ = k(α1 + α2) = (k/2, k√3/2)
    let two_rho_theta = Vec2::new(
        QuadNum::frac(two_rho_scale, 2, 0, 1),
        QuadNum::frac(0, 1, two_rho_scale, 2),
    );
    CaseRecord {
        id,
        name: name.into(),
        description: Some(description.into()),
        dimension: Some(dimension),
        fano_index: Some(fano_index),
        restricted_type: RootSystem::A2,
        multiplicity,
        color_normals,
        color_coefficients: vec![coefficient; 2],
        gstable_normals: vec![gstable],
        two_rho_theta,
        weight_lattice_scale,
        expected: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn g2_case(
    id: u32,
    name: &str,
    description: &str,
    dimension: u32,
    fano_index: u32,
    multiplicity: u32,
    color_scale: Rat,
    coefficient: u32,
    gstable_coweight: Rat,
    weight_lattice_scale: u32,
) -> CaseRecord {
    let r = realize(RootSystem::G2);
    let zero = Rat::zero();
    let color_normals = vec![
        r.from_coroot_basis(&color_scale, &zero).unwrap(),
        r.from_coroot_basis(&zero, &color_scale).unwrap(),
    ];
    let gstable = r.from_coweight_basis(&zero, &gstable_coweight);
    CaseRecord {
        id,
        name: name.into(),
        description: Some(description.into()),
        dimension: Some(dimension),
        fano_index: Some(fano_index),
        restricted_type: RootSystem::G2,
        multiplicity,
        color_normals,
        color_coefficients: vec![coefficient; 2],
        gstable_normals: vec![gstable],
        // 10α1 + 6α2 = (1, 3√3)
        two_rho_theta: Vec2::new(QuadNum::from_int(1), QuadNum::frac(0, 1, 3, 1)),
        weight_lattice_scale,
        expected: None,
    }
}

fn sqrt3_rat(num: &str, den: &str) -> QuadNum {
    let r: Rat = format!("{num}/{den}").parse().expect("literal rational");
    QuadNum::new(Rat::zero(), r)
}

fn expected(
    r: RootSystem,
    vertex_multiples: (Rat, Rat),
    volume: QuadNum,
    barycenter: (QuadNum, QuadNum),
    proportionality: Option<Rat>,
) -> Expected {
    let w = realize(r).fundamental_weights;
    Expected {
        polytope_vertices: vec![
            Vec2::zero(),
            w[0].scale_rat(&vertex_multiples.0),
            w[1].scale_rat(&vertex_multiples.1),
        ],
        volume,
        barycenter: Vec2::new(barycenter.0, barycenter.1),
        proportionality,
    }
}

/// The six nonhomogeneous smooth projective symmetric varieties of Picard
/// number one, in table order.
pub fn builtin_cases() -> Vec<CaseRecord> {
    let h = Rat::frac(1, 2);
    let mh = Rat::frac(-1, 2);
    let one = Rat::one();
    let q = QuadNum::frac;

    let mut c1 = a2_case(
        1,
        "SL(3,C)/SO(3,C)",
        "hyperplane section of LGr(3,6)",
        5,
        3,
        1,
        h.clone(),
        1,
        mh.clone(),
        2,
        2,
    );
    c1.expected = Some(expected(
        RootSystem::A2,
        (Rat::from(6), Rat::from(6)),
        sqrt3_rat("27", "5"),
        (q(5, 4, 0, 1), q(0, 1, 5, 4)),
        Some(Rat::frac(5, 4)),
    ));

    let mut c2 = a2_case(
        2,
        "(SL(3,C) × SL(3,C))/SL(3,C)",
        "hyperplane section of Gr(3,6)",
        8,
        5,
        2,
        one.clone(),
        2,
        -one.clone(),
        2,
        1,
    );
    c2.expected = Some(expected(
        RootSystem::A2,
        (Rat::from(5), Rat::from(5)),
        sqrt3_rat("78125", "18432"),
        (q(10, 9, 0, 1), q(0, 1, 10, 9)),
        Some(Rat::frac(10, 9)),
    ));

    let mut c3 = a2_case(
        3,
        "SL(6,C)/Sp(6,C)",
        "hyperplane section of S6",
        14,
        9,
        4,
        h.clone(),
        4,
        mh.clone(),
        8,
        2,
    );
    c3.expected = Some(expected(
        RootSystem::A2,
        (Rat::from(18), Rat::from(18)),
        sqrt3_rat("847288609443", "490"),
        (q(21, 5, 0, 1), q(0, 1, 21, 5)),
        Some(Rat::frac(21, 20)),
    ));

    let mut c4 = a2_case(
        4,
        "E6/F4",
        "hyperplane section of E7/P7",
        26,
        17,
        8,
        h.clone(),
        8,
        mh.clone(),
        16,
        2,
    );
    c4.expected = Some(expected(
        RootSystem::A2,
        (Rat::from(34), Rat::from(34)),
        sqrt3_rat("5770627412348402378939569991057", "501930"),
        (q(221, 27, 0, 1), q(0, 1, 221, 27)),
        Some(Rat::frac(221, 216)),
    ));

    let mut c5 = g2_case(
        5,
        "G2/(SL(2,C) × SL(2,C))",
        "Cayley Grassmannian",
        8,
        4,
        1,
        h,
        1,
        mh,
        2,
    );
    c5.expected = Some(expected(
        RootSystem::G2,
        (Rat::from(8), Rat::from(4)),
        sqrt3_rat("29952", "1"),
        (q(512, 273, 0, 1), q(0, 1, 32, 9)),
        None,
    ));

    let mut c6 = g2_case(
        6,
        "(G2 × G2)/G2",
        "double Cayley Grassmannian",
        14,
        7,
        2,
        one.clone(),
        2,
        -one,
        1,
    );
    c6.expected = Some(expected(
        RootSystem::G2,
        (Rat::from(7), Rat::frac(7, 2)),
        sqrt3_rat("34755472161711", "720896"),
        (q(139601, 79360, 0, 1), q(0, 1, 49, 15)),
        None,
    ));

    vec![c1, c2, c3, c4, c5, c6]
}

/// Built-in case by table id.
pub fn builtin_case(id: u32) -> Option<CaseRecord> {
    builtin_cases().into_iter().find(|c| c.id == id)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_coroot_basis: Option<[Rat; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec2>,
    pub anticanonical_coefficient: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GStableEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_coweight_combination: Option<[Rat; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec2>,
}

/// On-disk case layout.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fano_index: Option<u32>,
    pub restricted_type: RootSystem,
    pub multiplicity: i64,
    pub colors: Vec<ColorEntry>,
    pub gstable: Vec<GStableEntry>,
    pub two_rho_theta: Vec2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_lattice_scale: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CaseFile {
    pub fn into_record(self) -> Result<CaseRecord> {
        let r = realize(self.restricted_type);
        let mut color_normals = Vec::with_capacity(self.colors.len());
        let mut color_coefficients = Vec::with_capacity(self.colors.len());
        for (i, c) in self.colors.into_iter().enumerate() {
            let n = match (c.normal_coroot_basis, c.normal) {
                (Some([a, b]), None) => r.from_coroot_basis(&a, &b)?,
                (None, Some(v)) => v,
                _ => {
                    return Err(Error::Parse(format!(
                        "colors[{i}]: exactly one of normal_coroot_basis or normal is required"
                    )))
                }
            };
            if c.anticanonical_coefficient < 1 {
                return Err(Error::Validation("color_coefficients must be ≥ 1".into()));
            }
            let m = u32::try_from(c.anticanonical_coefficient).map_err(|_| {
                Error::Validation(format!(
                    "color coefficient {} out of range",
                    c.anticanonical_coefficient
                ))
            })?;
            color_normals.push(n);
            color_coefficients.push(m);
        }
        let mut gstable_normals = Vec::with_capacity(self.gstable.len());
        for (i, g) in self.gstable.into_iter().enumerate() {
            let n = match (g.normal_coweight_combination, g.normal) {
                (Some([a, b]), None) => r.from_coweight_basis(&a, &b),
                (None, Some(v)) => v,
                _ => {
                    return Err(Error::Parse(format!(
                        "gstable[{i}]: exactly one of normal_coweight_combination or normal is required"
                    )))
                }
            };
            gstable_normals.push(n);
        }
        if self.multiplicity < 1 {
            return Err(Error::Validation("multiplicity must be ≥ 1".into()));
        }
        let multiplicity = u32::try_from(self.multiplicity)
            .map_err(|_| Error::Validation("multiplicity out of range".into()))?;
        let record = CaseRecord {
            id: self.id.unwrap_or(0),
            name: self.name,
            description: self.description,
            dimension: self.dimension,
            fano_index: self.fano_index,
            restricted_type: self.restricted_type,
            multiplicity,
            color_normals,
            color_coefficients,
            gstable_normals,
            two_rho_theta: self.two_rho_theta,
            weight_lattice_scale: self.weight_lattice_scale.unwrap_or(1),
            expected: self.expected,
        };
        record.validate()?;
        Ok(record)
    }

    pub fn from_record(case: &CaseRecord) -> CaseFile {
        let r = realize(case.restricted_type);
        let colors = case
            .color_normals
            .iter()
            .zip(&case.color_coefficients)
            .map(|(n, &m)| {
                let [a, b] = r.coroot_coordinates(n);
                match (a.as_rat(), b.as_rat()) {
                    (Some(a), Some(b)) => ColorEntry {
                        normal_coroot_basis: Some([a.clone(), b.clone()]),
                        normal: None,
                        anticanonical_coefficient: m as i64,
                    },
                    _ => ColorEntry {
                        normal_coroot_basis: None,
                        normal: Some(n.clone()),
                        anticanonical_coefficient: m as i64,
                    },
                }
            })
            .collect();
        let gstable = case
            .gstable_normals
            .iter()
            .map(|n| {
                let [a, b] = r.coweight_coordinates(n);
                match (a.as_rat(), b.as_rat()) {
                    (Some(a), Some(b)) => GStableEntry {
                        normal_coweight_combination: Some([a.clone(), b.clone()]),
                        normal: None,
                    },
                    _ => GStableEntry {
                        normal_coweight_combination: None,
                        normal: Some(n.clone()),
                    },
                }
            })
            .collect();
        CaseFile {
            id: (case.id != 0).then_some(case.id),
            name: case.name.clone(),
            description: case.description.clone(),
            dimension: case.dimension,
            fano_index: case.fano_index,
            restricted_type: case.restricted_type,
            multiplicity: case.multiplicity as i64,
            colors,
            gstable,
            two_rho_theta: case.two_rho_theta.clone(),
            weight_lattice_scale: Some(case.weight_lattice_scale),
            expected: case.expected.clone(),
        }
    }
}

pub fn parse_case(text: &str) -> Result<CaseRecord> {
    let file: CaseFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_record()
}

pub fn load_case(path: impl AsRef<Path>) -> Result<CaseRecord> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_case(&text)
}

/// Pretty JSON in the case-file layout.
pub fn case_to_json(case: &CaseRecord) -> String {
    serde_json::to_string_pretty(&CaseFile::from_record(case)).expect("case file serializes")
}
