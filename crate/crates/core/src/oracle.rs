//! Floating-point Monte-Carlo cross-check of volumes and barycenters.
//!
//! Points are drawn uniformly from the polygon's bounding box and rejected by
//! testing the defining half-planes in `f64`. The density is evaluated as a
//! product of linear factors, never through the expanded polynomial, so the
//! estimate shares nothing with the exact integration path except the
//! half-plane description.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64(seed)`; each sample
//! consumes two `f64` draws (x then y), each built from the top 53 bits of one
//! `u64` output. A given `(samples, seed)` therefore reproduces bit-for-bit on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::casedb::CaseRecord;
use crate::error::{Error, Result};
use crate::polytope::{halfplanes_from_case, intersect};
use crate::rootdata::realize;

pub const MIN_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Distance to `exact` in units of the standard error.
    pub fn z_score(&self, exact: f64) -> f64 {
        if self.stderr == 0.0 {
            if self.value == exact {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.value - exact).abs() / self.stderr
        }
    }

    pub fn relative_error(&self, exact: f64) -> f64 {
        ((self.value - exact) / exact).abs()
    }
}

/// Volume and both barycenter coordinates from one sample stream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McMoments {
    pub volume: McEstimate,
    pub barycenter: (McEstimate, McEstimate),
}

struct LinearFactor {
    a: f64,
    b: f64,
}

pub fn mc_moments(case: &CaseRecord, samples: u64, seed: u64) -> Result<McMoments> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let halfplanes = halfplanes_from_case(case);
    let polygon = intersect(&halfplanes)
        .map_err(|e| Error::DegenerateInput(format!("no polygon to sample: {e}")))?;
    let ((x0, y0), (x1, y1)) = polygon.bounding_box_f64()?;
    let (w, h) = (x1 - x0, y1 - y0);
    if !(w > 0.0 && h > 0.0) {
        return Err(Error::DegenerateInput("bounding box has zero area".into()));
    }
    let constraints = halfplanes
        .iter()
        .map(|hp| {
            Ok((
                hp.normal.x.to_f64()?,
                hp.normal.y.to_f64()?,
                hp.offset.to_f64()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let factors = realize(case.restricted_type)
        .positive_roots
        .iter()
        .map(|r| {
            Ok(LinearFactor {
                a: r.x.to_f64()?,
                b: r.y.to_f64()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let m = case.multiplicity as i32;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s_f, mut s_ff) = (0.0f64, 0.0f64);
    let (mut s_x, mut s_xx, mut s_xf) = (0.0f64, 0.0f64, 0.0f64);
    let (mut s_y, mut s_yy, mut s_yf) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples {
        let x = x0 + rng.gen::<f64>() * w;
        let y = y0 + rng.gen::<f64>() * h;
        if !constraints.iter().all(|&(a, b, c)| a * x + b * y >= c) {
            continue;
        }
        let f: f64 = factors
            .iter()
            .map(|l| (l.a * x + l.b * y).powi(m))
            .product();
        let (fx, fy) = (f * x, f * y);
        s_f += f;
        s_ff += f * f;
        s_x += fx;
        s_xx += fx * fx;
        s_xf += fx * f;
        s_y += fy;
        s_yy += fy * fy;
        s_yf += fy * f;
    }

    let n = samples as f64;
    let area = w * h;
    let mean_f = s_f / n;
    let var_f = ((s_ff - n * mean_f * mean_f) / (n - 1.0)).max(0.0);
    let volume = McEstimate {
        value: area * mean_f,
        stderr: area * (var_f / n).sqrt(),
        samples,
        seed,
    };
    // Ratio estimator with delta-method standard error; the residuals
    // g·f - R·f have zero sample mean by construction of R.
    let ratio = |s_g: f64, s_gg: f64, s_gf: f64| -> McEstimate {
        let r = if s_f != 0.0 { s_g / s_f } else { f64::NAN };
        let resid = ((s_gg - 2.0 * r * s_gf + r * r * s_ff) / (n - 1.0)).max(0.0);
        McEstimate {
            value: r,
            stderr: (resid / n).sqrt() / mean_f.abs(),
            samples,
            seed,
        }
    };
    Ok(McMoments {
        volume,
        barycenter: (ratio(s_x, s_xx, s_xf), ratio(s_y, s_yy, s_yf)),
    })
}

pub fn mc_volume(case: &CaseRecord, samples: u64, seed: u64) -> Result<McEstimate> {
    Ok(mc_moments(case, samples, seed)?.volume)
}

pub fn mc_barycenter(
    case: &CaseRecord,
    samples: u64,
    seed: u64,
) -> Result<(McEstimate, McEstimate)> {
    Ok(mc_moments(case, samples, seed)?.barycenter)
}
