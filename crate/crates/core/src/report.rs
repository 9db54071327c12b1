//! Serializations of verdicts, case listings and oracle comparisons.
//!
//! JSON goes through `serde_json::Value`, whose maps are ordered by key, so
//! the output is canonical. Exact numbers appear as `{"rat", "sqrt3"}` string
//! pairs; the `approx` float next to them is for humans only.

use serde_json::{json, Map, Value};

use crate::casedb::CaseRecord;
use crate::criterion::Verdict;
use crate::error::{Error, Result};
use crate::oracle::{McEstimate, McMoments};
use crate::qfield::QuadNum;
use crate::rootdata::Vec2;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Headline result over a selection of cases.
#[derive(Clone, Debug)]
pub struct Report {
    pub version: String,
    pub verdicts: Vec<Verdict>,
    pub all_ke: bool,
}

impl Report {
    pub fn new(mut verdicts: Vec<Verdict>) -> Self {
        verdicts.sort_by_key(|v| v.case_id);
        let all_ke = verdicts.iter().all(|v| v.ke_exists);
        Report {
            version: VERSION.to_string(),
            verdicts,
            all_ke,
        }
    }

    pub fn to_value(&self) -> Result<Value> {
        let cases = self
            .verdicts
            .iter()
            .map(verdict_value)
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "version": self.version,
            "cases": cases,
            "all_ke": self.all_ke,
        }))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(pretty(&self.to_value()?))
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!("case {}: {}\n", v.case_id, v.name));
            let verts: Vec<String> = v.polytope_vertices.iter().map(pair).collect();
            out.push_str(&format!("  vertices     {}\n", verts.join(", ")));
            out.push_str(&format!("  volume       \"{}\"\n", v.volume));
            out.push_str(&format!("  barycenter   {}\n", pair(&v.barycenter)));
            out.push_str(&format!("  2rho_theta   {}\n", pair(&v.two_rho_theta)));
            let (s, t) = &v.cone_coefficients;
            out.push_str(&format!("  cone coeffs  (\"{s}\", \"{t}\")\n"));
            if let Some(c) = &v.proportionality {
                out.push_str(&format!("  barycenter = {c} · 2rho_theta\n"));
            }
            let verdict = if v.ke_exists { "KE" } else { "not KE" };
            out.push_str(&format!("  verdict      {verdict}\n"));
        }
        out.push_str(&format!(
            "all Kähler–Einstein: {}\n",
            if self.all_ke { "yes" } else { "no" }
        ));
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id",
            "name",
            "volume",
            "volume_approx",
            "barycenter_x",
            "barycenter_y",
            "cone_s",
            "cone_t",
            "ke_exists",
            "proportionality",
        ])
        .map_err(csv_err)?;
        for v in &self.verdicts {
            let (s, t) = &v.cone_coefficients;
            w.write_record([
                v.case_id.to_string(),
                v.name.clone(),
                v.volume.to_string(),
                v.volume.to_f64()?.to_string(),
                v.barycenter.x.to_string(),
                v.barycenter.y.to_string(),
                s.to_string(),
                t.to_string(),
                v.ke_exists.to_string(),
                v.proportionality
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        finish_csv(w)
    }
}

fn pair(v: &Vec2) -> String {
    format!("(\"{}\", \"{}\")", v.x, v.y)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value always serializes");
    s.push('\n');
    s
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv output: {e}"))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits what it was given"))
}

pub fn quad_value(q: &QuadNum) -> Result<Value> {
    Ok(json!({
        "rat": q.rat().to_string(),
        "sqrt3": q.sqrt3_coeff().to_string(),
        "approx": q.to_f64()?,
    }))
}

pub fn vec_value(v: &Vec2) -> Result<Value> {
    Ok(json!([quad_value(&v.x)?, quad_value(&v.y)?]))
}

fn verdict_value(v: &Verdict) -> Result<Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(v.case_id));
    m.insert("name".into(), json!(v.name));
    m.insert(
        "vertices".into(),
        Value::Array(
            v.polytope_vertices
                .iter()
                .map(vec_value)
                .collect::<Result<_>>()?,
        ),
    );
    m.insert("volume".into(), quad_value(&v.volume)?);
    m.insert("barycenter".into(), vec_value(&v.barycenter)?);
    m.insert("two_rho_theta".into(), vec_value(&v.two_rho_theta)?);
    let (s, t) = &v.cone_coefficients;
    m.insert(
        "cone_coefficients".into(),
        json!([quad_value(s)?, quad_value(t)?]),
    );
    m.insert("ke_exists".into(), json!(v.ke_exists));
    if let Some(c) = &v.proportionality {
        m.insert("proportionality".into(), quad_value(c)?);
    }
    Ok(Value::Object(m))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map(|x| x.to_string())
        .unwrap_or_else(|| "-".into())
}

pub fn case_list_json(cases: &[CaseRecord]) -> String {
    let rows: Vec<Value> = cases
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "name": c.name,
                "description": c.description,
                "dimension": c.dimension,
                "fano_index": c.fano_index,
                "restricted_type": c.restricted_type.to_string(),
                "multiplicity": c.multiplicity,
            })
        })
        .collect();
    pretty(&Value::Array(rows))
}

pub fn case_list_table(cases: &[CaseRecord]) -> String {
    let mut out = format!(
        "{:<3} {:<4} {:<6} {:<5} {:<5} {}\n",
        "id", "dim", "index", "type", "mult", "variety"
    );
    for c in cases {
        let name = match &c.description {
            Some(d) => format!("{} ({d})", c.name),
            None => c.name.clone(),
        };
        out.push_str(&format!(
            "{:<3} {:<4} {:<6} {:<5} {:<5} {}\n",
            c.id,
            opt(&c.dimension),
            opt(&c.fano_index),
            c.restricted_type,
            c.multiplicity,
            name
        ));
    }
    out
}

pub fn case_list_csv(cases: &[CaseRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "id",
        "name",
        "description",
        "dimension",
        "fano_index",
        "restricted_type",
        "multiplicity",
    ])
    .map_err(csv_err)?;
    for c in cases {
        w.write_record([
            c.id.to_string(),
            c.name.clone(),
            c.description.clone().unwrap_or_default(),
            c.dimension.map(|d| d.to_string()).unwrap_or_default(),
            c.fano_index.map(|d| d.to_string()).unwrap_or_default(),
            c.restricted_type.to_string(),
            c.multiplicity.to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}

/// One exact-vs-sampled comparison.
#[derive(Clone, Debug)]
pub struct OracleRow {
    pub case_id: u32,
    pub quantity: &'static str,
    pub exact: String,
    pub exact_approx: f64,
    pub estimate: McEstimate,
}

impl OracleRow {
    pub fn relative_error(&self) -> f64 {
        self.estimate.relative_error(self.exact_approx)
    }

    pub fn z(&self) -> f64 {
        self.estimate.z_score(self.exact_approx)
    }

    pub fn within_three_sigma(&self) -> bool {
        self.z() < 3.0
    }
}

/// Volume and barycenter rows for one case.
pub fn oracle_rows(case_id: u32, verdict: &Verdict, mc: &McMoments) -> Result<Vec<OracleRow>> {
    let row = |quantity, exact: &QuadNum, estimate| -> Result<OracleRow> {
        Ok(OracleRow {
            case_id,
            quantity,
            exact: exact.to_string(),
            exact_approx: exact.to_f64()?,
            estimate,
        })
    };
    Ok(vec![
        row("volume", &verdict.volume, mc.volume)?,
        row("barycenter.x", &verdict.barycenter.x, mc.barycenter.0)?,
        row("barycenter.y", &verdict.barycenter.y, mc.barycenter.1)?,
    ])
}

pub fn oracle_table(rows: &[OracleRow]) -> String {
    let mut out = String::new();
    if let Some(r) = rows.first() {
        out.push_str(&format!(
            "samples {} seed {}\n",
            r.estimate.samples, r.estimate.seed
        ));
    }
    out.push_str(&format!(
        "{:<4} {:<13} {:>22} {:>22} {:>12} {:>10} {:>7}  {}\n",
        "case", "quantity", "exact", "monte-carlo", "stderr", "rel.err", "z", "ok"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<4} {:<13} {:>22.12e} {:>22.12e} {:>12.4e} {:>10.3e} {:>7.3}  {}\n",
            r.case_id,
            r.quantity,
            r.exact_approx,
            r.estimate.value,
            r.estimate.stderr,
            r.relative_error(),
            r.z(),
            if r.within_three_sigma() { "yes" } else { "NO" }
        ));
    }
    let ok = rows.iter().all(OracleRow::within_three_sigma);
    out.push_str(&format!(
        "all within 3 stderr: {}\n",
        if ok { "yes" } else { "no" }
    ));
    out
}

pub fn oracle_json(rows: &[OracleRow]) -> String {
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "id": r.case_id,
                "quantity": r.quantity,
                "exact": r.exact,
                "exact_approx": r.exact_approx,
                "estimate": r.estimate.value,
                "stderr": r.estimate.stderr,
                "relative_error": r.relative_error(),
                "z": r.z(),
                "within_3_stderr": r.within_three_sigma(),
            })
        })
        .collect();
    let (samples, seed) = rows
        .first()
        .map(|r| (r.estimate.samples, r.estimate.seed))
        .unwrap_or_default();
    pretty(&json!({
        "version": VERSION,
        "samples": samples,
        "seed": seed,
        "rows": items,
        "all_within_3_stderr": rows.iter().all(OracleRow::within_three_sigma),
    }))
}

pub fn oracle_csv(rows: &[OracleRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "id",
        "quantity",
        "exact",
        "exact_approx",
        "estimate",
        "stderr",
        "relative_error",
        "z",
    ])
    .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.case_id.to_string(),
            r.quantity.to_string(),
            r.exact.clone(),
            r.exact_approx.to_string(),
            r.estimate.value.to_string(),
            r.estimate.stderr.to_string(),
            r.relative_error().to_string(),
            r.z().to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish_csv(w)
}
