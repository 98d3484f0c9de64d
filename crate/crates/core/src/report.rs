//! Plot data and structured text reports.
//!
//! Reports mirror the catalog layout: one JSON object with the summary on the
//! first line, then one JSON value per record.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::checks::{AlignmentReport, CheckVerdict, Delta0Report, Prop34Report, SweepViolation};
use crate::cone::{anticanonical_shade, q_position, DegreeProfile, QPosition, ShadePosition};
use crate::enumeration::{enumerate_kind, ClassCatalog, ClassKind};
use crate::error::{Error, Result};
use crate::facets::FacetReport;
use crate::lattice::DivisorClass;

/// Number of sampled points on the boundary of `Q` in plot output.
pub const BOUNDARY_SAMPLES: usize = 16;

/// One row of plot data.
#[derive(Clone, PartialEq, Debug)]
pub struct PlotRecord {
    pub id: String,
    pub x: f64,
    pub y: f64,
    pub shade: &'static str,
    pub kind: &'static str,
}

pub fn shade_tag(p: ShadePosition) -> &'static str {
    match p {
        ShadePosition::Interior => "shade-interior",
        ShadePosition::Boundary => "shade-boundary",
        ShadePosition::Outside => "outside-shade",
    }
}

pub fn q_tag(p: QPosition) -> &'static str {
    match p {
        QPosition::Interior => "interior-of-Q",
        QPosition::Boundary => "boundary-of-Q",
        QPosition::Outside => "outside-Q",
    }
}

/// Coordinates in the plane of the `L`-axis and the uniform direction
/// `(0; 1, ..., 1) / sqrt r`, scaled to the unit sphere: `y` is the
/// `L`-component and `x` the uniform one.
pub fn plot_coordinates(d: f64, m: &[f64]) -> (f64, f64) {
    let norm = (d * d + m.iter().map(|x| x * x).sum::<f64>()).sqrt();
    let uniform = m.iter().sum::<f64>() / (m.len() as f64).sqrt();
    (uniform / norm, d / norm)
}

fn class_coordinates(c: &DivisorClass) -> (f64, f64) {
    let f = |x: &num_bigint::BigInt| x.to_f64().unwrap_or(f64::NAN);
    let m: Vec<f64> = c.m().iter().map(f).collect();
    plot_coordinates(f(c.d()), &m)
}

/// Rows for the sampled boundary of `Q`, `R(L)`, `R(K)`, `R(-K)` and every
/// (-1)-class of degree at most `max_degree`.
///
/// The sampled boundary points are `(1; cos t u + sin t w)` with `u` the unit
/// uniform direction and `w = (E_1 - E_2)`-direction, unit length.
pub fn plot_records(r: usize, max_degree: u32) -> Result<Vec<PlotRecord>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "plot data needs r >= 2, got r = {r}"
        )));
    }
    let mut rows = Vec::new();
    let u = 1.0 / (r as f64).sqrt();
    let w = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..BOUNDARY_SAMPLES {
        let t = std::f64::consts::TAU * i as f64 / BOUNDARY_SAMPLES as f64;
        let mut m = vec![t.cos() * u; r];
        m[0] += t.sin() * w;
        m[1] -= t.sin() * w;
        let (x, y) = plot_coordinates(1.0, &m);
        rows.push(PlotRecord {
            id: format!("dQ-{i:02}"),
            x,
            y,
            shade: q_tag(QPosition::Boundary),
            kind: "boundary-sample",
        });
    }
    let k = DivisorClass::canonical(r);
    let specials = [
        ("L", DivisorClass::line(r), "line"),
        ("K", k.clone(), "canonical"),
        ("-K", -&k, "anticanonical"),
    ];
    for (id, c, kind) in specials {
        let (x, y) = class_coordinates(&c);
        rows.push(PlotRecord {
            id: id.to_string(),
            x,
            y,
            shade: q_tag(q_position(&c)?),
            kind,
        });
    }
    let catalog = enumerate_kind(r, max_degree, ClassKind::MinusOne)?;
    let mut shades: HashMap<DivisorClass, ShadePosition> = HashMap::new();
    for c in &catalog {
        let sorted = c.sorted_descending();
        let shade = match shades.get(&sorted) {
            Some(s) => *s,
            None => {
                let s = anticanonical_shade(&sorted)?;
                shades.insert(sorted, s);
                s
            }
        };
        let (x, y) = class_coordinates(c);
        rows.push(PlotRecord {
            id: c.to_string(),
            x,
            y,
            shade: shade_tag(shade),
            kind: "minus-one",
        });
    }
    Ok(rows)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with header `id,x,y,shade,kind`, `\n` line endings and twelve
/// decimals.
pub fn write_plot_csv<W: Write>(rows: &[PlotRecord], mut out: W) -> Result<()> {
    writeln!(out, "id,x,y,shade,kind")?;
    for row in rows {
        writeln!(
            out,
            "{},{:.12},{:.12},{},{}",
            csv_field(&row.id),
            row.x,
            row.y,
            row.shade,
            row.kind
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the plot data for `(r, max_degree)` to `path`; returns the row count.
pub fn emit_plot_data(r: usize, max_degree: u32, path: impl AsRef<Path>) -> Result<usize> {
    let rows = plot_records(r, max_degree)?;
    let file = File::create(path)?;
    write_plot_csv(&rows, BufWriter::new(file))?;
    Ok(rows.len())
}

/// A catalog as CSV with columns `d,m1,...,mr`.
pub fn write_catalog_csv<W: Write>(catalog: &ClassCatalog, mut out: W) -> Result<()> {
    let mut header = vec!["d".to_string()];
    header.extend((1..=catalog.r()).map(|i| format!("m{i}")));
    writeln!(out, "{}", header.join(","))?;
    for c in catalog {
        let row: Vec<String> = c.coords().map(|x| x.to_string()).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// A summary object followed by records.
#[derive(Clone, PartialEq, Debug)]
pub struct StructuredReport {
    pub header: Value,
    pub records: Vec<Value>,
}

impl StructuredReport {
    pub fn new(header: Value) -> Self {
        Self {
            header,
            records: Vec::new(),
        }
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.header)?;
        for r in &self.records {
            writeln!(out, "{r}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("reports are UTF-8")
    }
}

fn violation_records(violations: &[SweepViolation]) -> Vec<Value> {
    violations.iter().map(|v| json!(v.to_string())).collect()
}

fn classes(list: &[DivisorClass]) -> Value {
    Value::Array(list.iter().map(|c| json!(c.to_string())).collect())
}

pub fn delta0_report(rep: &Delta0Report) -> StructuredReport {
    let mut out = StructuredReport::new(json!({
        "report": "delta0",
        "r": rep.r,
        "max_degree": rep.max_degree,
        "expected": 10 - rep.r as i64,
        "classes": rep.classes.to_string(),
        "representatives": rep.representatives,
        "summary": format!("{} classes, {} violations", rep.classes, rep.violations.len()),
    }));
    out.records = violation_records(&rep.violations);
    out
}

pub fn prop34_report(rep: &Prop34Report) -> StructuredReport {
    let mut out = StructuredReport::new(json!({
        "report": "prop34",
        "r": rep.r,
        "max_degree": rep.max_degree,
        "classes": rep.classes.to_string(),
        "representatives": rep.representatives,
        "delta_s_zero": rep.delta_s_zero.to_string(),
        "boundary": rep.boundary.to_string(),
        "outside": rep.outside.to_string(),
        "interior": rep.interior.to_string(),
        "summary": format!("{} classes, {} violations", rep.classes, rep.violations.len()),
    }));
    out.records = violation_records(&rep.violations);
    out
}

pub fn verdict_report(law: &str, class: &DivisorClass, v: &CheckVerdict) -> StructuredReport {
    StructuredReport::new(json!({
        "report": law,
        "class": class.to_string(),
        "holds": v.holds,
        "lhs": v.lhs.to_string(),
        "rhs": v.rhs.to_string(),
        "note": v.note,
        "summary": v.to_string(),
    }))
}

pub fn alignment_report(rep: &AlignmentReport) -> StructuredReport {
    let mut out = StructuredReport::new(json!({
        "report": "alignment",
        "r": rep.r,
        "max_degree": rep.max_degree,
        "classes": rep.classes.to_string(),
        "anticanonical": rep.anticanonical.to_string(),
        "aligned": rep.aligned.to_string(),
        "unaligned_representatives": rep.unaligned.len(),
    }));
    out.records = rep.unaligned.iter().map(|c| json!(c.to_string())).collect();
    out
}

/// Which record families of a [`FacetReport`] to list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FacetSelection {
    pub reductions: bool,
    pub conic: bool,
}

pub fn facet_summary(rep: &FacetReport, select: FacetSelection) -> StructuredReport {
    let mut out = StructuredReport::new(json!({
        "report": "facets",
        "r": rep.r,
        "max_degree": rep.max_degree,
        "reductions": rep.reductions.len(),
        "conic_facets": rep.conic_facets.len(),
        "complete_conic_facets": rep.complete_conic_facets(),
        "expected_conic_size": 2 * (rep.r.max(1) - 1),
        "subfaces": rep.subfaces.len(),
    }));
    if select.reductions {
        for red in &rep.reductions {
            out.records
                .push(json!({ "reduction": classes(red.classes()) }));
        }
        for sub in &rep.subfaces {
            out.records.push(json!({
                "subface": classes(&sub.face),
                "curve": sub.curve.to_string(),
                "ray": sub.ray.to_string(),
                "verified": sub.verify(),
            }));
        }
    }
    if select.conic {
        for f in &rep.conic_facets {
            out.records.push(json!({
                "fiber": f.fiber.to_string(),
                "rays": classes(&f.rays),
                "complete": f.is_complete(),
            }));
        }
    }
    out
}

pub fn cluster_report(
    r: usize,
    max_degree: u32,
    eps: f64,
    outside: &num_bigint::BigUint,
    total: &num_bigint::BigUint,
    profile: &[DegreeProfile],
) -> StructuredReport {
    let mut out = StructuredReport::new(json!({
        "report": "cluster",
        "r": r,
        "max_degree": max_degree,
        "eps": eps,
        "classes": total.to_string(),
        "outside_q_eps": outside.to_string(),
    }));
    out.records = profile
        .iter()
        .map(|p| {
            json!({
                "d": p.d.to_string(),
                "classes": p.classes.to_string(),
                "max_distance_to_q": format!("{:.12}", p.max_distance_to_q),
                "min_angle_to_minus_k": format!("{:.12}", p.min_angle_to_minus_k),
                "max_angle_to_minus_k": format!("{:.12}", p.max_angle_to_minus_k),
            })
        })
        .collect();
    out
}
