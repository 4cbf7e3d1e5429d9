//! File formats: versioned JSON schemas for configurations and
//! squared-distance matrices, JSON and CSV renderings of census reports,
//! and CSV renderings of search results.
//!
//! All numeric payloads are exact-value strings (see
//! [`crate::exactnum::QuadExt`]'s textual format); a configuration file
//! declares its radicand `D` once and every value must stay inside `Q` or
//! `Q(sqrt D)`. Serialization is byte-deterministic, and deserializing a
//! serialized report reproduces it exactly.

use crate::census::{CensusReport, TriangleClass};
use crate::exactnum::{validate_radicand, QuadExt};
use crate::geometry::{Configuration, DistanceMatrix, Point, PointSet};
use crate::search::SearchResult;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
    #[error("{path}: {reason}")]
    Value { path: String, reason: String },
    #[error("a file must contain either \"points\" or \"sq\"")]
    UnknownSchema,
}

fn value_err(path: impl Into<String>, reason: impl ToString) -> FormatError {
    FormatError::Value {
        path: path.into(),
        reason: reason.to_string(),
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigurationFile {
    format: u32,
    dim: usize,
    #[serde(rename = "D")]
    d: u64,
    points: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    format: u32,
    n: usize,
    #[serde(rename = "D")]
    d: u64,
    sq: Vec<Vec<String>>,
}

fn parse_value(text: &str, declared_d: u64, path: &str) -> Result<QuadExt, FormatError> {
    let v: QuadExt = text.parse().map_err(|e| value_err(path, e))?;
    if v.radicand() != 0 && v.radicand() != declared_d {
        return Err(value_err(
            path,
            format!(
                "value uses sqrt({}) but the file declares D = {}",
                v.radicand(),
                declared_d
            ),
        ));
    }
    Ok(v)
}

pub fn configuration_to_json(cfg: &Configuration) -> String {
    let file = ConfigurationFile {
        format: FORMAT_VERSION,
        dim: cfg.dim(),
        d: cfg.radicand(),
        points: cfg
            .points()
            .iter()
            .map(|p| p.coords().iter().map(|c| c.to_string()).collect())
            .collect(),
        labels: cfg.labels().map(|ls| ls.to_vec()),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail") + "\n"
}

pub fn matrix_to_json(dm: &DistanceMatrix) -> String {
    let mut d = 0u64;
    for row in dm.rows() {
        for v in row {
            if v.radicand() != 0 {
                d = v.radicand();
            }
        }
    }
    let file = MatrixFile {
        format: FORMAT_VERSION,
        n: dm.n(),
        d,
        sq: dm
            .rows()
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail") + "\n"
}

pub fn point_set_to_json(set: &PointSet) -> String {
    match set {
        PointSet::Points(cfg) => configuration_to_json(cfg),
        PointSet::Distances(dm) => matrix_to_json(dm),
    }
}

/// Loads either file schema, validating the declared radicand and every
/// value against it, then revalidating the geometry.
pub fn point_set_from_json(text: &str) -> Result<PointSet, FormatError> {
    let raw: serde_json::Value = serde_json::from_str(text)?;
    let Some(obj) = raw.as_object() else {
        return Err(FormatError::UnknownSchema);
    };
    if obj.contains_key("points") {
        let file: ConfigurationFile = serde_json::from_value(raw)?;
        if file.format != FORMAT_VERSION {
            return Err(FormatError::UnsupportedVersion(file.format));
        }
        validate_radicand(file.d).map_err(|e| value_err("D", e))?;
        let mut points = Vec::with_capacity(file.points.len());
        for (i, coords) in file.points.iter().enumerate() {
            if coords.len() != file.dim {
                return Err(value_err(
                    format!("points[{i}]"),
                    format!("expected {} coordinates, found {}", file.dim, coords.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(coords.len());
            for (j, c) in coords.iter().enumerate() {
                parsed.push(parse_value(c, file.d, &format!("points[{i}][{j}]"))?);
            }
            points.push(Point::new(parsed));
        }
        let cfg = Configuration::new(points, file.labels)
            .map_err(|e| value_err("points", e))?;
        Ok(PointSet::Points(cfg))
    } else if obj.contains_key("sq") {
        let file: MatrixFile = serde_json::from_value(raw)?;
        if file.format != FORMAT_VERSION {
            return Err(FormatError::UnsupportedVersion(file.format));
        }
        validate_radicand(file.d).map_err(|e| value_err("D", e))?;
        if file.sq.len() != file.n {
            return Err(value_err(
                "sq",
                format!("expected {} rows, found {}", file.n, file.sq.len()),
            ));
        }
        let mut rows = Vec::with_capacity(file.n);
        for (i, row) in file.sq.iter().enumerate() {
            let mut parsed = Vec::with_capacity(row.len());
            for (j, c) in row.iter().enumerate() {
                parsed.push(parse_value(c, file.d, &format!("sq[{i}][{j}]"))?);
            }
            rows.push(parsed);
        }
        let dm = DistanceMatrix::new(rows).map_err(|e| value_err("sq", e))?;
        Ok(PointSet::Distances(dm))
    } else {
        Err(FormatError::UnknownSchema)
    }
}

#[derive(Serialize, Deserialize)]
struct DistanceClassEntry {
    sq: String,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct TriangleClassEntry {
    sides2: [String; 3],
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct CensusReportFile {
    format: u32,
    n_points: usize,
    distance_classes: Vec<DistanceClassEntry>,
    triangle_classes: Vec<TriangleClassEntry>,
    collinear_triple_count: usize,
}

pub fn census_report_to_json(report: &CensusReport) -> String {
    let file = CensusReportFile {
        format: FORMAT_VERSION,
        n_points: report.n_points,
        distance_classes: report
            .distance_classes
            .iter()
            .map(|(v, count)| DistanceClassEntry {
                sq: v.to_string(),
                count: *count,
            })
            .collect(),
        triangle_classes: report
            .triangle_classes
            .iter()
            .map(|(t, count)| {
                let s = t.sides2();
                TriangleClassEntry {
                    sides2: [s[0].to_string(), s[1].to_string(), s[2].to_string()],
                    count: *count,
                }
            })
            .collect(),
        collinear_triple_count: report.collinear_triple_count,
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail") + "\n"
}

pub fn census_report_from_json(text: &str) -> Result<CensusReport, FormatError> {
    let file: CensusReportFile = serde_json::from_str(text)?;
    if file.format != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(file.format));
    }
    let mut distance_classes = Vec::with_capacity(file.distance_classes.len());
    for (i, e) in file.distance_classes.iter().enumerate() {
        let v: QuadExt = e
            .sq
            .parse()
            .map_err(|err| value_err(format!("distance_classes[{i}].sq"), err))?;
        distance_classes.push((v, e.count));
    }
    let mut triangle_classes = Vec::with_capacity(file.triangle_classes.len());
    for (i, e) in file.triangle_classes.iter().enumerate() {
        let path = format!("triangle_classes[{i}]");
        let mut sides = Vec::with_capacity(3);
        for s in &e.sides2 {
            sides.push(s.parse::<QuadExt>().map_err(|err| value_err(&path, err))?);
        }
        let class = TriangleClass::from_squared_sides(
            sides[0].clone(),
            sides[1].clone(),
            sides[2].clone(),
        )
        .map_err(|err| value_err(&path, err))?;
        triangle_classes.push((class, e.count));
    }
    Ok(CensusReport {
        n_points: file.n_points,
        distance_classes,
        triangle_classes,
        collinear_triple_count: file.collinear_triple_count,
    })
}

fn approx_cell(v: &QuadExt) -> String {
    v.to_f64().map_or_else(String::new, |x| format!("{x:.12}"))
}

/// Flat CSV, one row per class. With `approx` a decimal column is appended
/// per value; the decimals are informational only, never authoritative.
pub fn census_report_to_csv(report: &CensusReport, approx: bool) -> String {
    let mut out = String::new();
    out.push_str("kind,sq1,sq2,sq3,count");
    if approx {
        out.push_str(",approx1_nonauthoritative,approx2_nonauthoritative,approx3_nonauthoritative");
    }
    out.push('\n');
    for (v, count) in &report.distance_classes {
        out.push_str(&format!("distance,{v},,,{count}"));
        if approx {
            out.push_str(&format!(",{},,", approx_cell(v)));
        }
        out.push('\n');
    }
    for (t, count) in &report.triangle_classes {
        let s = t.sides2();
        out.push_str(&format!("triangle,{},{},{},{count}", s[0], s[1], s[2]));
        if approx {
            out.push_str(&format!(
                ",{},{},{}",
                approx_cell(&s[0]),
                approx_cell(&s[1]),
                approx_cell(&s[2])
            ));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "collinear,,,,{}{}\n",
        report.collinear_triple_count,
        if approx { ",,," } else { "" }
    ));
    out
}

/// CSV of a grid search: one row per censused candidate.
pub fn search_result_to_csv(result: &SearchResult) -> String {
    let mut out = String::from("candidate,triangle_classes,distance_classes,violation\n");
    for r in &result.records {
        out.push_str(&format!(
            "\"{}\",{},{},{}\n",
            r.label, r.triangle_classes, r.distance_classes, r.is_violation
        ));
    }
    out
}

#[derive(Serialize)]
struct SearchSummaryFile {
    candidates_tested: usize,
    skipped_degenerate: usize,
    min_triangle_classes_observed: usize,
    violations: usize,
}

pub fn search_summary_to_json(result: &SearchResult) -> String {
    let file = SearchSummaryFile {
        candidates_tested: result.candidates_tested,
        skipped_degenerate: result.skipped_degenerate,
        min_triangle_classes_observed: result.min_triangle_classes_observed,
        violations: result.violation_count(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail") + "\n"
}

#[derive(Serialize)]
struct CoverSolutionFile {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    triples: Option<Vec<[usize; 3]>>,
}

pub fn cover_solution_to_json(
    n: usize,
    m: Option<usize>,
    solution: &crate::bounds::CoverSolution,
    emit_certificate: bool,
) -> String {
    let file = CoverSolutionFile {
        n,
        m,
        size: solution.size,
        triples: emit_certificate.then(|| solution.triples.clone()),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail") + "\n"
}
