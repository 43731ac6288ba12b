//! Regenerates the published tables by computation. Curve equations are the
//! only stored inputs; points, flexes, representations and counts are derived.

use serde::Serialize;
use serde_json::{json, Value};

use ldrcubic::counting::{self, CountError, ExtInt};
use ldrcubic::detrep::{self, LinearMatrixRep};
use ldrcubic::gf::Field;
use ldrcubic::plane::{self, ProjPoint, TernaryCubic};
use ldrcubic::{parse, render};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSelector {
    CubGrid,
    Ingredients,
    NoLdr,
    OneLdr,
    Symmetric,
    TwoLdr(u64),
}

impl TableSelector {
    pub fn parse(s: &str) -> Result<TableSelector, CliError> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "1" | "2" | "cub" => TableSelector::CubGrid,
            "3" | "ingredients" => TableSelector::Ingredients,
            "5" | "zero" => TableSelector::NoLdr,
            "6" | "one" => TableSelector::OneLdr,
            "sym" => TableSelector::Symmetric,
            "7" | "two-2" => TableSelector::TwoLdr(2),
            "two-3" => TableSelector::TwoLdr(3),
            "8" | "two-4" => TableSelector::TwoLdr(4),
            "9" | "two-5" => TableSelector::TwoLdr(5),
            "10" | "two-7" => TableSelector::TwoLdr(7),
            other => return Err(CliError::Usage(format!("unknown table {other:?}"))),
        })
    }
}

/// Fields of the grid columns; the last column collects `q >= 8`.
pub const GRID_FIELDS: [u64; 5] = [2, 3, 4, 5, 7];
pub const LARGE_FIELDS: [u64; 4] = [8, 9, 11, 13];

const NO_LDR: [(&str, &str); 3] =
    [("2", "X^2Z + XZ^2 + Y^3 + Y^2Z + Z^3"), ("3", "X^2Z + Y^3 - YZ^2 + Z^3"), ("4", "X^2Z + XZ^2 + Y^3 + wZ^3")];

const ONE_LDR: [(&str, &str); 4] = [
    ("2", "X^2Z + XYZ + Y^3 + Y^2Z + YZ^2"),
    ("3", "X^2Z - Y^3 + Y^2Z + YZ^2"),
    ("4", "X^2Z + wXYZ + Y^3 + Y^2Z + wYZ^2"),
    ("5", "X^2Z + Y^3 + 2YZ^2"),
];

const TWO_LDR: [(&str, &str); 10] = [
    ("2", "X^2Z + XY^2 + YZ^2"),
    ("2", "X^2Z + XZ^2 + Y^3"),
    ("3", "X^2Z + XY^2 + YZ^2 + 2XYZ"),
    ("3", "X^2Z - XZ^2 - XYZ - Y^3"),
    ("4", "X^2Z + XY^2 + wYZ^2"),
    ("4", "X^2Z + XY^2 + (w+1)YZ^2"),
    ("4", "X^2Z + XZ^2 + wY^3"),
    ("4", "X^2Z + XZ^2 + (w+1)Y^3"),
    ("5", "X^2Z + XY^2 + YZ^2 - 2XYZ"),
    ("5", "X^2Z - XZ^2 - 2XYZ - Y^3"),
];

const TWO_LDR_F7: [(&str, &str); 2] = [("7", "X^2Z + XY^2 + 3YZ^2"), ("7", "X^2Z - XZ^2 + 3Y^3")];

/// The curves listed in a curve table, as `(q, equation)`.
pub fn curve_inputs(sel: TableSelector) -> Vec<(&'static str, &'static str)> {
    match sel {
        TableSelector::NoLdr => NO_LDR.to_vec(),
        TableSelector::OneLdr | TableSelector::Symmetric => ONE_LDR.to_vec(),
        TableSelector::TwoLdr(7) => TWO_LDR_F7.to_vec(),
        TableSelector::TwoLdr(q) => TWO_LDR.iter().copied().filter(|(f, _)| f.parse::<u64>().ok() == Some(q)).collect(),
        _ => Vec::new(),
    }
}

pub fn field_of(q: &str) -> Result<Field, CliError> {
    let (p, m) = parse::field_spec(q).map_err(|e| CliError::Parse(e.0))?;
    Field::new(p, m, None).map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub point: String,
    pub flex: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveRow {
    pub q: u64,
    pub equation: String,
    pub points: Vec<PointEntry>,
    pub ldr_count: usize,
    pub matrices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<String>,
}

pub fn point_entries(c: &TernaryCubic) -> Result<Vec<PointEntry>, CliError> {
    plane::rational_points(c)
        .iter()
        .map(|p| {
            let flex = plane::is_flex(c, p).map_err(|e| CliError::Math(e.to_string()))?;
            Ok(PointEntry { point: render::point(c.field(), p), flex })
        })
        .collect()
}

pub fn matrix_text(rep: &LinearMatrixRep) -> String {
    render::linear_matrix(rep.field(), rep.entries())
}

/// Computes one row of a curve table with base point `[1:0:0]`.
pub fn curve_row(q: &str, equation: &str, symmetric: bool) -> Result<CurveRow, CliError> {
    let f = field_of(q)?;
    let c = parse::cubic(&f, equation).map_err(|e| CliError::Parse(e.0))?;
    let reps = detrep::all_reps(&c, Some(&ProjPoint::base_point())).map_err(|e| CliError::Math(e.to_string()))?;
    let sym = if symmetric {
        let rep = &reps.first().ok_or_else(|| CliError::Math("curve has no representation".into()))?.rep;
        let u = detrep::symmetrize(rep)
            .map_err(|e| CliError::Math(e.to_string()))?
            .ok_or_else(|| CliError::Math("no symmetric representation found".into()))?;
        Some(matrix_text(&rep.transform(&u, &ldrcubic::linalg::IDENTITY)))
    } else {
        None
    };
    Ok(CurveRow {
        q: f.q() as u64,
        equation: render::cubic(&c),
        points: point_entries(&c)?,
        ldr_count: reps.len(),
        matrices: reps.iter().map(|r| matrix_text(&r.rep)).collect(),
        symmetric: sym,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveTable {
    pub title: String,
    pub ldr_count: i64,
    pub rows: Vec<CurveRow>,
    /// Number of classes per field according to the class-count formula.
    pub formula_classes: Vec<(u64, i64)>,
}

fn cub_total(q: u64, n: i64) -> Result<i64, CliError> {
    counting::cub(q, n).map(|r| r.total).map_err(count_err)
}

fn count_err(e: CountError) -> CliError {
    CliError::Math(e.to_string())
}

pub fn curve_table(sel: TableSelector) -> Result<CurveTable, CliError> {
    let (title, n) = match sel {
        TableSelector::NoLdr => ("Smooth plane cubics with no linear determinantal representation".to_string(), 0),
        TableSelector::OneLdr => ("Smooth plane cubics with exactly one class of representations".to_string(), 1),
        TableSelector::Symmetric => ("Symmetric representations of the one-class cubics".to_string(), 1),
        TableSelector::TwoLdr(q) => (format!("Smooth plane cubics over F_{q} with exactly two classes of representations"), 2),
        _ => unreachable!("not a curve table"),
    };
    let inputs = curve_inputs(sel);
    let rows = inputs.iter().map(|(q, eq)| curve_row(q, eq, sel == TableSelector::Symmetric)).collect::<Result<Vec<_>, _>>()?;
    let mut fields: Vec<u64> = rows.iter().map(|r| r.q).collect();
    fields.dedup();
    let formula_classes = fields.iter().map(|&q| Ok((q, cub_total(q, n)?))).collect::<Result<_, CliError>>()?;
    Ok(CurveTable { title, ldr_count: n, rows, formula_classes })
}

#[derive(Clone, Debug, Serialize)]
pub struct Grid {
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<String>)>,
}

/// `Cub_q(n)` for `n = 0, 1, 2`; the last column holds the common value over
/// the large fields, or all values if they differ.
pub fn cub_grid() -> Result<Grid, CliError> {
    let mut columns: Vec<String> = GRID_FIELDS.iter().map(|q| format!("F_{q}")).collect();
    columns.push("F_q (q >= 8)".into());
    let mut rows = Vec::new();
    for n in 0..=2 {
        let mut cells = GRID_FIELDS.iter().map(|&q| cub_total(q, n).map(|v| v.to_string())).collect::<Result<Vec<_>, _>>()?;
        let large = LARGE_FIELDS.iter().map(|&q| cub_total(q, n)).collect::<Result<Vec<_>, _>>()?;
        cells.push(if large.iter().all(|&v| v == large[0]) {
            large[0].to_string()
        } else {
            large.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("/")
        });
        rows.push((format!("Cub_q({n})"), cells));
    }
    Ok(Grid { columns, rows })
}

fn ext(v: ExtInt) -> String {
    v.to_string()
}

/// The formula ingredients for `q <= 7`, as two grids.
pub fn ingredients() -> Result<[Grid; 2], CliError> {
    let mut first = Grid { columns: Vec::new(), rows: Vec::new() };
    let mut second = Grid { columns: Vec::new(), rows: Vec::new() };
    for n in 1..=3 {
        first.columns.push(format!("#E_q({n})"));
    }
    for n in 1..=3 {
        first.columns.push(format!("#E_q,3({n})"));
    }
    for n in 1..=3 {
        second.columns.push(format!("#E_q,3,3({n})"));
    }
    second.columns.extend(["t0", "t1", "eps_q(q)", "eps_q(q-1)", "eps_q(q-2)"].map(String::from));
    for q in GRID_FIELDS {
        let mut a = Vec::new();
        for n in 1..=3 {
            a.push(counting::count_e(q, n).map_err(count_err)?.to_string());
        }
        for n in 1..=3 {
            a.push(counting::count_e3(q, n).map_err(count_err)?.to_string());
        }
        first.rows.push((format!("F_{q}"), a));
        let mut b = Vec::new();
        for n in 1..=3 {
            b.push(counting::count_e33(q, n).map_err(count_err)?.to_string());
        }
        b.push(ext(counting::t0(q).map_err(count_err)?));
        b.push(ext(counting::t1(q).map_err(count_err)?));
        for d in 0..=2 {
            b.push(counting::epsilon(q, q as i64 - d).map_err(count_err)?.to_string());
        }
        second.rows.push((format!("F_{q}"), b));
    }
    Ok([first, second])
}

pub fn grid_text(g: &Grid) -> String {
    let mut widths: Vec<usize> = std::iter::once(g.rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0))
        .chain(g.columns.iter().map(|c| c.chars().count()))
        .collect();
    for (_, cells) in &g.rows {
        for (j, c) in cells.iter().enumerate() {
            widths[j + 1] = widths[j + 1].max(c.chars().count());
        }
    }
    let line = |first: &str, cells: &[String]| {
        let mut s = format!("{first:<w$}", w = widths[0]);
        for (j, c) in cells.iter().enumerate() {
            s.push_str(&format!("  {c:>w$}", w = widths[j + 1]));
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line("", &g.columns)];
    for (name, cells) in &g.rows {
        out.push(line(name, cells));
    }
    out.join("\n") + "\n"
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn grid_csv(g: &Grid) -> String {
    let mut out = String::new();
    let header: Vec<String> = std::iter::once(String::new()).chain(g.columns.iter().cloned()).collect();
    out.push_str(&header.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for (name, cells) in &g.rows {
        let row: Vec<String> = std::iter::once(name.clone()).chain(cells.iter().cloned()).collect();
        out.push_str(&row.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn grid_json(g: &Grid) -> Value {
    let rows: Vec<Value> = g.rows.iter().map(|(name, cells)| json!({ "row": name, "cells": cells })).collect();
    json!({ "columns": g.columns, "rows": rows })
}

fn points_text(points: &[PointEntry]) -> String {
    points.iter().map(|p| if p.flex { format!("{} (flex)", p.point) } else { p.point.clone() }).collect::<Vec<_>>().join(", ")
}

pub fn curve_table_text(t: &CurveTable) -> String {
    let mut out = format!("{}\n", t.title);
    for row in &t.rows {
        out.push_str(&format!("\nF_{}: {}\n", row.q, row.equation));
        out.push_str(&format!("  points: {}\n", points_text(&row.points)));
        out.push_str(&format!("  #LDR: {}\n", row.ldr_count));
        for m in &row.matrices {
            out.push_str(&format!("  {m}\n"));
        }
        if let Some(s) = &row.symmetric {
            out.push_str(&format!("  symmetric: {s}\n"));
        }
    }
    out.push('\n');
    for (q, n) in &t.formula_classes {
        let listed = t.rows.iter().filter(|r| r.q == *q).count();
        out.push_str(&format!("F_{q}: {listed} listed, {n} classes by the counting formula\n"));
    }
    out
}

pub fn curve_table_csv(t: &CurveTable) -> String {
    let mut out = String::from("q,equation,points,ldr_count,matrices,symmetric\n");
    for row in &t.rows {
        let cells = [
            row.q.to_string(),
            row.equation.clone(),
            points_text(&row.points),
            row.ldr_count.to_string(),
            row.matrices.join("; "),
            row.symmetric.clone().unwrap_or_default(),
        ];
        out.push_str(&cells.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
