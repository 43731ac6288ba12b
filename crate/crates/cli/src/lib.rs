//! Subcommand implementations for the `ldrcubic` binary. Every command
//! returns the text to print; failures carry their exit code.

pub mod tables;

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use ldrcubic::counting;
use ldrcubic::detrep::{self, LinearMatrixRep, Verification};
use ldrcubic::gf::Field;
use ldrcubic::io;
use ldrcubic::oracle;
use ldrcubic::plane::{self, ProjPoint, TernaryCubic};
use ldrcubic::{parse, render};

use tables::TableSelector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// A check ran and failed; the payload is printed to stdout.
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Math(_) => 2,
            CliError::Parse(_) | CliError::Io(_) | CliError::Usage(_) => 3,
        }
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<detrep::DetRepError> for CliError {
    fn from(e: detrep::DetRepError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<plane::PlaneError> for CliError {
    fn from(e: plane::PlaneError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<counting::CountError> for CliError {
    fn from(e: counting::CountError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<oracle::OracleError> for CliError {
    fn from(e: oracle::OracleError) -> Self {
        CliError::Math(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

fn to_line(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize") + "\n"
}

/// The modulus as a polynomial in `w`, e.g. `w^2+w+1`.
fn modulus_text(f: &Field) -> String {
    let terms: Vec<String> = f
        .modulus()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => "w".into(),
                _ => format!("w^{i}"),
            };
            match (c, i) {
                (1, 0) => "1".into(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            }
        })
        .collect();
    terms.join("+")
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load_curve(path: &Path) -> Result<TernaryCubic, CliError> {
    Ok(io::cubic_from_json(&io::parse_json(&read_input(path)?)?)?)
}

/// One representation, or a list of them.
pub fn load_reps(path: &Path) -> Result<Vec<LinearMatrixRep>, CliError> {
    let v = io::parse_json(&read_input(path)?)?;
    match &v {
        Value::Array(items) => Ok(items.iter().map(io::rep_from_json).collect::<Result<_, _>>()?),
        _ => Ok(vec![io::rep_from_json(&v)?]),
    }
}

pub fn parse_point(c: &TernaryCubic, s: &str) -> Result<ProjPoint, CliError> {
    parse::point(c.field(), s).map_err(|e| CliError::Parse(e.0))
}

fn require_smooth(c: &TernaryCubic) -> Result<(), CliError> {
    if plane::check_smooth(c)? {
        Ok(())
    } else {
        Err(CliError::Math("curve is singular".into()))
    }
}

fn require_on_curve(c: &TernaryCubic, p: &ProjPoint) -> Result<(), CliError> {
    if plane::evaluate(c, p).is_zero() {
        Ok(())
    } else {
        Err(CliError::Math(format!("{} is not on the curve", render::point(c.field(), p))))
    }
}

pub fn cmd_field(spec: &str, modulus: Option<&[u32]>, format: Format) -> Result<String, CliError> {
    let (p, m) = parse::field_spec(spec).map_err(|e| CliError::Parse(e.0))?;
    let f = Field::new(p, m, modulus).map_err(|e| CliError::Math(e.to_string()))?;
    let g = f.generator();
    let listed = f.q() <= 256;
    Ok(match format {
        Format::Json => {
            let mut v = json!({
                "field": io::field_name(&f),
                "p": f.p(),
                "m": f.m(),
                "q": f.q(),
                "modulus": f.modulus(),
                "generator": io::element_to_json(&f, g),
            });
            if listed {
                v["elements"] = f.elements().map(|a| io::element_to_json(&f, a)).collect();
            }
            to_line(&v)
        }
        Format::Csv => {
            let mut out = String::from("index,coeffs,element\n");
            for a in f.elements() {
                let coeffs: Vec<String> = f.coeffs(a).iter().map(u32::to_string).collect();
                writeln!(out, "{},{},{}", a.index(), coeffs.join(" "), render::element(&f, a)).unwrap();
            }
            out
        }
        Format::Text => {
            let head = if f.m() == 1 { format!("F_{}", f.q()) } else { format!("F_{} = F_{}[w]/({})", f.q(), f.p(), modulus_text(&f)) };
            let mut out = format!("{head}\np = {}, m = {}, q = {}\ngenerator: {}\n", f.p(), f.m(), f.q(), render::element(&f, g));
            if listed {
                let els: Vec<String> = f.elements().map(|a| render::element(&f, a)).collect();
                writeln!(out, "elements: {}", els.join(", ")).unwrap();
            }
            out
        }
    })
}

/// Rational points with flex flags; `p0`, if given, is listed first.
pub fn cmd_points(c: &TernaryCubic, p0: Option<&ProjPoint>, format: Format) -> Result<String, CliError> {
    require_smooth(c)?;
    let f = c.field();
    let mut points = plane::rational_points(c);
    if let Some(p0) = p0 {
        require_on_curve(c, p0)?;
        let i = points.iter().position(|p| p == p0).expect("on-curve points are enumerated");
        let p = points.remove(i);
        points.insert(0, p);
    }
    let flags = points.iter().map(|p| plane::is_flex(c, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Json => {
            let items: Vec<Value> = points
                .iter()
                .zip(&flags)
                .map(|(p, &flex)| json!({ "point": io::point_to_json(f, p), "text": render::point(f, p), "flex": flex }))
                .collect();
            to_line(&json!({ "field": io::field_name(f), "count": points.len(), "points": items }))
        }
        Format::Csv => {
            let mut out = String::from("point,flex\n");
            for (p, flex) in points.iter().zip(&flags) {
                writeln!(out, "{},{flex}", render::point(f, p)).unwrap();
            }
            out
        }
        Format::Text => {
            let items: Vec<String> = points
                .iter()
                .zip(&flags)
                .map(|(p, &flex)| if flex { format!("{} (flex)", render::point(f, p)) } else { render::point(f, p) })
                .collect();
            if items.is_empty() {
                String::new()
            } else {
                items.join(", ") + "\n"
            }
        }
    })
}

/// Which computed representation a given matrix is equivalent to.
#[derive(Clone, Debug)]
pub struct WitnessMatch {
    pub given: LinearMatrixRep,
    pub found: Option<(usize, detrep::EquivalenceWitness)>,
}

pub fn cmd_detrep(c: &TernaryCubic, p0: Option<&ProjPoint>, witness_for: &[LinearMatrixRep], format: Format) -> Result<String, CliError> {
    require_smooth(c)?;
    if let Some(p) = p0 {
        require_on_curve(c, p)?;
    }
    let f = c.field();
    let reps = detrep::all_reps(c, p0)?;
    for r in &reps {
        if detrep::is_ldr_of(&r.rep, c).as_ref() != Some(&r.lambda) {
            return Err(CliError::Math("determinant check failed".into()));
        }
    }
    let mut matches = Vec::new();
    for given in witness_for {
        if given.field() != f {
            return Err(CliError::Math("representation and curve live over different fields".into()));
        }
        let mut found = None;
        for (i, r) in reps.iter().enumerate() {
            if let Some(w) = detrep::equivalent(&r.rep, given)? {
                found = Some((i, w));
                break;
            }
        }
        matches.push(WitnessMatch { given: given.clone(), found });
    }
    let out = match format {
        Format::Json => {
            let items: Vec<Value> = reps
                .iter()
                .map(|r| {
                    json!({
                        "point": io::point_to_json(f, &r.point),
                        "point_text": render::point(f, &r.point),
                        "lambda": io::element_to_json(f, r.lambda.elem()),
                        "matrix": tables::matrix_text(&r.rep),
                        "rep": io::rep_to_json(&r.rep),
                    })
                })
                .collect();
            let mut v = json!({ "field": io::field_name(f), "reps": items });
            if !witness_for.is_empty() {
                v["witnesses"] = matches
                    .iter()
                    .map(|m| match &m.found {
                        Some((i, w)) => json!({
                            "given": tables::matrix_text(&m.given),
                            "point": render::point(f, &reps[*i].point),
                            "witness": io::witness_to_json(f, w),
                        }),
                        None => json!({ "given": tables::matrix_text(&m.given), "point": Value::Null }),
                    })
                    .collect();
            }
            to_line(&v)
        }
        Format::Csv => {
            let mut out = String::from("point,lambda,matrix\n");
            for r in &reps {
                writeln!(out, "{},{},\"{}\"", render::point(f, &r.point), render::element(f, r.lambda.elem()), tables::matrix_text(&r.rep))
                    .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reps {
                writeln!(out, "P = {}  lambda = {}", render::point(f, &r.point), render::element(f, r.lambda.elem())).unwrap();
                writeln!(out, "{}", tables::matrix_text(&r.rep)).unwrap();
            }
            for m in &matches {
                match &m.found {
                    Some((i, w)) => writeln!(
                        out,
                        "{} ~ P = {}: A = {}, B = {}",
                        tables::matrix_text(&m.given),
                        render::point(f, &reps[*i].point),
                        render::scalar_matrix(f, &w.a),
                        render::scalar_matrix(f, &w.b)
                    )
                    .unwrap(),
                    None => writeln!(out, "{} is not equivalent to any listed representation", tables::matrix_text(&m.given)).unwrap(),
                }
            }
            out
        }
    };
    if matches.iter().any(|m| m.found.is_none()) {
        return Err(CliError::Verification(out));
    }
    Ok(out)
}

pub fn cmd_verify(c: &TernaryCubic, rep: &LinearMatrixRep, format: Format) -> Result<String, CliError> {
    let f = c.field();
    match detrep::verify(c, rep)? {
        Verification::Valid { lambda } => Ok(match format {
            Format::Json => to_line(&json!({ "valid": true, "lambda": io::element_to_json(f, lambda.elem()) })),
            _ => format!("lambda = {}\n", render::element(f, lambda.elem())),
        }),
        Verification::Invalid { det } => {
            let text = match format {
                Format::Json => to_line(&json!({
                    "valid": false,
                    "det": io::cubic_to_json(&det),
                    "curve": io::cubic_to_json(c),
                })),
                _ => {
                    let mut out = String::from("not a representation of the curve\n");
                    writeln!(out, "det(M) = {}", render::cubic(&det)).unwrap();
                    writeln!(out, "F      = {}", render::cubic(c)).unwrap();
                    out
                }
            };
            Err(CliError::Verification(text))
        }
    }
}

pub fn cmd_classnum(deltas: &[i64], format: Format) -> Result<String, CliError> {
    let values = deltas.iter().map(|&d| counting::class_number_h(d).map(|h| (d, h))).collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        Format::Json => {
            let items: Vec<Value> = values.iter().map(|(d, h)| json!({ "delta": d, "h": h })).collect();
            to_line(&Value::Array(items))
        }
        Format::Csv => {
            let mut out = String::from("delta,h\n");
            for (d, h) in &values {
                writeln!(out, "{d},{h}").unwrap();
            }
            out
        }
        Format::Text => values.iter().map(|(d, h)| format!("H({d}) = {h}\n")).collect(),
    })
}

/// Valid discriminants `-to..=-from`, or all of `from..=to` if both are negative.
pub fn discriminant_range(from: i64, to: i64) -> Vec<i64> {
    let (lo, hi) = (from.min(to), from.max(to));
    (lo..=hi).filter(|&d| d < 0 && d.rem_euclid(4) <= 1).collect()
}

pub fn cmd_count(q: u64, n: i64, format: Format) -> Result<String, CliError> {
    let r = counting::cubics_with_points(q, n)?;
    Ok(match format {
        Format::Json => to_line(&serde_json::to_value(&r).expect("report serializes")),
        Format::Csv => {
            format!("q,n,e,e3,e33,t0,t1,eps,total\n{},{},{},{},{},{},{},{},{}\n", r.q, r.n, r.e, r.e3, r.e33, r.t0, r.t1, r.eps, r.total)
        }
        Format::Text => format!(
            "q = {}, n = {}\n#E = {}\n#E3 = {}\n#E33 = {}\nt0 = {}, t1 = {}\neps = {}\nclasses = {}\n",
            r.q, r.n, r.e, r.e3, r.e33, r.t0, r.t1, r.eps, r.total
        ),
    })
}

pub fn cmd_classify(q: u64, slow: bool, out: Option<&Path>, format: Format) -> Result<String, CliError> {
    let census = oracle::census(q, slow)?;
    let check = oracle::crosscheck(&census)?;
    let census_json = io::census_to_json(&census);
    if let Some(path) = out {
        std::fs::write(path, to_line(&census_json)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let text = match format {
        Format::Json => {
            let mut v = census_json;
            v["formula_agrees"] = json!(check.agrees());
            to_line(&v)
        }
        Format::Csv => {
            let mut s = String::from("equation,orbit_size,points\n");
            for o in &census.orbits {
                writeln!(s, "{},{},{}", render::cubic(&o.representative), o.orbit_size, o.point_count).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s =
                format!("{} classes of smooth plane cubics over F_{q} ({} forms)\n", census.orbits.len(), census.smooth_form_count());
            for o in &census.orbits {
                writeln!(s, "  {}  orbit {}  points {}", render::cubic(&o.representative), o.orbit_size, o.point_count).unwrap();
            }
            s.push_str("points  census  formula\n");
            for r in &check.rows {
                writeln!(s, "{:>6}  {:>6}  {:>7}", r.n, r.census, r.formula).unwrap();
            }
            writeln!(s, "formula {}", if check.agrees() { "agrees" } else { "DISAGREES" }).unwrap();
            s
        }
    };
    if !check.agrees() {
        return Err(CliError::Verification(text));
    }
    Ok(text)
}

pub fn cmd_tables(selector: &str, format: Format) -> Result<String, CliError> {
    let sel = TableSelector::parse(selector)?;
    Ok(match sel {
        TableSelector::CubGrid => {
            let g = tables::cub_grid()?;
            match format {
                Format::Json => to_line(&tables::grid_json(&g)),
                Format::Csv => tables::grid_csv(&g),
                Format::Text => tables::grid_text(&g),
            }
        }
        TableSelector::Ingredients => {
            let [a, b] = tables::ingredients()?;
            match format {
                Format::Json => to_line(&json!([tables::grid_json(&a), tables::grid_json(&b)])),
                Format::Csv => tables::grid_csv(&a) + "\n" + &tables::grid_csv(&b),
                Format::Text => tables::grid_text(&a) + "\n" + &tables::grid_text(&b),
            }
        }
        _ => {
            let t = tables::curve_table(sel)?;
            match format {
                Format::Json => to_line(&serde_json::to_value(&t).expect("table serializes")),
                Format::Csv => tables::curve_table_csv(&t),
                Format::Text => tables::curve_table_text(&t),
            }
        }
    })
}
