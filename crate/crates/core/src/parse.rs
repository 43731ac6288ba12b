//! Text syntax for elements, points, forms and matrices of linear forms.
//!
//! Expressions are polynomials in `X`, `Y`, `Z` with integer coefficients and
//! the generator `w` (also written `ω`): for example `X^2Z + XY^2 - 2XYZ`,
//! `(w+1)Y` or `X+Z`. Juxtaposition and `*` both denote multiplication.

use std::collections::BTreeMap;

use crate::detrep::LinearMatrixRep;
use crate::gf::{Elem, Field};
use crate::plane::{cubic_index, LinearForm, ProjPoint, TernaryCubic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

type Poly = BTreeMap<[u8; 3], Elem>;

struct Parser<'a> {
    field: &'a Field,
    chars: Vec<char>,
    pos: usize,
}

const MAX_DEGREE: u8 = 3;

impl<'a> Parser<'a> {
    fn new(field: &'a Field, s: &str) -> Self {
        let chars = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '\u{2212}' => '-',
                '\u{00b7}' => '*',
                c => c,
            })
            .collect();
        Parser { field, chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn constant(&self, e: Elem) -> Poly {
        let mut p = Poly::new();
        if !e.is_zero() {
            p.insert([0, 0, 0], e);
        }
        p
    }

    fn add(&self, a: &mut Poly, b: &Poly, negate: bool) {
        let f = self.field;
        for (&k, &v) in b {
            let v = if negate { f.neg(v) } else { v };
            let e = a.entry(k).or_insert(Elem::ZERO);
            *e = f.add(*e, v);
            if e.is_zero() {
                a.remove(&k);
            }
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly, ParseError> {
        let f = self.field;
        let mut out = Poly::new();
        for (ka, &va) in a {
            for (kb, &vb) in b {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                if k.iter().sum::<u8>() > MAX_DEGREE {
                    return err("degree exceeds 3");
                }
                self.add(&mut out, &Poly::from([(k, f.mul(va, vb))]), false);
            }
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::new();
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            self.add(&mut acc, &t, negate);
            match self.peek() {
                Some(c @ ('+' | '-')) => {
                    negate = c == '-';
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || "XYZxyzwω(".contains(c) => {}
                _ => return Ok(acc),
            }
            let rhs = self.factor()?;
            acc = self.mul(&acc, &rhs)?;
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = self.integer()?;
        let mut out = self.constant(Elem::ONE);
        for _ in 0..n {
            out = self.mul(&out, &base)?;
        }
        Ok(out)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(format!("expected a number at position {start}"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| err(format!("number {s} is too large")))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let f = self.field;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(f.from_int((n % f.p() as u64) as i64)))
            }
            Some(c @ ('X' | 'Y' | 'Z' | 'x' | 'y' | 'z')) => {
                self.pos += 1;
                let mut e = [0u8; 3];
                e["XYZ".find(c.to_ascii_uppercase()).unwrap()] = 1;
                Ok(Poly::from([(e, Elem::ONE)]))
            }
            Some('w' | 'ω') => {
                self.pos += 1;
                if f.m() == 1 {
                    return err("w is only available in extension fields");
                }
                Ok(self.constant(f.generator()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return err("unbalanced parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => err(format!("unexpected character {c:?}")),
            None => err("unexpected end of input"),
        }
    }

    fn finish(mut self) -> Result<Poly, ParseError> {
        if self.chars.is_empty() {
            return err("empty expression");
        }
        let p = self.expr()?;
        if self.pos != self.chars.len() {
            return err(format!("unexpected character {:?}", self.chars[self.pos]));
        }
        Ok(p)
    }
}

fn homogeneous(field: &Field, s: &str, degree: u8) -> Result<Poly, ParseError> {
    let p = Parser::new(field, s).finish()?;
    if p.keys().any(|k| k.iter().sum::<u8>() != degree) {
        return err(format!("{s:?} is not homogeneous of degree {degree}"));
    }
    Ok(p)
}

pub fn element(field: &Field, s: &str) -> Result<Elem, ParseError> {
    let p = homogeneous(field, s, 0)?;
    Ok(p.get(&[0, 0, 0]).copied().unwrap_or(Elem::ZERO))
}

pub fn linear(field: &Field, s: &str) -> Result<LinearForm, ParseError> {
    let p = homogeneous(field, s, 1)?;
    Ok(std::array::from_fn(|k| {
        let mut e = [0u8; 3];
        e[k] = 1;
        p.get(&e).copied().unwrap_or(Elem::ZERO)
    }))
}

pub fn cubic(field: &Field, s: &str) -> Result<TernaryCubic, ParseError> {
    let p = homogeneous(field, s, 3)?;
    let mut coeffs = [Elem::ZERO; 10];
    for (k, v) in p {
        coeffs[cubic_index(k).expect("degree-3 monomial")] = v;
    }
    TernaryCubic::new(field, coeffs).map_err(|e| ParseError(e.to_string()))
}

/// `[x:y:z]` (brackets optional).
pub fn point(field: &Field, s: &str) -> Result<ProjPoint, ParseError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t.split(':').collect();
    if parts.len() != 3 {
        return err(format!("expected [x:y:z], got {s:?}"));
    }
    let c = [element(field, parts[0])?, element(field, parts[1])?, element(field, parts[2])?];
    ProjPoint::new(field, c).map_err(|e| ParseError(e.to_string()))
}

/// Splits `[[..],[..],[..]]` into three rows of three entry strings.
fn matrix_cells(s: &str) -> Result<[[String; 3]; 3], ParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(inner) = t.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")) else {
        return err("a matrix looks like [[a,b,c],[d,e,f],[g,h,i]]");
    };
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 3 {
        return err(format!("expected 3 rows, got {}", rows.len()));
    }
    let mut out: [[String; 3]; 3] = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 3 {
            return err(format!("row {} has {} entries", i + 1, cells.len()));
        }
        for j in 0..3 {
            out[i][j] = cells[j].to_string();
        }
    }
    Ok(out)
}

pub fn linear_matrix(field: &Field, s: &str) -> Result<LinearMatrixRep, ParseError> {
    let cells = matrix_cells(s)?;
    let mut entries = [[[Elem::ZERO; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            entries[i][j] = linear(field, &cells[i][j])?;
        }
    }
    LinearMatrixRep::from_entries(field, entries).map_err(|e| ParseError(e.to_string()))
}

pub fn scalar_matrix(field: &Field, s: &str) -> Result<[[Elem; 3]; 3], ParseError> {
    let cells = matrix_cells(s)?;
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = element(field, &cells[i][j])?;
        }
    }
    Ok(out)
}

/// `"p^m"` or `"q"` with `q` a prime power.
pub fn field_spec(s: &str) -> Result<(u64, u32), ParseError> {
    let s = s.trim();
    if let Some((p, m)) = s.split_once('^') {
        let p = p.trim().parse().or_else(|_| err(format!("bad characteristic in {s:?}")))?;
        let m = m.trim().parse().or_else(|_| err(format!("bad exponent in {s:?}")))?;
        return Ok((p, m));
    }
    let q: u64 = s.parse().or_else(|_| err(format!("bad field {s:?}")))?;
    crate::gf::prime_power(q).ok_or_else(|| ParseError(format!("{q} is not a prime power")))
}
