//! Human-readable rendering of elements, forms, points and matrices.
//!
//! Prime-field elements print as signed representatives in `(-p/2, p/2]`;
//! extension elements print as polynomials in `w` with digits in `0..p`.

use crate::gf::{Elem, Field};
use crate::plane::{LinearForm, ProjPoint, TernaryCubic, CUBIC_EXPONENTS};

pub fn element(f: &Field, a: Elem) -> String {
    if f.is_prime_field() {
        let v = a.index() as i64;
        let p = f.p() as i64;
        return if v > p / 2 { (v - p).to_string() } else { v.to_string() };
    }
    let coeffs = f.coeffs(a);
    let mut parts = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match d {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{d}"),
        };
        parts.push(match (c, d) {
            (_, 0) => c.to_string(),
            (1, _) => var,
            _ => format!("{c}{var}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Sign and magnitude text of a coefficient in a sum; `None` for zero.
fn signed_coefficient(f: &Field, a: Elem) -> Option<(bool, String)> {
    if a.is_zero() {
        return None;
    }
    let neg = f.neg(a);
    if f.is_prime_field() && element(f, a).starts_with('-') {
        return Some((true, element(f, neg)));
    }
    Some((false, element(f, a)))
}

fn monomial(exps: &[u8; 3]) -> String {
    let mut s = String::new();
    for (v, &e) in ["X", "Y", "Z"].iter().zip(exps) {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{e}")),
        }
    }
    s
}

fn sum(f: &Field, terms: impl Iterator<Item = (Elem, String)>, sep: (&str, &str)) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let Some((neg, mag)) = signed_coefficient(f, c) else { continue };
        let body = if mag == "1" {
            mono
        } else if mag.contains('+') {
            format!("({mag}){mono}")
        } else {
            format!("{mag}{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { sep.1 } else { sep.0 });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn linear(f: &Field, l: &LinearForm) -> String {
    let vars = ["X", "Y", "Z"];
    sum(f, l.iter().zip(vars).map(|(&c, v)| (c, v.to_string())), ("+", "-"))
}

pub fn cubic_coeffs(f: &Field, coeffs: &[Elem; 10]) -> String {
    sum(f, coeffs.iter().zip(&CUBIC_EXPONENTS).map(|(&c, e)| (c, monomial(e))), (" + ", " - "))
}

pub fn cubic(c: &TernaryCubic) -> String {
    cubic_coeffs(c.field(), c.coeffs())
}

pub fn point(f: &Field, p: &ProjPoint) -> String {
    let c = p.coords();
    format!("[{}:{}:{}]", element(f, c[0]), element(f, c[1]), element(f, c[2]))
}

/// `[[a,b,c],[d,e,f],[g,h,i]]` with linear-form entries.
pub fn linear_matrix(f: &Field, entries: &[[LinearForm; 3]; 3]) -> String {
    let rows: Vec<String> = entries.iter().map(|r| format!("[{}]", r.iter().map(|l| linear(f, l)).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

pub fn scalar_matrix(f: &Field, m: &[[Elem; 3]; 3]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.iter().map(|&e| element(f, e)).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}
