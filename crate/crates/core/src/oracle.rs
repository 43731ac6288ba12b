//! Brute-force classification of smooth plane cubics over tiny fields by
//! orbits of `PGL_3(F_q)`, independent of the counting formulas.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::counting::{self, CountError};
use crate::gf::{Elem, Field};
use crate::linalg::{self, Mat3};
use crate::plane::{is_smooth, rational_points, CubicSubstitution, TernaryCubic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("census over F_{0} is too large (q = 2, 3, or 4 with the slow opt-in)")]
    TooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Least member in coefficient order (`a000` most significant).
    pub representative: TernaryCubic,
    pub orbit_size: u64,
    pub point_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub q: u64,
    pub orbits: Vec<Orbit>,
    /// Point count -> number of classes.
    pub histogram: BTreeMap<u64, u64>,
}

impl OrbitCensus {
    pub fn smooth_form_count(&self) -> u64 {
        self.orbits.iter().map(|o| o.orbit_size).sum()
    }

    /// The orbit containing `c`, if `c` is smooth.
    pub fn orbit_of(&self, c: &TernaryCubic) -> Option<usize> {
        let target = canonical_representative(c);
        self.orbits.iter().position(|o| o.representative == target)
    }
}

/// Representatives of `PGL_3(F_q)`: invertible matrices whose first nonzero
/// entry is one, identity first.
pub fn pgl3(f: &Field) -> Vec<Mat3> {
    linalg::general_linear_group(f).into_iter().filter(|m| m.iter().flatten().find(|e| !e.is_zero()) == Some(&Elem::ONE)).collect()
}

fn normalize_coeffs(f: &Field, c: &[Elem; 10]) -> [Elem; 10] {
    match c.iter().find(|e| !e.is_zero()) {
        Some(&lead) if lead != Elem::ONE => {
            let inv = f.inv(lead);
            c.map(|e| f.mul(e, inv))
        }
        _ => *c,
    }
}

fn encode(q: u64, c: &[Elem; 10]) -> u64 {
    c.iter().fold(0, |acc, e| acc * q + e.index() as u64)
}

fn decode(q: u64, mut code: u64) -> [Elem; 10] {
    let mut c = [Elem::ZERO; 10];
    for i in (0..10).rev() {
        c[i] = Elem((code % q) as u32);
        code /= q;
    }
    c
}

fn orbit_codes(f: &Field, subs: &[CubicSubstitution], c: &[Elem; 10], parallel: bool) -> Vec<u64> {
    let q = f.q() as u64;
    let image = |s: &CubicSubstitution| encode(q, &normalize_coeffs(f, &s.apply(f, c)));
    let mut codes: Vec<u64> = if parallel { subs.par_iter().map(image).collect() } else { subs.iter().map(image).collect() };
    codes.sort_unstable();
    codes.dedup();
    codes
}

/// Least member of the `PGL_3` orbit of `c`.
pub fn canonical_representative(c: &TernaryCubic) -> TernaryCubic {
    let f = c.field();
    let subs: Vec<CubicSubstitution> = pgl3(f).iter().map(|g| CubicSubstitution::new(f, g)).collect();
    let codes = orbit_codes(f, &subs, c.coeffs(), true);
    TernaryCubic::new(f, decode(f.q() as u64, codes[0])).expect("orbit of a nonzero form")
}

/// Number of `g` in `PGL_3(F_q)` with `g . c` proportional to `c`.
pub fn stabilizer_size(c: &TernaryCubic) -> u64 {
    let f = c.field();
    let target = normalize_coeffs(f, c.coeffs());
    pgl3(f).par_iter().filter(|g| normalize_coeffs(f, &CubicSubstitution::new(f, g).apply(f, c.coeffs())) == target).count() as u64
}

/// Classifies all smooth cubics over `F_q` up to projective equivalence.
/// `q` must be 2 or 3; `q = 4` needs `slow`.
pub fn census(q: u64, slow: bool) -> Result<OrbitCensus, OracleError> {
    let (p, m) = crate::gf::prime_power(q).ok_or(OracleError::NotPrimePower(q))?;
    if q > 4 || (q == 4 && !slow) {
        return Err(OracleError::TooLarge(q));
    }
    let f = Field::new(p, m, None).expect("small field");
    let subs: Vec<CubicSubstitution> = pgl3(&f).iter().map(|g| CubicSubstitution::new(&f, g)).collect();
    let total = q.pow(10);
    let mut visited = vec![false; total as usize];
    let mut orbits = Vec::new();
    for code in 1..total {
        if visited[code as usize] {
            continue;
        }
        let coeffs = decode(q, code);
        if coeffs.iter().find(|e| !e.is_zero()) != Some(&Elem::ONE) {
            continue;
        }
        let members = orbit_codes(&f, &subs, &coeffs, q >= 3);
        for &c in &members {
            visited[c as usize] = true;
        }
        let form = TernaryCubic::new(&f, coeffs).expect("nonzero");
        if is_smooth(&form) {
            let point_count = rational_points(&form).len() as u64;
            orbits.push(Orbit { representative: form, orbit_size: members.len() as u64, point_count });
        }
    }
    let mut histogram = BTreeMap::new();
    for o in &orbits {
        *histogram.entry(o.point_count).or_insert(0) += 1;
    }
    Ok(OrbitCensus { q, orbits, histogram })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckRow {
    pub n: i64,
    pub census: u64,
    pub formula: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub q: u64,
    pub rows: Vec<CrossCheckRow>,
    pub census_total: u64,
    pub formula_total: i64,
}

impl CrossCheck {
    pub fn mismatches(&self) -> Vec<&CrossCheckRow> {
        self.rows.iter().filter(|r| r.census as i64 != r.formula).collect()
    }

    pub fn agrees(&self) -> bool {
        self.mismatches().is_empty() && self.census_total as i64 == self.formula_total
    }
}

/// Compares the census histogram with the class-count formula for every `n`
/// from 0 up to the Hasse bound `q + 1 + 2 sqrt(q)`.
pub fn crosscheck(census: &OrbitCensus) -> Result<CrossCheck, OracleError> {
    let q = census.q;
    let max_n = q + 1 + (4.0 * q as f64).sqrt().floor() as u64;
    let top = census.histogram.keys().copied().max().unwrap_or(0).max(max_n);
    let mut rows = Vec::new();
    for n in 0..=top {
        let formula = counting::cubics_with_points(q, n as i64)?.total;
        rows.push(CrossCheckRow { n: n as i64, census: census.histogram.get(&n).copied().unwrap_or(0), formula });
    }
    let formula_total = rows.iter().map(|r| r.formula).sum();
    Ok(CrossCheck { q, rows, census_total: census.orbits.len() as u64, formula_total })
}
