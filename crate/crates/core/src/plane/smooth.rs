//! Smoothness test by searching for singular points over small extensions.
//!
//! A singular plane cubic over `F_q` has a singular point of degree at most
//! three: a reduced cubic has at most three singular points, permuted by
//! Frobenius, and a non-reduced one contains a rational multiple line.
//! Instead of evaluating the gradient at every point of `P^2(F_{q^k})`, each
//! affine chart is swept along one coordinate. For fixed `x` in `F_{q^2}` or
//! `F_{q^3}` the restrictions of `F` and its partials are univariate in `y`,
//! and a common root over the algebraic closure shows up as a nonconstant gcd.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::gf::{poly, Elem, Embedding, Field};

use super::forms::{TernaryCubic, CUBIC_EXPONENTS, QUADRATIC_EXPONENTS};
use super::PlaneError;

struct ExtensionContext {
    field: Field,
    embedding: Embedding,
}

fn extension(base: &Field, k: u32) -> Option<ExtensionContext> {
    type Key = (u32, Vec<u32>, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, (Field, Embedding)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (base.p(), base.modulus().to_vec(), k);
    if let Some((field, embedding)) = cache.lock().unwrap().get(&key) {
        return Some(ExtensionContext { field: field.clone(), embedding: embedding.clone() });
    }
    let field = Field::cached_default(base.p(), base.m() * k).ok()?;
    let embedding = Embedding::new(base, &field).expect("degree divides");
    cache.lock().unwrap().insert(key, (field.clone(), embedding.clone()));
    Some(ExtensionContext { field, embedding })
}

/// Univariate restriction in the variable `free`; `powers[v]` holds the
/// powers of the value fixed for each other variable.
fn restrict(f: &Field, monomials: &[[u8; 3]], coeffs: &[Elem], free: usize, powers: &[[Elem; 4]; 3]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; 4];
    for (e, &c) in monomials.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut term = c;
        for v in 0..3 {
            if v != free {
                term = f.mul(term, powers[v][e[v] as usize]);
            }
        }
        let d = e[free] as usize;
        out[d] = f.add(out[d], term);
    }
    poly::trim(out)
}

fn powers_of(f: &Field, x: Elem) -> [Elem; 4] {
    let x2 = f.mul(x, x);
    [Elem::ONE, x, x2, f.mul(x2, x)]
}

/// True when the four polynomials have a common root over the closure
/// (including the case where all vanish identically).
fn common_root(f: &Field, polys: &[Vec<Elem>]) -> bool {
    let mut g: Vec<Elem> = Vec::new();
    for p in polys {
        g = poly::gcd(f, &g, p);
        if g.len() == 1 {
            return false;
        }
    }
    g.len() != 1
}

struct Lifted {
    field: Field,
    cubic: Vec<Elem>,
    partials: [Vec<Elem>; 3],
}

fn lift(c: &TernaryCubic, ext: Option<&ExtensionContext>) -> Lifted {
    let map = |e: Elem| ext.map_or(e, |x| x.embedding.map(e));
    let parts = c.partials();
    Lifted {
        field: ext.map_or_else(|| c.field().clone(), |x| x.field.clone()),
        cubic: c.coeffs().iter().map(|&e| map(e)).collect(),
        partials: std::array::from_fn(|i| parts[i].coeffs.iter().map(|&e| map(e)).collect()),
    }
}

impl Lifted {
    fn restrictions(&self, free: usize, fixed: [Elem; 3]) -> [Vec<Elem>; 4] {
        let f = &self.field;
        let powers = [powers_of(f, fixed[0]), powers_of(f, fixed[1]), powers_of(f, fixed[2])];
        [
            restrict(f, &CUBIC_EXPONENTS, &self.cubic, free, &powers),
            restrict(f, &QUADRATIC_EXPONENTS, &self.partials[0], free, &powers),
            restrict(f, &QUADRATIC_EXPONENTS, &self.partials[1], free, &powers),
            restrict(f, &QUADRATIC_EXPONENTS, &self.partials[2], free, &powers),
        ]
    }
}

/// Largest `q` accepted by [`check_smooth`]: the sweep needs `F_{q^3}`.
pub const MAX_SMOOTHNESS_Q: u32 = 101;

/// Whether the cubic has no singular point over the algebraic closure.
///
/// # Panics
/// If `q > MAX_SMOOTHNESS_Q`; use [`check_smooth`] for a fallible variant.
pub fn is_smooth(c: &TernaryCubic) -> bool {
    check_smooth(c).expect("field too large for the smoothness sweep")
}

pub fn check_smooth(c: &TernaryCubic) -> Result<bool, PlaneError> {
    if c.field().q() > MAX_SMOOTHNESS_Q {
        return Err(PlaneError::FieldTooLarge(c.field().q()));
    }
    Ok(sweep(c))
}

fn sweep(c: &TernaryCubic) -> bool {
    if c.is_zero() {
        return false;
    }
    let base = lift(c, None);
    // [1:0:0]
    let at_base_point = [Elem::ONE, Elem::ZERO, Elem::ZERO];
    if c.eval_raw(&at_base_point).is_zero() && c.gradient_raw(&at_base_point).iter().all(|g| g.is_zero()) {
        return false;
    }
    // [x:1:0], x free over the closure; coefficients already lie in F_q.
    if common_root(&base.field, &base.restrictions(0, [Elem::ZERO, Elem::ONE, Elem::ZERO])) {
        return false;
    }
    // [x:y:1] with x in F_{q^2} or F_{q^3}, y free.
    for k in [2, 3] {
        let ext = extension(c.field(), k).expect("extension within the internal cap");
        let lifted = lift(c, Some(&ext));
        for x in ext.field.elements() {
            if common_root(&ext.field, &lifted.restrictions(1, [x, Elem::ZERO, Elem::ONE])) {
                return false;
            }
        }
    }
    true
}
