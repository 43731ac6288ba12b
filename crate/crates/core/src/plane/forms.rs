use std::fmt;

use crate::gf::{Elem, Field, FieldElement};
use crate::linalg::Mat3;

use super::{PlaneError, ProjPoint};

/// Index triples of the cubic coefficients `a_{ijk}`, in storage order.
pub const CUBIC_LABELS: [&str; 10] = ["000", "001", "002", "011", "012", "022", "111", "112", "122", "222"];

/// Exponents of `(X, Y, Z)` for each cubic coefficient: `a_{ijk}` multiplies
/// the product of the variables indexed `i`, `j`, `k`.
pub const CUBIC_EXPONENTS: [[u8; 3]; 10] =
    [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];

/// Quadratic monomials `XX, XY, XZ, YY, YZ, ZZ`.
pub const QUADRATIC_EXPONENTS: [[u8; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

// index of X_i X_j among the quadratic monomials
const LIN_LIN: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
// index of (quadratic monomial) * X_k among the cubic monomials
const QUAD_LIN: [[usize; 3]; 6] = [[0, 1, 2], [1, 3, 4], [2, 4, 5], [3, 6, 7], [4, 7, 8], [5, 8, 9]];

pub fn cubic_index(exps: [u8; 3]) -> Option<usize> {
    CUBIC_EXPONENTS.iter().position(|&e| e == exps)
}

pub fn cubic_label_index(label: &str) -> Option<usize> {
    CUBIC_LABELS.iter().position(|&l| l == label)
}

/// A linear form `c_0 X + c_1 Y + c_2 Z`.
pub type LinearForm = [Elem; 3];

pub fn eval_linear(f: &Field, l: &LinearForm, v: &[Elem; 3]) -> Elem {
    f.sum((0..3).map(|i| f.mul(l[i], v[i])))
}

pub fn mul_lin_lin(f: &Field, a: &LinearForm, b: &LinearForm) -> [Elem; 6] {
    let mut out = [Elem::ZERO; 6];
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            let k = LIN_LIN[i][j];
            out[k] = f.mul_add(out[k], a[i], b[j]);
        }
    }
    out
}

pub fn mul_quad_lin(f: &Field, a: &[Elem; 6], b: &LinearForm) -> [Elem; 10] {
    let mut out = [Elem::ZERO; 10];
    for i in 0..6 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            let k = QUAD_LIN[i][j];
            out[k] = f.mul_add(out[k], a[i], b[j]);
        }
    }
    out
}

pub fn mul_lin3(f: &Field, a: &LinearForm, b: &LinearForm, c: &LinearForm) -> [Elem; 10] {
    mul_quad_lin(f, &mul_lin_lin(f, a, b), c)
}

fn monomial_value(f: &Field, exps: [u8; 3], v: &[Elem; 3]) -> Elem {
    let mut acc = Elem::ONE;
    for (k, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            acc = f.mul(acc, v[k]);
        }
    }
    acc
}

/// A ternary quadratic form, coefficients in [`QUADRATIC_EXPONENTS`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryQuadric {
    pub coeffs: [Elem; 6],
}

impl TernaryQuadric {
    pub fn eval(&self, f: &Field, v: &[Elem; 3]) -> Elem {
        f.sum(QUADRATIC_EXPONENTS.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(&e, &c)| f.mul(c, monomial_value(f, e, v))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A ternary cubic form `sum a_{ijk} X_i X_j X_k` over a fixed field.
///
/// Values built by [`TernaryCubic::new`] are nonzero; intermediate results
/// such as the determinant of a degenerate matrix may be the zero form.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryCubic {
    field: Field,
    coeffs: [Elem; 10],
}

impl fmt::Debug for TernaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryCubic({} over {})", crate::render::cubic(self), self.field)
    }
}

impl fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::cubic(self))
    }
}

impl TernaryCubic {
    pub fn new(field: &Field, coeffs: [Elem; 10]) -> Result<Self, PlaneError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(PlaneError::ZeroForm);
        }
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(PlaneError::BadElement);
        }
        Ok(TernaryCubic { field: field.clone(), coeffs })
    }

    /// Builds a form that may be zero; used for computed results.
    pub(crate) fn from_raw(field: &Field, coeffs: [Elem; 10]) -> Self {
        TernaryCubic { field: field.clone(), coeffs }
    }

    /// Builds from `(label, coefficient)` pairs such as `("002", 1)`, with
    /// integer coefficients mapped into the prime subfield.
    pub fn from_int_terms(field: &Field, terms: &[(&str, i64)]) -> Result<Self, PlaneError> {
        let mut coeffs = [Elem::ZERO; 10];
        for &(label, c) in terms {
            let i = cubic_label_index(label).ok_or(PlaneError::BadLabel(label.to_string()))?;
            coeffs[i] = field.add(coeffs[i], field.from_int(c));
        }
        TernaryCubic::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem; 10] {
        &self.coeffs
    }

    /// Coefficient `a_{ijk}` by label, e.g. `"012"`.
    pub fn coeff(&self, label: &str) -> Option<FieldElement> {
        let i = cubic_label_index(label)?;
        FieldElement::new(&self.field, self.coeffs[i]).ok()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval_raw(&self, v: &[Elem; 3]) -> Elem {
        let f = &self.field;
        f.sum(CUBIC_EXPONENTS.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(&e, &c)| f.mul(c, monomial_value(f, e, v))))
    }

    /// `F` at the canonical representative of `p`.
    pub fn evaluate(&self, p: &ProjPoint) -> FieldElement {
        FieldElement::new(&self.field, self.eval_raw(p.coords())).expect("value lies in the field")
    }

    /// Formal partial derivatives `(dF/dX, dF/dY, dF/dZ)`; integer exponents
    /// are reduced mod `p`, so terms vanish in small characteristic.
    pub fn partials(&self) -> [TernaryQuadric; 3] {
        let f = &self.field;
        std::array::from_fn(|var| {
            let mut out = [Elem::ZERO; 6];
            for (&exps, &c) in CUBIC_EXPONENTS.iter().zip(&self.coeffs) {
                if exps[var] == 0 || c.is_zero() {
                    continue;
                }
                let mut d = exps;
                d[var] -= 1;
                let k = QUADRATIC_EXPONENTS.iter().position(|&e| e == d).unwrap();
                out[k] = f.add(out[k], f.mul(c, f.from_int(exps[var] as i64)));
            }
            TernaryQuadric { coeffs: out }
        })
    }

    pub fn gradient_raw(&self, v: &[Elem; 3]) -> [Elem; 3] {
        let parts = self.partials();
        std::array::from_fn(|i| parts[i].eval(&self.field, v))
    }

    pub fn scaled(&self, c: Elem) -> TernaryCubic {
        let f = &self.field;
        TernaryCubic { field: f.clone(), coeffs: self.coeffs.map(|a| f.mul(a, c)) }
    }

    /// Scales so the first nonzero coefficient is one.
    pub fn normalized(&self) -> TernaryCubic {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(&lead) => self.scaled(self.field.inv(lead)),
            None => self.clone(),
        }
    }

    /// `Some(lambda)` with `self = lambda * other`, for nonzero `other`.
    pub fn ratio_to(&self, other: &TernaryCubic) -> Option<Elem> {
        let f = &self.field;
        if f != &other.field {
            return None;
        }
        let i = other.coeffs.iter().position(|c| !c.is_zero())?;
        let lambda = f.div(self.coeffs[i], other.coeffs[i]);
        (0..10).all(|k| self.coeffs[k] == f.mul(lambda, other.coeffs[k])).then_some(lambda)
    }

    /// Pullback `F(T v)`: substitutes `X_j -> sum_k T[j][k] X_k`.
    pub fn act(&self, t: &Mat3) -> TernaryCubic {
        let subst = CubicSubstitution::new(&self.field, t);
        TernaryCubic { field: self.field.clone(), coeffs: subst.apply(&self.field, &self.coeffs) }
    }
}

/// The linear map on cubic coefficient vectors induced by a 3x3 matrix,
/// precomputed so many forms can be pulled back through one transform.
#[derive(Clone, Debug)]
pub struct CubicSubstitution {
    // columns[i] = coefficients of the image of monomial i
    columns: [[Elem; 10]; 10],
}

impl CubicSubstitution {
    pub fn new(f: &Field, t: &Mat3) -> Self {
        let quads: [[Elem; 6]; 6] = std::array::from_fn(|qi| {
            let e = QUADRATIC_EXPONENTS[qi];
            let mut vars = e.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize));
            let (a, b) = (vars.next().unwrap(), vars.next().unwrap());
            mul_lin_lin(f, &t[a], &t[b])
        });
        let columns = std::array::from_fn(|ci| {
            let e = CUBIC_EXPONENTS[ci];
            let mut vars = e.iter().enumerate().flat_map(|(k, &n)| std::iter::repeat_n(k, n as usize));
            let (a, b, c) = (vars.next().unwrap(), vars.next().unwrap(), vars.next().unwrap());
            mul_quad_lin(f, &quads[LIN_LIN[a][b]], &t[c])
        });
        CubicSubstitution { columns }
    }

    #[inline]
    pub fn apply(&self, f: &Field, coeffs: &[Elem; 10]) -> [Elem; 10] {
        let mut out = [Elem::ZERO; 10];
        for (col, &c) in self.columns.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for k in 0..10 {
                if !col[k].is_zero() {
                    out[k] = f.mul_add(out[k], c, col[k]);
                }
            }
        }
        out
    }
}
