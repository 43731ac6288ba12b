//! Plane cubics over `F_q`: points, tangents, flexes and coordinate changes.

mod forms;
mod point;
mod smooth;

pub use forms::{
    cubic_index, cubic_label_index, eval_linear, mul_lin3, mul_lin_lin, mul_quad_lin, CubicSubstitution, LinearForm, TernaryCubic,
    TernaryQuadric, CUBIC_EXPONENTS, CUBIC_LABELS, QUADRATIC_EXPONENTS,
};
pub use point::ProjPoint;
pub use smooth::{check_smooth, is_smooth, MAX_SMOOTHNESS_Q};

use crate::gf::{Elem, Field, FieldElement};
use crate::linalg::{self, Mat3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("the zero form is not a cubic")]
    ZeroForm,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("element does not belong to the field")]
    BadElement,
    #[error("unknown coefficient label {0:?}")]
    BadLabel(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("curve is singular")]
    SingularInput,
    #[error("transform is not invertible")]
    SingularTransform,
    #[error("smoothness test supports q <= {MAX_SMOOTHNESS_Q}, got q = {0}")]
    FieldTooLarge(u32),
}

/// An element of `GL_3(F_q)`, acting on forms by substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTransform {
    field: Field,
    entries: Mat3,
}

impl LinearTransform {
    pub fn new(field: &Field, entries: Mat3) -> Result<Self, PlaneError> {
        if entries.iter().flatten().any(|&e| !field.contains(e)) {
            return Err(PlaneError::BadElement);
        }
        if linalg::det3(field, &entries).is_zero() {
            return Err(PlaneError::SingularTransform);
        }
        Ok(LinearTransform { field: field.clone(), entries })
    }

    pub fn identity(field: &Field) -> Self {
        LinearTransform { field: field.clone(), entries: linalg::IDENTITY }
    }

    pub fn from_ints(field: &Field, rows: [[i64; 3]; 3]) -> Result<Self, PlaneError> {
        LinearTransform::new(field, rows.map(|r| r.map(|n| field.from_int(n))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &Mat3 {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        FieldElement::new(&self.field, self.entries[i][j]).expect("entry lies in the field")
    }

    pub fn det(&self) -> Elem {
        linalg::det3(&self.field, &self.entries)
    }

    pub fn inverse(&self) -> LinearTransform {
        let inv = linalg::inverse(&self.field, &self.entries).expect("invertible by construction");
        LinearTransform { field: self.field.clone(), entries: inv }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &LinearTransform) -> LinearTransform {
        LinearTransform { field: self.field.clone(), entries: linalg::mat_mul(&self.field, &self.entries, &other.entries) }
    }

    /// Image of a point, `[T v]`.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = linalg::mat_vec(&self.field, &self.entries, p.coords());
        ProjPoint::new(&self.field, v).expect("invertible map sends nonzero vectors to nonzero vectors")
    }
}

/// `F(T v)`. Right action: `act(S, act(T, F)) == act(T S, F)`.
pub fn act(t: &LinearTransform, c: &TernaryCubic) -> Result<TernaryCubic, PlaneError> {
    if t.field() != c.field() {
        return Err(PlaneError::FieldMismatch);
    }
    Ok(c.act(t.entries()))
}

pub fn evaluate(c: &TernaryCubic, p: &ProjPoint) -> FieldElement {
    c.evaluate(p)
}

pub fn partials(c: &TernaryCubic) -> [TernaryQuadric; 3] {
    c.partials()
}

/// All `F_q`-points of the curve in [`ProjPoint::all`] order.
pub fn rational_points(c: &TernaryCubic) -> Vec<ProjPoint> {
    ProjPoint::all(c.field()).filter(|p| c.eval_raw(p.coords()).is_zero()).collect()
}

fn check_field(c: &TernaryCubic, p: &ProjPoint) -> Result<(), PlaneError> {
    if p.coords().iter().all(|&e| c.field().contains(e)) {
        Ok(())
    } else {
        Err(PlaneError::BadElement)
    }
}

/// Gradient at `p`, canonically scaled, for a smooth point of the curve.
pub fn tangent_line(c: &TernaryCubic, p: &ProjPoint) -> Result<LinearForm, PlaneError> {
    check_field(c, p)?;
    if !c.eval_raw(p.coords()).is_zero() {
        return Err(PlaneError::NotOnCurve);
    }
    let g = c.gradient_raw(p.coords());
    let f = c.field();
    let lead = *g.iter().find(|e| !e.is_zero()).ok_or(PlaneError::SingularPoint)?;
    let inv = f.inv(lead);
    Ok(g.map(|e| f.mul(e, inv)))
}

fn cross(f: &Field, a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    let m = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn unit(j: usize) -> [Elem; 3] {
    let mut e = [Elem::ZERO; 3];
    e[j] = Elem::ONE;
    e
}

/// First `l x e_j` (j = 0, 1, 2) that is a point of the line `l` other than `p`.
fn second_point_on_line(f: &Field, l: &LinearForm, p: &ProjPoint) -> ProjPoint {
    (0..3)
        .filter_map(|j| ProjPoint::new(f, cross(f, l, &unit(j))).ok())
        .find(|q| q != p)
        .expect("a projective line has at least three points")
}

/// Coefficients `g_0..g_3` of `F(p + t q)` as a polynomial in `t`.
fn restrict_to_line(c: &TernaryCubic, p: &[Elem; 3], q: &[Elem; 3]) -> [Elem; 4] {
    let f = c.field();
    let mut out = [Elem::ZERO; 4];
    for (exps, &a) in CUBIC_EXPONENTS.iter().zip(c.coeffs()) {
        if a.is_zero() {
            continue;
        }
        let mut prod = vec![a];
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                let mut next = vec![Elem::ZERO; prod.len() + 1];
                for (d, &v) in prod.iter().enumerate() {
                    next[d] = f.mul_add(next[d], v, p[k]);
                    next[d + 1] = f.mul_add(next[d + 1], v, q[k]);
                }
                prod = next;
            }
        }
        for (d, v) in prod.into_iter().enumerate() {
            out[d] = f.add(out[d], v);
        }
    }
    out
}

/// Whether the tangent at `p` meets the curve there with multiplicity >= 3.
pub fn is_flex(c: &TernaryCubic, p: &ProjPoint) -> Result<bool, PlaneError> {
    let l = tangent_line(c, p)?;
    let q = second_point_on_line(c.field(), &l, p);
    // t = 0 is a root of multiplicity >= 2; a line contained in the curve
    // restricts to zero and counts as a flex tangent.
    let g = restrict_to_line(c, p.coords(), q.coords());
    Ok(g[2].is_zero())
}

/// A coordinate change `T` moving `p0` to `[1:0:0]` with tangent `Z = 0`, and
/// the transformed form `F' = c * F(T v)` scaled so that `a'_002 = 1`.
///
/// The columns of `T` are `p0`, the first `l x e_j` independent of `p0`
/// (canonically scaled) and the first `e_j` off the tangent `l`.
pub fn normalize(c: &TernaryCubic, p0: &ProjPoint) -> Result<(LinearTransform, TernaryCubic), PlaneError> {
    check_field(c, p0)?;
    if !c.eval_raw(p0.coords()).is_zero() {
        return Err(PlaneError::NotOnCurve);
    }
    if !check_smooth(c)? {
        return Err(PlaneError::SingularInput);
    }
    let f = c.field();
    let l = tangent_line(c, p0)?;
    let c2 = second_point_on_line(f, &l, p0);
    let c3 = (0..3).find(|&j| !l[j].is_zero()).map(unit).expect("tangent is nonzero");
    let cols = [*p0.coords(), *c2.coords(), c3];
    let entries: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i]));
    let t = LinearTransform::new(f, entries)?;
    let moved = c.act(t.entries());
    let lead = moved.coeffs()[2];
    debug_assert!(moved.coeffs()[0].is_zero() && moved.coeffs()[1].is_zero() && !lead.is_zero());
    let fn_ = moved.scaled(f.inv(lead));
    Ok((t, fn_))
}

/// Whether `a_000 = a_001 = 0` and `a_002 = 1`.
pub fn is_normalized(c: &TernaryCubic) -> bool {
    let a = c.coeffs();
    a[0].is_zero() && a[1].is_zero() && a[2] == Elem::ONE
}
