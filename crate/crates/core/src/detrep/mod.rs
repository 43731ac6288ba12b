//! Linear determinantal representations `M = X m0 + Y m1 + Z m2` of plane
//! cubics: construction from rational points, verification and equivalence.

mod construct;
mod equiv;
mod classical;

pub use construct::{all_reps, mp_case1, mp_case2, RepForPoint};
pub use equiv::{
    equivalent, equivalent_by_search, equivalent_with_budget, rank_profile, symmetrize, EquivalenceWitness, DEFAULT_NULLSPACE_BUDGET,
};
pub use classical::{galinat_rep, hesse, moore_rep, weierstrass};

use crate::gf::{Elem, Field, FieldElement};
use crate::linalg::{self, Mat3};
use crate::plane::{eval_linear, mul_lin3, LinearForm, PlaneError, ProjPoint, TernaryCubic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DetRepError {
    #[error("cubic is not in normal form (a000 = a001 = 0, a002 = 1)")]
    NotNormalized,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point has the wrong third coordinate for this case")]
    WrongCase,
    #[error("point is the base point [1:0:0]")]
    IsBasePoint,
    #[error("internal invariant violated: {0}")]
    BrokenInvariant(String),
    #[error("curve is singular")]
    SingularInput,
    #[error("curve has no rational point")]
    NoRationalPoint,
    #[error("search space of size {size} exceeds the budget {cap}")]
    BudgetExceeded { size: u64, cap: u64 },
    #[error("characteristic {0} is not supported here")]
    BadCharacteristic(u32),
    #[error("curve is singular")]
    SingularCurve,
    #[error("point is on the line at infinity Z = 0")]
    NotAffine,
    #[error("point has a zero coordinate")]
    ZeroCoordinate,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A 3x3 matrix of linear forms; `entries[i][j][k]` is the coefficient of
/// the `k`-th variable, so `m_k[i][j] = entries[i][j][k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMatrixRep {
    field: Field,
    entries: [[LinearForm; 3]; 3],
}

impl LinearMatrixRep {
    pub fn new(field: &Field, m0: Mat3, m1: Mat3, m2: Mat3) -> Result<Self, DetRepError> {
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| [m0[i][j], m1[i][j], m2[i][j]]));
        LinearMatrixRep::from_entries(field, entries)
    }

    pub fn from_entries(field: &Field, entries: [[LinearForm; 3]; 3]) -> Result<Self, DetRepError> {
        if entries.iter().flatten().flatten().any(|&e| !field.contains(e)) {
            return Err(PlaneError::BadElement.into());
        }
        Ok(LinearMatrixRep { field: field.clone(), entries })
    }

    pub fn zero(field: &Field) -> Self {
        LinearMatrixRep { field: field.clone(), entries: [[[Elem::ZERO; 3]; 3]; 3] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[[LinearForm; 3]; 3] {
        &self.entries
    }

    /// Coefficient matrix of `X` (k = 0), `Y` (k = 1) or `Z` (k = 2).
    pub fn coefficient(&self, k: usize) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j][k]))
    }

    pub fn coefficients(&self) -> [Mat3; 3] {
        [self.coefficient(0), self.coefficient(1), self.coefficient(2)]
    }

    /// The constant matrix `M(v)`.
    pub fn at(&self, v: &[Elem; 3]) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| eval_linear(&self.field, &self.entries[i][j], v)))
    }

    /// `M(T v)`: each entry `L` becomes the form `v -> L(T v)`.
    pub fn substitute(&self, t: &Mat3) -> LinearMatrixRep {
        let f = &self.field;
        let entries = self.entries.map(|row| row.map(|l| std::array::from_fn(|k| f.sum((0..3).map(|j| f.mul(l[j], t[j][k]))))));
        LinearMatrixRep { field: f.clone(), entries }
    }

    /// `A M B` for constant matrices.
    pub fn transform(&self, a: &Mat3, b: &Mat3) -> LinearMatrixRep {
        let f = &self.field;
        let ms = self.coefficients().map(|m| linalg::mat_mul(f, &linalg::mat_mul(f, a, &m), b));
        LinearMatrixRep::new(f, ms[0], ms[1], ms[2]).expect("entries stay in the field")
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// `det(X m0 + Y m1 + Z m2)` expanded into cubic coefficients.
pub fn det_cubic(rep: &LinearMatrixRep) -> TernaryCubic {
    let f = &rep.field;
    let e = &rep.entries;
    let mut acc = [Elem::ZERO; 10];
    for (perm, sign) in
        [([0, 1, 2], false), ([1, 2, 0], false), ([2, 0, 1], false), ([0, 2, 1], true), ([1, 0, 2], true), ([2, 1, 0], true)]
    {
        let term = mul_lin3(f, &e[0][perm[0]], &e[1][perm[1]], &e[2][perm[2]]);
        for k in 0..10 {
            acc[k] = if sign { f.sub(acc[k], term[k]) } else { f.add(acc[k], term[k]) };
        }
    }
    TernaryCubic::from_raw(f, acc)
}

/// `Some(lambda)` with `det(rep) = lambda * F` and `lambda != 0`.
pub fn is_ldr_of(rep: &LinearMatrixRep, c: &TernaryCubic) -> Option<FieldElement> {
    if rep.field() != c.field() || c.is_zero() {
        return None;
    }
    let det = det_cubic(rep);
    let lambda = det.ratio_to(c)?;
    if lambda.is_zero() {
        return None;
    }
    FieldElement::new(c.field(), lambda).ok()
}

pub fn is_symmetric(rep: &LinearMatrixRep) -> bool {
    rep.is_symmetric()
}

/// Outcome of checking a matrix against a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid { lambda: FieldElement },
    Invalid { det: TernaryCubic },
}

pub fn verify(c: &TernaryCubic, rep: &LinearMatrixRep) -> Result<Verification, DetRepError> {
    if rep.field() != c.field() {
        return Err(DetRepError::FieldMismatch);
    }
    Ok(match is_ldr_of(rep, c) {
        Some(lambda) => Verification::Valid { lambda },
        None => Verification::Invalid { det: det_cubic(rep) },
    })
}

pub(crate) fn on_curve(c: &TernaryCubic, p: &ProjPoint) -> bool {
    c.eval_raw(p.coords()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn det_examples() {
        let f2 = Field::new(2, 1, None).unwrap();
        let id = LinearMatrixRep::new(&f2, linalg::IDENTITY, [[Elem::ZERO; 3]; 3], [[Elem::ZERO; 3]; 3]).unwrap();
        assert_eq!(det_cubic(&id), TernaryCubic::from_int_terms(&f2, &[("000", 1)]).unwrap());
        let m = parse::linear_matrix(&f2, "[[0,Z,Y],[Y,0,X],[X,Y+Z,X+Z]]").unwrap();
        let c = parse::cubic(&f2, "X^2Z + XYZ + Y^3 + Y^2Z + YZ^2").unwrap();
        assert_eq!(det_cubic(&m), c);
        assert_eq!(is_ldr_of(&m, &c), Some(FieldElement::from_int(&f2, 1)));
        assert!(det_cubic(&LinearMatrixRep::zero(&f2)).is_zero());
        assert_eq!(is_ldr_of(&LinearMatrixRep::zero(&f2), &c), None);
        assert!(!m.is_symmetric());
        assert!(LinearMatrixRep::zero(&f2).is_symmetric());
        let s = parse::linear_matrix(&f2, "[[Y,0,X],[0,Z,Y],[X,Y,X+Y+Z]]").unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn substitute_composes_with_det() {
        let f3 = Field::new(3, 1, None).unwrap();
        let m = parse::linear_matrix(&f3, "[[X,Y,0],[Z,X-Y,Y],[Z,0,X+Z]]").unwrap();
        let t = [[1, 2, 0], [0, 1, 1], [1, 0, 2]].map(|r| r.map(|n| f3.from_int(n)));
        assert_eq!(det_cubic(&m.substitute(&t)), det_cubic(&m).act(&t));
    }
}
