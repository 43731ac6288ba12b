use std::fmt;

use crate::gf::{Elem, Field, FieldElement};

use super::PlaneError;

/// A point of `P^2(F_q)`, stored with its first nonzero coordinate equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [Elem; 3],
}

impl ProjPoint {
    /// Canonically rescales `coords`; errors on the zero vector.
    pub fn new(field: &Field, coords: [Elem; 3]) -> Result<Self, PlaneError> {
        let lead = *coords.iter().find(|c| !c.is_zero()).ok_or(PlaneError::ZeroPoint)?;
        if coords.iter().any(|&c| !field.contains(c)) {
            return Err(PlaneError::BadElement);
        }
        let inv = field.inv(lead);
        Ok(ProjPoint { coords: coords.map(|c| field.mul(c, inv)) })
    }

    pub fn from_ints(field: &Field, x: i64, y: i64, z: i64) -> Result<Self, PlaneError> {
        ProjPoint::new(field, [field.from_int(x), field.from_int(y), field.from_int(z)])
    }

    pub fn from_elements(x: &FieldElement, y: &FieldElement, z: &FieldElement) -> Result<Self, PlaneError> {
        if x.field() != y.field() || x.field() != z.field() {
            return Err(PlaneError::FieldMismatch);
        }
        ProjPoint::new(x.field(), [x.elem(), y.elem(), z.elem()])
    }

    pub fn coords(&self) -> &[Elem; 3] {
        &self.coords
    }

    pub fn x(&self) -> Elem {
        self.coords[0]
    }

    pub fn y(&self) -> Elem {
        self.coords[1]
    }

    pub fn z(&self) -> Elem {
        self.coords[2]
    }

    pub const fn base_point() -> ProjPoint {
        ProjPoint { coords: [Elem::ONE, Elem::ZERO, Elem::ZERO] }
    }

    /// Every point of `P^2(F_q)`: `[1:y:z]` (y outer, z inner), then
    /// `[0:1:z]`, then `[0:0:1]`.
    pub fn all(field: &Field) -> impl Iterator<Item = ProjPoint> + '_ {
        let affine = field.elements().flat_map(move |y| field.elements().map(move |z| [Elem::ONE, y, z]));
        let line = field.elements().map(|z| [Elem::ZERO, Elem::ONE, z]);
        affine.chain(line).chain(std::iter::once([Elem::ZERO, Elem::ZERO, Elem::ONE])).map(|coords| ProjPoint { coords })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0].index(), self.coords[1].index(), self.coords[2].index())
    }
}
