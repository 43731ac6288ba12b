use crate::gf::{Elem, FieldElement};
use crate::plane::{ProjPoint, TernaryCubic};

use super::{is_ldr_of, on_curve, DetRepError, LinearMatrixRep};

/// `Y^2Z - X^3 - aXZ^2 - bZ^3`.
pub fn weierstrass(a: &FieldElement, b: &FieldElement) -> Result<TernaryCubic, DetRepError> {
    let f = a.field();
    if f != b.field() {
        return Err(DetRepError::FieldMismatch);
    }
    let mut coeffs = [Elem::ZERO; 10];
    coeffs[7] = Elem::ONE;
    coeffs[0] = f.neg(Elem::ONE);
    coeffs[5] = f.neg(a.elem());
    coeffs[9] = f.neg(b.elem());
    Ok(TernaryCubic::new(f, coeffs)?)
}

/// `X^3 + Y^3 + Z^3 + hXYZ`.
pub fn hesse(h: &FieldElement) -> TernaryCubic {
    let f = h.field();
    let mut coeffs = [Elem::ZERO; 10];
    coeffs[0] = Elem::ONE;
    coeffs[6] = Elem::ONE;
    coeffs[9] = Elem::ONE;
    coeffs[4] = h.elem();
    TernaryCubic::new(f, coeffs).expect("nonzero form")
}

/// The matrix
/// `[[X - lZ, 0, -Y - mZ], [mZ - Y, X + lZ, (a + l^2)Z], [0, Z, -X]]`
/// for an affine point `[l:m:1]` of the Weierstrass curve `Y^2Z = X^3 + aXZ^2 + bZ^3`.
pub fn galinat_rep(a: &FieldElement, b: &FieldElement, p: &ProjPoint) -> Result<LinearMatrixRep, DetRepError> {
    let f = a.field();
    let curve = weierstrass(a, b)?;
    if f.p() == 2 || f.p() == 3 {
        return Err(DetRepError::BadCharacteristic(f.p()));
    }
    let (ae, be) = (a.elem(), b.elem());
    let disc = f.add(f.mul(f.from_int(4), f.pow(ae, 3)), f.mul(f.from_int(27), f.mul(be, be)));
    if disc.is_zero() {
        return Err(DetRepError::SingularCurve);
    }
    if p.coords().iter().any(|&e| !f.contains(e)) {
        return Err(crate::plane::PlaneError::BadElement.into());
    }
    if !on_curve(&curve, p) {
        return Err(DetRepError::NotOnCurve);
    }
    if p.z().is_zero() {
        return Err(DetRepError::NotAffine);
    }
    let zi = f.inv(p.z());
    let (l, m) = (f.mul(p.x(), zi), f.mul(p.y(), zi));
    let z = Elem::ZERO;
    let one = Elem::ONE;
    let neg = |x: Elem| f.neg(x);
    let entries = [
        [[one, z, neg(l)], [z; 3], [z, neg(one), neg(m)]],
        [[z, neg(one), m], [one, z, l], [z, z, f.add(ae, f.mul(l, l))]],
        [[z; 3], [z, z, one], [neg(one), z, z]],
    ];
    let rep = LinearMatrixRep::from_entries(f, entries)?;
    if is_ldr_of(&rep, &curve).is_none() {
        return Err(DetRepError::BrokenInvariant("Weierstrass matrix determinant".into()));
    }
    Ok(rep)
}

/// The Moore matrix `[[a0X, a1Z, a2Y], [a1Y, a2X, a0Z], [a2Z, a0Y, a1X]]` of a
/// point `[a0:a1:a2]` with nonzero coordinates on `X^3 + Y^3 + Z^3 + hXYZ`.
pub fn moore_rep(h: &FieldElement, p: &ProjPoint) -> Result<LinearMatrixRep, DetRepError> {
    let f = h.field();
    let curve = hesse(h);
    if p.coords().iter().any(|&e| !f.contains(e)) {
        return Err(crate::plane::PlaneError::BadElement.into());
    }
    if p.coords().iter().any(|c| c.is_zero()) {
        return Err(DetRepError::ZeroCoordinate);
    }
    if !on_curve(&curve, p) {
        return Err(DetRepError::NotOnCurve);
    }
    if !crate::plane::check_smooth(&curve)? {
        return Err(DetRepError::SingularCurve);
    }
    let [a0, a1, a2] = *p.coords();
    let z = Elem::ZERO;
    let entries = [[[a0, z, z], [z, z, a1], [z, a2, z]], [[z, a1, z], [a2, z, z], [z, z, a0]], [[z, z, a2], [z, a0, z], [a1, z, z]]];
    let rep = LinearMatrixRep::from_entries(f, entries)?;
    if is_ldr_of(&rep, &curve).is_none() {
        return Err(DetRepError::BrokenInvariant("Moore matrix determinant".into()));
    }
    Ok(rep)
}
