use crate::gf::{Elem, FieldElement};
use crate::plane::{self, check_smooth, is_normalized, rational_points, LinearForm, ProjPoint, TernaryCubic};

use super::{det_cubic, is_ldr_of, on_curve, DetRepError, LinearMatrixRep};

const A011: usize = 3;
const A012: usize = 4;
const A022: usize = 5;
const A111: usize = 6;
const A112: usize = 7;
const A122: usize = 8;
const A222: usize = 9;

fn check_point(fn_: &TernaryCubic, p: &ProjPoint) -> Result<(), DetRepError> {
    if !is_normalized(fn_) {
        return Err(DetRepError::NotNormalized);
    }
    if p.coords().iter().any(|&e| !fn_.field().contains(e)) {
        return Err(plane::PlaneError::BadElement.into());
    }
    if !on_curve(fn_, p) {
        return Err(DetRepError::NotOnCurve);
    }
    if *p == ProjPoint::base_point() {
        return Err(DetRepError::IsBasePoint);
    }
    Ok(())
}

fn check_det(rep: &LinearMatrixRep, fn_: &TernaryCubic, lambda: Elem, what: &str) -> Result<(), DetRepError> {
    if det_cubic(rep) == fn_.scaled(lambda) {
        Ok(())
    } else {
        Err(DetRepError::BrokenInvariant(format!("determinant identity failed for {what}")))
    }
}

/// The representation attached to `P = [s:t:u]`, `u != 0`, of a normalized
/// cubic; its determinant is `-u^3 Fn`.
pub fn mp_case1(fn_: &TernaryCubic, p: &ProjPoint) -> Result<LinearMatrixRep, DetRepError> {
    check_point(fn_, p)?;
    let f = fn_.field();
    let [s, t, u] = *p.coords();
    if u.is_zero() {
        return Err(DetRepError::WrongCase);
    }
    let a = fn_.coeffs();
    let z = Elem::ZERO;
    let m = |x: Elem, y: Elem| f.mul(x, y);
    let neg = |x: Elem| f.neg(x);
    let u2 = m(u, u);
    let q_tu = f.sum([m(a[A011], m(t, t)), m(a[A012], m(t, u)), m(a[A022], u2)]);
    let l1: LinearForm = [m(u2, a[A011]), m(u2, a[A111]), m(u, f.add(m(a[A111], t), m(a[A112], u)))];
    let l2: LinearForm = [m(u, f.add(m(a[A011], t), m(a[A012], u))), z, f.sum([m(a[A111], m(t, t)), m(a[A112], m(t, u)), m(a[A122], u2)])];
    let entries = [
        [[z, z, z], [z, z, Elem::ONE], [z, neg(Elem::ONE), z]],
        [[z, u, neg(t)], [z, z, z], [neg(u2), z, neg(f.add(q_tu, m(s, u)))]],
        [[u, z, neg(s)], l1, l2],
    ];
    let rep = LinearMatrixRep::from_entries(f, entries)?;
    check_det(&rep, fn_, neg(m(u2, u)), "case u != 0")?;
    Ok(rep)
}

/// The representation attached to the point of a normalized cubic on the
/// tangent `Z = 0` other than `[1:0:0]`; its determinant is `a_011 Fn`.
pub fn mp_case2(fn_: &TernaryCubic, p: &ProjPoint) -> Result<LinearMatrixRep, DetRepError> {
    check_point(fn_, p)?;
    let f = fn_.field();
    if !p.z().is_zero() {
        return Err(DetRepError::WrongCase);
    }
    let a = fn_.coeffs();
    if a[A011].is_zero() {
        return Err(DetRepError::BrokenInvariant("a011 = 0 with a second point on the tangent".into()));
    }
    let z = Elem::ZERO;
    let one = Elem::ONE;
    let m = |x: Elem, y: Elem| f.mul(x, y);
    let entries = [
        [[z, z, z], [z, z, one], [z, f.neg(one), z]],
        [[z, z, one], [z, a[A011], z], [one, a[A012], a[A022]]],
        [
            [a[A011], a[A111], z],
            [a[A111], f.sub(m(a[A012], a[A111]), m(a[A011], a[A112])), z],
            [z, f.sub(m(a[A022], a[A111]), m(a[A011], a[A122])), f.neg(m(a[A011], a[A222]))],
        ],
    ];
    let rep = LinearMatrixRep::from_entries(f, entries)?;
    check_det(&rep, fn_, a[A011], "case u = 0")?;
    Ok(rep)
}

/// A representation together with the rational point it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepForPoint {
    pub point: ProjPoint,
    pub rep: LinearMatrixRep,
    pub lambda: FieldElement,
}

/// One representation for each rational point other than `p0` (default: the
/// first rational point), each satisfying `det = lambda * F` for `F` itself.
pub fn all_reps(c: &TernaryCubic, p0: Option<&ProjPoint>) -> Result<Vec<RepForPoint>, DetRepError> {
    if !check_smooth(c)? {
        return Err(DetRepError::SingularInput);
    }
    let points = rational_points(c);
    let p0 = match p0 {
        Some(p) if !on_curve(c, p) => return Err(DetRepError::NotOnCurve),
        Some(p) => *p,
        None => *points.first().ok_or(DetRepError::NoRationalPoint)?,
    };
    let (t, fn_) = plane::normalize(c, &p0)?;
    let t_inv = t.inverse();
    points
        .iter()
        .filter(|&&p| p != p0)
        .map(|&p| {
            let moved = t_inv.apply(&p);
            let local = if moved.z().is_zero() { mp_case2(&fn_, &moved)? } else { mp_case1(&fn_, &moved)? };
            let rep = local.substitute(t_inv.entries());
            let lambda =
                is_ldr_of(&rep, c).ok_or_else(|| DetRepError::BrokenInvariant("pulled-back matrix is not a representation".into()))?;
            Ok(RepForPoint { point: p, rep, lambda })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::parse;
    use crate::render;

    fn show(rep: &LinearMatrixRep) -> String {
        render::linear_matrix(rep.field(), rep.entries())
    }

    #[test]
    fn printed_matrices() {
        let f2 = Field::new(2, 1, None).unwrap();
        let c = parse::cubic(&f2, "X^2Z + XY^2 + YZ^2").unwrap();
        let p = |s| parse::point(&f2, s).unwrap();
        assert_eq!(show(&mp_case1(&c, &p("[0:0:1]")).unwrap()), "[[0,Z,Y],[Y,0,X],[X,X,Z]]");
        assert_eq!(show(&mp_case2(&c, &p("[0:1:0]")).unwrap()), "[[0,Z,Y],[Z,Y,X],[X,0,Y]]");
        assert_eq!(mp_case1(&c, &p("[0:1:0]")), Err(DetRepError::WrongCase));
        assert_eq!(mp_case1(&c, &p("[1:0:0]")), Err(DetRepError::IsBasePoint));
        assert_eq!(mp_case1(&c, &p("[1:1:1]")), Err(DetRepError::NotOnCurve));

        let f7 = Field::new(7, 1, None).unwrap();
        let c = parse::cubic(&f7, "X^2Z + XY^2 + 3YZ^2").unwrap();
        assert_eq!(show(&mp_case1(&c, &parse::point(&f7, "[0:0:1]").unwrap()).unwrap()), "[[0,Z,-Y],[Y,0,-X],[X,X,3Z]]");

        let f5 = Field::new(5, 1, None).unwrap();
        let c = parse::cubic(&f5, "X^2Z + XY^2 + YZ^2 - 2XYZ").unwrap();
        assert_eq!(show(&mp_case2(&c, &parse::point(&f5, "[0:1:0]").unwrap()).unwrap()), "[[0,Z,-Y],[Z,Y,X-2Y],[X,0,-Y]]");

        let f4 = Field::new(2, 2, None).unwrap();
        let c = parse::cubic(&f4, "X^2Z + XY^2 + wYZ^2").unwrap();
        assert_eq!(show(&mp_case2(&c, &parse::point(&f4, "[0:1:0]").unwrap()).unwrap()), "[[0,Z,Y],[Z,Y,X],[X,0,wY]]");

        let unnormalized = parse::cubic(&f2, "X^3 + Y^3 + Z^3").unwrap();
        assert_eq!(mp_case1(&unnormalized, &p("[0:1:1]")), Err(DetRepError::NotNormalized));
    }

    #[test]
    fn case1_lambda() {
        let f2 = Field::new(2, 1, None).unwrap();
        let c = parse::cubic(&f2, "X^2Z + XZ^2 + Y^3").unwrap();
        let rep = mp_case1(&c, &parse::point(&f2, "[1:0:1]").unwrap()).unwrap();
        assert_eq!(is_ldr_of(&rep, &c), Some(FieldElement::from_int(&f2, 1)));
    }

    #[test]
    fn all_reps_counts() {
        let f2 = Field::new(2, 1, None).unwrap();
        let c = parse::cubic(&f2, "X^2Z + XZ^2 + Y^3 + Y^2Z + Z^3").unwrap();
        assert!(all_reps(&c, None).unwrap().is_empty());
        let c = parse::cubic(&f2, "X^2Z + XYZ + Y^3 + Y^2Z + YZ^2").unwrap();
        let reps = all_reps(&c, Some(&ProjPoint::base_point())).unwrap();
        assert_eq!(reps.iter().map(|r| render::point(&f2, &r.point)).collect::<Vec<_>>(), ["[0:0:1]"]);
        let c = parse::cubic(&f2, "X^2Z + XY^2 + YZ^2").unwrap();
        let reps = all_reps(&c, None).unwrap();
        assert_eq!(reps.iter().map(|r| render::point(&f2, &r.point)).collect::<Vec<_>>(), ["[0:1:0]", "[0:0:1]"]);
        let singular = parse::cubic(&f2, "X^3").unwrap();
        assert_eq!(all_reps(&singular, None), Err(DetRepError::SingularInput));
    }

    #[test]
    fn all_reps_after_coordinate_change() {
        let f3 = Field::new(3, 1, None).unwrap();
        let c = parse::cubic(&f3, "X^2Z + XY^2 + Y^3 + YZ^2 + Z^3").unwrap();
        if !plane::is_smooth(&c) {
            return;
        }
        for p0 in rational_points(&c) {
            let reps = all_reps(&c, Some(&p0)).unwrap();
            assert_eq!(reps.len(), rational_points(&c).len() - 1);
        }
    }
}
