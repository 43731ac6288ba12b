use std::fmt;

use super::{Elem, Field, GfError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element bound to its field. Mixed-field arithmetic is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    elem: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, elem: Elem) -> Result<Self, GfError> {
        if !field.contains(elem) {
            return Err(GfError::BadElement(format!("index {} out of range", elem.0)));
        }
        Ok(FieldElement { field: field.clone(), elem })
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<Self, GfError> {
        Ok(FieldElement { field: field.clone(), elem: field.from_coeffs(coeffs)? })
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        FieldElement { field: field.clone(), elem: field.from_int(n) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.elem)
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn arith(&self, op: ArithOp, rhs: &FieldElement) -> Result<FieldElement, GfError> {
        if self.field != rhs.field {
            return Err(GfError::FieldMismatch);
        }
        let f = &self.field;
        let (a, b) = (self.elem, rhs.elem);
        let elem = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.mul(a, f.try_inv(b).ok_or(GfError::DivisionByZero)?),
        };
        Ok(FieldElement { field: f.clone(), elem })
    }

    pub fn frobenius(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), elem: self.field.frobenius(self.elem) }
    }

    /// Image under the canonical embedding into `target` (see [`Embedding`]).
    pub fn embed(&self, target: &Field) -> Result<FieldElement, GfError> {
        let emb = Embedding::new(&self.field, target)?;
        Ok(FieldElement { field: target.clone(), elem: emb.map(self.elem) })
    }

    /// Every element of `field` in enumeration order.
    pub fn enumerate(field: &Field) -> Vec<FieldElement> {
        field.elements().map(|elem| FieldElement { field: field.clone(), elem }).collect()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// Ring embedding `F_{p^m} -> F_{p^{mk}}` sending the source generator to the
/// smallest root (in enumeration order) of the source modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    table: Vec<Elem>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding, GfError> {
        if source.p() != target.p() || !target.m().is_multiple_of(source.m()) {
            return Err(GfError::NotAnExtension);
        }
        let lift: Vec<Elem> = source.modulus().iter().map(|&c| target.from_int(c as i64)).collect();
        let root = target.elements().find(|&x| super::poly::eval(target, &lift, x).is_zero()).ok_or(GfError::NotAnExtension)?;
        let table = source
            .elements()
            .map(|a| {
                let c: Vec<Elem> = source.coeffs(a).iter().map(|&c| target.from_int(c as i64)).collect();
                super::poly::eval(target, &c, root)
            })
            .collect();
        Ok(Embedding { source: source.clone(), target: target.clone(), table })
    }

    #[inline]
    pub fn map(&self, a: Elem) -> Elem {
        self.table[a.0 as usize]
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, m: u32) -> Field {
        Field::new(p, m, None).unwrap()
    }

    #[test]
    fn arith_examples() {
        let f4 = f(2, 2);
        let w = FieldElement::new(&f4, f4.generator()).unwrap();
        let w1 = FieldElement::from_coeffs(&f4, &[1, 1]).unwrap();
        assert_eq!(w.arith(ArithOp::Mul, &w).unwrap(), w1);

        let f7 = f(7, 1);
        let one = FieldElement::from_int(&f7, 1);
        let three = FieldElement::from_int(&f7, 3);
        assert_eq!(one.arith(ArithOp::Div, &one).unwrap(), one);
        assert_eq!(one.arith(ArithOp::Div, &three).unwrap(), FieldElement::from_int(&f7, 5));
        let zero = FieldElement::from_int(&f7, 0);
        assert_eq!(one.arith(ArithOp::Div, &zero), Err(GfError::DivisionByZero));
        assert_eq!(one.arith(ArithOp::Add, &w), Err(GfError::FieldMismatch));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = f(2, 2);
        let w = FieldElement::new(&f4, f4.generator()).unwrap();
        assert_eq!(w.frobenius().coeffs(), vec![1, 1]);
        assert_eq!(FieldElement::from_int(&f4, 1).frobenius(), FieldElement::from_int(&f4, 1));
        let f7 = f(7, 1);
        assert_eq!(FieldElement::from_int(&f7, 3).frobenius(), FieldElement::from_int(&f7, 3));
    }

    #[test]
    fn embed_examples() {
        let f2 = f(2, 1);
        let f16 = f(2, 4);
        assert_eq!(FieldElement::from_int(&f2, 1).embed(&f16).unwrap(), FieldElement::from_int(&f16, 1));
        let f3 = f(3, 1);
        let f9 = f(3, 2);
        assert!(FieldElement::from_int(&f3, 0).embed(&f9).unwrap().is_zero());

        // omega goes to the first root of x^2+x+1 found by scanning F_16.
        let f4 = f(2, 2);
        let w = FieldElement::new(&f4, f4.generator()).unwrap();
        let image = w.embed(&f16).unwrap();
        let first_root = f16.elements().find(|&x| f16.add(f16.add(f16.mul(x, x), x), f16.one()).is_zero()).unwrap();
        assert_eq!(image.elem(), first_root);

        assert_eq!(w.embed(&f(2, 3)), Err(GfError::NotAnExtension));
        assert_eq!(w.embed(&f(3, 2)), Err(GfError::NotAnExtension));
    }

    #[test]
    fn embedding_is_injective_homomorphism() {
        for ((ps, ms), (pt, mt)) in [((2, 2), (2, 4)), ((2, 1), (2, 3)), ((3, 1), (3, 2))] {
            let s = f(ps, ms);
            let t = f(pt, mt);
            let e = Embedding::new(&s, &t).unwrap();
            let mut images: Vec<Elem> = s.elements().map(|a| e.map(a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len() as u32, s.q());
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(e.map(s.add(a, b)), t.add(e.map(a), e.map(b)));
                    assert_eq!(e.map(s.mul(a, b)), t.mul(e.map(a), e.map(b)));
                }
            }
        }
    }

    #[test]
    fn enumerate_lists_every_element_once() {
        let f2 = f(2, 1);
        let els: Vec<Vec<u32>> = FieldElement::enumerate(&f2).iter().map(|e| e.coeffs()).collect();
        assert_eq!(els, vec![vec![0], vec![1]]);
        let f9 = f(3, 2);
        let all = FieldElement::enumerate(&f9);
        assert_eq!(all.len(), 9);
        for i in 0..9 {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }
}
