use rayon::prelude::*;

use crate::gf::{Elem, Field};
use crate::linalg::{self, Mat3, IDENTITY};
use crate::plane::ProjPoint;

use super::{det_cubic, DetRepError, LinearMatrixRep};

/// An invertible pair with `m2 = A m1 B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub a: Mat3,
    pub b: Mat3,
}

impl EquivalenceWitness {
    /// Witness for the reverse direction, `m1 = A^-1 m2 B^-1`.
    pub fn inverse(&self, f: &Field) -> EquivalenceWitness {
        EquivalenceWitness {
            a: linalg::inverse(f, &self.a).expect("witness matrices are invertible"),
            b: linalg::inverse(f, &self.b).expect("witness matrices are invertible"),
        }
    }

    pub fn check(&self, m1: &LinearMatrixRep, m2: &LinearMatrixRep) -> bool {
        let f = m1.field();
        !linalg::det3(f, &self.a).is_zero() && !linalg::det3(f, &self.b).is_zero() && m1.transform(&self.a, &self.b) == *m2
    }
}

/// Largest number of nullspace combinations tried by [`equivalent`].
pub const DEFAULT_NULLSPACE_BUDGET: u64 = 1 << 20;

/// Ranks of `M(P)` at every point of `P^2(F_q)`, in [`ProjPoint::all`] order.
/// Equal for `M` and `A M B`.
pub fn rank_profile(rep: &LinearMatrixRep) -> Vec<u8> {
    let f = rep.field();
    ProjPoint::all(f)
        .map(|p| {
            let m = rep.at(p.coords());
            linalg::rank(f, &m.map(|r| r.to_vec()), 3) as u8
        })
        .collect()
}

fn same_curve(m1: &LinearMatrixRep, m2: &LinearMatrixRep) -> bool {
    let (d1, d2) = (det_cubic(m1), det_cubic(m2));
    !d1.is_zero() && !d2.is_zero() && d1.ratio_to(&d2).is_some()
}

fn entry(v: &[Elem], offset: usize) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| v[offset + 3 * i + j]))
}

/// Decides whether `m2 = A m1 B` for invertible constant `A`, `B`.
///
/// Writing `C = A^-1`, the condition `C m2_k = m1_k B` (k = 0, 1, 2) is linear
/// in the 18 entries of `(C, B)`. For representations of a smooth cubic the
/// solution space has dimension at most one and every nonzero solution is
/// invertible; in general its nonzero elements are scanned in order for one
/// with both parts invertible. The returned `A` has first nonzero entry one.
pub fn equivalent(m1: &LinearMatrixRep, m2: &LinearMatrixRep) -> Result<Option<EquivalenceWitness>, DetRepError> {
    equivalent_with_budget(m1, m2, DEFAULT_NULLSPACE_BUDGET)
}

pub fn equivalent_with_budget(m1: &LinearMatrixRep, m2: &LinearMatrixRep, budget: u64) -> Result<Option<EquivalenceWitness>, DetRepError> {
    let f = m1.field();
    if f != m2.field() {
        return Err(DetRepError::FieldMismatch);
    }
    if !same_curve(m1, m2) || rank_profile(m1) != rank_profile(m2) {
        return Ok(None);
    }
    let (c1, c2) = (m1.coefficients(), m2.coefficients());
    // unknowns: C entries 0..9, B entries 9..18
    let mut rows = Vec::with_capacity(27);
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut row = vec![Elem::ZERO; 18];
                for l in 0..3 {
                    // (C m2)_ij = sum_l C_il m2_lj ; (m1 B)_ij = sum_l m1_il B_lj
                    row[3 * i + l] = f.add(row[3 * i + l], c2[k][l][j]);
                    row[9 + 3 * l + j] = f.sub(row[9 + 3 * l + j], c1[k][i][l]);
                }
                rows.push(row);
            }
        }
    }
    let basis = linalg::nullspace(f, &rows, 18);
    let found = scan_combinations(f, &basis, budget, |v| {
        let (c, b) = (entry(v, 0), entry(v, 9));
        let a = linalg::inverse(f, &c)?;
        (!linalg::det3(f, &b).is_zero()).then_some((a, b))
    })?;
    Ok(found.map(|(a, b)| {
        let lead = *a.iter().flatten().find(|e| !e.is_zero()).expect("invertible");
        let w = EquivalenceWitness { a: linalg::scale(f, &a, f.inv(lead)), b: linalg::scale(f, &b, lead) };
        debug_assert!(w.check(m1, m2));
        w
    }))
}

/// Tries the nonzero combinations of `basis` with leading coefficient one
/// (one per projective class), in a fixed order.
fn scan_combinations<T>(
    f: &Field,
    basis: &[Vec<Elem>],
    budget: u64,
    mut accept: impl FnMut(&[Elem]) -> Option<T>,
) -> Result<Option<T>, DetRepError> {
    let d = basis.len() as u32;
    if d == 0 {
        return Ok(None);
    }
    let q = f.q() as u64;
    let size = q.checked_pow(d - 1).unwrap_or(u64::MAX).saturating_mul(d as u64);
    if size > budget {
        return Err(DetRepError::BudgetExceeded { size, cap: budget });
    }
    let n = basis[0].len();
    for lead in 0..basis.len() {
        let rest = basis.len() - lead - 1;
        for code in 0..q.pow(rest as u32) {
            let mut v = basis[lead].clone();
            let mut c = code;
            for b in &basis[lead + 1..] {
                let coef = Elem((c % q) as u32);
                c /= q;
                if !coef.is_zero() {
                    for i in 0..n {
                        v[i] = f.mul_add(v[i], coef, b[i]);
                    }
                }
            }
            if let Some(t) = accept(&v) {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

/// Brute-force equivalence: iterates `A` over `GL_3(F_q)` (identity first)
/// and solves `A m1 B = m2` for `B`. The lowest-index witness wins.
pub fn equivalent_by_search(m1: &LinearMatrixRep, m2: &LinearMatrixRep, cap: u64) -> Result<Option<EquivalenceWitness>, DetRepError> {
    let f = m1.field();
    if f != m2.field() {
        return Err(DetRepError::FieldMismatch);
    }
    let size = linalg::gl3_order(f.q() as u64);
    if size > cap {
        return Err(DetRepError::BudgetExceeded { size, cap });
    }
    if !same_curve(m1, m2) {
        return Ok(None);
    }
    let (c1, c2) = (m1.coefficients(), m2.coefficients());
    let solve_b = |a: &Mat3| -> Option<EquivalenceWitness> {
        // (A m1_k B)_ij = sum_l (A m1_k)_il B_lj
        let mut rows = Vec::with_capacity(27);
        let mut rhs = Vec::with_capacity(27);
        for k in 0..3 {
            let am = linalg::mat_mul(f, a, &c1[k]);
            for i in 0..3 {
                for j in 0..3 {
                    let mut row = vec![Elem::ZERO; 9];
                    for l in 0..3 {
                        row[3 * l + j] = am[i][l];
                    }
                    rows.push(row);
                    rhs.push(c2[k][i][j]);
                }
            }
        }
        let x = linalg::solve(f, &rows, &rhs, 9)?;
        let b = entry(&x, 0);
        (!linalg::det3(f, &b).is_zero()).then_some(EquivalenceWitness { a: *a, b })
    };
    if let Some(w) = solve_b(&IDENTITY) {
        return Ok(Some(w));
    }
    let q = f.q() as u64;
    let codes = q.pow(9);
    Ok((0..codes).into_par_iter().find_map_first(|code| {
        let mut v = code;
        let mut a = [[Elem::ZERO; 3]; 3];
        for i in (0..9).rev() {
            a[i / 3][i % 3] = Elem((v % q) as u32);
            v /= q;
        }
        if a == IDENTITY || linalg::det3(f, &a).is_zero() {
            return None;
        }
        solve_b(&a)
    }))
}

/// An invertible `U` with `U M` symmetric, if one exists; `M` is then
/// equivalent to the symmetric representation `U M`.
pub fn symmetrize(rep: &LinearMatrixRep) -> Result<Option<Mat3>, DetRepError> {
    let f = rep.field();
    let cs = rep.coefficients();
    let mut rows = Vec::new();
    for m in &cs {
        for i in 0..3 {
            for j in (i + 1)..3 {
                // (U m)_ij - (U m)_ji = sum_l U_il m_lj - U_jl m_li
                let mut row = vec![Elem::ZERO; 9];
                for l in 0..3 {
                    row[3 * i + l] = f.add(row[3 * i + l], m[l][j]);
                    row[3 * j + l] = f.sub(row[3 * j + l], m[l][i]);
                }
                rows.push(row);
            }
        }
    }
    let basis = linalg::nullspace(f, &rows, 9);
    scan_combinations(f, &basis, DEFAULT_NULLSPACE_BUDGET, |v| {
        let u = entry(v, 0);
        (!linalg::det3(f, &u).is_zero()).then(|| linalg::normalize_projective(f, &u))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn reflexive_and_symmetrizing_transformation() {
        let f2 = Field::new(2, 1, None).unwrap();
        let m = parse::linear_matrix(&f2, "[[0,Z,Y],[Y,0,X],[X,Y+Z,X+Z]]").unwrap();
        let w = equivalent(&m, &m).unwrap().unwrap();
        assert_eq!((w.a, w.b), (IDENTITY, IDENTITY));
        let s = parse::linear_matrix(&f2, "[[Y,0,X],[0,Z,Y],[X,Y,X+Y+Z]]").unwrap();
        let w = equivalent(&m, &s).unwrap().unwrap();
        let expected_a = [[0, 1, 0], [1, 0, 0], [1, 0, 1]].map(|r| r.map(|n| f2.from_int(n)));
        assert_eq!((w.a, w.b), (expected_a, IDENTITY));
        assert!(w.inverse(&f2).check(&s, &m));
        let by_search = equivalent_by_search(&m, &s, linalg::gl3_order(2)).unwrap().unwrap();
        assert!(by_search.check(&m, &s));
    }

    #[test]
    fn inequivalent_pair() {
        let f2 = Field::new(2, 1, None).unwrap();
        let m1 = parse::linear_matrix(&f2, "[[0,Z,Y],[Z,Y,X],[X,0,Y]]").unwrap();
        let m2 = parse::linear_matrix(&f2, "[[0,Z,Y],[Y,0,X],[X,X,Z]]").unwrap();
        assert_eq!(equivalent(&m1, &m2).unwrap(), None);
        assert_eq!(equivalent_by_search(&m1, &m2, u64::MAX).unwrap(), None);
    }

    #[test]
    fn search_budget() {
        let f9 = Field::new(3, 2, None).unwrap();
        let f11 = Field::new(11, 1, None).unwrap();
        let m = LinearMatrixRep::zero(&f11);
        let cap = linalg::gl3_order(9);
        assert!(matches!(equivalent_by_search(&m, &m, cap), Err(DetRepError::BudgetExceeded { .. })));
        let z = LinearMatrixRep::zero(&f9);
        assert_eq!(equivalent_by_search(&z, &z, cap).unwrap(), None);
    }

    #[test]
    fn symmetrize_f2_example() {
        let f2 = Field::new(2, 1, None).unwrap();
        let m = parse::linear_matrix(&f2, "[[0,Z,Y],[Y,0,X],[X,Y+Z,X+Z]]").unwrap();
        let u = symmetrize(&m).unwrap().unwrap();
        assert!(m.transform(&u, &IDENTITY).is_symmetric());
    }
}
