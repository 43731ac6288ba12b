//! Exact linear algebra over a [`Field`]: 3x3 matrices and row reduction.

use crate::gf::{Elem, Field};

pub type Mat3 = [[Elem; 3]; 3];

pub const IDENTITY: Mat3 = [[Elem::ONE, Elem::ZERO, Elem::ZERO], [Elem::ZERO, Elem::ONE, Elem::ZERO], [Elem::ZERO, Elem::ZERO, Elem::ONE]];

pub fn mat_mul(f: &Field, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = f.sum((0..3).map(|k| f.mul(a[i][k], b[k][j])));
        }
    }
    out
}

pub fn mat_vec(f: &Field, a: &Mat3, v: &[Elem; 3]) -> [Elem; 3] {
    std::array::from_fn(|i| f.sum((0..3).map(|k| f.mul(a[i][k], v[k]))))
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn det3(f: &Field, a: &Mat3) -> Elem {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| f.sub(f.mul(a[r1][c1], a[r2][c2]), f.mul(a[r1][c2], a[r2][c1]));
    let t0 = f.mul(a[0][0], minor(1, 2, 1, 2));
    let t1 = f.mul(a[0][1], minor(1, 2, 0, 2));
    let t2 = f.mul(a[0][2], minor(1, 2, 0, 1));
    f.add(f.sub(t0, t1), t2)
}

pub fn scale(f: &Field, a: &Mat3, c: Elem) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| f.mul(a[i][j], c)))
}

/// Inverse via the adjugate; `None` when singular.
pub fn inverse(f: &Field, a: &Mat3) -> Option<Mat3> {
    let d = f.try_inv(det3(f, a))?;
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let m = f.sub(f.mul(a[r[0]][c[0]], a[r[1]][c[1]]), f.mul(a[r[0]][c[1]], a[r[1]][c[0]]));
        if (i + j).is_multiple_of(2) {
            m
        } else {
            f.neg(m)
        }
    };
    // inverse[i][j] = cofactor(j, i) / det
    Some(std::array::from_fn(|i| std::array::from_fn(|j| f.mul(cof(j, i), d))))
}

/// Scales `a` so its first nonzero entry (row-major) is one.
pub fn normalize_projective(f: &Field, a: &Mat3) -> Mat3 {
    match a.iter().flatten().find(|e| !e.is_zero()) {
        Some(&lead) => scale(f, a, f.inv(lead)),
        None => *a,
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, rows: &mut [Vec<Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work, ncols).len()
}

/// Basis of `{ x : A x = 0 }` for the `rows.len() x ncols` matrix `A`, one
/// vector per free column in increasing column order, each with a one in its
/// own free coordinate.
pub fn nullspace(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut work = rows.to_vec();
    let pivots = rref(f, &mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; ncols];
            v[fc] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work[r][fc]);
            }
            v
        })
        .collect()
}

/// Solves `A x = b`; returns one solution (free variables zero) or `None`.
pub fn solve(f: &Field, rows: &[Vec<Elem>], rhs: &[Elem], ncols: usize) -> Option<Vec<Elem>> {
    let mut aug: Vec<Vec<Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b);
            row
        })
        .collect();
    let pivots = rref(f, &mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Elem::ZERO; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

/// Every invertible 3x3 matrix over `f`, identity first, the rest in
/// enumeration order of their row-major entry indices.
pub fn general_linear_group(f: &Field) -> Vec<Mat3> {
    let q = f.q() as u64;
    let total = q.pow(9);
    let mut out = vec![IDENTITY];
    for code in 0..total {
        let mut v = code;
        let mut m = [[Elem::ZERO; 3]; 3];
        for i in (0..9).rev() {
            m[i / 3][i % 3] = Elem((v % q) as u32);
            v /= q;
        }
        if m != IDENTITY && !det3(f, &m).is_zero() {
            out.push(m);
        }
    }
    out
}

/// `|GL_3(F_q)| = (q^3 - 1)(q^3 - q)(q^3 - q^2)`.
pub fn gl3_order(q: u64) -> u64 {
    let q3 = q * q * q;
    (q3 - 1) * (q3 - q) * (q3 - q * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_f3() {
        let f = Field::new(3, 1, None).unwrap();
        let e = |n| f.from_int(n);
        let a = [[e(1), e(2), e(0)], [e(0), e(1), e(1)], [e(1), e(0), e(2)]];
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &inv), IDENTITY);
        let sing = [[e(1), e(2), e(0)], [e(2), e(1), e(0)], [e(0), e(0), e(0)]];
        assert!(inverse(&f, &sing).is_none());
    }

    #[test]
    fn gl3_sizes() {
        let f2 = Field::new(2, 1, None).unwrap();
        let g = general_linear_group(&f2);
        assert_eq!(g.len() as u64, gl3_order(2));
        assert_eq!(g[0], IDENTITY);
        assert_eq!(gl3_order(3), 11232);
    }

    #[test]
    fn nullspace_and_solve() {
        let f = Field::new(5, 1, None).unwrap();
        let e = |n| f.from_int(n);
        let rows = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(1)]];
        let ns = nullspace(&f, &rows, 3);
        // second row is twice the first
        assert_eq!(ns.len(), 2);
        for r in &rows {
            for v in &ns {
                assert!(f.sum(r.iter().zip(v).map(|(&a, &b)| f.mul(a, b))).is_zero());
            }
        }
        let x = solve(&f, &rows, &[e(1), e(2)], 3).unwrap();
        for (r, b) in rows.iter().zip([e(1), e(2)]) {
            assert_eq!(f.sum(r.iter().zip(&x).map(|(&a, &b)| f.mul(a, b))), b);
        }
        assert!(solve(&f, &rows, &[e(1), e(0)], 3).is_none());
        assert_eq!(rank(&f, &rows, 3), 1);
    }
}
