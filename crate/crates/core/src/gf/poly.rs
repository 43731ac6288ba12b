//! Dense univariate polynomials, coefficients stored low degree first.
//!
//! Two flavours: plain `u32` residues over a prime `p` (used while a field is
//! being built) and [`Elem`] coefficients over a constructed [`Field`].

use super::{Elem, Field};

fn trim_u32(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

pub(crate) fn mul_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim_u32(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the nonzero polynomial `b` over `F_p`.
pub(crate) fn rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim_u32(b.to_vec());
    let mut r = trim_u32(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &c) in b.iter().enumerate() {
            let sub = (factor as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim_u32(r);
    }
    r
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let f = trim_u32(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut v = k;
            for c in g.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            g[d] = 1;
            if rem_mod_p(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Drops trailing zero coefficients; the zero polynomial is empty.
pub fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn eval(f: &Field, poly: &[Elem], x: Elem) -> Elem {
    poly.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(out[i + j], x, y);
        }
    }
    trim(out)
}

/// Remainder of `a` by nonzero `b`.
pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(factor, c));
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor, made monic; `gcd(0, 0)` is the empty polynomial.
pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = f.inv(lead);
        x.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible_mod_p(&[1, 1, 1], 2));
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 2));
        assert!(is_irreducible_mod_p(&[1, 0, 1], 3));
        assert!(!is_irreducible_mod_p(&[2, 0, 1], 3));
        // x^4 + x + 1 is irreducible over F_2, x^4 + x^2 + 1 = (x^2+x+1)^2 is not.
        assert!(is_irreducible_mod_p(&[1, 1, 0, 0, 1], 2));
        assert!(!is_irreducible_mod_p(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn gcd_finds_common_root() {
        let f = Field::new(7, 1, None).unwrap();
        let e = |n| f.from_int(n);
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&f, &[e(-1), e(1)], &[e(-2), e(1)]);
        let b = mul(&f, &[e(-1), e(1)], &[e(-3), e(1)]);
        assert_eq!(gcd(&f, &a, &b), vec![e(-1), e(1)]);
        assert_eq!(gcd(&f, &[], &[]), Vec::<Elem>::new());
        assert_eq!(gcd(&f, &a, &[e(3)]), vec![e(1)]);
        assert_eq!(eval(&f, &a, e(2)), Elem::ZERO);
    }
}
