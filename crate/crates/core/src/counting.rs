//! Class numbers and the formulas counting smooth plane cubics over `F_q`
//! by number of rational points.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::gf::prime_power;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("{0} is not a negative discriminant (0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("more than one trace qualifies for q = {q}: {candidates:?}")]
    AmbiguousT { q: u64, candidates: Vec<i64> },
    #[error("no trace qualifies for q = {0}")]
    NoSolution(u64),
    #[error("negative class count {total} for q = {q}, n = {n}")]
    NegativeTotal { q: u64, n: i64, total: i64 },
}

/// The Kronecker symbol `(a | n)` for `n >= 1`.
pub fn kronecker_symbol(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker_symbol needs n >= 1");
    let mut n = n;
    let mut result = 1i32;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // Jacobi symbol (a | n) for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Number of `SL_2(Z)`-classes of positive definite binary quadratic forms of
/// discriminant `delta`, imprimitive forms included, by counting reduced forms.
pub fn class_number_h(delta: i64) -> Result<u64, CountError> {
    if delta >= 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(CountError::BadDiscriminant(delta));
    }
    let d = -delta;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in (1 - a)..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    Ok(count)
}

/// An integer or the symbol `∞`, which equals no integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn matches(self, t: i64) -> bool {
        self == ExtInt::Finite(t)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::Infinity => f.write_str("∞"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            ExtInt::Infinity => s.serialize_str("∞"),
        }
    }
}

fn split(q: u64) -> Result<(i64, u32), CountError> {
    prime_power(q).map(|(p, m)| (p as i64, m)).ok_or(CountError::NotPrimePower(q))
}

fn h(delta: i64) -> i64 {
    class_number_h(delta).expect("discriminant is valid by construction") as i64
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_square(n: i64) -> bool {
    n >= 0 && isqrt(n).pow(2) == n
}

/// Number of isomorphism classes of elliptic curves over `F_q` with `n` points.
pub fn count_e(q: u64, n: i64) -> Result<i64, CountError> {
    let (p, m) = split(q)?;
    let qi = q as i64;
    let t = qi + 1 - n;
    let k = |a: i64| kronecker_symbol(a, p as u64) as i64;
    Ok(if t * t > 4 * qi {
        0
    } else if t % p != 0 {
        h(t * t - 4 * qi)
    } else if m % 2 == 1 {
        if t == 0 {
            h(-4 * p)
        } else if (t * t == 2 * qi && p == 2) || (t * t == 3 * qi && p == 3) {
            1
        } else {
            0
        }
    } else if t == 0 {
        1 - k(-4)
    } else if t * t == qi {
        1 - k(-3)
    } else if t * t == 4 * qi {
        (p + 6 - 4 * k(-3) - 3 * k(-4)) / 12
    } else {
        0
    })
}

/// Curves counted by [`count_e`] that have a nontrivial rational 3-torsion point.
pub fn count_e3(q: u64, n: i64) -> Result<i64, CountError> {
    if n.rem_euclid(3) == 0 {
        count_e(q, n)
    } else {
        split(q).map(|_| 0)
    }
}

/// `2 (p|3)^{m/2} p^{m/2}` for even `m`.
fn supersingular_trace(p: i64, m: u32) -> i64 {
    let sign = kronecker_symbol(p, 3) as i64;
    2 * sign.pow(m / 2) * p.pow(m / 2)
}

/// Curves counted by [`count_e`] whose rational 3-torsion is `(Z/3)^2`.
pub fn count_e33(q: u64, n: i64) -> Result<i64, CountError> {
    let (p, m) = split(q)?;
    let qi = q as i64;
    let t = qi + 1 - n;
    if qi % 3 == 1 && t * t <= 4 * qi && t % p != 0 && (t - (qi + 1)).rem_euclid(9) == 0 {
        return Ok(h((t * t - 4 * qi) / 9));
    }
    if m % 2 == 0 && p != 3 && t == supersingular_trace(p, m) {
        return count_e(q, n);
    }
    Ok(0)
}

/// Traces `t` with `|t| <= 2 sqrt(q)`, `p ∤ t`, `t ≡ q + 1 (mod 9)` and
/// `t^2 + c x^2 = 4q` solvable; exactly one is expected.
fn unique_trace(q: u64, p: i64, c: i64) -> Result<ExtInt, CountError> {
    let qi = q as i64;
    let bound = isqrt(4 * qi);
    let candidates: Vec<i64> = (-bound..=bound)
        .filter(|&t| t % p != 0 && (t - (qi + 1)).rem_euclid(9) == 0)
        .filter(|&t| {
            let rest = 4 * qi - t * t;
            rest % c == 0 && is_square(rest / c)
        })
        .collect();
    match candidates.as_slice() {
        [t] => Ok(ExtInt::Finite(*t)),
        [] => Err(CountError::NoSolution(q)),
        _ => Err(CountError::AmbiguousT { q, candidates }),
    }
}

pub fn t0(q: u64) -> Result<ExtInt, CountError> {
    let (p, m) = split(q)?;
    if q % 3 != 1 {
        Ok(ExtInt::Infinity)
    } else if p % 3 != 1 {
        Ok(ExtInt::Finite(supersingular_trace(p, m)))
    } else {
        unique_trace(q, p, 3)
    }
}

/// The third case keeps the congruence modulo 9 of the source formula.
pub fn t1(q: u64) -> Result<ExtInt, CountError> {
    let (p, m) = split(q)?;
    if !matches!(q % 12, 1 | 4) {
        Ok(ExtInt::Infinity)
    } else if p % 4 != 1 {
        Ok(ExtInt::Finite(supersingular_trace(p, m)))
    } else {
        unique_trace(q, p, 4)
    }
}

pub fn epsilon(q: u64, t: i64) -> Result<i64, CountError> {
    let (p, _) = split(q)?;
    let (a, b) = (t0(q)?, t1(q)?);
    let hit = a.matches(t) || b.matches(t);
    Ok(if !hit {
        0
    } else if a != b {
        2
    } else if p == 2 {
        3
    } else {
        4
    })
}

/// The ingredients and the result of the class-count formula for
/// smooth plane cubics over `F_q` with `n` rational points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub n: i64,
    pub e: i64,
    pub e3: i64,
    pub e33: i64,
    pub t0: ExtInt,
    pub t1: ExtInt,
    pub eps: i64,
    pub total: i64,
}

/// Projective equivalence classes of smooth plane cubics with `n` points.
pub fn cubics_with_points(q: u64, n: i64) -> Result<CountReport, CountError> {
    let e = count_e(q, n)?;
    let e3 = count_e3(q, n)?;
    let e33 = count_e33(q, n)?;
    let eps = epsilon(q, q as i64 + 1 - n)?;
    let total = e + e3 + 3 * e33 - eps;
    if total < 0 {
        return Err(CountError::NegativeTotal { q, n, total });
    }
    Ok(CountReport { q, n, e, e3, e33, t0: t0(q)?, t1: t1(q)?, eps, total })
}

/// Classes of smooth plane cubics with exactly `n` inequivalent linear
/// determinantal representations, i.e. with `n + 1` rational points.
pub fn cub(q: u64, n: i64) -> Result<CountReport, CountError> {
    cubics_with_points(q, n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-4, 2), 0);
        assert_eq!(kronecker_symbol(-3, 2), -1);
        assert_eq!(kronecker_symbol(-3, 7), 1);
        assert_eq!(kronecker_symbol(2, 3), -1);
        assert_eq!(kronecker_symbol(5, 1), 1);
        assert_eq!(kronecker_symbol(3, 9), 0);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number_h(-3), Ok(1));
        assert_eq!(class_number_h(-7), Ok(1));
        assert_eq!(class_number_h(-8), Ok(1));
        assert_eq!(class_number_h(-12), Ok(2));
        assert_eq!(class_number_h(-5), Err(CountError::BadDiscriminant(-5)));
        assert_eq!(class_number_h(0), Err(CountError::BadDiscriminant(0)));
    }

    #[test]
    fn traces() {
        assert_eq!((t0(4), t1(4)), (Ok(ExtInt::Finite(-4)), Ok(ExtInt::Finite(-4))));
        assert_eq!((t0(7), t1(7)), (Ok(ExtInt::Finite(-1)), Ok(ExtInt::Infinity)));
        assert_eq!((t0(2), t1(2)), (Ok(ExtInt::Infinity), Ok(ExtInt::Infinity)));
        assert_eq!((t0(13), t1(13)), (Ok(ExtInt::Finite(5)), Ok(ExtInt::Finite(-4))));
        assert!(!ExtInt::Infinity.matches(0));
    }

    #[test]
    fn counts() {
        assert_eq!(count_e(2, 1), Ok(1));
        assert_eq!(count_e(4, 3), Ok(2));
        assert_eq!(count_e(5, 1), Ok(0));
        assert_eq!(count_e3(2, 3), Ok(1));
        assert_eq!(count_e3(2, 2), Ok(0));
        assert_eq!(count_e33(4, 3), Ok(0));
        assert_eq!(count_e33(13, 12), Ok(0));
        assert_eq!(epsilon(4, 4), Ok(0));
        assert_eq!(epsilon(7, 5), Ok(0));
        assert_eq!(cubics_with_points(2, 1).unwrap().total, 1);
        assert_eq!(cubics_with_points(2, 3).unwrap().total, 2);
        assert_eq!(cubics_with_points(11, 1).unwrap().total, 0);
        assert_eq!(cub(4, 2).unwrap().total, 4);
        assert_eq!(cub(7, 1).unwrap().total, 0);
        assert_eq!(count_e(6, 1), Err(CountError::NotPrimePower(6)));
    }
}
