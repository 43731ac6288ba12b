//! Exact arithmetic in finite fields `F_{p^m}`.
//!
//! A [`Field`] is an immutable, cheaply cloneable handle. Elements are stored
//! as [`Elem`] indices: the coefficient vector `(c_0, .., c_{m-1})` of the
//! residue polynomial, read as the base-`p` integer `c_0 + c_1 p + ..`. Index
//! order is therefore the enumeration order with low-degree coefficients
//! counting fastest, and the index of an element of the prime subfield is its
//! integer value.
//!
//! Hot loops (point scans, orbit enumeration, linear solves) work on raw
//! `Elem` values through the `Field` methods. [`FieldElement`] pairs an `Elem`
//! with its field and is the checked, user-facing value type.

mod element;
pub mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

pub use element::{ArithOp, Embedding, FieldElement};

/// Largest field a caller may construct unless a larger cap is passed.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 14;

/// Cap for extension fields built internally (smoothness search over
/// `F_{q^4}` with `q = 13` already needs 28561 elements).
pub(crate) const INTERNAL_SIZE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus {0:?} is reducible over F_p")]
    Reducible(Vec<u32>),
    #[error("modulus must be monic of degree {degree}, got {got:?}")]
    BadModulus { degree: u32, got: Vec<u32> },
    #[error("field size {p}^{m} exceeds the configured cap {cap}")]
    UnsupportedSize { p: u64, m: u32, cap: u64 },
    #[error("exponent m must be positive")]
    ZeroExponent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("target field is not an extension of the source field")]
    NotAnExtension,
    #[error("invalid element encoding: {0}")]
    BadElement(String),
}

/// A field element index; meaningful only together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, doubled so products skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Full addition table for small fields that are neither prime nor binary.
    add: Option<Vec<u32>>,
}

/// An immutable finite field `F_{p^m}` with a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.m)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl Field {
    /// Builds `F_{p^m}` under the default size cap. With `modulus` omitted the
    /// lexicographically smallest monic irreducible (coefficients compared
    /// low-degree first) is used.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        Field::with_cap(p, m, modulus, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(p: u64, m: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroExponent);
        }
        let q = p.checked_pow(m).filter(|&q| q <= cap && q <= INTERNAL_SIZE_CAP).ok_or(GfError::UnsupportedSize { p, m, cap })?;
        let p = p as u32;
        let modulus = match modulus {
            Some(given) => {
                let reduced: Vec<u32> = given.iter().map(|c| c % p).collect();
                if reduced.len() != m as usize + 1 || reduced[m as usize] != 1 {
                    return Err(GfError::BadModulus { degree: m, got: given.to_vec() });
                }
                if !poly::is_irreducible_mod_p(&reduced, p) {
                    return Err(GfError::Reducible(reduced));
                }
                reduced
            }
            None => default_modulus(p, m),
        };
        Ok(Field(Arc::new(build_tables(p, m, q as u32, modulus))))
    }

    /// The field `F_{p^m}` with default modulus, memoized process-wide and
    /// allowed up to the internal cap. Used for extension-field searches.
    pub(crate) fn cached_default(p: u32, m: u32) -> Result<Field, GfError> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        let f = Field::with_cap(p as u64, m, None, INTERNAL_SIZE_CAP)?;
        Ok(cache.lock().unwrap().entry((p, m)).or_insert(f).clone())
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `x` modulo the defining polynomial (zero for prime fields,
    /// where the modulus is `x`).
    pub fn generator(&self) -> Elem {
        if self.0.m == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            Elem(self.0.p)
        }
    }

    /// Element at enumeration index `idx`, if `idx < q`.
    pub fn element_at(&self, idx: u32) -> Option<Elem> {
        (idx < self.0.q).then_some(Elem(idx))
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// The image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Coefficients `c_0 .. c_{m-1}` of the residue polynomial.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a.0;
        (0..self.0.m)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Element from a low-degree-first coefficient sequence; missing high
    /// coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, GfError> {
        if coeffs.len() > self.0.m as usize {
            return Err(GfError::BadElement(format!("{} coefficients given for a degree-{} field", coeffs.len(), self.0.m)));
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.0.p {
                return Err(GfError::BadElement(format!("coefficient {c} is not reduced mod {}", self.0.p)));
            }
            idx = idx * self.0.p + c;
        }
        Ok(Elem(idx))
    }

    /// The prime-subfield integer `0..p` of `a`, if `a` lies in `F_p`.
    pub fn as_prime_int(&self, a: Elem) -> Option<u32> {
        (a.0 < self.0.p).then_some(a.0)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            Elem(a.0 ^ b.0)
        } else if d.m == 1 {
            let s = a.0 + b.0;
            Elem(if s >= d.p { s - d.p } else { s })
        } else if let Some(t) = &d.add {
            Elem(t[(a.0 * d.q + b.0) as usize])
        } else {
            Elem(add_digits(d.p, d.m, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let d = &*self.0;
        let l = d.log[a.0 as usize];
        Some(Elem(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    /// Multiplicative inverse. Panics on zero; callers establish `a != 0`.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        let order = (d.q - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(d.exp[l as usize])
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Checks that `a` is a valid index for this field.
    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.q
    }
}

fn add_digits(p: u32, m: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut w = 1;
    for _ in 0..m {
        let s = (a % p + b % p) % p;
        out += s * w;
        w *= p;
        a /= p;
        b /= p;
    }
    out
}

fn neg_digits(p: u32, m: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut w = 1;
    for _ in 0..m {
        out += ((p - a % p) % p) * w;
        w *= p;
        a /= p;
    }
    out
}

/// Smallest monic irreducible of degree `m`, comparing `(c_0, .., c_{m-1})`
/// lexicographically with `c_0` first.
fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let total = (p as u64).pow(m);
    for k in 0..total {
        // c_0 is the most significant digit of k.
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut v = k;
        for i in (0..m as usize).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[m as usize] = 1;
        if poly::is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn build_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> FieldData {
    let neg: Vec<u32> = (0..q).map(|a| neg_digits(p, m, a)).collect();
    let add = (p != 2 && m != 1 && q <= 256).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = add_digits(p, m, a, b);
            }
        }
        t
    });

    let mulmod = |a: u32, b: u32| -> u32 {
        let pa = digits(p, m, a);
        let pb = digits(p, m, b);
        let prod = poly::mul_mod_p(&pa, &pb, p);
        let r = poly::rem_mod_p(&prod, &modulus, p);
        undigits(p, &r)
    };

    // First primitive element in enumeration order.
    let order = q - 1;
    let mut exp = Vec::with_capacity(2 * order as usize);
    'search: for g in 1..q {
        exp.clear();
        let mut x = 1u32;
        for i in 0..order {
            if i > 0 && x == 1 {
                continue 'search;
            }
            exp.push(x);
            x = mulmod(x, g);
        }
        if x == 1 {
            break;
        }
    }
    assert_eq!(exp.len(), order as usize, "no primitive element found");
    let mut log = vec![0u32; q as usize];
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    let doubled = exp.clone();
    exp.extend(doubled);

    FieldData { p, m, q, modulus, exp, log, neg, add }
}

fn digits(p: u32, m: u32, mut a: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}
