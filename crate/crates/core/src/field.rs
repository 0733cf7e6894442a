//! Arithmetic in `F_p` and `F_{p^2} = F_p(t)` with `t^2` the smallest
//! positive quadratic nonresidue modulo `p`.
//!
//! Every [`FieldElement`] carries its [`PrimeField`] by value, so elements
//! are `Copy` and the usual operators work without a context argument.
//! Residues fit in `u64` and products of two residues never overflow
//! because `p < 2^31`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_P: u64 = 1 << 31;

/// The prime field `F_p` together with the quadratic model of `F_{p^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    nonresidue: u64,
}

fn is_prime(n: u64) -> bool {
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

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl PrimeField {
    /// Builds the field for a prime `7 < p < 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 7 || p >= MAX_P || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let nonresidue = (2..p)
            .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
            .expect("an odd prime has a nonresidue");
        Ok(Self { p, nonresidue })
    }

    /// The characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The nonresidue `t^2`.
    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// Element `c0 + c1 t` from arbitrary residues.
    pub fn element(&self, c0: u64, c1: u64) -> FieldElement {
        FieldElement {
            c0: c0 % self.p,
            c1: c1 % self.p,
            field: *self,
        }
    }

    /// Image of a signed integer.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.element(r, 0)
    }

    /// The additive identity.
    pub fn zero(&self) -> FieldElement {
        self.element(0, 0)
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FieldElement {
        self.element(1, 0)
    }

    /// The generator `t` of `F_{p^2}` over `F_p`.
    pub fn t(&self) -> FieldElement {
        self.element(0, 1)
    }

    /// The canonical square root of `-1`.
    pub fn fourth_root_of_unity(&self) -> FieldElement {
        (-self.one()).sqrt().expect("-1 is a square in F_p^2")
    }

    /// Iterates over all `p^2` elements, `c1` outer and `c0` inner, which
    /// is the canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.p;
        (0..p).flat_map(move |c1| (0..p).map(move |c0| self.element(c0, c1)))
    }

    /// Parses `"c0+c1*t"` or a bare integer.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("field element {s:?}"));
        match s.split_once('+') {
            Some((a, b)) => {
                let b = b.trim().strip_suffix("*t").ok_or_else(bad)?;
                let c0: i64 = a.trim().parse().map_err(|_| bad())?;
                let c1: i64 = b.trim().parse().map_err(|_| bad())?;
                Ok(self.from_i64(c0) + self.from_i64(c1) * self.t())
            }
            None => Ok(self.from_i64(s.parse().map_err(|_| bad())?)),
        }
    }

    /// Element from a serialized `[c0, c1]` pair.
    pub fn from_pair(&self, pair: [i64; 2]) -> FieldElement {
        self.from_i64(pair[0]) + self.from_i64(pair[1]) * self.t()
    }

    fn fp_sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if pow_mod(a, (p - 1) / 2, p) != 1 {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = pow_mod(self.nonresidue, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = tt * tt % p;
                i += 1;
            }
            let mut b = c;
            for _ in 0..m - i - 1 {
                b = b * b % p;
            }
            r = r * b % p;
            c = b * b % p;
            t = t * c % p;
            m = i;
        }
        Some(r)
    }

    fn fp_inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }
}

/// An element `c0 + c1 t` of `F_{p^2}` in reduced form.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement {
    c0: u64,
    c1: u64,
    field: PrimeField,
}

impl FieldElement {
    /// Coefficient of `1`.
    pub fn c0(&self) -> u64 {
        self.c0
    }

    /// Coefficient of `t`.
    pub fn c1(&self) -> u64 {
        self.c1
    }

    /// The field this element lives in.
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `[c0, c1]`.
    pub fn pair(&self) -> [u64; 2] {
        [self.c0, self.c1]
    }

    /// True for the additive identity.
    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// True for the multiplicative identity.
    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    /// True when the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.c1 == 0
    }

    /// Multiplication by a signed integer.
    pub fn scale(&self, k: i64) -> Self {
        *self * self.field.from_i64(k)
    }

    /// The conjugate `c0 - c1 t`, which is the Frobenius image.
    pub fn frobenius(&self) -> Self {
        let p = self.field.p;
        self.field.element(self.c0, (p - self.c1) % p)
    }

    /// The norm `c0^2 - n c1^2` in `F_p`.
    pub fn norm(&self) -> u64 {
        let p = self.field.p;
        let a = self.c0 * self.c0 % p;
        let b = self.c1 * self.c1 % p * self.field.nonresidue % p;
        (a + p - b) % p
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let p = self.field.p;
        let ni = self.field.fp_inv(self.norm());
        Ok(self.field.element(self.c0 * ni % p, (p - self.c1) * ni % p))
    }

    /// Power with a non-negative exponent.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = self.field.one();
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                r *= b;
            }
            b *= b;
            e >>= 1;
        }
        r
    }

    /// Power with a signed exponent; negative powers of zero are an error.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Quadratic character test in `F_{p^2}`; zero counts as a square.
    pub fn is_square(&self) -> bool {
        // x is a square in F_{p^2} iff its norm is a square in F_p.
        let n = self.norm();
        n == 0 || pow_mod(n, (self.field.p - 1) / 2, self.field.p) == 1
    }

    /// The canonical square root, or `None` when the element is not a square.
    ///
    /// Of the two roots `r, -r` the one with lexicographically smaller
    /// `(c1, c0)` is returned.
    pub fn sqrt(&self) -> Option<Self> {
        let f = self.field;
        let p = f.p;
        if self.is_zero() {
            return Some(*self);
        }
        let r = if self.c1 == 0 {
            match f.fp_sqrt(self.c0) {
                Some(r) => f.element(r, 0),
                None => {
                    let q = self.c0 * f.fp_inv(f.nonresidue) % p;
                    f.element(0, f.fp_sqrt(q)?)
                }
            }
        } else {
            let s = f.fp_sqrt(self.norm())?;
            let half = f.fp_inv(2);
            let plus = (self.c0 + s) % p * half % p;
            let minus = (self.c0 + p - s) % p * half % p;
            let x0 = f.fp_sqrt(plus).or_else(|| f.fp_sqrt(minus))?;
            let x1 = self.c1 * f.fp_inv(2 * x0 % p) % p;
            f.element(x0, x1)
        };
        debug_assert_eq!(r * r, *self);
        let n = -r;
        Some(if r.canonical_cmp(&n) == Ordering::Less {
            r
        } else {
            n
        })
    }

    /// The fixed total order on `F_{p^2}`: lexicographic on `(c1, c0)`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (self.c1, self.c0).cmp(&(other.c1, other.c0))
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.field, other.field, "field mismatch");
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c0 == other.c0 && self.c1 == other.c1 && self.field.p == other.field.p
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c0.hash(state);
        self.c1.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.c0, self.c1)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.c0)?;
        t.serialize_element(&self.c1)?;
        t.end()
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let p = self.field.p;
        let mut c0 = self.c0 + o.c0;
        if c0 >= p {
            c0 -= p;
        }
        let mut c1 = self.c1 + o.c1;
        if c1 >= p {
            c1 -= p;
        }
        Self {
            c0,
            c1,
            field: self.field,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        let p = self.field.p;
        let c0 = if self.c0 >= o.c0 {
            self.c0 - o.c0
        } else {
            self.c0 + p - o.c0
        };
        let c1 = if self.c1 >= o.c1 {
            self.c1 - o.c1
        } else {
            self.c1 + p - o.c1
        };
        Self {
            c0,
            c1,
            field: self.field,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let p = self.field.p;
        Self {
            c0: (p - self.c0) % p,
            c1: (p - self.c1) % p,
            field: self.field,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let p = self.field.p;
        let n = self.field.nonresidue;
        let c0 = (self.c0 * o.c0 + n * (self.c1 * o.c1 % p)) % p;
        let c1 = (self.c0 * o.c1 + self.c1 * o.c0) % p;
        Self {
            c0,
            c1,
            field: self.field,
        }
    }
}

impl Div for FieldElement {
    type Output = Self;
    /// Panics on division by zero; use [`FieldElement::inv`] for a checked inverse.
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in F_p^2")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite() {
        for p in [2, 3, 5, 7, 9, 15, 121] {
            assert!(PrimeField::new(p).is_err());
        }
        assert!(PrimeField::new(11).is_ok());
    }

    #[test]
    fn nonresidue_is_smallest() {
        assert_eq!(PrimeField::new(11).unwrap().nonresidue(), 2);
        assert_eq!(PrimeField::new(13).unwrap().nonresidue(), 2);
        assert_eq!(PrimeField::new(17).unwrap().nonresidue(), 3);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = PrimeField::new(11).unwrap();
        let x = f.element(3, 7);
        assert_eq!(x.to_string(), "3+7*t");
        assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        assert_eq!(f.parse("-1").unwrap(), f.from_i64(10));
        assert_eq!(serde_json::to_string(&x).unwrap(), "[3,7]");
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f = PrimeField::new(13).unwrap();
        for x in f.elements().step_by(7) {
            assert_eq!(x.pow(13), x.frobenius());
        }
    }
}
