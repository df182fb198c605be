//! Arbitrary-precision integer with an inline machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; every operation is checked and
//! promotes to a heap `BigInt` on overflow, and results are demoted again when
//! they fit. Callers never observe the representation.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    // invariant: never representable as i64
    Big(Box<BigInt>),
}

/// An exact integer. Arithmetic never overflows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

impl Integer {
    pub const fn zero() -> Self {
        Integer(Repr::Small(0))
    }

    pub const fn one() -> Self {
        Integer(Repr::Small(1))
    }

    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer(Repr::Small(v)),
            None => Integer(Repr::Big(Box::new(b))),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_abs() {
                Some(a) => Integer(Repr::Small(a)),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Repr::Big(b) => Integer::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Integer) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            // a Big always exceeds every Small in magnitude except for i64::MIN edge,
            // which is Small; compare exactly through BigInt in mixed cases
            _ => self.to_big().magnitude().cmp(other.to_big().magnitude()),
        }
    }

    /// Euclidean-style division rounding the quotient to the nearest integer, so the
    /// remainder `self - q*d` satisfies `|r| <= |d|/2`. Panics on `d == 0`.
    pub fn div_round(&self, d: &Integer) -> Integer {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            let (a, b) = (*a as i128, *b as i128);
            let q = a.div_euclid(b);
            let r = a - q * b;
            // r in [0, |b|); shift toward zero remainder
            let q = if 2 * r > b.abs() { q + b.signum() } else { q };
            return Integer::from_i128(q);
        }
        let (a, b) = (self.to_big(), d.to_big());
        let (q, r) = a.div_mod_floor(&b);
        // floor: r has the sign of b
        let twice = &r + &r;
        let q = if twice.magnitude() > b.magnitude() {
            q + 1
        } else {
            q
        };
        Integer::from_big(q)
    }

    /// Exact division; returns `None` when `d` does not divide `self` (or `d == 0`).
    pub fn checked_exact_div(&self, d: &Integer) -> Option<Integer> {
        if d.is_zero() {
            return None;
        }
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            let (a, b) = (*a as i128, *b as i128);
            return (a % b == 0).then(|| Integer::from_i128(a / b));
        }
        let (a, b) = (self.to_big(), d.to_big());
        let (q, r) = a.div_rem(&b);
        r.is_zero().then(|| Integer::from_big(q))
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.checked_exact_div(self).is_some()
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let g = (*a as i128).gcd(&(*b as i128));
            return Integer::from_i128(g);
        }
        Integer::from_big(self.to_big().gcd(&other.to_big()))
    }

    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::zero();
        }
        let g = self.gcd(other);
        (&self.abs() * &other.abs())
            .checked_exact_div(&g)
            .expect("gcd divides")
    }

    pub fn pow(&self, exp: u32) -> Integer {
        let mut acc = Integer::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `self -= q * x`, the elimination kernel.
    #[inline]
    pub fn sub_mul_assign(&mut self, q: &Integer, x: &Integer) {
        if let (Repr::Small(a), Repr::Small(b), Repr::Small(c)) = (&self.0, &q.0, &x.0) {
            let v = (*a as i128) - (*b as i128) * (*c as i128);
            *self = Integer::from_i128(v);
            return;
        }
        let v = self.to_big() - q.to_big() * x.to_big();
        *self = Integer::from_big(v);
    }

    #[inline]
    fn from_i128(v: i128) -> Integer {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer(Repr::Big(Box::new(BigInt::from(v)))),
        }
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::zero()
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(Repr::Small(v))
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer(Repr::Small(v as i64))
    }
}

impl From<u32> for Integer {
    fn from(v: u32) -> Self {
        Integer(Repr::Small(v as i64))
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn add(self, rhs: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            return Integer::from_i128(*a as i128 + *b as i128);
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn sub(self, rhs: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            return Integer::from_i128(*a as i128 - *b as i128);
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn mul(self, rhs: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            return Integer::from_i128(*a as i128 * *b as i128);
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match &self.0 {
            Repr::Small(a) => Integer::from_i128(-(*a as i128)),
            Repr::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Add for Integer {
    type Output = Integer;
    fn add(self, rhs: Integer) -> Integer {
        &self + &rhs
    }
}

impl Sub for Integer {
    type Output = Integer;
    fn sub(self, rhs: Integer) -> Integer {
        &self - &rhs
    }
}

impl Mul for Integer {
    type Output = Integer;
    fn mul(self, rhs: Integer) -> Integer {
        &self * &rhs
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        *self = &*self * rhs;
    }
}

impl Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a Integer> for Integer {
    fn sum<I: Iterator<Item = &'a Integer>>(iter: I) -> Integer {
        iter.fold(Integer::zero(), |acc, x| &acc + x)
    }
}

impl Product for Integer {
    fn product<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::one(), |acc, x| &acc * &x)
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::zero()
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::one()
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Integer(Repr::Small(v)));
        }
        Ok(Integer::from_big(s.parse::<BigInt>()?))
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => s.serialize_i64(*v),
            Repr::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Num(i64),
            Text(String),
        }
        match Wire::deserialize(d)? {
            Wire::Num(v) => Ok(Integer::from(v)),
            Wire::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
