//! Arbitrary-precision integers with an inline machine-word fast path.
//!
//! Almost every value that flows through the Mackey-functor kernels fits in
//! an `i64`; the occasional intermediate in a Smith reduction does not. `Int`
//! stores small values inline and promotes to a heap `BigInt` on overflow, so
//! results are always exact.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64),
    // Never holds a value that fits in an i64.
    Big(Box<BigInt>),
}

/// An exact integer.
#[derive(Clone)]
pub struct Int(Repr);

impl Int {
    pub const ZERO: Int = Int(Repr::Small(0));
    pub const ONE: Int = Int(Repr::Small(1));

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(Box::new(b))),
        }
    }

    fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
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

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    /// Floor division.
    pub fn div_floor(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if !(*a == i64::MIN && *b == -1) {
                return Int(Repr::Small(a.div_floor(b)));
            }
        }
        Int::from_big(self.to_big().div_floor(&other.to_big()))
    }

    /// Remainder with the sign of `other` (so in `[0, other)` for positive `other`).
    pub fn mod_floor(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if *b == -1 {
                return Int::ZERO;
            }
            return Int(Repr::Small(a.mod_floor(b)));
        }
        Int::from_big(self.to_big().mod_floor(&other.to_big()))
    }

    /// Exact quotient; panics when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        let q = self.div_floor(other);
        debug_assert!((&q * other) == *self, "inexact division");
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(self).is_zero()
    }

    /// Nonnegative gcd.
    pub fn gcd(&self, other: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            if let Ok(v) = i64::try_from(x) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(self.to_big().gcd(&other.to_big()))
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other`, `g >= 0`.
    pub fn ext_gcd(&self, other: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let nr = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, nr);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int(Repr::Small(v as i64))
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(v) => Int(Repr::Small(v)),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_mul(*b) {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        if let Repr::Small(a) = &self.0 {
            if let Some(v) = a.checked_neg() {
                return Int(Repr::Small(v));
            }
        }
        Int::from_big(-self.to_big())
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &'a Int) -> Int {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Int> for Int {
    fn add_assign(&mut self, rhs: Int) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Int> for Int {
    fn sub_assign(&mut self, rhs: Int) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Int> for Int {
    fn sum<I: Iterator<Item = &'a Int>>(iter: I) -> Int {
        iter.fold(Int::ZERO, |a, b| a + b)
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => s.serialize_i64(*v),
            Repr::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int::from(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int::from_big(BigInt::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse::<BigInt>()
                    .map(Int::from_big)
                    .map_err(|_| E::custom(format!("invalid integer literal {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(b.to_i64().is_none());
        assert_eq!(&b - &Int::ONE, a);
        let sq = &a * &a;
        assert_eq!(sq.div_exact(&a), a);
        assert_eq!(-Int::from(i64::MIN), &Int::from(i64::MAX) + &Int::ONE);
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(Int::from(-7).div_floor(&Int::from(2)), Int::from(-4));
        assert_eq!(Int::from(-7).mod_floor(&Int::from(2)), Int::from(1));
        assert_eq!(Int::from(7).mod_floor(&Int::from(-1)), Int::ZERO);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (x, y, z) = (Int::from(a), Int::from(b), Int::from(c));
            let big = |v: &Int| v.to_big();
            let lhs = &(&x * &y) + &(&z - &x);
            let rhs = BigInt::from(a) * BigInt::from(b) + (BigInt::from(c) - BigInt::from(a));
            prop_assert_eq!(big(&lhs), rhs);
            prop_assert_eq!(lhs.cmp(&Int::ZERO), big(&lhs).cmp(&BigInt::zero()));
        }

        #[test]
        fn ext_gcd_bezout(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (g, s, t) = Int::from(a).ext_gcd(&Int::from(b));
            prop_assert_eq!(&(&s * &Int::from(a)) + &(&t * &Int::from(b)), g.clone());
            prop_assert_eq!(g, Int::from(a).gcd(&Int::from(b)));
        }
    }
}
