//! Exact integers.
//!
//! Values that fit in an `i64` are kept inline; anything larger is promoted to
//! a `BigInt`. Every operation is exact, so callers never see overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

use Int::{Big, Small};

impl Int {
    pub fn zero() -> Int {
        Small(0)
    }

    pub fn one() -> Int {
        Small(1)
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Small(v),
            None => Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Small(v) => BigInt::from(*v),
            Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Small(v) => Some(*v),
            Big(_) => None,
        }
    }

    /// Lossy conversion for small sizes and indices; panics if out of range.
    pub fn to_usize(&self) -> usize {
        match self {
            Small(v) if *v >= 0 => *v as usize,
            _ => panic!("integer {} does not fit in usize", self),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Small(v) => *v < 0,
            Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Small(v) => v.signum() as i32,
            Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Small(v) => match v.checked_abs() {
                Some(a) => Small(a),
                None => Big(BigInt::from(*v).abs()),
            },
            Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Floor division and the matching nonnegative-style remainder (`self = q*d + r`,
    /// `r` with the sign of `d`).
    pub fn div_mod_floor(&self, d: &Int) -> (Int, Int) {
        assert!(!d.is_zero(), "division by zero");
        if let (Small(a), Small(b)) = (self, d) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Small(q), Small(r));
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&d.to_big());
        (Int::from_big(q), Int::from_big(r))
    }

    pub fn div_floor(&self, d: &Int) -> Int {
        self.div_mod_floor(d).0
    }

    /// Exact division; panics in debug builds if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Int {
        let (q, r) = self.div_mod_floor(d);
        debug_assert!(r.is_zero(), "{} is not divisible by {}", self, d);
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_mod_floor(self).1.is_zero()
    }

    /// Representative in `[0, m)` for `m > 0`; the identity when `m == 0`.
    pub fn reduce(&self, m: &Int) -> Int {
        if m.is_zero() {
            return self.clone();
        }
        self.div_mod_floor(&m.abs()).1
    }

    pub fn gcd(&self, other: &Int) -> Int {
        if let (Small(a), Small(b)) = (self, other) {
            if *a != i64::MIN && *b != i64::MIN {
                return Small(a.gcd(b));
            }
        }
        Int::from_big(self.to_big().gcd(&other.to_big()))
    }

    pub fn lcm(&self, other: &Int) -> Int {
        if self.is_zero() || other.is_zero() {
            return Int::zero();
        }
        (self * other).abs().div_exact(&self.gcd(other))
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g >= 0`.
    pub fn ext_gcd(&self, other: &Int) -> (Int, Int, Int) {
        if let (Small(a), Small(b)) = (self, other) {
            if a.abs() < (1 << 62) && b.abs() < (1 << 62) {
                let (mut r0, mut r1) = (*a as i128, *b as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0.div_euclid(r1);
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                if r0 < 0 {
                    r0 = -r0;
                    s0 = -s0;
                    t0 = -t0;
                }
                return (Int::from(r0), Int::from(s0), Int::from(t0));
            }
        }
        let e = self.to_big().extended_gcd(&other.to_big());
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        (Int::from_big(g), Int::from_big(s), Int::from_big(t))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn mod_inverse(&self, m: &Int) -> Option<Int> {
        let (g, s, _) = self.ext_gcd(m);
        if g.is_one() {
            Some(s.reduce(m))
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Int {
        match i64::try_from(v) {
            Ok(s) => Small(s),
            Err(_) => Big(BigInt::from(v)),
        }
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Int {
        match i64::try_from(v) {
            Ok(s) => Small(s),
            Err(_) => Big(BigInt::from(v)),
        }
    }
}

impl From<i128> for Int {
    fn from(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Small(s),
            Err(_) => Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl From<&BigInt> for Int {
    fn from(b: &BigInt) -> Int {
        Int::from_big(b.clone())
    }
}

impl Default for Int {
    fn default() -> Int {
        Int::zero()
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (self, other) {
            (Small(a), Small(b)) => a == b,
            (Big(a), Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialEq<i64> for Int {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Small(a) if a == other)
    }
}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Small(a), Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(v) => write!(f, "{}", v),
            Big(b) => write!(f, "{}", b),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Int, Self::Err> {
        Ok(Int::from_big(BigInt::from_str(s.trim())?))
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Small(c);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Small(c);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Small(a), Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Small(c);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Small(v) => match v.checked_neg() {
                Some(n) => Small(n),
                None => Big(-BigInt::from(*v)),
            },
            Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &Int) -> Int {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for Int {
            type Output = Int;
            fn $m(self, rhs: i64) -> Int {
                (&self).$m(&Int::from(rhs))
            }
        }
        impl<'a> $tr<i64> for &'a Int {
            type Output = Int;
            fn $m(self, rhs: i64) -> Int {
                self.$m(&Int::from(rhs))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

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

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Int {
    fn product<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::one(), |a, b| a * b)
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Small(0)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Int {
        Small(1)
    }
}

/// Shorthand for building small integers in tests and tables.
pub fn int(v: i64) -> Int {
    Int::from(v)
}
