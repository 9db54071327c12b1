//! Exact arithmetic in the real quadratic field Q(√3).
//!
//! Every coordinate, coefficient and integral produced by the pipeline lives
//! in this field, so decisions (signs, equality, membership) never touch
//! floating point. Elements are stored canonically as `r + s·√3` with both
//! parts in lowest terms, which makes structural equality numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// √3 rounded to the nearest double.
const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    /// `n / d` for small literals. Panics on `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator in Rat::frac");
        Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn inv(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        Ok(self * &other.inv()?)
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self.0.to_f64() {
            Some(v) if v.is_finite() => Ok(v),
            _ => Err(Error::Range(self.to_string())),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_integer(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rat(BigRational::new(parse_int(n)?, d)))
            }
            None => Ok(Rat::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $method:ident, $imp:expr) => {
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                let f: fn(&$ty, &$ty) -> $ty = $imp;
                f(self, rhs)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Rat, Add, add, |a, b| Rat(&a.0 + &b.0));
forward_binop!(Rat, Sub, sub, |a, b| Rat(&a.0 - &b.0));
forward_binop!(Rat, Mul, mul, |a, b| Rat(&a.0 * &b.0));

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// `r + s·√3` with rational `r` and `s`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadNum {
    r: Rat,
    s: Rat,
}

impl QuadNum {
    pub fn new(r: Rat, s: Rat) -> Self {
        QuadNum { r, s }
    }

    pub fn zero() -> Self {
        QuadNum::default()
    }

    pub fn one() -> Self {
        QuadNum::new(Rat::one(), Rat::zero())
    }

    pub fn sqrt3() -> Self {
        QuadNum::new(Rat::zero(), Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        QuadNum::new(r, Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        QuadNum::from_rat(Rat::from(n))
    }

    /// `(rn/rd) + (sn/sd)·√3` for small literals.
    pub fn frac(rn: i64, rd: i64, sn: i64, sd: i64) -> Self {
        QuadNum::new(Rat::frac(rn, rd), Rat::frac(sn, sd))
    }

    /// Rational part.
    pub fn rat(&self) -> &Rat {
        &self.r
    }

    /// Coefficient of √3.
    pub fn sqrt3_coeff(&self) -> &Rat {
        &self.s
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.r)
    }

    /// Galois conjugate `r - s·√3`.
    pub fn conjugate(&self) -> QuadNum {
        QuadNum::new(self.r.clone(), -&self.s)
    }

    /// Field norm `r² - 3s²`; zero only for zero.
    pub fn norm(&self) -> Rat {
        &(&self.r * &self.r) - &(Rat::from(3) * (&self.s * &self.s))
    }

    /// Exact sign of the real number `r + s·√3`.
    pub fn signum(&self) -> i8 {
        let (sr, ss) = (self.r.signum(), self.s.signum());
        if ss == 0 {
            return sr;
        }
        if sr == 0 || sr == ss {
            return ss;
        }
        // Opposite signs: the larger of r² and 3s² wins. They cannot be equal.
        let r2 = &self.r * &self.r;
        let s2 = Rat::from(3) * (&self.s * &self.s);
        if r2 > s2 {
            sr
        } else {
            ss
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> QuadNum {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<QuadNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(QuadNum::new(&self.r * &n, -(&self.s * &n)))
    }

    pub fn checked_div(&self, other: &QuadNum) -> Result<QuadNum> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, k: &Rat) -> QuadNum {
        QuadNum::new(&self.r * k, &self.s * k)
    }

    pub fn pow(&self, exp: u32) -> QuadNum {
        let mut acc = QuadNum::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nearest-ish double (within a couple of ulps). Never used for decisions.
    pub fn to_f64(&self) -> Result<f64> {
        let r = self.r.to_f64()?;
        let s = self.s.to_f64()?;
        let v = r + s * SQRT_3;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Range(self.to_string()))
        }
    }
}

impl From<Rat> for QuadNum {
    fn from(r: Rat) -> Self {
        QuadNum::from_rat(r)
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum::from_int(n)
    }
}

forward_binop!(QuadNum, Add, add, |a, b| QuadNum::new(
    &a.r + &b.r,
    &a.s + &b.s
));
forward_binop!(QuadNum, Sub, sub, |a, b| QuadNum::new(
    &a.r - &b.r,
    &a.s - &b.s
));
forward_binop!(QuadNum, Mul, mul, |a, b| {
    // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
    let rr = &a.r * &b.r;
    let ss = &a.s * &b.s;
    let rs = &a.r * &b.s;
    let sr = &a.s * &b.r;
    QuadNum::new(rr + Rat::from(3) * ss, rs + sr)
});

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-self.r, -self.s)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-&self.r, -&self.s)
    }
}

impl AddAssign<&QuadNum> for QuadNum {
    fn add_assign(&mut self, rhs: &QuadNum) {
        self.r = &self.r + &rhs.r;
        self.s = &self.s + &rhs.s;
    }
}

impl SubAssign<&QuadNum> for QuadNum {
    fn sub_assign(&mut self, rhs: &QuadNum) {
        self.r = &self.r - &rhs.r;
        self.s = &self.s - &rhs.s;
    }
}

impl MulAssign<&QuadNum> for QuadNum {
    fn mul_assign(&mut self, rhs: &QuadNum) {
        *self = &*self * rhs;
    }
}

impl Sum for QuadNum {
    fn sum<I: Iterator<Item = QuadNum>>(iter: I) -> Self {
        iter.fold(QuadNum::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a QuadNum> for QuadNum {
    fn sum<I: Iterator<Item = &'a QuadNum>>(iter: I) -> Self {
        iter.fold(QuadNum::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for QuadNum {
    fn product<I: Iterator<Item = QuadNum>>(iter: I) -> Self {
        iter.fold(QuadNum::one(), |acc, x| &acc * &x)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = |s: &Rat| -> String {
            if *s == Rat::one() {
                "√3".to_string()
            } else {
                format!("{s}·√3")
            }
        };
        match (self.r.is_zero(), self.s.is_zero()) {
            (_, true) => write!(f, "{}", self.r),
            (true, false) => {
                if self.s == -Rat::one() {
                    write!(f, "-√3")
                } else {
                    write!(f, "{}", surd(&self.s))
                }
            }
            (false, false) => {
                let sign = if self.s.signum() < 0 { '-' } else { '+' };
                write!(f, "{} {} {}", self.r, sign, surd(&self.s.abs()))
            }
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadNumRepr {
    rat: Rat,
    sqrt3: Rat,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuadNumRepr {
            rat: self.r.clone(),
            sqrt3: self.s.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QuadNumRepr::deserialize(deserializer)?;
        Ok(QuadNum::new(repr.rat, repr.sqrt3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(rn: i64, rd: i64, sn: i64, sd: i64) -> QuadNum {
        QuadNum::frac(rn, rd, sn, sd)
    }

    #[test]
    fn product_expands() {
        assert_eq!(q(1, 1, 2, 1) * q(2, 1, -1, 1), q(-4, 1, 3, 1));
    }

    #[test]
    fn inverse_of_sqrt3() {
        assert_eq!(QuadNum::sqrt3().inv().unwrap(), q(0, 1, 1, 3));
        assert!(matches!(QuadNum::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn signs() {
        assert_eq!(q(-7, 1, 4, 1).signum(), -1);
        assert_eq!(QuadNum::zero().signum(), 0);
        assert_eq!(q(-1, 1, 1, 1).signum(), 1);
        assert_eq!(q(7, 1, -4, 1).signum(), 1);
        assert_eq!(q(1, 1, -1, 1).signum(), -1);
        assert_eq!(q(0, 1, -1, 5).signum(), -1);
    }

    #[test]
    fn float_conversion() {
        let v = q(0, 1, 27, 5).to_f64().unwrap();
        // 27·√3/5 = 9.35307436087193738504...
        let reference = 9.353_074_360_871_937_f64;
        assert!((v - reference).abs() <= 2.0 * f64::EPSILON * reference);
        assert_eq!(QuadNum::zero().to_f64().unwrap(), 0.0);
        assert_eq!(q(5, 4, 0, 1).to_f64().unwrap(), 1.25);
    }

    #[test]
    fn float_range_error() {
        let huge = Rat::new(BigInt::from(10).pow(400), 1).unwrap();
        assert!(matches!(
            QuadNum::from_rat(huge).to_f64(),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn rat_strings() {
        assert_eq!(Rat::frac(6, -4).to_string(), "-3/2");
        assert_eq!(Rat::frac(8, 4).to_string(), "2");
        assert_eq!("10/-4".parse::<Rat>().unwrap(), Rat::frac(-5, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(0, 1, 27, 5).to_string(), "27/5·√3");
        assert_eq!(q(5, 4, 0, 1).to_string(), "5/4");
        assert_eq!(q(1, 1, -1, 1).to_string(), "1 - √3");
        assert_eq!(q(-7, 1, 4, 1).to_string(), "-7 + 4·√3");
        assert_eq!(QuadNum::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_string(&q(5, 4, -27, 5)).unwrap();
        assert_eq!(v, r#"{"rat":"5/4","sqrt3":"-27/5"}"#);
        let back: QuadNum = serde_json::from_str(&v).unwrap();
        assert_eq!(back, q(5, 4, -27, 5));
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rat::frac(n, d))
    }

    fn quad() -> impl Strategy<Value = QuadNum> {
        (small_rat(), small_rat()).prop_map(|(r, s)| QuadNum::new(r, s))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in quad(), b in quad(), c in quad()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QuadNum::one());
            }
        }

        #[test]
        fn sign_is_multiplicative(a in quad(), b in quad()) {
            prop_assert_eq!((&a * &b).signum(), a.signum() * b.signum());
        }

        #[test]
        fn sign_agrees_with_float(a in quad()) {
            let v = a.to_f64().unwrap();
            if v.abs() > 1e-9 {
                prop_assert_eq!(a.signum(), if v > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn serde_round_trip(a in quad()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<QuadNum>(&s).unwrap(), a);
        }
    }
}
