//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.
//!
//! Each component is stored as a machine-width fraction while it fits and is
//! promoted to an arbitrary-precision fraction on overflow, so arithmetic never
//! rounds and never wraps. The representation is canonical: a value that fits
//! in the small form is always stored in it, which keeps derived equality and
//! hashing sound.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    const ZERO: Rat = Rat::Small(Ratio::new_raw(0, 1));

    fn small(r: Ratio<i64>) -> Rat {
        // i64::MIN has no negation; keep it out of the small form.
        if *r.numer() == i64::MIN || *r.denom() == i64::MIN {
            Rat::Big(BigRational::new_raw(
                BigInt::from(*r.numer()),
                BigInt::from(*r.denom()),
            ))
        } else {
            Rat::Small(r)
        }
    }

    fn from_big(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rat::Small(Ratio::new_raw(n, d))
            }
            _ => Rat::Big(b),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rat::Big(b) => b.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_one(),
            Rat::Big(b) => b.is_one(),
        }
    }

    fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(b) => b.is_negative(),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(r) => Rat::Small(-r),
            Rat::Big(b) => Rat::from_big(-b),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(r) = a.checked_add(b) {
                return Rat::small(r);
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }

    fn sub(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(r) = a.checked_sub(b) {
                return Rat::small(r);
            }
        }
        Rat::from_big(self.to_big() - o.to_big())
    }

    fn mul(&self, o: &Rat) -> Rat {
        if self.is_zero() || o.is_zero() {
            return Rat::ZERO;
        }
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(r) = a.checked_mul(b) {
                return Rat::small(r);
            }
        }
        Rat::from_big(self.to_big() * o.to_big())
    }

    fn div(&self, o: &Rat) -> Rat {
        assert!(!o.is_zero(), "division by zero");
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if let Some(r) = a.checked_div(b) {
                return Rat::small(r);
            }
        }
        Rat::from_big(self.to_big() / o.to_big())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

/// An element of ℚ(i), the field all structure constants live in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            re: Rat::ZERO,
            im: Rat::ZERO,
        }
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rat::ZERO,
            im: Rat::Small(Ratio::from_integer(1)),
        }
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar {
            re: Rat::small(Ratio::new(num, den)),
            im: Rat::ZERO,
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as an integer, if it is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        let re = self.re.to_big();
        (self.im.is_zero() && re.is_integer()).then(|| re.to_integer())
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar {
                re: Rat::small(Ratio::one()).div(&self.re),
                im: Rat::ZERO,
            });
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Some(Scalar {
            re: self.re.div(&norm),
            im: self.im.neg().div(&norm),
        })
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar {
            re: Rat::small(Ratio::from_integer(v)),
            im: Rat::ZERO,
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar {
            re: Rat::from_big(v),
            im: Rat::ZERO,
        }
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from(BigRational::from_integer(v))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: self.re.mul(&o.re),
                im: Rat::ZERO,
            };
        }
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Scalar { re, im }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: self.re.div(&o.re),
                im: Rat::ZERO,
            };
        }
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

/// Formats as `p`, `p/q`, `r/s i`, or `p/q+r/s i` (the file grammar).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, self.im.neg())
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let digits_ok = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num) || !digits_ok(den) || den.starts_with('-') {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `i`, `-i`, `q i`, `p/q i`, and `a+b i` / `a-b i`
    /// where `a`, `b` are `p` or `p/q`. Whitespace around parts is ignored.
    fn from_str(input: &str) -> Result<Self, Error> {
        let bad = || Error::ScalarParse(input.to_string());
        let s: String = input.split_whitespace().collect::<Vec<_>>().join(" ");
        let s = s.trim();
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(s).map(Scalar::from).ok_or_else(bad);
        };
        // Split off the real part at the last top-level sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .filter(|&idx| !body[..idx].trim_end().ends_with('/'))
            .last();
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im_part = im_part.trim();
        let im = match im_part {
            "" | "+" => Some(BigRational::one()),
            "-" => Some(-BigRational::one()),
            t => parse_rational(&t.replace(' ', "")),
        }
        .ok_or_else(bad)?;
        let re = parse_rational(re_part).ok_or_else(bad)?;
        Ok(Scalar::gaussian(re, im))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for (input, shown) in [
            ("3", "3"),
            ("-4/6", "-2/3"),
            ("1/2+3/4 i", "1/2+3/4 i"),
            ("1/2 - 3/4 i", "1/2-3/4 i"),
            ("i", "1 i"),
            ("-i", "-1 i"),
            ("2/3 i", "2/3 i"),
            ("-1/3+i", "-1/3+1 i"),
            ("0/5", "0"),
        ] {
            assert_eq!(s(input).to_string(), shown, "input {input}");
        }
        for bad in ["", "1/0", "abc", "1//2", "1/2+", "2 j", "1/-2"] {
            assert!(bad.parse::<Scalar>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = s("1+2 i");
        let b = s("3-1 i");
        assert_eq!(&a * &b, s("5+5 i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from(-1));
        assert_eq!(a.inv().unwrap(), s("1/5-2/5 i"));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn overflow_promotes_instead_of_wrapping() {
        let big = Scalar::from(i64::MAX);
        let sq = &big * &big;
        let back = &sq / &big;
        assert_eq!(back, big);
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        // Demotes back to the small form once it fits again.
        assert_eq!(&(&sq - &sq) + &Scalar::one(), Scalar::one());
        let m = &Scalar::from(i64::MIN + 1) - &Scalar::one();
        assert_eq!(-(-m.clone()), m);
    }

    fn arb_rat() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            Scalar::gaussian(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn display_parse_round_trip(a in arb_rat()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn components_stay_canonical(a in arb_rat(), b in arb_rat()) {
            let p = &a * &b;
            let re = p.re();
            prop_assert!(re.denom() > &BigInt::zero());
            prop_assert_eq!(num_integer::Integer::gcd(re.numer(), re.denom()).abs() , BigInt::one());
        }
    }
}
