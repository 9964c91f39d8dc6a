//! Coefficient fields: exact rationals and prime fields `Z/p`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default modulus for prime-field jobs.
pub const DEFAULT_PRIME: u32 = 32003;

/// Runtime descriptor of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    /// A prime field, rejecting non-primes and `p <= 2`.
    pub fn prime(p: u32) -> Result<Self, Error> {
        if p <= 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not an odd prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_rational(self) -> bool {
        matches!(self, FieldSpec::Rational)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "zp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = s.strip_prefix("zp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {s:?}")))?;
            return FieldSpec::prime(p);
        }
        if s.eq_ignore_ascii_case("zp") {
            return Ok(FieldSpec::Prime(DEFAULT_PRIME));
        }
        Err(Error::InvalidField(format!("unknown field {s:?}, expected q or zp:<prime>")))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if (p as u64).is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Arithmetic required of a coefficient type.
///
/// Elements of `Z/p` carry their modulus, so constructors take the runtime
/// [`FieldSpec`].
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn supports(spec: FieldSpec) -> bool;
    fn zero(spec: FieldSpec) -> Self;
    fn one(spec: FieldSpec) -> Self;
    fn from_i64(v: i64, spec: FieldSpec) -> Self;
    /// `num / den` mapped into the field; `None` when `den` vanishes there.
    fn from_ratio(num: &BigInt, den: &BigInt, spec: FieldSpec) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    /// Sign used when printing: true if the canonical printed form is negative.
    fn is_negative(&self) -> bool;
}

impl Field for BigRational {
    fn supports(spec: FieldSpec) -> bool {
        spec.is_rational()
    }

    fn zero(_: FieldSpec) -> Self {
        Zero::zero()
    }

    fn one(_: FieldSpec) -> Self {
        One::one()
    }

    fn from_i64(v: i64, _: FieldSpec) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: &BigInt, den: &BigInt, _: FieldSpec) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Element of `Z/p` for an odd prime `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Zp {
    v: u32,
    p: u32,
}

impl Zp {
    pub fn new(v: i64, p: u32) -> Self {
        Zp { v: v.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn symmetric(self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    fn modulus_of(spec: FieldSpec) -> u32 {
        match spec {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rational => panic!("Zp used with rational field spec"),
        }
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Field for Zp {
    fn supports(spec: FieldSpec) -> bool {
        matches!(spec, FieldSpec::Prime(p) if p < (1 << 31))
    }

    fn zero(spec: FieldSpec) -> Self {
        Zp { v: 0, p: Self::modulus_of(spec) }
    }

    fn one(spec: FieldSpec) -> Self {
        Zp { v: 1, p: Self::modulus_of(spec) }
    }

    fn from_i64(v: i64, spec: FieldSpec) -> Self {
        Zp::new(v, Self::modulus_of(spec))
    }

    fn from_ratio(num: &BigInt, den: &BigInt, spec: FieldSpec) -> Option<Self> {
        let p = Self::modulus_of(spec);
        let pb = BigInt::from(p);
        let n = num.mod_floor(&pb).to_i64().expect("reduced residue fits");
        let d = den.mod_floor(&pb).to_i64().expect("reduced residue fits");
        if d == 0 {
            return None;
        }
        Some(Zp::new(n, p).mul(&Zp::new(d, p).inv()))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.v == 1
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.v + other.v;
        Zp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }

    #[inline]
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let v = if self.v >= other.v { self.v - other.v } else { self.v + self.p - other.v };
        Zp { v, p: self.p }
    }

    #[inline]
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Zp { v: ((self.v as u64 * other.v as u64) % self.p as u64) as u32, p: self.p }
    }

    #[inline]
    fn neg(&self) -> Self {
        Zp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero");
        // extended Euclid on (v, p)
        let (mut r0, mut r1) = (self.p as i64, self.v as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Zp::new(t0, self.p)
    }

    #[inline]
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = (a.v as u64 * b.v as u64) % self.p as u64;
        let prod = prod as u32;
        self.v = if self.v >= prod { self.v - prod } else { self.v + self.p - prod };
    }

    fn is_negative(&self) -> bool {
        self.symmetric() < 0
    }
}
