use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// An exact, computable field: either the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kind: FieldKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl Field {
    pub const fn rationals() -> Field {
        Field {
            kind: FieldKind::Rationals,
        }
    }

    /// The prime field of order `p`, refusing composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::usage(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        Ok(Field {
            kind: FieldKind::Prime(p),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The characteristic, with 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::Rationals => Scalar(Repr::Rational(BigRational::from_integer(v.into()))),
            FieldKind::Prime(p) => Scalar(Repr::Residue {
                value: v.rem_euclid(p as i64) as u64,
                p,
            }),
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self.kind {
            FieldKind::Rationals => {
                if den.is_zero() {
                    return Err(Error::usage("zero denominator"));
                }
                Ok(Scalar(Repr::Rational(BigRational::new(
                    num.clone(),
                    den.clone(),
                ))))
            }
            FieldKind::Prime(p) => {
                let m = BigInt::from(p);
                let n = num.mod_floor(&m).to_u64().unwrap_or(0);
                let d = den.mod_floor(&m).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::usage(format!("denominator vanishes mod {p}")));
                }
                let arith = ModP { p };
                Ok(Scalar(Repr::Residue {
                    value: arith.mul_raw(n, arith.inv_raw(d)),
                    p,
                }))
            }
        }
    }

    /// A uniform residue over `F_p`; a small integer in `[-3, 3]` over the rationals.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind {
            FieldKind::Rationals => self.from_i64(rng.random_range(-3..=3)),
            FieldKind::Prime(p) => Scalar(Repr::Residue {
                value: rng.random_range(0..p),
                p,
            }),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.kind {
            FieldKind::Rationals => {
                let v: i64 = rng.random_range(1..=3);
                self.from_i64(if rng.random_bool(0.5) { v } else { -v })
            }
            FieldKind::Prime(p) => Scalar(Repr::Residue {
                value: rng.random_range(1..p),
                p,
            }),
        }
    }

    /// Parse a JSON entry: an integer, or a string `"a"` / `"a/b"`.
    pub fn parse_json(&self, v: &Value) -> Result<Scalar> {
        match v {
            Value::Number(num) => {
                if let Some(i) = num.as_i64() {
                    Ok(self.from_i64(i))
                } else if let Some(u) = num.as_u64() {
                    self.from_ratio(&BigInt::from(u), &BigInt::one())
                } else {
                    Err(Error::usage(format!("non-integer number {num}")))
                }
            }
            Value::String(s) => self.parse_str(s),
            other => Err(Error::usage(format!("expected a field entry, got {other}"))),
        }
    }

    pub fn parse_str(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::usage(format!("cannot parse {s:?} as a field entry"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A single field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(pub(crate) Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Residue { value: u64, p: u64 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Residue { p, .. } => Field {
                kind: FieldKind::Prime(*p),
            },
            Repr::Rational(_) => Field::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 0,
            Repr::Rational(q) => q.is_zero(),
        }
    }

    /// Residues serialize as integers, rationals as `"a/b"` strings.
    pub fn to_json(&self) -> Value {
        match &self.0 {
            Repr::Residue { value, .. } => Value::from(*value),
            Repr::Rational(q) => Value::String(format!("{}/{}", q.numer(), q.denom())),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: ModP { p: *p }.neg_raw(*value),
                p: *p,
            }),
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::usage("inverse of zero"));
        }
        Ok(match &self.0 {
            Repr::Residue { value, p } => Scalar(Repr::Residue {
                value: ModP { p: *p }.inv_raw(*value),
                p: *p,
            }),
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
        })
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, x, y| a.add(x, y), |x, y| x + y)
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, x, y| a.sub(x, y), |x, y| x - y)
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, x, y| a.mul(x, y), |x, y| x * y)
    }

    fn binary(
        &self,
        rhs: &Scalar,
        fp: impl Fn(&ModP, &u64, &u64) -> u64,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, p: p2 }) if p == p2 => {
                Scalar(Repr::Residue {
                    value: fp(&ModP { p: *p }, a, b),
                    p: *p,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(q(a, b))),
            _ => panic!("scalar arithmetic across different fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Residue { value, .. } => write!(f, "{value}"),
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Field arithmetic on bare element values, so dense kernels avoid per-entry tags.
pub(crate) trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ModP {
    pub p: u64,
}

impl ModP {
    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Fermat inverse; `a` must be a nonzero residue.
    pub(crate) fn inv_raw(&self, a: u64) -> u64 {
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl Arith for ModP {
    type E = u64;
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_raw(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.neg_raw(*a)
    }
    fn inv(&self, a: &u64) -> u64 {
        self.inv_raw(*a)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// Rationals are always stored reduced with a positive denominator.
#[cfg(test)]
pub(crate) fn rational_is_normalized(q: &BigRational) -> bool {
    use num_traits::Signed;
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
