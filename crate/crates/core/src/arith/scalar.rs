//! Exact scalars: unbounded rationals or residues modulo a prime.

use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, Integer, One, Signed, ToPrimitive, Zero};

use super::ArithError;

/// The coefficient field of a computation.
///
/// `Rational` is characteristic zero; `Prime(p)` is the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// Largest modulus accepted by [`Field::prime`]. Residue products are
/// computed in `u128`, so anything below `2^63` is safe.
pub const MAX_MODULUS: u64 = 1 << 62;

impl Field {
    /// The prime field `F_p`, after checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self, ArithError> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` maps to the rationals, anything else must be a prime.
    pub fn from_characteristic(p: u64) -> Result<Self, ArithError> {
        if p == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => {
                let r = (v as i128).rem_euclid(*p as i128) as u64;
                Scalar::Residue { value: r, modulus: *p }
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Residue { value: r.to_u64().expect("reduced residue fits"), modulus: *p }
            }
        }
    }

    pub fn from_biguint(&self, v: &BigUint) -> Scalar {
        self.from_bigint(&BigInt::from_biguint(Sign::Plus, v.clone()))
    }

    /// Map a rational into this field. Fails when the field has
    /// characteristic `p` and `p` divides the reduced denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, ArithError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                if q.denom().mod_floor(&pb).is_zero() {
                    return Err(ArithError::DenominatorDivisibleByP { value: q.to_string(), p: *p });
                }
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.try_div(&den)
            }
        }
    }

    /// Parse the textual scalar form used by the file formats: `"a/b"` or
    /// `"a"` over the rationals, a decimal in `[0, p)` over `F_p`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ArithError> {
        let text = text.trim();
        let bad = || ArithError::Parse(text.to_string());
        match self {
            Field::Rational => {
                let q = if let Some((a, b)) = text.split_once('/') {
                    let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
                    let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
                    if b.is_zero() {
                        return Err(ArithError::DivisionByZero);
                    }
                    BigRational::new(a, b)
                } else {
                    BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)
                };
                Ok(Scalar::Rational(q))
            }
            Field::Prime(p) => {
                if text.starts_with('+') || text.starts_with('-') {
                    return Err(bad());
                }
                let v = u64::from_str(text).map_err(|_| bad())?;
                if v >= *p {
                    return Err(ArithError::ResidueOutOfRange { value: v, p: *p });
                }
                Ok(Scalar::Residue { value: v, modulus: *p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` invariant); residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), ArithError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch { left: self.field(), right: other.field() })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let s = (*a as u128 + *b as u128) % *modulus as u128;
                Scalar::Residue { value: s as u64, modulus: *modulus }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.same_field(other)?;
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let s = (*a as u128 * *b as u128) % *modulus as u128;
                Scalar::Residue { value: s as u64, modulus: *modulus }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.same_field(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                let inv = mod_inverse(*value, *modulus);
                Scalar::Residue { value: inv, modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
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
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "modulus must be prime");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic when the two sides live in different fields. Code
// paths fed by untrusted input validate fields first or use `try_*`.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

/// Helper for callers that build rationals from machine integers.
pub fn rational(numer: i64, denom: i64) -> Scalar {
    Scalar::Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

/// True if `q` has a reduced denominator divisible by `p`.
pub fn denominator_divisible(q: &BigRational, p: u64) -> bool {
    q.denom().abs().mod_floor(&BigInt::from(p)).is_zero()
}
