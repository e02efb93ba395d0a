use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modular::{self, MAX_MODULUS};
use crate::error::{Error, Result};

/// Coefficient field of a computation: the rationals or a prime field.
///
/// The modulus of a prime field lives here, once per context; residues are
/// plain `u64`s in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// A coefficient in some [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Field {
    /// The prime field of order `p`. Rejects composites and moduli of 2^32 or more.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_MODULUS {
            return Err(Error::Domain(format!("modulus {p} exceeds 2^32")));
        }
        if !modular::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => Scalar::Residue(modular::reduce_i64(v, p)),
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => Scalar::Residue(reduce_bigint(v, p)),
        }
    }

    /// Image of a rational number; fails in characteristic p when p divides
    /// the denominator.
    pub fn from_rational(self, v: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(v.clone())),
            Field::Prime(p) => {
                let den = reduce_bigint(v.denom(), p);
                if den == 0 {
                    return Err(Error::Domain(format!("denominator of {v} vanishes mod {p}")));
                }
                let num = reduce_bigint(v.numer(), p);
                Ok(Scalar::Residue(modular::mul_mod(num, modular::inv_mod(den, p), p)))
            }
        }
    }

    /// Fails if `s` does not belong to this field.
    pub fn check(self, s: &Scalar) -> Result<()> {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => Ok(()),
            (Field::Prime(p), Scalar::Residue(v)) if *v < p => Ok(()),
            _ => Err(Error::Context(format!("scalar {s} does not belong to {self}"))),
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(modular::add_mod(*x, *y, p))
            }
            _ => mixed(self, a, b),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(modular::sub_mod(*x, *y, p))
            }
            _ => mixed(self, a, b),
        }
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(modular::mul_mod(*x, *y, p))
            }
            _ => mixed(self, a, b),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Prime(p), Scalar::Residue(x)) => Scalar::Residue(modular::sub_mod(0, *x, p)),
            _ => mixed(self, a, a),
        }
    }

    pub fn inv(self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (Field::Prime(p), Scalar::Residue(x)) => Scalar::Residue(modular::inv_mod(*x, p)),
            _ => mixed(self, a, a),
        })
    }

    pub fn pow(self, a: &Scalar, mut exp: u32) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

#[cold]
fn mixed(field: Field, a: &Scalar, b: &Scalar) -> Scalar {
    panic!("scalars {a} and {b} do not belong to {field}")
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Residue(v) => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(x) => Some(x),
            Scalar::Residue(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue(v) => Some(*v),
        }
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(x) if x.is_integer() => Some(x.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Residue(v) => Some(BigInt::from(*v)),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Residue(v) => write!(f, "{v}"),
        }
    }
}

pub fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Magnitude ordering helper for pivot selection over the integers.
pub(crate) fn abs_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
