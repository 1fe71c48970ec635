use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::is_prime;
use crate::error::{Error, Result};

/// Largest supported prime characteristic (exclusive). Residue products
/// then fit in 64 bits.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// The field a matrix lives over, identified by its characteristic.
///
/// `0` is the rationals; any prime `p < 2^31` is GF(p). Ranks of 0/1
/// inclusion matrices depend only on the characteristic, so prime fields
/// stand in for every finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };
    pub const GF2: FieldSpec = FieldSpec { characteristic: 2 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidCharacteristic(characteristic));
        }
        if characteristic >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(characteristic));
        }
        Ok(FieldSpec {
            characteristic: characteristic as u32,
        })
    }

    pub fn characteristic(self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(self) -> Scalar {
        if self.is_rational() {
            Scalar::Rational(BigRational::zero())
        } else {
            Scalar::Residue(0)
        }
    }

    /// Image of an integer in this field.
    pub fn from_i64(self, v: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            p => Scalar::Residue(v.rem_euclid(i64::from(p)) as u32),
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(v.clone())),
            p => Scalar::Residue(reduce_bigint(v, p)),
        }
    }

    pub(crate) fn check_same(self, other: FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.characteristic,
                right: other.characteristic,
            })
        }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        u64::from(f.characteristic)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => f.write_str("Q"),
            p => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    v.mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue below p")
}

/// A single field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Residue(u32),
    Rational(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue(r) => *r == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Residue(r) => *r == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    /// The value as an integer, when it is one (always for residues).
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Residue(r) => Some(BigInt::from(*r)),
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(r) => write!(f, "{r}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Barrett reduction modulo a fixed prime `p < 2^31`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Modulus {
    p: u64,
    // floor(2^64 / p)
    factor: u64,
}

impl Modulus {
    pub(crate) fn new(p: u32) -> Self {
        debug_assert!(p >= 2);
        let p = u64::from(p);
        Modulus {
            p,
            factor: ((1u128 << 64) / u128::from(p)) as u64,
        }
    }

    #[inline(always)]
    pub(crate) fn reduce(&self, x: u64) -> u32 {
        let q = ((u128::from(x) * u128::from(self.factor)) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r as u32
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(u64::from(a) * u64::from(b))
    }

    #[inline(always)]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p as u32 - a
        }
    }

    /// `a - f * b`.
    #[inline(always)]
    pub(crate) fn sub_mul(&self, a: u32, f: u32, b: u32) -> u32 {
        // a + (p - f) * b < 2^31 + 2^62
        self.reduce(u64::from(a) + u64::from(self.neg(f)) * u64::from(b))
    }

    /// Inverse of a nonzero residue by the extended Euclidean algorithm.
    pub(crate) fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let (mut r0, mut r1) = (self.p as i64, i64::from(a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }
}

/// Rational to residue, for a prime that does not divide the denominator.
pub(crate) fn rational_mod(q: &BigRational, p: u32) -> Option<u32> {
    let den = reduce_bigint(q.denom(), p);
    if den == 0 {
        return None;
    }
    let m = Modulus::new(p);
    let num = reduce_bigint(q.numer(), p);
    Some(m.mul(num, m.inv(den)))
}
