//! Scalar fields for the matrix code.
//!
//! [`Field`] abstracts over the element type so the same elimination and
//! sampling code runs over a prime field, exact rationals, or floats. Types
//! whose constants need runtime data (the modulus of a prime field) get it
//! from [`Field::Context`]; the `num-traits` types use `()`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Context: Clone + fmt::Debug + PartialEq;

    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + fmt::Debug,
{
    type Context = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Pivots smaller than this are treated as zero by the float fields.
pub const FLOAT_ZERO_TOLERANCE: f64 = 1e-9;

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            type Context = ();

            fn zero(_: &()) -> Self {
                <$t as Zero>::zero()
            }

            fn one(_: &()) -> Self {
                <$t as One>::one()
            }

            fn is_zero(&self) -> bool {
                (self.abs() as f64) <= FLOAT_ZERO_TOLERANCE
            }

            fn inv(&self) -> Option<Self> {
                (!Field::is_zero(self)).then(|| self.recip())
            }
        }
    };
}

float_field!(f32);
float_field!(f64);

/// The field `GF(p)` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 1_000_003;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, value: u64) -> Fp {
        Fp {
            v: value % self.p,
            p: self.p,
        }
    }

    pub fn from_i64(&self, value: i64) -> Fp {
        self.element(value.rem_euclid(self.p as i64) as u64)
    }

    /// Uniform element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        self.element(rng.gen_range(0..self.p))
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `GF(p)`; carries its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp {
            v: 1 % self.p,
            p: self.p,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;

    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;

    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: if self.v >= rhs.v {
                self.v - rhs.v
            } else {
                self.v + self.p - rhs.v
            },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;

    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            v: self.v * rhs.v % self.p,
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl Field for Fp {
    type Context = PrimeField;

    fn zero(ctx: &PrimeField) -> Self {
        ctx.element(0)
    }

    fn one(ctx: &PrimeField) -> Self {
        ctx.element(1)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Option<Self> {
        // Fermat
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
}
