//! Exact coefficient fields.
//!
//! Every dimension, rank and determinant in this crate is computed over an
//! exact field: either a prime field `F_p` (fast, the default) or the
//! arbitrary-precision rationals (slow, used to certify the prime-field
//! results). The field is a small context object and elements are plain
//! values, so matrices and polynomials store bare elements and every
//! operation takes the field as an argument.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An exact field of scalars.
///
/// Implementations must be cheap to clone; they are carried around by value
/// next to the data they interpret.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// `a - b * c`, the elimination kernel.
    fn mul_sub(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    /// A small signed integer representing the element, when one exists.
    /// Prime fields lift to the symmetric range `(-p/2, p/2]`; rationals
    /// lift exactly the integers that fit in an `i64`.
    fn lift(&self, a: &Self::Elem) -> Option<i64>;

    /// Rendering fallback for elements with no integer lift.
    fn format(&self, a: &Self::Elem) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotAnOddPrime(u64),
    ModulusTooLarge(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotAnOddPrime(p) => write!(f, "{p} is not an odd prime"),
            FieldError::ModulusTooLarge(p) => {
                write!(f, "modulus {p} exceeds the supported bound 2^31 - 1")
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// The prime field `F_p` for an odd prime `p`. Elements are residues in
/// `[0, p)` stored as `u64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Default modulus, large enough that desk-scale ranks match their
/// characteristic-zero values in practice; discrepancies are caught by the
/// rational-mode reruns.
pub const DEFAULT_PRIME: u64 = 32003;

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    /// Builds `F_p`, rejecting moduli that are even, composite or above
    /// `2^31 - 1` (trial division keeps the primality check simple).
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > (1 << 31) - 1 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(FieldError::NotAnOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn lift(&self, a: &u64) -> Option<i64> {
        if *a > self.p / 2 {
            Some(*a as i64 - self.p as i64)
        } else {
            Some(*a as i64)
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The field of rationals with arbitrary-precision arithmetic; the
/// certification mode.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
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

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn lift(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            a.numer().to_i64()
        } else {
            None
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}
