//! Arithmetic in a prime field `F_p` with a runtime modulus.
//!
//! Elements are plain residues; the modulus lives in a [`PrimeField`] context
//! that is passed alongside them. The modulus is capped below `2^31` so that
//! products of two residues never overflow a `u64`.

use std::fmt;

use thiserror::Error;

/// Default modulus for all experiments.
pub const DEFAULT_PRIME: u64 = 32003;
/// Second modulus used by the agreement protocol.
pub const SECOND_PRIME: u64 = 46337;

const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
}

/// A residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p <= 2 || p >= MAX_MODULUS || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// Reduces an arbitrary residue representative.
    pub fn elem(&self, v: u64) -> FieldElem {
        FieldElem(v % self.p)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.p as i64;
        FieldElem(v.rem_euclid(p) as u64)
    }

    /// Symmetric lift into `(-p/2, p/2]`, handy for printing small integers.
    pub fn lift_signed(&self, a: FieldElem) -> i64 {
        let v = a.0 as i64;
        if v > (self.p as i64) / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a.0 + b.0;
        FieldElem(if s >= self.p { s - self.p } else { s })
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.0 == 0 {
            a
        } else {
            FieldElem(self.p - a.0)
        }
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 * b.0 % self.p)
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(!a.is_zero(), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: FieldElem, e: i64) -> FieldElem {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.inv(self.pow(a, e.unsigned_abs()))
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }
}
