use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coordinate ring of a three-dimensional Heisenberg group.
///
/// Real coordinates use the symmetric law with central term `½(ab′ − ba′)`.
/// Integer and modular coordinates use the polarized law with central term
/// `ab′`, which keeps everything inside the ring; the two presentations are
/// related by `c ↦ c + ½ab`.
pub trait HeisenbergRing: Copy + PartialEq + fmt::Debug {
    /// Fails when the two values live in different rings (e.g. different
    /// moduli).
    fn same_ring(&self, _other: &Self) -> Result<()> {
        Ok(())
    }
    fn plus(self, other: Self) -> Self;
    fn minus(self, other: Self) -> Self;
    fn times(self, other: Self) -> Self;
    fn negated(self) -> Self;
    fn zero_like(self) -> Self;
    fn one_like(self) -> Self;

    /// Central increment when `(·, a, b)` is composed with `(·, a2, b2)`.
    fn cocycle(a: Self, b: Self, a2: Self, b2: Self) -> Self {
        let _ = (b, a2);
        a.times(b2)
    }

    /// Central coordinate of the inverse of `(c, a, b)`.
    fn inverse_central(c: Self, a: Self, b: Self) -> Self {
        a.times(b).minus(c)
    }
}

/// Rings whose group law is the polarized one, so that elements embed as
/// `[[1, a, c], [0, 1, b], [0, 0, 1]]` with entries in the ring.
pub trait PolarizedRing: HeisenbergRing {}

impl HeisenbergRing for f64 {
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self, other: Self) -> Self {
        self - other
    }
    fn times(self, other: Self) -> Self {
        self * other
    }
    fn negated(self) -> Self {
        -self
    }
    fn zero_like(self) -> Self {
        0.0
    }
    fn one_like(self) -> Self {
        1.0
    }
    fn cocycle(a: Self, b: Self, a2: Self, b2: Self) -> Self {
        0.5 * (a * b2 - b * a2)
    }
    fn inverse_central(c: Self, _a: Self, _b: Self) -> Self {
        -c
    }
}

impl HeisenbergRing for i64 {
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self, other: Self) -> Self {
        self - other
    }
    fn times(self, other: Self) -> Self {
        self * other
    }
    fn negated(self) -> Self {
        -self
    }
    fn zero_like(self) -> Self {
        0
    }
    fn one_like(self) -> Self {
        1
    }
}

impl PolarizedRing for i64 {}

/// Element of ℤ/pℤ for an odd prime `p`, stored as its representative in
/// `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl ZMod {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus < 3 || !is_prime(modulus) {
            return Err(Error::InvalidParameter(format!(
                "modulus must be an odd prime, got {modulus}"
            )));
        }
        if modulus > u32::MAX as u64 {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus} too large"
            )));
        }
        let value = value.rem_euclid(modulus as i64) as u64;
        Ok(Self { value, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn with(self, value: u64) -> Self {
        Self {
            value: value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for ZMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl HeisenbergRing for ZMod {
    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "cannot combine elements mod {} and mod {}",
                self.modulus, other.modulus
            )))
        }
    }
    fn plus(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value + other.value)
    }
    fn minus(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value + self.modulus - other.value)
    }
    fn times(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        self.with(self.value * other.value)
    }
    fn negated(self) -> Self {
        self.with(self.modulus - self.value)
    }
    fn zero_like(self) -> Self {
        self.with(0)
    }
    fn one_like(self) -> Self {
        self.with(1)
    }
}

impl PolarizedRing for ZMod {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
