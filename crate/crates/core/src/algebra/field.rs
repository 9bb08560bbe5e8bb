//! Prime field arithmetic on canonical representatives in `[0, p)`.

use crate::error::{Error, Result};

/// Default characteristic.
pub const DEFAULT_CHAR: u32 = 32003;

/// The prime field F_p. Elements are plain `u32` values in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_CHAR }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl Field {
    /// Builds F_p, rejecting composite or oversized characteristics.
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("characteristic {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    ///
    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Reduces a non-negative big decimal literal.
    pub fn from_decimal(self, digits: &str) -> u32 {
        digits.bytes().fold(0u32, |acc, b| {
            self.add(self.mul(acc, 10 % self.p), (b - b'0') as u32 % self.p)
        })
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::new(32003).is_ok());
        assert!(Field::new(31991).is_ok());
        assert!(Field::new(2).is_ok());
        assert!(Field::new(1).is_err());
        assert!(Field::new(32001).is_err());
    }

    #[test]
    fn inverses_match_fermat() {
        let f = Field::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.inv(a), f.pow(a, 99));
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn decimal_reduction() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.from_decimal("100"), 2);
        assert_eq!(f.from_decimal("123456789123456789"), (123456789123456789u64 % 7) as u32);
    }
}
