use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p: p as u32 })
    }

    pub const fn binary() -> Field {
        Field { p: 2 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
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

    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `(-1)^exponent` as a field element.
    pub fn sign(self, exponent: i64) -> u32 {
        if exponent.rem_euclid(2) == 0 {
            1 % self.p
        } else {
            self.p - 1
        }
    }

    pub fn scalar(self, value: i64) -> Scalar {
        Scalar {
            value: self.reduce(value),
            field: self,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// An element of F_p carrying its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: Field,
}

impl Scalar {
    pub fn new(field: Field, value: u32) -> Scalar {
        Scalar {
            value: value % field.p,
            field,
        }
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar { value: 0, field }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::new(field, 1)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Field {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Scalar> {
        self.field.inv(self.value).map(|value| Scalar {
            value,
            field: self.field,
        })
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert_eq!(Field::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(1), Err(Error::NotPrime(1)));
        assert!(Field::new(7).is_ok());
    }

    #[test]
    fn identities_and_inverses() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = Field::new(p).unwrap();
            for a in f.elements() {
                let x = Scalar::new(f, a);
                assert_eq!(x + Scalar::zero(f), x);
                assert_eq!(x * Scalar::one(f), x);
                assert_eq!(x + (-x), Scalar::zero(f));
                if a != 0 {
                    assert_eq!(x * x.inv().unwrap(), Scalar::one(f));
                }
            }
        }
    }

    #[test]
    fn signs() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.sign(0), 1);
        assert_eq!(f3.sign(-1), 2);
        assert_eq!(Field::binary().sign(5), 1);
        assert_eq!(f3.reduce(-4), 2);
    }
}
