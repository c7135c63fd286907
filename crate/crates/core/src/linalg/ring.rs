//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Every ring element is stored as a [`Scalar`] (an arbitrary precision
//! rational). Integer matrices only ever hold integral values and prime
//! field matrices hold representatives in `0..p`; the [`Ring`] value decides
//! how arithmetic is reduced and which elements are units.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(&self, v: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(v))
    }

    /// Checks that `x` is an element of this ring and returns its canonical
    /// representative.
    pub fn element(&self, x: Scalar) -> Result<Scalar> {
        match self {
            Ring::Integers if !x.is_integer() => Err(self.invalid(&x)),
            Ring::PrimeField(p) if (x.denom() % BigInt::from(*p)).is_zero() => Err(self.invalid(&x)),
            _ => Ok(self.reduce(x)),
        }
    }

    fn invalid(&self, x: &Scalar) -> Error {
        Error::InvalidElement { ring: self.to_string(), value: x.to_string() }
    }

    pub(crate) fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                if x.is_integer() {
                    Scalar::from_integer(x.numer().mod_floor(&p))
                } else {
                    let inv = mod_inverse(&x.denom().mod_floor(&p), &p);
                    Scalar::from_integer((x.numer() * inv).mod_floor(&p))
                }
            }
            _ => x,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            Ring::Integers => a.numer().magnitude().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            Ring::Integers => Some(a.clone()),
            Ring::Rationals => Some(a.recip()),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                Some(Scalar::from_integer(mod_inverse(a.numer(), &p)))
            }
        }
    }

    /// Euclidean division: `a = q*b + r` with `norm(r) < norm(b)`.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        assert!(!b.is_zero(), "division by zero");
        match self {
            Ring::Integers => {
                let (q, r) = a.numer().div_mod_floor(b.numer());
                (Scalar::from_integer(q), Scalar::from_integer(r))
            }
            _ => (self.mul(a, &self.inv(b).expect("nonzero field element")), Scalar::zero()),
        }
    }

    pub fn divides(&self, a: &Scalar, b: &Scalar) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        match self {
            Ring::Integers => (b.numer() % a.numer()).is_zero(),
            _ => true,
        }
    }

    /// Exact quotient `b / a`, assuming `a` divides `b`.
    pub fn exact_div(&self, b: &Scalar, a: &Scalar) -> Scalar {
        match self {
            Ring::Integers => Scalar::from_integer(b.numer() / a.numer()),
            _ => self.mul(b, &self.inv(a).expect("nonzero field element")),
        }
    }

    /// Compares Euclidean norms: absolute value over the integers, zero or
    /// one over a field.
    pub fn cmp_norm(&self, a: &Scalar, b: &Scalar) -> Ordering {
        match self {
            Ring::Integers => a.numer().magnitude().cmp(b.numer().magnitude()),
            _ => (!a.is_zero()).cmp(&!b.is_zero()),
        }
    }

    /// The unit `u` such that `u * a` is the canonical associate of `a`
    /// (positive over the integers, one over a field).
    pub fn normalizing_unit(&self, a: &Scalar) -> Scalar {
        if a.is_zero() {
            return Scalar::one();
        }
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.inv(a).expect("nonzero field element"),
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::InvalidElement { ring: self.to_string(), value: s.to_string() };
        let s = s.trim();
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.element(value).map_err(|_| bad())
    }

    pub fn format_element(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Small integer view of an element, if it fits.
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        if a.is_integer() {
            a.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "integers"),
            Ring::Rationals => write!(f, "rationals"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one(), "element not invertible");
    e.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_requires_prime() {
        assert!(Ring::prime_field(5).is_ok());
        assert_eq!(Ring::prime_field(6), Err(Error::NotPrime(6)));
        assert_eq!(Ring::prime_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn field_arithmetic_reduces() {
        let f5 = Ring::PrimeField(5);
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!(f5.add(&a, &b), f5.from_i64(2));
        assert_eq!(f5.sub(&a, &b), f5.from_i64(4));
        assert_eq!(f5.mul(&a, &b), f5.from_i64(2));
        assert_eq!(f5.inv(&a), Some(f5.from_i64(2)));
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
        assert_eq!(f5.parse_element("1/2").unwrap(), f5.from_i64(3));
        assert!(f5.parse_element("1/5").is_err());
    }

    #[test]
    fn integer_division_and_units() {
        let z = Ring::Integers;
        let (q, r) = z.div_rem(&z.from_i64(-7), &z.from_i64(3));
        assert_eq!((q, r), (z.from_i64(-3), z.from_i64(2)));
        assert!(z.is_unit(&z.from_i64(-1)));
        assert!(!z.is_unit(&z.from_i64(2)));
        assert!(z.parse_element("3/2").is_err());
        assert_eq!(z.normalizing_unit(&z.from_i64(-4)), z.from_i64(-1));
    }

    #[test]
    fn rationals_parse_and_format() {
        let q = Ring::Rationals;
        let x = q.parse_element("-6/4").unwrap();
        assert_eq!(q.format_element(&x), "-3/2");
        assert_eq!(q.inv(&x), Some(q.parse_element("-2/3").unwrap()));
    }
}
