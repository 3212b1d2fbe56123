//! Exact coefficient fields: arbitrary-precision rationals and prime fields GF(p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Error;

/// Which coefficient field a problem lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rationals, stored as reduced `BigRational`s.
    Rationals,
    /// GF(p) for an explicit prime p.
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => {
                if is_prime_u64(*p) {
                    Ok(())
                } else {
                    Err(Error::NotPrime(*p))
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Fp { val: 1, p: *p },
        }
    }

    pub fn from_integer(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => Scalar::Fp {
                val: mod_bigint(v, *p),
                p: *p,
            },
        }
    }

    /// Map a rational a/b into the field. Over GF(p) this uses the modular
    /// inverse of b and fails when b ≡ 0 (mod p).
    pub fn from_rational(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(p) => {
                let d = mod_bigint(den, *p);
                if d == 0 {
                    return Err(Error::DenominatorDivisibleByModulus(*p));
                }
                let n = mod_bigint(num, *p);
                Ok(Scalar::Fp {
                    val: mul_mod(n, inv_mod(d, *p), *p),
                    p: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF {}", p),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (enforced by `BigRational`); GF(p) values lie in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "scalars from different prime fields");
                Scalar::Fp {
                    val: add_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => {
                assert_eq!(p, q, "scalars from different prime fields");
                Scalar::Fp {
                    val: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { val, p } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp {
                    val: inv_mod(*val, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Numerator and denominator as integers; GF(p) values map to (val, 1).
    pub fn as_rational(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rat(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Fp { val, .. } => (BigInt::from(*val), BigInt::one()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{}", val),
        }
    }
}

fn mod_bigint(v: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("residue fits in u64")
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) works.
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = FieldSpec::Rationals;
        let a = f.from_rational(&BigInt::from(2), &BigInt::from(4)).unwrap();
        let b = f.from_rational(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(a, b);
        let c = f.from_rational(&BigInt::from(1), &BigInt::from(-2)).unwrap();
        assert_eq!(a.add(&c), f.zero());
    }

    #[test]
    fn gf5_arithmetic() {
        let f = FieldSpec::Prime(5);
        let three = f.from_integer(&BigInt::from(3));
        let four = f.from_integer(&BigInt::from(4));
        // 3*4 = 12 = 2 mod 5
        assert_eq!(three.mul(&four), f.from_integer(&BigInt::from(2)));
        // 1/2 = 3 in GF(5)
        let half = f.from_rational(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, three);
    }

    #[test]
    fn gf_denominator_divisible_by_modulus() {
        let f = FieldSpec::Prime(5);
        assert!(f.from_rational(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(32003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(32001));
        assert!(is_prime_u64(2147483647));
    }
}
