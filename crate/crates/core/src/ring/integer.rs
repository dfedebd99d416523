use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Ring, RingDescriptor};
use crate::error::{EneError, Result};

/// The integers, with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::BigInteger
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn equal(&self, a: &BigInt, b: &BigInt) -> bool {
        a == b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_q_algebra(&self) -> bool {
        false
    }
    fn try_inv(&self, a: &BigInt) -> Option<BigInt> {
        a.abs().is_one().then(|| a.clone())
    }
    fn is_zero_divisor(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.to_integer())
    }
    fn int_scale(&self, n: &BigInt, a: &BigInt) -> BigInt {
        n * a
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| EneError::parse(0, format!("bad integer '{s}'")))
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> BigInt {
        rng.gen_range(-5i64..=5).into()
    }
}
