use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{parse_rational, Ring, RingDescriptor};
use crate::error::{EneError, Result};

/// The rationals, with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalRing;

impl Ring for RationalRing {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::BigRational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_q_algebra(&self) -> bool {
        true
    }
    fn try_inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero_divisor(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn int_scale(&self, n: &BigInt, a: &BigRational) -> BigRational {
        a * BigRational::from_integer(n.clone())
    }
    fn int_divide(&self, a: &BigRational, n: i64) -> Result<BigRational> {
        if n == 0 {
            return Err(EneError::invalid("int_divide", "division by zero"));
        }
        Ok(a / BigRational::from_integer(n.into()))
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s).ok_or_else(|| EneError::parse(0, format!("bad rational '{s}'")))
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> BigRational {
        BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
    }
}
