//! Commutative rings used as coefficient domains.
//!
//! A ring is a small value (`RationalRing`, `ModularRing { modulus }`, ...)
//! that performs arithmetic on its element type. Elements carry no ring
//! information of their own; whoever holds an element also holds the ring.

mod complex;
mod descriptor;
mod gaussian;
mod integer;
mod modular;
mod multipoly;
mod rational;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{EneError, Result};

pub use complex::ComplexRing;
pub use descriptor::RingDescriptor;
pub use gaussian::{GaussianRational, GaussianRing};
pub use integer::IntegerRing;
pub use modular::ModularRing;
pub use multipoly::{Monomial, MultiPoly, PolyRing};
pub use rational::RationalRing;

/// A commutative ring with unit.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + Send + Sync + 'static;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Ring equality. Exact for every kind except complex floats.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// True iff division by every nonzero integer is exact.
    fn is_q_algebra(&self) -> bool;

    /// Multiplicative inverse, when it exists.
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// True iff `a` is zero or a divisor of zero.
    fn is_zero_divisor(&self, a: &Self::Elem) -> bool;

    /// True iff some nonzero `c` kills every element of `elems`.
    fn has_common_annihilator(&self, elems: &[Self::Elem]) -> bool {
        elems.iter().all(|e| self.is_zero(e))
    }

    /// Image of a rational number, if the ring contains one.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    /// Text encoding of an element.
    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Encoding used for a coefficient inside a larger expression.
    fn format_coeff(&self, a: &Self::Elem) -> String {
        self.format(a)
    }

    /// A small random element, used by the property suites.
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    /// Whether `format` of this element can be printed without parentheses
    /// inside a product.
    fn is_atomic(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    /// Exact zero test for sparsity shortcuts; differs from `is_zero` only
    /// on tolerance-based rings.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    /// `n * a` with repeated-addition semantics, by doubling.
    fn int_scale(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = a.clone();
        let mut k = n.abs();
        while !k.is_zero() {
            if k.bit(0) {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n.is_negative() {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn scale_i64(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.int_scale(&BigInt::from(n), a)
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.scale_i64(n, &self.one())
    }

    /// Exact `b` with `n * b = a`. Only defined on Q-algebras.
    fn int_divide(&self, _a: &Self::Elem, _n: i64) -> Result<Self::Elem> {
        Err(EneError::NotQAlgebra {
            op: "int_divide",
            ring: self.descriptor().to_string(),
        })
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

pub(crate) fn require_q_algebra<R: Ring>(ring: &R, op: &'static str) -> Result<()> {
    if ring.is_q_algebra() {
        Ok(())
    } else {
        Err(EneError::NotQAlgebra {
            op,
            ring: ring.descriptor().to_string(),
        })
    }
}

pub(crate) fn check_same<R: Ring>(a: &R, b: &R) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(EneError::RingMismatch {
            left: a.descriptor().to_string(),
            right: b.descriptor().to_string(),
        })
    }
}

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Parses `p/q`, a plain integer, or a decimal such as `-0.25` into a rational.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = match int.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => t.parse().ok()?,
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let frac_val: BigInt = frac.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let mut r = BigRational::new(frac_val, den);
        if neg {
            r = -r;
        }
        return Some(BigRational::from_integer(int_part) + r);
    }
    Some(BigRational::from_integer(s.parse().ok()?))
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}
