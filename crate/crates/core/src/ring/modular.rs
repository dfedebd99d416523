use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{Ring, RingDescriptor};
use crate::error::{EneError, Result};

/// Integers modulo `modulus`; composite moduli (with zero divisors) are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularRing {
    modulus: u64,
}

impl ModularRing {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(EneError::invalid("modular ring", "modulus must be at least 2"));
        }
        Ok(ModularRing { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }

    fn inv_u64(&self, a: u64) -> Option<u64> {
        let ext = (a as i128).extended_gcd(&(self.modulus as i128));
        (ext.gcd == 1).then(|| ext.x.rem_euclid(self.modulus as i128) as u64)
    }
}

impl Ring for ModularRing {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Modular {
            modulus: self.modulus,
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn is_q_algebra(&self) -> bool {
        false
    }
    fn try_inv(&self, a: &u64) -> Option<u64> {
        self.inv_u64(*a)
    }
    fn is_zero_divisor(&self, a: &u64) -> bool {
        a.gcd(&self.modulus) != 1
    }
    fn has_common_annihilator(&self, elems: &[u64]) -> bool {
        elems.iter().fold(self.modulus, |g, e| g.gcd(e)) != 1
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.reduce(q.numer());
        let den = self.inv_u64(self.reduce(q.denom()))?;
        Some(self.mul(&num, &den))
    }
    fn int_scale(&self, n: &BigInt, a: &u64) -> u64 {
        self.mul(&self.reduce(n), a)
    }
    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.modulus)
    }
    fn format_coeff(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let bad = || EneError::parse(0, format!("bad modular element '{s}'"));
        let (k, m) = match s.split_once("mod") {
            Some((k, m)) => (k.trim(), Some(m.trim())),
            None => (s.trim(), None),
        };
        if let Some(m) = m {
            let m: u64 = m.parse().map_err(|_| bad())?;
            if m != self.modulus {
                return Err(EneError::RingMismatch {
                    left: format!("Zmod:{m}"),
                    right: self.descriptor().to_string(),
                });
            }
        }
        let k: BigInt = k.parse().map_err(|_| bad())?;
        Ok(self.reduce(&k))
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}
