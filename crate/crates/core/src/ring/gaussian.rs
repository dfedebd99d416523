use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{parse_rational, rational_to_f64, Ring, RingDescriptor};
use crate::error::{EneError, Result};

pub type GaussianRational = Complex<BigRational>;

/// The Gaussian rationals `Q(i)`, exact. Useful as an exact stand-in for
/// complex floats: every finite `f64` is a dyadic rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GaussianRing;

impl GaussianRing {
    /// Exact image of a finite complex float.
    pub fn from_complex(&self, z: Complex64) -> Option<GaussianRational> {
        Some(Complex::new(
            BigRational::from_float(z.re)?,
            BigRational::from_float(z.im)?,
        ))
    }

    pub fn to_complex(&self, a: &GaussianRational) -> Complex64 {
        Complex64::new(rational_to_f64(&a.re), rational_to_f64(&a.im))
    }
}

impl Ring for GaussianRing {
    type Elem = GaussianRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::GaussianRational
    }
    fn zero(&self) -> GaussianRational {
        Complex::zero()
    }
    fn one(&self) -> GaussianRational {
        Complex::one()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        -a.clone()
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn equal(&self, a: &GaussianRational, b: &GaussianRational) -> bool {
        a == b
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn is_q_algebra(&self) -> bool {
        true
    }
    fn try_inv(&self, a: &GaussianRational) -> Option<GaussianRational> {
        (!a.is_zero()).then(|| a.inv())
    }
    fn is_zero_divisor(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Option<GaussianRational> {
        Some(Complex::new(q.clone(), BigRational::zero()))
    }
    fn int_scale(&self, n: &BigInt, a: &GaussianRational) -> GaussianRational {
        a * Complex::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }
    fn int_divide(&self, a: &GaussianRational, n: i64) -> Result<GaussianRational> {
        if n == 0 {
            return Err(EneError::invalid("int_divide", "division by zero"));
        }
        let d = BigRational::from_integer(n.into());
        Ok(Complex::new(&a.re / &d, &a.im / &d))
    }
    fn format(&self, a: &GaussianRational) -> String {
        format!("[{}, {}]", a.re, a.im)
    }
    fn is_atomic(&self, a: &GaussianRational) -> bool {
        a.im.is_zero()
    }
    fn format_coeff(&self, a: &GaussianRational) -> String {
        if a.im.is_zero() {
            a.re.to_string()
        } else {
            self.format(a)
        }
    }
    fn parse(&self, s: &str) -> Result<GaussianRational> {
        let t = s.trim();
        let bad = || EneError::parse(0, format!("bad Gaussian rational '{s}'"));
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (re, im) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Complex::new(
                parse_rational(re).ok_or_else(bad)?,
                parse_rational(im).ok_or_else(bad)?,
            ));
        }
        parse_rational(t)
            .map(|q| Complex::new(q, BigRational::zero()))
            .ok_or_else(bad)
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> GaussianRational {
        let mut q = || BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
        Complex::new(q(), q())
    }
}
