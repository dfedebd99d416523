use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use super::{parse_rational, rational_to_f64, Ring, RingDescriptor, descriptor::DEFAULT_COMPLEX_EPS};
use crate::error::{EneError, Result};

/// Double-precision complex numbers with tolerance-based equality:
/// `|a - b| <= eps * max(1, |a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRing {
    eps: f64,
}

impl Default for ComplexRing {
    fn default() -> Self {
        ComplexRing {
            eps: DEFAULT_COMPLEX_EPS,
        }
    }
}

impl ComplexRing {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(EneError::invalid("complex ring", "eps must be nonnegative"));
        }
        Ok(ComplexRing { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

fn fmt_f64(x: f64) -> String {
    // `{}` on f64 is the shortest round-tripping form, deterministic across runs
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

impl Ring for ComplexRing {
    type Elem = Complex64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::ComplexFloat { eps: self.eps }
    }
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn equal(&self, a: &Complex64, b: &Complex64) -> bool {
        let scale = 1f64.max(a.norm()).max(b.norm());
        (a - b).norm() <= self.eps * scale
    }
    fn is_q_algebra(&self) -> bool {
        true
    }
    fn is_exact_zero(&self, a: &Complex64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn try_inv(&self, a: &Complex64) -> Option<Complex64> {
        (!self.is_zero(a)).then(|| a.inv())
    }
    fn is_zero_divisor(&self, a: &Complex64) -> bool {
        self.is_zero(a)
    }
    fn from_rational(&self, q: &BigRational) -> Option<Complex64> {
        Some(Complex64::new(rational_to_f64(q), 0.0))
    }
    fn int_scale(&self, n: &num_bigint::BigInt, a: &Complex64) -> Complex64 {
        use num_traits::ToPrimitive;
        a * n.to_f64().unwrap_or(f64::NAN)
    }
    fn int_divide(&self, a: &Complex64, n: i64) -> Result<Complex64> {
        if n == 0 {
            return Err(EneError::invalid("int_divide", "division by zero"));
        }
        Ok(a / n as f64)
    }
    fn format(&self, a: &Complex64) -> String {
        format!("[{}, {}]", fmt_f64(a.re), fmt_f64(a.im))
    }
    fn parse(&self, s: &str) -> Result<Complex64> {
        let t = s.trim();
        let bad = || EneError::parse(0, format!("bad complex '{s}'"));
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (re, im) = inner.split_once(',').ok_or_else(bad)?;
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            return Ok(Complex64::new(re, im));
        }
        if let Ok(x) = t.parse::<f64>() {
            return Ok(Complex64::new(x, 0.0));
        }
        parse_rational(t)
            .map(|q| Complex64::new(rational_to_f64(&q), 0.0))
            .ok_or_else(bad)
    }
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }
}
