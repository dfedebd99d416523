//! Named series and operators: Weierstrass factors `E_N`, `I_N = 1 - X^N`,
//! the Artin–Hasse exponential, Hecke operators `T(n)`, dilatations `R_λ`,
//! and membership tests for the subrings `𝒜_N` and ideals `𝒥_n`.
//!
//! Everything except `I_N` and `E_0` works in exponential coordinates and
//! therefore needs a Q-algebra.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::engine::ene;
use crate::error::{EneError, Result};
use crate::ring::{is_prime, require_q_algebra, Ring};
use crate::series::{ExpForm, Series, UnitSeries};

/// `E_N = (1 - X) exp(X + ... + X^N / N) = exp(-Σ_{k>N} X^k / k)`.
pub fn weierstrass_factor<R: Ring>(n: usize, order: usize, ring: &R) -> Result<UnitSeries<R>> {
    if n == 0 {
        return Ok(UnitSeries::one_minus_x(ring.clone(), order));
    }
    require_q_algebra(ring, "weierstrass_factor")?;
    let mut tail = Vec::with_capacity(order);
    for k in 1..=order {
        tail.push(if k > n {
            ring.int_divide(&ring.neg(&ring.one()), k as i64)?
        } else {
            ring.zero()
        });
    }
    ExpForm::from_tail(ring.clone(), tail).exp()
}

/// `I_N = 1 - X^N`.
pub fn cyclotomic_like<R: Ring>(n: usize, order: usize, ring: &R) -> Result<UnitSeries<R>> {
    if n == 0 {
        return Err(EneError::invalid("cyclotomic_like", "N must be at least 1"));
    }
    Ok(UnitSeries::one_minus_monomial(ring.clone(), order, n))
}

/// `I_N ⋆ f = exp(N Σ_k F_{Nk} X^{Nk})`.
pub fn ene_by_in<R: Ring>(n: usize, f: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    if n == 0 {
        return Err(EneError::invalid("ene_by_IN", "N must be at least 1"));
    }
    let r = f.ring();
    require_q_algebra(r, "ene_by_IN")?;
    let log = f.log()?;
    ExpForm::from_fn(r.clone(), f.order(), |i| {
        if i % n == 0 {
            r.scale_i64(n as i64, log.coeff(i))
        } else {
            r.zero()
        }
    })
    .exp()
}

/// `exp_p = exp(X + X^p/p + X^{p^2}/p^2 + ...)`.
pub fn artin_hasse<R: Ring>(p: u64, order: usize, ring: &R) -> Result<UnitSeries<R>> {
    if !is_prime(p) {
        return Err(EneError::invalid("artin_hasse", format!("{p} is not prime")));
    }
    require_q_algebra(ring, "artin_hasse")?;
    let mut tail = vec![ring.zero(); order];
    let mut pk = 1usize;
    while pk <= order {
        tail[pk - 1] = ring.int_divide(&ring.one(), pk as i64)?;
        pk = match pk.checked_mul(p as usize) {
            Some(v) => v,
            None => break,
        };
    }
    ExpForm::from_tail(ring.clone(), tail).exp()
}

/// `exp_p ⋆ f = exp(-Σ_{k≥0} F_{p^k} X^{p^k})`, computed termwise.
pub fn artin_hasse_action<R: Ring>(p: u64, f: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    if !is_prime(p) {
        return Err(EneError::invalid("artin_hasse", format!("{p} is not prime")));
    }
    let r = f.ring();
    let log = f.log()?;
    let mut keep = vec![false; f.order() + 1];
    let mut pk = 1usize;
    while pk <= f.order() {
        keep[pk] = true;
        pk = pk.saturating_mul(p as usize);
    }
    ExpForm::from_fn(r.clone(), f.order(), |i| {
        if keep[i] {
            r.neg(log.coeff(i))
        } else {
            r.zero()
        }
    })
    .exp()
}

/// `f^a = exp(a log f)`.
pub fn fractional_power<R: Ring>(f: &UnitSeries<R>, a: &R::Elem) -> Result<UnitSeries<R>> {
    f.fractional_power(a)
}

/// Hecke operator `T(n) f = R_n(I_n ⋆ f) = exp(Σ_k n F_{nk} X^k)`, of order `⌊N/n⌋`.
pub fn hecke<R: Ring>(n: usize, f: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    if n == 0 {
        return Err(EneError::invalid("hecke", "n must be at least 1"));
    }
    let r = f.ring();
    require_q_algebra(r, "hecke")?;
    let log = f.log()?;
    ExpForm::from_fn(r.clone(), f.order() / n, |k| r.scale_i64(n as i64, log.coeff(n * k))).exp()
}

/// `e^{-X/(1-X)} ⋆ f`, checked against `exp(X 𝒟(f))`.
pub fn convolution_check<R: Ring>(f: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    let r = f.ring();
    require_q_algebra(r, "convolution_check")?;
    let minus_one = r.neg(&r.one());
    let kernel = ExpForm::from_fn(r.clone(), f.order(), |_| minus_one.clone()).exp()?;
    let lhs = ene(&kernel, f)?;
    let rhs = f.exp_log_derivative()?;
    match lhs.first_difference(&rhs) {
        Some(index) => Err(EneError::EngineMismatch {
            op: "convolution_check",
            index,
        }),
        None => Ok(lhs),
    }
}

/// Whether `F_i = 0` for `N < i ≤ order`: membership of the truncated series in `𝒜_N`.
pub fn in_subring_an<R: Ring>(f: &UnitSeries<R>, n: usize) -> Result<bool> {
    let r = f.ring();
    require_q_algebra(r, "in_subring_AN")?;
    let log = f.log()?;
    Ok((n + 1..=f.order()).all(|i| r.is_zero(log.coeff(i))))
}

/// Whether `F_n = 0`, i.e. `f ∈ 𝒥_n`.
pub fn in_ideal_jn<R: Ring>(f: &UnitSeries<R>, n: usize) -> Result<bool> {
    if n == 0 || n > f.order() {
        return Err(EneError::OrderTooLarge {
            op: "in_ideal_Jn",
            requested: n,
            available: f.order(),
        });
    }
    let r = f.ring();
    require_q_algebra(r, "in_ideal_Jn")?;
    Ok(r.is_zero(f.log()?.coeff(n)))
}

/// A unit series in `U = X^{1/d}`: the codomain of the dilatations.
///
/// Always canonical: `d` and the support of the body share no common factor.
/// The body order `N` means exponents up to `N/d` are known.
#[derive(Debug, Clone)]
pub struct FractionalSeries<R: Ring> {
    denom: usize,
    body: UnitSeries<R>,
}

impl<R: Ring> From<UnitSeries<R>> for FractionalSeries<R> {
    fn from(body: UnitSeries<R>) -> Self {
        FractionalSeries::new(1, body).expect("denominator 1")
    }
}

impl<R: Ring> FractionalSeries<R> {
    pub fn new(denom: usize, body: UnitSeries<R>) -> Result<Self> {
        if denom == 0 {
            return Err(EneError::invalid("fractional series", "denominator must be positive"));
        }
        Ok(FractionalSeries { denom, body }.canonical())
    }

    fn canonical(self) -> Self {
        let r = self.body.ring();
        let g = (1..=self.body.order())
            .filter(|&j| !r.is_zero(self.body.coeff(j)))
            .fold(self.denom, |g, j| g.gcd(&j));
        if g == 1 {
            return self;
        }
        let order = self.body.order() / g;
        let body = Series::from_fn(r.clone(), order, |j| self.body.coeff(j * g).clone());
        FractionalSeries {
            denom: self.denom / g,
            body: UnitSeries::new(body).expect("constant term kept"),
        }
    }

    pub fn denom(&self) -> usize {
        self.denom
    }

    pub fn body(&self) -> &UnitSeries<R> {
        &self.body
    }

    /// The plain series when the denominator is 1.
    pub fn as_unit_series(&self) -> Option<&UnitSeries<R>> {
        (self.denom == 1).then_some(&self.body)
    }

    /// `R_λ f (X) = f(X^{1/λ})` for positive rational `λ = p/q`.
    pub fn dilate(&self, lambda: &BigRational) -> Result<FractionalSeries<R>> {
        if !lambda.is_positive() {
            return Err(EneError::invalid("dilate", format!("λ = {lambda} must be positive")));
        }
        let too_big = || EneError::invalid("dilate", "λ is too large");
        let p = lambda.numer().to_usize().ok_or_else(too_big)?;
        let q = lambda.denom().to_usize().ok_or_else(too_big)?;
        let r = self.body.ring();
        let order = self.body.order() * q;
        let body = Series::from_fn(r.clone(), order, |i| {
            if i % q == 0 {
                self.body.coeff(i / q).clone()
            } else {
                r.zero()
            }
        });
        FractionalSeries::new(self.denom * p, UnitSeries::new(body)?)
    }

    /// `T(n)` on the lattice `X^{1/d}`: body coordinate `k` becomes `n F_{nk}`.
    pub fn hecke(&self, n: usize) -> Result<FractionalSeries<R>> {
        FractionalSeries::new(self.denom, hecke(n, &self.body)?)
    }

    /// Known exponent bound `N/d` as a rational.
    pub fn precision(&self) -> BigRational {
        BigRational::new(self.body.order().into(), self.denom.into())
    }

    /// Coefficientwise equality up to the smaller known exponent.
    pub fn agrees_with(&self, other: &FractionalSeries<R>) -> bool {
        if self.body.ring() != other.body.ring() {
            return false;
        }
        let l = self.denom.lcm(&other.denom);
        let (sa, sb) = (l / self.denom, l / other.denom);
        let top = (self.body.order() * sa).min(other.body.order() * sb);
        let r = self.body.ring();
        let zero = r.zero();
        let at = |s: &FractionalSeries<R>, step: usize, i: usize| -> R::Elem {
            if i.is_multiple_of(step) {
                s.body.coeff(i / step).clone()
            } else {
                zero.clone()
            }
        };
        (0..=top).all(|i| r.equal(&at(self, sa, i), &at(other, sb, i)))
    }
}

/// `R_λ` applied to a plain series.
pub fn dilate<R: Ring>(lambda: &BigRational, f: &UnitSeries<R>) -> Result<FractionalSeries<R>> {
    FractionalSeries::from(f.clone()).dilate(lambda)
}

/// Convenience: `λ = n`.
pub fn dilate_int<R: Ring>(n: usize, f: &UnitSeries<R>) -> Result<FractionalSeries<R>> {
    dilate(&BigRational::from_integer(n.into()), f)
}
