//! The eñe product on rational functions `P/Q` and on polynomials with a
//! power-of-`X` factor, plus invariance under coefficient reversal.
//!
//! Polynomials are carried as [`UnitSeries`] whose stored coefficients are
//! the whole polynomial; the degree is the index of the last nonzero one.

use crate::engine::ene;
use crate::error::{EneError, Result};
use crate::ring::{check_same, Ring};
use crate::series::{Series, UnitSeries};

/// Re-embeds a polynomial at an order large enough to hold `degree`.
fn exact<R: Ring>(p: &UnitSeries<R>, degree: usize) -> UnitSeries<R> {
    p.as_polynomial_at(degree.max(p.degree()))
}

/// `P ⋆ Q` as an exact polynomial (degree at most `deg P · deg Q`).
pub fn ene_poly<R: Ring>(p: &UnitSeries<R>, q: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    let bound = (p.degree() * q.degree()).max(1);
    let out = ene(&exact(p, bound), &exact(q, bound))?;
    Ok(out.as_polynomial_at(out.degree()))
}

fn poly_mul<R: Ring>(a: &UnitSeries<R>, b: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    let d = a.degree() + b.degree();
    let out = exact(a, d).mul(&exact(b, d))?;
    Ok(out.as_polynomial_at(out.degree()))
}

/// A quotient `num / den` of polynomials in `1 + XA[X]`.
#[derive(Debug, Clone)]
pub struct RationalPair<R: Ring> {
    pub num: UnitSeries<R>,
    pub den: UnitSeries<R>,
}

impl<R: Ring> RationalPair<R> {
    pub fn new(num: UnitSeries<R>, den: UnitSeries<R>) -> Result<Self> {
        check_same(num.ring(), den.ring())?;
        let (dn, dd) = (num.degree(), den.degree());
        Ok(RationalPair {
            num: num.as_polynomial_at(dn),
            den: den.as_polynomial_at(dd),
        })
    }

    pub fn polynomial(p: UnitSeries<R>) -> Self {
        let one = UnitSeries::one(p.ring().clone(), 0);
        RationalPair::new(p, one).expect("same ring")
    }

    pub fn num_degree(&self) -> usize {
        self.num.degree()
    }

    pub fn den_degree(&self) -> usize {
        self.den.degree()
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num_degree().max(self.den_degree())
    }

    /// Power-series expansion of `num / den` to the given order.
    pub fn to_series(&self, order: usize) -> Result<UnitSeries<R>> {
        self.num
            .as_polynomial_at(order)
            .div(&self.den.as_polynomial_at(order))
    }
}

/// `R_1 ⋆ R_2 = (P_1⋆P_2)(Q_1⋆Q_2) / ((P_1⋆Q_2)(Q_1⋆P_2))`, without cancellation.
pub fn ene_rational<R: Ring>(a: &RationalPair<R>, b: &RationalPair<R>) -> Result<RationalPair<R>> {
    check_same(a.num.ring(), b.num.ring())?;
    let num = poly_mul(&ene_poly(&a.num, &b.num)?, &ene_poly(&a.den, &b.den)?)?;
    let den = poly_mul(&ene_poly(&a.num, &b.den)?, &ene_poly(&a.den, &b.num)?)?;
    RationalPair::new(num, den)
}

/// `X^shift · P_0(X)` with `P_0 ∈ 1 + XA[X]`.
#[derive(Debug, Clone)]
pub struct ShiftedPoly<R: Ring> {
    pub shift: usize,
    pub unit_part: UnitSeries<R>,
}

impl<R: Ring> ShiftedPoly<R> {
    pub fn new(shift: usize, unit_part: UnitSeries<R>) -> Self {
        let d = unit_part.degree();
        ShiftedPoly {
            shift,
            unit_part: unit_part.as_polynomial_at(d),
        }
    }

    /// Splits a polynomial into `X^n P_0`. Fails on the zero polynomial or
    /// when the lowest nonzero coefficient is not 1.
    pub fn from_polynomial(p: &Series<R>) -> Result<Self> {
        let r = p.ring();
        let n = (0..=p.order())
            .find(|&i| !r.is_zero(p.coeff(i)))
            .ok_or_else(|| EneError::invalid("shifted poly", "zero polynomial"))?;
        if !r.is_one(p.coeff(n)) {
            return Err(EneError::invalid(
                "shifted poly",
                format!("lowest coefficient {} is not 1", r.format(p.coeff(n))),
            ));
        }
        let body = Series::from_fn(r.clone(), p.degree() - n, |i| p.coeff(i + n).clone());
        Ok(ShiftedPoly::new(n, UnitSeries::new(body)?))
    }

    pub fn degree(&self) -> usize {
        self.shift + self.unit_part.degree()
    }

    /// The polynomial `X^n P_0` as a plain series of its exact degree.
    pub fn to_polynomial(&self) -> Series<R> {
        let r = self.unit_part.ring();
        Series::from_fn(r.clone(), self.degree(), |i| {
            if i < self.shift {
                r.zero()
            } else {
                self.unit_part.coeff(i - self.shift).clone()
            }
        })
    }

    pub fn mul(&self, other: &ShiftedPoly<R>) -> Result<ShiftedPoly<R>> {
        Ok(ShiftedPoly::new(
            self.shift + other.shift,
            poly_mul(&self.unit_part, &other.unit_part)?,
        ))
    }

    pub fn equals(&self, other: &ShiftedPoly<R>) -> bool {
        self.shift == other.shift
            && self.unit_part.order() == other.unit_part.order()
            && self.unit_part.agrees_with(&other.unit_part)
    }
}

/// `(X^n P_0) ⋆ (X^m Q_0) = X^{n deg Q_0 + m deg P_0 + nm} (P_0 ⋆ Q_0)`.
pub fn ene_shifted<R: Ring>(p: &ShiftedPoly<R>, q: &ShiftedPoly<R>) -> Result<ShiftedPoly<R>> {
    let (n, m) = (p.shift, q.shift);
    let shift = n * q.unit_part.degree() + m * p.unit_part.degree() + n * m;
    Ok(ShiftedPoly::new(shift, ene_poly(&p.unit_part, &q.unit_part)?))
}

/// Coefficient reversal `P̂(X) = X^d P(1/X)` of a polynomial whose constant
/// and leading coefficients are both 1.
pub fn reverse_poly<R: Ring>(p: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    let r = p.ring();
    let d = p.degree();
    if !r.is_one(p.coeff(d)) {
        return Err(EneError::invalid(
            "reverse_poly",
            format!("leading coefficient {} is not 1", r.format(p.coeff(d))),
        ));
    }
    UnitSeries::new(Series::from_fn(r.clone(), d, |i| p.coeff(d - i).clone()))
}

/// Checks `P̂ ⋆ Q̂ = ±(P ⋆ Q)^` where the sign `(-1)^{deg P · deg Q}` is the
/// leading coefficient of `P ⋆ Q`.
pub fn verify_inversion<R: Ring>(p: &UnitSeries<R>, q: &UnitSeries<R>) -> Result<bool> {
    let lhs = ene_poly(&reverse_poly(p)?, &reverse_poly(q)?)?;
    let pq = ene_poly(p, q)?;
    let r = p.ring();
    let d = pq.degree();
    let odd = (p.degree() * q.degree()) % 2 == 1;
    let rhs = Series::from_fn(r.clone(), d, |i| {
        let c = pq.coeff(d - i);
        if odd {
            r.neg(c)
        } else {
            c.clone()
        }
    });
    Ok(lhs.order() == rhs.order() && lhs.agrees_with(&rhs))
}
