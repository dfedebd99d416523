//! The eñe product and its algebra.
//!
//! Four algorithms compute `f ⋆ g`, plus a division-free fifth path:
//!
//! * [`ene_exp`]: termwise in exponential coordinates, `-Σ i F_i G_i X^i`
//!   (Q-algebras only).
//! * [`ene_universal`]: evaluates the integer universal polynomials `Q_n`.
//! * [`ene_tensor`]: `det(I - (M_P ⊗ M_Q) X)` for polynomials.
//! * [`ene_roots`]: `Π (1 - X / α_i β_j)` from root lists.
//! * [`ene_witt`]: factors both series as `Π (1 - w_n X^n)` and multiplies
//!   the factors pairwise. It needs no division, so [`ene`] uses it outside
//!   Q-algebras.

mod matrix;
mod univ;

use num_integer::Integer;
use num_bigint::BigInt;

use crate::error::{EneError, Result};
use crate::ring::{check_same, require_q_algebra, Ring};
use crate::series::{ExpForm, Series, UnitSeries};

pub use matrix::{berkowitz, companion_matrix, det_series, ene_tensor, kronecker, RingMatrix};
pub use univ::{
    ene_universal, ene_universal_with, generate_univ_poly, generate_univ_polys, UnivCache,
    UnivPoly, DEFAULT_QCAP,
};

/// `exp(-Σ i F_i G_i X^i)` with `F = log f`, `G = log g`.
pub fn ene_exp<R: Ring>(f: &UnitSeries<R>, g: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    check_same(f.ring(), g.ring())?;
    require_q_algebra(f.ring(), "ene_exp")?;
    f.log()?.ene(&g.log()?)?.exp()
}

/// Coordinates `w_1..w_N` (index 0 unused) with `f = Π (1 - w_n X^n)`.
pub fn witt_coordinates<R: Ring>(f: &UnitSeries<R>) -> Vec<R::Elem> {
    let r = f.ring();
    let n = f.order();
    let mut h: Vec<R::Elem> = f.coeffs().to_vec();
    let mut w = vec![r.zero(); n + 1];
    for k in 1..=n {
        let wk = r.neg(&h[k]);
        if !r.is_zero(&wk) {
            // h <- h / (1 - w_k X^k), i.e. h_i += w_k h_{i-k} in increasing i.
            for i in k..=n {
                let t = r.mul(&wk, &h[i - k]);
                h[i] = r.add(&h[i], &t);
            }
        }
        w[k] = wk;
    }
    w
}

fn binomial_factor<R: Ring>(r: &R, acc: &mut [R::Elem], c: &R::Elem, step: usize, e: u64) {
    // acc <- acc * (1 - c X^step)^e, repeated multiplication by (1 - c X^step).
    let n = acc.len() - 1;
    for _ in 0..e {
        for i in (step..=n).rev() {
            let t = r.mul(c, &acc[i - step]);
            acc[i] = r.sub(&acc[i], &t);
        }
    }
}

/// `f ⋆ g` through `(1 - aX^n) ⋆ (1 - bX^m) = (1 - a^{m/d} b^{n/d} X^{lcm})^d`,
/// `d = gcd(n, m)`. Division-free; valid over any ring.
pub fn ene_witt<R: Ring>(f: &UnitSeries<R>, g: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    check_same(f.ring(), g.ring())?;
    let r = f.ring();
    let order = f.order().min(g.order());
    let wf = witt_coordinates(&f.truncate(order)?);
    let wg = witt_coordinates(&g.truncate(order)?);
    let mut acc = UnitSeries::one(r.clone(), order).into_series().into_coeffs();
    for n in 1..=order {
        if r.is_zero(&wf[n]) {
            continue;
        }
        for m in 1..=order {
            let l = n.lcm(&m);
            if l > order || r.is_zero(&wg[m]) {
                continue;
            }
            let d = n.gcd(&m);
            let c = r.mul(&r.pow(&wf[n], (m / d) as u64), &r.pow(&wg[m], (n / d) as u64));
            if !r.is_zero(&c) {
                binomial_factor(r, &mut acc, &c, l, d as u64);
            }
        }
    }
    UnitSeries::new(Series::new(r.clone(), acc))
}

/// `f ⋆ g`. Q-algebras use [`ene_exp`]; other rings use [`ene_witt`].
pub fn ene<R: Ring>(f: &UnitSeries<R>, g: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    check_same(f.ring(), g.ring())?;
    if f.ring().is_q_algebra() {
        ene_exp(f, g)
    } else {
        ene_witt(f, g)
    }
}

/// `f^{⋆n}`; in exponential coordinates `(-i)^{n-1} F_i^n`.
pub fn ene_pow<R: Ring>(f: &UnitSeries<R>, n: u32) -> Result<UnitSeries<R>> {
    if n == 0 {
        return Err(EneError::invalid("ene_pow", "exponent must be positive"));
    }
    let r = f.ring();
    if r.is_q_algebra() {
        let log = f.log()?;
        return ExpForm::from_fn(r.clone(), f.order(), |i| {
            let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
            let scale = BigInt::from(sign) * BigInt::from(i).pow(n - 1);
            r.int_scale(&scale, &r.pow(log.coeff(i), n as u64))
        })
        .exp();
    }
    let mut acc = f.clone();
    for _ in 1..n {
        acc = ene(&acc, f)?;
    }
    Ok(acc)
}

/// The eñe inverse: `G_i = 1 / (i^2 F_i)`, so that `f ⋆ g = 1 - X`.
pub fn ene_inverse<R: Ring>(f: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    let r = f.ring();
    require_q_algebra(r, "ene_inverse")?;
    let log = f.log()?;
    let mut tail = Vec::with_capacity(f.order());
    for i in 1..=f.order() {
        let fi = log.coeff(i);
        let inv = r
            .try_inv(fi)
            .filter(|_| !r.is_zero(fi))
            .ok_or(EneError::NotInvertibleCoefficient(i))?;
        tail.push(r.int_divide(&inv, (i * i) as i64)?);
    }
    ExpForm::from_tail(r.clone(), tail).exp()
}

/// Outcome of the zero-divisor test, valid up to the series' order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDivisorVerdict {
    pub is_zero_divisor: bool,
    /// First index `i` whose coordinate `F_i` is zero or a zero divisor.
    pub witness: Option<usize>,
    pub order: usize,
}

/// `f` is an eñe zero divisor iff some `F_i` is zero or a zero divisor of `A`.
pub fn is_zero_divisor<R: Ring>(f: &UnitSeries<R>) -> Result<ZeroDivisorVerdict> {
    let r = f.ring();
    require_q_algebra(r, "is_zero_divisor")?;
    let log = f.log()?;
    let witness =
        (1..=f.order()).find(|&i| r.is_zero(log.coeff(i)) || r.is_zero_divisor(log.coeff(i)));
    Ok(ZeroDivisorVerdict {
        is_zero_divisor: witness.is_some(),
        witness,
        order: f.order(),
    })
}

/// `Π_{i,j} (1 - X / (α_i β_j))` to the given order.
pub fn ene_roots<R: Ring>(
    ring: &R,
    alphas: &[R::Elem],
    betas: &[R::Elem],
    order: usize,
) -> Result<UnitSeries<R>> {
    let mut products = Vec::with_capacity(alphas.len() * betas.len());
    for a in alphas {
        for b in betas {
            if ring.is_zero(a) || ring.is_zero(b) {
                return Err(EneError::ZeroRoot("ene_roots"));
            }
            products.push(ring.mul(a, b));
        }
    }
    UnitSeries::from_roots(ring.clone(), order, &products).map_err(|_| EneError::ZeroRoot("ene_roots"))
}

#[cfg(test)]
mod tests;
