//! Truncated power series.
//!
//! A [`Series`] of order `N` stores the coefficients of `X^0..=X^N`; all
//! arithmetic happens in `A[[X]]/(X^(N+1))`. Binary operations return the
//! smaller of the two input orders, since coefficient `n` of any result here
//! depends only on input coefficients up to `n`.

mod format;

use std::ops::Deref;

use num_bigint::BigInt;

use crate::error::{EneError, Result};
use crate::ring::{check_same, require_q_algebra, Ring};

pub use format::SeriesJson;

#[derive(Debug, Clone)]
pub struct Series<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Series<R> {
    /// Series with the given coefficients `c_0..=c_N`. Panics if empty.
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Series { ring, coeffs }
    }

    pub fn from_fn(ring: R, order: usize, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let coeffs = (0..=order).map(&mut f).collect();
        Series { ring, coeffs }
    }

    pub fn zero(ring: R, order: usize) -> Self {
        let z = ring.zero();
        Series::new(ring, vec![z; order + 1])
    }

    pub fn monomial(ring: R, order: usize, k: usize, c: R::Elem) -> Self {
        let mut s = Series::zero(ring, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    /// Index of the last nonzero coefficient (0 for constants).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !self.ring.is_zero(c))
            .unwrap_or(0)
    }

    /// Coefficientwise ring equality on the common order.
    pub fn agrees_with<S: AsRef<Series<R>>>(&self, other: &S) -> bool {
        let other = other.as_ref();
        self.ring == other.ring
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| self.ring.equal(a, b))
    }

    /// First index (within the common order) where the two series differ.
    pub fn first_difference<S: AsRef<Series<R>>>(&self, other: &S) -> Option<usize> {
        let other = other.as_ref();
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| !self.ring.equal(a, b))
    }

    fn zip_with(
        &self,
        other: &Series<R>,
        f: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem,
    ) -> Result<Series<R>> {
        check_same(&self.ring, &other.ring)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(&self.ring, a, b))
            .collect();
        Ok(Series::new(self.ring.clone(), coeffs))
    }

    pub fn add(&self, other: &Series<R>) -> Result<Series<R>> {
        self.zip_with(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Series<R>) -> Result<Series<R>> {
        self.zip_with(other, |r, a, b| r.sub(a, b))
    }

    pub fn neg(&self) -> Series<R> {
        self.map(|r, c| r.neg(c))
    }

    /// Coefficientwise product `f ⊙ g`.
    pub fn hadamard(&self, other: &Series<R>) -> Result<Series<R>> {
        self.zip_with(other, |r, a, b| r.mul(a, b))
    }

    pub fn map(&self, f: impl Fn(&R, &R::Elem) -> R::Elem) -> Series<R> {
        let coeffs = self.coeffs.iter().map(|c| f(&self.ring, c)).collect();
        Series::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &R::Elem) -> Series<R> {
        self.map(|r, x| r.mul(c, x))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Series<R>) -> Result<Series<R>> {
        check_same(&self.ring, &other.ring)?;
        let n = self.order().min(other.order());
        let r = &self.ring;
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = r.zero();
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if r.is_exact_zero(a) || r.is_exact_zero(b) {
                        continue;
                    }
                    acc = r.add(&acc, &r.mul(a, b));
                }
                acc
            })
            .collect();
        Ok(Series::new(r.clone(), coeffs))
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn invert(&self) -> Result<Series<R>> {
        let r = &self.ring;
        let inv0 = r
            .try_inv(&self.coeffs[0])
            .ok_or(EneError::NonInvertibleConstant { op: "series_invert" })?;
        let mut out: Vec<R::Elem> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let mut acc = r.zero();
            for i in 1..=k {
                acc = r.add(&acc, &r.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(r.neg(&r.mul(&acc, &inv0)));
        }
        Ok(Series::new(r.clone(), out))
    }

    /// `f'`, of order `N - 1` (order 0 when `N = 0`).
    pub fn derivative(&self) -> Series<R> {
        if self.order() == 0 {
            return Series::zero(self.ring.clone(), 0);
        }
        let r = &self.ring;
        let coeffs = (1..=self.order())
            .map(|k| r.scale_i64(k as i64, &self.coeffs[k]))
            .collect();
        Series::new(r.clone(), coeffs)
    }

    /// `X * f`, of order `N + 1`.
    pub fn shift_up(&self) -> Series<R> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.ring.zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(self.ring.clone(), coeffs)
    }

    /// `f(aX)`: coefficient `k` is multiplied by `a^k`.
    pub fn scale_argument(&self, a: &R::Elem) -> Series<R> {
        let r = &self.ring;
        let mut power = r.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(r.mul(c, &power));
            power = r.mul(&power, a);
        }
        Series::new(r.clone(), coeffs)
    }

    /// `f(X^k)`, truncated at the original order.
    pub fn substitute_power(&self, k: usize) -> Series<R> {
        assert!(k >= 1, "substitute_power needs k >= 1");
        let mut out = Series::zero(self.ring.clone(), self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > self.order() {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Drops coefficients above `m`.
    pub fn truncate(&self, m: usize) -> Result<Series<R>> {
        if m > self.order() {
            return Err(EneError::OrderTooLarge {
                op: "truncate",
                requested: m,
                available: self.order(),
            });
        }
        Ok(Series::new(self.ring.clone(), self.coeffs[..=m].to_vec()))
    }

    /// Reads the stored coefficients as a polynomial and re-embeds it at
    /// order `m`, padding with zeros or truncating.
    pub fn as_polynomial_at(&self, m: usize) -> Series<R> {
        Series::from_fn(self.ring.clone(), m, |i| {
            self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
        })
    }

    pub fn is_unit_series(&self) -> bool {
        self.ring.is_one(&self.coeffs[0])
    }
}

/// The Koebe series `X + 2X^2 + 3X^3 + ...` (coefficient `n` is `n·1`).
pub fn koebe<R: Ring>(ring: R, order: usize) -> Series<R> {
    let one = ring.one();
    Series::from_fn(ring.clone(), order, |n| ring.scale_i64(n as i64, &one))
}

/// A series with constant term exactly 1: an element of the group `1 + XA[[X]]`.
#[derive(Debug, Clone)]
pub struct UnitSeries<R: Ring>(Series<R>);

impl<R: Ring> AsRef<Series<R>> for Series<R> {
    fn as_ref(&self) -> &Series<R> {
        self
    }
}

impl<R: Ring> AsRef<Series<R>> for UnitSeries<R> {
    fn as_ref(&self) -> &Series<R> {
        &self.0
    }
}

impl<R: Ring> AsRef<Series<R>> for ExpForm<R> {
    fn as_ref(&self) -> &Series<R> {
        &self.0
    }
}

impl<R: Ring> Deref for UnitSeries<R> {
    type Target = Series<R>;
    fn deref(&self) -> &Series<R> {
        &self.0
    }
}

impl<R: Ring> From<UnitSeries<R>> for Series<R> {
    fn from(u: UnitSeries<R>) -> Series<R> {
        u.0
    }
}

impl<R: Ring> TryFrom<Series<R>> for UnitSeries<R> {
    type Error = EneError;
    fn try_from(s: Series<R>) -> Result<Self> {
        UnitSeries::new(s)
    }
}

impl<R: Ring> UnitSeries<R> {
    pub fn new(mut s: Series<R>) -> Result<Self> {
        if !s.is_unit_series() {
            return Err(EneError::NotUnitSeries { op: "unit series" });
        }
        s.coeffs[0] = s.ring.one();
        Ok(UnitSeries(s))
    }

    /// `1 + a_1 X + ...` from the coefficients after the constant term.
    pub fn from_tail(ring: R, tail: Vec<R::Elem>) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(ring.one());
        coeffs.extend(tail);
        UnitSeries(Series::new(ring, coeffs))
    }

    /// The series `1`, the eñe zero.
    pub fn one(ring: R, order: usize) -> Self {
        let mut s = Series::zero(ring, order);
        s.coeffs[0] = s.ring.one();
        UnitSeries(s)
    }

    /// The series `1 - X`, the eñe unit.
    pub fn one_minus_x(ring: R, order: usize) -> Self {
        Self::one_minus_monomial(ring, order, 1)
    }

    /// `1 - X^k`.
    pub fn one_minus_monomial(ring: R, order: usize, k: usize) -> Self {
        let mut s = Self::one(ring, order);
        if k >= 1 && k <= order {
            s.0.coeffs[k] = s.ring.neg(&s.ring.one());
        }
        s
    }

    /// `1 - aX`.
    pub fn linear(ring: R, order: usize, a: &R::Elem) -> Self {
        let mut s = Self::one(ring, order);
        if order >= 1 {
            s.0.coeffs[1] = s.ring.neg(a);
        }
        s
    }

    /// `Π (1 - X / α)` over the given roots; fails on a non-invertible root.
    pub fn from_roots(ring: R, order: usize, roots: &[R::Elem]) -> Result<Self> {
        let mut acc = Self::one(ring.clone(), order);
        for root in roots {
            let inv = ring.try_inv(root).ok_or(EneError::ZeroRoot("from_roots"))?;
            acc = acc.mul(&Self::linear(ring.clone(), order, &inv))?;
        }
        Ok(acc)
    }

    pub fn as_series(&self) -> &Series<R> {
        &self.0
    }

    pub fn into_series(self) -> Series<R> {
        self.0
    }

    pub fn mul(&self, other: &UnitSeries<R>) -> Result<UnitSeries<R>> {
        Ok(UnitSeries(self.0.mul(&other.0)?))
    }

    pub fn invert(&self) -> UnitSeries<R> {
        UnitSeries(self.0.invert().expect("constant term 1 is invertible"))
    }

    pub fn div(&self, other: &UnitSeries<R>) -> Result<UnitSeries<R>> {
        self.mul(&other.invert())
    }

    /// Integer power in the multiplicative group (negative exponents invert).
    pub fn powi(&self, n: i64) -> UnitSeries<R> {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = UnitSeries::one(self.ring.clone(), self.order());
        let mut b = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).expect("same ring");
            }
        }
        acc
    }

    pub fn truncate(&self, m: usize) -> Result<UnitSeries<R>> {
        Ok(UnitSeries(self.0.truncate(m)?))
    }

    pub fn as_polynomial_at(&self, m: usize) -> UnitSeries<R> {
        UnitSeries(self.0.as_polynomial_at(m))
    }

    pub fn scale_argument(&self, a: &R::Elem) -> UnitSeries<R> {
        UnitSeries(self.0.scale_argument(a))
    }

    pub fn substitute_power(&self, k: usize) -> UnitSeries<R> {
        UnitSeries(self.0.substitute_power(k))
    }

    /// Logarithmic derivative `f'/f`, of order `N - 1`. Works over any ring.
    pub fn log_derivative(&self) -> Series<R> {
        let inv = self.0.invert().expect("constant term 1 is invertible");
        self.0.derivative().mul(&inv).expect("same ring")
    }

    /// Exponential coordinates `F` with `exp(F) = f`.
    ///
    /// Solves `k F_k = k a_k - Σ_{j<k} j F_j a_{k-j}`, dividing only by `k`.
    pub fn log(&self) -> Result<ExpForm<R>> {
        let r = &self.0.ring;
        require_q_algebra(r, "series_log")?;
        let a = &self.0.coeffs;
        let mut f: Vec<R::Elem> = vec![r.zero()];
        for k in 1..=self.order() {
            let mut acc = r.zero();
            for j in 1..k {
                if r.is_exact_zero(&f[j]) || r.is_exact_zero(&a[k - j]) {
                    continue;
                }
                let term = r.mul(&f[j], &a[k - j]);
                acc = r.add(&acc, &r.scale_i64(j as i64, &term));
            }
            let fk = r.sub(&a[k], &r.int_divide(&acc, k as i64)?);
            f.push(fk);
        }
        Ok(ExpForm(Series::new(r.clone(), f)))
    }

    /// `exp(X 𝒟(f))`.
    pub fn exp_log_derivative(&self) -> Result<UnitSeries<R>> {
        require_q_algebra(&self.0.ring, "exp_log_derivative")?;
        let xd = if self.order() == 0 {
            Series::zero(self.ring.clone(), 0)
        } else {
            self.log_derivative().shift_up()
        };
        ExpForm::new(xd)?.exp()
    }

    /// `exp(T_M(log f))`: keeps exponential coordinates up to `M`.
    pub fn exp_truncate(&self, m: usize) -> Result<UnitSeries<R>> {
        require_q_algebra(&self.0.ring, "exp_truncate")?;
        if m > self.order() {
            return Err(EneError::OrderTooLarge {
                op: "exp_truncate",
                requested: m,
                available: self.order(),
            });
        }
        let log = self.log()?;
        let r = self.ring.clone();
        let kept = Series::from_fn(r.clone(), self.order(), |i| {
            if i <= m {
                log.coeff(i).clone()
            } else {
                r.zero()
            }
        });
        ExpForm(kept).exp()
    }

    /// `f^a = exp(a log f)` on a Q-algebra.
    pub fn fractional_power(&self, a: &R::Elem) -> Result<UnitSeries<R>> {
        let log = self.log()?;
        ExpForm(log.0.scale(a)).exp()
    }
}

/// Exponential coordinates: a series `F` with `F_0 = 0`, standing for `exp(F)`.
#[derive(Debug, Clone)]
pub struct ExpForm<R: Ring>(Series<R>);

impl<R: Ring> Deref for ExpForm<R> {
    type Target = Series<R>;
    fn deref(&self) -> &Series<R> {
        &self.0
    }
}

impl<R: Ring> ExpForm<R> {
    pub fn new(mut s: Series<R>) -> Result<Self> {
        if !s.ring.is_zero(&s.coeffs[0]) {
            return Err(EneError::invalid("exp form", "constant term must be 0"));
        }
        s.coeffs[0] = s.ring.zero();
        Ok(ExpForm(s))
    }

    /// `F_1 X + F_2 X^2 + ...` from `F_1..=F_N`.
    pub fn from_tail(ring: R, tail: Vec<R::Elem>) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(ring.zero());
        coeffs.extend(tail);
        ExpForm(Series::new(ring, coeffs))
    }

    pub fn from_fn(ring: R, order: usize, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let z = ring.zero();
        ExpForm(Series::from_fn(ring, order, |i| {
            if i == 0 {
                z.clone()
            } else {
                f(i)
            }
        }))
    }

    pub fn as_series(&self) -> &Series<R> {
        &self.0
    }

    pub fn into_series(self) -> Series<R> {
        self.0
    }

    /// `exp(F)` via `n g_n = Σ_{k=1..n} k F_k g_{n-k}`.
    pub fn exp(&self) -> Result<UnitSeries<R>> {
        let r = &self.0.ring;
        require_q_algebra(r, "series_exp")?;
        let f = &self.0.coeffs;
        let mut g: Vec<R::Elem> = vec![r.one()];
        for n in 1..=self.order() {
            let mut acc = r.zero();
            for k in 1..=n {
                if r.is_exact_zero(&f[k]) || r.is_exact_zero(&g[n - k]) {
                    continue;
                }
                let term = r.mul(&f[k], &g[n - k]);
                acc = r.add(&acc, &r.int_scale(&BigInt::from(k), &term));
            }
            g.push(r.int_divide(&acc, n as i64)?);
        }
        Ok(UnitSeries(Series::new(r.clone(), g)))
    }

    /// The exponential-form eñe product `F ⋆_e G = -Σ i F_i G_i X^i`.
    pub fn ene(&self, other: &ExpForm<R>) -> Result<ExpForm<R>> {
        check_same(&self.ring, &other.ring)?;
        let r = self.ring.clone();
        let n = self.order().min(other.order());
        Ok(ExpForm::from_fn(r.clone(), n, |i| {
            let p = r.mul(self.coeff(i), other.coeff(i));
            r.scale_i64(-(i as i64), &p)
        }))
    }
}

#[cfg(test)]
mod tests;
