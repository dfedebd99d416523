//! Randomized identity suites, run by `ene verify` and by the test targets.
//!
//! Every check draws from its own ChaCha8 stream derived from the suite seed
//! and the check name, so reports are byte-identical for a fixed seed and
//! one check's sample count does not shift another's inputs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{
    genus_factorization_ene, radius_inequality_check, verify_zero_products, weierstrass_at,
    GenusFactorization, RootOptions, ZeroSet,
};
use crate::engine::{
    ene, ene_exp, ene_inverse, ene_roots, ene_tensor, ene_universal_with, is_zero_divisor,
    UnivCache,
};
use crate::error::{EneError, Result};
use crate::random::{
    random_complex_in_annulus, random_complex_rooted, random_nonzero_rational,
    random_rational_rooted, random_unit_series, random_with_nonzero_log,
};
use crate::rational::{ene_rational, ene_shifted, verify_inversion, RationalPair, ShiftedPoly};
use crate::ring::{
    mobius, ComplexRing, IntegerRing, ModularRing, PolyRing, RationalRing, Ring,
};
use crate::series::{koebe, ExpForm, Series, UnitSeries};
use crate::transforms::{
    artin_hasse, artin_hasse_action, convolution_check, cyclotomic_like, dilate_int, ene_by_in,
    hecke, weierstrass_factor, FractionalSeries,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RingAxioms,
    EneAxioms,
    MainFormula,
    Hadamard,
    Operators,
    Rational,
    Analytic,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::RingAxioms,
        Suite::EneAxioms,
        Suite::MainFormula,
        Suite::Hadamard,
        Suite::Operators,
        Suite::Rational,
        Suite::Analytic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RingAxioms => "ring-axioms",
            Suite::EneAxioms => "ene-axioms",
            Suite::MainFormula => "main-formula",
            Suite::Hadamard => "hadamard",
            Suite::Operators => "operators",
            Suite::Rational => "rational",
            Suite::Analytic => "analytic",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = EneError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| EneError::invalid("verify", format!("unknown suite '{s}'")))
    }
}

/// How many random cases each check draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Size {
    Small,
    Full,
}

impl FromStr for Size {
    type Err = EneError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Size::Small),
            "full" => Ok(Size::Full),
            _ => Err(EneError::invalid("verify", format!("unknown size '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_mismatch: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub size: Size,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn stream_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a over the check name.
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
        ^ seed
}

struct Runner<'a> {
    seed: u64,
    size: Size,
    cache: &'a UnivCache,
    checks: Vec<Check>,
}

impl Runner<'_> {
    fn count(&self, small: usize, full: usize) -> usize {
        match self.size {
            Size::Small => small,
            Size::Full => full,
        }
    }

    fn push(&mut self, name: &str, cases: usize, failure: Option<String>, max_mismatch: Option<f64>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: failure.is_none(),
            cases,
            max_mismatch,
            failure,
            note: None,
        });
    }

    /// Runs `cases` boolean cases, stopping at the first failure.
    fn exact(&mut self, name: &str, cases: usize, mut case: impl FnMut(&mut ChaCha8Rng, usize) -> Result<bool>) {
        let mut g = ChaCha8Rng::seed_from_u64(stream_seed(self.seed, name));
        let mut failure = None;
        let mut run = 0;
        for i in 0..cases {
            run += 1;
            match case(&mut g, i) {
                Ok(true) => {}
                Ok(false) => failure = Some(format!("case {i} failed")),
                Err(e) => failure = Some(format!("case {i}: {e}")),
            }
            if failure.is_some() {
                break;
            }
        }
        self.push(name, run, failure, None);
    }

    /// Runs `cases` cases that each return a mismatch, failing above `tol`.
    fn numeric(
        &mut self,
        name: &str,
        cases: usize,
        tol: f64,
        mut case: impl FnMut(&mut ChaCha8Rng, usize) -> Result<f64>,
    ) {
        let mut g = ChaCha8Rng::seed_from_u64(stream_seed(self.seed, name));
        let mut worst: f64 = 0.0;
        let mut failure = None;
        for i in 0..cases {
            match case(&mut g, i) {
                Ok(m) => {
                    worst = worst.max(m);
                    if !(m <= tol) && failure.is_none() {
                        failure = Some(format!("case {i}: mismatch {m:e} > {tol:e}"));
                    }
                }
                Err(e) => {
                    failure = Some(format!("case {i}: {e}"));
                    break;
                }
            }
        }
        self.push(name, cases, failure, Some(worst));
    }

    fn note(&mut self, text: String) {
        if let Some(last) = self.checks.last_mut() {
            last.note = Some(text);
        }
    }
}

/// Runs a suite. `cache` supplies the universal polynomials.
pub fn run(suite: Suite, seed: u64, size: Size, cache: &UnivCache) -> Report {
    let mut r = Runner {
        seed,
        size,
        cache,
        checks: Vec::new(),
    };
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::RingAxioms => ring_axioms(&mut r),
            Suite::EneAxioms => ene_axioms(&mut r),
            Suite::MainFormula => main_formula(&mut r),
            Suite::Hadamard => hadamard(&mut r),
            Suite::Operators => operators(&mut r),
            Suite::Rational => rational(&mut r),
            Suite::Analytic => analytic(&mut r),
            Suite::All => unreachable!(),
        }
    }
    Report {
        suite,
        seed,
        size,
        pass: r.checks.iter().all(|c| c.pass),
        checks: r.checks,
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn zmod(m: u64) -> ModularRing {
    ModularRing::new(m).expect("modulus ≥ 2")
}

fn complex_tight() -> ComplexRing {
    ComplexRing::new(1e-10).expect("nonnegative")
}

// ---- ring-axioms ----------------------------------------------------------

fn coefficient_axioms<R: Ring>(r: &R, g: &mut ChaCha8Rng) -> bool {
    let (a, b, c) = (r.sample(g), r.sample(g), r.sample(g));
    let eq = |x: &R::Elem, y: &R::Elem| r.equal(x, y);
    eq(&r.add(&r.add(&a, &b), &c), &r.add(&a, &r.add(&b, &c)))
        && eq(&r.add(&a, &b), &r.add(&b, &a))
        && eq(&r.mul(&r.mul(&a, &b), &c), &r.mul(&a, &r.mul(&b, &c)))
        && eq(&r.mul(&a, &b), &r.mul(&b, &a))
        && eq(&r.mul(&a, &r.add(&b, &c)), &r.add(&r.mul(&a, &b), &r.mul(&a, &c)))
        && eq(&r.add(&a, &r.zero()), &a)
        && eq(&r.mul(&a, &r.one()), &a)
        && r.is_zero(&r.add(&a, &r.neg(&a)))
}

fn int_scale_oracle<R: Ring>(r: &R, g: &mut ChaCha8Rng) -> bool {
    let a = r.sample(g);
    let mut acc = r.zero();
    (0..=16).all(|n| {
        let ok = r.equal(&r.int_scale(&BigInt::from(n), &a), &acc);
        acc = r.add(&acc, &a);
        ok
    })
}

fn int_divide_round_trip<R: Ring>(r: &R, g: &mut ChaCha8Rng) -> Result<bool> {
    let a = r.sample(g);
    for n in 1..=20i64 {
        if !r.equal(&r.int_divide(&r.scale_i64(n, &a), n)?, &a) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn series_group<R: Ring>(r: &R, g: &mut ChaCha8Rng) -> Result<bool> {
    let order = g.gen_range(1..=32);
    let f = random_unit_series(r, order, g);
    let h = random_unit_series(r, order, g);
    let k = random_unit_series(r, order, g);
    let one = UnitSeries::one(r.clone(), order);
    Ok(f.mul(&h)?.mul(&k)?.agrees_with(&f.mul(&h.mul(&k)?)?)
        && f.mul(&h)?.agrees_with(&h.mul(&f)?)
        && f.mul(&f.invert())?.agrees_with(&one)
        && f.invert().mul(&f)?.agrees_with(&one))
}

/// Coefficientwise |a| for the rounding-error scale of a product.
fn magnitudes(s: &Series<ComplexRing>) -> Vec<f64> {
    s.coeffs().iter().map(|z| z.norm()).collect()
}

fn abs_conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len().min(b.len()))
        .map(|i| (0..=i).map(|j| a[j] * b[i - j]).sum())
        .collect()
}

/// Largest coefficient gap between `x` and `y`, relative to `scale`.
fn scaled_gap(x: &Series<ComplexRing>, y: &Series<ComplexRing>, scale: &[f64]) -> f64 {
    x.coeffs()
        .iter()
        .zip(y.coeffs())
        .zip(scale)
        .map(|((a, b), s)| (a - b).norm() / s.max(1.0))
        .fold(0.0, f64::max)
}

fn series_group_complex(g: &mut ChaCha8Rng) -> Result<f64> {
    let r = ComplexRing::default();
    let order = g.gen_range(1..=32);
    let f = random_unit_series(&r, order, g);
    let h = random_unit_series(&r, order, g);
    let k = random_unit_series(&r, order, g);
    let (mf, mh, mk) = (magnitudes(f.as_series()), magnitudes(h.as_series()), magnitudes(k.as_series()));
    let finv = f.invert();
    let mfinv = magnitudes(finv.as_series());
    let one = UnitSeries::one(r, order);
    let triple = abs_conv(&abs_conv(&mf, &mh), &mk);
    Ok([
        scaled_gap(f.mul(&h)?.mul(&k)?.as_series(), f.mul(&h.mul(&k)?)?.as_series(), &triple),
        scaled_gap(f.mul(&h)?.as_series(), h.mul(&f)?.as_series(), &abs_conv(&mf, &mh)),
        scaled_gap(f.mul(&finv)?.as_series(), one.as_series(), &abs_conv(&mf, &mfinv)),
        scaled_gap(finv.mul(&f)?.as_series(), one.as_series(), &abs_conv(&mfinv, &mf)),
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

fn ring_axioms(r: &mut Runner) {
    let n = r.count(100, 1000);
    let m = r.count(50, 500);
    let poly = PolyRing::new(RationalRing, ["a", "b"]);
    r.exact("coefficient-axioms/Q", n, |g, _| Ok(coefficient_axioms(&RationalRing, g)));
    r.exact("coefficient-axioms/Z", n, |g, _| Ok(coefficient_axioms(&IntegerRing, g)));
    r.exact("coefficient-axioms/Zmod:7", n, |g, _| Ok(coefficient_axioms(&zmod(7), g)));
    r.exact("coefficient-axioms/Zmod:6", n, |g, _| Ok(coefficient_axioms(&zmod(6), g)));
    r.exact("coefficient-axioms/C", n, |g, _| Ok(coefficient_axioms(&ComplexRing::default(), g)));
    r.exact("coefficient-axioms/Q[a,b]", n, |g, _| Ok(coefficient_axioms(&poly, g)));
    r.exact("int-scale/Q", 50, |g, _| Ok(int_scale_oracle(&RationalRing, g)));
    r.exact("int-scale/Z", 50, |g, _| Ok(int_scale_oracle(&IntegerRing, g)));
    r.exact("int-scale/Zmod:6", 50, |g, _| Ok(int_scale_oracle(&zmod(6), g)));
    r.exact("int-scale/C", 50, |g, _| Ok(int_scale_oracle(&ComplexRing::default(), g)));
    r.exact("int-divide/Q", 50, |g, _| int_divide_round_trip(&RationalRing, g));
    r.exact("int-divide/C", 50, |g, _| int_divide_round_trip(&ComplexRing::default(), g));
    r.exact("mobius-divisor-sum", 1, |_, _| {
        Ok((1..=1000u64).all(|n| {
            let s: i32 = (1..=n).filter(|d| n % d == 0).map(mobius).sum();
            s == i32::from(n == 1)
        }))
    });
    r.exact("series-group/Q", m, |g, _| series_group(&RationalRing, g));
    r.exact("series-group/Z", m, |g, _| series_group(&IntegerRing, g));
    r.exact("series-group/Zmod:7", m, |g, _| series_group(&zmod(7), g));
    r.exact("series-group/Zmod:6", m, |g, _| series_group(&zmod(6), g));
    r.numeric("series-group/C", m, 1e-13, |g, _| series_group_complex(g));
    r.exact("exp-log-round-trip", r.count(5, 30), |g, _| {
        let order = g.gen_range(1..=64);
        let coords = ExpForm::from_fn(RationalRing, order, |_| RationalRing.sample(g));
        let f = random_unit_series(&RationalRing, order, g);
        Ok(coords.exp()?.log()?.agrees_with(&coords) && f.log()?.exp()?.agrees_with(&f))
    });
    r.exact("log-derivative-of-exp", r.count(10, 50), |g, _| {
        let order = g.gen_range(1..=24);
        let coords = ExpForm::from_fn(RationalRing, order, |_| RationalRing.sample(g));
        Ok(coords.exp()?.log_derivative().agrees_with(&coords.derivative()))
    });
    r.exact("exp-truncate-multiplicative", r.count(10, 50), |g, _| {
        let order = g.gen_range(2..=20);
        let m = g.gen_range(1..order);
        let f = random_unit_series(&RationalRing, order, g);
        let h = random_unit_series(&RationalRing, order, g);
        Ok(f.mul(&h)?.exp_truncate(m)?.agrees_with(&f.exp_truncate(m)?.mul(&h.exp_truncate(m)?)?))
    });
    r.exact("mobius-product", 24, |_, i| {
        let order = i + 1;
        let mut prod = UnitSeries::one(RationalRing, order);
        for k in 1..=order {
            let mu = mobius(k as u64);
            if mu != 0 {
                let factor = UnitSeries::one_minus_monomial(RationalRing, order, k);
                prod = prod.mul(&factor.fractional_power(&q(-mu as i64, k as i64))?)?;
            }
        }
        let exp_x = ExpForm::from_fn(RationalRing, order, |i| if i == 1 { q(1, 1) } else { q(0, 1) });
        Ok(prod.agrees_with(&exp_x.exp()?))
    });
}

// ---- ene-axioms -----------------------------------------------------------

fn ene_ring_laws<R: Ring>(r: &R, g: &mut ChaCha8Rng, order: usize) -> Result<bool> {
    let f = random_unit_series(r, order, g);
    let h = random_unit_series(r, order, g);
    let k = random_unit_series(r, order, g);
    let unit = UnitSeries::one_minus_x(r.clone(), order);
    let zero = UnitSeries::one(r.clone(), order);
    Ok(ene(&f.mul(&h)?, &k)?.agrees_with(&ene(&f, &k)?.mul(&ene(&h, &k)?)?)
        && ene(&ene(&f, &h)?, &k)?.agrees_with(&ene(&f, &ene(&h, &k)?)?)
        && ene(&f, &h)?.agrees_with(&ene(&h, &f)?)
        && ene(&unit, &f)?.agrees_with(&f)
        && ene(&zero, &f)?.agrees_with(&zero))
}

fn ene_axioms(r: &mut Runner) {
    let n = r.count(25, 500);
    r.exact("ene-ring/Q", n, |g, _| ene_ring_laws(&RationalRing, g, 16));
    r.exact("ene-ring/Z", n, |g, _| ene_ring_laws(&IntegerRing, g, 16));
    r.exact("ene-ring/Zmod:7", n, |g, _| ene_ring_laws(&zmod(7), g, 16));
    r.exact("ene-ring/Zmod:6", n, |g, _| ene_ring_laws(&zmod(6), g, 16));
    r.exact("ene-ring/C", n, |g, _| ene_ring_laws(&complex_tight(), g, 16));

    let mut printed_coprime = (0usize, 0usize);
    r.exact("scaling-laws", r.count(10, 50), |g, _| {
        let order = 12;
        let f = random_unit_series(&RationalRing, order, g);
        let h = random_unit_series(&RationalRing, order, g);
        let fh = ene(&f, &h)?;
        let a = random_nonzero_rational(g);
        let argument = ene(&f.scale_argument(&a), &h)?.agrees_with(&fh.scale_argument(&a));
        let k = g.gen_range(2..=3usize);
        let l = if k == 2 { 3 } else { 2 };
        let same = ene(&f.substitute_power(k), &h.substitute_power(k))?
            .agrees_with(&fh.substitute_power(k).powi(k as i64));
        let lhs = ene(&f.substitute_power(k), &h.substitute_power(l))?;
        let coprime = lhs.agrees_with(&ene(&hecke(l, &f)?, &hecke(k, &h)?)?.substitute_power(k * l));
        printed_coprime.0 += 1;
        if lhs.agrees_with(&fh.substitute_power(k * l)) {
            printed_coprime.1 += 1;
        }
        Ok(argument && same && coprime)
    });
    r.note(format!(
        "f(X^k)*g(X^l) = (T(l)f * T(k)g)(X^(kl)) for gcd(k,l)=1; the form (f*g)(X^(kl)) held on {} of {} cases",
        printed_coprime.1, printed_coprime.0
    ));

    let cap = r.cache.cap();
    let cache = r.cache;
    r.exact("four-way-agreement", r.count(20, 200), |g, _| {
        let order = g.gen_range(1..=12.min(cap));
        let (dp, dq) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let (alphas, p) = random_rational_rooted(dp, order, g);
        let (betas, qq) = random_rational_rooted(dq, order, g);
        let a = ene_exp(&p, &qq)?;
        let b = ene_universal_with(cache, &p, &qq)?;
        let c = ene_tensor(&p, &qq, order)?;
        let d = ene_roots(&RationalRing, &alphas, &betas, order)?;
        Ok(a.agrees_with(&b) && a.agrees_with(&c) && a.agrees_with(&d))
    });

    let top = match r.size {
        Size::Small => 10,
        Size::Full => 12,
    }
    .min(cap);
    r.exact("universal-structure", top, |_, i| {
        let poly = cache.get(i + 1)?;
        poly.check_structure()?;
        Ok(true)
    });

    r.exact("ene-inverse", r.count(20, 100), |g, _| {
        let f = random_with_nonzero_log(&RationalRing, 8, g);
        Ok(ene(&ene_inverse(&f)?, &f)?.agrees_with(&UnitSeries::one_minus_x(RationalRing, 8)))
    });
    r.exact("zero-divisor-witness", 8, |g, i| {
        let k = i + 1;
        let f = ExpForm::from_fn(RationalRing, 16, |j| q(i64::from(j == k), 1)).exp()?;
        let verdict = is_zero_divisor(&f)?;
        let first_gap = if k == 1 { 2 } else { 1 };
        let regular = random_with_nonzero_log(&RationalRing, 16, g);
        Ok(verdict.is_zero_divisor
            && verdict.witness == Some(first_gap)
            && !is_zero_divisor(&regular)?.is_zero_divisor)
    });
}

// ---- main-formula ---------------------------------------------------------

fn main_formula(r: &mut Runner) {
    let n = r.count(20, 200);
    r.exact("main-formula", n, |g, _| {
        let f = random_unit_series(&RationalRing, 16, g);
        let h = random_unit_series(&RationalRing, 16, g);
        let lhs = ene(&f, &h)?.exp_log_derivative()?;
        let rhs = ene(&h, &f.exp_log_derivative()?)?;
        Ok(lhs.agrees_with(&rhs))
    });
    r.exact("convolution-formula", n, |g, _| {
        convolution_check(&random_unit_series(&RationalRing, 16, g)).map(|_| true)
    });
    r.exact("exp-linear-action", r.count(10, 50), |g, _| {
        let f = random_unit_series(&RationalRing, 16, g);
        let a = random_nonzero_rational(g);
        let e = ExpForm::from_fn(RationalRing, 16, |i| if i == 1 { a.clone() } else { q(0, 1) }).exp()?;
        let c = -&a * f.coeff(1);
        let expect = ExpForm::from_fn(RationalRing, 16, |i| if i == 1 { c.clone() } else { q(0, 1) }).exp()?;
        Ok(ene(&f, &e)?.agrees_with(&expect))
    });
    r.exact("exp-monomial-action", r.count(12, 60), |g, i| {
        let k = i % 6 + 1;
        let f = random_unit_series(&RationalRing, 16, g);
        let a = random_nonzero_rational(g);
        let e = ExpForm::from_fn(RationalRing, 16, |j| if j == k { a.clone() } else { q(0, 1) }).exp()?;
        let c = -&a * f.log()?.coeff(k) * q(k as i64, 1);
        let expect = ExpForm::from_fn(RationalRing, 16, |j| if j == k { c.clone() } else { q(0, 1) }).exp()?;
        Ok(ene(&f, &e)?.agrees_with(&expect))
    });
}

// ---- hadamard -------------------------------------------------------------

fn hadamard(r: &mut Runner) {
    let n = r.count(20, 200);
    r.exact("log-derivative-product", n, |g, _| {
        let f = random_unit_series(&RationalRing, 16, g);
        let h = random_unit_series(&RationalRing, 16, g);
        let lhs = ene(&f, &h)?.log_derivative();
        let rhs = f.log_derivative().hadamard(&h.log_derivative())?.neg();
        Ok(lhs.agrees_with(&rhs))
    });
    r.exact("koebe-twist", n, |g, _| {
        let f = ExpForm::from_fn(RationalRing, 16, |_| RationalRing.sample(g));
        let h = ExpForm::from_fn(RationalRing, 16, |_| RationalRing.sample(g));
        let rhs = koebe(RationalRing, 16).hadamard(&f)?.hadamard(&h)?.neg();
        Ok(f.ene(&h)?.agrees_with(&rhs))
    });
    r.exact("derivative-isomorphism", n, |g, _| {
        let f = ExpForm::from_fn(RationalRing, 16, |_| RationalRing.sample(g));
        let h = ExpForm::from_fn(RationalRing, 16, |_| RationalRing.sample(g));
        let rhs = f.derivative().hadamard(&h.derivative())?.neg();
        Ok(f.ene(&h)?.derivative().agrees_with(&rhs))
    });
}

// ---- operators ------------------------------------------------------------

fn pairs(max: usize) -> Vec<(usize, usize)> {
    (1..=max).flat_map(|a| (1..=max).map(move |b| (a, b))).collect()
}

fn operators(r: &mut Runner) {
    let qr = RationalRing;
    let grid = pairs(6);
    r.exact("weierstrass-products", grid.len(), |_, i| {
        let (a, b) = grid[i];
        let lhs = ene(&weierstrass_factor(a, 36, &qr)?, &weierstrass_factor(b, 36, &qr)?)?;
        Ok(lhs.agrees_with(&weierstrass_factor(a.max(b), 36, &qr)?))
    });
    let mut lcm_only = Vec::new();
    r.exact("cyclotomic-products", grid.len(), |_, i| {
        let (a, b) = grid[i];
        let (l, d) = (a.lcm(&b), a.gcd(&b));
        let lhs = ene(&cyclotomic_like(a, 36, &qr)?, &cyclotomic_like(b, 36, &qr)?)?;
        let over_q = lhs.agrees_with(&cyclotomic_like(l, 36, &qr)?.powi(d as i64));
        if !lhs.agrees_with(&cyclotomic_like(l, 36, &qr)?) {
            lcm_only.push(format!("({a},{b})"));
        }
        let z = IntegerRing;
        let over_z = ene(&cyclotomic_like(a, 36, &z)?, &cyclotomic_like(b, 36, &z)?)?
            .agrees_with(&cyclotomic_like(l, 36, &z)?.powi(d as i64));
        Ok(over_q && over_z)
    });
    r.note(format!(
        "I_N*I_M = I_lcm^gcd; I_N*I_M = I_lcm fails exactly on gcd > 1 pairs: {}",
        lcm_only.join(" ")
    ));
    r.exact("weierstrass-action", r.count(12, 60), |g, i| {
        let k = i % 6 + 1;
        let f = random_unit_series(&qr, 16, g);
        let rhs = f.mul(&f.invert().exp_truncate(k)?)?;
        Ok(ene(&weierstrass_factor(k, 16, &qr)?, &f)?.agrees_with(&rhs))
    });
    let coprime: Vec<(usize, usize)> = grid.iter().copied().filter(|(a, b)| a.gcd(b) == 1).collect();
    r.exact("hecke-multiplicative", coprime.len(), |g, i| {
        let (a, b) = coprime[i];
        let f = random_unit_series(&qr, 36, g);
        Ok(hecke(a, &hecke(b, &f)?)?.agrees_with(&hecke(a * b, &f)?))
    });
    r.exact("hecke-as-dilation", 6 * r.count(2, 10), |g, i| {
        let k = i % 6 + 1;
        let f = random_unit_series(&qr, 36, g);
        let via = dilate_int(k, &ene_by_in(k, &f)?)?;
        Ok(via.agrees_with(&FractionalSeries::from(hecke(k, &f)?)))
    });
    r.exact("exp-truncate-homomorphism", r.count(12, 60), |g, i| {
        let k = i % 6 + 1;
        let f = random_unit_series(&qr, 16, g);
        let h = random_unit_series(&qr, 16, g);
        let ene_ok = ene(&f, &h)?
            .exp_truncate(k)?
            .agrees_with(&ene(&f.exp_truncate(k)?, &h.exp_truncate(k)?)?);
        let mul_ok = f
            .mul(&h)?
            .exp_truncate(k)?
            .agrees_with(&f.exp_truncate(k)?.mul(&h.exp_truncate(k)?)?);
        Ok(ene_ok && mul_ok)
    });
    let lambdas = [q(2, 1), q(3, 1), q(1, 5), q(2, 7), q(5, 3), q(7, 2)];
    let cases: Vec<(usize, BigRational)> = (1..=4)
        .flat_map(|n| lambdas.iter().map(move |l| (n, l.clone())))
        .filter(|(n, l)| l.denom().gcd(&BigInt::from(*n)).is_one())
        .collect();
    r.exact("hecke-dilation-commute", cases.len(), |g, i| {
        let (n, lambda) = &cases[i];
        let f = FractionalSeries::from(random_unit_series(&qr, 30, g));
        let a = f.hecke(*n)?.dilate(lambda)?;
        let b = f.dilate(lambda)?.hecke(*n)?;
        Ok(a.agrees_with(&b))
    });
    r.exact("exp-polynomial-degree", r.count(8, 40), |g, i| {
        let deg = i % 4;
        let p: Vec<BigRational> = (0..=deg).map(|_| qr.sample(g)).collect();
        let e = ExpForm::from_fn(qr, 12, |j| p.get(j - 1).cloned().unwrap_or_else(|| q(0, 1))).exp()?;
        let f = random_unit_series(&qr, 12, g);
        let log = ene(&e, &f)?.log()?;
        Ok((deg + 2..=12).all(|j| log.coeff(j).is_zero()))
    });

    let cache = r.cache;
    let mut printed_differs = Vec::new();
    r.exact("artin-hasse-range", 2, |g, i| {
        let p = [2u64, 3][i];
        let order = (p * p) as usize;
        let f = random_with_nonzero_log(&qr, order, g);
        let brute = ene_universal_with(cache, &artin_hasse(p, order, &qr)?, &f)?;
        let log = f.log()?;
        let printed = ExpForm::from_fn(qr, order, |j| {
            let mut pk = p as usize;
            while pk < j {
                pk *= p as usize;
            }
            if pk == j {
                -log.coeff(j).clone()
            } else {
                q(0, 1)
            }
        })
        .exp()?;
        if let Some(index) = printed.first_difference(&brute) {
            printed_differs.push(format!("p={p}: k>=1 differs at X^{index}"));
        }
        Ok(artin_hasse_action(p, &f)?.agrees_with(&brute))
    });
    let note = format!(
        "brute force confirms exp_p*f = exp(-sum_{{k>=0}} F_{{p^k}} X^{{p^k}}); {}",
        if printed_differs.is_empty() {
            "the range k>=1 also matched".to_string()
        } else {
            printed_differs.join("; ")
        }
    );
    r.note(note);
}

// ---- rational -------------------------------------------------------------

/// Random rational function with the given zero and pole counts.
fn rooted_pair(
    g: &mut ChaCha8Rng,
    zeros: usize,
    poles: usize,
) -> (Vec<BigRational>, Vec<BigRational>, RationalPair<RationalRing>) {
    let (za, num) = random_rational_rooted(zeros, zeros.max(1), g);
    let (pa, den) = random_rational_rooted(poles, poles.max(1), g);
    let pair = RationalPair::new(num, den).expect("unit polynomials");
    (za, pa, pair)
}

fn product_poly(a: &[BigRational], b: &[BigRational]) -> Result<UnitSeries<RationalRing>> {
    let d = (a.len() * b.len()).max(1);
    Ok(ene_roots(&RationalRing, a, b, d)?.as_polynomial_at(a.len() * b.len()))
}

fn same_poly(a: &UnitSeries<RationalRing>, b: &UnitSeries<RationalRing>) -> bool {
    let d = a.degree().max(b.degree());
    a.as_polynomial_at(d).agrees_with(&b.as_polynomial_at(d))
}

fn inverse_closed(g: &mut ChaCha8Rng) -> UnitSeries<RationalRing> {
    let pairs = g.gen_range(1..=2);
    let mut roots = Vec::new();
    for _ in 0..pairs {
        let a = random_nonzero_rational(g);
        roots.push(a.recip());
        roots.push(a);
    }
    UnitSeries::from_roots(RationalRing, roots.len(), &roots).expect("nonzero roots")
}

fn symbolic_palindromic(
    ring: &PolyRing<RationalRing>,
    var: usize,
    g: &mut ChaCha8Rng,
) -> UnitSeries<PolyRing<RationalRing>> {
    let d = g.gen_range(1..=3);
    let coeffs = (0..=d)
        .map(|i| {
            if i == 0 || i == d {
                ring.one()
            } else {
                let c = ring.constant(q(g.gen_range(-3..=3), 1));
                let v = ring.scale_i64(g.gen_range(-2..=2), &ring.var(var));
                ring.add(&c, &v)
            }
        })
        .collect();
    UnitSeries::new(Series::new(ring.clone(), coeffs)).expect("constant term 1")
}

fn rational(r: &mut Runner) {
    let n = r.count(20, 100);
    r.exact("pole-zero-calculus", n, |g, _| {
        let (p1, q1, p2, q2) = (g.gen_range(0..=3), g.gen_range(0..=3), g.gen_range(0..=3), g.gen_range(0..=3));
        let (za, pa, a) = rooted_pair(g, p1, q1);
        let (zb, pb, b) = rooted_pair(g, p2, q2);
        let out = ene_rational(&a, &b)?;
        let (tn, td) = (p1 * p2 + q1 * q2, p1 * q2 + q1 * p2);
        let num = product_poly(&za, &zb)?.as_polynomial_at(tn).mul(&product_poly(&pa, &pb)?.as_polynomial_at(tn))?;
        let den = product_poly(&za, &pb)?.as_polynomial_at(td).mul(&product_poly(&pa, &zb)?.as_polynomial_at(td))?;
        Ok(same_poly(&out.num, &num) && same_poly(&out.den, &den))
    });
    r.exact("degree-law", n, |g, _| {
        let (p1, q1, p2, q2) = (g.gen_range(0..=3), g.gen_range(0..=3), g.gen_range(0..=3), g.gen_range(0..=3));
        let (_, _, a) = rooted_pair(g, p1, q1);
        let (_, _, b) = rooted_pair(g, p2, q2);
        let d = ene_rational(&a, &b)?.degree();
        let expect = if p1.min(q1) * p2.min(q2) == 0 {
            p1.max(q1) * p2.max(q2)
        } else {
            (p1 * p2 + q1 * q2).max(p1 * q2 + q1 * p2)
        };
        Ok(d == expect)
    });
    r.exact("shifted-ring", n, |g, _| {
        let shifted = |g: &mut ChaCha8Rng| {
            let d = g.gen_range(0..=3);
            ShiftedPoly::new(g.gen_range(0..=2), random_unit_series(&RationalRing, d.max(1), g).as_polynomial_at(d))
        };
        let (a, b, c) = (shifted(g), shifted(g), shifted(g));
        let comm = ene_shifted(&a, &b)?.equals(&ene_shifted(&b, &a)?);
        let dist = ene_shifted(&a.mul(&b)?, &c)?.equals(&ene_shifted(&a, &c)?.mul(&ene_shifted(&b, &c)?)?);
        Ok(comm && dist)
    });
    let poly = PolyRing::new(RationalRing, ["a", "b"]);
    r.exact("inversion", r.count(20, 200), |g, i| {
        if i % 2 == 0 {
            verify_inversion(&symbolic_palindromic(&poly, 0, g), &symbolic_palindromic(&poly, 1, g))
        } else {
            verify_inversion(&inverse_closed(g), &inverse_closed(g))
        }
    });
}

// ---- analytic -------------------------------------------------------------

fn analytic(r: &mut Runner) {
    let c = ComplexRing::default();
    let opts = RootOptions {
        seed: r.seed,
        ..RootOptions::default()
    };
    r.numeric("zero-products", r.count(20, 200), 1e-6, |g, _| {
        let (_, p) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, g);
        let (_, qq) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, g);
        Ok(verify_zero_products(&p, &qq, 1e-6, &opts)?.max_mismatch)
    });
    r.exact("radius-inequality", r.count(100, 1000), |g, _| {
        let (_, p) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, g);
        let (_, qq) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, g);
        Ok(radius_inequality_check(&p, &qq, &opts)?.pass)
    });
    r.numeric("genus-one", r.count(5, 20), 1e-9, |g, _| {
        let factor = |g: &mut ChaCha8Rng| {
            let zeros: Vec<Complex64> = (0..g.gen_range(1..=3))
                .map(|_| random_complex_in_annulus(1.0, 2.0, g))
                .collect();
            let a = random_complex_in_annulus(0.0, 1.0, g);
            GenusFactorization::new(1, vec![a], ZeroSet::simple(&zeros)?)
        };
        let (f, h) = (factor(g)?, factor(g)?);
        Ok(genus_factorization_ene(&f, &h, 12, 1e-9)?.max_difference)
    });
    r.numeric("weierstrass-factors", 4 * r.count(2, 10), 1e-9, |g, i| {
        let rho = i % 4;
        let a = random_complex_in_annulus(0.5, 2.0, g);
        let b = random_complex_in_annulus(0.5, 2.0, g);
        let lhs = ene(&weierstrass_at(rho, a, 12)?, &weierstrass_at(rho, b, 12)?)?;
        let rhs = weierstrass_at(rho, a * b, 12)?;
        Ok(relative_gap(&lhs, &rhs))
    });
    r.numeric("cross-layer", r.count(20, 100), 1e-12, |g, _| {
        let f = random_unit_series(&RationalRing, 8, g);
        let h = random_unit_series(&RationalRing, 8, g);
        let exact = ene(&f, &h)?;
        let embed = |s: &UnitSeries<RationalRing>| {
            UnitSeries::new(Series::from_fn(c, s.order(), |i| {
                c.from_rational(s.coeff(i)).expect("rationals embed")
            }))
        };
        let float = ene(&embed(&f)?, &embed(&h)?)?;
        Ok(relative_gap(embed(&exact)?.as_series(), &float))
    });
}

fn relative_gap(a: &Series<ComplexRing>, b: &Series<ComplexRing>) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm() / 1f64.max(x.norm()).max(y.norm()))
        .fold(0.0, f64::max)
}
