//! Numerical checks over the complex numbers: polynomial roots, radius
//! estimates, the root-product description of `⋆`, and finite-genus
//! Hadamard–Weierstrass factorizations.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::engine::ene;
use crate::error::{EneError, Result};
use crate::rational::ene_poly;
use crate::ring::{ComplexRing, GaussianRing};
use crate::series::{ExpForm, Series, UnitSeries};

/// A radius of convergence or zero modulus; polynomials and entire
/// functions report `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Infinite,
}

impl Radius {
    pub fn min(self, other: Radius) -> Radius {
        match (self, other) {
            (Radius::Finite(a), Radius::Finite(b)) => Radius::Finite(a.min(b)),
            (Radius::Infinite, x) | (x, Radius::Infinite) => x,
        }
    }

    pub fn mul(self, other: Radius) -> Radius {
        match (self, other) {
            (Radius::Finite(a), Radius::Finite(b)) => Radius::Finite(a * b),
            _ => Radius::Infinite,
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }

    /// `self ≥ other` up to a relative tolerance.
    pub fn at_least(self, other: Radius, rel: f64) -> bool {
        match (self, other) {
            (Radius::Infinite, _) => true,
            (Radius::Finite(_), Radius::Infinite) => false,
            (Radius::Finite(a), Radius::Finite(b)) => a >= b * (1.0 - rel),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(r) => s.serialize_f64(*r),
            Radius::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Distinct nonzero zeros with multiplicities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroSet {
    zeros: Vec<(Complex64, usize)>,
}

impl ZeroSet {
    pub fn new(zeros: Vec<(Complex64, usize)>) -> Result<Self> {
        if zeros.iter().any(|(z, _)| z.norm() == 0.0) {
            return Err(EneError::ZeroRoot("zero set"));
        }
        Ok(ZeroSet {
            zeros: zeros.into_iter().filter(|(_, m)| *m > 0).collect(),
        })
    }

    pub fn simple(zeros: &[Complex64]) -> Result<Self> {
        ZeroSet::new(zeros.iter().map(|&z| (z, 1)).collect())
    }

    pub fn distinct(&self) -> &[(Complex64, usize)] {
        &self.zeros
    }

    /// Zeros repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.zeros
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.zeros.iter().map(|(_, m)| m).sum()
    }

    /// `{α_i β_j}` with multiplicities multiplied.
    pub fn products(&self, other: &ZeroSet) -> ZeroSet {
        let mut out = Vec::with_capacity(self.zeros.len() * other.zeros.len());
        for &(a, m) in &self.zeros {
            for &(b, n) in &other.zeros {
                out.push((a * b, m * n));
            }
        }
        ZeroSet { zeros: out }
    }

    pub fn min_modulus(&self) -> Radius {
        self.zeros
            .iter()
            .map(|(z, _)| Radius::Finite(z.norm()))
            .fold(Radius::Infinite, Radius::min)
    }

    /// `Π (1 - z/α)^m` to the given order.
    pub fn polynomial(&self, ring: ComplexRing, order: usize) -> UnitSeries<ComplexRing> {
        UnitSeries::from_roots(ring, order, &self.expanded()).expect("zeros are nonzero")
    }
}

/// Options for [`poly_roots`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-8,
            max_iter: 200,
            seed: 0,
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

fn abs_eval(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * r + ck.norm())
}

/// Fujiwara's bound `2 max |c_{d-k}/c_d|^{1/k}` (last term halved).
fn fujiwara(c: &[Complex64]) -> f64 {
    let d = c.len() - 1;
    let lead = c[d].norm();
    (1..=d)
        .map(|k| {
            let ratio = c[d - k].norm() / lead;
            let ratio = if k == d { ratio / 2.0 } else { ratio };
            ratio.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

fn aberth(c: &[Complex64], opts: &RootOptions) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let radius = fujiwara(c).max(f64::MIN_POSITIVE);
    let offset = 0.4 + rng.gen_range(0.0..0.2);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + offset))
        .collect();
    let mut done = vec![false; d];
    let mut since_progress = 0;
    for _ in 0..opts.max_iter {
        let mut moved = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            // Backward-stable stop: |p(z)| within rounding of Σ|c_k||z|^k.
            if p.norm() <= 16.0 * f64::EPSILON * abs_eval(c, z[i].norm()) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                moved = true;
            } else {
                z[i] += Complex64::from_polar(radius * 1e-3, rng.gen_range(0.0..std::f64::consts::TAU));
            }
        }
        if done.iter().all(|&x| x) {
            return Ok(z);
        }
        since_progress = if moved { since_progress + 1 } else { 0 };
        if since_progress > 0 && since_progress % 60 == 0 {
            for (zi, di) in z.iter_mut().zip(&done) {
                if !di {
                    let scale = 1e-6 * (1.0 + zi.norm());
                    *zi += Complex64::from_polar(scale, rng.gen_range(0.0..std::f64::consts::TAU));
                }
            }
        }
    }
    Err(EneError::NonConvergence {
        iterations: opts.max_iter,
    })
}

fn cluster(roots: &[Complex64], threshold: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        let near = groups.iter_mut().find(|g| {
            let centre = g.iter().sum::<Complex64>() / g.len() as f64;
            (centre - r).norm() <= threshold * (1.0 + r.norm())
        });
        match near {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<Complex64>() / g.len() as f64, g.len()))
        .collect()
}

/// All roots of a polynomial with nonzero constant term, by Aberth–Ehrlich
/// iteration. Roots closer than `tol^{1/2}` are merged into one zero with
/// multiplicity, then polished.
pub fn poly_roots(p: &Series<ComplexRing>, opts: &RootOptions) -> Result<ZeroSet> {
    let d = p.degree();
    if d == 0 {
        return Err(EneError::invalid("poly_roots", "polynomial has degree 0"));
    }
    let c: Vec<Complex64> = p.coeffs()[..=d].to_vec();
    if c[0].norm() == 0.0 {
        return Err(EneError::ZeroRoot("poly_roots"));
    }
    let roots = aberth(&c, opts)?;
    for r in &roots {
        let (v, _) = horner(&c, *r);
        let scale = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if v.norm() > opts.tol * scale * (1.0 + r.norm()).powi(d as i32) {
            return Err(EneError::NonConvergence {
                iterations: opts.max_iter,
            });
        }
    }
    let zeros = cluster(&roots, opts.tol.sqrt())
        .into_iter()
        .map(|(z, m)| (if m > 1 { polish(&c, z, m) } else { z }, m))
        .collect();
    ZeroSet::new(zeros)
}

/// Newton on the `(m-1)`-th derivative, where an `m`-fold zero is simple.
fn polish(c: &[Complex64], z: Complex64, m: usize) -> Complex64 {
    let mut d = c.to_vec();
    for _ in 1..m {
        d = d.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    }
    let mut best = z;
    let mut best_value = horner(&d, z).0.norm();
    for _ in 0..8 {
        let (v, dv) = horner(&d, best);
        if dv.norm() == 0.0 {
            break;
        }
        let next = best - v / dv;
        let value = horner(&d, next).0.norm();
        if !(value < best_value) {
            break;
        }
        best = next;
        best_value = value;
    }
    best
}

/// Tail-window estimate of the radius of convergence: the reciprocal of
/// `max |f_i|^{1/i}` over the last half of the coefficients.
///
/// Reports `Infinite` when the tail vanishes or when `|f_i|^{1/i}` is clearly
/// decreasing (log-log slope below -1/4), as for entire functions.
pub fn radius_estimate(f: &Series<ComplexRing>) -> Result<Radius> {
    let n = f.order();
    if n < 8 {
        return Err(EneError::OrderTooLarge {
            op: "radius_estimate",
            requested: 8,
            available: n,
        });
    }
    let peak = f.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let floor = 1e-13 * peak;
    let tail: Vec<(f64, f64)> = (n / 2 + 1..=n)
        .filter_map(|i| {
            let a = f.coeff(i).norm();
            (a > floor && a.is_finite()).then(|| ((i as f64).ln(), a.ln() / i as f64))
        })
        .collect();
    if tail.is_empty() {
        return Ok(Radius::Infinite);
    }
    if tail.len() >= 3 {
        let m = tail.len() as f64;
        let (sx, sy) = tail.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = tail.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
            (a + (x - mx) * (y.exp() - my.exp()) / my.exp().max(f64::MIN_POSITIVE), b + (x - mx) * (x - mx))
        });
        let slope = num / den;
        if slope < -0.25 {
            return Ok(Radius::Infinite);
        }
    }
    let max = tail.iter().map(|(_, y)| y.exp()).fold(0.0, f64::max);
    Ok(Radius::Finite(1.0 / max))
}

/// `R̃` of a polynomial: its smallest zero modulus (`Infinite` for `f = 1`).
pub fn ene_radius(p: &Series<ComplexRing>, opts: &RootOptions) -> Result<Radius> {
    if p.degree() == 0 {
        return Ok(Radius::Infinite);
    }
    Ok(poly_roots(p, opts)?.min_modulus())
}

/// `R̃` of a general series: the radius of convergence of `log f`.
pub fn ene_radius_series(f: &UnitSeries<ComplexRing>) -> Result<Radius> {
    radius_estimate(f.log()?.as_series())
}

/// Result of matching computed zeros against expected ones.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroProductReport {
    pub pass: bool,
    pub max_mismatch: f64,
    /// `(expected, found)` pairs as `[re, im]`.
    pub pairs: Vec<([f64; 2], [f64; 2])>,
}

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with potentials). Returns `assignment[row] = column`.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let (mut u, mut v) = (vec![0.0; n + 1], vec![0.0; n + 1]);
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Matches two multisets of points; the mismatch of a pair is relative to
/// `1 + |expected|`.
pub fn match_multisets(expected: &[Complex64], found: &[Complex64], tol: f64) -> ZeroProductReport {
    if expected.len() != found.len() {
        return ZeroProductReport {
            pass: false,
            max_mismatch: f64::INFINITY,
            pairs: Vec::new(),
        };
    }
    let cost: Vec<Vec<f64>> = expected
        .iter()
        .map(|e| found.iter().map(|f| (e - f).norm() / (1.0 + e.norm())).collect())
        .collect();
    let assignment = hungarian(&cost);
    let mut max_mismatch: f64 = 0.0;
    let pairs = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            max_mismatch = max_mismatch.max(cost[i][j]);
            let (e, f) = (expected[i], found[j]);
            ([e.re, e.im], [f.re, f.im])
        })
        .collect();
    ZeroProductReport {
        pass: max_mismatch <= tol,
        max_mismatch,
        pairs,
    }
}

/// `P ⋆ Q` computed exactly on the dyadic values of the float coefficients,
/// then rounded. The float exponential path loses several digits once the
/// zero moduli spread over a factor of 16.
pub fn ene_poly_exact(
    p: &UnitSeries<ComplexRing>,
    q: &UnitSeries<ComplexRing>,
) -> Result<UnitSeries<ComplexRing>> {
    let g = GaussianRing;
    let lift = |s: &UnitSeries<ComplexRing>| -> Result<UnitSeries<GaussianRing>> {
        let coeffs = s.coeffs()[..=s.degree()]
            .iter()
            .map(|&z| g.from_complex(z).ok_or_else(|| EneError::invalid("ene_poly_exact", "non-finite coefficient")))
            .collect::<Result<Vec<_>>>()?;
        UnitSeries::new(Series::new(g, coeffs))
    };
    let out = ene_poly(&lift(p)?, &lift(q)?)?;
    let coeffs = out.coeffs().iter().map(|c| g.to_complex(c)).collect();
    UnitSeries::new(Series::new(*p.ring(), coeffs))
}

/// Compares the zeros of `P ⋆ Q` with the pairwise products of the zeros of
/// `P` and `Q`.
pub fn verify_zero_products(
    p: &UnitSeries<ComplexRing>,
    q: &UnitSeries<ComplexRing>,
    tol: f64,
    opts: &RootOptions,
) -> Result<ZeroProductReport> {
    if p.degree() == 0 || q.degree() == 0 {
        return Err(EneError::invalid("zero-products", "both polynomials need degree ≥ 1"));
    }
    let zp = poly_roots(p, opts)?;
    let zq = poly_roots(q, opts)?;
    let expected = zp.products(&zq).expanded();
    let pq = ene_poly_exact(p, q)?;
    let found = poly_roots(&pq, opts)?.expanded();
    Ok(match_multisets(&expected, &found, tol))
}

/// Both sides of `R̃(f ⋆ g) ≥ R̃(f) R̃(g)` from root products.
#[derive(Debug, Clone, Serialize)]
pub struct RadiusReport {
    pub pass: bool,
    pub lhs: Radius,
    pub rhs: Radius,
    /// Whether the two sides agree to the tolerance.
    pub equality: bool,
}

pub fn radius_inequality_check(
    f: &UnitSeries<ComplexRing>,
    g: &UnitSeries<ComplexRing>,
    opts: &RootOptions,
) -> Result<RadiusReport> {
    const REL: f64 = 1e-9;
    let zeros = |p: &UnitSeries<ComplexRing>| -> Result<ZeroSet> {
        if p.degree() == 0 {
            Ok(ZeroSet::default())
        } else {
            poly_roots(p, opts)
        }
    };
    let (zf, zg) = (zeros(f)?, zeros(g)?);
    let lhs = zf.products(&zg).min_modulus();
    let rhs = zf.min_modulus().mul(zg.min_modulus());
    let equality = match (lhs, rhs) {
        (Radius::Finite(a), Radius::Finite(b)) => (a - b).abs() <= REL * a.max(b),
        (a, b) => a == b,
    };
    Ok(RadiusReport {
        pass: lhs.at_least(rhs, REL),
        lhs,
        rhs,
        equality,
    })
}

/// `e^{F(z)} Π E_ρ(z/α_i)` with `deg F ≤ ρ` and finitely many zeros.
#[derive(Debug, Clone)]
pub struct GenusFactorization {
    pub genus: usize,
    /// `F_1..F_ρ` (`F(0) = 0`).
    pub poly_part: Vec<Complex64>,
    pub zeros: ZeroSet,
}

impl GenusFactorization {
    pub fn new(genus: usize, poly_part: Vec<Complex64>, zeros: ZeroSet) -> Result<Self> {
        if poly_part.len() > genus {
            return Err(EneError::invalid(
                "genus factorization",
                format!("polynomial part has degree {} > genus {genus}", poly_part.len()),
            ));
        }
        Ok(GenusFactorization {
            genus,
            poly_part,
            zeros,
        })
    }

    /// Exponential coordinates: `F_k` for `k ≤ ρ`, `-Σ α_i^{-k}/k` above.
    pub fn log_coordinates(&self, order: usize) -> ExpForm<ComplexRing> {
        let ring = ComplexRing::default();
        ExpForm::from_fn(ring, order, |k| {
            if k <= self.genus {
                self.poly_part.get(k - 1).copied().unwrap_or_default()
            } else {
                let s: Complex64 = self
                    .zeros
                    .distinct()
                    .iter()
                    .map(|&(a, m)| a.powi(-(k as i32)) * m as f64)
                    .sum();
                -s / k as f64
            }
        })
    }

    /// Expansion to the given order.
    pub fn expand(&self, order: usize) -> Result<UnitSeries<ComplexRing>> {
        self.log_coordinates(order).exp()
    }
}

/// Claimed factorization of `f ⋆ g` against the engine on expanded series.
#[derive(Debug, Clone)]
pub struct GenusComparison {
    pub claimed: GenusFactorization,
    pub claimed_series: UnitSeries<ComplexRing>,
    pub direct_series: UnitSeries<ComplexRing>,
    pub max_difference: f64,
    pub pass: bool,
}

/// `f ⋆ g = e^{F ⋆_e G} Π E_ρ(z/α_i β_j)`, checked coefficientwise to `order`
/// with relative tolerance `tol`.
pub fn genus_factorization_ene(
    f: &GenusFactorization,
    g: &GenusFactorization,
    order: usize,
    tol: f64,
) -> Result<GenusComparison> {
    if f.genus != g.genus {
        return Err(EneError::invalid("genus factorization", "genera differ"));
    }
    let rho = f.genus;
    let poly_part: Vec<Complex64> = (1..=rho)
        .map(|k| {
            let a = f.poly_part.get(k - 1).copied().unwrap_or_default();
            let b = g.poly_part.get(k - 1).copied().unwrap_or_default();
            -(k as f64) * a * b
        })
        .collect();
    let claimed = GenusFactorization::new(rho, poly_part, f.zeros.products(&g.zeros))?;
    let claimed_series = claimed.expand(order)?;
    let direct_series = ene(&f.expand(order)?, &g.expand(order)?)?;
    let max_difference = claimed_series
        .coeffs()
        .iter()
        .zip(direct_series.coeffs())
        .map(|(a, b)| (a - b).norm() / (1.0 + a.norm().max(b.norm())))
        .fold(0.0, f64::max);
    Ok(GenusComparison {
        claimed,
        claimed_series,
        direct_series,
        max_difference,
        pass: max_difference <= tol,
    })
}

/// `E_ρ(z/α)` to the given order.
pub fn weierstrass_at(rho: usize, alpha: Complex64, order: usize) -> Result<UnitSeries<ComplexRing>> {
    GenusFactorization::new(rho, Vec::new(), ZeroSet::simple(&[alpha])?)?.expand(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_complex_in_annulus, random_complex_rooted};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_poly(coeffs: &[f64]) -> UnitSeries<ComplexRing> {
        UnitSeries::new(Series::new(
            ComplexRing::default(),
            coeffs.iter().map(|&x| c(x, 0.0)).collect(),
        ))
        .unwrap()
    }

    fn sorted_re(z: &ZeroSet) -> Vec<(f64, usize)> {
        let mut v: Vec<(f64, usize)> = z.distinct().iter().map(|(r, m)| (r.re, *m)).collect();
        v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        v
    }

    #[test]
    fn roots_examples() {
        let opts = RootOptions::default();
        let z = poly_roots(&real_poly(&[1.0, -1.0]), &opts).unwrap();
        assert_eq!(z.count(), 1);
        assert!((z.distinct()[0].0 - c(1.0, 0.0)).norm() < 1e-12);

        let z = poly_roots(&real_poly(&[1.0, -3.0, 2.0]), &opts).unwrap();
        let v = sorted_re(&z);
        assert!((v[0].0 - 0.5).abs() < 1e-12 && (v[1].0 - 1.0).abs() < 1e-12);

        let z = poly_roots(&real_poly(&[1.0, -2.0, 1.0]), &opts).unwrap();
        assert_eq!(z.distinct().len(), 1);
        assert_eq!(z.distinct()[0].1, 2);
        assert!((z.distinct()[0].0 - c(1.0, 0.0)).norm() < 1e-7);

        assert!(poly_roots(&real_poly(&[1.0]), &opts).is_err());
    }

    #[test]
    fn roots_of_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for d in 1..=12 {
            let (roots, p) = random_complex_rooted(ComplexRing::default(), d, 0.5, 2.0, &mut rng);
            let z = poly_roots(&p, &RootOptions::default()).unwrap();
            let rep = match_multisets(&roots, &z.expanded(), 1e-8);
            assert!(rep.pass, "degree {d}: {}", rep.max_mismatch);
        }
    }

    #[test]
    fn hungarian_finds_the_optimum() {
        let cost = vec![
            vec![4.0, 1.0, 3.0],
            vec![2.0, 0.0, 5.0],
            vec![3.0, 2.0, 2.0],
        ];
        let a = hungarian(&cost);
        let total: f64 = a.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
        assert_eq!(total, 5.0);
        let mut best = f64::INFINITY;
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            best = best.min(p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum());
        }
        assert_eq!(total, best);
    }

    #[test]
    fn radius_estimate_examples() {
        let r = ComplexRing::default();
        let geo = Series::from_fn(r, 64, |i| c(2f64.powi(i as i32), 0.0));
        let est = radius_estimate(&geo).unwrap().value().unwrap();
        assert!((est - 0.5).abs() < 0.05);
        let poly = real_poly(&[1.0, 2.0, 3.0]).as_polynomial_at(20);
        assert_eq!(radius_estimate(&poly).unwrap(), Radius::Infinite);
        let exp = ExpForm::from_fn(r, 64, |i| if i == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .exp()
            .unwrap();
        assert_eq!(radius_estimate(&exp).unwrap(), Radius::Infinite);
        assert!(radius_estimate(&real_poly(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn ene_radius_examples() {
        let opts = RootOptions::default();
        let r = ene_radius(&real_poly(&[1.0, -1.0]), &opts).unwrap().value().unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let p = real_poly(&[1.0, -2.0 - 1.0 / 3.0, 2.0 / 3.0]);
        let r = ene_radius(&p, &opts).unwrap().value().unwrap();
        assert!((r - 0.5).abs() < 1e-12);
        assert_eq!(ene_radius(&real_poly(&[1.0]), &opts).unwrap(), Radius::Infinite);
        let geo = UnitSeries::linear(ComplexRing::default(), 40, &c(2.0, 0.0)).invert();
        let series = ene_radius_series(&geo).unwrap().value().unwrap();
        assert!((series - 0.5).abs() < 0.05);
    }

    #[test]
    fn zero_product_examples() {
        let opts = RootOptions::default();
        let one_minus = real_poly(&[1.0, -1.0]);
        let rep = verify_zero_products(&one_minus, &one_minus, 1e-6, &opts).unwrap();
        assert!(rep.pass && rep.pairs.len() == 1);

        let p = real_poly(&[1.0, -3.0, 2.0]);
        let q = real_poly(&[1.0, -3.0]);
        let rep = verify_zero_products(&p, &q, 1e-6, &opts).unwrap();
        assert!(rep.pass);
        let pq = ene_poly(&p, &q).unwrap();
        let expect = real_poly(&[1.0, -9.0, 18.0]);
        assert!(pq.agrees_with(&expect));

        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..10 {
            let (_, p) = random_complex_rooted(ComplexRing::default(), 3, 1.0, 1.0, &mut rng);
            let (_, q) = random_complex_rooted(ComplexRing::default(), 3, 1.0, 1.0, &mut rng);
            let rep = verify_zero_products(&p, &q, 1e-6, &opts).unwrap();
            assert!(rep.pass, "{}", rep.max_mismatch);
        }
    }

    #[test]
    fn zero_products_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let mut worst: f64 = 0.0;
        for _ in 0..60 {
            let (dp, dq) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            let (_, p) = random_complex_rooted(ComplexRing::default(), dp, 0.5, 2.0, &mut rng);
            let (_, q) = random_complex_rooted(ComplexRing::default(), dq, 0.5, 2.0, &mut rng);
            let rep = verify_zero_products(&p, &q, 1e-6, &RootOptions::default()).unwrap();
            worst = worst.max(rep.max_mismatch);
        }
        assert!(worst <= 1e-6, "{worst}");
    }

    #[test]
    fn radius_inequality_examples() {
        let opts = RootOptions::default();
        let rep = radius_inequality_check(&real_poly(&[1.0, -2.0]), &real_poly(&[1.0, 0.5]), &opts).unwrap();
        assert!(rep.pass && rep.equality);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let (_, f) = random_complex_rooted(ComplexRing::default(), 4, 0.5, 2.0, &mut rng);
            let (_, g) = random_complex_rooted(ComplexRing::default(), 3, 0.5, 2.0, &mut rng);
            assert!(radius_inequality_check(&f, &g, &opts).unwrap().pass);
        }
    }

    #[test]
    fn genus_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let a = random_complex_in_annulus(0.5, 2.0, &mut rng);
        let b = random_complex_in_annulus(0.5, 2.0, &mut rng);
        let (al, be) = (random_complex_in_annulus(1.0, 2.0, &mut rng), random_complex_in_annulus(1.0, 2.0, &mut rng));
        let f = GenusFactorization::new(1, vec![a], ZeroSet::simple(&[al]).unwrap()).unwrap();
        let g = GenusFactorization::new(1, vec![b], ZeroSet::simple(&[be]).unwrap()).unwrap();
        let cmp = genus_factorization_ene(&f, &g, 12, 1e-9).unwrap();
        assert!(cmp.pass, "{}", cmp.max_difference);
        assert!((cmp.claimed.poly_part[0] + a * b).norm() < 1e-15);
        assert_eq!(cmp.claimed.zeros.count(), 1);
        assert!(cmp.claimed.poly_part.len() <= 1);

        let f0 = GenusFactorization::new(0, vec![], ZeroSet::simple(&[c(2.0, 0.0)]).unwrap()).unwrap();
        let g0 = GenusFactorization::new(0, vec![], ZeroSet::simple(&[c(0.5, 1.0)]).unwrap()).unwrap();
        assert!(genus_factorization_ene(&f0, &g0, 10, 1e-9).unwrap().pass);
    }

    #[test]
    fn weierstrass_single_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for rho in 0..=3 {
            let a = random_complex_in_annulus(0.5, 2.0, &mut rng);
            let b = random_complex_in_annulus(0.5, 2.0, &mut rng);
            let lhs = ene(&weierstrass_at(rho, a, 12).unwrap(), &weierstrass_at(rho, b, 12).unwrap()).unwrap();
            let rhs = weierstrass_at(rho, a * b, 12).unwrap();
            assert!(lhs.agrees_with(&rhs), "ρ = {rho}");
        }
    }
}
