//! Seeded samplers for the property and identity suites.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use crate::ring::{ComplexRing, RationalRing, Ring};
use crate::series::{ExpForm, UnitSeries};

pub fn random_unit_series<R: Ring, G: Rng + ?Sized>(
    ring: &R,
    order: usize,
    rng: &mut G,
) -> UnitSeries<R> {
    let tail = (0..order).map(|_| ring.sample(rng)).collect();
    UnitSeries::from_tail(ring.clone(), tail)
}

/// Random series whose exponential coordinates `F_1..F_N` are all nonzero.
pub fn random_with_nonzero_log<R: Ring, G: Rng + ?Sized>(
    ring: &R,
    order: usize,
    rng: &mut G,
) -> UnitSeries<R> {
    let coords = ExpForm::from_fn(ring.clone(), order, |_| loop {
        let c = ring.sample(rng);
        if !ring.is_zero_divisor(&c) {
            break c;
        }
    });
    coords.exp().expect("caller passes a Q-algebra")
}

/// A nonzero rational with small numerator and denominator.
pub fn random_nonzero_rational<G: Rng + ?Sized>(rng: &mut G) -> BigRational {
    loop {
        let p: i64 = rng.gen_range(-4..=4);
        if p != 0 {
            return BigRational::new(p.into(), rng.gen_range(1i64..=3).into());
        }
    }
}

/// `degree` random nonzero rational roots and `Π (1 - X/α)` at `order`.
pub fn random_rational_rooted<G: Rng + ?Sized>(
    degree: usize,
    order: usize,
    rng: &mut G,
) -> (Vec<BigRational>, UnitSeries<RationalRing>) {
    let roots: Vec<_> = (0..degree).map(|_| random_nonzero_rational(rng)).collect();
    let poly = UnitSeries::from_roots(RationalRing, order, &roots).expect("nonzero roots");
    (roots, poly)
}

/// A complex number with modulus in `[rmin, rmax]` and uniform argument.
pub fn random_complex_in_annulus<G: Rng + ?Sized>(rmin: f64, rmax: f64, rng: &mut G) -> Complex64 {
    let r = rng.gen_range(rmin..=rmax);
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// `degree` random complex roots in the annulus and `Π (1 - z/α)`.
pub fn random_complex_rooted<G: Rng + ?Sized>(
    ring: ComplexRing,
    degree: usize,
    rmin: f64,
    rmax: f64,
    rng: &mut G,
) -> (Vec<Complex64>, UnitSeries<ComplexRing>) {
    let roots: Vec<_> = (0..degree)
        .map(|_| random_complex_in_annulus(rmin, rmax, rng))
        .collect();
    let poly = UnitSeries::from_roots(ring, degree, &roots).expect("nonzero roots");
    (roots, poly)
}
