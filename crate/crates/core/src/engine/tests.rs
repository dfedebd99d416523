use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::random::{random_rational_rooted, random_unit_series, random_with_nonzero_log};
use crate::ring::{IntegerRing, ModularRing, PolyRing, RationalRing};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qpoly(coeffs: &[i64]) -> UnitSeries<RationalRing> {
    UnitSeries::new(Series::new(RationalRing, coeffs.iter().map(|&c| q(c, 1)).collect())).unwrap()
}

fn exp_monomial(a: BigRational, n: usize, order: usize) -> UnitSeries<RationalRing> {
    ExpForm::from_fn(RationalRing, order, |i| if i == n { a.clone() } else { q(0, 1) })
        .exp()
        .unwrap()
}

#[test]
fn exponential_path_examples() {
    let e = exp_monomial(q(1, 1), 1, 8);
    assert!(ene_exp(&e, &e).unwrap().agrees_with(&exp_monomial(q(-1, 1), 1, 8)));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_unit_series(&RationalRing, 8, &mut rng);
    let unit = UnitSeries::one_minus_x(RationalRing, 8);
    assert!(ene_exp(&f, &unit).unwrap().agrees_with(&f));

    let a = exp_monomial(q(3, 2), 2, 10);
    let b = exp_monomial(q(-5, 1), 3, 10);
    assert!(ene_exp(&a, &b).unwrap().agrees_with(&UnitSeries::one(RationalRing, 10)));

    let modular = UnitSeries::one_minus_x(ModularRing::new(7).unwrap(), 3);
    assert!(matches!(ene_exp(&modular, &modular), Err(EneError::NotQAlgebra { .. })));
}

#[test]
fn universal_low_coefficients_are_the_printed_ones() {
    let ring = PolyRing::new(RationalRing, ["a1", "a2", "a3", "b1", "b2", "b3"]);
    let f = UnitSeries::from_tail(ring.clone(), (0..3).map(|i| ring.var(i)).collect());
    let g = UnitSeries::from_tail(ring.clone(), (3..6).map(|i| ring.var(i)).collect());
    let c = ene_universal(&f, &g).unwrap();
    let expect = [
        "-a1*b1",
        "-2*a2*b2 + a2*b1^2 + a1^2*b2",
        "-3*a3*b3+3*a3*b1*b2-a3*b1^3+3*a1*a2*b3-a1*a2*b1*b2-a1^3*b3",
    ];
    for (k, text) in expect.iter().enumerate() {
        let want = ring.parse(text).unwrap();
        assert!(ring.equal(c.coeff(k + 1), &want), "c_{}", k + 1);
    }
}

#[test]
fn universal_over_zmod6_by_hand() {
    // Every term of Q_2 contains X2 or Y2, so at a = b = (1, 0) in Z:
    // c_1 = -Q_1 = -1 and c_2 = Q_2 = 0. Reduced mod 6: (1, 5, 0).
    let r = ModularRing::new(6).unwrap();
    let f = UnitSeries::from_tail(r, vec![1, 0]);
    let c = ene_universal(&f, &f).unwrap();
    assert_eq!(c.coeffs(), &[1, 5, 0]);
    assert_eq!(ene_witt(&f, &f).unwrap().coeffs(), &[1, 5, 0]);
}

#[test]
fn third_universal_polynomial_matches_printed_form() {
    let q3 = generate_univ_poly(3).unwrap();
    let ring = q3.ring();
    let c3 = ring
        .parse("-3*X3*Y3+3*X3*Y1*Y2-X3*Y1^3+3*X1*X2*Y3-X1*X2*Y1*Y2-X1^3*Y3")
        .unwrap();
    assert!(ring.equal(&ring.neg(&c3), &q3.as_poly()));
}

#[test]
fn all_paths_agree_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let f = random_unit_series(&RationalRing, 9, &mut rng);
        let g = random_unit_series(&RationalRing, 9, &mut rng);
        let e = ene_exp(&f, &g).unwrap();
        assert!(e.agrees_with(&ene_universal(&f, &g).unwrap()));
        assert!(e.agrees_with(&ene_witt(&f, &g).unwrap()));
    }
    for m in [6u64, 7, 8, 11] {
        let r = ModularRing::new(m).unwrap();
        for _ in 0..20 {
            let f = random_unit_series(&r, 10, &mut rng);
            let g = random_unit_series(&r, 10, &mut rng);
            assert!(ene_witt(&f, &g).unwrap().agrees_with(&ene_universal(&f, &g).unwrap()));
        }
    }
    for _ in 0..10 {
        let f = random_unit_series(&IntegerRing, 10, &mut rng);
        let g = random_unit_series(&IntegerRing, 10, &mut rng);
        assert!(ene(&f, &g).unwrap().agrees_with(&ene_universal(&f, &g).unwrap()));
    }
}

#[test]
fn witt_coordinates_rebuild_the_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = ModularRing::new(12).unwrap();
    let f = random_unit_series(&r, 12, &mut rng);
    let w = witt_coordinates(&f);
    let mut acc = UnitSeries::one(r, 12);
    for (n, wn) in w.iter().enumerate().skip(1) {
        let mut factor = UnitSeries::one(r, 12).into_series().into_coeffs();
        factor[n] = r.neg(wn);
        acc = acc.mul(&UnitSeries::new(Series::new(r, factor)).unwrap()).unwrap();
    }
    assert!(acc.agrees_with(&f));
}

#[test]
fn roots_path_examples() {
    let (a, b) = (q(2, 1), q(-3, 5));
    let one = ene_roots(&RationalRing, &[a.recip()], &[b.recip()], 3).unwrap();
    assert!(one.agrees_with(&UnitSeries::linear(RationalRing, 3, &(&a * &b))));

    let got = ene_roots(&RationalRing, &[q(1, 1), q(1, 2)], &[q(1, 3)], 3).unwrap();
    assert!(got.agrees_with(&qpoly(&[1, -9, 18, 0])));

    let empty = ene_roots(&RationalRing, &[q(1, 1)], &[], 4).unwrap();
    assert!(empty.agrees_with(&UnitSeries::one(RationalRing, 4)));
    assert!(ene_roots(&RationalRing, &[q(0, 1)], &[q(1, 1)], 2).is_err());
}

#[test]
fn companion_matrix_shapes() {
    let ring = PolyRing::new(RationalRing, ["a1", "a2"]);
    let (a1, a2) = (ring.var(0), ring.var(1));
    let lin = UnitSeries::from_tail(ring.clone(), vec![a1.clone()]);
    let m = companion_matrix(&lin).unwrap();
    assert_eq!(m.dim(), 1);
    assert!(ring.equal(m.get(0, 0), &ring.neg(&a1)));

    let quad = UnitSeries::from_tail(ring.clone(), vec![a1.clone(), a2.clone()]);
    let m = companion_matrix(&quad).unwrap();
    let expect = [[ring.zero(), ring.neg(&a2)], [ring.one(), ring.neg(&a1)]];
    for i in 0..2 {
        for j in 0..2 {
            assert!(ring.equal(m.get(i, j), &expect[i][j]));
        }
    }
    assert!(det_series(&m, 2).unwrap().agrees_with(&quad));
    assert!(matches!(
        companion_matrix(&UnitSeries::one(RationalRing, 3)),
        Err(EneError::ZeroPolynomialTail(_))
    ));
}

#[test]
fn companion_determinant_recovers_random_cubics() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let mut p = random_unit_series(&RationalRing, 3, &mut rng);
        while p.degree() != 3 {
            p = random_unit_series(&RationalRing, 3, &mut rng);
        }
        let m = companion_matrix(&p).unwrap();
        assert!(det_series(&m, 6).unwrap().agrees_with(&p.as_polynomial_at(6)));
    }
}

#[test]
fn kronecker_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = RationalRing;
    let rand_matrix = |rng: &mut ChaCha8Rng, d| RingMatrix::from_fn(r, d, |_, _| r.sample(rng));
    let n = rand_matrix(&mut rng, 3);
    let two = RingMatrix::from_rows(r, vec![vec![q(2, 1)]]);
    let k = kronecker(&two, &n).unwrap();
    assert!(k.equals(&RingMatrix::from_fn(r, 3, |i, j| n.get(i, j) * q(2, 1))));
    for _ in 0..20 {
        let (a, b) = (rand_matrix(&mut rng, 2), rand_matrix(&mut rng, 2));
        assert_eq!(kronecker(&a, &b).unwrap().trace(), a.trace() * b.trace());
    }
    let id = kronecker(&RingMatrix::identity(r, 2), &RingMatrix::identity(r, 3)).unwrap();
    assert!(id.equals(&RingMatrix::identity(r, 6)));
}

fn leibniz3(r: &ModularRing, m: &RingMatrix<ModularRing>) -> Vec<u64> {
    // det(I - MX) for 3x3 by expanding the six permutations of I - MX, whose
    // entries are linear polynomials in X.
    let entry = |i: usize, j: usize| -> [u64; 2] {
        let c0 = if i == j { 1 } else { 0 };
        [c0, r.neg(m.get(i, j))]
    };
    let perms = [
        ([0, 1, 2], false),
        ([0, 2, 1], true),
        ([1, 0, 2], true),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([2, 1, 0], true),
    ];
    let mut out = vec![0u64; 4];
    for (p, odd) in perms {
        let mut poly = vec![1u64];
        for (i, &j) in p.iter().enumerate() {
            let e = entry(i, j);
            let mut next = vec![0u64; poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] = r.add(&next[k], &r.mul(c, &e[0]));
                next[k + 1] = r.add(&next[k + 1], &r.mul(c, &e[1]));
            }
            poly = next;
        }
        for (k, c) in poly.iter().enumerate() {
            out[k] = if odd { r.sub(&out[k], c) } else { r.add(&out[k], c) };
        }
    }
    out
}

#[test]
fn determinant_examples() {
    let r = RationalRing;
    assert!(det_series(&RingMatrix::zero(r, 3), 5)
        .unwrap()
        .agrees_with(&UnitSeries::one(r, 5)));
    let d = RingMatrix::diagonal(r, &[q(2, 1), q(-1, 3)]);
    let expect = UnitSeries::linear(r, 4, &q(2, 1))
        .mul(&UnitSeries::linear(r, 4, &q(-1, 3)))
        .unwrap();
    assert!(det_series(&d, 4).unwrap().agrees_with(&expect));

    let m7 = ModularRing::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let m = RingMatrix::from_fn(m7, 3, |_, _| rng.gen_range(0..7));
        assert_eq!(berkowitz(&m), leibniz3(&m7, &m));
    }
}

#[test]
fn tensor_path_examples() {
    let r = RationalRing;
    let (a, b) = (q(3, 2), q(-4, 1));
    let got = ene_tensor(&UnitSeries::linear(r, 3, &a), &UnitSeries::linear(r, 3, &b), 3).unwrap();
    assert!(got.agrees_with(&UnitSeries::linear(r, 3, &(&a * &b))));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let (_, p) = random_rational_rooted(2, 2, &mut rng);
        let (_, s) = random_rational_rooted(2, 2, &mut rng);
        assert_eq!(ene_tensor(&p, &s, 8).unwrap().degree(), 4);
    }

    let m11 = ModularRing::new(11).unwrap();
    for _ in 0..10 {
        let p = UnitSeries::from_tail(m11, vec![rng.gen_range(0..11), rng.gen_range(0..11), rng.gen_range(1..11)]);
        let s = UnitSeries::from_tail(m11, vec![rng.gen_range(0..11), rng.gen_range(0..11), rng.gen_range(1..11)]);
        let t = ene_tensor(&p, &s, 10).unwrap();
        let u = ene_universal(&p.as_polynomial_at(10), &s.as_polynomial_at(10)).unwrap();
        assert!(t.agrees_with(&u));
    }
    let one = UnitSeries::one(r, 3);
    assert!(ene_tensor(&one, &qpoly(&[1, 2, 3, 0]), 3).unwrap().agrees_with(&one));
}

#[test]
fn dispatch_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = ModularRing::new(9).unwrap();
    for _ in 0..10 {
        let f = random_unit_series(&RationalRing, 8, &mut rng);
        let g = random_unit_series(&RationalRing, 8, &mut rng);
        let one = UnitSeries::one(RationalRing, 8);
        assert!(ene(&f, &one).unwrap().agrees_with(&one));
        let lhs = ene(&f.invert(), &g.invert()).unwrap();
        assert!(lhs.agrees_with(&ene(&f, &g).unwrap()));
        let a = RationalRing.sample(&mut rng);
        let lin = UnitSeries::linear(RationalRing, 8, &a);
        assert!(ene(&lin, &f).unwrap().agrees_with(&f.scale_argument(&a)));

        let f = random_unit_series(&m, 8, &mut rng);
        let g = random_unit_series(&m, 8, &mut rng);
        let lhs = ene(&f.invert(), &g.invert()).unwrap();
        assert!(lhs.agrees_with(&ene(&f, &g).unwrap()));
        let a: u64 = rng.gen_range(0..9);
        let lin = UnitSeries::linear(m, 8, &a);
        assert!(ene(&lin, &f).unwrap().agrees_with(&f.scale_argument(&a)));
    }
    let a = UnitSeries::one(ModularRing::new(5).unwrap(), 2);
    let b = UnitSeries::one(ModularRing::new(7).unwrap(), 2);
    assert!(matches!(ene(&a, &b), Err(EneError::RingMismatch { .. })));
}

#[test]
fn inverse_examples() {
    let unit = UnitSeries::one_minus_x(RationalRing, 8);
    assert!(ene_inverse(&unit).unwrap().agrees_with(&unit));
    let e = exp_monomial(q(1, 1), 1, 8);
    assert_eq!(ene_inverse(&e).unwrap_err(), EneError::NotInvertibleCoefficient(2));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let f = random_with_nonzero_log(&RationalRing, 8, &mut rng);
        let g = ene_inverse(&f).unwrap();
        assert!(ene(&f, &g).unwrap().agrees_with(&UnitSeries::one_minus_x(RationalRing, 8)));
    }
}

#[test]
fn zero_divisor_examples() {
    let v = is_zero_divisor(&UnitSeries::one_minus_x(RationalRing, 12)).unwrap();
    assert!(!v.is_zero_divisor);
    let v = is_zero_divisor(&exp_monomial(q(1, 1), 1, 6)).unwrap();
    assert_eq!((v.is_zero_divisor, v.witness), (true, Some(2)));
    let all = ExpForm::from_fn(RationalRing, 10, |_| q(1, 1)).exp().unwrap();
    assert!(!is_zero_divisor(&all).unwrap().is_zero_divisor);
}

#[test]
fn power_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f = random_unit_series(&RationalRing, 8, &mut rng);
    assert!(ene_pow(&f, 1).unwrap().agrees_with(&f));
    let unit = UnitSeries::one_minus_x(RationalRing, 8);
    assert!(ene_pow(&unit, 5).unwrap().agrees_with(&unit));
    assert!(ene_pow(&f, 3).unwrap().agrees_with(&ene(&ene(&f, &f).unwrap(), &f).unwrap()));
    for _ in 0..5 {
        let f = random_unit_series(&RationalRing, 8, &mut rng);
        let g = random_unit_series(&RationalRing, 8, &mut rng);
        let lhs = ene_pow(&f.mul(&g).unwrap(), 2).unwrap();
        let fg = ene(&f, &g).unwrap();
        let rhs = ene_pow(&f, 2)
            .unwrap()
            .mul(&fg.mul(&fg).unwrap())
            .unwrap()
            .mul(&ene_pow(&g, 2).unwrap())
            .unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
    let m = ModularRing::new(4).unwrap();
    let f = random_unit_series(&m, 6, &mut rng);
    let cube = ene(&ene(&f, &f).unwrap(), &f).unwrap();
    assert!(ene_pow(&f, 3).unwrap().agrees_with(&cube));
}
