use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::random::random_unit_series;
use crate::ring::{mobius, ComplexRing, IntegerRing, ModularRing, RationalRing};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn qs(cs: &[i64]) -> Series<RationalRing> {
    Series::new(RationalRing, cs.iter().map(|&c| q(c, 1)).collect())
}

fn qu(cs: &[i64]) -> UnitSeries<RationalRing> {
    UnitSeries::new(qs(cs)).unwrap()
}

#[test]
fn mul_examples() {
    let p = qu(&[1, -1, 0, 0]).mul(&qu(&[1, 1, 0, 0])).unwrap();
    assert!(p.agrees_with(&qs(&[1, 0, -1, 0])));
    let f = qu(&[1, 2, 3]);
    assert!(f.mul(&UnitSeries::one(RationalRing, 2)).unwrap().agrees_with(&f));
    // direct convolution: (1 + X + X^2)(1 - X) = 1 - X^3
    let p = qu(&[1, 1, 1]).mul(&qu(&[1, -1, 0])).unwrap();
    assert!(p.agrees_with(&qs(&[1, 0, 0])));
}

#[test]
fn mul_truncates_to_min_order() {
    let p = qu(&[1, 1, 1, 1, 1]).mul(&qu(&[1, 1])).unwrap();
    assert_eq!(p.order(), 1);
}

#[test]
fn invert_examples() {
    let g = qu(&[1, -1, 0, 0, 0, 0]).invert();
    assert!(g.agrees_with(&qs(&[1, 1, 1, 1, 1, 1])));
    assert!(UnitSeries::one(RationalRing, 3).invert().agrees_with(&qs(&[1, 0, 0, 0])));
    let g = qu(&[1, 1, 0, 0, 0]).invert();
    assert!(g.agrees_with(&qs(&[1, -1, 1, -1, 1])));
}

#[test]
fn log_examples() {
    let n = 8;
    let f = UnitSeries::one_minus_x(RationalRing, n).log().unwrap();
    for i in 1..=n {
        assert_eq!(f.coeff(i), &q(-1, i as i64));
    }
    let z = UnitSeries::one(RationalRing, 5).log().unwrap();
    assert!(z.coeffs().iter().all(|c| c == &q(0, 1)));
    // oracle: log(1 + X) = X - X^2/2 + X^3/3
    let l = qu(&[1, 1, 0, 0]).log().unwrap();
    assert_eq!(l.coeffs()[1..], [q(1, 1), q(-1, 2), q(1, 3)]);
}

#[test]
fn exp_examples() {
    assert!(ExpForm::from_tail(RationalRing, vec![q(0, 1); 4])
        .exp()
        .unwrap()
        .agrees_with(&qs(&[1, 0, 0, 0, 0])));
    let n = 10;
    let log_one_minus_x = ExpForm::from_fn(RationalRing, n, |i| q(-1, i as i64));
    let e = log_one_minus_x.exp().unwrap();
    assert!(e.agrees_with(&UnitSeries::one_minus_x(RationalRing, n)));
    let a = q(3, 2);
    let e = ExpForm::from_fn(RationalRing, 6, |i| if i == 1 { a.clone() } else { q(0, 1) })
        .exp()
        .unwrap();
    let mut fact = q(1, 1);
    for k in 0..=6i64 {
        if k > 0 {
            fact *= q(k, 1);
        }
        let expected = num_traits::pow(a.clone(), k as usize) / fact.clone();
        assert_eq!(e.coeff(k as usize), &expected);
    }
}

#[test]
fn log_rejects_non_q_algebras() {
    let f = UnitSeries::one_minus_x(ModularRing::new(7).unwrap(), 4);
    assert!(matches!(f.log(), Err(EneError::NotQAlgebra { .. })));
    let f = UnitSeries::one_minus_x(IntegerRing, 4);
    assert!(matches!(f.exp_log_derivative(), Err(EneError::NotQAlgebra { .. })));
}

#[test]
fn log_exp_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1, 5, 17, 64] {
        let f = random_unit_series(&RationalRing, n, &mut rng);
        let back = f.log().unwrap().exp().unwrap();
        assert!(back.agrees_with(&f), "order {n}");
        let big = ExpForm::from_fn(RationalRing, n, |_| RationalRing.sample(&mut rng));
        let again = big.exp().unwrap().log().unwrap();
        assert!(again.agrees_with(&big), "order {n}");
    }
}

#[test]
fn log_derivative_examples() {
    let d = UnitSeries::one_minus_x(RationalRing, 6).log_derivative();
    assert_eq!(d.order(), 5);
    assert!(d.agrees_with(&qs(&[-1, -1, -1, -1, -1, -1])));
    let d = UnitSeries::one(RationalRing, 4).log_derivative();
    assert!(d.agrees_with(&qs(&[0, 0, 0, 0])));
}

#[test]
fn log_derivative_is_additive_over_any_ring() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ring = ModularRing::new(6).unwrap();
    for _ in 0..50 {
        let f = random_unit_series(&ring, 10, &mut rng);
        let g = random_unit_series(&ring, 10, &mut rng);
        let lhs = f.mul(&g).unwrap().log_derivative();
        let rhs = f.log_derivative().add(&g.log_derivative()).unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn log_derivative_of_exp_is_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let f = ExpForm::from_fn(RationalRing, 12, |_| RationalRing.sample(&mut rng));
        let lhs = f.exp().unwrap().log_derivative();
        assert!(lhs.agrees_with(&f.derivative()));
    }
}

#[test]
fn exp_log_derivative_examples() {
    assert!(UnitSeries::one(RationalRing, 5)
        .exp_log_derivative()
        .unwrap()
        .agrees_with(&qs(&[1, 0, 0, 0, 0, 0])));
    // oracle: X 𝒟(1-X) = -X/(1-X) = -(X + X^2 + ...), then exponentiate
    let n = 7;
    let lhs = UnitSeries::one_minus_x(RationalRing, n).exp_log_derivative().unwrap();
    let rhs = ExpForm::from_fn(RationalRing, n, |_| q(-1, 1)).exp().unwrap();
    assert!(lhs.agrees_with(&rhs));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let f = random_unit_series(&RationalRing, 9, &mut rng);
        let g = random_unit_series(&RationalRing, 9, &mut rng);
        let lhs = f.mul(&g).unwrap().exp_log_derivative().unwrap();
        let rhs = f
            .exp_log_derivative()
            .unwrap()
            .mul(&g.exp_log_derivative().unwrap())
            .unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn argument_scaling_and_power_substitution() {
    let f = qs(&[1, 1, 1]);
    assert!(f.scale_argument(&q(1, 1)).agrees_with(&f));
    assert!(f.scale_argument(&q(0, 1)).agrees_with(&qs(&[1, 0, 0])));
    assert!(f.scale_argument(&q(2, 1)).agrees_with(&qs(&[1, 2, 4])));
    assert!(f.substitute_power(1).agrees_with(&f));
    assert!(qs(&[1, -1, 0]).substitute_power(2).agrees_with(&qs(&[1, 0, -1])));
    let f = qs(&[1, 1, 1, 0, 0, 0, 0]);
    assert!(f.substitute_power(3).agrees_with(&qs(&[1, 0, 0, 1, 0, 0, 1])));
}

#[test]
fn truncate_contract() {
    let f = qs(&[1, 2, 3, 4]);
    assert!(f.truncate(3).unwrap().agrees_with(&f));
    assert!(f.truncate(1).unwrap().agrees_with(&qs(&[1, 2])));
    assert_eq!(f.truncate(1).unwrap().order(), 1);
    let twice = f.truncate(2).unwrap().truncate(2).unwrap();
    assert!(twice.agrees_with(&f.truncate(2).unwrap()));
    assert!(f.truncate(4).is_err());
}

#[test]
fn exp_truncate_examples() {
    let n = 8;
    // E_3-like input: exp of terms beyond X^3 only
    let high = ExpForm::from_fn(RationalRing, n, |i| if i > 3 { q(1, i as i64) } else { q(0, 1) });
    let f = high.exp().unwrap();
    assert!(f
        .exp_truncate(3)
        .unwrap()
        .agrees_with(&UnitSeries::one(RationalRing, n)));
    assert!(f.exp_truncate(n).unwrap().agrees_with(&f));
    let t = UnitSeries::one_minus_x(RationalRing, n).exp_truncate(2).unwrap();
    let expected =
        ExpForm::from_tail(RationalRing, [vec![q(-1, 1), q(-1, 2)], vec![q(0, 1); n - 2]].concat())
            .exp()
            .unwrap();
    assert!(t.agrees_with(&expected));
}

#[test]
fn exp_truncate_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in 1..6 {
        let f = random_unit_series(&RationalRing, 10, &mut rng);
        let g = random_unit_series(&RationalRing, 10, &mut rng);
        let lhs = f.mul(&g).unwrap().exp_truncate(m).unwrap();
        let rhs = f
            .exp_truncate(m)
            .unwrap()
            .mul(&g.exp_truncate(m).unwrap())
            .unwrap();
        assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn hadamard_examples() {
    let f = qs(&[3, -1, 4, 1, 5]);
    let ones = qs(&[1, 1, 1, 1, 1]);
    assert!(f.hadamard(&ones).unwrap().agrees_with(&f));
    let zero = Series::zero(RationalRing, 4);
    assert!(f.hadamard(&zero).unwrap().agrees_with(&zero));
    let k = koebe(RationalRing, 5);
    assert!(k.hadamard(&k).unwrap().agrees_with(&qs(&[0, 1, 4, 9, 16, 25])));
}

#[test]
fn koebe_coefficients() {
    let k = koebe(ModularRing::new(7).unwrap(), 9);
    assert_eq!(k.coeff(0), &0);
    assert_eq!(k.coeff(1), &1);
    assert_eq!(k.coeff(4), &4);
    assert_eq!(k.coeff(9), &2);
}

#[test]
fn mobius_product_for_exp() {
    // exp(X) = Π (1 - X^n)^{-μ(n)/n}
    for n in [1usize, 6, 13, 24] {
        let mut acc = UnitSeries::one(RationalRing, n);
        for k in 1..=n {
            let mu = mobius(k as u64);
            if mu == 0 {
                continue;
            }
            let factor = UnitSeries::one_minus_monomial(RationalRing, n, k)
                .fractional_power(&q(-mu as i64, k as i64))
                .unwrap();
            acc = acc.mul(&factor).unwrap();
        }
        let exp_x = ExpForm::from_fn(RationalRing, n, |i| if i == 1 { q(1, 1) } else { q(0, 1) })
            .exp()
            .unwrap();
        assert!(acc.agrees_with(&exp_x), "order {n}");
    }
}

#[test]
fn pretty_printing() {
    assert_eq!(qs(&[1, -3, 2]).pretty(), "1 - 3*X + 2*X^2 + O(X^3)");
    assert_eq!(qs(&[1, -6, 0, 0, 0]).pretty(), "1 - 6*X + O(X^5)");
    assert_eq!(qs(&[0, 1, -1]).pretty(), "X - X^2 + O(X^3)");
    assert_eq!(Series::zero(RationalRing, 1).pretty(), "0 + O(X^2)");
    let half = Series::new(RationalRing, vec![q(1, 1), q(-1, 2)]);
    assert_eq!(half.pretty(), "1 - 1/2*X + O(X^2)");
    let m = Series::new(ModularRing::new(7).unwrap(), vec![1, 6, 3]);
    assert_eq!(m.pretty(), "1 + 6*X + 3*X^2 + O(X^3)");
}

#[test]
fn json_round_trip() {
    let f = Series::new(RationalRing, vec![q(1, 1), q(-1, 2), q(3, 1)]);
    let j = f.to_json();
    assert_eq!(j.coeffs, vec!["1", "-1/2", "3"]);
    let back = Series::from_json(&RationalRing, &j).unwrap();
    assert!(back.agrees_with(&f));
    let c = ComplexRing::default();
    let cf = Series::new(c, vec![c.one(), num_complex::Complex64::new(0.5, -2.0)]);
    let text = serde_json::to_string(&cf.to_json()).unwrap();
    assert_eq!(
        text,
        r#"{"ring":{"kind":"complex-float","eps":1e-9},"order":1,"coeffs":["[1, 0]","[0.5, -2]"]}"#
    );
    let parsed: SeriesJson = serde_json::from_str(&text).unwrap();
    assert!(Series::from_json(&c, &parsed).unwrap().agrees_with(&cf));
    assert!(Series::from_json(&RationalRing, &parsed).is_err());
}

#[test]
fn unit_series_requires_constant_one() {
    assert!(UnitSeries::new(qs(&[2, 1])).is_err());
    assert!(UnitSeries::new(qs(&[1, 1])).is_ok());
}
