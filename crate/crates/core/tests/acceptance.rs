//! Acceptance run: one line per criterion, at the stated sizes and tolerances.

use std::sync::OnceLock;

use ene_core::analytic::{poly_roots, radius_inequality_check, verify_zero_products, RootOptions};
use ene_core::engine::{ene_universal_with, generate_univ_polys, UnivCache, DEFAULT_QCAP};
use ene_core::random::{random_complex_rooted, random_with_nonzero_log};
use ene_core::ring::{ComplexRing, PolyRing, RationalRing, Ring};
use ene_core::series::{ExpForm, UnitSeries};
use ene_core::transforms::artin_hasse_action;
use ene_core::verify::{self, Report, Size, Suite};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240917;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the criterion as stated is false; the analysis is asserted instead.
    analysed: Option<bool>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        analysed: None,
    }
}

fn cache() -> &'static UnivCache {
    static CACHE: OnceLock<UnivCache> = OnceLock::new();
    CACHE.get_or_init(|| UnivCache::new(DEFAULT_QCAP, None))
}

fn suite(s: Suite) -> Report {
    verify::run(s, SEED, Size::Full, cache())
}

fn checks(report: &Report, names: &[&str]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in names {
        let c = report.check(name).unwrap_or_else(|| panic!("missing check {name}"));
        pass &= c.pass;
        let mut part = format!("{name} {}/{}", if c.pass { "ok" } else { "FAILED" }, c.cases);
        if let Some(m) = c.max_mismatch {
            part.push_str(&format!(" max {m:.1e}"));
        }
        if let Some(f) = &c.failure {
            part.push_str(&format!(" ({f})"));
        }
        parts.push(part);
    }
    outcome(pass, parts.join(", "))
}

fn printed_coefficients() -> Outcome {
    let ring = PolyRing::new(RationalRing, ["a1", "a2", "a3", "b1", "b2", "b3"]);
    let f = UnitSeries::from_tail(ring.clone(), (0..3).map(|i| ring.var(i)).collect());
    let g = UnitSeries::from_tail(ring.clone(), (3..6).map(|i| ring.var(i)).collect());
    let c = ene_universal_with(cache(), &f, &g).expect("symbolic product");
    let printed = [
        "-a_1 b_1",
        "-2a_2 b_2 +a_2 b_1^2+a_1^2 b_2",
        "-3a_3 b_3 +3a_3 b_1 b_2 -a_3 b_1^3 +3a_1 a_2 b_3 -a_1 a_2 b_1 b_2 -a_1^3 b_3",
    ];
    let canonical = [
        "-a1*b1",
        "-2*a2*b2 + a2*b1^2 + a1^2*b2",
        "-3*a3*b3 + 3*a3*b1*b2 + 3*a1*a2*b3 - a3*b1^3 - a1*a2*b1*b2 - a1^3*b3",
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for k in 0..3 {
        let from_printed = ring.format(&ring.parse(&latex_to_text(printed[k])).expect("printed polynomial"));
        let computed = ring.format(c.coeff(k + 1));
        let ok = computed == from_printed && computed == canonical[k];
        pass &= ok;
        parts.push(format!("c{}={computed}", k + 1));
    }
    outcome(pass, parts.join("; "))
}

/// `-2a_2 b_2 +a_2 b_1^2` to `-2*a2*b2 + a2*b1^2`.
fn latex_to_text(s: &str) -> String {
    let mut out = String::new();
    let mut prev_factor = false;
    let chars: Vec<char> = s.chars().filter(|c| *c != '_').collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            'a' | 'b' => {
                if prev_factor {
                    out.push('*');
                }
                out.push(c);
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    out.push(chars[i]);
                    i += 1;
                }
                if i < chars.len() && chars[i] == '^' {
                    out.push('^');
                    out.push(chars[i + 1]);
                    i += 2;
                }
                prev_factor = true;
                continue;
            }
            d if d.is_ascii_digit() => {
                out.push(d);
                prev_factor = true;
            }
            '+' | '-' => {
                out.push(' ');
                out.push(c);
                out.push(' ');
                prev_factor = false;
            }
            _ => {}
        }
        i += 1;
    }
    out
}

fn q_structure() -> Outcome {
    let polys = generate_univ_polys(10).expect("generation");
    let mut pass = true;
    let mut terms = Vec::new();
    for q in &polys {
        let p = q.p();
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let mut lead_ok = false;
        for (m, c) in q.terms() {
            let (x, y) = m.0.split_at(p);
            let wx: usize = x.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum();
            let wy: usize = y.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum();
            pass &= wx == p && wy == p && !c.is_zero();
            let is_lead = x[p - 1] == 1 && y[p - 1] == 1;
            if is_lead {
                lead_ok = c * sign == (-(p as i64)).into();
            }
        }
        pass &= lead_ok;
        let integral = q.as_poly().terms().all(|(_, c)| c.is_integer());
        pass &= integral;
        terms.push(q.terms().len().to_string());
    }
    outcome(pass, format!("p=1..10 term counts {}", terms.join(",")))
}

fn analytic_layer(report: &Report) -> Outcome {
    let c = ComplexRing::default();
    let opts = RootOptions::default();
    let mut g = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut radius_ok = 0;
    let mut products_ok = 0;
    for _ in 0..200 {
        let (_, p) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, &mut g);
        let (_, q) = random_complex_rooted(c, g.gen_range(1..=5), 0.5, 2.0, &mut g);
        let zp = verify_zero_products(&p, &q, 1e-6, &opts).expect("zero products");
        worst = worst.max(zp.max_mismatch);
        products_ok += usize::from(zp.pass);
        radius_ok += usize::from(radius_inequality_check(&p, &q, &opts).expect("radii").pass);
    }
    let genus = report.check("genus-one").expect("genus check");
    let pass = products_ok == 200 && radius_ok == 200 && genus.pass;
    outcome(
        pass,
        format!(
            "zero products {products_ok}/200 max {worst:.1e}; radius inequality {radius_ok}/200; genus-one {}/{} max {:.1e}",
            if genus.pass { genus.cases } else { 0 },
            genus.cases,
            genus.max_mismatch.unwrap_or(f64::NAN)
        ),
    )
}

fn artin_hasse() -> Outcome {
    let qr = RationalRing;
    let mut g = ChaCha8Rng::seed_from_u64(SEED);
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [2u64, 3] {
        let order = (p * p) as usize;
        let powers: Vec<usize> = std::iter::successors(Some(1usize), |k| Some(k * p as usize))
            .take_while(|&k| k <= order)
            .collect();
        let range = |from: usize, f: &UnitSeries<RationalRing>| {
            let log = f.log().expect("log");
            ExpForm::from_fn(qr, order, |j| {
                if powers[from..].contains(&j) {
                    -log.coeff(j).clone()
                } else {
                    BigRational::zero()
                }
            })
            .exp()
            .expect("exp")
        };
        let (mut from_zero, mut from_one, mut shipped) = (0, 0, 0);
        let cases = 20;
        for _ in 0..cases {
            let f = random_with_nonzero_log(&qr, order, &mut g);
            let ah = ene_core::transforms::artin_hasse(p, order, &qr).expect("series");
            let brute = ene_universal_with(cache(), &ah, &f).expect("universal");
            from_zero += usize::from(range(0, &f).agrees_with(&brute));
            from_one += usize::from(range(1, &f).agrees_with(&brute));
            shipped += usize::from(artin_hasse_action(p, &f).expect("action").agrees_with(&brute));
        }
        pass &= from_zero == cases && shipped == cases;
        parts.push(format!(
            "p={p} order {order}: k>=0 matches brute force {from_zero}/{cases}, shipped {shipped}/{cases}, printed k>=1 {from_one}/{cases}"
        ));
    }
    outcome(pass, parts.join("; "))
}

fn operators(report: &Report) -> Outcome {
    let mut o = checks(
        report,
        &["weierstrass-products", "weierstrass-action", "hecke-multiplicative", "hecke-as-dilation"],
    );
    let cyc = report.check("cyclotomic-products").expect("cyclotomic check");
    let note = cyc.note.clone().unwrap_or_default();
    let failing: Vec<&str> = note.split(": ").last().unwrap_or("").split(' ').filter(|s| !s.is_empty()).collect();
    let gcd_pairs: Vec<String> = (1..=6usize)
        .flat_map(|a| (1..=6usize).map(move |b| (a, b)))
        .filter(|&(a, b)| num_integer::gcd(a, b) > 1)
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    let explained = cyc.pass && failing.len() == gcd_pairs.len() && gcd_pairs.iter().all(|p| failing.contains(&p.as_str()));
    o.detail.push_str(&format!(
        "; I_N*I_M = I_lcm holds on {}/36 pairs and fails on every gcd > 1 pair; I_lcm^gcd holds on 36/36: {}",
        36 - failing.len(),
        if cyc.pass { "yes" } else { "no" }
    ));
    o.analysed = Some(o.pass && explained);
    o.pass = o.pass && failing.is_empty();
    o
}

fn criterion_lines() -> Vec<(usize, &'static str, Outcome)> {
    let ene_axioms = suite(Suite::EneAxioms);
    let main = suite(Suite::MainFormula);
    let ops = suite(Suite::Operators);
    let hadamard = suite(Suite::Hadamard);
    let rational = suite(Suite::Rational);
    let analytic = suite(Suite::Analytic);
    let rings: Vec<String> = ["Q", "Z", "Zmod:7", "Zmod:6", "C"].iter().map(|r| format!("ene-ring/{r}")).collect();
    let ring_names: Vec<&str> = rings.iter().map(String::as_str).collect();
    vec![
        (1, "printed coefficients", printed_coefficients()),
        (2, "four-algorithm agreement", checks(&ene_axioms, &["four-way-agreement"])),
        (3, "ene ring axioms", checks(&ene_axioms, &ring_names)),
        (4, "main and convolution formulas", checks(&main, &["main-formula", "convolution-formula"])),
        (5, "operator identities", operators(&ops)),
        (6, "hadamard relations", checks(&hadamard, &["log-derivative-product", "koebe-twist"])),
        (7, "universal polynomial structure", q_structure()),
        (8, "inverse and zero divisors", checks(&ene_axioms, &["ene-inverse", "zero-divisor-witness"])),
        (9, "rational layer", checks(&rational, &["pole-zero-calculus", "inversion"])),
        (10, "analytic layer", analytic_layer(&analytic)),
        (11, "artin-hasse index range", artin_hasse()),
    ]
}

#[test]
fn acceptance_criteria() {
    let mut ok = true;
    for (n, name, o) in criterion_lines() {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {name}: {status}: {}", o.detail);
        ok &= o.pass || o.analysed == Some(true);
    }
    assert!(ok, "a criterion failed without the recorded analysis");
}

#[test]
fn latex_conversion() {
    assert_eq!(latex_to_text("-2a_2 b_2 +a_2 b_1^2"), " - 2*a2*b2 + a2*b1^2");
}

#[test]
fn roots_of_small_product_are_pairwise() {
    let c = ComplexRing::default();
    let p = ene_core::expr::eval_str("(1 - 2*X) @ (1 - 3*X)", &c, 4).unwrap();
    let z = poly_roots(&p, &RootOptions::default()).unwrap();
    assert!((z.expanded()[0].re - 1.0 / 6.0).abs() < 1e-12);
}
