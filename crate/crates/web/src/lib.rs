//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<String, String>` so
//! the logic is testable off the browser.

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use ene_core::analytic::{poly_roots, verify_zero_products, RootOptions};
use ene_core::engine::UnivCache;
use ene_core::expr::{eval, parse, Expr};
use ene_core::ring::{ComplexRing, IntegerRing, ModularRing, RationalRing, RingDescriptor};
use ene_core::series::UnitSeries;
use ene_core::EneError;

/// Largest `Q_p` the page will generate.
pub const WEB_QCAP: usize = 8;

fn reason(e: EneError) -> String {
    e.to_string()
}

/// Pretty form of `p @ q` over `ring` (`Q`, `Z`, `Zmod:m` or `C`).
pub fn ene_product_text(p: &str, q: &str, ring: &str, order: usize) -> Result<String, String> {
    let side = |name: &str, src: &str| parse(src).map_err(|e| format!("{name}: {e}"));
    let expr = Expr::Ene(Box::new(side("P", p)?), Box::new(side("Q", q)?));
    let desc: RingDescriptor = ring.parse().map_err(reason)?;
    let text = match desc {
        RingDescriptor::BigRational => eval(&expr, &RationalRing, order).map(|s| s.pretty()),
        RingDescriptor::BigInteger => eval(&expr, &IntegerRing, order).map(|s| s.pretty()),
        RingDescriptor::Modular { modulus } => {
            let r = ModularRing::new(modulus).map_err(reason)?;
            eval(&expr, &r, order).map(|s| s.pretty())
        }
        RingDescriptor::ComplexFloat { eps } => {
            let r = ComplexRing::new(eps).map_err(reason)?;
            eval(&expr, &r, order).map(|s| s.pretty())
        }
        _ => return Err(format!("ring {ring} is not offered here")),
    };
    text.map_err(reason)
}

#[derive(Serialize)]
struct ZeroPlot {
    p: Vec<[f64; 2]>,
    q: Vec<[f64; 2]>,
    product: Vec<[f64; 2]>,
    pass: bool,
    max_mismatch: f64,
}

fn complex_poly(src: &str) -> Result<UnitSeries<ComplexRing>, String> {
    let ring = ComplexRing::default();
    let expr = parse(src).map_err(reason)?;
    let s = eval(&expr, &ring, 24).map_err(reason)?;
    let d = s.degree();
    if d == 0 || d > 12 {
        return Err(format!("'{src}' must be a polynomial of degree 1 to 12"));
    }
    UnitSeries::new(s.as_polynomial_at(d)).map_err(reason)
}

fn points(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().map(|z| [z.re, z.im]).collect()
}

/// JSON with the zeros of `p`, `q` and `p @ q`, plus the pairwise-product check.
pub fn zero_products_json(p: &str, q: &str) -> Result<String, String> {
    let (pp, qq) = (complex_poly(p)?, complex_poly(q)?);
    if pp.degree() * qq.degree() > 36 {
        return Err("deg P * deg Q must be at most 36".into());
    }
    let opts = RootOptions::default();
    let report = verify_zero_products(&pp, &qq, 1e-6, &opts).map_err(reason)?;
    let zp = poly_roots(&pp, &opts).map_err(reason)?.expanded();
    let zq = poly_roots(&qq, &opts).map_err(reason)?.expanded();
    let product: Vec<Complex64> = report.pairs.iter().map(|(_, f)| Complex64::new(f[0], f[1])).collect();
    let plot = ZeroPlot {
        p: points(&zp),
        q: points(&zq),
        product: points(&product),
        pass: report.pass,
        max_mismatch: report.max_mismatch,
    };
    serde_json::to_string(&plot).map_err(|e| e.to_string())
}

/// Canonical text of the universal polynomial `Q_p`, for `p <= WEB_QCAP`.
pub fn qpoly_text(p: usize) -> Result<String, String> {
    if p == 0 {
        return Err("p must be at least 1".into());
    }
    let cache = UnivCache::new(WEB_QCAP, None);
    cache.get(p).map(|q| q.to_string()).map_err(reason)
}

#[wasm_bindgen]
pub fn ene_product(p: &str, q: &str, ring: &str, order: usize) -> Result<String, JsValue> {
    ene_product_text(p, q, ring, order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn zero_products(p: &str, q: &str) -> Result<String, JsValue> {
    zero_products_json(p, q).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn qpoly(p: usize) -> Result<String, JsValue> {
    qpoly_text(p).map_err(|e| JsValue::from_str(&e))
}
