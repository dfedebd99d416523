use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ene_exp;
use crate::error::{EneError, Result};
use crate::ring::{Monomial, PolyRing, RationalRing, Ring};
use crate::series::{Series, UnitSeries};

pub const DEFAULT_QCAP: usize = 12;

/// The universal polynomial `Q_p ∈ Z[X_1..X_p, Y_1..Y_p]`.
///
/// If `f = 1 + Σ a_i X^i` and `g = 1 + Σ b_i X^i`, the coefficient of `X^p`
/// in `f ⋆ g` is `(-1)^p Q_p(a, b)`. Exponent vectors list `X_1..X_p` first,
/// then `Y_1..Y_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivPoly {
    p: usize,
    terms: Vec<(Monomial, BigInt)>,
    groups: Vec<(Vec<u32>, Vec<(Vec<u32>, BigInt)>)>,
}

fn var_names(p: usize) -> Vec<String> {
    (1..=p)
        .map(|i| format!("X{i}"))
        .chain((1..=p).map(|i| format!("Y{i}")))
        .collect()
}

impl UnivPoly {
    fn from_terms(p: usize, mut terms: Vec<(Monomial, BigInt)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut grouped: BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigInt)>> = BTreeMap::new();
        for (m, c) in &terms {
            let (x, y) = m.0.split_at(p);
            grouped
                .entry(x.to_vec())
                .or_default()
                .push((y.to_vec(), c.clone()));
        }
        UnivPoly {
            p,
            terms,
            groups: grouped.into_iter().collect(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    /// The polynomial ring `Q[X_1..X_p, Y_1..Y_p]` this polynomial lives in.
    pub fn ring(&self) -> PolyRing<RationalRing> {
        PolyRing::new(RationalRing, var_names(self.p))
    }

    pub fn as_poly(&self) -> crate::ring::MultiPoly<BigRational> {
        self.ring().from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    /// `Q_p(a, b)` where `a[i]`, `b[i]` hold `a_{i+1}`, `b_{i+1}`.
    pub fn eval<R: Ring>(&self, ring: &R, a: &[R::Elem], b: &[R::Elem]) -> R::Elem {
        let p = self.p;
        let powers = |v: &[R::Elem]| -> Vec<Vec<R::Elem>> {
            (0..p)
                .map(|i| {
                    let mut row = vec![ring.one()];
                    for e in 1..=(p / (i + 1)) {
                        row.push(ring.mul(&row[e - 1], &v[i]));
                    }
                    row
                })
                .collect()
        };
        let (pa, pb) = (powers(a), powers(b));
        let monomial = |pw: &[Vec<R::Elem>], exps: &[u32]| -> Option<R::Elem> {
            let mut acc: Option<R::Elem> = None;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let f = &pw[i][e as usize];
                if ring.is_exact_zero(f) {
                    return Some(ring.zero());
                }
                acc = Some(match acc {
                    None => f.clone(),
                    Some(x) => ring.mul(&x, f),
                });
            }
            Some(acc.unwrap_or_else(|| ring.one()))
        };
        let mut total = ring.zero();
        for (xe, ys) in &self.groups {
            let xv = monomial(&pa, xe).expect("always some");
            if ring.is_exact_zero(&xv) {
                continue;
            }
            let mut inner = ring.zero();
            for (ye, c) in ys {
                let yv = monomial(&pb, ye).expect("always some");
                if ring.is_exact_zero(&yv) {
                    continue;
                }
                inner = ring.add(&inner, &ring.int_scale(c, &yv));
            }
            if !ring.is_exact_zero(&inner) {
                total = ring.add(&total, &ring.mul(&xv, &inner));
            }
        }
        total
    }

    /// Cache file text: header `p=<n>`, then one `coeff monomial` line per term.
    pub fn to_cache_text(&self) -> String {
        let ring = self.ring();
        let mut out = format!("p={}\n", self.p);
        for (m, c) in &self.terms {
            let single = ring.from_terms([(m.clone(), ring.base().one())]);
            out.push_str(&format!("{c} {}\n", ring.format(&single)));
        }
        out
    }

    pub fn from_cache_text(text: &str) -> Result<UnivPoly> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let p: usize = header
            .strip_prefix("p=")
            .and_then(|v| v.trim().parse().ok())
            .filter(|&p| p >= 1)
            .ok_or_else(|| EneError::parse(0, format!("bad cache header '{header}'")))?;
        let ring = PolyRing::new(RationalRing, var_names(p));
        let mut terms = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (c, m) = line
                .split_once(' ')
                .ok_or_else(|| EneError::parse(0, format!("bad cache line '{line}'")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| EneError::parse(0, format!("bad coefficient '{c}'")))?;
            let mono = ring.parse(m)?;
            let (m, _) = mono
                .terms()
                .next()
                .ok_or_else(|| EneError::parse(0, "empty monomial"))?;
            terms.push((m.clone(), c));
        }
        let q = UnivPoly::from_terms(p, terms);
        q.check_structure()?;
        Ok(q)
    }

    /// Leading term `(-1)^p Q_p ∋ -p X_p Y_p` and bi-weight `(p, p)` of every monomial.
    pub fn check_structure(&self) -> Result<()> {
        let p = self.p;
        let violation = |reason: String| EneError::StructureViolation { p, reason };
        let mut lead = Monomial(vec![0; 2 * p]);
        lead.0[p - 1] = 1;
        lead.0[2 * p - 1] = 1;
        let sign = if p.is_multiple_of(2) { 1 } else { -1 };
        let expected = BigInt::from(-(p as i64) * sign);
        match self.terms.iter().find(|(m, _)| *m == lead) {
            Some((_, c)) if *c == expected => {}
            Some((_, c)) => return Err(violation(format!("X{p}*Y{p} has coefficient {c}"))),
            None => return Err(violation(format!("missing X{p}*Y{p}"))),
        }
        for (m, _) in &self.terms {
            let weight = |e: &[u32]| -> usize {
                e.iter().enumerate().map(|(i, &k)| (i + 1) * k as usize).sum()
            };
            let (x, y) = m.0.split_at(p);
            if weight(x) != p || weight(y) != p {
                return Err(violation(format!("monomial {:?} has wrong weight", m.0)));
            }
            if *m != lead && x[p - 1] > 0 && y[p - 1] > 0 {
                return Err(violation("second monomial containing X_p*Y_p".into()));
            }
        }
        if self.terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(violation("stored zero coefficient".into()));
        }
        Ok(())
    }
}

impl fmt::Display for UnivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        write!(f, "{}", ring.format(&self.as_poly()))
    }
}

/// Generates `Q_1..=Q_p` by running the exponential-form product on generic
/// series over `Q[X_1..X_p, Y_1..Y_p]`.
pub fn generate_univ_polys(p: usize) -> Result<Vec<UnivPoly>> {
    if p == 0 {
        return Err(EneError::invalid("generate_univ_poly", "p must be at least 1"));
    }
    let ring = PolyRing::new(RationalRing, var_names(p));
    let generic = |offset: usize| {
        UnitSeries::from_tail(ring.clone(), (0..p).map(|i| ring.var(offset + i)).collect())
    };
    let c = ene_exp(&generic(0), &generic(p))?;
    (1..=p)
        .map(|k| {
            let mut terms = Vec::new();
            for (m, q) in c.coeff(k).terms() {
                if !q.is_integer() {
                    return Err(EneError::IntegralityViolation {
                        p: k,
                        coeff: q.to_string(),
                    });
                }
                let mut coeff = q.to_integer();
                if k % 2 == 1 {
                    coeff = -coeff;
                }
                let mut e = m.0[..k].to_vec();
                e.extend_from_slice(&m.0[p..p + k]);
                terms.push((Monomial(e), coeff));
            }
            let q = UnivPoly::from_terms(k, terms);
            q.check_structure()?;
            Ok(q)
        })
        .collect()
}

/// `Q_p` alone; see [`generate_univ_polys`].
pub fn generate_univ_poly(p: usize) -> Result<UnivPoly> {
    Ok(generate_univ_polys(p)?.pop().expect("p >= 1"))
}

/// Thread-safe memo of universal polynomials, optionally persisted to a
/// directory as `q<p>.txt`.
#[derive(Debug)]
pub struct UnivCache {
    cap: usize,
    dir: Option<PathBuf>,
    table: RwLock<BTreeMap<usize, Arc<UnivPoly>>>,
    generating: Mutex<()>,
}

impl UnivCache {
    pub fn new(cap: usize, dir: Option<PathBuf>) -> Self {
        UnivCache {
            cap,
            dir,
            table: RwLock::new(BTreeMap::new()),
            generating: Mutex::new(()),
        }
    }

    /// Process-wide cache with the default cap, persisted under
    /// `ENE_CACHE_DIR` when that variable is set.
    pub fn global() -> &'static UnivCache {
        static GLOBAL: OnceLock<UnivCache> = OnceLock::new();
        GLOBAL.get_or_init(|| {
            let dir = std::env::var_os("ENE_CACHE_DIR").map(PathBuf::from);
            UnivCache::new(DEFAULT_QCAP, dir)
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn lookup(&self, p: usize) -> Option<Arc<UnivPoly>> {
        self.table.read().expect("cache lock").get(&p).cloned()
    }

    fn file(&self, p: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("q{p}.txt")))
    }

    fn load(&self, p: usize) -> Option<UnivPoly> {
        let text = fs::read_to_string(self.file(p)?).ok()?;
        UnivPoly::from_cache_text(&text).ok().filter(|q| q.p == p)
    }

    fn store(&self, q: &UnivPoly) -> Result<()> {
        if let (Some(dir), Some(path)) = (&self.dir, self.file(q.p)) {
            fs::create_dir_all(dir)?;
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, q.to_cache_text())?;
            fs::rename(&tmp, &path)?;
        }
        Ok(())
    }

    /// `Q_p`, generated at most once per cache (together with every lower index).
    pub fn get(&self, p: usize) -> Result<Arc<UnivPoly>> {
        if p == 0 {
            return Err(EneError::invalid("qpoly", "p must be at least 1"));
        }
        if p > self.cap {
            return Err(EneError::CapExceeded {
                requested: p,
                cap: self.cap,
            });
        }
        if let Some(q) = self.lookup(p) {
            return Ok(q);
        }
        let _guard = self.generating.lock().expect("generation lock");
        if let Some(q) = self.lookup(p) {
            return Ok(q);
        }
        if let Some(q) = self.load(p) {
            let q = Arc::new(q);
            self.table.write().expect("cache lock").insert(p, q.clone());
            return Ok(q);
        }
        let all = generate_univ_polys(p)?;
        let mut table = self.table.write().expect("cache lock");
        for q in all {
            let k = q.p;
            if !table.contains_key(&k) {
                if self.file(k).is_some_and(|f| !f.exists()) {
                    self.store(&q)?;
                }
                table.insert(k, Arc::new(q));
            }
        }
        Ok(table[&p].clone())
    }

    /// Indices currently held in memory.
    pub fn cached(&self) -> Vec<usize> {
        self.table.read().expect("cache lock").keys().copied().collect()
    }
}

/// `f ⋆ g` by evaluating `c_n = (-1)^n Q_n(a, b)`; valid over any ring.
pub fn ene_universal<R: Ring>(f: &UnitSeries<R>, g: &UnitSeries<R>) -> Result<UnitSeries<R>> {
    ene_universal_with(UnivCache::global(), f, g)
}

pub fn ene_universal_with<R: Ring>(
    cache: &UnivCache,
    f: &UnitSeries<R>,
    g: &UnitSeries<R>,
) -> Result<UnitSeries<R>> {
    crate::ring::check_same(f.ring(), g.ring())?;
    let r = f.ring();
    let n = f.order().min(g.order());
    let a = &f.coeffs()[1..=n];
    let b = &g.coeffs()[1..=n];
    let mut coeffs = vec![r.one()];
    for p in 1..=n {
        let q = cache.get(p)?;
        let v = q.eval(r, &a[..p], &b[..p]);
        coeffs.push(if p % 2 == 1 { r.neg(&v) } else { v });
    }
    UnitSeries::new(Series::new(r.clone(), coeffs))
}
