use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;

use super::{Ring, RingDescriptor};
use crate::error::{EneError, Result};

/// Exponent vector, ordered graded-lexicographically: by total degree, then
/// by the exponent vectors compared left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: nonzero coefficients keyed by monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> MultiPoly<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Polynomials in named variables over a base ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
    vars: Arc<[String]>,
}

impl<R: Ring> PolyRing<R> {
    pub fn new<S: Into<String>>(base: R, vars: impl IntoIterator<Item = S>) -> Self {
        PolyRing {
            base,
            vars: vars.into_iter().map(Into::into).collect(),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The polynomial consisting of variable `i`.
    pub fn var(&self, i: usize) -> MultiPoly<R::Elem> {
        let mut m = Monomial::one(self.nvars());
        m.0[i] = 1;
        self.from_terms([(m, self.base.one())])
    }

    pub fn var_named(&self, name: &str) -> Option<MultiPoly<R::Elem>> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn constant(&self, c: R::Elem) -> MultiPoly<R::Elem> {
        self.from_terms([(Monomial::one(self.nvars()), c)])
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Monomial, R::Elem)>,
    ) -> MultiPoly<R::Elem> {
        let mut map: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.nvars(), "monomial arity mismatch");
            match map.get_mut(&m) {
                Some(existing) => *existing = self.base.add(existing, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !self.base.is_zero(c));
        MultiPoly { terms: map }
    }

    /// Constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self, p: &MultiPoly<R::Elem>) -> Option<R::Elem> {
        match p.terms.len() {
            0 => Some(self.base.zero()),
            1 => {
                let (m, c) = p.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn map_coeffs(
        &self,
        p: &MultiPoly<R::Elem>,
        f: impl Fn(&R::Elem) -> R::Elem,
    ) -> MultiPoly<R::Elem> {
        self.from_terms(p.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{e}", self.vars[i])
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn parse_term(&self, term: &str, offset: usize) -> Result<MultiPoly<R::Elem>> {
        let mut coeff = self.base.one();
        let mut mono = Monomial::one(self.nvars());
        for factor in split_top_level(term, '*') {
            let f = factor.trim();
            if f.is_empty() {
                return Err(EneError::parse(offset, "empty factor"));
            }
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| EneError::parse(offset, format!("bad exponent in '{f}'")))?;
                    (n.trim(), e)
                }
                None => (f, 1),
            };
            if let Some(i) = self.var_index(name) {
                mono.0[i] += exp;
            } else {
                let c = self.base.parse(name).map_err(|_| {
                    EneError::parse(offset, format!("unknown variable or number '{name}'"))
                })?;
                coeff = self.base.mul(&coeff, &self.base.pow(&c, exp as u64));
            }
        }
        Ok(self.from_terms([(mono, coeff)]))
    }
}

/// Splits on `sep` outside of brackets and parentheses.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Splits a sum into signed terms at top-level `+`/`-`, skipping signs that
/// belong to an exponent, a product, or scientific notation.
fn split_signed_terms(s: &str) -> Vec<(usize, bool, &str)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let mut prev: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let exponent_sign = matches!(prev, Some(b'e' | b'E'))
                    && i >= 2
                    && bytes[i - 2].is_ascii_digit();
                match prev {
                    None => {
                        negative = b == b'-';
                        start = i + 1;
                        prev = Some(b);
                        continue;
                    }
                    Some(b'^' | b'*' | b'/') => {}
                    Some(_) if exponent_sign => {}
                    Some(_) => {
                        out.push((start, negative, &s[start..i]));
                        negative = b == b'-';
                        start = i + 1;
                        prev = Some(b);
                        continue;
                    }
                }
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            prev = Some(b);
        }
    }
    out.push((start, negative, &s[start..]));
    out
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = MultiPoly<R::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::MultivariatePoly {
            base: Box::new(self.base.descriptor()),
            vars: self.vars.to_vec(),
        }
    }

    fn zero(&self) -> Self::Elem {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(existing) => *existing = self.base.add(existing, c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !self.base.is_zero(c));
        MultiPoly { terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.map_coeffs(a, |c| self.base.neg(c))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut terms: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = self.base.mul(ca, cb);
                match terms.get_mut(&m) {
                    Some(existing) => *existing = self.base.add(existing, &c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !self.base.is_zero(c));
        MultiPoly { terms }
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        let zero = self.base.zero();
        let keys = a.terms.keys().chain(b.terms.keys());
        keys.into_iter().all(|m| {
            let x = a.terms.get(m).unwrap_or(&zero);
            let y = b.terms.get(m).unwrap_or(&zero);
            self.base.equal(x, y)
        })
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.values().all(|c| self.base.is_zero(c))
    }

    fn is_q_algebra(&self) -> bool {
        self.base.is_q_algebra()
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = self.as_constant(a)?;
        self.base.try_inv(&c).map(|inv| self.constant(inv))
    }

    fn is_zero_divisor(&self, a: &Self::Elem) -> bool {
        // McCoy: a polynomial kills something iff a single scalar kills it
        let coeffs: Vec<R::Elem> = a.terms.values().cloned().collect();
        self.base.has_common_annihilator(&coeffs)
    }

    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|c| self.constant(c))
    }

    fn int_scale(&self, n: &num_bigint::BigInt, a: &Self::Elem) -> Self::Elem {
        self.map_coeffs(a, |c| self.base.int_scale(n, c))
    }

    fn int_divide(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem> {
        let mut terms = Vec::with_capacity(a.terms.len());
        for (m, c) in &a.terms {
            terms.push((m.clone(), self.base.int_divide(c, n)?));
        }
        Ok(self.from_terms(terms))
    }

    fn format(&self, a: &Self::Elem) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in a.terms.iter().enumerate() {
            let mut coeff = self.base.format_coeff(c);
            let mut negative = false;
            if self.base.is_atomic(c) {
                if let Some(rest) = coeff.strip_prefix('-') {
                    negative = true;
                    coeff = rest.to_string();
                }
            } else {
                coeff = format!("({coeff})");
            }
            let mono = self.format_monomial(m);
            let body = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono
            } else {
                format!("{coeff}*{mono}")
            };
            match (idx, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    fn is_atomic(&self, a: &Self::Elem) -> bool {
        match a.terms.len() {
            0 => true,
            1 => {
                let (_, c) = a.terms.iter().next().unwrap();
                self.base.is_atomic(c)
            }
            _ => false,
        }
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let s = s.trim();
        if s.is_empty() {
            return Err(EneError::parse(0, "empty polynomial"));
        }
        let mut acc = self.zero();
        for (offset, negative, term) in split_signed_terms(s) {
            if term.trim().is_empty() {
                return Err(EneError::parse(offset, "empty term"));
            }
            let mut t = self.parse_term(term, offset)?;
            if negative {
                t = self.neg(&t);
            }
            acc = self.add(&acc, &t);
        }
        Ok(acc)
    }

    fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        let nterms = rng.gen_range(0..=3);
        let terms: Vec<_> = (0..nterms)
            .map(|_| {
                let mut m = Monomial::one(self.nvars());
                for _ in 0..rng.gen_range(0..=2) {
                    let i = rng.gen_range(0..self.nvars());
                    m.0[i] += 1;
                }
                (m, self.base.sample(rng))
            })
            .collect();
        self.from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ModularRing, RationalRing};

    fn qring() -> PolyRing<RationalRing> {
        PolyRing::new(RationalRing, ["X1", "X2", "Y1", "Y2"])
    }

    #[test]
    fn canonical_order_and_printing() {
        let r = qring();
        let p = r.parse("X1^2*Y2 + X2*Y1^2 - 2*X2*Y2").unwrap();
        assert_eq!(r.format(&p), "-2*X2*Y2 + X2*Y1^2 + X1^2*Y2");
        let q = r.parse("3*X1^2*Y1 - 2*X2*Y2").unwrap();
        assert_eq!(r.format(&q), "-2*X2*Y2 + 3*X1^2*Y1");
        assert_eq!(r.format(&r.zero()), "0");
        assert_eq!(r.format(&r.parse("-1/3*X1 + 1").unwrap()), "1 - 1/3*X1");
    }

    #[test]
    fn product_of_variables() {
        let r = qring();
        let p = r.mul(&r.var(0), &r.var(2));
        assert_eq!(r.format(&p), "X1*Y1");
    }

    #[test]
    fn divide_by_integer() {
        let r = qring();
        let p = r.int_divide(&r.var(0), 3).unwrap();
        assert_eq!(r.format(&p), "1/3*X1");
    }

    #[test]
    fn not_q_algebra_over_modular() {
        let r = PolyRing::new(ModularRing::new(7).unwrap(), ["a"]);
        assert!(matches!(
            r.int_divide(&r.one(), 2),
            Err(EneError::NotQAlgebra { .. })
        ));
        let p = r.parse("3*a^2 - 1").unwrap();
        assert_eq!(r.format(&p), "6 + 3*a^2");
    }

    #[test]
    fn mccoy_zero_divisors() {
        let r = PolyRing::new(ModularRing::new(6).unwrap(), ["a"]);
        assert!(r.is_zero_divisor(&r.parse("2 + 4*a").unwrap()));
        assert!(!r.is_zero_divisor(&r.parse("2 + 3*a").unwrap()));
    }

    #[test]
    fn parse_errors() {
        let r = qring();
        assert!(r.parse("Z3").is_err());
        assert!(r.parse("X1 +").is_err());
        assert!(r.parse("X1^x").is_err());
    }
}
