//! A small expression language for series, used by the command-line tool.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := ene (('*' | '/') ene)*
//! ene      := signed ('@' signed)*
//! signed   := '-' signed | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ['-'] rational ')'
//! atom     := number | 'X' | '[' ['-'] number ',' ['-'] number ']'
//!           | '(' expr ')' | 'UNIT' | 'ZERO' | 'KOEBE'
//!           | 'E' '(' int ')' | 'I' '(' int ')' | 'AH' '(' int ')'
//!           | 'EXP' '(' expr ')' | 'D' '(' expr ')' | 'INV' '(' expr ')'
//!           | 'T' '(' int ',' expr ')' | 'Te' '(' int ',' expr ')'
//! ```
//!
//! `*` and `/` are series multiplication and division, `@` is the eñe
//! product, `^` an integer or rational power. `E(N)` is the Weierstrass
//! factor, `I(N)` the series `1 - X^N`, `AH(p)` the Artin–Hasse exponential,
//! `T(n, f)` the Hecke operator, `Te(N, f)` the exponential truncation,
//! `D(f)` the logarithmic derivative and `INV(f)` the eñe inverse. Numbers
//! may be integers, decimals, or `[re, im]` complex pairs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::engine::{ene, ene_inverse};
use crate::error::{EneError, Result};
use crate::ring::{parse_rational, Ring};
use crate::series::{koebe, ExpForm, Series, UnitSeries};
use crate::transforms::{artin_hasse, cyclotomic_like, hecke, weierstrass_factor};

/// Parsed series expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigRational),
    /// A `[re, im]` literal, kept as text for the ring to parse.
    Complex(String),
    X,
    Unit,
    Zero,
    Koebe,
    Weierstrass(usize),
    Cyclotomic(usize),
    ArtinHasse(u64),
    Exp(Box<Expr>),
    Hecke(usize, Box<Expr>),
    ExpTruncate(usize, Box<Expr>),
    LogDerivative(Box<Expr>),
    EneInverse(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Ene(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            if text.matches('.').count() > 1 || text == "." {
                return Err(EneError::parse(start, format!("bad number '{text}'")));
            }
            out.push((Tok::Num(text), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/@^(),[]".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(EneError::parse(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{c}'")))
        }
    }

    fn unexpected(&self, what: &str) -> EneError {
        let found = match self.peek() {
            Tok::Num(s) | Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        };
        EneError::parse(self.pos(), format!("{what}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.ene()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.ene()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.ene()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn ene(&mut self) -> Result<Expr> {
        let mut lhs = self.signed()?;
        while self.eat('@') {
            lhs = Expr::Ene(Box::new(lhs), Box::new(self.signed()?));
        }
        Ok(lhs)
    }

    fn signed(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.signed()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(s) if !s.contains('.') => Ok(s.parse().expect("digits")),
            _ => Err(EneError::parse(pos, "expected an integer")),
        }
    }

    fn small(&mut self) -> Result<usize> {
        let pos = self.pos();
        let n = self.integer()?;
        usize::try_from(n).map_err(|_| EneError::parse(pos, "integer too large"))
    }

    fn exponent(&mut self) -> Result<BigRational> {
        if self.eat('(') {
            let neg = self.eat('-');
            let pos = self.pos();
            let value = match self.bump() {
                Tok::Num(s) => parse_rational(&s).ok_or_else(|| EneError::parse(pos, "bad number"))?,
                _ => return Err(EneError::parse(pos, "expected a rational exponent")),
            };
            let value = if self.eat('/') {
                let dpos = self.pos();
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(EneError::parse(dpos, "zero denominator"));
                }
                value / BigRational::from_integer(d)
            } else {
                value
            };
            self.expect(')')?;
            return Ok(if neg { -value } else { value });
        }
        let neg = self.eat('-');
        let n = BigRational::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn signed_number(&mut self) -> Result<String> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.bump() {
            Tok::Num(s) => Ok(if neg { format!("-{s}") } else { s }),
            _ => Err(EneError::parse(pos, "expected a number")),
        }
    }

    fn args_int(&mut self) -> Result<usize> {
        self.expect('(')?;
        let n = self.small()?;
        self.expect(')')?;
        Ok(n)
    }

    fn args_expr(&mut self) -> Result<Box<Expr>> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(Box::new(e))
    }

    fn args_int_expr(&mut self) -> Result<(usize, Box<Expr>)> {
        self.expect('(')?;
        let n = self.small()?;
        self.expect(',')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok((n, Box::new(e)))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                parse_rational(&s)
                    .map(Expr::Num)
                    .ok_or_else(|| EneError::parse(pos, format!("bad number '{s}'")))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.bump();
                let re = self.signed_number()?;
                self.expect(',')?;
                let im = self.signed_number()?;
                self.expect(']')?;
                Ok(Expr::Complex(format!("[{re}, {im}]")))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(match name.as_str() {
                    "X" => Expr::X,
                    "UNIT" => Expr::Unit,
                    "ZERO" => Expr::Zero,
                    "KOEBE" => Expr::Koebe,
                    "E" => Expr::Weierstrass(self.args_int()?),
                    "I" => Expr::Cyclotomic(self.args_int()?),
                    "AH" => Expr::ArtinHasse(self.args_int()? as u64),
                    "EXP" => Expr::Exp(self.args_expr()?),
                    "D" => Expr::LogDerivative(self.args_expr()?),
                    "INV" => Expr::EneInverse(self.args_expr()?),
                    "T" => {
                        let (n, e) = self.args_int_expr()?;
                        Expr::Hecke(n, e)
                    }
                    "Te" => {
                        let (n, e) = self.args_int_expr()?;
                        Expr::ExpTruncate(n, e)
                    }
                    _ => return Err(EneError::parse(pos, format!("unknown name '{name}'"))),
                })
            }
            _ => Err(self.unexpected("expected a series")),
        }
    }
}

/// Parses an expression; errors carry the character offset of the problem.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("expected an operator"));
    }
    Ok(e)
}

/// The input line followed by a caret under `pos`.
pub fn caret(src: &str, pos: usize) -> String {
    format!("{src}\n{}^", " ".repeat(pos))
}

fn unit<R: Ring>(s: Series<R>, op: &'static str) -> Result<UnitSeries<R>> {
    if !s.ring().is_one(s.coeff(0)) {
        return Err(EneError::NotUnitSeries { op });
    }
    UnitSeries::new(s)
}

fn align<R: Ring>(a: Series<R>, b: Series<R>) -> Result<(Series<R>, Series<R>)> {
    let n = a.order().min(b.order());
    Ok((a.truncate(n)?, b.truncate(n)?))
}

fn pow<R: Ring>(s: Series<R>, e: &BigRational) -> Result<Series<R>> {
    let r = s.ring().clone();
    if !e.is_integer() {
        let a = r.from_rational(e).ok_or_else(|| EneError::NotQAlgebra {
            op: "fractional power",
            ring: r.descriptor().to_string(),
        })?;
        return Ok(unit(s, "fractional power")?.fractional_power(&a)?.into_series());
    }
    let n = i64::try_from(e.to_integer()).map_err(|_| EneError::invalid("power", "exponent too large"))?;
    let base = if n < 0 { s.invert()? } else { s };
    let mut acc = Series::monomial(r.clone(), base.order(), 0, r.one());
    let mut b = base;
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&b)?;
        }
        k >>= 1;
        if k > 0 {
            b = b.mul(&b)?;
        }
    }
    Ok(acc)
}

/// Evaluates an expression to the given order. Operators that shorten a
/// series (the Hecke operator) lower the order of everything combined with
/// the result.
pub fn eval<R: Ring>(e: &Expr, ring: &R, order: usize) -> Result<Series<R>> {
    let ev = |x: &Expr| eval(x, ring, order);
    Ok(match e {
        Expr::Num(q) => {
            let c = ring.from_rational(q).ok_or_else(|| EneError::NotInRing {
                value: q.to_string(),
                ring: ring.descriptor().to_string(),
            })?;
            Series::monomial(ring.clone(), order, 0, c)
        }
        Expr::Complex(text) => {
            let c = ring.parse(text).map_err(|_| EneError::NotInRing {
                value: text.clone(),
                ring: ring.descriptor().to_string(),
            })?;
            Series::monomial(ring.clone(), order, 0, c)
        }
        Expr::X => Series::monomial(ring.clone(), order, 1, ring.one()),
        Expr::Unit => UnitSeries::one_minus_x(ring.clone(), order).into_series(),
        Expr::Zero => UnitSeries::one(ring.clone(), order).into_series(),
        Expr::Koebe => koebe(ring.clone(), order),
        Expr::Weierstrass(n) => weierstrass_factor(*n, order, ring)?.into_series(),
        Expr::Cyclotomic(n) => cyclotomic_like(*n, order, ring)?.into_series(),
        Expr::ArtinHasse(p) => artin_hasse(*p, order, ring)?.into_series(),
        Expr::Exp(x) => ExpForm::new(ev(x)?)
            .map_err(|_| EneError::invalid("EXP", "argument must have zero constant term"))?
            .exp()?
            .into_series(),
        Expr::Hecke(n, x) => hecke(*n, &unit(ev(x)?, "hecke")?)?.into_series(),
        Expr::ExpTruncate(n, x) => unit(ev(x)?, "exp_truncate")?.exp_truncate(*n)?.into_series(),
        Expr::LogDerivative(x) => unit(ev(x)?, "log_derivative")?.log_derivative(),
        Expr::EneInverse(x) => ene_inverse(&unit(ev(x)?, "ene_inverse")?)?.into_series(),
        Expr::Neg(x) => ev(x)?.neg(),
        Expr::Add(a, b) => {
            let (a, b) = align(ev(a)?, ev(b)?)?;
            a.add(&b)?
        }
        Expr::Sub(a, b) => {
            let (a, b) = align(ev(a)?, ev(b)?)?;
            a.sub(&b)?
        }
        Expr::Mul(a, b) => {
            let (a, b) = align(ev(a)?, ev(b)?)?;
            a.mul(&b)?
        }
        Expr::Div(a, b) => {
            let (a, b) = align(ev(a)?, ev(b)?)?;
            a.mul(&b.invert()?)?
        }
        Expr::Ene(a, b) => {
            let (a, b) = align(ev(a)?, ev(b)?)?;
            ene(&unit(a, "ene")?, &unit(b, "ene")?)?.into_series()
        }
        Expr::Pow(x, q) => {
            if q.is_one() {
                ev(x)?
            } else {
                pow(ev(x)?, q)?
            }
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_str<R: Ring>(src: &str, ring: &R, order: usize) -> Result<Series<R>> {
    eval(&parse(src)?, ring, order)
}
