//! Ring-spec grammar and element literals.
//!
//! Ring specs: `Q` | `GF(p)` | `GF(p^k;<poly in x>)` | `Z/n` | `Zloc(p)` |
//! `Dual(<field spec>)`. Element literals are arithmetic expressions over
//! integers with `+ - * / ^`, parentheses, the generator `x` of GF(p^k) and
//! `eps` of the dual numbers.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{fp_poly, Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// Evaluation target for parsed expressions.
trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Result<Self::V>;
    fn var(&self, name: &str) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn one(&self) -> Self::V;
}

struct Parser<'a, A: Algebra> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a A,
    src: &'a str,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A::V> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.alg.add(&acc, &self.alg.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::V> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = self.alg.mul(&acc, &t);
            } else if self.eat('/') {
                let t = self.unary()?;
                acc = self.alg.div(&acc, &t)?;
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                let t = self.power()?;
                acc = self.alg.mul(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A::V> {
        if self.eat('-') {
            let v = self.unary()?;
            Ok(self.alg.neg(&v))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<A::V> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.to_u64().ok_or_else(|| self.err("exponent too large"))?,
                _ => return Err(self.err("expected exponent")),
            };
            self.pos += 1;
            let mut acc = self.alg.one();
            for _ in 0..e {
                acc = self.alg.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::V> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.alg.int(&n)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.alg.var(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

fn run<A: Algebra>(alg: &A, s: &str) -> Result<A::V> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, alg, src: s };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct RingAlg<'a>(&'a Ring);

impl Algebra for RingAlg<'_> {
    type V = Elem;
    fn int(&self, n: &BigInt) -> Result<Elem> {
        Ok(self.0.from_bigint(n))
    }
    fn var(&self, name: &str) -> Result<Elem> {
        let r = self.0;
        match (name, r) {
            ("x", Ring::FiniteField { .. }) => Ok(r.field_generator().expect("extension field")),
            ("x", Ring::DualNumbers(b)) if matches!(**b, Ring::FiniteField { .. }) => {
                let g = b.field_generator().expect("extension field");
                Ok(Elem::Dual(Box::new(g), Box::new(b.zero())))
            }
            ("eps", Ring::DualNumbers(_)) => Ok(r.eps().expect("dual")),
            _ => Err(Error::Parse(format!("unknown symbol {name:?} in {r}"))),
        }
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.add(a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.0.neg(a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(a, b)
    }
    fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let inv = self
            .0
            .inv(b)
            .ok_or_else(|| Error::InvalidElement(format!("division by a non-unit in {}", self.0)))?;
        Ok(self.0.mul(a, &inv))
    }
    fn one(&self) -> Elem {
        self.0.one()
    }
}

/// F_p[x], used only for reading moduli.
struct PolyAlg(u64);

impl Algebra for PolyAlg {
    type V = Vec<u64>;
    fn int(&self, n: &BigInt) -> Result<Vec<u64>> {
        let p = BigInt::from(self.0);
        let r = ((n % &p) + &p) % &p;
        Ok(fp_poly::trim(vec![r.to_u64().expect("small")]))
    }
    fn var(&self, name: &str) -> Result<Vec<u64>> {
        if name == "x" {
            Ok(vec![0, 1])
        } else {
            Err(Error::Parse(format!("modulus must be a polynomial in x, found {name:?}")))
        }
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        fp_poly::add(a, b, self.0)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        fp_poly::neg(a, self.0)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        fp_poly::mul(a, b, self.0)
    }
    fn div(&self, a: &Vec<u64>, b: &Vec<u64>) -> Result<Vec<u64>> {
        match fp_poly::degree(b) {
            Some(0) => Ok(fp_poly::mul(a, &[fp_poly::inv_mod(b[0], self.0)], self.0)),
            _ => Err(Error::Parse("polynomial division is not supported".into())),
        }
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
}

pub fn parse_elem(ring: &Ring, s: &str) -> Result<Elem> {
    run(&RingAlg(ring), s)
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    let t = s.trim();
    let n: u64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("expected {what}, found {t:?}")))?;
    if n.is_zero() {
        return Err(Error::Parse(format!("{what} must be positive")));
    }
    Ok(n)
}

pub fn parse_ring(spec: &str) -> Result<Ring> {
    let s = spec.trim();
    if s == "Q" {
        return Ok(Ring::Rational);
    }
    if let Some(n) = s.strip_prefix("Z/") {
        return Ring::integers_mod(parse_u64(n, "modulus")?);
    }
    if let Some(inner) = s.strip_prefix("Zloc(").and_then(|r| r.strip_suffix(')')) {
        return Ring::localized(parse_u64(inner, "prime")?);
    }
    if let Some(inner) = s.strip_prefix("Dual(").and_then(|r| r.strip_suffix(')')) {
        return Ring::dual(parse_ring(inner)?);
    }
    if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let (head, modulus) = match inner.split_once(';') {
            Some((h, m)) => (h, Some(m)),
            None => (inner, None),
        };
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (parse_u64(p, "prime")?, parse_u64(k, "degree")?),
            None => (parse_u64(head, "prime")?, 1),
        };
        if k == 1 && modulus.is_none() {
            return Ring::prime_field(p);
        }
        let Some(modulus) = modulus else {
            return Err(Error::Parse(format!(
                "GF({head}) needs an explicit modulus: GF({p}^{k};<poly>)"
            )));
        };
        if !super::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        let poly = run(&PolyAlg(p), modulus)?;
        return Ring::finite_field(p, k as u32, poly);
    }
    Err(Error::Parse(format!("unrecognized ring spec {s:?}")))
}
