//! Exact base rings: Q, prime and extension finite fields, Z/n, the
//! localization Z_(p), and dual numbers over a field.
//!
//! Elements are plain values ([`Elem`]); every operation goes through the
//! owning [`Ring`], which knows how to interpret them.

pub mod expr;
pub mod fp_poly;
pub mod hom;
pub mod spectrum;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use hom::RingHom;
pub use spectrum::{spectrum, SpectrumPoint};

/// A ring element. The encoding depends on the ring:
/// `Int` for GF(p) and Z/n, `Rat` for Q and Z_(p), `Poly` (coefficients low
/// to high, length k) for GF(p^k), `Dual(a, b)` for a + b·eps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(u64),
    Rat(BigRational),
    Poly(Vec<u64>),
    Dual(Box<Elem>, Box<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Rational,
    PrimeField(u64),
    /// GF(p^k) = F_p[x]/(modulus); modulus is monic, coefficients low to high.
    FiniteField { p: u64, k: u32, modulus: Vec<u64> },
    IntegersMod(u64),
    LocalizedIntegers(u64),
    /// base[eps]/(eps^2) over a field variant.
    DualNumbers(Box<Ring>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn mod_i128(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

fn p_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    (((n % &m) + &m) % &m).to_u64().expect("residue fits")
}

impl Ring {
    pub fn rational() -> Ring {
        Ring::Rational
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn finite_field(p: u64, k: u32, modulus: Vec<u64>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidRing("extension degree must be positive".into()));
        }
        let modulus: Vec<u64> = fp_poly::trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::InvalidRing(format!(
                "modulus must be monic of degree {k}"
            )));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidRing(format!(
                "modulus {} is reducible mod {p}",
                fmt_fp_poly(&modulus)
            )));
        }
        if k == 1 {
            return Ok(Ring::PrimeField(p));
        }
        Ok(Ring::FiniteField { p, k, modulus })
    }

    /// GF(p^k) with the first irreducible modulus in scan order.
    pub fn default_finite_field(p: u64, k: u32) -> Result<Ring> {
        if k == 1 {
            return Ring::prime_field(p);
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ring::finite_field(p, k, fp_poly::first_irreducible(p, k))
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidRing("Z/n needs n >= 2".into()));
        }
        Ok(Ring::IntegersMod(n))
    }

    pub fn localized(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::LocalizedIntegers(p))
    }

    pub fn dual(base: Ring) -> Result<Ring> {
        if !base.is_field() {
            return Err(Error::InvalidRing(
                "dual numbers are only supported over fields".into(),
            ));
        }
        Ok(Ring::DualNumbers(Box::new(base)))
    }

    pub fn parse(spec: &str) -> Result<Ring> {
        expr::parse_ring(spec)
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            Ring::Rational | Ring::PrimeField(_) | Ring::FiniteField { .. }
        )
    }

    pub fn is_domain(&self) -> bool {
        self.is_field() || matches!(self, Ring::LocalizedIntegers(_))
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Rational | Ring::LocalizedIntegers(_) => 0,
            Ring::PrimeField(p) | Ring::FiniteField { p, .. } => *p,
            Ring::IntegersMod(n) => *n,
            Ring::DualNumbers(b) => b.characteristic(),
        }
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            Ring::Rational | Ring::LocalizedIntegers(_) => None,
            Ring::PrimeField(p) => Some(*p),
            Ring::FiniteField { p, k, .. } => Some(p.pow(*k)),
            Ring::IntegersMod(n) => Some(*n),
            Ring::DualNumbers(b) => b.size().map(|s| s * s),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Number of elements of the residue field, for finite fields.
    pub fn field_size(&self) -> Option<u64> {
        if self.is_field() {
            self.size()
        } else {
            None
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Rational | Ring::LocalizedIntegers(_) => Elem::Rat(BigRational::zero()),
            Ring::PrimeField(_) | Ring::IntegersMod(_) => Elem::Int(0),
            Ring::FiniteField { k, .. } => Elem::Poly(vec![0; *k as usize]),
            Ring::DualNumbers(b) => Elem::Dual(Box::new(b.zero()), Box::new(b.zero())),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Rational | Ring::LocalizedIntegers(_) => {
                Elem::Rat(BigRational::from_integer(n.clone()))
            }
            Ring::PrimeField(p) | Ring::IntegersMod(p) => Elem::Int(bigint_mod(n, *p)),
            Ring::FiniteField { p, k, .. } => {
                let mut v = vec![0; *k as usize];
                v[0] = bigint_mod(n, *p);
                Elem::Poly(v)
            }
            Ring::DualNumbers(b) => Elem::Dual(Box::new(b.from_bigint(n)), Box::new(b.zero())),
        }
    }

    /// Image of a rational number, if its denominator is invertible here.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        match self {
            Ring::Rational => Ok(Elem::Rat(q.clone())),
            Ring::LocalizedIntegers(p) => {
                if p_valuation(q.denom(), *p) > 0 {
                    Err(Error::InvalidElement(format!("{q} is not in Z_({p})")))
                } else {
                    Ok(Elem::Rat(q.clone()))
                }
            }
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::InvalidElement(format!("denominator of {q} is not invertible in {self}"))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    fn bad(&self, a: &Elem) -> ! {
        panic!("element {a:?} does not belong to {self}")
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(x), Elem::Rat(y)) => {
                Elem::Rat(x + y)
            }
            (Ring::PrimeField(n) | Ring::IntegersMod(n), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Ring::FiniteField { p, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1), Elem::Dual(b0, b1)) => {
                Elem::Dual(Box::new(r.add(a0, b0)), Box::new(r.add(a1, b1)))
            }
            _ => self.bad(a),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(x)) => Elem::Rat(-x),
            (Ring::PrimeField(n) | Ring::IntegersMod(n), Elem::Int(x)) => Elem::Int((n - x) % n),
            (Ring::FiniteField { p, .. }, Elem::Poly(x)) => {
                Elem::Poly(x.iter().map(|u| (p - u) % p).collect())
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1)) => {
                Elem::Dual(Box::new(r.neg(a0)), Box::new(r.neg(a1)))
            }
            _ => self.bad(a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(x), Elem::Rat(y)) => {
                Elem::Rat(x * y)
            }
            (Ring::PrimeField(n) | Ring::IntegersMod(n), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (Ring::FiniteField { p, k, modulus }, Elem::Poly(x), Elem::Poly(y)) => {
                let prod = fp_poly::mul(x, y, *p);
                let mut r = fp_poly::rem(&prod, modulus, *p);
                r.resize(*k as usize, 0);
                Elem::Poly(r)
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1), Elem::Dual(b0, b1)) => Elem::Dual(
                Box::new(r.mul(a0, b0)),
                Box::new(r.add(&r.mul(a0, b1), &r.mul(a1, b0))),
            ),
            _ => self.bad(a),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => *x == 0,
            Elem::Rat(x) => x.is_zero(),
            Elem::Poly(v) => v.iter().all(|&c| c == 0),
            Elem::Dual(a0, a1) => match self {
                Ring::DualNumbers(r) => r.is_zero(a0) && r.is_zero(a1),
                _ => self.bad(a),
            },
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Rational, Elem::Rat(x)) => !x.is_zero(),
            (Ring::LocalizedIntegers(p), Elem::Rat(x)) => {
                !x.is_zero() && p_valuation(x.numer(), *p) == 0
            }
            (Ring::PrimeField(_) | Ring::FiniteField { .. }, _) => !self.is_zero(a),
            (Ring::IntegersMod(n), Elem::Int(x)) => gcd_u64(*x, *n) == 1,
            (Ring::DualNumbers(r), Elem::Dual(a0, _)) => r.is_unit(a0),
            _ => self.bad(a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        Some(match (self, a) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(x)) => Elem::Rat(x.recip()),
            (Ring::PrimeField(p), Elem::Int(x)) => Elem::Int(fp_poly::pow_mod(*x, p - 2, *p)),
            (Ring::FiniteField { p, k, .. }, _) => self.pow(a, p.pow(*k) - 2),
            (Ring::IntegersMod(n), Elem::Int(x)) => {
                let (_, s, _) = ext_gcd(*x as i128, *n as i128);
                Elem::Int(mod_i128(s, *n))
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1)) => {
                let u = r.inv(a0)?;
                let u2 = r.mul(&u, &u);
                Elem::Dual(Box::new(u), Box::new(r.neg(&r.mul(a1, &u2))))
            }
            _ => self.bad(a),
        })
    }

    /// Some q with q·b = a, when one exists.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if let Some(bi) = self.inv(b) {
            return Some(self.mul(a, &bi));
        }
        match (self, a, b) {
            (Ring::IntegersMod(n), Elem::Int(x), Elem::Int(y)) => {
                let g = gcd_u64(*y, *n);
                if x % g != 0 {
                    return None;
                }
                let m = n / g;
                if m == 1 {
                    return Some(Elem::Int(0));
                }
                let (_, s, _) = ext_gcd((*y / g) as i128, m as i128);
                Some(Elem::Int(mod_i128(s * (*x / g) as i128, m)))
            }
            (Ring::LocalizedIntegers(p), Elem::Rat(x), Elem::Rat(y)) => {
                if y.is_zero() || p_valuation(x.numer(), *p) < p_valuation(y.numer(), *p) {
                    None
                } else {
                    Some(Elem::Rat(x / y))
                }
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1), Elem::Dual(b0, b1)) => {
                // b = b1·eps with b1 != 0, so a must be a multiple of eps.
                if !r.is_zero(b0) || r.is_zero(b1) || !r.is_zero(a0) {
                    return None;
                }
                let q = r.mul(a1, &r.inv(b1)?);
                Some(Elem::Dual(Box::new(q), Box::new(r.zero())))
            }
            _ => None,
        }
    }

    /// Valuation in a local ring (fields, Z_(p), dual numbers); `None` for 0.
    fn local_valuation(&self, a: &Elem) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (Ring::LocalizedIntegers(p), Elem::Rat(x)) => p_valuation(x.numer(), *p),
            (Ring::DualNumbers(r), Elem::Dual(a0, _)) => u32::from(r.is_zero(a0)),
            _ => 0,
        })
    }

    /// Returns (g, s, t, u, v) with [s t; u v] invertible and
    /// s·a + t·b = g, u·a + v·b = 0.
    pub fn gcdex(&self, a: &Elem, b: &Elem) -> (Elem, Elem, Elem, Elem, Elem) {
        let (zero, one) = (self.zero(), self.one());
        if let (Ring::IntegersMod(n), Elem::Int(x), Elem::Int(y)) = (self, a, b) {
            if *x == 0 && *y == 0 {
                return (zero, one.clone(), Elem::Int(0), Elem::Int(0), one);
            }
            let (g, s, t) = ext_gcd(*x as i128, *y as i128);
            let u = -(*y as i128 / g);
            let v = *x as i128 / g;
            return (
                Elem::Int(mod_i128(g, *n)),
                Elem::Int(mod_i128(s, *n)),
                Elem::Int(mod_i128(t, *n)),
                Elem::Int(mod_i128(u, *n)),
                Elem::Int(mod_i128(v, *n)),
            );
        }
        match (self.local_valuation(a), self.local_valuation(b)) {
            (_, None) => (a.clone(), one.clone(), zero.clone(), zero, one),
            (None, Some(_)) => (b.clone(), zero.clone(), one.clone(), one, zero),
            (Some(va), Some(vb)) if va <= vb => {
                let q = self.div_exact(b, a).expect("valuation order");
                (a.clone(), one.clone(), zero, self.neg(&q), one)
            }
            _ => {
                let q = self.div_exact(a, b).expect("valuation order");
                (b.clone(), zero, one.clone(), one, self.neg(&q))
            }
        }
    }

    /// Canonical associate: returns (assoc, unit) with a = unit·assoc.
    /// Associates are 1 (units), p^v in Z_(p), eps in dual numbers, and
    /// gcd(a, n) in Z/n.
    pub fn normalize(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        if self.is_unit(a) {
            return (self.one(), a.clone());
        }
        match (self, a) {
            (Ring::IntegersMod(n), Elem::Int(x)) => {
                let d = gcd_u64(*x, *n);
                let a1 = x / d;
                let n1 = n / d;
                let mut u = a1;
                while gcd_u64(u, *n) != 1 {
                    u += n1;
                }
                (Elem::Int(d), Elem::Int(u % n))
            }
            (Ring::LocalizedIntegers(p), Elem::Rat(x)) => {
                let v = p_valuation(x.numer(), *p);
                let pv = BigRational::from_integer(BigInt::from(*p).pow(v));
                (Elem::Rat(pv.clone()), Elem::Rat(x / pv))
            }
            (Ring::DualNumbers(r), Elem::Dual(_, a1)) => (
                Elem::Dual(Box::new(r.zero()), Box::new(r.one())),
                Elem::Dual(a1.clone(), Box::new(r.zero())),
            ),
            _ => self.bad(a),
        }
    }

    /// Division with canonical remainder modulo the ideal generated by a
    /// normalized `d`: a = q·d + r.
    pub fn divrem_ideal(&self, a: &Elem, d: &Elem) -> (Elem, Elem) {
        if self.is_zero(d) {
            return (self.zero(), a.clone());
        }
        if self.is_one(d) {
            return (a.clone(), self.zero());
        }
        match (self, a, d) {
            (Ring::IntegersMod(_), Elem::Int(x), Elem::Int(y)) => {
                (Elem::Int(x / y), Elem::Int(x % y))
            }
            (Ring::LocalizedIntegers(_), Elem::Rat(x), Elem::Rat(y)) => {
                let m = y.to_integer().to_u64().expect("small modulus");
                let den_inv = {
                    let dm = bigint_mod(x.denom(), m);
                    let (_, s, _) = ext_gcd(dm as i128, m as i128);
                    mod_i128(s, m)
                };
                let r = (bigint_mod(x.numer(), m) as u128 * den_inv as u128 % m as u128) as u64;
                let re = Elem::Rat(BigRational::from_integer(BigInt::from(r)));
                let q = self
                    .div_exact(&self.sub(a, &re), d)
                    .expect("remainder difference divisible");
                (q, re)
            }
            (Ring::DualNumbers(r), Elem::Dual(a0, a1), _) => (
                Elem::Dual(a1.clone(), Box::new(r.zero())),
                Elem::Dual(a0.clone(), Box::new(r.zero())),
            ),
            _ => self.bad(a),
        }
    }

    /// Generator of the annihilator ideal of `a`.
    pub fn ann(&self, a: &Elem) -> Elem {
        if self.is_zero(a) {
            return self.one();
        }
        match (self, a) {
            (Ring::IntegersMod(n), Elem::Int(x)) => Elem::Int((n / gcd_u64(*x, *n)) % n),
            (Ring::DualNumbers(r), Elem::Dual(a0, _)) => {
                if r.is_zero(a0) {
                    Elem::Dual(Box::new(r.zero()), Box::new(r.one()))
                } else {
                    self.zero()
                }
            }
            _ => self.zero(),
        }
    }

    pub fn is_zero_divisor(&self, a: &Elem) -> bool {
        !self.is_zero(&self.ann(a))
    }

    /// Every element, sorted, for finite rings.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let mut out = match self {
            Ring::Rational | Ring::LocalizedIntegers(_) => return None,
            Ring::PrimeField(n) | Ring::IntegersMod(n) => (0..*n).map(Elem::Int).collect(),
            Ring::FiniteField { p, k, .. } => {
                let total = p.pow(*k);
                (0..total)
                    .map(|mut idx| {
                        let mut v = Vec::with_capacity(*k as usize);
                        for _ in 0..*k {
                            v.push(idx % p);
                            idx /= p;
                        }
                        Elem::Poly(v)
                    })
                    .collect::<Vec<_>>()
            }
            Ring::DualNumbers(r) => {
                let base = r.elements()?;
                let mut v = Vec::with_capacity(base.len() * base.len());
                for a in &base {
                    for b in &base {
                        v.push(Elem::Dual(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
                v
            }
        };
        out.sort();
        Some(out)
    }

    /// The residue field of a local ring (or the ring itself for fields).
    pub fn residue_field(&self) -> Option<Ring> {
        match self {
            Ring::LocalizedIntegers(p) => Some(Ring::PrimeField(*p)),
            Ring::DualNumbers(b) => Some((**b).clone()),
            Ring::IntegersMod(n) => {
                let f = factorize(*n);
                (f.len() == 1).then(|| Ring::PrimeField(f[0].0))
            }
            r if r.is_field() => Some(r.clone()),
            _ => None,
        }
    }

    pub fn as_rational(&self, a: &Elem) -> Option<BigRational> {
        match a {
            Elem::Rat(x) => Some(x.clone()),
            _ => None,
        }
    }

    /// Generator x of GF(p^k).
    pub fn field_generator(&self) -> Option<Elem> {
        match self {
            Ring::FiniteField { k, .. } => {
                let mut v = vec![0; *k as usize];
                v[1] = 1;
                Some(Elem::Poly(v))
            }
            _ => None,
        }
    }

    pub fn eps(&self) -> Option<Elem> {
        match self {
            Ring::DualNumbers(r) => Some(Elem::Dual(Box::new(r.zero()), Box::new(r.one()))),
            _ => None,
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        expr::parse_elem(self, s)
    }

    pub fn fmt_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(x)) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (Ring::PrimeField(_) | Ring::IntegersMod(_), Elem::Int(x)) => x.to_string(),
            (Ring::FiniteField { .. }, Elem::Poly(v)) => fmt_fp_poly(v),
            (Ring::DualNumbers(r), Elem::Dual(a0, a1)) => {
                if r.is_zero(a1) {
                    r.fmt_elem(a0)
                } else if r.is_zero(a0) {
                    format!("({})*eps", r.fmt_elem(a1))
                } else {
                    format!("{}+({})*eps", r.fmt_elem(a0), r.fmt_elem(a1))
                }
            }
            _ => self.bad(a),
        }
    }

    /// The integer n·1 is invertible in this ring.
    pub fn integer_is_unit(&self, n: u64) -> bool {
        self.is_unit(&self.from_i64(n as i64))
    }
}

pub fn fmt_fp_poly(v: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in v.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}*x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "GF({p})"),
            Ring::FiniteField { p, k, modulus } => {
                write!(f, "GF({p}^{k};{})", fmt_fp_poly(modulus))
            }
            Ring::IntegersMod(n) => write!(f, "Z/{n}"),
            Ring::LocalizedIntegers(p) => write!(f, "Zloc({p})"),
            Ring::DualNumbers(b) => write!(f, "Dual({b})"),
        }
    }
}

/// Signed small integer view, used when printing integers stored mod n.
pub fn centered(x: u64, n: u64) -> i64 {
    if x > n / 2 {
        x as i64 - n as i64
    } else {
        x as i64
    }
}

#[allow(dead_code)]
fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_rings() -> Vec<Ring> {
        vec![
            Ring::Rational,
            Ring::PrimeField(7),
            Ring::finite_field(2, 2, vec![1, 1, 1]).unwrap(),
            Ring::finite_field(3, 2, vec![1, 0, 1]).unwrap(),
            Ring::IntegersMod(12),
            Ring::LocalizedIntegers(2),
            Ring::dual(Ring::PrimeField(3)).unwrap(),
            Ring::dual(Ring::Rational).unwrap(),
        ]
    }

    fn elem_from_seed(r: &Ring, seed: (i64, i64, i64)) -> Elem {
        match r {
            Ring::Rational => r
                .from_rational(&BigRational::new(seed.0.into(), (seed.1.abs() % 5 + 1).into()))
                .unwrap(),
            Ring::LocalizedIntegers(_) => r
                .from_rational(&BigRational::new(seed.0.into(), (2 * (seed.1.abs() % 4) + 1).into()))
                .unwrap(),
            Ring::FiniteField { p, .. } => Elem::Poly(vec![
                seed.0.rem_euclid(*p as i64) as u64,
                seed.1.rem_euclid(*p as i64) as u64,
            ]),
            Ring::DualNumbers(b) => Elem::Dual(
                Box::new(elem_from_seed(b, (seed.0, seed.2, seed.1))),
                Box::new(elem_from_seed(b, (seed.1, seed.2, seed.0))),
            ),
            _ => r.from_i64(seed.0),
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(a in (-30i64..30, -30i64..30, -30i64..30),
                       b in (-30i64..30, -30i64..30, -30i64..30),
                       c in (-30i64..30, -30i64..30, -30i64..30)) {
            for r in sample_rings() {
                let (x, y, z) = (elem_from_seed(&r, a), elem_from_seed(&r, b), elem_from_seed(&r, c));
                prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
                prop_assert_eq!(r.add(&r.add(&x, &y), &z), r.add(&x, &r.add(&y, &z)));
                prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
                prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x));
                prop_assert_eq!(r.mul(&r.one(), &x), x.clone());
                prop_assert!(r.is_zero(&r.add(&x, &r.neg(&x))));
                if let Some(xi) = r.inv(&x) {
                    prop_assert!(r.is_one(&r.mul(&x, &xi)));
                }
            }
        }

        #[test]
        fn gcdex_and_normalize_contracts(a in (-30i64..30, -30i64..30, -30i64..30),
                                         b in (-30i64..30, -30i64..30, -30i64..30)) {
            for r in sample_rings() {
                let (x, y) = (elem_from_seed(&r, a), elem_from_seed(&r, b));
                let (g, s, t, u, v) = r.gcdex(&x, &y);
                prop_assert_eq!(r.add(&r.mul(&s, &x), &r.mul(&t, &y)), g);
                prop_assert!(r.is_zero(&r.add(&r.mul(&u, &x), &r.mul(&v, &y))));
                let det = r.sub(&r.mul(&s, &v), &r.mul(&t, &u));
                prop_assert!(r.is_unit(&det));
                let (d, unit) = r.normalize(&x);
                prop_assert!(r.is_unit(&unit));
                prop_assert_eq!(r.mul(&unit, &d), x.clone());
                if !r.is_zero(&d) {
                    let (q, rem) = r.divrem_ideal(&y, &d);
                    prop_assert_eq!(r.add(&r.mul(&q, &d), &rem), y.clone());
                }
                prop_assert!(r.is_zero(&r.mul(&r.ann(&x), &x)));
            }
        }
    }

    #[test]
    fn dual_inverse_and_annihilator() {
        let r = Ring::dual(Ring::PrimeField(5)).unwrap();
        let eps = r.eps().unwrap();
        assert!(r.is_zero(&r.mul(&eps, &eps)));
        assert_eq!(r.ann(&eps), eps);
        let a = r.add(&r.from_i64(2), &eps);
        assert!(r.is_one(&r.mul(&a, &r.inv(&a).unwrap())));
    }

    #[test]
    fn zloc_units_and_remainders() {
        let r = Ring::LocalizedIntegers(2);
        let third = r.from_rational(&BigRational::new(1.into(), 3.into())).unwrap();
        assert!(r.is_unit(&third));
        assert!(r.from_rational(&BigRational::new(1.into(), 2.into())).is_err());
        let (_, rem) = r.divrem_ideal(&third, &r.from_i64(4));
        // 1/3 = 3 mod 4
        assert_eq!(rem, r.from_i64(3));
    }

    #[test]
    fn factor_helpers() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
    }
}
