use num_bigint::BigInt;

use super::{factorize, Elem, Ring};
use crate::error::{Error, Result};

/// A ring homomorphism between supported rings: residue maps, the inclusion
/// of Z_(p) into Q, finite-field embeddings, reductions Z/n -> Z/d, and the
/// maps in and out of dual numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    /// Image of the generator x when the source is GF(p^k).
    gen_image: Option<Elem>,
    /// Image of eps and the map on coefficients when the source is dual.
    eps_image: Option<Elem>,
    inner: Option<Box<RingHom>>,
}

impl RingHom {
    pub fn identity(r: &Ring) -> RingHom {
        RingHom::natural(r, r).expect("identity is always defined")
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// The canonical map `source -> target`, if one is supported. For
    /// GF(p^k) sources the generator goes to the smallest root of the
    /// modulus in the target; for dual sources eps goes to eps when the
    /// target is dual and to 0 otherwise.
    pub fn natural(source: &Ring, target: &Ring) -> Result<RingHom> {
        let unsupported = || {
            Error::Unsupported(format!("no supported ring homomorphism {source} -> {target}"))
        };
        let tc = target.characteristic();
        let mut hom = RingHom {
            source: source.clone(),
            target: target.clone(),
            gen_image: None,
            eps_image: None,
            inner: None,
        };
        match source {
            Ring::Rational => {
                let ok = matches!(target, Ring::Rational)
                    || matches!(target, Ring::DualNumbers(b) if **b == Ring::Rational);
                if !ok {
                    return Err(unsupported());
                }
            }
            Ring::LocalizedIntegers(p) => {
                let ok = match target {
                    Ring::Rational | Ring::LocalizedIntegers(_) => {
                        matches!(target, Ring::Rational) || target == source
                    }
                    Ring::DualNumbers(b) if **b == Ring::Rational => true,
                    _ => tc > 0 && factorize(tc).iter().all(|&(q, _)| q == *p),
                };
                if !ok {
                    return Err(unsupported());
                }
            }
            Ring::PrimeField(p) => {
                if tc != *p {
                    return Err(unsupported());
                }
            }
            Ring::IntegersMod(n) => {
                if tc == 0 || n % tc != 0 {
                    return Err(unsupported());
                }
            }
            Ring::FiniteField { p, modulus, .. } => {
                if tc != *p {
                    return Err(unsupported());
                }
                let field = match target {
                    Ring::DualNumbers(b) => (**b).clone(),
                    t => t.clone(),
                };
                let root = field
                    .elements()
                    .and_then(|els| {
                        els.into_iter().find(|a| {
                            let mut acc = field.zero();
                            for c in modulus.iter().rev() {
                                acc = field.add(&field.mul(&acc, a), &field.from_i64(*c as i64));
                            }
                            field.is_zero(&acc)
                        })
                    })
                    .ok_or_else(unsupported)?;
                let root = match target {
                    Ring::DualNumbers(_) => Elem::Dual(Box::new(root), Box::new(field.zero())),
                    _ => root,
                };
                hom.gen_image = Some(root);
            }
            Ring::DualNumbers(b) => {
                let inner = RingHom::natural(b, target)?;
                hom.eps_image = Some(match target {
                    Ring::DualNumbers(_) => target.eps().expect("dual target"),
                    _ => target.zero(),
                });
                hom.inner = Some(Box::new(inner));
            }
        }
        Ok(hom)
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        let t = &self.target;
        match (&self.source, a) {
            (Ring::Rational | Ring::LocalizedIntegers(_), Elem::Rat(q)) => t
                .from_rational(q)
                .expect("denominators are invertible under a supported map"),
            (Ring::PrimeField(_) | Ring::IntegersMod(_), Elem::Int(x)) => {
                t.from_bigint(&BigInt::from(*x))
            }
            (Ring::FiniteField { .. }, Elem::Poly(c)) => {
                let g = self.gen_image.as_ref().expect("generator image");
                let mut acc = t.zero();
                for &ci in c.iter().rev() {
                    acc = t.add(&t.mul(&acc, g), &t.from_i64(ci as i64));
                }
                acc
            }
            (Ring::DualNumbers(_), Elem::Dual(a0, a1)) => {
                let inner = self.inner.as_ref().expect("inner map");
                let e = self.eps_image.as_ref().expect("eps image");
                t.add(&inner.apply(a0), &t.mul(&inner.apply(a1), e))
            }
            _ => panic!("element {a:?} not in {}", self.source),
        }
    }

    pub fn compose(&self, next: &RingHom) -> Result<RingHom> {
        if self.target != next.source {
            return Err(Error::Precondition("ring homomorphisms do not compose".into()));
        }
        // Natural maps compose to natural maps on every supported pair.
        RingHom::natural(&self.source, &next.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_and_inclusion_maps() {
        let zl = Ring::LocalizedIntegers(2);
        let third = zl.parse_elem("1/3").unwrap();
        let to_f2 = RingHom::natural(&zl, &Ring::PrimeField(2)).unwrap();
        assert_eq!(to_f2.apply(&third), Elem::Int(1));
        let to_z8 = RingHom::natural(&zl, &Ring::IntegersMod(8)).unwrap();
        assert_eq!(to_z8.apply(&third), Elem::Int(3));
        assert!(RingHom::natural(&zl, &Ring::PrimeField(3)).is_err());
        assert!(RingHom::natural(&Ring::Rational, &Ring::PrimeField(3)).is_err());
    }

    #[test]
    fn finite_field_embedding_is_multiplicative() {
        let f4 = Ring::parse("GF(2^2;x^2+x+1)").unwrap();
        let f16 = Ring::default_finite_field(2, 4).unwrap();
        let h = RingHom::natural(&f4, &f16).unwrap();
        let els = f4.elements().unwrap();
        for a in &els {
            for b in &els {
                assert_eq!(h.apply(&f4.mul(a, b)), f16.mul(&h.apply(a), &h.apply(b)));
                assert_eq!(h.apply(&f4.add(a, b)), f16.add(&h.apply(a), &h.apply(b)));
            }
        }
        assert!(RingHom::natural(&f4, &Ring::default_finite_field(2, 3).unwrap()).is_err());
    }

    #[test]
    fn dual_residue_kills_eps() {
        let d = Ring::dual(Ring::PrimeField(3)).unwrap();
        let h = RingHom::natural(&d, &Ring::PrimeField(3)).unwrap();
        assert_eq!(h.apply(&d.parse_elem("2+eps").unwrap()), Elem::Int(2));
        let up = RingHom::natural(&Ring::PrimeField(3), &d).unwrap();
        assert_eq!(up.apply(&Elem::Int(2)), d.from_i64(2));
    }
}
