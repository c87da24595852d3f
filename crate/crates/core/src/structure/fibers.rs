//! Fibers over the points of the base: identity components, infinitesimal
//! and separable ranks, and the connected–étale sequence.

use serde::Serialize;

use super::frobenius::{classify, Classification};
use crate::constructions::subgroup::augmentation_generators;
use crate::constructions::{quotient, ClosedSubgroup, ExtensionWitness};
use crate::error::{Error, Result};
use crate::hopf::{GroupScheme, PointsConfig};
use crate::linalg::{kernel, transpose, ModuleMap, Submodule, Vector};
use crate::rings::{factorize, spectrum, Ring};

/// Fields, dual numbers over a field, and Z/p^k.
pub fn is_artin_local(r: &Ring) -> bool {
    match r {
        Ring::Rational | Ring::PrimeField(_) | Ring::FiniteField { .. } | Ring::DualNumbers(_) => true,
        Ring::IntegersMod(n) => factorize(*n).len() == 1,
        Ring::LocalizedIntegers(_) => false,
    }
}

/// The stable power m^N of the augmentation ideal.
pub fn stable_augmentation_power(g: &GroupScheme) -> Submodule {
    let r = g.base();
    let m = g.order();
    let aug = Submodule::span(r, &augmentation_generators(g), m);
    let mut power = aug.clone();
    loop {
        let mut prods = Vec::new();
        for x in &power.rows {
            for y in &aug.rows {
                prods.push(g.mul(x, y));
            }
        }
        let next = Submodule::span(r, &prods, m);
        if next == power {
            return power;
        }
        power = next;
    }
}

/// G° = V(m^N) over a field or Artin local base.
pub fn identity_component(g: &GroupScheme) -> Result<ClosedSubgroup> {
    if !is_artin_local(g.base()) {
        return Err(Error::Unsupported(format!(
            "identity component needs a field or Artin local base, got {}",
            g.base()
        )));
    }
    ClosedSubgroup::from_generators(g, stable_augmentation_power(g).rows)
        .map_err(|e| Error::Internal(format!("identity component is not a flat subgroup: {e}")))
}

/// Dimension of the nilradical of Hopf(G) over a field: the kernel of an
/// iterate of a ↦ a^q over GF(q), the radical of the trace form over Q.
pub fn nilradical_dim(g: &GroupScheme) -> Result<usize> {
    let r = g.base();
    let m = g.order();
    let matrix = match r {
        Ring::PrimeField(_) | Ring::FiniteField { .. } => {
            let q = r.size().expect("finite field");
            let frob: Vec<Vector> = (0..m).map(|i| g.pow(&g.basis_vec(i), q)).collect();
            let mut images: Vec<Vector> = (0..m).map(|i| g.basis_vec(i)).collect();
            for _ in 0..m {
                images = images
                    .iter()
                    .map(|v| {
                        let mut out = g.zero_vec();
                        for (c, row) in v.iter().zip(&frob) {
                            crate::linalg::axpy(r, &mut out, c, row);
                        }
                        out
                    })
                    .collect();
            }
            transpose(&images, m)
        }
        Ring::Rational => (0..m)
            .map(|i| (0..m).map(|j| g.trace(&g.mul(&g.basis_vec(i), &g.basis_vec(j)))).collect())
            .collect(),
        _ => return Err(Error::Unsupported(format!("separable rank needs a field, got {r}"))),
    };
    Ok(kernel(r, &ModuleMap { domain: m, codomain: m, matrix }).rows.len())
}

/// Number of geometric points of G over a field.
pub fn separable_rank(g: &GroupScheme) -> Result<usize> {
    Ok(g.order() - nilradical_dim(g)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberEntry {
    pub point: String,
    pub residue_field: String,
    pub infinitesimal_rank: usize,
    pub separable_rank: usize,
    pub etale: bool,
    /// F/V class of the identity component when its order is the residue
    /// characteristic.
    pub connected_class: Option<Classification>,
    #[serde(skip)]
    pub fiber: GroupScheme,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub order: usize,
    pub fibers: Vec<FiberEntry>,
}

impl FiberReport {
    pub fn entry(&self, point: &str) -> Option<&FiberEntry> {
        self.fibers.iter().find(|f| f.point == point)
    }

    /// The set E of infinitesimal ranks.
    pub fn ranks(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.fibers.iter().map(|f| f.infinitesimal_rank).collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

pub fn fiber_report(g: &GroupScheme) -> Result<FiberReport> {
    let mut fibers = Vec::new();
    for pt in spectrum(g.base()) {
        let fiber = g.base_change(&pt.residue_map(g.base()))?;
        let comp = identity_component(&fiber)?;
        let i = comp.order();
        let sep = separable_rank(&fiber)?;
        if i * sep != g.order() {
            return Err(Error::Internal(format!(
                "at {}: infinitesimal rank {i} times separable rank {sep} is not {}",
                pt.id,
                g.order()
            )));
        }
        let ch = pt.residue_field.characteristic();
        let connected_class = if ch > 0 && i as u64 == ch {
            Some(classify(comp.scheme())?.classification)
        } else {
            None
        };
        fibers.push(FiberEntry {
            point: pt.id.clone(),
            residue_field: pt.residue_field.to_string(),
            infinitesimal_rank: i,
            separable_rank: sep,
            etale: fiber.is_etale().etale,
            connected_class,
            fiber,
        });
    }
    Ok(FiberReport { order: g.order(), fibers })
}

/// 1 -> G° -> G -> G/G° -> 1 over a field or Artin local base.
pub fn connected_etale_sequence(g: &GroupScheme, test_rings: &[Ring], cfg: &PointsConfig) -> Result<ExtensionWitness> {
    let comp = identity_component(g)?;
    let w = quotient(&comp, test_rings, cfg)?;
    if !w.quotient().is_etale().etale {
        return Err(Error::Internal("quotient by the identity component is not étale".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alpha, constant, mu, product};
    use crate::group::FiniteGroup;
    use crate::testrings::{test_rings, DEFAULT_CAP};

    #[test]
    fn reports() {
        let z2 = Ring::localized(2).unwrap();
        let rep = fiber_report(&mu(&z2, 2).unwrap()).unwrap();
        let (gen, closed) = (rep.entry("generic").unwrap(), rep.entry("closed").unwrap());
        assert_eq!((gen.infinitesimal_rank, gen.etale), (1, true));
        assert_eq!((closed.infinitesimal_rank, closed.etale), (2, false));
        assert_eq!(closed.connected_class, Some(Classification::Mu));
        let f3 = Ring::prime_field(3).unwrap();
        let rep = fiber_report(&alpha(&f3, 3).unwrap()).unwrap();
        let pt = rep.entry("pt").unwrap();
        assert_eq!((pt.infinitesimal_rank, pt.separable_rank), (3, 1));
        assert_eq!(pt.connected_class, Some(Classification::Alpha));
        let rep = fiber_report(&constant(&z2, &FiniteGroup::cyclic(6)).unwrap()).unwrap();
        assert_eq!(rep.ranks(), vec![1]);
        let d = Ring::dual(f3.clone()).unwrap();
        let rep = fiber_report(&mu(&d, 6).unwrap()).unwrap();
        assert_eq!(rep.ranks(), vec![3]);
    }

    #[test]
    fn connected_etale() {
        let f2 = Ring::prime_field(2).unwrap();
        let g = product(&mu(&f2, 2).unwrap(), &constant(&f2, &FiniteGroup::cyclic(3)).unwrap()).unwrap();
        let cfg = PointsConfig::default();
        let rings = test_rings(&f2, DEFAULT_CAP);
        let w = connected_etale_sequence(&g, &rings, &cfg).unwrap();
        assert_eq!((w.kernel.order(), w.quotient().order()), (2, 3));
        assert!(w.exactness.iter().all(|r| r.exact_in_middle));
        let f3 = Ring::prime_field(3).unwrap();
        let w = connected_etale_sequence(&mu(&f3, 3).unwrap(), &[], &cfg).unwrap();
        assert_eq!((w.kernel.order(), w.quotient().order()), (3, 1));
        let f5 = Ring::prime_field(5).unwrap();
        let w = connected_etale_sequence(&constant(&f5, &FiniteGroup::symmetric3()).unwrap(), &[], &cfg).unwrap();
        assert_eq!((w.kernel.order(), w.quotient().order()), (1, 6));
        let d = Ring::dual(f2.clone()).unwrap();
        let gd = g.base_change_to(&d).unwrap();
        let w = connected_etale_sequence(&gd, &[], &cfg).unwrap();
        assert_eq!((w.kernel.order(), w.quotient().order()), (2, 3));
        assert!(connected_etale_sequence(&mu(&Ring::localized(2).unwrap(), 2).unwrap(), &[], &cfg).is_err());
    }

    #[test]
    fn separable_ranks() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(separable_rank(&mu(&f5, 10).unwrap()).unwrap(), 2);
        assert_eq!(separable_rank(&mu(&Ring::Rational, 6).unwrap()).unwrap(), 6);
        let f4 = Ring::default_finite_field(2, 2).unwrap();
        assert_eq!(separable_rank(&mu(&f4, 6).unwrap()).unwrap(), 3);
    }
}
