//! Étale schemes through their geometric points: the Frobenius-stable
//! subgroups of G(k̄) and their descent to closed subgroups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::fibers::separable_rank;
use crate::constructions::ClosedSubgroup;
use crate::error::{Error, Result};
use crate::hopf::{points, GroupScheme, PointGroup, PointsConfig};
use crate::linalg::{kernel, ModuleMap, Vector};
use crate::oracle::{subgroup_lattice, subgroups_of_order, AbstractGroup};
use crate::rings::{Elem, Ring};

/// Largest extension field searched for geometric points.
pub const EXTENSION_CAP: u64 = 4096;

#[derive(Clone, Debug)]
pub struct GeometricPoints {
    /// A ring over which every geometric point is rational.
    pub ring: Ring,
    pub degree: u32,
    pub group: PointGroup,
}

/// G(k̄) realized over the smallest extension of a finite field containing
/// all points; over Q, Dual(F) and Z/p^k only the points over the base
/// itself are tried.
pub fn geometric_points(g: &GroupScheme, cfg: &PointsConfig) -> Result<GeometricPoints> {
    let r = g.base();
    match r {
        Ring::PrimeField(p) | Ring::FiniteField { p, .. } => {
            let k = match r {
                Ring::FiniteField { k, .. } => *k,
                _ => 1,
            };
            let target = separable_rank(g)?;
            let mut n = 1u32;
            loop {
                if p.checked_pow(k * n).is_none_or(|s| s > EXTENSION_CAP) {
                    return Err(Error::Budget(format!(
                        "geometric points need an extension larger than {EXTENSION_CAP}"
                    )));
                }
                let t = if n == 1 { r.clone() } else { Ring::default_finite_field(*p, k * n)? };
                let group = points(g, &t, cfg)?;
                if group.order() == target {
                    return Ok(GeometricPoints { ring: t, degree: n, group });
                }
                n += 1;
            }
        }
        _ => {
            let group = points(g, r, cfg)?;
            if group.order() != g.order() || !g.is_etale().etale {
                return Err(Error::Unsupported(format!(
                    "geometric points over {r} are only available when all points are rational"
                )));
            }
            Ok(GeometricPoints { ring: r.clone(), degree: 1, group })
        }
    }
}

/// The closed subgroup cut out by the functions vanishing on a set of
/// points with values in `ring`.
pub fn subgroup_from_points(g: &GroupScheme, ring: &Ring, pts: &[Vector]) -> Result<ClosedSubgroup> {
    let r = g.base();
    let m = g.order();
    let functionals: Vec<Vector> = if ring == r {
        pts.to_vec()
    } else {
        match (r, ring) {
            (Ring::LocalizedIntegers(_), Ring::Rational) => pts
                .iter()
                .map(|v| {
                    let rats: Vec<BigRational> = v.iter().map(|x| ring.as_rational(x).expect("rational")).collect();
                    let den = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    rats.iter()
                        .map(|q| r.from_rational(&(q * BigRational::from_integer(den.clone()))))
                        .collect::<Result<Vector>>()
                })
                .collect::<Result<_>>()?,
            (Ring::PrimeField(_), Ring::FiniteField { k, .. }) => {
                let mut out = Vec::new();
                for v in pts {
                    for c in 0..*k as usize {
                        out.push(
                            v.iter()
                                .map(|x| match x {
                                    Elem::Poly(coeffs) => Elem::Int(coeffs[c]),
                                    _ => unreachable!("finite field element"),
                                })
                                .collect(),
                        );
                    }
                }
                out
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "cannot descend points over {ring} to a subgroup over {r}"
                )))
            }
        }
    };
    let ideal = kernel(r, &ModuleMap { domain: m, codomain: functionals.len(), matrix: functionals });
    ClosedSubgroup::from_generators(g, ideal.rows)
}

#[derive(Clone, Debug)]
pub enum UniqueSubgroup {
    Found(ClosedSubgroup),
    NotUnique(usize),
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniqueSubgroupSummary {
    pub status: String,
    pub count: usize,
    pub order: Option<usize>,
}

impl UniqueSubgroup {
    pub fn summary(&self) -> UniqueSubgroupSummary {
        match self {
            UniqueSubgroup::Found(h) => UniqueSubgroupSummary { status: "found".into(), count: 1, order: Some(h.order()) },
            UniqueSubgroup::NotUnique(n) => UniqueSubgroupSummary { status: "not_unique".into(), count: *n, order: None },
            UniqueSubgroup::Absent => UniqueSubgroupSummary { status: "absent".into(), count: 0, order: None },
        }
    }
}

/// The abstract group of geometric points.
pub fn abstract_points(gp: &GeometricPoints) -> Result<AbstractGroup> {
    AbstractGroup::new(gp.group.table.clone())
}

/// The unique subgroup of order d of G(k̄), descended to the base.
pub fn etale_unique_subgroup(g: &GroupScheme, d: usize, cfg: &PointsConfig) -> Result<UniqueSubgroup> {
    if !g.is_etale().etale {
        return Err(Error::Precondition("etale_unique_subgroup needs an étale scheme".into()));
    }
    if d == 0 || g.order() % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide the order {}", g.order())));
    }
    let gp = geometric_points(g, cfg)?;
    let lattice = subgroup_lattice(&abstract_points(&gp)?)?;
    let subs = subgroups_of_order(&lattice, d);
    match subs.len() {
        0 => Ok(UniqueSubgroup::Absent),
        1 => {
            let pts: Vec<Vector> = subs[0].elements.iter().map(|&i| gp.group.elements[i].clone()).collect();
            let h = subgroup_from_points(g, &gp.ring, &pts)?;
            if h.order() != d {
                return Err(Error::Internal(format!("descended subgroup has order {} instead of {d}", h.order())));
            }
            Ok(UniqueSubgroup::Found(h))
        }
        n => Ok(UniqueSubgroup::NotUnique(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{constant, kernel_of, mu};
    use crate::group::FiniteGroup;

    #[test]
    fn unique_subgroups() {
        let cfg = PointsConfig::default();
        let f5 = Ring::prime_field(5).unwrap();
        let z6 = constant(&f5, &FiniteGroup::cyclic(6)).unwrap();
        match etale_unique_subgroup(&z6, 3, &cfg).unwrap() {
            UniqueSubgroup::Found(h) => assert_eq!(h.order(), 3),
            other => panic!("{other:?}"),
        }
        let m6 = mu(&f5, 6).unwrap();
        match etale_unique_subgroup(&m6, 2, &cfg).unwrap() {
            UniqueSubgroup::Found(h) => assert_eq!(h, kernel_of(&m6.convolution_power(2).unwrap()).unwrap()),
            other => panic!("{other:?}"),
        }
        match etale_unique_subgroup(&m6, 3, &cfg).unwrap() {
            UniqueSubgroup::Found(h) => assert_eq!(h, kernel_of(&m6.convolution_power(3).unwrap()).unwrap()),
            other => panic!("{other:?}"),
        }
        let s3 = constant(&f5, &FiniteGroup::symmetric3()).unwrap();
        assert!(matches!(etale_unique_subgroup(&s3, 2, &cfg).unwrap(), UniqueSubgroup::NotUnique(3)));
        assert!(etale_unique_subgroup(&s3, 4, &cfg).is_err());
        let s3q = constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap();
        assert!(matches!(etale_unique_subgroup(&s3q, 3, &cfg).unwrap(), UniqueSubgroup::Found(_)));
    }

    #[test]
    fn geometric_point_degree() {
        let cfg = PointsConfig::default();
        let f2 = Ring::prime_field(2).unwrap();
        let gp = geometric_points(&mu(&f2, 7).unwrap(), &cfg).unwrap();
        assert_eq!((gp.degree, gp.group.order()), (3, 7));
        let gp = geometric_points(&mu(&f2, 6).unwrap(), &cfg).unwrap();
        assert_eq!((gp.degree, gp.group.order()), (2, 3));
    }
}
