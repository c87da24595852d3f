//! The loci S₁ ⊆ S_p and V_p of a square-free group scheme, and the
//! order-p subgroup over V_p.

use serde::Serialize;

use super::etale::{abstract_points, etale_unique_subgroup, geometric_points, subgroup_from_points, UniqueSubgroup};
use super::fibers::{fiber_report, identity_component, is_artin_local, FiberReport};
use crate::constructions::{is_normal, kernel_of, ClosedSubgroup};
use crate::error::{Error, Result};
use crate::hopf::{GroupScheme, PointsConfig};
use crate::linalg::Vector;
use crate::oracle::{subgroup_lattice, subgroups_of_order};
use crate::rings::{is_squarefree, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct LocusPoint {
    pub point: String,
    pub infinitesimal_rank: usize,
    pub etale: bool,
    /// For étale points: whether G(k̄) has a unique p-Sylow of order p.
    pub unique_sylow: Option<bool>,
    pub in_s1: bool,
    pub in_sp: bool,
    pub in_vp: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    pub prime: u64,
    pub points: Vec<LocusPoint>,
    pub s1: Vec<String>,
    pub sp: Vec<String>,
    pub vp: Vec<String>,
    pub vp_is_whole: bool,
    #[serde(skip)]
    pub subgroup: Option<ClosedSubgroup>,
    pub subgroup_order: Option<usize>,
    pub subgroup_normal: Option<bool>,
}

fn unique_sylow_at(g: &GroupScheme, fiber: &GroupScheme, p: u64, cfg: &PointsConfig) -> Result<bool> {
    let n = g.order() as u64;
    if n % p != 0 {
        return Ok(false);
    }
    if g.is_commutative() {
        // square-free abelian groups are cyclic
        return Ok(true);
    }
    let gp = geometric_points(fiber, cfg)?;
    let lattice = subgroup_lattice(&abstract_points(&gp)?)?;
    Ok(subgroups_of_order(&lattice, p as usize).len() == 1)
}

/// G_p once V_p is known to be the whole spectrum.
fn order_p_subgroup(g: &GroupScheme, report: &FiberReport, p: u64, cfg: &PointsConfig) -> Result<Option<ClosedSubgroup>> {
    if g.is_commutative() {
        return kernel_of(&g.convolution_power(p as i64)?).map(Some);
    }
    let r = g.base();
    if is_artin_local(r) {
        if report.fibers[0].infinitesimal_rank as u64 == p {
            return identity_component(g).map(Some);
        }
        return match etale_unique_subgroup(g, p as usize, cfg)? {
            UniqueSubgroup::Found(h) => Ok(Some(h)),
            _ => Err(Error::Internal(format!("no unique subgroup of order {p} on V_{p}"))),
        };
    }
    if let Ring::LocalizedIntegers(_) = r {
        // closure of the generic subgroup
        let generic = g.base_change_to(&Ring::Rational)?;
        let gp = geometric_points(&generic, cfg)?;
        let lattice = subgroup_lattice(&abstract_points(&gp)?)?;
        let subs = subgroups_of_order(&lattice, p as usize);
        if subs.len() != 1 {
            return Err(Error::Internal(format!("generic fiber has {} subgroups of order {p}", subs.len())));
        }
        let pts: Vec<Vector> = subs[0].elements.iter().map(|&i| gp.group.elements[i].clone()).collect();
        return subgroup_from_points(g, &Ring::Rational, &pts).map(Some);
    }
    Ok(None)
}

pub fn locus_report(g: &GroupScheme, p: u64, cfg: &PointsConfig) -> Result<LocusReport> {
    if !is_squarefree(g.order() as u64) {
        return Err(Error::Precondition(format!("order {} is not square-free", g.order())));
    }
    if !crate::rings::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let report = fiber_report(g)?;
    let mut points = Vec::new();
    for f in &report.fibers {
        let i = f.infinitesimal_rank;
        let in_s1 = i == 1;
        let in_sp = p as usize % i == 0;
        let unique_sylow = if f.etale { Some(unique_sylow_at(g, &f.fiber, p, cfg)?) } else { None };
        let in_vp = (in_sp && !in_s1) || unique_sylow == Some(true);
        points.push(LocusPoint {
            point: f.point.clone(),
            infinitesimal_rank: i,
            etale: f.etale,
            unique_sylow,
            in_s1,
            in_sp,
            in_vp,
        });
    }
    let pick = |pred: fn(&LocusPoint) -> bool| -> Vec<String> {
        points.iter().filter(|x| pred(x)).map(|x| x.point.clone()).collect()
    };
    let (s1, sp, vp) = (pick(|x| x.in_s1), pick(|x| x.in_sp), pick(|x| x.in_vp));
    let vp_is_whole = vp.len() == points.len();
    let subgroup = if vp_is_whole { order_p_subgroup(g, &report, p, cfg)? } else { None };
    if let Some(h) = &subgroup {
        if h.order() as u64 != p {
            return Err(Error::Internal(format!("G_{p} has order {}", h.order())));
        }
    }
    let subgroup_normal = subgroup.as_ref().map(|h| is_normal(h).normal);
    Ok(LocusReport {
        prime: p,
        points,
        s1,
        sp,
        vp,
        vp_is_whole,
        subgroup_order: subgroup.as_ref().map(ClosedSubgroup::order),
        subgroup,
        subgroup_normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{constant, mu};
    use crate::group::FiniteGroup;

    #[test]
    fn mu2_over_z2() {
        let z2 = Ring::localized(2).unwrap();
        let g = mu(&z2, 2).unwrap();
        let rep = locus_report(&g, 2, &PointsConfig::default()).unwrap();
        assert_eq!(rep.s1, vec!["generic"]);
        assert_eq!(rep.sp, vec!["generic", "closed"]);
        assert_eq!(rep.vp, vec!["generic", "closed"]);
        assert_eq!(rep.subgroup.unwrap(), ClosedSubgroup::whole(&g));
        assert_eq!(rep.subgroup_normal, Some(true));
    }

    #[test]
    fn constant_groups() {
        let cfg = PointsConfig::default();
        let z2 = Ring::localized(2).unwrap();
        let rep = locus_report(&constant(&z2, &FiniteGroup::cyclic(2)).unwrap(), 2, &cfg).unwrap();
        assert_eq!(rep.s1.len(), 2);
        assert!(rep.vp_is_whole);
        assert_eq!(rep.subgroup_order, Some(2));
        let f5 = Ring::prime_field(5).unwrap();
        let s3 = constant(&f5, &FiniteGroup::symmetric3()).unwrap();
        let rep = locus_report(&s3, 2, &cfg).unwrap();
        assert!(rep.vp.is_empty());
        assert_eq!(rep.s1, vec!["pt"]);
        let rep = locus_report(&s3, 3, &cfg).unwrap();
        assert!(rep.vp_is_whole);
        assert_eq!(rep.subgroup_order, Some(3));
        assert_eq!(rep.subgroup_normal, Some(true));
        let s3z = constant(&z2, &FiniteGroup::symmetric3()).unwrap();
        let rep = locus_report(&s3z, 3, &cfg).unwrap();
        assert!(rep.vp_is_whole && rep.subgroup_normal == Some(true));
    }
}
