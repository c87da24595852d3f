//! Splitting extensions with étale quotient, and common refinements of two
//! such extensions.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::constructions::subgroup::exactness_row;
use crate::constructions::{intersect, quotient, ExactnessRow, ExtensionWitness};
use crate::error::{Error, Result};
use crate::hopf::{points, PointGroup, PointsConfig};
use crate::rings::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStatus {
    Split,
    /// The search budget ran out.
    NotFoundWithinBounds,
    /// Exhaustive search found no homomorphic section.
    NoSection,
    /// No configured ring makes the quotient constant.
    NoSplittingRing,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitCertificate {
    /// Exact on points, including surjectivity, on every test ring.
    pub hochschild: bool,
    pub exactness: Vec<ExactnessRow>,
    pub splitting_ring: Option<String>,
    pub status: SplitStatus,
    /// section[i] = index in G(R') of the image of the i-th point of G''(R').
    pub section: Option<Vec<usize>>,
    pub quotient_points: usize,
    pub ambient_points: usize,
}

/// Default bound on section-search nodes.
pub const SECTION_BUDGET: u64 = 1_000_000;

fn generators(q: &PointGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![q.identity];
    for x in 0..q.order() {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier = span.clone();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = q.table[y][g];
                if !span.contains(&z) {
                    span.push(z);
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// Extends an assignment on generators to a homomorphism, if possible.
fn extend(q: &PointGroup, g: &PointGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut s: BTreeMap<usize, usize> = BTreeMap::from([(q.identity, g.identity)]);
    let mut frontier = vec![q.identity];
    while let Some(h) = frontier.pop() {
        for (&k, &sk) in gens.iter().zip(images) {
            let hk = q.table[h][k];
            let v = g.table[s[&h]][sk];
            match s.get(&hk) {
                Some(&w) if w != v => return None,
                Some(_) => {}
                None => {
                    s.insert(hk, v);
                    frontier.push(hk);
                }
            }
        }
    }
    let sec: Vec<usize> = (0..q.order()).map(|i| s[&i]).collect();
    let hom = (0..q.order()).all(|a| (0..q.order()).all(|b| sec[q.table[a][b]] == g.table[sec[a]][sec[b]]));
    hom.then_some(sec)
}

pub fn hochschild_split(
    e: &ExtensionWitness,
    test_rings: &[Ring],
    cfg: &PointsConfig,
    budget: u64,
) -> Result<SplitCertificate> {
    let g = e.kernel.ambient();
    let q = e.quotient();
    if !q.is_etale().etale {
        return Err(Error::Precondition("the quotient is not étale".into()));
    }
    if e.kernel.order().gcd(&q.order()) != 1 {
        return Err(Error::Precondition(format!(
            "orders {} and {} are not coprime",
            e.kernel.order(),
            q.order()
        )));
    }
    let exactness = test_rings
        .iter()
        .map(|t| exactness_row(&e.kernel, &e.quotient_map, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    let hochschild = exactness.iter().all(|r| r.exact_in_middle && r.surjective);
    if !hochschild {
        let bad = exactness.iter().find(|r| !(r.exact_in_middle && r.surjective)).expect("failing row");
        return Err(Error::Internal(format!("points sequence is not exact over {}", bad.ring)));
    }
    let mut candidates: Vec<Ring> = Vec::new();
    if g.base().is_finite() || *g.base() == Ring::Rational {
        candidates.push(g.base().clone());
    }
    candidates.extend(test_rings.iter().filter(|t| *t != g.base()).cloned());
    let mut splitting = None;
    for t in candidates {
        if points(q, &t, cfg)?.order() == q.order() {
            splitting = Some(t);
            break;
        }
    }
    let Some(t) = splitting else {
        return Ok(SplitCertificate {
            hochschild,
            exactness,
            splitting_ring: None,
            status: SplitStatus::NoSplittingRing,
            section: None,
            quotient_points: 0,
            ambient_points: 0,
        });
    };
    let gt = points(g, &t, cfg)?;
    let qt = points(q, &t, cfg)?;
    let qmap = e.quotient_map.base_change_to(&t)?;
    let proj: Vec<usize> = gt
        .elements
        .iter()
        .map(|p| qt.index_of(&qmap.push_point(p)).ok_or_else(|| Error::Internal("image point missing".into())))
        .collect::<Result<_>>()?;
    let gens = generators(&qt);
    let fibers: Vec<Vec<usize>> =
        gens.iter().map(|&k| (0..gt.order()).filter(|&x| proj[x] == k).collect()).collect();
    let mut choice = vec![0usize; gens.len()];
    let mut nodes = 0u64;
    let (status, section) = 'search: loop {
        if fibers.iter().any(Vec::is_empty) {
            break (SplitStatus::NoSection, None);
        }
        nodes += 1;
        if nodes > budget {
            break (SplitStatus::NotFoundWithinBounds, None);
        }
        let images: Vec<usize> = choice.iter().zip(&fibers).map(|(&c, f)| f[c]).collect();
        if let Some(sec) = extend(&qt, &gt, &gens, &images) {
            if (0..qt.order()).all(|i| proj[sec[i]] == i) {
                break (SplitStatus::Split, Some(sec));
            }
        }
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                break 'search (SplitStatus::NoSection, None);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < fibers[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    };
    Ok(SplitCertificate {
        hochschild,
        exactness,
        splitting_ring: Some(t.to_string()),
        status,
        section,
        quotient_points: qt.order(),
        ambient_points: gt.order(),
    })
}

/// The extension with kernel G′₁ ∩ G′₂; its quotient must again be étale
/// and flat.
pub fn common_refinement(
    e1: &ExtensionWitness,
    e2: &ExtensionWitness,
    test_rings: &[Ring],
    cfg: &PointsConfig,
) -> Result<ExtensionWitness> {
    if !e1.kernel.ambient().same_structure(e2.kernel.ambient()) {
        return Err(Error::Precondition("extensions of different group schemes".into()));
    }
    for e in [e1, e2] {
        if !e.quotient().is_etale().etale {
            return Err(Error::Precondition("common refinement needs étale quotients".into()));
        }
    }
    let internal = |what: &str, e: Error| Error::Internal(format!("{what}: {e}"));
    let k = intersect(&e1.kernel, &e2.kernel).map_err(|e| internal("intersection is not flat", e))?;
    let w = quotient(&k, test_rings, cfg).map_err(|e| internal("refined quotient failed", e))?;
    if !w.quotient().is_etale().etale {
        return Err(Error::Internal("refined quotient is not étale".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{constant, kernel_of, mu, mu3_by_inversion, product, ClosedSubgroup};
    use crate::group::FiniteGroup;
    use crate::testrings::{test_rings, DEFAULT_CAP};

    #[test]
    fn sections() {
        let cfg = PointsConfig::default();
        let s3 = constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap();
        let z3 = ClosedSubgroup::from_generators(&s3, [1, 2, 5].iter().map(|&i| s3.basis_vec(i)).collect()).unwrap();
        let w = quotient(&z3, &[Ring::Rational], &cfg).unwrap();
        let cert = hochschild_split(&w, &[Ring::Rational], &cfg, SECTION_BUDGET).unwrap();
        assert_eq!(cert.status, SplitStatus::Split);
        assert_eq!(cert.splitting_ring.as_deref(), Some("Q"));

        let f7 = Ring::prime_field(7).unwrap();
        let g = mu3_by_inversion(&f7).unwrap();
        let m3 = ClosedSubgroup::from_generators(
            &g,
            (0..6).filter(|i| i % 2 == 1).map(|i| g.basis_vec(i)).collect(),
        )
        .unwrap();
        assert_eq!(m3.order(), 3);
        let rings = test_rings(&f7, DEFAULT_CAP);
        let w = quotient(&m3, &rings, &cfg).unwrap();
        let cert = hochschild_split(&w, &rings, &cfg, SECTION_BUDGET).unwrap();
        assert_eq!(cert.status, SplitStatus::Split);
        assert_eq!(cert.splitting_ring.as_deref(), Some("GF(7)"));

        let z2 = Ring::localized(2).unwrap();
        let m2 = mu(&z2, 2).unwrap();
        let w = quotient(&ClosedSubgroup::whole(&m2), &test_rings(&z2, DEFAULT_CAP), &cfg).unwrap();
        let cert = hochschild_split(&w, &test_rings(&z2, DEFAULT_CAP), &cfg, SECTION_BUDGET).unwrap();
        assert_eq!(cert.status, SplitStatus::Split);
    }

    #[test]
    fn refinements() {
        let cfg = PointsConfig::default();
        let f5 = Ring::prime_field(5).unwrap();
        let z6 = constant(&f5, &FiniteGroup::cyclic(6)).unwrap();
        let rings = test_rings(&f5, DEFAULT_CAP);
        let whole = quotient(&ClosedSubgroup::whole(&z6), &rings, &cfg).unwrap();
        let two = quotient(&kernel_of(&z6.convolution_power(2).unwrap()).unwrap(), &rings, &cfg).unwrap();
        let r = common_refinement(&whole, &two, &rings, &cfg).unwrap();
        assert_eq!(r.kernel.order(), 2);
        let same = common_refinement(&two, &two, &rings, &cfg).unwrap();
        assert_eq!(same.kernel, two.kernel);

        let f2 = Ring::prime_field(2).unwrap();
        let g = product(&mu(&f2, 2).unwrap(), &constant(&f2, &FiniteGroup::cyclic(3)).unwrap()).unwrap();
        let rings = test_rings(&f2, DEFAULT_CAP);
        let e1 = quotient(&ClosedSubgroup::whole(&g), &rings, &cfg).unwrap();
        let e2 = crate::structure::connected_etale_sequence(&g, &rings, &cfg).unwrap();
        let r = common_refinement(&e1, &e2, &rings, &cfg).unwrap();
        assert_eq!((r.kernel.order(), r.quotient().order()), (2, 3));
        assert!(r.quotient().is_etale().etale);
    }
}
