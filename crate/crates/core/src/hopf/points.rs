//! The points functor: algebra homomorphisms Hopf(G) -> R' with the
//! convolution group law.
//!
//! Homomorphisms are found by a backtracking search over the basis
//! coordinates with constraint propagation through the relations
//! e_i·e_j = Σ c_ijk e_k and Σ u_k e_k = 1. Over a finite ring every value
//! is a candidate; over Q (étale schemes only) the candidates for e_i are
//! the rational roots of the characteristic polynomial of multiplication
//! by e_i.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::GroupScheme;
use crate::error::{Error, Result};
use crate::linalg::{charpoly, Vector};
use crate::rings::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsConfig {
    /// Maximum number of search nodes.
    pub budget: u64,
    /// Largest order accepted when enumerating Q-points.
    pub rational_bound: usize,
}

impl Default for PointsConfig {
    fn default() -> Self {
        PointsConfig { budget: 5_000_000, rational_bound: 64 }
    }
}

/// G(R') as an abstract group. Elements are the value vectors
/// (φ(e_0), ..., φ(e_{m-1})) in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGroup {
    pub ring: Ring,
    pub elements: Vec<Vector>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
}

impl PointGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, v: &[Elem]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(v)).ok()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// Convolution of two points of `g` (already over the target ring).
pub fn convolve_points(g: &GroupScheme, phi: &[Elem], psi: &[Elem]) -> Vector {
    let r = g.base();
    g.comult_tensor()
        .iter()
        .map(|t| {
            let mut acc = r.zero();
            for (i, row) in t.iter().enumerate() {
                if r.is_zero(&phi[i]) {
                    continue;
                }
                for (j, c) in row.iter().enumerate() {
                    if !r.is_zero(c) && !r.is_zero(&psi[j]) {
                        acc = r.add(&acc, &r.mul(c, &r.mul(&phi[i], &psi[j])));
                    }
                }
            }
            acc
        })
        .collect()
}

/// Evaluates a point (value vector) on an element of the algebra.
pub fn evaluate(r: &Ring, point: &[Elem], a: &[Elem]) -> Elem {
    point
        .iter()
        .zip(a)
        .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))
}

/// Builds the point group from a list of algebra homomorphisms of `g`
/// (which must already live over the target ring).
pub fn point_group_from(g: &GroupScheme, mut elements: Vec<Vector>) -> Result<PointGroup> {
    elements.sort();
    elements.dedup();
    let index: BTreeMap<&Vector, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let lookup = |v: &Vector| {
        index
            .get(v)
            .copied()
            .ok_or_else(|| Error::Internal("point set is not closed under convolution".into()))
    };
    let identity = lookup(g.counit())?;
    let mut table = Vec::with_capacity(elements.len());
    for a in &elements {
        let row = elements
            .iter()
            .map(|b| lookup(&convolve_points(g, a, b)))
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let inverses = elements
        .iter()
        .map(|a| {
            let inv: Vector = (0..g.order())
                .map(|k| evaluate(g.base(), a, &g.antipode_matrix()[k]))
                .collect();
            lookup(&inv)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointGroup { ring: g.base().clone(), elements, table, identity, inverses })
}

/// G(R') for finite R', or for R' = Q when G_Q is étale.
pub fn points(g: &GroupScheme, target: &Ring, cfg: &PointsConfig) -> Result<PointGroup> {
    let gt = g.base_change_to(target)?;
    let homs = algebra_homs(&gt, cfg)?;
    point_group_from(&gt, homs)
}

/// All algebra homomorphisms of `g` into its own base ring.
pub fn algebra_homs(g: &GroupScheme, cfg: &PointsConfig) -> Result<Vec<Vector>> {
    let r = g.base();
    let m = g.order();
    let candidates: Vec<Vec<Elem>> = if let Some(all) = r.elements() {
        vec![all; m]
    } else if *r == Ring::Rational {
        if m > cfg.rational_bound {
            return Err(Error::Budget(format!(
                "order {m} exceeds the rational point bound {}",
                cfg.rational_bound
            )));
        }
        if !g.is_etale().etale {
            return Err(Error::Unsupported(
                "rational points are only enumerated for étale schemes".into(),
            ));
        }
        (0..m)
            .map(|i| rational_roots(&charpoly(r, &g.mult_matrix(&g.basis_vec(i)))))
            .collect::<Result<Vec<_>>>()?
    } else {
        return Err(Error::Unsupported(format!("cannot enumerate points over infinite ring {r}")));
    };
    let search = Search::new(g, candidates, cfg.budget);
    let start = vec![None; m];
    let Some(start) = search.propagate(start) else { return Ok(Vec::new()) };
    let Some(k) = start.iter().position(Option::is_none) else {
        return Ok(vec![start.into_iter().map(Option::unwrap).collect()]);
    };
    let branches: Vec<Result<Vec<Vector>>> = search.candidates[k]
        .par_iter()
        .map(|v| {
            let mut a = start.clone();
            a[k] = Some(v.clone());
            let mut out = Vec::new();
            search.descend(a, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for b in branches {
        all.extend(b?);
    }
    all.sort();
    Ok(all)
}

struct Relation {
    /// None: the constant 1 (unit relation).
    lhs: Option<(usize, usize)>,
    rhs: Vec<(usize, Elem)>,
}

struct Search<'a> {
    ring: &'a Ring,
    candidates: Vec<Vec<Elem>>,
    restricted: bool,
    relations: Vec<Relation>,
    nodes: AtomicU64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a GroupScheme, candidates: Vec<Vec<Elem>>, budget: u64) -> Self {
        let r = g.base();
        let m = g.order();
        let sparse = |v: &Vector| -> Vec<(usize, Elem)> {
            v.iter().enumerate().filter(|(_, c)| !r.is_zero(c)).map(|(k, c)| (k, c.clone())).collect()
        };
        let mut relations = vec![Relation { lhs: None, rhs: sparse(g.unit()) }];
        for i in 0..m {
            for j in i..m {
                relations.push(Relation { lhs: Some((i, j)), rhs: sparse(&g.mult_tensor()[i][j]) });
            }
        }
        let restricted = r.elements().is_none();
        Search { ring: r, candidates, restricted, relations, nodes: AtomicU64::new(0), budget }
    }

    fn propagate(&self, mut a: Vec<Option<Elem>>) -> Option<Vec<Option<Elem>>> {
        let r = self.ring;
        loop {
            let mut changed = false;
            for rel in &self.relations {
                let lhs = match rel.lhs {
                    None => r.one(),
                    Some((i, j)) => match (&a[i], &a[j]) {
                        (Some(x), Some(y)) => r.mul(x, y),
                        _ => continue,
                    },
                };
                let mut known = r.zero();
                let mut unknown: Option<(usize, &Elem)> = None;
                let mut n_unknown = 0;
                for (k, c) in &rel.rhs {
                    match &a[*k] {
                        Some(v) => known = r.add(&known, &r.mul(c, v)),
                        None => {
                            n_unknown += 1;
                            unknown = Some((*k, c));
                        }
                    }
                }
                match n_unknown {
                    0 => {
                        if known != lhs {
                            return None;
                        }
                    }
                    1 => {
                        let (k, c) = unknown.expect("one unknown");
                        if let Some(ci) = r.inv(c) {
                            let v = r.mul(&r.sub(&lhs, &known), &ci);
                            if self.restricted && !self.candidates[k].contains(&v) {
                                return None;
                            }
                            a[k] = Some(v);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(a);
            }
        }
    }

    fn descend(&self, a: Vec<Option<Elem>>, out: &mut Vec<Vector>) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) > self.budget {
            return Err(Error::Budget(format!("point search exceeded {} nodes", self.budget)));
        }
        let Some(a) = self.propagate(a) else { return Ok(()) };
        match a.iter().position(Option::is_none) {
            None => {
                out.push(a.into_iter().map(Option::unwrap).collect());
                Ok(())
            }
            Some(k) => {
                for v in &self.candidates[k] {
                    let mut b = a.clone();
                    b[k] = Some(v.clone());
                    self.descend(b, out)?;
                }
                Ok(())
            }
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect();
    out.sort();
    out.dedup();
    out
}

/// Rational roots of a polynomial over Q (coefficients low to high).
pub fn rational_roots(poly: &[Elem]) -> Result<Vec<Elem>> {
    let mut coeffs: Vec<BigRational> = poly
        .iter()
        .map(|c| match c {
            Elem::Rat(q) => q.clone(),
            _ => panic!("rational polynomial expected"),
        })
        .collect();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let mut roots = Vec::new();
    let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        coeffs.drain(..lead_zeros);
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    if ints.len() > 1 {
        let too_big = || Error::Unsupported("coefficients too large for rational root search".into());
        let c0 = ints[0].abs().to_u64().ok_or_else(too_big)?;
        let cn = ints[ints.len() - 1].abs().to_u64().ok_or_else(too_big)?;
        for p in divisors(c0) {
            for q in divisors(cn) {
                for sign in [1i64, -1] {
                    let x = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                    let val = ints
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &x + BigRational::from_integer(c.clone()));
                    if val.is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots.into_iter().map(Elem::Rat).collect())
}
