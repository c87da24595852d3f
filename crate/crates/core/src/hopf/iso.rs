//! Bounded search for isomorphisms of group schemes.
//!
//! The search assigns the images ψ(f_0), ..., ψ(f_{m-1}) of the target basis
//! one row at a time, propagating the algebra relations and checking counit
//! and comultiplication as soon as the rows involved are known. Over finite
//! rings rows range over all vectors with the right counit; over infinite
//! rings entries come from a small fixed set of rationals. Exhausting the
//! search therefore proves non-isomorphism only over finite rings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::points::algebra_homs;
use super::{GroupScheme, GroupSchemeHom, PointsConfig};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_invertible, Matrix, Vector};
use crate::rings::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoConfig {
    /// Maximum number of search nodes.
    pub budget: u64,
    /// Additional entries tried over infinite rings.
    pub extra_entries: Vec<Elem>,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { budget: 2_000_000, extra_entries: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Found(GroupSchemeHom),
    /// Proven absent, with the invariant or exhaustive search that shows it.
    NonIsomorphic(String),
    /// Nothing found within the bound.
    NotFound(String),
}

impl IsoOutcome {
    pub fn found(&self) -> Option<&GroupSchemeHom> {
        match self {
            IsoOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

fn small_rationals(r: &Ring) -> Vec<Elem> {
    let mut out = Vec::new();
    for n in -3i64..=3 {
        for d in 1i64..=3 {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            if let Ok(e) = r.from_rational(&q) {
                out.push(e);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Invariants that distinguish schemes over a field.
fn field_obstruction(g: &GroupScheme, h: &GroupScheme) -> Result<Option<String>> {
    if g.is_commutative() != h.is_commutative() {
        return Ok(Some("one scheme is commutative and the other is not".into()));
    }
    let r = g.base();
    if !r.is_field() {
        return Ok(None);
    }
    if g.is_etale().etale != h.is_etale().etale {
        return Ok(Some("exactly one scheme is étale".into()));
    }
    if r.is_finite() {
        let cfg = PointsConfig::default();
        let a = algebra_homs(g, &cfg)?.len();
        let b = algebra_homs(h, &cfg)?.len();
        if a != b {
            return Ok(Some(format!("{a} versus {b} points over {r}")));
        }
    }
    Ok(None)
}

/// Searches for an isomorphism G -> H.
pub fn find_isomorphism(g: &GroupScheme, h: &GroupScheme, cfg: &IsoConfig) -> Result<IsoOutcome> {
    if g.base() != h.base() {
        return Err(Error::Precondition("schemes live over different bases".into()));
    }
    if g.order() != h.order() {
        return Ok(IsoOutcome::NonIsomorphic(format!("orders {} and {} differ", g.order(), h.order())));
    }
    if let Some(reason) = field_obstruction(g, h)? {
        return Ok(IsoOutcome::NonIsomorphic(reason));
    }
    let r = g.base();
    let m = g.order();
    let entries = match r.elements() {
        Some(all) => all,
        None => {
            let mut e = small_rationals(r);
            e.extend(cfg.extra_entries.iter().cloned());
            e.sort();
            e.dedup();
            e
        }
    };
    let total = (entries.len() as f64).powi(m as i32);
    if total > cfg.budget as f64 * 16.0 {
        return Ok(IsoOutcome::NotFound(format!("row space of size {total:.0} exceeds the bound")));
    }
    let mut by_counit: BTreeMap<Elem, Vec<Vector>> = BTreeMap::new();
    let mut cur = vec![0usize; m];
    loop {
        let v: Vector = cur.iter().map(|&i| entries[i].clone()).collect();
        by_counit.entry(g.counit_of(&v)).or_default().push(v);
        let mut pos = 0;
        while pos < m {
            cur[pos] += 1;
            if cur[pos] < entries.len() {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
        if pos == m {
            break;
        }
    }
    let mut s = IsoSearch { g, h, by_counit, nodes: 0, budget: cfg.budget };
    match s.descend(vec![None; m]) {
        Ok(Some(map)) => Ok(IsoOutcome::Found(GroupSchemeHom::from_parts(g.clone(), h.clone(), map))),
        Ok(None) if r.is_finite() => {
            Ok(IsoOutcome::NonIsomorphic("exhaustive search over all algebra maps".into()))
        }
        Ok(None) => Ok(IsoOutcome::NotFound(format!(
            "no isomorphism with entries among {} small rationals",
            entries.len()
        ))),
        Err(Error::Budget(msg)) => Ok(IsoOutcome::NotFound(msg)),
        Err(e) => Err(e),
    }
}

struct IsoSearch<'a> {
    g: &'a GroupScheme,
    h: &'a GroupScheme,
    by_counit: BTreeMap<Elem, Vec<Vector>>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    fn combine(&self, coeffs: &[(usize, &Elem)], rows: &[Option<Vector>]) -> Vector {
        let r = self.g.base();
        let mut out = self.g.zero_vec();
        for (k, c) in coeffs {
            axpy(r, &mut out, c, rows[*k].as_ref().expect("known row"));
        }
        out
    }

    /// Propagates algebra relations; None on contradiction.
    fn propagate(&self, mut rows: Vec<Option<Vector>>) -> Option<Vec<Option<Vector>>> {
        let (g, h) = (self.g, self.h);
        let r = g.base();
        let m = g.order();
        loop {
            let mut changed = false;
            let mut relations: Vec<(Vector, &Vector)> = Vec::new();
            relations.push((g.unit().clone(), h.unit()));
            for i in 0..m {
                for j in i..m {
                    if let (Some(a), Some(b)) = (&rows[i], &rows[j]) {
                        relations.push((g.mul(a, b), &h.mult_tensor()[i][j]));
                    }
                }
            }
            for (lhs, coeffs) in relations {
                let nz: Vec<(usize, &Elem)> =
                    coeffs.iter().enumerate().filter(|(_, c)| !r.is_zero(c)).collect();
                let unknown: Vec<(usize, &Elem)> =
                    nz.iter().filter(|(k, _)| rows[*k].is_none()).cloned().collect();
                let known: Vec<(usize, &Elem)> =
                    nz.iter().filter(|(k, _)| rows[*k].is_some()).cloned().collect();
                let acc = self.combine(&known, &rows);
                match unknown.len() {
                    0 => {
                        if acc != lhs {
                            return None;
                        }
                    }
                    1 => {
                        let (k, c) = unknown[0];
                        if let Some(ci) = r.inv(c) {
                            let v: Vector =
                                lhs.iter().zip(&acc).map(|(x, y)| r.mul(&r.sub(x, y), &ci)).collect();
                            if g.counit_of(&v) != h.counit()[k] {
                                return None;
                            }
                            rows[k] = Some(v);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(rows);
            }
        }
    }

    fn coalgebra_ok(&self, rows: &[Option<Vector>]) -> bool {
        let (g, h) = (self.g, self.h);
        let r = g.base();
        for (k, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let t = &h.comult_tensor()[k];
            let involved = t.iter().enumerate().all(|(i, ti)| {
                ti.iter().enumerate().all(|(j, c)| r.is_zero(c) || (rows[i].is_some() && rows[j].is_some()))
            });
            if !involved {
                continue;
            }
            let mut expect = vec![g.zero_vec(); g.order()];
            for (i, ti) in t.iter().enumerate() {
                for (j, c) in ti.iter().enumerate() {
                    if r.is_zero(c) {
                        continue;
                    }
                    let (a, b) = (rows[i].as_ref().unwrap(), rows[j].as_ref().unwrap());
                    for (x, ax) in a.iter().enumerate() {
                        if !r.is_zero(ax) {
                            axpy(r, &mut expect[x], &r.mul(c, ax), b);
                        }
                    }
                }
            }
            if g.comult(row) != expect {
                return false;
            }
        }
        true
    }

    fn descend(&mut self, rows: Vec<Option<Vector>>) -> Result<Option<Matrix>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!("isomorphism search exceeded {} nodes", self.budget)));
        }
        let Some(rows) = self.propagate(rows) else { return Ok(None) };
        if !self.coalgebra_ok(&rows) {
            return Ok(None);
        }
        let Some(k) = rows.iter().position(Option::is_none) else {
            let map: Matrix = rows.into_iter().map(Option::unwrap).collect();
            let hom = GroupSchemeHom::from_parts(self.g.clone(), self.h.clone(), map);
            if is_invertible(self.g.base(), &hom.map) && hom.is_homomorphism() {
                return Ok(Some(hom.map));
            }
            return Ok(None);
        };
        let want = &self.h.counit()[k];
        let cands = self.by_counit.get(want).cloned().unwrap_or_default();
        for v in cands {
            let mut next = rows.clone();
            next[k] = Some(v);
            if let Some(found) = self.descend(next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}
