//! Brute-force point enumeration through an algebra generating set.
//!
//! Generators are chosen greedily from a pool: an element is added when it
//! does not lie in the subalgebra generated by the earlier choices. Two
//! pools are tried, the basis alone and the basis preceded by the sums of
//! basis elements grouped by binary digits of their index, and the one with
//! fewer assignments to enumerate is used.
//! A point is determined by the values of the generators, each of which must
//! be a root of the characteristic polynomial of its multiplication matrix;
//! every combination of roots is expanded to the whole basis and kept when
//! it respects the multiplication table and the unit.

use rayon::prelude::*;

use super::groups::AbstractGroup;
use crate::error::{Error, Result};
use crate::hopf::GroupScheme;
use crate::linalg::{charpoly, kernel, ModuleMap, Submodule, Vector};
use crate::rings::{Elem, Ring};

/// Default bound on the number of generator-value combinations.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OraclePoints {
    /// Value vectors (φ(e_0), ..., φ(e_{m-1})) in ascending order.
    pub elements: Vec<Vector>,
    pub group: AbstractGroup,
}

struct Presentation {
    generators: Vec<Vector>,
    /// Exponent vectors of the spanning monomials.
    monomials: Vec<Vec<u32>>,
    /// e_j = Σ coeffs[j][t] · monomials[t].
    coeffs: Vec<Vector>,
}

fn present(g: &GroupScheme, pool: &[Vector]) -> Result<Presentation> {
    let r = g.base();
    let m = g.order();
    let mut generators = Vec::new();
    let mut monomials: Vec<Vec<u32>> = vec![Vec::new()];
    let mut vectors: Vec<Vector> = vec![g.unit().clone()];
    let mut span = Submodule::span(r, &vectors, m);
    for cand in pool {
        if span.contains(r, cand) {
            continue;
        }
        generators.push(cand.clone());
        for mono in monomials.iter_mut() {
            mono.push(0);
        }
        let mut frontier: Vec<usize> = (0..monomials.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for t in frontier {
                for (pos, gi) in generators.iter().enumerate() {
                    let v = g.mul(&vectors[t], gi);
                    if span.contains(r, &v) {
                        continue;
                    }
                    let mut exps = monomials[t].clone();
                    exps[pos] += 1;
                    monomials.push(exps);
                    vectors.push(v);
                    span = Submodule::span(r, &vectors, m);
                    next.push(vectors.len() - 1);
                }
            }
            frontier = next;
        }
    }
    let mut coeffs = Vec::with_capacity(m);
    for j in 0..m {
        let c = express(r, &g.basis_vec(j), &vectors)
            .ok_or_else(|| Error::Internal(format!("basis element {j} is not a polynomial in the generators")))?;
        coeffs.push(c);
    }
    Ok(Presentation { generators, monomials, coeffs })
}

/// Coefficients c with target = Σ c_t · vectors[t], found as a kernel
/// vector of [target | vectors] with a unit first entry.
fn express(r: &Ring, target: &[Elem], vectors: &[Vector]) -> Option<Vector> {
    let m = target.len();
    let matrix: Vec<Vector> = (0..m)
        .map(|row| {
            let mut line = vec![target[row].clone()];
            line.extend(vectors.iter().map(|v| v[row].clone()));
            line
        })
        .collect();
    let ker = kernel(r, &ModuleMap { domain: vectors.len() + 1, codomain: m, matrix });
    let lead = ker.rows.iter().find(|row| r.is_unit(&row[0]))?;
    let scale = r.neg(&r.inv(&lead[0]).expect("unit"));
    Some(lead[1..].iter().map(|c| r.mul(c, &scale)).collect())
}

/// The first monic relation g^d = Σ_{k<d} c_k g^k, as a polynomial
/// (low to high); Cayley–Hamilton guarantees one with d ≤ rank.
fn monic_relation(g: &GroupScheme, x: &[Elem]) -> Vector {
    let r = g.base();
    let mut powers = vec![g.unit().clone()];
    loop {
        let next = g.mul(powers.last().expect("nonempty"), x);
        if let Some(c) = express(r, &next, &powers) {
            let mut poly: Vector = c.iter().map(|a| r.neg(a)).collect();
            poly.push(r.one());
            return poly;
        }
        if powers.len() > g.order() {
            let lm: Vec<Vector> = (0..g.order()).map(|k| g.mul(&g.basis_vec(k), x)).collect();
            return charpoly(r, &lm);
        }
        powers.push(next);
    }
}

fn roots(r: &Ring, poly: &[Elem], field: &[Elem]) -> Vec<Elem> {
    field
        .iter()
        .filter(|t| {
            let v = poly.iter().rev().fold(r.zero(), |acc, c| r.add(&r.mul(&acc, t), c));
            r.is_zero(&v)
        })
        .cloned()
        .collect()
}

/// All points of G over a finite ring `t`, with the convolution table.
pub fn enumerate_points(g: &GroupScheme, t: &Ring, budget: u64) -> Result<OraclePoints> {
    let elements_of_t = t
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("oracle enumeration needs a finite ring, got {t}")))?;
    let gt = g.base_change_to(t)?;
    let m = gt.order();
    let basis: Vec<Vector> = (0..m).map(|i| gt.basis_vec(i)).collect();
    let mut with_digits: Vec<Vector> = (0..usize::BITS - (m.max(2) - 1).leading_zeros())
        .map(|bit| (0..m).map(|i| if i >> bit & 1 == 1 { t.one() } else { t.zero() }).collect())
        .collect();
    with_digits.extend(basis.iter().cloned());
    let mut best: Option<(f64, Presentation, Vec<Vec<Elem>>)> = None;
    for pool in [basis, with_digits] {
        let pres = present(&gt, &pool)?;
        let candidates: Vec<Vec<Elem>> =
            pres.generators.iter().map(|x| roots(t, &monic_relation(&gt, x), &elements_of_t)).collect();
        let total: f64 = candidates.iter().map(|c| c.len() as f64).product();
        if best.as_ref().is_none_or(|(b, _, _)| total < *b) {
            best = Some((total, pres, candidates));
        }
    }
    let (total, pres, candidates) = best.expect("two pools");
    if total > budget as f64 {
        return Err(Error::Budget(format!("{total} generator assignments exceed the oracle budget {budget}")));
    }
    let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
    for c in &candidates {
        tuples = tuples
            .into_iter()
            .flat_map(|tu| {
                c.iter().map(move |x| {
                    let mut next = tu.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect();
    }
    let sparse = SparseAlgebra::new(&gt);
    let mut elements: Vec<Vector> = tuples
        .par_iter()
        .filter_map(|vals| {
            let mono: Vec<Elem> = pres
                .monomials
                .iter()
                .map(|exps| {
                    vals.iter().zip(exps).fold(t.one(), |acc, (v, &e)| t.mul(&acc, &t.pow(v, e as u64)))
                })
                .collect();
            let phi: Vector = pres
                .coeffs
                .iter()
                .map(|c| c.iter().zip(&mono).fold(t.zero(), |acc, (a, b)| t.add(&acc, &t.mul(a, b))))
                .collect();
            sparse.is_algebra_map(t, &phi).then_some(phi)
        })
        .collect();
    elements.sort();
    elements.dedup();
    let index = |v: &Vector| elements.binary_search(v).ok();
    let mut table = Vec::with_capacity(elements.len());
    for a in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in &elements {
            let prod: Vector = (0..m)
                .map(|k| {
                    let mut acc = t.zero();
                    for (i, ti) in gt.comult_tensor()[k].iter().enumerate() {
                        for (j, c) in ti.iter().enumerate() {
                            acc = t.add(&acc, &t.mul(c, &t.mul(&a[i], &b[j])));
                        }
                    }
                    acc
                })
                .collect();
            row.push(index(&prod).ok_or_else(|| Error::Internal("oracle points not closed".into()))?);
        }
        table.push(row);
    }
    let group = AbstractGroup::new(table)?;
    Ok(OraclePoints { elements, group })
}

struct SparseAlgebra {
    unit: Vec<(usize, Elem)>,
    mult: Vec<Vec<Vec<(usize, Elem)>>>,
}

impl SparseAlgebra {
    fn new(g: &GroupScheme) -> Self {
        let r = g.base();
        let sparse = |v: &Vector| -> Vec<(usize, Elem)> {
            v.iter().enumerate().filter(|(_, c)| !r.is_zero(c)).map(|(k, c)| (k, c.clone())).collect()
        };
        SparseAlgebra {
            unit: sparse(g.unit()),
            mult: g.mult_tensor().iter().map(|row| row.iter().map(sparse).collect()).collect(),
        }
    }

    fn is_algebra_map(&self, r: &Ring, phi: &[Elem]) -> bool {
        let eval = |v: &[(usize, Elem)]| v.iter().fold(r.zero(), |acc, (k, c)| r.add(&acc, &r.mul(c, &phi[*k])));
        if !r.is_one(&eval(&self.unit)) {
            return false;
        }
        self.mult
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| eval(v) == r.mul(&phi[i], &phi[j])))
    }
}
