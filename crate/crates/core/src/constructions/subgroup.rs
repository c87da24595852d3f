//! Closed subgroups given by Hopf ideals: kernels, images, intersections,
//! normality and quotients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{points, GroupScheme, GroupSchemeHom, PointsConfig};
use crate::linalg::{
    is_zero_vec, kernel, scale_vec, sub_vec, unit_vec, Matrix, ModuleMap, Submodule, Summand, Vector,
};
use crate::rings::{Elem, Ring};

/// A closed subgroup H ⊂ G, stored as the canonical form of its ideal in
/// Hopf(G) together with the quotient Hopf algebra Hopf(H) = Hopf(G)/I.
#[derive(Clone, Debug)]
pub struct ClosedSubgroup {
    ambient: GroupScheme,
    generators: Vec<Vector>,
    ideal: Submodule,
    projection: Summand,
    scheme: GroupScheme,
}

impl PartialEq for ClosedSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient.same_structure(&other.ambient) && self.ideal == other.ideal
    }
}

impl Eq for ClosedSubgroup {}

fn algebra_ideal(g: &GroupScheme, gens: &[Vector]) -> Submodule {
    let m = g.order();
    let mut spanning = Vec::with_capacity(gens.len() * m);
    for x in gens {
        for j in 0..m {
            spanning.push(g.mul(&g.basis_vec(j), x));
            spanning.push(g.mul(x, &g.basis_vec(j)));
        }
    }
    Submodule::span(g.base(), &spanning, m)
}

fn fmt_vec(r: &Ring, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| r.fmt_elem(x)).collect();
    format!("[{}]", parts.join(", "))
}

impl ClosedSubgroup {
    /// The subgroup cut out by the ideal generated by `gens`. Fails when the
    /// ideal is not a Hopf ideal or the quotient is not free.
    pub fn from_generators(ambient: &GroupScheme, gens: Vec<Vector>) -> Result<ClosedSubgroup> {
        let g = ambient;
        let r = g.base();
        let m = g.order();
        if gens.iter().any(|x| x.len() != m) {
            return Err(Error::Dimension(format!("ideal generators must have length {m}")));
        }
        let ideal = algebra_ideal(g, &gens);
        let projection = Summand::from_generators(r, &ideal.rows, m).map_err(|left| {
            Error::NotFree(format!(
                "quotient by the ideal is not free: no unit pivot in {}",
                left.iter().map(|v| fmt_vec(r, v)).collect::<Vec<_>>().join(", ")
            ))
        })?;
        let basis = projection.complement();
        let n = basis.len();
        let pi = |v: &[Elem]| projection.project(r, v);
        for x in &ideal.rows {
            if !r.is_zero(&g.counit_of(x)) {
                return Err(Error::Precondition(format!("ideal element {} has nonzero counit", fmt_vec(r, x))));
            }
            if !is_zero_vec(r, &pi(&g.antipode(x))) {
                return Err(Error::Precondition(format!("ideal is not stable under the antipode at {}", fmt_vec(r, x))));
            }
            let t = g.comult(x);
            let rows: Matrix = t.iter().map(|row| pi(row)).collect();
            let cols = crate::linalg::transpose(&rows, n);
            if cols.iter().any(|c| !is_zero_vec(r, &pi(c))) {
                return Err(Error::Precondition(format!("ideal is not a coideal at {}", fmt_vec(r, x))));
            }
        }
        let pi2 = |t: &Matrix| -> Matrix {
            let rows: Matrix = t.iter().map(|row| pi(row)).collect();
            let cols: Matrix = crate::linalg::transpose(&rows, n).iter().map(|c| pi(c)).collect();
            crate::linalg::transpose(&cols, n)
        };
        let mult = basis
            .iter()
            .map(|&a| basis.iter().map(|&b| pi(&g.mult_tensor()[a][b])).collect())
            .collect();
        let comult = basis.iter().map(|&a| pi2(&g.comult_tensor()[a])).collect();
        let counit = basis.iter().map(|&a| g.counit()[a].clone()).collect();
        let antipode = basis.iter().map(|&a| pi(&g.antipode_matrix()[a])).collect();
        let mut scheme = GroupScheme::new(r.clone(), mult, pi(g.unit()), comult, counit, antipode)?;
        if let Some(name) = g.name() {
            scheme = scheme.with_name(format!("subgroup of {name}"));
        }
        if let crate::hopf::Verification::Fail(f) = scheme.verify() {
            return Err(Error::Internal(format!("quotient by a Hopf ideal fails {:?}", f.axiom)));
        }
        Ok(ClosedSubgroup { ambient: g.clone(), generators: gens, ideal, projection, scheme })
    }

    pub fn whole(g: &GroupScheme) -> ClosedSubgroup {
        ClosedSubgroup::from_generators(g, Vec::new()).expect("zero ideal")
    }

    /// The unit section, cut out by the augmentation ideal.
    pub fn trivial(g: &GroupScheme) -> ClosedSubgroup {
        ClosedSubgroup::from_generators(g, augmentation_generators(g)).expect("augmentation ideal")
    }

    pub fn ambient(&self) -> &GroupScheme {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn ideal(&self) -> &Submodule {
        &self.ideal
    }

    /// Hopf(H) as a group scheme, on the basis of non-pivot ambient basis
    /// elements.
    pub fn scheme(&self) -> &GroupScheme {
        &self.scheme
    }

    pub fn order(&self) -> usize {
        self.scheme.order()
    }

    /// Restriction Hopf(G) -> Hopf(H).
    pub fn project(&self, a: &[Elem]) -> Vector {
        self.projection.project(self.ambient.base(), a)
    }

    /// The closed immersion H -> G.
    pub fn inclusion(&self) -> GroupSchemeHom {
        let r = self.ambient.base();
        let m = self.ambient.order();
        let map = (0..m).map(|j| self.project(&unit_vec(r, m, j))).collect();
        GroupSchemeHom::new(self.scheme.clone(), self.ambient.clone(), map).expect("closed immersion")
    }

    /// H ⊆ K as subgroups, i.e. I_K ⊆ I_H.
    pub fn is_subgroup_of(&self, other: &ClosedSubgroup) -> bool {
        other.ideal.is_submodule_of(self.ambient.base(), &self.ideal)
    }

    pub fn contains_point(&self, point: &[Elem]) -> bool {
        let r = self.ambient.base();
        self.ideal.rows.iter().all(|x| r.is_zero(&crate::hopf::points::evaluate(r, point, x)))
    }

    pub fn base_change_to(&self, t: &Ring) -> Result<ClosedSubgroup> {
        let phi = crate::rings::RingHom::natural(self.ambient.base(), t)?;
        let gens = self.ideal.rows.iter().map(|v| v.iter().map(|x| phi.apply(x)).collect()).collect();
        ClosedSubgroup::from_generators(&self.ambient.base_change(&phi)?, gens)
    }
}

/// e_j − ε(e_j)·1 for every basis element.
pub fn augmentation_generators(g: &GroupScheme) -> Vec<Vector> {
    let r = g.base();
    (0..g.order())
        .map(|j| sub_vec(r, &g.basis_vec(j), &scale_vec(r, &g.counit()[j], g.unit())))
        .collect()
}

pub fn kernel_of(f: &GroupSchemeHom) -> Result<ClosedSubgroup> {
    let gens = augmentation_generators(&f.target).iter().map(|a| f.pull(a)).collect();
    ClosedSubgroup::from_generators(&f.source, gens)
}

/// The scheme-theoretic image, cut out by the kernel of the algebra map.
pub fn image_of(f: &GroupSchemeHom) -> Result<ClosedSubgroup> {
    let (ms, mt) = (f.source.order(), f.target.order());
    let columns = crate::linalg::transpose(&f.map, ms);
    let map = ModuleMap::new(mt, ms, columns)?;
    let k = kernel(f.target.base(), &map);
    ClosedSubgroup::from_generators(&f.target, k.rows)
}

pub fn intersect(h1: &ClosedSubgroup, h2: &ClosedSubgroup) -> Result<ClosedSubgroup> {
    if !h1.ambient.same_structure(&h2.ambient) {
        return Err(Error::Precondition("subgroups of different ambient schemes".into()));
    }
    let mut gens = h1.ideal.rows.clone();
    gens.extend(h2.ideal.rows.iter().cloned());
    ClosedSubgroup::from_generators(&h1.ambient, gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityCertificate {
    pub normal: bool,
    /// ψ(x) ∈ Hopf(G)⊗Hopf(H) for each ideal generator x, as a matrix over
    /// basis(G) × basis(H).
    pub values: Vec<Vec<Vec<String>>>,
}

/// ψ(a) = Σ a₍₁₎S(a₍₃₎) ⊗ π(a₍₂₎), the coaction of conjugation G×H -> G.
pub fn conjugation_coaction(h: &ClosedSubgroup, a: &[Elem]) -> Matrix {
    let g = &h.ambient;
    let r = g.base();
    let m = g.order();
    let n = h.order();
    let mut out = vec![vec![r.zero(); n]; m];
    let first = g.comult(a);
    for (i, row) in first.iter().enumerate() {
        for (jk, c) in row.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let second = g.comult_tensor()[jk].clone();
            for (j, row2) in second.iter().enumerate() {
                let pj = h.project(&g.basis_vec(j));
                if is_zero_vec(r, &pj) {
                    continue;
                }
                for (k, c2) in row2.iter().enumerate() {
                    if r.is_zero(c2) {
                        continue;
                    }
                    let left = g.mul(&g.basis_vec(i), &g.antipode(&g.basis_vec(k)));
                    let coef = r.mul(c, c2);
                    for (x, lx) in left.iter().enumerate() {
                        if r.is_zero(lx) {
                            continue;
                        }
                        let s = r.mul(&coef, lx);
                        for (y, py) in pj.iter().enumerate() {
                            out[x][y] = r.add(&out[x][y], &r.mul(&s, py));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn is_normal(h: &ClosedSubgroup) -> NormalityCertificate {
    let r = h.ambient.base();
    let gens = if h.generators.is_empty() { h.ideal.rows.clone() } else { h.generators.clone() };
    let psis: Vec<Matrix> = gens.iter().map(|x| conjugation_coaction(h, x)).collect();
    let normal = psis.iter().all(|p| p.iter().all(|row| is_zero_vec(r, row)));
    let values = psis
        .iter()
        .map(|p| p.iter().map(|row| row.iter().map(|x| r.fmt_elem(x)).collect()).collect())
        .collect();
    NormalityCertificate { normal, values }
}

/// Point counts for 1 -> H(T) -> G(T) -> G''(T) on one test ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessRow {
    pub ring: String,
    pub kernel_points: usize,
    pub ambient_points: usize,
    pub quotient_points: usize,
    pub image_points: usize,
    pub exact_in_middle: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug)]
pub struct ExtensionWitness {
    pub kernel: ClosedSubgroup,
    pub quotient_map: GroupSchemeHom,
    pub exactness: Vec<ExactnessRow>,
}

impl ExtensionWitness {
    pub fn quotient(&self) -> &GroupScheme {
        &self.quotient_map.target
    }

    pub fn ranks_multiply(&self) -> bool {
        self.kernel.order() * self.quotient().order() == self.kernel.ambient.order()
    }
}

/// Coinvariants of the right H-coaction: a with (id⊗π)Δa = a⊗1.
pub fn coinvariants(h: &ClosedSubgroup) -> Submodule {
    let g = &h.ambient;
    let r = g.base();
    let (m, n) = (g.order(), h.order());
    let one_h = h.project(g.unit());
    let mut matrix = vec![vec![r.zero(); m]; m * n];
    for a in 0..m {
        let t = g.comult_tensor()[a].clone();
        for (x, row) in t.iter().enumerate() {
            let p = h.project(row);
            for (y, v) in p.iter().enumerate() {
                matrix[x * n + y][a] = r.add(&matrix[x * n + y][a], v);
            }
        }
        for (y, v) in one_h.iter().enumerate() {
            matrix[a * n + y][a] = r.sub(&matrix[a * n + y][a], v);
        }
    }
    kernel(r, &ModuleMap { domain: m, codomain: m * n, matrix })
}

/// G/H as the spectrum of the coinvariant subalgebra, with exactness
/// checked on the given test rings.
pub fn quotient(h: &ClosedSubgroup, test_rings: &[Ring], cfg: &PointsConfig) -> Result<ExtensionWitness> {
    let g = &h.ambient;
    let r = g.base();
    let m = g.order();
    if !is_normal(h).normal {
        return Err(Error::Precondition("quotient by a subgroup that is not normal".into()));
    }
    let coinv = coinvariants(h);
    let sub = Summand::from_generators(r, &coinv.rows, m)
        .map_err(|_| Error::NotFree("coinvariant subalgebra is not a free direct summand".into()))?;
    if sub.rank() * h.order() != m {
        return Err(Error::NotFree(format!(
            "coinvariants have rank {} but order(G)/order(H) = {}/{}",
            sub.rank(),
            m,
            h.order()
        )));
    }
    let n = sub.rank();
    let coords = |v: &[Elem]| -> Result<Vector> {
        sub.coords(r, v).ok_or_else(|| Error::Internal("coinvariants are not closed".into()))
    };
    let b = &sub.rows;
    let mult = b
        .iter()
        .map(|x| b.iter().map(|y| coords(&g.mul(x, y))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut comult = Vec::with_capacity(n);
    for x in b {
        let t = g.comult(x);
        let c: Matrix = sub.pivots.iter().map(|&p| sub.pivots.iter().map(|&q| t[p][q].clone()).collect()).collect();
        let mut rebuilt = vec![vec![r.zero(); m]; m];
        for (i, ci) in c.iter().enumerate() {
            for (j, cij) in ci.iter().enumerate() {
                if r.is_zero(cij) {
                    continue;
                }
                for (u, bu) in b[i].iter().enumerate() {
                    let s = r.mul(cij, bu);
                    crate::linalg::axpy(r, &mut rebuilt[u], &s, &b[j]);
                }
            }
        }
        if rebuilt != t {
            return Err(Error::Internal("comultiplication leaves the coinvariants".into()));
        }
        comult.push(c);
    }
    let counit = b.iter().map(|x| g.counit_of(x)).collect();
    let antipode = b.iter().map(|x| coords(&g.antipode(x))).collect::<Result<Vec<_>>>()?;
    let mut q = GroupScheme::new(r.clone(), mult, coords(g.unit())?, comult, counit, antipode)?;
    if let Some(name) = g.name() {
        q = q.with_name(format!("quotient of {name}"));
    }
    if let crate::hopf::Verification::Fail(f) = q.verify() {
        return Err(Error::Internal(format!("quotient Hopf algebra fails {:?}", f.axiom)));
    }
    let quotient_map = GroupSchemeHom::new(g.clone(), q, b.clone())?;
    let exactness = test_rings
        .iter()
        .map(|t| exactness_row(h, &quotient_map, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtensionWitness { kernel: h.clone(), quotient_map, exactness })
}

pub fn exactness_row(h: &ClosedSubgroup, q: &GroupSchemeHom, t: &Ring, cfg: &PointsConfig) -> Result<ExactnessRow> {
    let g = h.ambient();
    let gt = points(g, t, cfg)?;
    let ht = points(h.scheme(), t, cfg)?;
    let qt = points(&q.target, t, cfg)?;
    let incl = h.inclusion().base_change_to(t)?;
    let qmap = q.base_change_to(t)?;
    let hsub = h.base_change_to(t)?;
    let mut from_h: Vec<Vector> = ht.elements.iter().map(|p| incl.push_point(p)).collect();
    from_h.sort();
    from_h.dedup();
    let mut kern: Vec<Vector> = gt
        .elements
        .iter()
        .filter(|p| qt.index_of(&qmap.push_point(p)) == qt.index_of(&qmap.push_point(&gt.elements[gt.identity])))
        .cloned()
        .collect();
    kern.sort();
    let mut image: Vec<Vector> = gt.elements.iter().map(|p| qmap.push_point(p)).collect();
    image.sort();
    image.dedup();
    let in_h = gt.elements.iter().filter(|p| hsub.contains_point(p)).count();
    Ok(ExactnessRow {
        ring: t.to_string(),
        kernel_points: ht.order(),
        ambient_points: gt.order(),
        quotient_points: qt.order(),
        image_points: image.len(),
        exact_in_middle: from_h == kern && in_h == kern.len(),
        surjective: image.len() == qt.order(),
    })
}
