//! Finite free Hopf algebras given by structure constants.
//!
//! A [`GroupScheme`] of order m over R has basis e_0..e_{m-1} and
//! - `mult[i][j][k]`: coefficient of e_k in e_i·e_j,
//! - `unit[k]`: coordinates of 1,
//! - `comult[k][i][j]`: coefficient of e_i⊗e_j in Δ(e_k),
//! - `counit[k]`: ε(e_k),
//! - `antipode[i][j]`: coefficient of e_j in S(e_i).

mod hom;
pub mod iso;
pub mod points;
pub mod verify;

use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vec, Matrix, Vector};
use crate::rings::{Elem, Ring, RingHom};

pub use hom::GroupSchemeHom;
pub use points::{points, PointGroup, PointsConfig};
pub use verify::{Axiom, AxiomFailure, Verification};

/// Tensor element of A⊗A, `t[i][j]` = coefficient of e_i⊗e_j.
pub type Tensor2 = Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupScheme {
    base: Ring,
    rank: usize,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    comult: Vec<Tensor2>,
    counit: Vector,
    antipode: Matrix,
    name: Option<String>,
}

impl GroupScheme {
    /// Assembles a group scheme after checking tensor dimensions only; use
    /// [`GroupScheme::verify`] for the Hopf axioms.
    pub fn new(
        base: Ring,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        comult: Vec<Tensor2>,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<GroupScheme> {
        let m = unit.len();
        let bad = |what: &str| Err(Error::Dimension(format!("{what} does not match rank {m}")));
        if m == 0 {
            return Err(Error::Dimension("rank must be at least 1".into()));
        }
        if mult.len() != m || mult.iter().any(|r| r.len() != m || r.iter().any(|v| v.len() != m)) {
            return bad("mult");
        }
        if comult.len() != m || comult.iter().any(|t| t.len() != m || t.iter().any(|v| v.len() != m)) {
            return bad("comult");
        }
        if counit.len() != m {
            return bad("counit");
        }
        if antipode.len() != m || antipode.iter().any(|r| r.len() != m) {
            return bad("antipode");
        }
        Ok(GroupScheme { base, rank: m, mult, unit, comult, counit, antipode, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> GroupScheme {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// The order (rank of the Hopf algebra as a free module).
    pub fn order(&self) -> usize {
        self.rank
    }

    pub fn mult_tensor(&self) -> &Vec<Vec<Vector>> {
        &self.mult
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn comult_tensor(&self) -> &Vec<Tensor2> {
        &self.comult
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    /// Raw mutable access to the structure tensors.
    pub fn tensors_mut(
        &mut self,
    ) -> (&mut Vec<Vec<Vector>>, &mut Vector, &mut Vec<Tensor2>, &mut Vector, &mut Matrix) {
        (&mut self.mult, &mut self.unit, &mut self.comult, &mut self.counit, &mut self.antipode)
    }

    /// Equality of all structure tensors, ignoring the display name.
    pub fn same_structure(&self, other: &GroupScheme) -> bool {
        self.base == other.base
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    pub fn verify(&self) -> Verification {
        verify::verify_hopf(self)
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        crate::linalg::unit_vec(&self.base, self.rank, i)
    }

    pub fn zero_vec(&self) -> Vector {
        zero_vec(&self.base, self.rank)
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vector {
        let r = &self.base;
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            if r.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if r.is_zero(bj) {
                    continue;
                }
                let c = r.mul(ai, bj);
                axpy(r, &mut out, &c, &self.mult[i][j]);
            }
        }
        out
    }

    pub fn pow(&self, a: &[Elem], e: u64) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn comult(&self, a: &[Elem]) -> Tensor2 {
        let r = &self.base;
        let mut out = vec![self.zero_vec(); self.rank];
        for (k, ak) in a.iter().enumerate() {
            if r.is_zero(ak) {
                continue;
            }
            for (i, row) in self.comult[k].iter().enumerate() {
                axpy(r, &mut out[i], ak, row);
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Elem]) -> Elem {
        let r = &self.base;
        a.iter()
            .zip(&self.counit)
            .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))
    }

    pub fn antipode(&self, a: &[Elem]) -> Vector {
        let r = &self.base;
        let mut out = self.zero_vec();
        for (i, ai) in a.iter().enumerate() {
            axpy(r, &mut out, ai, &self.antipode[i]);
        }
        out
    }

    /// Product in A⊗A.
    pub fn mul2(&self, t: &Tensor2, u: &Tensor2) -> Tensor2 {
        let r = &self.base;
        let m = self.rank;
        let nz = |x: &Tensor2| -> Vec<(usize, usize, Elem)> {
            let mut v = Vec::new();
            for (i, row) in x.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !r.is_zero(c) {
                        v.push((i, j, c.clone()));
                    }
                }
            }
            v
        };
        let (tn, un) = (nz(t), nz(u));
        let mut out = vec![zero_vec(r, m); m];
        for (a, b, x) in &tn {
            for (c, d, y) in &un {
                let coef = r.mul(x, y);
                let left = &self.mult[*a][*c];
                let right = &self.mult[*b][*d];
                for (k, lk) in left.iter().enumerate() {
                    if r.is_zero(lk) {
                        continue;
                    }
                    let ck = r.mul(&coef, lk);
                    axpy(r, &mut out[k], &ck, right);
                }
            }
        }
        out
    }

    /// Whether Δ is symmetric, i.e. the group scheme is commutative.
    pub fn is_commutative(&self) -> bool {
        self.comult.iter().all(|t| {
            (0..self.rank).all(|i| (0..self.rank).all(|j| t[i][j] == t[j][i]))
        })
    }

    /// Base change along a ring homomorphism: every structure constant is
    /// mapped entrywise.
    pub fn base_change(&self, phi: &RingHom) -> Result<GroupScheme> {
        if phi.source() != &self.base {
            return Err(Error::Precondition(format!(
                "base change from {} applied to a scheme over {}",
                phi.source(),
                self.base
            )));
        }
        let map_v = |v: &Vector| -> Vector { v.iter().map(|x| phi.apply(x)).collect() };
        let map_m = |m: &Matrix| -> Matrix { m.iter().map(map_v).collect() };
        Ok(GroupScheme {
            base: phi.target().clone(),
            rank: self.rank,
            mult: self.mult.iter().map(map_m).collect(),
            unit: map_v(&self.unit),
            comult: self.comult.iter().map(map_m).collect(),
            counit: map_v(&self.counit),
            antipode: map_m(&self.antipode),
            name: self.name.clone(),
        })
    }

    /// Base change along the natural map to `target`.
    pub fn base_change_to(&self, target: &Ring) -> Result<GroupScheme> {
        self.base_change(&RingHom::natural(&self.base, target)?)
    }

    /// Cartier dual on the dual basis: multiplication and comultiplication
    /// swap roles, unit and counit swap, the antipode is transposed.
    pub fn cartier_dual(&self) -> Result<GroupScheme> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let m = self.rank;
        let mult = (0..m)
            .map(|i| (0..m).map(|j| (0..m).map(|k| self.comult[k][i][j].clone()).collect()).collect())
            .collect();
        let comult = (0..m)
            .map(|k| (0..m).map(|i| (0..m).map(|j| self.mult[i][j][k].clone()).collect()).collect())
            .collect();
        let antipode = (0..m).map(|i| (0..m).map(|j| self.antipode[j][i].clone()).collect()).collect();
        let name = self.name.as_ref().map(|n| format!("dual({n})"));
        Ok(GroupScheme {
            base: self.base.clone(),
            rank: m,
            mult,
            unit: self.counit.clone(),
            comult,
            counit: self.unit.clone(),
            antipode,
            name,
        })
    }

    /// Trace of multiplication by `a`.
    pub fn trace(&self, a: &[Elem]) -> Elem {
        let r = &self.base;
        (0..self.rank).fold(r.zero(), |acc, i| {
            let col = self.mul(a, &self.basis_vec(i));
            r.add(&acc, &col[i])
        })
    }

    /// Matrix of multiplication by `a`, as rows: row i = a·e_i.
    pub fn mult_matrix(&self, a: &[Elem]) -> Matrix {
        (0..self.rank).map(|i| self.mul(a, &self.basis_vec(i))).collect()
    }

    /// Discriminant det(Tr(e_i e_j)) of the trace form.
    pub fn discriminant(&self) -> Elem {
        let m = self.rank;
        let gram: Matrix = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| self.trace(&self.mul(&self.basis_vec(i), &self.basis_vec(j))))
                    .collect()
            })
            .collect();
        crate::linalg::det(&self.base, &gram)
    }

    /// Étale iff the trace-form discriminant is a unit.
    pub fn is_etale(&self) -> EtaleCertificate {
        let d = self.discriminant();
        EtaleCertificate { etale: self.base.is_unit(&d), discriminant: self.base.fmt_elem(&d) }
    }

    pub fn identity_hom(&self) -> GroupSchemeHom {
        GroupSchemeHom::identity(self)
    }

    /// [n] = n-fold convolution power of the identity; requires a commutative
    /// group scheme for the result to be a homomorphism.
    pub fn convolution_power(&self, n: i64) -> Result<GroupSchemeHom> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let m = self.rank;
        let one = crate::linalg::identity(&self.base, m);
        let step: Matrix = if n >= 0 { one.clone() } else { self.antipode.clone() };
        let trivial = GroupSchemeHom::trivial(self, self).map;
        let mut acc = trivial;
        for _ in 0..n.unsigned_abs() {
            acc = self.convolve(&acc, &step);
        }
        Ok(GroupSchemeHom::from_parts(self.clone(), self.clone(), acc))
    }

    /// Convolution φ*ψ = mult∘(φ⊗ψ)∘Δ of two linear endomorphisms given as
    /// rows (row k = image of e_k).
    pub fn convolve(&self, phi: &Matrix, psi: &Matrix) -> Matrix {
        let r = &self.base;
        (0..self.rank)
            .map(|k| {
                let mut out = self.zero_vec();
                for (i, row) in self.comult[k].iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        if r.is_zero(c) {
                            continue;
                        }
                        let prod = self.mul(&phi[i], &psi[j]);
                        axpy(r, &mut out, c, &prod);
                    }
                }
                out
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EtaleCertificate {
    pub etale: bool,
    pub discriminant: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alpha, constant, mu, tate_oort2, tate_oort2_unchecked};
    use crate::group::FiniteGroup;
    use crate::hopf::iso::{find_isomorphism, IsoConfig, IsoOutcome};

    fn f(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn builtins_verify() {
        let r = f(7);
        assert!(mu(&r, 3).unwrap().verify().passed());
        assert!(alpha(&f(3), 3).unwrap().verify().passed());
        assert!(constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap().verify().passed());
        let z2 = Ring::localized(2).unwrap();
        assert!(tate_oort2(&z2, &z2.from_i64(-2), &z2.one()).unwrap().verify().passed());
    }

    #[test]
    fn corrupted_comult_reports_coassociativity() {
        let r = f(7);
        let mut g = mu(&r, 3).unwrap();
        g.tensors_mut().2[1][1][2] = r.one();
        match g.verify() {
            Verification::Fail(fail) => {
                assert_eq!(fail.axiom, Axiom::Coassociativity);
                assert_eq!(fail.family, "coalgebra");
                assert!(!verify::holds(&g, fail.axiom, &fail.witness));
            }
            Verification::Pass => panic!("corruption not detected"),
        }
    }

    #[test]
    fn tate_oort_constraint() {
        let z2 = Ring::localized(2).unwrap();
        let bad = tate_oort2_unchecked(&z2, &z2.one(), &z2.one());
        assert!(!bad.verify().passed());
        assert!(tate_oort2(&z2, &z2.one(), &z2.one()).is_err());
        assert!(tate_oort2(&z2, &z2.one(), &z2.from_i64(-2)).is_ok());
    }

    #[test]
    fn orders() {
        assert_eq!(mu(&f(5), 6).unwrap().order(), 6);
        assert_eq!(constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap().order(), 6);
        assert_eq!(alpha(&f(5), 5).unwrap().order(), 5);
    }

    #[test]
    fn base_change_fibers() {
        let z2 = Ring::localized(2).unwrap();
        let c2 = constant(&z2, &FiniteGroup::cyclic(2)).unwrap();
        let closed = c2.base_change_to(&f(2)).unwrap();
        assert!(closed.same_structure(&constant(&f(2), &FiniteGroup::cyclic(2)).unwrap()));
        let m2 = mu(&z2, 2).unwrap();
        assert!(!m2.is_etale().etale);
        assert!(m2.base_change_to(&Ring::Rational).unwrap().is_etale().etale);
        let special = m2.base_change_to(&f(2)).unwrap();
        assert!(!special.is_etale().etale);
        assert_eq!(points(&special, &f(2), &PointsConfig::default()).unwrap().order(), 1);
    }

    #[test]
    fn convolution_powers_of_mu() {
        let g = mu(&f(5), 6).unwrap();
        assert_eq!(g.convolution_power(1).unwrap(), g.identity_hom());
        assert!(g.convolution_power(6).unwrap().is_trivial());
        assert_eq!(g.convolution_power(-1).unwrap().map, *g.antipode_matrix());
        let h = mu(&f(7), 3).unwrap();
        let sq = h.convolution_power(2).unwrap();
        assert_eq!(sq.map[1], h.basis_vec(2));
        assert_eq!(sq.map[2], h.basis_vec(1));
        assert!(sq.is_homomorphism());
    }

    #[test]
    fn cartier_duality() {
        let g = mu(&f(3), 2).unwrap();
        let d = g.cartier_dual().unwrap();
        assert!(d.verify().passed());
        assert_eq!(points(&d, &f(3), &PointsConfig::default()).unwrap().order(), 2);
        assert!(d.cartier_dual().unwrap().same_structure(&g));
        let s3 = constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap();
        assert!(matches!(s3.cartier_dual(), Err(Error::NotCommutative)));
        for p in [2, 3] {
            let a = alpha(&f(p), p).unwrap();
            let outcome = find_isomorphism(&a.cartier_dual().unwrap(), &a, &IsoConfig::default()).unwrap();
            assert!(outcome.found().is_some_and(|h| h.is_isomorphism()));
        }
    }

    #[test]
    fn point_groups() {
        let cfg = PointsConfig::default();
        let r = f(7);
        let pts = points(&mu(&r, 3).unwrap(), &r, &cfg).unwrap();
        let xs: Vec<Elem> = pts.elements.iter().map(|v| v[1].clone()).collect();
        assert_eq!(xs, vec![r.from_i64(1), r.from_i64(2), r.from_i64(4)]);
        assert_eq!(points(&alpha(&f(5), 5).unwrap(), &f(5), &cfg).unwrap().order(), 1);
        let s3 = constant(&Ring::Rational, &FiniteGroup::symmetric3()).unwrap();
        let pg = points(&constant(&f(5), &FiniteGroup::symmetric3()).unwrap(), &f(5), &cfg).unwrap();
        assert_eq!(pg.order(), 6);
        assert!(!pg.is_abelian());
        let q = points(&s3, &Ring::Rational, &cfg).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(points(&mu(&Ring::Rational, 6).unwrap(), &Ring::Rational, &cfg).unwrap().order(), 2);
    }

    #[test]
    fn tate_oort_models() {
        let z2 = Ring::localized(2).unwrap();
        let ot = tate_oort2(&z2, &z2.from_i64(-2), &z2.one()).unwrap();
        let m2 = mu(&z2, 2).unwrap();
        let found = find_isomorphism(&ot, &m2, &IsoConfig::default()).unwrap();
        let h = found.found().expect("isomorphism to mu2");
        // t ↦ 1 + x
        assert_eq!(h.map[1], vec![z2.one(), z2.one()]);
        let et = tate_oort2(&z2, &z2.one(), &z2.from_i64(-2)).unwrap();
        let c2 = constant(&z2, &FiniteGroup::cyclic(2)).unwrap();
        assert!(find_isomorphism(&et, &c2, &IsoConfig::default()).unwrap().found().is_some());
        let outcome = find_isomorphism(&et, &m2, &IsoConfig::default()).unwrap();
        assert!(matches!(outcome, IsoOutcome::NotFound(_)));
    }

    #[test]
    fn non_isomorphism_over_fields() {
        let r = f(3);
        let outcome = find_isomorphism(&mu(&r, 3).unwrap(), &alpha(&r, 3).unwrap(), &IsoConfig::default()).unwrap();
        assert!(matches!(outcome, IsoOutcome::NonIsomorphic(_)));
        let c3 = constant(&r, &FiniteGroup::cyclic(3)).unwrap();
        let outcome = find_isomorphism(&mu(&r, 3).unwrap(), &c3, &IsoConfig::default()).unwrap();
        assert!(matches!(outcome, IsoOutcome::NonIsomorphic(_)));
    }
}
