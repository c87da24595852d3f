use super::GroupScheme;
use crate::error::{Error, Result};
use crate::linalg::{axpy, scale_vec, Matrix, Vector};
use crate::rings::Elem;

/// A homomorphism G -> H stored contravariantly: `map[j]` is the image of
/// the j-th basis element of Hopf(H) in Hopf(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSchemeHom {
    pub source: GroupScheme,
    pub target: GroupScheme,
    pub map: Matrix,
}

impl GroupSchemeHom {
    pub(crate) fn from_parts(source: GroupScheme, target: GroupScheme, map: Matrix) -> Self {
        GroupSchemeHom { source, target, map }
    }

    /// Checks dimensions and that the map intertwines every structure tensor.
    pub fn new(source: GroupScheme, target: GroupScheme, map: Matrix) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::Precondition("source and target have different bases".into()));
        }
        if map.len() != target.order() || map.iter().any(|r| r.len() != source.order()) {
            return Err(Error::Dimension(format!(
                "algebra map must be {}x{}",
                target.order(),
                source.order()
            )));
        }
        let h = GroupSchemeHom { source, target, map };
        if !h.is_homomorphism() {
            return Err(Error::Precondition("map is not a group-scheme homomorphism".into()));
        }
        Ok(h)
    }

    pub fn identity(g: &GroupScheme) -> Self {
        let map = crate::linalg::identity(g.base(), g.order());
        GroupSchemeHom { source: g.clone(), target: g.clone(), map }
    }

    /// The homomorphism G -> H through the identity section: f ↦ ε_H(f)·1_G.
    pub fn trivial(source: &GroupScheme, target: &GroupScheme) -> Self {
        let r = source.base();
        let map = target.counit().iter().map(|c| scale_vec(r, c, source.unit())).collect();
        GroupSchemeHom { source: source.clone(), target: target.clone(), map }
    }

    /// Image of an element of Hopf(target) in Hopf(source).
    pub fn pull(&self, a: &[Elem]) -> Vector {
        let r = self.source.base();
        let mut out = self.source.zero_vec();
        for (j, aj) in a.iter().enumerate() {
            axpy(r, &mut out, aj, &self.map[j]);
        }
        out
    }

    pub fn pull2(&self, t: &[Vector]) -> Vec<Vector> {
        let r = self.source.base();
        let m = self.source.order();
        let mut out = vec![self.source.zero_vec(); m];
        for (a, row) in t.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if r.is_zero(c) {
                    continue;
                }
                for (i, x) in self.map[a].iter().enumerate() {
                    if r.is_zero(x) {
                        continue;
                    }
                    let cx = r.mul(c, x);
                    axpy(r, &mut out[i], &cx, &self.map[b]);
                }
            }
        }
        out
    }

    pub fn is_homomorphism(&self) -> bool {
        let (g, h) = (&self.source, &self.target);
        if self.pull(h.unit()) != *g.unit() {
            return false;
        }
        for j in 0..h.order() {
            let fj = &self.map[j];
            if g.counit_of(fj) != h.counit()[j] {
                return false;
            }
            if g.comult(fj) != self.pull2(&h.comult_tensor()[j]) {
                return false;
            }
            for k in 0..h.order() {
                let lhs = self.pull(&h.mult_tensor()[j][k]);
                if lhs != g.mul(fj, &self.map[k]) {
                    return false;
                }
            }
        }
        true
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupSchemeHom) -> Result<GroupSchemeHom> {
        if !self.target.same_structure(&next.source) {
            return Err(Error::Precondition("homomorphisms do not compose".into()));
        }
        let map = next.map.iter().map(|row| self.pull(row)).collect();
        Ok(GroupSchemeHom { source: self.source.clone(), target: next.target.clone(), map })
    }

    pub fn is_trivial(&self) -> bool {
        *self == GroupSchemeHom::trivial(&self.source, &self.target)
    }

    /// Invertible algebra map, i.e. an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order()
            && crate::linalg::is_invertible(self.source.base(), &self.map)
    }

    pub fn base_change_to(&self, r: &crate::rings::Ring) -> Result<GroupSchemeHom> {
        let phi = crate::rings::RingHom::natural(self.source.base(), r)?;
        Ok(GroupSchemeHom {
            source: self.source.base_change(&phi)?,
            target: self.target.base_change(&phi)?,
            map: self.map.iter().map(|row| row.iter().map(|x| phi.apply(x)).collect()).collect(),
        })
    }

    /// Image of a point of the source (value vector over the same base).
    pub fn push_point(&self, point: &[Elem]) -> Vector {
        let r = self.source.base();
        self.map.iter().map(|row| super::points::evaluate(r, point, row)).collect()
    }

    /// Cartier dual H^D -> G^D, whose algebra map is the transpose.
    pub fn dual(&self) -> Result<GroupSchemeHom> {
        let map = crate::linalg::transpose(&self.map, self.source.order());
        Ok(GroupSchemeHom {
            source: self.target.cartier_dual()?,
            target: self.source.cartier_dual()?,
            map,
        })
    }
}
