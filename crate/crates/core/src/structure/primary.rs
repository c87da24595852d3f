//! Decomposition of a commutative group scheme of square-free order into
//! its prime-order parts.

use serde::Serialize;

use crate::constructions::{image_of, kernel_of, product, ClosedSubgroup};
use crate::error::{Error, Result};
use crate::hopf::{GroupScheme, GroupSchemeHom};
use crate::linalg::{is_invertible, Vector};
use crate::rings::{factorize, is_squarefree};

#[derive(Clone, Debug)]
pub struct PrimaryFactor {
    pub prime: u64,
    pub subgroup: ClosedSubgroup,
}

#[derive(Clone, Debug)]
pub struct PrimaryDecomposition {
    pub factors: Vec<PrimaryFactor>,
    /// ∏ G_p -> G, (g_1, ..., g_k) ↦ g_1···g_k.
    pub product_map: GroupSchemeHom,
    pub product_is_isomorphism: bool,
    /// Whether every supplied automorphism preserves every factor.
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimarySummary {
    pub primes: Vec<u64>,
    pub orders: Vec<usize>,
    pub product_is_isomorphism: bool,
    pub invariant: bool,
}

impl PrimaryDecomposition {
    pub fn summary(&self) -> PrimarySummary {
        PrimarySummary {
            primes: self.factors.iter().map(|f| f.prime).collect(),
            orders: self.factors.iter().map(|f| f.subgroup.order()).collect(),
            product_is_isomorphism: self.product_is_isomorphism,
            invariant: self.invariant,
        }
    }
}

/// Image of `a` under (π_1⊗···⊗π_k)∘Δ^(k), on the basis of the iterated
/// product scheme built by [`product`] from left to right.
fn pull_to_product(g: &GroupScheme, a: &[crate::rings::Elem], factors: &[&ClosedSubgroup]) -> Vector {
    let r = g.base();
    let (last, rest) = factors.split_last().expect("at least one factor");
    if rest.is_empty() {
        return last.project(a);
    }
    let n_last = last.order();
    let n_rest: usize = rest.iter().map(|h| h.order()).product();
    let mut out = vec![r.zero(); n_rest * n_last];
    let t = g.comult(a);
    for (i, row) in t.iter().enumerate() {
        let right = last.project(row);
        if right.iter().all(|x| r.is_zero(x)) {
            continue;
        }
        let left = pull_to_product(g, &g.basis_vec(i), rest);
        for (x, lx) in left.iter().enumerate() {
            if r.is_zero(lx) {
                continue;
            }
            for (y, ry) in right.iter().enumerate() {
                out[x * n_last + y] = r.add(&out[x * n_last + y], &r.mul(lx, ry));
            }
        }
    }
    out
}

/// The multiplication morphism ∏ H_i -> G for subgroups that commute with
/// each other.
pub fn multiplication_map(g: &GroupScheme, factors: &[&ClosedSubgroup]) -> Result<GroupSchemeHom> {
    if factors.is_empty() {
        return Err(Error::Precondition("no factors".into()));
    }
    let mut scheme = factors[0].scheme().clone();
    for h in &factors[1..] {
        scheme = product(&scheme, h.scheme())?;
    }
    let map = (0..g.order()).map(|j| pull_to_product(g, &g.basis_vec(j), factors)).collect();
    GroupSchemeHom::new(scheme, g.clone(), map)
}

/// G = ∏ G_p with G_p = ker [p] = im [n/p].
pub fn p_primary_decompose(g: &GroupScheme, automorphisms: &[GroupSchemeHom]) -> Result<PrimaryDecomposition> {
    let n = g.order() as u64;
    if !is_squarefree(n) {
        return Err(Error::Precondition(format!("order {n} is not square-free")));
    }
    if !g.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let mut factors = Vec::new();
    for (p, _) in factorize(n) {
        let ker = kernel_of(&g.convolution_power(p as i64)?)?;
        let im = image_of(&g.convolution_power((n / p) as i64)?)?;
        if ker != im {
            return Err(Error::Internal(format!("ker [{p}] differs from im [{}]", n / p)));
        }
        if ker.order() as u64 != p {
            return Err(Error::Internal(format!("ker [{p}] has order {}", ker.order())));
        }
        factors.push(PrimaryFactor { prime: p, subgroup: ker });
    }
    if factors.is_empty() {
        factors.push(PrimaryFactor { prime: 1, subgroup: ClosedSubgroup::whole(g) });
    }
    let refs: Vec<&ClosedSubgroup> = factors.iter().map(|f| &f.subgroup).collect();
    let product_map = multiplication_map(g, &refs)?;
    let product_is_isomorphism = is_invertible(g.base(), &product_map.map);
    let r = g.base();
    let invariant = automorphisms.iter().all(|alpha| {
        factors
            .iter()
            .all(|f| f.subgroup.ideal().rows.iter().all(|x| f.subgroup.ideal().contains(r, &alpha.pull(x))))
    });
    Ok(PrimaryDecomposition { factors, product_map, product_is_isomorphism, invariant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{constant, mu};
    use crate::group::FiniteGroup;
    use crate::rings::Ring;

    #[test]
    fn decompositions() {
        let f5 = Ring::prime_field(5).unwrap();
        for g in [
            mu(&f5, 6).unwrap(),
            constant(&f5, &FiniteGroup::cyclic(6)).unwrap(),
            mu(&Ring::Rational, 6).unwrap(),
            constant(&Ring::Rational, &FiniteGroup::cyclic(6)).unwrap(),
        ] {
            let autos = vec![g.convolution_power(-1).unwrap(), g.convolution_power(5).unwrap()];
            let d = p_primary_decompose(&g, &autos).unwrap();
            assert_eq!(d.summary().primes, vec![2, 3]);
            assert_eq!(d.summary().orders, vec![2, 3]);
            assert!(d.product_is_isomorphism && d.invariant);
        }
        let f3 = Ring::prime_field(3).unwrap();
        let d = p_primary_decompose(&mu(&f3, 3).unwrap(), &[]).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].subgroup, ClosedSubgroup::whole(d.factors[0].subgroup.ambient()));
        assert!(p_primary_decompose(&mu(&f5, 4).unwrap(), &[]).is_err());
        let s3 = constant(&f5, &FiniteGroup::symmetric3()).unwrap();
        assert!(matches!(p_primary_decompose(&s3, &[]), Err(Error::NotCommutative)));
    }
}
