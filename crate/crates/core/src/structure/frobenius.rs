//! Relative Frobenius and Verschiebung over finite fields, and the
//! classification of order-p schemes they induce.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::constructions::{alpha, constant, mu};
use crate::group::FiniteGroup;
use crate::hopf::iso::{find_isomorphism, IsoConfig};
use crate::hopf::{GroupScheme, GroupSchemeHom};
use crate::linalg::{is_invertible, transpose};
use crate::rings::{Elem, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Etale,
    Mu,
    Alpha,
    Trivial,
    None,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Etale => "etale",
            Classification::Mu => "mu",
            Classification::Alpha => "alpha",
            Classification::Trivial => "trivial",
            Classification::None => "none",
        };
        f.write_str(s)
    }
}

fn char_p_field(r: &Ring) -> Result<u64> {
    match r {
        Ring::PrimeField(p) | Ring::FiniteField { p, .. } => Ok(*p),
        _ => Err(Error::Precondition(format!("Frobenius needs a finite field base, got {r}"))),
    }
}

/// G^(p): every structure constant raised to the p-th power.
pub fn frobenius_twist(g: &GroupScheme) -> Result<GroupScheme> {
    let p = char_p_field(g.base())?;
    let r = g.base();
    let mut t = g.clone();
    let twist = |x: &mut Elem| *x = r.pow(x, p);
    {
        let (mult, unit, comult, counit, antipode) = t.tensors_mut();
        mult.iter_mut().flatten().flatten().for_each(twist);
        unit.iter_mut().for_each(twist);
        comult.iter_mut().flatten().flatten().for_each(twist);
        counit.iter_mut().for_each(twist);
        antipode.iter_mut().flatten().for_each(twist);
    }
    Ok(t)
}

/// F: G -> G^(p), e_i ↦ e_i^p on algebras.
pub fn frobenius(g: &GroupScheme) -> Result<GroupSchemeHom> {
    let p = char_p_field(g.base())?;
    let map = (0..g.order()).map(|i| g.pow(&g.basis_vec(i), p)).collect();
    GroupSchemeHom::new(g.clone(), frobenius_twist(g)?, map)
        .map_err(|e| Error::Internal(format!("relative Frobenius is not a homomorphism: {e}")))
}

/// V: G^(p) -> G, the Cartier dual of the Frobenius of G^D.
pub fn verschiebung(g: &GroupScheme) -> Result<GroupSchemeHom> {
    let dual = g.cartier_dual()?;
    let fd = frobenius(&dual)?;
    let map = transpose(&fd.map, dual.order());
    GroupSchemeHom::new(frobenius_twist(g)?, g.clone(), map)
        .map_err(|e| Error::Internal(format!("Verschiebung is not a homomorphism: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub f_trivial: bool,
    pub f_invertible: bool,
    pub v_trivial: Option<bool>,
    pub v_invertible: Option<bool>,
    /// V∘F = [p], checked for commutative G.
    pub vf_is_p: Option<bool>,
    pub classification: Classification,
}

/// F invertible: étale; F trivial and V invertible: mu; F and V trivial:
/// alpha.
pub fn classify(g: &GroupScheme) -> Result<FrobeniusReport> {
    let p = char_p_field(g.base())?;
    let f = frobenius(g)?;
    let f_trivial = f.is_trivial();
    let f_invertible = is_invertible(g.base(), &f.map);
    let (v_trivial, v_invertible, vf_is_p) = if g.is_commutative() {
        let v = verschiebung(g)?;
        let vf = f.then(&v)?;
        let p_map = g.convolution_power(p as i64)?;
        (Some(v.is_trivial()), Some(is_invertible(g.base(), &v.map)), Some(vf.map == p_map.map))
    } else {
        (None, None, None)
    };
    let classification = if g.order() == 1 {
        Classification::Trivial
    } else if f_invertible {
        Classification::Etale
    } else if f_trivial && v_invertible == Some(true) {
        Classification::Mu
    } else if f_trivial && v_trivial == Some(true) {
        Classification::Alpha
    } else {
        Classification::None
    };
    Ok(FrobeniusReport { f_trivial, f_invertible, v_trivial, v_invertible, vf_is_p, classification })
}

/// The class of an order-p scheme over a char-p field read off from
/// explicit isomorphism search against μ_p, α_p and constant Z/p. A
/// non-split étale form is reported as étale; anything else as none.
pub fn classify_by_isomorphism(g: &GroupScheme, cfg: &IsoConfig) -> Result<Classification> {
    let p = char_p_field(g.base())?;
    if g.order() == 1 {
        return Ok(Classification::Trivial);
    }
    if g.order() as u64 != p {
        return Err(Error::Precondition(format!("order {} is not {p}", g.order())));
    }
    let r = g.base();
    let models = [
        (Classification::Mu, mu(r, p as usize)?),
        (Classification::Alpha, alpha(r, p)?),
        (Classification::Etale, constant(r, &FiniteGroup::cyclic(p as usize))?),
    ];
    for (class, model) in models {
        if find_isomorphism(g, &model, cfg)?.found().is_some() {
            return Ok(class);
        }
    }
    Ok(if g.is_etale().etale { Classification::Etale } else { Classification::None })
}
