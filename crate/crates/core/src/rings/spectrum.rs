use serde::Serialize;

use super::{factorize, Ring, RingHom};

/// A point of Spec of a supported base ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumPoint {
    pub id: String,
    #[serde(serialize_with = "crate::json::ser_ring")]
    pub residue_field: Ring,
    /// Points this one specializes to (excluding itself).
    pub specializations: Vec<String>,
}

impl SpectrumPoint {
    pub fn residue_map(&self, base: &Ring) -> RingHom {
        RingHom::natural(base, &self.residue_field).expect("residue maps are supported")
    }

    pub fn specializes_to(&self, other: &str) -> bool {
        self.id == other || self.specializations.iter().any(|s| s == other)
    }
}

pub fn spectrum(r: &Ring) -> Vec<SpectrumPoint> {
    let single = |field: Ring| {
        vec![SpectrumPoint { id: "pt".into(), residue_field: field, specializations: vec![] }]
    };
    match r {
        Ring::Rational | Ring::PrimeField(_) | Ring::FiniteField { .. } => single(r.clone()),
        Ring::DualNumbers(b) => single((**b).clone()),
        Ring::IntegersMod(n) => factorize(*n)
            .into_iter()
            .map(|(p, _)| SpectrumPoint {
                id: format!("({p})"),
                residue_field: Ring::PrimeField(p),
                specializations: vec![],
            })
            .collect(),
        Ring::LocalizedIntegers(p) => vec![
            SpectrumPoint {
                id: "generic".into(),
                residue_field: Ring::Rational,
                specializations: vec!["closed".into()],
            },
            SpectrumPoint {
                id: "closed".into(),
                residue_field: Ring::PrimeField(*p),
                specializations: vec![],
            },
        ],
    }
}
