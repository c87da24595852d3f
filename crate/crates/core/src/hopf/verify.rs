use serde::Serialize;

use super::GroupScheme;
use crate::linalg::{axpy, scale_vec, zero_vec, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// e_i e_j = e_j e_i, witness (i, j)
    Commutativity,
    /// (e_i e_j) e_k = e_i (e_j e_k), witness (i, j, k)
    Associativity,
    /// 1·e_i = e_i, witness (i)
    UnitLaw,
    /// (Δ⊗id)Δ e_k = (id⊗Δ)Δ e_k, witness (k)
    Coassociativity,
    /// (ε⊗id)Δ e_k = e_k = (id⊗ε)Δ e_k, witness (k)
    CounitLaw,
    /// Δ(e_i e_j) = Δ(e_i)Δ(e_j), witness (i, j)
    ComultMultiplicative,
    /// Δ(1) = 1⊗1
    ComultUnital,
    /// ε(e_i e_j) = ε(e_i)ε(e_j), witness (i, j)
    CounitMultiplicative,
    /// ε(1) = 1
    CounitUnital,
    /// m(S⊗id)Δ e_k = ε(e_k)·1, witness (k)
    AntipodeLeft,
    /// m(id⊗S)Δ e_k = ε(e_k)·1, witness (k)
    AntipodeRight,
}

impl Axiom {
    pub fn family(self) -> &'static str {
        match self {
            Axiom::Commutativity | Axiom::Associativity | Axiom::UnitLaw => "algebra",
            Axiom::Coassociativity | Axiom::CounitLaw => "coalgebra",
            Axiom::ComultMultiplicative
            | Axiom::ComultUnital
            | Axiom::CounitMultiplicative
            | Axiom::CounitUnital => "bialgebra",
            Axiom::AntipodeLeft | Axiom::AntipodeRight => "antipode",
        }
    }

    pub fn witness_arity(self) -> usize {
        match self {
            Axiom::Associativity => 3,
            Axiom::Commutativity | Axiom::ComultMultiplicative | Axiom::CounitMultiplicative => 2,
            Axiom::ComultUnital | Axiom::CounitUnital => 0,
            _ => 1,
        }
    }

    pub const ALL: [Axiom; 11] = [
        Axiom::Commutativity,
        Axiom::Associativity,
        Axiom::UnitLaw,
        Axiom::Coassociativity,
        Axiom::CounitLaw,
        Axiom::ComultMultiplicative,
        Axiom::ComultUnital,
        Axiom::CounitMultiplicative,
        Axiom::CounitUnital,
        Axiom::AntipodeLeft,
        Axiom::AntipodeRight,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub family: &'static str,
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Verification {
    Pass,
    Fail(AxiomFailure),
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

/// Evaluates one axiom instance; `true` when it holds.
pub fn holds(g: &GroupScheme, axiom: Axiom, w: &[usize]) -> bool {
    let r = g.base();
    let m = g.order();
    let e = |i: usize| g.basis_vec(i);
    match axiom {
        Axiom::Commutativity => g.mul(&e(w[0]), &e(w[1])) == g.mul(&e(w[1]), &e(w[0])),
        Axiom::Associativity => {
            let (a, b, c) = (e(w[0]), e(w[1]), e(w[2]));
            g.mul(&g.mul(&a, &b), &c) == g.mul(&a, &g.mul(&b, &c))
        }
        Axiom::UnitLaw => g.mul(g.unit(), &e(w[0])) == e(w[0]),
        Axiom::Coassociativity => {
            let k = w[0];
            let d = &g.comult_tensor()[k];
            let mut left = vec![r.zero(); m * m * m];
            let mut right = vec![r.zero(); m * m * m];
            for i in 0..m {
                for j in 0..m {
                    let c = &d[i][j];
                    if r.is_zero(c) {
                        continue;
                    }
                    let di = &g.comult_tensor()[i];
                    let dj = &g.comult_tensor()[j];
                    for a in 0..m {
                        for b in 0..m {
                            if !r.is_zero(&di[a][b]) {
                                let idx = (a * m + b) * m + j;
                                left[idx] = r.add(&left[idx], &r.mul(c, &di[a][b]));
                            }
                            if !r.is_zero(&dj[a][b]) {
                                let idx = (i * m + a) * m + b;
                                right[idx] = r.add(&right[idx], &r.mul(c, &dj[a][b]));
                            }
                        }
                    }
                }
            }
            left == right
        }
        Axiom::CounitLaw => {
            let k = w[0];
            let d = &g.comult_tensor()[k];
            let mut left = zero_vec(r, m);
            let mut right = zero_vec(r, m);
            for i in 0..m {
                for j in 0..m {
                    let c = &d[i][j];
                    if r.is_zero(c) {
                        continue;
                    }
                    left[j] = r.add(&left[j], &r.mul(c, &g.counit()[i]));
                    right[i] = r.add(&right[i], &r.mul(c, &g.counit()[j]));
                }
            }
            left == e(k) && right == e(k)
        }
        Axiom::ComultMultiplicative => {
            let (a, b) = (e(w[0]), e(w[1]));
            g.comult(&g.mul(&a, &b)) == g.mul2(&g.comult(&a), &g.comult(&b))
        }
        Axiom::ComultUnital => {
            let u = g.unit();
            let expected: Vec<Vector> = u.iter().map(|x| scale_vec(r, x, u)).collect();
            g.comult(u) == expected
        }
        Axiom::CounitMultiplicative => {
            let (a, b) = (e(w[0]), e(w[1]));
            g.counit_of(&g.mul(&a, &b)) == r.mul(&g.counit()[w[0]], &g.counit()[w[1]])
        }
        Axiom::CounitUnital => r.is_one(&g.counit_of(g.unit())),
        Axiom::AntipodeLeft | Axiom::AntipodeRight => {
            let k = w[0];
            let d = &g.comult_tensor()[k];
            let mut acc = zero_vec(r, m);
            for i in 0..m {
                for j in 0..m {
                    let c = &d[i][j];
                    if r.is_zero(c) {
                        continue;
                    }
                    let prod = if axiom == Axiom::AntipodeLeft {
                        g.mul(&g.antipode(&e(i)), &e(j))
                    } else {
                        g.mul(&e(i), &g.antipode(&e(j)))
                    };
                    axpy(r, &mut acc, c, &prod);
                }
            }
            acc == scale_vec(r, &g.counit()[k], g.unit())
        }
    }
}

fn witnesses(axiom: Axiom, m: usize) -> Vec<Vec<usize>> {
    match axiom.witness_arity() {
        0 => vec![vec![]],
        1 => (0..m).map(|i| vec![i]).collect(),
        2 => (0..m).flat_map(|i| (0..m).map(move |j| vec![i, j])).collect(),
        _ => (0..m)
            .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| vec![i, j, k])))
            .collect(),
    }
}

/// Checks the axiom families in order (algebra, coalgebra, bialgebra,
/// antipode) and reports the first failing instance.
pub fn verify_hopf(g: &GroupScheme) -> Verification {
    let m = g.order();
    for axiom in Axiom::ALL {
        for w in witnesses(axiom, m) {
            if axiom == Axiom::Commutativity && w[0] >= w[1] {
                continue;
            }
            if !holds(g, axiom, &w) {
                return Verification::Fail(AxiomFailure { family: axiom.family(), axiom, witness: w });
            }
        }
    }
    Verification::Pass
}

