//! Builtin group schemes.

use super::super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::hopf::{GroupScheme, GroupSchemeHom, Tensor2};
use crate::linalg::{Matrix, Vector};
use crate::rings::{Elem, Ring};

fn zeros(r: &Ring, m: usize) -> Vector {
    vec![r.zero(); m]
}

fn zero_tensor(r: &Ring, m: usize) -> Tensor2 {
    vec![zeros(r, m); m]
}

/// μ_n = Spec R[x]/(x^n − 1), basis x^0..x^{n-1}.
pub fn mu(r: &Ring, n: usize) -> Result<GroupScheme> {
    if n == 0 {
        return Err(Error::Precondition("mu needs n ≥ 1".into()));
    }
    let mut mult = vec![vec![zeros(r, n); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            v[(i + j) % n] = r.one();
        }
    }
    let comult = (0..n)
        .map(|k| {
            let mut t = zero_tensor(r, n);
            t[k][k] = r.one();
            t
        })
        .collect();
    let antipode = (0..n)
        .map(|i| {
            let mut v = zeros(r, n);
            v[(n - i) % n] = r.one();
            v
        })
        .collect();
    let mut unit = zeros(r, n);
    unit[0] = r.one();
    Ok(GroupScheme::new(r.clone(), mult, unit, comult, vec![r.one(); n], antipode)?
        .with_name(format!("mu{n}")))
}

/// The constant group scheme on a finite group, basis of point indicators δ_g.
pub fn constant(r: &Ring, g: &FiniteGroup) -> Result<GroupScheme> {
    let n = g.order();
    let mut mult = vec![vec![zeros(r, n); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        row[i][i] = r.one();
    }
    let mut comult = vec![zero_tensor(r, n); n];
    for a in 0..n {
        for b in 0..n {
            comult[g.mul(a, b)][a][b] = r.one();
        }
    }
    let mut counit = zeros(r, n);
    counit[g.identity] = r.one();
    let antipode = (0..n)
        .map(|a| {
            let mut v = zeros(r, n);
            v[g.inverse(a)] = r.one();
            v
        })
        .collect();
    let name = format!("const({})", g.name.clone().unwrap_or_else(|| format!("order {n}")));
    Ok(GroupScheme::new(r.clone(), mult, vec![r.one(); n], comult, counit, antipode)?.with_name(name))
}

fn binomial_mod(r: &Ring, n: usize, k: usize) -> Elem {
    let mut row = vec![r.one()];
    for _ in 0..n {
        let mut next = vec![r.one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = r.add(&row[i - 1], &row[i]);
        }
        row = next;
    }
    row[k].clone()
}

/// α_p = Spec R[x]/(x^p) with x primitive; needs p·1 = 0 in R.
pub fn alpha(r: &Ring, p: u64) -> Result<GroupScheme> {
    if !crate::rings::is_prime(p) || r.characteristic() != p {
        return Err(Error::Precondition(format!("alpha_{p} needs a base of characteristic {p}")));
    }
    let n = p as usize;
    let mut mult = vec![vec![zeros(r, n); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i + j < n {
                v[i + j] = r.one();
            }
        }
    }
    let comult = (0..n)
        .map(|k| {
            let mut t = zero_tensor(r, n);
            for j in 0..=k {
                t[j][k - j] = binomial_mod(r, k, j);
            }
            t
        })
        .collect();
    let mut counit = zeros(r, n);
    counit[0] = r.one();
    let antipode = (0..n)
        .map(|i| {
            let mut v = zeros(r, n);
            v[i] = if i % 2 == 0 { r.one() } else { r.neg(&r.one()) };
            v
        })
        .collect();
    let unit = counit.clone();
    Ok(GroupScheme::new(r.clone(), mult, unit, comult, counit, antipode)?.with_name(format!("alpha{p}")))
}

/// Order-2 scheme R[x]/(x² − a·x), Δx = x⊗1 + 1⊗x + b·x⊗x, ε(x) = 0,
/// S(x) = x, without checking a·b = −2.
pub fn tate_oort2_unchecked(r: &Ring, a: &Elem, b: &Elem) -> GroupScheme {
    let (z, o) = (r.zero(), r.one());
    let mult = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
        vec![vec![z.clone(), o.clone()], vec![z.clone(), a.clone()]],
    ];
    let comult = vec![
        vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
        vec![vec![z.clone(), o.clone()], vec![o.clone(), b.clone()]],
    ];
    let antipode = vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]];
    GroupScheme::new(
        r.clone(),
        mult,
        vec![o.clone(), z.clone()],
        comult,
        vec![o, z],
        antipode,
    )
    .expect("rank 2 tensors")
    .with_name(format!("ot2({},{})", r.fmt_elem(a), r.fmt_elem(b)))
}

pub fn tate_oort2(r: &Ring, a: &Elem, b: &Elem) -> Result<GroupScheme> {
    if r.mul(a, b) != r.from_i64(-2) {
        return Err(Error::Precondition(format!(
            "tate_oort2 needs a·b = -2, got {}",
            r.fmt_elem(&r.mul(a, b))
        )));
    }
    Ok(tate_oort2_unchecked(r, a, b))
}

/// G × H, basis e_i⊗f_j at index i·|H| + j.
pub fn product(g: &GroupScheme, h: &GroupScheme) -> Result<GroupScheme> {
    if g.base() != h.base() {
        return Err(Error::Precondition("factors live over different bases".into()));
    }
    let r = g.base();
    let (n, m) = (g.order(), h.order());
    let idx = |i: usize, j: usize| i * m + j;
    let kron = |a: &[Elem], b: &[Elem]| -> Vector {
        let mut out = zeros(r, n * m);
        for (i, x) in a.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[idx(i, j)] = r.mul(x, y);
            }
        }
        out
    };
    let mut mult = vec![vec![zeros(r, n * m); n * m]; n * m];
    for i1 in 0..n {
        for j1 in 0..m {
            for i2 in 0..n {
                for j2 in 0..m {
                    mult[idx(i1, j1)][idx(i2, j2)] = kron(&g.mult_tensor()[i1][i2], &h.mult_tensor()[j1][j2]);
                }
            }
        }
    }
    let mut comult = vec![zero_tensor(r, n * m); n * m];
    for i in 0..n {
        for j in 0..m {
            let (tg, th) = (&g.comult_tensor()[i], &h.comult_tensor()[j]);
            for a in 0..n {
                for b in 0..n {
                    if r.is_zero(&tg[a][b]) {
                        continue;
                    }
                    for c in 0..m {
                        for d in 0..m {
                            if !r.is_zero(&th[c][d]) {
                                comult[idx(i, j)][idx(a, c)][idx(b, d)] = r.mul(&tg[a][b], &th[c][d]);
                            }
                        }
                    }
                }
            }
        }
    }
    let counit = kron(g.counit(), h.counit());
    let antipode = (0..n * m)
        .map(|x| kron(&g.antipode_matrix()[x / m], &h.antipode_matrix()[x % m]))
        .collect();
    let name = format!("{}x{}", g.name().unwrap_or("G"), h.name().unwrap_or("H"));
    Ok(GroupScheme::new(r.clone(), mult, kron(g.unit(), h.unit()), comult, counit, antipode)?.with_name(name))
}

/// Q ⋊ P for a constant P acting on Q through automorphisms `action[g]`,
/// with group law (q₁,g₁)(q₂,g₂) = (q₁·g₁(q₂), g₁g₂). Basis f_i⊗δ_g at
/// index i·|P| + g.
pub fn semidirect(q: &GroupScheme, p: &FiniteGroup, action: &[GroupSchemeHom]) -> Result<GroupScheme> {
    let r = q.base();
    let (n, m) = (q.order(), p.order());
    if action.len() != m {
        return Err(Error::Dimension(format!("need {m} automorphisms, got {}", action.len())));
    }
    for (g, phi) in action.iter().enumerate() {
        if !phi.source.same_structure(q) || !phi.target.same_structure(q) || !phi.is_isomorphism() {
            return Err(Error::Precondition(format!("action of element {g} is not an automorphism")));
        }
        for h in 0..m {
            if action[p.mul(g, h)].map != action[h].then(phi)?.map {
                return Err(Error::Precondition("action is not a group homomorphism".into()));
            }
        }
    }
    let idx = |i: usize, g: usize| i * m + g;
    let embed = |a: &[Elem], g: usize| -> Vector {
        let mut out = zeros(r, n * m);
        for (i, x) in a.iter().enumerate() {
            out[idx(i, g)] = x.clone();
        }
        out
    };
    let mut mult = vec![vec![zeros(r, n * m); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for g in 0..m {
                mult[idx(i, g)][idx(j, g)] = embed(&q.mult_tensor()[i][j], g);
            }
        }
    }
    let unit = (0..n * m).map(|x| q.unit()[x / m].clone()).collect();
    let mut comult = vec![zero_tensor(r, n * m); n * m];
    for i in 0..n {
        let t = &q.comult_tensor()[i];
        for g1 in 0..m {
            for g2 in 0..m {
                let g = p.mul(g1, g2);
                for (a, ta) in t.iter().enumerate() {
                    for (b, c) in ta.iter().enumerate() {
                        if r.is_zero(c) {
                            continue;
                        }
                        let twisted = action[g1].pull(&crate::linalg::unit_vec(r, n, b));
                        for (d, y) in twisted.iter().enumerate() {
                            if !r.is_zero(y) {
                                let slot = &mut comult[idx(i, g)][idx(a, g1)][idx(d, g2)];
                                *slot = r.add(slot, &r.mul(c, y));
                            }
                        }
                    }
                }
            }
        }
    }
    let counit = (0..n * m)
        .map(|x| if x % m == p.identity { q.counit()[x / m].clone() } else { r.zero() })
        .collect();
    let antipode: Matrix = (0..n * m)
        .map(|x| {
            let (i, g) = (x / m, x % m);
            let twisted = action[g].pull(&crate::linalg::unit_vec(r, n, i));
            embed(&q.antipode(&twisted), p.inverse(g))
        })
        .collect();
    let name = format!("{}x|{}", q.name().unwrap_or("Q"), p.name.clone().unwrap_or_else(|| "P".into()));
    Ok(GroupScheme::new(r.clone(), mult, unit, comult, counit, antipode)?.with_name(name))
}

/// The action of Z/m on a commutative Q with generator acting by [k].
pub fn power_action(q: &GroupScheme, m: usize, k: i64) -> Result<Vec<GroupSchemeHom>> {
    let mut out = vec![GroupSchemeHom::identity(q)];
    let gen = q.convolution_power(k)?;
    for _ in 1..m {
        let prev = out.last().expect("nonempty").clone();
        out.push(prev.then(&gen)?);
    }
    Ok(out)
}

/// The trivial group scheme Spec R.
pub fn trivial(r: &Ring) -> GroupScheme {
    constant(r, &FiniteGroup::cyclic(1)).expect("trivial group").with_name("1")
}

/// μ₃ ⋊ Z/2 over `r` with the non-trivial element acting by inversion.
pub fn mu3_by_inversion(r: &Ring) -> Result<GroupScheme> {
    let q = mu(r, 3)?;
    semidirect(&q, &FiniteGroup::cyclic(2), &power_action(&q, 2, -1)?)
}

/// The builtin corpus: μ_n for n ≤ 12, constant groups of order ≤ 12, α_p
/// for p ∈ {2,3,5}, the order-2 Tate–Oort family over Z_(2) and μ₃ ⋊ Z/2
/// over GF(7), each over its listed bases.
pub fn catalogue() -> Result<Vec<GroupScheme>> {
    let q = Ring::rational();
    let z2 = Ring::localized(2)?;
    let z3 = Ring::localized(3)?;
    let fields: Vec<Ring> = [2, 3, 5, 7].iter().map(|&p| Ring::prime_field(p)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 1..=12 {
        for base in [&q, &z2, &z3].into_iter().chain(fields.iter()) {
            out.push(mu(base, n)?);
        }
    }
    let mut groups: Vec<FiniteGroup> = (1..=12).map(FiniteGroup::cyclic).collect();
    groups.push(FiniteGroup::symmetric3());
    groups.push(FiniteGroup::named("V4")?);
    groups.push(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(6)).with_name("Z2xZ6"));
    groups.push(FiniteGroup::direct_product(&FiniteGroup::symmetric3(), &FiniteGroup::cyclic(2)).with_name("S3xZ2"));
    for grp in &groups {
        for base in [&q, &z2, &fields[0], &fields[2]] {
            out.push(constant(base, grp)?);
        }
    }
    for p in [2, 3, 5] {
        out.push(alpha(&Ring::prime_field(p)?, p)?);
    }
    for (a, b) in [("-2", "1"), ("1", "-2"), ("2", "-1"), ("-1", "2"), ("-2/3", "3"), ("6", "-1/3"), ("-2/5", "5")] {
        out.push(tate_oort2(&z2, &z2.parse_elem(a)?, &z2.parse_elem(b)?)?);
    }
    out.push(mu3_by_inversion(&fields[3])?);
    Ok(out)
}
