//! Module computations over the supported principal ideal rings.
//!
//! Submodules of R^n are kept in Howell form: rows in echelon order, each
//! pivot replaced by its canonical associate (see [`Ring::normalize`]),
//! entries above a pivot reduced to the canonical remainder modulo the
//! pivot, and closed under the annihilator rows so that the rows whose
//! leading j entries vanish span the part of the module with that property.
//! Over a field this is the reduced row echelon form. Two submodules are
//! equal iff their Howell forms are identical.

use serde::Serialize;

use crate::rings::{Elem, Ring};

pub type Vector = Vec<Elem>;
pub type Matrix = Vec<Vec<Elem>>;

pub fn zero_vec(r: &Ring, n: usize) -> Vector {
    vec![r.zero(); n]
}

pub fn unit_vec(r: &Ring, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(r, n);
    v[i] = r.one();
    v
}

pub fn is_zero_vec(r: &Ring, v: &[Elem]) -> bool {
    v.iter().all(|x| r.is_zero(x))
}

pub fn add_vec(r: &Ring, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect()
}

pub fn sub_vec(r: &Ring, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()
}

pub fn scale_vec(r: &Ring, c: &Elem, a: &[Elem]) -> Vector {
    a.iter().map(|x| r.mul(c, x)).collect()
}

/// a + c·b
pub fn axpy(r: &Ring, a: &mut [Elem], c: &Elem, b: &[Elem]) {
    if r.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !r.is_zero(y) {
            *x = r.add(x, &r.mul(c, y));
        }
    }
}

pub fn identity(r: &Ring, n: usize) -> Matrix {
    (0..n).map(|i| unit_vec(r, n, i)).collect()
}

pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Product of matrices stored as rows: (a·b)[i][k] = Σ_j a[i][j] b[j][k].
pub fn mat_mul(r: &Ring, a: &Matrix, b: &Matrix, bcols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            let mut out = zero_vec(r, bcols);
            for (j, x) in row.iter().enumerate() {
                axpy(r, &mut out, x, &b[j]);
            }
            out
        })
        .collect()
}

/// Howell form of the row span of `gens` (each of length `ncols`).
pub fn howell_form(r: &Ring, gens: &[Vector], ncols: usize) -> Matrix {
    let mut rows: Matrix = gens.iter().filter(|g| !is_zero_vec(r, g)).cloned().collect();
    let mut top = 0;
    for col in 0..ncols {
        if top >= rows.len() {
            break;
        }
        for i in top + 1..rows.len() {
            if r.is_zero(&rows[i][col]) {
                continue;
            }
            let (_, s, t, u, v) = r.gcdex(&rows[top][col], &rows[i][col]);
            let mut new_top = scale_vec(r, &s, &rows[top]);
            axpy(r, &mut new_top, &t, &rows[i]);
            let mut new_i = scale_vec(r, &u, &rows[top]);
            axpy(r, &mut new_i, &v, &rows[i]);
            rows[top] = new_top;
            rows[i] = new_i;
        }
        if r.is_zero(&rows[top][col]) {
            continue;
        }
        let (d, unit) = r.normalize(&rows[top][col]);
        let uinv = r.inv(&unit).expect("normalizing factor is a unit");
        rows[top] = scale_vec(r, &uinv, &rows[top]);
        rows[top][col] = d.clone();
        let pivot_row = rows[top].clone();
        for row in rows.iter_mut().take(top) {
            let (q, _) = r.divrem_ideal(&row[col], &d);
            let negq = r.neg(&q);
            axpy(r, row, &negq, &pivot_row);
        }
        let a = r.ann(&d);
        if !r.is_zero(&a) {
            let extra = scale_vec(r, &a, &pivot_row);
            if !is_zero_vec(r, &extra) {
                rows.push(extra);
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows.retain(|row| !is_zero_vec(r, row));
    rows
}

fn pivot_of(r: &Ring, row: &[Elem]) -> Option<usize> {
    row.iter().position(|x| !r.is_zero(x))
}

/// A submodule of R^n in canonical (Howell) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub ncols: usize,
    pub rows: Matrix,
}

impl Submodule {
    pub fn zero(ncols: usize) -> Submodule {
        Submodule { ncols, rows: Vec::new() }
    }

    pub fn span(r: &Ring, gens: &[Vector], ncols: usize) -> Submodule {
        Submodule { ncols, rows: howell_form(r, gens, ncols) }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, r: &Ring, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        for row in &self.rows {
            let c = pivot_of(r, row).expect("Howell rows are nonzero");
            let (q, rem) = r.divrem_ideal(&w[c], &row[c]);
            if !r.is_zero(&rem) {
                return false;
            }
            let negq = r.neg(&q);
            axpy(r, &mut w, &negq, row);
        }
        is_zero_vec(r, &w)
    }

    pub fn contains_all(&self, r: &Ring, vs: &[Vector]) -> bool {
        vs.iter().all(|v| self.contains(r, v))
    }

    pub fn is_submodule_of(&self, r: &Ring, other: &Submodule) -> bool {
        other.contains_all(r, &self.rows)
    }

    pub fn sum(&self, r: &Ring, other: &Submodule) -> Submodule {
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        Submodule::span(r, &gens, self.ncols)
    }

    /// Whether R^n / self is free, witnessed by a unit-pivot basis.
    pub fn summand(&self, r: &Ring) -> Option<Summand> {
        Summand::from_generators(r, &self.rows, self.ncols).ok()
    }
}

/// Result of [`kernel_image`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelImage {
    pub kernel: Submodule,
    pub image: Submodule,
    /// The image is a free direct summand of the codomain.
    pub saturated: bool,
}

/// A linear map R^domain -> R^codomain given by a codomain × domain matrix
/// acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub domain: usize,
    pub codomain: usize,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(domain: usize, codomain: usize, matrix: Matrix) -> crate::Result<ModuleMap> {
        if matrix.len() != codomain || matrix.iter().any(|row| row.len() != domain) {
            return Err(crate::Error::Dimension(format!(
                "matrix is not {codomain}x{domain}"
            )));
        }
        Ok(ModuleMap { domain, codomain, matrix })
    }

    pub fn apply(&self, r: &Ring, v: &[Elem]) -> Vector {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect()
    }

    pub fn columns(&self) -> Matrix {
        transpose(&self.matrix, self.domain)
    }
}

/// Kernel of `v ↦ M v` as a submodule of R^domain.
pub fn kernel(r: &Ring, map: &ModuleMap) -> Submodule {
    let (m, k) = (map.codomain, map.domain);
    let aug: Matrix = (0..k)
        .map(|j| {
            let mut row: Vector = map.matrix.iter().map(|mrow| mrow[j].clone()).collect();
            row.extend(unit_vec(r, k, j));
            row
        })
        .collect();
    let h = howell_form(r, &aug, m + k);
    let gens: Matrix = h
        .into_iter()
        .filter(|row| is_zero_vec(r, &row[..m]))
        .map(|row| row[m..].to_vec())
        .collect();
    Submodule::span(r, &gens, k)
}

pub fn kernel_image(r: &Ring, map: &ModuleMap) -> KernelImage {
    let image = Submodule::span(r, &map.columns(), map.codomain);
    let saturated = image.summand(r).is_some();
    KernelImage { kernel: kernel(r, map), image, saturated }
}

/// A submodule presented by unit-pivot rows: each row has a 1 in its pivot
/// column and every row vanishes in the other rows' pivot columns. Exists
/// exactly when the submodule is a free direct summand (over local rings).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub ncols: usize,
    #[serde(skip)]
    pub rows: Matrix,
    pub pivots: Vec<usize>,
}

impl Summand {
    /// Unit-pivot elimination. On failure returns the leftover rows, which
    /// have no unit entries outside the pivot columns.
    pub fn from_generators(r: &Ring, gens: &[Vector], ncols: usize) -> Result<Summand, Matrix> {
        let mut pending: Matrix = gens.iter().filter(|g| !is_zero_vec(r, g)).cloned().collect();
        let mut basis: Vec<(usize, Vector)> = Vec::new();
        loop {
            let found = pending.iter().enumerate().find_map(|(i, row)| {
                (0..ncols)
                    .find(|&c| !basis.iter().any(|(p, _)| *p == c) && r.is_unit(&row[c]))
                    .map(|c| (i, c))
            });
            let Some((i, c)) = found else { break };
            let row = pending.remove(i);
            let inv = r.inv(&row[c]).expect("unit");
            let row = scale_vec(r, &inv, &row);
            for other in pending.iter_mut().chain(basis.iter_mut().map(|(_, v)| v)) {
                let coef = r.neg(&other[c]);
                axpy(r, other, &coef, &row);
            }
            basis.push((c, row));
            pending.retain(|row| !is_zero_vec(r, row));
        }
        if !pending.is_empty() {
            return Err(pending);
        }
        basis.sort_by_key(|(c, _)| *c);
        let (pivots, rows) = basis.into_iter().unzip();
        Ok(Summand { ncols, rows, pivots })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of `v` in the row basis, if `v` lies in the span.
    pub fn coords(&self, r: &Ring, v: &[Elem]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = zero_vec(r, self.ncols);
        for (ci, row) in c.iter().zip(&self.rows) {
            axpy(r, &mut w, ci, row);
        }
        (w == v).then_some(c)
    }

    /// Columns that are not pivots; they index a basis of R^n / span.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image of `v` in R^n / span, in the basis of complement columns.
    pub fn project(&self, r: &Ring, v: &[Elem]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            let coef = r.neg(&v[*p]);
            axpy(r, &mut w, &coef, row);
        }
        self.complement().into_iter().map(|c| w[c].clone()).collect()
    }
}

/// Characteristic polynomial det(xI - A), coefficients low to high
/// (Berkowitz, division free).
pub fn charpoly(r: &Ring, a: &Matrix) -> Vector {
    let n = a.len();
    if n == 0 {
        return vec![r.one()];
    }
    let mut poly = vec![r.one(), r.neg(&a[0][0])];
    for k in 1..n {
        // t = [1, -a_kk, -R C, -R M C, ..., -R M^{k-1} C]
        let row: Vector = a[k][..k].to_vec();
        let mut col: Vector = (0..k).map(|i| a[i][k].clone()).collect();
        let mut t = vec![r.one(), r.neg(&a[k][k])];
        for _ in 0..k {
            let rc = row
                .iter()
                .zip(&col)
                .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)));
            t.push(r.neg(&rc));
            col = (0..k)
                .map(|i| {
                    (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&a[i][j], &col[j])))
                })
                .collect();
        }
        let mut next = zero_vec(r, k + 2);
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if j <= i {
                    *slot = r.add(slot, &r.mul(&t[i - j], pj));
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

pub fn det(r: &Ring, a: &Matrix) -> Elem {
    let n = a.len();
    let c0 = charpoly(r, a)[0].clone();
    if n % 2 == 1 {
        r.neg(&c0)
    } else {
        c0
    }
}

pub fn is_invertible(r: &Ring, a: &Matrix) -> bool {
    r.is_unit(&det(r, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(r: &Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|row| row.iter().map(|&x| r.from_i64(x)).collect()).collect()
    }

    #[test]
    fn identity_over_f5() {
        let r = Ring::PrimeField(5);
        let id = ModuleMap::new(3, 3, identity(&r, 3)).unwrap();
        let ki = kernel_image(&r, &id);
        assert!(ki.kernel.is_zero());
        assert_eq!(ki.image.rows.len(), 3);
        assert!(ki.saturated);
    }

    #[test]
    fn multiplication_by_two_on_z4() {
        let r = Ring::IntegersMod(4);
        let m = ModuleMap::new(1, 1, ints(&r, &[&[2]])).unwrap();
        let ki = kernel_image(&r, &m);
        assert_eq!(ki.kernel.rows, ints(&r, &[&[2]]));
        assert_eq!(ki.image.rows, ints(&r, &[&[2]]));
        assert!(!ki.saturated);
    }

    #[test]
    fn rank_one_over_q() {
        // [[1,1],[1,1]]: kernel spanned by (1,-1), image by (1,1).
        let r = Ring::Rational;
        let m = ModuleMap::new(2, 2, ints(&r, &[&[1, 1], &[1, 1]])).unwrap();
        let ki = kernel_image(&r, &m);
        assert_eq!(ki.kernel.rows, ints(&r, &[&[1, -1]]));
        assert_eq!(ki.image.rows, ints(&r, &[&[1, 1]]));
    }

    #[test]
    fn howell_property_over_dual_numbers() {
        let r = Ring::dual(Ring::PrimeField(3)).unwrap();
        let eps = r.eps().unwrap();
        let s = Submodule::span(&r, &[vec![eps.clone(), r.one()]], 2);
        // eps·(eps, 1) = (0, eps) must be visible in the canonical form
        assert!(s.contains(&r, &[r.zero(), eps.clone()]));
        assert_eq!(s.rows.len(), 2);
        assert!(!s.contains(&r, &[r.zero(), r.one()]));
    }

    #[test]
    fn zloc_saturated_lattice_is_a_summand() {
        let r = Ring::LocalizedIntegers(2);
        let s = Submodule::span(&r, &ints(&r, &[&[2, 1]]), 2);
        assert!(s.summand(&r).is_some());
        let t = Submodule::span(&r, &ints(&r, &[&[2, 0]]), 2);
        assert!(t.summand(&r).is_none());
    }

    #[test]
    fn berkowitz_determinants() {
        let r = Ring::Rational;
        let a = ints(&r, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&r, &a), r.from_i64(18));
        let z = Ring::IntegersMod(6);
        let b = ints(&z, &[&[3, 2], &[2, 3]]);
        assert!(is_invertible(&z, &b));
    }

    fn rings() -> Vec<Ring> {
        vec![
            Ring::PrimeField(5),
            Ring::IntegersMod(12),
            Ring::IntegersMod(8),
            Ring::LocalizedIntegers(2),
            Ring::dual(Ring::PrimeField(3)).unwrap(),
            Ring::Rational,
        ]
    }

    proptest! {
        #[test]
        fn kernel_image_membership_both_ways(entries in proptest::collection::vec(-6i64..6, 12)) {
            for r in rings() {
                let mat: Matrix = entries.chunks(4).map(|c| c.iter().map(|&x| r.from_i64(x)).collect()).collect();
                let map = ModuleMap::new(4, 3, mat).unwrap();
                let ki = kernel_image(&r, &map);
                for g in &ki.kernel.rows {
                    prop_assert!(is_zero_vec(&r, &map.apply(&r, g)));
                }
                let cols = map.columns();
                prop_assert!(ki.image.contains_all(&r, &cols));
                let span_cols = Submodule::span(&r, &cols, 3);
                prop_assert!(span_cols.contains_all(&r, &ki.image.rows));
                prop_assert_eq!(span_cols, ki.image.clone());
                // canonical: permuting generators does not change the form
                let mut rev = cols.clone();
                rev.reverse();
                prop_assert_eq!(Submodule::span(&r, &rev, 3), ki.image);
            }
        }
    }
}
