//! Property tests over the builtin corpus.

use std::sync::OnceLock;

use proptest::prelude::*;

use ffgs::constructions::{catalogue, image_of, kernel_of, tate_oort2, ClosedSubgroup};
use ffgs::hopf::iso::{find_isomorphism, IsoConfig};
use ffgs::hopf::verify::holds;
use ffgs::hopf::{GroupScheme, Verification};
use ffgs::rings::{is_prime, is_squarefree};
use ffgs::structure::{fiber_report, p_primary_decompose, theorem_default, KernelPolicy};
use ffgs::Ring;

fn corpus() -> &'static [GroupScheme] {
    static C: OnceLock<Vec<GroupScheme>> = OnceLock::new();
    C.get_or_init(|| catalogue().unwrap())
}

fn small() -> Vec<&'static GroupScheme> {
    corpus().iter().filter(|g| g.order() <= 6).collect()
}

#[derive(Clone, Debug)]
enum Slot {
    Mult(usize, usize, usize),
    Unit(usize),
    Counit(usize),
    Antipode(usize, usize),
}

/// Adds 1 to one entry. Each of these slots is determined by the others, so
/// the result can never be a Hopf algebra again.
fn corrupt(g: &GroupScheme, slot: &Slot) -> GroupScheme {
    let r = g.base().clone();
    let mut h = g.clone();
    let (mult, unit, _, counit, antipode) = h.tensors_mut();
    let bump = |x: &mut ffgs::Elem| *x = r.add(x, &r.one());
    match *slot {
        Slot::Mult(i, j, k) => bump(&mut mult[i][j][k]),
        Slot::Unit(k) => bump(&mut unit[k]),
        Slot::Counit(k) => bump(&mut counit[k]),
        Slot::Antipode(i, j) => bump(&mut antipode[i][j]),
    }
    h
}

fn slot_for(m: usize, kind: u8, a: usize, b: usize, c: usize) -> Slot {
    match kind % 4 {
        0 if m > 1 => {
            let i = a % m;
            let j = (i + 1 + b % (m - 1)) % m;
            Slot::Mult(i, j, c % m)
        }
        1 => Slot::Counit(a % m),
        2 => Slot::Antipode(a % m, b % m),
        _ => Slot::Unit(a % m),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn corruptions_are_caught_with_a_valid_witness(
        idx in 0usize..1000, kind in 0u8..4, a in 0usize..64, b in 0usize..64, c in 0usize..64
    ) {
        let pool = small();
        let g = pool[idx % pool.len()];
        prop_assert!(g.verify().passed());
        let h = corrupt(g, &slot_for(g.order(), kind, a, b, c));
        match h.verify() {
            Verification::Pass => prop_assert!(false, "corruption of {:?} not detected", g.name()),
            Verification::Fail(f) => {
                prop_assert!(!holds(&h, f.axiom, &f.witness));
                prop_assert!(holds(g, f.axiom, &f.witness));
            }
        }
    }

    #[test]
    fn convolution_powers_compose_and_add(idx in 0usize..1000, m in -6i64..=6, n in -6i64..=6) {
        let pool: Vec<_> = small().into_iter().filter(|g| g.is_commutative()).collect();
        let g = pool[idx % pool.len()];
        let (pm, pn) = (g.convolution_power(m).unwrap(), g.convolution_power(n).unwrap());
        prop_assert_eq!(&pm.then(&pn).unwrap().map, &g.convolution_power(m * n).unwrap().map);
        let sum = g.convolve(&pm.map, &pn.map);
        prop_assert_eq!(&sum, &g.convolution_power(m + n).unwrap().map);
    }

    #[test]
    fn tate_oort_unit_scaling(ui in 0usize..6, pair in 0usize..4) {
        let z2 = Ring::localized(2).unwrap();
        let units = ["1", "-1", "3", "-3", "1/3", "-1/3"];
        let pairs = [("-2", "1"), ("1", "-2"), ("2", "-1"), ("-1", "2")];
        let u = z2.parse_elem(units[ui]).unwrap();
        let (a, b) = (z2.parse_elem(pairs[pair].0).unwrap(), z2.parse_elem(pairs[pair].1).unwrap());
        let g = tate_oort2(&z2, &a, &b).unwrap();
        let h = tate_oort2(&z2, &z2.mul(&u, &a), &z2.mul(&z2.inv(&u).unwrap(), &b)).unwrap();
        prop_assert!(find_isomorphism(&g, &h, &IsoConfig::default()).unwrap().found().is_some());
    }
}

#[test]
fn order_p_schemes_are_commutative() {
    for g in corpus().iter().filter(|g| is_prime(g.order() as u64)) {
        assert!(g.is_commutative(), "{:?}", g.name());
        assert!(
            g.comult_tensor().iter().all(|t| (0..t.len()).all(|i| (0..t.len()).all(|j| t[i][j] == t[j][i]))),
            "{:?}",
            g.name()
        );
    }
}

#[test]
fn fiber_ranks() {
    for g in corpus().iter().filter(|g| g.order() <= 8) {
        let rep = fiber_report(g).unwrap();
        for f in &rep.fibers {
            assert_eq!(f.infinitesimal_rank * f.separable_rank, g.order());
        }
        if let Ring::LocalizedIntegers(p) = g.base() {
            let (gen, closed) = (rep.entry("generic").unwrap(), rep.entry("closed").unwrap());
            assert!(gen.infinitesimal_rank <= closed.infinitesimal_rank);
            if is_squarefree(g.order() as u64) {
                assert!([1, *p as usize].contains(&closed.infinitesimal_rank));
                assert_eq!(gen.infinitesimal_rank, 1);
            }
        }
        if g.base().is_field() && is_squarefree(g.order() as u64) {
            let p = g.base().characteristic() as usize;
            assert!([1, p].contains(&rep.fibers[0].infinitesimal_rank));
        }
    }
}

#[test]
fn square_free_over_q_is_etale() {
    for g in corpus().iter().filter(|g| *g.base() == Ring::Rational && is_squarefree(g.order() as u64)) {
        assert!(g.is_etale().etale, "{:?}", g.name());
    }
}

#[test]
fn kernel_of_p_is_image_of_n_over_p() {
    for g in corpus().iter().filter(|g| g.is_commutative() && is_squarefree(g.order() as u64) && g.order() > 1) {
        let dec = p_primary_decompose(g, &[]).unwrap();
        assert!(dec.product_is_isomorphism, "{:?}", g.name());
        let n = g.order() as i64;
        for f in &dec.factors {
            let p = f.prime as i64;
            assert_eq!(kernel_of(&g.convolution_power(p).unwrap()).unwrap(), f.subgroup);
            assert_eq!(image_of(&g.convolution_power(n / p).unwrap()).unwrap(), f.subgroup);
        }
    }
}

#[test]
fn kernels_and_images_of_identity_and_zero() {
    for g in small().into_iter().filter(|g| g.is_commutative()) {
        let id = g.identity_hom();
        assert_eq!(kernel_of(&id).unwrap(), ClosedSubgroup::trivial(g));
        assert_eq!(image_of(&id).unwrap(), ClosedSubgroup::whole(g));
        let zero = g.convolution_power(0).unwrap();
        assert_eq!(kernel_of(&zero).unwrap(), ClosedSubgroup::whole(g));
        assert_eq!(image_of(&zero).unwrap(), ClosedSubgroup::trivial(g));
        for n in 1..=g.order() as i64 {
            let f = g.convolution_power(n).unwrap();
            assert!(image_of(&f).unwrap().order() * kernel_of(&f).unwrap().order() == g.order());
        }
    }
}

#[test]
fn cartier_double_dual_is_the_identity() {
    for g in corpus().iter().filter(|g| g.is_commutative() && g.order() <= 6) {
        let dd = g.cartier_dual().unwrap().cartier_dual().unwrap();
        assert!(dd.same_structure(g), "{:?}", g.name());
    }
}

#[test]
fn theorem_pipeline_on_square_free_corpus() {
    let pool: Vec<_> = corpus()
        .iter()
        .filter(|g| is_squarefree(g.order() as u64) && g.order() <= 6 && !matches!(g.base(), Ring::IntegersMod(_)))
        .collect();
    for g in pool {
        let c = theorem_default(g, KernelPolicy::Auto).unwrap();
        assert!(c.holds(), "{:?} over {}", g.name(), g.base());
        assert_eq!(c.kernel_order * c.quotient_order, g.order());
        let again = theorem_default(c.quotient(), KernelPolicy::Auto).unwrap();
        assert_eq!(again.kernel_order, 1, "{:?} over {}", g.name(), g.base());
    }
}
