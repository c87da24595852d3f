//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them so every line is printed.

use std::io::Write;
use std::process::Command;

use rayon::prelude::*;

use ffgs::constructions::{
    alpha, catalogue, constant, image_of, kernel_of, mu, mu3_by_inversion, product, quotient, tate_oort2,
    ClosedSubgroup, ExtensionWitness,
};
use ffgs::group::FiniteGroup;
use ffgs::hopf::iso::IsoConfig;
use ffgs::hopf::verify::holds;
use ffgs::hopf::{points, GroupScheme, PointsConfig, Verification};
use ffgs::json::scheme_from_json;
use ffgs::oracle::{enumerate_points, points::DEFAULT_BUDGET};
use ffgs::rings::is_squarefree;
use ffgs::structure::frobenius::classify_by_isomorphism;
use ffgs::structure::split::SECTION_BUDGET;
use ffgs::structure::{
    classify, common_refinement, connected_etale_sequence, fiber_report, hochschild_split, locus_report,
    p_primary_decompose, theorem_decompose, theorem_default, Classification, KernelPolicy, SplitStatus,
};
use ffgs::testrings::{test_rings, DEFAULT_CAP};
use ffgs::Ring;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(p: u64) -> Ring {
    Ring::prime_field(p).unwrap()
}

fn zloc2() -> Ring {
    Ring::localized(2).unwrap()
}

fn s3(r: &Ring) -> GroupScheme {
    constant(r, &FiniteGroup::symmetric3()).unwrap()
}

fn z(r: &Ring, n: usize) -> GroupScheme {
    constant(r, &FiniteGroup::cyclic(n)).unwrap()
}

fn hopf_verification() -> Outcome {
    let all = catalogue().map_err(|e| e.to_string())?;
    for g in &all {
        ensure(g.verify().passed(), || format!("{:?} over {} fails", g.name(), g.base()))?;
    }
    // 20 corruptions spread over the corpus and over the four slot kinds
    let picks: Vec<&GroupScheme> = all.iter().filter(|g| g.order() > 1).step_by(7).take(20).collect();
    ensure(picks.len() == 20, || "not enough builtins".into())?;
    for (n, g) in picks.into_iter().enumerate() {
        let r = g.base().clone();
        let m = g.order();
        let mut h = g.clone();
        let (mult, unit, _, counit, antipode) = h.tensors_mut();
        let bump = |x: &mut ffgs::Elem| *x = r.add(x, &r.one());
        match n % 4 {
            0 => bump(&mut mult[n % m][(n + 1) % m][n % m]),
            1 => bump(&mut unit[n % m]),
            2 => bump(&mut counit[n % m]),
            _ => bump(&mut antipode[n % m][(n / 4) % m]),
        }
        match h.verify() {
            Verification::Pass => return Err(format!("corruption {n} of {:?} passed", g.name())),
            Verification::Fail(w) => ensure(!holds(&h, w.axiom, &w.witness) && holds(g, w.axiom, &w.witness), || {
                format!("corruption {n}: witness {:?} {:?} is wrong", w.axiom, w.witness)
            })?,
        }
    }
    Ok(())
}

fn primary_decomposition() -> Outcome {
    for r in [f(5), Ring::Rational] {
        for g in [z(&r, 6), mu(&r, 6).unwrap()] {
            let dec = p_primary_decompose(&g, &[]).map_err(|e| e.to_string())?;
            let primes: Vec<u64> = dec.factors.iter().map(|f| f.prime).collect();
            ensure(primes == [2, 3], || format!("{:?}: primes {primes:?}", g.name()))?;
            ensure(dec.product_is_isomorphism, || format!("{:?}: product map not invertible", g.name()))?;
            for fct in &dec.factors {
                let p = fct.prime as i64;
                let ker = kernel_of(&g.convolution_power(p).unwrap()).unwrap();
                let im = image_of(&g.convolution_power(6 / p).unwrap()).unwrap();
                ensure(ker == im && ker == fct.subgroup, || format!("{:?}: ker [{p}] != im [{}]", g.name(), 6 / p))?;
            }
        }
    }
    Ok(())
}

fn hochschild() -> Outcome {
    let cfg = PointsConfig::default();
    for g in [s3(&Ring::Rational), mu3_by_inversion(&f(7)).unwrap()] {
        let rings = test_rings(g.base(), DEFAULT_CAP);
        let h = locus_report(&g, 3, &cfg).map_err(|e| e.to_string())?.subgroup.ok_or("no G_3")?;
        let w = quotient(&h, &rings, &cfg).map_err(|e| e.to_string())?;
        let cert = hochschild_split(&w, &rings, &cfg, SECTION_BUDGET).map_err(|e| e.to_string())?;
        ensure(cert.hochschild && cert.exactness.len() == rings.len(), || format!("{:?}: exactness", g.name()))?;
        ensure(cert.status == SplitStatus::Split, || format!("{:?}: {:?}", g.name(), cert.status))?;
    }
    Ok(())
}

fn refinement_ok(e1: &ExtensionWitness, e2: &ExtensionWitness, rings: &[Ring], kernel: usize) -> Outcome {
    let cfg = PointsConfig::default();
    let w = common_refinement(e1, e2, rings, &cfg).map_err(|e| e.to_string())?;
    ensure(w.kernel.order() == kernel, || format!("kernel order {}", w.kernel.order()))?;
    ensure(w.kernel.scheme().verify().passed() && w.quotient().verify().passed(), || "not flat".into())?;
    ensure(w.quotient().is_etale().etale && w.ranks_multiply(), || "quotient not étale".into())
}

fn refinement() -> Outcome {
    let cfg = PointsConfig::default();
    let g = s3(&Ring::Rational);
    let rings = test_rings(g.base(), DEFAULT_CAP);
    let e = theorem_decompose(&g, KernelPolicy::Auto, &rings, &cfg).map_err(|e| e.to_string())?.extension;
    refinement_ok(&e, &e, &rings, 3)?;

    let g = z(&f(5), 6);
    let rings = test_rings(g.base(), DEFAULT_CAP);
    let e1 = quotient(&ClosedSubgroup::whole(&g), &rings, &cfg).unwrap();
    let e2 = quotient(&kernel_of(&g.convolution_power(2).unwrap()).unwrap(), &rings, &cfg).unwrap();
    refinement_ok(&e1, &e2, &rings, 2)?;

    let g = product(&mu(&f(2), 2).unwrap(), &z(&f(2), 3)).unwrap();
    let rings = test_rings(g.base(), DEFAULT_CAP);
    let e1 = quotient(&ClosedSubgroup::whole(&g), &rings, &cfg).unwrap();
    let e2 = connected_etale_sequence(&g, &rings, &cfg).map_err(|e| e.to_string())?;
    refinement_ok(&e1, &e2, &rings, 2)
}

fn etale_loci() -> Outcome {
    let all = catalogue().map_err(|e| e.to_string())?;
    for g in all.iter().filter(|g| *g.base() == Ring::Rational && is_squarefree(g.order() as u64)) {
        ensure(g.is_etale().etale, || format!("{:?} over Q is not étale", g.name()))?;
    }
    for g in all.iter().filter(|g| *g.base() == f(5)) {
        let rep = fiber_report(g).map_err(|e| e.to_string())?;
        let pt = &rep.fibers[0];
        ensure(pt.etale == (pt.separable_rank == g.order()), || format!("{:?} over GF(5)", g.name()))?;
        ensure(pt.etale == g.is_etale().etale, || format!("{:?} over GF(5): flags differ", g.name()))?;
    }
    Ok(())
}

fn classifier() -> Outcome {
    let cases = [
        (mu(&f(2), 2).unwrap(), Classification::Mu),
        (mu(&f(3), 3).unwrap(), Classification::Mu),
        (alpha(&f(2), 2).unwrap(), Classification::Alpha),
        (alpha(&f(3), 3).unwrap(), Classification::Alpha),
        (z(&f(2), 2), Classification::Etale),
        (z(&f(3), 3), Classification::Etale),
    ];
    for (g, want) in cases {
        let fv = classify(&g).map_err(|e| e.to_string())?.classification;
        let iso = classify_by_isomorphism(&g, &IsoConfig::default()).map_err(|e| e.to_string())?;
        ensure(fv == want && iso == want, || format!("{:?}: F/V {fv}, search {iso}, expected {want}", g.name()))?;
    }
    Ok(())
}

fn loci() -> Outcome {
    let cfg = PointsConfig::default();
    let g = mu(&zloc2(), 2).unwrap();
    let rep = fiber_report(&g).map_err(|e| e.to_string())?;
    let ranks = (rep.entry("generic").unwrap().infinitesimal_rank, rep.entry("closed").unwrap().infinitesimal_rank);
    ensure(ranks == (1, 2), || format!("ranks {ranks:?}"))?;
    let l = locus_report(&g, 2, &cfg).map_err(|e| e.to_string())?;
    ensure(l.s1 == ["generic"] && l.sp.len() == 2 && l.vp_is_whole, || format!("{l:?}"))?;
    let g2 = l.subgroup.as_ref().ok_or("no G_2")?;
    ensure(g2.order() == 2 && l.subgroup_normal == Some(true), || "G_2 not of order 2 or not normal".into())?;
    ensure(g2.scheme().same_structure(&g) || *g2 == ClosedSubgroup::whole(&g), || "G_2 is not μ_2".into())?;

    let g = s3(&f(5));
    let l2 = locus_report(&g, 2, &cfg).map_err(|e| e.to_string())?;
    ensure(l2.vp.is_empty() && l2.subgroup.is_none(), || "V_2 not empty".into())?;
    let l3 = locus_report(&g, 3, &cfg).map_err(|e| e.to_string())?;
    ensure(l3.vp_is_whole && l3.subgroup_order == Some(3) && l3.subgroup_normal == Some(true), || "V_3".into())?;
    // G_3 is the constant Z/3 inside S3
    let g3 = l3.subgroup.unwrap();
    let pts = points(g3.scheme(), &f(5), &cfg).map_err(|e| e.to_string())?;
    ensure(pts.order() == 3, || "G_3 is not constant".into())
}

fn theorem() -> Outcome {
    let ot = tate_oort2(&zloc2(), &zloc2().from_i64(-2), &zloc2().one()).unwrap();
    let cases = [
        (s3(&Ring::Rational), 3),
        (mu(&zloc2(), 6).unwrap(), 2),
        (mu(&f(5), 6).unwrap(), 1),
        (product(&ot, &z(&zloc2(), 3)).unwrap(), 2),
    ];
    for (g, kernel) in cases {
        let c = theorem_default(&g, KernelPolicy::Auto).map_err(|e| e.to_string())?;
        let tag = format!("{:?} over {}", g.name(), g.base());
        ensure(c.kernel_order == kernel, || format!("{tag}: kernel order {}", c.kernel_order))?;
        ensure(c.kernel_order * c.quotient_order == g.order(), || format!("{tag}: orders"))?;
        ensure(g.base().is_unit(&c.quotient().discriminant()), || format!("{tag}: discriminant"))?;
        ensure(c.factors.iter().all(|f| f.order as u64 == f.prime), || format!("{tag}: factor orders"))?;
        ensure(c.factors.iter().all(|f| f.symmetric_comult && f.conjugation_invariant), || format!("{tag}: factors"))?;
        ensure(c.holds(), || format!("{tag}: certificate"))?;
        let again = theorem_default(c.quotient(), KernelPolicy::Auto).map_err(|e| e.to_string())?;
        ensure(again.kernel_order == 1, || format!("{tag}: re-run kernel {}", again.kernel_order))?;
    }
    Ok(())
}

fn oracle() -> Outcome {
    let cfg = PointsConfig::default();
    let all = catalogue().map_err(|e| e.to_string())?;
    let jobs: Vec<(usize, Ring)> = all
        .iter()
        .enumerate()
        .flat_map(|(i, g)| test_rings(g.base(), DEFAULT_CAP).into_iter().filter(Ring::is_finite).map(move |t| (i, t)))
        .collect();
    jobs.par_iter().try_for_each(|(i, t)| {
        let g = &all[*i];
        let a = points(g, t, &cfg).map_err(|e| e.to_string())?;
        let b = enumerate_points(g, t, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(a.elements == b.elements && a.table == b.group.table, || format!("{:?} over {t}", g.name()))
    })?;
    ensure(jobs.len() > 500, || format!("only {} pairs", jobs.len()))
}

fn ffgs(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ffgs")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code())
}

fn determinism() -> Outcome {
    let jobs: Vec<Vec<&str>> = vec![
        vec!["verify", "--builtin", "sdp:mu:3,Z2,pow:-1", "--base", "GF(7)"],
        vec!["order", "--builtin", "mu:6", "--base", "Zloc(2)"],
        vec!["points", "--builtin", "const:S3", "--ring", "GF(5)"],
        vec!["dual", "--builtin", "mu:6", "--base", "GF(5)"],
        vec!["decompose-p", "--builtin", "const:Z6", "--base", "Q"],
        vec!["fibers", "--builtin", "mu:6", "--base", "Zloc(2)"],
        vec!["loci", "--builtin", "const:S3", "--base", "GF(5)", "--prime", "3"],
        vec!["connected-etale", "--builtin", "mu:6", "--base", "GF(2)"],
        vec!["theorem", "--builtin", "const:S3", "--base", "Q"],
        vec!["split", "--builtin", "sdp:mu:3,Z2,pow:-1", "--base", "GF(7)"],
        vec!["refine", "--builtin", "const:Z6", "--base", "GF(5)", "--kernel", "whole", "--with", "ker:2"],
        vec!["classify-p", "--builtin", "alpha:3", "--base", "GF(3)"],
    ];
    for job in jobs {
        let mut runs = Vec::new();
        for threads in ["1", "4", "1"] {
            let mut args = job.clone();
            args.extend(["--format", "json", "--threads", threads]);
            runs.push(ffgs(&args));
        }
        ensure(runs[0].1 == Some(0), || format!("{}: exit {:?}", job[0], runs[0].1))?;
        ensure(runs.iter().all(|r| *r == runs[0]), || format!("{}: output differs", job[0]))?;
        if job[0] == "dual" {
            let text = String::from_utf8(runs[0].0.clone()).map_err(|e| e.to_string())?;
            let d = scheme_from_json(&text).map_err(|e| e.to_string())?;
            ensure(d.verify().passed(), || "dual does not round-trip".into())?;
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Hopf verification and corruption witnesses", hopf_verification),
        ("p-primary decomposition of Z/6 and mu6", primary_decomposition),
        ("exactness on points and homomorphic sections", hochschild),
        ("common refinements are flat with étale quotient", refinement),
        ("étale flags over Q and GF(5)", etale_loci),
        ("Frobenius/Verschiebung classifier against isomorphism search", classifier),
        ("infinitesimal ranks, loci and order-p subgroups", loci),
        ("theorem pipeline end to end", theorem),
        ("points agree with the brute-force oracle", oracle),
        ("CLI JSON is deterministic across runs and threads", determinism),
    ];
    // written to the stdout handle directly so the lines survive capture
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(()) => format!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {:>2}: FAIL  {name}: {why}", i + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
