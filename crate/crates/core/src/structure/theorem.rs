//! The extension 1 -> G′ -> G -> G″ -> 1 of a square-free group scheme with
//! étale quotient and G′ a product of prime-order factors.

use serde::Serialize;

use super::fibers::fiber_report;
use super::loci::{locus_report, LocusReport};
use super::primary::{multiplication_map, p_primary_decompose};
use super::split::{hochschild_split, SplitCertificate, SECTION_BUDGET};
use crate::constructions::{conjugation_coaction, image_of, quotient, ClosedSubgroup, ExactnessRow, ExtensionWitness};
use crate::error::{Error, Result};
use crate::hopf::{EtaleCertificate, GroupScheme, PointsConfig};
use crate::rings::{factorize, is_squarefree, Ring};
use crate::testrings::{test_rings, DEFAULT_CAP};

/// Which primes contribute a factor to G′.
///
/// `EOnly` takes the primes occurring as infinitesimal ranks. `NormalSylow`
/// takes every prime whose locus V_p is the whole spectrum. `Auto` is `EOnly`
/// for commutative G and adds the `NormalSylow` primes otherwise, so that a
/// constant group with a normal Sylow subgroup still gets a non-trivial G′.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelPolicy {
    #[default]
    Auto,
    EOnly,
    NormalSylow,
}

impl std::str::FromStr for KernelPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(KernelPolicy::Auto),
            "e-only" => Ok(KernelPolicy::EOnly),
            "normal-sylow" => Ok(KernelPolicy::NormalSylow),
            _ => Err(Error::Parse(format!("unknown kernel policy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremFactor {
    pub prime: u64,
    pub order: usize,
    pub symmetric_comult: bool,
    /// ψ(I) ⊆ Hopf(G) ⊗ I for the conjugation coaction ψ of G.
    pub conjugation_invariant: bool,
    #[serde(skip)]
    pub subgroup: ClosedSubgroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCertificate {
    pub base: String,
    pub order: usize,
    pub policy: KernelPolicy,
    /// The set E of infinitesimal ranks.
    pub infinitesimal_ranks: Vec<usize>,
    pub primes: Vec<u64>,
    pub loci: Vec<LocusReport>,
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub ranks_multiply: bool,
    pub quotient_etale: EtaleCertificate,
    pub factors: Vec<TheoremFactor>,
    pub product_is_isomorphism: bool,
    pub exactness: Vec<ExactnessRow>,
    pub split: Option<SplitCertificate>,
    #[serde(skip)]
    pub extension: ExtensionWitness,
}

impl TheoremCertificate {
    pub fn kernel(&self) -> &ClosedSubgroup {
        &self.extension.kernel
    }

    pub fn quotient(&self) -> &GroupScheme {
        self.extension.quotient()
    }

    /// Every check the certificate records came out true.
    pub fn holds(&self) -> bool {
        self.ranks_multiply
            && self.quotient_etale.etale
            && self.product_is_isomorphism
            && self.factors.iter().all(|f| crate::rings::is_prime(f.order as u64) && f.symmetric_comult && f.conjugation_invariant)
    }
}

pub fn symmetric_comult(g: &GroupScheme) -> bool {
    g.comult_tensor().iter().all(|t| (0..t.len()).all(|i| (0..t.len()).all(|j| t[i][j] == t[j][i])))
}

pub fn conjugation_invariant(h: &ClosedSubgroup) -> bool {
    let g = h.ambient();
    let r = g.base();
    let whole = ClosedSubgroup::whole(g);
    h.ideal().rows.iter().all(|x| conjugation_coaction(&whole, x).iter().all(|row| h.ideal().contains(r, row)))
}

fn connected(r: &Ring) -> bool {
    match r {
        Ring::IntegersMod(n) => factorize(*n).len() <= 1,
        _ => true,
    }
}

pub fn theorem_decompose(
    g: &GroupScheme,
    policy: KernelPolicy,
    rings: &[Ring],
    cfg: &PointsConfig,
) -> Result<TheoremCertificate> {
    let n = g.order() as u64;
    if !is_squarefree(n) {
        return Err(Error::Precondition(format!("order {n} is not square-free")));
    }
    if !connected(g.base()) {
        return Err(Error::Unsupported(format!(
            "{} is not connected; decompose per component",
            g.base()
        )));
    }
    let report = fiber_report(g)?;
    let mut e: Vec<usize> = report.ranks();
    e.sort_unstable();
    e.dedup();
    let e_primes: Vec<u64> = e.iter().filter(|&&i| i > 1).map(|&i| i as u64).collect();
    let mut loci = Vec::new();
    let mut primes = Vec::new();
    for (p, _) in factorize(n) {
        let l = locus_report(g, p, cfg)?;
        let wanted = match policy {
            KernelPolicy::EOnly => e_primes.contains(&p),
            KernelPolicy::NormalSylow => l.vp_is_whole,
            KernelPolicy::Auto => e_primes.contains(&p) || (!g.is_commutative() && l.vp_is_whole),
        };
        if wanted {
            if !l.vp_is_whole {
                return Err(Error::Internal(format!("V_{p} is not the whole spectrum although {p} ∈ E")));
            }
            primes.push(p);
        }
        loci.push(l);
    }
    let gps: Vec<&ClosedSubgroup> = loci
        .iter()
        .filter(|l| primes.contains(&l.prime))
        .map(|l| l.subgroup.as_ref().ok_or_else(|| Error::Internal(format!("no G_{}", l.prime))))
        .collect::<Result<_>>()?;
    let gprime = match gps.len() {
        0 => ClosedSubgroup::trivial(g),
        1 => gps[0].clone(),
        _ => image_of(&multiplication_map(g, &gps)?)?,
    };
    let expected: u64 = primes.iter().product();
    if gprime.order() as u64 != expected {
        return Err(Error::Internal(format!("G′ has order {} instead of {expected}", gprime.order())));
    }
    let extension = quotient(&gprime, rings, cfg)?;
    let quotient_etale = extension.quotient().is_etale();
    if !quotient_etale.etale {
        return Err(Error::Internal("G″ is not étale".into()));
    }
    let (factors, product_is_isomorphism) = if gps.is_empty() {
        (Vec::new(), true)
    } else {
        if !gprime.scheme().is_commutative() {
            return Err(Error::Internal("G′ is not commutative".into()));
        }
        let dec = p_primary_decompose(gprime.scheme(), &[])?;
        let factors = gps
            .iter()
            .zip(&primes)
            .map(|(h, &p)| TheoremFactor {
                prime: p,
                order: h.order(),
                symmetric_comult: symmetric_comult(h.scheme()),
                conjugation_invariant: conjugation_invariant(h),
                subgroup: (*h).clone(),
            })
            .collect();
        (factors, dec.product_is_isomorphism)
    };
    let split = match hochschild_split(&extension, rings, cfg, SECTION_BUDGET) {
        Ok(s) => Some(s),
        Err(Error::Budget(_)) | Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(TheoremCertificate {
        base: g.base().to_string(),
        order: g.order(),
        policy,
        infinitesimal_ranks: e,
        primes,
        loci,
        kernel_order: extension.kernel.order(),
        quotient_order: extension.quotient().order(),
        ranks_multiply: extension.ranks_multiply(),
        quotient_etale,
        factors,
        product_is_isomorphism,
        exactness: extension.exactness.clone(),
        split,
        extension,
    })
}

/// Runs the pipeline on each connected component of the base; for ℤ/n these
/// are the ℤ/p^k with p^k ∥ n.
pub fn theorem_components(
    g: &GroupScheme,
    policy: KernelPolicy,
    cap: u64,
    cfg: &PointsConfig,
) -> Result<Vec<TheoremCertificate>> {
    let bases = match g.base() {
        Ring::IntegersMod(n) if !connected(g.base()) => {
            factorize(*n).into_iter().map(|(p, k)| Ring::IntegersMod(p.pow(k))).collect()
        }
        r => vec![r.clone()],
    };
    bases
        .iter()
        .map(|b| {
            let gb = if b == g.base() { g.clone() } else { g.base_change_to(b)? };
            theorem_decompose(&gb, policy, &test_rings(b, cap), cfg)
        })
        .collect()
}

/// The pipeline with the default test rings.
pub fn theorem_default(g: &GroupScheme, policy: KernelPolicy) -> Result<TheoremCertificate> {
    theorem_decompose(g, policy, &test_rings(g.base(), DEFAULT_CAP), &PointsConfig::default())
}
