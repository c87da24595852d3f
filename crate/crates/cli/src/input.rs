//! Builtin names and kernel choices accepted on the command line.

use std::path::Path;

use ffgs::constructions::{
    alpha, constant, kernel_of, mu, power_action, semidirect, tate_oort2, ClosedSubgroup,
};
use ffgs::group::FiniteGroup;
use ffgs::hopf::{GroupScheme, GroupSchemeHom};
use ffgs::json::load_group;
use ffgs::structure::{identity_component, locus_report, theorem_decompose, KernelPolicy};
use ffgs::{Error, Result, Ring};

use ffgs::hopf::PointsConfig;

/// `S3`, `V4`, `Zn`, or a path to a table file.
pub fn parse_group(s: &str) -> Result<FiniteGroup> {
    match FiniteGroup::named(s) {
        Ok(g) => Ok(g),
        Err(_) if Path::new(s).exists() => load_group(Path::new(s)),
        Err(e) => Err(e),
    }
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

/// `trivial`, or `pow:k` for a cyclic P whose generator acts by [k].
fn parse_action(s: &str, q: &GroupScheme, p: &FiniteGroup) -> Result<Vec<GroupSchemeHom>> {
    if s == "trivial" {
        return Ok(vec![GroupSchemeHom::identity(q); p.order()]);
    }
    let k: i64 = number(s.strip_prefix("pow:").ok_or_else(|| Error::Parse(format!("unknown action {s:?}")))?, "power")?;
    let n = p.order();
    // the generator of the cyclic table is element 1
    if !(n == 1 || p.element_order(1) == n) {
        return Err(Error::Precondition("pow:k needs a cyclic acting group".into()));
    }
    let powers = power_action(q, n, k)?;
    let mut out = vec![GroupSchemeHom::identity(q); n];
    let mut x = p.identity;
    for hom in powers {
        out[x] = hom;
        x = p.mul(x, 1.min(n - 1));
    }
    Ok(out)
}

/// mu:n, const:G, alpha:p, ot2:a,b, sdp:Q,P,action.
pub fn parse_builtin(spec: &str, base: &Ring) -> Result<GroupScheme> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("builtin {spec:?} has no ':'")))?;
    match kind {
        "mu" => mu(base, number(arg, "order")?),
        "const" => constant(base, &parse_group(arg)?),
        "alpha" => alpha(base, number(arg, "prime")?),
        "ot2" => {
            let (a, b) = arg.split_once(',').ok_or_else(|| Error::Parse("ot2 needs a,b".into()))?;
            tate_oort2(base, &base.parse_elem(a.trim())?, &base.parse_elem(b.trim())?)
        }
        "sdp" => {
            let (rest, action) = arg.rsplit_once(',').ok_or_else(|| Error::Parse("sdp needs Q,P,action".into()))?;
            let (q, p) = rest.rsplit_once(',').ok_or_else(|| Error::Parse("sdp needs Q,P,action".into()))?;
            let q = parse_builtin(q, base)?;
            let p = parse_group(p)?;
            let action = parse_action(action, &q, &p)?;
            semidirect(&q, &p, &action)
        }
        _ => Err(Error::Parse(format!("unknown builtin kind {kind:?}"))),
    }
}

/// Which closed subgroup to use as kernel of an extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSpec {
    Theorem,
    ConnectedEtale,
    Whole,
    Trivial,
    Multiplication(i64),
    Sylow(u64),
}

impl std::str::FromStr for KernelSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => KernelSpec::Theorem,
            "connected-etale" => KernelSpec::ConnectedEtale,
            "whole" => KernelSpec::Whole,
            "trivial" => KernelSpec::Trivial,
            _ => {
                if let Some(n) = s.strip_prefix("ker:") {
                    KernelSpec::Multiplication(number(n, "multiplier")?)
                } else if let Some(p) = s.strip_prefix("sylow:") {
                    KernelSpec::Sylow(number(p, "prime")?)
                } else {
                    return Err(Error::Parse(format!("unknown kernel {s:?}")));
                }
            }
        })
    }
}

impl KernelSpec {
    pub fn resolve(
        &self,
        g: &GroupScheme,
        policy: KernelPolicy,
        rings: &[Ring],
        cfg: &PointsConfig,
    ) -> Result<ClosedSubgroup> {
        match self {
            KernelSpec::Theorem => Ok(theorem_decompose(g, policy, rings, cfg)?.kernel().clone()),
            KernelSpec::ConnectedEtale => identity_component(g),
            KernelSpec::Whole => Ok(ClosedSubgroup::whole(g)),
            KernelSpec::Trivial => Ok(ClosedSubgroup::trivial(g)),
            KernelSpec::Multiplication(n) => kernel_of(&g.convolution_power(*n)?),
            KernelSpec::Sylow(p) => locus_report(g, *p, cfg)?
                .subgroup
                .ok_or_else(|| Error::Precondition(format!("V_{p} is not the whole spectrum"))),
        }
    }
}
