mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ffgs::constructions::{quotient, ExactnessRow, ExtensionWitness};
use ffgs::hopf::iso::IsoConfig;
use ffgs::hopf::{points, EtaleCertificate, GroupScheme, PointsConfig, Verification};
use ffgs::json::{certificate_json, load_scheme, scheme_to_json, GroupSchemeFile};
use ffgs::oracle::AbstractGroup;
use ffgs::structure::frobenius::classify_by_isomorphism;
use ffgs::structure::{
    classify, common_refinement, connected_etale_sequence, fiber_report, hochschild_split, locus_report,
    p_primary_decompose, theorem_components, KernelPolicy, SplitStatus, TheoremCertificate,
};
use ffgs::structure::split::SECTION_BUDGET;
use ffgs::testrings::test_rings;
use ffgs::{Error, Ring};

use input::{parse_builtin, KernelSpec};

#[derive(Parser)]
#[command(name = "ffgs", version, about = "Finite flat group schemes as finite free Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Search-node budget for point enumeration.
    #[arg(long, global = true)]
    budget_points: Option<u64>,
    /// Search-node budget for isomorphism search.
    #[arg(long, global = true)]
    budget_iso: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// auto, e-only or normal-sylow.
    #[arg(long, global = true, default_value = "auto")]
    kernel_policy: String,
    /// Largest test ring used for exactness checks.
    #[arg(long, global = true, default_value_t = 32)]
    test_ring_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Group-scheme JSON file.
    file: Option<PathBuf>,
    /// mu:n, const:<S3|V4|Zn|table file>, alpha:p, ot2:a,b or sdp:<Q>,<P>,<action>.
    #[arg(long)]
    builtin: Option<String>,
    /// Base ring for builtins (default Q, or the --ring of `points`).
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf algebra axioms.
    Verify(Input),
    Order(Input),
    /// The group G(R') of points with values in a ring.
    Points {
        #[command(flatten)]
        input: Input,
        /// Defaults to the base ring.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Cartier dual, written in the group-scheme file format.
    Dual(Input),
    /// Decomposition into prime-order factors (commutative input).
    DecomposeP(Input),
    /// Infinitesimal and separable ranks of every fiber.
    Fibers(Input),
    /// The loci S_1, S_p, V_p and the order-p subgroup.
    Loci {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prime: u64,
    },
    /// 1 -> G° -> G -> G/G° -> 1 over a field or Artin local base.
    ConnectedEtale(Input),
    /// The extension with étale quotient and prime-order kernel factors.
    Theorem(Input),
    /// Exactness on points and a homomorphic section after base change.
    Split {
        #[command(flatten)]
        input: Input,
        /// theorem, connected-etale, whole, trivial, ker:n or sylow:p.
        #[arg(long, default_value = "theorem")]
        kernel: String,
    },
    /// Common refinement of two extensions with étale quotient.
    Refine {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        kernel: String,
        #[arg(long = "with")]
        other: String,
    },
    /// Frobenius/Verschiebung classification, checked against isomorphism search.
    ClassifyP(Input),
}

struct Ctx {
    format: Format,
    points: PointsConfig,
    iso: IsoConfig,
    policy: KernelPolicy,
    cap: u64,
}

impl Ctx {
    fn rings(&self, base: &Ring) -> Vec<Ring> {
        test_rings(base, self.cap)
    }
}

struct Report {
    text: String,
    json: String,
    code: u8,
}

fn report<T: Serialize>(kind: &str, body: &T, text: String, code: u8) -> Report {
    Report { text, json: certificate_json(kind, body), code }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 3,
        Error::NotCommutative | Error::NotFree(_) | Error::Budget(_) => 1,
        _ => 2,
    }
}

fn load(input: &Input, check: bool) -> Result<GroupScheme, Error> {
    load_over(input, check, "Q")
}

fn load_over(input: &Input, check: bool, default_base: &str) -> Result<GroupScheme, Error> {
    let g = match (&input.file, &input.builtin) {
        (Some(path), None) => load_scheme(path)?,
        (None, Some(spec)) => {
            parse_builtin(spec, &Ring::parse(input.base.as_deref().unwrap_or(default_base))?)?
        }
        _ => return Err(Error::Parse("give exactly one of FILE or --builtin".into())),
    };
    if check {
        if let Verification::Fail(f) = g.verify() {
            return Err(Error::Precondition(format!("input fails {:?} at {:?}", f.axiom, f.witness)));
        }
    }
    Ok(g)
}

fn name(g: &GroupScheme) -> String {
    format!("{} over {}", g.name().unwrap_or("G"), g.base())
}

#[derive(Serialize)]
struct PointsBody {
    ring: String,
    order: usize,
    abelian: bool,
    identity: usize,
    elements: Vec<Vec<String>>,
    table: Vec<Vec<usize>>,
    structure: String,
}

#[derive(Serialize)]
struct ExtensionBody {
    kernel_order: usize,
    quotient_order: usize,
    ranks_multiply: bool,
    quotient_etale: EtaleCertificate,
    exactness: Vec<ExactnessRow>,
    quotient: GroupSchemeFile,
}

impl ExtensionBody {
    fn new(w: &ExtensionWitness) -> ExtensionBody {
        ExtensionBody {
            kernel_order: w.kernel.order(),
            quotient_order: w.quotient().order(),
            ranks_multiply: w.ranks_multiply(),
            quotient_etale: w.quotient().is_etale(),
            exactness: w.exactness.clone(),
            quotient: GroupSchemeFile::from_scheme(w.quotient()),
        }
    }

    fn text(&self, kernel: &str) -> String {
        let mut s = format!(
            "{kernel}: order {}\nquotient: order {}, etale {} (discriminant {})\n",
            self.kernel_order, self.quotient_order, self.quotient_etale.etale, self.quotient_etale.discriminant
        );
        for row in &self.exactness {
            s += &format!(
                "  {}: {} -> {} -> {} (exact {}, surjective {})\n",
                row.ring, row.kernel_points, row.ambient_points, row.quotient_points, row.exact_in_middle, row.surjective
            );
        }
        s
    }
}

fn structure_of(g: &GroupScheme, ring: &Ring, cfg: &PointsConfig) -> Option<String> {
    let pg = points(g, ring, cfg).ok()?;
    if pg.order() != g.order() {
        return None;
    }
    Some(AbstractGroup::new(pg.table).ok()?.identify().to_string())
}

fn theorem_text(c: &TheoremCertificate, cfg: &PointsConfig) -> String {
    let mut s = format!("component {}: order {}, E = {:?}\n", c.base, c.order, c.infinitesimal_ranks);
    let ring = c.split.as_ref().and_then(|sp| sp.splitting_ring.as_deref()).and_then(|r| Ring::parse(r).ok());
    let shape = |g: &GroupScheme| {
        ring.as_ref()
            .and_then(|r| structure_of(g, r, cfg).map(|t| format!(" = {t} over {r}")))
            .unwrap_or_default()
    };
    s += &format!("G' order {}{}, primes {:?}\n", c.kernel_order, shape(c.kernel().scheme()), c.primes);
    for f in &c.factors {
        s += &format!(
            "  factor p={}: order {}, symmetric comult {}, conjugation invariant {}\n",
            f.prime, f.order, f.symmetric_comult, f.conjugation_invariant
        );
    }
    s += &format!(
        "G'' order {}{}, etale {} (discriminant {})\n",
        c.quotient_order,
        shape(c.quotient()),
        c.quotient_etale.etale,
        c.quotient_etale.discriminant
    );
    match &c.split {
        Some(sp) => {
            s += &format!("split: {:?}", sp.status);
            if let Some(r) = &sp.splitting_ring {
                s += &format!(" over {r}");
            }
            s.push('\n');
        }
        None => s += "split: not attempted\n",
    }
    s
}

fn run(cmd: Command, ctx: &Ctx) -> Result<Report, Error> {
    let cfg = &ctx.points;
    Ok(match cmd {
        Command::Verify(input) => {
            let g = load(&input, false)?;
            let v = g.verify();
            let text = match &v {
                Verification::Pass => format!("{}: pass\n", name(&g)),
                Verification::Fail(f) => {
                    format!("{}: fail, {} axiom {:?} at witness {:?}\n", name(&g), f.family, f.axiom, f.witness)
                }
            };
            let code = if v.passed() { 0 } else { 1 };
            report("verify", &v, text, code)
        }
        Command::Order(input) => {
            let g = load(&input, true)?;
            report("order", &g.order(), format!("{}\n", g.order()), 0)
        }
        Command::Points { input, ring } => {
            let g = load_over(&input, true, ring.as_deref().unwrap_or("Q"))?;
            let ring = match ring {
                Some(r) => Ring::parse(&r)?,
                None => g.base().clone(),
            };
            let pg = points(&g, &ring, cfg)?;
            let r = &pg.ring;
            let structure = AbstractGroup::new(pg.table.clone())?.identify().to_string();
            let body = PointsBody {
                ring: r.to_string(),
                order: pg.order(),
                abelian: pg.is_abelian(),
                identity: pg.identity,
                elements: pg.elements.iter().map(|v| v.iter().map(|x| r.fmt_elem(x)).collect()).collect(),
                table: pg.table.clone(),
                structure,
            };
            let mut text = format!("{}({}) has order {}: {}\n", g.name().unwrap_or("G"), r, body.order, body.structure);
            for (i, e) in body.elements.iter().enumerate() {
                text += &format!("  {i}: ({})\n", e.join(", "));
            }
            for row in &body.table {
                text += &format!("  {}\n", row.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            }
            report("points", &body, text, 0)
        }
        Command::Dual(input) => {
            let g = load(&input, true)?;
            let d = g.cartier_dual()?;
            let json = scheme_to_json(&d);
            let text = format!("Cartier dual of {}: order {}, commutative {}\n", name(&g), d.order(), d.is_commutative());
            Report { text, json, code: 0 }
        }
        Command::DecomposeP(input) => {
            let g = load(&input, true)?;
            let dec = p_primary_decompose(&g, &[])?;
            let sum = dec.summary();
            let mut text = String::new();
            for (p, n) in sum.primes.iter().zip(&sum.orders) {
                text += &format!("p={p}: ker [{p}] = im [{}] of order {n}\n", g.order() as u64 / p);
            }
            text += &format!("product map is an isomorphism: {}\n", sum.product_is_isomorphism);
            let code = if sum.product_is_isomorphism { 0 } else { 3 };
            report("decompose-p", &sum, text, code)
        }
        Command::Fibers(input) => {
            let g = load(&input, true)?;
            let rep = fiber_report(&g)?;
            let mut text = format!("{}: order {}\n", name(&g), rep.order);
            for f in &rep.fibers {
                text += &format!(
                    "  {} ({}): infinitesimal rank {}, separable rank {}, etale {}",
                    f.point, f.residue_field, f.infinitesimal_rank, f.separable_rank, f.etale
                );
                if let Some(c) = f.connected_class {
                    text += &format!(", identity component {c}");
                }
                text.push('\n');
            }
            report("fibers", &rep, text, 0)
        }
        Command::Loci { input, prime } => {
            let g = load(&input, true)?;
            let rep = locus_report(&g, prime, cfg)?;
            let mut text = format!("S1 = {:?}\nS{prime} = {:?}\nV{prime} = {:?}\n", rep.s1, rep.sp, rep.vp);
            match rep.subgroup_order {
                Some(n) => text += &format!("G_{prime}: order {n}, normal {}\n", rep.subgroup_normal == Some(true)),
                None => text += &format!("G_{prime}: none\n"),
            }
            report("loci", &rep, text, 0)
        }
        Command::ConnectedEtale(input) => {
            let g = load(&input, true)?;
            let w = connected_etale_sequence(&g, &ctx.rings(g.base()), cfg)?;
            let body = ExtensionBody::new(&w);
            let text = body.text("identity component");
            report("connected-etale", &body, text, 0)
        }
        Command::Theorem(input) => {
            let g = load(&input, true)?;
            let certs = theorem_components(&g, ctx.policy, ctx.cap, cfg)?;
            let text = certs.iter().map(|c| theorem_text(c, cfg)).collect::<String>();
            let code = if certs.iter().all(TheoremCertificate::holds) { 0 } else { 3 };
            report("theorem", &certs, text, code)
        }
        Command::Split { input, kernel } => {
            let g = load(&input, true)?;
            let rings = ctx.rings(g.base());
            let h = kernel.parse::<KernelSpec>()?.resolve(&g, ctx.policy, &rings, cfg)?;
            let w = quotient(&h, &rings, cfg)?;
            let cert = hochschild_split(&w, &rings, cfg, SECTION_BUDGET)?;
            let mut text = ExtensionBody::new(&w).text("kernel");
            text += &format!("split: {:?}", cert.status);
            if let Some(r) = &cert.splitting_ring {
                text += &format!(" over {r}");
            }
            if let Some(sec) = &cert.section {
                text += &format!(", section {sec:?}");
            }
            text.push('\n');
            let code = if cert.status == SplitStatus::Split { 0 } else { 1 };
            report("split", &cert, text, code)
        }
        Command::Refine { input, kernel, other } => {
            let g = load(&input, true)?;
            let rings = ctx.rings(g.base());
            let mut ext = Vec::new();
            for k in [&kernel, &other] {
                let h = k.parse::<KernelSpec>()?.resolve(&g, ctx.policy, &rings, cfg)?;
                ext.push(quotient(&h, &rings, cfg)?);
            }
            let w = common_refinement(&ext[0], &ext[1], &rings, cfg)?;
            let body = ExtensionBody::new(&w);
            let text = body.text("refined kernel");
            report("refine", &body, text, 0)
        }
        Command::ClassifyP(input) => {
            let g = load(&input, true)?;
            let rep = classify(&g)?;
            let by_iso = if ffgs::rings::is_prime(g.order() as u64) && g.order() as u64 == g.base().characteristic() {
                Some(classify_by_isomorphism(&g, &ctx.iso)?)
            } else {
                None
            };
            #[derive(Serialize)]
            struct Body<'a> {
                frobenius: &'a ffgs::structure::FrobeniusReport,
                isomorphism_search: Option<ffgs::structure::Classification>,
            }
            let agree = by_iso.is_none_or(|c| c == rep.classification);
            let mut text = format!(
                "{}: {} (F trivial {}, F invertible {}, V trivial {:?}, V invertible {:?})\n",
                name(&g),
                rep.classification,
                rep.f_trivial,
                rep.f_invertible,
                rep.v_trivial,
                rep.v_invertible
            );
            if let Some(c) = by_iso {
                text += &format!("isomorphism search: {c}\n");
            }
            report("classify-p", &Body { frobenius: &rep, isomorphism_search: by_iso }, text, if agree { 0 } else { 3 })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let policy = match cli.kernel_policy.parse::<KernelPolicy>() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut points = PointsConfig::default();
    if let Some(b) = cli.budget_points {
        points.budget = b;
    }
    let mut iso = IsoConfig::default();
    if let Some(b) = cli.budget_iso {
        iso.budget = b;
    }
    let ctx = Ctx { format: cli.format, points, iso, policy, cap: cli.test_ring_cap };
    match run(cli.command, &ctx) {
        Ok(r) => {
            match ctx.format {
                Format::Text => print!("{}", r.text),
                Format::Json => print!("{}", r.json),
            }
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
