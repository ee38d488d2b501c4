use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use grouplab::bijection::{
    cl_member, explicit_bijection, refined_target_of, target_of, verify_fmain, BijectionCertificate,
};
use grouplab::construct::{build_with, catalog_for_order, write_cayley, Catalog, GroupSpec};
use grouplab::divisibility::{self, check_claim, ClaimId, ClaimParams, SweepSummary, Verdict};
use grouplab::psi_rank::{self, VerifyReport};
use grouplab::spectrum::{sol_set, OrderHistogram};
use grouplab::{FiniteGroup, Limits};

const GROUP_HELP: &str = "\
Group literals:
  C12  D8  Q8  SD16  M16  Dic3  A4  S4  SL(2,3)
  C4xC2  C3xQ8  (C4xC2)xS3     direct products, cyclic factors merge
  C7:C3                        cyclic semidirect product with the first
                               faithful action found
  file:path.cay  file:path.perm
A label that does not parse is looked up in the catalog directory
(for example '(C2xC2):C9' with the shipped catalog).

Scopes for check and verify:
  <group>    a single group
  <n>        every group of order n (catalog directory, else built-ins)
  upto:<n>   every group of order 1..=n";

#[derive(Parser)]
#[command(
    name = "grouplab",
    version,
    about = "Element orders, solution counts, order-divisibility bijections and psi rankings of finite groups",
    after_help = GROUP_HELP
)]
struct Cli {
    /// Directory of `<n>/*.cay` catalog files.
    #[arg(long, global = true, env = "GROUPLAB_CATALOG")]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2048, value_parser = clap::value_parser!(u32).range(1..))]
    order_cap: u32,
    #[arg(long, global = true, default_value_t = 512, value_parser = clap::value_parser!(u32).range(1..))]
    subgroup_cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Rank or verify catalogs that are not declared complete.
    #[arg(long, global = true)]
    advisory: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print its table in `cayley v1` format.
    Make {
        group: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structure profile, order histogram and Sylow data.
    Info { group: String },
    /// Elements x with x^m in the conjugation closure of U for some m | d.
    Sol {
        group: String,
        #[arg(short)]
        d: u64,
        /// `class:<element index>`; the default is the identity.
        #[arg(short = 'U', long = "union")]
        u: Option<String>,
    },
    /// Check one divisibility claim over a group or catalog.
    Check {
        /// frobenius, divv22, divv2, divv2222, frob3, lemmm_2va, t22va,
        /// dis, dec, ciic or noncyc.
        claim: ClaimId,
        scope: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide whether an order-divisibility bijection G -> H exists.
    Bijection {
        g: String,
        h: String,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Also print the element map.
        #[arg(long)]
        explicit: bool,
    },
    /// The abelian-by-quaternion target for G and its certificate.
    ClTarget {
        group: String,
        #[arg(long)]
        refined: bool,
    },
    /// Tiers of non-cyclic groups of order n by descending psi.
    Rank {
        n: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Run one of the catalog-level verifiers.
    Verify {
        what: Verifier,
        scope: String,
        /// Power for `coo`.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Tier for `main5`.
        #[arg(long, default_value_t = 3)]
        tier: usize,
        /// Values of l for `bounds` and `recursion`.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        l: Vec<u32>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    j: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    e: Option<u64>,
    /// Element index of the class representative `y`.
    #[arg(long)]
    y: Option<usize>,
    /// Elements of an explicit subgroup `N`, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long)]
    dis_all_d: bool,
}

impl From<ParamArgs> for ClaimParams {
    fn from(a: ParamArgs) -> Self {
        ClaimParams {
            p: a.p,
            d: a.d,
            j: a.j,
            m: a.m,
            e: a.e,
            y: a.y,
            n: a.n,
            dis_all_d: a.dis_all_d,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Feasible,
    Infeasible,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verifier {
    Fmain,
    Main5,
    Coo,
    Bounds,
    Recursion,
    SamePnil,
    CyclicMax,
}

struct Ctx {
    limits: Limits,
    catalog: Option<PathBuf>,
    format: Format,
    advisory: bool,
}

impl Ctx {
    fn group(&self, literal: &str) -> anyhow::Result<FiniteGroup> {
        let built = GroupSpec::parse(literal).and_then(|s| build_with(&s, &self.limits));
        match built {
            Ok(g) => Ok(g),
            Err(e) => self
                .catalog_lookup(literal)?
                .ok_or_else(|| anyhow!("{literal}: {e}")),
        }
    }

    fn catalog_lookup(&self, label: &str) -> anyhow::Result<Option<FiniteGroup>> {
        let Some(root) = &self.catalog else {
            return Ok(None);
        };
        let Ok(entries) = std::fs::read_dir(root) else {
            return Ok(None);
        };
        let mut orders: Vec<u64> = entries
            .filter_map(|e| e.ok()?.file_name().to_str()?.parse().ok())
            .collect();
        orders.sort_unstable();
        for n in orders {
            let cat = self.catalog(n)?;
            if let Some(g) = cat.groups.into_iter().find(|g| g.label() == label) {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    fn catalog(&self, n: u64) -> anyhow::Result<Catalog> {
        Ok(catalog_for_order(n, self.catalog.as_deref(), &self.limits)?)
    }

    /// Groups named by a scope, and whether that list is a declared
    /// complete catalog.
    fn scope(&self, scope: &str) -> anyhow::Result<Vec<Catalog>> {
        if let Some(max) = scope.strip_prefix("upto:") {
            let max: u64 = max.parse().context("upto:<n> needs an integer")?;
            return (1..=max).map(|n| self.catalog(n)).collect();
        }
        if let Ok(n) = scope.parse::<u64>() {
            if n == 0 {
                bail!("order must be positive");
            }
            return Ok(vec![self.catalog(n)?]);
        }
        let g = self.group(scope)?;
        Ok(vec![Catalog {
            order: g.order() as u64,
            groups: vec![g],
            complete: false,
            source: "command line".into(),
        }])
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        limits: Limits {
            order_cap: cli.order_cap as usize,
            subgroup_cap: cli.subgroup_cap as usize,
        },
        catalog: cli.catalog,
        format: cli.format,
        advisory: cli.advisory,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&ctx, cli.command, &mut out) {
        Ok(ok) => {
            let _ = out.flush();
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let _ = out.flush();
            let broken_pipe = e
                .downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe);
            if broken_pipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` when nothing failed.
fn run(ctx: &Ctx, command: Command, out: &mut impl Write) -> anyhow::Result<bool> {
    match command {
        Command::Make { group, output } => {
            let g = ctx.group(&group)?;
            let text = write_cayley(&g, &[format!("name: {}", g.label())]);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Command::Info { group } => info(ctx, &ctx.group(&group)?, out).map(|_| true),
        Command::Sol { group, d, u } => sol(ctx, &ctx.group(&group)?, d, u.as_deref(), out),
        Command::Check {
            claim,
            scope,
            params,
        } => check(ctx, claim, &scope, &params.into(), out),
        Command::Bijection {
            g,
            h,
            expect,
            explicit,
        } => bijection(ctx, &ctx.group(&g)?, &ctx.group(&h)?, expect, explicit, out),
        Command::ClTarget { group, refined } => cl_target(ctx, &ctx.group(&group)?, refined, out),
        Command::Rank { n, k } => {
            let tiers = psi_rank::rank_tiers(&ctx.catalog(n)?, k, ctx.advisory)?;
            match ctx.format {
                Format::Csv => psi_rank::write_tiers_csv(&tiers, &mut *out)?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&tiers)?)?,
                Format::Text => {
                    for t in &tiers {
                        writeln!(out, "{}\t{}\t{}", t.tier_index, t.psi, t.members.join(" "))?;
                    }
                }
            }
            Ok(true)
        }
        Command::Verify {
            what,
            scope,
            k,
            tier,
            l,
        } => verify(ctx, what, &scope, k, tier, &l, out),
    }
}

fn no_csv(what: &str) -> anyhow::Error {
    anyhow!("csv output is not available for {what}")
}

fn info(ctx: &Ctx, g: &FiniteGroup, out: &mut impl Write) -> anyhow::Result<()> {
    let profile = g.classify();
    let hist = OrderHistogram::of_group(g);
    let sylows: Vec<serde_json::Value> = g
        .sylows()
        .iter()
        .map(|s| {
            serde_json::json!({
                "prime": s.prime,
                "order": s.order(),
                "cyclic": s.is_cyclic,
                "generalized_quaternion": s.is_generalized_quaternion,
                "exponent": s.group_exponent,
                "elementary_abelian_rank": s.max_elementary_abelian_rank,
                "count": s.count,
            })
        })
        .collect();
    match ctx.format {
        Format::Csv => return Err(no_csv("info")),
        Format::Json => {
            let v = serde_json::json!({
                "label": g.label(),
                "profile": profile,
                "order_histogram": hist,
                "psi": grouplab::spectrum::psi(&hist).to_string(),
                "sylow": sylows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Text => {
            writeln!(out, "group\t{}", g.label())?;
            writeln!(out, "order\t{}", profile.order)?;
            for (name, v) in [
                ("cyclic", profile.is_cyclic),
                ("abelian", profile.is_abelian),
                ("nilpotent", profile.is_nilpotent),
                ("solvable", profile.is_solvable),
                ("dedekind", profile.is_dedekind),
            ] {
                writeln!(out, "{name}\t{v}")?;
            }
            writeln!(out, "two-group-class\t{}", profile.two_group_class)?;
            writeln!(out, "fitting-order\t{}", profile.fitting_order)?;
            writeln!(out, "center-order\t{}", profile.center_order)?;
            writeln!(out, "derived-order\t{}", profile.derived_order)?;
            writeln!(out, "exponent\t{}", profile.exponent)?;
            let orders: Vec<String> = hist
                .entries()
                .iter()
                .map(|(d, c)| format!("{d}:{c}"))
                .collect();
            writeln!(out, "orders\t{}", orders.join(" "))?;
            writeln!(out, "psi\t{}", grouplab::spectrum::psi(&hist))?;
            for s in g.sylows() {
                writeln!(
                    out,
                    "sylow-{}\torder={} cyclic={} quaternion={} exponent={} rank={} count={}",
                    s.prime,
                    s.order(),
                    s.is_cyclic,
                    s.is_generalized_quaternion,
                    s.group_exponent,
                    s.max_elementary_abelian_rank,
                    s.count
                )?;
            }
        }
    }
    Ok(())
}

fn sol(
    ctx: &Ctx,
    g: &FiniteGroup,
    d: u64,
    u: Option<&str>,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let seeds = match u {
        None => vec![g.identity()],
        Some(spec) => {
            let idx = spec
                .strip_prefix("class:")
                .ok_or_else(|| anyhow!("-U expects class:<element index>"))?;
            let x: usize = idx
                .parse()
                .context("class representative must be an index")?;
            g.check_index(x)?;
            vec![x]
        }
    };
    let set = sol_set(g, &seeds, d)?;
    match ctx.format {
        Format::Csv => return Err(no_csv("sol")),
        Format::Json => {
            let v = serde_json::json!({
                "group": g.label(),
                "d": d,
                "u": seeds,
                "count": set.len(),
                "elements": set,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Text => {
            writeln!(out, "count\t{}", set.len())?;
            let elems: Vec<String> = set.iter().map(|x| x.to_string()).collect();
            writeln!(out, "elements\t{}", elems.join(" "))?;
        }
    }
    Ok(true)
}

fn check(
    ctx: &Ctx,
    claim: ClaimId,
    scope: &str,
    params: &ClaimParams,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let mut reports = Vec::new();
    for cat in ctx.scope(scope)? {
        if cat.groups.len() == 1 && !cat.complete && cat.source == "command line" {
            reports.extend(check_claim(claim, &cat.groups[0], params, &ctx.limits)?);
        } else {
            reports.extend(divisibility::sweep(
                &cat.groups,
                &[claim],
                params,
                &ctx.limits,
            ));
        }
    }
    match ctx.format {
        Format::Json => divisibility::write_jsonl(&reports, &mut *out)?,
        Format::Csv => divisibility::write_csv(&reports, &mut *out)?,
        Format::Text => {
            for r in &reports {
                let observed = r.observed.map(|o| o.to_string()).unwrap_or("-".into());
                let required = r
                    .required
                    .as_ref()
                    .map(|q| q.to_string())
                    .unwrap_or("-".into());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\tobserved {observed}\trequired {required}",
                    r.verdict,
                    r.claim,
                    r.group_label,
                    r.params_string()
                )?;
            }
            let s = SweepSummary::of(&reports);
            writeln!(
                out,
                "summary\tpass {}\tfail {}\thypothesis-not-met {}\tcapability-skipped {}",
                s.pass, s.fail, s.hypothesis_not_met, s.capability_skipped
            )?;
        }
    }
    let skipped = reports
        .iter()
        .filter(|r| r.verdict == Verdict::CapabilitySkipped)
        .count();
    if skipped > 0 {
        eprintln!("warning: {skipped} instance(s) skipped at a configured cap");
    }
    Ok(reports.iter().all(|r| r.verdict != Verdict::Fail))
}

fn write_certificate(
    ctx: &Ctx,
    header: &[(&str, String)],
    cert: &BijectionCertificate,
    map: Option<&[usize]>,
    out: &mut impl Write,
) -> anyhow::Result<()> {
    match ctx.format {
        Format::Csv => return Err(no_csv("bijection certificates")),
        Format::Json => {
            let mut v = serde_json::Map::new();
            for (k, s) in header {
                v.insert(k.to_string(), serde_json::Value::String(s.clone()));
            }
            v.insert("certificate".into(), serde_json::to_value(cert)?);
            if let Some(m) = map {
                v.insert("map".into(), serde_json::to_value(m)?);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Text => {
            for (k, s) in header {
                writeln!(out, "{k}\t{s}")?;
            }
            writeln!(
                out,
                "verdict\t{}",
                if cert.is_feasible() {
                    "feasible"
                } else {
                    "infeasible"
                }
            )?;
            if let Some(a) = &cert.assignment {
                let parts: Vec<String> =
                    a.iter().map(|(d, m, c)| format!("{d}->{m}:{c}")).collect();
                writeln!(out, "assignment\t{}", parts.join(" "))?;
            }
            if let Some(v) = &cert.violator {
                let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
                writeln!(out, "violator\t{}", parts.join(" "))?;
            }
            if let Some(d) = cert.deficiency {
                writeln!(out, "deficiency\t{d}")?;
            }
            if let Some(m) = map {
                let parts: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                writeln!(out, "map\t{}", parts.join(" "))?;
            }
        }
    }
    Ok(())
}

fn bijection(
    ctx: &Ctx,
    g: &FiniteGroup,
    h: &FiniteGroup,
    expect: Option<Expect>,
    explicit: bool,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let cert = cl_member(g, h)?;
    let map = if explicit {
        explicit_bijection(g, h, &cert)
    } else {
        None
    };
    write_certificate(
        ctx,
        &[("source", g.label().into()), ("target", h.label().into())],
        &cert,
        map.as_deref(),
        out,
    )?;
    Ok(match expect {
        None | Some(Expect::Feasible) => cert.is_feasible(),
        Some(Expect::Infeasible) => !cert.is_feasible(),
    })
}

fn cl_target(
    ctx: &Ctx,
    g: &FiniteGroup,
    refined: bool,
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let (spec, label) = if refined {
        let t = refined_target_of(g, &ctx.limits)?;
        (t.spec, t.label)
    } else {
        let s = target_of(g);
        let label = s.to_string();
        (s, label)
    };
    let target = build_with(&spec, &ctx.limits)?;
    let cert = cl_member(g, &target)?;
    write_certificate(
        ctx,
        &[("group", g.label().into()), ("target", label)],
        &cert,
        None,
        out,
    )?;
    Ok(cert.is_feasible())
}

fn verify(
    ctx: &Ctx,
    what: Verifier,
    scope: &str,
    k: u32,
    tier: usize,
    ls: &[u32],
    out: &mut impl Write,
) -> anyhow::Result<bool> {
    let catalogs = ctx.scope(scope)?;
    if what == Verifier::Fmain {
        let groups: Vec<FiniteGroup> = catalogs.into_iter().flat_map(|c| c.groups).collect();
        let report = verify_fmain(&groups, &ctx.limits)?;
        match ctx.format {
            Format::Csv => return Err(no_csv("verify fmain")),
            Format::Json => {
                for row in &report.rows {
                    writeln!(out, "{}", serde_json::to_string(row)?)?;
                }
            }
            Format::Text => {
                for row in &report.rows {
                    let prime = row.prime.map(|p| format!("p={p}")).unwrap_or("all".into());
                    writeln!(
                        out,
                        "{}\t{}\t{prime}\t{}",
                        if row.certificate.is_feasible() {
                            "pass"
                        } else {
                            "fail"
                        },
                        row.group,
                        row.target
                    )?;
                }
                writeln!(
                    out,
                    "summary\trows {}\tfailures {}\tquaternion-exempt {}",
                    report.rows.len(),
                    report.failures,
                    report.quaternion_exempt.join(" ")
                )?;
            }
        }
        return Ok(report.failures == 0);
    }
    let mut report = VerifyReport::default();
    for cat in &catalogs {
        match what {
            Verifier::Main5 => {
                report.extend(psi_rank::verify_main5_at_tier(cat, tier, ctx.advisory)?)
            }
            Verifier::Coo => report.extend(psi_rank::verify_coo(cat, k, ctx.advisory)?),
            Verifier::CyclicMax => report.extend(psi_rank::verify_cyclic_max(cat, ctx.advisory)?),
            Verifier::SamePnil => {
                let pairs: Vec<(&FiniteGroup, &FiniteGroup)> = cat
                    .groups
                    .iter()
                    .flat_map(|a| cat.groups.iter().map(move |b| (a, b)))
                    .collect();
                report.extend(psi_rank::verify_same_pnil(&pairs)?);
            }
            Verifier::Bounds => {
                for g in &cat.groups {
                    report.extend(psi_rank::verify_bounds(g, ls)?);
                }
            }
            Verifier::Recursion => {
                for g in &cat.groups {
                    report.extend(psi_rank::verify_recursion(g, ls)?);
                }
            }
            Verifier::Fmain => unreachable!("handled above"),
        }
    }
    match ctx.format {
        Format::Csv => report.write_csv(&mut *out)?,
        Format::Json => report.write_jsonl(&mut *out)?,
        Format::Text => {
            for row in &report.rows {
                writeln!(out, "{row}")?;
            }
            for note in &report.notes {
                writeln!(out, "note\t{note}")?;
            }
            writeln!(
                out,
                "summary\tpass {}\tfail {}\tflagged {}\tnot-applicable {}",
                report.count(psi_rank::CheckStatus::Pass),
                report.failures(),
                report.count(psi_rank::CheckStatus::Flagged),
                report.count(psi_rank::CheckStatus::NotApplicable)
            )?;
        }
    }
    Ok(report.failures() == 0)
}
