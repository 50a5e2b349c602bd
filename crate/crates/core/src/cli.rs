//! Command-line frontend: group/family/module spec parsing, computation
//! dispatch, and deterministic text or JSON output.

use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, builtin_group, group_from_json, make_family, parse_subgroup_id, FiniteGroup,
    Subgroup, SubgroupFamily,
};
use crate::groupcoh::group_cohomology_dims;
use crate::homalg::{ext_dims, HullStrategy, ResolveCaps};
use crate::linalg::PrimeField;
use crate::module::{
    constant_module, fixed_point_module, free_module, interval_module, module_from_json,
    perm_rep_gset, GGRep, GammaModule,
};
use crate::orbit::{build_orbit_category, check_category, OrbitCategory};
use crate::relcoh::{
    fsplit_check, maximal_members, periodicity_report, relative_cohomology_dims,
    EquivariantSurjection,
};
use crate::spectral::{e2_page, E2_BANNER};
use crate::suites::{run_invariant_suites, run_paper_suites, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "orbicoh",
    version,
    about = "Exact relative group cohomology and Ext over orbit categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative cohomology dimensions with a periodicity report
    Relcoh(RelcohArgs),
    /// Ext dimensions between two modules over the orbit category
    Ext(ExtArgs),
    /// Ordinary group cohomology of a subgroup
    Groupcoh(GroupcohArgs),
    /// E2 page of the spectral sequence with both edge homomorphisms
    E2(E2Args),
    /// Splitting verdicts for the canonical permutation surjection
    Fsplit(FsplitArgs),
    /// Orbit category census dump
    Orbitcat(OrbitcatArgs),
    /// Run the invariant suites and golden-value replays
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct GroupArgs {
    /// Builtin name: trivial, cyclic:n, klein4, elem_abelian:p:k,
    /// dihedral:n, quaternion8, symmetric:n
    #[arg(long, conflicts_with = "group_file")]
    group: Option<String>,
    /// JSON file with {"name", "cayley"} or {"name", "points", "generators"}
    #[arg(long)]
    group_file: Option<std::path::PathBuf>,
}

impl GroupArgs {
    fn load(&self) -> Result<FiniteGroup> {
        match (&self.group, &self.group_file) {
            (Some(name), None) => builtin_group(name),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
                group_from_json(&text)
            }
            _ => Err(Error::BadSpec {
                reason: "need --group or --group-file".into(),
            }),
        }
    }
}

#[derive(Args)]
struct RelcohArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// cyclic | all_proper | all | rank_at_most:k | list:S1,S2
    #[arg(long)]
    family: String,
    /// Field characteristic (a prime)
    #[arg(long = "char", value_name = "P")]
    characteristic: u64,
    /// trivial | regular | perm:S1,S2
    #[arg(long, default_value = "trivial")]
    coeff: String,
    #[arg(long, default_value_t = 8)]
    max_deg: usize,
    /// Stabilization offset for the periodicity search
    #[arg(long, default_value_t = 2)]
    offset: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct ExtArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    family: String,
    #[arg(long = "char", value_name = "P")]
    characteristic: u64,
    /// constant | interval:S0,S1 | fixed:<coeff> | free:S1 | file:<path>
    #[arg(long)]
    m: String,
    #[arg(long)]
    n: String,
    #[arg(long, default_value_t = 6)]
    max_deg: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct GroupcohArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Subgroup id S<k> in enumeration order, or `full`
    #[arg(long, default_value = "full")]
    subgroup: String,
    #[arg(long = "char", value_name = "P")]
    characteristic: u64,
    #[arg(long, default_value = "trivial")]
    coeff: String,
    #[arg(long, default_value_t = 6)]
    max_deg: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct E2Args {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    family: String,
    #[arg(long = "char", value_name = "P")]
    characteristic: u64,
    #[arg(long, default_value = "trivial")]
    coeff: String,
    #[arg(long, default_value_t = 4)]
    max_p: usize,
    #[arg(long, default_value_t = 3)]
    max_q: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct FsplitArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    family: String,
    #[arg(long = "char", value_name = "P")]
    characteristic: u64,
    #[arg(long, default_value = "trivial")]
    coeff: String,
    /// G-set as subgroup ids S1,S2,...; defaults to the maximal members of
    /// the family
    #[arg(long)]
    xset: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args)]
struct OrbitcatArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long)]
    family: String,
    /// Include the full composition table in the dump
    #[arg(long)]
    full_composition: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the randomized suites
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Additionally replay the frozen paper-value suites
    #[arg(long)]
    paper: bool,
}

/// Resolves a comma-separated list of subgroup ids against the canonical
/// enumeration order.
pub fn parse_ids(group: &FiniteGroup, list: &str) -> Result<Vec<Subgroup>> {
    let all = all_subgroups(group);
    list.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_subgroup_id(&all, t))
        .collect()
}

/// Coefficient specs: `trivial`, `regular`, `perm:S1,S2`.
pub fn parse_rep(group: &FiniteGroup, field: PrimeField, spec: &str) -> Result<GGRep> {
    if spec == "trivial" {
        return Ok(GGRep::trivial(group, field));
    }
    if spec == "regular" {
        return Ok(GGRep::regular(group, field));
    }
    if let Some(list) = spec.strip_prefix("perm:") {
        let parts = parse_ids(group, list)?;
        return Ok(perm_rep_gset(group, field, &parts));
    }
    Err(Error::BadSpec {
        reason: format!("unknown coefficient spec `{spec}`"),
    })
}

/// Module specs: `constant`, `interval:S0,S1`, `fixed:<coeff>`, `free:S1`,
/// `file:<path>`.
pub fn parse_module(
    cat: &Arc<OrbitCategory>,
    field: PrimeField,
    spec: &str,
) -> Result<GammaModule> {
    if spec == "constant" {
        return Ok(constant_module(cat, field));
    }
    if let Some(list) = spec.strip_prefix("interval:") {
        let subs = parse_ids(cat.group(), list)?;
        let objs: Vec<usize> = subs
            .iter()
            .map(|s| {
                cat.object_index(s).ok_or_else(|| Error::BadSpec {
                    reason: "interval support must lie in the family".into(),
                })
            })
            .collect::<Result<_>>()?;
        return interval_module(cat, field, &objs);
    }
    if let Some(rep_spec) = spec.strip_prefix("fixed:") {
        let rep = parse_rep(cat.group(), field, rep_spec)?;
        return fixed_point_module(cat, &rep);
    }
    if let Some(id) = spec.strip_prefix("free:") {
        let sub = parse_ids(cat.group(), id)?
            .pop()
            .ok_or_else(|| Error::BadSpec {
                reason: "free: needs one subgroup id".into(),
            })?;
        let obj = cat.object_index(&sub).ok_or_else(|| Error::BadSpec {
            reason: "free module object must lie in the family".into(),
        })?;
        return Ok(free_module(cat, field, obj));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        return module_from_json(cat, &text);
    }
    Err(Error::BadSpec {
        reason: format!("unknown module spec `{spec}`"),
    })
}

fn subgroup_id(group: &FiniteGroup, s: &Subgroup) -> String {
    let all = all_subgroups(group);
    format!(
        "S{}",
        all.iter()
            .position(|x| x == s)
            .expect("subgroup is enumerated")
    )
}

fn family_ids(group: &FiniteGroup, family: &SubgroupFamily) -> Vec<String> {
    family
        .members()
        .iter()
        .map(|s| subgroup_id(group, s))
        .collect()
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs the CLI against explicit arguments, writing to the given sink.
/// Returns the process exit code: 0 success, 1 computation error, 2 usage.
pub fn run_with<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout();
    run_with(&args, &mut out)
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    let caps = ResolveCaps::default();
    let w = |out: &mut W, s: String| {
        writeln!(out, "{s}").expect("write to output");
    };
    match cli.command {
        Command::Relcoh(a) => {
            let group = a.group.load()?;
            let field = PrimeField::new(a.characteristic)?;
            let family = make_family(&group, &a.family)?;
            let rep = parse_rep(&group, field, &a.coeff)?;
            let dims = relative_cohomology_dims(&group, &family, &rep, a.max_deg, caps)?;
            let report = match periodicity_report(&dims, a.offset) {
                Ok(r) => Some(r),
                Err(Error::WindowTooShort { .. }) => None,
                Err(e) => return Err(e),
            };
            match a.format {
                Format::Tsv => {
                    w(
                        out,
                        format!("family: {} ({} subgroups)", a.family, family.len()),
                    );
                    w(out, format!("dims: {}", dims_line(&dims)));
                    match &report {
                        Some(r) => {
                            let verdict = match r.period {
                                Some(d) => format!("period {d}"),
                                None => "none detected".to_string(),
                            };
                            w(
                                out,
                                format!(
                                    "periodicity: {verdict} (window {}, offset {})",
                                    r.window, r.offset
                                ),
                            );
                        }
                        None => w(
                            out,
                            format!("periodicity: window too short for offset {}", a.offset),
                        ),
                    }
                }
                Format::Json => w(
                    out,
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "command": "relcoh",
                        "family": family_ids(&group, &family),
                        "p": a.characteristic,
                        "coeff": a.coeff,
                        "dims": dims,
                        "periodicity": report.as_ref().map(|r| json!({
                            "period": r.period,
                            "window": r.window,
                            "offset": r.offset,
                            "strictly_increasing_tail": r.strictly_increasing_tail,
                            "verdict": r.verdict,
                        })),
                    }))
                    .unwrap(),
                ),
            }
            Ok(0)
        }
        Command::Ext(a) => {
            let group = a.group.load()?;
            let field = PrimeField::new(a.characteristic)?;
            let family = make_family(&group, &a.family)?;
            let cat = build_orbit_category(&group, &family)?;
            let m = parse_module(&cat, field, &a.m)?;
            let n = parse_module(&cat, field, &a.n)?;
            let dims = ext_dims(&m, &n, a.max_deg, HullStrategy::Minimized, caps)?;
            match a.format {
                Format::Tsv => w(out, format!("dims: {}", dims_line(&dims))),
                Format::Json => w(
                    out,
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "command": "ext",
                        "p": a.characteristic,
                        "m": a.m,
                        "n": a.n,
                        "dims": dims,
                    }))
                    .unwrap(),
                ),
            }
            Ok(0)
        }
        Command::Groupcoh(a) => {
            let group = a.group.load()?;
            let field = PrimeField::new(a.characteristic)?;
            let subgroup = if a.subgroup == "full" {
                Subgroup::full(&group)
            } else {
                parse_subgroup_id(&all_subgroups(&group), &a.subgroup)?
            };
            let rep = parse_rep(&group, field, &a.coeff)?;
            let dims = group_cohomology_dims(&group, &subgroup, &rep, a.max_deg, caps)?;
            match a.format {
                Format::Tsv => {
                    w(
                        out,
                        format!("subgroup: {} (order {})", a.subgroup, subgroup.len()),
                    );
                    w(out, format!("dims: {}", dims_line(&dims)));
                }
                Format::Json => w(
                    out,
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "command": "groupcoh",
                        "subgroup": a.subgroup,
                        "p": a.characteristic,
                        "coeff": a.coeff,
                        "dims": dims,
                    }))
                    .unwrap(),
                ),
            }
            Ok(0)
        }
        Command::E2(a) => {
            let group = a.group.load()?;
            let field = PrimeField::new(a.characteristic)?;
            let family = make_family(&group, &a.family)?;
            let rep = parse_rep(&group, field, &a.coeff)?;
            let page = e2_page(&group, &family, &rep, a.max_p, a.max_q, caps)?;
            match a.format {
                Format::Tsv => {
                    w(out, format!("banner: {E2_BANNER}"));
                    for q in (0..=a.max_q).rev() {
                        let row: Vec<String> =
                            (0..=a.max_p).map(|p| page.dims[p][q].to_string()).collect();
                        w(out, format!("q={q} | {}", row.join(" ")));
                    }
                    w(
                        out,
                        format!("target dims: {}", dims_line(&page.target_dims)),
                    );
                    let vranks: Vec<usize> = page.vertical_edge.iter().map(|m| m.rank()).collect();
                    w(out, format!("vertical edge ranks: {}", dims_line(&vranks)));
                    w(
                        out,
                        format!(
                            "vertical kernel dims: {}",
                            dims_line(&page.vertical_kernel_dims())
                        ),
                    );
                    w(
                        out,
                        format!(
                            "horizontal edge ranks: {}",
                            dims_line(&page.horizontal_ranks())
                        ),
                    );
                    w(
                        out,
                        format!(
                            "relative essential dims: {}",
                            dims_line(&page.relative_essential_dims())
                        ),
                    );
                }
                Format::Json => {
                    let grid: Vec<Vec<usize>> = (0..=a.max_p)
                        .map(|p| (0..=a.max_q).map(|q| page.dims[p][q]).collect())
                        .collect();
                    w(
                        out,
                        serde_json::to_string_pretty(&json!({
                            "schema": 1,
                            "command": "e2",
                            "banner": E2_BANNER,
                            "p": a.characteristic,
                            "max_p": a.max_p,
                            "max_q": a.max_q,
                            "dims": grid,
                            "target_dims": page.target_dims,
                            "vertical_edge_ranks": page.vertical_edge.iter().map(|m| m.rank()).collect::<Vec<_>>(),
                            "vertical_kernel_dims": page.vertical_kernel_dims(),
                            "horizontal_edge_ranks": page.horizontal_ranks(),
                            "relative_essential_dims": page.relative_essential_dims(),
                        }))
                        .unwrap(),
                    );
                }
            }
            Ok(0)
        }
        Command::Fsplit(a) => {
            let group = a.group.load()?;
            let field = PrimeField::new(a.characteristic)?;
            let family = make_family(&group, &a.family)?;
            let rep = parse_rep(&group, field, &a.coeff)?;
            let xset = match &a.xset {
                Some(list) => parse_ids(&group, list)?,
                None => maximal_members(&family),
            };
            let pi = EquivariantSurjection::canonical(&group, &rep, &xset)?;
            let report = fsplit_check(&pi, &family)?;
            let xverdict = crate::relcoh::xsplit_check(&pi, &xset)?;
            match a.format {
                Format::Tsv => {
                    for wtn in &report.per_subgroup {
                        let id = subgroup_id(&group, &family.members()[wtn.subgroup]);
                        w(
                            out,
                            format!("{id}: {}", if wtn.split { "split" } else { "not split" }),
                        );
                    }
                    w(out, format!("family verdict: {}", report.all_split));
                    w(out, format!("x-split verdict: {}", xverdict.split));
                }
                Format::Json => w(
                    out,
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "command": "fsplit",
                        "p": a.characteristic,
                        "xset": xset.iter().map(|s| subgroup_id(&group, s)).collect::<Vec<_>>(),
                        "per_subgroup": report.per_subgroup,
                        "all_split": report.all_split,
                        "xsplit": xverdict,
                    }))
                    .unwrap(),
                ),
            }
            Ok(0)
        }
        Command::Orbitcat(a) => {
            let group = a.group.load()?;
            let family = make_family(&group, &a.family)?;
            let cat = build_orbit_category(&group, &family)?;
            let report = check_category(&cat);
            match a.format {
                Format::Tsv => {
                    for (i, s) in cat.objects().iter().enumerate() {
                        w(
                            out,
                            format!("object {i}: {} (order {})", subgroup_id(&group, s), s.len()),
                        );
                    }
                    for (i, row) in cat.census().iter().enumerate() {
                        w(out, format!("census[{i}]: {}", dims_line(row)));
                    }
                    w(out, format!("total morphisms: {}", report.total_morphisms));
                    w(
                        out,
                        format!("checks: {}", if report.pass { "pass" } else { "fail" }),
                    );
                }
                Format::Json => {
                    let composition: Option<Vec<[usize; 3]>> = a.full_composition.then(|| {
                        let mut rows = Vec::new();
                        for f in 0..cat.morphism_count() {
                            for g in 0..cat.morphism_count() {
                                if cat.morphism(f).target == cat.morphism(g).source {
                                    rows.push([f, g, cat.compose(f, g)]);
                                }
                            }
                        }
                        rows
                    });
                    w(
                        out,
                        serde_json::to_string_pretty(&json!({
                            "schema": 1,
                            "command": "orbitcat",
                            "objects": cat.objects().iter().map(|s| json!({
                                "id": subgroup_id(&group, s),
                                "order": s.len(),
                                "elements": s.elements(),
                            })).collect::<Vec<_>>(),
                            "census": cat.census(),
                            "morphisms": (0..cat.morphism_count()).map(|i| {
                                let m = cat.morphism(i);
                                json!({"source": m.source, "target": m.target, "rep": m.rep})
                            }).collect::<Vec<_>>(),
                            "composition": composition,
                            "checks_pass": report.pass,
                        }))
                        .unwrap(),
                    );
                }
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let mut all_pass = true;
            let mut results = run_invariant_suites(a.seed);
            if a.paper {
                results.extend(run_paper_suites());
            }
            for r in &results {
                all_pass &= r.pass;
                w(
                    out,
                    format!(
                        "[{}] {} — {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.name,
                        r.details
                    ),
                );
            }
            w(
                out,
                format!(
                    "verify: {} ({} suites, seed {:#x})",
                    if all_pass { "green" } else { "RED" },
                    results.len(),
                    a.seed
                ),
            );
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
