//! `capitula` — command-line front end for the group-theoretic and
//! arithmetic toolkit in the `capitula` library crate.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 domain error or failed validation, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use capitula::artin::{artin_pattern, stable_part_check, CapitulationType};
use capitula::cubic::{
    admissible_capitulation_types, classify_conductor, cubic_residue_symbol, multiplicity,
    normalize_radicand, AuxType, ConductorShape, CubicSymbol,
};
use capitula::fixtures::{
    find_entry, load_catalog, load_catalog_file, load_tables, validate_row, validate_tables,
    verify_catalog, CatalogEntry, Check,
};
use capitula::tower::{
    huppert_check, little_tower_groups, shafarevich_interval, structure_report,
    two_step_centralizer, HuppertVerdict, ShafarevichInput,
};
use capitula::Group;

#[derive(Parser)]
#[command(name = "capitula", version, about = "3-group Artin patterns and pure cubic field data", max_term_width = 100)]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory of table TSV files overriding the embedded tables.
    #[arg(long, global = true, env = "CAPITULA_TABLES", value_name = "DIR")]
    tables_dir: Option<PathBuf>,
    /// Worker threads for validation (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a permutation group from the built-in catalog or a file.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Capitulation-type (TKT) utilities.
    Tkt {
        #[command(subcommand)]
        op: TktOp,
    },
    /// Normalize a pure cubic radicand and compute its conductor/species.
    Radicand { n: u64 },
    /// Classify a conductor; optionally enumerate its radicand multiplet.
    Conductor {
        f: u64,
        #[arg(long)]
        multiplicity: bool,
    },
    /// Cubic residue symbol of x modulo a prime p ≡ 1 (mod 3).
    Residue { x: u64, p: u64 },
    /// Admissible capitulation types for an auxiliary-field type and unit norm index.
    Admissible {
        aux: AuxArg,
        unit_norm_index: u64,
    },
    /// Shafarevich relation-rank interval for (rho, r1, r2, theta).
    Shafarevich {
        rho: u32,
        r1: u32,
        r2: u32,
        theta: u32,
        /// Check this claimed relation rank against the interval.
        #[arg(long)]
        d2: Option<u32>,
    },
    /// Run the embedded cross-validation harness.
    Validate {
        /// Validate the field-data tables.
        #[arg(long)]
        tables: bool,
        /// Verify the group catalog.
        #[arg(long)]
        catalog: bool,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    /// Order, class, coclass and structure predicates.
    Info(GroupArg),
    /// Artin pattern: transfer kernel type and transfer target type.
    Artin(GroupArg),
    /// Maximal-class two-step criterion verdict.
    Huppert(GroupArg),
    /// Two-step centralizer and the little two-stage towers.
    Tower(GroupArg),
}

#[derive(Args)]
struct GroupArg {
    /// Catalog name (e.g. "243#3") or FILE#NAME for an external .grp file.
    spec: String,
}

#[derive(Subcommand)]
enum TktOp {
    /// Canonical form and name of a capitulation type.
    Canon { tuple: String },
    /// Partial-order comparison a ≤ b.
    Leq { a: String, b: String },
    /// Fixed points and transpositions of a capitulation type.
    Features { tuple: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum AuxArg {
    Alpha,
    Gamma,
}

/// What a handler hands back to `main` for rendering.
struct Outcome {
    text: String,
    payload: Value,
    warnings: Vec<String>,
    failed: bool,
}

impl Outcome {
    fn ok(text: String, payload: Value) -> Outcome {
        Outcome { text, payload, warnings: Vec::new(), failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match dispatch(&cli) {
        Ok(out) => {
            let code = if out.failed { 1 } else { 0 };
            if cli.json {
                let doc = json!({
                    "command": command_echo,
                    "result": out.payload,
                    "warnings": out.warnings,
                    "exit_code": code,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
            } else {
                print!("{}", out.text);
                for w in &out.warnings {
                    eprintln!("warning: {w}");
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            if cli.json {
                let doc = json!({
                    "command": command_echo,
                    "result": Value::Null,
                    "warnings": [format!("{e:#}")],
                    "exit_code": 1,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serialize"));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Group { op } => group_cmd(op),
        Cmd::Tkt { op } => tkt_cmd(op),
        Cmd::Radicand { n } => radicand_cmd(*n),
        Cmd::Conductor { f, multiplicity } => conductor_cmd(*f, *multiplicity),
        Cmd::Residue { x, p } => residue_cmd(*x, *p),
        Cmd::Admissible { aux, unit_norm_index } => admissible_cmd(*aux, *unit_norm_index),
        Cmd::Shafarevich { rho, r1, r2, theta, d2 } => shafarevich_cmd(*rho, *r1, *r2, *theta, *d2),
        Cmd::Validate { tables, catalog } => validate_cmd(cli, *tables, *catalog),
    }
}

/// Resolves a group spec: the whole string as a built-in catalog name first,
/// otherwise FILE#NAME where FILE is a .grp catalog file on disk.
fn resolve_group(spec: &str) -> Result<(String, Group)> {
    let builtin = load_catalog(None)?;
    if let Ok(entry) = find_entry(&builtin, spec) {
        return Ok((entry.name.clone(), entry.group()?));
    }
    if let Some((file, name)) = spec.split_once('#') {
        let path = PathBuf::from(file);
        if path.is_file() {
            let entries: Vec<CatalogEntry> = load_catalog_file(&path)?;
            let entry = find_entry(&entries, name)
                .with_context(|| format!("in file {}", path.display()))?;
            return Ok((entry.name.clone(), entry.group()?));
        }
    }
    Err(anyhow!(
        "no such group {spec:?}: not a built-in catalog name, and not FILE#NAME with an existing file"
    ))
}

fn group_cmd(op: &GroupOp) -> Result<Outcome> {
    match op {
        GroupOp::Info(arg) => {
            let (name, g) = resolve_group(&arg.spec)?;
            let rep = structure_report(&g)?;
            let derived = g.derived_subgroup();
            let ab = g.quotient(&derived)?.group.abelian_invariants()?;
            let ab_str = log_string(&ab.log3()?);
            let metacyclic = match rep.metacyclic {
                Some(b) => b.to_string(),
                None => "unknown (above cap)".into(),
            };
            let text = format!(
                "group {}\n  order {} = 3^{}\n  class {}\n  coclass {}\n  abelianization ({})\n  metabelian {}\n  metacyclic {}\n  maximal class {}\n",
                name, rep.order, g.log3_order()?, rep.class, rep.coclass, ab_str,
                rep.metabelian, metacyclic, rep.maximal_class
            );
            let payload = json!({
                "name": name,
                "order": rep.order,
                "class": rep.class,
                "coclass": rep.coclass,
                "abelianization": ab_str,
                "metabelian": rep.metabelian,
                "metacyclic": rep.metacyclic,
                "maximal_class": rep.maximal_class,
            });
            Ok(Outcome::ok(text, payload))
        }
        GroupOp::Artin(arg) => {
            let (name, g) = resolve_group(&arg.spec)?;
            let ap = artin_pattern(&g)?;
            let (canon, tname) = ap.tkt.canonicalize();
            let stable = stable_part_check(&ap).ok();
            let text = format!(
                "group {}\n  ttt ({})\n  tkt {} -> canonical {} [{}]\n  stable-part check: {}\n",
                name,
                ap.ttt_string(),
                ap.tkt,
                canon,
                tname,
                match stable {
                    Some(b) => b.to_string(),
                    None => "inapplicable".into(),
                }
            );
            let payload = json!({
                "name": name,
                "ttt": ap.ttt_string(),
                "tkt": ap.tkt.to_string(),
                "tkt_canonical": canon.to_string(),
                "tkt_name": tname,
                "stable_part": stable,
            });
            Ok(Outcome::ok(text, payload))
        }
        GroupOp::Huppert(arg) => {
            let (name, g) = resolve_group(&arg.spec)?;
            let verdict = huppert_check(&g)?;
            let (vs, detail): (&str, Value) = match verdict {
                HuppertVerdict::HypothesisNotMet { conclusion_holds } => (
                    "hypothesis not met",
                    json!({ "conclusion_holds": conclusion_holds }),
                ),
                HuppertVerdict::ConclusionHolds => ("conclusion holds", Value::Null),
                HuppertVerdict::Counterexample => ("counterexample", Value::Null),
            };
            let text = format!("group {name}\n  huppert: {vs}\n");
            Ok(Outcome::ok(text, json!({ "name": name, "verdict": vs, "detail": detail })))
        }
        GroupOp::Tower(arg) => {
            let (name, g) = resolve_group(&arg.spec)?;
            let cent = two_step_centralizer(&g)?;
            let cent_ab = if cent.is_abelian() {
                log_string(&cent.abelian_invariants()?.log3()?)
            } else {
                "nonabelian".into()
            };
            let towers = little_tower_groups(&g)?;
            let mut text = format!(
                "group {}\n  two-step centralizer: order {} ({})\n  little towers:\n",
                name,
                cent.order(),
                cent_ab
            );
            let mut items = Vec::new();
            for (i, t) in towers.iter().enumerate() {
                writeln!(
                    text,
                    "    M{}: abelian part ({}), tower group order {}",
                    i + 1,
                    t.distinguished_abelian,
                    t.quotient.group.order()
                )?;
                items.push(json!({
                    "index": i + 1,
                    "abelian_part": t.distinguished_abelian.to_string(),
                    "tower_group_order": t.quotient.group.order(),
                }));
            }
            let payload = json!({
                "name": name,
                "two_step_centralizer": { "order": cent.order(), "invariants": cent_ab },
                "little_towers": items,
            });
            Ok(Outcome::ok(text, payload))
        }
    }
}

fn tkt_cmd(op: &TktOp) -> Result<Outcome> {
    match op {
        TktOp::Canon { tuple } => {
            let t = CapitulationType::from_str(tuple)?;
            let (canon, name) = t.canonicalize();
            // Named types display as their conventional representative tuple,
            // unnamed ones as the lexicographic orbit minimum.
            let shown = capitula::artin::NAMED_TYPES
                .iter()
                .find(|(n, _)| *n == name)
                .map(|&(_, rep)| CapitulationType(rep))
                .unwrap_or(canon);
            let text = format!("{name} ({shown})\n");
            Ok(Outcome::ok(
                text,
                json!({
                    "input": t.to_string(),
                    "canonical": canon.to_string(),
                    "representative": shown.to_string(),
                    "name": name,
                }),
            ))
        }
        TktOp::Leq { a, b } => {
            let ta = CapitulationType::from_str(a)?;
            let tb = CapitulationType::from_str(b)?;
            let leq = ta.leq(&tb);
            Ok(Outcome::ok(
                format!("({ta}) <= ({tb}): {leq}\n"),
                json!({ "a": ta.to_string(), "b": tb.to_string(), "leq": leq }),
            ))
        }
        TktOp::Features { tuple } => {
            let t = CapitulationType::from_str(tuple)?;
            let (fixed, transpositions) = t.features();
            let fixed_str: Vec<String> = fixed.iter().map(|i| i.to_string()).collect();
            let tr_str: Vec<String> =
                transpositions.iter().map(|(i, j)| format!("({i},{j})")).collect();
            let text = format!(
                "fixed points: {}\ntranspositions: {}\n",
                if fixed_str.is_empty() { "none".into() } else { fixed_str.join(" ") },
                if tr_str.is_empty() { "none".into() } else { tr_str.join(" ") },
            );
            Ok(Outcome::ok(
                text,
                json!({
                    "input": t.to_string(),
                    "fixed_points": fixed.iter().map(|&i| i as u64).collect::<Vec<_>>(),
                    "transpositions": transpositions
                        .iter()
                        .map(|&(i, j)| vec![i as u64, j as u64])
                        .collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn radicand_cmd(n: u64) -> Result<Outcome> {
    let profile = normalize_radicand(n)?;
    let text = format!(
        "n = {} = {}·{}²  (normalized{})\nconductor {}\nspecies {}\n",
        profile.n,
        profile.a,
        profile.b,
        if profile.input_was_normalized { "" } else { ", input was the conjugate" },
        profile.conductor,
        profile.species
    );
    let payload = json!({
        "input": n,
        "normalized": profile.n,
        "a": profile.a,
        "b": profile.b,
        "input_was_normalized": profile.input_was_normalized,
        "conductor": profile.conductor,
        "species": profile.species.to_string(),
    });
    Ok(Outcome::ok(text, payload))
}

fn conductor_cmd(f: u64, with_multiplicity: bool) -> Result<Outcome> {
    let shape = classify_conductor(f);
    let shape_str = match &shape {
        ConductorShape::Pq1q2 { p, q1, q2 } => format!("pq1q2 (p={p}, q1={q1}, q2={q2})"),
        ConductorShape::ThreePq { p, q } => format!("3pq (p={p}, q={q})"),
        ConductorShape::NinePq { p, q } => format!("9pq (p={p}, q={q})"),
        ConductorShape::Other => "other".into(),
    };
    let mut text = format!("f = {f}: shape {shape_str}\n");
    let mut payload = json!({ "f": f, "shape": shape_str });
    if with_multiplicity {
        let (m, radicands) = multiplicity(f)?;
        let list = radicands.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(text, "m={m}; {list}")?;
        payload["multiplicity"] = json!(m);
        payload["radicands"] = json!(radicands);
    }
    Ok(Outcome::ok(text, payload))
}

fn residue_cmd(x: u64, p: u64) -> Result<Outcome> {
    let sym = cubic_residue_symbol(x, p)?;
    let name = match sym {
        CubicSymbol::Residue => "residue",
        CubicSymbol::NonresidueClass1 => "nonresidue (class 1)",
        CubicSymbol::NonresidueClass2 => "nonresidue (class 2)",
    };
    Ok(Outcome::ok(
        format!("{x} mod {p}: {name}\n"),
        json!({ "x": x, "p": p, "symbol": name }),
    ))
}

fn admissible_cmd(aux: AuxArg, unit_norm_index: u64) -> Result<Outcome> {
    let aux = match aux {
        AuxArg::Alpha => AuxType::Alpha,
        AuxArg::Gamma => AuxType::Gamma,
    };
    let types = admissible_capitulation_types(aux, unit_norm_index)?;
    Ok(Outcome::ok(
        format!("{}\n", types.join(" ")),
        json!({ "types": types }),
    ))
}

fn shafarevich_cmd(rho: u32, r1: u32, r2: u32, theta: u32, d2: Option<u32>) -> Result<Outcome> {
    let inp = ShafarevichInput { rho, r1, r2, theta, claimed_d2: d2 };
    let (lo, hi, ok) = shafarevich_interval(&inp)?;
    let mut text = format!("d2 interval: [{lo}, {hi}]\n");
    let mut failed = false;
    if let Some(ok) = ok {
        writeln!(text, "claimed d2 = {}: {}", d2.expect("claimed"), if ok { "inside" } else { "OUTSIDE" })?;
        failed = !ok;
    }
    let outcome = Outcome {
        text,
        payload: json!({ "lo": lo, "hi": hi, "claimed_d2": d2, "claim_ok": ok }),
        warnings: Vec::new(),
        failed,
    };
    Ok(outcome)
}

fn validate_cmd(cli: &Cli, tables: bool, catalog: bool) -> Result<Outcome> {
    use rayon::prelude::*;
    // With no selector, run everything.
    let (tables, catalog) = if !tables && !catalog { (true, true) } else { (tables, catalog) };
    let mut text = String::new();
    let mut sections = Vec::new();
    let mut failed = false;
    let mut warnings = Vec::new();

    if tables {
        let rows = load_tables(cli.tables_dir.as_deref())?;
        let row_checks: Vec<(String, Vec<Check>)> = rows
            .par_iter()
            .map(|r| (format!("{} f={} n={}", r.table_id, r.f, r.n), validate_row(r)))
            .collect();
        let global = validate_tables(&rows);
        let mut n_checks = 0usize;
        let mut n_fail = 0usize;
        let mut items = Vec::new();
        for (label, checks) in row_checks.iter().chain(std::iter::once(
            &("tables (global)".to_string(), global),
        )) {
            for c in checks {
                n_checks += 1;
                if !c.pass {
                    n_fail += 1;
                    writeln!(text, "FAIL {label}: {}: {}", c.name, c.detail)?;
                    warnings.push(format!("{label}: {}", c.name));
                }
                items.push(json!({
                    "subject": label, "check": c.name, "pass": c.pass, "detail": c.detail,
                }));
            }
        }
        writeln!(text, "tables: {} rows, {} checks, {} failures", rows.len(), n_checks, n_fail)?;
        failed |= n_fail > 0;
        sections.push(json!({ "section": "tables", "rows": rows.len(), "checks": n_checks, "failures": n_fail, "results": items }));
    }

    if catalog {
        let entries = load_catalog(None)?;
        let reports: Vec<(String, Vec<Check>)> = entries
            .par_iter()
            .map(|e| verify_catalog(std::slice::from_ref(e)).remove(0))
            .collect();
        let mut n_checks = 0usize;
        let mut n_fail = 0usize;
        let mut items = Vec::new();
        for (name, checks) in &reports {
            for c in checks {
                n_checks += 1;
                if !c.pass {
                    n_fail += 1;
                    writeln!(text, "FAIL {name}: {}: {}", c.name, c.detail)?;
                    warnings.push(format!("{name}: {}", c.name));
                }
                items.push(json!({
                    "subject": name, "check": c.name, "pass": c.pass, "detail": c.detail,
                }));
            }
        }
        writeln!(text, "catalog: {} groups, {} checks, {} failures", entries.len(), n_checks, n_fail)?;
        failed |= n_fail > 0;
        sections.push(json!({ "section": "catalog", "groups": entries.len(), "checks": n_checks, "failures": n_fail, "results": items }));
    }

    writeln!(text, "{}", if failed { "FAILED" } else { "ok" })?;
    Ok(Outcome { text, payload: json!(sections), warnings, failed })
}

/// Renders logarithmic abelian invariants like `[2,1]` as `"21"`.
fn log_string(log: &[u8]) -> String {
    log.iter().map(|d| d.to_string()).collect()
}
