//! Command-line front end.
//!
//! Exit codes: 0 success (holds / found / pass), 1 a semantically negative
//! answer (fails / exhausted / counterexample), 2 usage or I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::caps::Caps;
use crate::dsl::{parse_law, parse_law_file, parse_spec};
use crate::enumerate::{EnumSpec, Enumeration};
use crate::law::Law;
use crate::magma::{canonical_form, parse_table, Magma};
use crate::properties::{self, classify};
use crate::search::{find_model_with, SearchSpec};
use crate::structures::{self, builtin, BuiltinKind, ClaimStatus};
use crate::theorems::{self, domain_cap, Domain, TheoremId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "magma-lab", version, about = "Finite magma workbench")]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for enumeration and search; output does not depend on it
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: u16,
    /// Include wall-clock timings in the output
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Cayley table file
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Built-in structure, NAME or NAME:PARAM (e.g. zn_sub:3)
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long)]
    pub order: usize,
    /// Enumerate Latin squares only
    #[arg(long)]
    pub latin: bool,
    /// Laws every table must satisfy (comma-separated or repeated)
    #[arg(long = "constraint", value_delimiter = ',')]
    pub constraints: Vec<String>,
    /// Emit one representative per isomorphism class
    #[arg(long)]
    pub up_to_iso: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check laws on a table
    Check {
        #[command(flatten)]
        source: Source,
        /// Laws to check (comma-separated or repeated)
        #[arg(long = "law", value_delimiter = ',')]
        laws: Vec<String>,
        /// A .law file, one law per line
        #[arg(long)]
        laws_file: Option<PathBuf>,
    },
    /// Name the structures a table instantiates
    Classify {
        #[command(flatten)]
        source: Source,
    },
    /// List every table of an order
    Enumerate {
        #[command(flatten)]
        args: EnumArgs,
        /// Write one Cayley file per table into this directory
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Count the tables of an order
    Count {
        #[command(flatten)]
        args: EnumArgs,
    },
    /// Find a model of the assumptions that violates one law
    Search {
        /// Full spec, e.g. "assume H, AGI; refute NE; orders 1..3"
        #[arg(long, conflicts_with_all = ["assume", "refute", "orders"])]
        spec: Option<String>,
        #[arg(long, value_delimiter = ',')]
        assume: Vec<String>,
        #[arg(long)]
        refute: Option<String>,
        /// LO..HI
        #[arg(long)]
        orders: Option<String>,
        #[arg(long)]
        up_to_iso: bool,
        /// Write the model found to this Cayley file
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Verify the theorem catalog up to an order
    Theorems {
        #[arg(long)]
        max_order: usize,
        /// Only the theorems ranging over quasigroups
        #[arg(long)]
        quasigroups: bool,
        /// Only this theorem (T1..T11)
        #[arg(long)]
        id: Option<TheoremId>,
    },
    /// Run the example structures against their stated verdicts
    Examples {
        /// Only this example number
        #[arg(long)]
        id: Option<u8>,
        /// Write the finite example tables into this directory
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Print the canonical form of a table
    Canon {
        #[command(flatten)]
        source: Source,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let workers = cli.workers as usize;
    match &cli.command {
        Command::Check {
            source,
            laws,
            laws_file,
        } => cmd_check(cli, out, source, laws, laws_file.as_deref()),
        Command::Classify { source } => {
            let m = load_finite(source)?;
            let report = classify(&m);
            if cli.json {
                emit_json(out, &report)?;
            } else {
                let labels: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
                writeln!(out, "order: {}", report.order)?;
                writeln!(out, "structures: {}", labels.join(", "))?;
                write_neutrals(out, &report.neutrals)?;
                if let Some(inv) = &report.inverses {
                    writeln!(out, "inverses: {}", join(inv))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { args, emit } => {
            let spec = enum_spec(args)?;
            let tables = Enumeration::new(&spec)?.collect(workers);
            if let Some(dir) = emit {
                write_tables(dir, &tables)?;
            }
            if cli.json {
                let rows: Vec<Vec<Vec<usize>>> = tables.iter().map(Magma::rows).collect();
                emit_json(
                    out,
                    &json!({
                        "order": spec.order,
                        "mode": spec.mode,
                        "constraints": spec.constraints,
                        "up_to_iso": spec.up_to_iso,
                        "count": tables.len(),
                        "tables": rows,
                    }),
                )?;
            } else {
                for (i, m) in tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    write!(out, "{m}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Count { args } => {
            let spec = enum_spec(args)?;
            let n = Enumeration::new(&spec)?.count(workers);
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "order": spec.order,
                        "mode": spec.mode,
                        "constraints": spec.constraints,
                        "up_to_iso": spec.up_to_iso,
                        "count": n,
                    }),
                )?;
            } else {
                writeln!(out, "{n}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Search {
            spec,
            assume,
            refute,
            orders,
            up_to_iso,
            emit,
        } => {
            let mut spec = match spec {
                Some(text) => parse_spec(text)?,
                None => search_spec_from_flags(assume, refute.as_deref(), orders.as_deref())?,
            };
            spec.up_to_iso |= up_to_iso;
            cmd_search(cli, out, &spec, emit.as_deref())
        }
        Command::Theorems {
            max_order,
            quasigroups,
            id,
        } => cmd_theorems(cli, out, *max_order, *quasigroups, *id),
        Command::Examples { id, emit } => cmd_examples(cli, out, *id, emit.as_deref()),
        Command::Canon { source } => {
            let m = load_finite(source)?;
            let c = canonical_form(&m)?;
            if cli.json {
                emit_json(
                    out,
                    &json!({"order": c.order(), "table": c.rows(), "input": m.rows()}),
                )?;
            } else {
                write!(out, "{c}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_neutrals(out: &mut dyn Write, n: &properties::NeutralReport) -> Result<(), Failure> {
    let two = n.two_sided.map_or("none".to_string(), |e| e.to_string());
    writeln!(
        out,
        "neutral: {two} (left: [{}], right: [{}])",
        join(&n.left),
        join(&n.right)
    )?;
    Ok(())
}

fn parse_builtin_arg(arg: &str) -> Result<structures::BuiltinStructure, Failure> {
    let (name, param) = match arg.split_once(':') {
        Some((n, p)) => {
            let p: i64 = p
                .parse()
                .map_err(|_| Failure(format!("bad parameter in {arg:?}")))?;
            (n, Some(p))
        }
        None => (arg, None),
    };
    Ok(builtin(name, param)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_finite(source: &Source) -> Result<Magma, Failure> {
    if let Some(path) = &source.table {
        return parse_table(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())));
    }
    let s = parse_builtin_arg(source.builtin.as_deref().unwrap_or_default())?;
    match s.kind {
        BuiltinKind::Finite(m) => Ok(m),
        BuiltinKind::Windowed(_) => Err(Failure(format!(
            "{} is a windowed structure; only `check` accepts it",
            s.label()
        ))),
    }
}

fn parse_laws(texts: &[String]) -> Result<Vec<Law>, Failure> {
    texts
        .iter()
        .map(|t| parse_law(t).map_err(|e| Failure(format!("{t:?}: {e}"))))
        .collect()
}

fn cmd_check(
    cli: &Cli,
    out: &mut dyn Write,
    source: &Source,
    laws: &[String],
    laws_file: Option<&Path>,
) -> CmdResult {
    let mut all = parse_laws(laws)?;
    if let Some(path) = laws_file {
        let more = parse_law_file(&read(path)?)
            .map_err(|(line, e)| Failure(format!("{}:{line}: {e}", path.display())))?;
        all.extend(more);
    }
    if all.is_empty() {
        return Err(Failure("no laws given; use --law or --laws-file".into()));
    }

    let windowed = match &source.builtin {
        Some(arg) => match parse_builtin_arg(arg)?.kind {
            BuiltinKind::Windowed(w) => Some(w),
            BuiltinKind::Finite(_) => None,
        },
        None => None,
    };
    let mut all_hold = true;
    if let Some(w) = windowed {
        // validate everything before computing
        let reports = all
            .iter()
            .map(|l| w.check(l))
            .collect::<Result<Vec<_>, _>>()?;
        for r in reports {
            all_hold &= r.holds;
            if cli.json {
                emit_json(out, &r)?;
            } else {
                let verdict = if r.holds { "holds" } else { "fails" };
                let mut line = format!("{}: {verdict} [{}]", r.law, r.scope);
                if let Some(note) = &r.note {
                    line.push_str(&format!(" {note}"));
                }
                writeln!(out, "{line}")?;
            }
        }
    } else {
        let m = load_finite(source)?;
        for law in &all {
            let r = properties::check(&m, law);
            all_hold &= r.holds;
            if cli.json {
                emit_json(out, &r)?;
            } else {
                writeln!(out, "{}", r.summary())?;
            }
        }
    }
    Ok(if all_hold { EXIT_OK } else { EXIT_NEGATIVE })
}

fn enum_spec(args: &EnumArgs) -> Result<EnumSpec, Failure> {
    let constraints = parse_laws(&args.constraints)?;
    let base = if args.latin {
        EnumSpec::latin_squares(args.order)
    } else {
        EnumSpec::all_magmas(args.order)
    };
    let spec = base.with_constraints(constraints).up_to_iso(args.up_to_iso);
    spec.validate(&Caps::from_env())?;
    Ok(spec)
}

fn write_tables(dir: &Path, tables: &[Magma]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    let width = tables.len().saturating_sub(1).to_string().len().max(6);
    for (i, m) in tables.iter().enumerate() {
        let path = dir.join(format!("{i:0width$}.cay"));
        fs::write(&path, m.to_text()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn search_spec_from_flags(
    assume: &[String],
    refute: Option<&str>,
    orders: Option<&str>,
) -> Result<SearchSpec, Failure> {
    let refute = refute.ok_or_else(|| Failure("--refute is required without --spec".into()))?;
    let orders = orders.ok_or_else(|| Failure("--orders is required without --spec".into()))?;
    if assume.is_empty() {
        return Err(Failure("--assume is required without --spec".into()));
    }
    let text = format!(
        "assume {}; refute {refute}; orders {orders}",
        assume.join(", ")
    );
    Ok(parse_spec(&text)?)
}

fn cmd_search(cli: &Cli, out: &mut dyn Write, spec: &SearchSpec, emit: Option<&Path>) -> CmdResult {
    let result = find_model_with(spec, cli.workers as usize, &Caps::from_env())?;
    if let (Some(path), Some(m)) = (emit, &result.found) {
        fs::write(path, m.to_text()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    if cli.json {
        emit_json(
            out,
            &json!({
                "assume": spec.assume,
                "refute": spec.refute,
                "orders": {"from": spec.orders.start(), "to": spec.orders.end()},
                "mode": spec.mode(),
                "found": result.found,
                "orders_exhausted": result.orders_exhausted.as_ref().map(|r| json!({"from": r.start(), "to": r.end()})),
                "structures_examined": result.structures_examined,
            }),
        )?;
    } else {
        match &result.found {
            Some(m) => {
                writeln!(
                    out,
                    "found a model of order {} ({} structures examined)",
                    m.order(),
                    result.structures_examined
                )?;
                write!(out, "{m}")?;
            }
            None => writeln!(
                out,
                "no model for orders {}..{} ({} structures examined)",
                spec.orders.start(),
                spec.orders.end(),
                result.structures_examined
            )?,
        }
    }
    Ok(if result.found.is_some() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_theorems(
    cli: &Cli,
    out: &mut dyn Write,
    max_order: usize,
    quasigroups: bool,
    id: Option<TheoremId>,
) -> CmdResult {
    let caps = Caps::from_env();
    let selected: Vec<_> = theorems::theorem_catalog()
        .into_iter()
        .filter(|t| !quasigroups || t.domain == Domain::QuasigroupsOnly)
        .filter(|t| id.is_none_or(|id| t.id == id))
        .collect();
    if selected.is_empty() {
        return Err(Failure("no theorem matches the selection".into()));
    }
    for t in &selected {
        let cap = domain_cap(t.domain, &caps);
        if max_order > cap {
            let hint = if t.domain == Domain::AllMagmas {
                " (pass --quasigroups to verify only the quasigroup theorems)"
            } else {
                ""
            };
            return Err(Failure(format!(
                "{} ranges over {}; order {max_order} exceeds the cap of {cap}{hint}",
                t.id, t.domain
            )));
        }
    }

    let mut all_pass = true;
    for t in &selected {
        let r = theorems::verify_theorem_with(t.id, max_order, cli.workers as usize, &caps)?;
        all_pass &= r.passed();
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        if cli.json {
            let mut v = json!({
                "id": t.id,
                "statement": t.statement,
                "domain": t.domain,
                "max_order": max_order,
                "structures_examined": r.structures_examined,
                "result": verdict,
            });
            if let Some(cx) = &r.counterexample {
                v["counterexample"] = serde_json::to_value(cx)?;
            }
            if cli.timings {
                v["elapsed"] = json!(r.elapsed.as_secs_f64());
            }
            emit_json(out, &v)?;
        } else {
            let mut line = format!(
                "{:<4} {:<17} examined {:>7}  {verdict}  no counterexample up to order {max_order}",
                t.id.to_string(),
                t.domain.to_string(),
                r.structures_examined,
            );
            if let Some(cx) = &r.counterexample {
                line = format!(
                    "{:<4} {:<17} examined {:>7}  {verdict}  clause {}: {{{}}} holds but {{{}}} fails",
                    t.id.to_string(),
                    t.domain.to_string(),
                    r.structures_examined,
                    cx.clause,
                    crate::law::format_laws(&cx.satisfied),
                    crate::law::format_laws(&cx.violated),
                );
            }
            if cli.timings {
                line.push_str(&format!("  {:.3}s", r.elapsed.as_secs_f64()));
            }
            writeln!(out, "{line}")?;
            if let Some(cx) = &r.counterexample {
                write!(out, "{}", cx.magma)?;
            }
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_examples(cli: &Cli, out: &mut dyn Write, id: Option<u8>, emit: Option<&Path>) -> CmdResult {
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
        for s in structures::finite_examples() {
            let path = dir.join(format!(
                "{}.cay",
                s.label().replace(['(', ')'], "_").trim_end_matches('_')
            ));
            fs::write(&path, s.magma().expect("finite").to_text())
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        }
    }
    let outcomes: Vec<_> = structures::example_suite()
        .into_iter()
        .filter(|o| id.is_none_or(|id| o.example == id))
        .collect();
    if outcomes.is_empty() {
        return Err(Failure(format!("no example {}", id.unwrap_or(0))));
    }
    let disagreements: usize = outcomes.iter().map(|o| o.disagreements()).sum();
    if cli.json {
        for o in &outcomes {
            emit_json(out, o)?;
        }
    } else {
        for o in &outcomes {
            writeln!(
                out,
                "Example {}: {} ({})",
                o.example, o.structure, o.description
            )?;
            if let Some(labels) = &o.labels {
                writeln!(out, "  structures: {}", labels.join(", "))?;
            }
            if let Some(n) = &o.neutrals {
                write!(out, "  ")?;
                write_neutrals(out, n)?;
            }
            for v in &o.verdicts {
                let status = match v.status {
                    ClaimStatus::Agree => "agree",
                    ClaimStatus::Disagree => "DISAGREE",
                    ClaimStatus::DocumentedDiscrepancy => "documented discrepancy",
                };
                let scope = v.scope.map(|s| format!(" [{s}]")).unwrap_or_default();
                writeln!(
                    out,
                    "  {:<5} claimed {:<3} actual {:<3} {status}{scope}",
                    v.law.tag(),
                    yes_no(v.claimed),
                    yes_no(v.actual)
                )?;
            }
            if let Some(flag) = &o.flag {
                writeln!(out, "  FLAG: {flag}")?;
            }
        }
        let flagged = outcomes.iter().filter(|o| o.flag.is_some()).count();
        writeln!(
            out,
            "{} structures, {disagreements} disagreements, {flagged} flagged discrepancies",
            outcomes.len()
        )?;
    }
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
