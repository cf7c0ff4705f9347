//! `symcart`: tables, k_P queries, homotopy lookups, recognition and the
//! submanifold gates from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symcart_core::catalog::{instantiate, ProductSpace, EXCEPTIONAL_TABLE};
use symcart_core::geom::{theorem_a_gate, theorem_b_check, DivisionAlgebra, TheoremBStatus};
use symcart_core::homotopy::{Database, MAX_DEGREE};
use symcart_core::notation::{parse_irreducible, parse_space};
use symcart_core::recognize::{corollary1_scan, decompose, distinguish, DEFAULT_MAX_CANDIDATES, RECOGNITION_DEGREE};
use symcart_core::reference::{check_tables, computed, exceptional_printed, CLASSICAL_ROWS};
use symcart_core::rootsys::{kp_enumerated, positive_roots, Multiplicities, RootSystemType};
use symcart_core::Hypotheses;

const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Classical,
    Exceptional,
}

#[derive(Parser, Debug)]
#[command(name = "symcart", version, about = "Invariants and homotopy recognition for compact symmetric spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory of homotopy table files replacing the built-in tables.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Cap on candidate products visited by `decompose`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_candidates: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The d_P, k_P, C_P table for classical or exceptional spaces.
    Table {
        #[arg(value_enum, default_value_t = TableKind::Classical)]
        kind: TableKind,
        /// Compare every row against the printed values; exit 1 on mismatch.
        #[arg(long)]
        check: bool,
        /// Largest family parameter listed or checked.
        #[arg(long, default_value_t = 30)]
        bound: u32,
    },
    /// Root data, k_P, d_P, C_P and connectivity of a space or product.
    Kp { space: String },
    /// Homotopy groups with their table sources.
    Homotopy {
        space: String,
        #[arg(long, default_value_t = MAX_DEGREE)]
        max_degree: u32,
    },
    /// Compare two products by their homotopy ranks.
    Distinguish {
        left: String,
        right: String,
        #[arg(long, default_value_t = RECOGNITION_DEGREE)]
        max_degree: u32,
    },
    /// Compare all cross-type pairs of valid irreducible spaces; exit 1 on violations.
    #[command(name = "corollary1-check")]
    Corollary1Check {
        #[arg(long, default_value_t = 300)]
        max_dim: u32,
    },
    /// Products whose homotopy ranks fit those of an irreducible space.
    Decompose {
        space: String,
        #[arg(long, default_value_t = RECOGNITION_DEGREE)]
        max_degree: u32,
    },
    /// Admissible submanifold types of small codimension.
    Gate {
        space: String,
        #[arg(long)]
        codim: u32,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long = "focal-r", default_value_t = 0.0)]
        focal_r: f64,
    },
    /// Codimension window and meridian obstruction for Gr(field, p, n).
    Tgeo {
        field: DivisionAlgebra,
        p: u32,
        n: u32,
        #[arg(long)]
        codim: u32,
        #[arg(long)]
        index: u32,
    },
    /// Positive roots of a root system, with k_P for given multiplicities.
    DumpRoots {
        #[arg(value_name = "TYPE")]
        ty: RootSystemType,
        /// Multiplicities as `short,long,extra_long`.
        #[arg(long)]
        mult: Option<String>,
    },
}

struct Output {
    format: Format,
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(format: Format, command: &str) -> Self {
        Output {
            format,
            text: String::new(),
            json: json!({ "schema_version": SCHEMA_VERSION, "command": command }),
            ok: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }

    fn emit(self) -> ExitCode {
        match self.format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("JSON values serialize")),
        }
        if self.ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

fn database(dir: &Option<PathBuf>) -> Result<Database> {
    match dir {
        Some(d) => Database::from_dir(d).with_context(|| format!("loading tables from {}", d.display())),
        None => Ok(Database::builtin().clone()),
    }
}

fn space(text: &str) -> Result<ProductSpace> {
    parse_space(text).with_context(|| format!("in space spec '{text}'"))
}

fn table(out: &mut Output, kind: TableKind, check: bool, bound: u32) -> Result<()> {
    if check {
        let mismatches = check_tables(bound)?;
        for m in &mismatches {
            out.line(format!("MISMATCH {} {}: printed {} computed {}", m.row, m.column, m.printed, m.computed));
        }
        if mismatches.is_empty() {
            out.line(format!("all rows agree (parameters up to {bound})"));
        }
        out.ok = mismatches.is_empty();
        out.set("mismatches", serde_json::to_value(&mismatches)?);
        return Ok(());
    }
    let mut rows = Vec::new();
    match kind {
        TableKind::Classical => {
            for row in &CLASSICAL_ROWS {
                let [d, k, c, s] = row.text;
                out.line(format!(
                    "{:<5} {:<22} {:<12} d_P={d}  k_P={k}  C_P={c}  sharp={s}",
                    row.symbol, row.quotient, row.condition
                ));
                let mut members = Vec::new();
                for params in row.members(bound) {
                    let inst = row.instance(params)?;
                    let v = computed(&inst);
                    out.line(format!(
                        "      {:<12} dim={:<4} d_P={:<4} k_P={:<4} C_P={:<6} sharp={}-2codim",
                        inst.key,
                        inst.dim,
                        v.dp,
                        v.kp,
                        v.cp.to_string(),
                        v.sharp0
                    ));
                    members.push(json!({ "space": inst.key, "dim": inst.dim, "d_p": v.dp, "k_p": v.kp, "c_p": v.cp.to_string(), "sharp_constant": v.sharp0 }));
                }
                rows.push(json!({
                    "symbol": row.symbol, "quotient": row.quotient, "condition": row.condition,
                    "formulas": { "d_p": d, "k_p": k, "c_p": c, "sharp": s }, "members": members,
                }));
            }
        }
        TableKind::Exceptional => {
            out.line(format!(
                "{:<5} {:<5} {:<9} {:>4} {:>4} {:>4} {:>6} {:>6}",
                "space", "type", "mult", "dim", "d_P", "k_P", "C_P", "sharp"
            ));
            for &(class, ty, m, ..) in &EXCEPTIONAL_TABLE {
                let inst = instantiate(class, &[])?;
                let v = computed(&inst);
                let printed = exceptional_printed(class).expect("tabulated");
                out.line(format!(
                    "{:<5} {:<5} {:<9} {:>4} {:>4} {:>4} {:>6} {:>6}",
                    class.name(),
                    ty.to_string(),
                    format!("{},{},{}", m[0], m[1], m[2]),
                    inst.dim,
                    v.dp,
                    v.kp,
                    v.cp.to_string(),
                    format!("{}-2c", v.sharp0)
                ));
                rows.push(json!({
                    "space": class.name(), "type": ty, "multiplicities": m, "dim": inst.dim,
                    "d_p": v.dp, "k_p": v.kp, "c_p": v.cp.to_string(), "sharp_constant": v.sharp0,
                    "printed": { "dim": printed.0, "d_p": printed.1, "k_p": printed.2 },
                }));
            }
        }
    }
    out.set("rows", Value::Array(rows));
    Ok(())
}

fn kp(out: &mut Output, text: &str) -> Result<()> {
    let p = space(text)?;
    let mut factors = Vec::new();
    for f in &p.factors {
        let root = match &f.root {
            Some(r) => format!(
                "{} m=({},{},{})",
                r.ty, r.multiplicities.short, r.multiplicities.long, r.multiplicities.extra_long
            ),
            None => "rank one".into(),
        };
        let maximizer =
            f.root.as_ref().map(|r| kp_enumerated(r.ty, &r.multiplicities)).transpose()?.map(|r| r.maximizer);
        out.line(format!(
            "{} ({}): dim={} rank={} {} k_P={} d_P={} C_P={} valid={} sharp={}-2codim",
            f.key,
            f.key.quotient_name(),
            f.dim,
            f.rank,
            root,
            f.kp,
            f.dp,
            f.cp,
            f.valid,
            f.sharp(0)
        ));
        factors.push(json!({ "space": f, "quotient": f.key.quotient_name(), "maximizer": maximizer, "sharp_constant": f.sharp(0) }));
    }
    if !p.is_irreducible() {
        out.line(format!("product: dim={} k_P={}", p.total_dim(), p.product_kp()));
    }
    out.set("factors", Value::Array(factors));
    out.set("product", json!({ "space": p.to_string(), "dim": p.total_dim(), "k_p": p.product_kp() }));
    Ok(())
}

fn homotopy(out: &mut Output, db: &Database, text: &str, max_degree: u32) -> Result<()> {
    let p = space(text)?;
    let profile = db.profile(&p, max_degree)?;
    let mut degrees = Vec::new();
    for k in 1..=max_degree {
        let group = profile.pi(k);
        let mut sources = Vec::new();
        for f in &p.factors {
            let hit = db.lookup(f.key, k)?;
            sources.push(json!({ "factor": f.key, "group": hit.group, "source": hit.source }));
            if p.is_irreducible() {
                let src = hit.source.map_or_else(|| "no table entry".to_string(), |s| s.to_string());
                out.line(format!("pi_{k:<2} = {:<16} [{src}]", group.to_string()));
            }
        }
        if !p.is_irreducible() {
            out.line(format!("pi_{k:<2} = {group}"));
        }
        degrees.push(json!({ "degree": k, "group": group, "factors": sources }));
    }
    out.set("space", json!(p.to_string()));
    out.set("degrees", Value::Array(degrees));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let name = match &cli.command {
        Command::Table { .. } => "table",
        Command::Kp { .. } => "kp",
        Command::Homotopy { .. } => "homotopy",
        Command::Distinguish { .. } => "distinguish",
        Command::Corollary1Check { .. } => "corollary1-check",
        Command::Decompose { .. } => "decompose",
        Command::Gate { .. } => "gate",
        Command::Tgeo { .. } => "tgeo",
        Command::DumpRoots { .. } => "dump-roots",
    };
    let mut out = Output::new(cli.format, name);
    match cli.command {
        Command::Table { kind, check, bound } => table(&mut out, kind, check, bound)?,
        Command::Kp { space } => kp(&mut out, &space)?,
        Command::Homotopy { space, max_degree } => homotopy(&mut out, &database(&cli.data_dir)?, &space, max_degree)?,
        Command::Distinguish { left, right, max_degree } => {
            let db = database(&cli.data_dir)?;
            let (a, b) = (space(&left)?, space(&right)?);
            let verdict = distinguish(&db, &a, &b, max_degree)?;
            out.line(format!("{a} vs {b}: {verdict}"));
            out.set("left", json!(a.to_string()));
            out.set("right", json!(b.to_string()));
            out.set("result", serde_json::to_value(&verdict)?);
        }
        Command::Corollary1Check { max_dim } => {
            let db = database(&cli.data_dir)?;
            let report = corollary1_scan(&db, max_dim)?;
            out.line(format!(
                "dim <= {}: {} spaces, {} cross-type pairs, {} distinguishable, {} blind-spot, {} undetermined, {} violations",
                report.max_dim, report.spaces, report.pairs, report.distinguishable,
                report.blind_spot.len(), report.undetermined.len(), report.violations.len()
            ));
            for v in &report.violations {
                out.line(format!("VIOLATION {v}"));
            }
            out.ok = report.is_clean();
            out.set("report", serde_json::to_value(&report)?);
        }
        Command::Decompose { space: text, max_degree } => {
            let db = database(&cli.data_dir)?;
            let ambient = parse_irreducible(&text).with_context(|| format!("in space spec '{text}'"))?;
            let found = decompose(&db, &ambient, max_degree, cli.max_candidates)?;
            for p in &found {
                out.line(format!("{p}  (dim {})", p.total_dim()));
            }
            out.line(format!("{} decompositions", found.len()));
            out.set("ambient", json!(ambient.key));
            out.set("decompositions", json!(found.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
        }
        Command::Gate { space: text, codim, delta, focal_r } => {
            let ambient = parse_irreducible(&text).with_context(|| format!("in space spec '{text}'"))?;
            let report = theorem_a_gate(&ambient, &Hypotheses { delta, focal_r, codim });
            let trace = report.trace_bound.map_or_else(|| "undefined".to_string(), |t| format!("{t:.6}"));
            out.line(format!(
                "{}: C_P={} connectivity={} trace_bound={trace}",
                report.ambient, report.cp, report.connectivity
            ));
            out.line(report.verdict.to_string());
            out.set("report", serde_json::to_value(&report)?);
        }
        Command::Tgeo { field, p, n, codim, index } => {
            let report = theorem_b_check(field, p, n, codim, index);
            let status = match &report.status {
                TheoremBStatus::Applicable => "Applicable".to_string(),
                TheoremBStatus::NotApplicable { reason } => format!("NotApplicable: {reason}"),
                TheoremBStatus::PreconditionFailed { reason } => format!("PreconditionFailed: {reason}"),
            };
            out.line(format!("Gr({field},{p},{n}) codim={codim} index>={index}: {status}"));
            if !matches!(report.status, TheoremBStatus::PreconditionFailed { .. }) {
                for m in &report.meridians {
                    out.line(format!("  meridian a={} b={}: codim {}", m.a, m.b, m.codim));
                }
                let min = report.min_meridian_codim.map_or("-".into(), |m| m.to_string());
                out.line(format!(
                    "  C_P={} min meridian codim={min} obstruction={}",
                    report.cp, report.obstruction_holds
                ));
                if report.analogy_derived {
                    out.line("  real case: meridian formula by analogy, pole argument assumed");
                }
            }
            out.set("report", serde_json::to_value(&report)?);
        }
        Command::DumpRoots { ty, mult } => {
            let roots = positive_roots(ty)?;
            let mut list = Vec::new();
            for r in roots.iter() {
                let coeffs: Vec<String> = r.coeffs.iter().map(u32::to_string).collect();
                out.line(format!("[{}] {:?} height {}", coeffs.join(" "), r.class, r.height()));
                list.push(json!({ "coeffs": r.coeffs, "class": r.class, "height": r.height() }));
            }
            out.line(format!("{} positive roots", roots.len()));
            out.set("type", json!(ty));
            out.set("roots", Value::Array(list));
            if let Some(m) = mult {
                let parts: Vec<u32> =
                    m.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().context("--mult expects s,l,x")?;
                let [s, l, x] = parts.as_slice() else { bail!("--mult expects three numbers") };
                let report = kp_enumerated(ty, &Multiplicities::new(*s, *l, *x))?;
                out.line(format!("k_P = {} (maximizer j = {})", report.kp, report.maximizer));
                out.set("kp", serde_json::to_value(report)?);
            }
        }
    }
    Ok(out.emit())
}
