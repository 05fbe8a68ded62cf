//! The `cpt` command line.
//!
//! Exit codes: `0` success (for `iso`, a certificate was found; for
//! `sweep`, no failures), `1` a negative answer (no certificate within the
//! bound, or a sweep with failures), `2` any usage, input or I/O error.
//!
//! Wherever a tower is expected, the argument may be a path to a JSON
//! tower spec, a catalog id such as `M8:0,2`, `CP<n>`, or `H<k>` (the
//! Hirzebruch surface).

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cache::VerdictCache;
use crate::catalog::{self, FamilyId, Theorem};
use crate::chern::{self, BundleDescriptor};
use crate::iso;
use crate::json;
use crate::poly::Poly;
use crate::tower::{RingPresentation, TowerSpec};
use crate::VERSION;

#[derive(Parser, Debug)]
#[command(name = "cpt", version, about = "Cohomology rings of complex projective towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the ring presentation of a tower.
    Ring {
        /// Spec file, catalog id, CP<n> or H<k>.
        spec: String,
        /// Also print the graded ranks.
        #[arg(long)]
        poincare: bool,
        /// Also print the monomial basis in this (even) degree.
        #[arg(long, value_name = "D")]
        basis: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for a graded ring isomorphism from A to B.
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = iso::DEFAULT_BOUND)]
        bound: u32,
        /// List every certificate within the bound.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run a classification sweep and write its report.
    Sweep {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 4)]
        range: i64,
        #[arg(long, default_value_t = iso::DEFAULT_BOUND)]
        bound: u32,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Leave the wall-clock block out of the report.
        #[arg(long)]
        no_timing: bool,
    },
    /// Chern class calculus.
    #[command(subcommand)]
    Chern(ChernCommand),
    /// List catalog families.
    CatalogList {
        #[arg(long, value_enum)]
        theorem: Option<TheoremArg>,
        #[arg(long, default_value_t = 4)]
        range: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum ChernCommand {
    /// Twist a rank-2 bundle by a line bundle.
    Tensor(TensorArgs),
    /// Whitney sum of line bundles.
    Sum {
        #[arg(long)]
        base: String,
        /// First Chern classes of the summands, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lines: String,
    },
    /// The Milnor hypersurface H(i,j) as a tower over CP^i.
    Milnor {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
    },
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[arg(long)]
    base: String,
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    #[arg(long, allow_hyphen_values = true)]
    c2: String,
    /// c_1 of the line bundle.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "normalize", required_unless_present = "normalize")]
    gamma: Option<String>,
    /// Pick the twist that brings every coordinate of c_1 into {0, 1}.
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    alpha: Option<u8>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Main,
    TwoStage,
    ThreeStage,
    EightDim,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Theorem {
        match t {
            TheoremArg::Main => Theorem::Main,
            TheoremArg::TwoStage => Theorem::TwoStage,
            TheoremArg::ThreeStage => Theorem::ThreeStage,
            TheoremArg::EightDim => Theorem::EightDim,
        }
    }
}

/// A failure that ends the command with exit status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Line of the `stage`-th stage object in a spec file, for error messages.
fn stage_line(text: &str, stage: usize) -> Option<usize> {
    let mut seen = 0;
    for (i, line) in text.lines().enumerate() {
        seen += line.matches("\"fiber_dim\"").count();
        if seen >= stage {
            return Some(i + 1);
        }
    }
    None
}

fn load_file(path: &Path) -> Result<TowerSpec, CliError> {
    let shown = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{shown}: {e}")))?;
    let spec = json::tower_from_str(&text).map_err(|e| CliError(format!("{shown}: {e}")))?;
    if let Err(e) = spec.validate() {
        return Err(match e.stage().and_then(|s| stage_line(&text, s)) {
            Some(line) => CliError(format!("{shown}:{line}: {e}")),
            None => CliError(format!("{shown}: {e}")),
        });
    }
    Ok(spec)
}

/// Resolves a tower argument: file, catalog id, `CP<n>` or `H<k>`.
pub fn resolve(arg: &str) -> Result<TowerSpec, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return load_file(path);
    }
    if let Some(n) = arg.strip_prefix("CP").and_then(|n| n.parse::<u32>().ok()) {
        if n == 0 {
            return Err(CliError("CP0 is a point; towers start at CP1".into()));
        }
        return Ok(TowerSpec::projective_space(n));
    }
    if let Some(k) = arg.strip_prefix('H').and_then(|k| k.parse::<i64>().ok()) {
        return Ok(catalog::hirzebruch_surface(k));
    }
    match arg.parse::<FamilyId>() {
        Ok(id) => Ok(catalog::build(&id)?),
        Err(_) if arg.contains('/') || arg.ends_with(".json") => Err(CliError(format!("{arg}: no such file"))),
        Err(e) => Err(CliError(format!("`{arg}` is neither a spec file nor a catalog id ({e})"))),
    }
}

fn resolve_presentation(arg: &str) -> Result<RingPresentation, CliError> {
    Ok(resolve(arg)?.presentation()?)
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn cmd_ring(out: &mut dyn Write, spec: &str, poincare: bool, basis: Option<u32>, format: Format) -> CliResult {
    let pres = resolve_presentation(spec)?;
    if let Some(d) = basis {
        if d % 2 == 1 {
            return Err(CliError(format!("--basis {d}: all classes live in even degrees")));
        }
    }
    match format {
        Format::Json => emit(out, &json::presentation_to_json(&pres, poincare, basis))?,
        Format::Text => {
            let caps: Vec<String> = pres.caps().iter().map(ToString::to_string).collect();
            writeln!(out, "caps: [{}]", caps.join(", "))?;
            writeln!(out, "relations:")?;
            for r in pres.relations() {
                writeln!(out, "  {r}")?;
            }
            if poincare {
                writeln!(out, "poincare: {}", pres.poincare())?;
            }
            if let Some(d) = basis {
                let monos: Vec<String> = pres.graded_basis(d).iter().map(ToString::to_string).collect();
                writeln!(out, "basis[{d}]: {}", monos.join(", "))?;
            }
        }
    }
    Ok(0)
}

fn cmd_iso(out: &mut dyn Write, a: &str, b: &str, bound: u32, all: bool, jobs: usize) -> CliResult {
    let (pa, pb) = (resolve_presentation(a)?, resolve_presentation(b)?);
    if all {
        let certs = iso::search_all(&pa, &pb, bound);
        emit(out, &json::certificates_to_json(&certs, bound))?;
        return Ok(if certs.is_empty() { 1 } else { 0 });
    }
    let verdict = match VerdictCache::from_env(VERSION) {
        Some(cache) => cache.search(&pa, &pb, bound, jobs),
        None => iso::search_with_jobs(&pa, &pb, bound, jobs),
    };
    emit(out, &json::verdict_to_json(&verdict))?;
    Ok(if verdict.is_found() { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    out: &mut dyn Write,
    err: &mut dyn Write,
    theorem: Theorem,
    range: i64,
    bound: u32,
    path: Option<&str>,
    jobs: usize,
    timing: bool,
) -> CliResult {
    if range < 0 {
        return Err(CliError("--range must be non-negative".into()));
    }
    if bound < 2 {
        return Err(CliError("--bound must be at least 2 for sweeps".into()));
    }
    let start = Instant::now();
    let cache = VerdictCache::from_env(VERSION);
    let report = match &cache {
        Some(c) => {
            catalog::sweep_with(theorem, range, bound, jobs, &|a: &RingPresentation, b: &RingPresentation, bd| {
                c.search(a, b, bd, 1)
            })?
        }
        None => catalog::sweep_distinctness(theorem, range, bound, jobs)?,
    };
    let doc = json::report_to_json(&report, VERSION, timing.then(|| start.elapsed()));
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError(format!("{p}: {e}")))?,
        None => out.write_all(text.as_bytes())?,
    }
    let failures = report.failures().count();
    writeln!(err, "{}: {} pairs, {} failures", theorem.as_str(), report.rows.len(), failures)?;
    for f in report.failures() {
        writeln!(err, "  FAIL {} vs {} (expected {})", f.a, f.b, f.expected.as_str())?;
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn parse_poly(text: &str, base: &RingPresentation) -> Result<Poly, CliError> {
    Poly::parse(text, base.ngens()).map_err(|e| CliError(format!("`{text}`: {e}")))
}

fn cmd_chern(out: &mut dyn Write, cmd: ChernCommand) -> CliResult {
    match cmd {
        ChernCommand::Tensor(t) => {
            let base = resolve_presentation(&t.base)?;
            let xi =
                BundleDescriptor::new(&base, 2, vec![parse_poly(&t.c1, &base)?, parse_poly(&t.c2, &base)?], t.alpha)?;
            let (twisted, gamma) = match &t.gamma {
                Some(g) => {
                    let g = parse_poly(g, &base)?;
                    (chern::tensor_line(&base, &xi, &g)?, g)
                }
                None => chern::normalize_first_chern(&base, &xi)?,
            };
            let mut doc = json::bundle_to_json(&twisted);
            doc["twist"] = json!(json::poly_to_terms(&gamma));
            doc["twist_text"] = json!(gamma.to_string());
            emit(out, &doc)?;
        }
        ChernCommand::Sum { base, lines } => {
            let base = resolve_presentation(&base)?;
            let roots = lines.split(',').map(|l| parse_poly(l.trim(), &base)).collect::<Result<Vec<_>, _>>()?;
            emit(out, &json::bundle_to_json(&chern::whitney_sum_of_lines(&base, &roots)?))?;
        }
        ChernCommand::Milnor { i, j } => {
            let spec = chern::dual_complement_of_tautological(i, j)?;
            let pres = spec.presentation()?;
            emit(
                out,
                &json!({ "schema": json::SCHEMA, "tower": json::tower_to_json(&spec), "presentation": json::presentation_to_json(&pres, true, None) }),
            )?;
        }
    }
    Ok(0)
}

fn cmd_catalog_list(out: &mut dyn Write, theorem: Option<Theorem>, range: i64, format: Format) -> CliResult {
    let families = match theorem {
        Some(t) => catalog::canonical(t, range),
        None => {
            let mut all = catalog::canonical(Theorem::Main, range);
            all.extend(catalog::canonical(Theorem::EightDim, range));
            all
        }
    };
    match format {
        Format::Json => emit(out, &json::families_to_json(&families))?,
        Format::Text => {
            for f in &families {
                writeln!(out, "{f}")?;
            }
        }
    }
    Ok(0)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Ring { spec, poincare, basis, format } => cmd_ring(out, &spec, poincare, basis, format),
        Command::Iso { a, b, bound, all, jobs } => cmd_iso(out, &a, &b, bound, all, jobs),
        Command::Sweep { theorem, range, bound, out: path, jobs, no_timing } => {
            cmd_sweep(out, err, theorem.into(), range, bound, path.as_deref(), jobs, !no_timing)
        }
        Command::Chern(c) => cmd_chern(out, c),
        Command::CatalogList { theorem, range, format } => {
            cmd_catalog_list(out, theorem.map(Into::into), range, format)
        }
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
