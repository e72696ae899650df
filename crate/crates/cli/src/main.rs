use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use odosym::classify2d::{classify, is_member, NormalizerClass};
use odosym::golden::{golden_suite, tally, Status};
use odosym::intlat::fundamental_domain;
use odosym::odometer::{nc_bounded_check, OdometerError};
use odosym::parse::{parse_box, parse_matrix, parse_points, parse_vector, ParseError};
use odosym::render::{patch_to_pgm, patch_to_svg, patch_to_text};
use odosym::report::RunReport;
use odosym::subshift_norm::{build_local_rule, maps_fixed_points, nl_membership, NlRejection, NlVerdict};
use odosym::substitution::{cube, patch_to_cells, Letter, Patch, Substitution, SubstitutionSpec};
use odosym::{IntMatrix, IntVector};

const EXIT_NEGATIVE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "odosym", version, about = "Symmetries of constant-base odometers and digit substitutions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SubstArgs {
    /// Expansion matrix, e.g. "2,0;0,2".
    #[arg(long = "L", allow_hyphen_values = true)]
    l: Option<String>,
    /// Digit set, e.g. "0,0;1,0;0,1;1,-1". Defaults to the Hermite box digits.
    #[arg(long = "F", allow_hyphen_values = true)]
    f: Option<String>,
    /// JSON file {L, F1, table?}; overrides --L and --F.
    #[arg(long)]
    subst: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form normalizer group of a 2x2 expansion.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Is M in the normalizer group of the odometer of L?
    Member {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Normalizer condition certificates up to a depth.
    Nc {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Bounded membership test for the digit-subshift group.
    Nl {
        #[command(flatten)]
        s: SubstArgs,
        #[arg(long = "M", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = odosym::subshift_norm::DEFAULT_N_MAX)]
        nmax: usize,
    },
    /// Image of a fixed point under the local rule of M.
    Phi {
        #[command(flatten)]
        s: SubstArgs,
        #[arg(long = "M", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = odosym::subshift_norm::DEFAULT_N_MAX)]
        nmax: usize,
        /// Letter at the origin of the source fixed point.
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        #[arg(long = "box", allow_hyphen_values = true, default_value = "-6:6")]
        bbox: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Substitution utilities.
    Subst {
        #[command(subcommand)]
        cmd: SubstCmd,
    },
    /// Recompute the reference examples and print a pass/fail table.
    VerifyPaper,
}

#[derive(Subcommand)]
enum SubstCmd {
    /// Fixed-point patch on a box.
    Patch {
        #[command(flatten)]
        s: SubstArgs,
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<String>,
        #[arg(long = "box", allow_hyphen_values = true, default_value = "-8:8")]
        bbox: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
    exit: u8,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Inconclusive(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn matrix_arg(name: &str, s: &str) -> Result<IntMatrix, Failure> {
    parse_matrix(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn load_subst(a: &SubstArgs) -> Result<Substitution, Failure> {
    if let Some(path) = &a.subst {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let spec: SubstitutionSpec = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Substitution::from_spec(&spec).map_err(usage);
    }
    let l = a.l.as_deref().ok_or_else(|| usage("--L or --subst is required"))?;
    let l = matrix_arg("L", l)?;
    let f = match &a.f {
        Some(f) => parse_points(f).map_err(|e| Failure::Usage(format!("--F: {e}")))?,
        None => fundamental_domain(&l).map_err(usage)?.elements().to_vec(),
    };
    Substitution::digit(&l, &f).map_err(usage)
}

fn subst_inputs(a: &SubstArgs, s: &Substitution) -> Value {
    json!({ "substitution": s.to_spec(), "file": a.subst.as_ref().map(|p| p.display().to_string()) })
}

fn seed_arg(s: &Substitution, seed: Option<&str>) -> Result<Letter, Failure> {
    let seeds = s.fixed_point_seeds();
    let Some(text) = seed else {
        return seeds.first().cloned().ok_or_else(|| usage("substitution has no fixed-point seed"));
    };
    let letter = match text.trim().parse::<u32>() {
        Ok(k) if s.alphabet().contains(&Letter::Symbol(k)) => Letter::Symbol(k),
        _ => Letter::Digit(parse_vector(text).map_err(|e| Failure::Usage(format!("--seed: {e}")))?),
    };
    if !seeds.contains(&letter) {
        let names: Vec<String> = seeds.iter().map(ToString::to_string).collect();
        return Err(usage(format!("--seed {letter} is not a fixed-point seed; choose from {names:?}")));
    }
    Ok(letter)
}

fn region(s: &Substitution, bbox: &str) -> Result<Vec<IntVector>, Failure> {
    let (lo, hi) = parse_box(bbox).map_err(|e| Failure::Usage(format!("--box: {e}")))?;
    Ok(cube(s.dim(), lo, hi))
}

fn write_file(path: &Path, body: Option<String>, what: &str) -> Result<(), Failure> {
    let body = body.ok_or_else(|| usage(format!("cannot render {what}: the patch is empty or not planar")))?;
    std::fs::write(path, body).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn cmd_classify(matrix: &str) -> Result<Outcome, Failure> {
    let l = matrix_arg("matrix", matrix)?;
    let c = classify(&l).map_err(usage)?;
    let mut text = format!("L = {}\nbranch: {}\nfinite: {}\n", c.l, c.class.label(), c.finite);
    match &c.class {
        NormalizerClass::VirtuallyZ(v) => {
            writeln!(text, "conjugator: {}\nmodel: {:?}", v.conjugator, v.model).ok();
        }
        NormalizerClass::Centralizer { group } => {
            writeln!(text, "centralizer: {}", serde_json::to_string(group).expect("serializes")).ok();
        }
        _ => {}
    }
    let gens: Vec<String> = c.generators.iter().map(ToString::to_string).collect();
    writeln!(text, "generators: {}", gens.join("  ")).ok();
    for n in &c.notes {
        writeln!(text, "note: {n}").ok();
    }
    Ok(Outcome { command: "classify", inputs: json!({ "matrix": l }), result: to_json(&c), text, exit: 0 })
}

fn cmd_member(base: &str, matrix: &str) -> Result<Outcome, Failure> {
    let l = matrix_arg("base", base)?;
    let m = matrix_arg("matrix", matrix)?;
    let v = is_member(&l, &m).map_err(usage)?;
    let text = format!("{} in N({l}): {} [{}; {}]\n", m, v.member, v.branch, v.reason);
    let exit = if v.member { 0 } else { EXIT_NEGATIVE };
    Ok(Outcome { command: "member", inputs: json!({ "base": l, "matrix": m }), result: to_json(&v), text, exit })
}

fn cmd_nc(base: &str, matrix: &str, depth: u32) -> Result<Outcome, Failure> {
    let l = matrix_arg("base", base)?;
    let m = matrix_arg("matrix", matrix)?;
    let r = nc_bounded_check(&l, &m, depth).map_err(|e| match e {
        OdometerError::PeriodTooLong { .. } => Failure::Inconclusive(e.to_string()),
        e => usage(e),
    })?;
    let passes = r.passes();
    let mut text = format!("NC for M = {m} over L = {l}, levels 1..={depth}: {}\n", if passes { "holds" } else { "fails" });
    for c in &r.certificates {
        let w = c.witness.map_or("none".to_string(), |w| w.to_string());
        writeln!(text, "  n = {}: witness m = {w}, modulus {}, period {}+{}", c.n, c.modulus, c.period_start, c.period_length).ok();
    }
    let result = json!({ "passes": passes, "first_failure": r.first_failure(), "certificates": r.certificates });
    let exit = if passes { 0 } else { EXIT_NEGATIVE };
    Ok(Outcome { command: "nc", inputs: json!({ "base": l, "matrix": m, "depth": depth }), result, text, exit })
}

fn nl_exit(v: &NlVerdict) -> u8 {
    match v {
        NlVerdict::Accepted(_) => 0,
        NlVerdict::Rejected(NlRejection::NonIntegralConjugate { .. }) => EXIT_NEGATIVE,
        NlVerdict::Rejected(NlRejection::ResidueNotStabilized { .. }) => EXIT_INCONCLUSIVE,
    }
}

fn cmd_nl(a: &SubstArgs, m: &str, nmax: usize) -> Result<Outcome, Failure> {
    let s = load_subst(a)?;
    let m = matrix_arg("M", m)?;
    let v = nl_membership(s.expansion(), &m, s.digits(), nmax).map_err(usage)?;
    let text = match &v {
        NlVerdict::Accepted(c) => {
            let perm: Vec<String> =
                c.stable_action().digits.iter().zip(&c.stable_action().images).map(|(f, g)| format!("{f}->{g}")).collect();
            format!("accepted: k = {}, n0 = {}, n_max = {}\nstable action: {}\n", c.k, c.n0, c.n_max, perm.join(" "))
        }
        NlVerdict::Rejected(r) => format!("rejected: {r:?}\n"),
    };
    let mut inputs = subst_inputs(a, &s);
    inputs["M"] = to_json(&m);
    inputs["nmax"] = json!(nmax);
    Ok(Outcome { command: "nl", inputs, result: to_json(&v), text, exit: nl_exit(&v) })
}

fn cmd_phi(a: &SubstArgs, m: &str, nmax: usize, seed: Option<&str>, bbox: &str, svg: Option<&Path>) -> Result<Outcome, Failure> {
    let mut s = load_subst(a)?;
    let m = matrix_arg("M", m)?;
    let seed = seed_arg(&s, seed)?;
    let targets = region(&s, bbox)?;
    let mut inputs = subst_inputs(a, &s);
    inputs["M"] = to_json(&m);
    inputs["nmax"] = json!(nmax);
    inputs["seed"] = to_json(&seed);
    inputs["box"] = json!(bbox);
    let v = nl_membership(s.expansion(), &m, s.digits(), nmax).map_err(usage)?;
    let Some(cert) = v.accepted() else {
        let text = format!("{m} is not accepted: {v:?}\n");
        return Ok(Outcome { command: "phi", inputs, result: json!({ "verdict": v }), text, exit: nl_exit(&v) });
    };
    let rule = build_local_rule(cert, &mut s).map_err(usage)?;
    let source = s.fixed_point_patch(&seed, &rule.preimage_region(&targets)).map_err(usage)?;
    let image = rule.apply(&source, Some(&targets)).map_err(usage)?;
    let is_fixed = maps_fixed_points(&rule, &s, &targets).map_err(usage)?;
    if let Some(p) = svg {
        write_file(p, patch_to_svg(&image, 12), "SVG")?;
    }
    let text = format!(
        "phi_M for M = {m}, n0 = {}, seed {seed}\n{}fixed points map to fixed points: {is_fixed}\n",
        rule.n0,
        patch_to_text(&image).unwrap_or_default()
    );
    let result = json!({
        "n0": rule.n0,
        "image_origin": image.get(&IntVector::zeros(s.dim())),
        "maps_fixed_points": is_fixed,
        "patch": patch_to_cells(&image),
    });
    Ok(Outcome { command: "phi", inputs, result, text, exit: 0 })
}

/// Fixed point on the box: direct formula for digit rules, iteration from
/// the seed otherwise (which only reaches `∪ F_n`).
fn fixed_point_on(s: &Substitution, seed: &Letter, targets: &[IntVector]) -> Result<(Patch, usize), Failure> {
    if s.is_digit_family() {
        return Ok((s.fixed_point_patch(seed, targets).map_err(usage)?, 0));
    }
    let mut best = Patch::new();
    for n in 0.. {
        let p = match s.iterate_seed(seed, n) {
            Ok(p) => p,
            Err(_) => break,
        };
        let within: Patch = targets.iter().filter_map(|v| p.get(v).map(|a| (v.clone(), a.clone()))).collect();
        let grew = within.len() > best.len();
        best = within;
        if best.len() == targets.len() || (!grew && n > 8) {
            break;
        }
    }
    Ok((best, targets.len()))
}

fn cmd_subst_patch(a: &SubstArgs, seed: Option<&str>, bbox: &str, svg: Option<&Path>, pgm: Option<&Path>) -> Result<Outcome, Failure> {
    let s = load_subst(a)?;
    let seed = seed_arg(&s, seed)?;
    let targets = region(&s, bbox)?;
    let (patch, _) = fixed_point_on(&s, &seed, &targets)?;
    if let Some(p) = svg {
        write_file(p, patch_to_svg(&patch, 12), "SVG")?;
    }
    if let Some(p) = pgm {
        write_file(p, patch_to_pgm(&patch), "PGM")?;
    }
    let missing = targets.len() - patch.len();
    let mut inputs = subst_inputs(a, &s);
    inputs["seed"] = to_json(&seed);
    inputs["box"] = json!(bbox);
    let text = format!("{}{missing} box cells not reached\n", patch_to_text(&patch).unwrap_or_default());
    let result = json!({ "seeds": s.fixed_point_seeds(), "missing": missing, "patch": patch_to_cells(&patch) });
    Ok(Outcome { command: "subst patch", inputs, result, text, exit: 0 })
}

fn cmd_verify() -> Outcome {
    let rows = golden_suite();
    let (pass, fail, open) = tally(&rows);
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &rows {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Open => "OPEN",
        };
        writeln!(text, "{tag}  {:width$}  {}\n      {}", r.label, r.claim, r.detail).ok();
    }
    writeln!(text, "{pass} pass, {fail} fail, {open} open").ok();
    let result = json!({ "rows": rows, "pass": pass, "fail": fail, "open": open });
    let exit = if fail == 0 { 0 } else { EXIT_NEGATIVE };
    Outcome { command: "verify-paper", inputs: json!({}), result, text, exit }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.cmd {
        Cmd::Classify { matrix } => cmd_classify(matrix),
        Cmd::Member { base, matrix } => cmd_member(base, matrix),
        Cmd::Nc { base, matrix, depth } => cmd_nc(base, matrix, *depth),
        Cmd::Nl { s, m, nmax } => cmd_nl(s, m, *nmax),
        Cmd::Phi { s, m, nmax, seed, bbox, svg } => cmd_phi(s, m, *nmax, seed.as_deref(), bbox, svg.as_deref()),
        Cmd::Subst { cmd: SubstCmd::Patch { s, seed, bbox, svg, pgm } } => {
            cmd_subst_patch(s, seed.as_deref(), bbox, svg.as_deref(), pgm.as_deref())
        }
        Cmd::VerifyPaper => Ok(cmd_verify()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            return ExitCode::from(EXIT_INCONCLUSIVE);
        }
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let report = RunReport::new(outcome.command, outcome.inputs, outcome.result, elapsed);
    let body = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{body}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let shown = if cli.pretty { outcome.text } else { format!("{body}\n") };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().write_all(shown.as_bytes());
    ExitCode::from(outcome.exit)
}
