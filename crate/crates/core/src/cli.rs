//! Command-line front end: argument parsing, request validation, gate
//! enforcement and report rendering.
//!
//! Exit status is 0 on success, 1 on a verification mismatch, 2 on a usage
//! error and 3 when the admissibility gate `p > h·c` fails (with or without
//! `--unsafe`).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dpalg;
use crate::error::Error;
use crate::field::{is_prime, Field};
use crate::linkage;
use crate::oracle::{self, Check};
use crate::rootsys::{RootSystem, Weight};
use crate::varieties::{self, SimpleRegistry};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "frobvar", version, about = "Support varieties for Frobenius kernels of classical groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Run even when p ≤ h·c; the result is advisory and the exit status is 3.
    #[arg(long = "unsafe", global = true)]
    pub unsafe_gate: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition X_r(T) into blocks of Dist(G_(r)).
    Blocks(GroupArgs),
    /// Support variety of the simple module L(λ) over G_(r).
    SupportSimple(WeightArgs),
    /// Support variety of the block containing L(λ).
    SupportBlock(WeightArgs),
    /// Φ_λ, its Levi conjugate and the G_(1) variety of H^0(λ).
    PhiLambda(PhiArgs),
    /// Expand dψ_r(u_{r-1}) in Dist(G_a)^{⊗r} and check its shape.
    VerifyDist(DistArgs),
    /// Exhaustive SL_2 checks over a finite field.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub base: GroupArgs,
    /// Fundamental-weight coordinates, e.g. `4,7`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// JSON file of G_(1) varieties of simple modules.
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhiArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: u32,
    /// Include the full expansion.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Verify(OracleArgs),
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: u32,
    /// Which comparison to run; default runs simple, equal and block.
    #[arg(long, value_enum)]
    pub check: Option<CheckArg>,
    /// Enumerate over F_{p^k} instead of F_p (k ∈ {1, 2}).
    #[arg(long, default_value_t = 1)]
    pub field_ext: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Simple,
    Equal,
    Block,
    H0Remark,
    Friedlander,
}

impl From<CheckArg> for Check {
    fn from(c: CheckArg) -> Check {
        match c {
            CheckArg::Simple => Check::Simple,
            CheckArg::Equal => Check::Equal,
            CheckArg::Block => Check::Block,
            CheckArg::H0Remark => Check::H0Remark,
            CheckArg::Friedlander => Check::Friedlander,
        }
    }
}

/// A parsed and validated command.
#[derive(Debug, Clone)]
pub struct CommandRequest {
    pub command: String,
    pub group: Option<RootSystem>,
    pub p: u64,
    pub r: u32,
    pub lambda: Option<Weight>,
    pub registry: SimpleRegistry,
    pub checks: Vec<Check>,
    pub field_ext: u32,
    pub dump: bool,
    pub unsafe_gate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub provenance: Vec<&'static str>,
    pub warnings: Vec<String>,
    pub payload: Value,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub gate_failed: bool,
}

impl Report {
    fn new(command: &str, provenance: &[&'static str], payload: Value, text: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            provenance: provenance.to_vec(),
            warnings: Vec::new(),
            payload,
            text,
            gate_failed: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match (self.status, self.gate_failed) {
            (Status::Fail, _) => EXIT_MISMATCH,
            (_, true) => EXIT_GATE,
            _ => EXIT_PASS,
        }
    }

    /// JSON with one line per top-level field, and one line per element
    /// when the payload is an array.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let Value::Object(map) = v else { unreachable!() };
        let order = ["command", "status", "provenance", "warnings", "payload"];
        let mut lines = Vec::new();
        for key in order {
            let value = &map[key];
            let body = match value {
                Value::Array(items) if key == "payload" && !items.is_empty() => {
                    let inner: Vec<String> = items.iter().map(|x| format!("    {x}")).collect();
                    format!("[\n{}\n  ]", inner.join(",\n"))
                }
                _ => value.to_string(),
            };
            lines.push(format!("  \"{key}\": {body}"));
        }
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            out.push_str(&format!("WARNING: {w}\n"));
        }
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", serde_json::to_value(self.status).unwrap().as_str().unwrap()));
        out
    }
}

/// A failure that ends the command before a report exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(field: &str, msg: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: format!("{field}: {msg}") }
    }
}

fn from_error(field: &str, e: Error) -> Failure {
    let code = match e {
        Error::Undecidable(_) | Error::NotNilpotent(_) | Error::LeviSearch(_) | Error::CapOverflow { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    };
    Failure { code, message: format!("{field}: {e}") }
}

/// Reads a registry file; an empty file gives the built-ins only.
pub fn load_registry(path: &Path) -> crate::Result<SimpleRegistry> {
    let text = std::fs::read_to_string(path)?;
    SimpleRegistry::from_json_str(&text)
}

fn check_p(p: u64) -> Result<(), Failure> {
    if !is_prime(p) {
        return Err(Failure::usage("--p", format!("{p} is not prime")));
    }
    Ok(())
}

fn check_r(r: u32) -> Result<(), Failure> {
    if r == 0 {
        return Err(Failure::usage("--r", "must be at least 1"));
    }
    Ok(())
}

fn parse_rs(group: &str) -> Result<RootSystem, Failure> {
    RootSystem::from_name(group).map_err(|e| from_error("--group", e))
}

fn parse_lambda(rs: &RootSystem, text: &str) -> Result<Weight, Failure> {
    let w: Weight = text.parse().map_err(|e| from_error("--lambda", e))?;
    rs.check_weight(&w).map_err(|e| from_error("--lambda", e))?;
    Ok(w)
}

impl CommandRequest {
    fn bare(command: &str, p: u64, r: u32, unsafe_gate: bool) -> Self {
        CommandRequest {
            command: command.to_string(),
            group: None,
            p,
            r,
            lambda: None,
            registry: SimpleRegistry::new(),
            checks: Vec::new(),
            field_ext: 1,
            dump: false,
            unsafe_gate,
        }
    }

    /// Validates parsed arguments: `p` prime, `r ≥ 1`, the group name, the
    /// weight arity and the registry file.
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let u = cli.unsafe_gate;
        let req = match &cli.command {
            Command::Blocks(a) => {
                check_p(a.p)?;
                check_r(a.r)?;
                let mut req = Self::bare("blocks", a.p, a.r, u);
                req.group = Some(parse_rs(&a.group)?);
                req
            }
            Command::SupportSimple(a) | Command::SupportBlock(a) => {
                let name = if matches!(cli.command, Command::SupportSimple(_)) { "support-simple" } else { "support-block" };
                check_p(a.base.p)?;
                check_r(a.base.r)?;
                let rs = parse_rs(&a.base.group)?;
                let mut req = Self::bare(name, a.base.p, a.base.r, u);
                req.lambda = Some(parse_lambda(&rs, &a.lambda)?);
                if let Some(path) = &a.registry {
                    req.registry = load_registry(path).map_err(|e| from_error("--registry", e))?;
                }
                req.group = Some(rs);
                req
            }
            Command::PhiLambda(a) => {
                check_p(a.p)?;
                let rs = parse_rs(&a.group)?;
                let mut req = Self::bare("phi-lambda", a.p, 1, u);
                req.lambda = Some(parse_lambda(&rs, &a.lambda)?);
                req.group = Some(rs);
                req
            }
            Command::VerifyDist(a) => {
                check_p(a.p)?;
                check_r(a.r)?;
                let mut req = Self::bare("verify-dist", a.p, a.r, u);
                req.dump = a.dump;
                req
            }
            Command::Oracle(OracleCommand::Verify(a)) => {
                check_p(a.p)?;
                check_r(a.r)?;
                if !(1..=2).contains(&a.field_ext) {
                    return Err(Failure::usage("--field-ext", format!("{} is not 1 or 2", a.field_ext)));
                }
                let mut req = Self::bare("oracle verify", a.p, a.r, u);
                req.group = Some(RootSystem::from_name("A1").expect("A1 exists"));
                req.checks = match a.check {
                    Some(c) => vec![c.into()],
                    None => vec![Check::Simple, Check::Equal, Check::Block],
                };
                req.field_ext = a.field_ext;
                req
            }
        };
        Ok(req)
    }
}

fn weight_json(w: &Weight) -> Value {
    json!(w.0)
}

/// Runs a validated request, enforcing the gate on group-bearing commands.
pub fn dispatch(req: &CommandRequest) -> Result<Report, Failure> {
    let mut warnings = Vec::new();
    let mut gate_failed = false;
    if let Some(rs) = &req.group {
        let gate = rs.gate_check(req.p);
        if !gate.pass {
            let msg = format!(
                "p = {} does not exceed h·c = {} for {}; results are outside the proven range",
                req.p,
                gate.threshold,
                rs.name()
            );
            if !req.unsafe_gate {
                return Err(Failure { code: EXIT_GATE, message: format!("gate refused: {msg} (pass --unsafe to run anyway)") });
            }
            warnings.push(msg);
            gate_failed = true;
        }
    }
    let mut report = match req.command.as_str() {
        "blocks" => blocks(req),
        "support-simple" => support_simple(req),
        "support-block" => support_block(req),
        "phi-lambda" => phi_lambda(req),
        "verify-dist" => verify_dist(req),
        "oracle verify" => oracle_verify(req),
        other => Err(Failure::usage("command", format!("unknown command {other}"))),
    }?;
    report.warnings.extend(warnings);
    report.gate_failed = gate_failed;
    Ok(report)
}

fn blocks(req: &CommandRequest) -> Result<Report, Failure> {
    let rs = req.group.as_ref().unwrap();
    let classes = linkage::block_partition(rs, req.p, req.r).map_err(|e| from_error("--group", e))?;
    let payload: Vec<Value> = classes
        .iter()
        .map(|c| json!({"representative": weight_json(&c.base_weight), "m": c.m, "members": c.members}))
        .collect();
    let text = classes
        .iter()
        .map(|c| {
            let members: Vec<String> = c.members.iter().map(|w| w.to_string()).collect();
            format!("{}  m={}  {{{}}}", c.base_weight, c.m, members.join(", "))
        })
        .collect();
    Ok(Report::new("blocks", &["linkage"], Value::Array(payload), text))
}

fn orbit_dims(rs: &RootSystem, tv: &varieties::TupleVariety) -> Vec<Option<usize>> {
    tv.coords.iter().map(|v| varieties::orbit_dim(rs, v)).collect()
}

fn support_simple(req: &CommandRequest) -> Result<Report, Failure> {
    let rs = req.group.as_ref().unwrap();
    let lambda = req.lambda.as_ref().unwrap();
    let tv = varieties::simple_variety(rs, lambda, req.p, req.r, &req.registry).map_err(|e| from_error("--lambda", e))?;
    let digits = rs.steinberg_digits(lambda, req.p, Some(req.r as usize)).map_err(|e| from_error("--lambda", e))?;
    let dims = orbit_dims(rs, &tv);
    let complexity: Option<usize> = dims.iter().copied().sum();
    let payload = json!({
        "group": rs.name(),
        "p": req.p,
        "r": req.r,
        "lambda": weight_json(lambda),
        "digits": digits,
        "variety": tv,
        "orbit_dim": dims,
        "complexity_upper": complexity,
    });
    let text = vec![
        format!("L{lambda} for {} at p={}, r={}", rs.name(), req.p, req.r),
        format!("digits: {}", digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")),
        format!("variety: {tv}"),
        format!("complexity ≤ {}", complexity.map_or("unknown".into(), |c| c.to_string())),
    ];
    let mut rep = Report::new("support-simple", &["steinberg-tensor-product", "restricted-simple-registry"], payload, text);
    if complexity.is_none() {
        rep.status = Status::Partial;
        rep.warnings.push("some digit has no registry entry; the descriptor contains unknown coordinates".into());
    }
    Ok(rep)
}

fn support_block(req: &CommandRequest) -> Result<Report, Failure> {
    let rs = req.group.as_ref().unwrap();
    let lambda = req.lambda.as_ref().unwrap();
    if !lambda.is_restricted(req.p, req.r) {
        return Err(from_error("--lambda", Error::NotRestricted { weight: lambda.clone(), p: req.p, r: req.r }));
    }
    let tv = varieties::block_variety(rs, lambda, req.p, req.r).map_err(|e| from_error("--group", e))?;
    let m = linkage::digit_m(rs, lambda, req.p, req.r).map_err(|e| from_error("--lambda", e))?;
    let dims = orbit_dims(rs, &tv);
    let complexity: Option<usize> = dims.iter().copied().sum();
    let payload = json!({
        "group": rs.name(),
        "p": req.p,
        "r": req.r,
        "lambda": weight_json(lambda),
        "m": m,
        "variety": tv,
        "orbit_dim": dims,
        "complexity_upper": complexity,
    });
    let text = vec![
        format!("block of L{lambda} for {} at p={}, r={}", rs.name(), req.p, req.r),
        format!("m = {m}"),
        format!("variety: {tv}"),
        format!("complexity ≤ {}", complexity.map_or("unknown".into(), |c| c.to_string())),
    ];
    Ok(Report::new("support-block", &["linkage", "levi-conjugation", "induced-module-variety"], payload, text))
}

fn phi_lambda(req: &CommandRequest) -> Result<Report, Failure> {
    let rs = req.group.as_ref().unwrap();
    let lambda = req.lambda.as_ref().unwrap();
    let phi = varieties::phi_lambda(rs, lambda, req.p).map_err(|e| from_error("--lambda", e))?;
    let (w, levi) = varieties::levi_conjugate(rs, &phi).map_err(|e| from_error("--lambda", e))?;
    let image: std::collections::BTreeSet<usize> = phi.iter().map(|&k| rs.act_on_root(&w, k)).collect();
    let verified = image == rs.levi_roots(&levi);
    let variety = varieties::induced_variety(rs, lambda, req.p).map_err(|e| from_error("--lambda", e))?;
    let roots: Vec<&Vec<i64>> = phi.iter().map(|&k| &rs.roots[k].simple_root_coords).collect();
    let levi1: Vec<usize> = levi.iter().map(|i| i + 1).collect();
    let word1: Vec<usize> = w.word.iter().map(|i| i + 1).collect();
    let payload = json!({
        "group": rs.name(),
        "p": req.p,
        "lambda": weight_json(lambda),
        "phi_lambda": roots,
        "weyl_word": word1,
        "levi": levi1,
        "verified": verified,
        "variety": variety,
        "orbit_dim": varieties::orbit_dim(rs, &variety),
    });
    let text = vec![
        format!("|Φ_λ| = {} for λ = {lambda}", phi.len()),
        format!("w = {:?} maps Φ_λ onto the Levi subsystem of I = {:?} ({})", word1, levi1, if verified { "verified" } else { "NOT verified" }),
        format!("V_G1(H0(λ)) = {variety}"),
    ];
    let mut rep = Report::new("phi-lambda", &["levi-conjugation", "induced-module-variety"], payload, text);
    if !verified {
        rep.status = Status::Fail;
    }
    Ok(rep)
}

fn verify_dist(req: &CommandRequest) -> Result<Report, Failure> {
    let rep = dpalg::verify_claim(req.r, req.p).map_err(|e| from_error("--r", e))?;
    let mut payload = serde_json::to_value(&rep).expect("claim report serializes");
    if req.dump {
        payload["expansion"] = json!(rep.expansion.render());
    }
    let mut text = vec![format!(
        "dψ_{}(u_{}) at p={}: {} ({} terms, {} residual, min residual weight {})",
        req.r,
        req.r - 1,
        req.p,
        if rep.pass { "pass" } else { "FAIL" },
        rep.total_terms,
        rep.residual_terms,
        rep.min_residual_weight.map_or("-".into(), |w| w.to_string())
    )];
    if let Some(c) = &rep.counterexample {
        text.push(format!("counterexample: {c}"));
    }
    if req.dump {
        text.push(rep.expansion.render());
    }
    let mut out = Report::new("verify-dist", &["divided-power-expansion"], payload, text);
    if !rep.pass {
        out.status = Status::Fail;
    }
    Ok(out)
}

fn oracle_verify(req: &CommandRequest) -> Result<Report, Failure> {
    let f = Field::new(req.p, req.field_ext);
    let mut reports = Vec::new();
    for &check in &req.checks {
        reports.push(oracle::run_check(check, &f, req.r).map_err(|e| from_error("--p", e))?);
    }
    let text: Vec<String> = reports.iter().map(|r| r.summary()).collect();
    let pass = reports.iter().all(|r| r.pass);
    let payload = serde_json::to_value(&reports).expect("oracle reports serialize");
    let mut out = Report::new("oracle verify", &["matrix-oracle"], payload, text);
    if !pass {
        out.status = Status::Fail;
    }
    Ok(out)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = CommandRequest::from_cli(&cli).and_then(|req| dispatch(&req));
    let report = match result {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    for w in &report.warnings {
        let _ = writeln!(err, "WARNING: {w}");
    }
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                let _ = writeln!(err, "error: --output: {e}");
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = out.write_all(rendered.as_bytes());
        }
    }
    report.exit_code()
}
