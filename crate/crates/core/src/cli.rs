//! Command-line front end. [`run`] returns the text to print and the exit
//! code so it can be driven from tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::exactfield::FieldCtx;
use crate::formulas::{builtin, FormulaName};
use crate::matrix::{status_matrix, MatrixRow};
use crate::minkowski::{mink_form, relate, Point};
use crate::plans::{run_plan, PlanError, PlanOptions};
use crate::witnesses::{CheckOptions, Status, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_REGIME: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "causaldef", version, about = "Definability checks for the causal relations of Minkowski spacetime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Relation kind and Minkowski form of two points.
    Relate {
        #[arg(short = 'n', long = "n")]
        n: Option<usize>,
        #[arg(short = 'f', long, default_value = "Q")]
        field: String,
        p: String,
        q: String,
    },
    /// Run one registered plan.
    Verify {
        plan: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Definability status table for a regime.
    Matrix {
        #[command(flatten)]
        common: Common,
    },
    /// Print or classify a built-in formula.
    Formula {
        name: String,
        #[arg(long, conflicts_with = "classify")]
        print: bool,
        #[arg(long)]
        classify: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(short = 'n', long = "n", default_value_t = 2)]
    n: usize,
    #[arg(short = 'f', long, default_value = "Q")]
    field: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

/// JSON report shared by `verify` and `matrix`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub n: usize,
    pub field: FieldCtx,
    pub seed: u64,
    pub trials: usize,
    pub verdicts: Vec<Verdict>,
    pub matrix: Vec<MatrixRow>,
}

fn usage(msg: impl std::fmt::Display) -> (String, i32) {
    (format!("error: {msg}\n"), EXIT_USAGE)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return (e.to_string(), code);
        }
    };
    match cli.command {
        Command::Relate { n, field, p, q } => cmd_relate(n, &field, &p, &q),
        Command::Verify { plan, common, trials, seed } => cmd_verify(&plan, &common, trials, seed),
        Command::Matrix { common } => cmd_matrix(&common),
        Command::Formula { name, classify, .. } => cmd_formula(&name, classify),
    }
}

fn cmd_relate(n: Option<usize>, field: &str, p: &str, q: &str) -> (String, i32) {
    let ctx: FieldCtx = match field.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let (p, q) = match (Point::parse(p, &ctx), Point::parse(q, &ctx)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(e), _) | (_, Err(e)) => return usage(e),
    };
    if let Some(n) = n.filter(|&n| n != p.dim() || n != q.dim()) {
        return usage(format!("points must have {n} coordinates"));
    }
    match (relate(&p, &q), mink_form(&p, &q)) {
        (Ok(k), Ok(m)) => (format!("{k:?} {m}\n"), EXIT_PASS),
        (Err(e), _) | (_, Err(e)) => usage(e),
    }
}

fn emit(report: &Report, common: &Common, text: String) -> Result<String, (String, i32)> {
    let json = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    if let Some(path) = &common.out {
        std::fs::write(path, &json).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(if common.text { text } else { json })
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{}: {:?}\n", v.plan, v.status);
    for t in &v.tallies {
        s += &format!(
            "  {} {}: exact {} sampled {} skipped {} undetermined {}\n",
            t.formula, t.kind, t.exact, t.sampled, t.skipped, t.undetermined
        );
    }
    for n in &v.notes {
        s += &format!("  {n}\n");
    }
    if let Some(c) = &v.counterexample {
        let pts: Vec<String> = c.iter().map(|(k, p)| format!("{k}={p}")).collect();
        s += &format!("  counterexample: {}\n", pts.join(" "));
    }
    s
}

fn cmd_verify(plan: &str, common: &Common, trials: usize, seed: u64) -> (String, i32) {
    let field: FieldCtx = match common.field.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let opts = PlanOptions {
        n: common.n,
        field: field.clone(),
        check: CheckOptions { trials, seed, ..CheckOptions::default() },
    };
    let verdict = match run_plan(plan, &opts) {
        Ok(v) => v,
        Err(e @ PlanError::RegimeViolation { .. }) => {
            return (format!("regime violation: {e}\n"), EXIT_REGIME)
        }
        Err(e) => return usage(e),
    };
    let code = if verdict.status == Status::Pass { EXIT_PASS } else { EXIT_FAIL };
    let text = verdict_text(&verdict);
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: format!("verify {plan}"),
        n: common.n,
        field,
        seed,
        trials,
        verdicts: vec![verdict],
        matrix: vec![],
    };
    match emit(&report, common, text) {
        Ok(s) => (s, code),
        Err(e) => e,
    }
}

fn cmd_matrix(common: &Common) -> (String, i32) {
    let field: FieldCtx = match common.field.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    if common.n < 2 {
        return usage("n must be at least 2");
    }
    let m = status_matrix(common.n, &field);
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: "matrix".into(),
        n: common.n,
        field,
        seed: 0,
        trials: 0,
        verdicts: vec![],
        matrix: m.rows.clone(),
    };
    match emit(&report, common, m.render_text()) {
        Ok(s) => (s, EXIT_PASS),
        Err(e) => e,
    }
}

fn cmd_formula(name: &str, classify: bool) -> (String, i32) {
    let name: FormulaName = match name.parse() {
        Ok(n) => n,
        Err(e) => return usage(e),
    };
    let nf = builtin(name);
    if classify {
        let f = &nf.formula;
        (format!("vars={} prefix={}\n", f.count_variables(), f.prefix_class()), EXIT_PASS)
    } else {
        (format!("{}\n", nf.formula), EXIT_PASS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (String, i32) {
        run(std::iter::once("causaldef").chain(args.iter().copied()))
    }

    #[test]
    fn relate_outputs() {
        assert_eq!(go(&["relate", "-n", "3", "(-2,-2,0)", "(2,2,0)"]), ("Lightlike 0\n".into(), 0));
        assert_eq!(go(&["relate", "(0,0)", "(1,0)"]), ("Timelike 1\n".into(), 0));
        let (out, code) = go(&["relate", "-f", "Q(rt2)", "(0,0)", "(1,1-1/2*rt)"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("Timelike "), "{out}");
        assert_eq!(go(&["relate", "(0,0)", "(1,x)"]).1, EXIT_USAGE);
    }

    #[test]
    fn formula_outputs() {
        assert_eq!(go(&["formula", "PsiTS", "--classify"]).0, "vars=4 prefix=A1E1\n");
        assert_eq!(go(&["formula", "Wsl", "--classify"]).0, "vars=6 prefix=A2E2\n");
        assert!(go(&["formula", "Ets", "--print"]).0.starts_with("exists r"));
        assert_eq!(go(&["formula", "Nope"]).1, EXIT_USAGE);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["verify", "psi-ls", "--n", "2"]).1, EXIT_REGIME);
        assert_eq!(go(&["verify", "e-st-2d", "--n", "3", "--trials", "2"]).1, EXIT_FAIL);
        assert_eq!(go(&["verify", "nondef-3var"]).1, EXIT_PASS);
        assert_eq!(go(&["verify", "nope"]).1, EXIT_USAGE);
        assert_eq!(go(&["bogus"]).1, EXIT_USAGE);
    }

    #[test]
    fn matrix_text() {
        let (out, code) = go(&["matrix", "--text"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(2).unwrap().starts_with("E3         EtsHat"));
    }
}
