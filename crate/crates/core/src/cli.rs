//! Command-line front end. Every subcommand is one library operation or one
//! check suite; exit status 0 on success, 1 when a check fails, 2 on usage
//! and input errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::brackets::odd_bracket;
use crate::charts::{bv_identity, canonical_delta, transform_density, Density, Transition};
use crate::error::{Error, Result};
use crate::expr::{parse_even, parse_form, parse_in, parse_odd, parse_transition, split_list, to_json};
use crate::formsbridge::{form_to_semidensity, restrict_to_lagrangian, semidensity_to_form};
use crate::laplacians::{delta_rho, VolumeForm};
use crate::master::{classical_master_check, nu_constant, quantum_master_residual, semidensity_master_check, MasterAction};
use crate::suite::run_suite;
use crate::superalgebra::{ChartId, SuperFunction};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "oddsym", version, about = "Exact calculus on odd symplectic supermanifolds")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Dimension `n` of `ℝ^{n|n}`; inferred from the input when omitted.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Chart id attached to parsed inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub chart: u32,
    /// Volume form coefficient `ρ`.
    #[arg(long, global = true)]
    pub rho: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 50)]
    pub count: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The odd bracket `{f,g}`.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// `Δ_ρ f`, or with `--canonical` the Laplacian of the semidensity `f√𝒟`.
    Laplace {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        canonical: bool,
    },
    /// `Ber(∂z/∂z′)` of a transition given by the old coordinates in terms of the new.
    Berezinian { images: String },
    /// Transforms a density of the given weight along a transition.
    Transform {
        images: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "1/2")]
        weight: String,
    },
    /// Checks that a transition preserves the bracket and satisfies `Δ₀′√Ber = 0`.
    CheckTransition { images: String },
    /// Form to semidensity, or with `--inverse` semidensity to form.
    Fourier {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Restricts a semidensity to the graph of a closed odd one-form.
    Restrict {
        #[arg(allow_hyphen_values = true)]
        s: String,
        /// `;`-separated or JSON list of `α_i`; empty for the zero section.
        #[arg(long, default_value = "")]
        alpha: String,
    },
    /// Master equations for an action, a semidensity, or (`--rho`) a volume form.
    CheckMaster {
        #[arg(allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, conflicts_with_all = ["classical", "semidensity"])]
        quantum: bool,
        #[arg(long, conflicts_with = "semidensity")]
        classical: bool,
        #[arg(long)]
        semidensity: bool,
    },
    /// Runs a named identity suite: axioms, laplacian, bv, fourier, master or all.
    Suite { name: String },
}

/// Result of one command: what to print and whether the check passed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn value(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }
}

fn dim_of(common: &Common, fs: &[&SuperFunction]) -> u32 {
    common.n.unwrap_or_else(|| fs.iter().flat_map(|f| f.darboux_indices()).max().unwrap_or(1))
}

fn volume_form(common: &Common, chart: ChartId) -> Result<VolumeForm> {
    match &common.rho {
        Some(r) => VolumeForm::new(parse_even(r, chart)?),
        None => Ok(VolumeForm::coordinate(chart)),
    }
}

fn parse_weight(w: &str) -> Result<Rational64> {
    w.trim().parse().map_err(|_| Error::Parse { line: 1, column: 1, msg: format!("bad weight '{w}'") })
}

fn transition(common: &Common, images: &str) -> Result<Transition> {
    parse_transition(images, ChartId(common.chart), ChartId(common.chart + 1))
}

fn density_json(d: &Density) -> Value {
    json!({ "weight": d.weight().to_string(), "coefficient": to_json(d.coefficient()) })
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let chart = ChartId(c.chart);
    match &cli.command {
        Command::Bracket { f, g } => {
            let (f, g) = (parse_in(f, chart)?, parse_in(g, chart)?);
            let b = odd_bracket(&f, &g)?;
            Ok(Outcome::value(b.to_string(), serde_json::to_value(to_json(&b)).expect("serializable")))
        }
        Command::Laplace { f, canonical } => {
            let f = parse_in(f, chart)?;
            let out = if *canonical {
                if c.rho.is_some() {
                    return Err(Error::Precondition("--canonical acts on semidensities and takes no --rho".into()));
                }
                canonical_delta(&Density::semidensity(f))?.coefficient().clone()
            } else {
                delta_rho(&volume_form(c, chart)?, &f)?
            };
            Ok(Outcome::value(out.to_string(), serde_json::to_value(to_json(&out)).expect("serializable")))
        }
        Command::Berezinian { images } => {
            let t = transition(c, images)?;
            let ber = t.berezinian()?;
            let inv = t.transformation_berezinian()?;
            let text = format!("Ber(dz/dz') = {ber}\nBer(dz'/dz) = {inv}");
            Ok(Outcome::value(text, json!({ "berezinian": to_json(&ber), "inverse": to_json(&inv) })))
        }
        Command::Transform { images, f, weight } => {
            let t = transition(c, images)?;
            let d = Density::new(parse_weight(weight)?, parse_in(f, chart)?)?;
            let moved = transform_density(&d, &t)?;
            Ok(Outcome::value(moved.to_string(), density_json(&moved)))
        }
        Command::CheckTransition { images } => {
            let t = transition(c, images)?;
            let report = t.is_symplectomorphism()?;
            if !report.passed() {
                let text = format!("not symplectic\n{report}");
                let failures: Vec<String> = report.to_string().lines().map(str::to_string).collect();
                return Ok(Outcome { text, json: json!({ "symplectic": false, "failures": failures }), passed: false });
            }
            let bv = bv_identity(&t)?;
            let ber = t.berezinian()?;
            let text = format!("symplectic\nBer(dz/dz') = {ber}\nDelta0'(Ber^(1/2)) = {bv}");
            let json = json!({ "symplectic": true, "berezinian": to_json(&ber), "bv_identity": to_json(&bv) });
            Ok(Outcome { text, json, passed: bv.is_zero() })
        }
        Command::Fourier { input, inverse } => {
            let f = parse_in(input, chart)?;
            let n = dim_of(c, &[&f]);
            if *inverse {
                let w = semidensity_to_form(n, &Density::semidensity(f))?;
                Ok(Outcome::value(w.to_string(), serde_json::to_value(to_json(w.function())).expect("serializable")))
            } else {
                let s = form_to_semidensity(&parse_form(input, n)?)?;
                Ok(Outcome::value(s.to_string(), density_json(&s)))
            }
        }
        Command::Restrict { s, alpha } => {
            let s = parse_in(s, chart)?;
            let alpha = split_list(alpha)?.iter().map(|a| parse_odd(a, chart)).collect::<Result<Vec<_>>>()?;
            let mut refs: Vec<&SuperFunction> = alpha.iter().collect();
            refs.push(&s);
            let n = dim_of(c, &refs);
            let b = restrict_to_lagrangian(n, &Density::semidensity(s), &alpha)?;
            Ok(Outcome::value(b.to_string(), json!({ "density": to_json(b.coefficient()) })))
        }
        Command::CheckMaster { s, quantum: _, classical, semidensity } => check_master(c, chart, s.as_deref(), *classical, *semidensity),
        Command::Suite { name } => {
            let n = c.n.unwrap_or(2);
            let report = run_suite(name, n, c.seed, c.count)?;
            let json = serde_json::to_value(&report).expect("serializable");
            Ok(Outcome { text: report.to_string(), json, passed: report.passed() })
        }
    }
}

fn check_master(c: &Common, chart: ChartId, s: Option<&str>, classical: bool, semidensity: bool) -> Result<Outcome> {
    let Some(s) = s else {
        let rho = volume_form(c, chart)?;
        let n = dim_of(c, &[rho.coefficient()]);
        let r = nu_constant(n, &rho)?;
        let json = json!({ "nu": to_json(&r.nu), "closed": r.closed(), "form_constant": r.form_constant.as_ref().map(to_json) });
        return Ok(Outcome { text: r.to_string(), json, passed: r.closed() });
    };
    if semidensity {
        let m = semidensity_master_check(&Density::semidensity(parse_in(s, chart)?), None)?;
        let text = format!("Delta s = {}\nclosed: {}", m.delta, m.closed());
        return Ok(Outcome { text, json: json!({ "delta": to_json(&m.delta), "closed": m.closed() }), passed: m.closed() });
    }
    let action = MasterAction::new(parse_even(s, chart)?)?;
    if classical {
        let r = classical_master_check(&action)?;
        let text = format!("{{S,S}} = {}\nsatisfied: {}", r.bracket, r.satisfied());
        let json = json!({ "bracket": to_json(&r.bracket), "limit": to_json(&r.limit), "satisfied": r.satisfied() });
        return Ok(Outcome { text, json, passed: r.satisfied() });
    }
    let res = quantum_master_residual(&action)?;
    let text = format!("-4 hbar Delta0 S + {{S,S}} = {res}\nsatisfied: {}", res.is_zero());
    Ok(Outcome { text, json: json!({ "residual": to_json(&res), "satisfied": res.is_zero() }), passed: res.is_zero() })
}

/// Parses arguments, runs the command and writes the result; returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let printed = match cli.common.format {
                Format::Text => writeln!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable")),
            };
            if printed.is_err() {
                return 2;
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("oddsym").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn subcommands() {
        assert_eq!(call(&["bracket", "x1", "th1"]).1.trim(), "1");
        assert_eq!(call(&["laplace", "x1*th1"]).1.trim(), "1");
        assert_eq!(call(&["laplace", "th1", "--rho", "x1^2"]).1.trim(), "(1)/(x1)");
        let (code, text, _) = call(&["berezinian", "2*x1; th1/2"]);
        assert_eq!(code, 0);
        assert!(text.contains("Ber(dz/dz') = 4"), "{text}");
        assert_eq!(call(&["check-transition", "2*x1; th1"]).0, 1);
        assert_eq!(call(&["check-transition", "[\"2*x1\", \"th1/2\"]"]).0, 0);
        assert_eq!(call(&["fourier", "1", "--n", "2"]).1.trim(), "(th1*th2) D^1/2");
        assert_eq!(call(&["check-master", "x1^2 + th1*th2", "--classical"]).0, 1);
        assert_eq!(call(&["check-master", "x1*th1", "--quantum"]).0, 2);
        assert_eq!(call(&["check-master", "--rho", "4"]).0, 0);
    }

    #[test]
    fn errors_exit_two() {
        let (code, _, err) = call(&["bracket", "x1 +", "th1"]);
        assert_eq!(code, 2);
        assert!(err.contains("column 5"), "{err}");
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["suite", "nope"]).0, 2);
        assert_eq!(call(&["laplace", "x1", "--rho", "th1"]).0, 2);
    }

    #[test]
    fn json_output() {
        let (code, text, _) = call(&["--format", "json", "bracket", "x1^2", "th1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["chart"], 0);
        assert_eq!(v["terms"][0]["num"], "2*x1");
    }
}
