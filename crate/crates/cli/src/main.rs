//! `klcanon` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klcanon::combinatorics::{ParabolicContext, Permutation, SignedSequence, Weight};
use klcanon::hecke::{self, UParam};
use klcanon::sl2::PlusMinusWord;
use klcanon::verify::{self, Suite, SuiteReport};
use klcanon::{grassmann, tensor, Error, LaurentPoly};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "klcanon",
    version,
    about = "Exact parabolic Kazhdan-Lusztig polynomials, with canonical bases of tensor powers"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinary KL polynomial P_{y,w} for S_n.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "PERM")]
        y: Permutation,
        #[arg(long, value_name = "PERM")]
        w: Permutation,
    },
    /// Parabolic KL polynomial P^J_{tau,sigma} for the parabolic fixing I0(m).
    Pkl {
        #[arg(long, value_name = "m1,m2,...")]
        weight: Weight,
        #[arg(long, value_name = "-1|q", allow_hyphen_values = true)]
        u: UParam,
        #[arg(long, value_name = "PERM")]
        tau: Permutation,
        #[arg(long, value_name = "PERM")]
        sigma: Permutation,
    },
    /// Canonical basis element b_I of the tensor power.
    Canonical {
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "SEQ", allow_hyphen_values = true)]
        word: String,
    },
    /// Dual canonical basis element b^I of the tensor power.
    DualCanonical {
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "SEQ", allow_hyphen_values = true)]
        word: String,
    },
    /// Coefficient c(I, J) of e_J in b_I through the local recursion (k = 2).
    Grassmann {
        #[arg(long = "I", value_name = "WORD", allow_hyphen_values = true)]
        i: PlusMinusWord,
        #[arg(long = "J", value_name = "WORD", allow_hyphen_values = true)]
        j: PlusMinusWord,
    },
    /// Run cross-verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Hecke,
    Duality,
    Routes,
    Deodhar,
    Grassmann,
    All,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(flag: &str, e: Error) -> Self {
        Self { code: 2, message: format!("{flag}: {e}") }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BarAsymmetry(_) | Error::Format(_) | Error::Denominator(_) | Error::RouteMismatch(_) => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Kl { n, y, w } => {
            for (flag, p) in [("--y", &y), ("--w", &w)] {
                if p.n() != n {
                    return Err(Failure::input(flag, Error::LengthMismatch { expected: n, found: p.n() }));
                }
            }
            let p = hecke::classical_kl(&y, &w)?;
            Ok(Output {
                json: json!({ "n": n, "y": y, "w": w, "P": p }),
                text: format!("P_{{{y};{w}}} = {p}\n"),
                ok: true,
            })
        }
        Command::Pkl { weight, u, tau, sigma } => {
            let ctx = ParabolicContext::new(weight);
            for (flag, p) in [("--tau", &tau), ("--sigma", &sigma)] {
                if p.n() != ctx.n() {
                    return Err(Failure::input(flag, Error::LengthMismatch { expected: ctx.n(), found: p.n() }));
                }
                if !ctx.is_min_coset_rep(p) {
                    return Err(Failure::input(flag, Error::NotCosetMinimal(p.to_string())));
                }
            }
            let p = hecke::parabolic_kl(u, &ctx, &tau, &sigma)?;
            Ok(Output {
                json: json!({ "tau": tau, "sigma": sigma, "u": u, "P": p }),
                text: format!("P^J_{{{tau};{sigma}}} (u = {u}) = {p}\n"),
                ok: true,
            })
        }
        Command::Canonical { k, word } => expansion("canonical", k, &word),
        Command::DualCanonical { k, word } => expansion("dual-canonical", k, &word),
        Command::Grassmann { i, j } => {
            let count = |w: &PlusMinusWord| w.as_sequence().entries().iter().filter(|&&x| x == 1).count();
            if i.len() != j.len() || count(&i) != count(&j) {
                return Err(Failure::input("--J", Error::WeightMismatch(i.to_string(), j.to_string())));
            }
            let c = grassmann::coefficient_c(&i, &j)?;
            let (c0, h) = if grassmann::is_controlled(&i, &j) {
                (Some(grassmann::coefficient_c0(&i, &j)?), Some(grassmann::h(&i, &j)?))
            } else {
                (None, None)
            };
            let mut text = format!("c({i}, {j}) = {c}\n");
            match (&c0, h) {
                (Some(c0), Some(h)) => {
                    let _ = writeln!(text, "c0({i}, {j}) = {c0}\nh({i}, {j}) = {h}");
                }
                _ => {
                    let _ = writeln!(text, "{j} is not controlled by {i}");
                }
            }
            Ok(Output {
                json: json!({ "I": i.to_string(), "J": j.to_string(), "c": c, "c0": c0, "h": h }),
                text,
                ok: true,
            })
        }
        Command::Verify { suite, max_n } => {
            let reports = match suite {
                SuiteArg::All => verify::run_all(max_n),
                SuiteArg::Hecke => vec![verify::run_suite(Suite::Hecke, max_n)],
                SuiteArg::Duality => vec![verify::run_suite(Suite::Duality, max_n)],
                SuiteArg::Routes => vec![verify::run_suite(Suite::Routes, max_n)],
                SuiteArg::Deodhar => vec![verify::run_suite(Suite::Deodhar, max_n)],
                SuiteArg::Grassmann => vec![verify::run_suite(Suite::Grassmann, max_n)],
            };
            let ok = reports.iter().all(SuiteReport::passed);
            Ok(Output {
                json: json!({ "max_n": max_n, "passed": ok, "suites": reports }),
                text: verify_text(&reports, ok),
                ok,
            })
        }
    }
}

fn expansion(basis: &str, k: usize, word: &str) -> Result<Output, Failure> {
    let seq = SignedSequence::parse(word, k).map_err(|e| Failure::input("--word", e))?;
    let v = match basis {
        "canonical" => tensor::canonical_basis(k, &seq)?,
        _ => tensor::dual_canonical_basis(k, &seq)?,
    };
    let terms = v.laurent_terms()?;
    let name = seq.render(k);
    let json_terms: Vec<Value> = terms.iter().map(|(s, c)| json!({ "I": s.render(k), "coeff": c })).collect();
    let symbol = if basis == "canonical" { format!("b_{{{name}}}") } else { format!("b^{{{name}}}") };
    let text = format!("{symbol} = {}\n", render_combination(&terms, k));
    Ok(Output { json: json!({ "basis": basis, "k": k, "I": name, "terms": json_terms }), text, ok: true })
}

fn render_combination(terms: &[(SignedSequence, LaurentPoly)], k: usize) -> String {
    let mut out = String::new();
    for (idx, (s, c)) in terms.iter().enumerate() {
        let e = format!("e_{{{}}}", s.render(k));
        let monomial = c.as_monomial();
        let negative = monomial.as_ref().is_some_and(|(_, a)| **a < Default::default());
        let sep = match (idx, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sep);
        let body = match monomial {
            Some((0, a)) if a.magnitude() == &1u32.into() => e,
            Some((d, a)) if a.magnitude() == &1u32.into() => format!("v^{d} {e}"),
            Some((0, a)) => format!("{} {e}", a.magnitude()),
            Some((d, a)) => format!("{}*v^{d} {e}", a.magnitude()),
            None => format!("({c}) {e}"),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn verify_text(reports: &[SuiteReport], ok: bool) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "suite {} (max n {}): {}", r.suite, r.max_n, if r.passed() { "PASS" } else { "FAIL" });
        for c in &r.checks {
            let _ = writeln!(out, "  {} {} [{} cases]", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.cases);
            if let Some(msg) = &c.first_failure {
                let _ = writeln!(out, "       {} failures, first: {msg}", c.failures);
            }
        }
    }
    let _ = writeln!(out, "{}", if ok { "all checks passed" } else { "verification FAILED" });
    out
}
