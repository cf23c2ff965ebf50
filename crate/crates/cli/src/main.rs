//! `mcvlie`: command-line front end for middle convolution computations.
//!
//! Exit codes: 0 success, 1 malformed input, 2 failed precondition (or a
//! failed check for `check` / `freelie verify`), 3 internal error.

mod text;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcvlie::analysis::{
    are_isomorphic, check_star_conditions, composition_harness, is_irreducible, rh_hypotheses,
    DEFAULT_SEED,
};
use mcvlie::arrangement::{y_closure, Arrangement};
use mcvlie::convolution::{
    dr_convolution, dr_middle_convolution, haraoka_convolution, haraoka_middle_convolution,
};
use mcvlie::exact::{parse_rational, Rational};
use mcvlie::freelie::{adjoint_witness, lyndon_basis, verify_braid_relations, word_to_string, DkWord};
use mcvlie::holonomy::{check_integrability, presentation, PfaffianSystem};
use mcvlie::json::*;
use mcvlie::{Error, ErrorKind};

#[derive(Parser)]
#[command(name = "mcvlie", version, about = "Exact middle convolution of Fuchsian and Pfaffian systems")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized searches (overridden by MCVLIE_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Input {
    /// Input JSON file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Y-closure of an arrangement.
    Closure {
        #[command(flatten)]
        input: Input,
        /// Direction of the line, e.g. `0,1`.
        #[arg(long)]
        line: String,
    },
    /// Integrability check of a system (exit 2 when violated).
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Kohno presentation of the holonomy Lie algebra.
    Presentation {
        #[command(flatten)]
        input: Input,
    },
    /// Additive convolution of a system along a line, or of a matrix tuple.
    Convolve {
        #[command(flatten)]
        input: Input,
        /// Convolution parameter, e.g. `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Line direction for a system input, e.g. `0,1`.
        #[arg(long)]
        line: Option<String>,
    },
    /// Middle convolution of a system along a line, or of a matrix tuple.
    Mc {
        #[command(flatten)]
        input: Input,
        /// Convolution parameter, e.g. `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Line direction for a system input, e.g. `0,1`.
        #[arg(long)]
        line: Option<String>,
    },
    /// Conditions (*) and (**), irreducibility, optional isomorphism test.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Second tuple or system to test for isomorphism.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Composition law `mc_lambda(mc_mu(V)) ≅ mc_{lambda+mu}(V)`.
    ComposeCheck {
        #[command(flatten)]
        input: Input,
        /// Convolution parameter, e.g. `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Parameter of the inner convolution.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Riemann-Hilbert hypotheses for middle convolution along a line.
    RhCheck {
        #[command(flatten)]
        input: Input,
        /// Convolution parameter, e.g. `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        line: String,
    },
    /// Free Lie algebra utilities.
    Freelie {
        #[command(subcommand)]
        command: FreelieCommand,
    },
}

#[derive(Subcommand)]
enum FreelieCommand {
    /// Checks the infinitesimal braid relations of the action on L_n.
    Verify {
        /// Number of generators.
        #[arg(long)]
        n: usize,
        /// Degree bound (verify) or exact degree (basis).
        #[arg(long)]
        degree: usize,
    },
    /// Lyndon basis of the degree-d part of L_n.
    Basis {
        /// Number of generators.
        #[arg(long)]
        n: usize,
        /// Degree bound (verify) or exact degree (basis).
        #[arg(long)]
        degree: usize,
    },
    /// Finds v with [x_i, v] = theta(sigma)(x_i).
    Witness {
        /// Bracket expression such as `[A13,A12]`.
        #[arg(long)]
        sigma: String,
        /// Generator index, 1-based.
        #[arg(long)]
        i: usize,
        /// Number of generators.
        #[arg(long)]
        n: usize,
    },
}

/// Result of a command: output value and whether a check failed.
struct Outcome {
    value: Value,
    text: String,
    failed_check: bool,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Self {
        Outcome { value, text, failed_check: false }
    }
}

fn read_input(input: &Input) -> Result<Value, Error> {
    let raw = match &input.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn read_path(p: &PathBuf) -> Result<Value, Error> {
    read_input(&Input { input: Some(p.clone()) })
}

/// An arrangement, or the arrangement of a system.
fn arrangement_of(v: &Value) -> Result<Arrangement, Error> {
    match v.get("arrangement") {
        Some(a) => arrangement_from_json(a),
        None => arrangement_from_json(v),
    }
}

fn is_tuple(v: &Value) -> bool {
    v.get("matrices").is_some()
}

fn lambda(text: &str) -> Result<Rational, Error> {
    parse_rational(text)
}

fn need_line(line: &Option<String>) -> Result<&str, Error> {
    line.as_deref()
        .ok_or_else(|| Error::InvalidInput("--line is required for system input".into()))
}

fn run(cli: &Cli, seed: u64) -> Result<Outcome, Error> {
    Ok(match &cli.command {
        Command::Closure { input, line } => {
            let a = arrangement_of(&read_input(input)?)?;
            let closed = y_closure(&a, &line_from_text(line)?)?;
            Outcome::ok(arrangement_to_json(&closed), text::arrangement(&closed))
        }
        Command::Check { input } => {
            let s = system_from_json(&read_input(input)?)?;
            let report = check_integrability(&s);
            Outcome {
                value: integrability_to_json(&report),
                text: text::integrability(&report),
                failed_check: !report.is_ok(),
            }
        }
        Command::Presentation { input } => {
            let p = presentation(&arrangement_of(&read_input(input)?)?);
            Outcome::ok(presentation_to_json(&p), text::presentation(&p))
        }
        Command::Convolve { input, lambda: l, line } => {
            let v = read_input(input)?;
            let l = lambda(l)?;
            if is_tuple(&v) {
                let c = dr_convolution(&tuple_from_json(&v)?, &l)?;
                let value = json!({ "lambda": format_lambda(&l), "dim": c[0].rows(), "matrices": tuple_to_json(&c)["matrices"] });
                Outcome::ok(value, text::tuple(&c))
            } else {
                let s = system_from_json(&v)?;
                let c = haraoka_convolution(&s, &line_from_text(need_line(line)?)?, &l)?;
                Outcome::ok(convolved_to_json(&c), text::system(&c.system, &c.order))
            }
        }
        Command::Mc { input, lambda: l, line } => {
            let v = read_input(input)?;
            let l = lambda(l)?;
            if is_tuple(&v) {
                let mc = dr_middle_convolution(&tuple_from_json(&v)?, &l)?;
                let value = json!({
                    "lambda": format_lambda(&l),
                    "dim": mc.dim(),
                    "k_dim": mc.quotient.k_space.dim(),
                    "l_dim": mc.quotient.l_space.dim(),
                    "direct_sum": mc.quotient.direct_sum,
                    "matrices": tuple_to_json(&mc.matrices)["matrices"],
                });
                Outcome::ok(value, text::tuple(&mc.matrices))
            } else {
                let s = system_from_json(&v)?;
                let mc = haraoka_middle_convolution(&s, &line_from_text(need_line(line)?)?, &l)?;
                Outcome::ok(middle_to_json(&mc), text::system(&mc.system, &mc.conv.order))
            }
        }
        Command::Analyze { input, against } => {
            let a = tuple_from_json(&read_input(input)?)?;
            let star = check_star_conditions(&a)?;
            let irreducible = is_irreducible(&a)?;
            let mut value = json!({ "conditions": star_report_to_json(&star), "irreducible": irreducible });
            let mut iso = None;
            if let Some(p) = against {
                let b = tuple_from_json(&read_path(p)?)?;
                let r = are_isomorphic(&a, &b, seed)?;
                value["isomorphism"] = iso_to_json(&r);
                iso = Some(r);
            }
            let text = text::analysis(&star, irreducible, iso.as_ref());
            Outcome::ok(value, text)
        }
        Command::ComposeCheck { input, lambda: l, mu } => {
            let a = tuple_from_json(&read_input(input)?)?;
            let r = composition_harness(&a, &lambda(l)?, &lambda(mu)?)?;
            Outcome::ok(composition_to_json(&r), text::composition(&r))
        }
        Command::RhCheck { input, lambda: l, line } => {
            let s: PfaffianSystem = system_from_json(&read_input(input)?)?;
            let r = rh_hypotheses(&s, &line_from_text(line)?, &lambda(l)?)?;
            Outcome::ok(rh_to_json(&r), text::rh(&r))
        }
        Command::Freelie { command } => match command {
            FreelieCommand::Verify { n, degree } => {
                let c = verify_braid_relations(*n, *degree)?;
                let text = match &c.violation {
                    None => "ok".to_string(),
                    Some(v) => format!("violated: {} on {}", v.relation, word_to_string(&v.element)),
                };
                Outcome { value: braid_check_to_json(&c), text, failed_check: !c.is_ok() }
            }
            FreelieCommand::Basis { n, degree } => {
                let words: Vec<String> =
                    lyndon_basis(*n, *degree)?.iter().map(|w| word_to_string(w)).collect();
                let text = words.join("\n");
                Outcome::ok(json!({ "n": n, "degree": degree, "dim": words.len(), "words": words }), text)
            }
            FreelieCommand::Witness { sigma, i, n } => {
                let w = adjoint_witness(&DkWord::parse(sigma)?, *i, *n)?;
                Outcome::ok(lie_element_to_json(&w), w.to_string())
            }
        },
    })
}

fn format_lambda(l: &Rational) -> Value {
    Value::String(mcvlie::exact::format_rational(l))
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 1,
        ErrorKind::Precondition => 2,
        ErrorKind::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            println!("{}", json!({ "error": e.kind().to_string(), "kind": "input" }));
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let seed = match std::env::var("MCVLIE_SEED") {
        Ok(s) => match s.trim().parse() {
            Ok(v) => v,
            Err(_) => {
                println!("{}", json!({ "error": format!("MCVLIE_SEED is not an integer: `{s}`"), "kind": "input" }));
                return ExitCode::from(1);
            }
        },
        Err(_) => cli.seed.unwrap_or(DEFAULT_SEED),
    };
    match run(&cli, seed) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.value).expect("JSON values serialize")
                ),
                Format::Text => println!("{}", out.text.trim_end()),
            }
            if out.failed_check {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::Input => "input",
                ErrorKind::Precondition => "precondition",
                ErrorKind::Internal => "internal",
            };
            println!("{}", json!({ "error": e.to_string(), "kind": kind }));
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
