//! The `srq` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (pole, point outside the
//! ball, failed verification), 2 on a usage or parse error.

pub mod expr;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::fractional::{self, QuaternionMatrix2};
use crate::geometry;
use crate::rational::RegularQuotient;
use crate::tolerance::Tolerances;
use crate::verify::{self, SampleConfig, Suite};

pub use expr::{parse_polynomial, parse_quaternion};
use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(name = "srq", version, about = "Slice regular quaternionic functions")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
struct GlobalArgs {
    /// Seed for randomized verification
    #[arg(long, global = true, env = "SRQ_SEED", default_value_t = 0)]
    seed: u64,
    /// Samples per verification suite
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SAMPLES)]
    samples: usize,
    /// Inequality tolerance (positive)
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV, quaternions flattened to w,x,y,z
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a polynomial, or the quotient den^-* * f, at a point
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Denominator of a regular quotient
        #[arg(long, allow_hyphen_values = true)]
        den: Option<String>,
        /// Use the right quotient f * den^-*
        #[arg(long, requires = "den")]
        right: bool,
    },
    /// Star product f * g
    Star {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// The regular quotient den^-* * num (or num * den^-*), optionally evaluated
    Quotient {
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long)]
        right: bool,
        /// Evaluate directly and through the change of variables T_f
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Regular Moebius map (1 - q conj(q0))^-* * (q - q0) u at a point
    Mobius {
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Evaluate the classical map v^-1 (1 - q conj(q0))^-1 (q - q0) u instead
        #[arg(long)]
        classical: bool,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        v: String,
    },
    /// Poincare distance between two points of the unit ball
    Distance {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
    },
    /// Spherical expansion coefficients A_0..A_n
    Expand {
        /// Polynomial to expand by iterated remainders
        #[arg(long, allow_hyphen_values = true, conflicts_with = "moebius", required_unless_present = "moebius")]
        f: Option<String>,
        /// Expansion center (with --f)
        #[arg(long, allow_hyphen_values = true, requires = "f")]
        at: Option<String>,
        /// Closed-form coefficients of the regular Moebius map with this center
        #[arg(long, allow_hyphen_values = true)]
        moebius: Option<String>,
        #[arg(long, default_value_t = 5)]
        max_index: usize,
    },
    /// Run a verification suite, or `all`
    Verify {
        /// schwarz-pick, zero-case, modulus-product, reg-preservation, slice-regularity or all
        suite: String,
    },
    /// Recover (q0, u) from an Sp(1,1) matrix [[a, c], [b, d]]
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}

fn tolerances(global: &GlobalArgs) -> Result<Tolerances> {
    match &global.tol {
        None => Ok(Tolerances::default()),
        Some(text) => {
            let value: f64 = text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("tolerance '{text}' is not a number")))?;
            Tolerances::default().with_inequality(value)
        }
    }
}

/// Returns the rendered output and whether the command succeeded.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let g = &cli.global;
    let tolerances = tolerances(g)?;
    let format = if g.json {
        Format::Json
    } else if g.csv {
        Format::Csv
    } else {
        Format::Pretty
    };
    let out = Output::new(format);
    match &cli.command {
        Command::Eval { f, at, den, right } => {
            let num = parse_polynomial(f)?;
            let q = parse_quaternion(at)?;
            let value = match den {
                None => num.evaluate(q),
                Some(den) => quotient(parse_polynomial(den)?, num, *right)?.evaluate(q)?,
            };
            Ok((out.quaternion("value", value), true))
        }
        Command::Star { f, g } => {
            let product = parse_polynomial(f)?.star(&parse_polynomial(g)?);
            Ok((out.polynomial(&product), true))
        }
        Command::Quotient { den, num, right, at } => {
            let quotient = quotient(parse_polynomial(den)?, parse_polynomial(num)?, *right)?;
            match at {
                None => Ok((out.quotient(&quotient), true)),
                Some(at) => {
                    let q = parse_quaternion(at)?;
                    let direct = quotient.evaluate(q)?;
                    let transformed = quotient.eval_via_transform(q)?;
                    Ok((out.quaternions(&[("direct", direct), ("via_transform", transformed)]), true))
                }
            }
        }
        Command::Mobius { q0, u, at, classical, v } => {
            let (q0, u, q) = (parse_quaternion(q0)?, parse_quaternion(u)?, parse_quaternion(at)?);
            let value = if *classical {
                geometry::classical_moebius(q0, u, parse_quaternion(v)?, q)?
            } else {
                geometry::regular_moebius(q0, u, q)?
            };
            Ok((out.quaternion("value", value), true))
        }
        Command::Distance { q1, q2 } => {
            let d = geometry::poincare_distance(parse_quaternion(q1)?, parse_quaternion(q2)?)?;
            Ok((out.real("distance", d), true))
        }
        Command::Expand { f, at, moebius, max_index } => {
            let expansion = match (f, moebius) {
                (Some(f), _) => {
                    let center = at
                        .as_deref()
                        .ok_or_else(|| Error::Parse("--f needs an expansion center --at".into()))?;
                    parse_polynomial(f)?.spherical_expansion(parse_quaternion(center)?, *max_index)?
                }
                (None, Some(q0)) => geometry::moebius_expansion_coefficients(parse_quaternion(q0)?, *max_index)?,
                (None, None) => return Err(Error::Parse("expand needs --f or --moebius".into())),
            };
            Ok((out.expansion(&expansion), true))
        }
        Command::Verify { suite } => {
            let cfg = SampleConfig { seed: g.seed, samples: g.samples, tolerances };
            if suite == "all" {
                let report = verify::verify_all(&cfg);
                Ok((out.aggregate(&report), report.pass))
            } else {
                let report = verify::run_suite(suite.parse::<Suite>()?, &cfg);
                Ok((out.report(&report), report.pass))
            }
        }
        Command::NormalForm { a, b, c, d } => {
            let m = QuaternionMatrix2::from_rows(
                parse_quaternion(a)?,
                parse_quaternion(c)?,
                parse_quaternion(b)?,
                parse_quaternion(d)?,
            );
            let nf = fractional::normal_form(&m)?;
            Ok((out.quaternions(&[("q0", nf.q0), ("u", nf.u)]), true))
        }
    }
}

fn quotient(den: crate::series::RegularPolynomial, num: crate::series::RegularPolynomial, right: bool) -> Result<RegularQuotient> {
    if right {
        RegularQuotient::right(num, den)
    } else {
        RegularQuotient::left(den, num)
    }
}
