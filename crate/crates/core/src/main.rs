//! Command-line front door: one subcommand per library operation,
//! machine-readable JSON for CI and plain text for exploration.
//!
//! Exit status: 0 for verified / zero-residual outcomes, 1 for a
//! nonzero residual or failed check (with the witness printed), 2 for
//! usage or parameter errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use raabe::algebra::{Polynomial, Rational};
use raabe::bernoulli::bernoulli_poly;
use raabe::fourier::{
    self, builtin_spec, coeff_residual_check, fourier_eval_with_cap, log_sin_check_with_terms,
    FourierError,
};
use raabe::probes::{
    dense_approximate, left_riemann_sum, periodic_decompose, scaling_limit_probe_poly,
    SampledFunction, DEFAULT_QUAD_PANELS,
};
use raabe::report::ResidualReport;
use raabe::residual::{
    check_derivative_commutation, check_modulus_composition, normalize_lowest_coeff,
    raabe_residual, solution_kernel, CompositionCheck, RaabeParams,
};

const ENV_TRUNCATION_CAP: &str = "RAABE_TRUNCATION_CAP";
const MIN_TRUNCATION_CAP: u64 = 1_000;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "raabe",
    version,
    about = "Exact Bernoulli polynomials and the multiplication functional equation"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Numeric tolerance for series evaluation and numeric checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact coefficients of B_n.
    Bernoulli {
        #[arg(long)]
        n: usize,
    },
    /// Check that B_n solves the equation with multiplier a.
    VerifyRaabe {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
    },
    /// Check the symmetric two-modulus identity for B_n.
    VerifyCarlitz {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Exact kernel of the residual operator on degree <= deg.
    Kernel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        deg: usize,
    },
    /// Check the derivative commutation identity on all monomials up to deg.
    Lemma2 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 8)]
        deg: usize,
    },
    /// Check that solving at a and b implies solving at a*b.
    ///
    /// Uses B_n unless --deg selects the monomial X^deg instead.
    Lemma3 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        deg: Option<usize>,
    },
    /// Evaluate a named coefficient spec's series at x.
    FourierEval {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: f64,
    },
    /// Exact coefficient relation check u_{ak} = u_k, v_{ak} = v_k.
    CoeffResidual {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        kmax: u64,
    },
    /// Compare log(2|sin(pi x)|) against its cosine series.
    LogSinCheck {
        #[arg(long)]
        x: f64,
        /// Number of series terms (defaults to 2,000,000).
        #[arg(long)]
        depth: Option<u64>,
    },
    /// Riemann-sum limit of the rescaled equation for f = B_n.
    RiemannLimit {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        x: f64,
        /// Largest exponent k in the tabulation.
        #[arg(long)]
        depth: u32,
    },
    /// Approximate a real by r/(a^s - 1) with s = depth.
    DenseApprox {
        #[arg(long)]
        value: f64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        depth: u32,
    },
    /// Split lambda*B_n + periodized B_n back into its parts.
    Decompose {
        #[arg(long)]
        n: u32,
        /// The weight lambda used to build the test function.
        #[arg(long)]
        value: f64,
        /// Quadrature panels (defaults to 1024).
        #[arg(long)]
        depth: Option<u32>,
    },
}

struct Outcome {
    status: &'static str,
    exit: i32,
    witness: Option<String>,
    payload: Map<String, Value>,
    text: Vec<String>,
}

impl Outcome {
    fn ok() -> Self {
        Outcome {
            status: "ok",
            exit: 0,
            witness: None,
            payload: Map::new(),
            text: Vec::new(),
        }
    }

    fn failed(status: &'static str) -> Self {
        Outcome {
            status,
            exit: 1,
            ..Outcome::ok()
        }
    }

    fn from_report(report: &ResidualReport) -> Self {
        let mut out = if report.is_zero {
            Outcome::ok()
        } else {
            Outcome::failed("nonzero-residual")
        };
        out.witness = report.witness.clone();
        out.text.push(report.to_string());
        out
    }

    fn put(&mut self, key: &str, value: Value) -> &mut Self {
        self.payload.insert(key.to_string(), value);
        self
    }

    fn say(&mut self, line: impl Into<String>) -> &mut Self {
        self.text.push(line.into());
        self
    }
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

fn coeff_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(Rational::to_string).collect()
}

fn truncation_cap() -> u64 {
    match std::env::var(ENV_TRUNCATION_CAP) {
        Err(_) => fourier::DEFAULT_TRUNCATION_CAP,
        Ok(raw) => match raw.parse::<u64>() {
            Ok(cap) if cap >= MIN_TRUNCATION_CAP => cap,
            Ok(cap) => usage_error(format!(
                "{ENV_TRUNCATION_CAP}={cap} is below the minimum {MIN_TRUNCATION_CAP}"
            )),
            Err(_) => usage_error(format!("{ENV_TRUNCATION_CAP}={raw} is not an integer")),
        },
    }
}

fn fourier_usage_error(err: FourierError) -> ! {
    usage_error(err)
}

fn main() {
    let cli = Cli::parse();
    if !(cli.tol > 0.0) {
        usage_error("--tol must be positive");
    }
    let cap = truncation_cap();

    let (name, params, outcome) = run(&cli, cap);

    match cli.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("subcommand".into(), Value::String(name.into()));
            doc.insert("params".into(), params);
            doc.insert("status".into(), Value::String(outcome.status.into()));
            if let Some(w) = &outcome.witness {
                doc.insert("witness".into(), Value::String(w.clone()));
            }
            for (k, v) in outcome.payload {
                doc.insert(k, v);
            }
            println!("{}", Value::Object(doc));
        }
        Format::Text => {
            for line in &outcome.text {
                println!("{line}");
            }
            if let Some(w) = &outcome.witness {
                println!("witness: {w}");
            }
            println!("status: {}", outcome.status);
        }
    }
    std::process::exit(outcome.exit);
}

fn run(cli: &Cli, cap: u64) -> (&'static str, Value, Outcome) {
    match &cli.command {
        Command::Bernoulli { n } => {
            let poly = bernoulli_poly(*n);
            let mut out = Outcome::ok();
            out.put("n", json!(n));
            out.put("coeffs", json!(coeff_strings(&poly)));
            out.say(format!("B_{n} = {poly}"));
            ("bernoulli", json!({ "n": n }), out)
        }

        Command::VerifyRaabe { n, a } => {
            if *a < 1 {
                usage_error("--a must be at least 1");
            }
            let residual = raabe_residual(&bernoulli_poly(*n as usize), RaabeParams::new(*n, *a));
            let report =
                ResidualReport::symbolic(format!("multiplication equation, n={n}, a={a}"), residual.clone());
            let mut out = Outcome::from_report(&report);
            out.put("residual", json!(coeff_strings(&residual)));
            ("verify-raabe", json!({ "n": n, "a": a }), out)
        }

        Command::VerifyCarlitz { n, a, b } => {
            if *a < 1 || *b < 1 {
                usage_error("--a and --b must be at least 1");
            }
            let residual = raabe::residual::carlitz_residual(*n, *a, *b);
            let report = ResidualReport::symbolic(
                format!("two-modulus identity, n={n}, a={a}, b={b}"),
                residual.clone(),
            );
            let mut out = Outcome::from_report(&report);
            out.put("residual", json!(coeff_strings(&residual)));
            ("verify-carlitz", json!({ "n": n, "a": a, "b": b }), out)
        }

        Command::Kernel { n, a, deg } => {
            if *a < 2 {
                usage_error("--a must be at least 2");
            }
            let basis = solution_kernel(*n, *a, *deg);
            let expected: Vec<Polynomial> = if *deg >= *n as usize {
                vec![normalize_lowest_coeff(&bernoulli_poly(*n as usize))]
            } else {
                Vec::new()
            };
            let matches = basis == expected;
            let mut out = if matches {
                Outcome::ok()
            } else {
                Outcome::failed("unexpected-kernel")
            };
            out.put("dimension", json!(basis.len()));
            out.put(
                "basis",
                json!(basis.iter().map(coeff_strings).collect::<Vec<_>>()),
            );
            out.say(format!("kernel dimension {} on degree <= {deg}", basis.len()));
            for p in &basis {
                out.say(format!("  {p}"));
            }
            if !matches {
                out.witness = Some("kernel differs from the predicted span".into());
            }
            ("kernel", json!({ "n": n, "a": a, "deg": deg }), out)
        }

        Command::Lemma2 { n, a, deg } => {
            if *n < 1 {
                usage_error("--n must be at least 1 for the derivative identity");
            }
            if *a < 1 {
                usage_error("--a must be at least 1");
            }
            let params = RaabeParams::new(*n, *a);
            let mut failing = None;
            for j in 0..=*deg {
                let p = Polynomial::monomial(Rational::from_integer(1.into()), j);
                let report = check_derivative_commutation(&p, params);
                if !report.is_zero {
                    failing = Some((j, report));
                    break;
                }
            }
            let out = match failing {
                None => {
                    let mut out = Outcome::ok();
                    out.say(format!(
                        "derivative commutation holds on all monomials up to degree {deg}"
                    ));
                    out
                }
                Some((j, report)) => {
                    let mut out = Outcome::from_report(&report);
                    out.status = "identity-failed";
                    out.say(format!("first failing monomial: X^{j}"));
                    out
                }
            };
            ("lemma2", json!({ "n": n, "a": a, "deg": deg }), out)
        }

        Command::Lemma3 { n, a, b, deg } => {
            if *a < 1 || *b < 1 {
                usage_error("--a and --b must be at least 1");
            }
            let p = match deg {
                Some(d) => Polynomial::monomial(Rational::from_integer(1.into()), *d),
                None => bernoulli_poly(*n as usize),
            };
            let out = match check_modulus_composition(*n, *a, *b, &p) {
                CompositionCheck::HypothesisNotMet {
                    failing_modulus, ..
                } => {
                    let mut out = Outcome::ok();
                    out.status = "hypothesis-not-met";
                    out.say(format!(
                        "{p} does not solve the equation at multiplier {failing_modulus}; no conclusion"
                    ));
                    out
                }
                CompositionCheck::Concluded(report) => {
                    let mut out = Outcome::from_report(&report);
                    if let Some(poly) = report.residual_poly() {
                        out.put("residual", json!(coeff_strings(poly)));
                    }
                    out
                }
            };
            ("lemma3", json!({ "n": n, "a": a, "b": b, "deg": deg }), out)
        }

        Command::FourierEval { spec, n, x } => {
            let spec_obj = builtin_spec(spec, *n).unwrap_or_else(|e| fourier_usage_error(e));
            let eval = fourier_eval_with_cap(&spec_obj, *x, cli.tol, cap)
                .unwrap_or_else(|e| fourier_usage_error(e));
            let mut out = Outcome::ok();
            out.put("value", json!(eval.value));
            out.put("truncation_N", json!(eval.truncation_n));
            out.put("tail_bound", json!(eval.tail_bound));
            out.say(format!(
                "value {} after {} terms (tail bound {:e})",
                eval.value, eval.truncation_n, eval.tail_bound
            ));
            (
                "fourier-eval",
                json!({ "spec": spec, "n": n, "x": x, "tol": cli.tol }),
                out,
            )
        }

        Command::CoeffResidual { spec, n, a, kmax } => {
            if *a < 2 {
                usage_error("--a must be at least 2");
            }
            if kmax < a {
                usage_error("--kmax must be at least --a");
            }
            let spec_obj = builtin_spec(spec, *n).unwrap_or_else(|e| fourier_usage_error(e));
            let report = coeff_residual_check(&spec_obj, *a, *kmax);
            let mut out = Outcome::from_report(&report);
            if let Some(k) = report.mismatch_index() {
                out.put("witness_k", json!(k));
            }
            (
                "coeff-residual",
                json!({ "spec": spec, "n": n, "a": a, "kmax": kmax }),
                out,
            )
        }

        Command::LogSinCheck { x, depth } => {
            let terms = depth.unwrap_or(fourier::DEFAULT_LOG_SIN_TERMS);
            let report = log_sin_check_with_terms(*x, cli.tol, terms)
                .unwrap_or_else(|e| fourier_usage_error(e));
            let mut out = Outcome::from_report(&report);
            out.status = if report.is_zero { "ok" } else { "discrepancy" };
            (
                "log-sin-check",
                json!({ "x": x, "depth": terms, "tol": cli.tol }),
                out,
            )
        }

        Command::RiemannLimit { n, a, x, depth } => {
            if *a < 2 {
                usage_error("--a must be at least 2");
            }
            if *depth < 1 {
                usage_error("--depth must be at least 1");
            }
            let poly = bernoulli_poly(*n as usize);
            let ks: Vec<u32> = (1..=*depth).collect();
            let probe = scaling_limit_probe_poly(&poly, *n, *a, *x, &ks);
            let f = SampledFunction::from_polynomial("B_n", &poly);
            let riemann = left_riemann_sum(&f, *a, *x, *depth)
                .unwrap_or_else(|e| usage_error(e));
            let mut out = if probe.within_bound() {
                Outcome::ok()
            } else {
                Outcome::failed("limit-off-target")
            };
            out.put("observed", json!(probe.observed));
            out.put("expected", json!(probe.expected));
            out.put("bound", json!(probe.bound));
            out.put("riemann_sum", json!(riemann));
            out.say(format!(
                "scaled value {} vs exact integral {} (allowance {:e}); left sum {}",
                probe.observed,
                probe.expected.unwrap_or(f64::NAN),
                probe.bound,
                riemann
            ));
            (
                "riemann-limit",
                json!({ "n": n, "a": a, "x": x, "depth": depth }),
                out,
            )
        }

        Command::DenseApprox { value, a, depth } => {
            if *a < 2 {
                usage_error("--a must be at least 2");
            }
            if *depth < 1 {
                usage_error("--depth must be at least 1");
            }
            if !value.is_finite() {
                usage_error("--value must be finite");
            }
            let d = dense_approximate(*value, *a, *depth);
            let mut out = Outcome::ok();
            out.put("r", json!(d.r.to_string()));
            out.put("value", json!(d.value.to_string()));
            out.put("error", json!(d.error_f64()));
            out.put("boundary", json!(d.boundary));
            out.say(format!(
                "{value} ~ {} = {}; error {:e}{}",
                d.value,
                d.value_f64(),
                d.error_f64(),
                if d.boundary { " (boundary case)" } else { "" }
            ));
            (
                "dense-approx",
                json!({ "value": value, "a": a, "depth": depth }),
                out,
            )
        }

        Command::Decompose { n, value, depth } => {
            if *n < 1 {
                usage_error("--n must be at least 1");
            }
            let panels = depth.unwrap_or(DEFAULT_QUAD_PANELS);
            if panels < 4 {
                usage_error("--depth must be at least 4 panels");
            }
            let lambda = *value;
            let poly = bernoulli_poly(*n as usize);
            let f = {
                let poly = poly.clone();
                SampledFunction::new("weighted mixture", move |x| {
                    lambda * poly.eval_f64(x) + poly.eval_f64(x - x.floor())
                })
            };
            let d = periodic_decompose(&f, *n, panels);
            let allowance = 10.0 * d.sigma.bound + cli.tol;
            let sigma_ok = (d.sigma.observed - lambda).abs() <= allowance;
            let defect_ok = d.periodicity.observed <= allowance;
            let mut out = if sigma_ok && defect_ok {
                Outcome::ok()
            } else {
                Outcome::failed("decomposition-off-target")
            };
            out.put("sigma", json!(d.sigma.observed));
            out.put("sigma_error_estimate", json!(d.sigma.bound));
            out.put("periodicity_defect", json!(d.periodicity.observed));
            out.say(format!(
                "sigma {} (target {lambda}), periodicity defect {:e}",
                d.sigma.observed, d.periodicity.observed
            ));
            if !sigma_ok {
                out.witness = Some(format!(
                    "sigma {} misses {lambda} beyond {allowance:e}",
                    d.sigma.observed
                ));
            } else if !defect_ok {
                out.witness = Some(format!(
                    "periodicity defect {:e} beyond {allowance:e}",
                    d.periodicity.observed
                ));
            }
            (
                "decompose",
                json!({ "n": n, "value": value, "depth": panels }),
                out,
            )
        }
    }
}
