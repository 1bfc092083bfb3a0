//! Command-line front end: parses `.lie` files, runs the decision
//! procedure and its supporting computations, and emits text or JSON
//! reports. Exit codes: 0 = yes/found/ok, 2 = no/none/failed check,
//! 1 = any error.

use nilsasakian::cechain::{adapted_basis, chevalley_eilenberg, cohomology, ExteriorElement};
use nilsasakian::contact::{find_contact_form, is_contact_form};
use nilsasakian::decider::{decide_sasakian_with, proof_trace_with, SearchParams};
use nilsasakian::exactlin::Rational;
use nilsasakian::lang::{parse_algebra, LangError, ParsedAlgebra};
use nilsasakian::report::{self, ContactOutcome, Report};
use nilsasakian::tievsky::standard_heisenberg_morphism;
use num_bigint::BigInt;
use num_traits::Zero;
use std::process::ExitCode;

const USAGE: &str = "\
usage: nilsasakian <command> [options]

commands:
  check FILE            decide the Sasakian question (exit 0 yes, 2 no)
  trace FILE            step-by-step obstruction trace
  cohomology FILE       betti numbers and representatives (dim <= 9)
  adapted-basis FILE    adapted dual basis and gamma table
  contact FILE          contact form test or search
                        [--form C1,..,Cn | --search] (default: --search)
  tievsky-verify --m M  verify the standard comparison morphism (m <= 4)

options:
  --json                machine-readable report on stdout
  --seed S              search seed (default 0)
  --trials N            search trials (default 64)
";

/// Full cohomology builds the 2^n-dimensional exterior algebra; keep it
/// at the scale the exact kernel is designed for.
const MAX_COHOMOLOGY_DIM: usize = 9;
const MAX_TIEVSKY_M: usize = 4;

struct Options {
    json: bool,
    seed: u64,
    trials: usize,
    form: Option<String>,
    m: Option<usize>,
    positional: Vec<String>,
}

fn parse_options(args: &[String]) -> Result<Options, String> {
    let mut options = Options {
        json: false,
        seed: 0,
        trials: 64,
        form: None,
        m: None,
        positional: Vec::new(),
    };
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--json" => options.json = true,
            "--search" => {} // search is the default when --form is absent
            "--seed" => {
                let value = iter.next().ok_or("--seed requires a value")?;
                options.seed = value
                    .parse()
                    .map_err(|_| format!("invalid seed '{value}'"))?;
            }
            "--trials" => {
                let value = iter.next().ok_or("--trials requires a value")?;
                options.trials = value
                    .parse()
                    .map_err(|_| format!("invalid trial count '{value}'"))?;
            }
            "--form" => {
                let value = iter.next().ok_or("--form requires coefficients")?;
                options.form = Some(value.clone());
            }
            "--m" => {
                let value = iter.next().ok_or("--m requires a value")?;
                options.m = Some(value.parse().map_err(|_| format!("invalid m '{value}'"))?);
            }
            other if other.starts_with("--") => return Err(format!("unknown flag '{other}'")),
            other => options.positional.push(other.to_string()),
        }
    }
    Ok(options)
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let parse_int = |s: &str| -> Result<BigInt, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("invalid rational component '{s}'"))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den <= BigInt::zero() {
                return Err(format!("denominator must be positive in '{text}'"));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

fn load(path: &str) -> Result<(String, ParsedAlgebra), (String, Option<LangError>)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| (format!("cannot read {path}: {e}"), None))?;
    match parse_algebra(&text) {
        Ok(parsed) => Ok((text, parsed)),
        Err(e) => Err((format!("{path}: {e}"), Some(e))),
    }
}

fn run(command: &str, options: &Options) -> Report {
    let params = SearchParams {
        trials: options.trials,
        seed: options.seed,
    };
    let fail =
        |message: String, lang: Option<&LangError>| report::error_report(command, &message, lang);

    let needs_file = matches!(
        command,
        "check" | "trace" | "cohomology" | "adapted-basis" | "contact"
    );
    let loaded = if needs_file {
        let Some(path) = options.positional.get(1) else {
            return fail(format!("{command} requires a FILE argument"), None);
        };
        match load(path) {
            Ok(pair) => Some(pair),
            Err((message, lang)) => return fail(message, lang.as_ref()),
        }
    } else {
        None
    };

    match command {
        "check" => {
            let (text, parsed) = loaded.expect("file loaded");
            match decide_sasakian_with(&parsed.algebra, &params) {
                Ok(verdict) => report::check_report(
                    &parsed.name,
                    text.as_bytes(),
                    &parsed.algebra,
                    &verdict,
                    options.seed,
                ),
                Err(e) => fail(e.to_string(), None),
            }
        }
        "trace" => {
            let (text, parsed) = loaded.expect("file loaded");
            let trace = proof_trace_with(&parsed.algebra, &params);
            report::trace_report(
                &parsed.name,
                text.as_bytes(),
                &parsed.algebra,
                &trace,
                options.seed,
            )
        }
        "cohomology" => {
            let (text, parsed) = loaded.expect("file loaded");
            if parsed.algebra.dim() > MAX_COHOMOLOGY_DIM {
                return fail(
                    format!(
                        "cohomology is limited to dim <= {MAX_COHOMOLOGY_DIM} (got {})",
                        parsed.algebra.dim()
                    ),
                    None,
                );
            }
            let ce = chevalley_eilenberg(&parsed.algebra);
            let h = cohomology(&ce.cdga);
            report::cohomology_report(&parsed.name, text.as_bytes(), &parsed.algebra, &ce.cdga, &h)
        }
        "adapted-basis" => {
            let (text, parsed) = loaded.expect("file loaded");
            match adapted_basis(&parsed.algebra) {
                Ok(adapted) => {
                    report::adapted_report(&parsed.name, text.as_bytes(), &parsed.algebra, &adapted)
                }
                Err(e) => fail(e.to_string(), None),
            }
        }
        "contact" => {
            let (text, parsed) = loaded.expect("file loaded");
            let outcome = if let Some(form_text) = &options.form {
                let coefficients: Result<Vec<Rational>, String> =
                    form_text.split(',').map(parse_rational).collect();
                let coefficients = match coefficients {
                    Ok(c) => c,
                    Err(e) => return fail(e, None),
                };
                if coefficients.len() != parsed.algebra.dim() {
                    return fail(
                        format!(
                            "--form needs {} coefficients, got {}",
                            parsed.algebra.dim(),
                            coefficients.len()
                        ),
                        None,
                    );
                }
                let alpha = ExteriorElement::from_covector_coeffs(&coefficients);
                match is_contact_form(&parsed.algebra, &alpha) {
                    Ok(Some(certificate)) => ContactOutcome::Certificate(certificate),
                    Ok(None) => ContactOutcome::NotContact,
                    Err(e) => return fail(e.to_string(), None),
                }
            } else {
                match find_contact_form(&parsed.algebra, options.trials, options.seed) {
                    Ok(search) => ContactOutcome::Search(search),
                    Err(e) => return fail(e.to_string(), None),
                }
            };
            report::contact_report(
                &parsed.name,
                text.as_bytes(),
                &parsed.algebra,
                &outcome,
                options.seed,
            )
        }
        "tievsky-verify" => {
            let Some(m) = options.m else {
                return fail("tievsky-verify requires --m M".to_string(), None);
            };
            if m == 0 || m > MAX_TIEVSKY_M {
                return fail(format!("--m must be between 1 and {MAX_TIEVSKY_M}"), None);
            }
            let morphism = match standard_heisenberg_morphism(m) {
                Ok(f) => f,
                Err(e) => return fail(e.to_string(), None),
            };
            match morphism.is_quasi_iso() {
                Ok(quasi) => report::tievsky_report(m, &quasi),
                Err(e) => fail(format!("morphism verification failed: {e}"), None),
            }
        }
        other => fail(format!("unknown command '{other}'\n\n{USAGE}"), None),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let options = match parse_options(&args) {
        Ok(options) => options,
        Err(message) => {
            eprintln!("error: {message}\n\n{USAGE}");
            return ExitCode::from(1);
        }
    };
    let Some(command) = options.positional.first().cloned() else {
        eprintln!("{USAGE}");
        return ExitCode::from(1);
    };
    let report = run(&command, &options);
    if options.json {
        print!("{}", report.emit(true));
    } else if report.exit_code == 1 {
        eprint!("{}", report.emit(false));
    } else {
        print!("{}", report.emit(false));
    }
    ExitCode::from(report.exit_code as u8)
}
