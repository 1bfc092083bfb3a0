//! Report assembly: one JSON document (schema-versioned, key-sorted,
//! newline-terminated) and one human-readable text rendering per command.
//!
//! JSON objects are built on `serde_json`'s default BTree-backed maps, so
//! keys serialize sorted and identical inputs with identical seeds give
//! byte-identical output.

use crate::cechain::{AdaptedBasis, CdgaFinite, Cohomology, QuasiIsoReport};
use crate::contact::{ContactCertificate, ContactSearch};
use crate::decider::{ProofTrace, Verdict};
use crate::exactlin::{format_rational, QMatrix, Rational};
use crate::lang::LangError;
use crate::liealg::LieAlgebra;
use serde_json::{json, Value};

pub const SCHEMA: &str = "nilsasakian-report/1";

/// A finished report: machine form and text form.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Process exit code under the 0 = yes / 2 = no / 1 = error contract.
    pub exit_code: i32,
}

impl Report {
    /// Serialized output for one mode; JSON is newline-terminated.
    pub fn emit(&self, json_mode: bool) -> String {
        if json_mode {
            let mut s = serde_json::to_string_pretty(&self.json).expect("valid JSON tree");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

/// FNV-1a over the input bytes; stable content digest for reports.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{hash:016x}")
}

fn envelope(command: &str, input_name: &str, input_bytes: &[u8], dim: usize) -> Value {
    json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input": {
            "name": input_name,
            "digest": digest(input_bytes),
            "dim": dim,
        },
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    let (Value::Object(target), Value::Object(source)) = (&mut base, extra) else {
        unreachable!("envelope and payload are objects");
    };
    target.extend(source);
    base
}

fn rational_str(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_str).collect())
}

fn matrix_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn certificate_json(c: &ContactCertificate) -> Value {
    json!({
        "form": c.form.to_string(),
        "reeb": vector_json(&c.reeb),
        "top_value": rational_str(&c.top_value),
    })
}

fn trace_json(trace: &ProofTrace) -> Value {
    let checkpoints: Vec<Value> = trace
        .checkpoints
        .iter()
        .map(|c| {
            let values: serde_json::Map<String, Value> = c
                .values
                .iter()
                .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                .collect();
            json!({
                "name": c.name,
                "statement": c.statement,
                "passed": c.passed,
                "values": values,
            })
        })
        .collect();
    json!({ "checkpoints": checkpoints, "passed": trace.passed })
}

fn trace_text(trace: &ProofTrace) -> String {
    let mut out = String::new();
    for c in &trace.checkpoints {
        let mark = if c.passed { "pass" } else { "FAIL" };
        let values: Vec<String> = c.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        out.push_str(&format!(
            "[{mark}] {} — {} ({})\n",
            c.name,
            c.statement,
            values.join(", ")
        ));
    }
    out.push_str(if trace.passed {
        "all checkpoints passed\n"
    } else {
        "stopped at the first failing checkpoint\n"
    });
    out
}

pub fn check_report(
    input_name: &str,
    input_bytes: &[u8],
    l: &LieAlgebra,
    verdict: &Verdict,
    seed: u64,
) -> Report {
    let base = merge(
        envelope("check", input_name, input_bytes, l.dim()),
        json!({ "seed": seed }),
    );
    match verdict {
        Verdict::Yes {
            m,
            witness,
            certificate,
        } => {
            let json = merge(
                base,
                json!({
                    "answer": "yes",
                    "m": m,
                    "basis_change": matrix_json(&witness.basis_change),
                    "certificate": certificate_json(certificate),
                }),
            );
            let text = format!(
                "verdict: yes — isomorphic to h(1, {m})\nbasis change (columns are the new basis):\n{}contact form: {}\nReeb element: {}\ntop value: {}\n",
                witness.basis_change,
                certificate.form,
                vector_text(&certificate.reeb),
                format_rational(&certificate.top_value),
            );
            Report {
                json,
                text,
                exit_code: 0,
            }
        }
        Verdict::No { obstruction } => {
            let json = merge(
                base,
                json!({
                    "answer": "no",
                    "obstruction": {
                        "name": obstruction.name(),
                        "detail": obstruction.describe(),
                    },
                }),
            );
            let text = format!(
                "verdict: no\nobstruction: {} — {}\n",
                obstruction.name(),
                obstruction.describe()
            );
            Report {
                json,
                text,
                exit_code: 2,
            }
        }
    }
}

pub fn trace_report(
    input_name: &str,
    input_bytes: &[u8],
    l: &LieAlgebra,
    trace: &ProofTrace,
    seed: u64,
) -> Report {
    let json = merge(
        merge(
            envelope("trace", input_name, input_bytes, l.dim()),
            json!({ "seed": seed }),
        ),
        trace_json(trace),
    );
    Report {
        json,
        text: trace_text(trace),
        exit_code: if trace.passed { 0 } else { 2 },
    }
}

pub fn cohomology_report(
    input_name: &str,
    input_bytes: &[u8],
    l: &LieAlgebra,
    cdga: &CdgaFinite,
    cohomology: &Cohomology,
) -> Report {
    let representatives: Vec<Value> = cohomology
        .representatives
        .iter()
        .enumerate()
        .map(|(p, reps)| {
            Value::Array(
                reps.iter()
                    .map(|r| {
                        json!({
                            "coefficients": vector_json(r),
                            "class": cdga.format_degree_vector(p, r),
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    let nilpotent = l.is_nilpotent();
    let json = merge(
        envelope("cohomology", input_name, input_bytes, l.dim()),
        json!({
            "betti": cohomology.betti,
            "euler_characteristic": cohomology.euler_characteristic(),
            "nilpotent": nilpotent,
            "representatives": representatives,
        }),
    );
    let mut text = String::new();
    if !nilpotent {
        // the complex is still well defined, but it no longer computes
        // the cohomology of a compact nilmanifold
        text.push_str("note: the algebra is not nilpotent\n");
    }
    text.push_str(&format!("betti: {:?}\n", cohomology.betti));
    for (p, reps) in cohomology.representatives.iter().enumerate() {
        let classes: Vec<String> = reps
            .iter()
            .map(|r| cdga.format_degree_vector(p, r))
            .collect();
        text.push_str(&format!(
            "H^{p}: {}\n",
            if classes.is_empty() {
                "0".to_string()
            } else {
                classes.join(", ")
            }
        ));
    }
    Report {
        json,
        text,
        exit_code: 0,
    }
}

pub fn adapted_report(
    input_name: &str,
    input_bytes: &[u8],
    l: &LieAlgebra,
    adapted: &AdaptedBasis,
) -> Report {
    let forms: Vec<Value> = adapted.forms.iter().map(|f| vector_json(f)).collect();
    let gamma: Vec<Value> = adapted
        .gamma
        .iter()
        .map(|(gl, gi, gj, c)| {
            json!({
                "l": gl + 1,
                "i": gi + 1,
                "j": gj + 1,
                "value": rational_str(c),
            })
        })
        .collect();
    let json = merge(
        envelope("adapted-basis", input_name, input_bytes, l.dim()),
        json!({ "k": adapted.k, "forms": forms, "gamma": gamma }),
    );
    let mut text = format!("k = {} (first {} forms closed)\n", adapted.k, adapted.k - 1);
    for (i, f) in adapted.forms.iter().enumerate() {
        text.push_str(&format!("form {}: {}\n", i + 1, vector_text(f)));
    }
    if adapted.gamma.is_empty() {
        text.push_str("gamma: all zero\n");
    } else {
        for (gl, gi, gj, c) in &adapted.gamma {
            text.push_str(&format!(
                "gamma[{}]^({},{}) = {}\n",
                gl + 1,
                gi + 1,
                gj + 1,
                format_rational(c)
            ));
        }
    }
    Report {
        json,
        text,
        exit_code: 0,
    }
}

pub fn contact_report(
    input_name: &str,
    input_bytes: &[u8],
    l: &LieAlgebra,
    outcome: &ContactOutcome,
    seed: u64,
) -> Report {
    let base = merge(
        envelope("contact", input_name, input_bytes, l.dim()),
        json!({ "seed": seed }),
    );
    match outcome {
        ContactOutcome::Certificate(c) => Report {
            json: merge(
                base,
                json!({ "found": true, "certificate": certificate_json(c) }),
            ),
            text: format!(
                "contact form: {}\nReeb element: {}\ntop value: {}\n",
                c.form,
                vector_text(&c.reeb),
                format_rational(&c.top_value)
            ),
            exit_code: 0,
        },
        ContactOutcome::NotContact => Report {
            json: merge(base, json!({ "found": false, "conclusive": true, "reason": "the given form is not contact" })),
            text: "not a contact form\n".to_string(),
            exit_code: 2,
        },
        ContactOutcome::Search(ContactSearch::Found(c)) => Report {
            json: merge(
                base,
                json!({ "found": true, "certificate": certificate_json(c) }),
            ),
            text: format!(
                "contact form found: {}\nReeb element: {}\ntop value: {}\n",
                c.form,
                vector_text(&c.reeb),
                format_rational(&c.top_value)
            ),
            exit_code: 0,
        },
        ContactOutcome::Search(ContactSearch::NoneConclusive { reason }) => Report {
            json: merge(
                base,
                json!({ "found": false, "conclusive": true, "reason": reason.to_string() }),
            ),
            text: format!("no contact form exists (conclusive): {reason}\n"),
            exit_code: 2,
        },
        ContactOutcome::Search(ContactSearch::NoneProbabilistic { trials }) => Report {
            json: merge(
                base,
                json!({
                    "found": false,
                    "conclusive": false,
                    "reason": format!("no contact form found after {trials} trials; existence is not excluded"),
                    "trials": trials,
                }),
            ),
            text: format!(
                "no contact form found after {trials} trials (NOT conclusive: existence is not excluded)\n"
            ),
            exit_code: 2,
        },
    }
}

/// What the `contact` command produced: a direct test or a search.
#[derive(Debug, Clone)]
pub enum ContactOutcome {
    Certificate(ContactCertificate),
    NotContact,
    Search(ContactSearch),
}

pub fn tievsky_report(m: usize, quasi: &QuasiIsoReport) -> Report {
    let degrees: Vec<Value> = quasi
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "betti_source": d.betti_source,
                "betti_target": d.betti_target,
                "induced_rank": d.induced_rank,
                "bijective": d.bijective(),
            })
        })
        .collect();
    let input = format!("tievsky-verify --m {m}");
    let json = merge(
        envelope("tievsky-verify", &input, input.as_bytes(), 2 * m + 1),
        json!({
            "m": m,
            "morphism_ok": true,
            "quasi_iso": quasi.quasi_iso,
            "degrees": degrees,
        }),
    );
    let mut text = format!(
        "standard morphism for m = {m}: morphism ok, quasi-isomorphism = {}\n",
        quasi.quasi_iso
    );
    for d in &quasi.degrees {
        text.push_str(&format!(
            "degree {}: betti {} -> {}, induced rank {}\n",
            d.degree, d.betti_source, d.betti_target, d.induced_rank
        ));
    }
    Report {
        json,
        text,
        exit_code: if quasi.quasi_iso { 0 } else { 2 },
    }
}

/// Machine-readable error report (parse errors keep their position).
pub fn error_report(command: &str, message: &str, lang_error: Option<&LangError>) -> Report {
    let mut error = serde_json::Map::new();
    error.insert("message".to_string(), Value::String(message.to_string()));
    if let Some(e) = lang_error {
        error.insert("class".to_string(), Value::String(e.class().to_string()));
        if let Some((line, col)) = e.position() {
            error.insert("line".to_string(), json!(line));
            error.insert("col".to_string(), json!(col));
        }
    }
    let json = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "error": Value::Object(error),
    });
    Report {
        json,
        text: format!("error: {message}"),
        exit_code: 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decider::decide_sasakian;
    use crate::liealg::LieAlgebra;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(b""), "fnv1a:cbf29ce484222325");
        assert_eq!(digest(b"abc"), digest(b"abc"));
        assert_ne!(digest(b"abc"), digest(b"abd"));
    }

    #[test]
    fn json_reports_are_key_sorted_and_newline_terminated() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        let verdict = decide_sasakian(&h).unwrap();
        let report = check_report("h11", b"input", &h, &verdict, 0);
        let emitted = report.emit(true);
        assert!(emitted.ends_with('\n'));
        let answer_at = emitted.find("\"answer\"").unwrap();
        let version_at = emitted.find("\"version\"").unwrap();
        assert!(answer_at < version_at, "top-level keys are sorted");
        assert_eq!(report.exit_code, 0);
    }

    #[test]
    fn identical_inputs_give_identical_bytes() {
        let h = LieAlgebra::heisenberg(2).unwrap();
        let verdict = decide_sasakian(&h).unwrap();
        let a = check_report("h12", b"same", &h, &verdict, 7).emit(true);
        let b = check_report("h12", b"same", &h, &verdict, 7).emit(true);
        assert_eq!(a, b);
    }
}
