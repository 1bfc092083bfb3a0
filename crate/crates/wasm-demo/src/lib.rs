//! Browser demo bindings: three interactive operations over the core
//! crate, each taking `.lie` text (or a size parameter) and returning a
//! JSON report string for the page to render.

use nilsasakian::catalog::catalog;
use nilsasakian::cechain::{chevalley_eilenberg, cohomology};
use nilsasakian::contact::find_contact_form;
use nilsasakian::decider::{decide_sasakian_with, proof_trace_with, SearchParams};
use nilsasakian::lang::{parse_algebra, print_algebra};
use nilsasakian::report::{self, ContactOutcome};
use nilsasakian::tievsky::standard_heisenberg_morphism;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_COHOMOLOGY_DIM: usize = 9;

fn error_json(message: &str, lang: Option<&nilsasakian::lang::LangError>) -> String {
    report::error_report("analyze", message, lang).emit(true)
}

/// Full analysis of one `.lie` definition: verdict, proof trace, betti
/// numbers (when the full complex fits), and the adapted basis.
#[wasm_bindgen]
pub fn analyze(text: &str, seed: u64) -> String {
    let parsed = match parse_algebra(text) {
        Ok(parsed) => parsed,
        Err(e) => return error_json(&e.to_string(), Some(&e)),
    };
    let params = SearchParams { trials: 64, seed };
    let verdict = match decide_sasakian_with(&parsed.algebra, &params) {
        Ok(verdict) => verdict,
        Err(e) => return error_json(&e.to_string(), None),
    };
    let trace = proof_trace_with(&parsed.algebra, &params);

    let check = report::check_report(
        &parsed.name,
        text.as_bytes(),
        &parsed.algebra,
        &verdict,
        seed,
    );
    let trace_report =
        report::trace_report(&parsed.name, text.as_bytes(), &parsed.algebra, &trace, seed);
    let betti = if parsed.algebra.dim() <= MAX_COHOMOLOGY_DIM {
        let ce = chevalley_eilenberg(&parsed.algebra);
        serde_json::to_value(cohomology(&ce.cdga).betti).expect("serializable")
    } else {
        serde_json::Value::Null
    };
    let adapted = nilsasakian::cechain::adapted_basis(&parsed.algebra)
        .ok()
        .map(|a| {
            let r = report::adapted_report(&parsed.name, text.as_bytes(), &parsed.algebra, &a);
            r.json
        })
        .unwrap_or(serde_json::Value::Null);

    let combined = json!({
        "check": check.json,
        "trace": trace_report.json,
        "betti": betti,
        "adapted": adapted,
    });
    let mut out = serde_json::to_string_pretty(&combined).expect("valid JSON");
    out.push('\n');
    out
}

/// Contact-form search with exact verification of any hit.
#[wasm_bindgen]
pub fn contact_search(text: &str, trials: u32, seed: u64) -> String {
    let parsed = match parse_algebra(text) {
        Ok(parsed) => parsed,
        Err(e) => return error_json(&e.to_string(), Some(&e)),
    };
    match find_contact_form(&parsed.algebra, trials as usize, seed) {
        Ok(search) => report::contact_report(
            &parsed.name,
            text.as_bytes(),
            &parsed.algebra,
            &ContactOutcome::Search(search),
            seed,
        )
        .emit(true),
        Err(e) => error_json(&e.to_string(), None),
    }
}

/// Builds h(1, m), its Tievsky model, and the standard morphism, and
/// reports the quasi-isomorphism check per degree.
#[wasm_bindgen]
pub fn tievsky_verify(m: u32) -> String {
    if m == 0 || m > 4 {
        return error_json("m must be between 1 and 4", None);
    }
    let morphism = match standard_heisenberg_morphism(m as usize) {
        Ok(f) => f,
        Err(e) => return error_json(&e.to_string(), None),
    };
    match morphism.is_quasi_iso() {
        Ok(quasi) => report::tievsky_report(m as usize, &quasi).emit(true),
        Err(e) => error_json(&e.to_string(), None),
    }
}

/// Named example definitions for the page's picker.
#[wasm_bindgen]
pub fn examples() -> String {
    let list: Vec<serde_json::Value> = catalog()
        .iter()
        .map(|entry| {
            json!({
                "name": entry.name,
                "text": print_algebra(entry.name, &entry.algebra),
                "sasakian": entry.expect_sasakian,
            })
        })
        .collect();
    serde_json::to_string_pretty(&json!({ "examples": list })).expect("valid JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_reports_verdict_and_trace() {
        let out = analyze("algebra h11\ndim 3\n[e1,e2] = e3\n", 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["check"]["answer"], "yes");
        assert_eq!(value["trace"]["passed"], true);
        assert_eq!(value["betti"], serde_json::json!([1, 2, 2, 1]));
    }

    #[test]
    fn analyze_surfaces_parse_errors() {
        let out = analyze("algebra broken\ndim 3\n[e1,e2] = e9\n", 0);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["error"]["class"], "semantic");
    }

    #[test]
    fn examples_list_is_nonempty_and_parses_back() {
        let out = examples();
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        let list = value["examples"].as_array().unwrap();
        assert!(list.len() >= 10);
        for entry in list {
            let text = entry["text"].as_str().unwrap();
            assert!(parse_algebra(text).is_ok());
        }
    }

    #[test]
    fn contact_search_and_tievsky_shapes() {
        let found: serde_json::Value =
            serde_json::from_str(&contact_search("algebra h11\ndim 3\n[e1,e2] = e3\n", 16, 0))
                .unwrap();
        assert_eq!(found["found"], true);
        let quasi: serde_json::Value = serde_json::from_str(&tievsky_verify(1)).unwrap();
        assert_eq!(quasi["quasi_iso"], true);
    }
}
