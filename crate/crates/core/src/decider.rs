//! The decision procedure: does the compact nilmanifold of a rational
//! nilpotent Lie algebra admit a Sasakian structure?
//!
//! Two redundant routes are kept deliberately. The yes-path is structural
//! Heisenberg recognition, which produces a re-verifiable witness (basis
//! change plus contact certificate). The proof trace walks the chain of
//! necessary conditions in a fixed order — odd dimension, nilpotency,
//! b1 even, k = 2m+1, 2-step via the adapted basis, the algebraic contact
//! form, recognition — stopping at the first failure; a negative verdict
//! names the obstruction from the trace. The two routes must agree, and
//! the test suites assert that they do on the whole catalog.

use crate::cechain::ExteriorElement;
use crate::cechain::{adapted_basis, first_betti};
use crate::contact::{
    degeneracy_reason, find_contact_form, is_contact_form, ContactCertificate, ContactSearch,
    DegeneracyReason,
};
use crate::exactlin::{format_rational, Rational};
use crate::liealg::{
    recognize_heisenberg, HeisenbergObstruction, HeisenbergWitness, LieAlgebra, LieAlgebraError,
    Recognition,
};
use num_traits::Zero;

/// Search controls threaded through to the contact checkpoint.
#[derive(Debug, Clone, Copy)]
pub struct SearchParams {
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            trials: 64,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("dimension {dim} is below the scope of the decision procedure (need 2m+1 >= 3)")]
    DimensionTooSmall { dim: usize },
}

/// One record in the proof trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    /// Stable machine name, e.g. "b1-even".
    pub name: &'static str,
    /// The condition this checkpoint asserts.
    pub statement: &'static str,
    pub passed: bool,
    /// Computed values, rendered exactly (rationals as p/q).
    pub values: Vec<(&'static str, String)>,
}

/// Ordered checkpoint records; evaluation stops at the first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub checkpoints: Vec<Checkpoint>,
    pub passed: bool,
}

impl ProofTrace {
    pub fn failing(&self) -> Option<&Checkpoint> {
        self.checkpoints.iter().find(|c| !c.passed)
    }
}

/// Named obstruction with computed evidence, for negative verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    EvenDimension {
        dim: usize,
    },
    NotNilpotent,
    B1Odd {
        b1: usize,
    },
    B1NotTwiceM {
        b1: usize,
        expected: usize,
    },
    NotTwoStep {
        step: usize,
    },
    /// Every dα is too degenerate for a contact form (conclusive), or the
    /// induced cocycle in the recognition step is degenerate.
    DegenerateCocycle {
        detail: String,
    },
    CenterDim {
        dim: usize,
    },
}

impl Obstruction {
    pub fn name(&self) -> &'static str {
        match self {
            Obstruction::EvenDimension { .. } => "even-dimension",
            Obstruction::NotNilpotent => "not-nilpotent",
            Obstruction::B1Odd { .. } => "b1-odd",
            Obstruction::B1NotTwiceM { .. } => "b1-not-2m",
            Obstruction::NotTwoStep { .. } => "not-2-step",
            Obstruction::DegenerateCocycle { .. } => "degenerate-cocycle",
            Obstruction::CenterDim { .. } => "center-dim",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Obstruction::EvenDimension { dim } => format!("dimension {dim} is even"),
            Obstruction::NotNilpotent => "the algebra is not nilpotent".to_string(),
            Obstruction::B1Odd { b1 } => format!("b1 = {b1} is odd"),
            Obstruction::B1NotTwiceM { b1, expected } => {
                format!("b1 = {b1} differs from 2m = {expected}")
            }
            Obstruction::NotTwoStep { step } => format!("nilpotency step {step} != 2"),
            Obstruction::DegenerateCocycle { detail } => detail.clone(),
            Obstruction::CenterDim { dim } => format!("center dimension {dim} != 1"),
        }
    }
}

/// Decision with a re-verifiable witness or a named obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes {
        m: usize,
        witness: HeisenbergWitness,
        certificate: ContactCertificate,
    },
    No {
        obstruction: Obstruction,
    },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }
}

fn checkpoint(
    name: &'static str,
    statement: &'static str,
    passed: bool,
    values: Vec<(&'static str, String)>,
) -> Checkpoint {
    Checkpoint {
        name,
        statement,
        passed,
        values,
    }
}

/// Evaluates the obstruction chain in order, recording computed values,
/// and stops at the first failure.
pub fn proof_trace(l: &LieAlgebra) -> ProofTrace {
    proof_trace_with(l, &SearchParams::default())
}

pub fn proof_trace_with(l: &LieAlgebra, params: &SearchParams) -> ProofTrace {
    let mut checkpoints = Vec::new();
    let n = l.dim();
    let done = |checkpoints: Vec<Checkpoint>| {
        let passed = checkpoints.iter().all(|c| c.passed);
        ProofTrace {
            checkpoints,
            passed,
        }
    };

    // (1) odd dimension 2m+1 with m >= 1
    let odd = n % 2 == 1 && n >= 3;
    let m = if odd { (n - 1) / 2 } else { 0 };
    checkpoints.push(checkpoint(
        "odd-dimension",
        "dim g = 2m+1 with m >= 1",
        odd,
        vec![("dim", n.to_string()), ("m", m.to_string())],
    ));
    if !odd {
        return done(checkpoints);
    }

    // (2) nilpotency
    let nilpotency = l.nilpotency();
    let step = nilpotency.step();
    checkpoints.push(checkpoint(
        "nilpotency",
        "g is nilpotent",
        nilpotency.is_nilpotent(),
        vec![("step", step.map_or("none".to_string(), |s| s.to_string()))],
    ));
    if !nilpotency.is_nilpotent() {
        return done(checkpoints);
    }

    // (3) first Betti number is even
    let b1 = first_betti(l);
    checkpoints.push(checkpoint(
        "b1-even",
        "b1 = dim H^1 is even",
        b1.is_multiple_of(2),
        vec![("b1", b1.to_string())],
    ));
    if !b1.is_multiple_of(2) {
        return done(checkpoints);
    }

    // (4) k = 2m+1, i.e. b1 = 2m
    let k = b1 + 1;
    checkpoints.push(checkpoint(
        "k-equals-2m+1",
        "k = b1 + 1 equals 2m+1",
        b1 == 2 * m,
        vec![("k", k.to_string()), ("2m+1", (2 * m + 1).to_string())],
    ));
    if b1 != 2 * m {
        return done(checkpoints);
    }

    // (5) adapted differentials make g 2-step: the first 2m adapted forms
    // are closed and the last differential only involves them
    let adapted = adapted_basis(l).expect("nilpotent by checkpoint 2");
    let closed_forms = adapted.k - 1;
    let last_triangular = adapted
        .gamma
        .iter()
        .all(|(l_idx, i, j, _)| *l_idx != n - 1 || (*i < 2 * m && *j < 2 * m));
    let two_step = step == Some(2) && closed_forms == 2 * m && last_triangular;
    checkpoints.push(checkpoint(
        "two-step",
        "the first 2m adapted forms are closed and g is 2-step nilpotent",
        two_step,
        vec![
            ("closed_forms", closed_forms.to_string()),
            ("step", step.map_or("none".into(), |s| s.to_string())),
        ],
    ));
    if !two_step {
        return done(checkpoints);
    }

    // (6) the last adapted covector is an algebraic contact form
    let last_form = ExteriorElement::from_covector_coeffs(&adapted.forms[n - 1]);
    let contact = is_contact_form(l, &last_form).expect("odd dimension by checkpoint 1");
    match contact {
        Some(certificate) => {
            checkpoints.push(checkpoint(
                "contact-form",
                "the last adapted covector is an algebraic contact form",
                true,
                vec![("top_value", format_rational(&certificate.top_value))],
            ));
        }
        None => {
            let values = match degeneracy_reason(l) {
                Some(reason) => vec![
                    ("conclusive", "true".to_string()),
                    ("reason", reason.to_string()),
                ],
                None => match find_contact_form(l, params.trials, params.seed)
                    .expect("odd dimension by checkpoint 1")
                {
                    ContactSearch::Found(other) => vec![
                        ("conclusive", "false".to_string()),
                        (
                            "reason",
                            format!("the adapted covector is not contact, but {} is", other.form),
                        ),
                    ],
                    ContactSearch::NoneConclusive { reason } => vec![
                        ("conclusive", "true".to_string()),
                        ("reason", reason.to_string()),
                    ],
                    ContactSearch::NoneProbabilistic { trials } => vec![
                        ("conclusive", "false".to_string()),
                        (
                            "reason",
                            format!("no contact form found after {trials} trials"),
                        ),
                    ],
                },
            };
            checkpoints.push(checkpoint(
                "contact-form",
                "the last adapted covector is an algebraic contact form",
                false,
                values,
            ));
            return done(checkpoints);
        }
    }

    // (7) structural Heisenberg recognition
    match recognize_heisenberg(l) {
        Ok(Recognition::Heisenberg(witness)) => {
            checkpoints.push(checkpoint(
                "heisenberg-recognition",
                "g is isomorphic to h(1, m)",
                true,
                vec![("m", witness.m.to_string())],
            ));
        }
        Ok(Recognition::Obstructed(obstruction)) => {
            checkpoints.push(checkpoint(
                "heisenberg-recognition",
                "g is isomorphic to h(1, m)",
                false,
                vec![("obstruction", obstruction.to_string())],
            ));
        }
        Err(err) => {
            checkpoints.push(checkpoint(
                "heisenberg-recognition",
                "g is isomorphic to h(1, m)",
                false,
                vec![("error", err.to_string())],
            ));
        }
    }
    done(checkpoints)
}

/// Maps the trace's first failure to the named obstruction carried by a
/// negative verdict.
fn obstruction_from_trace(l: &LieAlgebra, trace: &ProofTrace) -> Obstruction {
    let failing = trace.failing().expect("called on a failed trace");
    match failing.name {
        "odd-dimension" => Obstruction::EvenDimension { dim: l.dim() },
        "nilpotency" => Obstruction::NotNilpotent,
        "b1-even" => Obstruction::B1Odd { b1: first_betti(l) },
        "k-equals-2m+1" => Obstruction::B1NotTwiceM {
            b1: first_betti(l),
            expected: l.dim() - 1,
        },
        "two-step" => Obstruction::NotTwoStep {
            step: l.nilpotency().step().unwrap_or(0),
        },
        "contact-form" => {
            let detail = match degeneracy_reason(l) {
                Some(DegeneracyReason::CentralRadical {
                    center_dim,
                    rank_bound,
                    required_rank,
                }) => format!(
                    "no contact form exists: the center (dim {center_dim}) forces rank dα <= {rank_bound} < {required_rank} for every α"
                ),
                Some(DegeneracyReason::ZeroDifferential) => {
                    "no contact form exists: d = 0 on 1-forms".to_string()
                }
                None => failing
                    .values
                    .iter()
                    .find(|(k, _)| *k == "reason")
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(|| "no contact form found".to_string()),
            };
            Obstruction::DegenerateCocycle { detail }
        }
        "heisenberg-recognition" => match recognize_heisenberg(l) {
            Ok(Recognition::Obstructed(HeisenbergObstruction::CenterDim { dim })) => {
                Obstruction::CenterDim { dim }
            }
            Ok(Recognition::Obstructed(HeisenbergObstruction::DerivedNotCenter { .. })) => {
                Obstruction::NotTwoStep {
                    step: l.nilpotency().step().unwrap_or(0),
                }
            }
            Ok(Recognition::Obstructed(HeisenbergObstruction::DegenerateCocycle { radical })) => {
                Obstruction::DegenerateCocycle {
                    detail: format!(
                        "induced 2-cocycle on g/z is degenerate; radical vector ({})",
                        radical
                            .iter()
                            .map(format_rational)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                }
            }
            _ => Obstruction::NotNilpotent,
        },
        other => unreachable!("unknown checkpoint {other}"),
    }
}

/// Decides the Sasakian question with default search parameters.
pub fn decide_sasakian(l: &LieAlgebra) -> Result<Verdict, DecideError> {
    decide_sasakian_with(l, &SearchParams::default())
}

/// Yes iff structural recognition succeeds; the witness bundles the basis
/// change and an exact contact certificate for the pulled-back last dual
/// coordinate. A negative answer names the first failed condition in the
/// trace order.
pub fn decide_sasakian_with(l: &LieAlgebra, params: &SearchParams) -> Result<Verdict, DecideError> {
    match recognize_heisenberg(l) {
        Ok(Recognition::Heisenberg(witness)) => {
            let certificate = witness_certificate(l, &witness);
            Ok(Verdict::Yes {
                m: witness.m,
                witness,
                certificate,
            })
        }
        Ok(Recognition::Obstructed(_)) | Err(LieAlgebraError::NotNilpotent) => {
            let trace = proof_trace_with(l, params);
            assert!(
                !trace.passed,
                "recognition failed but every checkpoint passed: the routes disagree"
            );
            Ok(Verdict::No {
                obstruction: obstruction_from_trace(l, &trace),
            })
        }
        Err(LieAlgebraError::EvenDimension { dim }) => Ok(Verdict::No {
            obstruction: Obstruction::EvenDimension { dim },
        }),
        Err(LieAlgebraError::DimensionTooSmall { dim }) => {
            Err(DecideError::DimensionTooSmall { dim })
        }
        Err(other) => unreachable!("recognition failed unexpectedly: {other}"),
    }
}

/// Contact certificate for the pullback of the last normal-form dual
/// coordinate through the witness: the covector x ↦ (P⁻¹x)_{2m+1}.
fn witness_certificate(l: &LieAlgebra, witness: &HeisenbergWitness) -> ContactCertificate {
    let inverse = witness
        .basis_change
        .inverse()
        .expect("witness basis change is invertible");
    let n = l.dim();
    let coeffs: Vec<Rational> = (0..n).map(|j| inverse.at(n - 1, j).clone()).collect();
    debug_assert!(!coeffs.iter().all(Zero::is_zero));
    let form = ExteriorElement::from_covector_coeffs(&coeffs);
    is_contact_form(l, &form)
        .expect("odd dimension")
        .expect("the pulled-back coordinate of a Heisenberg witness is contact")
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes { m, .. } => write!(f, "yes: isomorphic to h(1, {m})"),
            Verdict::No { obstruction } => {
                write!(f, "no: {} ({})", obstruction.name(), obstruction.describe())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, h11_plus_abelian2};
    use crate::exactlin::rat;
    use crate::liealg::{BracketDecl, LieAlgebra};

    fn simple(dim: usize, brackets: &[(usize, usize, usize)]) -> LieAlgebra {
        let decls: Vec<BracketDecl> = brackets
            .iter()
            .map(|&(i, j, k)| BracketDecl {
                i,
                j,
                value: vec![(k, rat(1))],
            })
            .collect();
        LieAlgebra::new(dim, &decls).unwrap()
    }

    #[test]
    fn heisenberg_is_sasakian_with_verified_witness() {
        for m in 1..=4 {
            let h = LieAlgebra::heisenberg(m).unwrap();
            match decide_sasakian(&h).unwrap() {
                Verdict::Yes {
                    m: found,
                    witness,
                    certificate,
                } => {
                    assert_eq!(found, m);
                    assert!(witness.verify(&h));
                    assert!(certificate.verify(&h));
                }
                Verdict::No { obstruction } => {
                    panic!("h(1,{m}) judged non-Sasakian: {}", obstruction.describe())
                }
            }
        }
    }

    #[test]
    fn abelian_fails_with_odd_b1() {
        for dim in [3, 5, 7, 9] {
            match decide_sasakian(&LieAlgebra::abelian(dim)).unwrap() {
                Verdict::No {
                    obstruction: Obstruction::B1Odd { b1 },
                } => assert_eq!(b1, dim),
                other => panic!("expected b1-odd for abelian{dim}, got {other:?}"),
            }
        }
    }

    #[test]
    fn step_three_algebra_fails_at_b1_parity() {
        let l5 = simple(5, &[(0, 1, 2), (0, 2, 3)]);
        let trace = proof_trace(&l5);
        assert_eq!(trace.checkpoints.len(), 3);
        let failing = trace.failing().unwrap();
        assert_eq!(failing.name, "b1-even");
        assert_eq!(failing.values, vec![("b1", "3".to_string())]);
        match decide_sasakian(&l5).unwrap() {
            Verdict::No {
                obstruction: Obstruction::B1Odd { b1 },
            } => assert_eq!(b1, 3),
            other => panic!("expected b1-odd, got {other:?}"),
        }
    }

    #[test]
    fn central_extension_defect_is_conclusive() {
        let l = h11_plus_abelian2();
        let trace = proof_trace(&l);
        // passes (1)-(5), fails the contact checkpoint conclusively
        assert_eq!(trace.checkpoints.len(), 6);
        let failing = trace.failing().unwrap();
        assert_eq!(failing.name, "contact-form");
        assert!(failing
            .values
            .iter()
            .any(|(k, v)| *k == "conclusive" && v == "true"));
        match decide_sasakian(&l).unwrap() {
            Verdict::No {
                obstruction: Obstruction::DegenerateCocycle { detail },
            } => {
                assert!(
                    detail.contains("dim 3"),
                    "evidence carries the center dimension"
                );
            }
            other => panic!("expected degenerate-cocycle, got {other:?}"),
        }
    }

    #[test]
    fn trace_of_heisenberg2_records_the_expected_values() {
        let trace = proof_trace(&LieAlgebra::heisenberg(2).unwrap());
        assert!(trace.passed);
        assert_eq!(trace.checkpoints.len(), 7);
        let get = |name: &str, key: &str| -> String {
            trace
                .checkpoints
                .iter()
                .find(|c| c.name == name)
                .unwrap()
                .values
                .iter()
                .find(|(k, _)| *k == key)
                .unwrap()
                .1
                .clone()
        };
        assert_eq!(get("b1-even", "b1"), "4");
        assert_eq!(get("k-equals-2m+1", "k"), "5");
        assert_eq!(get("two-step", "step"), "2");
        assert_eq!(get("heisenberg-recognition", "m"), "2");
    }

    #[test]
    fn even_dimension_is_an_obstruction_not_an_error() {
        let filiform4 = simple(4, &[(0, 1, 2), (0, 2, 3)]);
        match decide_sasakian(&filiform4).unwrap() {
            Verdict::No {
                obstruction: Obstruction::EvenDimension { dim },
            } => assert_eq!(dim, 4),
            other => panic!("expected even-dimension, got {other:?}"),
        }
    }

    #[test]
    fn non_nilpotent_is_named() {
        let solvable = simple(3, &[(0, 1, 1)]);
        match decide_sasakian(&solvable).unwrap() {
            Verdict::No {
                obstruction: Obstruction::NotNilpotent,
            } => {}
            other => panic!("expected not-nilpotent, got {other:?}"),
        }
    }

    #[test]
    fn b1_not_2m_is_named() {
        let l7 = simple(7, &[(0, 1, 4), (2, 3, 5), (0, 2, 6)]);
        match decide_sasakian(&l7).unwrap() {
            Verdict::No {
                obstruction: Obstruction::B1NotTwiceM { b1, expected },
            } => {
                assert_eq!(b1, 4);
                assert_eq!(expected, 6);
            }
            other => panic!("expected b1-not-2m, got {other:?}"),
        }
    }

    #[test]
    fn dimension_two_is_an_even_dimension_obstruction() {
        match decide_sasakian(&LieAlgebra::abelian(2)).unwrap() {
            Verdict::No {
                obstruction: Obstruction::EvenDimension { dim },
            } => assert_eq!(dim, 2),
            other => panic!("expected even-dimension, got {other:?}"),
        }
    }

    #[test]
    fn recognition_scales_past_the_desk_range() {
        // dimension 11; the decision path never builds the full complex
        let h5 = LieAlgebra::heisenberg(5).unwrap();
        match decide_sasakian(&h5).unwrap() {
            Verdict::Yes { m, witness, certificate } => {
                assert_eq!(m, 5);
                assert!(witness.verify(&h5));
                assert!(certificate.verify(&h5));
            }
            Verdict::No { obstruction } => panic!("h(1,5) rejected: {}", obstruction.describe()),
        }
    }

    #[test]
    fn dimension_one_is_out_of_scope() {
        assert_eq!(
            decide_sasakian(&LieAlgebra::abelian(1)),
            Err(DecideError::DimensionTooSmall { dim: 1 })
        );
    }

    #[test]
    fn verdict_agrees_with_trace_on_the_whole_catalog() {
        for entry in catalog() {
            let verdict = decide_sasakian(&entry.algebra).unwrap();
            let trace = proof_trace(&entry.algebra);
            assert_eq!(
                verdict.is_yes(),
                trace.passed,
                "verdict/trace disagree on {}",
                entry.name
            );
            assert_eq!(
                verdict.is_yes(),
                entry.expect_sasakian,
                "unexpected verdict on {}",
                entry.name
            );
        }
    }

    #[test]
    fn verdicts_and_obstruction_names_are_conjugation_invariant() {
        use crate::srand::{random_invertible, SplitMix64};
        let mut rng = SplitMix64::new(91);
        for entry in catalog() {
            if entry.algebra.dim() > 7 {
                continue;
            }
            let baseline = decide_sasakian(&entry.algebra).unwrap();
            for _ in 0..5 {
                let p = random_invertible(entry.algebra.dim(), &mut rng);
                let twisted = entry.algebra.conjugate(&p).unwrap();
                let verdict = decide_sasakian(&twisted).unwrap();
                assert_eq!(
                    verdict.is_yes(),
                    baseline.is_yes(),
                    "conjugation changed the verdict on {}",
                    entry.name
                );
                if let (
                    Verdict::No { obstruction: a },
                    Verdict::No { obstruction: b },
                ) = (&baseline, &verdict)
                {
                    assert_eq!(
                        a.name(),
                        b.name(),
                        "conjugation changed the obstruction on {}",
                        entry.name
                    );
                }
            }
        }
    }

    #[test]
    fn contact_checkpoint_never_passes_when_recognition_fails() {
        // a trace where the contact form exists but recognition fails
        // would contradict the theorem; assert the catalog has none
        for entry in catalog() {
            let trace = proof_trace(&entry.algebra);
            let passed = |name: &str| trace.checkpoints.iter().any(|c| c.name == name && c.passed);
            let failed = |name: &str| {
                trace
                    .checkpoints
                    .iter()
                    .any(|c| c.name == name && !c.passed)
            };
            assert!(
                !(passed("contact-form") && failed("heisenberg-recognition")),
                "theorem violation in the catalog at {}",
                entry.name
            );
        }
    }
}
