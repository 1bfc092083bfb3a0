//! Algebraic contact geometry on an odd-dimensional Lie algebra.
//!
//! A 1-form α on a (2m+1)-dimensional algebra is an algebraic contact
//! form when α∧(dα)^m is nonzero in the top exterior power. Certificates
//! carry the unique Reeb element ξ (α(ξ) = 1 and i_ξ dα = 0) and the top
//! wedge coefficient, and re-verify exactly. The randomized search only
//! proposes candidates; every acceptance is an exact check, and a
//! negative search result is marked conclusive only when a symbolic
//! degeneracy argument applies.

use crate::cechain::{adapted_basis, covector_differential, ExteriorElement};
use crate::exactlin::{QMatrix, Rational};
use crate::liealg::LieAlgebra;
use crate::srand::SplitMix64;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContactError {
    #[error("contact forms require odd dimension, got {dim}")]
    EvenDimension { dim: usize },
    #[error("the candidate is not a homogeneous 1-form")]
    NotOneForm,
    #[error("the form is not a contact form")]
    NotContact,
}

/// Verified witness that a 1-form is contact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactCertificate {
    pub form: ExteriorElement,
    pub reeb: Vec<Rational>,
    /// Coefficient of α∧(dα)^m on the top monomial; nonzero.
    pub top_value: Rational,
}

impl ContactCertificate {
    /// Re-derives every certified identity from the structure constants:
    /// α(ξ) = 1, i_ξ dα = 0, and the stated nonzero top coefficient.
    pub fn verify(&self, l: &LieAlgebra) -> bool {
        let n = l.dim();
        if n.is_multiple_of(2) || self.top_value.is_zero() {
            return false;
        }
        let m = (n - 1) / 2;
        let Some(coeffs) = form_coefficients(&self.form, n) else {
            return false;
        };
        let pairing: Rational = coeffs.iter().zip(&self.reeb).map(|(a, x)| a * x).sum();
        if !pairing.is_one() {
            return false;
        }
        let d = covector_differential(l, &coeffs);
        if !d.contract(&self.reeb).is_zero() {
            return false;
        }
        let top = self.form.wedge(&d.wedge_power(m));
        top.coefficient((1u32 << n) - 1) == self.top_value
    }
}

fn form_coefficients(alpha: &ExteriorElement, dim: usize) -> Option<Vec<Rational>> {
    if alpha.dim() != dim || alpha.homogeneous_degree() != Some(1) {
        return None;
    }
    Some((0..dim).map(|i| alpha.coefficient(1 << i)).collect())
}

/// Tests the contact condition α∧(dα)^m ≠ 0 and, when it holds, solves
/// for the Reeb element exactly. Returns `None` for a non-contact form.
pub fn is_contact_form(
    l: &LieAlgebra,
    alpha: &ExteriorElement,
) -> Result<Option<ContactCertificate>, ContactError> {
    let n = l.dim();
    if n.is_multiple_of(2) {
        return Err(ContactError::EvenDimension { dim: n });
    }
    let m = (n - 1) / 2;
    let coeffs = form_coefficients(alpha, n).ok_or(ContactError::NotOneForm)?;
    let d = covector_differential(l, &coeffs);
    let top = alpha.wedge(&d.wedge_power(m));
    let top_value = top.coefficient((1u32 << n) - 1);
    if top_value.is_zero() {
        return Ok(None);
    }

    // Reeb: α(ξ) = 1 together with (i_ξ dα)(e_j) = Σ_i ξ_i dα(e_i, e_j) = 0
    let mut system = QMatrix::zeros(n + 1, n);
    for (j, c) in coeffs.iter().enumerate() {
        system.set(0, j, c.clone());
    }
    for j in 0..n {
        for i in 0..n {
            let (lo, hi, sign) = if i < j {
                (i, j, Rational::one())
            } else if j < i {
                (j, i, -Rational::one())
            } else {
                continue;
            };
            let value = d.coefficient((1 << lo) | (1 << hi));
            system.set(1 + j, i, value * sign);
        }
    }
    let mut rhs = vec![Rational::zero(); n + 1];
    rhs[0] = Rational::one();
    let reeb = system
        .solve(&rhs)
        .expect("shape")
        .expect("a contact form determines its Reeb element");
    assert!(
        system.kernel_basis().is_empty(),
        "Reeb element of a contact form must be unique"
    );

    let certificate = ContactCertificate {
        form: alpha.clone(),
        reeb,
        top_value,
    };
    debug_assert!(certificate.verify(l));
    Ok(Some(certificate))
}

/// The unique Reeb element of a contact form.
pub fn reeb(l: &LieAlgebra, alpha: &ExteriorElement) -> Result<Vec<Rational>, ContactError> {
    match is_contact_form(l, alpha)? {
        Some(certificate) => Ok(certificate.reeb),
        None => Err(ContactError::NotContact),
    }
}

/// Why a negative search result is conclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyReason {
    /// d ≡ 0 on 1-forms (abelian algebra): α∧(dα)^m = 0 identically.
    ZeroDifferential,
    /// The center sits in the radical of every dα, so
    /// rank dα ≤ dim g - dim z(g) < 2m for every α.
    CentralRadical {
        center_dim: usize,
        rank_bound: usize,
        required_rank: usize,
    },
}

impl std::fmt::Display for DegeneracyReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegeneracyReason::ZeroDifferential => {
                write!(f, "d = 0 on 1-forms, so every top wedge vanishes")
            }
            DegeneracyReason::CentralRadical {
                center_dim,
                rank_bound,
                required_rank,
            } => write!(
                f,
                "center (dim {center_dim}) lies in the radical of every dα: rank dα <= {rank_bound} < {required_rank}"
            ),
        }
    }
}

/// Outcome of the contact-form search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContactSearch {
    Found(ContactCertificate),
    /// No contact form exists; a symbolic degeneracy proof applies.
    NoneConclusive {
        reason: DegeneracyReason,
    },
    /// No contact form found after the given number of trials; existence
    /// is not excluded.
    NoneProbabilistic {
        trials: usize,
    },
}

/// Symbolic degeneracy check shared by the search and the decision trace.
pub fn degeneracy_reason(l: &LieAlgebra) -> Option<DegeneracyReason> {
    let n = l.dim();
    if n.is_multiple_of(2) {
        return None;
    }
    let m = (n - 1) / 2;
    if l.derived().is_zero() {
        return Some(DegeneracyReason::ZeroDifferential);
    }
    let center_dim = l.center().dim();
    if center_dim >= 2 {
        return Some(DegeneracyReason::CentralRadical {
            center_dim,
            rank_bound: n - center_dim,
            required_rank: 2 * m,
        });
    }
    None
}

/// Searches for a contact form: first every adapted-basis covector (the
/// standard dual basis when the algebra is not nilpotent), then `trials`
/// seeded random combinations with coefficients in -3..=3, widened to
/// -15..=15 for the second half. Any returned certificate was verified
/// exactly; a probabilistic `None` does not exclude existence.
pub fn find_contact_form(
    l: &LieAlgebra,
    trials: usize,
    seed: u64,
) -> Result<ContactSearch, ContactError> {
    let n = l.dim();
    if n.is_multiple_of(2) {
        return Err(ContactError::EvenDimension { dim: n });
    }
    if let Some(reason) = degeneracy_reason(l) {
        return Ok(ContactSearch::NoneConclusive { reason });
    }

    let candidates: Vec<Vec<Rational>> = match adapted_basis(l) {
        Ok(ab) => ab.forms,
        Err(_) => QMatrix::identity(n).row_vectors(),
    };
    for coeffs in candidates {
        let alpha = ExteriorElement::from_covector_coeffs(&coeffs);
        if let Some(certificate) = is_contact_form(l, &alpha)? {
            return Ok(ContactSearch::Found(certificate));
        }
    }

    let mut rng = SplitMix64::new(seed);
    for trial in 0..trials {
        let bound = if trial < trials / 2 { 3 } else { 15 };
        let coeffs: Vec<Rational> = (0..n).map(|_| rng.small_rational(bound)).collect();
        if coeffs.iter().all(Zero::is_zero) {
            continue;
        }
        let alpha = ExteriorElement::from_covector_coeffs(&coeffs);
        if let Some(certificate) = is_contact_form(l, &alpha)? {
            return Ok(ContactSearch::Found(certificate));
        }
    }
    Ok(ContactSearch::NoneProbabilistic { trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, ratio};

    fn covector(n: usize, i: usize) -> ExteriorElement {
        ExteriorElement::covector(n, i)
    }

    #[test]
    fn last_dual_generator_of_h11_is_contact() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        let cert = is_contact_form(&h, &covector(3, 2)).unwrap().unwrap();
        assert_eq!(cert.top_value, rat(-1));
        assert_eq!(cert.reeb, vec![rat(0), rat(0), rat(1)]);
        assert!(cert.verify(&h));
    }

    #[test]
    fn closed_forms_are_not_contact() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        assert_eq!(is_contact_form(&h, &covector(3, 0)).unwrap(), None);
    }

    #[test]
    fn last_dual_generator_is_contact_for_all_m() {
        for m in 1..=4 {
            let h = LieAlgebra::heisenberg(m).unwrap();
            let n = 2 * m + 1;
            let cert = is_contact_form(&h, &covector(n, n - 1)).unwrap().unwrap();
            let mut central = vec![rat(0); n];
            central[n - 1] = rat(1);
            assert_eq!(
                cert.reeb, central,
                "Reeb of h(1,{m}) is the central generator"
            );
            assert!(cert.verify(&h));
        }
    }

    #[test]
    fn adding_a_closed_form_keeps_the_reeb_element() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        let shifted = covector(3, 2).add(&covector(3, 0));
        let cert = is_contact_form(&h, &shifted).unwrap().unwrap();
        assert_eq!(cert.reeb, vec![rat(0), rat(0), rat(1)]);
        assert!(cert.verify(&h));
    }

    #[test]
    fn scaling_scales_top_value_and_reeb() {
        // on h(1,m): top_value scales by c^{m+1}, the Reeb element by 1/c
        for m in 1..=3 {
            let h = LieAlgebra::heisenberg(m).unwrap();
            let n = 2 * m + 1;
            let base = is_contact_form(&h, &covector(n, n - 1)).unwrap().unwrap();
            let c = ratio(3, 2);
            let scaled_form = covector(n, n - 1).scale(&c);
            let scaled = is_contact_form(&h, &scaled_form).unwrap().unwrap();
            let mut expected_scale = rat(1);
            for _ in 0..=m {
                expected_scale = &expected_scale * &c;
            }
            assert_eq!(scaled.top_value, &base.top_value * &expected_scale);
            for (a, b) in scaled.reeb.iter().zip(&base.reeb) {
                assert_eq!(a, &(b / &c));
            }
        }
    }

    #[test]
    fn reeb_of_non_contact_form_errors() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        assert_eq!(reeb(&h, &covector(3, 0)), Err(ContactError::NotContact));
    }

    #[test]
    fn even_dimension_is_rejected() {
        let a = LieAlgebra::abelian(4);
        assert!(matches!(
            is_contact_form(&a, &covector(4, 0)),
            Err(ContactError::EvenDimension { dim: 4 })
        ));
    }

    #[test]
    fn search_finds_the_adapted_covector_on_heisenberg() {
        for m in 1..=3 {
            let h = LieAlgebra::heisenberg(m).unwrap();
            let n = 2 * m + 1;
            match find_contact_form(&h, 64, 0).unwrap() {
                ContactSearch::Found(cert) => {
                    assert_eq!(cert.form, covector(n, n - 1));
                    assert!(cert.verify(&h));
                }
                other => panic!("expected a certificate, got {other:?}"),
            }
        }
    }

    #[test]
    fn search_on_abelian_is_conclusively_negative() {
        let result = find_contact_form(&LieAlgebra::abelian(3), 64, 0).unwrap();
        assert_eq!(
            result,
            ContactSearch::NoneConclusive {
                reason: DegeneracyReason::ZeroDifferential
            }
        );
    }

    #[test]
    fn search_on_h11_plus_ab2_is_conclusively_negative() {
        let l =
            LieAlgebra::direct_sum(&LieAlgebra::heisenberg(1).unwrap(), &LieAlgebra::abelian(2));
        let result = find_contact_form(&l, 64, 0).unwrap();
        assert_eq!(
            result,
            ContactSearch::NoneConclusive {
                reason: DegeneracyReason::CentralRadical {
                    center_dim: 3,
                    rank_bound: 2,
                    required_rank: 4
                }
            }
        );
    }

    #[test]
    fn brute_force_top_wedge_on_h11_plus_ab2_always_vanishes() {
        // cross-check of the symbolic bound: expand α∧(dα)² for the whole
        // standard dual basis and sums of two covectors
        let l =
            LieAlgebra::direct_sum(&LieAlgebra::heisenberg(1).unwrap(), &LieAlgebra::abelian(2));
        let mut candidates = Vec::new();
        for i in 0..5 {
            candidates.push(covector(5, i));
            for j in 0..5 {
                candidates.push(covector(5, i).add(&covector(5, j)));
            }
        }
        for alpha in candidates {
            if alpha.is_zero() {
                continue;
            }
            assert_eq!(is_contact_form(&l, &alpha).unwrap(), None);
        }
    }
}
