//! Chevalley–Eilenberg complexes, cohomology, adapted bases, and CDGA
//! morphisms.
//!
//! The complex of a Lie algebra g is the exterior algebra on the dual
//! basis with the differential fixed by `dα(x, y) = -α([x, y])` on degree
//! one, extended as a derivation. Its cohomology is computed exactly.
//! The adapted basis routine orders a dual basis along the flag
//! `V_0 = ker d`, `V_{i+1} = {α : dα ∈ Λ²V_i}`, which produces closed
//! forms first and strictly triangular differentials
//! `dα_l = -Σ_{i<j<l} γ_l^{ij} α_i∧α_j`.

mod cdga;
mod exterior;
mod morphism;

pub use cdga::{CdgaError, CdgaFinite, GradedElement, SparseVec};
pub use exterior::{lex_cmp, mask_indices, merge_sign, subsets, ExteriorElement};
pub use morphism::{
    identity_morphism, unit_only_morphism, CdgaMorphism, MorphismFailure, QuasiIsoDegree,
    QuasiIsoReport,
};

use crate::exactlin::{EchelonTracker, QMatrix, Rational};
use crate::liealg::LieAlgebra;
use num_traits::{One, Zero};

/// An exterior CDGA together with the monomial masks behind each basis
/// element, so callers can map generators and extend multiplicatively.
#[derive(Debug, Clone)]
pub struct ExteriorCdga {
    pub cdga: CdgaFinite,
    /// `masks[p][i]` = index subset of the i-th degree-p basis monomial.
    pub masks: Vec<Vec<u32>>,
}

/// Builds the exterior algebra on `n` generators with the differential
/// extended as a derivation from the given degree-2 images.
pub fn exterior_cdga(
    n: usize,
    d_generators: &[ExteriorElement],
    prefix: &str,
) -> Result<ExteriorCdga, CdgaError> {
    assert_eq!(d_generators.len(), n);
    let masks: Vec<Vec<u32>> = (0..=n).map(|p| subsets(n, p)).collect();
    let dims: Vec<usize> = masks.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = masks
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|&m| ExteriorElement::monomial_label(m, prefix))
                .collect()
        })
        .collect();

    // position of each mask within its degree
    let mut position = vec![0usize; 1 << n];
    for level in &masks {
        for (i, &m) in level.iter().enumerate() {
            position[m as usize] = i;
        }
    }

    let total: usize = dims.iter().sum();
    let mut offsets = vec![0usize; n + 2];
    for p in 0..=n {
        offsets[p + 1] = offsets[p] + dims[p];
    }
    let flat_of_mask = |m: u32| offsets[m.count_ones() as usize] + position[m as usize];

    let mut mult = vec![vec![SparseVec::new(); total]; total];
    for level_a in &masks {
        for &ma in level_a {
            for level_b in &masks {
                for &mb in level_b {
                    if ma & mb != 0 {
                        continue;
                    }
                    let sign = merge_sign(ma, mb);
                    let coeff = if sign < 0 {
                        -Rational::one()
                    } else {
                        Rational::one()
                    };
                    mult[flat_of_mask(ma)][flat_of_mask(mb)] =
                        vec![(position[(ma | mb) as usize], coeff)];
                }
            }
        }
    }

    let mut diff = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let out_dim = if p < n { dims[p + 1] } else { 0 };
        let mut d = QMatrix::zeros(out_dim, dims[p]);
        for (col, &mask) in masks[p].iter().enumerate() {
            let image = monomial_differential(n, mask, d_generators);
            for (m, c) in image.terms() {
                d.set(position[m as usize], col, c.clone());
            }
        }
        diff.push(d);
    }

    let cdga = CdgaFinite::new(dims, labels, mult, diff)?;
    Ok(ExteriorCdga { cdga, masks })
}

/// Derivation extension: d(α_{s1}∧...∧α_{sp}) = Σ_t (-1)^{t-1}
/// α_{s1}∧...∧dα_{st}∧...∧α_{sp}.
fn monomial_differential(n: usize, mask: u32, d_generators: &[ExteriorElement]) -> ExteriorElement {
    let indices = mask_indices(mask);
    let mut out = ExteriorElement::zero(n);
    for (t, &s) in indices.iter().enumerate() {
        if d_generators[s].is_zero() {
            continue;
        }
        let before: u32 = mask & ((1 << s) - 1);
        let after: u32 = mask & !((1 << (s + 1)) - 1);
        let mut term = ExteriorElement::monomial(n, before, Rational::one())
            .wedge(&d_generators[s])
            .wedge(&ExteriorElement::monomial(n, after, Rational::one()));
        if t % 2 == 1 {
            term = term.scale(&-Rational::one());
        }
        out = out.add(&term);
    }
    out
}

/// Differential of a 1-form given by covector coefficients, without
/// building the full complex: dα = -Σ_k a_k Σ_{i<j} c_{ij}^k α_i∧α_j.
pub fn covector_differential(l: &LieAlgebra, alpha: &[Rational]) -> ExteriorElement {
    assert_eq!(alpha.len(), l.dim());
    let n = l.dim();
    let mut out = ExteriorElement::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let bracket = l.bracket_basis(i, j);
            let mut pairing = Rational::zero();
            for (a, c) in alpha.iter().zip(&bracket) {
                if !a.is_zero() && !c.is_zero() {
                    pairing = &pairing + &(a * c);
                }
            }
            out.add_term((1 << i) | (1 << j), -pairing);
        }
    }
    out
}

/// Images of the dual generators under the Chevalley–Eilenberg
/// differential.
fn ce_generator_differentials(l: &LieAlgebra) -> Vec<ExteriorElement> {
    (0..l.dim())
        .map(|k| {
            let mut e = vec![Rational::zero(); l.dim()];
            e[k] = Rational::one();
            covector_differential(l, &e)
        })
        .collect()
}

/// The Chevalley–Eilenberg CDGA (Λ*g*, d) of a Lie algebra.
///
/// Valid for any Lie algebra; for nilpotent g its cohomology computes the
/// cohomology of the associated nilmanifold.
pub fn chevalley_eilenberg(l: &LieAlgebra) -> ExteriorCdga {
    exterior_cdga(l.dim(), &ce_generator_differentials(l), "a")
        .expect("Chevalley-Eilenberg construction satisfies the CDGA axioms")
}

/// Betti numbers and echelon-normalized representatives per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomology {
    pub betti: Vec<usize>,
    /// `representatives[p]`: closed degree-p coefficient vectors spanning a
    /// complement of the exact subspace.
    pub representatives: Vec<Vec<Vec<Rational>>>,
}

impl Cohomology {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Cohomology of a finite CDGA: betti_p = dim ker d_p - rank d_{p-1},
/// with deterministic representatives.
pub fn cohomology(a: &CdgaFinite) -> Cohomology {
    let top = a.top_degree();
    let mut betti = Vec::with_capacity(top + 1);
    let mut representatives = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let closed = a.differential(p).kernel_basis();
        let mut exact = EchelonTracker::new();
        if p > 0 {
            let d_prev = a.differential(p - 1);
            for j in 0..d_prev.cols() {
                exact.insert(&d_prev.column(j));
            }
        }
        let dim_h = closed.len() - exact.rank();
        let mut kept = Vec::new();
        let mut span = exact.clone();
        for z in &closed {
            if span.insert(z) {
                kept.push(z.clone());
            }
        }
        debug_assert_eq!(kept.len(), dim_h);
        let mut normalizer = EchelonTracker::new();
        for z in &kept {
            normalizer.insert(z);
        }
        betti.push(dim_h);
        representatives.push(normalizer.into_rows());
    }
    Cohomology {
        betti,
        representatives,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdaptedBasisError {
    #[error(
        "algebra is not nilpotent: the closedness flag stabilizes at dimension {reached} < {dim}"
    )]
    NotNilpotent { reached: usize, dim: usize },
}

/// Ordered dual basis refining the flag V_0 ⊆ V_1 ⊆ ... with the first
/// k-1 forms closed and strictly triangular differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Rows: adapted covectors on the standard dual basis.
    pub forms: Vec<Vec<Rational>>,
    /// k - 1 = number of closed forms = dim H¹.
    pub k: usize,
    /// Nonzero γ_l^{ij} with i < j < l (0-based indices), in
    /// lexicographic (l, i, j) order: dα_l = -Σ γ_l^{ij} α_i∧α_j.
    pub gamma: Vec<(usize, usize, usize, Rational)>,
}

impl AdaptedBasis {
    pub fn gamma_at(&self, l: usize, i: usize, j: usize) -> Rational {
        self.gamma
            .iter()
            .find(|(gl, gi, gj, _)| (*gl, *gi, *gj) == (l, i, j))
            .map(|(_, _, _, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Re-derives dα_l for every l and checks the defining identities:
    /// the γ expansion, γ = 0 for l < k, and [α_1..α_{k-1}] spanning H¹.
    pub fn verify(&self, l: &LieAlgebra) -> bool {
        let n = l.dim();
        for (idx, form) in self.forms.iter().enumerate() {
            let d_form = covector_differential(l, form);
            let mut expansion = ExteriorElement::zero(n);
            for (gl, gi, gj, coeff) in &self.gamma {
                if *gl != idx {
                    continue;
                }
                if !(*gi < *gj && *gj < *gl) {
                    return false;
                }
                let wedge = ExteriorElement::from_covector_coeffs(&self.forms[*gi])
                    .wedge(&ExteriorElement::from_covector_coeffs(&self.forms[*gj]));
                expansion = expansion.add(&wedge.scale(&-coeff.clone()));
            }
            if d_form != expansion {
                return false;
            }
            if idx < self.k - 1 && !d_form.is_zero() {
                return false;
            }
        }
        // the closed forms must represent a basis of H¹ = ker d|_{g*}
        let d1 = chevalley_eilenberg_degree_one(l);
        let mut h1 = EchelonTracker::new();
        for v in d1.kernel_basis() {
            h1.insert(&v);
        }
        if h1.rank() != self.k - 1 {
            return false;
        }
        let mut closed_span = EchelonTracker::new();
        for form in &self.forms[..self.k - 1] {
            if !h1.contains(form) || !closed_span.insert(form) {
                return false;
            }
        }
        closed_span.rank() == self.k - 1
    }
}

/// Matrix of d restricted to degree 1 (rows: lex degree-2 monomials).
pub fn chevalley_eilenberg_degree_one(l: &LieAlgebra) -> QMatrix {
    let n = l.dim();
    let basis2 = subsets(n, 2);
    let mut d = QMatrix::zeros(basis2.len(), n);
    for (col, image) in ce_generator_differentials(l).iter().enumerate() {
        for (row, &mask) in basis2.iter().enumerate() {
            d.set(row, col, image.coefficient(mask));
        }
    }
    d
}

/// First Betti number dim H¹ = dim ker(d|_{g*}), computed without
/// building the full complex.
pub fn first_betti(l: &LieAlgebra) -> usize {
    l.dim() - chevalley_eilenberg_degree_one(l).rank()
}

/// Computes the adapted basis along the closedness flag. Deterministic:
/// each flag level contributes its canonical echelon basis vectors in
/// order, skipping those already in the span of earlier forms.
pub fn adapted_basis(l: &LieAlgebra) -> Result<AdaptedBasis, AdaptedBasisError> {
    let n = l.dim();
    let d1 = chevalley_eilenberg_degree_one(l);
    let basis2 = subsets(n, 2);

    // flag levels as echelon trackers over g*
    let mut levels: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut current = {
        let mut t = EchelonTracker::new();
        for v in d1.kernel_basis() {
            t.insert(&v);
        }
        t
    };
    levels.push(current.rows().to_vec());
    while current.rank() < n {
        // Λ² of the current level, as degree-2 coordinate columns
        let level_rows = current.rows().to_vec();
        let mut wedge_cols: Vec<Vec<Rational>> = Vec::new();
        for (i, a) in level_rows.iter().enumerate() {
            for b in level_rows.iter().skip(i + 1) {
                let w = ExteriorElement::from_covector_coeffs(a)
                    .wedge(&ExteriorElement::from_covector_coeffs(b));
                wedge_cols.push(
                    w.coefficients_on(&basis2)
                        .expect("wedge of 1-forms has degree 2"),
                );
            }
        }
        // next level = {α : d1 α ∈ span(wedge_cols)}: kernel of [d1 | S]
        let s_cols = wedge_cols.len();
        let combined = QMatrix::from_fn(basis2.len(), n + s_cols, |r, c| {
            if c < n {
                d1.at(r, c).clone()
            } else {
                wedge_cols[c - n][r].clone()
            }
        });
        let mut next = EchelonTracker::new();
        for v in combined.kernel_basis() {
            next.insert(&v[..n]);
        }
        if next.rank() == current.rank() {
            return Err(AdaptedBasisError::NotNilpotent {
                reached: next.rank(),
                dim: n,
            });
        }
        levels.push(next.rows().to_vec());
        current = next;
    }

    let k = levels[0].len() + 1;
    let mut ordered = EchelonTracker::new();
    let mut forms: Vec<Vec<Rational>> = Vec::new();
    for level in &levels {
        for v in level {
            if ordered.insert(v) {
                forms.push(v.clone());
            }
        }
    }
    debug_assert_eq!(forms.len(), n);

    // change of basis on Λ²: solve for dα̃_l in the α̃_i∧α̃_j coordinates
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let wedge_matrix = QMatrix::from_fn(basis2.len(), pairs.len(), |r, c| {
        let (i, j) = pairs[c];
        ExteriorElement::from_covector_coeffs(&forms[i])
            .wedge(&ExteriorElement::from_covector_coeffs(&forms[j]))
            .coefficient(basis2[r])
    });
    let mut gamma = Vec::new();
    for (l_idx, form) in forms.iter().enumerate() {
        let d_form = covector_differential(l, form);
        if d_form.is_zero() {
            continue;
        }
        let rhs = d_form
            .coefficients_on(&basis2)
            .expect("differential of a 1-form has degree 2");
        let coords = wedge_matrix
            .solve(&rhs)
            .expect("shape")
            .expect("adapted wedge basis spans Λ²");
        for (c, coeff) in coords.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (i, j) = pairs[c];
            assert!(
                i < j && j < l_idx,
                "adapted differential is not strictly triangular"
            );
            gamma.push((l_idx, i, j, -coeff.clone()));
        }
    }
    gamma.sort_by_key(|(l, i, j, _)| (*l, *i, *j));

    Ok(AdaptedBasis { forms, k, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn ce_of_abelian_has_zero_differential() {
        let ce = chevalley_eilenberg(&LieAlgebra::abelian(3));
        for p in 0..=3 {
            assert!(ce.cdga.differential(p).is_zero());
        }
    }

    #[test]
    fn ce_of_h11_differential_on_generators() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        let gens = super::ce_generator_differentials(&h);
        assert!(gens[0].is_zero());
        assert!(gens[1].is_zero());
        // dα3 = -α1∧α2
        assert_eq!(gens[2], ExteriorElement::monomial(3, 0b011, rat(-1)));
    }

    #[test]
    fn ce_of_h12_differential_on_generators() {
        let h = LieAlgebra::heisenberg(2).unwrap();
        let gens = super::ce_generator_differentials(&h);
        for g in gens.iter().take(4) {
            assert!(g.is_zero());
        }
        let mut expected = ExteriorElement::monomial(5, 0b00011, rat(-1));
        expected.add_term(0b01100, rat(-1));
        assert_eq!(gens[4], expected);
    }

    #[test]
    fn betti_of_abelian_is_binomial() {
        let ce = chevalley_eilenberg(&LieAlgebra::abelian(3));
        assert_eq!(cohomology(&ce.cdga).betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn betti_of_h11() {
        let ce = chevalley_eilenberg(&LieAlgebra::heisenberg(1).unwrap());
        let h = cohomology(&ce.cdga);
        assert_eq!(h.betti, vec![1, 2, 2, 1]);
        assert_eq!(h.euler_characteristic(), 0);
    }

    #[test]
    fn betti_low_degrees_of_h12() {
        let ce = chevalley_eilenberg(&LieAlgebra::heisenberg(2).unwrap());
        let h = cohomology(&ce.cdga);
        assert_eq!(h.betti[0], 1);
        assert_eq!(h.betti[1], 4);
    }

    #[test]
    fn representatives_are_closed_and_independent_of_exact() {
        let ce = chevalley_eilenberg(&LieAlgebra::heisenberg(1).unwrap());
        let h = cohomology(&ce.cdga);
        for p in 0..=3 {
            assert_eq!(h.representatives[p].len(), h.betti[p]);
            for rep in &h.representatives[p] {
                let image = ce.cdga.differential(p).mul_vec(rep).unwrap();
                assert!(
                    image.iter().all(|c| c.is_zero()),
                    "representative not closed"
                );
            }
        }
    }

    #[test]
    fn adapted_basis_of_abelian() {
        let ab = adapted_basis(&LieAlgebra::abelian(3)).unwrap();
        assert_eq!(ab.k, 4);
        assert!(ab.gamma.is_empty());
        assert!(ab.verify(&LieAlgebra::abelian(3)));
    }

    #[test]
    fn adapted_basis_of_h11() {
        let h = LieAlgebra::heisenberg(1).unwrap();
        let ab = adapted_basis(&h).unwrap();
        assert_eq!(ab.k, 3);
        assert_eq!(ab.gamma, vec![(2, 0, 1, rat(1))]);
        assert!(ab.verify(&h));
    }

    #[test]
    fn adapted_basis_of_step_three_algebra() {
        // [e1,e2]=e3, [e1,e3]=e4, plus a central direction e5
        let l5 = simple(5, &[(0, 1, 2), (0, 2, 3)]);
        let ab = adapted_basis(&l5).unwrap();
        assert_eq!(ab.k, 4);
        assert!(ab.verify(&l5));
        assert_eq!(first_betti(&l5), 3);
    }

    #[test]
    fn adapted_basis_rejects_non_nilpotent() {
        let solvable = simple(2, &[(0, 1, 1)]);
        assert!(matches!(
            adapted_basis(&solvable),
            Err(AdaptedBasisError::NotNilpotent { .. })
        ));
    }

    #[test]
    fn first_betti_matches_full_cohomology() {
        for l in [
            LieAlgebra::abelian(4),
            LieAlgebra::heisenberg(1).unwrap(),
            LieAlgebra::heisenberg(2).unwrap(),
            simple(5, &[(0, 1, 2), (0, 2, 3)]),
        ] {
            let ce = chevalley_eilenberg(&l);
            assert_eq!(first_betti(&l), cohomology(&ce.cdga).betti[1]);
        }
    }
}
