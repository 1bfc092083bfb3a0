//! Degree-preserving multiplicative chain maps between finite CDGAs,
//! and the induced-map computation deciding quasi-isomorphism.

use super::cdga::{sparse_add, sparse_eq, CdgaFinite, GradedElement, SparseVec};
use super::cohomology;
use crate::exactlin::{EchelonTracker, QMatrix, Rational};
use num_traits::{One, Zero};

/// First violated morphism condition, in a fixed check order: shapes,
/// unit, chain map (degree then index), multiplicativity (flat pair
/// order). Witnesses are basis labels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismFailure {
    #[error("degree {degree}: map shape {rows}x{cols} does not match target x source dims")]
    Degree {
        degree: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unit is not sent to the unit")]
    NotUnital,
    #[error("not a chain map on basis element {witness} (degree {degree})")]
    NotChainMap { degree: usize, witness: String },
    #[error("not multiplicative on the pair ({a}, {b})")]
    NotMultiplicative { a: String, b: String },
}

/// A morphism given by per-degree matrices of basis images.
#[derive(Debug, Clone)]
pub struct CdgaMorphism {
    pub source: CdgaFinite,
    pub target: CdgaFinite,
    /// `maps[p]`: target.dim(p) × source.dim(p); degrees above the target
    /// top have zero rows.
    pub maps: Vec<QMatrix>,
}

/// Per-degree comparison of induced cohomology maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoDegree {
    pub degree: usize,
    pub induced_rank: usize,
    pub betti_source: usize,
    pub betti_target: usize,
}

impl QuasiIsoDegree {
    pub fn bijective(&self) -> bool {
        self.induced_rank == self.betti_source && self.induced_rank == self.betti_target
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub quasi_iso: bool,
    pub degrees: Vec<QuasiIsoDegree>,
}

impl CdgaMorphism {
    /// Applies the morphism degreewise.
    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let mut out = self.target.zero_element();
        for (p, v) in x.coeffs.iter().enumerate() {
            if p >= self.maps.len() {
                debug_assert!(v.iter().all(Zero::is_zero));
                continue;
            }
            let image = self.maps[p].mul_vec(v).expect("map shape");
            for (i, c) in image.into_iter().enumerate() {
                out.coeffs[p][i] = &out.coeffs[p][i] + &c;
            }
        }
        out
    }

    /// Checks all morphism conditions on the basis; `Ok(())` means the
    /// map preserves degree, the unit, differentials, and products.
    pub fn verify(&self) -> Result<(), MorphismFailure> {
        let src = &self.source;
        let tgt = &self.target;
        if self.maps.len() != src.dims().len() {
            return Err(MorphismFailure::Degree {
                degree: self.maps.len(),
                rows: 0,
                cols: 0,
            });
        }
        for (p, map) in self.maps.iter().enumerate() {
            if map.rows() != tgt.dim(p) || map.cols() != src.dim(p) {
                return Err(MorphismFailure::Degree {
                    degree: p,
                    rows: map.rows(),
                    cols: map.cols(),
                });
            }
        }
        if !sparse_eq(&self.image_sparse(0, 0), &vec![(0, Rational::one())]) {
            return Err(MorphismFailure::NotUnital);
        }
        for (p, i) in src.basis_indices() {
            let lhs = tgt.d_sparse(p, &self.image_sparse(p, i));
            let rhs = self.apply_sparse(p + 1, src.diff_column_sparse(p, i));
            if !sparse_eq(&lhs, &rhs) {
                return Err(MorphismFailure::NotChainMap {
                    degree: p,
                    witness: src.label(p, i).to_string(),
                });
            }
        }
        // basis images once, then everything stays sparse
        let images: Vec<Vec<SparseVec>> = (0..src.dims().len())
            .map(|p| (0..src.dim(p)).map(|i| self.image_sparse(p, i)).collect())
            .collect();
        for (p, i) in src.basis_indices() {
            for (q, j) in src.basis_indices() {
                let lhs = self.apply_sparse(p + q, src.product_sparse((p, i), (q, j)));
                let rhs = tgt.mul_sparse(p, &images[p][i], q, &images[q][j]);
                if !sparse_eq(&lhs, &rhs) {
                    return Err(MorphismFailure::NotMultiplicative {
                        a: src.label(p, i).to_string(),
                        b: src.label(q, j).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Nonzero entries of the image of source basis element (p, i).
    fn image_sparse(&self, p: usize, i: usize) -> SparseVec {
        let map = &self.maps[p];
        (0..map.rows())
            .filter(|&r| !map.at(r, i).is_zero())
            .map(|r| (r, map.at(r, i).clone()))
            .collect()
    }

    /// f applied to a sparse degree-p source vector; empty above the top.
    fn apply_sparse(&self, p: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if p >= self.maps.len() {
            debug_assert!(v.is_empty());
            return out;
        }
        for (i, c) in v {
            sparse_add(&mut out, &self.image_sparse(p, *i), c);
        }
        out
    }

    /// Computes the induced map on cohomology in every degree; quasi-iso
    /// iff each induced map is bijective. Verifies the morphism first.
    pub fn is_quasi_iso(&self) -> Result<QuasiIsoReport, MorphismFailure> {
        self.verify()?;
        let src_h = cohomology(&self.source);
        let tgt_h = cohomology(&self.target);
        let top = self.source.top_degree().max(self.target.top_degree());
        let mut degrees = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let betti_source = src_h.betti.get(p).copied().unwrap_or(0);
            let betti_target = tgt_h.betti.get(p).copied().unwrap_or(0);
            let induced_rank = if betti_source == 0 || self.target.dim(p) == 0 {
                0
            } else {
                self.induced_matrix(p, &src_h.representatives[p], &tgt_h.representatives[p])
                    .rank()
            };
            degrees.push(QuasiIsoDegree {
                degree: p,
                induced_rank,
                betti_source,
                betti_target,
            });
        }
        Ok(QuasiIsoReport {
            quasi_iso: degrees.iter().all(QuasiIsoDegree::bijective),
            degrees,
        })
    }

    /// Matrix of H^p(f) in the representative bases: each image is closed,
    /// so it decomposes uniquely as exact + span(target representatives).
    fn induced_matrix(
        &self,
        p: usize,
        src_reps: &[Vec<Rational>],
        tgt_reps: &[Vec<Rational>],
    ) -> QMatrix {
        let mut exact = EchelonTracker::new();
        if p > 0 {
            let d_prev = self.target.differential(p - 1);
            for j in 0..d_prev.cols() {
                exact.insert(&d_prev.column(j));
            }
        }
        let exact_rows = exact.rows().to_vec();
        let tgt_dim = self.target.dim(p);
        let n_cols = exact_rows.len() + tgt_reps.len();
        let decomposition = QMatrix::from_fn(tgt_dim, n_cols, |r, c| {
            if c < exact_rows.len() {
                exact_rows[c][r].clone()
            } else {
                tgt_reps[c - exact_rows.len()][r].clone()
            }
        });
        let mut induced = QMatrix::zeros(tgt_reps.len(), src_reps.len());
        for (col, z) in src_reps.iter().enumerate() {
            let image = self.maps[p].mul_vec(z).expect("map shape");
            let coords = decomposition
                .solve(&image)
                .expect("shape")
                .expect("image of a closed element is closed");
            for (row, coeff) in coords[exact_rows.len()..].iter().enumerate() {
                induced.set(row, col, coeff.clone());
            }
        }
        induced
    }
}

/// The identity morphism of a CDGA.
pub fn identity_morphism(a: &CdgaFinite) -> CdgaMorphism {
    let maps = (0..a.dims().len())
        .map(|p| QMatrix::identity(a.dim(p)))
        .collect();
    CdgaMorphism {
        source: a.clone(),
        target: a.clone(),
        maps,
    }
}

/// The morphism sending the unit to the unit and every positive degree
/// to zero (rarely a chain map; used to exercise failure reporting).
pub fn unit_only_morphism(a: &CdgaFinite) -> CdgaMorphism {
    let maps = (0..a.dims().len())
        .map(|p| {
            if p == 0 {
                let mut m = QMatrix::zeros(a.dim(0), a.dim(0));
                m.set(0, 0, Rational::one());
                for i in 1..a.dim(0) {
                    m.set(i, i, Rational::one());
                }
                m
            } else {
                QMatrix::zeros(a.dim(p), a.dim(p))
            }
        })
        .collect();
    CdgaMorphism {
        source: a.clone(),
        target: a.clone(),
        maps,
    }
}
