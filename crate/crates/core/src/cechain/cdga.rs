//! Finitely based commutative differential graded algebras.
//!
//! A `CdgaFinite` carries an explicit basis per degree, a multiplication
//! table on basis pairs, and a per-degree differential matrix. Every
//! axiom — d∘d = 0, graded commutativity, the Leibniz rule, and a unit in
//! degree 0 — is validated eagerly at construction; downstream checks rely
//! on the axioms holding.

use crate::exactlin::{format_rational, QMatrix, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Sparse coefficient vector within one degree: (basis index, coefficient).
pub type SparseVec = Vec<(usize, Rational)>;

pub(crate) fn sparse_add(acc: &mut SparseVec, other: &SparseVec, factor: &Rational) {
    for (idx, coeff) in other {
        let term = coeff * factor;
        if term.is_zero() {
            continue;
        }
        match acc.iter_mut().find(|(i, _)| i == idx) {
            Some((_, existing)) => *existing = &*existing + &term,
            None => acc.push((*idx, term)),
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
    acc.sort_by_key(|(i, _)| *i);
}

pub(crate) fn sparse_eq(a: &SparseVec, b: &SparseVec) -> bool {
    let mut diff = a.clone();
    sparse_add(&mut diff, b, &-Rational::one());
    diff.is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CdgaError {
    #[error("{context}: expected {expected}, found {found}")]
    Shape {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("no unit: degree 0 is empty")]
    NoUnit,
    #[error("basis element {witness} does not multiply to itself with the unit")]
    UnitNotIdentity { witness: String },
    #[error("d∘d != 0 starting in degree {degree}")]
    DSquaredNonzero { degree: usize },
    #[error("graded commutativity fails on ({a}, {b})")]
    NotGradedCommutative { a: String, b: String },
    #[error("Leibniz rule fails on ({a}, {b})")]
    LeibnizFails { a: String, b: String },
}

/// Element of a `CdgaFinite`, one dense coefficient vector per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub coeffs: Vec<Vec<Rational>>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    pub fn add_assign(&mut self, other: &GradedElement) {
        for (mine, theirs) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                *a = &*a + b;
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedElement {
        GradedElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|v| v.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// `Some(p)` if all nonzero coefficients live in degree `p`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degree = None;
        for (p, v) in self.coeffs.iter().enumerate() {
            if v.iter().any(|c| !c.is_zero()) {
                match degree {
                    None => degree = Some(p),
                    Some(_) => return None,
                }
            }
        }
        degree.or(Some(0))
    }
}

/// Finite CDGA with explicit basis, multiplication table, and differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdgaFinite {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    offsets: Vec<usize>,
    total: usize,
    /// `mult[flat(a)][flat(b)]` = product coefficients in degree |a|+|b|.
    mult: Vec<Vec<SparseVec>>,
    /// `diff[p]`: matrix of d from degree p to p+1 (zero rows at the top).
    diff: Vec<QMatrix>,
    /// `diff_cols[p][i]`: sparse column of `diff[p]`.
    diff_cols: Vec<Vec<SparseVec>>,
}

impl CdgaFinite {
    /// Builds and validates. `mult` is indexed by flat basis indices
    /// (degree-major); `diff[p]` must have shape `dims[p+1] × dims[p]`,
    /// with dims beyond the top degree read as 0.
    pub fn new(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        mult: Vec<Vec<SparseVec>>,
        diff: Vec<QMatrix>,
    ) -> Result<Self, CdgaError> {
        if labels.len() != dims.len() {
            return Err(CdgaError::Shape {
                context: "label table height",
                expected: dims.len(),
                found: labels.len(),
            });
        }
        for (p, l) in labels.iter().enumerate() {
            if l.len() != dims[p] {
                return Err(CdgaError::Shape {
                    context: "labels in one degree",
                    expected: dims[p],
                    found: l.len(),
                });
            }
        }
        if diff.len() != dims.len() {
            return Err(CdgaError::Shape {
                context: "differential table height",
                expected: dims.len(),
                found: diff.len(),
            });
        }
        let top = dims.len() - 1;
        for (p, d) in diff.iter().enumerate() {
            let out_dim = if p < top { dims[p + 1] } else { 0 };
            if d.rows() != out_dim || d.cols() != dims[p] {
                return Err(CdgaError::Shape {
                    context: "differential matrix shape",
                    expected: out_dim * dims[p],
                    found: d.rows() * d.cols(),
                });
            }
        }
        let mut offsets = vec![0usize; dims.len() + 1];
        for p in 0..dims.len() {
            offsets[p + 1] = offsets[p] + dims[p];
        }
        let total = offsets[dims.len()];
        if mult.len() != total || mult.iter().any(|row| row.len() != total) {
            return Err(CdgaError::Shape {
                context: "multiplication table size",
                expected: total * total,
                found: mult.len(),
            });
        }
        if dims[0] == 0 {
            return Err(CdgaError::NoUnit);
        }

        let diff_cols: Vec<Vec<SparseVec>> = diff
            .iter()
            .map(|d| {
                (0..d.cols())
                    .map(|j| {
                        (0..d.rows())
                            .filter(|&i| !d.at(i, j).is_zero())
                            .map(|i| (i, d.at(i, j).clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let cdga = CdgaFinite {
            dims,
            labels,
            offsets,
            total,
            mult,
            diff,
            diff_cols,
        };
        cdga.validate()?;
        Ok(cdga)
    }

    fn validate(&self) -> Result<(), CdgaError> {
        let top = self.top_degree();
        // d∘d = 0
        for p in 0..top.saturating_sub(1) {
            let dd = self.diff[p + 1]
                .mul(&self.diff[p])
                .expect("validated shapes");
            if !dd.is_zero() {
                return Err(CdgaError::DSquaredNonzero { degree: p });
            }
        }
        // unit acts as the identity on both sides
        for (p, i) in self.basis_indices() {
            let b = self.flat(p, i);
            let expected: SparseVec = vec![(i, Rational::one())];
            if !sparse_eq(&self.mult[self.flat(0, 0)][b], &expected)
                || !sparse_eq(&self.mult[b][self.flat(0, 0)], &expected)
            {
                return Err(CdgaError::UnitNotIdentity {
                    witness: self.label(p, i).to_string(),
                });
            }
        }
        // graded commutativity and Leibniz on all basis pairs
        for (p, i) in self.basis_indices() {
            for (q, j) in self.basis_indices() {
                let a = self.flat(p, i);
                let b = self.flat(q, j);
                let ab = &self.mult[a][b];
                let ba = &self.mult[b][a];
                let sign = if (p * q) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                let mut flipped = SparseVec::new();
                sparse_add(&mut flipped, ba, &sign);
                if !sparse_eq(ab, &flipped) {
                    return Err(CdgaError::NotGradedCommutative {
                        a: self.label(p, i).to_string(),
                        b: self.label(q, j).to_string(),
                    });
                }

                // d(ab) = d(a) b + (-1)^p a d(b), degreewise sparse
                let mut lhs = SparseVec::new();
                if p + q < top {
                    for (k, c) in ab {
                        sparse_add(&mut lhs, &self.diff_cols[p + q][*k], c);
                    }
                }
                let mut rhs = SparseVec::new();
                if p < top {
                    for (k, c) in &self.diff_cols[p][i] {
                        sparse_add(&mut rhs, &self.mult[self.flat(p + 1, *k)][b], c);
                    }
                }
                if q < top {
                    let sign = if p % 2 == 0 {
                        Rational::one()
                    } else {
                        -Rational::one()
                    };
                    for (k, c) in &self.diff_cols[q][j] {
                        sparse_add(&mut rhs, &self.mult[a][self.flat(q + 1, *k)], &(c * &sign));
                    }
                }
                if !sparse_eq(&lhs, &rhs) {
                    return Err(CdgaError::LeibnizFails {
                        a: self.label(p, i).to_string(),
                        b: self.label(q, j).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn label(&self, p: usize, i: usize) -> &str {
        &self.labels[p][i]
    }

    pub fn differential(&self, p: usize) -> &QMatrix {
        &self.diff[p]
    }

    fn flat(&self, p: usize, i: usize) -> usize {
        self.offsets[p] + i
    }

    pub fn basis_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dims.len()).flat_map(move |p| (0..self.dims[p]).map(move |i| (p, i)))
    }

    pub fn zero_element(&self) -> GradedElement {
        GradedElement {
            coeffs: self
                .dims
                .iter()
                .map(|&d| vec![Rational::zero(); d])
                .collect(),
        }
    }

    pub fn basis_element(&self, p: usize, i: usize) -> GradedElement {
        let mut e = self.zero_element();
        e.coeffs[p][i] = Rational::one();
        e
    }

    pub fn unit(&self) -> GradedElement {
        self.basis_element(0, 0)
    }

    /// Product of two elements through the basis table.
    pub fn mul(&self, x: &GradedElement, y: &GradedElement) -> GradedElement {
        let mut out = self.zero_element();
        let top = self.top_degree();
        for p in 0..self.dims.len() {
            for (i, xi) in x.coeffs[p].iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for q in 0..self.dims.len() {
                    if p + q > top {
                        break;
                    }
                    for (j, yj) in y.coeffs[q].iter().enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        let factor = xi * yj;
                        for (k, c) in &self.mult[self.flat(p, i)][self.flat(q, j)] {
                            out.coeffs[p + q][*k] = &out.coeffs[p + q][*k] + &(c * &factor);
                        }
                    }
                }
            }
        }
        out
    }

    /// Linear extension of the differential table.
    pub fn apply_d(&self, x: &GradedElement) -> GradedElement {
        let mut out = self.zero_element();
        for p in 0..self.top_degree() {
            for (i, xi) in x.coeffs[p].iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (k, c) in &self.diff_cols[p][i] {
                    out.coeffs[p + 1][*k] = &out.coeffs[p + 1][*k] + &(c * xi);
                }
            }
        }
        out
    }

    /// Sparse column of the product table for two basis elements.
    pub(crate) fn product_sparse(&self, a: (usize, usize), b: (usize, usize)) -> &SparseVec {
        &self.mult[self.flat(a.0, a.1)][self.flat(b.0, b.1)]
    }

    /// Sparse column of the differential on basis element (p, i).
    pub(crate) fn diff_column_sparse(&self, p: usize, i: usize) -> &SparseVec {
        &self.diff_cols[p][i]
    }

    /// Product of sparse degree-p and degree-q vectors, in degree p+q.
    pub(crate) fn mul_sparse(&self, p: usize, a: &SparseVec, q: usize, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if p + q > self.top_degree() {
            return out;
        }
        for (i, xi) in a {
            for (j, yj) in b {
                let factor = xi * yj;
                sparse_add(&mut out, self.product_sparse((p, *i), (q, *j)), &factor);
            }
        }
        out
    }

    /// Differential of a sparse degree-p vector, in degree p+1.
    pub(crate) fn d_sparse(&self, p: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if p >= self.top_degree() {
            return out;
        }
        for (i, c) in v {
            sparse_add(&mut out, &self.diff_cols[p][*i], c);
        }
        out
    }

    /// `x^k` in the algebra.
    pub fn power(&self, x: &GradedElement, k: usize) -> GradedElement {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.mul(&out, x);
        }
        out
    }

    /// Renders a degree-p coefficient vector against the basis labels.
    pub fn format_degree_vector(&self, p: usize, coeffs: &[Rational]) -> String {
        let mut parts = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = self.label(p, i);
            let magnitude = c.abs();
            let sign_prefix = if c < &Rational::zero() {
                if parts.is_empty() {
                    "-".to_string()
                } else {
                    " - ".to_string()
                }
            } else if parts.is_empty() {
                String::new()
            } else {
                " + ".to_string()
            };
            let body = if magnitude.is_one() && label != "1" {
                label.to_string()
            } else if label == "1" {
                format_rational(&magnitude)
            } else {
                format!("{} {label}", format_rational(&magnitude))
            };
            parts.push(format!("{sign_prefix}{body}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.concat()
        }
    }

    pub fn format_element(&self, x: &GradedElement) -> String {
        let mut parts = Vec::new();
        for (p, v) in x.coeffs.iter().enumerate() {
            if v.iter().any(|c| !c.is_zero()) {
                parts.push(self.format_degree_vector(p, v));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for CdgaFinite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CDGA with dims {:?}", self.dims)
    }
}
