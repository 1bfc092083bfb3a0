//! Finite-dimensional Lie algebras over the rationals.
//!
//! An algebra is stored as its structure constants on a fixed basis
//! `e_1, ..., e_n` (only the pairs `i < j` are kept; antisymmetry is
//! structural). Construction validates the Jacobi identity, so everything
//! downstream may assume it holds. The module also computes the usual
//! structural invariants (center, derived algebra, lower central series)
//! and recognizes algebras isomorphic to the generalized Heisenberg
//! algebra h(1, m): one-dimensional center equal to the derived algebra,
//! with a nondegenerate induced 2-cocycle on the quotient.

use crate::exactlin::{
    complement_basis, format_rational, EchelonTracker, LinearError, QMatrix, Rational,
};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieAlgebraError {
    #[error("Jacobi identity fails at (e{}, e{}, e{})", i + 1, j + 1, k + 1)]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },
    #[error("generator index e{} out of range 1..={dim}", index + 1)]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{}, e{}] declared more than once", i + 1, j + 1)]
    DuplicatePair { i: usize, j: usize },
    #[error("bracket [e{}, e{}] of a generator with itself", i + 1, i + 1)]
    SelfBracket { i: usize },
    #[error("Heisenberg algebra requires m >= 1")]
    HeisenbergSizeZero,
    #[error("dimension {dim} is even; no odd-dimensional structure applies")]
    EvenDimension { dim: usize },
    #[error("dimension {dim} is too small")]
    DimensionTooSmall { dim: usize },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("basis change matrix is singular or has the wrong shape")]
    SingularBasisChange,
    #[error("form is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("form is singular")]
    SingularForm,
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// Terms of one bracket value: (generator index, coefficient).
pub type BracketTerms = Vec<(usize, Rational)>;

/// One declared bracket: `[e_i, e_j] = sum of value`, indices 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketDecl {
    pub i: usize,
    pub j: usize,
    pub value: BracketTerms,
}

/// Lie algebra given by rational structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `table[pair_index(i, j)]` = coefficient vector of `[e_i, e_j]`, i < j.
    table: Vec<Vec<Rational>>,
}

/// Subspace of the coefficient space, kept as canonical reduced-echelon rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut tracker = EchelonTracker::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "subspace vector length");
            tracker.insert(&v);
        }
        Subspace {
            ambient_dim,
            basis: tracker.into_rows(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, QMatrix::identity(ambient_dim).row_vectors())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut tracker = EchelonTracker::new();
        for row in &self.basis {
            tracker.insert(row);
        }
        tracker.contains(v)
    }
}

/// Outcome of the Jacobi identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiCheck {
    Ok,
    Violation {
        i: usize,
        j: usize,
        k: usize,
        residual: Vec<Rational>,
    },
}

/// Nilpotency verdict with the step when it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nilpotency {
    Nilpotent { step: usize },
    NotNilpotent { stabilized: Subspace },
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Nilpotent { .. })
    }

    pub fn step(&self) -> Option<usize> {
        match self {
            Nilpotency::Nilpotent { step } => Some(*step),
            Nilpotency::NotNilpotent { .. } => None,
        }
    }
}

fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra from bracket declarations and validates the
    /// Jacobi identity. Pairs may be given in either order (antisymmetry
    /// is completed automatically), but each unordered pair at most once.
    pub fn new(dim: usize, decls: &[BracketDecl]) -> Result<Self, LieAlgebraError> {
        let mut table = vec![vec![Rational::zero(); dim]; dim * dim.saturating_sub(1) / 2];
        let mut seen = vec![false; table.len()];
        for decl in decls {
            let (mut i, mut j, mut flip) = (decl.i, decl.j, false);
            if i == j {
                return Err(LieAlgebraError::SelfBracket { i });
            }
            if i > j {
                std::mem::swap(&mut i, &mut j);
                flip = true;
            }
            for &(k, _) in &decl.value {
                if k >= dim {
                    return Err(LieAlgebraError::IndexOutOfRange { index: k, dim });
                }
            }
            if j >= dim {
                return Err(LieAlgebraError::IndexOutOfRange { index: j, dim });
            }
            let idx = pair_index(i, j, dim);
            if seen[idx] {
                return Err(LieAlgebraError::DuplicatePair { i, j });
            }
            seen[idx] = true;
            for (k, coeff) in &decl.value {
                let signed = if flip { -coeff.clone() } else { coeff.clone() };
                table[idx][*k] = &table[idx][*k] + &signed;
            }
        }
        let algebra = LieAlgebra { dim, table };
        match algebra.check_jacobi() {
            JacobiCheck::Ok => Ok(algebra),
            JacobiCheck::Violation { i, j, k, residual } => {
                Err(LieAlgebraError::JacobiViolation { i, j, k, residual })
            }
        }
    }

    /// Builds an algebra without validating Jacobi, for feeding tables
    /// to `check_jacobi` directly. `table` is indexed by (i, j), i < j,
    /// in row-major pair order.
    pub fn from_table_unchecked(dim: usize, table: Vec<Vec<Rational>>) -> Self {
        assert_eq!(table.len(), dim * dim.saturating_sub(1) / 2);
        for v in &table {
            assert_eq!(v.len(), dim);
        }
        LieAlgebra { dim, table }
    }

    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![vec![Rational::zero(); dim]; dim * dim.saturating_sub(1) / 2],
        }
    }

    /// The generalized Heisenberg algebra h(1, m): dimension 2m+1 with
    /// `[e_{2i-1}, e_{2i}] = e_{2m+1}` and all other brackets zero.
    pub fn heisenberg(m: usize) -> Result<Self, LieAlgebraError> {
        if m == 0 {
            return Err(LieAlgebraError::HeisenbergSizeZero);
        }
        let dim = 2 * m + 1;
        let mut algebra = LieAlgebra::abelian(dim);
        for i in 0..m {
            algebra.table[pair_index(2 * i, 2 * i + 1, dim)][dim - 1] = Rational::one();
        }
        Ok(algebra)
    }

    /// Direct sum: brackets of `b` shifted past the generators of `a`.
    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let dim = a.dim + b.dim;
        let mut sum = LieAlgebra::abelian(dim);
        for i in 0..a.dim {
            for j in i + 1..a.dim {
                let mut v = a.table[pair_index(i, j, a.dim)].clone();
                v.resize(dim, Rational::zero());
                sum.table[pair_index(i, j, dim)] = v;
            }
        }
        for i in 0..b.dim {
            for j in i + 1..b.dim {
                let src = &b.table[pair_index(i, j, b.dim)];
                let mut v = vec![Rational::zero(); dim];
                for (k, coeff) in src.iter().enumerate() {
                    v[a.dim + k] = coeff.clone();
                }
                sum.table[pair_index(a.dim + i, a.dim + j, dim)] = v;
            }
        }
        sum
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]` as a coefficient vector, any index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        if i == j {
            return vec![Rational::zero(); self.dim];
        }
        if i < j {
            self.table[pair_index(i, j, self.dim)].clone()
        } else {
            self.table[pair_index(j, i, self.dim)]
                .iter()
                .map(|c| -c.clone())
                .collect()
        }
    }

    /// Bilinear extension of the bracket to coefficient vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let coeff = &x[i] * &y[j] - &x[j] * &y[i];
                if coeff.is_zero() {
                    continue;
                }
                for (k, c) in self.table[pair_index(i, j, self.dim)].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Nonzero declared brackets `(i, j, value)` with i < j, for printing.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, BracketTerms)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.table[pair_index(i, j, self.dim)];
                let terms: BracketTerms = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    /// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0`
    /// on all triples; the identity is alternating, so i < j < k suffices.
    /// Reports the first violating triple in lexicographic order.
    pub fn check_jacobi(&self) -> JacobiCheck {
        let basis = QMatrix::identity(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let ei = basis.row(i);
                    let ej = basis.row(j);
                    let ek = basis.row(k);
                    let mut residual = self.bracket(&self.bracket(ei, ej), ek);
                    for (r, term) in residual
                        .iter_mut()
                        .zip(self.bracket(&self.bracket(ej, ek), ei))
                    {
                        *r = &*r + &term;
                    }
                    for (r, term) in residual
                        .iter_mut()
                        .zip(self.bracket(&self.bracket(ek, ei), ej))
                    {
                        *r = &*r + &term;
                    }
                    if residual.iter().any(|c| !c.is_zero()) {
                        return JacobiCheck::Violation { i, j, k, residual };
                    }
                }
            }
        }
        JacobiCheck::Ok
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`, up to and
    /// including the first term whose successor repeats it.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let current = series.last().unwrap();
            let mut generators = Vec::new();
            for i in 0..self.dim {
                let mut e = vec![Rational::zero(); self.dim];
                e[i] = Rational::one();
                for b in current.basis() {
                    generators.push(self.bracket(&e, b));
                }
            }
            let next = Subspace::span(self.dim, generators);
            if &next == current {
                break;
            }
            series.push(next);
            if series.last().unwrap().is_zero() {
                break;
            }
        }
        series
    }

    /// Nilpotency from the lower central series; the step is the index of
    /// the first zero term.
    pub fn nilpotency(&self) -> Nilpotency {
        let series = self.lower_central_series();
        let last = series.last().unwrap();
        if last.is_zero() {
            Nilpotency::Nilpotent {
                step: series.len() - 1,
            }
        } else {
            Nilpotency::NotNilpotent {
                stabilized: last.clone(),
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency().is_nilpotent()
    }

    /// Center `{x : [x, y] = 0 for all y}`, echelon-normalized.
    pub fn center(&self) -> Subspace {
        // rows: one equation per (basis vector j, output coordinate k)
        let mut rows = Vec::with_capacity(self.dim * self.dim);
        for j in 0..self.dim {
            let columns: Vec<Vec<Rational>> =
                (0..self.dim).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..self.dim {
                rows.push((0..self.dim).map(|i| columns[i][k].clone()).collect());
            }
        }
        let system = QMatrix::from_rows(rows).expect("uniform row length");
        Subspace::span(self.dim, system.kernel_basis())
    }

    /// Derived algebra [g, g]: span of all basis brackets.
    pub fn derived(&self) -> Subspace {
        Subspace::span(self.dim, self.table.iter().cloned())
    }

    /// Transports the algebra to the basis formed by the columns of `p`.
    pub fn conjugate(&self, p: &QMatrix) -> Result<Self, LieAlgebraError> {
        if !p.is_square() || p.rows() != self.dim {
            return Err(LieAlgebraError::SingularBasisChange);
        }
        let inv = p.inverse().ok_or(LieAlgebraError::SingularBasisChange)?;
        let mut table = Vec::with_capacity(self.table.len());
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let w = self.bracket(&p.column(a), &p.column(b));
                table.push(inv.mul_vec(&w).expect("square shape"));
            }
        }
        let out = LieAlgebra {
            dim: self.dim,
            table,
        };
        debug_assert_eq!(out.check_jacobi(), JacobiCheck::Ok);
        Ok(out)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}", self.dim)?;
        for (i, j, terms) in self.nonzero_brackets() {
            let rhs: Vec<String> = terms
                .iter()
                .map(|(k, c)| {
                    if c.is_one() {
                        format!("e{}", k + 1)
                    } else {
                        format!("{} e{}", format_rational(c), k + 1)
                    }
                })
                .collect();
            write!(f, "; [e{}, e{}] = {}", i + 1, j + 1, rhs.join(" + "))?;
        }
        Ok(())
    }
}

/// Witness that an algebra is isomorphic to h(1, m): an invertible basis
/// change whose transported structure constants equal `heisenberg(m)`'s
/// table exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergWitness {
    pub m: usize,
    pub basis_change: QMatrix,
}

impl HeisenbergWitness {
    /// Re-derives the transported brackets and compares with h(1, m).
    pub fn verify(&self, original: &LieAlgebra) -> bool {
        match original.conjugate(&self.basis_change) {
            Ok(transported) => transported == LieAlgebra::heisenberg(self.m).unwrap(),
            Err(_) => false,
        }
    }
}

/// First structural condition that fails during Heisenberg recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeisenbergObstruction {
    /// The center does not have dimension 1.
    CenterDim { dim: usize },
    /// The derived algebra differs from the center.
    DerivedNotCenter { derived_dim: usize },
    /// The induced 2-cocycle on g/z is degenerate; carries a radical vector.
    DegenerateCocycle { radical: Vec<Rational> },
}

impl fmt::Display for HeisenbergObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeisenbergObstruction::CenterDim { dim } => {
                write!(f, "center dimension {dim} != 1")
            }
            HeisenbergObstruction::DerivedNotCenter { derived_dim } => {
                write!(
                    f,
                    "derived algebra (dim {derived_dim}) differs from the center"
                )
            }
            HeisenbergObstruction::DegenerateCocycle { .. } => {
                write!(f, "induced 2-cocycle on g/z is degenerate")
            }
        }
    }
}

/// Result of structural Heisenberg recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Heisenberg(HeisenbergWitness),
    Obstructed(HeisenbergObstruction),
}

/// Deterministic Darboux pairing of a skew form given by `omega`.
///
/// Returns pairs (u_i, v_i) with omega(u_i, v_j) = delta_ij and all other
/// pairings zero, or a radical vector when the form is degenerate.
type DarbouxPair = (Vec<Rational>, Vec<Rational>);

fn darboux_pairs(omega: &QMatrix) -> Result<Vec<DarbouxPair>, Vec<Rational>> {
    let n = omega.rows();
    let pairing = |x: &[Rational], y: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc = &acc + &(xi * omega.at(i, j) * yj);
                }
            }
        }
        acc
    };
    let mut remaining: Vec<Vec<Rational>> = QMatrix::identity(n).row_vectors();
    let mut pairs = Vec::new();
    while !remaining.is_empty() {
        let u = remaining.remove(0);
        let partner = remaining
            .iter()
            .position(|w| !pairing(&u, w).is_zero())
            .ok_or_else(|| u.clone())?;
        let w = remaining.remove(partner);
        let scale = pairing(&u, &w);
        let v: Vec<Rational> = w.iter().map(|c| c / &scale).collect();
        for z in remaining.iter_mut() {
            let zu = pairing(z, &u);
            let zv = pairing(z, &v);
            for ((zi, ui), vi) in z.iter_mut().zip(&u).zip(&v) {
                // projection onto the symplectic complement of (u, v)
                *zi = &*zi - &(&zv * ui) + &(&zu * vi);
            }
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

/// Basis change bringing a nondegenerate skew form to the standard
/// symplectic block form: columns ordered (q_1..q_m, p_1..p_m) so that
/// Pᵀ B P = [[0, I], [-I, 0]].
pub fn symplectic_basis(b: &QMatrix) -> Result<QMatrix, LieAlgebraError> {
    let n = b.rows();
    if !b.is_square() {
        return Err(LieAlgebraError::NotSkewSymmetric);
    }
    for i in 0..n {
        for j in 0..n {
            if *b.at(i, j) != -b.at(j, i).clone() {
                return Err(LieAlgebraError::NotSkewSymmetric);
            }
        }
    }
    let pairs = darboux_pairs(b).map_err(|_| LieAlgebraError::SingularForm)?;
    let m = pairs.len();
    let mut p = QMatrix::zeros(n, n);
    for (idx, (q, pv)) in pairs.iter().enumerate() {
        for r in 0..n {
            p.set(r, idx, q[r].clone());
            p.set(r, m + idx, pv[r].clone());
        }
    }
    Ok(p)
}

/// Structural recognition of h(1, m): center of dimension 1 equal to the
/// derived algebra, and a nondegenerate induced 2-cocycle on g/z. On
/// success the witness transports the input brackets exactly onto
/// `heisenberg(m)`'s table (identity when the input is already h(1, m)).
pub fn recognize_heisenberg(l: &LieAlgebra) -> Result<Recognition, LieAlgebraError> {
    let n = l.dim();
    if n.is_multiple_of(2) {
        return Err(LieAlgebraError::EvenDimension { dim: n });
    }
    if n < 3 {
        return Err(LieAlgebraError::DimensionTooSmall { dim: n });
    }
    if !l.is_nilpotent() {
        return Err(LieAlgebraError::NotNilpotent);
    }
    let m = (n - 1) / 2;

    let center = l.center();
    if center.dim() != 1 {
        return Ok(Recognition::Obstructed(HeisenbergObstruction::CenterDim {
            dim: center.dim(),
        }));
    }
    let derived = l.derived();
    if derived != center {
        return Ok(Recognition::Obstructed(
            HeisenbergObstruction::DerivedNotCenter {
                derived_dim: derived.dim(),
            },
        ));
    }

    let t = center.basis()[0].clone();
    let lead = t
        .iter()
        .position(|c| !c.is_zero())
        .expect("center generator");
    let complement = complement_basis(center.basis(), n)?;
    debug_assert_eq!(complement.len(), 2 * m);

    // induced cocycle: [v_a, v_b] = omega(a, b) * t
    let mut omega = QMatrix::zeros(2 * m, 2 * m);
    for a in 0..2 * m {
        for b in a + 1..2 * m {
            let w = l.bracket(&complement[a], &complement[b]);
            let lambda = &w[lead] / &t[lead];
            debug_assert!(w.iter().zip(&t).all(|(wi, ti)| *wi == &lambda * ti));
            omega.set(a, b, lambda.clone());
            omega.set(b, a, -lambda);
        }
    }

    let pairs = match darboux_pairs(&omega) {
        Ok(pairs) => pairs,
        Err(radical) => {
            // lift the radical vector back to g coordinates
            let mut lifted = vec![Rational::zero(); n];
            for (a, coeff) in radical.iter().enumerate() {
                for (li, ci) in lifted.iter_mut().zip(&complement[a]) {
                    *li = &*li + &(coeff * ci);
                }
            }
            return Ok(Recognition::Obstructed(
                HeisenbergObstruction::DegenerateCocycle { radical: lifted },
            ));
        }
    };

    // columns: q_1, p_1, q_2, p_2, ..., t — the basis order of heisenberg(m)
    let lift = |coords: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        for (a, coeff) in coords.iter().enumerate() {
            for (vi, ci) in v.iter_mut().zip(&complement[a]) {
                *vi = &*vi + &(coeff * ci);
            }
        }
        v
    };
    let mut p = QMatrix::zeros(n, n);
    for (idx, (q, pv)) in pairs.iter().enumerate() {
        for (r, c) in lift(q).into_iter().enumerate() {
            p.set(r, 2 * idx, c);
        }
        for (r, c) in lift(pv).into_iter().enumerate() {
            p.set(r, 2 * idx + 1, c);
        }
    }
    for (r, c) in t.iter().enumerate() {
        p.set(r, n - 1, c.clone());
    }

    let witness = HeisenbergWitness { m, basis_change: p };
    assert!(
        witness.verify(l),
        "recognition produced a witness that does not transport to h(1, m)"
    );
    Ok(Recognition::Heisenberg(witness))
}
