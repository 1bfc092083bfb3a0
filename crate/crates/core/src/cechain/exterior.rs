//! Exterior algebra elements over a fixed dual basis.
//!
//! Monomials are strictly increasing index subsets of `{1..n}`, stored as
//! bitmasks (bit `i` = generator `i+1`). Signs come from inversion counts
//! when merging two sorted subsets. Zero coefficients are never stored.

use crate::exactlin::{format_rational, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Subsets of `{0..n-1}` of size `p`, as masks, in lexicographic order of
/// the increasing index tuples.
pub fn subsets(n: usize, p: usize) -> Vec<u32> {
    assert!(n <= 31, "exterior basis limited to 31 generators");
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..p).collect();
    if p > n {
        return out;
    }
    loop {
        out.push(current.iter().fold(0u32, |m, &i| m | (1 << i)));
        // next combination in lex order
        let mut t = p;
        while t > 0 && current[t - 1] == n - (p - t) - 1 {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        current[t - 1] += 1;
        for s in t..p {
            current[s] = current[s - 1] + 1;
        }
    }
    out
}

/// Indices of a mask, ascending.
pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of sorting the concatenation of two disjoint sorted index tuples:
/// parity of the number of pairs (i in a, j in b) with j < i.
pub fn merge_sign(a: u32, b: u32) -> i64 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (b & ((1 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Compares masks by lexicographic order of their index tuples.
pub fn lex_cmp(a: u32, b: u32) -> std::cmp::Ordering {
    let (mut a, mut b) = (a, b);
    while a != 0 && b != 0 {
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        match la.cmp(&lb) {
            std::cmp::Ordering::Equal => {
                a &= a - 1;
                b &= b - 1;
            }
            other => return other,
        }
    }
    a.count_ones().cmp(&b.count_ones())
}

/// Element of the exterior algebra on `dim` degree-one generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    dim: usize,
    terms: BTreeMap<u32, Rational>,
}

impl ExteriorElement {
    pub fn zero(dim: usize) -> Self {
        ExteriorElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut e = Self::zero(dim);
        e.add_term(0, c);
        e
    }

    /// The generator with (0-based) index `i`.
    pub fn covector(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut e = Self::zero(dim);
        e.add_term(1 << i, Rational::one());
        e
    }

    /// A 1-form with the given coefficients on the generators.
    pub fn from_covector_coeffs(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        e
    }

    pub fn monomial(dim: usize, mask: u32, coeff: Rational) -> Self {
        let mut e = Self::zero(dim);
        e.add_term(mask, coeff);
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff` on `mask`, dropping the term if it cancels.
    pub fn add_term(&mut self, mask: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, coeff) in self.terms() {
            out.add_term(m, coeff * c);
        }
        out
    }

    /// Wedge product; disjoint subset merge with inversion-count sign.
    /// Overlapping subsets contribute nothing.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let mut coeff = ca * cb;
                if sign < 0 {
                    coeff = -coeff;
                }
                out.add_term(ma | mb, coeff);
            }
        }
        out
    }

    /// Wedge power `self^k`.
    pub fn wedge_power(&self, k: usize) -> Self {
        let mut out = Self::scalar(self.dim, Rational::one());
        for _ in 0..k {
            out = out.wedge(self);
        }
        out
    }

    /// Degree-`p` part.
    pub fn degree_part(&self, p: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            if m.count_ones() as usize == p {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// `Some(p)` if all terms have degree `p` (zero counts as any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degree = None;
        for (m, _) in self.terms() {
            let p = m.count_ones() as usize;
            match degree {
                None => degree = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        degree.or(Some(0))
    }

    /// Interior product with the vector `xi` (coefficients on e_1..e_n).
    pub fn contract(&self, xi: &[Rational]) -> Self {
        assert_eq!(xi.len(), self.dim);
        let mut out = Self::zero(self.dim);
        for (mask, coeff) in self.terms() {
            for (position, index) in mask_indices(mask).into_iter().enumerate() {
                if xi[index].is_zero() {
                    continue;
                }
                let mut c = coeff * &xi[index];
                if position % 2 == 1 {
                    c = -c;
                }
                out.add_term(mask & !(1 << index), c);
            }
        }
        out
    }

    /// Coefficient vector on the given degree basis; `None` if the element
    /// has terms outside that basis.
    pub fn coefficients_on(&self, basis: &[u32]) -> Option<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); basis.len()];
        let lookup: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for (m, c) in self.terms() {
            let &i = lookup.get(&m)?;
            coeffs[i] = c.clone();
        }
        Some(coeffs)
    }

    /// Display name of a monomial: `1`, `a3`, `a1^a2`, with the given
    /// generator prefix.
    pub fn monomial_label(mask: u32, prefix: &str) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        mask_indices(mask)
            .into_iter()
            .map(|i| format!("{prefix}{}", i + 1))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by(|&a, &b| {
            a.count_ones()
                .cmp(&b.count_ones())
                .then_with(|| lex_cmp(a, b))
        });
        for (pos, mask) in keys.iter().enumerate() {
            let coeff = &self.terms[mask];
            let label = Self::monomial_label(*mask, "a");
            let magnitude = coeff.abs();
            let is_negative = coeff < &Rational::zero();
            if pos == 0 {
                if is_negative {
                    write!(f, "-")?;
                }
            } else if is_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude.is_one() && *mask != 0 {
                write!(f, "{label}")?;
            } else if *mask == 0 {
                write!(f, "{}", format_rational(&magnitude))?;
            } else {
                write!(f, "{} {label}", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}
