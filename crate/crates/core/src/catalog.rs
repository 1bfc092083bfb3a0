//! Named algebras used across the test suites and the demo page.

use crate::exactlin::rat;
use crate::liealg::{BracketDecl, LieAlgebra};
use crate::srand::{random_invertible, SplitMix64};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    /// Whether the associated nilmanifold admits a Sasakian structure.
    pub expect_sasakian: bool,
}

fn simple(dim: usize, brackets: &[(usize, usize, usize)]) -> LieAlgebra {
    let decls: Vec<BracketDecl> = brackets
        .iter()
        .map(|&(i, j, k)| BracketDecl {
            i,
            j,
            value: vec![(k, rat(1))],
        })
        .collect();
    LieAlgebra::new(dim, &decls).expect("catalog tables satisfy Jacobi")
}

/// h(1,1) with the bracket scaled: [e1,e2] = 2 e3. Still isomorphic to
/// h(1,1) over the rationals.
fn scaled_h11() -> LieAlgebra {
    let decls = vec![BracketDecl {
        i: 0,
        j: 1,
        value: vec![(2, rat(2))],
    }];
    LieAlgebra::new(3, &decls).expect("valid table")
}

/// A fixed seeded conjugate of h(1,2): same isomorphism class, scrambled
/// structure constants.
fn conjugated_h12() -> LieAlgebra {
    let h = LieAlgebra::heisenberg(2).expect("m >= 1");
    let mut rng = SplitMix64::new(20259);
    let p = random_invertible(5, &mut rng);
    h.conjugate(&p).expect("invertible")
}

pub fn h11_plus_abelian2() -> LieAlgebra {
    LieAlgebra::direct_sum(
        &LieAlgebra::heisenberg(1).expect("m >= 1"),
        &LieAlgebra::abelian(2),
    )
}

/// The full catalog: every Heisenberg algebra in scope, conjugated and
/// rescaled variants, and one representative per obstruction.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for m in 1..=4 {
        let name: &'static str = match m {
            1 => "h11",
            2 => "h12",
            3 => "h13",
            _ => "h14",
        };
        entries.push(CatalogEntry {
            name,
            algebra: LieAlgebra::heisenberg(m).expect("m >= 1"),
            expect_sasakian: true,
        });
    }
    entries.push(CatalogEntry {
        name: "h11-scaled",
        algebra: scaled_h11(),
        expect_sasakian: true,
    });
    entries.push(CatalogEntry {
        name: "h12-conjugated",
        algebra: conjugated_h12(),
        expect_sasakian: true,
    });
    for (name, dim) in [
        ("abelian3", 3),
        ("abelian5", 5),
        ("abelian7", 7),
        ("abelian9", 9),
    ] {
        entries.push(CatalogEntry {
            name,
            algebra: LieAlgebra::abelian(dim),
            expect_sasakian: false,
        });
    }
    entries.push(CatalogEntry {
        // step-3 filiform core plus a central direction; b1 = 3 is odd
        name: "l5-step3",
        algebra: simple(5, &[(0, 1, 2), (0, 2, 3)]),
        expect_sasakian: false,
    });
    entries.push(CatalogEntry {
        name: "h11-plus-abelian2",
        algebra: h11_plus_abelian2(),
        expect_sasakian: false,
    });
    entries.push(CatalogEntry {
        // three independent central brackets in dimension 7: b1 = 4 != 6
        name: "b1-four-dim7",
        algebra: simple(7, &[(0, 1, 4), (2, 3, 5), (0, 2, 6)]),
        expect_sasakian: false,
    });
    entries.push(CatalogEntry {
        // even-dimensional step-3 filiform algebra
        name: "filiform4",
        algebra: simple(4, &[(0, 1, 2), (0, 2, 3)]),
        expect_sasakian: false,
    });
    entries.push(CatalogEntry {
        // [e1,e2] = e2 plus a central direction: solvable, not nilpotent
        name: "solvable3",
        algebra: simple(3, &[(0, 1, 1)]),
        expect_sasakian: false,
    });
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::JacobiCheck;

    #[test]
    fn every_catalog_entry_satisfies_jacobi() {
        for entry in catalog() {
            assert_eq!(
                entry.algebra.check_jacobi(),
                JacobiCheck::Ok,
                "catalog entry {}",
                entry.name
            );
        }
    }

    #[test]
    fn catalog_names_are_unique() {
        let entries = catalog();
        let mut names: Vec<_> = entries.iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), entries.len());
    }

    #[test]
    fn derived_in_center_iff_step_at_most_two() {
        for entry in catalog() {
            let l = &entry.algebra;
            let contained = l.derived().basis().iter().all(|v| l.center().contains(v));
            let low_step = matches!(l.nilpotency().step(), Some(s) if s <= 2);
            assert_eq!(contained, low_step, "on {}", entry.name);
        }
    }
}
