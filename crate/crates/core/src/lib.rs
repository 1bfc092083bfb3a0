//! Decides whether the compact nilmanifold of a finite-dimensional
//! nilpotent Lie algebra over the rationals admits a Sasakian structure,
//! in exact arithmetic, with re-verifiable certificates either way.
//!
//! The positive answers come with an explicit change of basis onto the
//! generalized Heisenberg algebra h(1, m) together with an algebraic
//! contact certificate; the negative answers name the first obstruction
//! in a fixed chain of necessary conditions (odd dimension, nilpotency,
//! even first Betti number, b1 = 2m, 2-step via an adapted dual basis,
//! existence of an algebraic contact form, Heisenberg recognition).
//!
//! Module map:
//!
//! - [`exactlin`] — dense rational matrices; fraction-free elimination,
//!   kernels, solving, deterministic basis completion.
//! - [`liealg`] — Lie algebras by structure constants; center, derived
//!   algebra, lower central series, h(1, m), symplectic normalization,
//!   and structural Heisenberg recognition.
//! - [`cechain`] — the Chevalley–Eilenberg CDGA, exact cohomology,
//!   adapted bases with triangular differentials, and CDGA morphism /
//!   quasi-isomorphism verification.
//! - [`contact`] — algebraic contact forms, Reeb elements, and a
//!   generate-and-verify search with symbolic conclusiveness.
//! - [`tievsky`] — the model `H ⊗ R[y]/(y²)` of a basic-cohomology ring,
//!   the transverse-volume check, and the standard comparison morphism
//!   for the Heisenberg case.
//! - [`decider`] — the decision procedure and its step-by-step trace.
//! - [`lang`] / [`report`] — the `.lie` input format and deterministic
//!   JSON/text reports.
//! - [`catalog`] / [`srand`] — named test algebras and the seeded PRNG
//!   behind every randomized search.
//!
//! Everything is computed over arbitrary-precision rationals; no
//! floating point anywhere, and identical inputs (plus seeds) give
//! identical outputs byte for byte.

pub mod catalog;
pub mod cechain;
pub mod contact;
pub mod decider;
pub mod exactlin;
pub mod lang;
pub mod liealg;
pub mod report;
pub mod srand;
pub mod tievsky;

pub use decider::{decide_sasakian, proof_trace, Verdict};
pub use lang::parse_algebra;
pub use liealg::LieAlgebra;
