//! Exact equivariant fixed-point computations for twisted Milnor
//! hypersurfaces and their hyperplane sections.
//!
//! The crate models the split side of the story combinatorially: the GKM
//! graph of the fixed-point locus, piecewise-polynomial equivariant Chow
//! classes, the localized Poincaré pairing, the cyclic monodromy action, and
//! the correspondence calculus that assembles the motivic decomposition of
//! the hyperplane section into Severi–Brauer summands plus one Artin summand.

pub mod cocycle;
pub mod cycles;
pub mod equivariant;
pub mod error;
pub mod graph;
pub mod perm;
pub mod linalg;
pub mod motives;
pub mod poly;
pub mod verification;

pub use cocycle::{build_generators, fixed_point_permutation, verify_cocycle, CocycleReport, CyclicAlgebraSpec};
pub use cycles::{act, gamma, lift_h, lift_xi, MonodromyElement};
pub use equivariant::{EquivariantClass, GradedRankTable, Localizer};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeKind, GkmGraph, Variety, Vertex};
pub use motives::{decomposition_report, ChowModel, Correspondence, DecompositionReport, Verdict};
pub use perm::Perm;
pub use verification::verification_suite;
pub use poly::{divides, LinearForm, Monomial, Polynomial, RationalFunction};
