//! Mutations of Laurent polynomials and the toric degenerations they induce.
//!
//! A mutation `z_n -> z_n / g` of a Laurent polynomial `f` relates the toric
//! varieties of the Newton polytopes `Delta(f)` and `Delta(phi(f))`: both
//! appear as fibers of one flat family over the projective line. This crate
//! builds the combinatorial data of that family with exact arithmetic and
//! checks it.
//!
//! ```
//! use laumut::laurent::{parse, parse_with_rank};
//! use laumut::mutation::{apply_mutation, MutationSpec};
//!
//! let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
//! let g = parse_with_rank("1 + x", 2).unwrap();
//! let spec = MutationSpec::divide_variable(2, 1, &g).unwrap();
//! let phi = apply_mutation(&f, &spec).unwrap();
//! assert_eq!(phi.to_string(), "x^-1*y + y^-1 + y + x*y^-1");
//! ```
//!
//! Modules, from the bottom up:
//!
//! - [`exactlat`]: integer and rational vectors, matrices, Smith and Hermite
//!   forms, adapted bases.
//! - [`polyhedra`]: cones and polyhedra in both representations, admissible
//!   pairs, dual Ehrhart counts.
//! - [`laurent`]: Laurent polynomials, Newton polytopes, exact division.
//! - [`mutation`]: mutation specs, the divisibility test, facet mutations.
//! - [`deformation`]: the cone of the special fiber and its verification.
//! - [`mutgraph`]: graphs of facet mutations up to unimodular equivalence.

pub mod deformation;
pub mod error;
pub mod exactlat;
pub mod laurent;
pub mod mutation;
pub mod mutgraph;
pub mod polyhedra;

pub use error::{Error, Result};
pub use exactlat::{IntMatrix, LatticeVector, QVector, Rational};
pub use laurent::LaurentPolynomial;
pub use mutation::MutationSpec;
pub use polyhedra::{Cone, Polyhedron};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    mod polyhedra {}
    #[doc = include_str!("../../../book/src/mutations.md")]
    mod mutations {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
