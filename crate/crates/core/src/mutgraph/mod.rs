//! Graphs of facet mutations of Laurent polynomials in two variables, with
//! nodes identified up to unimodular equivalence of their Newton polygons.

mod canonical;
mod graph;

pub use canonical::{
    canonical_form, canonical_form_with_certificate, certificate_between, lattice_vertices,
    verify_certificate, CanonicalForm,
};
pub use graph::{
    explore_graph, mutation_neighbors, FacetFailure, GraphEdge, GraphNode, MergeRecord,
    MutationGraph, Neighbor, NeighborOutcome,
};
