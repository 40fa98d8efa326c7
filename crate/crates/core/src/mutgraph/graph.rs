use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canonical::{canonical_form_with_certificate, verify_certificate, CanonicalForm};
use crate::error::{Error, Result};
use crate::exactlat::{IntMatrix, LatticeVector, QVector};
use crate::laurent::{newton_polytope, LaurentPolynomial};
use crate::mutation::{apply_mutation, facet_direction, facet_mutation_spec, MutationSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NeighborOutcome {
    Mutated {
        polynomial: LaurentPolynomial,
        spec: MutationSpec,
    },
    NotDivisible {
        slice: i64,
    },
}

/// One facet of `Delta(f)` and what happened when mutating along it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighbor {
    /// Index into the counter-clockwise vertex cycle: the edge `(v_i, v_{i+1})`.
    pub facet: usize,
    pub edge: (QVector, QVector),
    /// Primitive functional maximized on the facet.
    pub u: LatticeVector,
    pub divisor: LaurentPolynomial,
    pub outcome: NeighborOutcome,
}

/// Tries the facet mutation at every edge of `Delta(f)`.
pub fn mutation_neighbors(f: &LaurentPolynomial) -> Result<Vec<Neighbor>> {
    if f.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: f.rank(),
        });
    }
    let p = newton_polytope(f)?;
    let cycle = p.polygon_cycle()?;
    let mut out = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let spec = facet_mutation_spec(&p, i)?;
        let (u, _) = facet_direction(&p, i)?;
        let outcome = match apply_mutation(f, &spec) {
            Ok(polynomial) => NeighborOutcome::Mutated { polynomial, spec: spec.clone() },
            Err(Error::NotAMutation { slice }) => NeighborOutcome::NotDivisible { slice },
            Err(e) => return Err(e),
        };
        out.push(Neighbor {
            facet: i,
            edge: (cycle[i].clone(), cycle[(i + 1) % cycle.len()].clone()),
            u,
            divisor: spec.divisor_original(),
            outcome,
        });
    }
    Ok(out)
}

/// A polynomial whose polygon matched an existing node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeRecord {
    pub polynomial: LaurentPolynomial,
    /// Maps the Newton polygon of `polynomial` onto that of the representative.
    pub certificate: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    pub form: CanonicalForm,
    pub representative: LaurentPolynomial,
    pub depth: usize,
    /// Maps the representative's Newton polygon onto `form`.
    pub certificate: IntMatrix,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<MergeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub facet: usize,
    pub u: LatticeVector,
    pub divisor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FacetFailure {
    pub node: usize,
    pub facet: usize,
    pub u: LatticeVector,
    pub slice: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationGraph {
    pub depth: usize,
    /// Ordered by discovery; `id` is the position.
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub failures: Vec<FacetFailure>,
    /// Node ids at the last explored depth.
    pub frontier: Vec<usize>,
}

impl MutationGraph {
    pub fn node_by_form(&self, form: &CanonicalForm) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| &n.form == form)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph mutations {\n  node [shape=box, fontname=\"monospace\"];\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  n{} [label=\"{}\\n{}\"];",
                n.id,
                n.form,
                n.representative.to_string().replace('"', "\\\"")
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{} / {}\"];",
                e.source, e.target, e.u, e.divisor
            );
        }
        s.push_str("}\n");
        s
    }

    /// Re-checks every stored certificate.
    pub fn verify_certificates(&self) -> Result<bool> {
        for n in &self.nodes {
            let rep = newton_polytope(&n.representative)?;
            if !verify_certificate(&rep, &n.form.to_polyhedron(), &n.certificate) {
                return Ok(false);
            }
            for m in &n.merged {
                if !verify_certificate(&newton_polytope(&m.polynomial)?, &rep, &m.certificate) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

struct Builder {
    graph: MutationGraph,
    index: BTreeMap<CanonicalForm, usize>,
}

impl Builder {
    /// Returns the node id and whether it is new.
    fn insert(&mut self, f: &LaurentPolynomial, depth: usize) -> Result<(usize, bool)> {
        let p = newton_polytope(f)?;
        let (form, a) = canonical_form_with_certificate(&p)?;
        if let Some(&id) = self.index.get(&form) {
            let node = &mut self.graph.nodes[id];
            if node.representative != *f && !node.merged.iter().any(|m| m.polynomial == *f) {
                // A(P) = form = R(P_rep), so R^-1 A maps P onto P_rep
                let cert = node.certificate.inverse_unimodular()?.mul(&a)?;
                let rep = newton_polytope(&node.representative)?;
                if !verify_certificate(&p, &rep, &cert) {
                    return Err(Error::Precondition("merge certificate failed to verify".into()));
                }
                node.merged.push(MergeRecord {
                    polynomial: f.clone(),
                    certificate: cert,
                });
            }
            return Ok((id, false));
        }
        let id = self.graph.nodes.len();
        self.graph.nodes.push(GraphNode {
            id,
            form: form.clone(),
            representative: f.clone(),
            depth,
            certificate: a,
            merged: Vec::new(),
        });
        self.index.insert(form, id);
        Ok((id, true))
    }
}

/// Breadth-first exploration of facet mutations up to `depth` steps from `f`.
///
/// Neighbors of one level are computed in parallel and merged in a fixed
/// order, so the result does not depend on scheduling.
pub fn explore_graph(f: &LaurentPolynomial, depth: usize) -> Result<MutationGraph> {
    let mut b = Builder {
        graph: MutationGraph {
            depth,
            nodes: Vec::new(),
            edges: Vec::new(),
            failures: Vec::new(),
            frontier: Vec::new(),
        },
        index: BTreeMap::new(),
    };
    let (root, _) = b.insert(f, 0)?;
    let mut frontier = vec![root];
    for level in 0..depth {
        let reps: Vec<LaurentPolynomial> = frontier
            .iter()
            .map(|&id| b.graph.nodes[id].representative.clone())
            .collect();
        let found: Vec<Result<Vec<Neighbor>>> = reps.par_iter().map(mutation_neighbors).collect();
        let mut next = Vec::new();
        for (&source, neighbors) in frontier.iter().zip(found) {
            for n in neighbors? {
                match n.outcome {
                    NeighborOutcome::Mutated { polynomial, .. } => {
                        let (target, new) = b.insert(&polynomial, level + 1)?;
                        if new {
                            next.push(target);
                        }
                        b.graph.edges.push(GraphEdge {
                            source,
                            target,
                            facet: n.facet,
                            u: n.u,
                            divisor: n.divisor.to_string(),
                        });
                    }
                    NeighborOutcome::NotDivisible { slice } => {
                        b.graph.failures.push(FacetFailure {
                            node: source,
                            facet: n.facet,
                            u: n.u,
                            slice,
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            frontier.clear();
            break;
        }
        frontier = next;
    }
    b.graph.frontier = frontier;
    Ok(b.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;
    use crate::exactlat::Rational;
    use crate::polyhedra::{dual_ehrhart_counts, normalized_area, polar_dual, Polyhedron};
    use super::super::canonical::canonical_form;

    fn twice_area(p: &Polyhedron) -> Rational {
        let c = p.polygon_cycle().unwrap();
        (0..c.len())
            .map(|i| {
                let (a, b) = (&c[i], &c[(i + 1) % c.len()]);
                &a[0] * &b[1] - &a[1] * &b[0]
            })
            .sum()
    }

    fn fprime() -> LaurentPolynomial {
        parse("x^-1 + x^-1*y + y + y^-1 + x*y^-1").unwrap()
    }

    #[test]
    fn neighbors_of_degree_seven_example() {
        let ns = mutation_neighbors(&fprime()).unwrap();
        assert_eq!(ns.len(), 5);
        let target = Polyhedron::hull(
            &[[-1, 0], [-1, 1], [0, -1], [2, -1]].map(|v| QVector::from_i64(&v)),
            &[],
        )
        .unwrap();
        assert!(ns.iter().any(|n| match &n.outcome {
            NeighborOutcome::Mutated { polynomial, .. } => newton_polytope(polynomial).unwrap() == target,
            _ => false,
        }));
    }

    #[test]
    fn neighbors_of_weighted_plane_reach_the_quadric() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        // the face fan of the diamond is the fan of P1 x P1
        let quadric = canonical_form(&newton_polytope(&parse("x + y + x^-1 + y^-1").unwrap()).unwrap()).unwrap();
        let forms: Vec<CanonicalForm> = mutation_neighbors(&f)
            .unwrap()
            .iter()
            .filter_map(|n| match &n.outcome {
                NeighborOutcome::Mutated { polynomial, .. } => {
                    Some(canonical_form(&newton_polytope(polynomial).unwrap()).unwrap())
                }
                _ => None,
            })
            .collect();
        assert!(forms.contains(&quadric));
    }

    #[test]
    fn perturbed_coefficient_fails_divisibility() {
        let f = parse("x^-1*y + 3*y + x*y + y^-1").unwrap();
        let ns = mutation_neighbors(&f).unwrap();
        let top = ns.iter().find(|n| n.u == LatticeVector::from_i64(&[0, 1])).unwrap();
        assert_eq!(top.outcome, NeighborOutcome::NotDivisible { slice: 1 });
        let g = explore_graph(&f, 1).unwrap();
        assert!(g.failures.iter().any(|fl| fl.u == LatticeVector::from_i64(&[0, 1])));
    }

    #[test]
    fn depth_zero_is_a_single_node() {
        let g = explore_graph(&fprime(), 0).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn depth_one_joins_the_example_pair() {
        let g = explore_graph(&fprime(), 1).unwrap();
        let phi = parse("x^-1 + x^-1*y + y^-1 + 2*x*y^-1 + x^2*y^-1").unwrap();
        let a = canonical_form(&newton_polytope(&fprime()).unwrap()).unwrap();
        let b = canonical_form(&newton_polytope(&phi).unwrap()).unwrap();
        let ia = g.node_by_form(&a).unwrap().id;
        let ib = g.node_by_form(&b).unwrap().id;
        assert!(g.edges.iter().any(|e| e.source == ia && e.target == ib));
    }

    #[test]
    fn edges_are_symmetric_and_invariants_constant() {
        let g = explore_graph(&fprime(), 2).unwrap();
        for e in g.edges.iter().filter(|e| g.nodes[e.target].depth < 2) {
            assert!(
                g.edges.iter().any(|r| r.source == e.target && r.target == e.source),
                "no inverse edge for {e:?}"
            );
        }
        assert!(g.verify_certificates().unwrap());
        let polys: Vec<_> = g.nodes.iter().map(|n| newton_polytope(&n.representative).unwrap()).collect();
        let counts0 = dual_ehrhart_counts(&polys[0], 6).unwrap();
        // the polygons themselves change area; their duals do not
        let areas: Vec<_> = polys.iter().map(|p| normalized_area(p).unwrap()).collect();
        assert!(areas.iter().any(|a| *a != areas[0]));
        let dual_area0 = twice_area(&polar_dual(&polys[0]).unwrap());
        for p in &polys {
            assert_eq!(dual_ehrhart_counts(p, 6).unwrap(), counts0);
            assert_eq!(twice_area(&polar_dual(p).unwrap()), dual_area0);
        }
    }

    #[test]
    fn deterministic_output() {
        let a = explore_graph(&fprime(), 2).unwrap();
        let b = explore_graph(&fprime(), 2).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_dot(), b.to_dot());
        let back: MutationGraph = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
