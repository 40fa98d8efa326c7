use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlat::linalg::{canonical_span, project_out};
use crate::exactlat::{primitive_vector, rank, IntMatrix, LatticeVector, QVector};

/// Extreme rays and lineality space of `{x : c . x >= 0 for c in constraints}`.
///
/// Double description: start from the whole space and cut by one halfspace
/// at a time. New rays are positive combinations of a ray pair on opposite
/// sides; a combination is kept when its tight constraints have rank one
/// less than the current cone's codimension-of-lineality.
pub(crate) fn double_description(
    constraints: &[LatticeVector],
    dim: usize,
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let mut lineality: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut processed: Vec<LatticeVector> = Vec::new();

    for h in constraints {
        if h.is_zero() {
            continue;
        }
        if let Some(idx) = lineality.iter().position(|l| !h.dot(l).is_zero()) {
            let mut l = lineality.remove(idx);
            if h.dot(&l).is_negative() {
                l = -&l;
            }
            let a = h.dot(&l);
            let shift = |x: &LatticeVector| -> LatticeVector {
                let hx = h.dot(x);
                if hx.is_zero() {
                    x.clone()
                } else {
                    primitive_vector(&(&x.scale(&a) - &l.scale(&hx))).expect("independent of l")
                }
            };
            lineality = lineality.iter().map(shift).collect();
            rays = rays.iter().map(shift).collect();
            rays.push(primitive_vector(&l).expect("nonzero"));
            processed.push(h.clone());
            continue;
        }

        processed.push(h.clone());
        let target_rank = dim - lineality.len() - 1;
        let values: Vec<_> = rays.iter().map(|r| h.dot(r)).collect();
        let mut next: BTreeSet<LatticeVector> = BTreeSet::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                next.insert(r.clone());
            }
        }
        for (p, vp) in rays.iter().zip(&values) {
            if !vp.is_positive() {
                continue;
            }
            for (n, vn) in rays.iter().zip(&values) {
                if !vn.is_negative() {
                    continue;
                }
                let combo = &n.scale(vp) - &p.scale(vn);
                let Ok(combo) = primitive_vector(&combo) else {
                    continue;
                };
                let tight: Vec<LatticeVector> = processed
                    .iter()
                    .filter(|g| g.dot(&combo).is_zero())
                    .cloned()
                    .collect();
                if tight.len() >= target_rank && rank(&tight) == target_rank {
                    next.insert(combo);
                }
            }
        }
        rays = next.into_iter().collect();
    }

    let lineality = canonical_span(
        &lineality
            .iter()
            .map(|l| l.to_qvector().coords().to_vec())
            .collect::<Vec<_>>(),
        dim,
    );
    let mut canonical: BTreeSet<LatticeVector> = BTreeSet::new();
    for r in &rays {
        let projected = project_out(r.to_qvector().coords(), &lineality);
        let q = QVector::new(projected);
        if q.coords().iter().all(Zero::is_zero) {
            continue;
        }
        canonical.insert(primitive_vector(&q.clear_denominators()).expect("nonzero"));
    }
    (canonical.into_iter().collect(), lineality)
}

/// A rational polyhedral cone, kept in both representations.
///
/// Rays are taken modulo the lineality space (projected onto its orthogonal
/// complement), facet normals modulo the equations, so equal sets have equal
/// representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl Cone {
    pub fn from_generators(rank: usize, generators: &[LatticeVector]) -> Result<Cone> {
        for g in generators {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let (facets, equations) = double_description(generators, rank);
        Ok(Self::from_dual_parts(rank, facets, equations))
    }

    /// `{x : n . x >= 0 for n in normals, e . x = 0 for e in equations}`.
    pub fn from_inequalities(
        rank: usize,
        normals: &[LatticeVector],
        equations: &[LatticeVector],
    ) -> Result<Cone> {
        for g in normals.iter().chain(equations) {
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        let mut constraints = normals.to_vec();
        for e in equations {
            constraints.push(e.clone());
            constraints.push(-e);
        }
        let (rays, lineality) = double_description(&constraints, rank);
        Cone::from_generators(rank, &with_lines(&rays, &lineality))
    }

    fn from_dual_parts(
        rank: usize,
        facets: Vec<LatticeVector>,
        equations: Vec<LatticeVector>,
    ) -> Cone {
        let (rays, lineality) = double_description(&with_lines(&facets, &equations), rank);
        Cone {
            rank,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(rank, &[]).expect("no generators")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Extreme rays of the pointed part.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    /// Inward facet normals: `n . x >= 0` on the cone.
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    /// Normals of the hyperplanes containing the cone.
    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    /// Rays together with both signs of each lineality vector.
    pub fn generators(&self) -> Vec<LatticeVector> {
        with_lines(&self.rays, &self.lineality)
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.facets.iter().all(|n| !n.dot(x).is_negative())
            && self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn contains_point(&self, x: &QVector) -> bool {
        self.facets.iter().all(|n| !n.pair(x).is_negative())
            && self.equations.iter().all(|e| e.pair(x).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Set equality by mutual containment of generators.
    pub fn set_eq(&self, other: &Cone) -> bool {
        self.rank == other.rank && self.contains_cone(other) && other.contains_cone(self)
    }

    /// Intersection with the hyperplane `u . x = 0`.
    pub fn intersect_hyperplane(&self, u: &LatticeVector) -> Result<Cone> {
        let mut eqs = self.equations.clone();
        eqs.push(u.clone());
        Cone::from_inequalities(self.rank, &self.facets, &eqs)
    }

    /// Image under an integer linear map.
    pub fn map(&self, a: &IntMatrix) -> Result<Cone> {
        if a.cols() != self.rank {
            return Err(Error::RankMismatch {
                expected: a.cols(),
                found: self.rank,
            });
        }
        let gens: Vec<_> = self.generators().iter().map(|g| a.mul_vec(g)).collect();
        Cone::from_generators(a.rows(), &gens)
    }

    /// True iff `u` lies in the dual cone.
    pub fn is_nonnegative_on(&self, u: &LatticeVector) -> bool {
        self.generators().iter().all(|g| !u.dot(g).is_negative())
    }
}

pub(crate) fn with_lines(rays: &[LatticeVector], lines: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut out = rays.to_vec();
    for l in lines {
        out.push(l.clone());
        out.push(-l);
    }
    out
}

/// The dual cone `{u : u . v >= 0 for all v in C}`.
pub fn dual_cone(c: &Cone) -> Cone {
    Cone::from_generators(c.rank(), &with_lines(c.facets(), c.equations()))
        .expect("facets have the cone's rank")
}

#[derive(Serialize, Deserialize)]
struct ConeWire {
    rank: usize,
    rays: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<LatticeVector>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeWire {
            rank: self.rank,
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ConeWire::deserialize(d)?;
        Cone::from_generators(w.rank, &with_lines(&w.rays, &w.lineality))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(rank, &gens.iter().map(|g| lv(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert!(dual_cone(&c).set_eq(&c));
    }

    #[test]
    fn dual_of_wedge() {
        let c = cone(2, &[&[-1, 2], &[1, 2]]);
        let d = dual_cone(&c);
        assert!(d.set_eq(&cone(2, &[&[-2, 1], &[2, 1]])));
        assert!(dual_cone(&d).set_eq(&c));
    }

    #[test]
    fn dual_of_halfplane_is_ray() {
        let c = cone(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        assert_eq!(c.lineality(), &[lv(&[1, 0])]);
        assert_eq!(c.rays(), &[lv(&[0, 1])]);
        let d = dual_cone(&c);
        assert_eq!(d.rays(), &[lv(&[0, 1])]);
        assert!(d.lineality().is_empty());
        assert_eq!(d.dim(), 1);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(3, &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2], &[-1, 0, 1], &[0, -1, 1], &[0, 0, 1]]);
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        assert!(c.is_pointed() && c.is_full_dimensional());
    }

    #[test]
    fn zero_and_whole_space() {
        let z = Cone::zero(3);
        assert!(z.is_zero());
        assert_eq!(z.equations().len(), 3);
        let whole = dual_cone(&z);
        assert_eq!(whole.lineality().len(), 3);
        assert!(whole.facets().is_empty());
    }

    #[test]
    fn hyperplane_section() {
        let c = cone(3, &[&[-1, 1, 1], &[1, 1, 1], &[0, -1, 1]]);
        let s = c.intersect_hyperplane(&lv(&[0, 1, 0])).unwrap();
        assert!(s.set_eq(&cone(3, &[&[-1, 0, 2], &[1, 0, 2]])));
    }
}
