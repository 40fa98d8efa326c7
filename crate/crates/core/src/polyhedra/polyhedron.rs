use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::exactlat::wire;
use crate::exactlat::{primitive_vector, IntMatrix, LatticeVector, QVector, Rational};

/// `normal . x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: LatticeVector,
    #[serde(with = "wire::rat")]
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: LatticeVector, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.normal.pair(x) >= self.offset
    }
}

/// `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: LatticeVector,
    #[serde(with = "wire::rat")]
    pub offset: Rational,
}

/// A nonempty pointed rational polyhedron `conv(vertices) + cone(rays)`.
///
/// Stored through its homogenization `cone{(1, v)} + cone{(0, r)}` in one
/// dimension higher; vertices, rays and the H-representation are read off
/// that cone and cached.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    rank: usize,
    vertices: Vec<QVector>,
    rays: Vec<LatticeVector>,
    halfspaces: Vec<Halfspace>,
    equations: Vec<Hyperplane>,
    homogenization: Cone,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices && self.rays == other.rays
    }
}

impl Eq for Polyhedron {}

fn homogenize(point: &QVector) -> LatticeVector {
    point.insert(0, Rational::one()).clear_denominators()
}

impl Polyhedron {
    /// Convex hull of `points` plus the cone over `rays`.
    pub fn hull(points: &[QVector], rays: &[LatticeVector]) -> Result<Polyhedron> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let rank = first.rank();
        for r in points.iter().map(QVector::rank).chain(rays.iter().map(LatticeVector::rank)) {
            if r != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: r,
                });
            }
        }
        let mut gens: Vec<LatticeVector> = points.iter().map(homogenize).collect();
        gens.extend(
            rays.iter()
                .filter(|r| !r.is_zero())
                .map(|r| r.insert(0, BigInt::zero())),
        );
        Self::from_homogenization(Cone::from_generators(rank + 1, &gens)?)
    }

    pub fn point(p: QVector) -> Polyhedron {
        Self::hull(&[p], &[]).expect("single point")
    }

    /// `{x : h.normal . x >= h.offset, e.normal . x = e.offset}`.
    pub fn from_inequalities(
        rank: usize,
        halfspaces: &[Halfspace],
        equations: &[Hyperplane],
    ) -> Result<Polyhedron> {
        let lift = |normal: &LatticeVector, offset: &Rational| -> Result<LatticeVector> {
            if normal.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: normal.rank(),
                });
            }
            let v = QVector::new(
                std::iter::once(-offset.clone())
                    .chain(normal.coords().iter().cloned().map(Rational::from_integer))
                    .collect(),
            );
            Ok(v.clear_denominators())
        };
        let mut normals = vec![LatticeVector::unit(rank + 1, 0)];
        for h in halfspaces {
            normals.push(lift(&h.normal, &h.offset)?);
        }
        let eqs = equations
            .iter()
            .map(|e| lift(&e.normal, &e.offset))
            .collect::<Result<Vec<_>>>()?;
        Self::from_homogenization(Cone::from_inequalities(rank + 1, &normals, &eqs)?)
    }

    pub(crate) fn from_homogenization(cone: Cone) -> Result<Polyhedron> {
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        let rank = cone.rank() - 1;
        let mut vertices = BTreeSet::new();
        let mut rays = BTreeSet::new();
        for g in cone.rays() {
            let h = &g[0];
            if h.is_positive() {
                let scale = Rational::from_integer(h.clone()).recip();
                let v = g.to_qvector().remove(0).scale(&scale);
                vertices.insert(v);
            } else {
                rays.insert(g.remove(0));
            }
        }
        if vertices.is_empty() {
            return Err(Error::Infeasible);
        }
        let mut halfspaces = BTreeSet::new();
        for f in cone.facets() {
            // the face at infinity contains no vertex
            let touches_vertex = cone
                .rays()
                .iter()
                .any(|g| g[0].is_positive() && f.dot(g).is_zero());
            if !touches_vertex {
                continue;
            }
            let normal = f.remove(0);
            let g = normal.content();
            let offset = Rational::new(-f[0].clone(), g.clone());
            halfspaces.insert(Halfspace {
                normal: primitive_vector(&normal).expect("facet through a vertex"),
                offset,
            });
        }
        let equations = cone
            .equations()
            .iter()
            .map(|e| {
                let normal = e.remove(0);
                let g = normal.content();
                Hyperplane {
                    offset: Rational::new(-e[0].clone(), g),
                    normal: primitive_vector(&normal).expect("nonempty polyhedron"),
                }
            })
            .collect();
        Ok(Polyhedron {
            rank,
            vertices: vertices.into_iter().collect(),
            rays: rays.into_iter().collect(),
            halfspaces: halfspaces.into_iter().collect(),
            equations,
            homogenization: cone,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn homogenization(&self) -> &Cone {
        &self.homogenization
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
            && self.equations.iter().all(|e| e.normal.pair(x) == e.offset)
    }

    /// Every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(QVector::is_integral)
    }

    /// Minimum of `u` over the polyhedron, `None` if unbounded below.
    pub fn min_of(&self, u: &LatticeVector) -> Option<Rational> {
        if self.rays.iter().any(|r| u.dot(r).is_negative()) {
            return None;
        }
        self.vertices.iter().map(|v| u.pair(v)).min()
    }

    pub fn max_of(&self, u: &LatticeVector) -> Option<Rational> {
        self.min_of(&-u).map(|m| -m)
    }

    pub fn translate(&self, by: &QVector) -> Polyhedron {
        let pts: Vec<QVector> = self.vertices.iter().map(|v| v + by).collect();
        Self::hull(&pts, &self.rays).expect("translation keeps rank")
    }

    /// Dilation by a positive rational.
    pub fn dilate(&self, factor: &Rational) -> Polyhedron {
        assert!(factor.is_positive(), "dilation factor must be positive");
        let pts: Vec<QVector> = self.vertices.iter().map(|v| v.scale(factor)).collect();
        Self::hull(&pts, &self.rays).expect("dilation keeps rank")
    }

    /// Image under an integer linear map.
    pub fn map_linear(&self, a: &IntMatrix) -> Result<Polyhedron> {
        if a.cols() != self.rank {
            return Err(Error::RankMismatch {
                expected: a.cols(),
                found: self.rank,
            });
        }
        let pts: Vec<QVector> = self.vertices.iter().map(|v| a.mul_qvector(v)).collect();
        let rays: Vec<LatticeVector> = self.rays.iter().map(|r| a.mul_vec(r)).collect();
        Self::hull(&pts, &rays)
    }

    /// Inserts a coordinate with constant `value` at `index` (rays get 0).
    pub fn embed(&self, index: usize, value: &Rational) -> Polyhedron {
        let pts: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| v.insert(index, value.clone()))
            .collect();
        let rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| r.insert(index, BigInt::zero()))
            .collect();
        Self::hull(&pts, &rays).expect("embedding keeps ranks consistent")
    }

    /// Drops the coordinate at `index` from every generator (a projection).
    pub fn project_out(&self, index: usize) -> Result<Polyhedron> {
        let pts: Vec<QVector> = self.vertices.iter().map(|v| v.remove(index)).collect();
        let rays: Vec<LatticeVector> = self.rays.iter().map(|r| r.remove(index)).collect();
        Self::hull(&pts, &rays)
    }

    /// Polygon vertices in counter-clockwise order, starting from the
    /// lexicographically smallest. Rank 2 bounded full-dimensional only.
    pub fn polygon_cycle(&self) -> Result<Vec<QVector>> {
        if self.rank != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: self.rank,
            });
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded("polygon expected"));
        }
        if self.vertices.len() <= 2 {
            return Ok(self.vertices.clone());
        }
        // Each edge is a facet; walk the cycle by following halfspaces.
        let start = self.vertices[0].clone();
        let mut order = vec![start.clone()];
        let mut current = start;
        while order.len() < self.vertices.len() {
            let next = self
                .vertices
                .iter()
                .find(|cand| {
                    if **cand == current {
                        return false;
                    }
                    let d = *cand - &current;
                    // every other vertex lies weakly to the left of current->cand
                    self.vertices.iter().all(|w| {
                        let e = w - &current;
                        cross(&d, &e) >= Rational::zero()
                    })
                })
                .expect("convex polygon has a successor")
                .clone();
            order.push(next.clone());
            current = next;
        }
        Ok(order)
    }
}

pub(crate) fn cross(a: &QVector, b: &QVector) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")?;
        if !self.rays.is_empty() {
            write!(f, " + cone{{")?;
            for (i, r) in self.rays.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyhedronWire {
    rank: usize,
    vertices: Vec<QVector>,
    rays: Vec<LatticeVector>,
}

impl Serialize for Polyhedron {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyhedronWire {
            rank: self.rank,
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyhedronWire::deserialize(d)?;
        let p = Polyhedron::hull(&w.vertices, &w.rays).map_err(serde::de::Error::custom)?;
        if p.rank != w.rank {
            return Err(serde::de::Error::custom("rank does not match coordinates"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::int;

    fn q(c: &[i64]) -> QVector {
        QVector::from_i64(c)
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn unit_square() {
        let p = Polyhedron::hull(&[q(&[1, 1]), q(&[1, -1]), q(&[-1, 1]), q(&[-1, -1])], &[]).unwrap();
        assert_eq!(p.vertices().len(), 4);
        let expected: BTreeSet<Halfspace> = [
            Halfspace::new(lv(&[1, 0]), int(-1)),
            Halfspace::new(lv(&[-1, 0]), int(-1)),
            Halfspace::new(lv(&[0, 1]), int(-1)),
            Halfspace::new(lv(&[0, -1]), int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(p.halfspaces().iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(p.equations().is_empty());
    }

    #[test]
    fn boundary_point_is_not_a_vertex() {
        let p = Polyhedron::hull(&[q(&[-1, 1]), q(&[0, 1]), q(&[1, 1]), q(&[0, -1])], &[]).unwrap();
        assert_eq!(p.vertices(), &[q(&[-1, 1]), q(&[0, -1]), q(&[1, 1])]);
    }

    #[test]
    fn unbounded_hull() {
        let p = Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1])], &[lv(&[-1, 2]), lv(&[1, 2])]).unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.rays().len(), 2);
        assert_eq!(p.halfspaces().len(), 3);
        // cross-check each inequality against the generators
        for h in p.halfspaces() {
            assert!(p.vertices().iter().all(|v| h.contains(v)));
            assert!(p.rays().iter().all(|r| !h.normal.dot(r).is_negative()));
        }
    }

    #[test]
    fn hull_errors() {
        assert_eq!(Polyhedron::hull(&[], &[]), Err(Error::EmptyPointSet));
        assert!(matches!(
            Polyhedron::hull(&[q(&[0, 0]), q(&[1])], &[]),
            Err(Error::RankMismatch { .. })
        ));
        assert_eq!(
            Polyhedron::hull(&[q(&[0, 0])], &[lv(&[1, 0]), lv(&[-1, 0])]),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn lower_dimensional_segment() {
        let p = Polyhedron::hull(&[q(&[0, 0]), q(&[1, 0]), q(&[2, 0])], &[]).unwrap();
        assert_eq!(p.vertices(), &[q(&[0, 0]), q(&[2, 0])]);
        assert_eq!(p.equations().len(), 1);
        assert_eq!(p.dim(), 1);
        assert!(p.contains(&q(&[1, 0])));
        assert!(!p.contains(&q(&[1, 1])));
    }

    #[test]
    fn point_polyhedron() {
        let p = Polyhedron::point(QVector::from_fractions(&[(1, 2), (0, 1)]));
        assert_eq!(p.vertices().len(), 1);
        assert!(p.halfspaces().is_empty());
        assert_eq!(p.equations().len(), 2);
        assert!(!p.is_lattice());
    }

    #[test]
    fn from_inequalities_round_trip() {
        let p = Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1])], &[lv(&[-1, 2]), lv(&[1, 2])]).unwrap();
        let r = Polyhedron::from_inequalities(2, p.halfspaces(), p.equations()).unwrap();
        assert_eq!(p, r);
        assert_eq!(
            Polyhedron::from_inequalities(
                1,
                &[
                    Halfspace::new(lv(&[1]), int(1)),
                    Halfspace::new(lv(&[-1]), int(0))
                ],
                &[]
            ),
            Err(Error::Infeasible)
        );
    }

    #[test]
    fn polygon_cycle_is_counter_clockwise() {
        let p = Polyhedron::hull(&[q(&[1, 1]), q(&[-1, -1]), q(&[1, -1]), q(&[-1, 1])], &[]).unwrap();
        assert_eq!(
            p.polygon_cycle().unwrap(),
            vec![q(&[-1, -1]), q(&[1, -1]), q(&[1, 1]), q(&[-1, 1])]
        );
    }

    #[test]
    fn json_shape() {
        let p = Polyhedron::hull(&[QVector::from_fractions(&[(-1, 2), (1, 1)])], &[lv(&[0, 1])]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"rank":2,"vertices":[["-1/2","1"]],"rays":[["0","1"]]}"#);
        let back: Polyhedron = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
