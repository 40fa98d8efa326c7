//! Admissible pairs: equal tailcones, and every dual lattice functional
//! has an integral minimum on at least one of the two polyhedra.
//!
//! The condition quantifies over all of `tail^∨ ∩ M`, so the decision is
//! three-valued. `Yes` always comes with a certificate that can be checked
//! again with [`recheck_certificate`]; `No` comes with a witness functional.

use serde::{Deserialize, Serialize};

use super::cone::Cone;
use super::{tailcone, Polyhedron};
use crate::error::{Error, Result};
use crate::exactlat::{LatticeVector, QVector, Rational};

pub const DEFAULT_WITNESS_BOUND: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibilityStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSide {
    First,
    Second,
}

/// One maximal cell of the common refinement of the two normal fans: the
/// minimizing vertex of each polyhedron, and which of them is a lattice point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCertificate {
    pub first_vertex: QVector,
    pub second_vertex: QVector,
    pub lattice_side: PairSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibilityReason {
    /// One of the polyhedra has only lattice vertices.
    LatticePolyhedron { side: PairSide },
    /// On every maximal cell one minimizer is a lattice point.
    LatticeMinimizers { cells: Vec<CellCertificate> },
    TailconesDiffer,
    /// Both minima of the witness are non-integral.
    NonIntegralMinima {
        #[serde(with = "crate::exactlat::wire::rat")]
        first_min: Rational,
        #[serde(with = "crate::exactlat::wire::rat")]
        second_min: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub status: AdmissibilityStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<AdmissibilityReason>,
}

impl AdmissibilityVerdict {
    pub fn is_yes(&self) -> bool {
        self.status == AdmissibilityStatus::Yes
    }

    fn yes(reason: AdmissibilityReason) -> Self {
        AdmissibilityVerdict {
            status: AdmissibilityStatus::Yes,
            witness: None,
            reason: Some(reason),
        }
    }
}

pub fn is_admissible_pair(p: &Polyhedron, q: &Polyhedron) -> Result<AdmissibilityVerdict> {
    is_admissible_pair_with_bound(p, q, DEFAULT_WITNESS_BOUND)
}

/// As [`is_admissible_pair`], scanning witnesses with coordinates in
/// `[-bound, bound]`.
pub fn is_admissible_pair_with_bound(
    p: &Polyhedron,
    q: &Polyhedron,
    bound: i64,
) -> Result<AdmissibilityVerdict> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            expected: p.rank(),
            found: q.rank(),
        });
    }
    let tail = tailcone(p);
    if !tail.set_eq(&tailcone(q)) {
        return Ok(AdmissibilityVerdict {
            status: AdmissibilityStatus::No,
            witness: None,
            reason: Some(AdmissibilityReason::TailconesDiffer),
        });
    }
    if p.is_lattice() {
        return Ok(AdmissibilityVerdict::yes(AdmissibilityReason::LatticePolyhedron {
            side: PairSide::First,
        }));
    }
    if q.is_lattice() {
        return Ok(AdmissibilityVerdict::yes(AdmissibilityReason::LatticePolyhedron {
            side: PairSide::Second,
        }));
    }
    let cells = maximal_cells(p, q)?;
    let certified: Option<Vec<CellCertificate>> = cells
        .into_iter()
        .map(|(a, b)| {
            let side = if a.is_integral() {
                PairSide::First
            } else if b.is_integral() {
                PairSide::Second
            } else {
                return None;
            };
            Some(CellCertificate {
                first_vertex: a,
                second_vertex: b,
                lattice_side: side,
            })
        })
        .collect();
    if let Some(cells) = certified {
        return Ok(AdmissibilityVerdict::yes(AdmissibilityReason::LatticeMinimizers { cells }));
    }
    if let Some((u, first_min, second_min)) = find_witness(p, q, &tail, bound) {
        return Ok(AdmissibilityVerdict {
            status: AdmissibilityStatus::No,
            witness: Some(u),
            reason: Some(AdmissibilityReason::NonIntegralMinima {
                first_min,
                second_min,
            }),
        });
    }
    Ok(AdmissibilityVerdict {
        status: AdmissibilityStatus::Unknown,
        witness: None,
        reason: None,
    })
}

/// Normal cone of vertex `v` in `p`: functionals minimized at `v`.
fn normal_cone_constraints(p: &Polyhedron, v: &QVector) -> Vec<LatticeVector> {
    let mut normals: Vec<LatticeVector> = p
        .vertices()
        .iter()
        .filter(|w| *w != v)
        .map(|w| (w - v).clear_denominators())
        .collect();
    normals.extend(p.rays().iter().cloned());
    normals
}

/// Vertex pairs whose normal cones meet in a full-dimensional cell.
fn maximal_cells(p: &Polyhedron, q: &Polyhedron) -> Result<Vec<(QVector, QVector)>> {
    let mut cells = Vec::new();
    for a in p.vertices() {
        let na = normal_cone_constraints(p, a);
        for b in q.vertices() {
            let mut normals = na.clone();
            normals.extend(normal_cone_constraints(q, b));
            let cell = Cone::from_inequalities(p.rank(), &normals, &[])?;
            if cell.is_full_dimensional() {
                cells.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(cells)
}

/// Lattice points of the box `[-bound, bound]^n`, by max-norm, then by
/// absolute values with positive before negative.
pub(crate) fn box_points(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    pts.sort_by_key(|p| {
        let norm = p.iter().map(|c| c.abs()).max().unwrap_or(0);
        let key: Vec<(i64, bool)> = p.iter().map(|&c| (c.abs(), c < 0)).collect();
        (norm, key)
    });
    pts
}

fn find_witness(
    p: &Polyhedron,
    q: &Polyhedron,
    tail: &Cone,
    bound: i64,
) -> Option<(LatticeVector, Rational, Rational)> {
    for coords in box_points(p.rank(), bound) {
        let u = LatticeVector::from_i64(&coords);
        if !tail.rays().iter().all(|r| u.dot(r) >= num_bigint::BigInt::ZERO) {
            continue;
        }
        let (Some(a), Some(b)) = (p.min_of(&u), q.min_of(&u)) else {
            continue;
        };
        if !a.is_integer() && !b.is_integer() {
            return Some((u, a, b));
        }
    }
    None
}

/// Re-checks a verdict against the two polyhedra. `Unknown` makes no claim
/// and always passes.
pub fn recheck_certificate(p: &Polyhedron, q: &Polyhedron, verdict: &AdmissibilityVerdict) -> bool {
    let tails_equal = tailcone(p).set_eq(&tailcone(q));
    match (&verdict.status, &verdict.reason) {
        (AdmissibilityStatus::Yes, Some(AdmissibilityReason::LatticePolyhedron { side })) => {
            tails_equal
                && match side {
                    PairSide::First => p.is_lattice(),
                    PairSide::Second => q.is_lattice(),
                }
        }
        (AdmissibilityStatus::Yes, Some(AdmissibilityReason::LatticeMinimizers { cells })) => {
            if !tails_equal {
                return false;
            }
            let listed_ok = cells.iter().all(|c| {
                p.vertices().contains(&c.first_vertex)
                    && q.vertices().contains(&c.second_vertex)
                    && match c.lattice_side {
                        PairSide::First => c.first_vertex.is_integral(),
                        PairSide::Second => c.second_vertex.is_integral(),
                    }
            });
            let Ok(all) = maximal_cells(p, q) else {
                return false;
            };
            listed_ok
                && all.iter().all(|(a, b)| {
                    cells
                        .iter()
                        .any(|c| &c.first_vertex == a && &c.second_vertex == b)
                })
        }
        (AdmissibilityStatus::No, Some(AdmissibilityReason::TailconesDiffer)) => !tails_equal,
        (AdmissibilityStatus::No, Some(AdmissibilityReason::NonIntegralMinima { .. })) => {
            let Some(u) = &verdict.witness else {
                return false;
            };
            tails_equal
                && matches!(
                    (p.min_of(u), q.min_of(u)),
                    (Some(a), Some(b)) if !a.is_integer() && !b.is_integer()
                )
        }
        (AdmissibilityStatus::Unknown, _) => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(p: i64, q: i64) -> Polyhedron {
        Polyhedron::point(QVector::from_fractions(&[(p, q)]))
    }

    #[test]
    fn both_non_integral_has_witness() {
        let (p, q) = (point(1, 2), point(1, 3));
        let v = is_admissible_pair(&p, &q).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::No);
        assert_eq!(v.witness, Some(LatticeVector::from_i64(&[1])));
        assert!(recheck_certificate(&p, &q, &v));
    }

    #[test]
    fn lattice_side_certifies() {
        let (p, q) = (point(1, 2), point(0, 1));
        let v = is_admissible_pair(&p, &q).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::Yes);
        assert_eq!(
            v.reason,
            Some(AdmissibilityReason::LatticePolyhedron {
                side: PairSide::Second
            })
        );
        assert!(recheck_certificate(&p, &q, &v));
    }

    #[test]
    fn differing_tails() {
        let p = point(0, 1);
        let q = Polyhedron::hull(&[QVector::from_i64(&[0])], &[LatticeVector::from_i64(&[1])]).unwrap();
        let v = is_admissible_pair(&p, &q).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::No);
        assert_eq!(v.reason, Some(AdmissibilityReason::TailconesDiffer));
        assert!(v.witness.is_none());
    }

    #[test]
    fn cellwise_certificate() {
        // [1/2, 1] and [0, 1/2]: for u > 0 the second minimizer 0 is a lattice
        // point, for u < 0 the first minimizer 1 is.
        let p = Polyhedron::hull(
            &[QVector::from_fractions(&[(1, 2)]), QVector::from_i64(&[1])],
            &[],
        )
        .unwrap();
        let q = Polyhedron::hull(
            &[QVector::from_i64(&[0]), QVector::from_fractions(&[(1, 2)])],
            &[],
        )
        .unwrap();
        let v = is_admissible_pair(&p, &q).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::Yes);
        assert!(matches!(
            v.reason,
            Some(AdmissibilityReason::LatticeMinimizers { ref cells }) if cells.len() == 2
        ));
        assert!(recheck_certificate(&p, &q, &v));
    }

    #[test]
    fn unknown_when_bound_too_small() {
        // minima: u/2 and u/3 are both non-integral only for u not divisible by 2 or 3
        let (p, q) = (point(1, 2), point(1, 3));
        let v = is_admissible_pair_with_bound(&p, &q, 0).unwrap();
        assert_eq!(v.status, AdmissibilityStatus::Unknown);
    }

    #[test]
    fn box_order_prefers_positive() {
        let pts = box_points(1, 2);
        assert_eq!(pts, vec![vec![0], vec![1], vec![-1], vec![2], vec![-2]]);
    }
}
