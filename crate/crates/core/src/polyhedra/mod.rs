//! Exact rational polyhedra and cones.
//!
//! A [`Cone`] keeps both its generators and its facet normals; a
//! [`Polyhedron`] is stored through its homogenization, so every operation
//! here ultimately reduces to the double description routine in `cone`.

mod admissible;
mod cone;
mod ehrhart;
mod polyhedron;

use num_bigint::BigInt;
use num_traits::Signed;

pub use admissible::{
    is_admissible_pair, is_admissible_pair_with_bound, recheck_certificate, AdmissibilityReason,
    AdmissibilityStatus, AdmissibilityVerdict, CellCertificate, PairSide, DEFAULT_WITNESS_BOUND,
};
pub use cone::{dual_cone, Cone};
pub use ehrhart::{dual_ehrhart_counts, polar_dual};
pub use polyhedron::{Halfspace, Hyperplane, Polyhedron};

pub(crate) use polyhedron::cross;

use crate::error::{Error, Result};
use crate::exactlat::{adapted_basis, LatticeVector, QVector};

/// `P + Q`.
pub fn minkowski_sum(p: &Polyhedron, q: &Polyhedron) -> Result<Polyhedron> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            expected: p.rank(),
            found: q.rank(),
        });
    }
    let mut points = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for a in p.vertices() {
        for b in q.vertices() {
            points.push(a + b);
        }
    }
    let mut rays = p.rays().to_vec();
    rays.extend_from_slice(q.rays());
    Polyhedron::hull(&points, &rays)
}

/// Recession cone of `P`.
pub fn tailcone(p: &Polyhedron) -> Cone {
    Cone::from_generators(p.rank(), p.rays()).expect("rays share the polyhedron's rank")
}

/// `cone{(1, v) : v in P}` with the new coordinate inserted at `height_index`.
pub fn cone_over(p: &Polyhedron, height_index: usize) -> Result<Cone> {
    if !p.is_bounded() {
        return Err(Error::Unbounded("cone over an unbounded polyhedron"));
    }
    if height_index > p.rank() {
        return Err(Error::DimensionMismatch(format!(
            "height index {height_index} out of range for rank {}",
            p.rank()
        )));
    }
    let gens: Vec<LatticeVector> = p
        .vertices()
        .iter()
        .map(|v| v.insert(height_index, num_traits::One::one()).clear_denominators())
        .collect();
    Cone::from_generators(p.rank() + 1, &gens)
}

/// `s(u^{-1}(level) ∩ sigma)` where `s` is the cosection of
/// [`adapted_basis`]`(u)`.
pub fn slice_project(sigma: &Cone, u: &LatticeVector, level: i64) -> Result<Polyhedron> {
    if u.rank() != sigma.rank() {
        return Err(Error::RankMismatch {
            expected: sigma.rank(),
            found: u.rank(),
        });
    }
    let basis = adapted_basis(u)?;
    if sigma.is_nonnegative_on(u) {
        return Err(Error::DirectionNotAdmissible(format!("{u} lies in the dual cone")));
    }
    if sigma.is_nonnegative_on(&-u) {
        return Err(Error::DirectionNotAdmissible(format!("-{u} lies in the dual cone")));
    }
    let level = BigInt::from(level);
    let rank = sigma.rank() - 1;
    let restrict = |a: &LatticeVector| -> (LatticeVector, crate::exactlat::Rational) {
        let normal = LatticeVector::new(basis.kernel.iter().map(|k| a.dot(k)).collect());
        let offset = crate::exactlat::Rational::from_integer(-(&level * a.dot(&basis.w)));
        (normal, offset)
    };
    let halfspaces: Vec<Halfspace> = sigma
        .facets()
        .iter()
        .map(|a| {
            let (normal, offset) = restrict(a);
            Halfspace::new(normal, offset)
        })
        .collect();
    let equations: Vec<Hyperplane> = sigma
        .equations()
        .iter()
        .map(|e| {
            let (normal, offset) = restrict(e);
            Hyperplane { normal, offset }
        })
        .collect();
    Polyhedron::from_inequalities(rank, &halfspaces, &equations)
}

pub fn is_lattice_polyhedron(p: &Polyhedron) -> bool {
    p.is_lattice()
}

/// True iff `P` is full-dimensional and every facet inequality is strict at 0.
pub fn contains_origin_interior(p: &Polyhedron) -> bool {
    p.is_bounded()
        && p.equations().is_empty()
        && !p.halfspaces().is_empty()
        && p.halfspaces().iter().all(|h| h.offset.is_negative())
}

/// Lattice length of the segment `[a, b]` between lattice points.
pub fn lattice_length(a: &QVector, b: &QVector) -> Option<BigInt> {
    let d = (b - a).to_lattice()?;
    Some(d.content())
}

/// Twice the area of a lattice polygon (the normalized area).
pub fn normalized_area(p: &Polyhedron) -> Result<BigInt> {
    let cycle = p.polygon_cycle()?;
    let mut acc = crate::exactlat::Rational::from_integer(BigInt::ZERO);
    for i in 0..cycle.len() {
        acc += cross(&cycle[i], &cycle[(i + 1) % cycle.len()]);
    }
    if !acc.is_integer() {
        return Err(Error::Precondition("normalized area of a non-lattice polygon".into()));
    }
    Ok(acc.to_integer().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    fn q(c: &[i64]) -> QVector {
        QVector::from_i64(c)
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(rank, &gens.iter().map(|g| lv(g)).collect::<Vec<_>>()).unwrap()
    }

    /// sigma of the weighted projective plane example, coordinates (x, y, deg).
    fn sigma_p112() -> Cone {
        cone(3, &[&[-1, 1, 1], &[1, 1, 1], &[0, -1, 1]])
    }

    #[test]
    fn segment_sum() {
        let a = Polyhedron::hull(&[q(&[-1]), q(&[0])], &[]).unwrap();
        let b = Polyhedron::hull(&[q(&[0]), q(&[1])], &[]).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s.vertices(), &[q(&[-1]), q(&[1])]);
    }

    #[test]
    fn point_sum_translates() {
        let sq = Polyhedron::hull(&[q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])], &[]).unwrap();
        let p = Polyhedron::point(q(&[2, -3]));
        assert_eq!(minkowski_sum(&p, &sq).unwrap(), sq.translate(&q(&[2, -3])));
    }

    #[test]
    fn tailcones() {
        let tri = Polyhedron::hull(&[q(&[0, 0]), q(&[1, 0]), q(&[0, 1])], &[]).unwrap();
        assert!(tailcone(&tri).is_zero());
        let p = Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1])], &[lv(&[-1, 2]), lv(&[1, 2])]).unwrap();
        assert!(tailcone(&p).set_eq(&cone(2, &[&[-1, 2], &[1, 2]])));
    }

    #[test]
    fn cone_over_examples() {
        let p = Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1]), q(&[0, -1])], &[]).unwrap();
        let c = cone_over(&p, 0).unwrap();
        assert!(c.set_eq(&cone(3, &[&[1, -1, 1], &[1, 1, 1], &[1, 0, -1]])));
        let c = cone_over(&p, 2).unwrap();
        assert!(c.set_eq(&sigma_p112()));
        let origin = Polyhedron::point(q(&[0, 0]));
        assert_eq!(cone_over(&origin, 0).unwrap().rays(), &[lv(&[1, 0, 0])]);
        let ray = Polyhedron::hull(&[q(&[0])], &[lv(&[1])]).unwrap();
        assert!(matches!(cone_over(&ray, 0), Err(Error::Unbounded(_))));
    }

    #[test]
    fn slice_project_weighted_plane() {
        let sigma = sigma_p112();
        let u = lv(&[0, 1, 0]);
        let d0 = slice_project(&sigma, &u, 1).unwrap();
        let expected0 =
            Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1])], &[lv(&[-1, 2]), lv(&[1, 2])]).unwrap();
        assert_eq!(d0, expected0);
        let dinf = slice_project(&sigma, &u, -1).unwrap();
        let expected_inf = Polyhedron::hull(&[q(&[0, 1])], &[lv(&[-1, 2]), lv(&[1, 2])]).unwrap();
        assert_eq!(dinf, expected_inf);
        assert!(is_lattice_polyhedron(&d0));
    }

    #[test]
    fn slice_project_symmetric_cone() {
        let sigma = cone(2, &[&[1, 1], &[-1, 1]]);
        let u = lv(&[1, 0]);
        for level in [1, -1] {
            let d = slice_project(&sigma, &u, level).unwrap();
            assert_eq!(d, Polyhedron::hull(&[q(&[1])], &[lv(&[1])]).unwrap());
        }
    }

    #[test]
    fn slice_project_rejects_dual_directions() {
        let sigma = sigma_p112();
        assert!(matches!(
            slice_project(&sigma, &lv(&[0, 0, 1]), 1),
            Err(Error::DirectionNotAdmissible(_))
        ));
        assert!(matches!(
            slice_project(&sigma, &lv(&[0, 2, 0]), 1),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn origin_interior() {
        let tri = Polyhedron::hull(&[q(&[-1, 1]), q(&[1, 1]), q(&[0, -1])], &[]).unwrap();
        assert!(contains_origin_interior(&tri));
        let seg = Polyhedron::hull(&[q(&[0]), q(&[1])], &[]).unwrap();
        assert!(!contains_origin_interior(&seg));
        let diamond =
            Polyhedron::hull(&[q(&[1, 0]), q(&[-1, 0]), q(&[0, 1]), q(&[0, -1])], &[]).unwrap();
        assert!(contains_origin_interior(&diamond));
        let flat = Polyhedron::hull(&[q(&[-1, 0]), q(&[1, 0])], &[]).unwrap();
        assert!(!contains_origin_interior(&flat));
    }

    #[test]
    fn normalized_area_of_square() {
        let sq = Polyhedron::hull(&[q(&[1, 1]), q(&[1, -1]), q(&[-1, 1]), q(&[-1, -1])], &[]).unwrap();
        assert_eq!(normalized_area(&sq).unwrap(), BigInt::from(8));
    }
}
