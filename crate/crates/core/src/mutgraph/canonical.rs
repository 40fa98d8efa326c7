//! Normal form of lattice polygons up to `GL(2, Z)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlat::{IntMatrix, LatticeVector, QVector};
use crate::polyhedra::{contains_origin_interior, Polyhedron};

/// Sorted vertex list of the lexicographically smallest image of a polygon
/// under the flag normalization below.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(Vec<[i64; 2]>);

impl CanonicalForm {
    pub fn vertices(&self) -> &[[i64; 2]] {
        &self.0
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        let pts: Vec<QVector> = self.0.iter().map(|v| QVector::from_i64(v)).collect();
        Polyhedron::hull(&pts, &[]).expect("nonempty vertex list")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|[a, b]| format!("({a},{b})")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

type M2 = [[i64; 2]; 2];

fn apply(m: &M2, v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

fn compose(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn to_matrix(m: &M2) -> IntMatrix {
    IntMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()])
}

/// A unimodular matrix sending the primitive vector `d` to `e1`.
fn to_first_axis(d: [i64; 2]) -> M2 {
    let g = d[0].extended_gcd(&d[1]);
    let (mut a, mut b) = (g.x, g.y);
    if g.gcd < 0 {
        a = -a;
        b = -b;
    }
    debug_assert_eq!(a * d[0] + b * d[1], 1);
    [[a, b], [-d[1], d[0]]]
}

fn lattice_cycle(p: &Polyhedron) -> Result<Vec<[i64; 2]>> {
    if p.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: p.rank(),
        });
    }
    if !p.is_lattice() {
        return Err(Error::Precondition("canonical forms need a lattice polygon".into()));
    }
    if !contains_origin_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    p.polygon_cycle()?
        .iter()
        .map(|v| {
            v.to_lattice()
                .and_then(|l| l.to_i64())
                .map(|c| [c[0], c[1]])
                .ok_or_else(|| Error::Precondition("vertex coordinates exceed i64".into()))
        })
        .collect()
}

/// The normal form and a matrix `A` with `A(P) = form`.
pub fn canonical_form_with_certificate(p: &Polyhedron) -> Result<(CanonicalForm, IntMatrix)> {
    let cycle = lattice_cycle(p)?;
    let m = cycle.len();
    let mut best: Option<(Vec<[i64; 2]>, M2)> = None;
    for i in 0..m {
        for j in [(i + 1) % m, (i + m - 1) % m] {
            let (v, n) = (cycle[i], cycle[j]);
            let d = [n[0] - v[0], n[1] - v[1]];
            let g = d[0].gcd(&d[1]);
            let mut a = to_first_axis([d[0] / g, d[1] / g]);
            // the edge now lies on a horizontal line; put it below the origin
            let h = apply(&a, v)[1];
            if h > 0 {
                a = compose(&[[1, 0], [0, -1]], &a);
            }
            let [x, y] = apply(&a, v);
            let h = -y;
            // shear x -> x + t y with x + t y in [0, h)
            let t = Integer::div_floor(&x, &h);
            a = compose(&[[1, t], [0, 1]], &a);
            let mut image: Vec<[i64; 2]> = cycle.iter().map(|&w| apply(&a, w)).collect();
            image.sort();
            if best.as_ref().is_none_or(|(b, _)| image < *b) {
                best = Some((image, a));
            }
        }
    }
    let (form, a) = best.expect("polygon has edges");
    Ok((CanonicalForm(form), to_matrix(&a)))
}

pub fn canonical_form(p: &Polyhedron) -> Result<CanonicalForm> {
    Ok(canonical_form_with_certificate(p)?.0)
}

/// A unimodular `A` with `A(P) = Q`, if the polygons are equivalent.
pub fn certificate_between(p: &Polyhedron, q: &Polyhedron) -> Result<Option<IntMatrix>> {
    let (fp, ap) = canonical_form_with_certificate(p)?;
    let (fq, aq) = canonical_form_with_certificate(q)?;
    if fp != fq {
        return Ok(None);
    }
    let a = aq.inverse_unimodular()?.mul(&ap)?;
    debug_assert!(verify_certificate(p, q, &a));
    Ok(Some(a))
}

/// Checks that `A` is unimodular and maps the vertex set of `P` onto that of `Q`.
pub fn verify_certificate(p: &Polyhedron, q: &Polyhedron, a: &IntMatrix) -> bool {
    if a.rows() != 2 || a.cols() != 2 || !a.is_unimodular() {
        return false;
    }
    let mut image: Vec<QVector> = p.vertices().iter().map(|v| a.mul_qvector(v)).collect();
    image.sort();
    let mut target = q.vertices().to_vec();
    target.sort();
    image == target
}

/// Vertex list of a polygon as lattice points, for reports.
pub fn lattice_vertices(p: &Polyhedron) -> Vec<LatticeVector> {
    p.vertices().iter().filter_map(QVector::to_lattice).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(pts: &[[i64; 2]]) -> Polyhedron {
        Polyhedron::hull(&pts.iter().map(|p| QVector::from_i64(p)).collect::<Vec<_>>(), &[]).unwrap()
    }

    fn diamond() -> Polyhedron {
        poly(&[[1, 0], [-1, 0], [0, 1], [0, -1]])
    }

    fn parallelogram() -> Polyhedron {
        poly(&[[-1, 1], [0, 1], [0, -1], [1, -1]])
    }

    #[test]
    fn diamond_and_parallelogram_merge() {
        assert_eq!(canonical_form(&diamond()).unwrap(), canonical_form(&parallelogram()).unwrap());
        // independent oracle: the shear maps one vertex set onto the other
        let shear = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]);
        assert!(verify_certificate(&parallelogram(), &diamond(), &shear));
        let a = certificate_between(&parallelogram(), &diamond()).unwrap().unwrap();
        assert!(verify_certificate(&parallelogram(), &diamond(), &a));
    }

    #[test]
    fn square_is_not_a_diamond() {
        let square = poly(&[[1, 1], [1, -1], [-1, 1], [-1, -1]]);
        assert_ne!(canonical_form(&square).unwrap(), canonical_form(&diamond()).unwrap());
        assert_eq!(certificate_between(&square, &diamond()).unwrap(), None);
    }

    #[test]
    fn preconditions() {
        let off = poly(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(canonical_form(&off), Err(Error::OriginNotInterior));
        let frac = Polyhedron::hull(
            &[
                QVector::from_fractions(&[(1, 2), (0, 1)]),
                QVector::from_i64(&[-1, 1]),
                QVector::from_i64(&[-1, -1]),
            ],
            &[],
        )
        .unwrap();
        assert!(matches!(canonical_form(&frac), Err(Error::Precondition(_))));
    }

    #[test]
    fn certificate_maps_polygon_to_form() {
        let p = poly(&[[-1, 0], [-1, 1], [0, 1], [0, -1], [1, -1]]);
        let (form, a) = canonical_form_with_certificate(&p).unwrap();
        assert!(verify_certificate(&p, &form.to_polyhedron(), &a));
    }

    fn unimodular() -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec((0usize..3, -3i64..=3), 0..6).prop_map(|ops| {
            let mut m = IntMatrix::identity(2);
            for (kind, c) in ops {
                let e = match kind {
                    0 => IntMatrix::from_rows(&[vec![1, c], vec![0, 1]]),
                    1 => IntMatrix::from_rows(&[vec![1, 0], vec![c, 1]]),
                    _ => IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
                };
                m = m.mul(&e).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn invariant_under_gl2z(a in unimodular(), pick in 0usize..4) {
            let polys = [
                diamond(),
                parallelogram(),
                poly(&[[-1, 1], [1, 1], [0, -1]]),
                poly(&[[-1, 0], [-1, 1], [0, 1], [0, -1], [1, -1]]),
            ];
            let p = &polys[pick];
            let image = p.map_linear(&a).unwrap();
            prop_assert_eq!(canonical_form(&image).unwrap(), canonical_form(p).unwrap());
            let c = certificate_between(p, &image).unwrap().unwrap();
            prop_assert!(verify_certificate(p, &image, &c));
        }
    }
}
