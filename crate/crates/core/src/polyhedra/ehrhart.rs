use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

use super::{contains_origin_interior, Polyhedron};
use crate::error::{Error, Result};
use crate::exactlat::{QVector, Rational};

/// `P* = {u : <u, v> >= -1 for all v in P}`.
pub fn polar_dual(p: &Polyhedron) -> Result<Polyhedron> {
    if !contains_origin_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    // facet a.x >= b with b < 0 gives the vertex a / (-b)
    let vertices: Vec<QVector> = p
        .halfspaces()
        .iter()
        .map(|h| h.normal.to_qvector().scale(&(-h.offset.recip())))
        .collect();
    Polyhedron::hull(&vertices, &[])
}

/// Number of lattice points of `k P*` for `k = 1..=kmax`, by enumeration of
/// a bounding box.
pub fn dual_ehrhart_counts(p: &Polyhedron, kmax: u32) -> Result<Vec<u64>> {
    let dual = polar_dual(p)?;
    let rank = p.rank();
    // <u, v> >= -k  <=>  <u, num(v)> >= -k * den(v), with num/den cleared per vertex
    let constraints: Vec<(Vec<i64>, i64)> = p
        .vertices()
        .iter()
        .map(|v| {
            let den = v.denominator_lcm();
            let num = v.clear_denominators_exact(&den);
            let num = num
                .iter()
                .map(|c| c.to_i64().expect("vertex coordinates fit in i64"))
                .collect();
            (num, den.to_i64().expect("denominator fits in i64"))
        })
        .collect();
    let mut counts = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax as i64 {
        let kr = Rational::from_integer(BigInt::from(k));
        let lo: Vec<i64> = (0..rank)
            .map(|i| {
                let m = dual.vertices().iter().map(|w| &w[i] * &kr).min().unwrap();
                m.floor().to_integer().to_i64().unwrap()
            })
            .collect();
        let hi: Vec<i64> = (0..rank)
            .map(|i| {
                let m = dual.vertices().iter().map(|w| &w[i] * &kr).max().unwrap();
                m.ceil().to_integer().to_i64().unwrap()
            })
            .collect();
        let mut count = 0u64;
        let mut u = lo.clone();
        'outer: loop {
            if constraints.iter().all(|(num, den)| {
                let s: i64 = num.iter().zip(&u).map(|(a, b)| a * b).sum();
                s >= -k * den
            }) {
                count += 1;
            }
            for i in 0..rank {
                if u[i] < hi[i] {
                    u[i] += 1;
                    continue 'outer;
                }
                u[i] = lo[i];
            }
            break;
        }
        counts.push(count);
    }
    Ok(counts)
}

impl QVector {
    /// Numerators after multiplying by a common denominator `den`.
    pub(crate) fn clear_denominators_exact(&self, den: &BigInt) -> Vec<BigInt> {
        self.coords()
            .iter()
            .map(|c| {
                let (q, r) = (c.numer() * den).div_rem(c.denom());
                debug_assert!(r == BigInt::ZERO);
                q
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polygon(pts: &[[i64; 2]]) -> Polyhedron {
        let pts: Vec<QVector> = pts.iter().map(|p| QVector::from_i64(p)).collect();
        Polyhedron::hull(&pts, &[]).unwrap()
    }

    /// Brute force over a generous box, independent of the polar dual.
    fn brute(pts: &[[i64; 2]], k: i64) -> u64 {
        let mut n = 0;
        for a in -50..=50 {
            for b in -50..=50 {
                if pts.iter().all(|v| a * v[0] + b * v[1] >= -k) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn weighted_plane_and_its_mutation_have_nine_points() {
        let f = [[-1, 1], [1, 1], [0, -1]];
        let g = [[-1, 1], [0, 1], [0, -1], [1, -1]];
        assert_eq!(dual_ehrhart_counts(&polygon(&f), 1).unwrap(), vec![9]);
        assert_eq!(dual_ehrhart_counts(&polygon(&g), 1).unwrap(), vec![9]);
        for k in 1..=6 {
            assert_eq!(brute(&f, k), brute(&g, k));
        }
        let counts = dual_ehrhart_counts(&polygon(&f), 6).unwrap();
        assert_eq!(counts, (1..=6).map(|k| brute(&f, k)).collect::<Vec<_>>());
    }

    #[test]
    fn diamond_dual_is_square() {
        let d = [[1, 0], [-1, 0], [0, 1], [0, -1]];
        assert_eq!(dual_ehrhart_counts(&polygon(&d), 3).unwrap(), vec![9, 25, 49]);
    }

    #[test]
    fn needs_interior_origin() {
        let p = polygon(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(dual_ehrhart_counts(&p, 1), Err(Error::OriginNotInterior));
    }
}
