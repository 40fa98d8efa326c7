use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{LatticeVector, Rational};

/// Reduced row echelon form over `Q`. Returns the nonzero rows and the pivot
/// column of each.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..ncols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a set of integer row vectors, by fraction-free elimination.
pub fn rank(rows: &[LatticeVector]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            for j in c..ncols {
                m[i][j] = &m[i][j] * &a - &m[r][j] * &b;
            }
            let content = m[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in m[i].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Integer basis of `{x : row . x = 0 for every row}` in canonical form:
/// reduced echelon over `Q`, each vector scaled to be primitive.
pub fn nullspace(rows: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.coords().iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let (m, pivots) = rref(&q);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&fcol| {
            let mut v = vec![Rational::zero(); dim];
            v[fcol] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[fcol].clone();
            }
            v
        })
        .collect();
    canonical_span(&basis, dim)
}

/// Canonical integer basis of the rational span of `vectors`.
pub(crate) fn canonical_span(vectors: &[Vec<Rational>], dim: usize) -> Vec<LatticeVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (m, _) = rref(vectors);
    m.into_iter()
        .map(|row| {
            let lv = super::QVector::new(row).clear_denominators();
            debug_assert_eq!(lv.rank(), dim);
            super::primitive_vector(&lv).expect("nonzero echelon row")
        })
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub(crate) fn project_out(v: &[Rational], basis: &[LatticeVector]) -> Vec<Rational> {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve the Gram system G c = B v, then return v - B^T c.
    let k = basis.len();
    let bq: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| b.coords().iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let mut aug: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k).map(|j| dot(&bq[i], &bq[j])).collect();
            row.push(dot(&bq[i], v));
            row
        })
        .collect();
    let (red, _) = rref(&aug);
    aug = red;
    let coeffs: Vec<Rational> = aug.iter().map(|row| row[k].clone()).collect();
    let mut out = v.to_vec();
    for (c, b) in coeffs.iter().zip(&bq) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            LatticeVector::from_i64(&[1, 2, 3]),
            LatticeVector::from_i64(&[2, 4, 6]),
            LatticeVector::from_i64(&[0, 1, 1]),
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(r.dot(&ns[0]).is_zero());
        }
        assert_eq!(ns[0], LatticeVector::from_i64(&[1, 1, -1]));
    }

    #[test]
    fn empty_rows_have_full_nullspace() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }
}
