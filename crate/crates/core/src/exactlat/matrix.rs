use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LatticeVector, QVector, Rational};
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_row_vectors(rows: &[LatticeVector]) -> Self {
        let cols = rows.first().map_or(0, LatticeVector::rank);
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.coords().iter().cloned()).collect(),
        }
    }

    pub fn from_columns(cols: &[LatticeVector]) -> Self {
        Self::from_row_vectors(cols).transpose()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).into_coords()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.rank(), "matrix/vector size mismatch");
        LatticeVector::new((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn mul_qvector(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.rank(), "matrix/vector size mismatch");
        QVector::new((0..self.rows).map(|i| self.row(i).pair(v)).collect())
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n)
                    .map(|j| Rational::from_integer(self.get(i, j).clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let (red, _) = super::rref(&aug);
        let entries = red
            .iter()
            .flat_map(|row| row[n..].iter().map(|x| x.to_integer()))
            .collect();
        IntMatrix::new(n, n, entries)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire(Vec<LatticeVector>);

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire((0..self.rows).map(|i| self.row(i)).collect()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = MatrixWire::deserialize(d)?.0;
        let cols = rows.first().map_or(0, LatticeVector::rank);
        if rows.iter().any(|r| r.rank() != cols) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(IntMatrix::from_row_vectors(&rows))
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal with
/// `d[0] | d[1] | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
        for c in 0..a.cols {
            a.entries.swap(i * a.cols + c, j * a.cols + c);
        }
    }
    fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
        for r in 0..a.rows {
            a.entries.swap(r * a.cols + i, r * a.cols + j);
        }
    }
    // row_i -= q * row_j
    fn sub_row(a: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
        for c in 0..a.cols {
            let delta = q * a.get(j, c);
            *a.get_mut(i, c) -= delta;
        }
    }
    fn sub_col(a: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
        for r in 0..a.rows {
            let delta = q * a.get(r, j);
            *a.get_mut(r, i) -= delta;
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d.get(i, j).is_zero()
                        && best.is_none_or(|(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    sub_row(&mut d, i, t, &q);
                    sub_row(&mut u, i, t, &q);
                }
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    sub_col(&mut d, j, t, &q);
                    sub_col(&mut v, j, t, &q);
                }
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    sub_row(&mut d, t, i, &minus_one);
                    sub_row(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            for c in 0..cols {
                let x = -d.get(t, c).clone();
                *d.get_mut(t, c) = x;
            }
            for c in 0..rows {
                let x = -u.get(t, c).clone();
                *u.get_mut(t, c) = x;
            }
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, d, v }
}

/// Row-style Hermite normal form basis of the lattice spanned by `vectors`:
/// echelon, positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let ncols = first.rank();
    let mut m: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut r = 0;
    for c in 0..ncols {
        // Euclid on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&a, &&b| m[a][c].abs().cmp(&m[b][c].abs()))
                .unwrap();
            for &i in &nz {
                if i != p {
                    let q = m[i][c].div_floor(&m[p][c]);
                    for j in 0..ncols {
                        let delta = &q * &m[p][j];
                        m[i][j] -= delta;
                    }
                }
            }
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let delta = &q * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.into_iter().map(LatticeVector::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_decomposition(m);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{} does not divide {}", w[0], w[1]);
            }
        }
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]]));
        let s = check_smith(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check_smith(&IntMatrix::from_rows(&[vec![2, 4]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![2, 0]]));
    }

    #[test]
    fn smith_awkward_shapes() {
        check_smith(&IntMatrix::from_rows(&[vec![6, 4, 10], vec![4, -2, 8], vec![0, 0, 0]]));
        check_smith(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 7], vec![3, 0]]));
        check_smith(&IntMatrix::from_rows(&[vec![-4, 6, 9]]));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![3, 5, -1]]);
        assert_eq!(a.det(), BigInt::from(-1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(3));
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(b.inverse_unimodular(), Err(Error::NotUnimodular));
    }

    #[test]
    fn hermite_basis() {
        let h = hermite_rows(&[
            LatticeVector::from_i64(&[-3, 2]),
            LatticeVector::from_i64(&[6, -4]),
        ]);
        assert_eq!(h, vec![LatticeVector::from_i64(&[3, -2])]);
        let h = hermite_rows(&[
            LatticeVector::from_i64(&[0, 0, 1]),
            LatticeVector::from_i64(&[1, 0, 5]),
        ]);
        assert_eq!(
            h,
            vec![LatticeVector::from_i64(&[1, 0, 0]), LatticeVector::from_i64(&[0, 0, 1])]
        );
    }
}
