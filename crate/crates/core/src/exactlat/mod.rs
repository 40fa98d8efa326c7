//! Exact scalars, lattice vectors and integer linear algebra.
//!
//! Everything here is arbitrary precision. Rationals are `num_rational`
//! big rationals, which already keep the reduced form with a positive
//! denominator.

pub(crate) mod linalg;
mod matrix;
pub(crate) mod wire;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linalg::{nullspace, rank, rref};
pub use matrix::{hermite_rows, smith_decomposition, IntMatrix, SmithDecomposition};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Element of `N` or `M = Hom(N, Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(#[serde(with = "wire::int_seq")] Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    /// The `index`-th standard basis vector.
    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[index] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Pairing with a rational point.
    pub fn pair(&self, point: &QVector) -> Rational {
        debug_assert_eq!(self.rank(), point.rank());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(point.coords()) {
            if !a.is_zero() {
                acc += b * Rational::from_integer(a.clone());
            }
        }
        acc
    }

    pub fn scale(&self, factor: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_qvector(&self) -> QVector {
        QVector(self.0.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Inserts a new coordinate `value` at position `index`.
    pub fn insert(&self, index: usize, value: BigInt) -> LatticeVector {
        let mut coords = self.0.clone();
        coords.insert(index, value);
        LatticeVector(coords)
    }

    /// Drops the coordinate at `index`.
    pub fn remove(&self, index: usize) -> LatticeVector {
        let mut coords = self.0.clone();
        coords.remove(index);
        LatticeVector(coords)
    }
}

impl Index<usize> for LatticeVector {
    type Output = BigInt;
    fn index(&self, index: usize) -> &BigInt {
        &self.0[index]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Element of `N_Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(#[serde(with = "wire::rat_seq")] Vec<Rational>);

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        QVector(coords.iter().map(|&c| int(c)).collect())
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        QVector(coords.iter().map(|&(p, q)| rational(p, q)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        QVector(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral()
            .then(|| LatticeVector(self.0.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn scale(&self, factor: &Rational) -> QVector {
        QVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Smallest positive integer multiple, returned as a lattice vector.
    pub fn clear_denominators(&self) -> LatticeVector {
        let l = self.denominator_lcm();
        LatticeVector(
            self.0
                .iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        )
    }

    pub fn insert(&self, index: usize, value: Rational) -> QVector {
        let mut coords = self.0.clone();
        coords.insert(index, value);
        QVector(coords)
    }

    pub fn remove(&self, index: usize) -> QVector {
        let mut coords = self.0.clone();
        coords.remove(index);
        QVector(coords)
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Divides `v` by the gcd of its coordinates.
pub fn primitive_vector(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::NoPrimitiveDirection);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// A splitting `N = ker(u) + Z w` for a primitive covector `u`.
///
/// The kernel basis is in Hermite normal form and `w` is reduced against it,
/// so the result only depends on `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedBasis {
    pub u: LatticeVector,
    pub w: LatticeVector,
    pub kernel: Vec<LatticeVector>,
}

impl AdaptedBasis {
    /// Columns `kernel[0], ..., kernel[n-2], w`.
    pub fn matrix(&self) -> IntMatrix {
        let mut cols = self.kernel.clone();
        cols.push(self.w.clone());
        IntMatrix::from_columns(&cols)
    }

    /// The cosection `s`: coordinates of `x` along the kernel basis.
    pub fn cosection(&self, x: &QVector) -> QVector {
        let inv = self
            .matrix()
            .inverse_unimodular()
            .expect("adapted basis is unimodular");
        let coords = inv.mul_qvector(x);
        coords.remove(coords.rank() - 1)
    }

    /// Inverse of the cosection on the slice `u = level`.
    pub fn lift(&self, y: &QVector, level: &Rational) -> QVector {
        let mut acc = self.w.to_qvector().scale(level);
        for (k, c) in self.kernel.iter().zip(y.coords()) {
            acc = &acc + &k.to_qvector().scale(c);
        }
        acc
    }
}

/// Computes an adapted basis for `u`: `u(w) = 1` and `kernel` is a lattice
/// basis of `ker u`.
pub fn adapted_basis(u: &LatticeVector) -> Result<AdaptedBasis> {
    if u.is_zero() {
        return Err(Error::NoPrimitiveDirection);
    }
    if !u.is_primitive() {
        return Err(Error::NotPrimitive(u.to_string()));
    }
    let n = u.rank();
    // Column operations bringing u^T to (1, 0, ..., 0); tracked in `cols`.
    let mut row: Vec<BigInt> = u.coords().to_vec();
    let mut cols: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !row[i].is_zero()).collect();
        if nonzero.len() == 1 {
            let p = nonzero[0];
            if row[p].is_negative() {
                row[p] = -row[p].clone();
                cols[p] = -&cols[p];
            }
            row.swap(0, p);
            cols.swap(0, p);
            break;
        }
        let pivot = *nonzero
            .iter()
            .min_by(|&&a, &&b| row[a].abs().cmp(&row[b].abs()))
            .unwrap();
        for &j in &nonzero {
            if j == pivot {
                continue;
            }
            let q = row[j].div_floor(&row[pivot]);
            row[j] = &row[j] - &q * &row[pivot];
            cols[j] = &cols[j] - &cols[pivot].scale(&q);
        }
    }
    debug_assert!(row[0].is_one());
    let kernel = hermite_rows(&cols[1..]);
    let mut w = cols[0].clone();
    for k in &kernel {
        let p = k.coords().iter().position(|c| !c.is_zero()).unwrap();
        let h = &k[p];
        // centred remainder in (-h/2, h/2]
        let two = BigInt::from(2);
        let q = (&w[p] * &two + h - BigInt::one()).div_floor(&(h * &two));
        if !q.is_zero() {
            w = &w - &k.scale(&q);
        }
    }
    Ok(AdaptedBasis {
        u: u.clone(),
        w,
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&lv(&[2, 4, 6])).unwrap(), lv(&[1, 2, 3]));
        assert_eq!(primitive_vector(&lv(&[0, 0, -5])).unwrap(), lv(&[0, 0, -1]));
        assert_eq!(primitive_vector(&lv(&[3, 5])).unwrap(), lv(&[3, 5]));
        assert_eq!(
            primitive_vector(&lv(&[0, 0])),
            Err(Error::NoPrimitiveDirection)
        );
    }

    #[test]
    fn adapted_basis_coordinate_direction() {
        let b = adapted_basis(&lv(&[0, 1, 0])).unwrap();
        assert_eq!(b.w, lv(&[0, 1, 0]));
        assert_eq!(b.kernel, vec![lv(&[1, 0, 0]), lv(&[0, 0, 1])]);
        let b = adapted_basis(&lv(&[1, 0])).unwrap();
        assert_eq!(b.w, lv(&[1, 0]));
        assert_eq!(b.kernel, vec![lv(&[0, 1])]);
    }

    #[test]
    fn adapted_basis_extended_gcd() {
        let u = lv(&[2, 3]);
        let b = adapted_basis(&u).unwrap();
        assert_eq!(u.dot(&b.w), BigInt::one());
        assert!(u.dot(&b.kernel[0]).is_zero());
        assert_eq!(b.w, lv(&[-1, 1]));
        assert_eq!(b.kernel, vec![lv(&[3, -2])]);
        assert_eq!(b.matrix().det().abs(), BigInt::one());
    }

    #[test]
    fn adapted_basis_rejects_non_primitive() {
        assert!(matches!(
            adapted_basis(&lv(&[2, 4])),
            Err(Error::NotPrimitive(_))
        ));
        assert_eq!(
            adapted_basis(&lv(&[0, 0])),
            Err(Error::NoPrimitiveDirection)
        );
    }

    #[test]
    fn cosection_and_lift_are_inverse() {
        let b = adapted_basis(&lv(&[2, 3, -1])).unwrap();
        let x = QVector::from_fractions(&[(1, 2), (3, 1), (-2, 3)]);
        let level = b.u.pair(&x);
        let y = b.cosection(&x);
        assert_eq!(b.lift(&y, &level), x);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6"), Some(rational(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
