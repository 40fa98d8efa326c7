//! Laurent polynomials with rational coefficients.

mod parse;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::{parse, parse_with_rank, variable_name, ParseError};

use crate::error::{Error, Result};
use crate::exactlat::{IntMatrix, LatticeVector, QVector, Rational};
use crate::polyhedra::Polyhedron;

pub type Exponent = Vec<i64>;

/// Finite sum of monomials `c * z^e`, `c != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], Rational::from_integer(BigInt::from(1)))
    }

    pub fn monomial(exponent: Exponent, coeff: Rational) -> Self {
        let mut f = Self::zero(exponent.len());
        f.add_term(exponent, coeff);
        f
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut f = Self::zero(rank);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    }

    pub(crate) fn add_term(&mut self, exponent: Exponent, coeff: Rational) {
        assert_eq!(exponent.len(), self.rank, "exponent length must equal the rank");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, exponent: &[i64]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self).expect("same rank");
        }
        acc
    }

    /// Multiplication by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Minimum and maximum of exponent coordinate `index` over the support.
    pub fn degree_range(&self, index: usize) -> Option<(i64, i64)> {
        let min = self.terms.keys().map(|e| e[index]).min()?;
        let max = self.terms.keys().map(|e| e[index]).max()?;
        Some((min, max))
    }

    /// Replaces every exponent `e` by `A e` (no unimodularity check).
    pub(crate) fn map_exponents(&self, a: &IntMatrix) -> Self {
        let mut out = Self::zero(a.rows());
        for (e, c) in &self.terms {
            let v = a.mul_vec(&LatticeVector::from_i64(e));
            let e = v.to_i64().expect("exponent overflow under linear map");
            out.add_term(e, c.clone());
        }
        out
    }

    /// Inserts a variable with exponent `value` at position `index`.
    pub fn insert_variable(&self, index: usize, value: i64) -> Self {
        let mut out = Self::zero(self.rank + 1);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.insert(index, value);
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rank: usize,
            expr: String,
        }
        Wire {
            rank: self.rank,
            expr: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            rank: usize,
            expr: String,
        }
        let w = Wire::deserialize(d)?;
        parse_with_rank(&w.expr, w.rank).map_err(serde::de::Error::custom)
    }
}

/// Convex hull of the exponent vectors.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<Polyhedron> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<QVector> = f.terms.keys().map(|e| QVector::from_i64(e)).collect();
    Polyhedron::hull(&pts, &[])
}

/// `f = sum_i slices[i] * z^i` along one exponent coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDecomposition {
    pub direction_index: usize,
    /// Keyed by `i`; each slice lives in the remaining `rank - 1` variables.
    pub slices: BTreeMap<i64, LaurentPolynomial>,
    pub k: i64,
    pub l: i64,
}

impl SliceDecomposition {
    pub fn get(&self, i: i64) -> Option<&LaurentPolynomial> {
        self.slices.get(&i)
    }

    /// Rebuilds `sum_i slices[i] * z^i`.
    pub fn reassemble(&self) -> LaurentPolynomial {
        let rank = self.slices.values().next().map_or(1, |s| s.rank() + 1);
        let mut out = LaurentPolynomial::zero(rank);
        for (&i, s) in &self.slices {
            for (e, c) in s.terms() {
                let mut e = e.clone();
                e.insert(self.direction_index, i);
                out.add_term(e, c.clone());
            }
        }
        out
    }
}

pub fn slices(f: &LaurentPolynomial, direction_index: usize) -> Result<SliceDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if direction_index >= f.rank {
        return Err(Error::DimensionMismatch(format!(
            "direction {direction_index} out of range for rank {}",
            f.rank
        )));
    }
    let mut out: BTreeMap<i64, LaurentPolynomial> = BTreeMap::new();
    for (e, c) in &f.terms {
        let i = e[direction_index];
        let mut rest = e.clone();
        rest.remove(direction_index);
        out.entry(i)
            .or_insert_with(|| LaurentPolynomial::zero(f.rank - 1))
            .add_term(rest, c.clone());
    }
    let k = *out.keys().next().expect("nonzero polynomial");
    let l = *out.keys().next_back().expect("nonzero polynomial");
    Ok(SliceDecomposition {
        direction_index,
        slices: out,
        k,
        l,
    })
}

/// Exact quotient `a / b`, or `None` when no Laurent polynomial `q` with
/// `q b = a` exists.
///
/// Repeatedly cancels the lexicographically smallest remainder term against
/// the smallest term of `b`. Quotient exponents must lie in the box
/// `[min(a) - min(b), max(a) - max(b)]` per coordinate (Newton polytopes add
/// under multiplication), which bounds the loop.
pub fn divide_exact(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<Option<LaurentPolynomial>> {
    a.check_rank(b)?;
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let rank = a.rank;
    if a.is_zero() {
        return Ok(Some(LaurentPolynomial::zero(rank)));
    }
    let mut lo = Vec::with_capacity(rank);
    let mut hi = Vec::with_capacity(rank);
    for j in 0..rank {
        let (amin, amax) = a.degree_range(j).expect("nonzero");
        let (bmin, bmax) = b.degree_range(j).expect("nonzero");
        if amin - bmin > amax - bmax {
            return Ok(None);
        }
        lo.push(amin - bmin);
        hi.push(amax - bmax);
    }
    let (lead_e, lead_c) = b.terms.iter().next().expect("nonzero divisor");
    let mut remainder = a.clone();
    let mut quotient = LaurentPolynomial::zero(rank);
    while let Some((e, c)) = remainder.terms.iter().next() {
        let qe: Exponent = e.iter().zip(lead_e).map(|(x, y)| x - y).collect();
        if qe.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
            return Ok(None);
        }
        let qc = c / lead_c;
        let step = LaurentPolynomial::monomial(qe.clone(), qc.clone());
        remainder = remainder.sub(&step.mul(b)?)?;
        quotient.add_term(qe, qc);
    }
    debug_assert_eq!(quotient.mul(b)?, *a);
    Ok(Some(quotient))
}

/// `psi(z^e) = z^{A e}` for unimodular `A`.
pub fn act_unimodular(f: &LaurentPolynomial, a: &IntMatrix) -> Result<LaurentPolynomial> {
    if a.rows() != f.rank || a.cols() != f.rank {
        return Err(Error::RankMismatch {
            expected: f.rank,
            found: a.rows(),
        });
    }
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    Ok(f.map_exponents(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlat::int;

    fn p(text: &str) -> LaurentPolynomial {
        parse(text).unwrap()
    }

    fn p2(text: &str) -> LaurentPolynomial {
        parse_with_rank(text, 2).unwrap()
    }

    #[test]
    fn newton_polytopes_of_examples() {
        let f = newton_polytope(&p("x^-1*y + 2*y + x*y + y^-1")).unwrap();
        assert_eq!(
            f.vertices(),
            &[QVector::from_i64(&[-1, 1]), QVector::from_i64(&[0, -1]), QVector::from_i64(&[1, 1])]
        );
        let g = newton_polytope(&p2("1 + x")).unwrap();
        assert_eq!(g.vertices(), &[QVector::from_i64(&[0, 0]), QVector::from_i64(&[1, 0])]);
        let h = newton_polytope(&p("x^-1*y + y + y^-1 + x*y^-1")).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(newton_polytope(&LaurentPolynomial::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn slices_of_examples() {
        let s = slices(&p("x^-1*y + 2*y + x*y + y^-1"), 1).unwrap();
        assert_eq!((s.k, s.l), (-1, 1));
        assert_eq!(s.get(1).unwrap(), &p("x^-1 + 2 + x"));
        assert_eq!(s.get(-1).unwrap(), &parse_with_rank("1", 1).unwrap());
        let f = p("x^-1 + x^-1*y + y + y^-1 + x*y^-1");
        let s = slices(&f, 1).unwrap();
        assert_eq!(s.get(1).unwrap(), &p("x^-1 + 1"));
        assert_eq!(s.get(0).unwrap(), &p("x^-1"));
        assert_eq!(s.get(-1).unwrap(), &p("1 + x"));
        assert_eq!(s.reassemble(), f);
        let g = slices(&p2("1 + x"), 1).unwrap();
        assert_eq!((g.k, g.l), (0, 0));
        assert_eq!(g.slices.len(), 1);
    }

    #[test]
    fn exact_division() {
        assert_eq!(divide_exact(&p("x^-1 + 2 + x"), &p("1 + x")).unwrap(), Some(p("x^-1 + 1")));
        assert_eq!(divide_exact(&p("1 + x"), &p("x")).unwrap(), Some(p("x^-1 + 1")));
        assert_eq!(divide_exact(&p("1 + x"), &p("1 + x + x^2")).unwrap(), None);
        assert_eq!(divide_exact(&p("x^-1 + 2 + x"), &p("1 + x^2")).unwrap(), None);
        assert_eq!(
            divide_exact(&p("x"), &LaurentPolynomial::zero(1)),
            Err(Error::ZeroDivisor)
        );
        // two variables, nontrivial cofactor
        let a = p("x^-1*y + 1").mul(&p("1 + x + y^2")).unwrap();
        assert_eq!(divide_exact(&a, &p("1 + x + y^2")).unwrap(), Some(p("x^-1*y + 1")));
    }

    #[test]
    fn unimodular_action() {
        let f = p("x^-1*y + 2*y + x*y + y^-1");
        assert_eq!(act_unimodular(&f, &IntMatrix::identity(2)).unwrap(), f);
        let shear = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]);
        let m = act_unimodular(&p("x^2*y^3"), &shear).unwrap();
        assert_eq!(m.coeff(&[2, 5]), int(1));
        assert_eq!(
            act_unimodular(&f, &IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn serde_keeps_rank() {
        let g = p2("1 + x");
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"rank":2,"expr":"1 + x"}"#);
        let back: LaurentPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
