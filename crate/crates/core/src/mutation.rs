//! Mutations `z_n -> z_n / g` in a basis adapted to a covector `u`.
//!
//! In original coordinates the map is `chi^x -> chi^x * g^(-u(x))`, where `g`
//! only involves monomials in `ker u`. The basis decides how exponents are
//! written while slicing; the result does not depend on it.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlat::{adapted_basis, IntMatrix, LatticeVector};
use crate::laurent::{
    divide_exact, parse_with_rank, slices, LaurentPolynomial, ParseError, SliceDecomposition,
};
use crate::polyhedra::{contains_origin_interior, Polyhedron};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecWire", into = "SpecWire")]
pub struct MutationSpec {
    rank: usize,
    u: LatticeVector,
    /// Columns: kernel basis of `u`, then `w` with `u(w) = 1`.
    basis: IntMatrix,
    /// `g` in kernel coordinates (rank - 1 variables).
    divisor: LaurentPolynomial,
}

#[derive(Clone, Serialize, Deserialize)]
struct SpecWire {
    rank: usize,
    u: LatticeVector,
    basis: IntMatrix,
    divisor: String,
}

impl TryFrom<SpecWire> for MutationSpec {
    type Error = String;
    fn try_from(w: SpecWire) -> std::result::Result<Self, String> {
        let kernel_rank = w.rank.saturating_sub(1);
        let g = parse_with_rank(&w.divisor, kernel_rank.max(1))
            .map_err(|e: ParseError| e.to_string())?;
        let g = if kernel_rank == 0 {
            // constant divisor in rank 1
            LaurentPolynomial::from_terms(0, g.terms().map(|(_, c)| (vec![], c.clone())))
        } else {
            g
        };
        let spec = MutationSpec::from_basis(w.basis, g).map_err(|e| e.to_string())?;
        if spec.u != w.u || spec.rank != w.rank {
            return Err("direction does not match the basis".into());
        }
        Ok(spec)
    }
}

impl From<MutationSpec> for SpecWire {
    fn from(s: MutationSpec) -> Self {
        SpecWire {
            rank: s.rank,
            u: s.u,
            basis: s.basis,
            divisor: s.divisor.to_string(),
        }
    }
}

impl MutationSpec {
    /// Spec for direction `u` and a divisor given in original coordinates,
    /// using the canonical adapted basis of `u`.
    pub fn new(u: &LatticeVector, divisor: &LaurentPolynomial) -> Result<Self> {
        let basis = adapted_basis(u)?;
        Self::rebased_from(u, basis.matrix(), divisor)
    }

    /// `z_index -> z_index / g`, with `g` written in the full set of variables.
    pub fn divide_variable(rank: usize, index: usize, divisor: &LaurentPolynomial) -> Result<Self> {
        if index >= rank {
            return Err(Error::DimensionMismatch(format!(
                "variable index {index} out of range for rank {rank}"
            )));
        }
        Self::new(&LatticeVector::unit(rank, index), divisor)
    }

    /// Spec read off a unimodular basis: `u` is the last dual basis vector.
    pub fn from_basis(basis: IntMatrix, divisor: LaurentPolynomial) -> Result<Self> {
        let n = basis.rows();
        if basis.cols() != n {
            return Err(Error::DimensionMismatch("basis must be square".into()));
        }
        let inv = basis.inverse_unimodular()?;
        if divisor.rank() + 1 != n {
            return Err(Error::RankMismatch {
                expected: n - 1,
                found: divisor.rank(),
            });
        }
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(MutationSpec {
            rank: n,
            u: inv.row(n - 1),
            basis,
            divisor,
        })
    }

    /// Same `u` and same divisor (in original coordinates), other basis.
    pub fn rebased(&self, basis: IntMatrix) -> Result<Self> {
        Self::rebased_from(&self.u, basis, &self.divisor_original())
    }

    fn rebased_from(u: &LatticeVector, basis: IntMatrix, divisor: &LaurentPolynomial) -> Result<Self> {
        let n = u.rank();
        if divisor.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: divisor.rank(),
            });
        }
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::DimensionMismatch("basis must be square of the same rank".into()));
        }
        let inv = basis.inverse_unimodular()?;
        if inv.row(n - 1) != *u {
            return Err(Error::Precondition("basis is not adapted to the direction".into()));
        }
        let mut g = LaurentPolynomial::zero(n - 1);
        for (e, c) in divisor.terms() {
            let x = LatticeVector::from_i64(e);
            if !u.dot(&x).is_zero() {
                return Err(Error::Precondition(format!(
                    "divisor monomial {x} is not in the kernel of {u}"
                )));
            }
            let c_ad = inv.mul_vec(&x).remove(n - 1);
            g = g.add(&LaurentPolynomial::monomial(to_exponent(&c_ad), c.clone()))?;
        }
        Ok(MutationSpec {
            rank: n,
            u: u.clone(),
            basis,
            divisor: g,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn u(&self) -> &LatticeVector {
        &self.u
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// The divisor in kernel coordinates.
    pub fn divisor(&self) -> &LaurentPolynomial {
        &self.divisor
    }

    /// The divisor with exponents written in the original lattice.
    pub fn divisor_original(&self) -> LaurentPolynomial {
        let n = self.rank;
        let kernel: Vec<LatticeVector> = (0..n - 1).map(|j| self.basis.column(j)).collect();
        let mut g = LaurentPolynomial::zero(n);
        for (e, c) in self.divisor.terms() {
            let mut x = LatticeVector::zero(n);
            for (k, &a) in kernel.iter().zip(e) {
                x = &x + &k.scale(&a.into());
            }
            g = g
                .add(&LaurentPolynomial::monomial(to_exponent(&x), c.clone()))
                .expect("same rank");
        }
        g
    }

    /// `chi^x -> chi^x * g^(u(x))`, the inverse birational map.
    pub fn inverse(&self) -> Self {
        let n = self.rank;
        let mut cols: Vec<LatticeVector> = (0..n).map(|j| self.basis.column(j)).collect();
        cols[n - 1] = -&cols[n - 1];
        MutationSpec {
            rank: n,
            u: -&self.u,
            basis: IntMatrix::from_columns(&cols),
            divisor: self.divisor.clone(),
        }
    }

    /// The spec for `A f` when `self` is a spec for `f`.
    pub fn conjugate(&self, a: &IntMatrix) -> Result<Self> {
        let basis = a.mul(&self.basis)?;
        Self::from_basis(basis, self.divisor.clone())
    }

    /// `f` in adapted coordinates: the divided variable is the last one.
    pub fn to_adapted(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.check_rank(f)?;
        let inv = self.basis.inverse_unimodular()?;
        Ok(f.map_exponents(&inv))
    }

    pub fn from_adapted(&self, f: &LaurentPolynomial) -> LaurentPolynomial {
        f.map_exponents(&self.basis)
    }

    /// Slices of `f` along the divided variable, in kernel coordinates.
    pub fn slices(&self, f: &LaurentPolynomial) -> Result<SliceDecomposition> {
        let fa = self.to_adapted(f)?;
        slices(&fa, self.rank - 1)
    }

    fn check_rank(&self, f: &LaurentPolynomial) -> Result<()> {
        if f.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: f.rank(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCheck {
    pub index: i64,
    pub slice: LaurentPolynomial,
    /// `slice / g^index`, present for `index > 0` when the division is exact.
    pub quotient: Option<LaurentPolynomial>,
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationReport {
    pub is_mutation: bool,
    pub k: i64,
    pub l: i64,
    pub slices: Vec<SliceCheck>,
}

impl MutationReport {
    pub fn first_failure(&self) -> Option<i64> {
        self.slices.iter().find(|s| !s.divisible).map(|s| s.index)
    }
}

/// Tests whether every positive slice `f_i` is divisible by `g^i`.
pub fn is_mutation(f: &LaurentPolynomial, spec: &MutationSpec) -> Result<(bool, MutationReport)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dec = spec.slices(f)?;
    let mut checks = Vec::with_capacity(dec.slices.len());
    for (&i, fi) in &dec.slices {
        let (quotient, divisible) = if i > 0 {
            let q = divide_exact(fi, &spec.divisor.pow(i as u32))?;
            let ok = q.is_some();
            (q, ok)
        } else {
            (None, true)
        };
        checks.push(SliceCheck {
            index: i,
            slice: fi.clone(),
            quotient,
            divisible,
        });
    }
    let ok = checks.iter().all(|c| c.divisible);
    Ok((
        ok,
        MutationReport {
            is_mutation: ok,
            k: dec.k,
            l: dec.l,
            slices: checks,
        },
    ))
}

/// `phi(f) = sum_i (f_i / g^i) z^i`, back in original coordinates.
pub fn apply_mutation(f: &LaurentPolynomial, spec: &MutationSpec) -> Result<LaurentPolynomial> {
    let (ok, report) = is_mutation(f, spec)?;
    if !ok {
        return Err(Error::NotAMutation {
            slice: report.first_failure().expect("a failing slice"),
        });
    }
    let mut out: BTreeMap<i64, LaurentPolynomial> = BTreeMap::new();
    for c in report.slices {
        let q = match c.index {
            i if i > 0 => c.quotient.expect("checked divisible"),
            0 => c.slice,
            i => c.slice.mul(&spec.divisor.pow((-i) as u32))?,
        };
        out.insert(c.index, q);
    }
    let dec = SliceDecomposition {
        direction_index: spec.rank - 1,
        k: report.k,
        l: report.l,
        slices: out,
    };
    Ok(spec.from_adapted(&dec.reassemble()))
}

/// Mutation attached to the edge `(v_i, v_{i+1})` of the counter-clockwise
/// vertex cycle of a lattice polygon.
///
/// `u` is the primitive functional maximized on the edge, the kernel
/// direction `k` is taken lexicographically positive, and `g = 1 + chi^k`.
pub fn facet_mutation_spec(p: &Polyhedron, edge: usize) -> Result<MutationSpec> {
    let (u, k) = facet_direction(p, edge)?;
    let g = LaurentPolynomial::one(2).add(&LaurentPolynomial::monomial(
        to_exponent(&k),
        crate::exactlat::int(1),
    ))?;
    let spec = MutationSpec::new(&u, &g)?;
    debug_assert_eq!(spec.basis.column(0), k);
    Ok(spec)
}

/// Outward primitive normal of an edge and the lexicographically positive
/// primitive edge direction.
pub fn facet_direction(p: &Polyhedron, edge: usize) -> Result<(LatticeVector, LatticeVector)> {
    check_facet_polygon(p)?;
    let cycle = p.polygon_cycle()?;
    if edge >= cycle.len() {
        return Err(Error::Precondition(format!(
            "edge index {edge} out of range for {} edges",
            cycle.len()
        )));
    }
    let a = &cycle[edge];
    let b = &cycle[(edge + 1) % cycle.len()];
    let d = (b - a).clear_denominators();
    let d = crate::exactlat::primitive_vector(&d)?;
    let normal = LatticeVector::new(vec![d[1].clone(), -d[0].clone()]);
    let k = if d.coords().iter().find(|c| !c.is_zero()).is_some_and(|c| c > &num_bigint::BigInt::ZERO) {
        d
    } else {
        -&d
    };
    Ok((normal, k))
}

fn check_facet_polygon(p: &Polyhedron) -> Result<()> {
    if p.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: p.rank(),
        });
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded("facet mutations need a polygon"));
    }
    if !contains_origin_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    for v in p.vertices() {
        match v.to_lattice() {
            Some(l) if l.is_primitive() => {}
            _ => return Err(Error::NotPrimitive(format!("vertex {v}"))),
        }
    }
    Ok(())
}

pub(crate) fn to_exponent(v: &LatticeVector) -> Vec<i64> {
    v.to_i64().expect("exponent fits in i64")
}
