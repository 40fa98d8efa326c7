//! Degenerations between the toric varieties of `Delta(f)` and
//! `Delta(phi(f))`, described by cones.
//!
//! Coordinates: `N = Z e0 + Z^n` with the grading `e0` first. The splitting
//! `N = N' + Z e` comes from the mutation basis `B`: in adapted coordinates
//! `(e0, c_1, ..., c_n)` the last coordinate is `u` and `N'` is everything
//! before it. [`FamilyData::splitting`] maps adapted coordinates back to the
//! original ones.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlat::{rational, IntMatrix, LatticeVector, QVector};
use crate::laurent::{newton_polytope, LaurentPolynomial};
use crate::mutation::{apply_mutation, is_mutation, MutationSpec};
use crate::polyhedra::{
    cone_over, contains_origin_interior, dual_ehrhart_counts, is_admissible_pair_with_bound,
    minkowski_sum, slice_project, tailcone, AdmissibilityVerdict, Cone, Polyhedron,
    DEFAULT_WITNESS_BOUND,
};

/// Dilations checked when comparing dual Ehrhart counts.
pub const EHRHART_KMAX: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyOptions {
    pub witness_bound: i64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            witness_bound: DEFAULT_WITNESS_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyData {
    pub spec: MutationSpec,
    /// `cone{Delta(f) + e0}`, original coordinates.
    pub sigma: Cone,
    pub u: LatticeVector,
    pub grading: LatticeVector,
    /// `diag(1, B)`: adapted coordinates to original ones.
    pub splitting: IntMatrix,
    /// The remaining polyhedra live in `N'`, coordinates `(e0, c_1, ..., c_{n-1})`.
    pub tail: Cone,
    pub delta0: Polyhedron,
    pub delta_inf: Polyhedron,
    pub delta00: Polyhedron,
    pub delta01: Polyhedron,
    /// `sigma_inf` in `N' + Z e`, i.e. adapted coordinates.
    pub sigma_inf_adapted: Cone,
    /// `sigma_inf` in original coordinates.
    pub sigma_inf: Cone,
    pub admissibility: (AdmissibilityVerdict, AdmissibilityVerdict),
}

impl FamilyData {
    /// Decomposition, tailcone and admissibility conditions, as messages for
    /// each one that fails.
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        match minkowski_sum(&self.delta00, &self.delta01) {
            Ok(s) if s == self.delta0 => {}
            _ => out.push("delta00 + delta01 differs from delta0".to_string()),
        }
        if !tailcone(&self.delta0).set_eq(&self.tail) || !tailcone(&self.delta_inf).set_eq(&self.tail) {
            out.push("tailcones of delta0 and delta_inf differ from tau".to_string());
        }
        if !self.admissibility.0.is_yes() {
            out.push("(delta00, delta01) not certified admissible".to_string());
        }
        if !self.admissibility.1.is_yes() {
            out.push("(delta01, delta_inf) not certified admissible".to_string());
        }
        if !self.u.dot(&self.grading).is_zero() {
            out.push("u does not vanish on the grading".to_string());
        }
        if self.sigma.is_nonnegative_on(&self.u) || self.sigma.is_nonnegative_on(&-&self.u) {
            out.push("u or -u lies in the dual cone".to_string());
        }
        out
    }

    /// `cone{tail, delta0 + e, delta_inf - e}` in adapted coordinates.
    pub fn recovered_sigma(&self) -> Result<Cone> {
        lift_cone(&self.tail, &[(&self.delta0, 1), (&self.delta_inf, -1)])
    }
}

/// Generators: tail rays at level 0, vertices of `(P, level)` at that level.
fn lift_cone(tail: &Cone, parts: &[(&Polyhedron, i64)]) -> Result<Cone> {
    let rank = tail.rank();
    let mut gens: Vec<LatticeVector> = tail
        .generators()
        .iter()
        .map(|r| r.insert(rank, BigInt::zero()))
        .collect();
    for (p, level) in parts {
        if p.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: p.rank(),
            });
        }
        for v in p.vertices() {
            gens.push(v.insert(rank, rational(*level, 1)).clear_denominators());
        }
        for r in p.rays() {
            gens.push(r.insert(rank, BigInt::zero()));
        }
    }
    Cone::from_generators(rank + 1, &gens)
}

/// `cone{tail, delta00 + e, delta01 + delta_inf - e}` with `e` appended as
/// the last coordinate.
pub fn sigma_infinity_from_decomposition(
    tail: &Cone,
    delta00: &Polyhedron,
    delta01: &Polyhedron,
    delta_inf: &Polyhedron,
) -> Result<Cone> {
    sigma_infinity_with_bound(tail, delta00, delta01, delta_inf, DEFAULT_WITNESS_BOUND)
}

pub fn sigma_infinity_with_bound(
    tail: &Cone,
    delta00: &Polyhedron,
    delta01: &Polyhedron,
    delta_inf: &Polyhedron,
    witness_bound: i64,
) -> Result<Cone> {
    for (name, p) in [("delta00", delta00), ("delta01", delta01), ("delta_inf", delta_inf)] {
        if !tailcone(p).set_eq(tail) {
            return Err(Error::Admissibility(format!("tailcone of {name} differs from tau")));
        }
    }
    for (name, a, b) in [
        ("(delta00, delta01)", delta00, delta01),
        ("(delta01, delta_inf)", delta01, delta_inf),
    ] {
        let v = is_admissible_pair_with_bound(a, b, witness_bound)?;
        if !v.is_yes() {
            return Err(Error::Admissibility(format!(
                "{name} is not certified admissible: {}",
                serde_json::to_string(&v).expect("verdict serializes")
            )));
        }
    }
    let top = minkowski_sum(delta01, delta_inf)?;
    lift_cone(tail, &[(delta00, 1), (&top, -1)])
}

fn hypotheses(f: &LaurentPolynomial, spec: &MutationSpec) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    if f.is_zero() {
        return Ok(vec!["zero polynomial".into()]);
    }
    if f.rank() != spec.rank() {
        return Ok(vec![format!(
            "rank mismatch: polynomial has {} variables, mutation {}",
            f.rank(),
            spec.rank()
        )]);
    }
    let (ok, report) = is_mutation(f, spec)?;
    if !ok {
        failures.push(format!(
            "not a mutation: slice {} is not divisible",
            report.first_failure().expect("failing slice")
        ));
    }
    if !contains_origin_interior(&newton_polytope(f)?) {
        failures.push("origin not in interior of the Newton polytope".into());
    }
    if report.k >= 0 || report.l <= 0 {
        failures.push(format!("slice range k = {}, l = {} does not satisfy k < 0 < l", report.k, report.l));
    }
    Ok(failures)
}

pub fn build_family(f: &LaurentPolynomial, spec: &MutationSpec) -> Result<FamilyData> {
    build_family_with_options(f, spec, FamilyOptions::default())
}

pub fn build_family_with_options(
    f: &LaurentPolynomial,
    spec: &MutationSpec,
    options: FamilyOptions,
) -> Result<FamilyData> {
    let failures = hypotheses(f, spec)?;
    if !failures.is_empty() {
        return Err(Error::Hypotheses(failures));
    }
    let n = spec.rank();
    let fa = spec.to_adapted(f)?;
    let sigma_a = cone_over(&newton_polytope(&fa)?, 0)?;
    let u_a = LatticeVector::unit(n + 1, n);
    let delta0 = slice_project(&sigma_a, &u_a, 1)?;
    let delta_inf = slice_project(&sigma_a, &u_a, -1)?;
    let tail = tailcone(&delta0);

    let (_, report) = is_mutation(f, spec)?;
    let mut top_points = Vec::new();
    for s in report.slices.iter().filter(|s| s.index > 0) {
        let q = s.quotient.as_ref().expect("checked divisible");
        let scale = rational(1, s.index);
        for v in newton_polytope(q)?.vertices() {
            top_points.push(v.insert(0, One::one()).scale(&scale));
        }
    }
    let delta00 = Polyhedron::hull(&top_points, tail.rays())?;
    let g_points: Vec<QVector> = newton_polytope(spec.divisor())?
        .vertices()
        .iter()
        .map(|v| v.insert(0, Zero::zero()))
        .collect();
    let delta01 = Polyhedron::hull(&g_points, tail.rays())?;

    let bound = options.witness_bound;
    let admissibility = (
        is_admissible_pair_with_bound(&delta00, &delta01, bound)?,
        is_admissible_pair_with_bound(&delta01, &delta_inf, bound)?,
    );
    let sigma_inf_adapted = sigma_infinity_with_bound(&tail, &delta00, &delta01, &delta_inf, bound)?;
    let splitting = splitting_matrix(spec);
    let sigma_inf = sigma_inf_adapted.map(&splitting)?;

    let mut u = spec.u().clone().into_coords();
    u.insert(0, BigInt::zero());
    Ok(FamilyData {
        spec: spec.clone(),
        sigma: cone_over(&newton_polytope(f)?, 0)?,
        u: LatticeVector::new(u),
        grading: LatticeVector::unit(n + 1, 0),
        splitting,
        tail,
        delta0,
        delta_inf,
        delta00,
        delta01,
        sigma_inf_adapted,
        sigma_inf,
        admissibility,
    })
}

/// `diag(1, B)`.
pub fn splitting_matrix(spec: &MutationSpec) -> IntMatrix {
    let n = spec.rank();
    let b = spec.basis();
    let rows: Vec<LatticeVector> = (0..=n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n + 1];
            if i == 0 {
                row[0] = BigInt::one();
            } else {
                for j in 0..n {
                    row[j + 1] = b.get(i - 1, j).clone();
                }
            }
            LatticeVector::new(row)
        })
        .collect();
    IntMatrix::from_row_vectors(&rows)
}

/// Moves the grading coordinate from the front to the back.
pub fn grading_last(v: &LatticeVector) -> LatticeVector {
    let mut c = v.coords().to_vec();
    c.rotate_left(1);
    LatticeVector::new(c)
}

/// `Delta_inf` is a lattice translate of its tailcone.
pub fn general_fiber_is_toric(delta_inf: &Polyhedron) -> bool {
    delta_inf.vertices().len() == 1 && delta_inf.vertices()[0].is_integral()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Informational checks are reported but do not affect `passed`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { CheckStatus::Passed } else { CheckStatus::Failed },
            informational: false,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Skipped,
            informational: false,
            detail: "skipped after an earlier failure".into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutated: Option<LaurentPolynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_prime: Option<Cone>,
    /// Rays of `sigma_inf` with the grading coordinate moved last.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma_inf_rays_grading_last: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ehrhart: Option<(Vec<u64>, Vec<u64>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyData>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_NAMES: [&str; 6] = [
    "hypotheses",
    "sigma_prime",
    "sigma_inf_equals_sigma_prime",
    "tail_lemma",
    "general_fiber_toric",
    "ehrhart",
];

pub fn verify_main_theorem(f: &LaurentPolynomial, spec: &MutationSpec) -> VerificationReport {
    verify_main_theorem_with_options(f, spec, FamilyOptions::default())
}

pub fn verify_main_theorem_with_options(
    f: &LaurentPolynomial,
    spec: &MutationSpec,
    options: FamilyOptions,
) -> VerificationReport {
    let mut report = VerificationReport {
        passed: false,
        checks: Vec::new(),
        mutated: None,
        sigma_prime: None,
        sigma_inf_rays_grading_last: Vec::new(),
        ehrhart: None,
        family: None,
    };
    let skip_rest = |report: &mut VerificationReport| {
        for name in &CHECK_NAMES[report.checks.len()..] {
            report.checks.push(Check::skipped(name));
        }
    };

    let hyp = hypotheses(f, spec).unwrap_or_else(|e| vec![e.to_string()]);
    let hyp_ok = hyp.is_empty();
    report.checks.push(Check::new(
        CHECK_NAMES[0],
        hyp_ok,
        if hyp_ok { "all hypotheses hold".to_string() } else { hyp.join("; ") },
    ));
    if !hyp_ok {
        skip_rest(&mut report);
        return report;
    }

    let phi = match apply_mutation(f, spec) {
        Ok(p) => p,
        Err(e) => {
            report.checks.push(Check::new(CHECK_NAMES[1], false, e.to_string()));
            skip_rest(&mut report);
            return report;
        }
    };
    let sigma_prime = newton_polytope(&phi).and_then(|d| cone_over(&d, 0));
    let sigma_prime = match sigma_prime {
        Ok(c) => {
            report.checks.push(Check::new(
                CHECK_NAMES[1],
                true,
                format!("cone over the Newton polytope of {phi}"),
            ));
            c
        }
        Err(e) => {
            report.checks.push(Check::new(CHECK_NAMES[1], false, e.to_string()));
            skip_rest(&mut report);
            return report;
        }
    };
    report.mutated = Some(phi.clone());
    report.sigma_prime = Some(sigma_prime.clone());

    let family = match build_family_with_options(f, spec, options) {
        Ok(fam) => fam,
        Err(e) => {
            report.checks.push(Check::new(CHECK_NAMES[2], false, format!("family construction failed: {e}")));
            skip_rest(&mut report);
            return report;
        }
    };
    let invariants = family.invariant_failures();
    let equal = family.sigma_inf.set_eq(&sigma_prime);
    let detail = if !invariants.is_empty() {
        invariants.join("; ")
    } else if equal {
        "sigma_inf equals sigma' as sets".to_string()
    } else {
        "sigma_inf and sigma' differ".to_string()
    };
    report.checks.push(Check::new(CHECK_NAMES[2], equal && invariants.is_empty(), detail));
    report.sigma_inf_rays_grading_last = family.sigma_inf.rays().iter().map(grading_last).collect();

    let lemma = tail_lemma(&phi, spec, &family.tail);
    report.checks.push(match lemma {
        Ok(true) => Check::new(CHECK_NAMES[3], true, "s(ker u ∩ sigma') = tau"),
        Ok(false) => Check::new(CHECK_NAMES[3], false, "s(ker u ∩ sigma') differs from tau"),
        Err(e) => Check::new(CHECK_NAMES[3], false, e.to_string()),
    });

    let toric = general_fiber_is_toric(&family.delta_inf);
    let mut check = Check::new(
        CHECK_NAMES[4],
        toric,
        if toric {
            "delta_inf is a lattice translate of its tailcone"
        } else {
            "delta_inf is not a lattice translate of its tailcone"
        },
    );
    check.informational = true;
    report.checks.push(check);

    let counts = newton_polytope(f)
        .and_then(|d| dual_ehrhart_counts(&d, EHRHART_KMAX))
        .and_then(|a| Ok((a, dual_ehrhart_counts(&newton_polytope(&phi)?, EHRHART_KMAX)?)));
    report.checks.push(match &counts {
        Ok((a, b)) => Check::new(
            CHECK_NAMES[5],
            a == b,
            format!("k = 1..{EHRHART_KMAX}: {a:?} vs {b:?}"),
        ),
        Err(e) => Check::new(CHECK_NAMES[5], false, e.to_string()),
    });
    report.ehrhart = counts.ok();
    report.family = Some(family);
    report.passed = report.checks.iter().all(|c| c.informational || c.passed());
    report
}

/// `s(ker u ∩ sigma') = tau`, with both sides in `N'`.
fn tail_lemma(phi: &LaurentPolynomial, spec: &MutationSpec, tau: &Cone) -> Result<bool> {
    let n = spec.rank();
    let sigma_a = cone_over(&newton_polytope(&spec.to_adapted(phi)?)?, 0)?;
    let section = sigma_a.intersect_hyperplane(&LatticeVector::unit(n + 1, n))?;
    let drop_last = IntMatrix::from_row_vectors(
        &(0..n).map(|i| LatticeVector::unit(n + 1, i)).collect::<Vec<_>>(),
    );
    Ok(section.map(&drop_last)?.set_eq(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse, parse_with_rank};
    use crate::polyhedra::recheck_certificate;

    fn q(c: &[i64]) -> QVector {
        QVector::from_i64(c)
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        Cone::from_generators(rank, &gens.iter().map(|g| lv(g)).collect::<Vec<_>>()).unwrap()
    }

    fn divide_y(g: &str) -> MutationSpec {
        MutationSpec::divide_variable(2, 1, &parse_with_rank(g, 2).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_toy() {
        let tail = Cone::zero(1);
        let one = Polyhedron::point(q(&[1]));
        let zero = Polyhedron::point(q(&[0]));
        let s = sigma_infinity_from_decomposition(&tail, &one, &zero, &one).unwrap();
        assert!(s.set_eq(&cone(2, &[&[1, 1], &[1, -1]])));
    }

    #[test]
    fn weighted_plane_decomposition_in_x_deg_coordinates() {
        let tau = [lv(&[-1, 2]), lv(&[1, 2])];
        let d00 = Polyhedron::hull(&[q(&[-1, 1]), q(&[0, 1])], &tau).unwrap();
        let d01 = Polyhedron::hull(&[q(&[0, 0]), q(&[1, 0])], &tau).unwrap();
        let dinf = Polyhedron::hull(&[q(&[0, 1])], &tau).unwrap();
        let tail = Cone::from_generators(2, &tau).unwrap();
        let s = sigma_infinity_from_decomposition(&tail, &d00, &d01, &dinf).unwrap();
        // coordinates (x, deg, y)
        let expected = cone(3, &[&[-1, 1, 1], &[0, 1, 1], &[0, 1, -1], &[1, 1, -1]]);
        assert!(s.set_eq(&expected));
        assert_eq!(s.rays().len(), 4);
    }

    #[test]
    fn inadmissible_decomposition_is_rejected() {
        let tail = Cone::zero(1);
        let half = Polyhedron::point(QVector::from_fractions(&[(1, 2)]));
        let third = Polyhedron::point(QVector::from_fractions(&[(1, 3)]));
        assert!(matches!(
            sigma_infinity_from_decomposition(&tail, &half, &third, &half),
            Err(Error::Admissibility(_))
        ));
    }

    #[test]
    fn weighted_plane_family() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        let fam = build_family(&f, &divide_y("1 + x")).unwrap();
        assert!(fam.invariant_failures().is_empty());
        let rays: Vec<LatticeVector> = fam.sigma_inf.rays().iter().map(grading_last).collect();
        let mut expected = vec![lv(&[-1, 1, 1]), lv(&[0, 1, 1]), lv(&[0, -1, 1]), lv(&[1, -1, 1])];
        expected.sort();
        let mut rays = rays;
        rays.sort();
        assert_eq!(rays, expected);
        assert!(general_fiber_is_toric(&fam.delta_inf));
        // (deg, x) coordinates
        assert_eq!(fam.delta_inf.vertices(), &[q(&[1, 0])]);
        assert!(recheck_certificate(&fam.delta00, &fam.delta01, &fam.admissibility.0));
        assert!(recheck_certificate(&fam.delta01, &fam.delta_inf, &fam.admissibility.1));
    }

    #[test]
    fn trivial_decomposition_recovers_sigma() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        let fam = build_family(&f, &divide_y("1 + x")).unwrap();
        let origin = Polyhedron::hull(&[QVector::zero(2)], fam.tail.rays()).unwrap();
        let s = sigma_infinity_from_decomposition(&fam.tail, &fam.delta0, &origin, &fam.delta_inf).unwrap();
        let sigma_a = fam.sigma.map(&fam.splitting.inverse_unimodular().unwrap()).unwrap();
        assert!(s.set_eq(&sigma_a));
        assert!(fam.recovered_sigma().unwrap().set_eq(&sigma_a));
    }

    #[test]
    fn identity_mutation() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        let fam = build_family(&f, &divide_y("1")).unwrap();
        assert_eq!(fam.delta01.vertices(), &[QVector::zero(2)]);
        assert!(fam.sigma_inf.set_eq(&fam.sigma));
    }

    #[test]
    fn cosection_independence() {
        let f = parse("x^-1 + x^-1*y + y + y^-1 + x*y^-1").unwrap();
        let spec = divide_y("1 + x");
        let other = spec
            .rebased(IntMatrix::from_rows(&[vec![1, 3], vec![0, 1]]))
            .unwrap();
        let a = build_family(&f, &spec).unwrap();
        let b = build_family(&f, &other).unwrap();
        assert_ne!(a.delta0, b.delta0);
        let map = b
            .splitting
            .inverse_unimodular()
            .unwrap()
            .mul(&a.splitting)
            .unwrap();
        // fixes the e-coordinate
        assert_eq!(map.row(2), lv(&[0, 0, 1]));
        assert!(a.sigma_inf_adapted.map(&map).unwrap().set_eq(&b.sigma_inf_adapted));
        assert!(a.sigma_inf.set_eq(&b.sigma_inf));
    }

    #[test]
    fn verify_weighted_plane() {
        let f = parse("x^-1*y + 2*y + x*y + y^-1").unwrap();
        let report = verify_main_theorem(&f, &divide_y("1 + x"));
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.checks.len(), 6);
        assert!(report.checks.iter().all(Check::passed));
        let (a, b) = report.ehrhart.clone().unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0], 9);
        let json = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn verify_degree_seven() {
        let f = parse("x^-1 + x^-1*y + y + y^-1 + x*y^-1").unwrap();
        let report = verify_main_theorem(&f, &divide_y("1 + x"));
        assert!(report.passed, "{report:#?}");
        assert!(report.check("sigma_inf_equals_sigma_prime").unwrap().passed());
        assert!(!report.check("general_fiber_toric").unwrap().passed());
    }

    #[test]
    fn verify_reports_failed_hypotheses() {
        let f = parse("x + y").unwrap();
        let report = verify_main_theorem(&f, &divide_y("1 + x"));
        assert!(!report.passed);
        let h = report.check("hypotheses").unwrap();
        assert_eq!(h.status, CheckStatus::Failed);
        assert!(h.detail.contains("origin not in interior"));
        assert!(report.checks[1..].iter().all(|c| c.status == CheckStatus::Skipped));
        assert!(matches!(build_family(&f, &divide_y("1 + x")), Err(Error::Hypotheses(_))));
    }

    #[test]
    fn general_fiber_predicate() {
        let tau = [lv(&[-1, 2]), lv(&[1, 2])];
        assert!(general_fiber_is_toric(&Polyhedron::hull(&[q(&[0, 1])], &tau).unwrap()));
        let half = QVector::from_fractions(&[(1, 2), (0, 1)]);
        assert!(!general_fiber_is_toric(&Polyhedron::hull(&[half], &tau).unwrap()));
        let two = Polyhedron::hull(&[q(&[0, 0]), q(&[1, 0])], &tau).unwrap();
        assert!(!general_fiber_is_toric(&two));
    }
}
