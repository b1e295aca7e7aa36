//! Exhaustive and sampled scans over the space of Weierstrass curves of a
//! finite field: group axioms on the nonsingular points, the discriminant
//! smoothness criterion, and variable changes as group isomorphisms.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{VariableChange, WeierstrassCurve};
use crate::fields::{Field, FieldError};
use crate::points::{Point, PointError};

/// At most this many failures are kept verbatim in a report; the rest are
/// only counted.
pub const MAX_RECORDED_FAILURES: usize = 16;

/// Which curves of a field a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    All,
    /// `count` curve indices drawn uniformly (with replacement) from a
    /// ChaCha8 stream seeded with `seed`.
    Sample { count: u64, seed: u64 },
}

impl Selection {
    fn indices(&self, total: u64) -> Vec<u64> {
        match *self {
            Selection::All => (0..total).collect(),
            Selection::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| rng.gen_range(0..total)).collect()
            }
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Selection::All)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub curve: String,
    pub property: &'static str,
    pub detail: String,
}

/// Addition table of a curve's nonsingular points, indexed in enumeration
/// order (index 0 is `O`).
pub struct GroupTable {
    points: Vec<Point>,
    sum: Vec<u32>,
    neg: Vec<u32>,
}

impl GroupTable {
    /// Builds the table with `n^2` additions. Fails on the first addition
    /// that errors or leaves the point set.
    pub fn build(curve: &WeierstrassCurve) -> Result<Self, ScanFailure> {
        let fail = |property, detail: String| ScanFailure {
            curve: curve.to_string(),
            property,
            detail,
        };
        let points = curve.points().map_err(|e| fail("enumeration", e.to_string()))?;
        let index: HashMap<&Point, u32> = points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let n = points.len();
        let lookup = |p: Result<Point, PointError>, what: &dyn Fn() -> String| {
            let p = p.map_err(|e| fail("closure", format!("{}: {e}", what())))?;
            index
                .get(&p)
                .copied()
                .ok_or_else(|| fail("closure", format!("{} = {p} is not an enumerated point", what())))
        };
        let mut sum = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                sum[i * n + j] = lookup(curve.add(&points[i], &points[j]), &|| {
                    format!("{} + {}", points[i], points[j])
                })?;
            }
        }
        let neg = (0..n)
            .map(|i| lookup(curve.neg(&points[i]), &|| format!("-({})", points[i])))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupTable { points, sum, neg })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.sum[i * self.len() + j] as usize
    }

    pub fn neg(&self, i: usize) -> usize {
        self.neg[i] as usize
    }

    /// Checks identity, inverses, negation involution, commutativity and
    /// associativity over every pair and triple. Returns the number of
    /// triples examined and the first violation, if any.
    pub fn check_axioms(&self) -> (u64, Option<(&'static str, String)>) {
        let n = self.len();
        let p = |i: usize| &self.points[i];
        for i in 0..n {
            if self.add(0, i) != i || self.add(i, 0) != i {
                return (0, Some(("identity", format!("O + {0} or {0} + O", p(i)))));
            }
            if self.add(self.neg(i), i) != 0 || self.add(i, self.neg(i)) != 0 {
                return (0, Some(("inverse", format!("-({0}) + {0} != O", p(i)))));
            }
            if self.neg(self.neg(i)) != i {
                return (0, Some(("negation involution", format!("-(-({})) differs", p(i)))));
            }
            for j in 0..i {
                if self.add(i, j) != self.add(j, i) {
                    return (0, Some(("commutativity", format!("{} + {}", p(i), p(j)))));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.add(i, j);
                for k in 0..n {
                    if self.add(ij, k) != self.add(i, self.add(j, k)) {
                        let detail = format!("({} + {}) + {}", p(i), p(j), p(k));
                        return ((n * n * n) as u64, Some(("associativity", detail)));
                    }
                }
            }
        }
        ((n * n * n) as u64, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupLawReport {
    pub field: String,
    pub exhaustive: bool,
    pub curves: u64,
    pub singular_curves: u64,
    pub points: u64,
    pub triples: u64,
    pub hasse_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<ScanFailure>,
}

impl GroupLawReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn empty(field: Field, exhaustive: bool) -> Self {
        GroupLawReport {
            field: field.to_string(),
            exhaustive,
            curves: 0,
            singular_curves: 0,
            points: 0,
            triples: 0,
            hasse_checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.curves += other.curves;
        self.singular_curves += other.singular_curves;
        self.points += other.points;
        self.triples += other.triples;
        self.hasse_checked += other.hasse_checked;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Verifies the group axioms on the nonsingular points of one curve, and
/// the Hasse bound when the curve is elliptic.
pub fn check_curve_group_law(curve: &WeierstrassCurve) -> GroupLawReport {
    let field = curve.field();
    let mut report = GroupLawReport::empty(field, true);
    report.curves = 1;
    let elliptic = curve.is_elliptic();
    report.singular_curves = u64::from(!elliptic);
    let mut fail = |property: &'static str, detail: String| {
        report_failure(&mut report.failure_count, &mut report.failures, curve, property, detail)
    };
    match GroupTable::build(curve) {
        Err(f) => fail(f.property, f.detail),
        Ok(table) => {
            let (triples, violation) = table.check_axioms();
            if let Some((property, detail)) = violation {
                fail(property, detail);
            }
            let n = table.len() as i64;
            if elliptic {
                let q = field.small_order().expect("finite field") as i64;
                let t = n - (q + 1);
                if t * t > 4 * q {
                    fail("hasse bound", format!("{n} points over a field of order {q}"));
                }
                report.hasse_checked = 1;
            }
            report.points = n as u64;
            report.triples = triples;
        }
    }
    report
}

fn report_failure(
    count: &mut u64,
    failures: &mut Vec<ScanFailure>,
    curve: &WeierstrassCurve,
    property: &'static str,
    detail: String,
) {
    *count += 1;
    if failures.len() < MAX_RECORDED_FAILURES {
        failures.push(ScanFailure {
            curve: curve.to_string(),
            property,
            detail,
        });
    }
}

/// Group-law scan over the selected curves of a finite field, in parallel.
pub fn group_law_scan(field: Field, selection: Selection) -> Result<GroupLawReport, FieldError> {
    let total = WeierstrassCurve::count_over(field)?;
    let indices = selection.indices(total);
    let report = indices
        .par_iter()
        .map(|&i| {
            let curve = WeierstrassCurve::from_index(field, i).expect("index below curve count");
            check_curve_group_law(&curve)
        })
        .reduce(|| GroupLawReport::empty(field, true), GroupLawReport::merge);
    Ok(GroupLawReport {
        field: field.to_string(),
        exhaustive: selection.is_exhaustive(),
        ..report
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub field: String,
    pub exhaustive: bool,
    pub curves: u64,
    pub elliptic_curves: u64,
    pub on_curve_points: u64,
    pub exception_count: u64,
    pub exceptions: Vec<ScanFailure>,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.exception_count == 0
    }

    fn empty(field: Field, exhaustive: bool) -> Self {
        SmoothnessReport {
            field: field.to_string(),
            exhaustive,
            curves: 0,
            elliptic_curves: 0,
            on_curve_points: 0,
            exception_count: 0,
            exceptions: Vec::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.curves += other.curves;
        self.elliptic_curves += other.elliptic_curves;
        self.on_curve_points += other.on_curve_points;
        self.exception_count += other.exception_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.exceptions.len());
        self.exceptions.extend(other.exceptions.into_iter().take(room));
        self
    }
}

/// Checks that `Δ != 0` forces every solution of the curve equation to be
/// nonsingular.
pub fn check_curve_smoothness(curve: &WeierstrassCurve) -> Result<SmoothnessReport, FieldError> {
    let field = curve.field();
    let mut report = SmoothnessReport::empty(field, true);
    report.curves = 1;
    if !curve.is_elliptic() {
        return Ok(report);
    }
    report.elliptic_curves = 1;
    let els: Vec<_> = field.elements()?.collect();
    for x in &els {
        for y in &els {
            if curve.equation(x, y) {
                report.on_curve_points += 1;
                if !curve.nonsingular(x, y) {
                    report_failure(
                        &mut report.exception_count,
                        &mut report.exceptions,
                        curve,
                        "smoothness",
                        format!("singular point ({x}, {y}) with nonzero discriminant"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Smoothness scan over the selected curves of a finite field, in parallel.
pub fn smoothness_scan(field: Field, selection: Selection) -> Result<SmoothnessReport, FieldError> {
    let total = WeierstrassCurve::count_over(field)?;
    let indices = selection.indices(total);
    let report = indices
        .par_iter()
        .map(|&i| {
            let curve = WeierstrassCurve::from_index(field, i).expect("index below curve count");
            check_curve_smoothness(&curve)
        })
        .try_reduce(|| SmoothnessReport::empty(field, true), |a, b| Ok(a.merge(b)))?;
    Ok(SmoothnessReport {
        field: field.to_string(),
        exhaustive: selection.is_exhaustive(),
        ..report
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub field: String,
    pub exhaustive: bool,
    pub curves: u64,
    pub changes: u64,
    pub pairs_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<ScanFailure>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn empty(field: Field, exhaustive: bool) -> Self {
        IsomorphismReport {
            field: field.to_string(),
            exhaustive,
            curves: 0,
            changes: 0,
            pairs_checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.curves += other.curves;
        self.changes += other.changes;
        self.pairs_checked += other.pairs_checked;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Checks that `map_point` for each change is a bijection from the points
/// of `curve` onto the points of the transformed curve and respects
/// addition.
pub fn check_curve_isomorphisms(curve: &WeierstrassCurve, changes: &[VariableChange]) -> IsomorphismReport {
    let mut report = IsomorphismReport::empty(curve.field(), true);
    report.curves = 1;
    let mut fail = |property, detail: String| {
        report_failure(&mut report.failure_count, &mut report.failures, curve, property, detail)
    };
    let table = match GroupTable::build(curve) {
        Ok(t) => t,
        Err(f) => {
            fail(f.property, f.detail);
            return report;
        }
    };
    let n = table.len();
    for c in changes {
        report.changes += 1;
        let target = curve.variable_change(c);
        let images: Result<Vec<Point>, _> = table.points().iter().map(|p| curve.map_point_to(&target, c, p)).collect();
        let images = match images {
            Ok(v) => v,
            Err(e) => {
                fail("map_point", format!("{c:?}: {e}"));
                continue;
            }
        };
        let expected: HashSet<Point> = match target.points() {
            Ok(pts) => pts.into_iter().collect(),
            Err(e) => {
                fail("map_point", e.to_string());
                continue;
            }
        };
        let got: HashSet<&Point> = images.iter().collect();
        if got.len() != n || expected.len() != n || !images.iter().all(|p| expected.contains(p)) {
            fail("bijection", format!("{c:?}: {n} points map onto {} of {}", got.len(), expected.len()));
            continue;
        }
        'pairs: for i in 0..n {
            for j in 0..=i {
                report.pairs_checked += 1;
                match target.add(&images[i], &images[j]) {
                    Ok(s) if s == images[table.add(i, j)] => {}
                    Ok(s) => {
                        let detail = format!("{c:?}: map({} + {}) != {s}", table.points()[i], table.points()[j]);
                        fail("homomorphism", detail);
                        break 'pairs;
                    }
                    Err(e) => {
                        fail("homomorphism", format!("{c:?}: {e}"));
                        break 'pairs;
                    }
                }
            }
        }
    }
    report
}

/// Isomorphism scan over the selected curves of a finite field, each checked
/// against every change in `changes`.
pub fn isomorphism_scan(
    field: Field,
    selection: Selection,
    changes: &[VariableChange],
) -> Result<IsomorphismReport, FieldError> {
    let total = WeierstrassCurve::count_over(field)?;
    let report = selection
        .indices(total)
        .par_iter()
        .map(|&i| {
            let curve = WeierstrassCurve::from_index(field, i).expect("index below curve count");
            check_curve_isomorphisms(&curve, changes)
        })
        .reduce(|| IsomorphismReport::empty(field, true), IsomorphismReport::merge);
    Ok(IsomorphismReport {
        field: field.to_string(),
        exhaustive: selection.is_exhaustive(),
        ..report
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_of_gf5_example() {
        let w = WeierstrassCurve::from_ints(Field::prime(5), [0, 0, 0, 1, 1]);
        let t = GroupTable::build(&w).unwrap();
        assert_eq!(t.len(), 9);
        assert_eq!(t.check_axioms(), (729, None));
        for i in 0..t.len() {
            for j in 0..t.len() {
                assert_eq!(t.points()[t.add(i, j)], w.add(&t.points()[i], &t.points()[j]).unwrap());
            }
        }
    }

    #[test]
    fn broken_table_is_detected() {
        let w = WeierstrassCurve::from_ints(Field::prime(5), [0, 0, 0, 1, 1]);
        let mut t = GroupTable::build(&w).unwrap();
        let n = t.len();
        // swap two entries of one row: breaks commutativity
        t.sum.swap(n + 2, n + 3);
        assert!(t.check_axioms().1.is_some());
    }

    #[test]
    fn group_law_gf2_and_gf3() {
        for p in [2, 3] {
            let r = group_law_scan(Field::prime(p), Selection::All).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.curves, p.pow(5));
            assert!(r.singular_curves > 0);
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn singular_curves_are_included() {
        // nodal y^2 + xy = x^3 over GF(3): nonsingular points still form a group
        let w = WeierstrassCurve::from_ints(Field::prime(3), [1, 0, 0, 0, 0]);
        assert!(!w.is_elliptic());
        let r = check_curve_group_law(&w);
        assert!(r.passed());
        assert_eq!(r.singular_curves, 1);
        assert!(r.points >= 1);
    }

    #[test]
    fn sampled_selection_is_deterministic() {
        let s = Selection::Sample { count: 50, seed: 9 };
        assert_eq!(s.indices(1 << 20), s.indices(1 << 20));
        let f = Field::extension(2, 4);
        let a = group_law_scan(f, Selection::Sample { count: 8, seed: 1 }).unwrap();
        let b = group_law_scan(f, Selection::Sample { count: 8, seed: 1 }).unwrap();
        assert_eq!(a, b);
        assert!(a.passed() && !a.exhaustive);
    }

    #[test]
    fn isomorphisms_gf2_all_changes() {
        let f = Field::prime(2);
        let changes = VariableChange::all_over(f).unwrap();
        let r = isomorphism_scan(f, Selection::All, &changes).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.changes, 32 * changes.len() as u64);
    }

    #[test]
    fn smoothness_small_fields() {
        for f in [Field::prime(2), Field::prime(3), Field::extension(2, 2)] {
            let r = smoothness_scan(f, Selection::All).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.elliptic_curves > 0 && r.elliptic_curves < r.curves);
        }
    }
}
