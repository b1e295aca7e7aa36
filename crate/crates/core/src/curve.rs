//! Weierstrass curves `Y^2 + (a1 X + a3) Y = X^3 + a2 X^2 + a4 X + a6` over
//! an arbitrary field, with their standard invariants, changes of variables,
//! and nonsingularity test.

use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::fields::{Field, FieldElement, FieldError};
use crate::poly::{BiPoly, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve coefficients belong to different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("variable change requires u != 0")]
    ZeroScale,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Splits a literal list on commas outside square brackets, so extension
/// elements can be written `[c0,c1]` inside a list.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

#[derive(Clone)]
struct CurvePolys {
    w: BiPoly,
    w_x: BiPoly,
    w_y: BiPoly,
    neg: BiPoly,
}

/// The five coefficients `a1, a2, a3, a4, a6` over one field.
#[derive(Clone)]
pub struct WeierstrassCurve {
    field: Field,
    a: [FieldElement; 5],
    polys: CurvePolys,
}

/// `b2, b4, b6, b8` and the discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: FieldElement,
    pub b4: FieldElement,
    pub b6: FieldElement,
    pub b8: FieldElement,
    pub delta: FieldElement,
}

/// `(X, Y) -> (u^2 X + r, u^3 Y + u^2 s X + t)` with `u != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableChange {
    u: FieldElement,
    r: FieldElement,
    s: FieldElement,
    t: FieldElement,
}

impl VariableChange {
    pub fn new(
        u: FieldElement,
        r: FieldElement,
        s: FieldElement,
        t: FieldElement,
    ) -> Result<Self, CurveError> {
        let field = u.field();
        for e in [&r, &s, &t] {
            field.check(e)?;
        }
        if u.is_zero() {
            return Err(CurveError::ZeroScale);
        }
        Ok(VariableChange { u, r, s, t })
    }

    pub fn identity(field: Field) -> Self {
        VariableChange {
            u: field.one(),
            r: field.zero(),
            s: field.zero(),
            t: field.zero(),
        }
    }

    /// Translation taking `(x, y)` to the origin.
    pub fn translation(x: &FieldElement, y: &FieldElement) -> Self {
        let field = x.field();
        VariableChange {
            u: field.one(),
            r: x.clone(),
            s: field.zero(),
            t: y.clone(),
        }
    }

    pub fn u(&self) -> &FieldElement {
        &self.u
    }
    pub fn r(&self) -> &FieldElement {
        &self.r
    }
    pub fn s(&self) -> &FieldElement {
        &self.s
    }
    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    pub fn field(&self) -> Field {
        self.u.field()
    }

    /// Every change over a finite field, `u` ranging over units.
    pub fn all_over(field: Field) -> Result<Vec<VariableChange>, FieldError> {
        let els: Vec<FieldElement> = field.elements()?.collect();
        let mut out = Vec::new();
        for u in els.iter().filter(|u| !u.is_zero()) {
            for r in &els {
                for s in &els {
                    for t in &els {
                        out.push(VariableChange {
                            u: u.clone(),
                            r: r.clone(),
                            s: s.clone(),
                            t: t.clone(),
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn random<R: rand::Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        VariableChange {
            u: field.random_nonzero(rng),
            r: field.random(rng),
            s: field.random(rng),
            t: field.random(rng),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(
        a1: FieldElement,
        a2: FieldElement,
        a3: FieldElement,
        a4: FieldElement,
        a6: FieldElement,
    ) -> Result<Self, CurveError> {
        let field = a1.field();
        for e in [&a2, &a3, &a4, &a6] {
            if e.field() != field {
                return Err(CurveError::FieldMismatch(field.to_string(), e.field().to_string()));
            }
        }
        Ok(Self::build(field, [a1, a2, a3, a4, a6]))
    }

    fn build(field: Field, a: [FieldElement; 5]) -> Self {
        let polys = CurvePolys::of(field, &a);
        WeierstrassCurve { field, a, polys }
    }

    /// Coefficients given as integers mapped into `field`.
    pub fn from_ints(field: Field, a: [i64; 5]) -> Self {
        Self::build(field, a.map(|c| field.from_i64(c)))
    }

    /// Parses `"a1,a2,a3,a4,a6"` in element literal syntax; extension
    /// elements are bracketed, e.g. `"[0,1],0,1,0,0"`.
    pub fn parse(field: Field, s: &str) -> Result<Self, CurveError> {
        let parts = split_top_level(s);
        if parts.len() != 5 {
            return Err(FieldError::Parse {
                what: "curve coefficients",
                input: s.to_string(),
            }
            .into());
        }
        let mut a = Vec::with_capacity(5);
        for part in parts {
            a.push(field.parse_element(part)?);
        }
        let a: [FieldElement; 5] = a.try_into().expect("five coefficients");
        Ok(Self::build(field, a))
    }

    /// Number of curves over a finite field, `q^5`.
    pub fn count_over(field: Field) -> Result<u64, FieldError> {
        let q = field.small_order()?;
        q.checked_pow(5).ok_or(FieldError::TooLargeToEnumerate)
    }

    /// Curve number `index` in `0..q^5`, `a1` varying fastest.
    pub fn from_index(field: Field, index: u64) -> Result<Self, FieldError> {
        let q = field.small_order()?;
        let mut rest = index;
        let mut a = Vec::with_capacity(5);
        for _ in 0..5 {
            a.push(field.element_at(rest % q)?);
            rest /= q;
        }
        let a: [FieldElement; 5] = a.try_into().expect("five coefficients");
        Ok(Self::build(field, a))
    }

    pub fn random<R: rand::Rng + ?Sized>(field: Field, rng: &mut R) -> Self {
        Self::build(field, std::array::from_fn(|_| field.random(rng)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn a1(&self) -> &FieldElement {
        &self.a[0]
    }
    pub fn a2(&self) -> &FieldElement {
        &self.a[1]
    }
    pub fn a3(&self) -> &FieldElement {
        &self.a[2]
    }
    pub fn a4(&self) -> &FieldElement {
        &self.a[3]
    }
    pub fn a6(&self) -> &FieldElement {
        &self.a[4]
    }

    pub fn coefficients(&self) -> &[FieldElement; 5] {
        &self.a
    }

    pub fn invariants(&self) -> CurveInvariants {
        let c = |n: i64| self.field.from_i64(n);
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + c(4) * a2;
        let b4 = c(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + c(4) * a6;
        let b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let delta = -(&b2 * &b2 * &b8) - c(8) * b4.pow(3) - c(27) * &b6 * &b6
            + c(9) * &b2 * &b4 * &b6;
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            delta,
        }
    }

    pub fn discriminant(&self) -> FieldElement {
        self.invariants().delta
    }

    /// An elliptic curve is a Weierstrass curve with `Δ != 0`.
    pub fn is_elliptic(&self) -> bool {
        !self.discriminant().is_zero()
    }

    /// The curve obtained by the change of variables `c`.
    pub fn variable_change(&self, c: &VariableChange) -> Self {
        assert_eq!(c.field(), self.field, "field mismatch");
        let k = |n: i64| self.field.from_i64(n);
        let [a1, a2, a3, a4, a6] = &self.a;
        let VariableChange { u, r, s, t } = c;
        let ui = u.inv().expect("u is a unit");
        let b1 = &ui * (a1 + k(2) * s);
        let b2 = ui.pow(2) * (a2 - s * a1 + k(3) * r - s * s);
        let b3 = ui.pow(3) * (a3 + r * a1 + k(2) * t);
        let b4 = ui.pow(4) * (a4 - s * a3 + k(2) * r * a2 - (t + r * s) * a1 + k(3) * r * r - k(2) * s * t);
        let b6 = ui.pow(6) * (a6 + r * a4 + r * r * a2 + r.pow(3) - t * a3 - t * t - r * t * a1);
        Self::build(self.field, [b1, b2, b3, b4, b6])
    }

    /// `W(X, Y) = Y^2 + (a1 X + a3) Y - (X^3 + a2 X^2 + a4 X + a6)`, monic of
    /// `Y`-degree 2.
    pub fn polynomial(&self) -> &BiPoly {
        &self.polys.w
    }

    /// `W_X = a1 Y - (3 X^2 + 2 a2 X + a4)`.
    pub fn polynomial_x(&self) -> &BiPoly {
        &self.polys.w_x
    }

    /// `W_Y = 2 Y + a1 X + a3`.
    pub fn polynomial_y(&self) -> &BiPoly {
        &self.polys.w_y
    }

    /// `σ_X(Y) = -Y - (a1 X + a3)`.
    pub fn neg_polynomial(&self) -> &BiPoly {
        &self.polys.neg
    }

    /// `X^3 + a2 X^2 + a4 X + a6`.
    pub fn cubic(&self) -> UniPoly {
        let [_, a2, _, a4, a6] = &self.a;
        UniPoly::new(
            self.field,
            vec![a6.clone(), a4.clone(), a2.clone(), self.field.one()],
        )
        .expect("same field")
    }

    /// `a1 X + a3`.
    pub fn linear(&self) -> UniPoly {
        UniPoly::new(self.field, vec![self.a[2].clone(), self.a[0].clone()]).expect("same field")
    }

    /// `W(x, y) = 0`.
    pub fn equation(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.polys.w.eval2(x, y).expect("point in base field").is_zero()
    }

    /// On the curve with `W_X(x, y) != 0` or `W_Y(x, y) != 0`.
    pub fn nonsingular(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.equation(x, y)
            && (!self.polys.w_x.eval2(x, y).expect("same field").is_zero()
                || !self.polys.w_y.eval2(x, y).expect("same field").is_zero())
    }

    /// `W(X, λ(X))` for the line through `(x, y)` with slope `l`.
    pub fn add_polynomial(&self, x: &FieldElement, y: &FieldElement, l: &FieldElement) -> UniPoly {
        self.polys
            .w
            .eval_y_poly(&line_polynomial(x, y, l))
            .expect("same field")
    }

    /// Change eliminating `a1` and `a3`; requires characteristic != 2.
    pub fn complete_square(&self) -> Option<VariableChange> {
        if self.field.characteristic() == 2 {
            return None;
        }
        let half = self.field.from_i64(2).inv().ok()?;
        let f = self.field;
        Some(VariableChange {
            u: f.one(),
            r: f.zero(),
            s: -(self.a1() * &half),
            t: -(self.a3() * &half),
        })
    }

    /// Change eliminating `a2` from a curve with `a1 = a3 = 0`; requires
    /// characteristic not 2 or 3.
    pub fn complete_cube(&self) -> Option<VariableChange> {
        if matches!(self.field.characteristic(), 2 | 3) {
            return None;
        }
        let f = self.field;
        let twelfth = f.from_i64(12).inv().ok()?;
        Some(VariableChange {
            u: f.one(),
            r: -(self.invariants().b2 * twelfth),
            s: f.zero(),
            t: f.zero(),
        })
    }
}

/// `λ(X) = L (X - x) + y`.
pub fn line_polynomial(x: &FieldElement, y: &FieldElement, l: &FieldElement) -> UniPoly {
    &UniPoly::x_minus(x).scale(l) + &UniPoly::constant(y.clone())
}

impl CurvePolys {
    fn of(field: Field, a: &[FieldElement; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        let lin = UniPoly::new(field, vec![a3.clone(), a1.clone()]).expect("same field");
        let cubic = UniPoly::new(field, vec![a6.clone(), a4.clone(), a2.clone(), field.one()])
            .expect("same field");
        let y = BiPoly::y(field);
        let w = &(&(&y * &y) + &(&BiPoly::constant(lin.clone()) * &y)) - &BiPoly::constant(cubic);
        let dx = UniPoly::new(
            field,
            vec![a4.clone(), field.from_i64(2) * a2, field.from_i64(3)],
        )
        .expect("same field");
        let w_x = &(&BiPoly::scalar(a1.clone()) * &y) - &BiPoly::constant(dx);
        let w_y = &(&BiPoly::scalar(field.from_i64(2)) * &y) + &BiPoly::constant(lin.clone());
        let neg = &(-&y) - &BiPoly::constant(lin);
        CurvePolys { w, w_x, w_y, neg }
    }
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Eq for WeierstrassCurve {}

impl Hash for WeierstrassCurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
    }
}

impl fmt::Display for WeierstrassCurve {
    /// Renders the coefficient list in curve literal syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeierstrassCurve({self} over {})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Degree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_curves(field: Field) -> impl Iterator<Item = WeierstrassCurve> {
        let n = WeierstrassCurve::count_over(field).unwrap();
        (0..n).map(move |i| WeierstrassCurve::from_index(field, i).unwrap())
    }

    /// Direct evaluation of the Δ formula from the b-invariants, kept apart
    /// from `invariants()`.
    fn delta_oracle(a: [i64; 5]) -> i64 {
        let [a1, a2, a3, a4, a6] = a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    #[test]
    fn invariants_examples() {
        let q = Field::rational();
        let w = WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]);
        let inv = w.invariants();
        assert_eq!(inv.b2, q.from_i64(0));
        assert_eq!(inv.b4, q.from_i64(-2));
        assert_eq!(inv.b6, q.from_i64(1));
        assert_eq!(inv.b8, q.from_i64(-1));
        assert_eq!(inv.delta, q.from_i64(37));
        assert_eq!(delta_oracle([0, 0, 1, -1, 0]), 37);

        let zero = WeierstrassCurve::from_ints(q, [0; 5]).invariants();
        for b in [zero.b2, zero.b4, zero.b6, zero.b8, zero.delta] {
            assert!(b.is_zero());
        }

        // short form: Δ = -16 (4 a4^3 + 27 a6^2)
        let w = WeierstrassCurve::from_ints(q, [0, 0, 0, -1, 0]);
        assert_eq!(w.discriminant(), q.from_i64(-16 * -4));
        assert_eq!(w.discriminant(), q.from_i64(64));
    }

    #[test]
    fn delta_matches_integer_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = Field::rational();
        let f101 = Field::prime(101);
        for _ in 0..500 {
            let a: [i64; 5] = std::array::from_fn(|_| rand::Rng::gen_range(&mut rng, -9..=9));
            let d = delta_oracle(a);
            assert_eq!(WeierstrassCurve::from_ints(q, a).discriminant(), q.from_i64(d));
            assert_eq!(WeierstrassCurve::from_ints(f101, a).discriminant(), f101.from_i64(d));
        }
    }

    #[test]
    fn is_elliptic_examples() {
        assert!(WeierstrassCurve::from_ints(Field::rational(), [0, 0, 1, -1, 0]).is_elliptic());
        assert!(!WeierstrassCurve::from_ints(Field::rational(), [0; 5]).is_elliptic());
        let w = WeierstrassCurve::from_ints(Field::prime(2), [0, 0, 1, 0, 0]);
        assert_eq!(w.discriminant(), Field::prime(2).one());
        assert!(w.is_elliptic());
    }

    #[test]
    fn variable_change_examples() {
        let q = Field::rational();
        let w = WeierstrassCurve::from_ints(q, [1, 2, 3, 4, 5]);
        assert_eq!(w.variable_change(&VariableChange::identity(q)), w);

        let w = WeierstrassCurve::from_ints(q, [0, 0, 0, 3, 7]);
        let c = VariableChange::new(q.from_i64(2), q.zero(), q.zero(), q.zero()).unwrap();
        let scaled = w.variable_change(&c);
        let expect = WeierstrassCurve::new(
            q.zero(),
            q.zero(),
            q.zero(),
            q.from_ratio(3, 16).unwrap(),
            q.from_ratio(7, 64).unwrap(),
        )
        .unwrap();
        assert_eq!(scaled, expect);

        let f5 = Field::prime(5);
        let w = WeierstrassCurve::from_ints(f5, [1, 0, 1, 0, 0]);
        let c = VariableChange::new(f5.one(), f5.zero(), f5.from_i64(2), f5.from_i64(2)).unwrap();
        let v = w.variable_change(&c);
        assert!(v.a1().is_zero() && v.a3().is_zero());
        assert_eq!(w.complete_square(), Some(c));

        assert_eq!(
            VariableChange::new(f5.zero(), f5.zero(), f5.zero(), f5.zero()),
            Err(CurveError::ZeroScale)
        );
    }

    #[test]
    fn polynomial_shapes() {
        let q = Field::rational();
        let w = WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]);
        assert_eq!(w.polynomial().degree_y(), Degree::Finite(2));
        assert!(w.polynomial().is_monic());
        let expected = BiPoly::new(q, vec![UniPoly::from_ints(q, &[1]), UniPoly::from_ints(q, &[2])]).unwrap();
        assert_eq!(*w.polynomial_y(), expected);
    }

    #[test]
    fn partials_are_formal_derivatives() {
        for field in [Field::prime(2), Field::prime(3)] {
            for w in all_curves(field) {
                assert_eq!(w.polynomial().derivative_y(), *w.polynomial_y());
                assert_eq!(w.polynomial().derivative_x(), *w.polynomial_x());
            }
        }
    }

    #[test]
    fn equation_examples() {
        let f2 = Field::prime(2);
        let w = WeierstrassCurve::from_ints(f2, [0, 0, 1, 0, 0]);
        assert!(w.equation(&f2.zero(), &f2.zero()));
        let q = Field::rational();
        let w = WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]);
        assert!(w.equation(&q.one(), &q.zero()));
        assert!(!w.equation(&q.from_i64(2), &q.one()));
    }

    #[test]
    fn nonsingular_examples() {
        let f2 = Field::prime(2);
        let w = WeierstrassCurve::from_ints(f2, [0, 0, 1, 0, 0]);
        assert!(w.nonsingular(&f2.zero(), &f2.zero()));
        let q = Field::rational();
        let w = WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]);
        assert!(!w.nonsingular(&q.from_i64(2), &q.one()));
    }

    #[test]
    fn nonsingular_zero_criterion() {
        for q in [2, 3, 4, 5] {
            let field = Field::with_order(q).unwrap();
            let (z, zero) = (field.zero(), field.zero());
            for w in all_curves(field) {
                let expected = w.a6().is_zero() && (!w.a3().is_zero() || !w.a4().is_zero());
                assert_eq!(w.nonsingular(&z, &zero), expected, "{w:?}");
                if w.a6().is_zero() && w.a3().is_zero() && w.a4().is_zero() {
                    assert!(!w.is_elliptic());
                }
            }
        }
    }

    #[test]
    fn line_and_addition_polynomial_examples() {
        let q = Field::rational();
        let l = q.from_i64(5);
        assert_eq!(line_polynomial(&q.zero(), &q.zero(), &l), UniPoly::monomial(l.clone(), 1));
        let (x, y) = (q.from_i64(3), q.from_i64(-4));
        assert_eq!(line_polynomial(&x, &y, &l).eval(&x).unwrap(), y);
        let w = WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]);
        assert_eq!(
            w.add_polynomial(&q.zero(), &q.zero(), &q.zero()),
            UniPoly::from_ints(q, &[0, 1, 0, -1])
        );
    }

    #[test]
    fn b8_relation_holds() {
        let check = |w: &WeierstrassCurve| {
            let i = w.invariants();
            assert_eq!(w.field().from_i64(4) * &i.b8, &i.b2 * &i.b6 - &i.b4 * &i.b4);
        };
        for field in [Field::prime(2), Field::prime(3)] {
            all_curves(field).for_each(|w| check(&w));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            check(&WeierstrassCurve::random(Field::prime(101), &mut rng));
        }
    }

    fn check_covariance(w: &WeierstrassCurve, c: &VariableChange) {
        let v = w.variable_change(c);
        let ui = c.u().inv().unwrap();
        assert_eq!(v.discriminant(), ui.pow(12) * w.discriminant(), "{w:?} {c:?}");
        let i = v.invariants();
        assert_eq!(v.field().from_i64(4) * &i.b8, &i.b2 * &i.b6 - &i.b4 * &i.b4);
    }

    #[test]
    fn discriminant_scaling_exhaustive_small() {
        for field in [Field::prime(2), Field::prime(3)] {
            let changes = VariableChange::all_over(field).unwrap();
            for w in all_curves(field) {
                for c in &changes {
                    check_covariance(&w, c);
                }
            }
        }
    }

    #[test]
    fn discriminant_scaling_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for field in [Field::prime(101), Field::extension(2, 4), Field::rational()] {
            for _ in 0..1000 {
                let w = WeierstrassCurve::random(field, &mut rng);
                check_covariance(&w, &VariableChange::random(field, &mut rng));
            }
        }
    }

    #[test]
    fn translation_reduces_to_origin() {
        for q in [2, 3, 4] {
            let field = Field::with_order(q).unwrap();
            let els: Vec<_> = field.elements().unwrap().collect();
            for w in all_curves(field) {
                for x in &els {
                    for y in &els {
                        let moved = w.variable_change(&VariableChange::translation(x, y));
                        assert_eq!(
                            w.nonsingular(x, y),
                            moved.nonsingular(&field.zero(), &field.zero())
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn short_form_in_large_characteristic() {
        let f = Field::prime(101);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = WeierstrassCurve::random(f, &mut rng);
            let sq = w.variable_change(&w.complete_square().unwrap());
            let short = sq.variable_change(&sq.complete_cube().unwrap());
            assert!(short.a1().is_zero() && short.a2().is_zero() && short.a3().is_zero());
            assert_eq!(short.discriminant(), w.discriminant());
        }
        assert!(WeierstrassCurve::from_ints(Field::prime(2), [1; 5]).complete_square().is_none());
        assert!(WeierstrassCurve::from_ints(Field::prime(3), [1; 5]).complete_cube().is_none());
    }

    #[test]
    fn parse_curve_literals() {
        let f = Field::extension(2, 2);
        let w = WeierstrassCurve::parse(f, "[0,1],0,1,0,[1,1]").unwrap();
        assert_eq!(w.a1(), &f.generator());
        assert_eq!(WeierstrassCurve::parse(f, &w.to_string()).unwrap(), w);
        assert!(WeierstrassCurve::parse(f, "1,2,3").is_err());
        let q = Field::rational();
        let w = WeierstrassCurve::parse(q, "0,0,1,-1,0").unwrap();
        assert_eq!(w, WeierstrassCurve::from_ints(q, [0, 0, 1, -1, 0]));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Field::prime(5).one();
        let b = Field::prime(7).one();
        assert!(matches!(
            WeierstrassCurve::new(a.clone(), a.clone(), b, a.clone(), a),
            Err(CurveError::FieldMismatch(..))
        ));
    }
}
