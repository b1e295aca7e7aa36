//! Certification of the polynomial identities behind the group law and the
//! norm argument.
//!
//! Unconditional identities are expanded symbolically over the integers, with
//! generic curve coefficients, and must leave a literally zero residual.
//! Identities that only hold on the curve are checked as exact polynomial
//! equalities in `X` over a finite field, at seeded random on-curve data.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curve::{line_polynomial, WeierstrassCurve};
use crate::fields::{Field, FieldElement, FieldError};
use crate::points::PointError;
use crate::poly::UniPoly;

/// Seed used by the CLI and the acceptance suite unless overridden.
pub const DEFAULT_SEED: u64 = 1;

/// Redraws of `x` (and of the curve) before sampling gives up.
pub const SAMPLING_RETRIES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("no on-curve points found after {0} attempts")]
    SamplingExhausted(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Point(#[from] PointError),
}

/// The variables of the symbolic engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A1,
    A2,
    A3,
    A4,
    A6,
    SmallX,
    SmallY,
    X1,
    Y1,
    X2,
    Y2,
    L,
    X,
    Y,
}

pub const NVARS: usize = 14;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::A1,
        Var::A2,
        Var::A3,
        Var::A4,
        Var::A6,
        Var::SmallX,
        Var::SmallY,
        Var::X1,
        Var::Y1,
        Var::X2,
        Var::Y2,
        Var::L,
        Var::X,
        Var::Y,
    ];

    pub fn name(self) -> &'static str {
        ["a1", "a2", "a3", "a4", "a6", "x", "y", "x1", "y1", "x2", "y2", "l", "X", "Y"][self as usize]
    }
}

type Exponents = [u16; NVARS];

/// Sparse multivariate polynomial with integer coefficients. No zero
/// coefficient is ever stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZMultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl ZMultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, &[])
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, &[(v, 1)])
    }

    /// `c * prod v^e`.
    pub fn term(c: impl Into<BigInt>, powers: &[(Var, u16)]) -> Self {
        let c = c.into();
        let mut out = Self::zero();
        if !c.is_zero() {
            let mut e = [0; NVARS];
            for &(v, k) in powers {
                e[v as usize] += k;
            }
            out.terms.insert(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16; NVARS], &BigInt)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).max()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = Self::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * &c);
        }
        out
    }

    /// Exact integer value at `values`, indexed by [`Var`].
    pub fn specialize(&self, values: &[BigInt; NVARS]) -> BigInt {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Value in `field` at `values`, indexed by [`Var`].
    pub fn eval(&self, field: Field, values: &[FieldElement; NVARS]) -> FieldElement {
        let mut total = field.zero();
        for (e, c) in &self.terms {
            let mut t = field.from_bigint(c);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t = t * v.pow(k as u64);
                }
            }
            total = total + t;
        }
        total
    }
}

impl Add<&ZMultiPoly> for &ZMultiPoly {
    type Output = ZMultiPoly;
    fn add(self, rhs: &ZMultiPoly) -> ZMultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&ZMultiPoly> for &ZMultiPoly {
    type Output = ZMultiPoly;
    fn sub(self, rhs: &ZMultiPoly) -> ZMultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&ZMultiPoly> for &ZMultiPoly {
    type Output = ZMultiPoly;
    fn mul(self, rhs: &ZMultiPoly) -> ZMultiPoly {
        let mut out = ZMultiPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &ZMultiPoly {
    type Output = ZMultiPoly;
    fn neg(self) -> ZMultiPoly {
        ZMultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! owned_binops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for ZMultiPoly {
            type Output = ZMultiPoly;
            fn $method(self, rhs: ZMultiPoly) -> ZMultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ZMultiPoly> for ZMultiPoly {
            type Output = ZMultiPoly;
            fn $method(self, rhs: &ZMultiPoly) -> ZMultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<ZMultiPoly> for &ZMultiPoly {
            type Output = ZMultiPoly;
            fn $method(self, rhs: ZMultiPoly) -> ZMultiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

owned_binops!(Add add, Sub sub, Mul mul);

impl Neg for ZMultiPoly {
    type Output = ZMultiPoly;
    fn neg(self) -> ZMultiPoly {
        -&self
    }
}

impl fmt::Display for ZMultiPoly {
    /// Terms in descending lexicographic exponent order (`a1` most
    /// significant), e.g. `2*a1*x^2 - Y + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match i {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = Var::ALL
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.name().to_string() } else { format!("{}^{k}", v.name()) })
                .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ZMultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Symbolic curve with generic coefficients `a1..a6`.
struct Generic {
    a1: ZMultiPoly,
    a2: ZMultiPoly,
    a3: ZMultiPoly,
    a4: ZMultiPoly,
    a6: ZMultiPoly,
}

fn v(var: Var) -> ZMultiPoly {
    ZMultiPoly::var(var)
}

fn k(c: i64) -> ZMultiPoly {
    ZMultiPoly::constant(c)
}

impl Generic {
    fn new() -> Self {
        Generic {
            a1: v(Var::A1),
            a2: v(Var::A2),
            a3: v(Var::A3),
            a4: v(Var::A4),
            a6: v(Var::A6),
        }
    }

    /// `W(x, y) = y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6)`.
    fn w(&self, x: &ZMultiPoly, y: &ZMultiPoly) -> ZMultiPoly {
        y * y + (&self.a1 * x + &self.a3) * y
            - (x.pow(3) + &self.a2 * x.pow(2) + &self.a4 * x + &self.a6)
    }

    /// `W_X(x, y) = a1 y - (3 x^2 + 2 a2 x + a4)`.
    fn w_x(&self, x: &ZMultiPoly, y: &ZMultiPoly) -> ZMultiPoly {
        &self.a1 * y - (k(3) * x.pow(2) + k(2) * &self.a2 * x + &self.a4)
    }

    /// `W_Y(x, y) = 2 y + a1 x + a3`.
    fn w_y(&self, x: &ZMultiPoly, y: &ZMultiPoly) -> ZMultiPoly {
        k(2) * y + &self.a1 * x + &self.a3
    }

    /// `σ_x(y) = -y - (a1 x + a3)`.
    fn sigma(&self, x: &ZMultiPoly, y: &ZMultiPoly) -> ZMultiPoly {
        -y - (&self.a1 * x + &self.a3)
    }

    fn b2(&self) -> ZMultiPoly {
        self.a1.pow(2) + k(4) * &self.a2
    }

    fn b4(&self) -> ZMultiPoly {
        k(2) * &self.a4 + &self.a1 * &self.a3
    }

    /// `X^2 + (x + a2) X + (x^2 + a2 x + a4)`, the quotient of the cubic by `X - x`.
    fn cubic_quotient(&self, x: &ZMultiPoly, big_x: &ZMultiPoly) -> ZMultiPoly {
        big_x.pow(2) + (x + &self.a2) * big_x + (x.pow(2) + &self.a2 * x + &self.a4)
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    HoldsUpToSign,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub status: Status,
    /// Rendered residual; `0` whenever the identity holds (for the realized
    /// sign, if any).
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fails
    }
}

/// Identifiers of the exact suite, in report order.
pub const EXACT_IDS: [&str; 7] = ["I0", "I1", "I2", "I3", "I4", "I5", "I6"];

/// Residual of an unconditional identity, expanded over the integers. For
/// `I2` this is the residual for the given `sign` of `W_X(x, y)`.
pub fn exact_residual(id: &str, sign: i8) -> Option<ZMultiPoly> {
    let g = Generic::new();
    let (x, y, big_x, big_y) = (v(Var::SmallX), v(Var::SmallY), v(Var::X), v(Var::Y));
    let (x1, y1, l) = (v(Var::X1), v(Var::Y1), v(Var::L));
    let big_g = || g.cubic_quotient(&x, &big_x) - &g.a1 * &big_y;
    let r = match id {
        "I0" => g.w(&x, &g.sigma(&x, &y)) - g.w(&x, &y),
        "I1" => {
            (&big_y - &y) * (&big_y - g.sigma(&x, &y))
                - (&big_x - &x) * big_g()
                - (g.w(&big_x, &big_y) - g.w(&x, &y))
        }
        "I2" => {
            let rhs = -(&big_x + k(2) * &x + &g.a2) * (&big_x - &x) + &g.a1 * (&big_y - &y) + big_g();
            g.w_x(&x, &y).scale(sign) - rhs
        }
        "I3" => g.w_y(&x, &y) - (-(&big_y - &y) + (&big_y - g.sigma(&x, &y))),
        "I4" => {
            let lam = &l * (&big_x - &x1) + &y1;
            (&big_y - &lam) * (g.sigma(&big_x, &big_y) - &lam) - (g.w(&big_x, &lam) - g.w(&big_x, &big_y))
        }
        "I5" => {
            g.w(&big_x, &big_y)
                - g.w(&x, &y)
                - (&g.a1 * &y - g.cubic_quotient(&x, &big_x)) * (&big_x - &x)
                - (&y - g.sigma(&big_x, &big_y)) * (&big_y - &y)
        }
        "I6" => {
            let (b2, b4) = (g.b2(), g.b4());
            let quad = k(4) * big_x.pow(2) + (k(4) * &x1 + &b2) * &big_x + (k(4) * x1.pow(2) + &b2 * &x1 + k(2) * &b4);
            (&big_y - g.sigma(&big_x, &big_y)).pow(2)
                - (&y1 - g.sigma(&x1, &y1)).pow(2)
                - quad * (&big_x - &x1)
                - k(4) * (g.w(&big_x, &big_y) - g.w(&x1, &y1))
        }
        _ => return None,
    };
    Some(r)
}

fn exact_note(id: &str) -> &'static str {
    match id {
        "I0" => "W(x, σ_x(y)) = W(x, y)",
        "I1" => "(Y - y)(Y - σ_x(y)) = (X - x) G + W(X, Y) - W(x, y)",
        "I2" => "±W_X(x, y) = -(X + 2x + a2)(X - x) + a1 (Y - y) + G",
        "I3" => "W_Y(x, y) = -(Y - y) + (Y - σ_x(y))",
        "I4" => "(Y - λ(X))(σ_X(Y) - λ(X)) = W(X, λ(X)) - W(X, Y)",
        "I5" => "W(X, Y) - W(x, y) = (a1 y - (X^2 + (x + a2) X + x^2 + a2 x + a4))(X - x) + (y - σ_X(Y))(Y - y)",
        "I6" => "(Y - σ_X(Y))^2 - (y1 - σ_x1(y1))^2 = (4X^2 + (4x1 + b2) X + 4x1^2 + b2 x1 + 2b4)(X - x1) + 4 (W(X, Y) - W(x1, y1))",
        _ => "",
    }
}

/// Expands every unconditional identity and reports its residual. `I2` is
/// tried with both signs of `W_X(x, y)` and reports the one that holds.
pub fn check_exact_suite() -> Vec<IdentityReport> {
    EXACT_IDS
        .iter()
        .map(|&id| {
            let plus = exact_residual(id, 1).expect("known id");
            let mut report = IdentityReport {
                id: id.to_string(),
                status: if plus.is_zero() { Status::Holds } else { Status::Fails },
                residual: plus.to_string(),
                sign: None,
                note: exact_note(id).to_string(),
                seed: None,
                trials: None,
                counterexample: None,
            };
            if id == "I2" {
                let minus = exact_residual(id, -1).expect("known id");
                if plus.is_zero() {
                    report.sign = Some(1);
                } else if minus.is_zero() {
                    report.status = Status::HoldsUpToSign;
                    report.residual = minus.to_string();
                    report.sign = Some(-1);
                }
            }
            report
        })
        .collect()
}

/// Value of the residual of `id` computed directly in the curve's field via
/// the curve API, at the given assignment of every variable except
/// `a1..a6` (taken from `curve`).
pub fn direct_residual(
    id: &str,
    curve: &WeierstrassCurve,
    values: &[FieldElement; NVARS],
    sign: i8,
) -> Option<FieldElement> {
    let f = curve.field();
    let val = |var: Var| &values[var as usize];
    let (x, y, bx, by) = (val(Var::SmallX), val(Var::SmallY), val(Var::X), val(Var::Y));
    let (x1, y1, l) = (val(Var::X1), val(Var::Y1), val(Var::L));
    let w = |a: &FieldElement, b: &FieldElement| curve.polynomial().eval2(a, b).expect("same field");
    let c = |n: i64| f.from_i64(n);
    let quotient = |x: &FieldElement| bx * bx + (x + curve.a2()) * bx + (x * x + curve.a2() * x + curve.a4());
    let big_g = || quotient(x) - curve.a1() * by;
    let r = match id {
        "I0" => w(x, &curve.neg_y(x, y)) - w(x, y),
        "I1" => (by - y) * (by - curve.neg_y(x, y)) - (bx - x) * big_g() - (w(bx, by) - w(x, y)),
        "I2" => {
            let wx = curve.polynomial_x().eval2(x, y).expect("same field");
            let rhs = -((bx + c(2) * x + curve.a2()) * (bx - x)) + curve.a1() * (by - y) + big_g();
            c(sign as i64) * wx - rhs
        }
        "I3" => {
            let wy = curve.polynomial_y().eval2(x, y).expect("same field");
            wy - (-(by - y) + (by - curve.neg_y(x, y)))
        }
        "I4" => {
            let lam = line_polynomial(x1, y1, l).eval(bx).expect("same field");
            let wlam = curve.add_polynomial(x1, y1, l).eval(bx).expect("same field");
            (by - &lam) * (curve.neg_y(bx, by) - &lam) - (wlam - w(bx, by))
        }
        "I5" => {
            w(bx, by) - w(x, y) - (curve.a1() * y - quotient(x)) * (bx - x) - (y - curve.neg_y(bx, by)) * (by - y)
        }
        "I6" => {
            let inv = curve.invariants();
            let quad = c(4) * bx * bx + (c(4) * x1 + &inv.b2) * bx + (c(4) * x1 * x1 + &inv.b2 * x1 + c(2) * &inv.b4);
            (by - curve.neg_y(bx, by)).square()
                - (y1 - curve.neg_y(x1, y1)).square()
                - quad * (bx - x1)
                - c(4) * (w(bx, by) - w(x1, y1))
        }
        _ => return None,
    };
    Some(r)
}

/// Identifiers of the randomized suite, in report order.
pub const RANDOMIZED_IDS: [&str; 3] = ["R1", "R2", "R3"];

fn randomized_note(id: &str) -> &'static str {
    match id {
        "R1" => "λ(x1) = y1, and λ(x2) = y2 for a secant",
        "R2" => "W(X, λ(X)) = -(X - x1)(X - x2)(X - x3)",
        "R3" => "W_X(X, λ(X)) + ℓ W_Y(X, λ(X)) = -((X - x1)(X - x2) + (X - x1)(X - x3) + (X - x2)(X - x3))",
        _ => "",
    }
}

/// Whether a trial uses two distinct `x`-coordinates or a doubling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineCase {
    Secant,
    Tangent,
}

/// One sampled configuration and the three residuals it produced.
#[derive(Debug, Clone)]
pub struct Trial {
    pub index: u64,
    pub case: LineCase,
    pub curve: WeierstrassCurve,
    pub p1: (FieldElement, FieldElement),
    pub p2: (FieldElement, FieldElement),
    pub slope: FieldElement,
    pub residuals: [UniPoly; 3],
}

impl Trial {
    fn describe(&self, residual: &UniPoly) -> String {
        format!(
            "trial {} ({:?}) curve [{}] P1 = ({}, {}) P2 = ({}, {}) slope {} residual {}",
            self.index, self.case, self.curve, self.p1.0, self.p1.1, self.p2.0, self.p2.1, self.slope, residual
        )
    }
}

/// Solutions `y` of `W(x, y) = 0`.
fn solve_y(curve: &WeierstrassCurve, x: &FieldElement) -> Result<Vec<FieldElement>, FieldError> {
    let f = curve.field();
    let b = curve.a1() * x + curve.a3();
    if f.characteristic() == 2 {
        // no closed form without a trace argument; fields here are small
        return Ok(f.elements()?.filter(|y| curve.equation(x, y)).collect());
    }
    let c = x * x * x + curve.a2() * x * x + curve.a4() * x + curve.a6();
    let disc = &b * &b + f.from_i64(4) * c;
    Ok(match disc.sqrt() {
        None => Vec::new(),
        Some(s) => {
            let half = f.from_i64(2).inv()?;
            let mut ys = vec![(-&b + &s) * &half, (-&b - &s) * &half];
            ys.dedup();
            ys
        }
    })
}

/// A random point with `x` drawn uniformly, up to [`SAMPLING_RETRIES`] draws.
/// With `avoid_x`, that `x`-coordinate is rejected.
fn sample_point<R: Rng>(
    curve: &WeierstrassCurve,
    rng: &mut R,
    avoid_x: Option<&FieldElement>,
) -> Result<Option<(FieldElement, FieldElement)>, FieldError> {
    let f = curve.field();
    for _ in 0..SAMPLING_RETRIES {
        let x = f.random(rng);
        if avoid_x == Some(&x) {
            continue;
        }
        let ys = solve_y(curve, &x)?;
        if !ys.is_empty() {
            let y = ys[rng.gen_range(0..ys.len())].clone();
            return Ok(Some((x, y)));
        }
    }
    Ok(None)
}

/// Samples one trial: an elliptic curve, points for the requested case, the
/// slope from [`WeierstrassCurve::slope`], and the residuals of R1 to R3.
pub fn run_trial(field: Field, seed: u64, index: u64) -> Result<Trial, IdentityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let case = if index.is_multiple_of(2) { LineCase::Secant } else { LineCase::Tangent };
    for _ in 0..SAMPLING_RETRIES {
        let curve = WeierstrassCurve::random(field, &mut rng);
        if !curve.is_elliptic() {
            continue;
        }
        let Some(p1) = sample_point(&curve, &mut rng, None)? else {
            continue;
        };
        let p2 = match case {
            LineCase::Tangent => p1.clone(),
            LineCase::Secant => match sample_point(&curve, &mut rng, Some(&p1.0))? {
                Some(p) => p,
                None => continue,
            },
        };
        if case == LineCase::Tangent && p1.1 == curve.neg_y(&p1.0, &p1.1) {
            // vertical tangent: no third intersection
            continue;
        }
        let slope = curve.slope(&p1.0, &p2.0, &p1.1, &p2.1)?;
        let residuals = randomized_residuals(&curve, &p1, &p2, &slope, case);
        return Ok(Trial {
            index,
            case,
            curve,
            p1,
            p2,
            slope,
            residuals,
        });
    }
    Err(IdentityError::SamplingExhausted(SAMPLING_RETRIES))
}

fn randomized_residuals(
    curve: &WeierstrassCurve,
    (x1, y1): &(FieldElement, FieldElement),
    (x2, y2): &(FieldElement, FieldElement),
    l: &FieldElement,
    case: LineCase,
) -> [UniPoly; 3] {
    let lam = line_polynomial(x1, y1, l);
    let at = |p: &UniPoly, x: &FieldElement| p.eval(x).expect("same field");
    // constant term checks x1, the X coefficient checks x2
    let mut r1 = UniPoly::constant(at(&lam, x1) - y1);
    if case == LineCase::Secant {
        r1 = &r1 + &UniPoly::monomial(at(&lam, x2) - y2, 1);
    }
    let x3 = curve.add_x(x1, x2, l);
    let (f1, f2, f3) = (UniPoly::x_minus(x1), UniPoly::x_minus(x2), UniPoly::x_minus(&x3));
    let r2 = &curve.add_polynomial(x1, y1, l) + &(&(&f1 * &f2) * &f3);
    let wx = curve.polynomial_x().eval_y_poly(&lam).expect("same field");
    let wy = curve.polynomial_y().eval_y_poly(&lam).expect("same field");
    let sym = &(&(&f1 * &f2) + &(&f1 * &f3)) + &(&f2 * &f3);
    let r3 = &(&wx + &wy.scale(l)) + &sym;
    [r1, r2, r3]
}

/// Runs `trials` independent trials over `field` (odd characteristic, or
/// characteristic 2 with enumerable elements) and merges them into one
/// report per identity, ordered by identity then trial index.
pub fn check_randomized_suite_over(field: Field, trials: u64, seed: u64) -> Result<Vec<IdentityReport>, IdentityError> {
    let runs: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(field, seed, i))
        .collect::<Result<_, _>>()?;
    let secants = runs.iter().filter(|t| t.case == LineCase::Secant).count();
    Ok(RANDOMIZED_IDS
        .iter()
        .enumerate()
        .map(|(j, id)| {
            let failures: Vec<&Trial> = runs.iter().filter(|t| !t.residuals[j].is_zero()).collect();
            let first = failures.first();
            IdentityReport {
                id: id.to_string(),
                status: if failures.is_empty() { Status::Holds } else { Status::Fails },
                residual: first.map_or_else(|| "0".to_string(), |t| t.residuals[j].to_string()),
                sign: None,
                note: format!(
                    "{} over {}: {} secant, {} tangent, {} failing",
                    randomized_note(id),
                    field,
                    secants,
                    runs.len() - secants,
                    failures.len()
                ),
                seed: Some(seed),
                trials: Some(trials),
                counterexample: first.map(|t| t.describe(&t.residuals[j])),
            }
        })
        .collect())
}

/// [`check_randomized_suite_over`] for the prime field `GF(p)`.
pub fn check_randomized_suite(p: u64, trials: u64, seed: u64) -> Result<Vec<IdentityReport>, IdentityError> {
    let field = Field::new(&crate::fields::FieldSpec::Prime(p))?;
    check_randomized_suite_over(field, trials, seed)
}

/// Specializes every exact identity at random integers and compares with
/// [`direct_residual`] in `GF(p)`. Returns the ids of disagreeing checks.
pub fn cross_engine_check(p: u64, checks: usize, seed: u64) -> Result<Vec<String>, FieldError> {
    let field = Field::new(&crate::fields::FieldSpec::Prime(p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    let residuals: Vec<(&str, ZMultiPoly)> = EXACT_IDS
        .iter()
        .map(|&id| (id, exact_residual(id, -1).expect("known id")))
        .collect();
    for n in 0..checks {
        let ints: [BigInt; NVARS] = std::array::from_fn(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)));
        let values: [FieldElement; NVARS] = std::array::from_fn(|i| field.from_bigint(&ints[i]));
        let curve = WeierstrassCurve::new(
            values[0].clone(),
            values[1].clone(),
            values[2].clone(),
            values[3].clone(),
            values[4].clone(),
        )
        .expect("same field");
        let (id, poly) = &residuals[n % residuals.len()];
        let symbolic = field.from_bigint(&poly.specialize(&ints));
        let direct = direct_residual(id, &curve, &values, -1).expect("known id");
        if symbolic != direct {
            mismatches.push(format!("{id} at check {n}"));
        }
    }
    Ok(mismatches)
}
