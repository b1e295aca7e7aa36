//! Nonsingular points of a Weierstrass curve and the chord-and-tangent
//! group law.

use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curve::{split_top_level, VariableChange, WeierstrassCurve};
use crate::fields::{FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("({x}, {y}) does not satisfy the curve equation")]
    NotOnCurve { x: String, y: String },
    #[error("({x}, {y}) is a singular point of the curve")]
    SingularPoint { x: String, y: String },
    #[error("tangent denominator vanished at ({x}, {y}) outside the vertical case")]
    DegenerateTangent { x: String, y: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An affine point `(x, y)` known to be a nonsingular point of the curve it
/// was constructed against.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    x: FieldElement,
    y: FieldElement,
}

impl AffinePoint {
    /// Checked constructor: succeeds only for nonsingular points of `curve`.
    pub fn new(curve: &WeierstrassCurve, x: FieldElement, y: FieldElement) -> Result<Self, PointError> {
        curve.field().check(&x)?;
        curve.field().check(&y)?;
        if !curve.nonsingular(&x, &y) {
            let (xs, ys) = (x.to_string(), y.to_string());
            return Err(if curve.equation(&x, &y) {
                PointError::SingularPoint { x: xs, y: ys }
            } else {
                PointError::NotOnCurve { x: xs, y: ys }
            });
        }
        Ok(AffinePoint { x, y })
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }
}

/// The point at infinity, or a nonsingular affine point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Zero,
    Affine(AffinePoint),
}

impl Point {
    pub fn affine(curve: &WeierstrassCurve, x: FieldElement, y: FieldElement) -> Result<Self, PointError> {
        AffinePoint::new(curve, x, y).map(Point::Affine)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Point::Zero)
    }

    pub fn coords(&self) -> Option<(&FieldElement, &FieldElement)> {
        match self {
            Point::Zero => None,
            Point::Affine(p) => Some((&p.x, &p.y)),
        }
    }

    /// Parses `O` or `x,y` (extension coordinates bracketed).
    pub fn parse(curve: &WeierstrassCurve, s: &str) -> Result<Self, PointError> {
        let s = s.trim();
        if s == "O" {
            return Ok(Point::Zero);
        }
        let parts = split_top_level(s);
        let [x, y] = parts.as_slice() else {
            return Err(FieldError::Parse {
                what: "point",
                input: s.to_string(),
            }
            .into());
        };
        let field = curve.field();
        Point::affine(curve, field.parse_element(x)?, field.parse_element(y)?)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Zero => write!(f, "O"),
            Point::Affine(p) => write!(f, "{},{}", p.x, p.y),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Point {
    /// `{"inf": true}` or `{"x": "...", "y": "..."}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(if self.is_zero() { 1 } else { 2 }))?;
        match self {
            Point::Zero => map.serialize_entry("inf", &true)?,
            Point::Affine(p) => {
                map.serialize_entry("x", &p.x.to_string())?;
                map.serialize_entry("y", &p.y.to_string())?;
            }
        }
        map.end()
    }
}

/// Order and invariant factors `(n1, n2)` with `n1 | n2`, describing the
/// group as `Z/n1 x Z/n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub order: u64,
    pub invariant_factors: (u64, u64),
}

impl GroupStructure {
    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.0 == 1
    }
}

impl WeierstrassCurve {
    /// `σ_x(y) = -y - (a1 x + a3)`.
    pub fn neg_y(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        -y - (self.a1() * x + self.a3())
    }

    /// Three-case slope with junk value 0 in the vertical case.
    pub fn slope(
        &self,
        x1: &FieldElement,
        x2: &FieldElement,
        y1: &FieldElement,
        y2: &FieldElement,
    ) -> Result<FieldElement, PointError> {
        if x1 == x2 {
            if *y1 == self.neg_y(x2, y2) {
                return Ok(self.field().zero());
            }
            let k = |n: i64| self.field().from_i64(n);
            let num = k(3) * x1 * x1 + k(2) * self.a2() * x1 + self.a4() - self.a1() * y1;
            let den = y1 - &self.neg_y(x1, y1);
            num.checked_div(&den).map_err(|_| PointError::DegenerateTangent {
                x: x1.to_string(),
                y: y1.to_string(),
            })
        } else {
            Ok((y1 - y2) / (x1 - x2))
        }
    }

    /// `x3 = L^2 + a1 L - a2 - x1 - x2`.
    pub fn add_x(&self, x1: &FieldElement, x2: &FieldElement, l: &FieldElement) -> FieldElement {
        l * l + self.a1() * l - self.a2() - x1 - x2
    }

    /// `y3' = λ(x3)`, the `Y`-coordinate of the third intersection point.
    pub fn add_y_prime(
        &self,
        x1: &FieldElement,
        x2: &FieldElement,
        y1: &FieldElement,
        l: &FieldElement,
    ) -> FieldElement {
        l * (self.add_x(x1, x2, l) - x1) + y1
    }

    /// `y3 = σ_{x3}(y3')`.
    pub fn add_y(
        &self,
        x1: &FieldElement,
        x2: &FieldElement,
        y1: &FieldElement,
        l: &FieldElement,
    ) -> FieldElement {
        self.neg_y(&self.add_x(x1, x2, l), &self.add_y_prime(x1, x2, y1, l))
    }

    pub fn neg(&self, p: &Point) -> Result<Point, PointError> {
        match p {
            Point::Zero => Ok(Point::Zero),
            Point::Affine(a) => Point::affine(self, a.x.clone(), self.neg_y(&a.x, &a.y)),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point, PointError> {
        let (a, b) = match (p, q) {
            (Point::Zero, _) => return Ok(q.clone()),
            (_, Point::Zero) => return Ok(p.clone()),
            (Point::Affine(a), Point::Affine(b)) => (a, b),
        };
        if a.x == b.x && a.y == self.neg_y(&b.x, &b.y) {
            return Ok(Point::Zero);
        }
        let l = self.slope(&a.x, &b.x, &a.y, &b.y)?;
        let x3 = self.add_x(&a.x, &b.x, &l);
        let y3 = self.add_y(&a.x, &b.x, &a.y, &l);
        Point::affine(self, x3, y3)
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Result<Point, PointError> {
        self.add(p, &self.neg(q)?)
    }

    /// `n * P` by double-and-add, with `(-n) * P = -(n * P)`.
    pub fn smul(&self, n: i64, p: &Point) -> Result<Point, PointError> {
        let mut k = n.unsigned_abs();
        let mut acc = Point::Zero;
        let mut base = p.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            Ok(acc)
        }
    }

    /// `O` followed by every nonsingular affine point, in field enumeration
    /// order of `(x, y)`.
    pub fn points(&self) -> Result<Vec<Point>, PointError> {
        let els: Vec<FieldElement> = self.field().elements()?.collect();
        let mut out = vec![Point::Zero];
        for x in &els {
            for y in &els {
                if self.nonsingular(x, y) {
                    out.push(Point::Affine(AffinePoint {
                        x: x.clone(),
                        y: y.clone(),
                    }));
                }
            }
        }
        Ok(out)
    }

    /// Smallest `d > 0` with `d * P = O`, searched among divisors of `group_order`.
    pub fn point_order(&self, p: &Point, group_order: u64) -> Result<u64, PointError> {
        for d in (1..=group_order).filter(|d| group_order.is_multiple_of(*d)) {
            if self.smul(d as i64, p)?.is_zero() {
                return Ok(d);
            }
        }
        unreachable!("point order divides the group order")
    }

    /// Group order and invariant factors `(N / e, e)`, `e` the exponent.
    pub fn group_structure(&self) -> Result<GroupStructure, PointError> {
        let points = self.points()?;
        let order = points.len() as u64;
        let mut exponent = 1u64;
        for p in &points {
            exponent = exponent.lcm(&self.point_order(p, order)?);
        }
        Ok(GroupStructure {
            order,
            invariant_factors: (order / exponent, exponent),
        })
    }

    /// Image of `P` on `self.variable_change(c)`:
    /// `(x, y) -> (u^-2 (x - r), u^-3 (y - s (x - r) - t))`.
    pub fn map_point(&self, c: &VariableChange, p: &Point) -> Result<Point, PointError> {
        self.map_point_to(&self.variable_change(c), c, p)
    }

    /// As [`map_point`](Self::map_point), with the target curve precomputed.
    pub fn map_point_to(
        &self,
        target: &WeierstrassCurve,
        c: &VariableChange,
        p: &Point,
    ) -> Result<Point, PointError> {
        match p {
            Point::Zero => Ok(Point::Zero),
            Point::Affine(a) => {
                let ui = c.u().inv()?;
                let dx = &a.x - c.r();
                let x = ui.pow(2) * &dx;
                let y = ui.pow(3) * (&a.y - c.s() * &dx - c.t());
                Point::affine(target, x, y)
            }
        }
    }
}
