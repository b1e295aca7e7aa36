//! Dense polynomials over a [`Field`]: univariate `F[X]` and the Y-outer
//! bivariate ring `F[X][Y]`, whose coefficients (in `Y`) are themselves
//! univariate polynomials in `X`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::fields::{Field, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

impl From<FieldError> for PolyError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::FieldMismatch(a, b) => PolyError::FieldMismatch(a, b),
            FieldError::DivisionByZero => PolyError::DivisionByZero,
            other => unreachable!("unexpected field error in polynomial arithmetic: {other}"),
        }
    }
}

fn check_fields(a: Field, b: Field) -> Result<(), PolyError> {
    if a == b {
        Ok(())
    } else {
        Err(PolyError::FieldMismatch(a.to_string(), b.to_string()))
    }
}

/// Degree with `-inf` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    /// `c * d` for a positive integer `c`.
    pub fn scale(self, c: usize) -> Degree {
        assert!(c >= 1, "degree scaling requires c >= 1");
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(n) => Degree::Finite(c * n),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(n) => Some(n),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl Add<usize> for Degree {
    type Output = Degree;
    fn add(self, rhs: usize) -> Degree {
        self + Degree::Finite(rhs)
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Polynomial in `X` with coefficients low to high. The last stored
/// coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    /// Builds a polynomial from coefficients, low to high.
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        for c in &coeffs {
            check_fields(field, c.field())?;
        }
        Ok(Self::from_vec(field, coeffs))
    }

    fn from_vec(field: Field, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Polynomial from integer coefficients mapped into `field`.
    pub fn from_ints(field: Field, coeffs: &[i64]) -> Self {
        Self::from_vec(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_vec(c.field(), vec![c])
    }

    /// The variable `X`.
    pub fn x(field: Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    /// `c * X^n`.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Self::from_vec(field, coeffs)
    }

    /// `X - a`.
    pub fn x_minus(a: &FieldElement) -> Self {
        Self::from_vec(a.field(), vec![-a, a.field().one()])
    }

    /// Uniform coefficients up to `X^max_degree`; the result may have lower
    /// degree, or be zero.
    pub fn random<R: rand::Rng + ?Sized>(field: Field, max_degree: usize, rng: &mut R) -> Self {
        Self::from_vec(field, (0..=max_degree).map(|_| field.random(rng)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(FieldElement::is_one)
    }

    /// `(lc, self / lc)` for nonzero polynomials.
    pub fn make_monic(&self) -> Option<(FieldElement, UniPoly)> {
        let lc = self.leading_coeff()?.clone();
        let inv = lc.inv().expect("leading coefficient is nonzero");
        Some((lc, self.scale(&inv)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        check_fields(self.field, other.field)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        Ok(Self::from_vec(self.field, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        check_fields(self.field, other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(self.field, coeffs))
    }

    pub fn checked_scale(&self, c: &FieldElement) -> Result<Self, PolyError> {
        check_fields(self.field, c.field())?;
        Ok(self.scale(c))
    }

    /// Multiplies every coefficient by `c`. Panics on a field mismatch.
    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_vec(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.field), |acc, _| &acc * self)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, PolyError> {
        check_fields(self.field, x.field())?;
        Ok(self.horner(x))
    }

    fn horner(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitutes `X := inner`.
    pub fn compose(&self, inner: &UniPoly) -> Result<UniPoly, PolyError> {
        check_fields(self.field, inner.field)?;
        let mut acc = Self::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Self::from_vec(self.field, coeffs)
    }

    /// Division by a monic divisor: `self = q * m + r` with `deg r < deg m`.
    pub fn divmod_monic(&self, m: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        check_fields(self.field, m.field)?;
        if !m.is_monic() {
            return Err(PolyError::NonMonicDivisor);
        }
        Ok(self.long_division(m, &self.field.one()))
    }

    /// Euclidean division by any nonzero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        check_fields(self.field, d.field)?;
        let lc = d.leading_coeff().ok_or(PolyError::DivisionByZero)?;
        Ok(self.long_division(d, &lc.inv()?))
    }

    fn long_division(&self, d: &UniPoly, lead_inv: &FieldElement) -> (UniPoly, UniPoly) {
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = &r[top] * lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = &r[idx] - &(&c * di);
            }
            q[top - dd] = c;
        }
        r.truncate(dd);
        (Self::from_vec(self.field, q), Self::from_vec(self.field, r))
    }
}

macro_rules! poly_binops {
    ($ty:ident) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.checked_add(rhs).expect("field mismatch")
            }
        }
        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self.checked_sub(rhs).expect("field mismatch")
            }
        }
        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                self.checked_mul(rhs).expect("field mismatch")
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

poly_binops!(UniPoly);
poly_binops!(BiPoly);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, String)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*{var}")?,
            _ => write!(f, "{c}*{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    /// `c0 + c1*X + c2*X^2`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()));
        write_terms(f, terms, "X")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Polynomial in `Y` whose coefficients are polynomials in `X`, low to high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    ycoeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(field: Field, ycoeffs: Vec<UniPoly>) -> Result<Self, PolyError> {
        for c in &ycoeffs {
            check_fields(field, c.field)?;
        }
        Ok(Self::from_vec(field, ycoeffs))
    }

    fn from_vec(field: Field, mut ycoeffs: Vec<UniPoly>) -> Self {
        while ycoeffs.last().is_some_and(UniPoly::is_zero) {
            ycoeffs.pop();
        }
        BiPoly { field, ycoeffs }
    }

    pub fn zero(field: Field) -> Self {
        BiPoly {
            field,
            ycoeffs: Vec::new(),
        }
    }

    /// `C p`: the polynomial `p(X)` viewed as a constant in `Y`.
    pub fn constant(p: UniPoly) -> Self {
        Self::from_vec(p.field, vec![p])
    }

    /// `C (C c)`.
    pub fn scalar(c: FieldElement) -> Self {
        Self::constant(UniPoly::constant(c))
    }

    /// The outer variable `Y`.
    pub fn y(field: Field) -> Self {
        Self::from_vec(field, vec![UniPoly::zero(field), UniPoly::one(field)])
    }

    /// The inner variable `X` (that is, `C X`).
    pub fn x(field: Field) -> Self {
        Self::constant(UniPoly::x(field))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ycoeffs(&self) -> &[UniPoly] {
        &self.ycoeffs
    }

    /// Coefficient of `Y^j`.
    pub fn ycoeff(&self, j: usize) -> UniPoly {
        self.ycoeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.ycoeffs.is_empty()
    }

    pub fn degree_y(&self) -> Degree {
        match self.ycoeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Monic in `Y`: the leading `Y`-coefficient is the constant 1.
    pub fn is_monic(&self) -> bool {
        self.ycoeffs
            .last()
            .is_some_and(|c| *c == UniPoly::one(self.field))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        check_fields(self.field, other.field)?;
        let n = self.ycoeffs.len().max(other.ycoeffs.len());
        let ycoeffs = (0..n).map(|j| &self.ycoeff(j) + &other.ycoeff(j)).collect();
        Ok(Self::from_vec(self.field, ycoeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        check_fields(self.field, other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut ycoeffs = vec![UniPoly::zero(self.field); self.ycoeffs.len() + other.ycoeffs.len() - 1];
        for (i, a) in self.ycoeffs.iter().enumerate() {
            for (j, b) in other.ycoeffs.iter().enumerate() {
                ycoeffs[i + j] = &ycoeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(self.field, ycoeffs))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_vec(self.field, self.ycoeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Substitutes `Y := q(X)`, giving a polynomial in `X`.
    pub fn eval_y_poly(&self, q: &UniPoly) -> Result<UniPoly, PolyError> {
        check_fields(self.field, q.field)?;
        let mut acc = UniPoly::zero(self.field);
        for c in self.ycoeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        Ok(acc)
    }

    /// Substitutes `Y := y` (as the constant polynomial `C y`).
    pub fn eval_y(&self, y: &FieldElement) -> Result<UniPoly, PolyError> {
        self.eval_y_poly(&UniPoly::constant(y.clone()))
    }

    /// `(w.eval (C y)).eval x`: substitute `Y := y`, then `X := x`.
    pub fn eval2(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement, PolyError> {
        check_fields(self.field, x.field())?;
        check_fields(self.field, y.field())?;
        // Horner in Y over the values of the X-coefficients at x
        let mut acc = self.field.zero();
        for c in self.ycoeffs.iter().rev() {
            acc = &(&acc * y) + &c.horner(x);
        }
        Ok(acc)
    }

    /// d/dX applied to every `Y`-coefficient.
    pub fn derivative_x(&self) -> Self {
        Self::from_vec(self.field, self.ycoeffs.iter().map(UniPoly::derivative).collect())
    }

    /// d/dY in the outer variable.
    pub fn derivative_y(&self) -> Self {
        let ycoeffs = self
            .ycoeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&self.field.from_i64(j as i64)))
            .collect();
        Self::from_vec(self.field, ycoeffs)
    }

    /// Division in `Y` by a divisor monic in `Y`.
    pub fn divmod_monic(&self, m: &BiPoly) -> Result<(BiPoly, BiPoly), PolyError> {
        check_fields(self.field, m.field)?;
        if !m.is_monic() {
            return Err(PolyError::NonMonicDivisor);
        }
        let dm = m.ycoeffs.len() - 1;
        let mut r = self.ycoeffs.clone();
        if r.len() <= dm {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut q = vec![UniPoly::zero(self.field); r.len() - dm];
        for top in (dm..r.len()).rev() {
            let c = r[top].clone();
            if c.is_zero() {
                continue;
            }
            for (i, mi) in m.ycoeffs.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = &r[idx] - &(&c * mi);
            }
            q[top - dm] = c;
        }
        r.truncate(dm);
        Ok((Self::from_vec(self.field, q), Self::from_vec(self.field, r)))
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            field: self.field,
            ycoeffs: self.ycoeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for BiPoly {
    /// `(p0(X)) + (p1(X))*Y + ...`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .ycoeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, format!("({c})")));
        write_terms(f, terms, "Y")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
