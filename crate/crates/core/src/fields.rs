//! Exact field arithmetic: prime fields GF(p), polynomial-basis extensions
//! GF(p^k), and the rationals.
//!
//! A [`Field`] is a cheap `Copy` handle onto an interned description of the
//! field, so every [`FieldElement`] can carry its field without reference
//! counting. Two handles are equal iff they describe the same field with the
//! same modulus.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Prime fields must satisfy `p < PRIME_BOUND` so products fit in a `u64`.
pub const PRIME_BOUND: u64 = 1 << 31;

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("prime {0} is out of range (must be below 2^31)")]
    PrimeOutOfRange(u64),
    #[error("modulus {modulus:?} is reducible over GF({p})")]
    ReducibleModulus { p: u64, modulus: Vec<u64> },
    #[error("extension degree {0} is out of range 1..=16")]
    DegreeOutOfRange(usize),
    #[error("modulus must be monic of degree {expected}, got coefficients {modulus:?}")]
    BadModulus { expected: usize, modulus: Vec<u64> },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the rational field is infinite")]
    InfiniteField,
    #[error("field has too many elements to enumerate")]
    TooLargeToEnumerate,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(String, String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

fn parse_err(what: &'static str, input: &str) -> FieldError {
    FieldError::Parse {
        what,
        input: input.to_string(),
    }
}

/// User-facing description of a field, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    /// `modulus` holds `k + 1` coefficients, low to high, and must be monic.
    /// `None` selects the built-in modulus for `(p, k)`.
    Extension {
        p: u64,
        k: usize,
        modulus: Option<Vec<u64>>,
    },
    Rational,
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Grammar: `q(<p>)`, `q(<p>^<k>[,m=<c0,...,ck>])`, or `rational`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let inner = s
            .strip_prefix("q(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err("field spec", s))?;
        let (order, modulus) = match inner.split_once(",m=") {
            Some((o, m)) => (o, Some(m)),
            None => (inner, None),
        };
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| parse_err("field spec", s));
        match order.split_once('^') {
            None if modulus.is_none() => Ok(FieldSpec::Prime(num(order)?)),
            None => Err(parse_err("field spec", s)),
            Some((p, k)) => {
                let p = num(p)?;
                let k = num(k)? as usize;
                let modulus = modulus
                    .map(|m| m.split(',').map(num).collect::<Result<Vec<_>, _>>())
                    .transpose()?;
                Ok(FieldSpec::Extension { p, k, modulus })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    Prime { p: u64 },
    /// `modulus` is monic of degree `k`, stored low to high.
    Extension { p: u64, k: usize, modulus: Vec<u64> },
    Rational,
}

#[derive(Debug)]
struct FieldInner {
    kind: Kind,
}

/// Handle onto an interned field. Copying is free; equality is identity.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldInner);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const FieldInner as usize).hash(state);
    }
}

fn intern(kind: Kind) -> Field {
    static REGISTRY: OnceLock<Mutex<HashMap<Kind, &'static FieldInner>>> = OnceLock::new();
    let mut map = REGISTRY
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("field registry poisoned");
    let inner = *map
        .entry(kind.clone())
        .or_insert_with(|| Box::leak(Box::new(FieldInner { kind })));
    Field(inner)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in moduli, low to high.
fn builtin_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let m: &[u64] = match (p, k) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// First monic irreducible of degree `k` in enumeration order of the
/// non-leading coefficients.
fn search_modulus(p: u64, k: usize) -> Vec<u64> {
    let mut low = vec![0u64; k];
    loop {
        let mut m = low.clone();
        m.push(1);
        if gfp::is_irreducible(&m, p) {
            return m;
        }
        // increment little-endian counter; degree-k irreducibles always exist
        for c in low.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
}

impl Field {
    /// Validates `spec` and returns the interned field.
    pub fn new(spec: &FieldSpec) -> Result<Field, FieldError> {
        match spec {
            FieldSpec::Rational => Ok(intern(Kind::Rational)),
            FieldSpec::Prime(p) => Self::check_prime(*p).map(|p| intern(Kind::Prime { p })),
            FieldSpec::Extension { p, k, modulus } => {
                let p = Self::check_prime(*p)?;
                let k = *k;
                if !(1..=MAX_EXTENSION_DEGREE).contains(&k) {
                    return Err(FieldError::DegreeOutOfRange(k));
                }
                let modulus = match modulus {
                    Some(m) => {
                        if m.len() != k + 1 || m[k] % p != 1 {
                            return Err(FieldError::BadModulus {
                                expected: k,
                                modulus: m.clone(),
                            });
                        }
                        let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                        if !gfp::is_irreducible(&m, p) {
                            return Err(FieldError::ReducibleModulus { p, modulus: m });
                        }
                        m
                    }
                    None => builtin_modulus(p, k).unwrap_or_else(|| search_modulus(p, k)),
                };
                if k == 1 {
                    // GF(p)[T]/(T + c) is GF(p) itself
                    return Ok(intern(Kind::Prime { p }));
                }
                Ok(intern(Kind::Extension { p, k, modulus }))
            }
        }
    }

    fn check_prime(p: u64) -> Result<u64, FieldError> {
        if p >= PRIME_BOUND {
            Err(FieldError::PrimeOutOfRange(p))
        } else if !is_prime(p) {
            Err(FieldError::NonPrimeModulus(p))
        } else {
            Ok(p)
        }
    }

    /// Parses a field spec string and constructs the field.
    pub fn parse(spec: &str) -> Result<Field, FieldError> {
        Field::new(&spec.parse()?)
    }

    /// GF(p). Panics if `p` is not a prime below 2^31.
    pub fn prime(p: u64) -> Field {
        Field::new(&FieldSpec::Prime(p)).expect("invalid prime")
    }

    /// GF(p^k) with the built-in modulus. Panics on invalid parameters.
    pub fn extension(p: u64, k: usize) -> Field {
        Field::new(&FieldSpec::Extension { p, k, modulus: None }).expect("invalid extension")
    }

    pub fn rational() -> Field {
        intern(Kind::Rational)
    }

    /// Finite field with `q` elements, using built-in moduli for prime powers.
    pub fn with_order(q: u64) -> Result<Field, FieldError> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(FieldError::NonPrimeModulus(q))?;
        let mut k = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(FieldError::NonPrimeModulus(q));
        }
        Field::new(&FieldSpec::Extension { p, k, modulus: None })
    }

    pub fn spec(&self) -> FieldSpec {
        match &self.0.kind {
            Kind::Prime { p } => FieldSpec::Prime(*p),
            Kind::Extension { p, k, modulus } => FieldSpec::Extension {
                p: *p,
                k: *k,
                modulus: Some(modulus.clone()),
            },
            Kind::Rational => FieldSpec::Rational,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            Kind::Prime { p } | Kind::Extension { p, .. } => *p,
            Kind::Rational => 0,
        }
    }

    /// Extension degree over the prime field (1 for GF(p) and the rationals).
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            Kind::Extension { k, .. } => *k,
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.0.kind, Kind::Rational)
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<BigUint> {
        match &self.0.kind {
            Kind::Rational => None,
            _ => Some(BigUint::from(self.characteristic()).pow(self.degree() as u32)),
        }
    }

    /// Number of elements when it fits in a `u64`.
    pub fn small_order(&self) -> Result<u64, FieldError> {
        self.order()
            .ok_or(FieldError::InfiniteField)?
            .to_u64()
            .ok_or(FieldError::TooLargeToEnumerate)
    }

    pub fn zero(&self) -> FieldElement {
        let value = match &self.0.kind {
            Kind::Prime { .. } => Value::Prime(0),
            Kind::Extension { .. } => Value::Ext([0; MAX_EXTENSION_DEGREE]),
            Kind::Rational => Value::Rational(BigRational::zero()),
        };
        FieldElement { field: *self, value }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    /// Image of the integer `n` under the canonical map Z -> F.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let value = match &self.0.kind {
            Kind::Prime { p } => Value::Prime(reduce_bigint(n, *p)),
            Kind::Extension { p, .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                c[0] = reduce_bigint(n, *p) as u32;
                Value::Ext(c)
            }
            Kind::Rational => Value::Rational(BigRational::from_integer(n.clone())),
        };
        FieldElement { field: *self, value }
    }

    /// Rational `num / den`; in a finite field, `num * den^-1`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement, FieldError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Extension element from its coefficient vector over GF(p), low to high.
    /// Missing trailing coefficients are zero; each entry is reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.degree() {
            return Err(parse_err("field element", &format!("{coeffs:?}")));
        }
        match &self.0.kind {
            Kind::Rational => Err(parse_err("field element", &format!("{coeffs:?}"))),
            Kind::Prime { p } => Ok(FieldElement {
                field: *self,
                value: Value::Prime(coeffs.first().map_or(0, |c| c.rem_euclid(*p as i64) as u64)),
            }),
            Kind::Extension { p, .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for (slot, v) in c.iter_mut().zip(coeffs) {
                    *slot = v.rem_euclid(*p as i64) as u32;
                }
                Ok(FieldElement {
                    field: *self,
                    value: Value::Ext(c),
                })
            }
        }
    }

    /// The generator `T` of an extension (or `0`-th power basis element otherwise).
    pub fn generator(&self) -> FieldElement {
        match self.0.kind {
            Kind::Extension { .. } => self.from_coeffs(&[0, 1]).expect("degree >= 2"),
            _ => self.one(),
        }
    }

    /// Element at position `index` in enumeration order.
    pub fn element_at(&self, index: u64) -> Result<FieldElement, FieldError> {
        let q = self.small_order()?;
        if index >= q {
            return Err(parse_err("element index", &index.to_string()));
        }
        let value = match &self.0.kind {
            Kind::Prime { .. } => Value::Prime(index),
            Kind::Extension { p, k, .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                let mut rest = index;
                for slot in c.iter_mut().take(*k) {
                    *slot = (rest % p) as u32;
                    rest /= p;
                }
                Value::Ext(c)
            }
            Kind::Rational => unreachable!(),
        };
        Ok(FieldElement { field: *self, value })
    }

    /// All elements in ascending order of their base-p index (constant
    /// coefficient least significant).
    pub fn elements(&self) -> Result<Elements, FieldError> {
        let q = self.small_order()?;
        Ok(Elements {
            field: *self,
            next: 0,
            end: q,
        })
    }

    /// Uniform random element for finite fields; for the rationals, a
    /// fraction with numerator in [-1000, 1000] and denominator in [1, 1000].
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let value = match &self.0.kind {
            Kind::Prime { p } => Value::Prime(rng.gen_range(0..*p)),
            Kind::Extension { p, k, .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for slot in c.iter_mut().take(*k) {
                    *slot = rng.gen_range(0..*p) as u32;
                }
                Value::Ext(c)
            }
            Kind::Rational => Value::Rational(BigRational::new(
                BigInt::from(rng.gen_range(-1000i64..=1000)),
                BigInt::from(rng.gen_range(1i64..=1000)),
            )),
        };
        FieldElement { field: *self, value }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Parses an element literal: an integer (reduced into the field),
    /// `a/b` for rationals, or a comma vector `c0,c1,...` (optionally in
    /// square brackets) for extension fields.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let s = s.trim();
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| parse_err("field element", s));
        match &self.0.kind {
            Kind::Rational => match s.split_once('/') {
                Some((n, d)) => {
                    let d = int(d)?;
                    if d.is_zero() {
                        return Err(FieldError::DivisionByZero);
                    }
                    Ok(FieldElement {
                        field: *self,
                        value: Value::Rational(BigRational::new(int(n)?, d)),
                    })
                }
                None => Ok(self.from_bigint(&int(s)?)),
            },
            Kind::Prime { .. } => Ok(self.from_bigint(&int(s)?)),
            Kind::Extension { p, k, .. } => {
                let body = s
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .unwrap_or(s);
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() > *k {
                    return Err(parse_err("field element", s));
                }
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for (slot, part) in c.iter_mut().zip(&parts) {
                    *slot = reduce_bigint(&int(part)?, *p) as u32;
                }
                Ok(FieldElement {
                    field: *self,
                    value: Value::Ext(c),
                })
            }
        }
    }

    pub fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.field == *self {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.to_string(), a.field.to_string()))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Prime { p } => write!(f, "q({p})"),
            Kind::Extension { p, k, modulus } => {
                let m: Vec<String> = modulus.iter().map(u64::to_string).collect();
                write!(f, "q({p}^{k},m={})", m.join(","))
            }
            Kind::Rational => write!(f, "rational"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Elements {
    field: Field,
    next: u64,
    end: u64,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next == self.end {
            return None;
        }
        let e = self.field.element_at(self.next).ok();
        self.next += 1;
        e
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Value {
    Prime(u64),
    /// Coefficients over GF(p), low to high; entries at index >= k are zero.
    Ext([u32; MAX_EXTENSION_DEGREE]),
    Rational(BigRational),
}

/// An element of a [`Field`], stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl FieldElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Prime(v) => *v == 0,
            Value::Ext(c) => c.iter().all(|&x| x == 0),
            Value::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Position in the field's enumeration order (finite fields only).
    pub fn index(&self) -> Option<u64> {
        match (&self.value, &self.field.0.kind) {
            (Value::Prime(v), _) => Some(*v),
            (Value::Ext(c), Kind::Extension { p, k, .. }) => {
                let mut idx: u64 = 0;
                for &ci in c[..*k].iter().rev() {
                    idx = idx.checked_mul(*p)?.checked_add(ci as u64)?;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    /// Coefficients over the prime field (length k) for finite fields.
    pub fn coeffs(&self) -> Option<Vec<u64>> {
        match &self.value {
            Value::Prime(v) => Some(vec![*v]),
            Value::Ext(c) => Some(c[..self.field.degree()].iter().map(|&x| x as u64).collect()),
            Value::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) -> Field {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
        self.field
    }

    fn with(&self, value: Value) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        let field = self.same_field(other);
        let value = match (&self.value, &other.value, &field.0.kind) {
            (Value::Prime(a), Value::Prime(b), Kind::Prime { p }) => Value::Prime(add_mod(*a, *b, *p)),
            (Value::Ext(a), Value::Ext(b), Kind::Extension { p, k, .. }) => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..*k {
                    c[i] = add_mod(a[i] as u64, b[i] as u64, *p) as u32;
                }
                Value::Ext(c)
            }
            (Value::Rational(a), Value::Rational(b), _) => Value::Rational(a + b),
            _ => unreachable!("value does not match field kind"),
        };
        self.with(value)
    }

    fn neg_ref(&self) -> Self {
        let value = match (&self.value, &self.field.0.kind) {
            (Value::Prime(a), Kind::Prime { p }) => Value::Prime(neg_mod(*a, *p)),
            (Value::Ext(a), Kind::Extension { p, k, .. }) => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..*k {
                    c[i] = neg_mod(a[i] as u64, *p) as u32;
                }
                Value::Ext(c)
            }
            (Value::Rational(a), _) => Value::Rational(-a),
            _ => unreachable!("value does not match field kind"),
        };
        self.with(value)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let field = self.same_field(other);
        let value = match (&self.value, &other.value, &field.0.kind) {
            (Value::Prime(a), Value::Prime(b), Kind::Prime { p }) => Value::Prime(a * b % p),
            (Value::Ext(a), Value::Ext(b), Kind::Extension { p, k, modulus }) => {
                Value::Ext(ext_mul(a, b, *p, *k, modulus))
            }
            (Value::Rational(a), Value::Rational(b), _) => Value::Rational(a * b),
            _ => unreachable!("value does not match field kind"),
        };
        self.with(value)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match (&self.value, &self.field.0.kind) {
            (Value::Prime(a), Kind::Prime { p }) => Value::Prime(inv_mod(*a, *p)),
            (Value::Ext(a), Kind::Extension { p, k, modulus }) => {
                let poly: Vec<u64> = a[..*k].iter().map(|&x| x as u64).collect();
                let inv = gfp::inverse_mod(&poly, modulus, *p);
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for (slot, v) in c.iter_mut().zip(inv) {
                    *slot = v as u32;
                }
                Value::Ext(c)
            }
            (Value::Rational(a), _) => Value::Rational(a.recip()),
            _ => unreachable!("value does not match field kind"),
        };
        Ok(self.with(value))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check(other)?;
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc.mul_ref(self);
            }
        }
        acc
    }

    /// Some square root, if one exists in the field.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match &self.value {
            Value::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| self.with(Value::Rational(BigRational::new(n, d))))
            }
            _ => {
                let q = self.field.order().expect("finite");
                if self.field.characteristic() == 2 {
                    // squaring is a bijection; its inverse is x -> x^(q/2)
                    return Some(self.pow_big(&(q >> 1u32)));
                }
                tonelli_shanks(self, &q)
            }
        }
    }
}

fn tonelli_shanks(a: &FieldElement, q: &BigUint) -> Option<FieldElement> {
    let field = a.field;
    let one = field.one();
    let q1 = q - 1u32;
    let half = &q1 >> 1u32;
    if a.pow_big(&half) != one {
        return None;
    }
    let s = q1.trailing_zeros().expect("q - 1 > 0");
    let m = &q1 >> s;
    let minus_one = -&one;
    // deterministic search for a non-residue; half of all units qualify
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0);
    let z = loop {
        let z = field.random_nonzero(&mut rng);
        if z.pow_big(&half) == minus_one {
            break z;
        }
    };
    let mut c = z.pow_big(&m);
    let mut x = a.pow_big(&((&m + 1u32) >> 1u32));
    let mut t = a.pow_big(&m);
    let mut s = s;
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = t2.square();
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(s - i - 1) {
            b = b.square();
        }
        x = &x * &b;
        c = b.square();
        t = &t * &c;
        s = i;
    }
    Some(x)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn ext_mul(
    a: &[u32; MAX_EXTENSION_DEGREE],
    b: &[u32; MAX_EXTENSION_DEGREE],
    p: u64,
    k: usize,
    modulus: &[u64],
) -> [u32; MAX_EXTENSION_DEGREE] {
    if p < 1 << 16 {
        return ext_mul_small(a, b, p, k, modulus);
    }
    let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
    for i in 0..k {
        if a[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
        }
    }
    // modulus is monic: T^k = -sum m_i T^i
    for d in (k..2 * k - 1).rev() {
        let lead = prod[d];
        if lead == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..k {
            let sub = lead * modulus[i] % p;
            prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
        }
    }
    let mut out = [0; MAX_EXTENSION_DEGREE];
    for i in 0..k {
        out[i] = prod[i] as u32;
    }
    out
}

/// `ext_mul` for `p < 2^16`: products fit in 32 bits, so at most 2k of them
/// can be summed before reducing.
fn ext_mul_small(
    a: &[u32; MAX_EXTENSION_DEGREE],
    b: &[u32; MAX_EXTENSION_DEGREE],
    p: u64,
    k: usize,
    modulus: &[u64],
) -> [u32; MAX_EXTENSION_DEGREE] {
    let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] += a[i] as u64 * b[j] as u64;
        }
    }
    for d in (k..2 * k - 1).rev() {
        let lead = prod[d] % p;
        if lead == 0 {
            continue;
        }
        for i in 0..k {
            prod[d - k + i] += lead * (p - modulus[i]);
        }
    }
    let mut out = [0; MAX_EXTENSION_DEGREE];
    for i in 0..k {
        out[i] = (prod[i] % p) as u32;
    }
    out
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$imp(rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$imp(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$imp(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl FieldElement {
    fn div_ref(&self, other: &Self) -> Self {
        self.checked_div(other).expect("division by zero")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    /// Literal syntax: integers for GF(p), `[c0,...,ck-1]` for extensions,
    /// `n` or `n/d` for rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Prime(v) => write!(f, "{v}"),
            Value::Ext(c) => {
                let parts: Vec<String> = c[..self.field.degree()].iter().map(u32::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Value::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense polynomials over GF(p) as coefficient vectors, low to high. Used for
/// modulus validation and extension-field inversion.
mod gfp {
    pub(super) fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        super::inv_mod(a, p)
    }

    pub(super) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub(super) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// (quotient, remainder) of `a` by nonzero `b`.
    pub(super) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let d = r.len() - 1;
            let c = r[d] * lead_inv % p;
            q[d - db] = c;
            for (i, &bi) in b.iter().enumerate() {
                let idx = d - db + i;
                r[idx] = (r[idx] + p - c * bi % p) % p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub(super) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        x
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        divrem(&mul(a, b, p), m, p).1
    }

    /// `X^(p^i) mod m` iterated; Ben-Or: `m` is irreducible iff
    /// gcd(m, X^(p^i) - X) = 1 for every 1 <= i <= deg(m)/2.
    pub(super) fn is_irreducible(m: &[u64], p: u64) -> bool {
        let mut m = m.to_vec();
        trim(&mut m);
        let k = m.len() - 1;
        if k == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..k / 2 {
            // h <- h^p mod m
            let mut acc = vec![1u64];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &m, p);
                }
                base = mulmod(&base, &base, &m, p);
                e >>= 1;
            }
            h = acc;
            let g = gcd(&m, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of nonzero `a` modulo irreducible `m`, padded to deg(m) entries.
    pub(super) fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r0 is a nonzero constant
        let c = inv(r0[0], p);
        let mut out: Vec<u64> = t0.iter().map(|x| x * c % p).collect();
        out.resize(m.len() - 1, 0);
        out
    }
}
