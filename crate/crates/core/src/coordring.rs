//! The coordinate ring `F[W] = F[X, Y] / <W(X, Y)>` as a free `F[X]`-module
//! with basis `{1, Y}`: canonical residues, multiplication, the norm, and
//! 2x2 Smith normal form over `F[X]`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::curve::WeierstrassCurve;
use crate::fields::{Field, FieldElement};
use crate::poly::{BiPoly, Degree, PolyError, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoordRingError {
    #[error("matrix has zero determinant")]
    SingularMatrix,
    #[error("the zero element generates the zero ideal")]
    ZeroElement,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_field(a: Field, b: Field) -> Result<(), CoordRingError> {
    if a == b {
        Ok(())
    } else {
        Err(PolyError::FieldMismatch(a.to_string(), b.to_string()).into())
    }
}

/// Residue `p(X) + q(X) Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoordRingElem {
    p: UniPoly,
    q: UniPoly,
}

impl CoordRingElem {
    pub fn new(p: UniPoly, q: UniPoly) -> Result<Self, CoordRingError> {
        check_field(p.field(), q.field())?;
        Ok(CoordRingElem { p, q })
    }

    pub fn zero(field: Field) -> Self {
        CoordRingElem {
            p: UniPoly::zero(field),
            q: UniPoly::zero(field),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_poly(UniPoly::one(field))
    }

    pub fn y(field: Field) -> Self {
        CoordRingElem {
            p: UniPoly::zero(field),
            q: UniPoly::one(field),
        }
    }

    /// `p(X)` viewed in the ring.
    pub fn from_poly(p: UniPoly) -> Self {
        let q = UniPoly::zero(p.field());
        CoordRingElem { p, q }
    }

    /// Both components uniform of degree at most `max_degree`.
    pub fn random<R: rand::Rng + ?Sized>(field: Field, max_degree: usize, rng: &mut R) -> Self {
        CoordRingElem {
            p: UniPoly::random(field, max_degree, rng),
            q: UniPoly::random(field, max_degree, rng),
        }
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    pub fn p(&self) -> &UniPoly {
        &self.p
    }

    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// The representative `p + q Y` in `F[X][Y]`.
    pub fn to_bipoly(&self) -> BiPoly {
        BiPoly::new(self.field(), vec![self.p.clone(), self.q.clone()]).expect("same field")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CoordRingError> {
        Ok(CoordRingElem {
            p: self.p.checked_add(&other.p)?,
            q: self.q.checked_add(&other.q)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CoordRingError> {
        Ok(CoordRingElem {
            p: self.p.checked_sub(&other.p)?,
            q: self.q.checked_sub(&other.q)?,
        })
    }
}

impl fmt::Display for CoordRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*Y", self.p, self.q)
    }
}

impl fmt::Debug for CoordRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CoordRingElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            p: Vec<String>,
            q: Vec<String>,
        }
        let strings = |u: &UniPoly| u.coeffs().iter().map(ToString::to_string).collect();
        Repr {
            p: strings(&self.p),
            q: strings(&self.q),
        }
        .serialize(serializer)
    }
}

/// A 2x2 matrix over `F[X]`, `entries[row][col]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix2 {
    entries: [[UniPoly; 2]; 2],
}

impl PolyMatrix2 {
    pub fn new(entries: [[UniPoly; 2]; 2]) -> Result<Self, CoordRingError> {
        let field = entries[0][0].field();
        for e in entries.iter().flatten() {
            check_field(field, e.field())?;
        }
        Ok(PolyMatrix2 { entries })
    }

    pub fn from_ints(field: Field, entries: [[&[i64]; 2]; 2]) -> Self {
        PolyMatrix2 {
            entries: entries.map(|row| row.map(|e| UniPoly::from_ints(field, e))),
        }
    }

    pub fn identity(field: Field) -> Self {
        Self::diagonal(UniPoly::one(field), UniPoly::one(field))
    }

    pub fn diagonal(a: UniPoly, b: UniPoly) -> Self {
        let z = UniPoly::zero(a.field());
        PolyMatrix2 {
            entries: [[a, z.clone()], [z, b]],
        }
    }

    pub fn field(&self) -> Field {
        self.entries[0][0].field()
    }

    pub fn entry(&self, row: usize, col: usize) -> &UniPoly {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[[UniPoly; 2]; 2] {
        &self.entries
    }

    pub fn det(&self) -> UniPoly {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CoordRingError> {
        check_field(self.field(), other.field())?;
        let (a, b) = (&self.entries, &other.entries);
        let cell = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Ok(PolyMatrix2 {
            entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[0][1].is_zero() && self.entries[1][0].is_zero()
    }

    /// Applies one elementary operation in place.
    pub fn apply(&mut self, op: &SnfOp) {
        let e = &mut self.entries;
        match op {
            SnfOp::SwapRows => e.swap(0, 1),
            SnfOp::SwapCols => {
                for row in e.iter_mut() {
                    row.swap(0, 1);
                }
            }
            SnfOp::AddRow { to, factor } => {
                let from = 1 - to;
                let add = [factor * &e[from][0], factor * &e[from][1]];
                for (x, a) in e[*to].iter_mut().zip(&add) {
                    *x = &*x + a;
                }
            }
            SnfOp::AddCol { to, factor } => {
                let from = 1 - to;
                for row in e.iter_mut() {
                    let add = factor * &row[from];
                    row[*to] = &row[*to] + &add;
                }
            }
            SnfOp::ScaleRow { row, factor } => {
                for x in e[*row].iter_mut() {
                    *x = x.scale(factor);
                }
            }
        }
    }
}

impl fmt::Display for PolyMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

impl fmt::Debug for PolyMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Unimodular elementary operation over `F[X]`. Row operations act on the
/// left, column operations on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnfOp {
    SwapRows,
    SwapCols,
    /// `row[to] += factor * row[1 - to]`
    AddRow { to: usize, factor: UniPoly },
    /// `col[to] += factor * col[1 - to]`
    AddCol { to: usize, factor: UniPoly },
    /// `row[row] *= factor`, with `factor` a nonzero constant.
    ScaleRow { row: usize, factor: FieldElement },
}

impl SnfOp {
    fn is_row_op(&self) -> bool {
        !matches!(self, SnfOp::SwapCols | SnfOp::AddCol { .. })
    }
}

/// `U M V = diag(d1, d2)` with `d1 | d2` monic and `det M = unit * d1 * d2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d1: UniPoly,
    pub d2: UniPoly,
    pub unit: FieldElement,
    pub ops: Vec<SnfOp>,
}

impl SmithForm {
    /// Replays the recorded operations on `m`.
    pub fn replay(&self, m: &PolyMatrix2) -> PolyMatrix2 {
        let mut m = m.clone();
        for op in &self.ops {
            m.apply(op);
        }
        m
    }

    /// `U`, the product of the recorded row operations.
    pub fn left(&self) -> PolyMatrix2 {
        let mut u = PolyMatrix2::identity(self.d1.field());
        for op in self.ops.iter().filter(|op| op.is_row_op()) {
            u.apply(op);
        }
        u
    }

    /// `V`, the product of the recorded column operations.
    pub fn right(&self) -> PolyMatrix2 {
        let mut v = PolyMatrix2::identity(self.d1.field());
        for op in self.ops.iter().filter(|op| !op.is_row_op()) {
            v.apply(op);
        }
        v
    }

    pub fn diagonal(&self) -> PolyMatrix2 {
        PolyMatrix2::diagonal(self.d1.clone(), self.d2.clone())
    }
}

/// Smith normal form of a nonsingular 2x2 matrix over `F[X]`. Pivots on a
/// nonzero entry of least degree, ties broken row-major.
pub fn smith_normal_form(m: &PolyMatrix2) -> Result<SmithForm, CoordRingError> {
    let det = m.det();
    let unit = det.leading_coeff().ok_or(CoordRingError::SingularMatrix)?.clone();
    let mut m = m.clone();
    let mut ops = Vec::new();
    let mut push = |m: &mut PolyMatrix2, op: SnfOp| {
        m.apply(&op);
        ops.push(op);
    };
    const CELLS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
    loop {
        let (r, c) = CELLS
            .into_iter()
            .filter(|&(r, c)| !m.entry(r, c).is_zero())
            .min_by_key(|&(r, c)| m.entry(r, c).degree())
            .expect("nonsingular matrix has a nonzero entry");
        if r == 1 {
            push(&mut m, SnfOp::SwapRows);
        }
        if c == 1 {
            push(&mut m, SnfOp::SwapCols);
        }
        if !m.entry(1, 0).is_zero() {
            let (q, rem) = m.entry(1, 0).div_rem(m.entry(0, 0))?;
            push(&mut m, SnfOp::AddRow { to: 1, factor: -q });
            if !rem.is_zero() {
                continue;
            }
        }
        if !m.entry(0, 1).is_zero() {
            let (q, rem) = m.entry(0, 1).div_rem(m.entry(0, 0))?;
            push(&mut m, SnfOp::AddCol { to: 1, factor: -q });
            if !rem.is_zero() {
                continue;
            }
        }
        let (_, rem) = m.entry(1, 1).div_rem(m.entry(0, 0))?;
        if !rem.is_zero() {
            let one = UniPoly::one(m.field());
            push(&mut m, SnfOp::AddRow { to: 0, factor: one });
            continue;
        }
        break;
    }
    for row in 0..2 {
        let lc = m.entry(row, row).leading_coeff().expect("nonzero diagonal").clone();
        push(&mut m, SnfOp::ScaleRow { row, factor: lc.inv().expect("nonzero") });
    }
    let [[d1, _], [_, d2]] = m.entries;
    Ok(SmithForm { d1, d2, unit, ops })
}

impl WeierstrassCurve {
    /// Remainder of `w` under division by `W(X, Y)` in `Y`.
    pub fn reduce(&self, w: &BiPoly) -> Result<CoordRingElem, CoordRingError> {
        check_field(self.field(), w.field())?;
        let (_, r) = w.divmod_monic(self.polynomial())?;
        Ok(CoordRingElem {
            p: r.ycoeff(0),
            q: r.ycoeff(1),
        })
    }

    /// Product in `F[W]`, using `Y^2 = (X^3 + a2 X^2 + a4 X + a6) - (a1 X + a3) Y`.
    pub fn crmul(&self, f: &CoordRingElem, g: &CoordRingElem) -> Result<CoordRingElem, CoordRingError> {
        check_field(self.field(), f.field())?;
        check_field(self.field(), g.field())?;
        let qq = &f.q * &g.q;
        Ok(CoordRingElem {
            p: &(&f.p * &g.p) + &(&qq * &self.cubic()),
            q: &(&(&f.p * &g.q) + &(&f.q * &g.p)) - &(&qq * &self.linear()),
        })
    }

    /// `Nm(p + q Y) = p^2 - p q (a1 X + a3) - q^2 (X^3 + a2 X^2 + a4 X + a6)`.
    pub fn norm(&self, f: &CoordRingElem) -> Result<UniPoly, CoordRingError> {
        check_field(self.field(), f.field())?;
        let (p, q) = (&f.p, &f.q);
        Ok(&(&(p * p) - &(&(p * q) * &self.linear())) - &(&(q * q) * &self.cubic()))
    }

    pub fn norm_degree(&self, f: &CoordRingElem) -> Result<Degree, CoordRingError> {
        Ok(self.norm(f)?.degree())
    }

    /// Matrix of multiplication by `f` in the basis `{1, Y}`; column `j` holds
    /// the coordinates of `f * 1` and `f * Y`.
    pub fn mult_matrix(&self, f: &CoordRingElem) -> Result<PolyMatrix2, CoordRingError> {
        let fy = self.crmul(f, &CoordRingElem::y(self.field()))?;
        Ok(PolyMatrix2 {
            entries: [[f.p.clone(), fy.p], [f.q.clone(), fy.q]],
        })
    }

    /// `dim_F F[W] / <f>`, as `deg d1 + deg d2` of the Smith form of the
    /// multiplication matrix.
    pub fn quotient_dim(&self, f: &CoordRingElem) -> Result<usize, CoordRingError> {
        if f.is_zero() {
            return Err(CoordRingError::ZeroElement);
        }
        let s = smith_normal_form(&self.mult_matrix(f)?)?;
        let deg = |d: &UniPoly| d.degree().finite().expect("nonzero invariant factor");
        Ok(deg(&s.d1) + deg(&s.d2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf5_curve() -> WeierstrassCurve {
        WeierstrassCurve::from_ints(Field::prime(5), [0, 0, 0, 1, 1])
    }

    fn elem(field: Field, p: &[i64], q: &[i64]) -> CoordRingElem {
        CoordRingElem::new(UniPoly::from_ints(field, p), UniPoly::from_ints(field, q)).unwrap()
    }

    /// `max(2 deg p, 2 deg q + 3)`.
    fn degree_law(f: &CoordRingElem) -> Degree {
        f.p().degree().scale(2).max(f.q().degree().scale(2) + 3)
    }

    fn check_smith(m: &PolyMatrix2, s: &SmithForm) {
        assert!(s.d1.is_monic() && s.d2.is_monic());
        assert!(s.d2.div_rem(&s.d1).unwrap().1.is_zero());
        assert_eq!(m.det(), (&s.d1 * &s.d2).scale(&s.unit));
        assert_eq!(s.replay(m), s.diagonal());
        let (u, v) = (s.left(), s.right());
        assert_eq!(u.checked_mul(m).unwrap().checked_mul(&v).unwrap(), s.diagonal());
        assert_eq!(u.det().degree(), Degree::Finite(0));
        assert_eq!(v.det().degree(), Degree::Finite(0));
    }

    #[test]
    fn reduce_examples() {
        let w = WeierstrassCurve::from_ints(Field::prime(7), [1, 2, 3, 4, 5]);
        let f = w.field();
        assert!(w.reduce(w.polynomial()).unwrap().is_zero());
        let y2 = &BiPoly::y(f) * &BiPoly::y(f);
        assert_eq!(w.reduce(&y2).unwrap(), CoordRingElem::new(w.cubic(), -w.linear()).unwrap());
        let p = UniPoly::from_ints(f, &[1, 2, 3, 4]);
        assert_eq!(w.reduce(&BiPoly::constant(p.clone())).unwrap(), CoordRingElem::from_poly(p));
    }

    #[test]
    fn crmul_examples() {
        let w = gf5_curve();
        let f = w.field();
        let y = CoordRingElem::y(f);
        assert_eq!(w.crmul(&y, &y).unwrap(), CoordRingElem::new(w.cubic(), -w.linear()).unwrap());
        let g = elem(f, &[1, 2], &[3]);
        assert_eq!(w.crmul(&g, &CoordRingElem::one(f)).unwrap(), g);
    }

    #[test]
    fn crmul_matches_reduced_product() {
        for field in [Field::prime(101), Field::extension(2, 4)] {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            for _ in 0..1000 {
                let w = WeierstrassCurve::random(field, &mut rng);
                let f = CoordRingElem::random(field, 4, &mut rng);
                let g = CoordRingElem::random(field, 4, &mut rng);
                let oracle = w.reduce(&(&f.to_bipoly() * &g.to_bipoly())).unwrap();
                assert_eq!(w.crmul(&f, &g).unwrap(), oracle);
            }
        }
    }

    #[test]
    fn norm_examples() {
        let w = gf5_curve();
        let f = w.field();
        let c = f.from_i64(3);
        assert_eq!(w.norm(&CoordRingElem::from_poly(UniPoly::constant(c.clone()))).unwrap(), UniPoly::constant(&c * &c));
        assert_eq!(w.norm(&CoordRingElem::y(f)).unwrap(), -w.cubic());
        let x_plus_y = elem(f, &[0, 1], &[1]);
        assert_eq!(w.norm(&x_plus_y).unwrap(), UniPoly::from_ints(f, &[4, 4, 1, 4]));
        assert_eq!(w.norm_degree(&x_plus_y).unwrap(), Degree::Finite(3));
        assert_eq!(w.norm_degree(&CoordRingElem::y(f)).unwrap(), Degree::Finite(3));
        assert_eq!(w.norm_degree(&CoordRingElem::zero(f)).unwrap(), Degree::NegInf);
    }

    #[test]
    fn mult_matrix_examples() {
        let w = WeierstrassCurve::from_ints(Field::prime(11), [1, 2, 3, 4, 5]);
        let f = w.field();
        let x = CoordRingElem::from_poly(UniPoly::x(f));
        assert_eq!(w.mult_matrix(&x).unwrap(), PolyMatrix2::diagonal(UniPoly::x(f), UniPoly::x(f)));
        let m = w.mult_matrix(&CoordRingElem::y(f)).unwrap();
        assert_eq!((m.entry(0, 0), m.entry(1, 0)), (&UniPoly::zero(f), &UniPoly::one(f)));
        assert_eq!((m.entry(0, 1), m.entry(1, 1)), (&w.cubic(), &-w.linear()));
    }

    #[test]
    fn smith_examples() {
        let f = Field::prime(7);
        let x = UniPoly::x(f);
        let d = PolyMatrix2::diagonal(x.clone(), x.clone());
        let s = smith_normal_form(&d).unwrap();
        assert_eq!((&s.d1, &s.d2), (&x, &x));
        check_smith(&d, &s);

        let m = PolyMatrix2::from_ints(f, [[&[], &[1]], [&[0, 1], &[]]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!((s.d1.clone(), s.d2.clone()), (UniPoly::one(f), x));
        check_smith(&m, &s);

        let w = WeierstrassCurve::from_ints(f, [1, 2, 3, 4, 5]);
        let m = w.mult_matrix(&CoordRingElem::y(f)).unwrap();
        let s = smith_normal_form(&m).unwrap();
        assert_eq!((s.d1.clone(), s.d2.clone()), (UniPoly::one(f), w.cubic()));
        check_smith(&m, &s);

        let z = PolyMatrix2::from_ints(f, [[&[1], &[2]], [&[2], &[4]]]);
        assert_eq!(smith_normal_form(&z), Err(CoordRingError::SingularMatrix));
    }

    #[test]
    fn smith_needs_divisibility_step() {
        // diag(X, X + 1): coprime entries, so d1 = 1 and d2 = X(X + 1)
        let f = Field::prime(5);
        let m = PolyMatrix2::from_ints(f, [[&[0, 1], &[]], [&[], &[1, 1]]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.d1, UniPoly::one(f));
        assert_eq!(s.d2, UniPoly::from_ints(f, &[0, 1, 1]));
        check_smith(&m, &s);
    }

    #[test]
    fn quotient_dim_examples() {
        let w = gf5_curve();
        let f = w.field();
        assert_eq!(w.quotient_dim(&CoordRingElem::y(f)).unwrap(), 3);
        assert_eq!(w.quotient_dim(&elem(f, &[2], &[])).unwrap(), 0);
        assert_eq!(w.quotient_dim(&elem(f, &[0, 1], &[1])).unwrap(), 3);
        assert_eq!(w.quotient_dim(&CoordRingElem::zero(f)), Err(CoordRingError::ZeroElement));
    }

    #[test]
    fn norm_properties_randomized() {
        for field in [Field::prime(101), Field::extension(2, 4), Field::extension(3, 2)] {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            for i in 0..1000 {
                let w = WeierstrassCurve::random(field, &mut rng);
                let mut f = CoordRingElem::random(field, 1 + i % 5, &mut rng);
                match i % 10 {
                    0 => f.p = UniPoly::zero(field),
                    1 => f.q = UniPoly::zero(field),
                    2 => f = CoordRingElem::zero(field),
                    _ => {}
                }
                let g = CoordRingElem::random(field, 3, &mut rng);
                let nf = w.norm(&f).unwrap();
                assert_eq!(nf.degree(), degree_law(&f), "degree law for {f}");
                assert_ne!(nf.degree(), Degree::Finite(1));
                assert_eq!(w.mult_matrix(&f).unwrap().det(), nf);
                let fg = w.crmul(&f, &g).unwrap();
                assert_eq!(w.norm(&fg).unwrap(), &nf * &w.norm(&g).unwrap());
                if !f.is_zero() {
                    assert!(!nf.is_zero());
                    let m = w.mult_matrix(&f).unwrap();
                    let s = smith_normal_form(&m).unwrap();
                    check_smith(&m, &s);
                    assert_eq!(Degree::Finite(w.quotient_dim(&f).unwrap()), nf.degree());
                    if !g.is_zero() {
                        assert!(!fg.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let w = gf5_curve();
        let other = CoordRingElem::y(Field::prime(7));
        assert!(matches!(w.norm(&other), Err(CoordRingError::Poly(PolyError::FieldMismatch(..)))));
        assert!(CoordRingElem::new(UniPoly::one(Field::prime(5)), UniPoly::one(Field::prime(7))).is_err());
    }

    #[test]
    fn json_shape() {
        let f = Field::prime(5);
        let e = elem(f, &[1, 0, 3], &[]);
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"p":["1","0","3"],"q":[]}"#);
        assert_eq!(e.to_string(), "(1 + 3*X^2) + (0)*Y");
    }
}
