//! The coordinate ring F[X, Y]/(W): reduced forms, the norm to F[X], and the
//! Smith normal form of the multiplication matrix, whose diagonal measures
//! the dimension of the quotient by a principal ideal.
//!
//! cargo run --example coordinate_ring

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weierstrass::coordring::{smith_normal_form, CoordRingElem};
use weierstrass::curve::WeierstrassCurve;
use weierstrass::fields::Field;
use weierstrass::poly::UniPoly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = Field::prime(101);
    let curve = WeierstrassCurve::from_ints(field, [1, 0, 1, -1, 0]);
    println!("curve {curve} over {field}");

    let x = UniPoly::x(field);
    let f = CoordRingElem::new(&x - &UniPoly::constant(field.from_i64(1)), UniPoly::one(field))?;
    let y = CoordRingElem::y(field);
    println!("f = {f}");
    println!("Y * Y reduces to {}", curve.crmul(&y, &y)?);
    println!("Nm(f) = {} (degree {})", curve.norm(&f)?, curve.norm_degree(&f)?);
    println!("Nm(Y) = {} (degree 3, never 1)", curve.norm(&y)?);

    let m = curve.mult_matrix(&f)?;
    let s = smith_normal_form(&m)?;
    println!("multiplication matrix {m}");
    println!("Smith form diag({}, {}), unit {}", s.d1, s.d2, s.unit);
    println!("U * M * V = {}", s.replay(&m));
    println!("dim F[X,Y]/(W, f) = {}", curve.quotient_dim(&f)?);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = CoordRingElem::random(field, 3, &mut rng);
    let fg = curve.crmul(&f, &g)?;
    let lhs = curve.norm(&fg)?;
    let rhs = &curve.norm(&f)? * &curve.norm(&g)?;
    println!("g = {g}\nNm(fg) = Nm(f) Nm(g): {}", lhs == rhs);
    Ok(())
}
