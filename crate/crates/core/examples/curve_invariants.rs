//! Invariants of a Weierstrass curve and how the discriminant transforms
//! under an admissible change of variables.
//!
//! cargo run --example curve_invariants -- "q(7)" "1,2,3,4,5"

use weierstrass::curve::{VariableChange, WeierstrassCurve};
use weierstrass::fields::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field = Field::parse(&args.next().unwrap_or_else(|| "rational".into()))?;
    let curve = WeierstrassCurve::parse(field, &args.next().unwrap_or_else(|| "0,0,1,-1,0".into()))?;

    let inv = curve.invariants();
    println!("curve {curve} over {field}");
    println!("b2 = {}, b4 = {}, b6 = {}, b8 = {}", inv.b2, inv.b4, inv.b6, inv.b8);
    println!("discriminant = {} ({})", inv.delta, if curve.is_elliptic() { "elliptic" } else { "singular" });

    let two = field.from_i64(2);
    let u = if two.is_zero() { field.one() } else { two };
    let c = VariableChange::new(u, field.from_i64(1), field.from_i64(-1), field.from_i64(3))?;
    let moved = curve.variable_change(&c);
    let expected = c.u().inv()?.pow(12) * curve.discriminant();
    println!("after {c:?}:");
    println!("  curve {moved}, discriminant {} (u^-12 * old = {expected})", moved.discriminant());

    if let Some(c) = curve.complete_square() {
        let short = curve.variable_change(&c);
        println!("a1 = a3 = 0 form: {short}");
        if let Some(c) = short.complete_cube() {
            println!("short form: {}", short.variable_change(&c));
        }
    } else {
        println!("characteristic 2: no completed square");
    }
    Ok(())
}
