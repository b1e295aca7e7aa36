//! Point counts, element orders and the group structure of a curve over a
//! finite field.
//!
//! cargo run --example group_structure -- "q(5)" "0,0,0,1,1"

use weierstrass::curve::WeierstrassCurve;
use weierstrass::fields::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field = Field::parse(&args.next().unwrap_or_else(|| "q(5)".into()))?;
    let curve = WeierstrassCurve::parse(field, &args.next().unwrap_or_else(|| "0,0,0,1,1".into()))?;
    if !curve.is_elliptic() {
        return Err(format!("{curve} is singular over {field}").into());
    }

    let points = curve.points()?;
    let g = curve.group_structure()?;
    let q = field.small_order()? as i64;
    let trace = q + 1 - g.order as i64;
    println!("curve {curve} over {field}: {} points, trace {trace}", g.order);
    println!("Hasse bound: {} <= {}", trace * trace, 4 * q);
    let (d1, d2) = g.invariant_factors;
    println!("structure Z/{d1} x Z/{d2} ({})", if g.is_cyclic() { "cyclic" } else { "not cyclic" });
    for p in &points {
        println!("  {:>16}  order {}", p.to_string(), curve.point_order(p, g.order)?);
    }
    Ok(())
}
