//! The chord-and-tangent group law on affine points, with `O` as identity.
//!
//! cargo run --example point_arithmetic -- "q(101)" "0,0,0,2,3"

use weierstrass::curve::{VariableChange, WeierstrassCurve};
use weierstrass::fields::Field;
use weierstrass::points::Point;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field = Field::parse(&args.next().unwrap_or_else(|| "rational".into()))?;
    let curve = WeierstrassCurve::parse(field, &args.next().unwrap_or_else(|| "0,0,1,-1,0".into()))?;

    let (p, q) = if field.is_finite() {
        let pts = curve.points()?;
        let affine: Vec<_> = pts.into_iter().filter(|p| !p.is_zero()).collect();
        let p = affine.first().ok_or("curve has no affine points")?.clone();
        let q = affine.iter().find(|q| q.coords().map(|c| c.0) != p.coords().map(|c| c.0));
        let q = q.unwrap_or(&p).clone();
        (p, q)
    } else {
        (Point::parse(&curve, "0,0")?, Point::parse(&curve, "1,0")?)
    };

    println!("curve {curve} over {field}");
    println!("P = {p}, Q = {q}");
    println!("P + Q = {}", curve.add(&p, &q)?);
    println!("P - Q = {}", curve.sub(&p, &q)?);
    println!("-P = {}", curve.neg(&p)?);
    for n in [2, 3, -5] {
        println!("[{n}]P = {}", curve.smul(n, &p)?);
    }
    println!("P + O = {}", curve.add(&p, &Point::Zero)?);
    println!("P + (-P) = {}", curve.add(&p, &curve.neg(&p)?)?);

    let c = VariableChange::translation(&field.from_i64(1), &field.from_i64(2));
    let target = curve.variable_change(&c);
    let image = curve.map_point(&c, &p)?;
    println!("translated curve {target}: P maps to {image}");
    Ok(())
}
