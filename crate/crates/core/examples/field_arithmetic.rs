//! Arithmetic in the supported fields: prime fields, extension fields given
//! by a modulus, and the rationals.
//!
//! cargo run --example field_arithmetic -- "q(3^2)"

use weierstrass::fields::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "q(2^4)".into());
    let field = Field::parse(&spec)?;
    println!("field {field}: characteristic {}, degree {}", field.characteristic(), field.degree());

    let g = field.generator();
    let a = field.from_i64(3) + &g;
    println!("g = {g}, a = 3 + g = {a}");
    println!("a^2 = {}, a^-1 = {}", a.square(), a.inv()?);
    println!("a * a^-1 = {}", &a * &a.inv()?);
    if let Some(r) = a.sqrt() {
        println!("sqrt(a) = {r} (check: {})", r.square());
    } else {
        println!("a is not a square");
    }

    if let Ok(q) = field.small_order() {
        let units = field.elements()?.filter(|x| !x.is_zero()).count();
        let fermat = field.elements()?.filter(|x| !x.is_zero()).all(|x| x.pow(q - 1).is_one());
        println!("{units} units, x^(q-1) = 1 for all of them: {fermat}");
    }

    let qq = Field::rational();
    let half = qq.from_ratio(1, 2)?;
    println!("over {qq}: 1/2 + 1/3 = {}", &half + &qq.from_ratio(1, 3)?);
    Ok(())
}
