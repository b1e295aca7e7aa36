//! Certifies the polynomial identities behind the group law: exactly over
//! the integers, then by seeded random trials over a prime or any finite
//! field.
//!
//! cargo run --release --example identity_certification -- "q(2^4)" 500

use weierstrass::fields::Field;
use weierstrass::identities::{check_exact_suite, check_randomized_suite_over, cross_engine_check, DEFAULT_SEED};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field = Field::parse(&args.next().unwrap_or_else(|| "q(2147483647)".into()))?;
    let trials: u64 = args.next().map_or(Ok(1000), |s| s.parse())?;

    for r in check_exact_suite() {
        let sign = r.sign.map(|s| format!(" sign {s}")).unwrap_or_default();
        println!("{:<4} {:?}{sign} residual {}  {}", r.id, r.status, r.residual, r.note);
    }
    for r in check_randomized_suite_over(field, trials, DEFAULT_SEED)? {
        println!("{:<4} {:?} over {field}, {trials} trials", r.id, r.status);
        if let Some(c) = &r.counterexample {
            println!("     counterexample: {c}");
        }
    }
    let p = field.characteristic();
    if p > 0 {
        let mismatches = cross_engine_check(p, 50, DEFAULT_SEED)?;
        println!("symbolic vs curve arithmetic mod {p}: {} mismatches", mismatches.len());
    }
    Ok(())
}
