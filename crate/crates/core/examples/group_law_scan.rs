//! Verifies the group axioms on every curve over a small field, or on a
//! seeded sample for larger ones.
//!
//! cargo run --release --example group_law_scan -- "q(2^3)" [sample-count]

use std::time::Instant;

use weierstrass::fields::Field;
use weierstrass::scan::{group_law_scan, smoothness_scan, Selection};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let field = Field::parse(&args.next().unwrap_or_else(|| "q(5)".into()))?;
    let selection = match args.next() {
        Some(n) => Selection::Sample { count: n.parse()?, seed: 0 },
        None => Selection::All,
    };

    let start = Instant::now();
    let g = group_law_scan(field, selection)?;
    println!(
        "group law over {}: {} curves ({} singular), {} points, {} triples, {} failures [{:.2?}]",
        g.field, g.curves, g.singular_curves, g.points, g.triples, g.failure_count, start.elapsed()
    );
    for f in &g.failures {
        println!("  {} on {}: {}", f.property, f.curve, f.detail);
    }

    let start = Instant::now();
    let s = smoothness_scan(field, selection)?;
    println!(
        "smoothness over {}: {} elliptic of {} curves, {} on-curve points, {} exceptions [{:.2?}]",
        s.field, s.elliptic_curves, s.curves, s.on_curve_points, s.exception_count, start.elapsed()
    );
    Ok(())
}
