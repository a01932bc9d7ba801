//! Lifts Levi-movable point tuples along a subsystem embedding and checks
//! that every image is again Levi-movable with non-zero multiplicity.
//!
//! `cargo run --example subcone -- c-in-c 3 2 3`

use liecone::eigencone::verify_subeigencone;
use liecone::EmbeddingCase;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, d: usize| args.get(i).map(|s| s.parse::<usize>()).transpose().map(|v| v.unwrap_or(d));
    let case = match args.first().map(String::as_str).unwrap_or("c-in-c") {
        "c-in-c" => EmbeddingCase::CInC { r: num(1, 3)?, s: num(2, 2)? },
        "b-in-b" => EmbeddingCase::BInB { r: num(1, 3)?, s: num(2, 2)? },
        "g2-in-f4" => EmbeddingCase::G2InF4,
        other => return Err(format!("unknown case {other}").into()),
    };
    let n = num(3, 3)?;
    let report = verify_subeigencone(case, n, 2_000_000)?;
    for pair in &report.pairs {
        println!("Q{} -> P{}: {} tuples, {} failures", pair.q, pair.p, pair.rows.len(), pair.failures);
        for row in pair.rows.iter().take(5) {
            println!("  {:?} -> {:?} (m = {})", row.sub_words, row.ambient_words, row.ambient_multiplicity);
        }
    }
    println!("{}: {}", report.case, if report.ok() { "ok" } else { "FAILED" });
    Ok(())
}
