//! Checks the B/C projection of eigencones on a grid.
//!
//! `cargo run --example projection -- [C|B] r s n bound`

use liecone::eigencone::verify_projection;
use liecone::CartanType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: CartanType = args.first().map(|s| s.parse()).transpose()?.unwrap_or(CartanType::C);
    let num = |i: usize, d: usize| args.get(i).map(|s| s.parse()).transpose().map(|x| x.unwrap_or(d));
    let (r, s, n) = (num(1, 3)?, num(2, 2)?, num(3, 3)?);
    let bound = args.get(4).map(|s| s.parse()).transpose()?.unwrap_or(3i64);
    let rep = verify_projection(kind, r, s, n, bound)?;
    println!("{}", serde_json::to_string_pretty(&rep)?);
    println!("{}", if rep.ok() { "ok" } else { "FAILED" });
    Ok(())
}
