//! Prints an eigencone inequality system as JSON.
//!
//! `cargo run --example inequalities -- Sp(4) 3 levi`

use liecone::eigencone::{generate_inequalities, Tier};
use liecone::rootsys::parse_group;
use liecone::RootSystem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(4)"))?;
    let n: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let tier: Tier = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(Tier::Levi);
    let rs = RootSystem::build(kind, rank)?;
    let sys = generate_inequalities(&rs, n, tier)?;
    println!("{}", serde_json::to_string_pretty(&sys.to_doc())?);
    eprintln!("{} inequalities for {} (n = {n}, tier = {tier})", sys.len(), sys.label());
    Ok(())
}
