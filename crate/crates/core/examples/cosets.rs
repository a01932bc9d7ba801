//! Minimal coset representatives of W/W_P with their Poincaré duals.
//!
//! `cargo run --example cosets -- "Sp(6)" 2`

use liecone::rootsys::parse_group;
use liecone::weyl::{dual_rep, minimal_coset_reps, DEFAULT_GROUP_CAP};
use liecone::{ParabolicSpec, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(6)"))?;
    let p: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(rank);
    let rs = RootSystem::build(kind, rank)?;
    let par = ParabolicSpec::maximal(&rs, p)?;
    let reps = minimal_coset_reps(&par, DEFAULT_GROUP_CAP)?;
    println!("{}: {} cosets, dim {}", par.label(), reps.len(), par.dim());
    for w in &reps {
        let d = dual_rep(w, &par)?;
        println!("{:>3}  {:<24} dual {}", w.length(), w.word_string(), d.word_string());
    }
    Ok(())
}
