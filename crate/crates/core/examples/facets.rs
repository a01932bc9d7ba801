//! Compares the Levi-movable and the full non-zero inequality systems on a
//! grid, then searches for a witness point on each Levi facet.
//!
//! `cargo run --example facets -- G2 3 3`

use liecone::eigencone::{compare_regions, facet_witnesses, generate_inequalities, Tier};
use liecone::rootsys::parse_group;
use liecone::RootSystem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(4)"))?;
    let n: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let bound: i64 = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let rs = RootSystem::build(kind, rank)?;
    let levi = generate_inequalities(&rs, n, Tier::Levi)?;
    let full = generate_inequalities(&rs, n, Tier::Nonzero)?;
    let region = compare_regions(&levi, &full, bound)?;
    println!(
        "{}: {} levi vs {} nonzero inequalities; {} grid points, {} members, {} disagreements",
        levi.label(),
        levi.len(),
        full.len(),
        region.points,
        region.members,
        region.disagreements
    );
    let witnesses = facet_witnesses(&levi, bound + 1)?;
    for w in &witnesses {
        let q = &levi.inequalities[w.index];
        match &w.point {
            Some(p) => println!("P{} {:?}: witness {}", q.parabolic, q.words, p.join(",")),
            None => println!("P{} {:?}: no witness at resolution {}", q.parabolic, q.words, bound + 1),
        }
    }
    Ok(())
}
