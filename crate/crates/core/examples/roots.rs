//! Cartan data and positive roots of a group.
//!
//! `cargo run --example roots -- "SO(7)"`

use liecone::rootsys::parse_group;
use liecone::RootSystem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "G2".into());
    let (kind, rank) = parse_group(&label)?;
    let rs = RootSystem::build(kind, rank)?;
    println!("{} ({} positive roots)", rs.label(), rs.num_positive_roots());
    println!("cartan:");
    for row in rs.cartan() {
        println!("  {row:?}");
    }
    println!("highest root: {:?}", rs.highest_root());
    for (i, beta) in rs.positive_roots().iter().enumerate() {
        println!("{i:>3}  simple {beta:?}  coroot {:?}", rs.coroot_coords(beta));
    }
    Ok(())
}
