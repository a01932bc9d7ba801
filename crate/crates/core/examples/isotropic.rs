//! Index-set dictionary for the isotropic Grassmannian IG(k, 2r) and the
//! orbit dimension table.
//!
//! `cargo run --example isotropic -- 3 2`

use liecone::isogr::{index_dictionary, orbit_table_csv};
use liecone::{CartanType, FlagVariety, RootSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let r = args.first().copied().unwrap_or(3);
    let k = args.get(1).copied().unwrap_or(2);
    let fv = FlagVariety::new(&RootSystem::build(CartanType::C, r)?, k)?;
    let dict = index_dictionary(&fv)?;
    println!("IG({k}, {}) with {} cells", 2 * r, dict.cells.len());
    for (word, set, codim) in &dict.cells {
        println!("  {word:<20} I = {set:?}  codim {codim}");
    }
    println!("\norbit dimensions, r <= {}:\n{}", r + 1, orbit_table_csv(r + 1)?);
    Ok(())
}
