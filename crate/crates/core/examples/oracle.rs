//! Representation-theoretic oracle: weight multiplicities, tensor product
//! decompositions and invariant dimensions.
//!
//! `cargo run --example oracle -- "Sp(4)" 1,0 0,1`

use liecone::oracle::Oracle;
use liecone::rootsys::parse_group;
use liecone::RootSystem;

fn parse(s: &str) -> Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(4)"))?;
    let rs = RootSystem::build(kind, rank)?;
    let oracle = Oracle::new(&rs)?;
    let a = args.get(1).map(|s| parse(s)).transpose()?.unwrap_or_else(|| vec![1; rank]);
    let b = args.get(2).map(|s| parse(s)).transpose()?.unwrap_or_else(|| a.clone());

    let table = oracle.weight_multiplicities(&a)?;
    println!("V{a:?}: dim {}, {} dominant weights", table.dim, table.mults.len());
    for (mu, m) in &table.mults {
        println!("  {mu:?}  x{m}");
    }
    println!("V{a:?} (x) V{b:?}:");
    for (nu, m) in oracle.tensor_decompose(&a, &b)? {
        println!("  {m} V{nu:?}");
    }
    let decomposition = oracle.tensor_decompose(&a, &b)?;
    let top = decomposition.iter().max_by_key(|(_, m)| **m).map(|(nu, _)| nu.clone()).unwrap_or_default();
    let c = oracle.dual(&top);
    println!("invariants in V{a:?} (x) V{b:?} (x) V{c:?}: {}", oracle.invariant_dim(&[a.clone(), b.clone(), c.clone()])?);
    Ok(())
}
