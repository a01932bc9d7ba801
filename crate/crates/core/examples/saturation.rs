//! Cross-checks eigencone membership against the tensor-product oracle on
//! all triples with coordinates up to a bound.
//!
//! `cargo run --release --example saturation -- Sp(4) 2 6`

use liecone::eigencone::{for_each_grid_point, generate_inequalities, Tier};
use liecone::oracle::Oracle;
use liecone::rootsys::parse_group;
use liecone::{RootSystem, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(4)"))?;
    let bound: i64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let nmax: usize = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(6);
    let rs = RootSystem::build(kind, rank)?;
    let sys = generate_inequalities(&rs, 3, Tier::Levi)?;
    let oracle = Oracle::new(&rs)?;
    let (mut members, mut positive, mut strict, mut bad) = (0, 0, 0, 0);
    let mut tuples = Vec::new();
    for_each_grid_point(3 * rank, bound, |flat| tuples.push(flat.to_vec()));
    for flat in &tuples {
        let lams: Vec<Weight> = flat.chunks(rank).map(Weight::from_ints).collect();
        let ints: Vec<Vec<i64>> = flat.chunks(rank).map(<[i64]>::to_vec).collect();
        let m = sys.membership(&lams)?;
        let found = oracle.saturated_search(&ints, nmax)?;
        members += usize::from(m.member);
        positive += usize::from(found.is_some());
        if !m.member {
            strict += 1;
        }
        if found.is_some() && !m.member {
            bad += 1;
            println!("oracle-positive non-member: {flat:?} (N = {found:?})");
        }
    }
    println!(
        "{}: {} triples, {members} members, {positive} oracle-positive (N <= {nmax}), {strict} strict violators, {bad} conflicts",
        sys.label(),
        tuples.len()
    );
    Ok(())
}
