//! Schubert calculus on G/P: products of Schubert classes and the
//! deformed-product check on a tuple.
//!
//! `cargo run --example multiply -- "Sp(6)" 2`

use liecone::rootsys::parse_group;
use liecone::{CohomClass, FlagVariety, RootSystem};
use num_traits::Zero;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kind, rank) = parse_group(args.first().map(String::as_str).unwrap_or("Sp(6)"))?;
    let p: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let rs = RootSystem::build(kind, rank)?;
    let fv = FlagVariety::new(&rs, p)?;
    println!("{}: betti {:?}", fv.label(), fv.betti());

    let words: Vec<&str> = args.iter().skip(2).map(String::as_str).collect();
    let idx: Vec<usize> = if words.is_empty() {
        let d = fv.divisor()?;
        let rest = (0..fv.len()).find(|&i| fv.codim(i) + 2 == fv.dim()).unwrap_or(fv.point());
        vec![d, d, rest]
    } else {
        words.iter().map(|w| fv.element(w)).collect::<Result<_, _>>()?
    };
    let mut prod = CohomClass::basis(fv.unit());
    for &i in &idx {
        prod = fv.multiply(&prod, &CohomClass::basis(i))?;
    }
    if prod.is_zero() {
        println!("product vanishes");
    }
    let names: Vec<String> = idx.iter().map(|&i| fv.word(i)).collect();
    println!("product of [{}]:", names.join(", "));
    for i in 0..fv.len() {
        let c = prod.coeff(i);
        if !c.is_zero() {
            println!("  {c} * [{}]", fv.word(i));
        }
    }
    let codim: usize = idx.iter().map(|&i| fv.codim(i)).sum();
    if codim == fv.dim() {
        let levi = fv.is_levi_movable(&idx)?;
        println!("multiplicity {}, theta {}, levi-movable {}", levi.multiplicity, levi.theta, levi.movable);
    }
    Ok(())
}
