//! The Levi-movable inequalities cut out the same cone as the full list of
//! non-zero products, and each Levi facet of Sp(4) is irredundant.
//!
//! Grids use denominators up to 2. Membership is homogeneous, so the half
//! integer grid {0, 1/2, .., b} is the integer grid {0..2b} rescaled.

use liecone::eigencone::{compare_regions, facet_witnesses, generate_inequalities, Tier};
use liecone::{CartanType, RootSystem};

fn same_region(kind: CartanType, rank: usize, half_bound: i64) {
    let rs = RootSystem::build(kind, rank).unwrap();
    let levi = generate_inequalities(&rs, 3, Tier::Levi).unwrap();
    let full = generate_inequalities(&rs, 3, Tier::Nonzero).unwrap();
    assert!(levi.len() <= full.len());
    let rep = compare_regions(&levi, &full, 2 * half_bound).unwrap();
    assert_eq!(rep.disagreements, 0, "{rep:?}");
    assert!(rep.members > 1);
}

#[test]
fn sp4_regions_agree() {
    same_region(CartanType::C, 2, 2);
}

#[test]
fn g2_regions_agree() {
    same_region(CartanType::G2, 2, 2);
}

#[test]
fn sp6_regions_agree() {
    same_region(CartanType::C, 3, 1);
}

#[test]
fn sp4_levi_facets_have_witnesses() {
    let rs = RootSystem::build(CartanType::C, 2).unwrap();
    let sys = generate_inequalities(&rs, 3, Tier::Levi).unwrap();
    let w = facet_witnesses(&sys, 4).unwrap();
    assert_eq!(w.len(), sys.len());
    let missing: Vec<usize> = w.iter().filter(|x| x.point.is_none()).map(|x| x.index).collect();
    assert!(missing.is_empty(), "no witness for {missing:?}");
}
