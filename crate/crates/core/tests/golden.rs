//! Inequality systems at n = 3 compared against checked-in JSON.

use liecone::eigencone::{generate_inequalities, IneqSystemDoc, Tier};
use liecone::rootsys::parse_group;
use liecone::RootSystem;

fn golden(name: &str) -> IneqSystemDoc {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).unwrap()
}

fn generated(group: &str) -> IneqSystemDoc {
    let (k, r) = parse_group(group).unwrap();
    let rs = RootSystem::build(k, r).unwrap();
    generate_inequalities(&rs, 3, Tier::Levi).unwrap().to_doc()
}

#[test]
fn sp4_levi_system() {
    assert_eq!(generated("Sp(4)"), golden("levi-c2-n3.json"));
}

#[test]
fn so5_levi_system() {
    assert_eq!(generated("SO(5)"), golden("levi-b2-n3.json"));
}

#[test]
fn g2_levi_system() {
    assert_eq!(generated("G2"), golden("levi-g2-n3.json"));
}

#[test]
fn bc_golden_files_differ_only_in_the_last_coordinate() {
    let (c, b) = (golden("levi-c2-n3.json"), golden("levi-b2-n3.json"));
    assert_eq!(c.inequalities.len(), b.inequalities.len());
    for (x, y) in c.inequalities.iter().zip(&b.inequalities) {
        assert_eq!(x.words, y.words);
        // ω_2^C = 2 ω_2^B: the B normal is the C normal with the last
        // coordinate halved, then cleared to primitive integers
        let flat_c: Vec<i64> = x.normals.iter().flat_map(|l| [2 * l[0], l[1]]).collect();
        let flat_b: Vec<i64> = y.normals.iter().flatten().copied().collect();
        let g = flat_c.iter().fold(0i64, |g, &v| num_integer::gcd(g, v));
        let prim: Vec<i64> = flat_c.iter().map(|v| v / g).collect();
        assert_eq!(prim, flat_b);
    }
}
