//! Randomised invariants across modules.

use std::sync::OnceLock;

use liecone::arith::qi;
use liecone::eigencone::{generate_inequalities, project_weight_bc, IneqSystem, Tier};
use liecone::oracle::Oracle;
use liecone::weyl::{dual_rep, minimal_coset_reps, DEFAULT_GROUP_CAP};
use liecone::{CartanType, EmbeddingCase, FlagVariety, ParabolicSpec, RootSystem, SubsystemEmbedding, Weight, WeylElement};
use proptest::prelude::*;

fn sp4_system() -> &'static IneqSystem {
    static SYS: OnceLock<IneqSystem> = OnceLock::new();
    SYS.get_or_init(|| generate_inequalities(&RootSystem::build(CartanType::C, 2).unwrap(), 3, Tier::Levi).unwrap())
}

fn sp4_oracle() -> &'static Oracle {
    static O: OnceLock<Oracle> = OnceLock::new();
    O.get_or_init(|| Oracle::new(&RootSystem::build(CartanType::C, 2).unwrap()).unwrap())
}

fn c3_p2() -> &'static FlagVariety {
    static F: OnceLock<FlagVariety> = OnceLock::new();
    F.get_or_init(|| FlagVariety::new(&RootSystem::build(CartanType::C, 3).unwrap(), 2).unwrap())
}

fn dominant(rank: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0..=max, rank)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_linear(a in dominant(4, 9), b in dominant(4, 9), s in 1usize..4, orth in any::<bool>()) {
        let kind = if orth { CartanType::B } else { CartanType::C };
        let (wa, wb) = (Weight::from_ints(&a), Weight::from_ints(&b));
        let lhs = project_weight_bc(kind, &wa.add(&wb), s).unwrap();
        let rhs = project_weight_bc(kind, &wa, s).unwrap().add(&project_weight_bc(kind, &wb, s).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_a_retraction(nu in dominant(3, 9), orth in any::<bool>()) {
        let (kind, case) = if orth {
            (CartanType::B, EmbeddingCase::BInB { r: 5, s: 3 })
        } else {
            (CartanType::C, EmbeddingCase::CInC { r: 5, s: 3 })
        };
        let e = SubsystemEmbedding::build(case).unwrap();
        let nu = Weight::from_ints(&nu);
        let lam = e.include_weight(&nu).unwrap();
        prop_assert!(lam.is_dominant());
        prop_assert_eq!(project_weight_bc(kind, &lam, 3).unwrap(), nu);
    }

    #[test]
    fn membership_is_scale_invariant(t in dominant(6, 4), num in 1i64..6, den in 1i64..4) {
        let sys = sp4_system();
        let lams: Vec<Weight> = t.chunks(2).map(Weight::from_ints).collect();
        let c = qi(num) / qi(den);
        let scaled: Vec<Weight> = lams.iter().map(|l| l.scale(&c)).collect();
        prop_assert_eq!(sys.membership(&lams).unwrap().member, sys.membership(&scaled).unwrap().member);
    }

    #[test]
    fn oracle_positive_implies_member(t in dominant(6, 3)) {
        let ints: Vec<Vec<i64>> = t.chunks(2).map(<[i64]>::to_vec).collect();
        if sp4_oracle().saturated_search(&ints, 2).unwrap().is_some() {
            let lams: Vec<Weight> = t.chunks(2).map(Weight::from_ints).collect();
            prop_assert!(sp4_system().membership(&lams).unwrap().member);
        }
    }

    #[test]
    fn tensor_products_are_associative(a in dominant(2, 1), b in dominant(2, 1), c in dominant(2, 1)) {
        let o = sp4_oracle();
        let expand = |left: &[i64], right: &[i64], third: &[i64], third_left: bool| {
            let mut out = std::collections::BTreeMap::new();
            for (hw, m) in o.tensor_decompose(left, right).unwrap() {
                let parts = if third_left { o.tensor_decompose(third, &hw) } else { o.tensor_decompose(&hw, third) };
                for (k, n) in parts.unwrap() {
                    *out.entry(k).or_insert(0u64) += m * n;
                }
            }
            out
        };
        prop_assert_eq!(expand(&a, &b, &c, false), expand(&b, &c, &a, true));
    }

    #[test]
    fn weyl_words_compose(u in proptest::collection::vec(1usize..=4, 0..12), v in proptest::collection::vec(1usize..=4, 0..12)) {
        let rs = RootSystem::build(CartanType::F4, 4).unwrap();
        let a = WeylElement::from_word(&rs, &u).unwrap();
        let b = WeylElement::from_word(&rs, &v).unwrap();
        let mut uv = u.clone();
        uv.extend(&v);
        let ab = a.mul(&b);
        prop_assert_eq!(&ab, &WeylElement::from_word(&rs, &uv).unwrap());
        prop_assert!(ab.length() <= a.length() + b.length());
        prop_assert_eq!((a.length() + b.length()) % 2, ab.length() % 2);
        prop_assert!(a.mul(&a.inverse()).is_identity());
    }

    #[test]
    fn cup_product_commutes(u in 0usize..36, v in 0usize..36) {
        let fv = c3_p2();
        let (u, v) = (u % fv.len(), v % fv.len());
        prop_assert_eq!(fv.cup_product(u, v).unwrap(), fv.cup_product(v, u).unwrap());
    }
}

#[test]
fn duals_are_involutions_on_every_maximal_parabolic() {
    for (k, r) in [(CartanType::B, 4), (CartanType::C, 4), (CartanType::D, 5), (CartanType::A, 5), (CartanType::G2, 2)] {
        let rs = RootSystem::build(k, r).unwrap();
        for p in 1..=r {
            let par = ParabolicSpec::maximal(&rs, p).unwrap();
            for w in minimal_coset_reps(&par, DEFAULT_GROUP_CAP).unwrap() {
                let d = dual_rep(&w, &par).unwrap();
                assert_eq!(d.length() + w.length(), par.dim());
                assert_eq!(dual_rep(&d, &par).unwrap(), w);
            }
        }
    }
}
