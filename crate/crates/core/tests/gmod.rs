mod common;

use lltori::corpus;
use lltori::gmod::{FiniteGroup, GammaModule};
use lltori::zlin::FgAb;
use proptest::prelude::*;
use std::sync::Arc;

fn hom_invariants_order(m: &GammaModule, n: &GammaModule) -> lltori::Int {
    m.hom(n).unwrap().module.invariants().group.order().expect("finite carriers")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_map_factors_the_norm(i in 0usize..10_000) {
        let ms = common::modules();
        let m = &ms[i % ms.len()];
        let inv = m.invariants();
        let co = m.coinvariants();
        let n = m.norm_map();
        for j in 0..m.rank() {
            let e = m.carrier().basis(j);
            let via_map = inv.inclusion.apply(&n.apply(&co.projection.apply(&e)));
            prop_assert_eq!(via_map, m.carrier().reduce(&m.norm_element(&e)));
        }
    }

    #[test]
    fn frobenius_reciprocity_counts(i in 0usize..10_000, j in 0usize..10_000, s in 0usize..10) {
        let fm = common::finite_modules();
        let n = &fm[i % fm.len()];
        let subs = n.group().all_subgroups();
        let sub = &subs[s % subs.len()];
        let h = Arc::new(sub.as_group());
        let over_sub: Vec<GammaModule> = fm.iter().filter(|m| **m.group() == *h).cloned().collect();
        let mut candidates = over_sub;
        candidates.push(GammaModule::trivial(&h, FgAb::cyclic(2)));
        candidates.push(GammaModule::trivial(&h, FgAb::cyclic(4)));
        let m = &candidates[j % candidates.len()];
        let (ind, _) = m.induce(sub).unwrap();
        let res = n.restrict(sub).unwrap();
        prop_assert_eq!(hom_invariants_order(&ind, n), hom_invariants_order(m, &res));
    }
}

#[test]
fn induced_from_trivial_subgroup_is_regular() {
    for g in corpus::gammas() {
        let triv = g.trivial_subgroup();
        let z = GammaModule::trivial(&Arc::new(triv.as_group()), FgAb::free(1));
        let (ind, _) = z.induce(&triv).unwrap();
        assert_eq!(*ind.carrier(), FgAb::free(g.order()));
        assert_eq!(ind.invariants().group, FgAb::free(1));
        assert_eq!(ind.coinvariants().group, FgAb::free(1));
    }
}

#[test]
fn subgroup_counts() {
    assert_eq!(corpus::cyclic(4).all_subgroups().len(), 3);
    assert_eq!(corpus::klein().all_subgroups().len(), 5);
    assert_eq!(corpus::s3().all_subgroups().len(), 6);
    // brute force over subsets of S₃: closed under multiplication and containing 1
    let s3 = FiniteGroup::symmetric(3);
    let closed = (0u32..64)
        .filter(|mask| mask & 1 == 1)
        .filter(|mask| {
            let els: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            els.iter().all(|&a| els.iter().all(|&b| mask >> s3.mul(a, b) & 1 == 1))
        })
        .count();
    assert_eq!(closed, 6);
}
