mod common;

use lltori::corpus;
use lltori::gmod::GammaModule;
use lltori::int::Int;
use lltori::tate::{cup_homological_h2, h2_class_representatives, tate_cohomology, Bar};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differentials_square_to_zero(i in 0usize..10_000) {
        let ms = common::modules();
        let m = &ms[i % ms.len()];
        let bar = Bar::new(m);
        for r in 0..2 {
            prop_assert!(common::compose_is_zero(&bar.coboundary(r), &bar.coboundary(r + 1), &bar.moduli(r + 2)));
        }
        for r in 2..4 {
            prop_assert!(common::compose_is_zero(&bar.boundary(r), &bar.boundary(r - 1), &bar.moduli(r - 2)));
        }
    }

    #[test]
    fn tate_groups_are_killed_by_the_order(i in 0usize..10_000, r in -3i32..=3) {
        let ms = common::modules();
        let m = &ms[i % ms.len()];
        let h = tate_cohomology(m, r).unwrap();
        let n = Int::from(m.group().order());
        prop_assert!(h.group().is_finite());
        prop_assert!(h.group().torsion().iter().all(|d| d.divides(&n)));
    }

    #[test]
    fn cup_lands_in_the_kernel_of_the_norm(i in 0usize..10_000, j in 0usize..100) {
        let fm = common::finite_modules();
        let a = &fm[i % fm.len()];
        let reps = h2_class_representatives(a).unwrap();
        let delta = &reps[j % reps.len()];
        let g = a.group();
        for (_, m) in corpus::coefficient_modules(g) {
            let h2 = tate_cohomology(&m, -3).unwrap();
            let tensor = m.tensor(a).unwrap();
            for k in 0..h2.group().ngens() {
                let v = cup_homological_h2(&m, &h2.rep(k), delta, &tensor).unwrap();
                prop_assert!(tensor.module.carrier().is_zero(&tensor.module.norm_element(&v)));
            }
        }
    }
}

#[test]
fn cyclic_periodicity_on_the_corpus() {
    let mut mods: Vec<GammaModule> = common::modules().iter().filter(|m| m.group().label().starts_with('C') && !m.group().label().contains('x')).cloned().collect();
    for n in [5, 6] {
        let g = corpus::cyclic(n);
        mods.extend(corpus::coefficient_modules(&g).into_iter().map(|x| x.1));
    }
    for m in &mods {
        let hs: Vec<_> = (-3..=3).map(|r| tate_cohomology(m, r).unwrap().group().clone()).collect();
        for i in 0..5 {
            assert_eq!(hs[i], hs[i + 2], "{} {:?}", m.group().label(), m.carrier());
        }
    }
}
