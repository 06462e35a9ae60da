use lltori::corpus::{self, LhsInstance};
use lltori::lhs::{five_term, verify_appendix_diagram, Lhs};
use lltori::tate::tate_cohomology;
use proptest::prelude::*;
use std::sync::OnceLock;

fn instances() -> &'static [LhsInstance] {
    static CELL: OnceLock<Vec<LhsInstance>> = OnceLock::new();
    CELL.get_or_init(|| corpus::lhs_instances().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d2_does_not_depend_on_the_lift(i in 0usize..10_000) {
        let inst = &instances()[i % instances().len()];
        let lhs = Lhs::new(&inst.delta, &inst.module).unwrap();
        let h2 = tate_cohomology(&inst.module, -3).unwrap();
        for k in 0..h2.group().ngens() {
            prop_assert_eq!(lhs.d2(&h2.rep(k)).unwrap(), lhs.d2_perturbed(&h2.rep(k)).unwrap());
        }
    }

    #[test]
    fn left_square_and_exactness(i in 0usize..10_000) {
        let inst = &instances()[i % instances().len()];
        let r = verify_appendix_diagram(&inst.delta, &inst.module).unwrap();
        prop_assert!(r.square("left").unwrap().pass, "{}", inst.name);
        prop_assert!(five_term(&inst.delta, &inst.module).unwrap().is_exact(), "{}", inst.name);
    }
}

#[test]
fn infinite_kernel_is_exact_where_computed() {
    for w in corpus::tn_weil_data().unwrap() {
        for (_, m) in corpus::coefficient_modules(w.delta.group()) {
            let ft = five_term(&w.delta, &m).unwrap();
            if w.delta.module().carrier().is_finite() {
                assert!(ft.d2.is_some());
            } else {
                assert!(ft.d2.is_none() && ft.exact_at_h1_a.is_none());
            }
            assert!(ft.is_exact(), "{}", w.name);
        }
    }
}
