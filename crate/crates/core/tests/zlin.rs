use lltori::int::{int, Int};
use lltori::zlin::{exact_at, hom_ab, smith_normal_form, tensor_ab, AbHom, FgAb, IntMatrix};
use proptest::prelude::*;

fn fgab() -> impl Strategy<Value = FgAb> {
    (0usize..3, prop::collection::vec(2i64..13, 0..3)).prop_map(|(r, t)| {
        let mut orders = vec![Int::zero(); r];
        orders.extend(t.into_iter().map(Int::from));
        FgAb::from_cyclic_orders(&orders)
    })
}

fn finite_fgab() -> impl Strategy<Value = FgAb> {
    prop::collection::vec(2i64..13, 0..3).prop_map(|t| FgAb::from_cyclic_orders(&t.into_iter().map(Int::from).collect::<Vec<_>>()))
}

fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// A well-defined hom: a torsion generator of order d goes to a multiple of
/// e/gcd(e, d) (e the torsion exponent of the target) with zero free part.
fn hom(a: &FgAb, b: &FgAb, raw: &[i64]) -> AbHom {
    let e = b.torsion().last().cloned().unwrap_or_else(Int::one);
    let moduli = a.moduli();
    let imgs: Vec<Vec<Int>> = moduli
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let v: Vec<Int> = (0..b.ngens()).map(|j| Int::from(raw[(i * 7 + j) % raw.len()])).collect();
            if d.is_zero() {
                b.reduce(&v)
            } else {
                let f = e.div_exact(&gcd(&e, d));
                let mut v = b.scale(&f, &v);
                for x in v.iter_mut().take(b.free_rank()) {
                    *x = Int::zero();
                }
                b.reduce(&v)
            }
        })
        .collect();
    AbHom::from_images(a, b, &imgs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_certified(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-20i64..=20, 36)) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
        let a = IntMatrix::from_rows(&data);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        let d = s.diagonal();
        prop_assert!(d.windows(2).all(|w| w[0].divides(&w[1])));
        prop_assert!(d.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn kernel_and_cokernel(a in fgab(), b in fgab(), raw in prop::collection::vec(-9i64..10, 1..12)) {
        let f = hom(&a, &b, &raw);
        let (k, incl) = f.kernel();
        prop_assert_eq!(incl.source(), &k);
        prop_assert!(f.compose(&incl).unwrap().is_zero());
        prop_assert!(incl.is_injective());
        prop_assert!(exact_at(&incl, &f));
        let (_, proj) = f.cokernel();
        prop_assert!(proj.is_surjective());
        prop_assert!(proj.cokernel().0.is_trivial());
        prop_assert!(proj.compose(&f).unwrap().is_zero());
        if let (Some(na), Some(nk)) = (a.order(), k.order()) {
            let (im, _) = f.image();
            prop_assert_eq!(na, nk * im.order().unwrap());
        }
    }

    #[test]
    fn tensor_is_symmetric(a in fgab(), b in fgab()) {
        prop_assert_eq!(tensor_ab(&a, &b), tensor_ab(&b, &a));
    }

    // ⊗ and Hom of cyclic groups: ℤ/m ⊗ ℤ/n = Hom(ℤ/m, ℤ/n) = ℤ/gcd(m, n), 0 meaning ℤ,
    // and Hom(ℤ/m, ℤ) = 0.
    #[test]
    fn tensor_and_hom_closed_forms(a in fgab(), b in fgab()) {
        let mut t = Vec::new();
        let mut h = Vec::new();
        for x in a.moduli() {
            for y in b.moduli() {
                t.push(gcd(&x, &y));
                h.push(match (x.is_zero(), y.is_zero()) {
                    (true, _) => y.clone(),
                    (false, true) => Int::one(),
                    _ => gcd(&x, &y),
                });
            }
        }
        prop_assert_eq!(tensor_ab(&a, &b), FgAb::from_cyclic_orders(&t));
        prop_assert_eq!(hom_ab(&a, &b), FgAb::from_cyclic_orders(&h));
    }

    #[test]
    fn finite_hom_orders_are_symmetric(a in finite_fgab(), b in finite_fgab()) {
        prop_assert_eq!(hom_ab(&a, &b).order(), hom_ab(&b, &a).order());
    }

    #[test]
    fn normal_form_invariants(a in fgab()) {
        prop_assert!(a.torsion().iter().all(|d| *d >= int(2)));
        prop_assert!(a.torsion().windows(2).all(|w| w[0].divides(&w[1])));
        prop_assert_eq!(FgAb::from_cyclic_orders(&a.moduli()), a);
    }
}
