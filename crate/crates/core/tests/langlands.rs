mod common;

use lltori::corpus;
use lltori::extgrp::ExtElement;
use lltori::gmod::{GammaModule, TensorModule};
use lltori::int::{int, Int};
use lltori::langlands::*;
use lltori::zlin::{FgAb, IntMatrix};
use proptest::prelude::*;
use std::sync::OnceLock;

fn jobs() -> &'static [(String, WeilDatum, TorusDatum)] {
    static CELL: OnceLock<Vec<(String, WeilDatum, TorusDatum)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut data = corpus::tn_weil_data().unwrap();
        data.extend(corpus::finite_weil_data().unwrap());
        let mut out = Vec::new();
        for w in data {
            let wd = WeilDatum::new(w.delta.clone()).unwrap();
            for (ln, l) in corpus::lattices(w.delta.group()) {
                out.push((format!("{}/{}", w.name, ln), wd.clone(), TorusDatum::new(l).unwrap()));
            }
        }
        out
    })
}

fn small(raw: &[i64], i: usize) -> Int {
    Int::from(raw[i % raw.len()])
}

fn element(w: &WeilDatum, raw: &[i64], i: usize) -> ExtElement {
    let ext = w.presentation.extension();
    let a: Vec<Int> = (0..w.kernel().rank()).map(|c| small(raw, i + c)).collect();
    let s = raw[(i + 5) % raw.len()].unsigned_abs() as usize % w.delta.group().order();
    ext.mul(&ext.from_a(&w.kernel().carrier().reduce(&a)), &ext.w(s))
}

/// A random cocycle: a small combination of Z¹ generators.
fn cocycle(w: &WeilDatum, d: &DualPoints, raw: &[i64]) -> Vec<Int> {
    let p = &w.presentation;
    let z = p.z1(&d.module).unwrap();
    let md = p.chain_moduli(&d.module, 1);
    let mut phi = vec![Int::zero(); md.len()];
    for i in 0..z.z1_group().ngens() {
        let c = small(raw, 3 * i + 1);
        for (o, v) in phi.iter_mut().zip(z.z1.rep_dense(i)) {
            *o += &c * &v;
        }
    }
    phi.iter().zip(&md).map(|(x, m)| if m.is_zero() { x.clone() } else { x.reduce(m) }).collect()
}

/// ∂(v⊗[g|h]) = g⁻¹v⊗[h] − v⊗[gh] + v⊗[g].
fn bar_boundary(w: &WeilDatum, t: &TorusDatum, g: &ExtElement, h: &ExtElement, v: &[Int]) -> Vec<(ExtElement, Vec<Int>)> {
    let ext = w.presentation.extension();
    let lh = &t.cochar;
    let gi = t.group().inv(g.sigma);
    vec![(h.clone(), lh.act(gi, v)), (ext.mul(g, h), lh.carrier().neg(v)), (g.clone(), v.to_vec())]
}

/// (g⊗1) on normal coordinates of L̂_S⊗A → L̂_T⊗A.
fn tensor_map(g: &IntMatrix, s: &TensorModule, t: &TensorModule, l: usize, v: &[Int]) -> Vec<Int> {
    let raw = s.quotient.lift(v);
    let (ks, kt) = (g.cols(), g.rows());
    let mut out = vec![Int::zero(); kt * l];
    for b in 0..ks {
        for c in 0..l {
            let x = &raw[b * l + c];
            if x.is_zero() {
                continue;
            }
            for a in 0..kt {
                out[a * l + c] += &g[(a, b)] * x;
            }
        }
    }
    t.quotient.project(&out)
}

/// g_* on the ambient (y, z) of Z¹_alg.
fn alg_map(w: &WeilDatum, g: &IntMatrix, s: &AlgebraicH1, t: &AlgebraicH1, v: &[Int]) -> Vec<Int> {
    let l = w.kernel().rank();
    let y = g.mul_vec(s.y_part(v));
    let rs = s.tensor.module.rank();
    let z: Vec<Int> = s.z_part(v).chunks(rs.max(1)).take(w.presentation.generators().len()).flat_map(|c| tensor_map(g, &s.tensor, &t.tensor, l, c)).collect();
    t.pack(&y, &z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // [φ, ∂c] = 0 and d∂c = 0 for 2-chains c; [dt, ψ] = ⟨t, dψ⟩ for 1-chains ψ.
    #[test]
    fn pairing_is_well_defined(i in 0usize..10_000, m in prop::sample::select(vec![2i64, 3, 4, 8, 12]), raw in prop::collection::vec(-6i64..7, 24)) {
        let (n, w, t) = &jobs()[i % jobs().len()];
        let d = DualPoints::new(t, &int(m)).unwrap();
        let lh = &t.cochar;
        let zero_x = lh.carrier().zero();
        let zero_t = d.module.carrier().zero();
        let phi = cocycle(w, &d, &raw);
        let v: Vec<Int> = (0..t.rank()).map(|c| small(&raw, 7 + c)).collect();
        let b = bar_boundary(w, t, &element(w, &raw, 2), &element(w, &raw, 11), &v);
        prop_assert!(poincare_pairing(w, t, &d, &phi, &zero_x, &zero_t, &b).unwrap().is_zero(), "{}", n);
        // ⟨t, d∂c⟩ for every t: pairing against a basis of L⊗C_m detects dψ mod m
        for j in 0..d.module.rank() {
            let e = d.module.carrier().basis(j);
            let zero_phi = vec![Int::zero(); phi.len()];
            prop_assert!(poincare_pairing(w, t, &d, &zero_phi, &zero_x, &e, &b).unwrap().is_zero());
        }
        let p = &w.presentation;
        let tp = d.module.carrier().reduce(&(0..d.module.rank()).map(|c| small(&raw, 13 + c)).collect::<Vec<_>>());
        let dt = common::apply(&p.coboundary0(&d.module), &tp, &p.chain_moduli(&d.module, 1));
        let psi: Vec<(ExtElement, Vec<Int>)> = (0..3).map(|k| (element(w, &raw, 4 * k), (0..t.rank()).map(|c| small(&raw, 5 * k + c)).collect())).collect();
        let neg_t = d.module.carrier().neg(&tp);
        prop_assert!(poincare_pairing(w, t, &d, &dt, &zero_x, &neg_t, &psi).unwrap().is_zero(), "{}", n);
    }

    #[test]
    fn pairing_is_bilinear(i in 0usize..10_000, raw in prop::collection::vec(-6i64..7, 24), raw2 in prop::collection::vec(-6i64..7, 24)) {
        let (_, w, t) = &jobs()[i % jobs().len()];
        let d = DualPoints::new(t, &int(4)).unwrap();
        let (p1, p2) = (cocycle(w, &d, &raw), cocycle(w, &d, &raw2));
        let md = w.presentation.chain_moduli(&d.module, 1);
        let sum: Vec<Int> = p1.iter().zip(&p2).zip(&md).map(|((a, b), m)| if m.is_zero() { a + b } else { (a + b).reduce(m) }).collect();
        let x: Vec<Int> = (0..t.rank()).map(|c| small(&raw, c)).collect();
        let tp = d.module.carrier().reduce(&(0..d.module.rank()).map(|c| small(&raw2, c)).collect::<Vec<_>>());
        let psi = vec![(element(w, &raw, 3), x.clone())];
        let f = |phi: &[Int]| poincare_pairing(w, t, &d, phi, &x, &tp, &psi).unwrap();
        prop_assert_eq!(f(&sum), (f(&p1) + f(&p2) - poincare_pairing(w, t, &d, &vec![Int::zero(); md.len()], &x, &tp, &psi).unwrap()).reduce(&int(4)));
    }
}

/// c_T ∘ g = g_* ∘ c_S for equivariant g: L̂_S → L̂_T.
fn naturality(w: &WeilDatum, s: &TorusDatum, t: &TorusDatum, g: &IntMatrix) {
    assert!(s.cochar.is_equivariant(&t.cochar, g));
    let a_s = AlgebraicH1::new(w, s).unwrap();
    let a_t = AlgebraicH1::new(w, t).unwrap();
    for j in 0..s.rank() {
        let x = s.cochar.carrier().basis(j);
        let lhs = a_t.classify(&c_prime(w, t, &a_t, &g.mul_vec(&x), Convention::Tilde)).unwrap();
        let rhs = a_t.classify(&alg_map(w, g, &a_s, &a_t, &c_prime(w, s, &a_s, &x, Convention::Tilde))).unwrap();
        assert_eq!(lhs, rhs);
    }
    // g_* also preserves the boundaries, so it is defined on classes
    for b in &a_s.boundaries {
        let v = lltori::zlin::sparse::svec_to_dense(b, a_s.ambient_dim());
        assert!(a_t.group().is_zero(&a_t.classify(&alg_map(w, g, &a_s, &a_t, &v)).unwrap()));
    }
}

#[test]
fn kottwitz_map_is_natural() {
    let mut data = corpus::tn_weil_data().unwrap();
    data.extend(corpus::finite_weil_data().unwrap().into_iter().step_by(5));
    for wi in data {
        let w = WeilDatum::new(wi.delta.clone()).unwrap();
        let g = w.delta.group().clone();
        let z = TorusDatum::new(GammaModule::trivial(&g, FgAb::free(1))).unwrap();
        naturality(&w, &z, &z, &IntMatrix::identity(1));
        naturality(&w, &z, &z, &IntMatrix::from_rows(&[vec![2]]));
        naturality(&w, &z, &z, &IntMatrix::zeros(1, 1));
        if g.order() > 1 && g.order() <= 3 {
            let reg = TorusDatum::new(corpus::regular(&g)).unwrap();
            let n = g.order();
            naturality(&w, &z, &reg, &IntMatrix::from_rows(&vec![vec![1]; n]));
            naturality(&w, &reg, &z, &IntMatrix::from_rows(&[vec![1; n]]));
        }
    }
}
