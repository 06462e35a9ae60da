//! The small-instance corpus used by the sweeps: groups, kernel modules with
//! all their actions, factor-set class representatives, coefficient modules
//! and cocharacter lattices.

use crate::extgrp::FactorSet;
use crate::gmod::{FiniteGroup, GammaModule, Subgroup};
use crate::int::{int, Int};
use crate::tate::{h2_class_representatives, tate_cohomology, factor_set_from_cochain};
use crate::zlin::{FgAb, IntMatrix};
use crate::Error;
use std::sync::Arc;

pub type Group = Arc<FiniteGroup>;

pub fn cyclic(n: usize) -> Group {
    Arc::new(FiniteGroup::cyclic(n))
}

pub fn klein() -> Group {
    Arc::new(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).with_label("C2xC2"))
}

pub fn s3() -> Group {
    Arc::new(FiniteGroup::symmetric(3))
}

/// Γ ∈ {C₂, C₃, C₄, C₂×C₂, S₃}.
pub fn gammas() -> Vec<Group> {
    vec![cyclic(2), cyclic(3), cyclic(4), klein(), s3()]
}

/// A ∈ {ℤ/2, ℤ/3, ℤ/4, ℤ/2×ℤ/2}.
pub fn finite_kernels() -> Vec<FgAb> {
    vec![FgAb::cyclic(2), FgAb::cyclic(3), FgAb::cyclic(4), FgAb::from_cyclic_orders(&[int(2), int(2)])]
}

/// A small generating set, chosen greedily.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0];
    for x in g.elements() {
        if span.len() == g.order() {
            break;
        }
        if !span.contains(&x) {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

/// Automorphisms of a finite carrier as matrices in its coordinates.
pub fn automorphisms(a: &FgAb) -> Vec<IntMatrix> {
    assert!(a.is_finite());
    let k = a.ngens();
    let els = a.elements();
    let mut out = Vec::new();
    let mut cols = vec![0usize; k];
    loop {
        let columns: Vec<Vec<Int>> = cols.iter().map(|&i| els[i].clone()).collect();
        let ok_orders = (0..k).all(|j| a.is_zero(&a.scale(&a.moduli()[j], &columns[j])));
        if ok_orders {
            let m = IntMatrix::from_columns(k, &columns);
            let image: std::collections::BTreeSet<Vec<Int>> = els.iter().map(|v| a.reduce(&m.mul_vec(v))).collect();
            if image.len() == els.len() {
                out.push(m);
            }
        }
        let mut i = 0;
        while i < k {
            cols[i] += 1;
            if cols[i] < els.len() {
                break;
            }
            cols[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    out
}

/// Every action of Γ on a finite carrier, i.e. every homomorphism Γ → Aut(A).
pub fn all_actions(g: &Group, a: &FgAb) -> Vec<GammaModule> {
    let auts = automorphisms(a);
    let gens = generating_set(g);
    let md = a.moduli();
    let reduce = |m: IntMatrix| {
        let mut m = m;
        m.reduce_rows(&md);
        m
    };
    let mut out: Vec<GammaModule> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        // extend along words in the generators, rejecting inconsistent choices
        let mut act: Vec<Option<IntMatrix>> = vec![None; g.order()];
        act[0] = Some(IntMatrix::identity(a.ngens()));
        let mut frontier = vec![0];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            for (gi, &s) in gens.iter().enumerate() {
                let y = g.mul(s, x);
                let m = reduce(auts[choice[gi]].mul(act[x].as_ref().unwrap()));
                match &act[y] {
                    Some(prev) if *prev != m => ok = false,
                    Some(_) => {}
                    None => {
                        act[y] = Some(m);
                        frontier.push(y);
                    }
                }
            }
        }
        if ok {
            let action: Vec<IntMatrix> = act.into_iter().map(|m| m.unwrap()).collect();
            if let Ok(m) = GammaModule::new(g.clone(), a.clone(), action) {
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        let mut i = 0;
        while i < gens.len() {
            choice[i] += 1;
            if choice[i] < auts.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == gens.len() {
            break;
        }
    }
    out
}

/// ℤ with the sign of each index-2 subgroup.
pub fn sign_characters(g: &Group) -> Vec<GammaModule> {
    g.all_subgroups()
        .into_iter()
        .filter(|h| h.index() == 2)
        .map(|h| {
            let chi: Vec<i64> = g.elements().map(|x| if h.contains(x) { 1 } else { -1 }).collect();
            GammaModule::rank_one(g, &chi).expect("sign character")
        })
        .collect()
}

/// The regular permutation module ℤ[Γ].
pub fn regular(g: &Group) -> GammaModule {
    let n = g.order();
    let action = g
        .elements()
        .map(|h| {
            let mut m = IntMatrix::zeros(n, n);
            for x in g.elements() {
                m[(g.mul(h, x), x)] = Int::one();
            }
            m
        })
        .collect();
    GammaModule::new(g.clone(), FgAb::free(n), action).expect("regular module")
}

/// The augmentation ideal I_Γ with basis e_g − e_1, g ≠ 1.
pub fn augmentation(g: &Group) -> GammaModule {
    let n = g.order();
    let action = g
        .elements()
        .map(|h| {
            let mut m = IntMatrix::zeros(n - 1, n - 1);
            for x in 1..n {
                // h(e_x − e_1) = (e_hx − e_1) − (e_h − e_1)
                let hx = g.mul(h, x);
                if hx != 0 {
                    m[(hx - 1, x - 1)] += Int::one();
                }
                if h != 0 {
                    m[(h - 1, x - 1)] -= Int::one();
                }
            }
            m
        })
        .collect();
    GammaModule::new(g.clone(), FgAb::free(n - 1), action).expect("augmentation ideal")
}

/// Permutation module of S₃ on three letters.
pub fn s3_permutation(g: &Group) -> GammaModule {
    // elements of symmetric(3) are permutations in lexicographic order
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let action = perms
        .iter()
        .map(|p| {
            let mut m = IntMatrix::zeros(3, 3);
            for (i, &pi) in p.iter().enumerate() {
                m[(pi, i)] = Int::one();
            }
            m
        })
        .collect();
    GammaModule::new(g.clone(), FgAb::free(3), action).expect("permutation module")
}

/// Coefficient modules M ∈ {ℤ trivial, ℤ sign (each), ℤ/2, ℤ/4}.
pub fn coefficient_modules(g: &Group) -> Vec<(String, GammaModule)> {
    let mut out = vec![("Z".to_string(), GammaModule::trivial(g, FgAb::free(1)))];
    for (i, s) in sign_characters(g).into_iter().enumerate() {
        out.push((format!("Z_sign{}", i), s));
    }
    out.push(("Z/2".into(), GammaModule::trivial(g, FgAb::cyclic(2))));
    out.push(("Z/4".into(), GammaModule::trivial(g, FgAb::cyclic(4))));
    out
}

/// Free cocharacter lattices of rank ≤ 3.
pub fn lattices(g: &Group) -> Vec<(String, GammaModule)> {
    let mut out = vec![("Z".to_string(), GammaModule::trivial(g, FgAb::free(1)))];
    for (i, s) in sign_characters(g).into_iter().enumerate() {
        out.push((format!("Z_sign{}", i), s));
    }
    if g.order() > 1 && g.order() <= 4 {
        out.push(("I".into(), augmentation(g)));
    }
    if g.order() > 1 && g.order() <= 3 {
        out.push(("Z[G]".into(), regular(g)));
    }
    if g.label() == "S3" {
        out.push(("perm3".into(), s3_permutation(g)));
    }
    if g.order() == 1 {
        out.push(("Z^2".into(), GammaModule::trivial(g, FgAb::free(2))));
    }
    out
}

/// One (Γ, A, δ, M) instance of the Appendix sweep.
#[derive(Clone, Debug)]
pub struct LhsInstance {
    pub name: String,
    pub delta: FactorSet,
    pub module: GammaModule,
}

/// Every Γ, every finite A with every action, every class of Ĥ²(Γ,A), every M.
pub fn lhs_instances() -> Result<Vec<LhsInstance>, Error> {
    let mut out = Vec::new();
    for g in gammas() {
        for a in finite_kernels() {
            for (ai, am) in all_actions(&g, &a).into_iter().enumerate() {
                for (di, d) in h2_class_representatives(&am)?.into_iter().enumerate() {
                    for (mn, m) in coefficient_modules(&g) {
                        out.push(LhsInstance { name: format!("{}/{}#{}/d{}/{}", g.label(), a, ai, di, mn), delta: d.clone(), module: m });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A Weil datum of the corpus.
#[derive(Clone, Debug)]
pub struct WeilInstance {
    pub name: String,
    pub delta: FactorSet,
}

/// δ(a,b) = 1 if a + b ≥ n: the generator of Ĥ²(C_n, ℤ).
pub fn carry_factor_set(n: usize, a: &GammaModule) -> Result<FactorSet, Error> {
    let k = a.rank();
    let vals = (0..n * n)
        .map(|i| {
            let mut v = vec![Int::zero(); k];
            if i / n + i % n >= n && k > 0 {
                v[0] = Int::one();
            }
            v
        })
        .collect();
    FactorSet::new(a.clone(), vals)
}

/// I_Γ ⊗ I_Γ with a generator of Ĥ²(Γ, I⊗I) ≅ ℤ/|Γ|: a class-formation-like
/// datum for non-cyclic Γ.
pub fn doubled_augmentation(g: &Group) -> Result<FactorSet, Error> {
    let i = augmentation(g);
    let a = i.tensor(&i)?.module;
    let h2 = tate_cohomology(&a, 2)?;
    let n = Int::from(g.order());
    let gen = h2
        .group()
        .elements()
        .into_iter()
        .find(|x| h2.group().element_order(x) == Some(n.clone()))
        .ok_or_else(|| Error::InvalidModule("no generator of H^2(I⊗I)".into()))?;
    factor_set_from_cochain(&a, &h2.lift(&gen))
}

/// Weil data with the criterion expected to hold: (C_n, ℤ, carry) for n ≤ 6
/// and (C₂×C₂, I⊗I, generator).
pub fn tn_weil_data() -> Result<Vec<WeilInstance>, Error> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let g = cyclic(n);
        out.push(WeilInstance { name: format!("C{}/Z/carry", n), delta: carry_factor_set(n, &GammaModule::trivial(&g, FgAb::free(1)))? });
    }
    out.push(WeilInstance { name: "C2xC2/IxI/gen".into(), delta: doubled_augmentation(&klein())? });
    Ok(out)
}

/// Weil data with finite A: every Γ of order ≤ 4, A ∈ {ℤ/2, ℤ/4} with every
/// action, every class of Ĥ².
pub fn finite_weil_data() -> Result<Vec<WeilInstance>, Error> {
    let mut out = Vec::new();
    let mut gs = vec![cyclic(1)];
    gs.extend(gammas().into_iter().filter(|g| g.order() <= 4));
    for g in gs {
        for a in [FgAb::cyclic(2), FgAb::cyclic(4)] {
            for (ai, am) in all_actions(&g, &a).into_iter().enumerate() {
                for (di, d) in h2_class_representatives(&am)?.into_iter().enumerate() {
                    out.push(WeilInstance { name: format!("{}/{}#{}/d{}", g.label(), a, ai, di), delta: d });
                }
            }
        }
    }
    Ok(out)
}

/// The C₄-toy: Γ = C₂, A = ℤ/2, δ(σ,σ) = 1, so G = ℤ/4.
pub fn c4_toy() -> FactorSet {
    carry_factor_set(2, &GammaModule::trivial(&cyclic(2), FgAb::cyclic(2))).expect("C4 toy")
}

/// The unramified toy: Γ = C₂, A = ℤ trivial, δ the generator, so G = ℤ.
pub fn unramified_toy() -> FactorSet {
    carry_factor_set(2, &GammaModule::trivial(&cyclic(2), FgAb::free(1))).expect("unramified toy")
}

/// Weil data over S₃ with A ∈ {ℤ/2, ℤ/3}, every action and every class.
pub fn s3_weil_data() -> Result<Vec<WeilInstance>, Error> {
    let g = s3();
    let mut out = Vec::new();
    for a in [FgAb::cyclic(2), FgAb::cyclic(3)] {
        for (ai, am) in all_actions(&g, &a).into_iter().enumerate() {
            for (di, d) in h2_class_representatives(&am)?.into_iter().enumerate() {
                out.push(WeilInstance { name: format!("S3/{}#{}/d{}", a, ai, di), delta: d });
            }
        }
    }
    Ok(out)
}

/// (datum, subgroup) pairs of index 2 or 3 over the TN, finite and S₃ data.
pub fn shapiro_instances() -> Result<Vec<(String, FactorSet, Subgroup)>, Error> {
    let mut data = tn_weil_data()?;
    data.extend(finite_weil_data()?);
    data.extend(s3_weil_data()?);
    let mut out = Vec::new();
    for w in data {
        for sub in w.delta.group().all_subgroups() {
            if sub.index() == 2 || sub.index() == 3 {
                out.push((format!("{}<{:?}>", w.name, sub.elements()), w.delta.clone(), sub));
            }
        }
    }
    Ok(out)
}

/// Every abelian group of order at most `max` (up to 16), one per iso class,
/// by invariant factors.
pub fn abelian_groups(max: usize) -> Vec<Group> {
    let mut factor_lists: Vec<Vec<usize>> = (1..=max.min(16)).map(|n| vec![n]).collect();
    for f in [vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 6], vec![2, 8], vec![4, 4], vec![2, 2, 2], vec![2, 2, 4], vec![2, 2, 2, 2]] {
        if f.iter().product::<usize>() <= max {
            factor_lists.push(f);
        }
    }
    factor_lists
        .into_iter()
        .map(|f| {
            let label = f.iter().map(|n| format!("C{}", n)).collect::<Vec<_>>().join("x");
            let gs: Vec<FiniteGroup> = f.iter().map(|&n| FiniteGroup::cyclic(n)).collect();
            Arc::new(FiniteGroup::product_of(&gs).with_label(&label))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extgrp::{abelianization, ExtTable, Extension};

    #[test]
    fn action_counts() {
        // Hom(Γ, Aut A): Aut(ℤ/4) = C₂, Aut(ℤ/2²) = S₃
        assert_eq!(all_actions(&cyclic(2), &FgAb::cyclic(4)).len(), 2);
        assert_eq!(all_actions(&cyclic(3), &FgAb::cyclic(4)).len(), 1);
        assert_eq!(all_actions(&klein(), &FgAb::cyclic(3)).len(), 4);
        let v4 = FgAb::from_cyclic_orders(&[int(2), int(2)]);
        assert_eq!(automorphisms(&v4).len(), 6);
        assert_eq!(all_actions(&cyclic(2), &v4).len(), 4);
        assert_eq!(all_actions(&cyclic(3), &v4).len(), 3);
        assert_eq!(all_actions(&s3(), &v4).len(), 10);
    }

    #[test]
    fn modules_are_valid() {
        for g in gammas() {
            let i = augmentation(&g);
            assert_eq!(i.rank(), g.order() - 1);
            let r = regular(&g);
            // Ĥ⁰ of an induced module vanishes
            assert!(tate_cohomology(&r, 0).unwrap().group().is_trivial());
            // Ĥ⁰(Γ, I) = Ĥ⁻¹(Γ, ℤ) = 0 and Ĥ¹(Γ, I) = Ĥ⁰(Γ, ℤ)
            assert!(tate_cohomology(&i, 0).unwrap().group().is_trivial());
            assert_eq!(tate_cohomology(&i, 1).unwrap().group().order(), Some(Int::from(g.order())));
        }
        assert_eq!(sign_characters(&klein()).len(), 3);
        assert_eq!(sign_characters(&s3()).len(), 1);
        assert!(sign_characters(&cyclic(3)).is_empty());
    }

    #[test]
    fn class_representatives_are_distinct_extensions() {
        let g = cyclic(2);
        let a = GammaModule::trivial(&g, FgAb::cyclic(2));
        let reps = h2_class_representatives(&a).unwrap();
        assert_eq!(reps.len(), 2);
        let abs: Vec<FgAb> = reps.iter().map(|d| abelianization(&ExtTable::new(&Extension::new(d.clone())).unwrap().group)).collect();
        assert_ne!(abs[0], abs[1]);
    }

    #[test]
    fn abelian_group_count() {
        // 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5 iso classes for orders 1..16
        assert_eq!(abelian_groups(16).len(), 25);
        assert!(abelian_groups(16).iter().all(|g| g.is_abelian()));
    }

    #[test]
    fn instance_count() {
        let n = lhs_instances().unwrap().len();
        assert!(n > 100, "{}", n);
    }
}
