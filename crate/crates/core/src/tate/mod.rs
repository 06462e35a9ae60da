//! Tate cohomology Ĥʳ(Γ, M) for −3 ≤ r ≤ 3 and the cup products used with it.

mod bar;

pub use bar::Bar;

use crate::extgrp::FactorSet;
use crate::gmod::{GammaModule, TensorModule};
use crate::int::Int;
use crate::zlin::sparse::{kernel_generators, lin_comb, svec_from_dense, svec_to_dense, unit, Reducer, SVec};
use crate::zlin::{FgAb, Subquotient};
use crate::Error;

pub const WINDOW: std::ops::RangeInclusive<i32> = -3..=3;

/// Where representatives of a Tate group live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// The module itself (degrees 0 and −1).
    Module,
    /// Normalized inhomogeneous r-cochains.
    Cochains(usize),
    /// Normalized bar n-chains.
    Chains(usize),
}

/// Ĥʳ(Γ, M) with representatives and a classifier.
#[derive(Clone, Debug)]
pub struct TateGroup {
    pub degree: i32,
    pub ambient: Ambient,
    sq: Subquotient,
}

/// A class in a Tate group, by its normal coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateClass {
    pub degree: i32,
    pub coords: Vec<Int>,
}

impl TateGroup {
    pub fn group(&self) -> &FgAb {
        &self.sq.group
    }

    /// Representing (co)cycle of the k-th generator.
    pub fn rep(&self, k: usize) -> Vec<Int> {
        self.sq.rep_dense(k)
    }

    /// Representing (co)cycle of an arbitrary class.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        svec_to_dense(&self.sq.lift(coords), self.sq.ambient().len())
    }

    /// Class of a (co)cycle, or `None` if it is not a (co)cycle.
    pub fn classify(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.sq.classify_dense(v)
    }

    pub fn class_of(&self, v: &[Int]) -> Option<TateClass> {
        self.classify(v).map(|coords| TateClass { degree: self.degree, coords })
    }

    pub fn ambient_dim(&self) -> usize {
        self.sq.ambient().len()
    }
}

fn matrix_columns(m: &crate::zlin::IntMatrix) -> Vec<SVec> {
    (0..m.cols()).map(|j| svec_from_dense(&m.column(j))).collect()
}

/// Ĥʳ(Γ, M).
pub fn tate_cohomology(m: &GammaModule, r: i32) -> Result<TateGroup, Error> {
    if !WINDOW.contains(&r) {
        return Err(Error::DegreeOutOfWindow(r));
    }
    let bar = Bar::new(m);
    let md = m.carrier().moduli();
    let k = m.rank();
    let g = m.group();
    let (ambient, sq) = match r {
        0 => {
            let inv = m.invariants();
            let numer = matrix_columns(inv.inclusion.matrix());
            let denom = (0..k).map(|j| svec_from_dense(&m.norm_element(&m.carrier().basis(j)))).collect();
            (Ambient::Module, Subquotient::new(&md, numer, denom))
        }
        -1 => {
            let norm_cols = (0..k).map(|j| svec_from_dense(&m.norm_element(&m.carrier().basis(j)))).collect();
            let numer = kernel_generators(norm_cols, &md, &md);
            let mut denom = Vec::new();
            for h in 1..g.order() {
                for j in 0..k {
                    let e = m.carrier().basis(j);
                    let v = m.carrier().add(&m.act(h, &e), &m.carrier().neg(&e));
                    denom.push(svec_from_dense(&v));
                }
            }
            (Ambient::Module, Subquotient::new(&md, numer, denom))
        }
        r if r >= 1 => {
            let r = r as usize;
            let numer = kernel_generators(bar.coboundary(r), &bar.moduli(r + 1), &bar.moduli(r));
            let denom = bar.coboundary(r - 1);
            (Ambient::Cochains(r), Subquotient::new(&bar.moduli(r), numer, denom))
        }
        _ => {
            let n = (-r - 1) as usize;
            let numer = kernel_generators(bar.boundary(n), &bar.moduli(n - 1), &bar.moduli(n));
            let denom = bar.boundary(n + 1);
            (Ambient::Chains(n), Subquotient::new(&bar.moduli(n), numer, denom))
        }
    };
    Ok(TateGroup { degree: r, ambient, sq })
}

/// Normalized coordinates of a factor set viewed as a 2-cochain.
pub fn factor_set_cochain(delta: &FactorSet) -> Vec<Int> {
    let bar = Bar::new(delta.module());
    bar.from_fn(2, |t| delta.value(t[0], t[1]).to_vec())
}

/// The factor set of a normalized 2-cocycle given in bar coordinates.
pub fn factor_set_from_cochain(a: &GammaModule, c: &[Int]) -> Result<FactorSet, Error> {
    let bar = Bar::new(a);
    let n = a.group().order();
    let values = (0..n * n).map(|i| bar.value_at(c, &[i / n, i % n])).collect();
    FactorSet::new(a.clone(), values)
}

/// One factor set per class of Ĥ²(Γ, A), for A with finite Ĥ² (always the
/// case for finite Γ), in the order of [`FgAb::elements`].
pub fn h2_class_representatives(a: &GammaModule) -> Result<Vec<FactorSet>, Error> {
    let h2 = tate_cohomology(a, 2)?;
    h2.group().elements().iter().map(|x| factor_set_from_cochain(a, &h2.lift(x))).collect()
}

/// The class of n·α in Ĥ²(Γ, A), for n a residue in Ĥ⁰(Γ, ℤ) = ℤ/|Γ|.
pub fn cup_hat0(h2: &TateGroup, n: &Int, alpha: &FactorSet) -> Result<TateClass, Error> {
    if h2.degree != 2 {
        return Err(Error::DegreeOutOfWindow(h2.degree));
    }
    let c = factor_set_cochain(&alpha.scaled(n));
    h2.class_of(&c).ok_or_else(|| Error::NotACocycle("scaled factor set".into()))
}

/// Decides whether a (not necessarily normalized) 2-cocycle `c` on Γ×Γ, given
/// as `c[σ·|Γ| + τ]`, is a coboundary; returns a 1-cochain `b` (one value per
/// element) with d(b) = c.
pub fn is_coboundary2(a: &GammaModule, c: &[Vec<Int>]) -> Result<Option<Vec<Vec<Int>>>, Error> {
    let g = a.group();
    let n = g.order();
    let ab = a.carrier();
    if c.len() != n * n {
        return Err(Error::NotACocycle("wrong number of values".into()));
    }
    let val = |s: usize, t: usize| &c[s * n + t];
    for s in 0..n {
        for t in 0..n {
            for r in 0..n {
                let lhs = ab.add(&a.act(s, val(t, r)), val(s, g.mul(t, r)));
                let rhs = ab.add(val(g.mul(s, t), r), val(s, t));
                if ab.reduce(&lhs) != ab.reduce(&rhs) {
                    return Err(Error::NotACocycle(format!("fails at ({}, {}, {})", s, t, r)));
                }
            }
        }
    }
    // c − d(const c(1,1)) is normalized
    let a0 = ab.reduce(val(0, 0));
    let bar = Bar::new(a);
    let normalized = bar.from_fn(2, |t| ab.add(val(t[0], t[1]), &ab.neg(&a.act(t[0], &a0))));
    let mut red = Reducer::new(bar.moduli(2)).with_track_moduli(bar.moduli(1));
    for (j, col) in bar.coboundary(1).into_iter().enumerate() {
        red.insert(col, unit(j));
    }
    let Some(comb) = red.express(&svec_from_dense(&normalized)) else {
        return Ok(None);
    };
    let b1 = svec_to_dense(&comb, bar.dim(1));
    let mut b = Vec::with_capacity(n);
    for s in 0..n {
        b.push(ab.add(&bar.value_at(&b1, &[s]), &a0));
    }
    Ok(Some(b))
}

/// Σ_{c₁,c₂} φ(c₁,c₂) ⊗ c₁c₂·δ(c₂⁻¹, c₁⁻¹) in M⊗A (carrier coordinates of
/// `tensor`), for φ a normalized 2-cycle of Γ with coefficients in M.
pub fn cup_homological_h2(m: &GammaModule, phi: &[Int], delta: &FactorSet, tensor: &TensorModule) -> Result<Vec<Int>, Error> {
    let bar = Bar::new(m);
    let g = m.group();
    if phi.len() != bar.dim(2) {
        return Err(Error::NotACycle("chain has the wrong length".into()));
    }
    let bd = bar.boundary(2);
    let mut acc: SVec = Vec::new();
    for (j, x) in phi.iter().enumerate() {
        if !x.is_zero() {
            acc = lin_comb(&Int::one(), &acc, x, &bd[j], Some(&bar.moduli(1)));
        }
    }
    if !acc.is_empty() {
        return Err(Error::NotACycle("∂φ ≠ 0".into()));
    }
    let a = delta.module();
    let tm = tensor.module.carrier();
    let mut out = tm.zero();
    for c1 in 1..g.order() {
        for c2 in 1..g.order() {
            let mv = bar.value_at(phi, &[c1, c2]);
            if m.carrier().is_zero(&mv) {
                continue;
            }
            let d = delta.value(g.inv(c2), g.inv(c1));
            let av = a.act(g.mul(c1, c2), d);
            out = tm.add(&out, &tensor.pure(&mv, &av));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::FiniteGroup;
    use crate::int::int;
    use std::sync::Arc;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn closed_form_examples() {
        for n in 2..6 {
            let z = GammaModule::trivial(&cyc(n), FgAb::free(1));
            assert_eq!(*tate_cohomology(&z, 0).unwrap().group(), FgAb::cyclic(n as i64));
        }
        let sign = GammaModule::rank_one(&cyc(2), &[1, -1]).unwrap();
        assert_eq!(*tate_cohomology(&sign, 1).unwrap().group(), FgAb::cyclic(2));
        let z2 = GammaModule::trivial(&cyc(2), FgAb::cyclic(2));
        assert_eq!(*tate_cohomology(&z2, 2).unwrap().group(), FgAb::cyclic(2));
        let z = GammaModule::trivial(&cyc(2), FgAb::free(1));
        assert!(tate_cohomology(&z, -3).unwrap().group().is_trivial());
        assert!(matches!(tate_cohomology(&z, 4), Err(Error::DegreeOutOfWindow(4))));
    }

    #[test]
    fn klein_four_schur_multiplier() {
        let v4 = Arc::new(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        let z = GammaModule::trivial(&v4, FgAb::free(1));
        assert_eq!(*tate_cohomology(&z, -3).unwrap().group(), FgAb::cyclic(2));
        assert_eq!(tate_cohomology(&z, 3).unwrap().group().to_string(), "Z/2");
        assert_eq!(tate_cohomology(&z, 2).unwrap().group().to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn cup_with_c4_extension_class() {
        let a = GammaModule::trivial(&cyc(2), FgAb::cyclic(2));
        let delta = FactorSet::new(a.clone(), vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]]).unwrap();
        let h2 = tate_cohomology(&a, 2).unwrap();
        assert_eq!(cup_hat0(&h2, &int(1), &delta).unwrap().coords, vec![int(1)]);
        assert_eq!(cup_hat0(&h2, &int(0), &delta).unwrap().coords, vec![int(0)]);
        assert_eq!(cup_hat0(&h2, &int(2), &delta).unwrap().coords, vec![int(0)]);
        assert_eq!(is_coboundary2(&a, delta.values()).unwrap(), None);
        let zero = FactorSet::zero(&a);
        assert_eq!(is_coboundary2(&a, zero.values()).unwrap(), Some(vec![vec![int(0)], vec![int(0)]]));
    }

    #[test]
    fn coboundary_witness_is_checked() {
        let c3 = cyc(3);
        let a = GammaModule::trivial(&c3, FgAb::free(1));
        // d(b) for b = (5, -2, 7): (db)(s,t) = b(t) - b(st) + b(s)
        let b = [int(5), int(-2), int(7)];
        let c: Vec<Vec<Int>> = (0..9).map(|i| vec![&(&b[i % 3] - &b[(i / 3 + i % 3) % 3]) + &b[i / 3]]).collect();
        let w = is_coboundary2(&a, &c).unwrap().expect("coboundary");
        for s in 0..3 {
            for t in 0..3 {
                let db = &(&w[t][0] - &w[(s + t) % 3][0]) + &w[s][0];
                assert_eq!(db, c[s * 3 + t][0]);
            }
        }
        let mut bad = c.clone();
        bad[4] = vec![int(100)];
        assert!(matches!(is_coboundary2(&a, &bad), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn homological_cup_sign_module() {
        // Γ = C₂, A = ℤ with the carry cocycle (G = ℤ), M = ℤ sign: cup of the H₂ generator is nonzero
        let c2 = cyc(2);
        let a = GammaModule::trivial(&c2, FgAb::free(1));
        let delta = FactorSet::new(a.clone(), vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]]).unwrap();
        let sign = GammaModule::rank_one(&c2, &[1, -1]).unwrap();
        let h2 = tate_cohomology(&sign, -3).unwrap();
        assert_eq!(*h2.group(), FgAb::cyclic(2));
        let t = sign.tensor(&a).unwrap();
        let v = cup_homological_h2(&sign, &h2.rep(0), &delta, &t).unwrap();
        let co = t.module.coinvariants();
        assert_eq!(co.group, FgAb::cyclic(2));
        assert!(!co.group.is_zero(&co.project(&v)));
        assert!(t.module.norm_element(&v).iter().all(|x| x.is_zero()));
    }
}
