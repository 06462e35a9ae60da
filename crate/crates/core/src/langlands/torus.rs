use crate::extgrp::{FactorSet, Presentation, H1};
use crate::gmod::{FiniteGroup, GammaModule};
use crate::int::Int;
use crate::tn::{tate_nakayama_check, TnReport};
use crate::zlin::FgAb;
use crate::Error;
use std::sync::Arc;

/// Cocharacters L̂ (free, with Γ-action) and characters L = Hom(L̂, ℤ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDatum {
    pub cochar: GammaModule,
    pub chars: GammaModule,
}

impl TorusDatum {
    pub fn new(cochar: GammaModule) -> Result<TorusDatum, Error> {
        if !cochar.carrier().torsion().is_empty() {
            return Err(Error::InvalidModule(format!("cocharacter lattice must be free, got {}", cochar.carrier())));
        }
        let chars = cochar.dual()?;
        Ok(TorusDatum { cochar, chars })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.cochar.group()
    }

    pub fn rank(&self) -> usize {
        self.cochar.rank()
    }

    /// ⟨u, y⟩ = Σ u_i y_i.
    pub fn evaluate(u: &[Int], y: &[Int]) -> Int {
        u.iter().zip(y).fold(Int::zero(), |acc, (a, b)| acc + a * b)
    }

    /// The evaluation pairing is perfect (its matrix in the dual bases is the
    /// identity) and invariant: ⟨gu, gy⟩ = ⟨u, y⟩.
    pub fn pairing_is_perfect(&self) -> bool {
        let k = self.rank();
        let b = |i: usize| self.cochar.carrier().basis(i);
        let gram_ok = (0..k).all(|i| (0..k).all(|j| Self::evaluate(&b(i), &b(j)) == Int::from(usize::from(i == j))));
        gram_ok
            && self.group().elements().all(|g| {
                (0..k).all(|i| (0..k).all(|j| Self::evaluate(&self.chars.act(g, &b(i)), &self.cochar.act(g, &b(j))) == Int::from(usize::from(i == j))))
            })
    }
}

/// B(T) = L̂_Γ.
pub fn kottwitz_set(t: &TorusDatum) -> FgAb {
    t.cochar.coinvariants().group
}

/// H₁(G, L̂) from the presentation of the extension.
pub fn h1_weil(delta: &FactorSet, t: &TorusDatum) -> Result<H1, Error> {
    Presentation::new(delta).h1(&t.cochar)
}

/// A factor set with its presentation and criterion status.
#[derive(Clone, Debug)]
pub struct WeilDatum {
    pub delta: FactorSet,
    pub presentation: Presentation,
    pub tn: TnReport,
}

impl WeilDatum {
    pub fn new(delta: FactorSet) -> Result<WeilDatum, Error> {
        let tn = tate_nakayama_check(&delta)?;
        Ok(WeilDatum { presentation: Presentation::new(&delta), delta, tn })
    }

    pub fn kernel(&self) -> &GammaModule {
        self.delta.module()
    }

    pub fn require_tn(&self) -> Result<(), Error> {
        match self.tn.first_failure() {
            None => Ok(()),
            Some(e) => Err(Error::TNFailed(format!("subgroup {:?}: H^1 = {}, H^2 = {}, class order {}", e.elements, e.h1, e.h2, e.class_order))),
        }
    }
}
