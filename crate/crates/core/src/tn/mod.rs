//! The Tate-Nakayama criterion for (Γ, A, δ).
//!
//! Cup product with Res δ is an isomorphism Ĥʳ(Γ′,ℤ) → Ĥʳ⁺²(Γ′,A) for all r
//! as soon as it is one for r = −1 and r = 0 (Tate's theorem). Those two
//! degrees amount to Ĥ¹(Γ′,A) = 0 and Ĥ²(Γ′,A) cyclic of order |Γ′| generated
//! by [Res δ], which is what is tested here for every subgroup Γ′.

use crate::extgrp::FactorSet;
use crate::gmod::{GammaModule, Subgroup};
use crate::int::Int;
use crate::tate::{factor_set_cochain, tate_cohomology};
use crate::zlin::FgAb;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupEntry {
    pub elements: Vec<usize>,
    pub h1: FgAb,
    pub h2: FgAb,
    /// Order of [Res δ] in Ĥ².
    pub class_order: Int,
    pub h1_vanishes: bool,
    pub h2_generated: bool,
}

impl SubgroupEntry {
    pub fn pass(&self) -> bool {
        self.h1_vanishes && self.h2_generated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnReport {
    pub holds: bool,
    pub per_subgroup: Vec<SubgroupEntry>,
}

impl TnReport {
    /// First failing subgroup, for witnesses.
    pub fn first_failure(&self) -> Option<&SubgroupEntry> {
        self.per_subgroup.iter().find(|e| !e.pass())
    }
}

fn entry(delta: &FactorSet, sub: &Subgroup) -> Result<SubgroupEntry, Error> {
    let d = delta.restrict(sub)?;
    let h1 = tate_cohomology(d.module(), 1)?;
    let h2 = tate_cohomology(d.module(), 2)?;
    let class = h2.classify(&factor_set_cochain(&d)).ok_or_else(|| Error::NotACocycle("restricted factor set".into()))?;
    let class_order = h2.group().element_order(&class).expect("Tate groups are finite");
    let n = Int::from(sub.order());
    let h2_generated = h2.group().is_cyclic() && h2.group().order() == Some(n.clone()) && class_order == n;
    Ok(SubgroupEntry {
        elements: sub.elements().to_vec(),
        h1_vanishes: h1.group().is_trivial(),
        h1: h1.group().clone(),
        h2: h2.group().clone(),
        class_order,
        h2_generated,
    })
}

/// Runs both tests on every subgroup (no short-circuit).
pub fn tate_nakayama_check(delta: &FactorSet) -> Result<TnReport, Error> {
    let subs = delta.group().all_subgroups();
    let per_subgroup = crate::par::map(&subs, |s| entry(delta, s)).into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(TnReport { holds: per_subgroup.iter().all(|e| e.pass()), per_subgroup })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceEntry {
    pub elements: Vec<usize>,
    pub h3: FgAb,
    pub h_minus1: FgAb,
    /// H₂(Γ′, ℤ) = Ĥ⁻³(Γ′, ℤ)
    pub schur: FgAb,
}

impl ConsequenceEntry {
    pub fn h3_vanishes(&self) -> bool {
        self.h3.is_trivial()
    }

    pub fn orders_match(&self) -> bool {
        self.h_minus1.order() == self.schur.order()
    }

    pub fn pass(&self) -> bool {
        self.h3_vanishes() && self.orders_match()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub holds: bool,
    pub per_subgroup: Vec<ConsequenceEntry>,
}

/// Ĥ³(Γ′,A) = 0 and |Ĥ⁻¹(Γ′,A)| = |H₂(Γ′,ℤ)| on every subgroup. Requires the
/// criterion to hold.
pub fn tn_consequences(delta: &FactorSet) -> Result<ConsequenceReport, Error> {
    let tn = tate_nakayama_check(delta)?;
    if let Some(e) = tn.first_failure() {
        return Err(Error::TNFailed(format!("subgroup {:?}: H^1 = {}, H^2 = {}", e.elements, e.h1, e.h2)));
    }
    let subs = delta.group().all_subgroups();
    let per_subgroup = crate::par::map(&subs, |sub| -> Result<ConsequenceEntry, Error> {
        let a = delta.module().restrict(sub)?;
        let z = GammaModule::trivial(a.group(), FgAb::free(1));
        Ok(ConsequenceEntry {
            elements: sub.elements().to_vec(),
            h3: tate_cohomology(&a, 3)?.group().clone(),
            h_minus1: tate_cohomology(&a, -1)?.group().clone(),
            schur: tate_cohomology(&z, -3)?.group().clone(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(ConsequenceReport { holds: per_subgroup.iter().all(|e| e.pass()), per_subgroup })
}
