use crate::extgrp::{ExtElement, FactorSet, Presentation};
use crate::gmod::{GammaModule, Subgroup};
use crate::int::Int;
use crate::lhs::fox_to_bar;
use crate::zlin::{AbHom, FgAb};
use crate::Error;

#[derive(Clone, Debug)]
pub struct ShapiroReport {
    pub h1_sub: FgAb,
    pub h1_induced: FgAb,
    /// H₁(G′, M) → H₁(G, Ind M), m ↦ 1⊗m.
    pub homology_iso: bool,
    pub cohomology: Option<(FgAb, FgAb, bool)>,
}

impl ShapiroReport {
    pub fn pass(&self) -> bool {
        self.homology_iso && self.h1_sub == self.h1_induced && self.cohomology.as_ref().is_none_or(|(a, b, iso)| *iso && a == b)
    }
}

fn lift_element(sub: &Subgroup, g: &ExtElement) -> ExtElement {
    ExtElement { a: g.a.clone(), sigma: sub.elements()[g.sigma] }
}

/// Shapiro for H₁(−, M) and, when `m` is given, H¹(−, M⊗C_m). `module` is a
/// module over `sub.as_group()`.
pub fn shapiro_check(delta: &FactorSet, sub: &Subgroup, module: &GammaModule, m: Option<&Int>) -> Result<ShapiroReport, Error> {
    if **sub.parent() != **delta.group() {
        return Err(Error::InvalidSubgroup("subgroup of a different group".into()));
    }
    if **module.group() != sub.as_group() {
        return Err(Error::InvalidSubgroup("module is not over the subgroup".into()));
    }
    let big = Presentation::new(delta);
    let dsub = delta.restrict(sub)?;
    let small = Presentation::new(&dsub);
    let module = GammaModule::new(dsub.group().clone(), module.carrier().clone(), module.group().elements().map(|g| module.action(g).clone()).collect())?;
    let k = module.rank();

    let (ind, q) = module.induce(sub)?;
    let h_sub = small.h1(&module)?;
    let h_ind = big.h1(&ind)?;
    let raw_len = k * sub.index();
    let into_block0 = |v: &[Int]| {
        let mut raw = vec![Int::zero(); raw_len];
        raw[..k].clone_from_slice(v);
        q.project(&raw)
    };
    let imgs: Vec<Vec<Int>> = (0..h_sub.group().ngens())
        .map(|i| {
            let mut acc = vec![Int::zero(); big.chain_moduli(&ind, 1).len()];
            for (g, v) in fox_to_bar(&small, k, &h_sub.rep(i)) {
                let f = big.bar_to_fox(&ind, &lift_element(sub, &g), &into_block0(&v));
                for (a, b) in acc.iter_mut().zip(f) {
                    *a += b;
                }
            }
            h_ind.classify(&acc).ok_or_else(|| Error::NotACycle("image of a cycle".into()))
        })
        .collect::<Result<_, _>>()?;
    let hom = AbHom::from_images(h_sub.group(), h_ind.group(), &imgs)?;

    let cohomology = match m {
        None => None,
        Some(m) => {
            let mm = module.mod_m(m)?;
            let (ind_m, qm) = mm.induce(sub)?;
            let z_ind = big.z1(&ind_m)?;
            let z_sub = small.z1(&mm)?;
            let km = mm.rank();
            let gens: Vec<ExtElement> = small.generators().iter().map(|&x| lift_element(sub, &small.gen_element(x))).collect();
            let imgs: Vec<Vec<Int>> = (0..z_ind.h1_group().ngens())
                .map(|i| {
                    let c = z_ind.h1.rep_dense(i);
                    let mut out = Vec::with_capacity(km * gens.len());
                    for g in &gens {
                        let raw = qm.lift(&big.crossed_hom_value(&ind_m, &c, g));
                        out.extend(mm.carrier().reduce(&raw[..km]));
                    }
                    z_sub.h1.classify_dense(&out).ok_or_else(|| Error::NotACocycle("restriction of a cocycle".into()))
                })
                .collect::<Result<_, _>>()?;
            let res = AbHom::from_images(z_ind.h1_group(), z_sub.h1_group(), &imgs)?;
            Some((z_sub.h1_group().clone(), z_ind.h1_group().clone(), res.is_isomorphism()))
        }
    };
    Ok(ShapiroReport {
        h1_sub: h_sub.group().clone(),
        h1_induced: h_ind.group().clone(),
        homology_iso: hom.is_isomorphism(),
        cohomology,
    })
}
