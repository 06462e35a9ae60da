//! The double complex E_{ij} = (C_i(Γ) ⊗ C_j(G) ⊗ M)_G for a finite extension.
//!
//! A cell element is written with the Γ-part normalized to start at 1 and the
//! G-part normalized to start at a section element w_σ, so a basis vector is
//! (1, c₁, …, c_i) ⊗ (w_σ, g₁, …, g_j) ⊗ e_b. The vertical differential d₀
//! carries the sign (−1)^i, so d₀d₁ + d₁d₀ = 0.

use crate::extgrp::{ExtTable, Extension};
use crate::gmod::GammaModule;
use crate::int::Int;
use crate::zlin::sparse::SVec;
use crate::Error;

#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub ext: Extension,
    pub table: ExtTable,
    pub module: GammaModule,
    ng: usize,
    nbig: usize,
    k: usize,
    /// table index of w_σ
    w: Vec<usize>,
    /// table index of (−f(g), 1) for each g
    strip: Vec<usize>,
}

impl DoubleComplex {
    pub fn new(ext: &Extension, module: &GammaModule) -> Result<DoubleComplex, Error> {
        if **module.group() != **ext.gamma() {
            return Err(Error::GroupMismatch("module and extension are over different groups".into()));
        }
        let table = ExtTable::new(ext)?;
        let ng = ext.gamma().order();
        let w = (0..ng).map(|s| table.index_of(&ext.w(s))).collect();
        let strip = table
            .elements
            .iter()
            .map(|g| table.index_of(&ext.from_a(&ext.carrier().neg(&g.a))))
            .collect();
        Ok(DoubleComplex {
            ext: ext.clone(),
            nbig: table.elements.len(),
            table,
            module: module.clone(),
            ng,
            k: module.rank(),
            w,
            strip,
        })
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.ng.pow(i as u32 + 1) * self.nbig.pow(j as u32) * self.k
    }

    pub fn moduli(&self, i: usize, j: usize) -> Vec<Int> {
        let md = self.module.carrier().moduli();
        let mut out = Vec::with_capacity(self.dim(i, j));
        for _ in 0..self.dim(i, j) / self.k.max(1) {
            out.extend(md.iter().cloned());
        }
        out
    }

    /// Base index of the basis vector for a normalized tuple pair.
    fn index(&self, cs: &[usize], sigma: usize, gs: &[usize]) -> usize {
        let mut idx = 0;
        for &c in cs {
            idx = idx * self.ng + c;
        }
        idx = idx * self.ng + sigma;
        for &g in gs {
            idx = idx * self.nbig + g;
        }
        idx * self.k
    }

    fn decode(&self, mut idx: usize, i: usize, j: usize) -> (Vec<usize>, usize, Vec<usize>) {
        let mut gs = vec![0; j];
        for t in (0..j).rev() {
            gs[t] = idx % self.nbig;
            idx /= self.nbig;
        }
        let sigma = idx % self.ng;
        idx /= self.ng;
        let mut cs = vec![0; i];
        for t in (0..i).rev() {
            cs[t] = idx % self.ng;
            idx /= self.ng;
        }
        (cs, sigma, gs)
    }

    /// Normal position of the homogeneous element cs ⊗ gs ⊗ m, together with
    /// the Γ-element by which m must be acted on.
    pub fn place(&self, cs: &[usize], gs: &[usize]) -> (usize, usize) {
        let g = self.ext.gamma();
        let tg = &self.table.group;
        let c0i = g.inv(cs[0]);
        let h = tg.inv(self.w[cs[0]]);
        let cs2: Vec<usize> = cs[1..].iter().map(|&c| g.mul(c0i, c)).collect();
        let hg: Vec<usize> = gs.iter().map(|&x| tg.mul(h, x)).collect();
        let u = self.strip[hg[0]];
        let gs2: Vec<usize> = hg.iter().map(|&x| tg.mul(u, x)).collect();
        let sigma = self.table.elements[gs2[0]].sigma;
        debug_assert_eq!(gs2[0], self.w[sigma]);
        (self.index(&cs2, sigma, &gs2[1..]), c0i)
    }

    fn columns(&self, ncols: usize, trip: Vec<(usize, usize, Int)>, moduli: &[Int]) -> Vec<SVec> {
        let mut cols: Vec<Vec<(usize, Int)>> = vec![Vec::new(); ncols];
        for (r, c, v) in trip {
            cols[c].push((r, v));
        }
        cols.into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: SVec = Vec::with_capacity(c.len());
                for (r, v) in c {
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.into_iter()
                    .map(|(r, v)| {
                        let m = &moduli[r];
                        (r, if m.is_zero() { v } else { v.reduce(m) })
                    })
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    fn push_face(&self, trip: &mut Vec<(usize, usize, Int)>, col_base: usize, cs: &[usize], gs: &[usize], sign: i64) {
        let (row_base, act) = self.place(cs, gs);
        let a = self.module.action(act);
        for b in 0..self.k {
            for r in 0..self.k {
                let v = &a[(r, b)];
                if !v.is_zero() {
                    trip.push((row_base + r, col_base + b, v.clone() * sign));
                }
            }
        }
    }

    fn homogeneous(&self, base: usize, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        let (cs, sigma, gs) = self.decode(base / self.k, i, j);
        let mut hc = vec![0];
        hc.extend(cs);
        let mut hg = vec![self.w[sigma]];
        hg.extend(gs);
        (hc, hg)
    }

    /// Columns of d₁: E_{i,j} → E_{i−1,j} (i ≥ 1).
    pub fn d1(&self, i: usize, j: usize) -> Vec<SVec> {
        let mut trip = Vec::new();
        for base in (0..self.dim(i, j)).step_by(self.k.max(1)) {
            let (hc, hg) = self.homogeneous(base, i, j);
            for l in 0..=i {
                let mut face = hc.clone();
                face.remove(l);
                self.push_face(&mut trip, base, &face, &hg, if l % 2 == 0 { 1 } else { -1 });
            }
        }
        self.columns(self.dim(i, j), trip, &self.moduli(i - 1, j))
    }

    /// Columns of d₀: E_{i,j} → E_{i,j−1} (j ≥ 1), with the sign (−1)^i.
    pub fn d0(&self, i: usize, j: usize) -> Vec<SVec> {
        let mut trip = Vec::new();
        let s0 = if i.is_multiple_of(2) { 1 } else { -1 };
        for base in (0..self.dim(i, j)).step_by(self.k.max(1)) {
            let (hc, hg) = self.homogeneous(base, i, j);
            for l in 0..=j {
                let mut face = hg.clone();
                face.remove(l);
                self.push_face(&mut trip, base, &hc, &face, if l % 2 == 0 { s0 } else { -s0 });
            }
        }
        self.columns(self.dim(i, j), trip, &self.moduli(i, j - 1))
    }

    /// Position in E_{2,0} of (1, c₁, c₁c₂) ⊗ (1).
    pub fn e20_index(&self, c1: usize, c2: usize) -> usize {
        let g = self.ext.gamma();
        self.place(&[0, c1, g.mul(c1, c2)], &[self.w[0]]).0
    }

    /// The A-part f(g₁) of the basis vector (1) ⊗ (w_σ, g₁) ⊗ e_b of E_{0,1},
    /// indexed by the base position.
    pub fn e01_a_part(&self, base: usize) -> &[Int] {
        let (_, _, gs) = self.decode(base / self.k, 0, 1);
        &self.table.elements[gs[0]].a
    }

    pub fn rank(&self) -> usize {
        self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extgrp::FactorSet;
    use crate::gmod::FiniteGroup;
    use crate::int::int;
    use crate::zlin::sparse::lin_comb;
    use crate::zlin::FgAb;
    use std::sync::Arc;

    fn apply(cols: &[SVec], v: &SVec, moduli: &[Int]) -> SVec {
        let mut acc: SVec = Vec::new();
        for (i, x) in v {
            acc = lin_comb(&Int::one(), &acc, x, &cols[*i], Some(moduli));
        }
        acc
    }

    fn anticommute(dc: &DoubleComplex, i: usize, j: usize) -> bool {
        let d1 = dc.d1(i, j);
        let d0 = dc.d0(i, j);
        let d0b = dc.d0(i - 1, j);
        let d1b = dc.d1(i, j - 1);
        let m = dc.moduli(i - 1, j - 1);
        (0..dc.dim(i, j)).all(|c| {
            let x = apply(&d0b, &d1[c], &m);
            let y = apply(&d1b, &d0[c], &m);
            lin_comb(&Int::one(), &x, &Int::one(), &y, Some(&m)).is_empty()
        })
    }

    #[test]
    fn differentials() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = GammaModule::trivial(&c2, FgAb::cyclic(2));
        let d = FactorSet::new(a, vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]]).unwrap();
        let sign = GammaModule::rank_one(&c2, &[1, -1]).unwrap();
        let dc = DoubleComplex::new(&crate::extgrp::Extension::new(d), &sign).unwrap();
        assert!(anticommute(&dc, 1, 1));
        assert!(anticommute(&dc, 2, 1));
        assert!(anticommute(&dc, 1, 2));
        let m = dc.moduli(0, 1);
        let d11 = dc.d1(1, 1);
        let d12 = dc.d1(2, 1);
        assert!((0..dc.dim(2, 1)).all(|c| apply(&d11, &d12[c], &m).is_empty()));
    }
}
