//! Normalized inhomogeneous (co)chains of a finite group with coefficients in a
//! Γ-module. A degree-r (co)chain is indexed by tuples of non-identity
//! elements, lexicographically, times the module coordinates.

use crate::gmod::GammaModule;
use crate::int::Int;
use crate::zlin::sparse::SVec;
use crate::zlin::IntMatrix;

#[derive(Clone, Debug)]
pub struct Bar<'a> {
    pub module: &'a GammaModule,
    n: usize,
    k: usize,
}

impl<'a> Bar<'a> {
    pub fn new(module: &'a GammaModule) -> Bar<'a> {
        Bar { module, n: module.group().order(), k: module.rank() }
    }

    /// Number of normalized tuples of length r.
    pub fn tuples(&self, r: usize) -> usize {
        (self.n - 1).pow(r as u32)
    }

    pub fn dim(&self, r: usize) -> usize {
        self.tuples(r) * self.k
    }

    /// Index of a tuple of non-identity elements.
    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &g in t {
            if g == 0 {
                return None;
            }
            idx = idx * (self.n - 1) + (g - 1);
        }
        Some(idx)
    }

    pub fn tuple_at(&self, mut idx: usize, r: usize) -> Vec<usize> {
        let mut t = vec![0; r];
        for i in (0..r).rev() {
            t[i] = idx % (self.n - 1) + 1;
            idx /= self.n - 1;
        }
        t
    }

    /// Coefficient moduli of degree-r (co)chains.
    pub fn moduli(&self, r: usize) -> Vec<Int> {
        let m = self.module.carrier().moduli();
        let mut out = Vec::with_capacity(self.dim(r));
        for _ in 0..self.tuples(r) {
            out.extend(m.iter().cloned());
        }
        out
    }

    /// Collects `(row, col, value)` triples into sparse columns.
    fn columns_from(&self, ncols: usize, trip: Vec<(usize, usize, Int)>, moduli: &[Int]) -> Vec<SVec> {
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

    /// Adds `sign * mat` as the block (row tuple `ri`, column tuple `ci`).
    fn push_block(&self, trip: &mut Vec<(usize, usize, Int)>, ri: usize, ci: usize, mat: Option<&IntMatrix>, sign: i64) {
        for a in 0..self.k {
            for b in 0..self.k {
                let v = match mat {
                    Some(m) => m[(a, b)].clone() * sign,
                    None if a == b => Int::from(sign),
                    None => continue,
                };
                if !v.is_zero() {
                    trip.push((ri * self.k + a, ci * self.k + b, v));
                }
            }
        }
    }

    /// Columns of the cochain differential d: C^r → C^{r+1} (r ≥ 0, C^0 = M).
    pub fn coboundary(&self, r: usize) -> Vec<SVec> {
        let g = self.module.group();
        let mut trip = Vec::new();
        for si in 0..self.tuples(r + 1) {
            let s = self.tuple_at(si, r + 1);
            // s1 · f(s2..)
            if let Some(ci) = self.tuple_index(&s[1..]) {
                self.push_block(&mut trip, si, ci, Some(self.module.action(s[0])), 1);
            }
            for i in 0..r {
                let mut t = Vec::with_capacity(r);
                t.extend_from_slice(&s[..i]);
                t.push(g.mul(s[i], s[i + 1]));
                t.extend_from_slice(&s[i + 2..]);
                if let Some(ci) = self.tuple_index(&t) {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    self.push_block(&mut trip, si, ci, None, sign);
                }
            }
            if let Some(ci) = self.tuple_index(&s[..r]) {
                let sign = if (r + 1).is_multiple_of(2) { 1 } else { -1 };
                self.push_block(&mut trip, si, ci, None, sign);
            }
        }
        self.columns_from(self.dim(r), trip, &self.moduli(r + 1))
    }

    /// Columns of the boundary ∂: C_r → C_{r-1} (r ≥ 1, C_0 = M), with
    /// ∂(m⊗[g1|…|gr]) = g1⁻¹m⊗[g2|…] + Σ(−1)^i m⊗[…|g_i g_{i+1}|…] + (−1)^r m⊗[g1|…|g_{r−1}].
    pub fn boundary(&self, r: usize) -> Vec<SVec> {
        let g = self.module.group();
        let mut trip = Vec::new();
        for ti in 0..self.tuples(r) {
            let t = self.tuple_at(ti, r);
            if let Some(ri) = self.tuple_index(&t[1..]) {
                self.push_block(&mut trip, ri, ti, Some(self.module.action(g.inv(t[0]))), 1);
            }
            for i in 0..r - 1 {
                let mut s = Vec::with_capacity(r - 1);
                s.extend_from_slice(&t[..i]);
                s.push(g.mul(t[i], t[i + 1]));
                s.extend_from_slice(&t[i + 2..]);
                if let Some(ri) = self.tuple_index(&s) {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    self.push_block(&mut trip, ri, ti, None, sign);
                }
            }
            if let Some(ri) = self.tuple_index(&t[..r - 1]) {
                let sign = if r.is_multiple_of(2) { 1 } else { -1 };
                self.push_block(&mut trip, ri, ti, None, sign);
            }
        }
        self.columns_from(self.dim(r), trip, &self.moduli(r - 1))
    }

    /// Value of a normalized (co)chain at a tuple (zero on degenerate tuples).
    pub fn value_at(&self, chain: &[Int], t: &[usize]) -> Vec<Int> {
        match self.tuple_index(t) {
            Some(i) => chain[i * self.k..(i + 1) * self.k].to_vec(),
            None => vec![Int::zero(); self.k],
        }
    }

    /// Builds a normalized (co)chain from a function on non-identity tuples.
    pub fn from_fn(&self, r: usize, mut f: impl FnMut(&[usize]) -> Vec<Int>) -> Vec<Int> {
        let mut out = Vec::with_capacity(self.dim(r));
        for i in 0..self.tuples(r) {
            out.extend(f(&self.tuple_at(i, r)));
        }
        self.module_reduce(out)
    }

    fn module_reduce(&self, v: Vec<Int>) -> Vec<Int> {
        let m = self.module.carrier().moduli();
        v.into_iter()
            .enumerate()
            .map(|(i, x)| {
                let d = &m[i % self.k];
                if d.is_zero() {
                    x
                } else {
                    x.reduce(d)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::FiniteGroup;
    use crate::zlin::sparse::lin_comb;
    use crate::zlin::FgAb;
    use std::sync::Arc;

    fn compose_is_zero(first: &[SVec], second: &[SVec], moduli: &[Int]) -> bool {
        first.iter().all(|col| {
            let mut acc: SVec = Vec::new();
            for (i, x) in col {
                acc = lin_comb(&Int::one(), &acc, x, &second[*i], Some(moduli));
            }
            acc.is_empty()
        })
    }

    #[test]
    fn differentials_square_to_zero() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let sign: Vec<i64> = (0..6).map(|g| if [0, 3, 4].contains(&g) { 1 } else { -1 }).collect();
        let m = GammaModule::rank_one(&s3, &sign).unwrap();
        let bar = Bar::new(&m);
        for r in 0..2 {
            assert!(compose_is_zero(&bar.coboundary(r), &bar.coboundary(r + 1), &bar.moduli(r + 2)));
        }
        for r in 2..4 {
            assert!(compose_is_zero(&bar.boundary(r), &bar.boundary(r - 1), &bar.moduli(r - 2)));
        }
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let z4 = GammaModule::cyclic_with(&c4, 4, &[1, 3, 1, 3]).unwrap();
        let bar = Bar::new(&z4);
        assert!(compose_is_zero(&bar.coboundary(1), &bar.coboundary(2), &bar.moduli(3)));
        assert!(compose_is_zero(&bar.boundary(3), &bar.boundary(2), &bar.moduli(1)));
        let _ = FgAb::trivial();
    }
}
