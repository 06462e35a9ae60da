//! The presentation of an extension with generators a₁…a_k (carrier basis of A)
//! and t_σ (σ ≠ 1), its Fox derivatives pushed to ℤ[Γ], and the low-degree
//! (co)homology of G with coefficients in Γ-modules.
//!
//! Conventions: for a left Γ-module M the chain complex is M ⊗_G F with
//! m·g = g⁻¹m, so ∂₁(m⊗e_x) = x̄⁻¹m − m and ∂₂(m⊗e_r) = Σ_x m·(∂r/∂x) ⊗ e_x.
//! Cochains are crossed homomorphisms evaluated on generators, with
//! (dc)(r) = Σ_x (∂r/∂x)·c(x).

use super::ext::{ExtElement, Extension};
use super::FactorSet;
use crate::gmod::{FiniteGroup, GammaModule};
use crate::int::Int;
use crate::zlin::sparse::{kernel_generators, lin_comb, svec_from_dense, SVec};
use crate::zlin::{FgAb, Subquotient};
use crate::Error;
use std::sync::Arc;

/// A generator: a basis element of A or a section element t_σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    A(usize),
    T(usize),
}

/// Which family a relator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relator {
    /// a_i^{m_i}
    Order(usize),
    /// [a_i, a_j]
    Commutator(usize, usize),
    /// t_σ a_i t_σ⁻¹ (σ·a_i)⁻¹
    Conjugation(usize, usize),
    /// t_σ t_τ t_{στ}⁻¹ δ(σ,τ)⁻¹
    Multiplication(usize, usize),
}

/// A word as syllables (generator, exponent).
pub type Word = Vec<(Gen, Int)>;

/// An element of ℤ[Γ], one coefficient per group element.
pub type GroupRingElt = Vec<Int>;

#[derive(Clone, Debug)]
pub struct Presentation {
    ext: Extension,
    gens: Vec<Gen>,
    relators: Vec<(Relator, Word)>,
    fox: Vec<Vec<GroupRingElt>>,
}

fn word_of_a(a: &[Int]) -> Word {
    a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (Gen::A(i), c.clone())).collect()
}

fn inverse_word(w: &Word) -> Word {
    w.iter().rev().map(|(g, e)| (*g, -e)).collect()
}

impl Presentation {
    pub fn new(delta: &FactorSet) -> Presentation {
        let ext = Extension::new(delta.clone());
        let g = ext.gamma().clone();
        let a = ext.carrier().clone();
        let am = ext.kernel().clone();
        let k = a.ngens();
        let n = g.order();
        let mut gens: Vec<Gen> = (0..k).map(Gen::A).collect();
        gens.extend((1..n).map(Gen::T));
        let t = |s: usize, e: i64| -> Word {
            if s == 0 {
                Vec::new()
            } else {
                vec![(Gen::T(s), Int::from(e))]
            }
        };
        let one = Int::one;
        let mut relators = Vec::new();
        for (i, m) in a.moduli().iter().enumerate() {
            if !m.is_zero() {
                relators.push((Relator::Order(i), vec![(Gen::A(i), m.clone())]));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let w = vec![(Gen::A(i), one()), (Gen::A(j), one()), (Gen::A(i), -one()), (Gen::A(j), -one())];
                relators.push((Relator::Commutator(i, j), w));
            }
        }
        for s in 1..n {
            for i in 0..k {
                let mut w = t(s, 1);
                w.push((Gen::A(i), one()));
                w.extend(t(s, -1));
                w.extend(inverse_word(&word_of_a(&am.act(s, &a.basis(i)))));
                relators.push((Relator::Conjugation(s, i), w));
            }
        }
        for s in 1..n {
            for u in 1..n {
                let mut w = t(s, 1);
                w.extend(t(u, 1));
                w.extend(t(g.mul(s, u), -1));
                w.extend(inverse_word(&word_of_a(delta.value(s, u))));
                relators.push((Relator::Multiplication(s, u), w));
            }
        }
        let mut p = Presentation { ext, gens, relators, fox: Vec::new() };
        p.fox = p.relators.iter().map(|(_, w)| p.fox_row(w)).collect();
        p
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.ext.gamma()
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn relators(&self) -> &[(Relator, Word)] {
        &self.relators
    }

    pub fn gen_index(&self, x: Gen) -> usize {
        match x {
            Gen::A(i) => i,
            Gen::T(s) => self.ext.carrier().ngens() + s - 1,
        }
    }

    /// The generator as an element of G.
    pub fn gen_element(&self, x: Gen) -> ExtElement {
        match x {
            Gen::A(i) => self.ext.from_a(&self.ext.carrier().basis(i)),
            Gen::T(s) => self.ext.w(s),
        }
    }

    fn image(&self, x: Gen) -> usize {
        match x {
            Gen::A(_) => 0,
            Gen::T(s) => s,
        }
    }

    /// Fox derivatives of a word with respect to every generator, pushed to ℤ[Γ].
    pub fn fox_row(&self, w: &Word) -> Vec<GroupRingElt> {
        let g = self.gamma();
        let n = g.order();
        let mut row = vec![vec![Int::zero(); n]; self.gens.len()];
        let mut prefix = 0;
        for (x, e) in w {
            let xi = self.gen_index(*x);
            let img = self.image(*x);
            if img == 0 {
                row[xi][prefix] += e;
                continue;
            }
            let ee = e.to_i64().expect("section generators appear with small exponents");
            if ee > 0 {
                for _ in 0..ee {
                    row[xi][prefix] += Int::one();
                    prefix = g.mul(prefix, img);
                }
            } else {
                for _ in 0..-ee {
                    prefix = g.mul(prefix, g.inv(img));
                    row[xi][prefix] -= Int::one();
                }
            }
        }
        row
    }

    /// ∂r/∂x for relator `r` and generator index `x`.
    pub fn fox(&self, r: usize, x: usize) -> &GroupRingElt {
        &self.fox[r][x]
    }

    /// Image of a word in G.
    pub fn evaluate(&self, w: &Word) -> ExtElement {
        let mut acc = self.ext.identity();
        for (x, e) in w {
            let mut y = self.gen_element(*x);
            if e.is_negative() {
                y = self.ext.inv(&y);
            }
            let k = e.abs().to_i64().expect("exponent fits") as u64;
            acc = self.ext.mul(&acc, &self.ext.pow(&y, k));
        }
        acc
    }

    /// Normal-form word a₁^{c₁}…a_k^{c_k}·t_σ of an element.
    pub fn word_of(&self, x: &ExtElement) -> Word {
        let mut w = word_of_a(&self.ext.carrier().reduce(&x.a));
        if x.sigma != 0 {
            w.push((Gen::T(x.sigma), Int::one()));
        }
        w
    }

    fn check_module(&self, m: &GammaModule) -> Result<(), Error> {
        if **m.group() != **self.gamma() {
            return Err(Error::GroupMismatch("module is over a different group".into()));
        }
        Ok(())
    }

    /// Σ c_g·(action of g, or of g⁻¹ when `right`) applied to basis vector `b`.
    fn ring_act(&self, m: &GammaModule, lam: &GroupRingElt, b: usize, right: bool) -> Vec<Int> {
        let g = self.gamma();
        let mut acc = vec![Int::zero(); m.rank()];
        for (h, c) in lam.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let hh = if right { g.inv(h) } else { h };
            for (i, x) in m.action(hh).column(b).iter().enumerate() {
                acc[i] += c * x;
            }
        }
        m.carrier().reduce(&acc)
    }

    fn block_moduli(m: &GammaModule, count: usize) -> Vec<Int> {
        let md = m.carrier().moduli();
        (0..count).flat_map(|_| md.iter().cloned()).collect()
    }

    pub fn chain_moduli(&self, m: &GammaModule, degree: usize) -> Vec<Int> {
        match degree {
            0 => m.carrier().moduli(),
            1 => Self::block_moduli(m, self.gens.len()),
            _ => Self::block_moduli(m, self.relators.len()),
        }
    }

    /// Columns of ∂₁: M^gens → M.
    pub fn boundary1(&self, m: &GammaModule) -> Vec<SVec> {
        let g = self.gamma();
        let k = m.rank();
        let mut cols = Vec::new();
        for &x in &self.gens {
            let xi = g.inv(self.image(x));
            for b in 0..k {
                let mut v = m.act(xi, &m.carrier().basis(b));
                v[b] -= Int::one();
                cols.push(svec_from_dense(&m.carrier().reduce(&v)));
            }
        }
        cols
    }

    /// Columns of ∂₂: M^rels → M^gens.
    pub fn boundary2(&self, m: &GammaModule) -> Vec<SVec> {
        let k = m.rank();
        let mut cols = Vec::new();
        for r in 0..self.relators.len() {
            for b in 0..k {
                let mut col = vec![Int::zero(); k * self.gens.len()];
                for x in 0..self.gens.len() {
                    let v = self.ring_act(m, &self.fox[r][x], b, true);
                    col[x * k..(x + 1) * k].clone_from_slice(&v);
                }
                cols.push(svec_from_dense(&col));
            }
        }
        cols
    }

    /// Columns of d⁰: M → M^gens, m ↦ (x ↦ (x̄ − 1)m).
    pub fn coboundary0(&self, m: &GammaModule) -> Vec<SVec> {
        let k = m.rank();
        (0..k)
            .map(|b| {
                let e = m.carrier().basis(b);
                let mut col = Vec::with_capacity(k * self.gens.len());
                for &x in &self.gens {
                    col.extend(m.carrier().add(&m.act(self.image(x), &e), &m.carrier().neg(&e)));
                }
                svec_from_dense(&col)
            })
            .collect()
    }

    /// Columns of d¹: M^gens → M^rels.
    pub fn coboundary1(&self, m: &GammaModule) -> Vec<SVec> {
        let k = m.rank();
        let nr = self.relators.len();
        let mut cols = Vec::new();
        for x in 0..self.gens.len() {
            for b in 0..k {
                let mut col = vec![Int::zero(); k * nr];
                for r in 0..nr {
                    let v = self.ring_act(m, &self.fox[r][x], b, false);
                    col[r * k..(r + 1) * k].clone_from_slice(&v);
                }
                cols.push(svec_from_dense(&col));
            }
        }
        cols
    }

    /// H₁(G, M) = ker ∂₁ / im ∂₂, with cycle representatives in M^gens.
    pub fn h1(&self, m: &GammaModule) -> Result<H1, Error> {
        self.check_module(m)?;
        let c1 = self.chain_moduli(m, 1);
        let numer = kernel_generators(self.boundary1(m), &m.carrier().moduli(), &c1);
        let sq = Subquotient::new(&c1, numer, self.boundary2(m));
        Ok(H1 { module: m.clone(), sq })
    }

    /// Z¹, B¹ and H¹ of crossed homomorphisms G → M.
    pub fn z1(&self, m: &GammaModule) -> Result<Z1, Error> {
        self.check_module(m)?;
        let c1 = self.chain_moduli(m, 1);
        let gens = kernel_generators(self.coboundary1(m), &self.chain_moduli(m, 2), &c1);
        let b1 = self.coboundary0(m);
        let z1 = Subquotient::span(&c1, gens.clone());
        let h1 = Subquotient::new(&c1, gens, b1.clone());
        Ok(Z1 { module: m.clone(), z1, b1, h1 })
    }

    /// Value at an arbitrary element of the crossed homomorphism with the given
    /// generator values (A acts trivially on M): f(a·w_σ) = Σ a_i f(a_i) + f(t_σ).
    pub fn crossed_hom_value(&self, m: &GammaModule, c: &[Int], x: &ExtElement) -> Vec<Int> {
        let k = m.rank();
        let mut acc = m.carrier().zero();
        let a = self.ext.carrier().reduce(&x.a);
        for (i, ci) in a.iter().enumerate() {
            if !ci.is_zero() {
                acc = m.carrier().add(&acc, &m.carrier().scale(ci, &c[i * k..(i + 1) * k]));
            }
        }
        if x.sigma != 0 {
            let xi = self.gen_index(Gen::T(x.sigma));
            acc = m.carrier().add(&acc, &c[xi * k..(xi + 1) * k]);
        }
        acc
    }

    /// Fox 1-chain of the bar chain m⊗[g]: block x is m·(∂w/∂x) for the
    /// normal-form word w of g. Homologous cycles go to homologous cycles.
    pub fn bar_to_fox(&self, m: &GammaModule, g: &ExtElement, v: &[Int]) -> Vec<Int> {
        let k = m.rank();
        let row = self.fox_row(&self.word_of(g));
        let mut out = vec![Int::zero(); k * self.gens.len()];
        for (x, lam) in row.iter().enumerate() {
            for (b, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let col = self.ring_act(m, lam, b, true);
                for i in 0..k {
                    out[x * k + i] += c * &col[i];
                }
            }
        }
        let md = m.carrier().moduli();
        out.iter().enumerate().map(|(i, x)| if md[i % k].is_zero() { x.clone() } else { x.reduce(&md[i % k]) }).collect()
    }

    /// Sum of the columns of ∂₂ weighted by `v`, i.e. ∂₂ applied to a 2-chain.
    pub fn apply_boundary2(&self, m: &GammaModule, v: &[Int]) -> SVec {
        let cols = self.boundary2(m);
        let md = self.chain_moduli(m, 1);
        let mut acc: SVec = Vec::new();
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                acc = lin_comb(&Int::one(), &acc, x, &cols[j], Some(&md));
            }
        }
        acc
    }
}

/// H₁(G, M) with Fox-coordinate representatives.
#[derive(Clone, Debug)]
pub struct H1 {
    pub module: GammaModule,
    pub sq: Subquotient,
}

impl H1 {
    pub fn group(&self) -> &FgAb {
        &self.sq.group
    }

    pub fn rep(&self, k: usize) -> Vec<Int> {
        self.sq.rep_dense(k)
    }

    /// Class of a 1-cycle in M^gens.
    pub fn classify(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.sq.classify_dense(v)
    }
}

/// Crossed homomorphisms: Z¹ as a subgroup of M^gens, B¹ generators, H¹ = Z¹/B¹.
#[derive(Clone, Debug)]
pub struct Z1 {
    pub module: GammaModule,
    pub z1: Subquotient,
    pub b1: Vec<SVec>,
    pub h1: Subquotient,
}

impl Z1 {
    pub fn h1_group(&self) -> &FgAb {
        &self.h1.group
    }

    pub fn z1_group(&self) -> &FgAb {
        &self.z1.group
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extgrp::ext::{abelianization, ExtTable};
    use crate::int::int;
    use crate::zlin::sparse::lin_comb;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn c4_model() -> FactorSet {
        let a = GammaModule::trivial(&c2(), FgAb::cyclic(2));
        FactorSet::new(a, vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]]).unwrap()
    }

    fn unramified() -> FactorSet {
        let a = GammaModule::trivial(&c2(), FgAb::free(1));
        FactorSet::new(a, vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]]).unwrap()
    }

    fn composes_to_zero(p: &Presentation, m: &GammaModule) -> bool {
        let d1 = p.boundary1(m);
        let md = m.carrier().moduli();
        p.boundary2(m).iter().all(|col| {
            let mut acc: SVec = Vec::new();
            for (i, x) in col {
                acc = lin_comb(&Int::one(), &acc, x, &d1[*i], Some(&md));
            }
            acc.is_empty()
        })
    }

    #[test]
    fn relators_evaluate_to_identity() {
        for d in [c4_model(), unramified()] {
            let p = Presentation::new(&d);
            for (_, w) in p.relators() {
                assert_eq!(p.extension().normal_form(&p.evaluate(w)), p.extension().identity());
            }
        }
    }

    #[test]
    fn h1_examples() {
        let p = Presentation::new(&c4_model());
        let z = GammaModule::trivial(&c2(), FgAb::free(1));
        assert_eq!(*p.h1(&z).unwrap().group(), FgAb::cyclic(4));
        let p = Presentation::new(&unramified());
        let sign = GammaModule::rank_one(&c2(), &[1, -1]).unwrap();
        assert!(composes_to_zero(&p, &sign));
        assert!(p.h1(&sign).unwrap().group().is_trivial());
        assert_eq!(*p.h1(&z).unwrap().group(), FgAb::free(1));
    }

    #[test]
    fn split_case_is_a_product() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let a = GammaModule::trivial(&c3, FgAb::cyclic(2));
        let p = Presentation::new(&FactorSet::zero(&a));
        let z = GammaModule::trivial(&c3, FgAb::free(1));
        assert_eq!(p.h1(&z).unwrap().group().to_string(), "Z/6");
    }

    #[test]
    fn z1_examples() {
        let p = Presentation::new(&c4_model());
        let z3 = GammaModule::trivial(&c2(), FgAb::cyclic(3));
        assert!(p.z1(&z3).unwrap().h1_group().is_trivial());
        let z4 = GammaModule::trivial(&c2(), FgAb::cyclic(4));
        assert_eq!(*p.z1(&z4).unwrap().h1_group(), FgAb::cyclic(4));
        let zero = GammaModule::trivial(&c2(), FgAb::trivial());
        let z = p.z1(&zero).unwrap();
        assert!(z.z1_group().is_trivial() && z.h1_group().is_trivial());
    }

    #[test]
    fn abelianization_oracle_on_s3_extension() {
        // S₃ acting on ℤ/3 through the sign, δ = 0
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let sign: Vec<i64> = (0..6).map(|g| if [0, 3, 4].contains(&g) { 1 } else { 2 }).collect();
        let a = GammaModule::cyclic_with(&s3, 3, &sign).unwrap();
        let d = FactorSet::zero(&a);
        let p = Presentation::new(&d);
        let z = GammaModule::trivial(&s3, FgAb::free(1));
        let table = ExtTable::new(p.extension()).unwrap();
        assert_eq!(*p.h1(&z).unwrap().group(), abelianization(&table.group));
    }
}
