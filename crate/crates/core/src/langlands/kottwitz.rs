use super::torus::{TorusDatum, WeilDatum};
use crate::extgrp::{ExtElement, Extension, Gen, Presentation, H1};
use crate::gmod::{GammaModule, Invariants, TensorModule};
use crate::int::Int;
use crate::lhs::{cores, fox_to_bar};
use crate::zlin::sparse::{kernel_generators, svec_from_dense, svec_to_dense, SVec};
use crate::zlin::{AbHom, FgAb, Subquotient};
use crate::Error;

/// Section used to inflate a cocycle of A to G.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// w̃_τ = w_{τ⁻¹}⁻¹
    Tilde,
    /// w_τ
    Plain,
}

/// Result of an isomorphism certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub source: FgAb,
    pub target: FgAb,
    pub injective: bool,
    pub surjective: bool,
}

impl IsoCheck {
    pub fn of(f: &AbHom) -> IsoCheck {
        IsoCheck { source: f.source().clone(), target: f.target().clone(), injective: f.is_injective(), surjective: f.is_surjective() }
    }

    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective
    }
}

/// cores: H₁(G, L̂) → (L̂⊗A)^Γ on Fox representatives.
pub fn cores_h1(w: &WeilDatum, t: &TorusDatum) -> Result<(H1, Invariants, AbHom), Error> {
    let p = &w.presentation;
    let ext = p.extension();
    let lh = &t.cochar;
    let tensor = lh.tensor(w.kernel())?;
    let inv = tensor.module.invariants();
    let h1 = p.h1(lh)?;
    let imgs: Vec<Vec<Int>> = (0..h1.group().ngens())
        .map(|i| {
            let v = cores(ext, &tensor, lh, &fox_to_bar(p, lh.rank(), &h1.rep(i)));
            inv.coords(&v).ok_or_else(|| Error::NotACycle("corestriction is not invariant".into()))
        })
        .collect::<Result<_, _>>()?;
    let f = AbHom::from_images(h1.group(), &inv.group, &imgs)?;
    Ok((h1, inv, f))
}

/// H₁(G, L̂) → (L̂⊗A)^Γ is an isomorphism; needs the criterion.
pub fn tate_nakayama_iso_check(w: &WeilDatum, t: &TorusDatum) -> Result<IsoCheck, Error> {
    w.require_tn()?;
    Ok(IsoCheck::of(&cores_h1(w, t)?.2))
}

/// Σ_τ r_τ⁻¹·(x ⊗ δ_r(r_τ, g)) with r_τ g = δ_r(r_τ, g)·r_{τḡ}: the inflation
/// of a ↦ x⊗a along the section r.
pub fn transfer_cocycle_value(ext: &Extension, tensor: &TensorModule, lh: &GammaModule, x: &[Int], conv: Convention, g: &ExtElement) -> Vec<Int> {
    let gam = ext.gamma();
    let a = ext.kernel();
    let rep = |tau: usize| match conv {
        Convention::Plain => ext.w(tau),
        Convention::Tilde => ext.inv(&ext.w(gam.inv(tau))),
    };
    let tm = tensor.module.carrier();
    let mut acc = tm.zero();
    for tau in gam.elements() {
        let r = rep(tau);
        let h = ext.mul(&r, g);
        let d = ext.mul(&h, &ext.inv(&rep(h.sigma)));
        debug_assert_eq!(d.sigma, 0);
        let ti = gam.inv(tau);
        acc = tm.add(&acc, &tensor.pure(&lh.act(ti, x), &a.act(ti, &d.a)));
    }
    acc
}

/// Σ_τ w_{τ⁻¹}x ⊗ δ(g, w_{g⁻¹τ⁻¹}), the displayed form of c′(x)(g).
pub fn c_prime_closed_form(ext: &Extension, tensor: &TensorModule, lh: &GammaModule, x: &[Int], g: &ExtElement) -> Vec<Int> {
    let gam = ext.gamma();
    let tm = tensor.module.carrier();
    let gi = gam.inv(g.sigma);
    let mut acc = tm.zero();
    for tau in gam.elements() {
        let ti = gam.inv(tau);
        let d = ext.mul(g, &ext.w(gam.mul(gi, ti))).a;
        acc = tm.add(&acc, &tensor.pure(&lh.act(ti, x), &d));
    }
    acc
}

/// Z¹_alg and H¹_alg for M = L̂⊗A: pairs (y, z) ∈ L̂^Γ × Z¹(G, M) with
/// z(a) = y⊗a on A, modulo (0, dm). Ambient coordinates are y followed by the
/// generator values of z.
#[derive(Clone, Debug)]
pub struct AlgebraicH1 {
    pub tensor: TensorModule,
    pub z1_alg: Subquotient,
    pub h1_alg: Subquotient,
    pub boundaries: Vec<SVec>,
    ambient: Vec<Int>,
    rank: usize,
}

impl AlgebraicH1 {
    pub fn new(w: &WeilDatum, t: &TorusDatum) -> Result<AlgebraicH1, Error> {
        let p = &w.presentation;
        let lh = &t.cochar;
        let g = t.group();
        let k = lh.rank();
        let tensor = lh.tensor(w.kernel())?;
        let m = &tensor.module;
        let rm = m.rank();
        let ka = w.kernel().rank();
        let md = m.carrier().moduli();
        let nrel = p.chain_moduli(m, 2).len();
        let inv_rows = k * (g.order() - 1);
        let res_rows = ka * rm;
        let mut tgt = vec![Int::zero(); inv_rows];
        tgt.extend(p.chain_moduli(m, 2));
        for _ in 0..ka {
            tgt.extend(md.iter().cloned());
        }
        let mut ambient = vec![Int::zero(); k];
        ambient.extend(p.chain_moduli(m, 1));
        let mut cols: Vec<SVec> = Vec::with_capacity(ambient.len());
        for j in 0..k {
            let e = lh.carrier().basis(j);
            let mut col = vec![Int::zero(); inv_rows + nrel + res_rows];
            for s in 1..g.order() {
                let v = lh.act(s, &e);
                for i in 0..k {
                    col[(s - 1) * k + i] = &v[i] - &e[i];
                }
            }
            for i in 0..ka {
                let v = tensor.pure(&e, &w.kernel().carrier().basis(i));
                for b in 0..rm {
                    col[inv_rows + nrel + i * rm + b] = -&v[b];
                }
            }
            cols.push(svec_from_dense(&col));
        }
        let shift = inv_rows;
        for (c, col) in p.coboundary1(m).into_iter().enumerate() {
            let mut out: SVec = col.into_iter().map(|(r, v)| (r + shift, v)).collect();
            let (x, b) = (c / rm, c % rm);
            if let Gen::A(i) = p.generators()[x] {
                out.push((inv_rows + nrel + i * rm + b, Int::one()));
            }
            cols.push(out);
        }
        let tgt_red = tgt;
        let cols: Vec<SVec> = cols
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|(r, v)| (r, if tgt_red[r].is_zero() { v } else { v.reduce(&tgt_red[r]) }))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let gens = kernel_generators(cols, &tgt_red, &ambient);
        let boundaries: Vec<SVec> = p.coboundary0(m).into_iter().map(|c| c.into_iter().map(|(r, v)| (r + k, v)).collect()).collect();
        let z1_alg = Subquotient::span(&ambient, gens.clone());
        let h1_alg = Subquotient::new(&ambient, gens, boundaries.clone());
        Ok(AlgebraicH1 { tensor, z1_alg, h1_alg, boundaries, ambient, rank: k })
    }

    pub fn group(&self) -> &FgAb {
        &self.h1_alg.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    /// Class of an ambient vector, `None` if it is not in Z¹_alg.
    pub fn classify(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.h1_alg.classify_dense(v)
    }

    /// Every (0, dm) lies in Z¹_alg.
    pub fn boundaries_are_cocycles(&self) -> bool {
        self.boundaries.iter().all(|b| self.z1_alg.classify(b).is_some())
    }

    /// The ambient vector (y, z).
    pub fn pack(&self, y: &[Int], z: &[Int]) -> Vec<Int> {
        let mut v = y.to_vec();
        v.extend_from_slice(z);
        v
    }

    pub fn y_part<'a>(&self, v: &'a [Int]) -> &'a [Int] {
        &v[..self.rank]
    }

    pub fn z_part<'a>(&self, v: &'a [Int]) -> &'a [Int] {
        &v[self.rank..]
    }

    pub fn zero(&self) -> Vec<Int> {
        svec_to_dense(&Vec::new(), self.ambient.len())
    }
}

/// c′(x) = (Nx, inflation of a ↦ x⊗a) in the ambient coordinates of `alg`.
pub fn c_prime(w: &WeilDatum, t: &TorusDatum, alg: &AlgebraicH1, x: &[Int], conv: Convention) -> Vec<Int> {
    let p = &w.presentation;
    let ext = p.extension();
    let mut z = Vec::new();
    for &gen in p.generators() {
        z.extend(transfer_cocycle_value(ext, &alg.tensor, &t.cochar, x, conv, &p.gen_element(gen)));
    }
    alg.pack(&t.cochar.norm_element(x), &z)
}

/// The Kottwitz map c: L̂_Γ → H¹_alg.
#[derive(Clone, Debug)]
pub struct KottwitzMap {
    pub alg: AlgebraicH1,
    pub map: AbHom,
    /// c′ kills (g − 1)L̂, so c is defined on coinvariants.
    pub factors: bool,
    pub convention: Convention,
}

impl KottwitzMap {
    /// Isomorphism certificate; needs the criterion.
    pub fn certify(&self, w: &WeilDatum) -> Result<IsoCheck, Error> {
        w.require_tn()?;
        Ok(IsoCheck::of(&self.map))
    }
}

pub fn kottwitz_map(w: &WeilDatum, t: &TorusDatum, conv: Convention) -> Result<KottwitzMap, Error> {
    let alg = AlgebraicH1::new(w, t)?;
    let lh = &t.cochar;
    let co = lh.coinvariants();
    let k = lh.rank();
    let class = |x: &[Int]| alg.classify(&c_prime(w, t, &alg, x, conv)).ok_or_else(|| Error::NotACocycle("c′(x) is not in Z¹_alg".into()));
    let mut factors = true;
    for s in 1..t.group().order() {
        for j in 0..k {
            let e = lh.carrier().basis(j);
            let d = lh.carrier().add(&lh.act(s, &e), &lh.carrier().neg(&e));
            if !alg.group().is_zero(&class(&d)?) {
                factors = false;
            }
        }
    }
    let imgs: Vec<Vec<Int>> = (0..co.group.ngens()).map(|i| class(&co.lift(&co.group.basis(i)))).collect::<Result<_, _>>()?;
    let map = AbHom::from_images(&co.group, alg.group(), &imgs)?;
    Ok(KottwitzMap { alg, map, factors, convention: conv })
}

/// The TOR comparison square and its quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct TorReport {
    /// Generator pairs (w, x) checked.
    pub checked: usize,
    /// Pairs where c′(d(w⊗x)) ≠ d(cores(w⊗x)).
    pub failures: Vec<String>,
    /// Pairs where c′(w⁻¹x − x) ≠ d(cores(w⊗x)), i.e. where the square fails
    /// with the opposite sign on the top differential.
    pub opposite_sign_failures: usize,
    /// Pointwise checks at every element of G (finite A).
    pub pointwise_checked: usize,
    /// cores in degree −1 and c′ in degree 0, when the criterion holds.
    pub degree_minus1: Option<IsoCheck>,
    pub degree_0: Option<IsoCheck>,
}

impl TorReport {
    pub fn square_commutes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn pass(&self) -> bool {
        self.square_commutes()
            && self.degree_minus1.as_ref().is_none_or(|c| c.is_iso())
            && self.degree_0.as_ref().is_none_or(|c| c.is_iso())
    }
}

/// The top differential C₁/B₁ → L̂ of the comparison square, w⊗x ↦ x − w⁻¹x.
/// With this sign c′∘d = d∘cores; with w⁻¹x − x the square anticommutes.
pub fn tor_top_differential(t: &TorusDatum, g: &ExtElement, x: &[Int]) -> Vec<Int> {
    let lh = &t.cochar;
    lh.carrier().add(x, &lh.carrier().neg(&lh.act(t.group().inv(g.sigma), x)))
}

/// c′∘d = d∘cores on the generators w⊗x of C₁(G, L̂), with w running over the
/// presentation generators (all of G when A is finite), plus the degree −1/0
/// isomorphisms when the criterion holds.
pub fn verify_tor_quasi_iso(w: &WeilDatum, t: &TorusDatum) -> Result<TorReport, Error> {
    let p: &Presentation = &w.presentation;
    let ext = p.extension();
    let lh = &t.cochar;
    let k = lh.rank();
    let alg = AlgebraicH1::new(w, t)?;
    let tensor = &alg.tensor;
    let m = &tensor.module;
    let rm = m.rank();
    let d0 = p.coboundary0(m);
    let finite = ext.is_finite();
    let elements: Vec<ExtElement> = if finite { ext.elements()? } else { p.generators().iter().map(|&g| p.gen_element(g)).collect() };
    let md = alg.ambient.clone();
    let red = |v: &[Int]| -> Vec<Int> { v.iter().zip(&md).map(|(a, m)| if m.is_zero() { a.clone() } else { a.reduce(m) }).collect() };
    let mut failures = Vec::new();
    let mut opposite_sign_failures = 0;
    let mut checked = 0;
    let mut pointwise = 0;
    for g in &elements {
        for j in 0..k {
            let x = lh.carrier().basis(j);
            let dx = tor_top_differential(t, g, &x);
            let left = red(&c_prime(w, t, &alg, &dx, Convention::Tilde));
            let tt = cores(ext, tensor, lh, &[(g.clone(), x.clone())]);
            // d(t) = (0, generator values of s ↦ s·t − t)
            let mut z = vec![Int::zero(); rm * p.generators().len()];
            for (b, c) in tt.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (r, v) in &d0[b] {
                    z[*r] += c * v;
                }
            }
            let right = red(&alg.pack(&vec![Int::zero(); k], &z));
            checked += 1;
            let neg_left: Vec<Int> = red(&left.iter().map(|v| -v).collect::<Vec<_>>());
            if neg_left != right {
                opposite_sign_failures += 1;
            }
            if left != right {
                failures.push(format!("w = {}, x = e{}", g, j));
                continue;
            }
            if finite {
                for s in &elements {
                    let lhs = c_prime_closed_form(ext, tensor, lh, &dx, s);
                    let rhs = m.carrier().add(&m.act(s.sigma, &tt), &m.carrier().neg(&tt));
                    pointwise += 1;
                    if m.carrier().reduce(&lhs) != m.carrier().reduce(&rhs) {
                        failures.push(format!("w = {}, x = e{}, at g = {}", g, j, s));
                        break;
                    }
                }
            }
        }
    }
    let (degree_minus1, degree_0) = if w.tn.holds {
        let (_, _, f) = cores_h1(w, t)?;
        let c = kottwitz_map(w, t, Convention::Tilde)?;
        (Some(IsoCheck::of(&f)), Some(IsoCheck::of(&c.map)))
    } else {
        (None, None)
    };
    Ok(TorReport { checked, failures, opposite_sign_failures, pointwise_checked: pointwise, degree_minus1, degree_0 })
}
