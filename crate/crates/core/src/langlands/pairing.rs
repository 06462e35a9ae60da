use super::torus::{TorusDatum, WeilDatum};
use crate::extgrp::{ExtElement, Presentation, Z1, H1};
use crate::gmod::GammaModule;
use crate::int::Int;
use crate::zlin::{ext1_ab, hom_group, AbHom, FgAb, HomGroup, IntMatrix, Quotient};
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A 1-chain Σ w⊗x of the bar complex.
type Chain = Vec<(ExtElement, Vec<Int>)>;

/// Element lists of H¹ and H₁ with the table of pairings between them.
pub type PairingTable = (Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>);

/// L⊗C_m, built as (ℤ/m)^k with the action of L reduced mod m. `raw` coordinates
/// are those of L; `module` carries normal coordinates.
#[derive(Clone, Debug)]
pub struct DualPoints {
    pub module: GammaModule,
    pub quotient: Quotient,
    pub m: Int,
}

impl DualPoints {
    pub fn new(t: &TorusDatum, m: &Int) -> Result<DualPoints, Error> {
        if m.is_zero() || m.is_negative() {
            return Err(Error::InvalidModule(format!("coefficient order must be positive, got {}", m)));
        }
        let k = t.rank();
        let action: Vec<IntMatrix> = t.group().elements().map(|g| t.chars.action(g).clone()).collect();
        let (module, quotient) = GammaModule::from_raw(t.group(), &vec![m.clone(); k], &action)?;
        Ok(DualPoints { module, quotient, m: m.clone() })
    }

    pub fn raw(&self, v: &[Int]) -> Vec<Int> {
        self.quotient.lift(v).into_iter().map(|x| x.reduce(&self.m)).collect()
    }

    pub fn from_raw(&self, v: &[Int]) -> Vec<Int> {
        self.quotient.project(v)
    }

    /// ⟨t, x⟩ ∈ ℤ/m for t ∈ L⊗C_m (normal coordinates) and x ∈ L̂.
    pub fn pair(&self, t: &[Int], x: &[Int]) -> Int {
        TorusDatum::evaluate(&self.raw(t), x).reduce(&self.m)
    }

    pub fn cyclic(&self) -> FgAb {
        FgAb::from_cyclic_orders(std::slice::from_ref(&self.m))
    }
}

fn check_cocycle(p: &Presentation, d: &DualPoints, phi: &[Int]) -> Result<(), Error> {
    let md = p.chain_moduli(&d.module, 2);
    let mut out = vec![Int::zero(); md.len()];
    for (c, col) in p.coboundary1(&d.module).iter().enumerate() {
        if phi[c].is_zero() {
            continue;
        }
        for (r, v) in col {
            out[*r] += &phi[c] * v;
        }
    }
    if out.iter().zip(&md).all(|(x, m)| x.reduce(m).is_zero()) {
        Ok(())
    } else {
        Err(Error::NotACocycle("φ is not a crossed homomorphism".into()))
    }
}

/// f(φ, x, t, ψ) = [φ, ψ] + ⟨t, x + dψ⟩ with [φ, ψ] = Σ_w ⟨φ(w), ψ(w)⟩ and
/// dψ = Σ_w w⁻¹ψ(w) − ψ(w). φ is given by its generator values.
pub fn poincare_pairing(w: &WeilDatum, t: &TorusDatum, d: &DualPoints, phi: &[Int], x: &[Int], tp: &[Int], psi: &[(ExtElement, Vec<Int>)]) -> Result<Int, Error> {
    let p = &w.presentation;
    check_cocycle(p, d, phi)?;
    let lh = &t.cochar;
    let mut bracket = Int::zero();
    let mut dpsi = lh.carrier().zero();
    for (g, v) in psi {
        let val = p.crossed_hom_value(&d.module, phi, g);
        bracket += d.pair(&val, v);
        let gi = t.group().inv(g.sigma);
        dpsi = lh.carrier().add(&dpsi, &lh.carrier().add(&lh.act(gi, v), &lh.carrier().neg(v)));
    }
    let y = lh.carrier().add(x, &dpsi);
    Ok((bracket + d.pair(tp, &y)).reduce(&d.m))
}

/// Σ_x ⟨φ_x, z_x⟩ on generator coordinates: the pairing of a cocycle with a
/// Fox 1-cycle.
fn fox_pair(d: &DualPoints, k: usize, phi: &[Int], z: &[Int]) -> Int {
    let r = d.module.rank();
    let ngens = z.len().checked_div(k).unwrap_or(0);
    let mut acc = Int::zero();
    for x in 0..ngens {
        acc += d.pair(&phi[x * r..(x + 1) * r], &z[x * k..(x + 1) * k]);
    }
    acc.reduce(&d.m)
}

/// Sweep of [dt, ψ] = ⟨t, dψ⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PairingCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// t over a basis of L⊗C_m, ψ over w⊗e_j with w a presentation generator (all
/// of G when A is finite).
pub fn pairing_cocycle_check(w: &WeilDatum, t: &TorusDatum, m: &Int) -> Result<PairingCheck, Error> {
    let d = DualPoints::new(t, m)?;
    let p = &w.presentation;
    let ext = p.extension();
    let elements: Vec<ExtElement> = if ext.is_finite() { ext.elements()? } else { p.generators().iter().map(|&g| p.gen_element(g)).collect() };
    let d0 = p.coboundary0(&d.module);
    let nfox = p.chain_moduli(&d.module, 1).len();
    let lh = &t.cochar;
    let mut checked = 0;
    let mut failures = Vec::new();
    for (b, col) in d0.iter().enumerate() {
        let tp = d.module.carrier().basis(b);
        let mut dt = vec![Int::zero(); nfox];
        for (r, v) in col {
            dt[*r] = v.clone();
        }
        for g in &elements {
            for j in 0..t.rank() {
                let x = lh.carrier().basis(j);
                let left = TorusDatum::evaluate(&d.raw(&p.crossed_hom_value(&d.module, &dt, g)), &x).reduce(m);
                let gi = t.group().inv(g.sigma);
                let dpsi = lh.carrier().add(&lh.act(gi, &x), &lh.carrier().neg(&x));
                let right = d.pair(&tp, &dpsi);
                checked += 1;
                if left != right {
                    failures.push(format!("t = e{}, ψ = {}⊗e{}: {} ≠ {}", b, g, j, left, right));
                }
            }
        }
    }
    Ok(PairingCheck { checked, failures })
}

/// The induced pairing H¹(G, L⊗C_m) × H₁(G, L̂) → C_m on all pairs of
/// elements; both groups must be finite.
pub fn induced_pairing_table(w: &WeilDatum, t: &TorusDatum, m: &Int) -> Result<PairingTable, Error> {
    let d = DualPoints::new(t, m)?;
    let p = &w.presentation;
    let z1 = p.z1(&d.module)?;
    let h1 = p.h1(&t.cochar)?;
    if !h1.group().is_finite() {
        return Err(Error::NotFinite(format!("H_1 = {}", h1.group())));
    }
    let phis = z1.h1_group().elements();
    let zs = h1.group().elements();
    let table = phis.iter().map(|a| zs.iter().map(|b| pair_classes(&d, t.rank(), &z1, &h1, a, b)).collect()).collect();
    Ok((phis, zs, table))
}

fn class_rep(sq_rank: usize, gens: impl Fn(usize) -> Vec<Int>, coords: &[Int], len: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); len];
    for (i, c) in coords.iter().enumerate().take(sq_rank) {
        if c.is_zero() {
            continue;
        }
        for (o, g) in out.iter_mut().zip(gens(i)) {
            *o += c * &g;
        }
    }
    out
}

fn pair_classes(d: &DualPoints, k: usize, z1: &Z1, h1: &H1, a: &[Int], b: &[Int]) -> Int {
    let n = z1.h1.ambient().len();
    let phi = class_rep(a.len(), |i| z1.h1.rep_dense(i), a, n);
    let z = class_rep(b.len(), |i| h1.rep(i), b, h1.sq.ambient().len());
    fox_pair(d, k, &phi, &z)
}

/// Perfectness of a pairing table: no nonzero row or column is identically zero.
pub fn table_is_perfect(rows: &[Vec<Int>], row_keys: &[Vec<Int>], col_keys: &[Vec<Int>]) -> bool {
    let nonzero = |v: &Vec<Int>| v.iter().any(|x| !x.is_zero());
    let rows_ok = rows.iter().zip(row_keys).all(|(r, k)| !nonzero(k) || r.iter().any(|x| !x.is_zero()));
    let cols_ok = (0..col_keys.len()).all(|j| !nonzero(&col_keys[j]) || rows.iter().any(|r| !r[j].is_zero()));
    rows_ok && cols_ok && rows.len() == col_keys.len()
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub h1: FgAb,
    pub homology: FgAb,
    pub coinvariants: FgAb,
    pub ext: FgAb,
    pub hom: FgAb,
    /// p: H¹ → Hom(H₁(G, L̂), C_m)
    pub map: AbHom,
    pub surjective: bool,
    pub order_identity: bool,
    /// Images of a section of p on the generators of Hom, when one was found.
    pub section: Option<Vec<Vec<Int>>>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.surjective && self.order_identity && self.section.is_some()
    }
}

fn pairing_map(d: &DualPoints, k: usize, z1: &Z1, h1: &H1, hg: &HomGroup) -> Result<AbHom, Error> {
    let cm = d.cyclic();
    let n = z1.h1.ambient().len();
    let imgs: Vec<Vec<Int>> = (0..z1.h1_group().ngens())
        .map(|i| {
            let phi = class_rep(1, |_| z1.h1.rep_dense(i), &[Int::one()], n);
            let mut mat = IntMatrix::zeros(cm.ngens(), h1.group().ngens());
            for j in 0..h1.group().ngens() {
                let v = fox_pair(d, k, &phi, &h1.rep(j));
                for r in 0..cm.ngens() {
                    mat[(r, j)] = v.clone();
                }
            }
            hg.from_matrix(&mat)
        })
        .collect();
    AbHom::from_images(z1.h1_group(), &hg.group, &imgs)
}

/// |H¹(G, L⊗C_m)| = |Ext¹(L̂_Γ, C_m)|·|Hom(H₁(G, L̂), C_m)|, surjectivity of the
/// pairing map and a section of it.
pub fn duality_orders(w: &WeilDatum, t: &TorusDatum, m: &Int) -> Result<DualityReport, Error> {
    let d = DualPoints::new(t, m)?;
    let p = &w.presentation;
    let z1 = p.z1(&d.module)?;
    let h1 = p.h1(&t.cochar)?;
    let cm = d.cyclic();
    let hg = hom_group(h1.group(), &cm);
    let map = pairing_map(&d, t.rank(), &z1, &h1, &hg)?;
    let coinvariants = t.cochar.coinvariants().group;
    let ext = ext1_ab(&coinvariants, m);
    let h1g = z1.h1_group().clone();
    let order_identity = match (h1g.order(), ext.order(), hg.group.order()) {
        (Some(a), Some(b), Some(c)) => a == b * c,
        _ => false,
    };
    let surjective = map.is_surjective();
    let section = if surjective { find_section(&map) } else { None };
    Ok(DualityReport { h1: h1g, homology: h1.group().clone(), coinvariants, ext, hom: hg.group.clone(), map, surjective, order_identity, section })
}

/// For each generator e of the target (order n), some x with p(x) = e and nx = 0.
fn find_section(map: &AbHom) -> Option<Vec<Vec<Int>>> {
    let src = map.source();
    let tgt = map.target();
    let (kg, incl) = map.kernel();
    let ker: Vec<Vec<Int>> = if kg.is_finite() { kg.elements().iter().map(|k| incl.apply(k)).collect() } else { return None };
    let mut out = Vec::new();
    for i in 0..tgt.ngens() {
        let e = tgt.basis(i);
        let n = tgt.element_order(&e)?;
        let x0 = map.solve_any(&e)?;
        let x = ker.iter().map(|k| src.add(&x0, k)).find(|x| src.is_zero(&src.scale(&n, x)))?;
        out.push(x);
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl FunctorialityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// f_T(φ, gx, t, gψ) = f_S(ĝφ, x, ĝt, ψ) for g: L̂_S → L̂_T (a k_T × k_S matrix).
/// Samples are the generators together with zero, plus `random` extra
/// combinations drawn from `seed`.
pub fn functoriality_check(w: &WeilDatum, s: &TorusDatum, t: &TorusDatum, g: &IntMatrix, m: &Int, random: usize, seed: u64) -> Result<FunctorialityReport, Error> {
    if g.rows() != t.rank() || g.cols() != s.rank() || !s.cochar.is_equivariant(&t.cochar, g) {
        return Err(Error::NotEquivariant("g does not commute with the Γ-actions".into()));
    }
    let p = &w.presentation;
    let ds = DualPoints::new(s, m)?;
    let dt = DualPoints::new(t, m)?;
    let gt = g.transpose();
    let hat = |u: &[Int]| ds.from_raw(&gt.mul_vec(&dt.raw(u)));
    let rt = dt.module.rank();
    let hat_cochain = |phi: &[Int]| -> Vec<Int> { phi.chunks(rt.max(1)).take(p.generators().len()).flat_map(&hat).collect() };

    let zt = p.z1(&dt.module)?;
    let nfox_t = zt.z1.ambient().len();
    let mut phis: Vec<Vec<Int>> = vec![vec![Int::zero(); nfox_t]];
    phis.extend((0..zt.z1_group().ngens()).map(|i| zt.z1.rep_dense(i)));
    let mut xs: Vec<Vec<Int>> = vec![s.cochar.carrier().zero()];
    xs.extend((0..s.rank()).map(|j| s.cochar.carrier().basis(j)));
    let mut ts: Vec<Vec<Int>> = vec![dt.module.carrier().zero()];
    ts.extend((0..rt).map(|j| dt.module.carrier().basis(j)));
    let gens: Vec<ExtElement> = p.generators().iter().map(|&x| p.gen_element(x)).collect();
    let mut psis: Vec<Chain> = vec![Vec::new()];
    for e in &gens {
        for x in xs.iter().skip(1) {
            psis.push(vec![(e.clone(), x.clone())]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| Int::from(rng.gen_range(-3i64..=3));
    // the pairing is bilinear in (φ, t) against (x, ψ): generators against generators
    let zero_phi = vec![Int::zero(); nfox_t];
    let mut lefts: Vec<(Vec<Int>, Vec<Int>)> = phis.iter().map(|phi| (phi.clone(), ts[0].clone())).collect();
    lefts.extend(ts.iter().skip(1).map(|tp| (zero_phi.clone(), tp.clone())));
    let mut rights: Vec<(Vec<Int>, Chain)> = xs.iter().map(|x| (x.clone(), Vec::new())).collect();
    rights.extend(psis.iter().skip(1).map(|psi| (xs[0].clone(), psi.clone())));
    let mut samples: Vec<(Vec<Int>, Vec<Int>, Vec<Int>, Chain)> = Vec::new();
    for (phi, tp) in &lefts {
        for (x, psi) in &rights {
            samples.push((phi.clone(), x.clone(), tp.clone(), psi.clone()));
        }
    }
    for _ in 0..random {
        let mut phi = vec![Int::zero(); nfox_t];
        for i in 0..zt.z1_group().ngens() {
            let c = small(&mut rng);
            for (o, v) in phi.iter_mut().zip(zt.z1.rep_dense(i)) {
                *o += &c * &v;
            }
        }
        let phi = dt_reduce(&p.chain_moduli(&dt.module, 1), &phi);
        let x: Vec<Int> = (0..s.rank()).map(|_| small(&mut rng)).collect();
        let tp: Vec<Int> = dt.module.carrier().reduce(&(0..rt).map(|_| small(&mut rng)).collect::<Vec<_>>());
        let psi: Vec<(ExtElement, Vec<Int>)> = gens.iter().map(|e| (e.clone(), (0..s.rank()).map(|_| small(&mut rng)).collect())).collect();
        samples.push((phi, x, tp, psi));
    }
    let mut failures = Vec::new();
    for (phi, x, tp, psi) in &samples {
        let gpsi: Vec<(ExtElement, Vec<Int>)> = psi.iter().map(|(e, v)| (e.clone(), g.mul_vec(v))).collect();
        let left = poincare_pairing(w, t, &dt, phi, &g.mul_vec(x), tp, &gpsi)?;
        let right = poincare_pairing(w, s, &ds, &hat_cochain(phi), x, &hat(tp), psi)?;
        if left != right {
            failures.push(format!("x = {:?}, t = {:?}: {} ≠ {}", x, tp, left, right));
        }
    }
    Ok(FunctorialityReport { checked: samples.len(), failures })
}

fn dt_reduce(md: &[Int], v: &[Int]) -> Vec<Int> {
    v.iter().zip(md).map(|(x, m)| if m.is_zero() { x.clone() } else { x.reduce(m) }).collect()
}
