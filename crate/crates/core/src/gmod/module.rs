use super::group::{FiniteGroup, Subgroup};
use crate::int::Int;
use crate::zlin::sparse::{kernel_generators, svec_from_dense};
use crate::zlin::{hom_group, tensor_quotient, AbHom, FgAb, HomGroup, IntMatrix, Quotient, Subquotient};
use crate::Error;
use std::sync::Arc;

/// A finitely generated abelian group with an action of a finite group,
/// one matrix per group element in the carrier's canonical coordinates.
#[derive(Clone, Debug)]
pub struct GammaModule {
    group: Arc<FiniteGroup>,
    carrier: FgAb,
    action: Vec<IntMatrix>,
}

impl PartialEq for GammaModule {
    fn eq(&self, other: &GammaModule) -> bool {
        *self.group == *other.group && self.carrier == other.carrier && self.action == other.action
    }
}

impl Eq for GammaModule {}

/// M^Γ with its inclusion and a classifier for invariant elements.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub group: FgAb,
    pub inclusion: AbHom,
    sq: Subquotient,
}

impl Invariants {
    /// Coordinates in `group` of an invariant element of the carrier.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.sq.classify_dense(v)
    }
}

/// M_Γ with its projection.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub group: FgAb,
    pub projection: AbHom,
    quotient: Quotient,
}

impl Coinvariants {
    pub fn project(&self, v: &[Int]) -> Vec<Int> {
        self.projection.apply(v)
    }

    /// A carrier element representing the class with the given coordinates.
    pub fn lift(&self, v: &[Int]) -> Vec<Int> {
        self.quotient.lift(v)
    }
}

impl GammaModule {
    pub fn new(group: Arc<FiniteGroup>, carrier: FgAb, action: Vec<IntMatrix>) -> Result<GammaModule, Error> {
        let n = group.order();
        if action.len() != n {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of order {}", action.len(), n)));
        }
        let mut reduced = Vec::with_capacity(n);
        for (g, m) in action.into_iter().enumerate() {
            let h = AbHom::new(carrier.clone(), carrier.clone(), m)
                .map_err(|e| Error::InvalidModule(format!("action of element {}: {}", g, e)))?;
            reduced.push(h.matrix().clone());
        }
        let k = carrier.ngens();
        if reduced[0] != IntMatrix::identity(k) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        let md = carrier.moduli();
        for g in 0..n {
            for h in 0..n {
                let mut prod = reduced[g].mul(&reduced[h]);
                prod.reduce_rows(&md);
                if prod != reduced[group.mul(g, h)] {
                    return Err(Error::InvalidModule(format!("action(g)∘action(h) ≠ action(gh) at g={}, h={}", g, h)));
                }
            }
        }
        Ok(GammaModule { group, carrier, action: reduced })
    }

    pub fn trivial(group: &Arc<FiniteGroup>, carrier: FgAb) -> GammaModule {
        let k = carrier.ngens();
        GammaModule { group: group.clone(), carrier, action: vec![IntMatrix::identity(k); group.order()] }
    }

    /// ℤ with g acting by `chi[g]` ∈ {±1}.
    pub fn rank_one(group: &Arc<FiniteGroup>, chi: &[i64]) -> Result<GammaModule, Error> {
        let action = chi.iter().map(|&s| IntMatrix::from_rows(&[vec![s]])).collect();
        GammaModule::new(group.clone(), FgAb::free(1), action)
    }

    /// A cyclic group ℤ/n (or ℤ for n = 0) with g acting by multiplication by `mult[g]`.
    pub fn cyclic_with(group: &Arc<FiniteGroup>, n: i64, mult: &[i64]) -> Result<GammaModule, Error> {
        let carrier = FgAb::cyclic(n);
        let action = mult
            .iter()
            .map(|&s| IntMatrix::from_int_rows(&vec![vec![Int::from(s)]; carrier.ngens()], carrier.ngens()))
            .collect();
        GammaModule::new(group.clone(), carrier, action)
    }

    /// Builds a module on ⊕ ℤ/raw_moduli and brings the carrier to normal form,
    /// conjugating the action; also returns the coordinate change.
    pub fn from_raw(group: &Arc<FiniteGroup>, raw_moduli: &[Int], raw_action: &[IntMatrix]) -> Result<(GammaModule, Quotient), Error> {
        let q = Quotient::of_diagonal(raw_moduli);
        let action = raw_action.iter().map(|a| q.to_normal.mul(a).mul(&q.from_normal)).collect();
        let m = GammaModule::new(group.clone(), q.group.clone(), action)?;
        Ok((m, q))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn carrier(&self) -> &FgAb {
        &self.carrier
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn rank(&self) -> usize {
        self.carrier.ngens()
    }

    pub fn act(&self, g: usize, v: &[Int]) -> Vec<Int> {
        self.carrier.reduce(&self.action[g].mul_vec(v))
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|a| *a == IntMatrix::identity(self.rank()))
    }

    /// Σ_g g·v
    pub fn norm_element(&self, v: &[Int]) -> Vec<Int> {
        let mut acc = self.carrier.zero();
        for g in self.group.elements() {
            acc = self.carrier.add(&acc, &self.act(g, v));
        }
        acc
    }

    pub fn invariants(&self) -> Invariants {
        let k = self.rank();
        let md = self.carrier.moduli();
        let mut tgt_moduli = Vec::new();
        for _ in 1..self.group.order() {
            tgt_moduli.extend(md.iter().cloned());
        }
        let columns = (0..k)
            .map(|j| {
                let mut col = Vec::new();
                for g in 1..self.group.order() {
                    let mut c = self.action[g].column(j);
                    c[j] -= Int::one();
                    col.extend(c);
                }
                svec_from_dense(&col)
            })
            .collect();
        let gens = kernel_generators(columns, &tgt_moduli, &md);
        let sq = Subquotient::span(&md, gens);
        let imgs: Vec<Vec<Int>> = (0..sq.group.ngens()).map(|i| sq.rep_dense(i)).collect();
        let inclusion = AbHom::from_images(&sq.group, &self.carrier, &imgs).expect("inclusion of invariants");
        Invariants { group: sq.group.clone(), inclusion, sq }
    }

    pub fn coinvariants(&self) -> Coinvariants {
        let k = self.rank();
        let mut rels = Vec::new();
        for g in 1..self.group.order() {
            for j in 0..k {
                let mut c = self.action[g].column(j);
                c[j] -= Int::one();
                rels.push(c);
            }
        }
        for (i, m) in self.carrier.moduli().iter().enumerate() {
            if !m.is_zero() {
                let mut c = vec![Int::zero(); k];
                c[i] = m.clone();
                rels.push(c);
            }
        }
        let q = Quotient::of_relations(k, &IntMatrix::from_columns(k, &rels));
        let projection = AbHom::new(self.carrier.clone(), q.group.clone(), q.to_normal.clone()).expect("coinvariant projection");
        Coinvariants { group: q.group.clone(), projection, quotient: q }
    }

    /// The norm M_Γ → M^Γ.
    pub fn norm_map(&self) -> AbHom {
        let co = self.coinvariants();
        let inv = self.invariants();
        let imgs: Vec<Vec<Int>> = (0..co.group.ngens())
            .map(|i| {
                let x = co.lift(&co.group.basis(i));
                inv.coords(&self.norm_element(&x)).expect("norm lands in invariants")
            })
            .collect();
        AbHom::from_images(&co.group, &inv.group, &imgs).expect("norm map")
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<GammaModule, Error> {
        if **sub.parent() != *self.group {
            return Err(Error::InvalidSubgroup("subgroup of a different group".into()));
        }
        let g = Arc::new(sub.as_group());
        let action = sub.elements().iter().map(|&e| self.action[e].clone()).collect();
        Ok(GammaModule { group: g, carrier: self.carrier.clone(), action })
    }

    /// ℤ[Γ] ⊗_{ℤ[Γ′]} M for M a module over `sub.as_group()`; block i of the raw
    /// carrier is r_i ⊗ M for the i-th coset representative r_i.
    pub fn induce(&self, sub: &Subgroup) -> Result<(GammaModule, Quotient), Error> {
        if sub.as_group() != *self.group {
            return Err(Error::InvalidSubgroup("module group is not the given subgroup".into()));
        }
        let parent = sub.parent();
        let reps = sub.left_coset_reps();
        let k = self.rank();
        let blocks = reps.len();
        let coset_of = |x: usize| -> (usize, usize) {
            for (i, &r) in reps.iter().enumerate() {
                let h = parent.mul(parent.inv(r), x);
                if let Some(l) = sub.local_index(h) {
                    return (i, l);
                }
            }
            unreachable!("cosets cover the group")
        };
        let mut raw_moduli = Vec::new();
        for _ in 0..blocks {
            raw_moduli.extend(self.carrier.moduli());
        }
        let mut action = Vec::with_capacity(parent.order());
        for g in parent.elements() {
            let mut m = IntMatrix::zeros(k * blocks, k * blocks);
            for (i, &r) in reps.iter().enumerate() {
                // g r_i = r_j h
                let (j, h) = coset_of(parent.mul(g, r));
                for a in 0..k {
                    for b in 0..k {
                        m[(j * k + a, i * k + b)] = self.action[h][(a, b)].clone();
                    }
                }
            }
            action.push(m);
        }
        GammaModule::from_raw(parent, &raw_moduli, &action)
    }

    fn check_same_group(&self, other: &GammaModule) -> Result<(), Error> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch("modules over different groups".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &GammaModule) -> Result<(GammaModule, Quotient), Error> {
        self.check_same_group(other)?;
        let (k, l) = (self.rank(), other.rank());
        let mut raw = self.carrier.moduli();
        raw.extend(other.carrier.moduli());
        let action: Vec<IntMatrix> = self
            .group
            .elements()
            .map(|g| {
                let mut m = IntMatrix::zeros(k + l, k + l);
                for a in 0..k {
                    for b in 0..k {
                        m[(a, b)] = self.action[g][(a, b)].clone();
                    }
                }
                for a in 0..l {
                    for b in 0..l {
                        m[(k + a, k + b)] = other.action[g][(a, b)].clone();
                    }
                }
                m
            })
            .collect();
        GammaModule::from_raw(&self.group, &raw, &action)
    }

    /// M ⊗ N with the diagonal action.
    pub fn tensor(&self, other: &GammaModule) -> Result<TensorModule, Error> {
        self.check_same_group(other)?;
        let q = tensor_quotient(&self.carrier, &other.carrier);
        let (k, l) = (self.rank(), other.rank());
        let action = self
            .group
            .elements()
            .map(|g| {
                let mut kron = IntMatrix::zeros(k * l, k * l);
                for a in 0..k {
                    for b in 0..k {
                        let x = &self.action[g][(a, b)];
                        if x.is_zero() {
                            continue;
                        }
                        for c in 0..l {
                            for d in 0..l {
                                let y = &other.action[g][(c, d)];
                                if !y.is_zero() {
                                    kron[(a * l + c, b * l + d)] = x * y;
                                }
                            }
                        }
                    }
                }
                q.to_normal.mul(&kron).mul(&q.from_normal)
            })
            .collect();
        let module = GammaModule::new(self.group.clone(), q.group.clone(), action)?;
        Ok(TensorModule { module, quotient: q, left_rank: k, right_rank: l })
    }

    /// Hom(M, N) with (g·h)(x) = g·h(g⁻¹x).
    pub fn hom(&self, other: &GammaModule) -> Result<HomModule, Error> {
        self.check_same_group(other)?;
        let hg = hom_group(&self.carrier, &other.carrier);
        let n = hg.group.ngens();
        let action = self
            .group
            .elements()
            .map(|g| {
                let gi = self.group.inv(g);
                let cols: Vec<Vec<Int>> = (0..n)
                    .map(|k| {
                        let h = hg.to_matrix(&self.carrier, &other.carrier, &hg.group.basis(k));
                        let mut gh = other.action[g].mul(&h).mul(&self.action[gi]);
                        gh.reduce_rows(&other.carrier.moduli());
                        hg.from_matrix(&gh)
                    })
                    .collect();
                IntMatrix::from_columns(n, &cols)
            })
            .collect();
        let module = GammaModule::new(self.group.clone(), hg.group.clone(), action)?;
        Ok(HomModule { module, data: hg })
    }

    /// Contragredient Hom(M, ℤ) of a free module: g acts by (g⁻¹)ᵀ.
    pub fn dual(&self) -> Result<GammaModule, Error> {
        if !self.carrier.torsion().is_empty() {
            return Err(Error::InvalidModule("dual requires a free carrier".into()));
        }
        let action = self.group.elements().map(|g| self.action[self.group.inv(g)].transpose()).collect();
        GammaModule::new(self.group.clone(), self.carrier.clone(), action)
    }

    /// M ⊗ ℤ/m with the induced action.
    pub fn mod_m(&self, m: &Int) -> Result<GammaModule, Error> {
        let cm = GammaModule::trivial(&self.group, FgAb::from_cyclic_orders(std::slice::from_ref(m)));
        Ok(self.tensor(&cm)?.module)
    }

    /// Same carrier and action, viewed over a group mapping onto this one:
    /// `proj[x]` is the image of element x.
    pub fn inflate(&self, big: &Arc<FiniteGroup>, proj: &[usize]) -> Result<GammaModule, Error> {
        let action = proj.iter().map(|&p| self.action[p].clone()).collect();
        GammaModule::new(big.clone(), self.carrier.clone(), action)
    }

    /// Whether `f` (a matrix from this carrier to `other`'s) commutes with the actions.
    pub fn is_equivariant(&self, other: &GammaModule, f: &IntMatrix) -> bool {
        self.group.elements().all(|g| {
            let mut a = f.mul(&self.action[g]);
            let mut b = other.action[g].mul(f);
            a.reduce_rows(&other.carrier.moduli());
            b.reduce_rows(&other.carrier.moduli());
            a == b
        })
    }
}

/// M ⊗ N together with its coordinate data.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub module: GammaModule,
    pub quotient: Quotient,
    left_rank: usize,
    right_rank: usize,
}

impl TensorModule {
    /// Ranks of the two factors; raw coordinate `p·right + q` stands for e_p ⊗ e_q.
    pub fn ranks(&self) -> (usize, usize) {
        (self.left_rank, self.right_rank)
    }

    /// Normal coordinates of m ⊗ n.
    pub fn pure(&self, m: &[Int], n: &[Int]) -> Vec<Int> {
        let mut raw = vec![Int::zero(); self.left_rank * self.right_rank];
        for (a, x) in m.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, y) in n.iter().enumerate() {
                if !y.is_zero() {
                    raw[a * self.right_rank + c] = x * y;
                }
            }
        }
        self.quotient.project(&raw)
    }
}

/// Hom(M, N) together with the translation between coordinates and matrices.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: GammaModule,
    pub data: HomGroup,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::int;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn swap(g: &Arc<FiniteGroup>) -> GammaModule {
        GammaModule::new(
            g.clone(),
            FgAb::free(2),
            vec![IntMatrix::identity(2), IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])],
        )
        .unwrap()
    }

    #[test]
    fn invariants_and_coinvariants() {
        let g = c2();
        let sign = GammaModule::rank_one(&g, &[1, -1]).unwrap();
        assert!(sign.invariants().group.is_trivial());
        assert_eq!(sign.coinvariants().group, FgAb::cyclic(2));
        let sw = swap(&g);
        assert_eq!(sw.invariants().group, FgAb::free(1));
        assert_eq!(sw.coinvariants().group, FgAb::free(1));
        let t6 = GammaModule::trivial(&g, FgAb::cyclic(6));
        assert_eq!(t6.invariants().group, FgAb::cyclic(6));
        assert_eq!(t6.coinvariants().group, FgAb::cyclic(6));
    }

    #[test]
    fn norm_maps() {
        let g = c2();
        let z = GammaModule::trivial(&g, FgAb::free(1));
        assert_eq!(z.norm_map().matrix(), &IntMatrix::from_rows(&[vec![2]]));
        let sign = GammaModule::rank_one(&g, &[1, -1]).unwrap();
        assert!(sign.norm_map().is_zero());
        let sw = swap(&g);
        let n = sw.norm_map();
        let co = sw.coinvariants();
        let inv = sw.invariants();
        let x = co.project(&[int(1), int(0)]);
        let image = inv.inclusion.apply(&n.apply(&x));
        assert_eq!(image, vec![int(1), int(1)]);
    }

    #[test]
    fn induction_and_restriction() {
        let g = c2();
        let triv = Arc::new(FiniteGroup::trivial());
        let z = GammaModule::trivial(&triv, FgAb::free(1));
        let (ind, _) = z.induce(&g.trivial_subgroup()).unwrap();
        assert_eq!(ind, swap(&g));
        let sign = GammaModule::rank_one(&g, &[1, -1]).unwrap();
        let r = sign.restrict(&g.trivial_subgroup()).unwrap();
        assert!(r.is_trivial_action());
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let z3 = GammaModule::trivial(&triv, FgAb::cyclic(3));
        let (ind, _) = z3.induce(&c3.trivial_subgroup()).unwrap();
        assert_eq!(ind.carrier().to_string(), "Z/3 + Z/3 + Z/3");
        assert_eq!(ind.act(1, &[int(1), int(0), int(0)]), vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn tensor_and_hom_modules() {
        let g = c2();
        let sign = GammaModule::rank_one(&g, &[1, -1]).unwrap();
        let t = sign.tensor(&sign).unwrap();
        assert!(t.module.is_trivial_action());
        let z = GammaModule::trivial(&g, FgAb::free(1));
        let m = swap(&g);
        assert_eq!(m.tensor(&z).unwrap().module, m);
        let z4 = GammaModule::trivial(&g, FgAb::cyclic(4));
        let h = swap(&g).hom(&z4).unwrap();
        assert_eq!(h.module.carrier().to_string(), "Z/4 + Z/4");
        assert_eq!(h.module.action(1), &IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn mismatched_groups() {
        let a = GammaModule::trivial(&c2(), FgAb::free(1));
        let b = GammaModule::trivial(&Arc::new(FiniteGroup::cyclic(3)), FgAb::free(1));
        assert!(matches!(a.tensor(&b), Err(Error::GroupMismatch(_))));
    }
}
