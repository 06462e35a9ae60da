use super::fgab::{FgAb, Quotient};
use super::matrix::IntMatrix;
use super::snf::{hermite_basis, hermite_reduce};
use super::sparse::{kernel_generators, lattice_basis, reduce_svec, svec_from_dense, svec_to_dense, unit, Reducer, SVec};
use crate::int::Int;
use crate::Error;

/// A subgroup-of-a-quotient: (span of `numer`) + D over D, where D is the span
/// of `denom` plus the coordinate relations of the ambient ⊕ ℤ/m_i.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAb,
    ambient: Vec<Int>,
    numer: Vec<SVec>,
    to_normal: IntMatrix,
    reps: Vec<SVec>,
    reducer: Reducer,
}

impl Subquotient {
    pub fn new(ambient: &[Int], numer: Vec<SVec>, denom: Vec<SVec>) -> Subquotient {
        let mut red = Reducer::new(ambient.to_vec());
        for d in denom {
            red.insert(d, Vec::new());
        }
        // generators already in the span contribute nothing; dropping them keeps
        // the relation matrix as small as the quotient's length
        let mut kept = Vec::new();
        for z in numer {
            if !red.contains(&z) {
                red.insert(z.clone(), unit(kept.len()));
                kept.push(z);
            }
        }
        let numer = kept;
        let s = numer.len();
        let rels = lattice_basis(red.take_kernel(), s);
        let mut rel = IntMatrix::zeros(s, rels.len());
        for (j, r) in rels.iter().enumerate() {
            for (i, x) in r {
                rel[(*i, j)] = x.clone();
            }
        }
        let q = Quotient::of_relations(s, &rel);
        let reps = (0..q.group.ngens())
            .map(|k| {
                let mut acc: SVec = Vec::new();
                for i in 0..s {
                    let c = &q.from_normal[(i, k)];
                    if !c.is_zero() {
                        acc = super::sparse::lin_comb(&Int::one(), &acc, c, &numer[i], Some(ambient));
                    }
                }
                acc
            })
            .collect();
        Subquotient { group: q.group, ambient: ambient.to_vec(), numer, to_normal: q.to_normal, reps, reducer: red }
    }

    /// Subgroup of ⊕ ℤ/m_i generated by `gens`.
    pub fn span(ambient: &[Int], gens: Vec<SVec>) -> Subquotient {
        Subquotient::new(ambient, gens, Vec::new())
    }

    pub fn ambient(&self) -> &[Int] {
        &self.ambient
    }

    pub fn numerator_generators(&self) -> &[SVec] {
        &self.numer
    }

    /// Ambient representative of normal generator `k`.
    pub fn rep(&self, k: usize) -> &SVec {
        &self.reps[k]
    }

    pub fn rep_dense(&self, k: usize) -> Vec<Int> {
        svec_to_dense(&self.reps[k], self.ambient.len())
    }

    /// Ambient representative of an element given in normal coordinates.
    pub fn lift(&self, v: &[Int]) -> SVec {
        let mut acc: SVec = Vec::new();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = super::sparse::lin_comb(&Int::one(), &acc, c, &self.reps[k], Some(&self.ambient));
            }
        }
        acc
    }

    /// Normal coordinates of the class of `v`, or `None` if `v` is outside the numerator.
    pub fn classify(&self, v: &SVec) -> Option<Vec<Int>> {
        let comb = self.reducer.express(v)?;
        let c = svec_to_dense(&comb, self.numer.len());
        Some(self.group.reduce(&self.to_normal.mul_vec(&c)))
    }

    pub fn classify_dense(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.classify(&svec_from_dense(v))
    }
}

/// Homomorphism between groups in normal form, as a matrix in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbHom {
    source: FgAb,
    target: FgAb,
    matrix: IntMatrix,
}

pub struct KernelImage {
    pub kernel: FgAb,
    pub inclusion: AbHom,
    pub image: FgAb,
    pub image_inclusion: AbHom,
    pub cokernel: FgAb,
    pub projection: AbHom,
}

impl AbHom {
    pub fn new(source: FgAb, target: FgAb, mut matrix: IntMatrix) -> Result<AbHom, Error> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::MalformedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens(),
                source.ngens()
            )));
        }
        let tm = target.moduli();
        for (j, d) in source.moduli().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let col: Vec<Int> = matrix.column(j).iter().map(|x| x * d).collect();
            if !target.is_zero(&col) {
                return Err(Error::MalformedHom(format!("generator {} of order {} maps to an element of larger order", j, d)));
            }
        }
        matrix.reduce_rows(&tm);
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(a: &FgAb) -> AbHom {
        AbHom { source: a.clone(), target: a.clone(), matrix: IntMatrix::identity(a.ngens()) }
    }

    pub fn zero(a: &FgAb, b: &FgAb) -> AbHom {
        AbHom { source: a.clone(), target: b.clone(), matrix: IntMatrix::zeros(b.ngens(), a.ngens()) }
    }

    /// Builds a hom from the images of the source generators.
    pub fn from_images(source: &FgAb, target: &FgAb, images: &[Vec<Int>]) -> Result<AbHom, Error> {
        let m = IntMatrix::from_columns(target.ngens(), images);
        AbHom::new(source.clone(), target.clone(), m)
    }

    pub fn source(&self) -> &FgAb {
        &self.source
    }

    pub fn target(&self) -> &FgAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &AbHom) -> Result<AbHom, Error> {
        if first.target != self.source {
            return Err(Error::GroupMismatch("composition of incompatible homs".into()));
        }
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        assert!(self.source == other.source && self.target == other.target);
        let mut m = self.matrix.add(&other.matrix);
        m.reduce_rows(&self.target.moduli());
        AbHom { source: self.source.clone(), target: self.target.clone(), matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn columns(&self) -> Vec<SVec> {
        (0..self.source.ngens()).map(|j| svec_from_dense(&self.matrix.column(j))).collect()
    }

    /// Generators of ker, as vectors in source coordinates.
    fn kernel_vectors(&self) -> Vec<SVec> {
        kernel_generators(self.columns(), &self.target.moduli(), &self.source.moduli())
    }

    pub fn kernel(&self) -> (FgAb, AbHom) {
        let sq = Subquotient::span(&self.source.moduli(), self.kernel_vectors());
        let imgs: Vec<Vec<Int>> = (0..sq.group.ngens()).map(|k| sq.rep_dense(k)).collect();
        let incl = AbHom::from_images(&sq.group, &self.source, &imgs).expect("kernel inclusion");
        (sq.group, incl)
    }

    pub fn image(&self) -> (FgAb, AbHom) {
        let sq = Subquotient::span(&self.target.moduli(), self.columns());
        let imgs: Vec<Vec<Int>> = (0..sq.group.ngens()).map(|k| sq.rep_dense(k)).collect();
        let incl = AbHom::from_images(&sq.group, &self.target, &imgs).expect("image inclusion");
        (sq.group, incl)
    }

    pub fn cokernel(&self) -> (FgAb, AbHom) {
        let n = self.target.ngens();
        let mut rel = self.matrix.clone();
        let tm = self.target.moduli();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, m) in tm.iter().enumerate() {
            diag[(i, i)] = m.clone();
        }
        rel = rel.hstack(&diag);
        let q = Quotient::of_relations(n, &rel);
        let proj = AbHom::new(self.target.clone(), q.group.clone(), q.to_normal.clone()).expect("cokernel projection");
        (q.group, proj)
    }

    pub fn kernel_and_image(&self) -> KernelImage {
        let (kernel, inclusion) = self.kernel();
        let (image, image_inclusion) = self.image();
        let (cokernel, projection) = self.cokernel();
        KernelImage { kernel, inclusion, image, image_inclusion, cokernel, projection }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `f(x) = b`, chosen canonically: the representative of the
    /// solution coset reduced against the Hermite basis of the kernel lattice.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let x = self.solve_any(b)?;
        let n = self.source.ngens();
        let mut lattice: Vec<Vec<Int>> = self.kernel_vectors().iter().map(|k| svec_to_dense(k, n)).collect();
        for (j, d) in self.source.moduli().iter().enumerate() {
            if !d.is_zero() {
                let mut e = vec![Int::zero(); n];
                e[j] = d.clone();
                lattice.push(e);
            }
        }
        let basis = hermite_basis(&lattice, n);
        Some(self.source.reduce(&hermite_reduce(&x, &basis)))
    }

    /// Some solution, without canonicalization.
    pub fn solve_any(&self, b: &[Int]) -> Option<Vec<Int>> {
        let mut red = Reducer::new(self.target.moduli()).with_track_moduli(self.source.moduli());
        for (j, c) in self.columns().into_iter().enumerate() {
            red.insert(c, unit(j));
        }
        let comb = red.express(&reduce_svec(&svec_from_dense(b), &self.target.moduli()))?;
        Some(self.source.reduce(&svec_to_dense(&comb, self.source.ngens())))
    }
}

/// Whether A →f B →g C is exact at B: g∘f = 0 and every element of ker g is hit.
pub fn exact_at(f: &AbHom, g: &AbHom) -> bool {
    if f.target() != g.source() {
        return false;
    }
    match g.compose(f) {
        Ok(h) if h.is_zero() => {}
        _ => return false,
    }
    let (k, incl) = g.kernel();
    (0..k.ngens()).all(|i| f.solve_any(&incl.apply(&k.basis(i))).is_some())
}

/// Hom(A, B) as a group, together with the coordinate data used to build homs:
/// coordinate `(j, i)` (target j, source i) is cyclic, generated by a hom sending
/// source generator i to `gen_value` times target generator j.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FgAb,
    pub pairs: Vec<(usize, usize)>,
    pub gen_value: Vec<Int>,
    pub quotient: Quotient,
}

pub fn hom_group(a: &FgAb, b: &FgAb) -> HomGroup {
    let (am, bm) = (a.moduli(), b.moduli());
    let mut pairs = Vec::new();
    let mut orders = Vec::new();
    let mut gen_value = Vec::new();
    for (j, n) in bm.iter().enumerate() {
        for (i, m) in am.iter().enumerate() {
            let (ord, gv) = if m.is_zero() {
                (n.clone(), Int::one())
            } else if n.is_zero() {
                (Int::one(), Int::zero())
            } else {
                let g = m.gcd(n);
                (g.clone(), n.div_exact(&g))
            };
            pairs.push((j, i));
            orders.push(ord);
            gen_value.push(gv);
        }
    }
    let quotient = Quotient::of_diagonal(&orders);
    HomGroup { group: quotient.group.clone(), pairs, gen_value, quotient }
}

impl HomGroup {
    /// Matrix of the hom with the given normal coordinates.
    pub fn to_matrix(&self, a: &FgAb, b: &FgAb, v: &[Int]) -> IntMatrix {
        let raw = self.quotient.lift(v);
        let mut m = IntMatrix::zeros(b.ngens(), a.ngens());
        for (k, &(j, i)) in self.pairs.iter().enumerate() {
            m[(j, i)] = &raw[k] * &self.gen_value[k];
        }
        m.reduce_rows(&b.moduli());
        m
    }

    /// Normal coordinates of a hom given by its matrix.
    pub fn from_matrix(&self, m: &IntMatrix) -> Vec<Int> {
        let raw: Vec<Int> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, &(j, i))| {
                let gv = &self.gen_value[k];
                if gv.is_zero() {
                    Int::zero()
                } else {
                    m[(j, i)].div_floor(gv)
                }
            })
            .collect();
        self.quotient.project(&raw)
    }
}

pub fn hom_ab(a: &FgAb, b: &FgAb) -> FgAb {
    hom_group(a, b).group
}

/// A ⊗ B with its pair coordinates `(i, j)` ↦ e_i ⊗ f_j (index i*|B| + j).
pub fn tensor_quotient(a: &FgAb, b: &FgAb) -> Quotient {
    let (am, bm) = (a.moduli(), b.moduli());
    let mut orders = Vec::with_capacity(am.len() * bm.len());
    for m in &am {
        for n in &bm {
            orders.push(m.gcd(n));
        }
    }
    Quotient::of_diagonal(&orders)
}

pub fn tensor_ab(a: &FgAb, b: &FgAb) -> FgAb {
    tensor_quotient(a, b).group
}

/// Ext¹(A, ℤ/m): the sum over torsion invariant factors d of coker(·d on ℤ/m).
pub fn ext1_ab(a: &FgAb, m: &Int) -> FgAb {
    assert!(!m.is_zero() && !m.is_negative(), "modulus must be ≥ 1");
    let cm = FgAb::from_cyclic_orders(std::slice::from_ref(m));
    let mut orders = Vec::new();
    for d in a.torsion() {
        let mult = AbHom::new(cm.clone(), cm.clone(), IntMatrix::from_int_rows(&vec![vec![d.clone()]; cm.ngens()], cm.ngens()))
            .expect("multiplication is a hom");
        let (c, _) = mult.cokernel();
        orders.extend(c.moduli());
    }
    FgAb::from_cyclic_orders(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::int;

    fn z() -> FgAb {
        FgAb::free(1)
    }

    #[test]
    fn kernel_image_cokernel_examples() {
        let two = AbHom::new(z(), z(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let ki = two.kernel_and_image();
        assert!(ki.kernel.is_trivial());
        assert_eq!(ki.cokernel, FgAb::cyclic(2));
        let neg2 = AbHom::new(z(), z(), IntMatrix::from_rows(&[vec![-2]])).unwrap();
        assert_eq!(neg2.cokernel().0, FgAb::cyclic(2));
        let proj = AbHom::new(FgAb::free(2), z(), IntMatrix::from_rows(&[vec![1, 0]])).unwrap();
        let ki = proj.kernel_and_image();
        assert_eq!(ki.kernel, z());
        assert!(ki.cokernel.is_trivial());
        assert!(proj.compose(&ki.inclusion).unwrap().is_zero());
    }

    #[test]
    fn malformed_hom_rejected() {
        // ℤ/2 → ℤ/4 sending 1 ↦ 1 is not well defined
        let r = AbHom::new(FgAb::cyclic(2), FgAb::cyclic(4), IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(r, Err(Error::MalformedHom(_))));
        assert!(AbHom::new(FgAb::cyclic(2), FgAb::cyclic(4), IntMatrix::from_rows(&[vec![2]])).is_ok());
    }

    #[test]
    fn solve_examples() {
        let two = AbHom::new(z(), z(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(two.solve(&[int(4)]), Some(vec![int(2)]));
        assert_eq!(two.solve(&[int(3)]), None);
        let red = AbHom::new(z(), FgAb::cyclic(3), IntMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(red.solve(&[int(2)]), Some(vec![int(2)]));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(tensor_ab(&FgAb::cyclic(4), &FgAb::cyclic(6)), FgAb::cyclic(2));
        assert_eq!(ext1_ab(&FgAb::cyclic(4), &int(6)), FgAb::cyclic(2));
        assert!(ext1_ab(&z(), &int(12)).is_trivial());
        assert_eq!(hom_ab(&FgAb::cyclic(4), &FgAb::cyclic(6)), FgAb::cyclic(2));
        assert!(hom_ab(&FgAb::cyclic(4), &z()).is_trivial());
        assert_eq!(hom_ab(&FgAb::free(2), &FgAb::cyclic(4)).to_string(), "Z/4 + Z/4");
    }

    #[test]
    fn subquotient_homology() {
        // ker(ℤ/4 --·2--> ℤ/4) / im(ℤ/4 --·2--> ℤ/4) = 0
        let a = vec![int(4)];
        let sq = Subquotient::new(&a, vec![vec![(0, int(2))]], vec![vec![(0, int(2))]]);
        assert!(sq.group.is_trivial());
        // ℤ / 6ℤ inside ℤ with numerator 2ℤ: 2ℤ/6ℤ ≅ ℤ/3
        let sq = Subquotient::new(&[int(0)], vec![vec![(0, int(2))]], vec![vec![(0, int(6))]]);
        assert_eq!(sq.group, FgAb::cyclic(3));
        assert_eq!(sq.classify(&vec![(0, int(4))]).map(|c| sq.group.element_order(&c)), Some(Some(int(3))));
        assert_eq!(sq.classify(&vec![(0, int(3))]), None);
    }
}
