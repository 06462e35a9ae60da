//! Characters of finite abelian groups into a prime field, the discrete
//! Fourier transform Λ[G] ≅ functions on characters, the Hecke embeddings
//! i_n: Λ[G_n] → Λ[G_{n+1}] along a tower, and eigenspace decomposition of
//! Λ[G]-modules.

mod field;

pub use field::{FpMatrix, PrimeField};

use crate::gmod::FiniteGroup;
use crate::int::Int;
use crate::zlin::{IntMatrix, Quotient};
use crate::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// An element of Λ[G], one coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub group: Arc<FiniteGroup>,
    pub field: PrimeField,
    pub coeffs: Vec<u64>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<FiniteGroup>, field: PrimeField) -> GroupAlgebraElement {
        GroupAlgebraElement { group: group.clone(), field, coeffs: vec![0; group.order()] }
    }

    pub fn delta(group: &Arc<FiniteGroup>, field: PrimeField, g: usize) -> GroupAlgebraElement {
        let mut a = GroupAlgebraElement::zero(group, field);
        a.coeffs[g] = 1;
        a
    }

    pub fn one(group: &Arc<FiniteGroup>, field: PrimeField) -> GroupAlgebraElement {
        GroupAlgebraElement::delta(group, field, 0)
    }

    pub fn random(group: &Arc<FiniteGroup>, field: PrimeField, rng: &mut impl Rng) -> GroupAlgebraElement {
        let coeffs = (0..group.order()).map(|_| rng.gen_range(0..field.p())).collect();
        GroupAlgebraElement { group: group.clone(), field, coeffs }
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let f = self.field;
        GroupAlgebraElement { group: self.group.clone(), field: f, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn scale(&self, c: u64) -> GroupAlgebraElement {
        let f = self.field;
        GroupAlgebraElement { group: self.group.clone(), field: f, coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Convolution (a∗b)(g) = Σ_{hk = g} a(h)b(k).
    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let f = self.field;
        let g = &self.group;
        let mut out = vec![0; g.order()];
        for (h, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let x = g.mul(h, k);
                    out[x] = f.add(out[x], f.mul(a, b));
                }
            }
        }
        GroupAlgebraElement { group: g.clone(), field: f, coeffs: out }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

/// χ_i(g_j) for all characters of a finite abelian group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: Arc<FiniteGroup>,
    pub field: PrimeField,
    /// Invariant factors d_i of G.
    pub factors: Vec<u64>,
    /// Coordinates of each element in ⊕ ℤ/d_i.
    pub coords: Vec<Vec<u64>>,
    /// table[χ][g]; character 0 is trivial.
    pub table: Vec<Vec<u64>>,
}

/// Invariant factors of an abelian group and coordinates of its elements, from
/// the presentation ⟨e_g | e_g + e_h = e_{gh}⟩.
fn invariant_decomposition(g: &FiniteGroup) -> (Vec<u64>, Vec<Vec<u64>>) {
    let n = g.order();
    let mut rel = IntMatrix::zeros(n, n * n);
    for a in 0..n {
        for b in 0..n {
            let c = a * n + b;
            rel[(a, c)] += Int::one();
            rel[(b, c)] += Int::one();
            rel[(g.mul(a, b), c)] -= Int::one();
        }
    }
    let q = Quotient::of_relations(n, &rel);
    debug_assert_eq!(q.group.free_rank(), 0);
    let factors: Vec<u64> = q.group.torsion().iter().map(|d| d.to_i64().unwrap() as u64).collect();
    let coords = (0..n)
        .map(|x| {
            let mut e = vec![Int::zero(); n];
            e[x] = Int::one();
            q.project(&e).iter().map(|c| c.to_i64().unwrap() as u64).collect()
        })
        .collect();
    (factors, coords)
}

impl CharacterTable {
    pub fn new(group: &Arc<FiniteGroup>, field: PrimeField) -> Result<CharacterTable, Error> {
        if !group.is_abelian() {
            return Err(Error::InvalidGroup(format!("{} is not abelian", group.label())));
        }
        let p = field.p();
        let e = group.exponent() as u64;
        if !(p - 1).is_multiple_of(e) || (group.order() as u64).is_multiple_of(p) {
            return Err(Error::BadField(format!("p = {} needs exponent {} | p − 1 and p ∤ {}", p, e, group.order())));
        }
        let (factors, coords) = invariant_decomposition(group);
        let r = field.primitive_root();
        let mut keys: Vec<Vec<u64>> = vec![Vec::new()];
        for &d in &factors {
            keys = keys.into_iter().flat_map(|k| (0..d).map(move |x| [k.clone(), vec![x]].concat())).collect();
        }
        let table = keys
            .iter()
            .map(|k| {
                coords
                    .iter()
                    .map(|c| {
                        let ex: u64 = k.iter().zip(c).zip(&factors).map(|((ki, ci), d)| ki * ci % d * ((p - 1) / d)).sum();
                        field.pow(r, ex % (p - 1))
                    })
                    .collect()
            })
            .collect();
        Ok(CharacterTable { group: group.clone(), field, factors, coords, table })
    }

    /// With the smallest admissible prime.
    pub fn smallest(group: &Arc<FiniteGroup>) -> Result<CharacterTable, Error> {
        CharacterTable::new(group, PrimeField::smallest_with_roots(group.exponent() as u64))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Rows are multiplicative, pairwise distinct and |G| in number.
    pub fn is_valid(&self) -> bool {
        let g = &self.group;
        let f = &self.field;
        let mult = self.table.iter().all(|row| g.elements().all(|a| g.elements().all(|b| row[g.mul(a, b)] == f.mul(row[a], row[b]))));
        let mut rows = self.table.clone();
        rows.sort();
        rows.dedup();
        mult && rows.len() == self.table.len() && self.table.len() == g.order()
    }

    /// â(χ) = Σ_g a(g)χ(g).
    pub fn dft(&self, a: &GroupAlgebraElement) -> Vec<u64> {
        let f = &self.field;
        self.table.iter().map(|row| a.coeffs.iter().zip(row).fold(0, |acc, (&x, &c)| f.add(acc, f.mul(x, c)))).collect()
    }

    /// a(g) = |G|⁻¹ Σ_χ â(χ)χ(g⁻¹).
    pub fn idft(&self, v: &[u64]) -> GroupAlgebraElement {
        let f = &self.field;
        let g = &self.group;
        let ninv = f.inv(f.of_usize(g.order())).expect("p ∤ |G|");
        let coeffs = g
            .elements()
            .map(|x| {
                let gi = g.inv(x);
                let s = self.table.iter().zip(v).fold(0, |acc, (row, &c)| f.add(acc, f.mul(c, row[gi])));
                f.mul(s, ninv)
            })
            .collect();
        GroupAlgebraElement { group: g.clone(), field: self.field, coeffs }
    }

    /// e_χ = |G|⁻¹ Σ_g χ(g⁻¹) g.
    pub fn idempotent(&self, chi: usize) -> GroupAlgebraElement {
        let mut v = vec![0; self.len()];
        v[chi] = 1;
        self.idft(&v)
    }

    /// The e_χ are orthogonal idempotents summing to 1.
    pub fn idempotents_check(&self) -> bool {
        let es: Vec<GroupAlgebraElement> = (0..self.len()).map(|i| self.idempotent(i)).collect();
        let zero = GroupAlgebraElement::zero(&self.group, self.field);
        let one = GroupAlgebraElement::one(&self.group, self.field);
        let sum = es.iter().fold(zero.clone(), |acc, e| acc.add(e));
        sum == one && es.iter().enumerate().all(|(i, a)| es.iter().enumerate().all(|(j, b)| a.mul(b) == if i == j { a.clone() } else { zero.clone() }))
    }
}

/// i_n(g) = (|G_n|/|G_{n+1}|)·Σ_{q(h)=g} h with its certificate.
#[derive(Clone, Debug)]
pub struct HeckeMap {
    pub small: Arc<FiniteGroup>,
    pub big: Arc<FiniteGroup>,
    pub field: PrimeField,
    pub images: Vec<GroupAlgebraElement>,
    pub injective: bool,
    pub multiplicative: bool,
    pub unit_idempotent: bool,
    /// i_n(1)·Λ[G_{n+1}] = i_n(Λ[G_n]).
    pub image_is_ideal: bool,
}

impl HeckeMap {
    pub fn unit(&self) -> &GroupAlgebraElement {
        &self.images[0]
    }

    pub fn pass(&self) -> bool {
        self.injective && self.multiplicative && self.unit_idempotent && self.image_is_ideal
    }

    pub fn apply(&self, a: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(&self.big, self.field);
        for (g, &c) in a.coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.images[g].scale(c));
            }
        }
        out
    }

    /// self ∘ first on basis elements.
    pub fn compose(&self, first: &HeckeMap) -> Vec<GroupAlgebraElement> {
        first.images.iter().map(|x| self.apply(x)).collect()
    }
}

fn span_matrix(vs: &[GroupAlgebraElement], n: usize) -> FpMatrix {
    FpMatrix::from_columns(n, &vs.iter().map(|v| v.coeffs.clone()).collect::<Vec<_>>())
}

/// `q[h]` is the image in `small` of element h of `big`.
pub fn hecke_identification(big: &Arc<FiniteGroup>, small: &Arc<FiniteGroup>, q: &[usize], field: PrimeField) -> Result<HeckeMap, Error> {
    if q.len() != big.order() || q.iter().any(|&x| x >= small.order()) {
        return Err(Error::MalformedHom(format!("map needs {} values below {}", big.order(), small.order())));
    }
    for a in big.elements() {
        for b in big.elements() {
            if q[big.mul(a, b)] != small.mul(q[a], q[b]) {
                return Err(Error::MalformedHom(format!("q({}·{}) ≠ q({})·q({})", a, b, a, b)));
            }
        }
    }
    let mut hit = vec![false; small.order()];
    for &x in q {
        hit[x] = true;
    }
    if let Some(miss) = hit.iter().position(|&h| !h) {
        return Err(Error::NotSurjective(format!("element {} is not in the image", miss)));
    }
    if (big.order() as u64).is_multiple_of(field.p()) {
        return Err(Error::BadField(format!("p = {} divides {}", field.p(), big.order())));
    }
    let c = field.ratio(small.order(), big.order()).expect("p ∤ |G_{n+1}|");
    let images: Vec<GroupAlgebraElement> = small
        .elements()
        .map(|g| {
            let mut a = GroupAlgebraElement::zero(big, field);
            for (h, &qh) in q.iter().enumerate() {
                if qh == g {
                    a.coeffs[h] = c;
                }
            }
            a
        })
        .collect();
    let n = big.order();
    let injective = span_matrix(&images, n).rank(&field) == small.order();
    let multiplicative = small.elements().all(|a| small.elements().all(|b| images[a].mul(&images[b]) == images[small.mul(a, b)]));
    let unit_idempotent = images[0].is_idempotent();
    let ideal: Vec<GroupAlgebraElement> = big.elements().map(|h| images[0].mul(&GroupAlgebraElement::delta(big, field, h))).collect();
    let ri = span_matrix(&ideal, n).rank(&field);
    let both: Vec<GroupAlgebraElement> = images.iter().chain(&ideal).cloned().collect();
    let image_is_ideal = ri == small.order() && span_matrix(&both, n).rank(&field) == ri;
    Ok(HeckeMap { small: small.clone(), big: big.clone(), field, images, injective, multiplicative, unit_idempotent, image_is_ideal })
}

/// Eigenspace decomposition of a Λ[G]-module and its reassembly.
#[derive(Clone, Debug)]
pub struct FmReport {
    /// dim e_χ M per character.
    pub dims: Vec<usize>,
    pub dims_sum: bool,
    /// g acts on each eigenspace by χ(g).
    pub eigen: bool,
    /// P·diag(χ(g))·P⁻¹ = ρ(g) for every g.
    pub reassembly: bool,
}

impl FmReport {
    pub fn pass(&self) -> bool {
        self.dims_sum && self.eigen && self.reassembly
    }
}

/// Checks ρ(1) = 1 and ρ(gh) = ρ(g)ρ(h).
pub fn check_module(t: &CharacterTable, action: &[FpMatrix]) -> Result<usize, Error> {
    let g = &t.group;
    let f = &t.field;
    if action.len() != g.order() {
        return Err(Error::NotAModule(format!("{} matrices for a group of order {}", action.len(), g.order())));
    }
    let d = action[0].rows;
    if action.iter().any(|m| m.rows != d || m.cols != d) {
        return Err(Error::NotAModule("matrices must be square of equal size".into()));
    }
    if action[0] != FpMatrix::identity(d) {
        return Err(Error::NotAModule("identity does not act trivially".into()));
    }
    for a in g.elements() {
        for b in g.elements() {
            if action[a].mul(f, &action[b]) != action[g.mul(a, b)] {
                return Err(Error::NotAModule(format!("ρ({})ρ({}) ≠ ρ({}·{})", a, b, a, b)));
            }
        }
    }
    Ok(d)
}

pub fn fm_round_trip(t: &CharacterTable, action: &[FpMatrix]) -> Result<FmReport, Error> {
    let d = check_module(t, action)?;
    let f = &t.field;
    let g = &t.group;
    let mut dims = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut eigen = true;
    for chi in 0..t.len() {
        let e = t.idempotent(chi);
        let mut proj = FpMatrix::zeros(d, d);
        for (x, &c) in e.coeffs.iter().enumerate() {
            if c != 0 {
                proj = proj.add(f, &action[x].scale(f, c));
            }
        }
        let b = proj.column_basis(f);
        for v in &b {
            let vm = FpMatrix::from_columns(d, std::slice::from_ref(v));
            for x in g.elements() {
                if action[x].mul(f, &vm) != vm.scale(f, t.table[chi][x]) {
                    eigen = false;
                }
            }
        }
        dims.push(b.len());
        labels.extend(std::iter::repeat_n(chi, b.len()));
        basis.extend(b);
    }
    let dims_sum = dims.iter().sum::<usize>() == d;
    let reassembly = dims_sum && {
        let pm = FpMatrix::from_columns(d, &basis);
        match pm.inverse(f) {
            None => false,
            Some(pinv) => g.elements().all(|x| {
                let mut diag = FpMatrix::zeros(d, d);
                for (i, &chi) in labels.iter().enumerate() {
                    diag.set(i, i, t.table[chi][x]);
                }
                pm.mul(f, &diag).mul(f, &pinv) == action[x]
            }),
        }
    };
    Ok(FmReport { dims, dims_sum, eigen, reassembly })
}

/// ρ(g)e_h = e_{gh}.
pub fn regular_module(group: &FiniteGroup) -> Vec<FpMatrix> {
    let n = group.order();
    group
        .elements()
        .map(|x| {
            let mut m = FpMatrix::zeros(n, n);
            for h in 0..n {
                m.set(group.mul(x, h), h, 1);
            }
            m
        })
        .collect()
}

/// P·diag(χ_{i_1}(g), …)·P⁻¹ with random characters and a random invertible P.
pub fn random_module(t: &CharacterTable, dim: usize, seed: u64) -> Vec<FpMatrix> {
    let f = &t.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chis: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..t.len())).collect();
    let (pm, pinv) = loop {
        let pm = FpMatrix { rows: dim, cols: dim, data: (0..dim * dim).map(|_| rng.gen_range(0..f.p())).collect() };
        if let Some(inv) = pm.inverse(f) {
            break (pm, inv);
        }
    };
    t.group
        .elements()
        .map(|x| {
            let mut diag = FpMatrix::zeros(dim, dim);
            for (i, &c) in chis.iter().enumerate() {
                diag.set(i, i, t.table[c][x]);
            }
            pm.mul(f, &diag).mul(f, &pinv)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn c(n: usize) -> Arc<FiniteGroup> {
        corpus::cyclic(n)
    }

    #[test]
    fn character_table_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let t = CharacterTable::new(&c(2), f5).unwrap();
        assert_eq!(t.table, vec![vec![1, 1], vec![1, 4]]);
        let t = CharacterTable::new(&c(4), f5).unwrap();
        assert!(t.is_valid());
        assert!(t.table.iter().any(|row| row[1] == 2));
        let t = CharacterTable::new(&Arc::new(FiniteGroup::trivial()), f5).unwrap();
        assert_eq!(t.table, vec![vec![1]]);
        assert!(matches!(CharacterTable::new(&c(3), f5), Err(Error::BadField(_))));
        assert!(matches!(CharacterTable::new(&corpus::s3(), PrimeField::new(7).unwrap()), Err(Error::InvalidGroup(_))));
        let k = corpus::klein();
        assert!(CharacterTable::new(&k, PrimeField::new(3).unwrap()).unwrap().is_valid());
    }

    #[test]
    fn dft_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let g = c(2);
        let t = CharacterTable::new(&g, f5).unwrap();
        let a = GroupAlgebraElement { group: g.clone(), field: f5, coeffs: vec![2, 3] };
        assert_eq!(t.dft(&a), vec![0, 4]);
        assert_eq!(t.idft(&t.dft(&a)), a);
        assert_eq!(t.dft(&GroupAlgebraElement::one(&g, f5)), vec![1, 1]);
        let g4 = c(4);
        let t4 = CharacterTable::new(&g4, f5).unwrap();
        let all = GroupAlgebraElement { group: g4.clone(), field: f5, coeffs: vec![1; 4] };
        assert_eq!(t4.dft(&all), vec![4, 0, 0, 0]);
        assert!(t4.idempotents_check());
    }

    #[test]
    fn hecke_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let q: Vec<usize> = (0..4).map(|x| x % 2).collect();
        let h = hecke_identification(&c(4), &c(2), &q, f5).unwrap();
        assert_eq!(h.unit().coeffs, vec![3, 0, 3, 0]);
        assert!(h.pass());
        let id = hecke_identification(&c(3), &c(3), &[0, 1, 2], f5).unwrap();
        assert!(id.pass());
        assert_eq!(id.images[1], GroupAlgebraElement::delta(&c(3), f5, 1));
        let triv = Arc::new(FiniteGroup::trivial());
        let avg = hecke_identification(&c(3), &triv, &[0, 0, 0], PrimeField::new(7).unwrap()).unwrap();
        assert_eq!(avg.unit().coeffs, vec![5; 3]);
        assert!(matches!(hecke_identification(&c(2), &c(4), &[0, 2], f5), Err(Error::NotSurjective(_))));
        assert!(matches!(hecke_identification(&c(4), &c(2), &[0, 0, 1, 1], f5), Err(Error::MalformedHom(_))));
        assert!(matches!(hecke_identification(&c(4), &c(2), &q, PrimeField::new(2).unwrap()), Err(Error::BadField(_))));
    }

    #[test]
    fn hecke_tower_composes() {
        let f = PrimeField::new(17).unwrap();
        let q84: Vec<usize> = (0..8).map(|x| x % 4).collect();
        let q42: Vec<usize> = (0..4).map(|x| x % 2).collect();
        let q82: Vec<usize> = (0..8).map(|x| x % 2).collect();
        let i1 = hecke_identification(&c(4), &c(2), &q42, f).unwrap();
        let i2 = hecke_identification(&c(8), &c(4), &q84, f).unwrap();
        let i = hecke_identification(&c(8), &c(2), &q82, f).unwrap();
        assert_eq!(i2.compose(&i1), i.images);
    }

    #[test]
    fn round_trips() {
        let f5 = PrimeField::new(5).unwrap();
        let g = c(2);
        let t = CharacterTable::new(&g, f5).unwrap();
        let act = vec![FpMatrix::identity(2), FpMatrix::from_rows(&f5, &[vec![1, 0], vec![0, 4]])];
        assert_eq!(fm_round_trip(&t, &act).unwrap().dims, vec![1, 1]);
        let r = fm_round_trip(&t, &regular_module(&g)).unwrap();
        assert!(r.pass() && r.dims == vec![1, 1]);
        let triv = vec![FpMatrix::identity(1); 2];
        assert_eq!(fm_round_trip(&t, &triv).unwrap().dims, vec![1, 0]);
        let bad = vec![FpMatrix::identity(1), FpMatrix::from_rows(&f5, &[vec![2]])];
        assert!(matches!(fm_round_trip(&t, &bad), Err(Error::NotAModule(_))));
        let t6 = CharacterTable::smallest(&c(6)).unwrap();
        for s in 0..5 {
            assert!(fm_round_trip(&t6, &random_module(&t6, 4, s)).unwrap().pass());
        }
    }
}
