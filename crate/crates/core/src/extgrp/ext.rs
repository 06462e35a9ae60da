use super::FactorSet;
use crate::gmod::{FiniteGroup, GammaModule};
use crate::int::Int;
use crate::zlin::FgAb;
use crate::Error;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// The element a·w_σ of the extension, with `a` in the carrier coordinates of A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub a: Vec<Int>,
    pub sigma: usize,
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", a.join(","), self.sigma)
    }
}

/// The extension 1 → A → G → Γ → 1 defined by a factor set, with the group law
/// (a,σ)(b,τ) = (a + σ·b + δ(σ,τ), στ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    delta: FactorSet,
}

impl Extension {
    pub fn new(delta: FactorSet) -> Extension {
        Extension { delta }
    }

    pub fn factor_set(&self) -> &FactorSet {
        &self.delta
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.delta.group()
    }

    pub fn kernel(&self) -> &GammaModule {
        self.delta.module()
    }

    pub fn carrier(&self) -> &FgAb {
        self.delta.module().carrier()
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement { a: self.carrier().zero(), sigma: 0 }
    }

    /// The element of A as an element of G.
    pub fn from_a(&self, a: &[Int]) -> ExtElement {
        ExtElement { a: self.carrier().reduce(a), sigma: 0 }
    }

    /// The section representative w_σ = (0, σ).
    pub fn w(&self, sigma: usize) -> ExtElement {
        ExtElement { a: self.carrier().zero(), sigma }
    }

    /// The projection f: G → A with f(a·w_σ) = a.
    pub fn f<'a>(&self, x: &'a ExtElement) -> &'a [Int] {
        &x.a
    }

    pub fn normal_form(&self, x: &ExtElement) -> ExtElement {
        ExtElement { a: self.carrier().reduce(&x.a), sigma: x.sigma }
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let a = self.carrier();
        let m = self.kernel();
        let mut v = a.add(&x.a, &m.act(x.sigma, &y.a));
        v = a.add(&v, self.delta.value(x.sigma, y.sigma));
        ExtElement { a: v, sigma: self.gamma().mul(x.sigma, y.sigma) }
    }

    pub fn inv(&self, x: &ExtElement) -> ExtElement {
        let g = self.gamma();
        let a = self.carrier();
        let si = g.inv(x.sigma);
        let s = a.add(&x.a, self.delta.value(x.sigma, si));
        ExtElement { a: a.neg(&self.kernel().act(si, &s)), sigma: si }
    }

    pub fn pow(&self, x: &ExtElement, mut k: u64) -> ExtElement {
        let mut base = x.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// δ extended to G: w_τ·g = δ(w_τ, g)·w_{τḡ}.
    pub fn delta_at(&self, tau: usize, g: &ExtElement) -> Vec<Int> {
        self.mul(&self.w(tau), g).a
    }

    pub fn is_finite(&self) -> bool {
        self.carrier().is_finite()
    }

    pub fn order(&self) -> Option<Int> {
        self.carrier().order().map(|o| o * Int::from(self.gamma().order()))
    }

    /// Elements of a finite extension, indexed by `a_index·|Γ| + σ` with A
    /// enumerated as by [`FgAb::elements`].
    pub fn elements(&self) -> Result<Vec<ExtElement>, Error> {
        if !self.is_finite() {
            return Err(Error::NotFinite(format!("extension by {}", self.carrier())));
        }
        let n = self.gamma().order();
        let mut out = Vec::new();
        for a in self.carrier().elements() {
            for s in 0..n {
                out.push(ExtElement { a: a.clone(), sigma: s });
            }
        }
        Ok(out)
    }

    /// Element order, for finite A.
    pub fn element_order(&self, x: &ExtElement) -> Result<u64, Error> {
        if !self.is_finite() {
            return Err(Error::NotFinite("element order in an infinite extension".into()));
        }
        let e = self.identity();
        let mut y = self.normal_form(x);
        let mut k = 1;
        while y != e {
            y = self.mul(&y, x);
            k += 1;
        }
        Ok(k)
    }
}

/// A finite extension as an explicit group, with the element list and index lookup.
#[derive(Clone, Debug)]
pub struct ExtTable {
    pub group: Arc<FiniteGroup>,
    pub elements: Vec<ExtElement>,
    index: HashMap<ExtElement, usize>,
}

impl ExtTable {
    pub fn new(ext: &Extension) -> Result<ExtTable, Error> {
        let elements = ext.elements()?;
        let index: HashMap<ExtElement, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let rows = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&ext.mul(x, y)]).collect())
            .collect();
        let group = Arc::new(FiniteGroup::from_table(rows)?);
        Ok(ExtTable { group, elements, index })
    }

    pub fn index_of(&self, x: &ExtElement) -> usize {
        self.index[x]
    }

    /// Γ-image of each element.
    pub fn projection(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.sigma).collect()
    }
}

/// Abelianization of a finite group from its table: ℤ^|G| modulo g + h − gh.
pub fn abelianization(g: &FiniteGroup) -> FgAb {
    let n = g.order();
    let mut rels = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let mut r = vec![Int::zero(); n];
            r[x] += Int::one();
            r[y] += Int::one();
            r[g.mul(x, y)] -= Int::one();
            rels.push(r);
        }
    }
    crate::zlin::Quotient::of_relations(n, &crate::zlin::IntMatrix::from_columns(n, &rels)).group
}
