use crate::gmod::{FiniteGroup, GammaModule, Subgroup};
use crate::int::Int;
use crate::Error;
use std::fmt;
use std::sync::Arc;

/// First failure found by [`FactorSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    Normalization { sigma: usize, tau: usize },
    Cocycle { sigma: usize, tau: usize, rho: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "{}", s),
            Violation::Normalization { sigma, tau } => write!(f, "normalization fails at ({}, {})", sigma, tau),
            Violation::Cocycle { sigma, tau, rho } => write!(f, "cocycle identity fails at ({}, {}, {})", sigma, tau, rho),
        }
    }
}

/// A normalized 2-cocycle δ: Γ×Γ → A, stored as `values[σ·|Γ| + τ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    module: GammaModule,
    values: Vec<Vec<Int>>,
}

impl FactorSet {
    pub fn new(module: GammaModule, values: Vec<Vec<Int>>) -> Result<FactorSet, Error> {
        let values: Vec<Vec<Int>> = values
            .into_iter()
            .map(|v| if v.len() == module.rank() { module.carrier().reduce(&v) } else { v })
            .collect();
        FactorSet::validate(&module, &values).map_err(|v| Error::InvalidFactorSet(v.to_string()))?;
        Ok(FactorSet { module, values })
    }

    pub fn zero(module: &GammaModule) -> FactorSet {
        let n = module.group().order();
        FactorSet { module: module.clone(), values: vec![module.carrier().zero(); n * n] }
    }

    /// Checks normalization, then the cocycle identity
    /// σ·δ(τ,ρ) − δ(στ,ρ) + δ(σ,τρ) − δ(σ,τ) = 0, reporting the first failure.
    pub fn validate(module: &GammaModule, values: &[Vec<Int>]) -> Result<(), Violation> {
        let g = module.group();
        let n = g.order();
        let a = module.carrier();
        if values.len() != n * n {
            return Err(Violation::Shape(format!("{} values, expected {}", values.len(), n * n)));
        }
        if let Some(i) = values.iter().position(|v| v.len() != a.ngens()) {
            return Err(Violation::Shape(format!("value {} has {} coordinates, expected {}", i, values[i].len(), a.ngens())));
        }
        let val = |s: usize, t: usize| &values[s * n + t];
        for t in 0..n {
            if !a.is_zero(val(0, t)) {
                return Err(Violation::Normalization { sigma: 0, tau: t });
            }
            if !a.is_zero(val(t, 0)) {
                return Err(Violation::Normalization { sigma: t, tau: 0 });
            }
        }
        for s in 0..n {
            for t in 0..n {
                for r in 0..n {
                    let lhs = a.add(&module.act(s, val(t, r)), val(s, g.mul(t, r)));
                    let rhs = a.add(val(g.mul(s, t), r), val(s, t));
                    if a.reduce(&lhs) != a.reduce(&rhs) {
                        return Err(Violation::Cocycle { sigma: s, tau: t, rho: r });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn value(&self, s: usize, t: usize) -> &[Int] {
        &self.values[s * self.group().order() + t]
    }

    pub fn values(&self) -> &[Vec<Int>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.module.carrier().is_zero(v))
    }

    /// Value table restricted to a subgroup (indexed by the subgroup's own elements).
    pub fn restrict(&self, sub: &Subgroup) -> Result<FactorSet, Error> {
        let module = self.module.restrict(sub)?;
        let els = sub.elements();
        let mut values = Vec::with_capacity(els.len() * els.len());
        for &s in els {
            for &t in els {
                values.push(self.value(s, t).to_vec());
            }
        }
        Ok(FactorSet { module, values })
    }

    /// n·δ
    pub fn scaled(&self, n: &Int) -> FactorSet {
        let a = self.module.carrier();
        FactorSet { module: self.module.clone(), values: self.values.iter().map(|v| a.scale(n, v)).collect() }
    }

    /// δ + d(b) for a normalized 1-cochain b (b(1) = 0), given as one value per element.
    pub fn twisted(&self, b: &[Vec<Int>]) -> Result<FactorSet, Error> {
        let g = self.group();
        let a = self.module.carrier();
        let n = g.order();
        if !a.is_zero(&b[0]) {
            return Err(Error::InvalidFactorSet("twisting cochain must vanish at the identity".into()));
        }
        let mut values = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mut v = a.add(self.value(s, t), &self.module.act(s, &b[t]));
                v = a.add(&v, &a.neg(&b[g.mul(s, t)]));
                v = a.add(&v, &b[s]);
                values.push(v);
            }
        }
        FactorSet::new(self.module.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::int;
    use crate::zlin::FgAb;

    fn c4_model() -> (GammaModule, Vec<Vec<Int>>) {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = GammaModule::trivial(&c2, FgAb::cyclic(2));
        let values = vec![vec![int(0)], vec![int(0)], vec![int(0)], vec![int(1)]];
        (a, values)
    }

    #[test]
    fn validation_examples() {
        let (a, values) = c4_model();
        assert!(FactorSet::new(a.clone(), values).is_ok());
        assert!(FactorSet::validate(&a, &FactorSet::zero(&a).values).is_ok());
        let bad = vec![vec![int(0)], vec![int(1)], vec![int(0)], vec![int(0)]];
        assert_eq!(FactorSet::validate(&a, &bad), Err(Violation::Normalization { sigma: 0, tau: 1 }));
    }

    #[test]
    fn cocycle_violation_reported() {
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let a = GammaModule::trivial(&c3, FgAb::cyclic(3));
        let mut values = vec![vec![int(0)]; 9];
        values[4] = vec![int(1)]; // δ(1,1) = 1 only
        assert!(matches!(FactorSet::validate(&a, &values), Err(Violation::Cocycle { .. })));
    }
}
