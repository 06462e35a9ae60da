#![allow(dead_code)]

use lltori::corpus;
use lltori::gmod::GammaModule;
use lltori::int::Int;
use lltori::zlin::SVec;
use std::sync::OnceLock;

/// Every finite module of the corpus: each Γ, each finite A, each action.
pub fn finite_modules() -> &'static [GammaModule] {
    static CELL: OnceLock<Vec<GammaModule>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for g in corpus::gammas() {
            for a in corpus::finite_kernels() {
                out.extend(corpus::all_actions(&g, &a));
            }
        }
        out
    })
}

/// Finite modules plus the coefficient modules and lattices over each Γ.
pub fn modules() -> &'static [GammaModule] {
    static CELL: OnceLock<Vec<GammaModule>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = finite_modules().to_vec();
        for g in corpus::gammas() {
            out.extend(corpus::coefficient_modules(&g).into_iter().map(|x| x.1));
            out.extend(corpus::lattices(&g).into_iter().map(|x| x.1));
        }
        out
    })
}

/// second ∘ first = 0, both given by sparse columns.
pub fn compose_is_zero(first: &[SVec], second: &[SVec], moduli: &[Int]) -> bool {
    first.iter().all(|col| {
        let mut acc = vec![Int::zero(); moduli.len()];
        for (i, x) in col {
            for (j, y) in &second[*i] {
                acc[*j] += x * y;
            }
        }
        acc.iter().zip(moduli).all(|(v, m)| if m.is_zero() { v.is_zero() } else { v.reduce(m).is_zero() })
    })
}

/// Applies sparse columns to a dense vector.
pub fn apply(cols: &[SVec], v: &[Int], moduli: &[Int]) -> Vec<Int> {
    let mut acc = vec![Int::zero(); moduli.len()];
    for (c, x) in cols.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in c {
            acc[*j] += x * y;
        }
    }
    acc.iter().zip(moduli).map(|(v, m)| if m.is_zero() { v.clone() } else { v.reduce(m) }).collect()
}
