//! Sparse column reduction over ⊕ ℤ/m_i (m_i = 0 meaning ℤ).
//!
//! Columns are reduced against pivots with unimodular 2×2 steps. Each pivot on a torsion row also gets its annihilator multiple
//! reduced in, which keeps the echelon form closed in the sense of Howell:
//! every span element vanishing above row r is a combination of pivots with
//! lead ≥ r. Columns carry a "track" recording which inputs they came from, so
//! zero-reduced tracks generate the kernel of the input map.

use crate::int::Int;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Sparse vector: `(index, value)` sorted by index, no zero values.
pub type SVec = Vec<(usize, Int)>;

pub fn svec_from_dense(v: &[Int]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn svec_to_dense(v: &SVec, n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn unit(i: usize) -> SVec {
    vec![(i, Int::one())]
}

fn modulus_at(moduli: Option<&[Int]>, i: usize) -> Option<&Int> {
    moduli.map(|m| &m[i]).filter(|m| !m.is_zero())
}

/// `a*x + b*y`, reduced entrywise by `moduli` when given.
pub fn lin_comb(a: &Int, x: &SVec, b: &Int, y: &SVec, moduli: Option<&[Int]>) -> SVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let push = |out: &mut SVec, idx: usize, v: Int| {
        let v = match modulus_at(moduli, idx) {
            Some(m) => v.reduce(m),
            None => v,
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    };
    while i < x.len() || j < y.len() {
        let xi = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let yj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if xi < yj {
            if !a.is_zero() {
                push(&mut out, xi, a * &x[i].1);
            }
            i += 1;
        } else if yj < xi {
            if !b.is_zero() {
                push(&mut out, yj, b * &y[j].1);
            }
            j += 1;
        } else {
            push(&mut out, xi, &(a * &x[i].1) + &(b * &y[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(c: &Int, x: &SVec, moduli: Option<&[Int]>) -> SVec {
    lin_comb(c, x, &Int::zero(), &Vec::new(), moduli)
}

pub fn reduce_svec(x: &SVec, moduli: &[Int]) -> SVec {
    scale(&Int::one(), x, Some(moduli))
}

/// Howell-style column echelon form with input tracking.
///
/// Pivot `i` sits on row `rows[i]` and vanishes on the rows of all earlier
/// pivots, so pivots form an echelon form for the row order "pivot rows in
/// creation order, then the rest". New pivots go on a unit entry when there is
/// one, which keeps entries small over ℤ.
#[derive(Clone, Debug)]
pub struct Reducer {
    moduli: Vec<Int>,
    track_moduli: Option<Vec<Int>>,
    pivot_of_row: Vec<u32>,
    rows: Vec<usize>,
    leads: Vec<Int>,
    cols: Vec<SVec>,
    tracks: Vec<SVec>,
    kernel: Vec<SVec>,
}

const NONE: u32 = u32::MAX;

fn entry(v: &SVec, r: usize) -> Option<&Int> {
    v.binary_search_by_key(&r, |e| e.0).ok().map(|k| &v[k].1)
}

impl Reducer {
    pub fn new(moduli: Vec<Int>) -> Reducer {
        let n = moduli.len();
        Reducer {
            moduli,
            track_moduli: None,
            pivot_of_row: vec![NONE; n],
            rows: Vec::new(),
            leads: Vec::new(),
            cols: Vec::new(),
            tracks: Vec::new(),
            kernel: Vec::new(),
        }
    }

    /// Tracks are reduced modulo these (the moduli of the source coordinates).
    pub fn with_track_moduli(mut self, m: Vec<Int>) -> Reducer {
        self.track_moduli = Some(m);
        self
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn pivot_count(&self) -> usize {
        self.cols.len()
    }

    /// Tracks of inputs that reduced to zero; they generate the kernel.
    pub fn kernel(&self) -> &[SVec] {
        &self.kernel
    }

    pub fn take_kernel(&mut self) -> Vec<SVec> {
        std::mem::take(&mut self.kernel)
    }

    fn tm(&self) -> Option<&[Int]> {
        self.track_moduli.as_deref()
    }

    fn push_pivots(&self, v: &SVec, after: Option<u32>, heap: &mut BinaryHeap<Reverse<u32>>) {
        for (r, _) in v {
            let p = self.pivot_of_row[*r];
            if p != NONE && after.is_none_or(|a| p > a) {
                heap.push(Reverse(p));
            }
        }
    }

    /// Entry to pivot on: a unit if possible (the last one, which gives far
    /// less fill-in on bar complexes), otherwise the smallest non-unit.
    fn choose_lead(&self, c: &SVec) -> usize {
        let mut best = 0;
        let mut best_key = (u8::MAX, Int::zero());
        for (k, (r, a)) in c.iter().enumerate() {
            let m = &self.moduli[*r];
            let key = if m.is_zero() {
                if a.abs().is_one() {
                    (0, Int::zero())
                } else {
                    (2, a.abs())
                }
            } else {
                let g = a.gcd(m);
                if g.is_one() {
                    (1, Int::zero())
                } else {
                    (3, g)
                }
            };
            if key <= best_key {
                best_key = key;
                best = k;
            }
        }
        best
    }

    pub fn insert(&mut self, col: SVec, track: SVec) {
        let col = reduce_svec(&col, &self.moduli);
        let mut queue = vec![(col, track)];
        while let Some((mut c, mut t)) = queue.pop() {
            let mut heap = BinaryHeap::new();
            self.push_pivots(&c, None, &mut heap);
            let mut last = None;
            while let Some(Reverse(i)) = heap.pop() {
                if last == Some(i) {
                    continue;
                }
                last = Some(i);
                let p = i as usize;
                let r = self.rows[p];
                let Some(a) = entry(&c, r).cloned() else { continue };
                let m = self.moduli[r].clone();
                let b = self.leads[p].clone();
                self.push_pivots(&self.cols[p], Some(i), &mut heap);
                if let Some(q) = quotient_in(&a, &b, &m) {
                    c = lin_comb(&Int::one(), &c, &-&q, &self.cols[p], Some(&self.moduli));
                    t = lin_comb(&Int::one(), &t, &-&q, &self.tracks[p], self.tm());
                    continue;
                }
                // unimodular combination: the pivot's lead becomes gcd(a, b)
                let (g, s, u) = b.ext_gcd(&a);
                let (bg, ag) = (b.div_exact(&g), a.div_exact(&g));
                let np = lin_comb(&s, &self.cols[p], &u, &c, Some(&self.moduli));
                let nt = lin_comb(&s, &self.tracks[p], &u, &t, self.tm());
                let oc = lin_comb(&ag, &self.cols[p], &-&bg, &c, Some(&self.moduli));
                let ot = lin_comb(&ag, &self.tracks[p], &-&bg, &t, self.tm());
                let lead = entry(&np, r).cloned().expect("gcd step keeps the pivot row");
                if !m.is_zero() {
                    let ann = m.div_exact(&lead.gcd(&m));
                    queue.push((scale(&ann, &np, Some(&self.moduli)), scale(&ann, &nt, self.tm())));
                }
                self.leads[p] = lead;
                self.cols[p] = np;
                self.tracks[p] = nt;
                c = oc;
                t = ot;
            }
            if c.is_empty() {
                if !t.is_empty() {
                    self.kernel.push(t);
                }
                continue;
            }
            let k = self.choose_lead(&c);
            let (r, a) = c[k].clone();
            let m = self.moduli[r].clone();
            let (c, t, a) = if m.is_zero() && a.is_negative() {
                (scale(&Int::from(-1), &c, None), scale(&Int::from(-1), &t, self.tm()), -a)
            } else {
                (c, t, a)
            };
            if !m.is_zero() {
                let ann = m.div_exact(&a.gcd(&m));
                queue.push((scale(&ann, &c, Some(&self.moduli)), scale(&ann, &t, self.tm())));
            }
            self.pivot_of_row[r] = self.cols.len() as u32;
            self.rows.push(r);
            self.leads.push(a);
            self.cols.push(c);
            self.tracks.push(t);
        }
    }

    /// Writes `v` as a combination of the inserted inputs if it lies in their span.
    /// Returns the combination (in track coordinates) or `None`.
    pub fn express(&self, v: &SVec) -> Option<SVec> {
        let mut v = reduce_svec(v, &self.moduli);
        let mut comb: SVec = Vec::new();
        let mut heap = BinaryHeap::new();
        self.push_pivots(&v, None, &mut heap);
        let mut last = None;
        while let Some(Reverse(i)) = heap.pop() {
            if last == Some(i) {
                continue;
            }
            last = Some(i);
            let p = i as usize;
            let r = self.rows[p];
            let Some(a) = entry(&v, r) else { continue };
            let q = quotient_in(a, &self.leads[p], &self.moduli[r])?;
            self.push_pivots(&self.cols[p], Some(i), &mut heap);
            v = lin_comb(&Int::one(), &v, &-&q, &self.cols[p], Some(&self.moduli));
            comb = lin_comb(&Int::one(), &comb, &q, &self.tracks[p], self.tm());
        }
        if v.is_empty() {
            Some(comb)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.express(v).is_some()
    }
}

/// `q` with `q*b ≡ a` modulo `m` (exactly, when `m == 0`), if it exists.
fn quotient_in(a: &Int, b: &Int, m: &Int) -> Option<Int> {
    if m.is_zero() {
        let (q, r) = a.div_mod_floor(b);
        return if r.is_zero() { Some(q) } else { None };
    }
    let g = b.gcd(m);
    if !g.divides(a) {
        return None;
    }
    let mg = m.div_exact(&g);
    let inv = b.div_exact(&g).mod_inverse(&mg).unwrap_or_else(Int::zero);
    Some((&a.div_exact(&g) * &inv).reduce(&mg))
}

/// Generators of the kernel of the map whose `j`-th column is `columns[j]`,
/// from ⊕ ℤ/src_moduli to ⊕ ℤ/tgt_moduli.
pub fn kernel_generators(columns: Vec<SVec>, tgt_moduli: &[Int], src_moduli: &[Int]) -> Vec<SVec> {
    let mut red = Reducer::new(tgt_moduli.to_vec()).with_track_moduli(src_moduli.to_vec());
    for (j, c) in columns.into_iter().enumerate() {
        red.insert(c, unit(j));
    }
    red.take_kernel()
        .into_iter()
        .map(|k| reduce_svec(&k, src_moduli))
        .filter(|k| !k.is_empty())
        .collect()
}

/// A basis (as sparse vectors) of the sublattice of ℤ^n spanned by `gens`.
pub fn lattice_basis(gens: Vec<SVec>, n: usize) -> Vec<SVec> {
    let mut red = Reducer::new(vec![Int::zero(); n]);
    for g in gens {
        red.insert(g, Vec::new());
    }
    red.cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::int;

    #[test]
    fn kernel_of_reduction_map() {
        // ℤ → ℤ/3: kernel generated by 3
        let k = kernel_generators(vec![unit(0)], &[int(3)], &[int(0)]);
        assert_eq!(k, vec![vec![(0, int(3))]]);
    }

    #[test]
    fn howell_closure_on_mixed_moduli() {
        // rows ℤ/4 ⊕ ℤ/2; column (2, 1): 2·col = (0, 0) so kernel contains 2.
        let k = kernel_generators(vec![vec![(0, int(2)), (1, int(1))]], &[int(4), int(2)], &[int(0)]);
        assert_eq!(k, vec![vec![(0, int(2))]]);
        // rows ℤ/4 ⊕ ℤ; column (2, 1): nothing but 0 maps to 0
        let k = kernel_generators(vec![vec![(0, int(2)), (1, int(1))]], &[int(4), int(0)], &[int(0)]);
        assert!(k.is_empty());
        // span of (2,1) in ℤ/4 ⊕ ℤ/2 contains (0,0)… and (2,1) only
        let mut r = Reducer::new(vec![int(4), int(2)]);
        r.insert(vec![(0, int(2)), (1, int(1))], unit(0));
        assert!(r.contains(&vec![(0, int(2)), (1, int(1))]));
        assert!(!r.contains(&vec![(1, int(1))]));
        assert!(!r.contains(&vec![(0, int(2))]));
    }
}
