use super::matrix::IntMatrix;
use crate::int::Int;

/// `u * a * v == d`, with `u_inv`, `v_inv` the inverses of the unimodular factors.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Diagonal entries (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    // col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smith normal form with smallest-absolute-value pivoting; ties go to the
/// first entry in row-major order.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&w.d, t) else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = w.d[(i, t)].div_floor(&p);
                w.add_row(i, t, &-q);
                if !w.d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = w.d[(t, j)].div_floor(&p);
                w.add_col(j, t, &-q);
                if !w.d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(&w.d[(i, j)])));
            match bad {
                Some(i) => w.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> Smith {
    Smith { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, v_inv: w.v_inv }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let one = a.is_one();
                best = Some((i, j, a));
                if one && i == t && j == t {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Row-style Hermite basis of the lattice spanned by `gens` (each of length `n`):
/// rows in echelon form with positive pivots, entries above each pivot reduced.
pub fn hermite_basis(gens: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<Int>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let p = rows[piv][col].clone();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i][col].div_floor(&p);
                let pr = rows[piv].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
            basis.push(r);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    // reduce entries above pivots
    for k in 0..basis.len() {
        let pc = basis[k].iter().position(|x| !x.is_zero()).unwrap();
        let p = basis[k][pc].clone();
        for i in 0..k {
            let q = basis[i][pc].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let pr = basis[k].clone();
            for (x, y) in basis[i].iter_mut().zip(&pr) {
                *x -= &q * y;
            }
        }
    }
    basis
}

/// Canonical representative of `x` modulo the lattice with the given Hermite basis:
/// each pivot coordinate lands in `[0, pivot)`.
pub fn hermite_reduce(x: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    let mut x = x.to_vec();
    for row in basis {
        let pc = row.iter().position(|v| !v.is_zero()).unwrap();
        let q = x[pc].div_floor(&row[pc]);
        if q.is_zero() {
            continue;
        }
        for (a, b) in x.iter_mut().zip(row) {
            if !b.is_zero() {
                *a -= &q * b;
            }
        }
    }
    x
}
