use crate::Error;
use num_integer::Integer;

/// 𝔽_p with elements stored as reduced u64.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, Error> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::BadField(format!("{} is not a supported prime", p)));
        }
        Ok(PrimeField { p })
    }

    /// Smallest prime p ≡ 1 mod e.
    pub fn smallest_with_roots(e: u64) -> PrimeField {
        let e = e.max(1);
        let mut p = e + 1;
        while !is_prime(p) {
            p += e;
        }
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn el(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a % self.p, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// n as a field element.
    pub fn of_usize(&self, n: usize) -> u64 {
        (n as u64) % self.p
    }

    /// a/b for integers with p ∤ b.
    pub fn ratio(&self, a: usize, b: usize) -> Option<u64> {
        let g = a.gcd(&b);
        Some(self.mul(self.of_usize(a / g), self.inv(self.of_usize(b / g))?))
    }

    /// The smallest generator of 𝔽_p^×.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let fs = prime_factors(self.p - 1);
        (2..self.p).find(|&g| fs.iter().all(|q| self.pow(g, (self.p - 1) / q) != 1)).expect("𝔽_p^× is cyclic")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> u64 {
        let mut k = 1;
        let mut x = a % self.p;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// Dense matrices over 𝔽_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(f: &PrimeField, rows: &[Vec<i64>]) -> FpMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        FpMatrix { rows: r, cols: c, data: rows.iter().flat_map(|row| row.iter().map(|&x| f.el(x))).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, f: &PrimeField, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, f: &PrimeField, c: u64) -> FpMatrix {
        FpMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn add(&self, f: &PrimeField, other: &FpMatrix) -> FpMatrix {
        FpMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<u64>]) -> FpMatrix {
        let mut m = FpMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Row echelon form; returns the pivot columns.
    fn echelon(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(k) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, k * self.cols + j);
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let x = self.get(i, c);
                if i != r && x != 0 {
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(x, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().echelon(f).len()
    }

    /// A basis of the column space, taken among the columns.
    pub fn column_basis(&self, f: &PrimeField) -> Vec<Vec<u64>> {
        self.clone().echelon(f).into_iter().map(|j| self.column(j)).collect()
    }

    pub fn inverse(&self, f: &PrimeField) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let piv = aug.echelon(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        assert!(PrimeField::new(4).is_err());
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.primitive_root(), 2);
        assert_eq!(f.inv(4), Some(4));
        assert_eq!(f.ratio(2, 4), Some(3));
        assert_eq!(PrimeField::smallest_with_roots(4).p(), 5);
        assert_eq!(PrimeField::smallest_with_roots(6).p(), 7);
        assert_eq!(PrimeField::smallest_with_roots(8).p(), 17);
        assert_eq!(f.order(2), 4);
    }

    #[test]
    fn inverse_and_rank() {
        let f = PrimeField::new(7).unwrap();
        let m = FpMatrix::from_rows(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), FpMatrix::identity(2));
        let s = FpMatrix::from_rows(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.rank(&f), 1);
        assert!(s.inverse(&f).is_none());
    }
}
