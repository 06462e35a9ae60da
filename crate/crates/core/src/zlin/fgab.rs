use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::int::Int;
use crate::Error;
use std::fmt;

/// A finitely generated abelian group ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k with d₁ | … | d_k, d_i ≥ 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAb {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FgAb {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Result<FgAb, Error> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < Int::from(2) {
                return Err(Error::InvalidGroup(format!("invariant factor {} is not ≥ 2", d)));
            }
            if i > 0 && !torsion[i - 1].divides(d) {
                return Err(Error::InvalidGroup(format!("{} does not divide {}", torsion[i - 1], d)));
            }
        }
        Ok(FgAb { free_rank, torsion })
    }

    pub fn trivial() -> FgAb {
        FgAb::default()
    }

    pub fn free(rank: usize) -> FgAb {
        FgAb { free_rank: rank, torsion: Vec::new() }
    }

    /// ℤ/n; `n == 0` gives ℤ and `n == 1` the trivial group.
    pub fn cyclic(n: i64) -> FgAb {
        FgAb::from_cyclic_orders(&[Int::from(n)])
    }

    /// Normal form of ⊕ ℤ/n_i (0 meaning ℤ).
    pub fn from_cyclic_orders(orders: &[Int]) -> FgAb {
        Quotient::of_diagonal(orders).group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of canonical coordinates.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Per-coordinate moduli: 0 for free coordinates, then the invariant factors.
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = vec![Int::zero(); self.free_rank];
        m.extend(self.torsion.iter().cloned());
        m
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.ngens() <= 1
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().cloned().product())
    }

    /// Exponent of the torsion subgroup.
    pub fn exponent(&self) -> Int {
        self.torsion.last().cloned().unwrap_or_else(Int::one)
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.ngens()]
    }

    pub fn basis(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.ngens(), "element has wrong length");
        v.iter()
            .enumerate()
            .map(|(i, x)| if i < self.free_rank { x.clone() } else { x.reduce(&self.torsion[i - self.free_rank]) })
            .collect()
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, c: &Int, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| c * x).collect();
        self.reduce(&s)
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Order of an element (`None` if infinite).
    pub fn element_order(&self, v: &[Int]) -> Option<Int> {
        let v = self.reduce(v);
        if v[..self.free_rank].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = Int::one();
        for (x, d) in v[self.free_rank..].iter().zip(&self.torsion) {
            if !x.is_zero() {
                ord = ord.lcm(&d.div_exact(&x.gcd(d)));
            }
        }
        Some(ord)
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<Int>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_usize();
            let mut next = Vec::with_capacity(out.len() * d);
            for v in &out {
                for x in 0..d {
                    let mut w = v.clone();
                    w.push(Int::from(x));
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// Direct sum of normal forms (renormalized).
    pub fn direct_sum(&self, other: &FgAb) -> FgAb {
        let mut m = self.moduli();
        m.extend(other.moduli());
        FgAb::from_cyclic_orders(&m)
    }
}

impl fmt::Display for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// ℤ^n / (column span of a relation matrix), brought to normal form.
///
/// `to_normal` (k×n) sends presentation coordinates to normal coordinates;
/// `from_normal` (n×k) sends normal generators back to presentation coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAb,
    pub to_normal: IntMatrix,
    pub from_normal: IntMatrix,
}

impl Quotient {
    pub fn of_relations(n: usize, relations: &IntMatrix) -> Quotient {
        assert_eq!(relations.rows(), n);
        let s = smith_normal_form(relations);
        let diag = s.diagonal();
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for i in 0..n {
            let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
            if d.is_zero() {
                free.push(i);
            } else if !d.is_one() {
                tors.push((i, d));
            }
        }
        let mut keep = free.clone();
        keep.extend(tors.iter().map(|(i, _)| *i));
        let group = FgAb { free_rank: free.len(), torsion: tors.into_iter().map(|(_, d)| d).collect() };
        let mut to_normal = s.u.select_rows(&keep);
        to_normal.reduce_rows(&group.moduli());
        let from_normal = s.u_inv.select_cols(&keep);
        Quotient { group, to_normal, from_normal }
    }

    /// ⊕ ℤ/m_i (0 meaning ℤ).
    pub fn of_diagonal(moduli: &[Int]) -> Quotient {
        let cols: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
        let mut rel = IntMatrix::zeros(moduli.len(), cols.len());
        for (j, &i) in cols.iter().enumerate() {
            rel[(i, j)] = moduli[i].clone();
        }
        if moduli.iter().all(|m| !m.is_one()) && is_normal_order(moduli) {
            // already normal: skip the SNF so coordinates stay literal
            let k = moduli.len();
            let group = FgAb {
                free_rank: moduli.iter().filter(|m| m.is_zero()).count(),
                torsion: moduli.iter().filter(|m| !m.is_zero()).cloned().collect(),
            };
            return Quotient { group, to_normal: IntMatrix::identity(k), from_normal: IntMatrix::identity(k) };
        }
        Quotient::of_relations(moduli.len(), &rel)
    }

    pub fn project(&self, v: &[Int]) -> Vec<Int> {
        self.group.reduce(&self.to_normal.mul_vec(v))
    }

    pub fn lift(&self, v: &[Int]) -> Vec<Int> {
        self.from_normal.mul_vec(v)
    }
}

fn is_normal_order(moduli: &[Int]) -> bool {
    let free = moduli.iter().take_while(|m| m.is_zero()).count();
    let tors = &moduli[free..];
    tors.iter().all(|m| !m.is_zero()) && tors.windows(2).all(|w| w[0].divides(&w[1]))
}
