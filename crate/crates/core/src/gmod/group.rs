use crate::Error;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

/// A finite group as an explicit multiplication table; element 0 is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    label: String,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Validates the table: identity at 0, Latin square, associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<FiniteGroup, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidGroup(format!("row {} has length {}, expected {}", i, r.len(), n)));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {} in row {} is out of range", x, i)));
            }
        }
        for i in 0..n {
            if rows[0][i] != i || rows[i][0] != i {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity (fails at {})", i)));
            }
            let row: HashSet<usize> = rows[i].iter().copied().collect();
            let col: HashSet<usize> = (0..n).map(|k| rows[k][i]).collect();
            if row.len() != n || col.len() != n {
                return Err(Error::InvalidGroup(format!("row or column {} is not a permutation", i)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({}, {}, {})", a, b, c)));
                    }
                }
            }
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap()).collect();
        Ok(FiniteGroup { order: n, table, inverses, label: format!("G{}", n) })
    }

    fn from_table_unchecked(order: usize, table: Vec<usize>, label: String) -> FiniteGroup {
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap()).collect();
        FiniteGroup { order, table, inverses, label }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// ℤ/n with element k the k-th power of the generator 1.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_table_unchecked(n, table, format!("C{}", n))
    }

    /// Direct product; element (a, b) has index a·|H| + b.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (g.order, h.order);
        let mut table = vec![0; n * m * n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let x = a1 * m + b1;
                        let y = a2 * m + b2;
                        table[x * n * m + y] = g.mul(a1, a2) * m + h.mul(b1, b2);
                    }
                }
            }
        }
        FiniteGroup::from_table_unchecked(n * m, table, format!("{}x{}", g.label, h.label))
    }

    pub fn product_of(factors: &[FiniteGroup]) -> FiniteGroup {
        let mut it = factors.iter();
        let first = it.next().cloned().unwrap_or_else(FiniteGroup::trivial);
        it.fold(first, |acc, f| FiniteGroup::product(&acc, f))
    }

    /// The symmetric group on n letters; permutations in lexicographic order,
    /// product (στ)(i) = σ(τ(i)).
    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for x in 0..n {
                    if !p.contains(&x) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let k = perms.len();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
                table[a * k + b] = index(&c);
            }
        }
        FiniteGroup::from_table_unchecked(k, table, format!("S{}", n))
    }

    pub fn with_label(mut self, label: &str) -> FiniteGroup {
        self.label = label.to_string();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Closure of a set of elements under the group law.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup { parent: self.clone(), elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup { parent: self.clone(), elements: vec![0] }
    }

    /// All subgroups, sorted by (order, element list).
    pub fn all_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![vec![0usize]];
        found.insert(vec![0]);
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated(&gens);
                // Lagrange: a proper overgroup has order a multiple of |h|
                debug_assert_eq!(k.len() % h.len(), 0);
                if found.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        subs.into_iter().map(|elements| Subgroup { parent: self.clone(), elements }).collect()
    }
}

/// A subgroup of a finite group, as a sorted element list.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Subgroup, Error> {
        elements.sort_unstable();
        elements.dedup();
        let n = parent.order();
        if elements.iter().any(|&x| x >= n) {
            return Err(Error::InvalidSubgroup("element out of range".into()));
        }
        if elements.first() != Some(&0) {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for &a in &elements {
            if elements.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {}", a)));
            }
            for &b in &elements {
                if elements.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::InvalidSubgroup(format!("not closed under product at ({}, {})", a, b)));
                }
            }
        }
        Ok(Subgroup { parent: parent.clone(), elements })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of a parent element inside the subgroup's own indexing.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    /// The subgroup as a group in its own right (element i ↦ `elements[i]`).
    pub fn as_group(&self) -> FiniteGroup {
        let k = self.elements.len();
        let mut table = vec![0; k * k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * k + j] = self.local_index(self.parent.mul(a, b)).unwrap();
            }
        }
        FiniteGroup::from_table_unchecked(k, table, format!("{}<{}>", self.parent.label(), k))
    }

    /// Left coset representatives (smallest index per coset gH), in increasing order.
    pub fn left_coset_reps(&self) -> Vec<usize> {
        let mut seen = vec![false; self.parent.order()];
        let mut reps = Vec::new();
        for g in 0..self.parent.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.elements {
                seen[self.parent.mul(g, h)] = true;
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(Arc::new(FiniteGroup::cyclic(4)).all_subgroups().len(), 3);
        let v4 = Arc::new(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)));
        assert_eq!(v4.all_subgroups().len(), 5);
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(s3.all_subgroups().len(), 6);
        let orders: Vec<usize> = Arc::new(FiniteGroup::cyclic(4)).all_subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn table_validation() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(FiniteGroup::from_table(s3.table_rows()).is_ok());
        assert!(!s3.is_abelian());
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(bad).is_err());
    }

    #[test]
    fn subgroup_validation() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        assert!(Subgroup::new(&c4, vec![0, 2]).is_ok());
        assert!(matches!(Subgroup::new(&c4, vec![0, 1]), Err(Error::InvalidSubgroup(_))));
        let h = Subgroup::new(&c4, vec![0, 2]).unwrap();
        assert_eq!(h.left_coset_reps(), vec![0, 1]);
        assert_eq!(h.as_group(), FiniteGroup::cyclic(2));
    }
}
