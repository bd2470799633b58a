//! Exact sparse linear algebra over ℚ with incremental echelon forms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// Combination of input vectors, by insertion index.
pub type Combination = BTreeMap<usize, Q>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Q, x: &SparseVec<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Row echelon form where each row's pivot is its largest key.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<(SparseVec<K>, Combination)>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Fully reduce `v` against the pivots, updating `comb` alongside.
    pub fn reduce(&self, v: &mut SparseVec<K>, comb: &mut Combination) {
        let mut bound: Option<K> = None;
        loop {
            let next = {
                let range: Box<dyn DoubleEndedIterator<Item = (&K, &Q)>> = match &bound {
                    None => Box::new(v.iter()),
                    Some(b) => Box::new(v.range(..b.clone())),
                };
                let mut found = None;
                for (k, c) in range.rev() {
                    if let Some(&r) = self.pivots.get(k) {
                        found = Some((k.clone(), c.clone(), r));
                        break;
                    }
                }
                found
            };
            match next {
                None => return,
                Some((k, c, r)) => {
                    let (row, rc) = &self.rows[r];
                    let a = -c;
                    axpy(v, &a, row);
                    axpy(comb, &a, rc);
                    bound = Some(k);
                }
            }
        }
    }

    /// Insert the next vector. Returns the linear relation it satisfies with
    /// earlier vectors if it is dependent.
    pub fn insert(&mut self, mut v: SparseVec<K>) -> Option<Combination> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut comb = Combination::new();
        comb.insert(idx, Q::one());
        self.reduce(&mut v, &mut comb);
        if v.is_empty() {
            return Some(comb);
        }
        let (pk, pc) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = pc.recip();
        for c in v.values_mut() {
            *c *= &inv;
        }
        for c in comb.values_mut() {
            *c *= &inv;
        }
        self.pivots.insert(pk, self.rows.len());
        self.rows.push((v, comb));
        None
    }

    pub fn in_span(&self, v: &SparseVec<K>) -> bool {
        let mut w = v.clone();
        let mut c = Combination::new();
        self.reduce(&mut w, &mut c);
        w.is_empty()
    }

    /// Express `v` in terms of inserted vectors, if possible.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<Combination> {
        let mut w = v.clone();
        let mut c = Combination::new();
        self.reduce(&mut w, &mut c);
        if !w.is_empty() {
            return None;
        }
        Some(c.into_iter().map(|(i, a)| (i, -a)).collect())
    }
}

/// A basis of the relations among `cols`, each normalized so that its
/// largest index has coefficient one.
pub fn kernel<K: Ord + Clone>(cols: Vec<SparseVec<K>>) -> Vec<Combination> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for c in cols {
        if let Some(rel) = e.insert(c) {
            out.push(rel);
        }
    }
    out
}

pub fn rank<K: Ord + Clone>(cols: Vec<SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert(c);
    }
    e.rank()
}

/// Reduced row echelon basis of the span of `vecs` (pivot = smallest key first).
pub fn span_basis<K: Ord + Clone>(vecs: Vec<SparseVec<K>>) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new();
    for v in vecs {
        e.insert(v);
    }
    // Back-substitute so that each row has zeros in the other pivot columns.
    let mut rows: Vec<SparseVec<K>> = e.rows.iter().map(|r| r.0.clone()).collect();
    let pivots: Vec<K> = rows.iter().map(|r| r.keys().next_back().unwrap().clone()).collect();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| pivots[a].cmp(&pivots[b]));
    for &i in &order {
        for j in 0..rows.len() {
            if i == j {
                continue;
            }
            let c = rows[j].get(&pivots[i]).cloned();
            if let Some(c) = c {
                let ri = rows[i].clone();
                axpy(&mut rows[j], &-c, &ri);
            }
        }
    }
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| pivots[a].cmp(&pivots[b]));
    idx.into_iter().map(|i| rows[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1)]), v(&[(0, 2), (1, 1)])];
        let k = kernel(cols.clone());
        assert_eq!(k.len(), 1);
        let mut sum: SparseVec<u32> = SparseVec::new();
        for (i, c) in &k[0] {
            axpy(&mut sum, c, &cols[*i]);
        }
        assert!(sum.is_empty());
        assert_eq!(rank(cols), 2);
    }

    #[test]
    fn solve_and_span() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 1), (2, 1)]));
        e.insert(v(&[(1, 1)]));
        let target = v(&[(0, 2), (1, 3), (2, 2)]);
        let c = e.solve(&target).unwrap();
        assert_eq!(c.get(&0), Some(&q(2)));
        assert_eq!(c.get(&1), Some(&q(3)));
        assert!(!e.in_span(&v(&[(2, 1)])));
        let b = span_basis(vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)])]);
        assert_eq!(b, vec![v(&[(0, 1)]), v(&[(1, 1)])]);
    }
}
