//! Sparse Gaussian elimination over `F_p`.

use std::collections::HashMap;

use crate::algebra::Field;

/// A sparse vector: strictly increasing indices, nonzero coefficients.
pub type SparseVec = Vec<(usize, u32)>;

/// `a - c * b` for sparse vectors.
fn sub_scaled(a: &[(usize, u32)], c: u32, b: &[(usize, u32)], f: Field) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.neg(f.mul(c, b[j].1))));
            j += 1;
        } else {
            let v = f.sub(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form; rows are reduced on insertion.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon { field, pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored pivots; returns the (possibly zero) remainder.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let f = self.field;
        let mut start = 0;
        let mut done: SparseVec = Vec::new();
        while start < v.len() {
            let (col, c) = v[start];
            match self.pivots.get(&col) {
                Some(p) => {
                    v = sub_scaled(&v[start..], c, p, f);
                    start = 0;
                }
                None => {
                    done.push((col, c));
                    start += 1;
                }
            }
        }
        done
    }

    /// Inserts `v`; returns true when it was independent of the previous rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let f = self.field;
        // only the leading entry needs to be a fresh pivot
        let mut v = v;
        loop {
            let Some(&(col, c)) = v.first() else { return false };
            match self.pivots.get(&col) {
                Some(p) => v = sub_scaled(&v, c, p, f),
                None => {
                    let inv = f.inv(c);
                    let v = v.into_iter().map(|(k, x)| (k, f.mul(inv, x))).collect();
                    self.pivots.insert(col, v);
                    return true;
                }
            }
        }
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(field: Field, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut rows: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    // sparse rows first keeps fill-in low
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Field {
        Field::new(7).unwrap()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(f(), vec![]), 0);
        assert_eq!(rank(f(), vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]]), 1);
        assert_eq!(rank(f(), vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 3), (1, 5)]]), 2);
        assert_eq!(rank(f(), vec![vec![(2, 6)], vec![], vec![(0, 1), (2, 1)]]), 2);
    }

    #[test]
    fn characteristic_matters() {
        // [[1,1],[1,-1]] is singular only in characteristic 2
        let rows = |p| {
            let fl = Field::new(p).unwrap();
            rank(fl, vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, fl.neg(1))]])
        };
        assert_eq!(rows(2), 1);
        assert_eq!(rows(7), 2);
    }

    #[test]
    fn reduce_reports_membership() {
        let mut e = Echelon::new(f());
        assert!(e.insert(vec![(1, 3), (4, 1)]));
        assert!(e.insert(vec![(0, 1), (1, 1)]));
        assert!(!e.insert(vec![(0, 2), (1, 5), (4, 1)]));
        assert!(e.reduce(vec![(1, 6), (4, 2)]).is_empty());
        assert!(!e.reduce(vec![(4, 1)]).is_empty());
    }
}
