//! Dense Gaussian elimination over F_q.

use crate::coefficients::{Fq, FqElem};
use crate::ring::CommRing;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row (rows beyond the rank are dropped).
pub fn row_reduce(k: &Fq, rows: &mut Vec<Vec<FqElem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let zero = k.zero();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != zero) else { continue };
        rows.swap(r, pr);
        let inv = k.inv(rows[r][col]).unwrap();
        for v in rows[r].iter_mut().skip(col) {
            *v = k.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == zero {
                continue;
            }
            let f = row[col];
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                if *pv != zero {
                    *v = k.sub(v, &k.mul(&f, pv));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(k: &Fq, rows: &[Vec<FqElem>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(k, &mut m).len()
}

/// Some solution of `a x = b` (`a` given by rows), free variables set to 0.
pub fn solve(k: &Fq, a: &[Vec<FqElem>], b: &[FqElem], ncols: usize) -> Option<Vec<FqElem>> {
    let zero = k.zero();
    let mut aug: Vec<Vec<FqElem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.resize(ncols, zero);
            r.push(*bi);
            r
        })
        .collect();
    let pivots = row_reduce(k, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![zero; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some(x)
}

/// Basis of the right kernel of `a`.
pub fn nullspace(k: &Fq, a: &[Vec<FqElem>], ncols: usize) -> Vec<Vec<FqElem>> {
    let zero = k.zero();
    let mut m: Vec<Vec<FqElem>> = a
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, zero);
            r
        })
        .collect();
    let pivots = row_reduce(k, &mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero; ncols];
        v[free] = k.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = k.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Incrementally maintained row space, for repeated membership tests.
#[derive(Clone, Debug)]
pub struct RowSpace {
    k: Fq,
    rows: Vec<Vec<FqElem>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(k: &Fq) -> Self {
        RowSpace { k: k.clone(), rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[FqElem]) -> Vec<FqElem> {
        let k = &self.k;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if pc < v.len() && !k.is_zero(&v[pc]) {
                let f = v[pc];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FqElem]) -> bool {
        self.reduce(v).iter().all(|x| self.k.is_zero(x))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[FqElem]) -> bool {
        let k = self.k.clone();
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !k.is_zero(x)) else { return false };
        let inv = k.inv(v[pc]).unwrap();
        for x in v.iter_mut() {
            *x = k.mul(x, &inv);
        }
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if pc < row.len() && !k.is_zero(&row[pc]) {
                let f = row[pc];
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_system() {
        let k = Fq::prime(5).unwrap();
        let e = |n| k.elem(n);
        // x + 2y = 3, 3x + 4y = 2  => x = 1, y = 1
        let a = vec![vec![e(1), e(2)], vec![e(3), e(4)]];
        let x = solve(&k, &a, &[e(3), e(2)], 2).unwrap();
        assert_eq!(x, vec![e(1), e(1)]);
        assert!(solve(&k, &[vec![e(1), e(1)], vec![e(2), e(2)]], &[e(1), e(3)], 2).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let k = Fq::prime(3).unwrap();
        let e = |n| k.elem(n);
        let a = vec![vec![e(1), e(2), e(0), e(1)], vec![e(0), e(1), e(1), e(2)]];
        let ns = nullspace(&k, &a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let s = row.iter().zip(v).fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)));
                assert_eq!(s, k.zero());
            }
        }
    }

    #[test]
    fn row_space_membership() {
        let k = Fq::prime(7).unwrap();
        let e = |n| k.elem(n);
        let mut s = RowSpace::new(&k);
        assert!(s.insert(&[e(1), e(2), e(3)]));
        assert!(s.insert(&[e(0), e(1), e(1)]));
        assert!(!s.insert(&[e(2), e(5), e(7)]));
        assert!(s.contains(&[e(1), e(3), e(4)]));
        assert!(!s.contains(&[e(0), e(0), e(1)]));
        assert_eq!(s.dim(), 2);
    }
}
