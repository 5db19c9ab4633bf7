//! Dense linear algebra over a prime field `F_p`.

use crate::arith::inv_mod;

/// Row-reduced echelon basis of a subspace of `F_p^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpSpace {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl FpSpace {
    pub fn new(p: u64, dim: usize) -> Self {
        FpSpace { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                for (a, &b) in w.iter_mut().zip(row) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(w[c], p).expect("nonzero in a prime field");
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (a, &b) in row.iter_mut().zip(&w) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, c);
        true
    }

    /// Basis of `{x : row·x = 0 for every basis row}`.
    pub fn annihilator(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let free: Vec<usize> = (0..self.dim).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; self.dim];
                x[f] = 1;
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    x[c] = (p - row[f]) % p;
                }
                x
            })
            .collect()
    }
}

/// Solves `M x = b` over `F_p` (rows of `M` given), returning one solution.
pub fn solve(p: u64, m: &[Vec<u64>], b: &[u64], ncols: usize) -> Option<Vec<u64>> {
    // Eliminate on the augmented matrix.
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut v: Vec<u64> = r.iter().map(|&x| x % p).collect();
            v.push(bi % p);
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(i) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, i);
        let inv = inv_mod(rows[rank][c], p).expect("prime field");
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank && row[c] != 0 {
                let f = row[c];
                for (a, &bv) in row.iter_mut().zip(&pivot_row) {
                    *a = (*a + (p - f) * bv) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[ncols] != 0) {
        return None;
    }
    let mut x = vec![0u64; ncols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[ncols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_and_annihilator() {
        let mut s = FpSpace::new(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1]));
        let ann = s.annihilator();
        assert_eq!(ann.len(), 1);
        for row in s.rows() {
            let dot: u64 = row.iter().zip(&ann[0]).map(|(a, b)| a * b).sum();
            assert_eq!(dot % 3, 0);
        }
    }

    #[test]
    fn solve_small_system() {
        let m = vec![vec![1, 1], vec![1, 0]];
        let x = solve(2, &m, &[1, 1], 2).unwrap();
        assert_eq!(x, vec![1, 0]);
        assert!(solve(2, &[vec![1, 1], vec![1, 1]], &[0, 1], 2).is_none());
    }
}
