//! Smith normal form of integer relation matrices, used to present quotients
//! `Z^r / L` as products of cyclic groups.

/// `Z^r / L ≅ ⊕ Z/moduli[j]`, with explicit maps in both directions.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Invariant factors greater than one, in divisibility order.
    pub moduli: Vec<u64>,
    /// `project[i]` = image of the i-th standard basis vector of `Z^r`.
    pub project: Vec<Vec<u64>>,
    /// `lifts[j]` = a vector of `Z^r` mapping onto the j-th new generator.
    pub lifts: Vec<Vec<i128>>,
}

impl Presentation {
    pub fn apply(&self, x: &[i128]) -> Vec<u64> {
        let mut out = vec![0i128; self.moduli.len()];
        for (xi, row) in x.iter().zip(&self.project) {
            if *xi == 0 {
                continue;
            }
            for (o, (&p, &m)) in out.iter_mut().zip(row.iter().zip(&self.moduli)) {
                *o = (*o + xi.rem_euclid(m as i128) * p as i128) % m as i128;
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }
}

struct Snf {
    m: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    vinv: Vec<Vec<i128>>,
    cols: usize,
}

impl Snf {
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.m.iter_mut() {
            row.swap(a, b);
        }
        for row in self.v.iter_mut() {
            row.swap(a, b);
        }
        self.vinv.swap(a, b);
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for row in self.m.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in self.v.iter_mut() {
            row[j] -= q * row[t];
        }
        let (rj, rt) = if j < t {
            let (lo, hi) = self.vinv.split_at_mut(t);
            (&lo[j], &mut hi[0])
        } else {
            let (lo, hi) = self.vinv.split_at_mut(j);
            (&hi[0], &mut lo[t])
        };
        for (a, b) in rt.iter_mut().zip(rj.iter()) {
            *a += q * b;
        }
    }

    fn row_sub(&mut self, i: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for c in 0..self.cols {
            let x = self.m[t][c];
            self.m[i][c] -= q * x;
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in self.m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<i128> {
        let rows = self.m.len();
        let mut diag = Vec::new();
        for t in 0..self.cols.min(rows) {
            let Some((i, j)) = self.min_entry(t) else { break };
            self.m.swap(t, i);
            self.swap_cols(t, j);
            loop {
                let p = self.m[t][t];
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = self.m[i][t].div_euclid(p);
                    self.row_sub(i, t, q);
                    if self.m[i][t] != 0 {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    let q = self.m[t][j].div_euclid(p);
                    self.col_sub(j, t, q);
                    if self.m[t][j] != 0 {
                        dirty = true;
                    }
                }
                if dirty {
                    let (i, j) = self.min_in_cross(t);
                    self.m.swap(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Pivot must divide the remaining block.
                let bad = (t + 1..rows).find(|&i| (t + 1..self.cols).any(|j| self.m[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for c in 0..self.cols {
                            let x = self.m[i][c];
                            self.m[t][c] += x;
                        }
                    }
                    None => break,
                }
            }
            if self.m[t][t] < 0 {
                for c in 0..self.cols {
                    self.m[t][c] = -self.m[t][c];
                }
            }
            diag.push(self.m[t][t]);
        }
        diag
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.m[t][t].abs());
        for i in t + 1..self.m.len() {
            let x = self.m[i][t].abs();
            if x != 0 && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.cols {
            let x = self.m[t][j].abs();
            if x != 0 && x < best.2 {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }
}

/// Presents `Z^r / rowspan(relations)`. The relations must span a
/// full-rank lattice, i.e. the quotient must be finite.
pub fn present(r: usize, relations: &[Vec<i128>]) -> Presentation {
    let identity: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
    let mut snf = Snf { m: relations.to_vec(), v: identity.clone(), vinv: identity, cols: r };
    let diag = snf.run();
    assert_eq!(diag.len(), r, "relation lattice is not of full rank");
    let kept: Vec<usize> = (0..r).filter(|&j| diag[j] != 1).collect();
    let moduli: Vec<u64> = kept.iter().map(|&j| diag[j] as u64).collect();
    let project = (0..r).map(|i| kept.iter().map(|&j| snf.v[i][j].rem_euclid(diag[j]) as u64).collect()).collect();
    let lifts = kept.iter().map(|&j| snf.vinv[j].clone()).collect();
    Presentation { moduli, project, lifts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_plus_z3_is_z6() {
        let p = present(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(p.moduli, vec![6]);
        // lifts map back to the generator
        assert_eq!(p.apply(&p.lifts[0]), vec![1]);
    }

    #[test]
    fn z8_mod_4() {
        let p = present(1, &[vec![8], vec![4]]);
        assert_eq!(p.moduli, vec![4]);
        assert_eq!(p.apply(&[1]).len(), 1);
    }

    #[test]
    fn trivial_quotient() {
        let p = present(2, &[vec![1, 0], vec![0, 1], vec![3, 5]]);
        assert!(p.moduli.is_empty());
    }

    #[test]
    fn invariant_factors_divide() {
        let p = present(3, &[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10], vec![2, 2, 0]]);
        let order: u64 = p.moduli.iter().product();
        // the first two coordinates give 2Z x 2Z, the last Z/10
        assert_eq!(order, 40);
        for w in p.moduli.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for (j, l) in p.lifts.iter().enumerate() {
            let img = p.apply(l);
            for (k, &x) in img.iter().enumerate() {
                assert_eq!(x, u64::from(j == k));
            }
        }
    }
}
