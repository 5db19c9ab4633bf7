//! Howell normal form over `Z/N` and the additive linear algebra built on it.
//!
//! A finite abelian group `Z/d_1 ⊕ … ⊕ Z/d_r` is embedded into `(Z/N)^r` with
//! `N = lcm(d_i)` by scaling coordinate `i` with `N/d_i`. Subgroups become
//! submodules of `(Z/N)^r`, and the Howell form of a generating set is a
//! canonical basis: two generating sets span the same subgroup exactly when
//! their Howell forms agree row for row. The Howell property (every element
//! vanishing on the first `c` columns lies in the span of the rows whose pivot
//! is past `c`) is what makes greedy reduction a correct membership test.

use crate::arith::{ext_gcd, gcd, lcm, mul_mod, normalizing_unit, reduce_signed};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Howell {
    n: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn axpy(n: u64, dst: &mut [u64], coeff: u64, src: &[u64]) {
    if coeff == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = ((*d as u128 + coeff as u128 * s as u128) % n as u128) as u64;
        }
    }
}

fn scaled(n: u64, coeff: u64, src: &[u64]) -> Vec<u64> {
    src.iter().map(|&s| mul_mod(coeff, s, n)).collect()
}

impl Howell {
    pub fn new<I>(n: u64, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        assert!(n >= 1);
        let mut pending: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|mut r| {
                debug_assert_eq!(r.len(), ncols);
                for x in r.iter_mut() {
                    *x %= n;
                }
                r
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();

        let mut out: Vec<Vec<u64>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..ncols {
            let mut piv: Option<Vec<u64>> = None;
            let mut rest = Vec::with_capacity(pending.len());
            for row in pending.drain(..) {
                if row[c] == 0 {
                    rest.push(row);
                    continue;
                }
                match piv.take() {
                    None => piv = Some(row),
                    Some(p) => {
                        let (a, b) = (p[c] as i128, row[c] as i128);
                        let (g, s, t) = ext_gcd(a, b);
                        let (bg, ag) = (b / g, a / g);
                        let mut newp = vec![0u64; ncols];
                        let mut other = vec![0u64; ncols];
                        for k in c..ncols {
                            let (pk, rk) = (p[k] as i128, row[k] as i128);
                            newp[k] = reduce_signed(s * pk + t * rk, n);
                            other[k] = reduce_signed(bg * pk - ag * rk, n);
                        }
                        debug_assert_eq!(other[c], 0);
                        if other.iter().any(|&x| x != 0) {
                            rest.push(other);
                        }
                        piv = Some(newp);
                    }
                }
            }
            pending = rest;
            if let Some(mut p) = piv {
                let u = normalizing_unit(p[c], n);
                if u != 1 {
                    p = scaled(n, u, &p);
                }
                let g = p[c];
                debug_assert_eq!(g, gcd(g, n));
                let extra = scaled(n, n / g, &p);
                if extra.iter().any(|&x| x != 0) {
                    pending.push(extra);
                }
                out.push(p);
                pivots.push(c);
            }
        }
        debug_assert!(pending.is_empty());

        // Reduce entries above each pivot into [0, pivot).
        for j in 0..out.len() {
            let c = pivots[j];
            let pv = out[j][c];
            let (head, tail) = out.split_at_mut(j);
            let prow = &tail[0];
            for row in head.iter_mut() {
                let q = row[c] / pv;
                if q != 0 {
                    axpy(n, row, n - q % n, prow);
                }
            }
        }
        Howell { n, ncols, rows: out, pivots }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Additive order of the span of each row relative to the later rows.
    pub fn row_orders(&self) -> Vec<u64> {
        self.rows.iter().zip(&self.pivots).map(|(r, &c)| self.n / r[c]).collect()
    }

    pub fn order(&self) -> u128 {
        self.row_orders().iter().map(|&o| o as u128).product()
    }

    /// Reduces `v` against the rows whose pivot lies in `0..upto`. Returns the
    /// row coefficients used, or `None` as soon as a column in that range
    /// cannot be cleared. On success `v` holds the remainder.
    pub fn reduce_prefix(&self, v: &mut [u64], upto: usize) -> Option<Vec<u64>> {
        let mut coeffs = vec![0u64; self.rows.len()];
        let mut j = 0;
        for c in 0..upto {
            while j < self.pivots.len() && self.pivots[j] < c {
                j += 1;
            }
            if j < self.pivots.len() && self.pivots[j] == c {
                let pv = self.rows[j][c];
                if !v[c].is_multiple_of(pv) {
                    return None;
                }
                let q = v[c] / pv;
                if q != 0 {
                    axpy(self.n, v, self.n - q, &self.rows[j]);
                    coeffs[j] = q;
                }
            } else if v[c] != 0 {
                return None;
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.n).collect();
        self.reduce_prefix(&mut w, self.ncols).is_some()
    }

    /// Rows whose pivot column is at or after `from`.
    pub fn rows_from(&self, from: usize) -> impl Iterator<Item = &Vec<u64>> {
        self.rows.iter().zip(&self.pivots).filter(move |(_, &c)| c >= from).map(|(r, _)| r)
    }

    /// Every element of the span, each exactly once.
    pub fn span_elements(&self) -> Vec<Vec<u64>> {
        let orders = self.row_orders();
        let mut out = vec![vec![0u64; self.ncols]];
        for (row, &ord) in self.rows.iter().zip(&orders) {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..ord {
                    next.push(cur.clone());
                    axpy(self.n, &mut cur, 1, row);
                }
            }
            out = next;
        }
        out
    }
}

/// Coordinate scaling between `⊕ Z/d_i` and `(Z/N)^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    n: u64,
    scale: Vec<u64>,
}

impl Embedding {
    pub fn new(moduli: &[u64]) -> Self {
        Self::with_modulus(moduli, moduli.iter().fold(1, |a, &d| lcm(a, d)))
    }

    pub fn with_modulus(moduli: &[u64], n: u64) -> Self {
        let scale = moduli
            .iter()
            .map(|&d| {
                debug_assert_eq!(n % d, 0);
                n / d
            })
            .collect();
        Embedding { n, scale }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.scale.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scale.is_empty()
    }

    pub fn embed_into(&self, v: &[u64], out: &mut [u64]) {
        for ((o, &x), &s) in out.iter_mut().zip(v).zip(&self.scale) {
            *o = mul_mod(x, s, self.n);
        }
    }

    pub fn embed(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; v.len()];
        self.embed_into(v, &mut out);
        out
    }

    pub fn unembed(&self, w: &[u64]) -> Vec<u64> {
        w.iter()
            .zip(&self.scale)
            .map(|(&x, &s)| {
                debug_assert_eq!(x % s, 0, "vector outside the embedded lattice");
                x / s
            })
            .collect()
    }
}

/// An additive map `⊕ Z/dom_i → ⊕ Z/cod_j` given by the images of the
/// domain generators, plus optional extra codomain rows that are quotiented
/// out (so kernels become preimages of the span of those rows).
pub struct AdditiveMap<'a> {
    pub dom: &'a [u64],
    pub cod: &'a [u64],
    pub images: &'a [Vec<u64>],
}

pub struct Graph {
    howell: Howell,
    dom: Embedding,
    cod: Embedding,
}

impl<'a> AdditiveMap<'a> {
    /// Howell form of `{(f(x) + k, x)}` where `k` ranges over the span of `modulo`.
    pub fn graph(&self, modulo: &[Vec<u64>]) -> Graph {
        debug_assert_eq!(self.images.len(), self.dom.len());
        let n = self.dom.iter().chain(self.cod).fold(1, |a, &d| lcm(a, d));
        let de = Embedding::with_modulus(self.dom, n);
        let ce = Embedding::with_modulus(self.cod, n);
        let (a, b) = (self.dom.len(), self.cod.len());
        let mut rows = Vec::with_capacity(a + modulo.len());
        for (i, img) in self.images.iter().enumerate() {
            let mut row = vec![0u64; b + a];
            ce.embed_into(img, &mut row[..b]);
            row[b + i] = de.scale[i] % n;
            rows.push(row);
        }
        for k in modulo {
            let mut row = vec![0u64; b + a];
            ce.embed_into(k, &mut row[..b]);
            rows.push(row);
        }
        Graph { howell: Howell::new(n, a + b, rows), dom: de, cod: ce }
    }

    pub fn kernel(&self) -> Vec<Vec<u64>> {
        self.graph(&[]).kernel()
    }

    pub fn preimage(&self, target: &[Vec<u64>]) -> Vec<Vec<u64>> {
        self.graph(target).kernel()
    }

    pub fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        self.graph(&[]).solve(y)
    }
}

impl Graph {
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let b = self.cod.len();
        self.howell.rows_from(b).map(|r| self.dom.unembed(&r[b..])).collect()
    }

    /// Some `x` with `f(x) ≡ y` modulo the quotiented rows.
    pub fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        let b = self.cod.len();
        let a = self.dom.len();
        let n = self.howell.modulus();
        let mut v = vec![0u64; a + b];
        self.cod.embed_into(y, &mut v[..b]);
        self.howell.reduce_prefix(&mut v, b)?;
        // v = (y, 0) - Σ c (f(x_r), x_r) with first block cleared.
        let neg: Vec<u64> = v[b..].iter().map(|&x| (n - x) % n).collect();
        Some(self.dom.unembed(&neg))
    }
}
