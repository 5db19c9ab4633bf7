//! Finite fields `F_q = F_p[t]/(g)` with a fixed choice of `g`.

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// `F_p[t]/(g)` where `g = t^e + Σ c_i t^i` is the first monic irreducible
/// polynomial of degree `e` when the coefficient vectors `(c_0, …, c_{e-1})`
/// are ordered by `Σ c_i p^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub degree: usize,
    /// `c_0 … c_{e-1}`.
    pub modulus: Vec<u64>,
}

/// Remainder of `a` modulo the monic `b` over `F_p` (coefficients low to high).
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().expect("nonempty");
        if lead != 0 {
            let shift = a.len() - db;
            for (i, &bi) in b[..db].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * bi % p) % p;
            }
        }
    }
    a
}

fn monic_from_code(mut code: u64, degree: usize, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (0..degree)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect();
    v.push(1);
    v
}

fn is_irreducible(g: &[u64], p: u64) -> bool {
    let e = g.len() - 1;
    for d in 1..=e / 2 {
        for code in 0..p.pow(d as u32) {
            let h = monic_from_code(code, d, p);
            if poly_rem(g.to_vec(), &h, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let e = e as usize;
        let modulus = (0..p.pow(e as u32))
            .map(|code| monic_from_code(code, e, p))
            .find(|g| is_irreducible(g, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(FieldSpec { p, degree: e, modulus: modulus[..e].to_vec() })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// Coordinates of `t^n`.
    pub fn power_of_t(&self, n: usize) -> Vec<u64> {
        let mut a = vec![0u64; n + 1];
        a[n] = 1;
        let mut g = self.modulus.clone();
        g.push(1);
        let mut r = poly_rem(a, &g, self.p);
        r.resize(self.degree, 0);
        r
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.degree - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut g = self.modulus.clone();
        g.push(1);
        let mut r = poly_rem(prod, &g, p);
        r.resize(self.degree, 0);
        r
    }

    /// `g(θ)` for `θ` in any ring, given the powers `θ^0 … θ^e`.
    pub fn eval_modulus(&self, ring: &FiniteRing, powers: &[Vec<u64>]) -> Vec<u64> {
        let mut acc = powers[self.degree].clone();
        for (c, pw) in self.modulus.iter().zip(powers) {
            ring.add_assign(&mut acc, &ring.scale(pw, *c as i128));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chosen_moduli() {
        assert_eq!(FieldSpec::new(4).unwrap().modulus, vec![1, 1]);
        assert_eq!(FieldSpec::new(8).unwrap().modulus, vec![1, 1, 0]);
        assert_eq!(FieldSpec::new(9).unwrap().modulus, vec![1, 0]);
        assert_eq!(FieldSpec::new(5).unwrap().modulus, vec![0]);
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_right_order() {
        // In F_16 every nonzero element satisfies x^15 = 1.
        let f = FieldSpec::new(16).unwrap();
        for code in 1..16u64 {
            let x: Vec<u64> = (0..4).map(|i| (code >> i) & 1).collect();
            let mut y = x.clone();
            for _ in 1..15 {
                y = f.mul(&y, &x);
            }
            assert_eq!(y, vec![1, 0, 0, 0]);
        }
        assert_eq!(f.power_of_t(4), f.mul(&f.power_of_t(2), &f.power_of_t(2)));
    }
}
