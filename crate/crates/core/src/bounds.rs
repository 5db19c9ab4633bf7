//! The polynomials `w_m = ∏_{0<i<j≤m} (x^i - x^j)` and the size bounds on
//! simple images derived from them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Coeffs, FiniteRing, RingElement};
use crate::verdict::Verdict;
use crate::wedderburn::{jordan_block, matrix_ring};

fn check_m(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::PreconditionFailed(format!("w_m needs m >= 2, got {m}")));
    }
    Ok(())
}

/// `w_m(x)` evaluated in `ring`.
pub fn w_poly(ring: &FiniteRing, m: u32, x: &[u64]) -> Result<Coeffs> {
    check_m(m)?;
    let powers: Vec<Coeffs> = (1..=m).map(|i| ring.pow(x, i)).collect();
    let mut acc: Option<Coeffs> = None;
    for i in 0..m as usize {
        for j in i + 1..m as usize {
            let factor = ring.sub(&powers[i], &powers[j]);
            acc = Some(match acc {
                Some(a) => ring.mul(&a, &factor),
                None => factor,
            });
        }
    }
    Ok(acc.expect("m >= 2 gives at least one factor"))
}

pub fn w_poly_element(m: u32, x: &RingElement) -> Result<RingElement> {
    RingElement::new(x.ring(), w_poly(x.ring(), m, x.coeffs())?)
}

/// `deg w_m = Σ_{j=2}^m j(j-1)`.
pub fn w_poly_degree(m: u32) -> Result<u64> {
    check_m(m)?;
    Ok((2..=m as u64).map(|j| j * (j - 1)).sum())
}

/// `Σ_{i=1}^{m-1} i(m-i) = m(m-1)(m+1)/6`, the power of `N` dividing `w_m(N)`.
pub fn jordan_exponent(m: u32) -> u64 {
    let m = m as u64;
    m * (m - 1) * (m + 1) / 6
}

/// Largest `t` with `2^{t²} ≤ s`, i.e. `⌊√(log₂ s)⌋` computed exactly.
pub fn floor_sqrt_log2(s: u128) -> u64 {
    let mut t = 0u64;
    while (t + 1) * (t + 1) < 128 && 1u128 << ((t + 1) * (t + 1)) <= s {
        t += 1;
    }
    t
}

/// Both branches of the bounds for an ideal of index `s` with `a + I ⊆ Z(w_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: u32,
    pub s: u128,
    /// Branch `f[I] = 0`: `⌊√(log₂ s)⌋`.
    pub k_index_branch: u64,
    /// Branch `f[I] = M_k(F)`: `m(m-1)(m+1)/6`.
    pub k_poly_branch: u64,
    pub k_bound: u64,
    pub w_degree: u64,
    /// `max(s, deg w_m)`.
    pub f_bound: u128,
}

pub fn size_bounds(m: u32, s: u128) -> Result<BoundReport> {
    if s == 0 {
        return Err(Error::PreconditionFailed("index must be positive".into()));
    }
    let w_degree = w_poly_degree(m)?;
    let k_index_branch = floor_sqrt_log2(s);
    let k_poly_branch = jordan_exponent(m);
    Ok(BoundReport {
        m,
        s,
        k_index_branch,
        k_poly_branch,
        k_bound: k_index_branch.max(k_poly_branch),
        w_degree,
        f_bound: s.max(w_degree as u128),
    })
}

/// Whether `w_m` of the nilpotent Jordan block in `M_k(F_q)` is nonzero.
pub fn jordan_witness(m: u32, k: usize, q: u64) -> Result<bool> {
    check_m(m)?;
    if k == 0 {
        return Err(Error::PreconditionFailed("matrix size must be positive".into()));
    }
    let ring = matrix_ring(k, q)?;
    let n = jordan_block(k, q)?;
    Ok(!ring.is_zero(&w_poly(&ring, m, &n)?))
}

/// Whether `w_m` vanishes on every element of `ring`.
pub fn vanishes_everywhere(ring: &FiniteRing, m: u32) -> Result<bool> {
    check_m(m)?;
    for x in ring.elements()? {
        if !ring.is_zero(&w_poly(ring, m, &x)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// If `w_m` vanishes on all of `M_k(F_q)`, then `M_k(F_q)` is an image with
/// `I = R` (index 1), so `k` and `q` must respect the bounds for `s = 1`.
pub fn check_vanishing_bounds(m: u32, k: usize, q: u64) -> Result<Verdict> {
    let ring = matrix_ring(k, q)?;
    if !vanishes_everywhere(&ring, m)? {
        return Ok(Verdict::Pass);
    }
    let b = size_bounds(m, 1)?;
    Ok(Verdict::check(k as u64 <= b.k_bound && q as u128 <= b.f_bound, || {
        format!("w_{m} vanishes on M_{k}(F_{q}) but bounds are k <= {}, q <= {}", b.k_bound, b.f_bound)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::cyclic;

    #[test]
    fn degrees() {
        assert_eq!(w_poly_degree(2).unwrap(), 2);
        assert_eq!(w_poly_degree(3).unwrap(), 8);
        assert!(w_poly_degree(1).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(size_bounds(2, 1).unwrap().k_bound, 1);
        assert_eq!(size_bounds(3, 1).unwrap().k_bound, 4);
        assert_eq!(size_bounds(2, 1 << 25).unwrap().k_bound, 5);
        assert_eq!(size_bounds(2, (1 << 25) - 1).unwrap().k_index_branch, 4);
        assert_eq!(size_bounds(3, 5).unwrap().f_bound, 8);
    }

    #[test]
    fn w2_on_f2() {
        let f2 = cyclic(2);
        for x in 0..2 {
            assert!(f2.is_zero(&w_poly(&f2, 2, &[x]).unwrap()));
        }
    }

    #[test]
    fn jordan_examples() {
        assert!(jordan_witness(2, 2, 2).unwrap());
        assert!(!jordan_witness(2, 1, 2).unwrap());
        assert!(jordan_witness(3, 5, 2).unwrap());
        assert!(!jordan_witness(3, 4, 2).unwrap());
    }
}
