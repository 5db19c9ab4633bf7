//! The ascending ideal chain `Z_{-1} = 0`,
//! `Z_{i+1} = {r : IrI / (Z_i ∩ IrI) is nilpotent}` and the checks built on it.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::radical::nil_report_ring;
use crate::ring::{Coeffs, FiniteRing, RingElement};
use crate::subgroup::{product_span, Subgroup, SubgroupKind};
use crate::verdict::Verdict;

#[derive(Clone, Debug)]
pub struct ZTower {
    pub ideal: Subgroup,
    /// `levels[0] = Z_{-1}`, `levels[i+1] = Z_i`.
    pub levels: Vec<Subgroup>,
}

impl ZTower {
    /// `Z_i` for `i ≥ -1`.
    pub fn level(&self, i: isize) -> &Subgroup {
        &self.levels[(i + 1) as usize]
    }
}

/// Additive span of `{a·r·b : a, b ∈ I}`.
fn sandwich(ring: &FiniteRing, ideal_gens: &[Coeffs], r: &[u64]) -> Subgroup {
    let left: Vec<Coeffs> = ideal_gens.iter().map(|a| ring.mul(a, r)).collect();
    let prods: Vec<Coeffs> = left.iter().flat_map(|ar| ideal_gens.iter().map(move |b| ring.mul(ar, b))).collect();
    Subgroup::generated(ring, &prods)
}

/// True when some power `S^k` (products of `k` elements of `S`) lies in the ideal `z`.
fn nilpotent_modulo(ring: &FiniteRing, s: &Subgroup, z: &Subgroup) -> bool {
    // (S^k + Z) determines (S^{k+1} + Z) because Z is an ideal, so the
    // sequence is eventually periodic; stop at the first repeat.
    let mut seen = HashSet::new();
    let mut power = s.sum(z);
    loop {
        if power.is_subset_of(z) {
            return true;
        }
        if !seen.insert(power.clone()) {
            return false;
        }
        power = product_span(ring, &power, s).sum(z);
    }
}

fn build(ring: &FiniteRing, ideal: &Subgroup, count: usize) -> Result<ZTower> {
    if !ideal.is_two_sided_ideal(ring) {
        return Err(Error::NotTwoSidedIdeal);
    }
    let gens = ideal.generators();
    let elements: Vec<Coeffs> = ring.elements()?.collect();
    let mut levels = vec![Subgroup::zero(ring).labelled(SubgroupKind::TwoSidedIdeal)];
    for _ in 0..count {
        let prev = levels.last().expect("nonempty").clone();
        let members: Vec<Coeffs> = elements
            .iter()
            .filter(|r| prev.contains(r) || nilpotent_modulo(ring, &sandwich(ring, &gens, r), &prev))
            .cloned()
            .collect();
        let next = Subgroup::generated(ring, &members);
        if next.order() != members.len() as u128 {
            return Err(Error::Disagreement("tower level is not closed under addition".into()));
        }
        levels.push(next.certify(ring, SubgroupKind::TwoSidedIdeal)?);
    }
    Ok(ZTower { ideal: ideal.clone(), levels })
}

/// Levels `Z_{-1} ⊆ Z_0 ⊆ … ⊆ Z_{n-1}` (so `n + 1` entries).
pub fn z_tower(ring: &FiniteRing, ideal: &Subgroup, n: usize) -> Result<ZTower> {
    if n == 0 {
        return Err(Error::PreconditionFailed("tower height must be at least 1".into()));
    }
    build(ring, ideal, n)
}

/// For `k < n`, `y ∈ I` and `x ∈ a + I`: `x^{n-k} y x^{n-k} ∈ Z_{k-1}`.
pub fn check_sandwich_powers(ring: &FiniteRing, ideal: &Subgroup, a: &[u64], n: u32) -> Result<Verdict> {
    if !ideal.is_two_sided_ideal(ring) {
        return Err(Error::NotTwoSidedIdeal);
    }
    if n == 0 {
        return Err(Error::PreconditionFailed("exponent must be positive".into()));
    }
    let ideal_elements = ideal.elements()?;
    let coset: Vec<Coeffs> = ideal_elements.iter().map(|i| ring.add(a, i)).collect();
    if let Some(x) = coset.iter().find(|x| !ring.is_zero(&ring.pow(x, n))) {
        return Err(Error::PreconditionFailed(format!("{x:?}^{n} is not zero")));
    }
    if !nil_report_ring(ring)?.is_nil {
        return Err(Error::PreconditionFailed("ring is not nil".into()));
    }
    let tower = build(ring, ideal, n as usize - 1)?;
    for k in 0..n {
        let z = tower.level(k as isize - 1);
        for x in &coset {
            let xp = ring.pow(x, n - k);
            for y in &ideal_elements {
                let v = ring.mul(&ring.mul(&xp, y), &xp);
                if !z.contains(&v) {
                    return Ok(Verdict::Fail(format!("k = {k}, x = {x:?}, y = {y:?}")));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `ī * x = i_1 x i_2 i_3 x i_4 … i_{2m-1} x i_{2m}`.
pub fn star(ring: &FiniteRing, ibar: &[Coeffs], x: &[u64]) -> Result<Coeffs> {
    if ibar.is_empty() || ibar.len() % 2 == 1 {
        return Err(Error::OddLength(ibar.len()));
    }
    let mut acc: Option<Coeffs> = None;
    for pair in ibar.chunks(2) {
        let block = ring.mul(&ring.mul(&pair[0], x), &pair[1]);
        acc = Some(match acc {
            Some(a) => ring.mul(&a, &block),
            None => block,
        });
    }
    Ok(acc.expect("at least one pair"))
}

pub fn star_elements(ibar: &[RingElement], x: &RingElement) -> Result<RingElement> {
    let ring = x.ring();
    if ibar.iter().any(|i| i.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let coeffs: Vec<Coeffs> = ibar.iter().map(|i| i.coeffs().to_vec()).collect();
    RingElement::new(ring, star(ring, &coeffs, x.coeffs())?)
}

/// A commutative nil ring of prime characteristic `p` and nilexponent below
/// `p` must be nilpotent.
pub fn check_nagata_higman_shadow(ring: &FiniteRing) -> Result<Verdict> {
    if !ring.is_commutative() {
        return Ok(Verdict::NotApplicable("ring is not commutative".into()));
    }
    let p = ring.characteristic();
    if !crate::arith::is_prime(p) {
        return Ok(Verdict::NotApplicable(format!("characteristic {p} is not prime")));
    }
    let rep = nil_report_ring(ring)?;
    match rep.nilexponent {
        None => Ok(Verdict::NotApplicable("ring is not nil".into())),
        Some(e) if e as u64 >= p => Ok(Verdict::NotApplicable(format!("nilexponent {e} is not below {p}"))),
        Some(e) => Ok(Verdict::check(rep.is_nilpotent, || {
            format!("nilexponent {e} < {p} but powers of the ring do not vanish")
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{matrix_units, null_ring};
    use crate::profinite::free_nil_ring;

    #[test]
    fn tower_of_free_nil_reaches_whole_ring() {
        let r = free_nil_ring(2, 2).unwrap();
        let t = z_tower(&r, &Subgroup::whole(&r), 2).unwrap();
        assert!(t.level(-1).is_zero());
        assert!(t.level(0).is_whole());
        assert!(t.level(1).is_whole());
    }

    #[test]
    fn tower_with_zero_ideal() {
        let r = matrix_units(2, 2);
        let t = z_tower(&r, &Subgroup::zero(&r), 1).unwrap();
        assert!(t.level(0).is_whole());
        let t = z_tower(&r, &Subgroup::whole(&r), 1).unwrap();
        assert!(t.level(0).is_zero());
    }

    #[test]
    fn sandwich_powers_on_free_nil_rings() {
        for (p, n) in [(2, 2), (3, 1), (2, 3)] {
            let r = free_nil_ring(p, n).unwrap();
            let whole = Subgroup::whole(&r);
            assert!(check_sandwich_powers(&r, &whole, &r.zero(), p as u32).unwrap().is_pass());
        }
        let r = free_nil_ring(2, 2).unwrap();
        let err = check_sandwich_powers(&r, &Subgroup::whole(&r), &r.zero(), 1).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn star_product() {
        let r = free_nil_ring(2, 3).unwrap();
        let (x0, x1, x2) = (r.basis(0), r.basis(1), r.basis(2));
        let v = star(&r, &[x0.clone(), x1.clone()], &x2).unwrap();
        assert_eq!(v, r.mul(&r.mul(&x0, &x2), &x1));
        assert!(!r.is_zero(&v));
        assert_eq!(star(&r, std::slice::from_ref(&x0), &x2).unwrap_err(), Error::OddLength(1));
        assert!(r.is_zero(&star(&r, &[x0, r.zero()], &x2).unwrap()));
    }

    #[test]
    fn nagata_higman() {
        assert!(matches!(
            check_nagata_higman_shadow(&free_nil_ring(3, 2).unwrap()).unwrap(),
            Verdict::NotApplicable(_)
        ));
        assert!(check_nagata_higman_shadow(&null_ring(&[3, 3])).unwrap().is_pass());
    }
}
