//! The Jacobson radical and nil/nilpotent diagnostics.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::howell::AdditiveMap;
use crate::maximal::{maximal_regular_left_ideals, regularity_witness};
use crate::ring::{Coeffs, FiniteRing, RingElement};
use crate::subgroup::{ideal_generated, largest_ideal_within, product_span, Side, Subgroup, SubgroupKind};
use crate::verdict::Verdict;

/// Rings up to this order get a full `∀x ∀y` scan; above it candidates
/// already in the span of accepted elements are skipped.
const EXHAUSTIVE_SCAN: usize = 4096;

/// Largest ring order for which every ideal is enumerated.
pub const IDEAL_SEARCH_LIMIT: u128 = 256;

/// Some `z` with `w + z + z·w = 0`.
pub fn left_quasi_inverse(ring: &FiniteRing, w: &[u64]) -> Option<Coeffs> {
    if let Some(k) = ring.nilpotency_index(w) {
        // z = Σ_{j=1}^{k-1} (-1)^j w^j telescopes: z + zw = -w.
        let mut z = ring.zero();
        let mut p = w.to_vec();
        for j in 1..k {
            if j % 2 == 1 {
                z = ring.sub(&z, &p);
            } else {
                ring.add_assign(&mut z, &p);
            }
            p = ring.mul(&p, w);
        }
        return Some(z);
    }
    let r = ring.rank();
    let images: Vec<Coeffs> = (0..r)
        .map(|g| {
            let e = ring.basis(g);
            ring.add(&e, &ring.mul(&e, w))
        })
        .collect();
    let map = AdditiveMap { dom: ring.moduli(), cod: ring.moduli(), images: &images };
    let z = map.solve(&ring.neg(w))?;
    Some(ring.element_from_ints(&z.iter().map(|&v| v as i128).collect::<Vec<_>>()))
}

/// Some `z` with `x + z + z·x = 0`, or `None` when `x` is not quasi-regular.
pub fn quasi_regular_witness(x: &RingElement) -> Option<RingElement> {
    let ring = x.ring();
    let z = left_quasi_inverse(ring, x.coeffs())?;
    debug_assert!(ring.is_zero(&ring.add(&ring.add(x.coeffs(), &z), &ring.mul(&z, x.coeffs()))));
    Some(RingElement::new(ring, z).expect("reduced"))
}

struct QuasiRegular<'a> {
    ring: &'a FiniteRing,
    cache: Vec<u8>,
}

impl<'a> QuasiRegular<'a> {
    fn new(ring: &'a FiniteRing, n: usize) -> Self {
        QuasiRegular { ring, cache: vec![0; n] }
    }

    fn test(&mut self, w: &[u64]) -> bool {
        let idx = self.ring.index_of(w) as usize;
        if self.cache[idx] == 0 {
            self.cache[idx] = if left_quasi_inverse(self.ring, w).is_some() { 1 } else { 2 };
        }
        self.cache[idx] == 1
    }
}

/// `J(R) = {x : ∀y ∃z, yx + z + z·yx = 0}` by scanning the ring.
pub fn jacobson_radical(ring: &FiniteRing) -> Result<Subgroup> {
    let n = ring.enumerable()?;
    let elements: Vec<Coeffs> = ring.elements()?.collect();
    let mut qr = QuasiRegular::new(ring, n);
    let in_radical = |x: &Coeffs, qr: &mut QuasiRegular| elements.iter().all(|y| qr.test(&ring.mul(y, x)));
    let j = if n <= EXHAUSTIVE_SCAN {
        let members: Vec<Coeffs> = elements.iter().filter(|x| in_radical(x, &mut qr)).cloned().collect();
        let j = Subgroup::generated(ring, &members);
        if j.order() != members.len() as u128 {
            return Err(Error::Disagreement("radical members do not form a subgroup".into()));
        }
        j
    } else {
        let mut j = Subgroup::zero(ring);
        for x in &elements {
            if !j.contains(x) && in_radical(x, &mut qr) {
                j = j.sum(&Subgroup::generated(ring, std::slice::from_ref(x)));
            }
        }
        j
    };
    j.certify(ring, SubgroupKind::TwoSidedIdeal)
}

pub fn is_semisimple(ring: &FiniteRing) -> Result<bool> {
    Ok(jacobson_radical(ring)?.is_zero())
}

/// The radical described through maximal regular left ideals.
#[derive(Clone, Debug)]
pub struct MaximalIdealRadical {
    pub left_ideals: Vec<Subgroup>,
    /// `m_I` for each maximal regular left ideal `I`, in the same order.
    pub cores: Vec<Subgroup>,
    /// `⋂ I` (the whole ring when there is no such ideal).
    pub via_left_ideals: Subgroup,
    /// `⋂ m_I`.
    pub via_cores: Subgroup,
}

fn intersect_all(ring: &FiniteRing, family: &[Subgroup]) -> Subgroup {
    family.iter().fold(Subgroup::whole(ring), |acc, s| acc.intersection(s))
}

pub fn maximal_ideal_radical(ring: &FiniteRing) -> MaximalIdealRadical {
    let left_ideals = maximal_regular_left_ideals(ring);
    let cores: Vec<Subgroup> = left_ideals.iter().map(|i| largest_ideal_within(ring, i, Side::Two)).collect();
    let via_left_ideals = intersect_all(ring, &left_ideals).labelled(SubgroupKind::TwoSidedIdeal);
    let via_cores = intersect_all(ring, &cores).labelled(SubgroupKind::TwoSidedIdeal);
    MaximalIdealRadical { left_ideals, cores, via_left_ideals, via_cores }
}

/// `⋂ I = ⋂ m_I` over maximal regular left ideals, checked against the scan.
pub fn jacobson_radical_via_maximal_ideals(ring: &FiniteRing) -> Result<Subgroup> {
    let m = maximal_ideal_radical(ring);
    if m.via_left_ideals != m.via_cores {
        return Err(Error::Disagreement(format!(
            "intersection of maximal regular left ideals has order {}, intersection of cores {}",
            m.via_left_ideals.order(),
            m.via_cores.order()
        )));
    }
    let phi = jacobson_radical(ring)?;
    if phi != m.via_cores {
        return Err(Error::Disagreement(format!(
            "scanned radical has order {}, maximal-ideal radical {}",
            phi.order(),
            m.via_cores.order()
        )));
    }
    debug_assert!(m.left_ideals.iter().all(|i| regularity_witness(ring, i).is_some()));
    Ok(m.via_cores)
}

/// Nil and nilpotency data of a subring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilReport {
    pub is_nil: bool,
    pub nilexponent: Option<u32>,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<u32>,
    pub is_null: bool,
    /// Attains the nilexponent, or is not nilpotent when the subring is not nil.
    pub witness: Coeffs,
}

/// Nil report of a subring (or ideal) `s` of `ring`.
pub fn nil_report(ring: &FiniteRing, s: &Subgroup) -> Result<NilReport> {
    if !s.flags(ring).subring {
        return Err(Error::PreconditionFailed("nil report needs a multiplicatively closed subgroup".into()));
    }
    let mut nilexponent = Some(1);
    let mut witness = ring.zero();
    for x in s.elements()? {
        match ring.nilpotency_index(&x) {
            Some(k) if Some(k) > nilexponent => {
                nilexponent = Some(k);
                witness = x;
            }
            Some(_) => {}
            None => {
                nilexponent = None;
                witness = x;
                break;
            }
        }
    }
    let nilpotency_class = nilpotency_class(ring, s);
    let is_null = product_span(ring, s, s).is_zero();
    Ok(NilReport {
        is_nil: nilexponent.is_some(),
        nilexponent,
        is_nilpotent: nilpotency_class.is_some(),
        nilpotency_class,
        is_null,
        witness,
    })
}

pub fn nil_report_ring(ring: &FiniteRing) -> Result<NilReport> {
    nil_report(ring, &Subgroup::whole(ring))
}

/// Least `n` with `S^n = 0`, iterating `S^{k+1} = S^k·S` until zero or stable.
pub fn nilpotency_class(ring: &FiniteRing, s: &Subgroup) -> Option<u32> {
    let bound = ring.composition_length() + 1;
    let mut power = s.clone();
    for k in 1..=bound {
        if power.is_zero() {
            return Some(k);
        }
        let next = product_span(ring, &power, s);
        if next == power {
            return None;
        }
        power = next;
    }
    None
}

/// For every `x ∈ J(R)`, `xa + a = 0` forces `a = 0`.
pub fn check_za_plus_a(ring: &FiniteRing) -> Result<Verdict> {
    let j = jacobson_radical(ring)?;
    let n = ring.order();
    let brute = j.order() * n <= 1 << 22;
    let all: Vec<Coeffs> = if brute { ring.elements()?.collect() } else { Vec::new() };
    for x in j.elements()? {
        let bad = if brute {
            all.iter().find(|a| !ring.is_zero(a) && ring.is_zero(&ring.add(&ring.mul(&x, a), a))).cloned()
        } else {
            let images: Vec<Coeffs> = (0..ring.rank())
                .map(|g| {
                    let e = ring.basis(g);
                    ring.add(&ring.mul(&x, &e), &e)
                })
                .collect();
            let map = AdditiveMap { dom: ring.moduli(), cod: ring.moduli(), images: &images };
            map.kernel()
                .into_iter()
                .map(|k| ring.element_from_ints(&k.iter().map(|&v| v as i128).collect::<Vec<_>>()))
                .find(|a| !ring.is_zero(a))
        };
        if let Some(a) = bad {
            return Ok(Verdict::Fail(format!("x = {x:?}, a = {a:?}")));
        }
    }
    Ok(Verdict::Pass)
}

/// Every ideal of the given sidedness, ordered by (order, generators).
pub fn all_ideals(ring: &FiniteRing, side: Side) -> Result<Vec<Subgroup>> {
    if ring.order() > IDEAL_SEARCH_LIMIT {
        return Err(Error::TooLarge(ring.order()));
    }
    let principal: Vec<Subgroup> = {
        let mut seen = HashSet::new();
        ring.elements()?.map(|x| ideal_generated(ring, &[x], side)).filter(|i| seen.insert(i.clone())).collect()
    };
    let zero = ideal_generated(ring, &[ring.zero()], side);
    let mut seen: HashSet<Subgroup> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut out = Vec::new();
    while let Some(i) = queue.pop_front() {
        for p in &principal {
            if !p.is_subset_of(&i) {
                let k = i.sum(p).labelled(i.kind());
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        out.push(i);
    }
    out.sort_by_key(|i| (i.order(), i.generators()));
    Ok(out)
}

/// The largest nilpotent two-sided ideal, found by enumerating all ideals.
pub fn largest_nilpotent_ideal(ring: &FiniteRing) -> Result<Subgroup> {
    let nilpotent: Vec<Subgroup> =
        all_ideals(ring, Side::Two)?.into_iter().filter(|i| nilpotency_class(ring, i).is_some()).collect();
    let top = nilpotent.iter().max_by_key(|i| i.order()).cloned().unwrap_or_else(|| Subgroup::zero(ring));
    if let Some(other) = nilpotent.iter().find(|i| !i.is_subset_of(&top)) {
        return Err(Error::Disagreement(format!(
            "nilpotent ideal of order {} escapes the largest one found",
            other.order()
        )));
    }
    Ok(top)
}

/// All left ideals consisting of nilpotent elements.
pub fn nil_left_ideals(ring: &FiniteRing) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for i in all_ideals(ring, Side::Left)? {
        if i.elements()?.iter().all(|x| ring.nilpotency_index(x).is_some()) {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, matrix_units, null_ring, truncated_polynomial, upper_triangular};

    fn values(s: &Subgroup) -> Vec<u64> {
        let mut v: Vec<u64> = s.elements().unwrap().into_iter().map(|x| x[0]).collect();
        v.sort();
        v
    }

    #[test]
    fn radical_examples() {
        assert_eq!(values(&jacobson_radical(&cyclic(4)).unwrap()), vec![0, 2]);
        assert_eq!(values(&jacobson_radical(&cyclic(8)).unwrap()), vec![0, 2, 4, 6]);
        assert!(jacobson_radical(&cyclic(5)).unwrap().is_zero());
        assert!(jacobson_radical(&null_ring(&[2, 3])).unwrap().is_whole());
        assert!(is_semisimple(&matrix_units(2, 2)).unwrap());
        assert!(!is_semisimple(&cyclic(4)).unwrap());
        assert!(is_semisimple(&FiniteRing::zero_ring()).unwrap());
    }

    #[test]
    fn radical_of_triangular_matrices_is_strict_part() {
        let r = upper_triangular(3, 2, false);
        let j = jacobson_radical(&r).unwrap();
        assert_eq!(j.order(), 3);
        assert!(j.contains(&[0, 1, 0]));
    }

    #[test]
    fn maximal_ideal_characterisation_agrees() {
        for r in [cyclic(6), cyclic(8), matrix_units(2, 2), upper_triangular(2, 2, false), null_ring(&[2, 2])] {
            let j = jacobson_radical(&r).unwrap();
            assert_eq!(jacobson_radical_via_maximal_ideals(&r).unwrap(), j, "{}", r.name());
            assert_eq!(largest_nilpotent_ideal(&r).unwrap(), j, "{}", r.name());
        }
    }

    #[test]
    fn quasi_regular_examples() {
        let z8 = cyclic(8);
        let x = RingElement::new(&z8, vec![2]).unwrap();
        let z = quasi_regular_witness(&x).unwrap();
        assert_eq!((2 + z.coeffs()[0] + 2 * z.coeffs()[0]) % 8, 0);
        let zero = RingElement::new(&z8, vec![0]).unwrap();
        assert!(quasi_regular_witness(&zero).unwrap().is_zero());
        let f2 = cyclic(2);
        assert!(quasi_regular_witness(&RingElement::new(&f2, vec![1]).unwrap()).is_none());
        // in a unital ring x is quasi-regular iff 1 + x is invertible
        let z6 = cyclic(6);
        assert!(quasi_regular_witness(&RingElement::new(&z6, vec![2]).unwrap()).is_none());
        assert!(quasi_regular_witness(&RingElement::new(&z6, vec![4]).unwrap()).is_some());
    }

    #[test]
    fn nil_reports() {
        let z8 = cyclic(8);
        let j = jacobson_radical(&z8).unwrap();
        let rep = nil_report(&z8, &j).unwrap();
        assert_eq!(rep.nilexponent, Some(3));
        assert_eq!(rep.nilpotency_class, Some(3));
        assert!(!rep.is_null);
        assert_eq!(z8.pow(&rep.witness, 2), vec![4]);

        let n2 = nil_report_ring(&null_ring(&[2])).unwrap();
        assert!(n2.is_null && n2.nilexponent == Some(2) && n2.nilpotency_class == Some(2));

        let zero = nil_report_ring(&FiniteRing::zero_ring()).unwrap();
        assert_eq!((zero.nilexponent, zero.nilpotency_class, zero.is_null), (Some(1), Some(1), true));

        let f2t = truncated_polynomial(2, 2);
        let rep = nil_report_ring(&f2t).unwrap();
        assert!(!rep.is_nil && !rep.is_nilpotent);
        assert!(f2t.nilpotency_index(&rep.witness).is_none());
    }

    #[test]
    fn za_plus_a() {
        for r in [cyclic(8), matrix_units(2, 2), null_ring(&[4]), upper_triangular(2, 2, false)] {
            assert!(check_za_plus_a(&r).unwrap().is_pass(), "{}", r.name());
        }
    }

    #[test]
    fn ideal_enumeration_counts() {
        // Z/12 has one ideal per divisor of 12.
        assert_eq!(all_ideals(&cyclic(12), Side::Two).unwrap().len(), 6);
        // M_2(F_2): left ideals are {0}, three lines, whole ring.
        assert_eq!(all_ideals(&matrix_units(2, 2), Side::Left).unwrap().len(), 5);
        assert_eq!(all_ideals(&matrix_units(2, 2), Side::Two).unwrap().len(), 2);
    }

    #[test]
    fn nil_left_ideals_lie_in_radical() {
        let r = upper_triangular(2, 2, false);
        let j = jacobson_radical(&r).unwrap();
        let nil = nil_left_ideals(&r).unwrap();
        assert!(nil.len() >= 2);
        assert!(nil.iter().all(|i| i.is_subset_of(&j)));
    }
}
