//! Automorphism groups of finite rings and their products, orbit counts of
//! coordinate permutations, and the census of non-null factors.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{factorial, prime_power};
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::iso::automorphisms;
use crate::radical::nil_report_ring;
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::{annihilator, Subgroup};
use crate::verdict::Verdict;
use crate::wedderburn::{canonical_factors, matrix_ring, rebuild, Factor};

/// Largest group for which a generating subset is extracted.
const GENERATOR_LIMIT: usize = 5000;

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub ring: FiniteRing,
    /// Sorted by generator images; contains the identity.
    pub elements: Vec<RingHom>,
    pub generators: Option<Vec<RingHom>>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn index(&self) -> HashMap<&[Coeffs], usize> {
        self.elements.iter().enumerate().map(|(i, h)| (h.images(), i)).collect()
    }

    /// Checks that compositions and inverses stay in the set: every pair
    /// for small groups, a fixed stride of pairs otherwise.
    pub fn is_closed(&self) -> Result<bool> {
        let index = self.index();
        let n = self.elements.len();
        let pairs: Vec<(usize, usize)> = if n * n <= 10_000 {
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
        } else {
            (0..10_000).map(|t| (t % n, (t * 7919 + 13) % n)).collect()
        };
        for (i, j) in pairs {
            let c = self.elements[i].then(&self.elements[j])?;
            if !index.contains_key(c.images()) {
                return Ok(false);
            }
        }
        for h in &self.elements {
            if !index.contains_key(h.inverse()?.images()) {
                return Ok(false);
            }
        }
        Ok(index.contains_key(RingHom::identity(&self.ring).images()))
    }
}

fn closure(ring: &FiniteRing, gens: &[RingHom]) -> Result<HashSet<Vec<Coeffs>>> {
    let id = RingHom::identity(ring);
    let mut seen: HashSet<Vec<Coeffs>> = HashSet::from([id.images().to_vec()]);
    let mut frontier = vec![id];
    while let Some(h) = frontier.pop() {
        for g in gens {
            let c = h.then(g)?;
            if seen.insert(c.images().to_vec()) {
                frontier.push(c);
            }
        }
    }
    Ok(seen)
}

pub fn automorphism_group(ring: &FiniteRing, budget: u64) -> Result<AutGroup> {
    let elements = automorphisms(ring, budget)?;
    let generators = if elements.len() <= GENERATOR_LIMIT {
        let mut gens: Vec<RingHom> = Vec::new();
        let mut group = closure(ring, &gens)?;
        for h in &elements {
            if !group.contains(h.images()) {
                gens.push(h.clone());
                group = closure(ring, &gens)?;
            }
        }
        Some(gens)
    } else {
        None
    };
    Ok(AutGroup { ring: ring.clone(), elements, generators })
}

/// `|Aut(M_k(F_q))| = |PGL_k(q)| · e` for `q = p^e`.
pub fn matrix_ring_aut_order(k: usize, q: u64) -> Result<u128> {
    let (_, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let q = q as u128;
    let qk = q.checked_pow(k as u32).ok_or(Error::TooLarge(q))?;
    let mut gl: u128 = 1;
    for i in 0..k as u32 {
        gl = gl.checked_mul(qk - q.pow(i)).ok_or(Error::TooLarge(qk))?;
    }
    Ok(gl / (q - 1) * e as u128)
}

/// Rings up to this order get their automorphism count confirmed by search.
const BRUTE_FORCE_FACTOR: u128 = 256;

fn distinct_classes(factors: &[Factor]) -> Result<()> {
    let mut seen = HashSet::new();
    for f in factors {
        if !seen.insert((f.k, f.q)) {
            return Err(Error::DuplicateFactorClass { k: f.k, q: f.q });
        }
    }
    Ok(())
}

/// `∏ κ_i! · |Aut(M_{k_i}(F_{q_i}))|^{κ_i}`.
pub fn product_aut_order(factors: &[Factor], budget: u64) -> Result<u128> {
    distinct_classes(factors)?;
    let mut total: u128 = 1;
    for f in factors {
        let a = matrix_ring_aut_order(f.k, f.q)?;
        let ring_order = (f.q as u128).checked_pow((f.k * f.k) as u32);
        if ring_order.is_some_and(|o| o <= BRUTE_FORCE_FACTOR) {
            let found = automorphisms(&matrix_ring(f.k, f.q)?, budget)?.len() as u128;
            if found != a {
                return Err(Error::Disagreement(format!(
                    "M_{}(F_{}) has {found} automorphisms by search, {a} by formula",
                    f.k, f.q
                )));
            }
        }
        let kappa = f.multiplicity as u32;
        let term =
            a.checked_pow(kappa).and_then(|x| x.checked_mul(factorial(kappa as u64))).ok_or(Error::TooLarge(a))?;
        total = total.checked_mul(term).ok_or(Error::TooLarge(total))?;
    }
    Ok(total)
}

/// Verifies that every automorphism of the product permutes factors within
/// isomorphism classes and is otherwise factor-wise, and that the group
/// order matches [`product_aut_order`].
pub fn check_product_aut_structure(factors: &[Factor], budget: u64) -> Result<Verdict> {
    distinct_classes(factors)?;
    let canon = canonical_factors(factors);
    let ring = rebuild(&canon)?;
    let mut blocks: Vec<((usize, u64), usize, usize)> = Vec::new();
    let mut offset = 0;
    for f in &canon {
        let rank = matrix_ring(f.k, f.q)?.rank();
        for _ in 0..f.multiplicity {
            blocks.push(((f.k, f.q), offset, rank));
            offset += rank;
        }
    }
    let block_span = |&(_, off, rank): &((usize, u64), usize, usize)| {
        Subgroup::generated(&ring, &(off..off + rank).map(|g| ring.basis(g)).collect::<Vec<_>>())
    };
    let spans: Vec<Subgroup> = blocks.iter().map(block_span).collect();
    let auts = automorphisms(&ring, budget)?;
    for sigma in &auts {
        let mut perm = Vec::with_capacity(blocks.len());
        for (b, &(class, off, rank)) in blocks.iter().enumerate() {
            let image = Subgroup::generated(&ring, &sigma.images()[off..off + rank]);
            let Some(c) = spans.iter().position(|s| *s == image) else {
                return Ok(Verdict::Fail(format!("{:?}: block {b} is not sent onto a block", sigma.images())));
            };
            if blocks[c].0 != class {
                return Ok(Verdict::Fail(format!("{:?}: block {b} sent across classes", sigma.images())));
            }
            perm.push(c);
        }
        // g = f_π^{-1} ∘ σ moves each block back onto itself.
        let mut g_images = vec![ring.zero(); ring.rank()];
        for (b, &(_, off, rank)) in blocks.iter().enumerate() {
            let c_off = blocks[perm[b]].1;
            for t in 0..rank {
                let img = &sigma.images()[off + t];
                g_images[off + t][off..off + rank].copy_from_slice(&img[c_off..c_off + rank]);
            }
        }
        let g = RingHom::new(&ring, &ring, g_images)?;
        let mut f_images = vec![ring.zero(); ring.rank()];
        for (b, &(_, off, rank)) in blocks.iter().enumerate() {
            let c_off = blocks[perm[b]].1;
            for t in 0..rank {
                f_images[off + t][c_off + t] = 1;
            }
        }
        let f_pi = RingHom::new(&ring, &ring, f_images)?;
        let recomposed = g.then(&f_pi)?;
        if !g.is_isomorphism() || !f_pi.is_isomorphism() || recomposed.images() != sigma.images() {
            return Ok(Verdict::Fail(format!(
                "{:?} does not factor as a permutation after a factor-wise map",
                sigma.images()
            )));
        }
    }
    let expected = product_aut_order(&canon, budget)?;
    Ok(Verdict::check(auts.len() as u128 == expected, || {
        format!("search found {} automorphisms, formula gives {expected}", auts.len())
    }))
}

fn big_to_string<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_big_to_string<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub ring: String,
    pub order: u128,
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "big_to_string")]
    pub orbit_count: BigUint,
    /// `burnside` or `burnside+canonical-enumeration`.
    pub method: String,
    #[serde(serialize_with = "opt_big_to_string")]
    pub enumerated: Option<BigUint>,
}

/// Largest number of arrays enumerated by the canonical method.
pub const ENUMERATION_BUDGET: u128 = 1 << 22;

fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Orbits of `S_m` permuting the rows of `m × n` arrays over a set of size
/// `order`: `(1/m!) Σ_λ (m!/z_λ) order^{n·ℓ(λ)}` over cycle types `λ`.
pub fn burnside_orbits(order: u128, m: usize, n: usize) -> BigUint {
    let base = BigUint::from(order).pow(n as u32);
    let mut m_fact = BigUint::one();
    for i in 2..=m as u64 {
        m_fact *= i;
    }
    let mut total = BigUint::zero();
    for lambda in partitions(m) {
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for &part in &lambda {
            *counts.entry(part).or_insert(0) += 1;
        }
        let mut z = BigUint::one();
        for (&part, &a) in &counts {
            z *= BigUint::from(part).pow(a);
            for i in 2..=a as u64 {
                z *= i;
            }
        }
        total += (&m_fact / z) * base.pow(lambda.len() as u32);
    }
    total / m_fact
}

/// Counts orbits by enumerating every array and sorting its rows.
pub fn enumerate_orbits(order: u128, m: usize, n: usize) -> Result<BigUint> {
    let cells = (m * n) as u32;
    let total = order
        .checked_pow(cells)
        .filter(|&t| t <= ENUMERATION_BUDGET)
        .ok_or(Error::BudgetExceeded(ENUMERATION_BUDGET))?;
    let mut seen: HashSet<Vec<Vec<u128>>> = HashSet::new();
    for code in 0..total {
        let mut c = code;
        let mut rows: Vec<Vec<u128>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v = c % order;
                        c /= order;
                        v
                    })
                    .collect()
            })
            .collect();
        rows.sort();
        seen.insert(rows);
    }
    Ok(BigUint::from(seen.len()))
}

/// Orbits of `S_m` on `(R^m)^n`; both methods run when the enumeration fits.
pub fn orbit_count(ring: &FiniteRing, m: usize, n: usize) -> Result<OrbitReport> {
    if m == 0 {
        return Err(Error::PreconditionFailed("m must be positive".into()));
    }
    let order = ring.order();
    let burnside = burnside_orbits(order, m, n);
    let enumerated = match enumerate_orbits(order, m, n) {
        Ok(c) => Some(c),
        Err(Error::BudgetExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    if let Some(e) = &enumerated {
        if *e != burnside {
            return Err(Error::Disagreement(format!("Burnside gives {burnside}, enumeration {e}")));
        }
    }
    let method = if enumerated.is_some() { "burnside+canonical-enumeration" } else { "burnside" };
    Ok(OrbitReport {
        ring: ring.name().to_string(),
        order,
        m,
        n,
        orbit_count: burnside,
        method: method.into(),
        enumerated,
    })
}

/// `C(a + m - 1, m)`: multisets of size `m` from `a` symbols.
pub fn multiset_count(a: &BigUint, m: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m as u64 {
        num *= a + BigUint::from(i);
        den *= i + 1;
    }
    num / den
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub is_null: bool,
    /// For non-null factors, some `s` whose two-sided annihilator is proper.
    pub witness: Option<Coeffs>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub non_null: usize,
}

pub fn null_factor_census(factors: &[FiniteRing]) -> Result<Census> {
    let mut entries = Vec::new();
    for r in factors {
        let is_null = nil_report_ring(r)?.is_null;
        let witness = if is_null {
            None
        } else {
            let w = (0..r.rank())
                .map(|g| r.basis(g))
                .find(|s| !annihilator(r, s).is_whole())
                .ok_or_else(|| Error::Disagreement(format!("{} is not null but every generator is", r.name())))?;
            Some(w)
        };
        entries.push(CensusEntry { name: r.name().to_string(), is_null, witness });
    }
    let non_null = entries.iter().filter(|e| !e.is_null).count();
    Ok(Census { entries, non_null })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, null_ring};
    use crate::iso::DEFAULT_BUDGET;

    #[test]
    fn aut_formula() {
        assert_eq!(matrix_ring_aut_order(2, 2).unwrap(), 6);
        assert_eq!(matrix_ring_aut_order(1, 4).unwrap(), 2);
        assert_eq!(matrix_ring_aut_order(1, 7).unwrap(), 1);
        assert_eq!(matrix_ring_aut_order(2, 3).unwrap(), 24);
        assert_eq!(product_aut_order(&[Factor::new(2, 2, 2)], DEFAULT_BUDGET).unwrap(), 72);
        assert_eq!(product_aut_order(&[Factor::new(1, 2, 1)], DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(product_aut_order(&[Factor::new(1, 4, 2)], DEFAULT_BUDGET).unwrap(), 8);
        assert_eq!(
            product_aut_order(&[Factor::new(1, 2, 1), Factor::new(1, 2, 1)], DEFAULT_BUDGET).unwrap_err(),
            Error::DuplicateFactorClass { k: 1, q: 2 }
        );
    }

    #[test]
    fn aut_groups() {
        let g = automorphism_group(&matrix_ring(2, 2).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_closed().unwrap());
        assert_eq!(g.generators.as_ref().unwrap().len(), 2);
        assert_eq!(automorphism_group(&cyclic(9), DEFAULT_BUDGET).unwrap().order(), 1);
    }

    #[test]
    fn product_structure_small() {
        assert!(check_product_aut_structure(&[Factor::new(1, 2, 2)], DEFAULT_BUDGET).unwrap().is_pass());
        assert!(check_product_aut_structure(&[Factor::new(1, 2, 1), Factor::new(1, 3, 1)], DEFAULT_BUDGET)
            .unwrap()
            .is_pass());
        assert!(check_product_aut_structure(&[Factor::new(2, 2, 1)], DEFAULT_BUDGET).unwrap().is_pass());
    }

    #[test]
    fn orbit_examples() {
        let f2 = cyclic(2);
        assert_eq!(orbit_count(&f2, 2, 1).unwrap().orbit_count, BigUint::from(3u32));
        assert_eq!(orbit_count(&f2, 3, 1).unwrap().orbit_count, BigUint::from(4u32));
        assert_eq!(orbit_count(&cyclic(3), 1, 2).unwrap().orbit_count, BigUint::from(9u32));
        assert_eq!(multiset_count(&BigUint::from(2u32), 3), BigUint::from(4u32));
        // 40 coordinates: Burnside only
        let big = orbit_count(&f2, 40, 1).unwrap();
        assert_eq!(big.orbit_count, BigUint::from(41u32));
        assert!(big.enumerated.is_none());
    }

    #[test]
    fn census() {
        let c = null_factor_census(&[null_ring(&[2]), cyclic(2), null_ring(&[3])]).unwrap();
        assert_eq!(c.non_null, 1);
        assert_eq!(c.entries[1].witness, Some(vec![1]));
        assert_eq!(null_factor_census(&[null_ring(&[2, 2])]).unwrap().non_null, 0);
        assert_eq!(null_factor_census(&[matrix_ring(2, 2).unwrap()]).unwrap().non_null, 1);
    }
}
