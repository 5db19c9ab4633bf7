//! Enumeration of maximal left and two-sided ideals.
//!
//! Every maximal (left or two-sided) ideal `M` lies in a maximal subgroup
//! `H ⊇ M` of the additive group, and the largest ideal inside `H` is proper
//! and contains `M`, hence equals it. So the maximal ideals are exactly the
//! maximal members of `{largest ideal inside H : H maximal subgroup}`.
//!
//! A maximal subgroup is the kernel of a nonzero functional `λ : A → Z/p`.
//! The largest left ideal inside `ker λ` is the common kernel of the
//! smallest space of functionals containing `λ` and closed under
//! precomposition with left multiplication by the generators (and also
//! right multiplication for two-sided ideals). All of that is linear
//! algebra over `F_p`.

use std::collections::HashSet;

use crate::arith::factorize;
use crate::fp::{self, FpSpace};
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::{Side, Subgroup, SubgroupKind};

/// Functionals `A → Z/p` for one prime `p`.
struct Dual<'a> {
    ring: &'a FiniteRing,
    p: u64,
    /// Generators whose cyclic order is divisible by `p`.
    coords: Vec<usize>,
}

impl<'a> Dual<'a> {
    fn new(ring: &'a FiniteRing, p: u64) -> Self {
        let coords = (0..ring.rank()).filter(|&i| ring.moduli()[i].is_multiple_of(p)).collect();
        Dual { ring, p, coords }
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn eval(&self, mu: &[u64], x: &[u64]) -> u64 {
        self.coords.iter().zip(mu).map(|(&i, &m)| (x[i] % self.p) * m).sum::<u64>() % self.p
    }

    /// `μ ∘ φ` for the additive map `φ(e_g) = images[g]`.
    fn precompose(&self, mu: &[u64], images: &[Coeffs]) -> Vec<u64> {
        self.coords.iter().map(|&g| self.eval(mu, &images[g])).collect()
    }

    fn closure(&self, start: &[Vec<u64>], maps: &[Vec<Coeffs>]) -> FpSpace {
        let mut space = FpSpace::new(self.p, self.dim());
        let mut queue: Vec<Vec<u64>> = start.to_vec();
        while let Some(mu) = queue.pop() {
            if !space.insert(&mu) {
                continue;
            }
            for images in maps {
                let nu = self.precompose(&mu, images);
                if !space.contains(&nu) {
                    queue.push(nu);
                }
            }
        }
        space
    }

    /// `{x ∈ A : μ(x) = 0 for all μ in the space}`.
    fn kernel(&self, space: &FpSpace) -> Subgroup {
        let ring = self.ring;
        let mut gens: Vec<Coeffs> = (0..ring.rank())
            .map(|i| {
                let mut v = ring.zero();
                v[i] = if ring.moduli()[i].is_multiple_of(self.p) { self.p % ring.moduli()[i] } else { 1 };
                v
            })
            .collect();
        for null in space.annihilator() {
            let mut v = ring.zero();
            for (&i, &c) in self.coords.iter().zip(&null) {
                v[i] = c;
            }
            gens.push(v);
        }
        Subgroup::generated(ring, &gens)
    }

    /// Projective representatives of the nonzero functionals.
    fn points(&self) -> Vec<Vec<u64>> {
        let m = self.dim();
        let mut out = Vec::new();
        for lead in 0..m {
            let tail = m - lead - 1;
            let count = self.p.pow(tail as u32);
            for mut code in 0..count {
                let mut v = vec![0u64; m];
                v[lead] = 1;
                for slot in v.iter_mut().skip(lead + 1) {
                    *slot = code % self.p;
                    code /= self.p;
                }
                out.push(v);
            }
        }
        out
    }

    /// The functional space whose kernel is `h` (assumes `pA ⊆ h`).
    fn space_of(&self, h: &Subgroup) -> FpSpace {
        // Rows: reductions mod p of the generators of h; the kernel's
        // functionals are the annihilator of that span.
        let mut span = FpSpace::new(self.p, self.dim());
        for g in h.generators() {
            let v: Vec<u64> = self.coords.iter().map(|&i| g[i] % self.p).collect();
            span.insert(&v);
        }
        let mut dual = FpSpace::new(self.p, self.dim());
        for a in span.annihilator() {
            dual.insert(&a);
        }
        dual
    }
}

fn multiplication_maps(ring: &FiniteRing, side: Side) -> Vec<Vec<Coeffs>> {
    let r = ring.rank();
    let mut maps = Vec::new();
    for i in 0..r {
        let e = ring.basis(i);
        if side != Side::Right {
            maps.push((0..r).map(|g| ring.generator_product(i, g).to_vec()).collect());
        }
        if side != Side::Left {
            maps.push((0..r).map(|g| ring.mul(&ring.basis(g), &e)).collect());
        }
    }
    maps
}

fn kind_of(side: Side) -> SubgroupKind {
    match side {
        Side::Left => SubgroupKind::LeftIdeal,
        Side::Right => SubgroupKind::RightIdeal,
        Side::Two => SubgroupKind::TwoSidedIdeal,
    }
}

fn primes_of(ring: &FiniteRing) -> Vec<u64> {
    let mut ps: Vec<u64> = ring.moduli().iter().flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p)).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// All maximal ideals of the given sidedness, in a deterministic order.
pub fn maximal_ideals(ring: &FiniteRing, side: Side) -> Vec<Subgroup> {
    let maps = multiplication_maps(ring, side);
    let mut cores: Vec<Subgroup> = Vec::new();
    for p in primes_of(ring) {
        let dual = Dual::new(ring, p);
        let mut seen: HashSet<FpSpace> = HashSet::new();
        for lambda in dual.points() {
            let space = dual.closure(&[lambda], &maps);
            if seen.insert(space.clone()) {
                cores.push(dual.kernel(&space));
            }
        }
    }
    let mut maximal: Vec<Subgroup> =
        cores.iter().filter(|c| !cores.iter().any(|d| d != *c && c.is_subset_of(d))).cloned().collect();
    maximal.sort_by_key(|m| (std::cmp::Reverse(m.order()), m.generators()));
    maximal.dedup();
    maximal.into_iter().map(|m| m.labelled(kind_of(side))).collect()
}

/// A witness `a` with `x - x a ∈ ideal` for all `x`, if the left ideal is regular.
pub fn regularity_witness(ring: &FiniteRing, ideal: &Subgroup) -> Option<Coeffs> {
    if ideal.is_whole() {
        return Some(ring.zero());
    }
    // Any proper ideal produced by `maximal_ideals` contains pA for one prime p;
    // otherwise fall back to a scan.
    let prime = primes_of(ring)
        .into_iter()
        .find(|&p| (0..ring.rank()).all(|i| ideal.contains(&ring.scale(&ring.basis(i), p as i128))));
    match prime {
        Some(p) => {
            let dual = Dual::new(ring, p);
            let space = dual.space_of(ideal);
            // Unknown a ↦ (μ(e_g a))_{μ,g} must equal (μ(e_g))_{μ,g}.
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for mu in space.rows() {
                for g in 0..ring.rank() {
                    let row: Vec<u64> =
                        dual.coords.iter().map(|&h| dual.eval(mu, ring.generator_product(g, h))).collect();
                    rows.push(row);
                    rhs.push(dual.eval(mu, &ring.basis(g)));
                }
            }
            let sol = fp::solve(p, &rows, &rhs, dual.dim())?;
            let mut a = ring.zero();
            for (&h, &c) in dual.coords.iter().zip(&sol) {
                a[h] = c % ring.moduli()[h];
            }
            Some(a)
        }
        None => ring.elements().ok()?.find(|a| {
            (0..ring.rank()).all(|g| {
                let e = ring.basis(g);
                ideal.contains(&ring.sub(&e, &ring.mul(&e, a)))
            })
        }),
    }
}

pub fn is_regular(ring: &FiniteRing, ideal: &Subgroup) -> bool {
    regularity_witness(ring, ideal).is_some()
}

/// Maximal left ideals that are regular.
pub fn maximal_regular_left_ideals(ring: &FiniteRing) -> Vec<Subgroup> {
    maximal_ideals(ring, Side::Left).into_iter().filter(|i| is_regular(ring, i)).collect()
}
