//! Additive subgroups, ideals and subrings in canonical (Howell) form, and
//! the closure operations that produce them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::howell::{AdditiveMap, Embedding, Howell};
use crate::ring::{Coeffs, FiniteRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupKind {
    Subgroup,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    Subring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Two,
}

/// Closure properties that were checked against the ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindFlags {
    pub subring: bool,
    pub left_ideal: bool,
    pub right_ideal: bool,
}

impl KindFlags {
    pub fn two_sided(&self) -> bool {
        self.left_ideal && self.right_ideal
    }
}

/// An additive subgroup of a ring's additive group.
///
/// Equality compares the underlying sets; the kind label is metadata that
/// every constructor in this crate certifies before setting it.
#[derive(Clone)]
pub struct Subgroup {
    moduli: Vec<u64>,
    embedding: Embedding,
    howell: Howell,
    kind: SubgroupKind,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli && self.howell == other.howell
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.moduli.hash(state);
        self.howell.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={}, kind={:?}, gens={:?})", self.order(), self.kind, self.generators())
    }
}

impl Subgroup {
    fn from_moduli(moduli: &[u64], gens: &[Coeffs]) -> Self {
        let embedding = Embedding::new(moduli);
        let howell = Howell::new(embedding.modulus(), moduli.len(), gens.iter().map(|g| embedding.embed(g)));
        Subgroup { moduli: moduli.to_vec(), embedding, howell, kind: SubgroupKind::Subgroup }
    }

    /// Additive span of `gens`.
    pub fn generated(ring: &FiniteRing, gens: &[Coeffs]) -> Self {
        Self::from_moduli(ring.moduli(), gens)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::from_moduli(ring.moduli(), &[]).labelled(SubgroupKind::TwoSidedIdeal)
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        let gens: Vec<Coeffs> = (0..ring.rank()).map(|i| ring.basis(i)).collect();
        Self::from_moduli(ring.moduli(), &gens).labelled(SubgroupKind::TwoSidedIdeal)
    }

    pub(crate) fn labelled(mut self, kind: SubgroupKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u128 {
        self.howell.order()
    }

    pub fn is_zero(&self) -> bool {
        self.howell.is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.moduli.iter().map(|&d| d as u128).product::<u128>()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.howell.contains(&self.embedding.embed(x))
    }

    /// Canonical generators: the Howell rows, in ring coordinates.
    pub fn generators(&self) -> Vec<Coeffs> {
        self.howell.rows().iter().map(|r| self.embedding.unembed(r)).collect()
    }

    pub fn elements(&self) -> Result<Vec<Coeffs>> {
        if self.order() > crate::ring::ENUMERATION_LIMIT {
            return Err(Error::TooLarge(self.order()));
        }
        Ok(self.howell.span_elements().iter().map(|r| self.embedding.unembed(r)).collect())
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::from_moduli(&self.moduli, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        // x ∈ H ∩ K iff x is a combination of H's generators that also lies in K:
        // kernel of Z^h → A/K, mapped back into A.
        let hg = self.generators();
        if hg.is_empty() {
            return self.clone();
        }
        let dom = vec![self.embedding.modulus(); hg.len()];
        let map = AdditiveMap { dom: &dom, cod: &self.moduli, images: &hg };
        let coeffs = map.preimage(&other.generators());
        let gens: Vec<Coeffs> = coeffs.iter().map(|c| combine(&self.moduli, &hg, c)).collect();
        Self::from_moduli(&self.moduli, &gens)
    }

    /// Checks which closure properties hold in `ring`.
    pub fn flags(&self, ring: &FiniteRing) -> KindFlags {
        let gens = self.generators();
        let r = ring.rank();
        let mut f = KindFlags {
            subring: gens.iter().all(|a| gens.iter().all(|b| self.contains(&ring.mul(a, b)))),
            left_ideal: true,
            right_ideal: true,
        };
        for g in &gens {
            for i in 0..r {
                let e = ring.basis(i);
                if f.left_ideal && !self.contains(&ring.mul(&e, g)) {
                    f.left_ideal = false;
                }
                if f.right_ideal && !self.contains(&ring.mul(g, &e)) {
                    f.right_ideal = false;
                }
            }
        }
        f
    }

    /// Relabels after checking the requested closure property.
    pub fn certify(self, ring: &FiniteRing, kind: SubgroupKind) -> Result<Self> {
        let f = self.flags(ring);
        let ok = match kind {
            SubgroupKind::Subgroup => true,
            SubgroupKind::Subring => f.subring,
            SubgroupKind::LeftIdeal => f.left_ideal,
            SubgroupKind::RightIdeal => f.right_ideal,
            SubgroupKind::TwoSidedIdeal => f.two_sided(),
        };
        if ok {
            Ok(self.labelled(kind))
        } else if kind == SubgroupKind::TwoSidedIdeal {
            Err(Error::NotTwoSidedIdeal)
        } else {
            Err(Error::PreconditionFailed(format!("subgroup is not a {kind:?}")))
        }
    }

    pub fn is_two_sided_ideal(&self, ring: &FiniteRing) -> bool {
        self.flags(ring).two_sided()
    }
}

pub(crate) fn combine(moduli: &[u64], gens: &[Coeffs], coeffs: &[u64]) -> Coeffs {
    let mut out = vec![0u128; moduli.len()];
    for (g, &c) in gens.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for ((o, &x), &d) in out.iter_mut().zip(g).zip(moduli) {
            *o = (*o + c as u128 % d as u128 * x as u128) % d as u128;
        }
    }
    out.into_iter().map(|v| v as u64).collect()
}

/// Smallest subring containing `s` (integer multiples included).
pub fn subring_generated(ring: &FiniteRing, s: &[Coeffs]) -> Subgroup {
    let mut h = Subgroup::generated(ring, s);
    loop {
        let gens = h.generators();
        let mut extra = Vec::new();
        for a in &gens {
            for b in &gens {
                let p = ring.mul(a, b);
                if !h.contains(&p) {
                    extra.push(p);
                }
            }
        }
        if extra.is_empty() {
            return h.labelled(SubgroupKind::Subring);
        }
        extra.extend(gens);
        h = Subgroup::generated(ring, &extra);
    }
}

/// Smallest ideal of the given sidedness containing `s`. Closure is taken
/// under multiplication by the unitalization, so `s` itself is included.
pub fn ideal_generated(ring: &FiniteRing, s: &[Coeffs], side: Side) -> Subgroup {
    let r = ring.rank();
    let mut h = Subgroup::generated(ring, s);
    loop {
        let gens = h.generators();
        let mut extra = Vec::new();
        for g in &gens {
            for i in 0..r {
                let e = ring.basis(i);
                if side != Side::Right {
                    let p = ring.mul(&e, g);
                    if !h.contains(&p) {
                        extra.push(p);
                    }
                }
                if side != Side::Left {
                    let p = ring.mul(g, &e);
                    if !h.contains(&p) {
                        extra.push(p);
                    }
                }
            }
        }
        if extra.is_empty() {
            let kind = match side {
                Side::Left => SubgroupKind::LeftIdeal,
                Side::Right => SubgroupKind::RightIdeal,
                Side::Two => SubgroupKind::TwoSidedIdeal,
            };
            return h.labelled(kind);
        }
        extra.extend(gens);
        h = Subgroup::generated(ring, &extra);
    }
}

/// Images of the additive generators under `x ↦ a·x·b` (either side optional).
pub(crate) fn multiplication_images(ring: &FiniteRing, a: Option<&[u64]>, b: Option<&[u64]>) -> Vec<Coeffs> {
    (0..ring.rank())
        .map(|i| {
            let mut v = ring.basis(i);
            if let Some(a) = a {
                v = ring.mul(a, &v);
            }
            if let Some(b) = b {
                v = ring.mul(&v, b);
            }
            v
        })
        .collect()
}

/// Preimage of `target` under an additive endomorphism given by generator images.
pub(crate) fn preimage(ring: &FiniteRing, images: &[Coeffs], target: &Subgroup) -> Subgroup {
    let map = AdditiveMap { dom: ring.moduli(), cod: ring.moduli(), images };
    Subgroup::generated(ring, &map.preimage(&target.generators()))
}

/// Two-sided annihilator `{a : a r = r a = 0}`.
pub fn annihilator(ring: &FiniteRing, r: &[u64]) -> Subgroup {
    let rk = ring.rank();
    let images: Vec<Coeffs> = (0..rk)
        .map(|i| {
            let e = ring.basis(i);
            let mut v = ring.mul(&e, r);
            v.extend(ring.mul(r, &e));
            v
        })
        .collect();
    let cod: Vec<u64> = ring.moduli().iter().chain(ring.moduli()).copied().collect();
    let map = AdditiveMap { dom: ring.moduli(), cod: &cod, images: &images };
    let h = Subgroup::generated(ring, &map.kernel());
    if ring.is_commutative() {
        h.labelled(SubgroupKind::TwoSidedIdeal)
    } else {
        h
    }
}

/// Largest ideal of the given sidedness contained in the subgroup `h`:
/// `{x : R̂ x ⊆ h}` (left), `{x : x R̂ ⊆ h}` (right) or `{x : R̂ x R̂ ⊆ h}`.
///
/// The set is computed as the limit of `C_0 = h`,
/// `C_{t+1} = C_t ∩ ⋂_i {x : e_i x ∈ C_t} (∩ {x : x e_i ∈ C_t})`. The limit is
/// a subgroup of `h` closed under multiplication by every generator on the
/// required sides, hence an ideal; and any ideal `K ⊆ h` satisfies
/// `K ⊆ C_t` for all `t` by induction, so the limit is the largest one.
pub fn largest_ideal_within(ring: &FiniteRing, h: &Subgroup, side: Side) -> Subgroup {
    let r = ring.rank();
    let left: Vec<Vec<Coeffs>> = (0..r).map(|i| multiplication_images(ring, Some(&ring.basis(i)), None)).collect();
    let right: Vec<Vec<Coeffs>> = (0..r).map(|i| multiplication_images(ring, None, Some(&ring.basis(i)))).collect();
    let mut cur = h.clone();
    loop {
        let mut next = cur.clone();
        if side != Side::Right {
            for imgs in &left {
                next = next.intersection(&preimage(ring, imgs, &cur));
            }
        }
        if side != Side::Left {
            for imgs in &right {
                next = next.intersection(&preimage(ring, imgs, &cur));
            }
        }
        if next == cur {
            let kind = match side {
                Side::Left => SubgroupKind::LeftIdeal,
                Side::Right => SubgroupKind::RightIdeal,
                Side::Two => SubgroupKind::TwoSidedIdeal,
            };
            return cur.labelled(kind);
        }
        cur = next;
    }
}

/// Additive span of all products `a·b` with `a ∈ h`, `b ∈ k`.
pub fn product_span(ring: &FiniteRing, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let hg = h.generators();
    let kg = k.generators();
    let prods: Vec<Coeffs> = hg.iter().flat_map(|a| kg.iter().map(move |b| ring.mul(a, b))).collect();
    Subgroup::generated(ring, &prods)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> FiniteRing {
        FiniteRing::from_products(format!("Z/{n}"), vec![n], [(0, 0, vec![1])]).unwrap()
    }

    #[test]
    fn subring_of_two_in_z8() {
        let r = zn(8);
        let s = subring_generated(&r, &[vec![2]]);
        let mut el: Vec<u64> = s.elements().unwrap().into_iter().map(|v| v[0]).collect();
        el.sort();
        assert_eq!(el, vec![0, 2, 4, 6]);
        assert_eq!(subring_generated(&r, &[vec![0]]).order(), 1);
    }

    #[test]
    fn annihilators_in_z4() {
        let r = zn(4);
        let a = annihilator(&r, &[2]);
        assert_eq!(a.order(), 2);
        assert!(a.contains(&[2]));
        assert!(annihilator(&r, &[0]).is_whole());
        assert!(annihilator(&r, &[1]).is_zero());
        assert_eq!(a.kind(), SubgroupKind::TwoSidedIdeal);
    }

    #[test]
    fn ideal_of_two_in_z8() {
        let r = zn(8);
        let i = ideal_generated(&r, &[vec![2]], Side::Two);
        assert_eq!(i.order(), 4);
        assert!(ideal_generated(&r, &[vec![1]], Side::Two).is_whole());
    }

    #[test]
    fn intersection_and_sum_in_z12() {
        let r = zn(12);
        let a = Subgroup::generated(&r, &[vec![4]]);
        let b = Subgroup::generated(&r, &[vec![6]]);
        assert_eq!(a.intersection(&b).order(), 1);
        assert_eq!(a.sum(&b).order(), 6);
        let c = Subgroup::generated(&r, &[vec![2]]);
        assert_eq!(a.intersection(&c), a);
    }

    #[test]
    fn largest_ideal_inside_subgroup() {
        // In Z/4 × Z/4 (as a product ring), the subgroup {(a, b) : a + b ≡ 0 mod 2}
        // contains the ideal 2Z/4 × 2Z/4 and nothing larger.
        let r = FiniteRing::from_products("Z4xZ4", vec![4, 4], [(0, 0, vec![1, 0]), (1, 1, vec![0, 1])]).unwrap();
        let h = Subgroup::generated(&r, &[vec![1, 1], vec![2, 0]]);
        let core = largest_ideal_within(&r, &h, Side::Two);
        assert_eq!(core.order(), 4);
        assert!(core.contains(&[2, 0]) && core.contains(&[0, 2]));
    }
}
