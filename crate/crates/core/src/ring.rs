//! Finite associative rings presented by structure constants over a product
//! of cyclic groups.

use std::fmt;
use std::sync::Arc;

use crate::arith::{big_omega, lcm, mul_mod};
use crate::error::{Error, Result};
use crate::howell::AdditiveMap;

/// Coefficient vector of a ring element against the additive generators.
pub type Coeffs = Vec<u64>;

/// Rings larger than this are never enumerated element by element.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

struct RingData {
    name: String,
    moduli: Vec<u64>,
    /// Dense constants, `sc[(i*r + j)*r + k]`.
    sc: Vec<u64>,
    /// Nonzero entries of each generator product, indexed by `i*r + j`.
    sparse: Vec<Vec<(usize, u64)>>,
    exponent: u64,
    order: u128,
}

/// A finite associative ring, not necessarily unital or commutative.
///
/// The additive group is `Z/d_1 ⊕ … ⊕ Z/d_r` with generators `e_i`, and
/// `e_i * e_j = Σ_k c[i][j][k] e_k`. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingData>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.moduli == other.inner.moduli && self.inner.sc == other.inner.sc)
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, moduli={:?}, order={})", self.name(), self.moduli(), self.order())
    }
}

impl FiniteRing {
    /// Validates and builds a ring from nested constants `sc[i][j][k]`.
    pub fn new(name: impl Into<String>, moduli: Vec<u64>, sc: &[Vec<Vec<u64>>]) -> Result<Self> {
        let r = moduli.len();
        if sc.len() != r || sc.iter().any(|row| row.len() != r || row.iter().any(|c| c.len() != r)) {
            return Err(Error::BadShape(format!("structure constants must be {r}x{r}x{r}")));
        }
        let flat = sc.iter().flatten().flatten().copied().collect();
        Self::from_table(name, moduli, flat)
    }

    /// Builds from a sparse list of nonzero generator products.
    pub fn from_products<I>(name: impl Into<String>, moduli: Vec<u64>, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<u64>)>,
    {
        let r = moduli.len();
        let mut flat = vec![0u64; r * r * r];
        for (i, j, c) in products {
            if i >= r || j >= r || c.len() != r {
                return Err(Error::BadShape(format!("product entry ({i}, {j}) does not fit rank {r}")));
            }
            flat[(i * r + j) * r..(i * r + j + 1) * r].copy_from_slice(&c);
        }
        Self::from_table(name, moduli, flat)
    }

    /// Builds from a flat table `sc[(i*r + j)*r + k]`, checking every invariant.
    pub fn from_table(name: impl Into<String>, moduli: Vec<u64>, sc: Vec<u64>) -> Result<Self> {
        let r = moduli.len();
        if sc.len() != r * r * r {
            return Err(Error::BadShape(format!("expected {} constants, got {}", r * r * r, sc.len())));
        }
        if let Some(i) = moduli.iter().position(|&d| d < 2) {
            return Err(Error::BadModulus(moduli[i], i));
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let c = sc[(i * r + j) * r + k];
                    let dk = moduli[k];
                    if c >= dk {
                        return Err(Error::UnreducedConstant { i, j, k, value: c, modulus: dk });
                    }
                    if mul_mod(c, moduli[i], dk) != 0 || mul_mod(c, moduli[j], dk) != 0 {
                        return Err(Error::InconsistentConstant { i, j, k });
                    }
                }
            }
        }
        let ring = Self::assemble(name.into(), moduli, sc);
        ring.check_associative()?;
        Ok(ring)
    }

    fn assemble(name: String, moduli: Vec<u64>, sc: Vec<u64>) -> Self {
        let r = moduli.len();
        let sparse = (0..r * r)
            .map(|ij| {
                (0..r)
                    .filter_map(|k| {
                        let c = sc[ij * r + k];
                        (c != 0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        let exponent = moduli.iter().fold(1, |a, &d| lcm(a, d));
        let order = moduli.iter().try_fold(1u128, |a, &d| a.checked_mul(d as u128)).unwrap_or(u128::MAX);
        FiniteRing { inner: Arc::new(RingData { name, moduli, sc, sparse, exponent, order }) }
    }

    fn check_associative(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let ij = self.generator_product(i, j).to_vec();
                for k in 0..r {
                    let lhs = self.mul(&ij, &self.basis(k));
                    let jk = self.generator_product(j, k);
                    let rhs = self.mul(&self.basis(i), jk);
                    if lhs != rhs {
                        return Err(Error::NonAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The ring with one element.
    pub fn zero_ring() -> Self {
        Self::assemble("0".into(), Vec::new(), Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// Same ring under another label.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self::assemble(name.into(), self.inner.moduli.clone(), self.inner.sc.clone())
    }

    pub fn moduli(&self) -> &[u64] {
        &self.inner.moduli
    }

    /// Number of additive generators.
    pub fn rank(&self) -> usize {
        self.inner.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.inner.order
    }

    /// Lcm of the additive orders of all elements; 1 for the zero ring.
    pub fn characteristic(&self) -> u64 {
        self.inner.exponent
    }

    /// Length of a composition series of the additive group.
    pub fn composition_length(&self) -> u32 {
        self.inner.moduli.iter().map(|&d| big_omega(d)).sum()
    }

    pub fn table(&self) -> &[u64] {
        &self.inner.sc
    }

    pub fn generator_product(&self, i: usize, j: usize) -> &[u64] {
        let r = self.rank();
        &self.inner.sc[(i * r + j) * r..(i * r + j + 1) * r]
    }

    pub fn zero(&self) -> Coeffs {
        vec![0; self.rank()]
    }

    pub fn basis(&self, i: usize) -> Coeffs {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&v| v == 0)
    }

    /// Reduces arbitrary integers into canonical coefficients.
    pub fn element_from_ints(&self, v: &[i128]) -> Coeffs {
        v.iter().zip(self.moduli()).map(|(&x, &d)| x.rem_euclid(d as i128) as u64).collect()
    }

    pub fn is_reduced(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(self.moduli()).all(|(&v, &d)| v < d)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Coeffs {
        x.iter()
            .zip(y)
            .zip(self.moduli())
            .map(|((&a, &b), &d)| {
                let s = a + b;
                if s >= d {
                    s - d
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn add_assign(&self, x: &mut [u64], y: &[u64]) {
        for ((a, &b), &d) in x.iter_mut().zip(y).zip(self.moduli()) {
            *a += b;
            if *a >= d {
                *a -= d;
            }
        }
    }

    pub fn neg(&self, x: &[u64]) -> Coeffs {
        x.iter().zip(self.moduli()).map(|(&a, &d)| if a == 0 { 0 } else { d - a }).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Coeffs {
        self.add(x, &self.neg(y))
    }

    /// Integer multiple `k·x`.
    pub fn scale(&self, x: &[u64], k: i128) -> Coeffs {
        x.iter()
            .zip(self.moduli())
            .map(|(&a, &d)| {
                let km = k.rem_euclid(d as i128) as u64;
                mul_mod(a, km, d)
            })
            .collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let r = self.rank();
        let mut acc = vec![0u128; r];
        let sparse = &self.inner.sparse;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let xy = xi as u128 * yj as u128;
                for &(k, c) in &sparse[i * r + j] {
                    acc[k] = (acc[k] + xy * c as u128) % self.inner.moduli[k] as u128;
                }
            }
        }
        acc.into_iter().map(|v| v as u64).collect()
    }

    /// `x^n` for `n >= 1`.
    pub fn pow(&self, x: &[u64], n: u32) -> Coeffs {
        assert!(n >= 1, "rings are not assumed unital; x^0 is undefined");
        let mut acc = x.to_vec();
        for _ in 1..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(self.moduli()).fold(1, |acc, (&v, &d)| lcm(acc, d / crate::arith::gcd(v, d)))
    }

    /// Least `n >= 1` with `x^n = 0`, searching up to the composition length plus one.
    pub fn nilpotency_index(&self, x: &[u64]) -> Option<u32> {
        let bound = self.composition_length() + 1;
        let mut p = x.to_vec();
        for n in 1..=bound {
            if self.is_zero(&p) {
                return Some(n);
            }
            p = self.mul(&p, x);
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..i).all(|j| self.generator_product(i, j) == self.generator_product(j, i)))
    }

    /// True when every product vanishes.
    pub fn is_null(&self) -> bool {
        self.inner.sc.iter().all(|&c| c == 0)
    }

    /// The two-sided identity, when one exists.
    pub fn unit(&self) -> Option<Coeffs> {
        let r = self.rank();
        if r == 0 {
            return Some(Vec::new());
        }
        // u ↦ (u e_g, e_g u)_g, solved for (e_g, e_g)_g.
        let cod: Vec<u64> = (0..2 * r).flat_map(|_| self.moduli().iter().copied()).collect();
        let images: Vec<Coeffs> = (0..r)
            .map(|i| {
                let mut img = Vec::with_capacity(2 * r * r);
                for g in 0..r {
                    img.extend_from_slice(self.generator_product(i, g));
                    img.extend_from_slice(self.generator_product(g, i));
                }
                img
            })
            .collect();
        let target: Vec<u64> = (0..r)
            .flat_map(|g| {
                let b = self.basis(g);
                b.iter().chain(b.iter()).copied().collect::<Vec<_>>()
            })
            .collect();
        let map = AdditiveMap { dom: self.moduli(), cod: &cod, images: &images };
        let u = map.solve(&target)?;
        debug_assert!((0..r).all(|g| self.mul(&u, &self.basis(g)) == self.basis(g)));
        Some(u)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// Mixed-radix index of an element; generator 0 varies fastest.
    pub fn index_of(&self, x: &[u64]) -> u128 {
        let mut idx = 0u128;
        for (&v, &d) in x.iter().zip(self.moduli()).rev() {
            idx = idx * d as u128 + v as u128;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u128) -> Coeffs {
        self.moduli()
            .iter()
            .map(|&d| {
                let v = (idx % d as u128) as u64;
                idx /= d as u128;
                v
            })
            .collect()
    }

    pub fn enumerable(&self) -> Result<usize> {
        if self.order() > ENUMERATION_LIMIT {
            Err(Error::TooLarge(self.order()))
        } else {
            Ok(self.order() as usize)
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<Elements> {
        let total = self.enumerable()?;
        Ok(Elements { moduli: self.inner.moduli.clone(), cur: Some(self.zero()), remaining: total })
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<RingElement> {
        RingElement::new(self, coeffs)
    }
}

/// Iterator over all elements of a ring in mixed-radix order.
pub struct Elements {
    moduli: Vec<u64>,
    cur: Option<Coeffs>,
    remaining: usize,
}

impl Iterator for Elements {
    type Item = Coeffs;

    fn next(&mut self) -> Option<Coeffs> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.cur.take()?;
        let mut next = out.clone();
        let mut carried = true;
        for (v, &d) in next.iter_mut().zip(&self.moduli) {
            *v += 1;
            if *v < d {
                carried = false;
                break;
            }
            *v = 0;
        }
        if !carried {
            self.cur = Some(next);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

/// An element bound to its ring, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: FiniteRing,
    coeffs: Coeffs,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl RingElement {
    pub fn new(ring: &FiniteRing, coeffs: Vec<u64>) -> Result<Self> {
        if !ring.is_reduced(&coeffs) {
            return Err(Error::BadShape(format!(
                "coefficients {coeffs:?} are not reduced against moduli {:?}",
                ring.moduli()
            )));
        }
        Ok(RingElement { ring: ring.clone(), coeffs })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Coeffs {
        self.coeffs
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn wrap(&self, coeffs: Coeffs) -> Self {
        RingElement { ring: self.ring.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.add(&self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.sub(&self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.wrap(self.ring.mul(&self.coeffs, &other.coeffs)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.ring.neg(&self.coeffs))
    }

    pub fn scale(&self, k: i128) -> Self {
        self.wrap(self.ring.scale(&self.coeffs, k))
    }

    pub fn pow(&self, n: u32) -> Self {
        self.wrap(self.ring.pow(&self.coeffs, n))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> FiniteRing {
        FiniteRing::from_products(format!("Z/{n}"), vec![n], [(0, 0, vec![1])]).unwrap()
    }

    #[test]
    fn cyclic_unital_ring() {
        let r = zn(4);
        assert_eq!(r.order(), 4);
        assert_eq!(r.unit(), Some(vec![1]));
        assert_eq!(r.mul(&[2], &[2]), vec![0]);
    }

    #[test]
    fn z8_powers() {
        let r = zn(8);
        assert_eq!(r.pow(&[2], 3), vec![0]);
        assert_eq!(r.pow(&[2], 2), vec![4]);
        assert_eq!(r.nilpotency_index(&[2]), Some(3));
        assert_eq!(r.nilpotency_index(&[3]), None);
    }

    #[test]
    fn null_ring_products_vanish() {
        let r = FiniteRing::from_products("null2", vec![2], []).unwrap();
        assert!(r.is_null());
        for x in r.elements().unwrap() {
            for y in r.elements().unwrap() {
                assert!(r.is_zero(&r.mul(&x, &y)));
            }
        }
        assert!(r.unit().is_none());
    }

    #[test]
    fn associativity_by_expansion() {
        // e0*e0 = e1, everything else zero. Expand (e0 e0) e0 = e1 e0 = 0 and
        // e0 (e0 e0) = e0 e1 = 0, so the constants are associative.
        let r = FiniteRing::from_products("t", vec![2, 2], [(0, 0, vec![0, 1])]);
        assert!(r.is_ok());
        // e0*e0 = e1, e0*e1 = e0: (e0 e0) e1 = e1 e1 = 0 but e0 (e0 e1) = e0 e0 = e1.
        let bad = FiniteRing::from_products("bad", vec![2, 2], [(0, 0, vec![0, 1]), (0, 1, vec![1, 0])]);
        assert!(matches!(bad, Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn rejects_malformed_constants() {
        assert!(matches!(
            FiniteRing::from_products("x", vec![4], [(0, 0, vec![5])]),
            Err(Error::UnreducedConstant { .. })
        ));
        // e0 of order 2 cannot square to a generator of order 4.
        assert!(matches!(
            FiniteRing::from_products("x", vec![2, 4], [(0, 0, vec![0, 1])]),
            Err(Error::InconsistentConstant { .. })
        ));
        assert!(matches!(FiniteRing::new("x", vec![2], &[]), Err(Error::BadShape(_))));
        assert!(matches!(FiniteRing::from_products("x", vec![1], []), Err(Error::BadModulus(1, 0))));
    }

    #[test]
    fn element_ring_mismatch() {
        let a = zn(4).element(vec![1]).unwrap();
        let b = zn(5).element(vec![1]).unwrap();
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
        assert_eq!(a.scale(2).mul(&a.scale(2)).unwrap().coeffs(), &[0]);
    }

    #[test]
    fn index_roundtrip() {
        let r = FiniteRing::from_products("m", vec![2, 3, 4], []).unwrap();
        for (i, x) in r.elements().unwrap().enumerate() {
            assert_eq!(r.index_of(&x), i as u128);
            assert_eq!(r.element_at(i as u128), x);
        }
    }
}
