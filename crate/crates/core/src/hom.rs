//! Ring homomorphisms given by the images of additive generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::howell::AdditiveMap;
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::{combine, Subgroup};

/// Which homomorphism properties were verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomFlags {
    pub additive: bool,
    pub multiplicative: bool,
    pub injective: bool,
    pub surjective: bool,
}

/// A map between finite rings, determined by where each additive generator goes.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    images: Vec<Coeffs>,
    flags: HomFlags,
}

impl RingHom {
    /// Builds the map and certifies its flags. Never fails on a
    /// non-homomorphism; inspect [`RingHom::flags`] instead.
    pub fn new(source: &FiniteRing, target: &FiniteRing, images: Vec<Coeffs>) -> Result<Self> {
        if images.len() != source.rank() || images.iter().any(|v| !target.is_reduced(v)) {
            return Err(Error::BadShape("generator images do not match the rings".into()));
        }
        let mut hom = RingHom { source: source.clone(), target: target.clone(), images, flags: HomFlags::default() };
        hom.flags = hom.certify();
        Ok(hom)
    }

    fn certify(&self) -> HomFlags {
        let s = &self.source;
        let t = &self.target;
        let additive = self.images.iter().zip(s.moduli()).all(|(img, &d)| t.is_zero(&t.scale(img, d as i128)));
        let mut multiplicative = additive;
        if additive {
            'outer: for i in 0..s.rank() {
                for j in 0..s.rank() {
                    let lhs = t.mul(&self.images[i], &self.images[j]);
                    let rhs = self.apply(s.generator_product(i, j));
                    if lhs != rhs {
                        multiplicative = false;
                        break 'outer;
                    }
                }
            }
        }
        let (injective, surjective) = if additive {
            let image_order = self.image().order();
            (image_order == s.order(), image_order == t.order())
        } else {
            (false, false)
        };
        HomFlags { additive, multiplicative, injective, surjective }
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn images(&self) -> &[Coeffs] {
        &self.images
    }

    pub fn flags(&self) -> HomFlags {
        self.flags
    }

    pub fn is_homomorphism(&self) -> bool {
        self.flags.additive && self.flags.multiplicative
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_homomorphism() && self.flags.injective && self.flags.surjective
    }

    pub fn apply(&self, x: &[u64]) -> Coeffs {
        combine(self.target.moduli(), &self.images, x)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.images)
    }

    pub fn kernel(&self) -> Subgroup {
        let map = AdditiveMap { dom: self.source.moduli(), cod: self.target.moduli(), images: &self.images };
        Subgroup::generated(&self.source, &map.kernel())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.target != other.source {
            return Err(Error::RingMismatch);
        }
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        RingHom::new(&self.source, &other.target, images)
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<RingHom> {
        if !self.is_isomorphism() {
            return Err(Error::PreconditionFailed("only isomorphisms can be inverted".into()));
        }
        let map = AdditiveMap { dom: self.source.moduli(), cod: self.target.moduli(), images: &self.images };
        let graph = map.graph(&[]);
        let images = (0..self.target.rank())
            .map(|i| graph.solve(&self.target.basis(i)).expect("surjective"))
            .map(|x| self.source.element_from_ints(&x.iter().map(|&v| v as i128).collect::<Vec<_>>()))
            .collect();
        RingHom::new(&self.target, &self.source, images)
    }

    pub fn identity(ring: &FiniteRing) -> RingHom {
        let images = (0..ring.rank()).map(|i| ring.basis(i)).collect();
        RingHom::new(ring, ring, images).expect("identity is well formed")
    }
}
