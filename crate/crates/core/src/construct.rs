//! Ring constructions: quotients, finite products, subrings as rings, the
//! unitalization, and a few standard families.

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::howell::AdditiveMap;
use crate::ring::{Coeffs, FiniteRing};
use crate::smith::{present, Presentation};
use crate::subgroup::Subgroup;

/// `R/I` with its projection. `I` must be a two-sided ideal.
pub fn quotient(ring: &FiniteRing, ideal: &Subgroup) -> Result<(FiniteRing, RingHom)> {
    if !ideal.is_two_sided_ideal(ring) {
        return Err(Error::NotTwoSidedIdeal);
    }
    let r = ring.rank();
    let mut relations: Vec<Vec<i128>> =
        (0..r).map(|i| (0..r).map(|j| if i == j { ring.moduli()[i] as i128 } else { 0 }).collect()).collect();
    relations.extend(ideal.generators().iter().map(|g| g.iter().map(|&x| x as i128).collect()));
    let pres = present(r, &relations);
    let lifts: Vec<Coeffs> = pres.lifts.iter().map(|l| ring.element_from_ints(l)).collect();
    let project = |x: &[u64]| pres.apply(&x.iter().map(|&v| v as i128).collect::<Vec<_>>());
    let q = ring_from_lifts(format!("{}/I", ring.name()), ring, &pres, &lifts, project)?;
    let images = (0..r).map(|i| pres.project[i].clone()).collect();
    let hom = RingHom::new(ring, &q, images)?;
    debug_assert!(hom.is_homomorphism() && hom.flags().surjective);
    Ok((q, hom))
}

fn ring_from_lifts<F>(
    name: String,
    ring: &FiniteRing,
    pres: &Presentation,
    lifts: &[Coeffs],
    coords: F,
) -> Result<FiniteRing>
where
    F: Fn(&[u64]) -> Coeffs,
{
    let m = pres.moduli.len();
    let mut table = vec![0u64; m * m * m];
    for a in 0..m {
        for b in 0..m {
            let p = coords(&ring.mul(&lifts[a], &lifts[b]));
            table[(a * m + b) * m..(a * m + b + 1) * m].copy_from_slice(&p);
        }
    }
    FiniteRing::from_table(name, pres.moduli.clone(), table)
}

/// A subring `S ⊆ R` presented as a ring in its own right, with the inclusion.
pub fn subring_as_ring(ring: &FiniteRing, s: &Subgroup) -> Result<(FiniteRing, RingHom)> {
    if !s.flags(ring).subring {
        return Err(Error::PreconditionFailed("subgroup is not closed under multiplication".into()));
    }
    let gens = s.generators();
    let h = gens.len();
    let n = ring.characteristic();
    let dom = vec![n; h];
    let map = AdditiveMap { dom: &dom, cod: ring.moduli(), images: &gens };
    let graph = map.graph(&[]);
    let mut relations: Vec<Vec<i128>> =
        (0..h).map(|i| (0..h).map(|j| if i == j { n as i128 } else { 0 }).collect()).collect();
    relations.extend(graph.kernel().iter().map(|k| k.iter().map(|&x| x as i128).collect()));
    let pres = present(h, &relations);
    let lifts: Vec<Coeffs> = pres
        .lifts
        .iter()
        .map(|l| {
            let c: Vec<u64> = l.iter().map(|&x| x.rem_euclid(n as i128) as u64).collect();
            crate::subgroup::combine(ring.moduli(), &gens, &c)
        })
        .collect();
    let coords = |x: &[u64]| {
        let c = graph.solve(x).expect("element lies in the subring");
        pres.apply(&c.iter().map(|&v| v as i128).collect::<Vec<_>>())
    };
    let sub = ring_from_lifts(format!("{}|sub", ring.name()), ring, &pres, &lifts, coords)?;
    let inclusion = RingHom::new(&sub, ring, lifts)?;
    debug_assert!(inclusion.is_homomorphism() && inclusion.flags().injective);
    Ok((sub, inclusion))
}

/// A finite product together with its injections and projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub ring: FiniteRing,
    pub injections: Vec<RingHom>,
    pub projections: Vec<RingHom>,
    /// Offset of each factor's generators in the product.
    pub offsets: Vec<usize>,
}

pub fn product(rings: &[FiniteRing]) -> Result<Product> {
    if rings.is_empty() {
        return Err(Error::PreconditionFailed("product of an empty list".into()));
    }
    let moduli: Vec<u64> = rings.iter().flat_map(|r| r.moduli().iter().copied()).collect();
    let n = moduli.len();
    let mut offsets = Vec::with_capacity(rings.len());
    let mut table = vec![0u64; n * n * n];
    let mut off = 0;
    for r in rings {
        offsets.push(off);
        let k = r.rank();
        for i in 0..k {
            for j in 0..k {
                let p = r.generator_product(i, j);
                let base = ((off + i) * n + off + j) * n + off;
                table[base..base + k].copy_from_slice(p);
            }
        }
        off += k;
    }
    let name = rings.iter().map(|r| r.name()).collect::<Vec<_>>().join(" x ");
    let ring = FiniteRing::from_table(name, moduli, table)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (r, &off) in rings.iter().zip(&offsets) {
        let inj = (0..r.rank())
            .map(|i| {
                let mut v = ring.zero();
                v[off + i] = 1;
                v
            })
            .collect();
        injections.push(RingHom::new(r, &ring, inj)?);
        let proj = (0..n)
            .map(|g| {
                let mut v = r.zero();
                if g >= off && g < off + r.rank() {
                    v[g - off] = 1;
                }
                v
            })
            .collect();
        projections.push(RingHom::new(&ring, r, proj)?);
    }
    Ok(Product { ring, injections, projections, offsets })
}

/// `R_1 = R × Z/c` with `(a,k)(b,l) = (ab + l·a + k·b, kl)`, and the embedding `a ↦ (a, 0)`.
pub fn unitalize(ring: &FiniteRing, c: u64) -> Result<(FiniteRing, RingHom)> {
    let ch = ring.characteristic();
    if c < 2 || !c.is_multiple_of(ch) {
        return Err(Error::BadCharacteristic { c, characteristic: ch });
    }
    let r = ring.rank();
    let n = r + 1;
    let mut moduli = ring.moduli().to_vec();
    moduli.push(c);
    let mut table = vec![0u64; n * n * n];
    for i in 0..r {
        for j in 0..r {
            let base = (i * n + j) * n;
            table[base..base + r].copy_from_slice(ring.generator_product(i, j));
        }
        // e_i · u = u · e_i = e_i
        table[(i * n + r) * n + i] = 1;
        table[(r * n + i) * n + i] = 1;
    }
    table[(r * n + r) * n + r] = 1;
    let r1 = FiniteRing::from_table(format!("{}^+", ring.name()), moduli, table)?;
    let images = (0..r).map(|i| r1.basis(i)).collect();
    let emb = RingHom::new(ring, &r1, images)?;
    Ok((r1, emb))
}

/// `Z/n` with `1 = e_0`.
pub fn cyclic(n: u64) -> FiniteRing {
    FiniteRing::from_products(format!("Z/{n}"), vec![n], [(0, 0, vec![1 % n])]).expect("Z/n is a ring")
}

/// Null ring on the abelian group `⊕ Z/d_i`.
pub fn null_ring(moduli: &[u64]) -> FiniteRing {
    let name = format!("null({})", moduli.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
    FiniteRing::from_products(name, moduli.to_vec(), []).expect("zero multiplication is associative")
}

/// Truncated polynomial ring `(Z/n)[t]/(t^k)`, unital, basis `1, t, …, t^{k-1}`.
pub fn truncated_polynomial(n: u64, k: usize) -> FiniteRing {
    let mut prods = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                let mut v = vec![0; k];
                v[i + j] = 1;
                prods.push((i, j, v));
            }
        }
    }
    FiniteRing::from_products(format!("Z/{n}[t]/(t^{k})"), vec![n; k], prods).expect("polynomial ring")
}

/// Upper triangular `k×k` matrices over `Z/n` (strictly upper when `strict`).
pub fn upper_triangular(n: u64, k: usize, strict: bool) -> FiniteRing {
    let cells: Vec<(usize, usize)> =
        (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).filter(|&(a, b)| !strict || a < b).collect();
    let r = cells.len();
    let mut prods = Vec::new();
    for (i, &(a, b)) in cells.iter().enumerate() {
        for (j, &(c, d)) in cells.iter().enumerate() {
            if b == c {
                if let Some(t) = cells.iter().position(|&x| x == (a, d)) {
                    let mut v = vec![0; r];
                    v[t] = 1;
                    prods.push((i, j, v));
                }
            }
        }
    }
    let name = format!("{}T_{k}(Z/{n})", if strict { "s" } else { "" });
    FiniteRing::from_products(name, vec![n; r], prods).expect("matrix units multiply associatively")
}

/// Full matrix ring `M_k(Z/n)` on matrix units.
pub fn matrix_units(n: u64, k: usize) -> FiniteRing {
    let r = k * k;
    let mut prods = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                let mut v = vec![0; r];
                v[a * k + d] = 1;
                prods.push((a * k + b, b * k + d, v));
            }
        }
    }
    FiniteRing::from_products(format!("M_{k}(Z/{n})"), vec![n; r], prods).expect("matrix ring")
}
