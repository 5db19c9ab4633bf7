//! Matrix rings over finite fields and the decomposition of semisimple rings.

use std::fmt;

use serde::Serialize;

use crate::construct::{product, quotient};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hom::RingHom;
use crate::howell::AdditiveMap;
use crate::maximal::maximal_ideals;
use crate::radical::jacobson_radical;
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::{Side, Subgroup};

/// `M_k(F_q)`. Generator `(a*k + b)*e + s` is the matrix unit `E_{ab}` times `t^s`.
pub fn matrix_ring(k: usize, q: u64) -> Result<FiniteRing> {
    if k == 0 {
        return Err(Error::PreconditionFailed("matrix size must be positive".into()));
    }
    let f = FieldSpec::new(q)?;
    let e = f.degree;
    let r = k * k * e;
    let powers: Vec<Vec<u64>> = (0..2 * e - 1).map(|n| f.power_of_t(n)).collect();
    let mut prods = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                for s in 0..e {
                    for u in 0..e {
                        let mut v = vec![0; r];
                        let base = (a * k + d) * e;
                        v[base..base + e].copy_from_slice(&powers[s + u]);
                        prods.push(((a * k + b) * e + s, (b * k + d) * e + u, v));
                    }
                }
            }
        }
    }
    let name = if k == 1 { format!("F_{q}") } else { format!("M_{k}(F_{q})") };
    FiniteRing::from_products(name, vec![f.p; r], prods)
}

/// The nilpotent Jordan block (ones just above the diagonal) in [`matrix_ring`].
pub fn jordan_block(k: usize, q: u64) -> Result<Coeffs> {
    let f = FieldSpec::new(q)?;
    let e = f.degree;
    let mut v = vec![0; k * k * e];
    for a in 0..k.saturating_sub(1) {
        v[(a * k + a + 1) * e] = 1;
    }
    Ok(v)
}

/// Maximal two-sided ideals of a unital ring with their simple quotients.
pub fn maximal_two_sided_quotients(ring: &FiniteRing) -> Result<Vec<(Subgroup, FiniteRing, RingHom)>> {
    if !ring.is_unital() {
        return Err(Error::NotUnital);
    }
    maximal_ideals(ring, Side::Two)
        .into_iter()
        .map(|m| {
            let (q, proj) = quotient(ring, &m)?;
            Ok((m, q, proj))
        })
        .collect()
}

/// A certified isomorphism `S → M_k(F_q)` for a simple unital ring `S`.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub k: usize,
    pub q: u64,
    pub iso: RingHom,
}

fn is_simple(ring: &FiniteRing) -> bool {
    let m = maximal_ideals(ring, Side::Two);
    ring.order() > 1 && m.len() == 1 && m[0].is_zero()
}

/// Identifies a simple unital ring with a full matrix ring.
///
/// Takes a minimal left ideal `L = Sx` (smallest order, first in element
/// order), an idempotent generator `e` of `L`, and the field `F = eSe` acting
/// on `L` from the right; `F` is `End_S(L)` up to opposite, and left
/// multiplication in an `F`-basis of `L` gives the matrices.
pub fn recognize_matrix_ring(ring: &FiniteRing) -> Result<Recognition> {
    let unit = ring.unit().ok_or(Error::NotUnital)?;
    if !is_simple(ring) {
        return Err(Error::NotSimple);
    }
    let elements: Vec<Coeffs> = ring.elements()?.collect();
    let r = ring.rank();
    let principal = |x: &Coeffs| {
        let gens: Vec<Coeffs> = (0..r).map(|i| ring.mul(&ring.basis(i), x)).collect();
        Subgroup::generated(ring, &gens)
    };
    let mut minimal: Option<Subgroup> = None;
    for x in elements.iter().filter(|x| !ring.is_zero(x)) {
        let l = principal(x);
        if minimal.as_ref().is_none_or(|m| l.order() < m.order()) {
            minimal = Some(l);
        }
    }
    let l = minimal.expect("simple rings are nonzero");
    let l_elements = l.elements()?;
    let e = l_elements
        .iter()
        .find(|x| !ring.is_zero(x) && ring.mul(x, x) == **x)
        .cloned()
        .ok_or_else(|| Error::Disagreement("minimal left ideal without idempotent".into()))?;
    // F = eSe with identity e.
    let field =
        Subgroup::generated(ring, &(0..r).map(|i| ring.mul(&ring.mul(&e, &ring.basis(i)), &e)).collect::<Vec<_>>());
    let f_elements = field.elements()?;
    let q = field.order() as u64;
    let spec = FieldSpec::new(q).map_err(|_| Error::Disagreement(format!("eSe has order {q}")))?;
    let is_field = f_elements.iter().all(|x| {
        f_elements.iter().all(|y| ring.mul(x, y) == ring.mul(y, x))
            && (ring.is_zero(x) || f_elements.iter().any(|y| ring.mul(x, y) == e))
    });
    if !is_field {
        return Err(Error::Disagreement("eSe is not a field".into()));
    }
    let d = spec.degree;
    let powers_of = |theta: &Coeffs| {
        let mut pw = vec![e.clone()];
        for _ in 0..d {
            let next = ring.mul(pw.last().expect("nonempty"), theta);
            pw.push(next);
        }
        pw
    };
    let theta = f_elements
        .iter()
        .find(|t| ring.is_zero(&spec.eval_modulus(ring, &powers_of(t))))
        .cloned()
        .ok_or_else(|| Error::Disagreement("field modulus has no root in eSe".into()))?;
    let theta_pow = powers_of(&theta)[..d].to_vec();
    // F-basis of L under right multiplication.
    let mut basis: Vec<Coeffs> = Vec::new();
    let mut span = Subgroup::zero(ring);
    let mut span_gens: Vec<Coeffs> = Vec::new();
    for b in &l_elements {
        if !span.contains(b) {
            let block: Vec<Coeffs> = theta_pow.iter().map(|t| ring.mul(b, t)).collect();
            span_gens.extend(block);
            span = Subgroup::generated(ring, &span_gens);
            basis.push(b.clone());
        }
    }
    let k = basis.len();
    let p = spec.p;
    if (q as u128).pow((k * k) as u32) != ring.order() || span.order() != l.order() {
        return Err(Error::Disagreement(format!("order {} is not {q}^({k}^2)", ring.order())));
    }
    let dom = vec![p; k * d];
    let coords = AdditiveMap { dom: &dom, cod: ring.moduli(), images: &span_gens }.graph(&[]);
    let target = matrix_ring(k, q)?;
    let images: Vec<Coeffs> = (0..r)
        .map(|g| {
            let s = ring.basis(g);
            let mut m = target.zero();
            for (j, b) in basis.iter().enumerate() {
                let c = coords.solve(&ring.mul(&s, b)).expect("L is a left ideal");
                for i in 0..k {
                    for t in 0..d {
                        m[(i * k + j) * d + t] = c[i * d + t] % p;
                    }
                }
            }
            m
        })
        .collect();
    let iso = RingHom::new(ring, &target, images)?;
    if !iso.is_isomorphism() {
        return Err(Error::Disagreement(format!("left action map is not an isomorphism: {:?}", iso.flags())));
    }
    debug_assert_eq!(iso.apply(&unit), target.unit().expect("matrix rings are unital"));
    Ok(Recognition { k, q, iso })
}

/// One isomorphism class `M_k(F_q)` with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub q: u64,
    pub k: usize,
    pub multiplicity: usize,
}

impl Factor {
    pub fn new(k: usize, q: u64, multiplicity: usize) -> Self {
        Factor { q, k, multiplicity }
    }
}

/// Sorts by `(q, k)` and merges repeated classes.
pub fn canonical_factors(factors: &[Factor]) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    let mut sorted: Vec<Factor> = factors.iter().copied().filter(|f| f.multiplicity > 0).collect();
    sorted.sort();
    for f in sorted {
        match out.last_mut() {
            Some(last) if (last.q, last.k) == (f.q, f.k) => last.multiplicity += f.multiplicity,
            _ => out.push(f),
        }
    }
    out
}

/// `[(k,q)^m, ...]`.
pub struct FactorLine<'a>(pub &'a [Factor]);

impl fmt::Display for FactorLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{})^{}", x.k, x.q, x.multiplicity)?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    /// From the decomposed ring onto [`rebuild`] of the factors.
    pub iso: RingHom,
}

impl Decomposition {
    pub fn line(&self) -> String {
        FactorLine(&self.factors).to_string()
    }
}

fn expand(factors: &[Factor]) -> Vec<(usize, u64)> {
    canonical_factors(factors).iter().flat_map(|f| std::iter::repeat_n((f.k, f.q), f.multiplicity)).collect()
}

/// Product of the matrix rings, one per unit of multiplicity, in canonical order.
pub fn rebuild(factors: &[Factor]) -> Result<FiniteRing> {
    let parts = expand(factors).into_iter().map(|(k, q)| matrix_ring(k, q)).collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        return Ok(FiniteRing::zero_ring());
    }
    Ok(product(&parts)?.ring)
}

/// Decomposes a semisimple ring through the diagonal of its simple quotients.
///
/// A finite ring with zero radical is a product of matrix rings over fields
/// and so always has an identity.
pub fn decompose_semisimple(ring: &FiniteRing) -> Result<Decomposition> {
    let j = jacobson_radical(ring)?;
    if !j.is_zero() {
        return Err(Error::NotSemisimple { radical_order: j.order(), witness: j.generators()[0].clone() });
    }
    if ring.order() == 1 {
        let target = FiniteRing::zero_ring();
        let iso = RingHom::new(ring, &target, vec![Vec::new(); ring.rank()])?;
        return Ok(Decomposition { factors: Vec::new(), iso });
    }
    let mut pieces: Vec<(usize, u64, RingHom)> = Vec::new();
    for (_, simple, proj) in maximal_two_sided_quotients(ring)? {
        let rec = recognize_matrix_ring(&simple)?;
        pieces.push((rec.k, rec.q, proj.then(&rec.iso)?));
    }
    pieces.sort_by_key(|(k, q, _)| (*q, *k));
    let factors = canonical_factors(&pieces.iter().map(|(k, q, _)| Factor::new(*k, *q, 1)).collect::<Vec<_>>());
    let target = rebuild(&factors)?;
    let images: Vec<Coeffs> =
        (0..ring.rank()).map(|g| pieces.iter().flat_map(|(_, _, f)| f.images()[g].iter().copied()).collect()).collect();
    let iso = RingHom::new(ring, &target, images)?;
    if !iso.is_isomorphism() {
        return Err(Error::Disagreement(format!("diagonal map is not an isomorphism: {:?}", iso.flags())));
    }
    Ok(Decomposition { factors, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, matrix_units};
    use crate::radical::is_semisimple;

    #[test]
    fn matrix_ring_shapes() {
        let f2 = matrix_ring(1, 2).unwrap();
        assert_eq!(f2, cyclic(2));
        let m22 = matrix_ring(2, 2).unwrap();
        assert_eq!(m22.order(), 16);
        assert!(m22.is_unital());
        assert!(is_semisimple(&m22).unwrap());
        let f4 = matrix_ring(1, 4).unwrap();
        assert_eq!(f4.order(), 4);
        assert!(is_semisimple(&f4).unwrap());
        assert_eq!(matrix_ring(2, 6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn quotients() {
        let mut orders: Vec<u128> =
            maximal_two_sided_quotients(&cyclic(6)).unwrap().iter().map(|(_, q, _)| q.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![2, 3]);
        assert_eq!(maximal_two_sided_quotients(&matrix_units(2, 2)).unwrap().len(), 1);
        let z4 = maximal_two_sided_quotients(&cyclic(4)).unwrap();
        assert_eq!(z4.len(), 1);
        assert_eq!(z4[0].1.order(), 2);
    }

    #[test]
    fn recognition() {
        let rec = recognize_matrix_ring(&matrix_units(2, 2)).unwrap();
        assert_eq!((rec.k, rec.q), (2, 2));
        let rec = recognize_matrix_ring(&matrix_ring(1, 9).unwrap()).unwrap();
        assert_eq!((rec.k, rec.q), (1, 9));
        assert_eq!(recognize_matrix_ring(&cyclic(4)).unwrap_err(), Error::NotSimple);
        let rec = recognize_matrix_ring(&matrix_ring(2, 4).unwrap()).unwrap();
        assert_eq!((rec.k, rec.q), (2, 4));
    }

    #[test]
    fn decompositions() {
        let d = decompose_semisimple(&cyclic(6)).unwrap();
        assert_eq!(d.line(), "[(1,2)^1, (1,3)^1]");
        let d = decompose_semisimple(&FiniteRing::zero_ring()).unwrap();
        assert!(d.factors.is_empty());
        assert!(matches!(decompose_semisimple(&cyclic(4)), Err(Error::NotSemisimple { radical_order: 2, .. })));
        let r = rebuild(&[Factor::new(1, 2, 3)]).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(decompose_semisimple(&r).unwrap().line(), "[(1,2)^3]");
        let mixed = product(&[matrix_units(2, 2), cyclic(3)]).unwrap().ring;
        assert_eq!(decompose_semisimple(&mixed).unwrap().line(), "[(2,2)^1, (1,3)^1]");
    }
}
