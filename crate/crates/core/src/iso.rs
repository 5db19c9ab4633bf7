//! Isomorphism and automorphism search by backtracking over images of a
//! small ring-generating set.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::howell::AdditiveMap;
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::{subring_generated, Subgroup};

pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Isomorphism invariants of a single element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariant {
    pub additive_order: u64,
    /// Least `i` with `x^i = x^j` for some `j > i`.
    pub power_start: u32,
    /// The corresponding `j - i`, or 0 when `x^i = 0`.
    pub power_period: u32,
    pub subring_order: u128,
    pub left_annihilator: u128,
    pub right_annihilator: u128,
}

fn power_signature(ring: &FiniteRing, x: &[u64]) -> (u32, u32) {
    let mut seen: HashMap<Coeffs, u32> = HashMap::new();
    let mut p = x.to_vec();
    let mut i = 1;
    loop {
        if ring.is_zero(&p) {
            return (i, 0);
        }
        if let Some(&j) = seen.get(&p) {
            return (j, i - j);
        }
        seen.insert(p.clone(), i);
        p = ring.mul(&p, x);
        i += 1;
    }
}

fn annihilator_order(ring: &FiniteRing, x: &[u64], left: bool) -> u128 {
    let images: Vec<Coeffs> = (0..ring.rank())
        .map(|g| {
            let e = ring.basis(g);
            if left {
                ring.mul(&e, x)
            } else {
                ring.mul(x, &e)
            }
        })
        .collect();
    let map = AdditiveMap { dom: ring.moduli(), cod: ring.moduli(), images: &images };
    Subgroup::generated(ring, &map.kernel()).order()
}

pub fn element_invariant(ring: &FiniteRing, x: &[u64]) -> ElementInvariant {
    let (power_start, power_period) = power_signature(ring, x);
    ElementInvariant {
        additive_order: ring.additive_order(x),
        power_start,
        power_period,
        subring_order: subring_generated(ring, &[x.to_vec()]).order(),
        left_annihilator: annihilator_order(ring, x, true),
        right_annihilator: annihilator_order(ring, x, false),
    }
}

/// Cheap isomorphism invariants of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u128,
    pub characteristic: u64,
    pub unital: bool,
    pub commutative: bool,
    /// Sorted multiset of element invariants.
    pub spectrum: Vec<ElementInvariant>,
}

pub fn fingerprint(ring: &FiniteRing) -> Result<Fingerprint> {
    let mut spectrum: Vec<ElementInvariant> = ring.elements()?.map(|x| element_invariant(ring, &x)).collect();
    spectrum.sort();
    Ok(Fingerprint {
        order: ring.order(),
        characteristic: ring.characteristic(),
        unital: ring.is_unital(),
        commutative: ring.is_commutative(),
        spectrum,
    })
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Gen,
    Mul(usize, usize),
}

/// A constraint an image assignment must satisfy; coefficients refer to step values.
enum Relation {
    /// `Σ c_j v_j = 0`.
    Linear(Vec<u64>),
    /// `v_a · v_b = Σ c_j v_j`.
    Product { a: usize, b: usize, coeffs: Vec<u64> },
}

/// Straight-line description of a ring from a generating set.
struct Program {
    gens: Vec<Coeffs>,
    steps: Vec<Step>,
    values: Vec<Coeffs>,
    /// `stage_end[i]`: number of steps determined by the first `i + 1` generators.
    stage_end: Vec<usize>,
    /// Relations among the step values, grouped by the stage completing them.
    relations: Vec<Vec<Relation>>,
    /// Coordinates of `e_g` in the step values.
    basis_coords: Vec<Vec<u64>>,
    modulus: u64,
}

/// Greedy ring-generating set: repeatedly add the element that enlarges the generated subring most.
fn generating_set(ring: &FiniteRing, elements: &[Coeffs]) -> Vec<Coeffs> {
    let mut gens: Vec<Coeffs> = Vec::new();
    let mut current = subring_generated(ring, &[ring.zero()]);
    while !current.is_whole() {
        let mut best: Option<(u128, Coeffs, Subgroup)> = None;
        for x in elements.iter().filter(|x| !current.contains(x)) {
            let mut g = gens.clone();
            g.push(x.clone());
            let s = subring_generated(ring, &g);
            if best.as_ref().is_none_or(|(o, _, _)| s.order() > *o) {
                let done = s.is_whole();
                best = Some((s.order(), x.clone(), s));
                if done {
                    break;
                }
            }
        }
        let (_, x, s) = best.expect("a proper subring misses some element");
        gens.push(x);
        current = s;
    }
    gens
}

impl Program {
    fn new(ring: &FiniteRing, gens: Vec<Coeffs>) -> Program {
        let n = ring.characteristic().max(2);
        let mut steps = Vec::new();
        let mut values: Vec<Coeffs> = Vec::new();
        let mut stage_end = Vec::new();
        let mut span = Subgroup::zero(ring);
        for g in &gens {
            steps.push(Step::Gen);
            values.push(g.clone());
            span = span.sum(&Subgroup::generated(ring, std::slice::from_ref(g)));
            // Close under products, recording only those that leave the span.
            let mut changed = true;
            while changed {
                changed = false;
                let len = values.len();
                for a in 0..len {
                    for b in 0..len {
                        let p = ring.mul(&values[a], &values[b]);
                        if !span.contains(&p) {
                            span = span.sum(&Subgroup::generated(ring, std::slice::from_ref(&p)));
                            steps.push(Step::Mul(a, b));
                            values.push(p);
                            changed = true;
                        }
                    }
                }
            }
            stage_end.push(values.len());
        }
        // Relations: linear kernel plus product relations, each attached to
        // the first stage where all involved steps exist.
        let mut relations: Vec<Vec<Relation>> = (0..gens.len()).map(|_| Vec::new()).collect();
        let stage_of = |len: usize| stage_end.iter().position(|&e| len <= e).expect("within program");
        for (si, &end) in stage_end.iter().enumerate() {
            let dom = vec![n; end];
            let map = AdditiveMap { dom: &dom, cod: ring.moduli(), images: &values[..end] };
            let graph = map.graph(&[]);
            relations[si].extend(graph.kernel().into_iter().map(Relation::Linear));
            // products a·b for steps in this stage
            for a in 0..end {
                for b in 0..end {
                    if stage_of(a.max(b) + 1) != si {
                        continue;
                    }
                    let p = ring.mul(&values[a], &values[b]);
                    let coeffs = graph.solve(&p).expect("closed under products");
                    relations[si].push(Relation::Product { a, b, coeffs });
                }
            }
        }
        let dom = vec![n; values.len()];
        let map = AdditiveMap { dom: &dom, cod: ring.moduli(), images: &values };
        let graph = map.graph(&[]);
        let basis_coords =
            (0..ring.rank()).map(|g| graph.solve(&ring.basis(g)).expect("generators span the ring")).collect();
        Program { gens, steps, values, stage_end, relations, basis_coords, modulus: n }
    }

    /// Extends `images` (of steps) through stage `si`; false if a relation fails.
    fn extend(&self, target: &FiniteRing, images: &mut Vec<Coeffs>, si: usize, gen_image: &Coeffs) -> bool {
        let start = if si == 0 { 0 } else { self.stage_end[si - 1] };
        images.truncate(start);
        for step in &self.steps[start..self.stage_end[si]] {
            let v = match *step {
                Step::Gen => gen_image.clone(),
                Step::Mul(a, b) => target.mul(&images[a], &images[b]),
            };
            images.push(v);
        }
        let combine = |c: &[u64]| {
            let mut acc = target.zero();
            for (j, &cj) in c.iter().enumerate() {
                if cj != 0 {
                    target.add_assign(&mut acc, &target.scale(&images[j], cj as i128));
                }
            }
            acc
        };
        self.relations[si].iter().all(|rel| match rel {
            Relation::Linear(c) => target.is_zero(&combine(c)),
            Relation::Product { a, b, coeffs } => combine(coeffs) == target.mul(&images[*a], &images[*b]),
        })
    }

    fn hom_images(&self, target: &FiniteRing, images: &[Coeffs]) -> Vec<Coeffs> {
        self.basis_coords
            .iter()
            .map(|c| {
                let mut acc = target.zero();
                for (j, &cj) in c.iter().enumerate() {
                    target.add_assign(&mut acc, &target.scale(&images[j], (cj % self.modulus) as i128));
                }
                acc
            })
            .collect()
    }
}

struct Search<'a> {
    source: &'a FiniteRing,
    target: &'a FiniteRing,
    program: Program,
    candidates: Vec<Vec<Coeffs>>,
    budget: u64,
    nodes: u64,
    found: Vec<RingHom>,
    first_only: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, images: &mut Vec<Coeffs>) -> Result<()> {
        if depth == self.program.gens.len() {
            let hom = RingHom::new(self.source, self.target, self.program.hom_images(self.target, images))?;
            if hom.is_isomorphism() {
                self.found.push(hom);
            }
            return Ok(());
        }
        for i in 0..self.candidates[depth].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            let y = self.candidates[depth][i].clone();
            if self.program.extend(self.target, images, depth, &y) {
                self.run(depth + 1, images)?;
                if self.first_only && !self.found.is_empty() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn search(source: &FiniteRing, target: &FiniteRing, budget: u64, first_only: bool) -> Result<Vec<RingHom>> {
    if source.order() != target.order() || source.characteristic() != target.characteristic() {
        return Ok(Vec::new());
    }
    if source.order() == 1 {
        return Ok(vec![RingHom::new(source, target, vec![Vec::new(); source.rank()])?]);
    }
    let src_elements: Vec<Coeffs> = source.elements()?.collect();
    let gens = generating_set(source, &src_elements);
    let program = Program::new(source, gens);
    let mut by_invariant: HashMap<ElementInvariant, Vec<Coeffs>> = HashMap::new();
    for y in target.elements()? {
        by_invariant.entry(element_invariant(target, &y)).or_default().push(y);
    }
    let candidates = program
        .gens
        .iter()
        .map(|g| by_invariant.get(&element_invariant(source, g)).cloned().unwrap_or_default())
        .collect();
    let mut s = Search { source, target, program, candidates, budget, nodes: 0, found: Vec::new(), first_only };
    let mut images = Vec::new();
    s.run(0, &mut images)?;
    debug_assert!(s.program.values.len() >= s.program.gens.len());
    Ok(s.found)
}

/// A certified isomorphism `source → target`, or `None` when none exists.
pub fn is_isomorphic(source: &FiniteRing, target: &FiniteRing, budget: u64) -> Result<Option<RingHom>> {
    if source.order() != target.order()
        || source.characteristic() != target.characteristic()
        || source.is_unital() != target.is_unital()
        || source.is_commutative() != target.is_commutative()
    {
        return Ok(None);
    }
    Ok(search(source, target, budget, true)?.into_iter().next())
}

/// Every automorphism, sorted by generator images.
pub fn automorphisms(ring: &FiniteRing, budget: u64) -> Result<Vec<RingHom>> {
    let mut all = search(ring, ring, budget, false)?;
    all.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, product, quotient, truncated_polynomial};
    use crate::subgroup::{ideal_generated, Side};
    use crate::wedderburn::matrix_ring;

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&cyclic(4), &truncated_polynomial(2, 2), DEFAULT_BUDGET).unwrap().is_none());
        let r = matrix_ring(2, 2).unwrap();
        assert!(is_isomorphic(&r, &r, DEFAULT_BUDGET).unwrap().unwrap().is_isomorphism());
        let p = product(&[cyclic(2), cyclic(3)]).unwrap().ring;
        assert!(is_isomorphic(&cyclic(6), &p, DEFAULT_BUDGET).unwrap().is_some());
        let z8 = cyclic(8);
        let (q, _) = quotient(&z8, &ideal_generated(&z8, &[vec![4]], Side::Two)).unwrap();
        assert!(is_isomorphic(&q, &cyclic(4), DEFAULT_BUDGET).unwrap().is_some());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(12), DEFAULT_BUDGET).unwrap().len(), 1);
        assert_eq!(automorphisms(&matrix_ring(1, 4).unwrap(), DEFAULT_BUDGET).unwrap().len(), 2);
        assert_eq!(automorphisms(&matrix_ring(2, 2).unwrap(), DEFAULT_BUDGET).unwrap().len(), 6);
        assert_eq!(automorphisms(&matrix_ring(1, 8).unwrap(), DEFAULT_BUDGET).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let r = matrix_ring(2, 2).unwrap();
        assert_eq!(automorphisms(&r, 1).unwrap_err(), Error::SearchBudgetExceeded(1));
    }
}
