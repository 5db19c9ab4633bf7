//! Finite levels of inverse systems, in particular the free commutative nil
//! rings `F_p[x_0, …, x_{n-1}]^+ / (x_i^p)` and their truncation tower.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::radical::{jacobson_radical, nil_report_ring};
use crate::ring::{Coeffs, FiniteRing};
use crate::subgroup::Subgroup;
use crate::verdict::Verdict;

/// Parameters of a free nil level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FreeNilSpec {
    pub p: u64,
    pub gens: usize,
}

impl FreeNilSpec {
    pub fn new(p: u64, gens: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if gens == 0 {
            return Err(Error::PreconditionFailed("a free nil ring needs at least one generator".into()));
        }
        Ok(FreeNilSpec { p, gens })
    }

    /// Exponent vectors of the basis monomials, degree ascending and then
    /// lexicographically descending, so `x_0, x_1, …` come first.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let p = self.p as u32;
        let n = self.gens;
        let total = (self.p as usize).pow(n as u32);
        let mut out: Vec<Vec<u32>> = (1..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let e = (code % p as usize) as u32;
                        code /= p as usize;
                        e
                    })
                    .collect()
            })
            .collect();
        out.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        out
    }

    pub fn name(&self) -> String {
        format!("freenil_p{}_g{}", self.p, self.gens)
    }

    /// Nilpotency class `n(p-1) + 1`.
    pub fn expected_class(&self) -> u32 {
        self.gens as u32 * (self.p as u32 - 1) + 1
    }
}

fn monomial_index(monos: &[Vec<u32>]) -> HashMap<Vec<u32>, usize> {
    monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// The free commutative nil ring of nilexponent `p` on `n` generators.
pub fn free_nil_ring(p: u64, n: usize) -> Result<FiniteRing> {
    let spec = FreeNilSpec::new(p, n)?;
    let monos = spec.monomials();
    let index = monomial_index(&monos);
    let r = monos.len();
    let mut prods = Vec::new();
    for (i, a) in monos.iter().enumerate() {
        for (j, b) in monos.iter().enumerate() {
            let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if c.iter().all(|&e| (e as u64) < p) {
                let mut v = vec![0; r];
                v[index[&c]] = 1;
                prods.push((i, j, v));
            }
        }
    }
    FiniteRing::from_products(spec.name(), vec![p; r], prods)
}

/// Index of the generator `x_i` in a free nil ring built by [`free_nil_ring`].
pub fn generator(ring: &FiniteRing, i: usize) -> Coeffs {
    ring.basis(i)
}

/// A finite tower `levels[0] ↞ levels[1] ↞ …` with `maps[i] : levels[i+1] → levels[i]`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    pub levels: Vec<FiniteRing>,
    pub maps: Vec<RingHom>,
    /// Set for free nil towers, where nilexponent and class are known exactly.
    pub free_nil_prime: Option<u64>,
}

/// The map `free_nil(p, n+1) → free_nil(p, n)` killing `x_n`.
pub fn truncation_map(p: u64, n: usize) -> Result<RingHom> {
    let big = FreeNilSpec::new(p, n + 1)?;
    let small = FreeNilSpec::new(p, n)?;
    let source = free_nil_ring(p, n + 1)?;
    let target = free_nil_ring(p, n)?;
    let index = monomial_index(&small.monomials());
    let images = big
        .monomials()
        .iter()
        .map(|m| {
            let mut v = target.zero();
            if m[n] == 0 {
                v[index[&m[..n]]] = 1;
            }
            v
        })
        .collect();
    RingHom::new(&source, &target, images)
}

pub fn free_nil_system(p: u64, levels: usize) -> Result<InverseSystem> {
    if levels == 0 {
        return Err(Error::PreconditionFailed("a tower needs at least one level".into()));
    }
    let rings = (1..=levels).map(|n| free_nil_ring(p, n)).collect::<Result<Vec<_>>>()?;
    let maps = (1..levels).map(|n| truncation_map(p, n)).collect::<Result<Vec<_>>>()?;
    Ok(InverseSystem { levels: rings, maps, free_nil_prime: Some(p) })
}

/// Certifies the connecting maps and the level-wise invariants.
///
/// Every system must have surjective homomorphisms matching consecutive
/// levels, and images of radicals must be radicals. Nilexponent and
/// nilpotency class can only grow along the tower; for free nil towers the
/// nilexponent is constant and the class strictly increasing.
pub fn check_system(sys: &InverseSystem) -> Result<Verdict> {
    if sys.maps.len() + 1 != sys.levels.len() {
        return Ok(Verdict::Fail(format!("{} levels but {} maps", sys.levels.len(), sys.maps.len())));
    }
    for (i, f) in sys.maps.iter().enumerate() {
        if f.source() != &sys.levels[i + 1] || f.target() != &sys.levels[i] {
            return Ok(Verdict::Fail(format!("map {i} does not connect levels {} and {i}", i + 1)));
        }
        let flags = f.flags();
        if !f.is_homomorphism() || !flags.surjective {
            let bad =
                (0..f.source().rank()).flat_map(|a| (0..f.source().rank()).map(move |b| (a, b))).find(|&(a, b)| {
                    let s = f.source();
                    f.target().mul(&f.images()[a], &f.images()[b]) != f.apply(s.generator_product(a, b))
                });
            return Ok(Verdict::Fail(format!(
                "map {i}: flags {flags:?}, first multiplicative violation at generator pair {bad:?}"
            )));
        }
    }
    let reports = sys.levels.iter().map(nil_report_ring).collect::<Result<Vec<_>>>()?;
    for (i, f) in sys.maps.iter().enumerate() {
        let upper = jacobson_radical(&sys.levels[i + 1])?;
        let image = Subgroup::generated(f.target(), &upper.generators().iter().map(|g| f.apply(g)).collect::<Vec<_>>());
        if image != jacobson_radical(&sys.levels[i])? {
            return Ok(Verdict::Fail(format!("map {i} does not carry the radical onto the radical")));
        }
        let (lo, hi) = (&reports[i], &reports[i + 1]);
        let grows = |a: Option<u32>, b: Option<u32>| match (a, b) {
            (Some(x), Some(y)) => x <= y,
            (_, None) => true,
            (None, Some(_)) => false,
        };
        if !grows(lo.nilexponent, hi.nilexponent) || !grows(lo.nilpotency_class, hi.nilpotency_class) {
            return Ok(Verdict::Fail(format!("level {} has larger invariants than level {}", i, i + 1)));
        }
        if sys.free_nil_prime.is_some()
            && (lo.nilexponent != hi.nilexponent || lo.nilpotency_class >= hi.nilpotency_class)
        {
            return Ok(Verdict::Fail(format!(
                "free nil levels {i},{}: nilexponents {:?},{:?}, classes {:?},{:?}",
                i + 1,
                lo.nilexponent,
                hi.nilexponent,
                lo.nilpotency_class,
                hi.nilpotency_class
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// A polynomial over `F_p` in commuting variables, as exponent vector → coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub p: u64,
    pub nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl Polynomial {
    pub fn new<I>(p: u64, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, u64)>,
    {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::BadShape(format!("exponent vector {e:?} for {nvars} variables")));
            }
            let slot = map.entry(e).or_insert(0);
            *slot = (*slot + c) % p;
        }
        map.retain(|_, c| *c != 0);
        Ok(Polynomial { p, nvars, terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in variable `var`.
    pub fn partial_degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Evaluates at the given points; constant terms are rejected.
    pub fn evaluate(&self, ring: &FiniteRing, points: &[Coeffs]) -> Result<Coeffs> {
        if points.len() != self.nvars {
            return Err(Error::BadShape(format!("{} points for {} variables", points.len(), self.nvars)));
        }
        let mut acc = ring.zero();
        for (e, c) in self.terms() {
            let mut term: Option<Coeffs> = None;
            for (x, &k) in points.iter().zip(e) {
                if k > 0 {
                    let pw = ring.pow(x, k);
                    term = Some(match term {
                        Some(t) => ring.mul(&t, &pw),
                        None => pw,
                    });
                }
            }
            let Some(t) = term else { return Err(Error::ConstantTerm) };
            ring.add_assign(&mut acc, &ring.scale(&t, c as i128));
        }
        Ok(acc)
    }
}

/// Checks that `f(x_0, …, x_{n-1}) ≠ 0` in `free_nil(p, n)`.
pub fn generic_poly_nonvanishing(p: u64, n: usize, f: &Polynomial) -> Result<Verdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if f.p != p || f.nvars != n {
        return Err(Error::BadShape("polynomial does not match the ring".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for var in 0..n {
        let degree = f.partial_degree(var);
        if degree as u64 >= p {
            return Err(Error::BadDegree { var, degree, p });
        }
    }
    if f.terms.contains_key(&vec![0; n]) {
        return Err(Error::ConstantTerm);
    }
    let ring = free_nil_ring(p, n)?;
    let gens: Vec<Coeffs> = (0..n).map(|i| generator(&ring, i)).collect();
    let value = f.evaluate(&ring, &gens)?;
    Ok(Verdict::check(!ring.is_zero(&value), || format!("{f:?} vanishes at the generators")))
}

/// Runs [`generic_poly_nonvanishing`] on every nonzero reduced polynomial
/// without constant term; returns the verdict and the number of polynomials.
pub fn exhaustive_nonvanishing(p: u64, n: usize) -> Result<(Verdict, u64)> {
    let spec = FreeNilSpec::new(p, n)?;
    let monos = spec.monomials();
    let count = (p as u128).pow(monos.len() as u32);
    if count > 1 << 24 {
        return Err(Error::TooLarge(count));
    }
    let ring = free_nil_ring(p, n)?;
    let gens: Vec<Coeffs> = (0..n).map(|i| generator(&ring, i)).collect();
    // Values of the monomials at the generators, each computed by multiplication.
    let values: Vec<Coeffs> = monos
        .iter()
        .map(|m| Polynomial::new(p, n, [(m.clone(), 1)]).and_then(|f| f.evaluate(&ring, &gens)))
        .collect::<Result<_>>()?;
    let mut checked = 0u64;
    for code in 1..count as u64 {
        let mut c = code;
        let mut acc = ring.zero();
        for v in &values {
            let k = c % p;
            c /= p;
            if k != 0 {
                ring.add_assign(&mut acc, &ring.scale(v, k as i128));
            }
        }
        checked += 1;
        if ring.is_zero(&acc) {
            return Ok((Verdict::Fail(format!("coefficient code {code} vanishes")), checked));
        }
    }
    Ok((Verdict::Pass, checked))
}

/// One level of the free nil tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowRow {
    pub level: usize,
    pub order: u128,
    pub nilexponent: Option<u32>,
    pub nilpotency_class: Option<u32>,
    pub radical_is_whole: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilTowerReport {
    pub p: u64,
    pub rows: Vec<ShadowRow>,
    pub verdict: Verdict,
}

/// Tabulates nilexponent (constant `p`) against class (`n(p-1)+1`) along the tower.
pub fn nil_tower_report(p: u64, levels: usize) -> Result<NilTowerReport> {
    let sys = free_nil_system(p, levels)?;
    let mut rows = Vec::new();
    for (i, ring) in sys.levels.iter().enumerate() {
        let rep = nil_report_ring(ring)?;
        rows.push(ShadowRow {
            level: i + 1,
            order: ring.order(),
            nilexponent: rep.nilexponent,
            nilpotency_class: rep.nilpotency_class,
            radical_is_whole: jacobson_radical(ring)?.is_whole(),
        });
    }
    let mut checks = vec![check_system(&sys)?];
    for row in &rows {
        let spec = FreeNilSpec::new(p, row.level)?;
        checks.push(Verdict::check(
            row.nilexponent == Some(p as u32)
                && row.nilpotency_class == Some(spec.expected_class())
                && row.radical_is_whole,
            || format!("level {}: {row:?}", row.level),
        ));
    }
    Ok(NilTowerReport { p, rows, verdict: Verdict::all(checks) })
}
