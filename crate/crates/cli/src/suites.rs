//! Verification suites. Each suite is a list of independent cases; random
//! inputs come only from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finring::actions::{
    burnside_orbits, check_product_aut_structure, enumerate_orbits, orbit_count, product_aut_order,
};
use finring::arith::prime_power;
use finring::bounds::{check_vanishing_bounds, jordan_exponent, jordan_witness, w_poly_degree};
use finring::construct::{cyclic, unitalize};
use finring::iso::{automorphisms, DEFAULT_BUDGET};
use finring::profinite::{exhaustive_nonvanishing, nil_tower_report};
use finring::radical::{
    check_za_plus_a, jacobson_radical, largest_nilpotent_ideal, maximal_ideal_radical, nil_report, nil_report_ring,
};
use finring::tower::{check_sandwich_powers, z_tower};
use finring::wedderburn::{canonical_factors, decompose_semisimple, rebuild, Factor, FactorLine};
use finring::{Error, FiniteRing, Result, Subgroup, Verdict};

type Check = Box<dyn Fn() -> Result<Verdict> + Send + Sync>;

pub struct SuiteCase {
    pub id: String,
    pub run: Check,
}

fn case(id: impl Into<String>, f: impl Fn() -> Result<Verdict> + Send + Sync + 'static) -> SuiteCase {
    SuiteCase { id: id.into(), run: Box::new(f) }
}

pub const SUITES: [&str; 10] = [
    "radical-agreement",
    "decomposition-roundtrip",
    "free-nil-tower",
    "product-automorphisms",
    "w-polynomial-bounds",
    "radical-is-nil",
    "tower-machinery",
    "orbit-counts",
    "generic-nonvanishing",
    "unitalization",
];

/// Cases of `suite`, or of every suite for `all` with ids prefixed by suite.
pub fn cases(suite: &str, corpus: &[FiniteRing], seed: u64) -> Option<Vec<SuiteCase>> {
    if suite == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            for c in cases(s, corpus, seed)? {
                out.push(SuiteCase { id: format!("{s}/{}", c.id), run: c.run });
            }
        }
        return Some(out);
    }
    let out = match suite {
        "radical-agreement" => corpus.iter().map(|r| radical_agreement(r.clone())).collect(),
        "decomposition-roundtrip" => decomposition_roundtrip(corpus, seed),
        "free-nil-tower" => [(2u64, 4usize), (3, 2)].into_iter().map(|(p, n)| free_nil_tower(p, n)).collect(),
        "product-automorphisms" => product_automorphisms(),
        "w-polynomial-bounds" => w_polynomial_bounds(),
        "radical-is-nil" => corpus.iter().filter(|r| r.order() <= 128).map(|r| radical_is_nil(r.clone())).collect(),
        "tower-machinery" => corpus.iter().filter(|r| r.order() <= 81).map(|r| tower_machinery(r.clone())).collect(),
        "orbit-counts" => orbit_counts(),
        "generic-nonvanishing" => [(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)]
            .into_iter()
            .map(|(p, n)| case(format!("p{p}-n{n}"), move || Ok(exhaustive_nonvanishing(p, n)?.0)))
            .collect(),
        "unitalization" => corpus.iter().map(|r| unitalization(r.clone())).collect(),
        _ => return None,
    };
    Some(out)
}

fn radical_agreement(r: FiniteRing) -> SuiteCase {
    case(r.name().to_string(), move || {
        let phi = jacobson_radical(&r)?;
        let m = maximal_ideal_radical(&r);
        let mut named = vec![("maximal left ideals", m.via_left_ideals), ("cores", m.via_cores)];
        if r.order() <= 64 {
            named.push(("nilpotent ideals", largest_nilpotent_ideal(&r)?));
        }
        for (what, s) in named {
            if s != phi {
                return Ok(Verdict::Fail(format!(
                    "quasi-regular radical {:?} but {what} give {:?}",
                    phi.generators(),
                    s.generators()
                )));
            }
        }
        Ok(Verdict::Pass)
    })
}

/// Every `(k, q)` with `q^{k²} ≤ limit`.
fn classes(limit: u128) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for q in (2..=limit as u64).filter(|&q| prime_power(q).is_some()) {
        let mut k = 1;
        while (q as u128).pow((k * k) as u32) <= limit {
            out.push((k, q));
            k += 1;
        }
    }
    out
}

/// A random factor list whose product has order at most `limit`.
pub fn random_factors(rng: &mut ChaCha8Rng, limit: u128) -> Vec<Factor> {
    let mut budget = limit;
    let mut list = Vec::new();
    loop {
        let fits = classes(budget);
        if fits.is_empty() || (!list.is_empty() && rng.gen_bool(0.35)) {
            break;
        }
        let (k, q) = fits[rng.gen_range(0..fits.len())];
        budget /= (q as u128).pow((k * k) as u32);
        list.push(Factor::new(k, q, 1));
    }
    canonical_factors(&list)
}

fn decomposition_roundtrip(corpus: &[FiniteRing], seed: u64) -> Vec<SuiteCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<SuiteCase> = (0..50)
        .map(|i| {
            let factors = random_factors(&mut rng, 512);
            case(format!("random-{i:02}"), move || {
                let d = decompose_semisimple(&rebuild(&factors)?)?;
                Ok(Verdict::check(d.factors == factors, || {
                    format!("{} came back as {}", FactorLine(&factors), d.line())
                }))
            })
        })
        .collect();
    for r in corpus {
        let r = r.clone();
        out.push(case(format!("corpus-{}", r.name()), move || {
            let semisimple = jacobson_radical(&r)?.is_zero();
            match decompose_semisimple(&r) {
                Ok(d) => Ok(Verdict::check(semisimple && d.iso.is_isomorphism(), || {
                    format!("decomposed to {} although J != 0", d.line())
                })),
                Err(Error::NotSemisimple { .. }) if !semisimple => Ok(Verdict::Pass),
                Err(e) => Err(e),
            }
        }));
    }
    out
}

fn free_nil_tower(p: u64, levels: usize) -> SuiteCase {
    case(format!("p{p}-levels{levels}"), move || {
        let shadow = nil_tower_report(p, levels)?;
        let classes: Vec<Option<u32>> = shadow.rows.iter().map(|r| r.nilpotency_class).collect();
        let increasing = classes.windows(2).all(|w| w[0] < w[1]);
        Ok(Verdict::all([shadow.verdict, Verdict::check(increasing, || format!("classes {classes:?}"))]))
    })
}

fn product_automorphisms() -> Vec<SuiteCase> {
    let cases: [(&str, Vec<Factor>, u128); 5] = [
        ("f2xf2", vec![Factor::new(1, 2, 2)], 2),
        ("f2xf3", vec![Factor::new(1, 2, 1), Factor::new(1, 3, 1)], 1),
        ("m2_f2", vec![Factor::new(2, 2, 1)], 6),
        ("m2_f2-squared", vec![Factor::new(2, 2, 2)], 72),
        ("f4-squared", vec![Factor::new(1, 4, 2)], 8),
    ];
    cases
        .into_iter()
        .map(|(id, factors, expected)| {
            case(id, move || {
                let found = automorphisms(&rebuild(&factors)?, DEFAULT_BUDGET)?.len() as u128;
                let formula = product_aut_order(&factors, DEFAULT_BUDGET)?;
                Ok(Verdict::all([
                    Verdict::check(found == formula && formula == expected, || {
                        format!("search {found}, formula {formula}, expected {expected}")
                    }),
                    check_product_aut_structure(&factors, DEFAULT_BUDGET)?,
                ]))
            })
        })
        .collect()
}

fn w_polynomial_bounds() -> Vec<SuiteCase> {
    let mut out = Vec::new();
    for m in 2..=6u32 {
        out.push(case(format!("degree-m{m}"), move || {
            let d = w_poly_degree(m)?;
            let direct: u64 = (1..=m as u64).map(|i| (i + 1..=m as u64).sum::<u64>()).sum();
            Ok(Verdict::check(d == direct, || format!("degree {d}, pairwise sum {direct}")))
        }));
    }
    for m in 2..=4u32 {
        for k in 1..=2usize {
            for q in [2u64, 3] {
                out.push(case(format!("vanishing-m{m}-k{k}-q{q}"), move || check_vanishing_bounds(m, k, q)));
            }
        }
    }
    for m in 2..=3u32 {
        for k in (1..=6usize).filter(|&k| k as u64 > jordan_exponent(m)) {
            out.push(case(format!("jordan-m{m}-k{k}"), move || {
                Ok(Verdict::check(jordan_witness(m, k, 2)?, || format!("w_{m} kills the Jordan block of M_{k}(F_2)")))
            }));
        }
    }
    out
}

fn radical_is_nil(r: FiniteRing) -> SuiteCase {
    case(r.name().to_string(), move || {
        let j = jacobson_radical(&r)?;
        let rep = nil_report(&r, &j)?;
        Ok(Verdict::all([
            check_za_plus_a(&r)?,
            Verdict::check(rep.is_nil, || format!("J has the non-nilpotent element {:?}", rep.witness)),
        ]))
    })
}

fn tower_machinery(r: FiniteRing) -> SuiteCase {
    case(r.name().to_string(), move || {
        let rep = nil_report_ring(&r)?;
        let Some(n) = rep.nilexponent else {
            return Ok(Verdict::NotApplicable("not nil".into()));
        };
        let whole = Subgroup::whole(&r);
        let mut checks = vec![check_sandwich_powers(&r, &whole, &r.zero(), n)?];
        if rep.is_nilpotent {
            let tower = z_tower(&r, &whole, 1)?;
            checks.push(Verdict::check(tower.level(0).is_whole(), || {
                format!("Z_0 has order {}", tower.level(0).order())
            }));
        }
        Ok(Verdict::all(checks))
    })
}

fn orbit_counts() -> Vec<SuiteCase> {
    let mut out = Vec::new();
    for order in 1..=4u128 {
        for m in 1..=4usize {
            for n in 1..=2usize {
                out.push(case(format!("order{order}-m{m}-n{n}"), move || {
                    let b = burnside_orbits(order, m, n);
                    let e = enumerate_orbits(order, m, n)?;
                    Ok(Verdict::check(b == e, || format!("Burnside {b}, enumeration {e}")))
                }));
            }
        }
    }
    out.push(case("f2-m3-n1", || {
        let c = orbit_count(&cyclic(2), 3, 1)?.orbit_count;
        Ok(Verdict::check(c == 4u32.into(), || format!("{c} orbits")))
    }));
    out
}

fn unitalization(r: FiniteRing) -> SuiteCase {
    case(r.name().to_string(), move || {
        if r.is_unital() {
            return Ok(Verdict::NotApplicable("already unital".into()));
        }
        let c = r.characteristic();
        let (r1, emb) = unitalize(&r, c)?;
        let image = emb.image();
        Ok(Verdict::check(
            r1.is_unital()
                && emb.kernel().is_zero()
                && image.is_two_sided_ideal(&r1)
                && r1.order() == r.order() * c as u128,
            || format!("R_1 has order {} and unit {:?}", r1.order(), r1.unit()),
        ))
    })
}
