//! Acceptance gate: one line per criterion, each with a pinned time limit.
//! Run with `cargo test --offline -p finring --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finring::actions::{
    burnside_orbits, check_product_aut_structure, enumerate_orbits, orbit_count, product_aut_order,
};
use finring::arith::prime_power;
use finring::bounds::{check_vanishing_bounds, jordan_exponent, jordan_witness, w_poly_degree};
use finring::construct::{cyclic, unitalize};
use finring::corpus::corpus;
use finring::iso::{automorphisms, DEFAULT_BUDGET};
use finring::profinite::{
    exhaustive_nonvanishing, generic_poly_nonvanishing, nil_tower_report, FreeNilSpec, Polynomial,
};
use finring::radical::{
    check_za_plus_a, jacobson_radical, largest_nilpotent_ideal, maximal_ideal_radical, nil_report, nil_report_ring,
};
use finring::tower::{check_sandwich_powers, z_tower};
use finring::wedderburn::{canonical_factors, decompose_semisimple, rebuild, Factor};
use finring::{Error, Result, Subgroup, Verdict};

const SEED: u64 = 0x5eed_2024;

fn first_fail(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    verdicts.into_iter().find(|v| !v.is_pass()).unwrap_or(Verdict::Pass)
}

fn radical_agreement() -> Result<Verdict> {
    let mut out = Vec::new();
    for r in corpus() {
        let phi = jacobson_radical(&r)?;
        let m = maximal_ideal_radical(&r);
        let mut agree = phi == m.via_left_ideals && phi == m.via_cores;
        if r.order() <= 64 {
            agree &= phi == largest_nilpotent_ideal(&r)?;
        }
        out.push(Verdict::check(agree, || format!("{}: radicals differ, phi = {:?}", r.name(), phi.generators())));
    }
    Ok(first_fail(out))
}

/// Every `(k, q)` with `q^{k²} ≤ limit`.
fn classes(limit: u128) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for q in 2..=limit as u64 {
        if prime_power(q).is_none() {
            continue;
        }
        let mut k = 1;
        while (q as u128).pow((k * k) as u32) <= limit {
            out.push((k, q));
            k += 1;
        }
    }
    out
}

fn random_factors(rng: &mut ChaCha8Rng, limit: u128) -> Vec<Factor> {
    let mut budget = limit;
    let mut list = Vec::new();
    loop {
        let fits: Vec<(usize, u64)> = classes(budget).into_iter().collect();
        if fits.is_empty() || (!list.is_empty() && rng.gen_bool(0.35)) {
            break;
        }
        let (k, q) = fits[rng.gen_range(0..fits.len())];
        budget /= (q as u128).pow((k * k) as u32);
        list.push(Factor::new(k, q, 1));
    }
    list
}

fn decomposition_roundtrip() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for case in 0..50 {
        let factors = canonical_factors(&random_factors(&mut rng, 512));
        let ring = rebuild(&factors)?;
        let d = decompose_semisimple(&ring)?;
        out.push(Verdict::check(d.factors == factors && ring.order() <= 512, || {
            format!("case {case}: {factors:?} came back as {}", d.line())
        }));
    }
    for r in corpus() {
        let j = jacobson_radical(&r)?;
        if !j.is_zero() {
            let rejected = matches!(decompose_semisimple(&r), Err(Error::NotSemisimple { .. }));
            out.push(Verdict::check(rejected, || format!("{} has J != 0 but was decomposed", r.name())));
        }
    }
    Ok(first_fail(out))
}

fn tower_shadow() -> Result<Verdict> {
    let mut out = Vec::new();
    for (p, levels) in [(2u64, 4usize), (3, 2)] {
        let shadow = nil_tower_report(p, levels)?;
        out.push(shadow.verdict.clone());
        let classes: Vec<u32> = shadow.rows.iter().map(|r| r.nilpotency_class.unwrap_or(0)).collect();
        let expected: Vec<u32> = (1..=levels as u32).map(|n| n * (p as u32 - 1) + 1).collect();
        out.push(Verdict::check(
            shadow.rows.iter().all(|r| r.nilexponent == Some(p as u32)) && classes == expected,
            || format!("p = {p}: rows {:?}", shadow.rows),
        ));
        out.push(Verdict::check(classes.windows(2).all(|w| w[0] < w[1]), || format!("p = {p}: classes {classes:?}")));
    }
    Ok(first_fail(out))
}

fn automorphism_counts() -> Result<Verdict> {
    let cases: [(&str, Vec<Factor>, u128); 5] = [
        ("F_2 x F_2", vec![Factor::new(1, 2, 2)], 2),
        ("F_2 x F_3", vec![Factor::new(1, 2, 1), Factor::new(1, 3, 1)], 1),
        ("M_2(F_2)", vec![Factor::new(2, 2, 1)], 6),
        ("M_2(F_2)^2", vec![Factor::new(2, 2, 2)], 72),
        ("F_4^2", vec![Factor::new(1, 4, 2)], 8),
    ];
    let mut out = Vec::new();
    for (name, factors, expected) in cases {
        let found = automorphisms(&rebuild(&factors)?, DEFAULT_BUDGET)?.len() as u128;
        let formula = product_aut_order(&factors, DEFAULT_BUDGET)?;
        out.push(Verdict::check(found == expected && formula == expected, || {
            format!("{name}: search {found}, formula {formula}, expected {expected}")
        }));
        out.push(check_product_aut_structure(&factors, DEFAULT_BUDGET)?);
    }
    let z6 = automorphisms(&cyclic(6), DEFAULT_BUDGET)?.len();
    out.push(Verdict::check(z6 == 1, || format!("Z/6 has {z6} automorphisms")));
    Ok(first_fail(out))
}

/// Degree of `∏_{1≤i<j≤m} (x^i - x^j)` by multiplying the polynomials out.
fn expanded_degree(m: u32) -> u64 {
    let mut poly: Vec<i128> = vec![1];
    for i in 1..=m as usize {
        for j in i + 1..=m as usize {
            let mut next = vec![0i128; poly.len() + j];
            for (d, &c) in poly.iter().enumerate() {
                next[d + i] += c;
                next[d + j] -= c;
            }
            poly = next;
        }
    }
    poly.iter().rposition(|&c| c != 0).unwrap() as u64
}

fn w_bounds() -> Result<Verdict> {
    let mut out = Vec::new();
    for m in 2..=6 {
        let d = w_poly_degree(m)?;
        out.push(Verdict::check(d == expanded_degree(m), || format!("m = {m}: degree {d}")));
    }
    for m in 2..=4 {
        for k in 1..=2 {
            for q in [2, 3] {
                out.push(check_vanishing_bounds(m, k, q)?);
            }
        }
    }
    for m in 2..=3 {
        for k in 1..=6 {
            if k as u64 > jordan_exponent(m) {
                let nonzero = jordan_witness(m, k, 2)?;
                out.push(Verdict::check(nonzero, || format!("w_{m} vanishes on the Jordan block in M_{k}(F_2)")));
            }
        }
    }
    Ok(first_fail(out))
}

fn radical_is_nil() -> Result<Verdict> {
    let mut out = Vec::new();
    for r in corpus().into_iter().filter(|r| r.order() <= 128) {
        out.push(check_za_plus_a(&r)?);
        let j = jacobson_radical(&r)?;
        let nil = nil_report(&r, &j)?.is_nil;
        out.push(Verdict::check(nil, || format!("{}: J is not nil", r.name())));
    }
    Ok(first_fail(out))
}

fn tower_machinery() -> Result<Verdict> {
    let mut out = Vec::new();
    let mut checked = 0;
    for r in corpus().into_iter().filter(|r| r.order() <= 81) {
        let rep = nil_report_ring(&r)?;
        if !rep.is_nil {
            continue;
        }
        checked += 1;
        let whole = Subgroup::whole(&r);
        let n = rep.nilexponent.expect("nil ring has a nilexponent");
        out.push(check_sandwich_powers(&r, &whole, &r.zero(), n)?);
        if rep.is_nilpotent {
            let tower = z_tower(&r, &whole, 1)?;
            out.push(Verdict::check(tower.level(0).is_whole(), || format!("{}: Z_0 is not R", r.name())));
        }
    }
    out.push(Verdict::check(checked >= 5, || format!("only {checked} nil corpus rings")));
    Ok(first_fail(out))
}

fn orbits() -> Result<Verdict> {
    let mut out = Vec::new();
    for order in 1..=4u128 {
        for m in 1..=4 {
            for n in 1..=2 {
                let b = burnside_orbits(order, m, n);
                let e = enumerate_orbits(order, m, n)?;
                out.push(Verdict::check(b == e, || format!("|R| = {order}, m = {m}, n = {n}: {b} vs {e}")));
            }
        }
    }
    let f2 = orbit_count(&cyclic(2), 3, 1)?.orbit_count;
    out.push(Verdict::check(f2 == 4u32.into(), || format!("orbit_count(F_2, 3, 1) = {f2}")));
    Ok(first_fail(out))
}

fn nonvanishing() -> Result<Verdict> {
    let mut out = Vec::new();
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let monos = FreeNilSpec::new(p, n)?.monomials();
        let total = p.pow(monos.len() as u32) - 1;
        let (v, count) = exhaustive_nonvanishing(p, n)?;
        out.push(v);
        out.push(Verdict::check(count == total, || format!("p = {p}, n = {n}: {count} of {total} polynomials")));
        // Each polynomial also through the evaluation path, on a stride for the larger case.
        let stride = if total > 1000 { 7 } else { 1 };
        for code in (1..=total).step_by(stride) {
            let mut c = code;
            let terms = monos.iter().map(|mono| {
                let k = c % p;
                c /= p;
                (mono.clone(), k)
            });
            let f = Polynomial::new(p, n, terms.collect::<Vec<_>>())?;
            out.push(generic_poly_nonvanishing(p, n, &f)?);
        }
    }
    Ok(first_fail(out))
}

fn unitalization() -> Result<Verdict> {
    let mut out = Vec::new();
    for r in corpus().into_iter().filter(|r| !r.is_unital()) {
        let c = r.characteristic();
        let (r1, emb) = unitalize(&r, c)?;
        let image = emb.image();
        out.push(Verdict::check(
            r1.is_unital()
                && emb.kernel().is_zero()
                && image.is_two_sided_ideal(&r1)
                && r1.order() / image.order() == c as u128
                && r1.order() == r.order() * c as u128,
            || format!("{}: R_1 of order {}", r.name(), r1.order()),
        ));
    }
    Ok(first_fail(out))
}

fn main() {
    type Check = fn() -> Result<Verdict>;
    let criteria: [(u32, &str, Check, u64); 10] = [
        (1, "radical-agreement", radical_agreement, 60),
        (2, "decomposition-roundtrip", decomposition_roundtrip, 120),
        (3, "free-nil-tower", tower_shadow, 30),
        (4, "product-automorphisms", automorphism_counts, 600),
        (5, "w-polynomial-bounds", w_bounds, 60),
        (6, "radical-is-nil", radical_is_nil, 30),
        (7, "tower-machinery", tower_machinery, 60),
        (8, "orbit-counts", orbits, 10),
        (9, "generic-nonvanishing", nonvanishing, 60),
        (10, "unitalization", unitalization, 10),
    ];
    let mut failed = Vec::new();
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let verdict = check().unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")));
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Verdict::Pass if elapsed > Duration::from_secs(limit) => {
                Verdict::Fail(format!("took {:.1} s, limit {limit} s", elapsed.as_secs_f64()))
            }
            v => v,
        };
        let status = if verdict.is_pass() { "PASS" } else { "FAIL" };
        let detail = verdict.detail().map(|d| format!(": {d}")).unwrap_or_default();
        println!("[{status}] criterion {id:>2} {name} ({} ms, limit {limit} s){detail}", elapsed.as_millis());
        if !verdict.is_pass() {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
