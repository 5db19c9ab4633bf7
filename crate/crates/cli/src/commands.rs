use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use finring::actions::{automorphism_group, orbit_count};
use finring::bounds::size_bounds;
use finring::format::{dump_ring, dump_ring_json, parse_ring};
use finring::profinite::{check_system, free_nil_ring, truncation_map, InverseSystem, ShadowRow};
use finring::radical::{jacobson_radical, jacobson_radical_via_maximal_ideals, nil_report, nil_report_ring};
use finring::wedderburn::decompose_semisimple;
use finring::{Error, FiniteRing};

use crate::report::VerificationReport;
use crate::suites;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchBudgetExceeded(_) | Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

pub type CmdResult = std::result::Result<Output, Failure>;

pub struct Output {
    pub text: String,
    pub json: Value,
    /// A checked property failed; the witness is in the report.
    pub violation: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, violation: false }
    }
}

pub fn load_ring(path: &Path) -> std::result::Result<FiniteRing, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_ring(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn radical(ring: &FiniteRing) -> CmdResult {
    let j = jacobson_radical(ring)?;
    let (agree, disagreement) = match jacobson_radical_via_maximal_ideals(ring) {
        Ok(_) => (true, None),
        Err(Error::Disagreement(w)) => (false, Some(w)),
        Err(e) => return Err(e.into()),
    };
    let nil = nil_report(ring, &j)?;
    let mut text = format!("ring {} (order {})\n", ring.name(), ring.order());
    let _ = writeln!(text, "J(R): order {}, generators {:?}", j.order(), j.generators());
    let _ = writeln!(text, "semisimple: {}", yes(j.is_zero()));
    let _ = writeln!(text, "J nilexponent {}, nilpotency class {}", opt(nil.nilexponent), opt(nil.nilpotency_class));
    if let Some(w) = &disagreement {
        let _ = writeln!(text, "maximal ideal description disagrees: {w}");
    }
    let json = json!({
        "ring": ring.name(),
        "order": ring.order().to_string(),
        "radical": { "order": j.order().to_string(), "generators": j.generators() },
        "semisimple": j.is_zero(),
        "maximal_ideals_agree": agree,
        "witness": disagreement,
        "nil": nil,
    });
    Ok(Output { text, json, violation: !agree })
}

pub fn decompose(ring: &FiniteRing) -> CmdResult {
    let d = decompose_semisimple(ring)?;
    let line = d.line();
    let json = json!({ "ring": ring.name(), "factors": d.factors, "line": line });
    Ok(Output::ok(format!("{line}\n"), json))
}

pub fn nil(ring: &FiniteRing) -> CmdResult {
    let rep = nil_report_ring(ring)?;
    let mut text = format!("ring {}\n", ring.name());
    let _ = writeln!(text, "nil: {}", yes(rep.is_nil));
    let _ = writeln!(text, "nilexponent: {}", opt(rep.nilexponent));
    let _ = writeln!(text, "nilpotent: {}", yes(rep.is_nilpotent));
    let _ = writeln!(text, "nilpotency class: {}", opt(rep.nilpotency_class));
    let _ = writeln!(text, "null: {}", yes(rep.is_null));
    let _ = writeln!(text, "witness: {:?}", rep.witness);
    Ok(Output::ok(text, json!({ "ring": ring.name(), "report": rep })))
}

pub fn aut(ring: &FiniteRing, budget: u64) -> CmdResult {
    let g = automorphism_group(ring, budget)?;
    let closed = g.is_closed()?;
    let gens: Option<Vec<Vec<Vec<u64>>>> =
        g.generators.as_ref().map(|gs| gs.iter().map(|h| h.images().to_vec()).collect());
    let mut text = format!("ring {}\n|Aut| = {}\n", ring.name(), g.order());
    match &gens {
        Some(gs) => {
            let _ = writeln!(text, "{} generators (images of e_0 .. e_{})", gs.len(), ring.rank().saturating_sub(1));
            for images in gs {
                let _ = writeln!(text, "  {images:?}");
            }
        }
        None => text.push_str("group too large to extract generators\n"),
    }
    if !closed {
        text.push_str("automorphism set is not closed under composition\n");
    }
    let json = json!({ "ring": ring.name(), "order": g.order(), "generators": gens, "closed": closed });
    Ok(Output { text, json, violation: !closed })
}

pub fn orbits(ring: &FiniteRing, m: usize, n: usize) -> CmdResult {
    let rep = orbit_count(ring, m, n)?;
    let text = format!(
        "orbits of S_{m} on {m} x {n} arrays over {} (order {}): {} ({})\n",
        rep.ring, rep.order, rep.orbit_count, rep.method
    );
    Ok(Output::ok(text, serde_json::to_value(&rep).expect("report serializes")))
}

/// The ring `free_nil(p, g)`, or with `tower = K` the levels `g .. g+K-1`.
pub fn freenil(p: u64, g: usize, tower: Option<usize>, json_format: bool) -> CmdResult {
    let Some(k) = tower else {
        let ring = free_nil_ring(p, g)?;
        let json: Value = serde_json::from_str(&dump_ring_json(&ring)).expect("ring JSON parses");
        let text = if json_format { String::new() } else { dump_ring(&ring) };
        return Ok(Output::ok(text, json));
    };
    if k == 0 {
        return Err(Failure::Invalid("--tower needs at least one level".into()));
    }
    let levels = (g..g + k).map(|n| free_nil_ring(p, n)).collect::<finring::Result<Vec<_>>>()?;
    let maps = (g..g + k - 1).map(|n| truncation_map(p, n)).collect::<finring::Result<Vec<_>>>()?;
    let sys = InverseSystem { levels, maps, free_nil_prime: Some(p) };
    let verdict = check_system(&sys)?;
    let mut rows = Vec::new();
    for (i, ring) in sys.levels.iter().enumerate() {
        let rep = nil_report_ring(ring)?;
        rows.push(ShadowRow {
            level: g + i,
            order: ring.order(),
            nilexponent: rep.nilexponent,
            nilpotency_class: rep.nilpotency_class,
            radical_is_whole: jacobson_radical(ring)?.is_whole(),
        });
    }
    let mut text =
        format!("free nil tower p = {p}\n{:>5} {:>12} {:>11} {:>5}\n", "level", "order", "nilexponent", "class");
    for r in &rows {
        let _ =
            writeln!(text, "{:>5} {:>12} {:>11} {:>5}", r.level, r.order, opt(r.nilexponent), opt(r.nilpotency_class));
    }
    let _ = writeln!(text, "system: {verdict}");
    let json = json!({ "p": p, "rows": rows, "verdict": verdict });
    Ok(Output { text, json, violation: verdict.is_fail() })
}

pub fn bounds(m: u32, s: u128) -> CmdResult {
    let b = size_bounds(m, s)?;
    let text = format!(
        "m = {m}, s = {s}\ndeg w_m = {}\nk <= max({}, {}) = {}\n|F| <= {}\n",
        b.w_degree, b.k_index_branch, b.k_poly_branch, b.k_bound, b.f_bound
    );
    Ok(Output::ok(text, serde_json::to_value(b).expect("bounds serialize")))
}

/// Ring files `*.ring` in `dir`, sorted by file name.
pub fn load_corpus_dir(dir: &Path) -> std::result::Result<Vec<FiniteRing>, Failure> {
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ring"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_ring(p)).collect()
}

pub fn verify(suite: &str, corpus: &[FiniteRing], seed: u64, timing: bool) -> CmdResult {
    let cases = suites::cases(suite, corpus, seed).ok_or_else(|| {
        Failure::Invalid(format!("unknown suite `{suite}`; expected one of: all, {}", suites::SUITES.join(", ")))
    })?;
    let report = VerificationReport::run(suite, seed, cases, timing);
    let violation = report.summary.fail > 0;
    Ok(Output { text: report.text(), json: serde_json::to_value(&report).expect("report serializes"), violation })
}
