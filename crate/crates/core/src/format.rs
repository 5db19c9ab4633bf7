//! Ring definition files.
//!
//! ```text
//! ring z4
//! moduli 4
//! mul 0 0 : 1
//! ```
//!
//! One `mul i j : c_1 … c_r` line per nonzero generator product; omitted
//! pairs are zero. Constants may be any integers and are reduced on load.
//! Blank lines and `#` comments are ignored. The equivalent JSON form is
//! `{"name": …, "moduli": […], "mul": [{"i": …, "j": …, "c": […]}]}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::reduce_signed;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

#[derive(Serialize, Deserialize)]
struct JsonProduct {
    i: usize,
    j: usize,
    c: Vec<i128>,
}

#[derive(Serialize, Deserialize)]
struct JsonRing {
    name: String,
    moduli: Vec<u64>,
    #[serde(default)]
    mul: Vec<JsonProduct>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn number<T: std::str::FromStr>(lineno: usize, (col, tok): (usize, &str), what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(lineno, col, format!("expected {what}, found `{tok}`")))
}

fn build(name: String, moduli: Vec<u64>, products: BTreeMap<(usize, usize), Vec<i128>>) -> Result<FiniteRing> {
    let reduced = products.into_iter().map(|((i, j), c)| {
        let c = c.iter().zip(&moduli).map(|(&v, &d)| reduce_signed(v, d)).collect();
        (i, j, c)
    });
    FiniteRing::from_products(name, moduli.clone(), reduced.collect::<Vec<_>>())
}

fn parse_text(text: &str) -> Result<FiniteRing> {
    let mut name: Option<String> = None;
    let mut moduli: Option<Vec<u64>> = None;
    let mut products = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, head)) = toks.first() else { continue };
        match head {
            "ring" if name.is_none() => {
                if toks.len() != 2 {
                    return Err(parse_err(lineno, col, "expected `ring <name>`"));
                }
                name = Some(toks[1].1.to_string());
            }
            _ if name.is_none() => return Err(parse_err(lineno, col, "file must start with `ring <name>`")),
            "moduli" if moduli.is_none() => {
                let m = toks[1..].iter().map(|&t| number::<u64>(lineno, t, "a modulus")).collect::<Result<Vec<_>>>()?;
                if let Some(k) = m.iter().position(|&d| d < 2) {
                    return Err(parse_err(lineno, toks[k + 1].0, "moduli must be at least 2"));
                }
                moduli = Some(m);
            }
            _ if moduli.is_none() => return Err(parse_err(lineno, col, "expected `moduli d_1 ... d_r`")),
            "mul" => {
                let r = moduli.as_ref().map_or(0, Vec::len);
                if toks.len() != r + 4 || toks[3].1 != ":" {
                    return Err(parse_err(lineno, col, format!("expected `mul i j : c_1 ... c_{r}`")));
                }
                let i: usize = number(lineno, toks[1], "a generator index")?;
                let j: usize = number(lineno, toks[2], "a generator index")?;
                for (t, v) in [(toks[1], i), (toks[2], j)] {
                    if v >= r {
                        return Err(parse_err(lineno, t.0, format!("generator index {v} out of range for rank {r}")));
                    }
                }
                let c =
                    toks[4..].iter().map(|&t| number::<i128>(lineno, t, "an integer")).collect::<Result<Vec<_>>>()?;
                if products.insert((i, j), c).is_some() {
                    return Err(parse_err(lineno, col, format!("duplicate product for ({i}, {j})")));
                }
            }
            other => return Err(parse_err(lineno, col, format!("unexpected `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `ring <name>` line"))?;
    let moduli = moduli.ok_or_else(|| parse_err(last_line.max(1), 1, "missing `moduli` line"))?;
    build(name, moduli, products)
}

fn parse_json(text: &str) -> Result<FiniteRing> {
    let j: JsonRing = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let r = j.moduli.len();
    let mut products = BTreeMap::new();
    for p in j.mul {
        if p.i >= r || p.j >= r || p.c.len() != r {
            return Err(Error::BadShape(format!("product entry ({}, {}) does not fit rank {r}", p.i, p.j)));
        }
        if products.insert((p.i, p.j), p.c).is_some() {
            return Err(Error::BadShape(format!("duplicate product for ({}, {})", p.i, p.j)));
        }
    }
    build(j.name, j.moduli, products)
}

/// Parses either the text or the JSON form, validating every ring invariant.
pub fn parse_ring(text: &str) -> Result<FiniteRing> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn name_token(ring: &FiniteRing) -> String {
    let n: String = ring.name().chars().map(|c| if c.is_whitespace() || c == '#' { '_' } else { c }).collect();
    if n.is_empty() {
        "ring".into()
    } else {
        n
    }
}

/// Canonical text form: products sorted by `(i, j)`, zero products omitted.
pub fn dump_ring(ring: &FiniteRing) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", name_token(ring));
    out.push_str("moduli");
    for d in ring.moduli() {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    let r = ring.rank();
    for i in 0..r {
        for j in 0..r {
            let c = ring.generator_product(i, j);
            if c.iter().any(|&v| v != 0) {
                let _ = write!(out, "mul {i} {j} :");
                for v in c {
                    let _ = write!(out, " {v}");
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn dump_ring_json(ring: &FiniteRing) -> String {
    let r = ring.rank();
    let mul = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let c = ring.generator_product(i, j);
            c.iter().any(|&v| v != 0).then(|| JsonProduct { i, j, c: c.iter().map(|&v| v as i128).collect() })
        })
        .collect();
    let j = JsonRing { name: name_token(ring), moduli: ring.moduli().to_vec(), mul };
    serde_json::to_string_pretty(&j).expect("ring JSON serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, upper_triangular};

    #[test]
    fn round_trip() {
        let t = upper_triangular(3, 2, false);
        let text = dump_ring(&t);
        let back = parse_ring(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(dump_ring(&back), text);
        assert_eq!(parse_ring(&dump_ring_json(&t)).unwrap(), t);
    }

    #[test]
    fn canonicalizes() {
        let f = "# Z/4\nring z4\n\nmoduli 4\nmul 0 0 : -3\n";
        let r = parse_ring(f).unwrap();
        assert_eq!(r, cyclic(4));
        assert_eq!(dump_ring(&r), "ring z4\nmoduli 4\nmul 0 0 : 1\n");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_ring("ring x\nmoduli 4 z\n").unwrap_err(),
            Error::Parse { line: 2, column: 10, message: "expected a modulus, found `z`".into() }
        );
        assert!(matches!(parse_ring("ring x\nmoduli 1\n"), Err(Error::Parse { line: 2, column: 8, .. })));
        assert!(matches!(parse_ring("moduli 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_ring("ring x\nmoduli 2\nmul 0 1 : 1\n"), Err(Error::Parse { line: 3, column: 7, .. })));
        assert!(parse_ring("ring x\nmoduli 2 2\nmul 0 0 : 0 1\n").is_ok());
        assert!(matches!(
            parse_ring("ring x\nmoduli 2 2\nmul 0 0 : 0 1\nmul 1 0 : 1 0\n"),
            Err(Error::NonAssociative { .. })
        ));
        assert!(matches!(parse_ring("{\"name\": 3}"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn zero_ring() {
        let z = FiniteRing::zero_ring();
        let text = dump_ring(&z);
        assert_eq!(text, "ring 0\nmoduli\n");
        assert_eq!(parse_ring(&text).unwrap().order(), 1);
    }
}
