use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use finring::Verdict;

use crate::suites::SuiteCase;

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    /// `pass`, `fail` or `skip`.
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Runs the cases in parallel; the report is sorted by case id. Elapsed
    /// times are recorded only when `timing` is set so that reports are
    /// byte-identical across runs otherwise.
    pub fn run(suite: &str, seed: u64, cases: Vec<SuiteCase>, timing: bool) -> Self {
        let mut results: Vec<CaseResult> = cases
            .into_par_iter()
            .map(|case| {
                let start = Instant::now();
                let verdict = (case.run)().unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")));
                let ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
                CaseResult { id: case.id, verdict: verdict.label(), witness: verdict.detail().map(str::to_string), ms }
            })
            .collect();
        results.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for r in &results {
            match r.verdict {
                "pass" => summary.pass += 1,
                "fail" => summary.fail += 1,
                _ => summary.skip += 1,
            }
        }
        VerificationReport { suite: suite.to_string(), seed, cases: results, summary }
    }

    pub fn text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.cases {
            let _ = write!(out, "{:<4}  {}", c.verdict, c.id);
            if c.ms > 0 {
                let _ = write!(out, "  {} ms", c.ms);
            }
            if let Some(w) = &c.witness {
                let _ = write!(out, "  {w}");
            }
            out.push('\n');
        }
        let s = self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skip);
        out
    }
}
