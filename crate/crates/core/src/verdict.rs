use std::fmt;

use serde::Serialize;

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The property failed; the string is a reproducible counterexample.
    Fail(String),
    /// Hypotheses of the property do not hold for this input.
    NotApplicable(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    /// `pass`, `fail` or `skip`.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::NotApplicable(_) => "skip",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(s) | Verdict::NotApplicable(s) => Some(s),
        }
    }

    /// Pass unless `cond` is false, in which case fail with the lazily built witness.
    pub fn check(cond: bool, witness: impl FnOnce() -> String) -> Verdict {
        if cond {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }

    /// Combines verdicts: the first failure wins, then the first skip.
    pub fn all<I: IntoIterator<Item = Verdict>>(items: I) -> Verdict {
        let mut skip = None;
        for v in items {
            match v {
                Verdict::Fail(_) => return v,
                Verdict::NotApplicable(_) if skip.is_none() => skip = Some(v),
                _ => {}
            }
        }
        skip.unwrap_or(Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.detail() {
            Some(d) => write!(f, "{}: {d}", self.label()),
            None => f.write_str(self.label()),
        }
    }
}
