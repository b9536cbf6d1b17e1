//! Line-oriented instance files.
//!
//! ```text
//! corner n=1
//! name = tenth
//! epsilon = 1/10
//! f = 1/2
//! q: 11/20
//! q: 3/5
//! ```
//!
//! `#` starts a comment. Entries are exact rationals separated by spaces or
//! commas.

use std::fmt;

use crate::corner::CornerRelaxation;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub epsilon: Option<Rational>,
    pub relaxation: CornerRelaxation,
}

impl InstanceFile {
    pub fn new(relaxation: CornerRelaxation) -> Self {
        InstanceFile {
            name: None,
            epsilon: None,
            relaxation,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse(format!("line {line}: {msg}"));
        let mut n = None;
        let mut name = None;
        let mut epsilon = None;
        let mut f = None;
        let mut r_cols = Vec::new();
        let mut q_cols = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if n.is_none() {
                let dim = line
                    .strip_prefix("corner")
                    .map(str::trim)
                    .and_then(|rest| rest.strip_prefix("n="))
                    .ok_or_else(|| err(lineno, format!("expected header 'corner n=<int>', got '{line}'")))?;
                let dim: usize = dim
                    .trim()
                    .parse()
                    .map_err(|_| err(lineno, format!("bad dimension '{dim}'")))?;
                n = Some(dim);
                continue;
            }
            if let Some(rest) = line.strip_prefix("r:") {
                r_cols.push(RationalVector::parse(rest).map_err(|e| err(lineno, e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("q:") {
                q_cols.push(RationalVector::parse(rest).map_err(|e| err(lineno, e.to_string()))?);
            } else if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "f" if f.is_none() => f = Some(RationalVector::parse(value).map_err(|e| err(lineno, e.to_string()))?),
                    "name" if name.is_none() => {
                        if value.is_empty() {
                            return Err(err(lineno, "empty name".into()));
                        }
                        name = Some(value.to_string());
                    }
                    "epsilon" if epsilon.is_none() => {
                        epsilon = Some(parse_rational(value).map_err(|e| err(lineno, e.to_string()))?)
                    }
                    k @ ("f" | "name" | "epsilon") => return Err(err(lineno, format!("duplicate '{k}'"))),
                    k => return Err(err(lineno, format!("unknown key '{k}'"))),
                }
            } else {
                return Err(err(lineno, format!("unrecognized line '{line}'")));
            }
        }

        let n = n.ok_or_else(|| Error::Parse("missing 'corner n=<int>' header".into()))?;
        let f = f.ok_or_else(|| Error::Parse("missing 'f = ...' line".into()))?;
        f.check_dim(n)?;
        let relaxation = CornerRelaxation::new(f, r_cols, q_cols)?;
        Ok(InstanceFile {
            name,
            epsilon,
            relaxation,
        })
    }
}

/// Canonical form: header, metadata, `f`, then `r:` and `q:` lines in order,
/// every rational in lowest terms.
impl fmt::Display for InstanceFile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = &self.relaxation;
        writeln!(out, "corner n={}", rel.dim())?;
        if let Some(name) = &self.name {
            writeln!(out, "name = {name}")?;
        }
        if let Some(eps) = &self.epsilon {
            writeln!(out, "epsilon = {eps}")?;
        }
        writeln!(out, "f = {}", rel.f())?;
        for r in rel.r_cols() {
            writeln!(out, "r: {r}")?;
        }
        for q in rel.q_cols() {
            writeln!(out, "q: {q}")?;
        }
        Ok(())
    }
}
