//! JSON documents holding one solution or one q-cycle set.
//!
//! Indices are 0-based. Solution tables are stored acting-subscript first:
//! `sigma[x][y] = σ_x(y)` and `tau[y][x] = τ_y(x)`. A q-cycle document uses
//! `dot[x][y] = x·y` and `colon[x][y] = x:y`. When `labels` is present the
//! labels are kept in sorted order and label `labels[i]` names index `i`;
//! table entries may then be written either as indices or as labels.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use ybe::qcycle::QCycleSet;
use ybe::{FiniteSolution, Tables};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Solution { sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>> },
    QCycle { dot: Vec<Vec<usize>>, colon: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionDocument {
    pub n: usize,
    pub labels: Option<Vec<String>>,
    pub body: Body,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Index(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: u64,
    #[serde(default)]
    kind: Option<String>,
    n: usize,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    sigma: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    tau: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    dot: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    colon: Option<Vec<Vec<Entry>>>,
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn resolve(
    name: &str,
    rows: Option<Vec<Vec<Entry>>>,
    n: usize,
    labels: Option<&[String]>,
) -> CliResult<Vec<Vec<usize>>> {
    let rows = rows.ok_or_else(|| malformed(format!("missing table `{name}`")))?;
    if rows.len() != n {
        return Err(malformed(format!("table `{name}` has {} rows, expected {n}", rows.len())));
    }
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(malformed(format!("row {i} of `{name}` has {} entries, expected {n}", row.len())));
            }
            row.into_iter()
                .enumerate()
                .map(|(j, e)| match e {
                    Entry::Index(v) if v < n => Ok(v),
                    Entry::Index(v) => Err(malformed(format!("`{name}`[{i}][{j}] = {v} is outside 0..{n}"))),
                    Entry::Label(l) => labels
                        .and_then(|ls| ls.iter().position(|x| *x == l))
                        .ok_or_else(|| malformed(format!("`{name}`[{i}][{j}] = \"{l}\" is not a known label"))),
                })
                .collect()
        })
        .collect()
}

impl SolutionDocument {
    pub fn solution(sol: &Tables, labels: Option<Vec<String>>) -> Self {
        SolutionDocument {
            n: sol.n(),
            labels,
            body: Body::Solution { sigma: sol.sigma_rows(), tau: sol.tau_rows() },
        }
    }

    pub fn qcycle(q: &QCycleSet, labels: Option<Vec<String>>) -> Self {
        SolutionDocument {
            n: q.n(),
            labels,
            body: Body::QCycle { dot: q.dot_rows(), colon: q.colon_rows() },
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if raw.format_version != FORMAT_VERSION {
            return Err(malformed(format!("unsupported format_version {}", raw.format_version)));
        }
        let n = raw.n;
        if n == 0 {
            return Err(malformed("n must be at least 1"));
        }
        if n > u8::MAX as usize {
            return Err(malformed(format!("n = {n} is larger than {}", u8::MAX)));
        }
        let labels = match raw.labels {
            None => None,
            Some(mut labels) => {
                if labels.len() != n {
                    return Err(malformed(format!("{} labels given for n = {n}", labels.len())));
                }
                if labels.iter().collect::<HashSet<_>>().len() != n {
                    return Err(malformed("labels must be distinct"));
                }
                labels.sort();
                Some(labels)
            }
        };
        let ls = labels.as_deref();
        let body = match raw.kind.as_deref().unwrap_or("solution") {
            "solution" => {
                if raw.dot.is_some() || raw.colon.is_some() {
                    return Err(malformed("a solution document has no `dot`/`colon` tables"));
                }
                Body::Solution { sigma: resolve("sigma", raw.sigma, n, ls)?, tau: resolve("tau", raw.tau, n, ls)? }
            }
            "qcycle" => {
                if raw.sigma.is_some() || raw.tau.is_some() {
                    return Err(malformed("a q-cycle document has no `sigma`/`tau` tables"));
                }
                Body::QCycle { dot: resolve("dot", raw.dot, n, ls)?, colon: resolve("colon", raw.colon, n, ls)? }
            }
            other => return Err(malformed(format!("unknown kind `{other}`"))),
        };
        Ok(SolutionDocument { n, labels, body })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    /// Pretty JSON with one table row per line.
    pub fn emit(&self) -> String {
        let rows = |rows: &[Vec<usize>]| {
            let lines: Vec<String> = rows.iter().map(|r| format!("    {}", serde_json::to_string(r).unwrap())).collect();
            format!("[\n{}\n  ]", lines.join(",\n"))
        };
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
        let (kind, a, b, ta, tb) = match &self.body {
            Body::Solution { sigma, tau } => ("solution", "sigma", "tau", sigma, tau),
            Body::QCycle { dot, colon } => ("qcycle", "dot", "colon", dot, colon),
        };
        let _ = writeln!(out, "  \"kind\": \"{kind}\",");
        let _ = writeln!(out, "  \"n\": {},", self.n);
        if let Some(labels) = &self.labels {
            let _ = writeln!(out, "  \"labels\": {},", serde_json::to_string(labels).unwrap());
        }
        let _ = writeln!(out, "  \"{a}\": {},", rows(ta));
        let _ = writeln!(out, "  \"{b}\": {}", rows(tb));
        out.push_str("}\n");
        out
    }

    /// Solution tables without checking the braid relation.
    pub fn tables(&self) -> CliResult<Tables> {
        match &self.body {
            Body::Solution { sigma, tau } => Ok(Tables::from_rows(sigma, tau)?),
            Body::QCycle { .. } => Ok(ybe::qcycle::to_solution(&self.to_qcycle()?)?.into_tables()),
        }
    }

    pub fn to_qcycle(&self) -> CliResult<QCycleSet> {
        match &self.body {
            Body::QCycle { dot, colon } => Ok(QCycleSet::from_rows(dot, colon)?),
            Body::Solution { .. } => Ok(ybe::qcycle::from_solution(&self.tables()?)?),
        }
    }

    pub fn to_solution(&self) -> CliResult<FiniteSolution> {
        Ok(FiniteSolution::new(self.tables()?)?)
    }

    pub fn is_qcycle(&self) -> bool {
        matches!(self.body, Body::QCycle { .. })
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labelled(&self, xs: &[usize]) -> String {
        let parts: Vec<String> = xs.iter().map(|&x| self.label(x)).collect();
        format!("({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXM1: &str = r#"{
        "format_version": 1, "n": 3, "labels": ["a", "b", "c"],
        "sigma": [["a","b","c"],["a","b","c"],["a","b","c"]],
        "tau": [["b","c","c"],[1,2,2],[2,2,2]]
    }"#;

    #[test]
    fn labels_resolve_to_indices() {
        let d = SolutionDocument::parse(EXM1).unwrap();
        let Body::Solution { tau, .. } = &d.body else { panic!() };
        assert_eq!(tau[0], vec![1, 2, 2]);
        assert_eq!(d.labelled(&[0, 2]), "(a, c)");
    }

    #[test]
    fn labels_are_sorted() {
        let d = SolutionDocument::parse(r#"{"format_version":1,"n":2,"labels":["y","x"],"sigma":[["x","y"],[0,1]],"tau":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(d.labels, Some(vec!["x".to_string(), "y".to_string()]));
    }

    #[test]
    fn emit_round_trips() {
        let d = SolutionDocument::parse(EXM1).unwrap();
        assert_eq!(SolutionDocument::parse(&d.emit()).unwrap(), d);
    }

    #[test]
    fn shape_and_range_errors() {
        let bad = [
            r#"{"format_version":1,"n":2,"sigma":[[0,1]],"tau":[[0,1],[0,1]]}"#,
            r#"{"format_version":1,"n":2,"sigma":[[0,2],[0,1]],"tau":[[0,1],[0,1]]}"#,
            r#"{"format_version":1,"n":2,"sigma":[[0,1],[0,1]]}"#,
            r#"{"format_version":2,"n":1,"sigma":[[0]],"tau":[[0]]}"#,
            r#"{"format_version":1,"n":2,"labels":["a","a"],"sigma":[[0,1],[0,1]],"tau":[[0,1],[0,1]]}"#,
            r#"{"format_version":1,"n":1,"kind":"qcycle","sigma":[[0]],"tau":[[0]]}"#,
        ];
        for text in bad {
            assert!(matches!(SolutionDocument::parse(text), Err(CliError::Malformed(_))), "{text}");
        }
        assert!(matches!(SolutionDocument::parse("{"), Err(CliError::Parse(_))));
        assert!(matches!(SolutionDocument::parse(r#"{"format_version":1,"n":1,"extra":0}"#), Err(CliError::Parse(_))));
    }
}
