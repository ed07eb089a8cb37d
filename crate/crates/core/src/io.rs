//! Line-oriented JSON algebra files.
//!
//! Each non-blank line is one document:
//! `{"name": "...", "dim": n, "basis": [...], "table": [[i, j, k, "c"], ...]}`
//! with 1-based indices and scalars written as `p`, `p/q` or `p/q+r/s i`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default)]
    pub basis: Option<Vec<String>>,
    pub table: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: Option<String>,
    pub algebra: Algebra,
}

impl AlgebraFile {
    pub fn from_algebra(name: Option<String>, alg: &Algebra) -> Self {
        AlgebraFile {
            name,
            dim: alg.dim(),
            basis: Some(alg.labels().to_vec()),
            table: alg
                .entries()
                .map(|(i, j, k, c)| (i + 1, j + 1, k + 1, c.to_string()))
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let n = self.dim;
        if let Some(b) = &self.basis {
            if b.len() != n {
                return Err(Error::Format(format!(
                    "basis has {} labels for dimension {n}",
                    b.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.table.len());
        for (i, j, k, c) in &self.table {
            for idx in [*i, *j, *k] {
                if idx == 0 || idx > n {
                    return Err(Error::Format(format!("index {idx} outside 1..={n}")));
                }
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(Error::Format(format!("duplicate entry ({i}, {j}, {k})")));
            }
            entries.push((i - 1, j - 1, k - 1, c.parse::<Scalar>()?));
        }
        Algebra::from_entries(n, self.basis.clone(), entries)
    }
}

pub fn parse_algebra_line(line: &str) -> Result<NamedAlgebra> {
    let file: AlgebraFile = serde_json::from_str(line).map_err(|e| Error::Format(e.to_string()))?;
    Ok(NamedAlgebra {
        algebra: file.to_algebra()?,
        name: file.name,
    })
}

/// Parses every non-blank line.
pub fn parse_algebras(text: &str) -> Result<Vec<NamedAlgebra>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(no, l)| {
            parse_algebra_line(l).map_err(|e| match e {
                Error::Format(m) => Error::Format(format!("line {}: {m}", no + 1)),
                other => other,
            })
        })
        .collect()
}

/// One JSON line, entries sorted by `(i, j, k)`.
pub fn serialize_algebra(name: Option<&str>, alg: &Algebra) -> String {
    serde_json::to_string(&AlgebraFile::from_algebra(name.map(str::to_string), alg))
        .expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let line =
            r#"{"name":"h","dim":3,"basis":["a","b","c"],"table":[[1,2,3,"1"],[2,1,3,"-1/2+i"]]}"#;
        let a = parse_algebra_line(line).unwrap();
        assert_eq!(a.name.as_deref(), Some("h"));
        assert_eq!(
            a.algebra.structure_constant(1, 0, 2),
            &"-1/2+i".parse::<Scalar>().unwrap()
        );
        let out = serialize_algebra(Some("h"), &a.algebra);
        assert_eq!(parse_algebra_line(&out).unwrap(), a);
    }

    #[test]
    fn rejects_bad_input() {
        let dup = r#"{"dim":2,"table":[[1,1,2,"1"],[1,1,2,"2"]]}"#;
        assert!(
            matches!(parse_algebra_line(dup), Err(Error::Format(m)) if m.contains("duplicate"))
        );
        let range = r#"{"dim":2,"table":[[1,3,2,"1"]]}"#;
        assert!(matches!(parse_algebra_line(range), Err(Error::Format(_))));
        let scalar = r#"{"dim":2,"table":[[1,1,2,"x"]]}"#;
        assert!(matches!(
            parse_algebra_line(scalar),
            Err(Error::ScalarParse(_))
        ));
        assert!(matches!(parse_algebras("{}\n"), Err(Error::Format(m)) if m.starts_with("line 1")));
    }
}
