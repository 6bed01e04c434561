//! Cone file ingestion.
//!
//! Text grammar, one item per line:
//!
//! ```text
//! file    := line*
//! line    := ws* (item ws*)? ("#" any*)?
//! item    := "label" ws+ text      (optional, before `dim`, at most once)
//!          | "dim" ws+ uint        (exactly once, before any ray)
//!          | int (ws+ int)*        (one ray, exactly `dim` integers)
//! ```
//!
//! Blank and comment-only lines are ignored. Integers are decimal with an
//! optional leading `-` or `+`. The JSON form is `{"dim": n, "rays": [[..]],
//! "label": ".."}` with `label` optional.

use std::fmt::Write as _;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use toric_ustp::{make_cone, Cone};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct ConeFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub label: Option<String>,
    /// Source line of each ray, when parsed from text.
    #[serde(skip)]
    pub lines: Vec<usize>,
}

impl ConeFile {
    pub fn parse_text(src: &str) -> Result<ConeFile, CliError> {
        let mut dim = None;
        let mut label = None;
        let mut rays = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| CliError::Parse { line: line_no, message };
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or("");
            match head {
                "label" => {
                    if dim.is_some() {
                        return Err(bad("label must come before dim".into()));
                    }
                    if label.is_some() {
                        return Err(bad("duplicate label".into()));
                    }
                    let text = line["label".len()..].trim();
                    if text.is_empty() {
                        return Err(bad("empty label".into()));
                    }
                    label = Some(text.to_string());
                }
                "dim" => {
                    if dim.is_some() {
                        return Err(bad("duplicate dim line".into()));
                    }
                    let n: usize = match (words.next(), words.next()) {
                        (Some(w), None) => w.parse().map_err(|_| bad(format!("bad dimension '{w}'")))?,
                        _ => return Err(bad("expected 'dim <n>'".into())),
                    };
                    if n == 0 {
                        return Err(bad("dimension must be positive".into()));
                    }
                    dim = Some(n);
                }
                _ => {
                    let Some(n) = dim else {
                        return Err(bad("ray before 'dim' line".into()));
                    };
                    let ray = line
                        .split_whitespace()
                        .map(|w| w.parse::<i64>().map_err(|_| bad(format!("bad integer '{w}'"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if ray.len() != n {
                        return Err(bad(format!("ray has {} coordinates, expected {n}", ray.len())));
                    }
                    rays.push(ray);
                    lines.push(line_no);
                }
            }
        }
        let Some(dim) = dim else {
            return Err(CliError::Parse {
                line: src.lines().count().max(1),
                message: "missing 'dim' line".into(),
            });
        };
        Ok(ConeFile { dim, rays, label, lines })
    }

    pub fn parse_json(src: &str) -> Result<ConeFile, CliError> {
        let file: ConeFile = serde_json::from_str(src).map_err(|e| CliError::Json(e.to_string()))?;
        if file.dim == 0 {
            return Err(CliError::Json("dimension must be positive".into()));
        }
        if let Some(i) = file.rays.iter().position(|r| r.len() != file.dim) {
            return Err(CliError::Json(format!(
                "ray {i} has {} coordinates, expected {}",
                file.rays[i].len(),
                file.dim
            )));
        }
        Ok(file)
    }

    /// Validate through `make_cone`, naming the offending ray on failure.
    pub fn to_cone(&self) -> Result<Cone, CliError> {
        if self.rays.is_empty() {
            return Err(CliError::Invalid("cone file lists no rays".into()));
        }
        make_cone(&self.rays, self.dim).map_err(|e| {
            let ray = match e {
                toric_ustp::Error::CoordinateOutOfRange { ray, .. } => Some(ray),
                toric_ustp::Error::ZeroVector => self.rays.iter().position(|r| r.iter().all(|&x| x == 0)),
                _ => None,
            };
            match ray {
                Some(i) => CliError::Invalid(format!("{} {}: {e}", self.ray_name(i), fmt_ray(&self.rays[i]))),
                None => CliError::Core(e),
            }
        })
    }

    fn ray_name(&self, i: usize) -> String {
        match self.lines.get(i) {
            Some(line) => format!("ray {i} (line {line})"),
            None => format!("ray {i}"),
        }
    }
}

pub fn fmt_ray(r: &[i64]) -> String {
    let parts: Vec<String> = r.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Canonical text of a validated cone; it parses back to the same cone.
pub fn canonical_text(cone: &Cone) -> String {
    let mut s = format!("dim {}\n", cone.dim());
    for r in cone.rays() {
        let parts: Vec<String> = r.coords().iter().map(i64::to_string).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

/// SHA-256 of the canonical text, so that equivalent files share a digest.
pub fn digest(cone: &Cone) -> String {
    format!("sha256:{:x}", Sha256::digest(canonical_text(cone).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_grammar() {
        let f = ConeFile::parse_text("# A_1\nlabel  A1 cone \n\ndim 2\n 1 0 # first\n1 +2\n").unwrap();
        assert_eq!(f.dim, 2);
        assert_eq!(f.label.as_deref(), Some("A1 cone"));
        assert_eq!(f.rays, vec![vec![1, 0], vec![1, 2]]);
        assert_eq!(f.lines, vec![5, 6]);
    }

    #[test]
    fn text_errors_carry_lines() {
        let cases = [
            ("1 0\n", 1),
            ("dim 2\n1 0 0\n", 2),
            ("dim 2\ndim 2\n", 2),
            ("dim x\n", 1),
            ("dim 2\n1 a\n", 2),
            ("dim 2\nlabel late\n", 2),
            ("dim 0\n", 1),
            ("dim 2\n99999999999999999999 0\n", 2),
            ("", 1),
        ];
        for (src, line) in cases {
            match ConeFile::parse_text(src) {
                Err(CliError::Parse { line: l, .. }) => assert_eq!(l, line, "{src:?}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn json_form() {
        let f = ConeFile::parse_json(r#"{"dim": 2, "rays": [[1, 0], [1, 2]], "label": "A1"}"#).unwrap();
        assert_eq!(f.rays, vec![vec![1, 0], vec![1, 2]]);
        assert!(ConeFile::parse_json(r#"{"dim": 2, "rays": [[1]]}"#).is_err());
        assert!(ConeFile::parse_json("[").is_err());
    }

    #[test]
    fn validation_names_the_ray() {
        let f = ConeFile::parse_text("dim 2\n1 0\n0 0\n").unwrap();
        let msg = f.to_cone().unwrap_err().to_string();
        assert!(msg.contains("ray 1 (line 3)"), "{msg}");
    }

    #[test]
    fn digest_ignores_presentation() {
        let a = ConeFile::parse_text("dim 2\n1 2\n2 0\n").unwrap().to_cone().unwrap();
        let b = ConeFile::parse_text("label x\ndim 2\n1 0\n1 2\n1 2\n").unwrap().to_cone().unwrap();
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(canonical_text(&a), "dim 2\n1 0\n1 2\n");
    }
}
