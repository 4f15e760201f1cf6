//! Hypergraph and certificate file formats.
//!
//! Text format: a header line `n r m` followed by `m` lines
//! `v1 v2 ... vr w`, vertices 1-based. Lines starting with `#` and blank
//! lines are ignored. The JSON mirror is
//! `{"n": .., "r": .., "edges": [[[v1, .., vr], w], ..]}` with an optional
//! `generator` record for randomly generated instances.
//!
//! Certificates are `{"k": .., "part_of": [..]}` with 1-based parts.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{PartitionCertificate, WeightedHypergraph};

/// Provenance of a randomly generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub generator: String,
    pub seed: u64,
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub r: usize,
    pub edges: Vec<(Vec<usize>, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
}

impl HypergraphJson {
    pub fn from_hypergraph(h: &WeightedHypergraph) -> Self {
        let edges = h
            .edges()
            .iter()
            .map(|e| (e.vertices.iter().map(|v| v + 1).collect(), e.weight))
            .collect();
        Self { n: h.n(), r: h.r(), edges, generator: None }
    }

    pub fn into_hypergraph(self) -> Result<WeightedHypergraph> {
        WeightedHypergraph::from_one_based(self.n, self.r, self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub k: usize,
    pub part_of: Vec<usize>,
}

impl From<&PartitionCertificate> for CertificateJson {
    fn from(c: &PartitionCertificate) -> Self {
        Self { k: c.k, part_of: c.part_of.iter().map(|p| p + 1).collect() }
    }
}

impl CertificateJson {
    pub fn into_certificate(self) -> Result<PartitionCertificate> {
        let mut part_of = Vec::with_capacity(self.part_of.len());
        for p in self.part_of {
            if p == 0 {
                return Err(Error::Config("part indices are 1-based; found 0".into()));
            }
            part_of.push(p - 1);
        }
        PartitionCertificate::new(self.k, part_of)
    }
}

pub fn parse_text(src: &str) -> Result<WeightedHypergraph> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header line `n r m`".into(),
    })?;
    let nums = parse_uints(header, hline)?;
    let [n, r, m] = nums[..] else {
        return Err(Error::Parse {
            line: hline,
            message: format!("header must be `n r m`, found {} fields", nums.len()),
        });
    };

    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line: lineno,
                message: format!("more than the declared {m} edge lines"),
            });
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != r + 1 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected {r} vertices and a weight, found {} fields", fields.len()),
            });
        }
        let vertices = parse_uints(&fields[..r].join(" "), lineno)?;
        let weight: f64 = fields[r].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("bad weight `{}`", fields[r]),
        })?;
        edges.push((vertices, weight));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: src.lines().count().max(1),
            message: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    WeightedHypergraph::from_one_based(n, r, edges)
}

fn parse_uints(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("expected a nonnegative integer, found `{t}`"),
            })
        })
        .collect()
}

pub fn to_text(h: &WeightedHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.r(), h.edges().len());
    for e in h.edges() {
        for v in &e.vertices {
            out.push_str(&(v + 1).to_string());
            out.push(' ');
        }
        out.push_str(&format!("{}\n", e.weight));
    }
    out
}

pub fn parse_json(src: &str) -> Result<WeightedHypergraph> {
    parse_json_record(src)?.into_hypergraph()
}

pub fn parse_json_record(src: &str) -> Result<HypergraphJson> {
    serde_json::from_str(src).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
}

pub fn to_json(h: &WeightedHypergraph, generator: Option<GeneratorInfo>) -> String {
    let mut rec = HypergraphJson::from_hypergraph(h);
    rec.generator = generator;
    serde_json::to_string_pretty(&rec).expect("hypergraph JSON serialization")
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_any(src: &str) -> Result<WeightedHypergraph> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn read_hypergraph(path: &Path) -> Result<WeightedHypergraph> {
    let src = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_any(&src)
}

/// Writes JSON when the path ends in `.json`, text otherwise.
pub fn write_hypergraph(
    path: &Path,
    h: &WeightedHypergraph,
    generator: Option<GeneratorInfo>,
) -> Result<()> {
    let body = if path.extension().is_some_and(|e| e == "json") {
        to_json(h, generator)
    } else {
        to_text(h)
    };
    fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_certificate(path: &Path) -> Result<PartitionCertificate> {
    let src = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let rec: CertificateJson = serde_json::from_str(&src)
        .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    rec.into_certificate()
}

pub fn certificate_to_json(c: &PartitionCertificate) -> String {
    serde_json::to_string(&CertificateJson::from(c)).expect("certificate JSON serialization")
}

pub fn write_certificate(path: &Path, c: &PartitionCertificate) -> Result<()> {
    fs::write(path, certificate_to_json(c)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const K3: &str = "# triangle\n3 2 3\n1 2 1\n1 3 1.0\n\n2 3 1e0\n";

    #[test]
    fn parses_text_with_comments() {
        let h = parse_text(K3).unwrap();
        assert_eq!((h.n(), h.r(), h.edges().len()), (3, 2, 3));
        assert_eq!(h.edges()[0].vertices, vec![0, 1]);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = parse_text("3 2 2\n1 2 1\n1 x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(matches!(parse_text("3 2 2\n1 2 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_text(""), Err(Error::Parse { line: 1, .. })));
        assert_eq!(parse_text("3 2 0\n"), Err(Error::EmptyOrZeroWeight));
    }

    #[test]
    fn text_and_json_round_trip() {
        let h = parse_text("4 3 2\n1 2 3 0.1\n2 3 4 -1.75\n").unwrap();
        assert_eq!(parse_text(&to_text(&h)).unwrap(), h);
        assert_eq!(parse_json(&to_json(&h, None)).unwrap(), h);
    }

    #[test]
    fn json_shape() {
        let h = parse_text(K3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&h, None)).unwrap();
        assert_eq!(v["edges"][0], serde_json::json!([[1, 2], 1.0]));
        assert!(v.get("generator").is_none());
        assert_eq!(parse_any(&to_json(&h, None)).unwrap(), h);
    }

    #[test]
    fn certificate_json_is_one_based() {
        let c = PartitionCertificate::new(2, vec![0, 1, 1]).unwrap();
        let s = certificate_to_json(&c);
        assert_eq!(s, r#"{"k":2,"part_of":[1,2,2]}"#);
        let back: CertificateJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_certificate().unwrap(), c);
    }
}
