//! Quiver files and command-line vectors.
//!
//! Text form, one `key: value` per line, `#` starts a comment:
//!
//! ```text
//! vertices: 1, 2, 3
//! edges: 1->2, 2->3
//! framing1: 1=1, 3=2
//! ```
//!
//! `edges:` lines accumulate. The same data is accepted as a JSON document
//! `{"vertices": [...], "edges": [[s, t], ...], "framing1": {"1": 1}}`.

use std::collections::BTreeMap;
use std::path::Path;

use qcanon_core::crystal::VertexOrder;
use qcanon_core::quiver::{Quiver, QuiverError, WeightVector};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON quiver: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("invalid vector {0:?}")]
    Vector(String),
    #[error("vertex order {0:?} is not a permutation of the vertices")]
    Order(String),
}

/// A parsed quiver file: the quiver and any framings it declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub quiver: Quiver,
    pub framing1: Option<WeightVector>,
    pub framing2: Option<WeightVector>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Name {
    Str(String),
    Int(i64),
}

impl Name {
    fn into_string(self) -> String {
        match self {
            Name::Str(s) => s,
            Name::Int(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonQuiver {
    vertices: Vec<Name>,
    #[serde(default)]
    edges: Vec<(Name, Name)>,
    framing1: Option<BTreeMap<String, i64>>,
    framing2: Option<BTreeMap<String, i64>>,
}

struct Raw {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    framing1: Option<Vec<(String, i64)>>,
    framing2: Option<Vec<(String, i64)>>,
}

impl Raw {
    fn build(self) -> Result<QuiverFile, FormatError> {
        let names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
        let quiver = Quiver::from_named(&names, &edges)?;
        let framing = |f: Option<Vec<(String, i64)>>| -> Result<Option<WeightVector>, FormatError> {
            let Some(f) = f else { return Ok(None) };
            let mut w = WeightVector::zero(quiver.len());
            for (name, x) in f {
                let i = quiver.index_of(&name)?;
                if x < 0 {
                    return Err(QuiverError::NegativeFraming { vertex: name }.into());
                }
                w.0[i] = x;
            }
            Ok(Some(w))
        };
        let framing1 = framing(self.framing1)?;
        let framing2 = framing(self.framing2)?;
        Ok(QuiverFile { quiver, framing1, framing2 })
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn parse_text(src: &str) -> Result<QuiverFile, FormatError> {
    let mut raw = Raw { vertices: Vec::new(), edges: Vec::new(), framing1: None, framing2: None };
    let mut seen_vertices = false;
    for (k, line) in src.lines().enumerate() {
        let line_no = k + 1;
        let err = |msg: String| FormatError::Syntax { line: line_no, msg };
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        match key.trim() {
            "vertices" => {
                if seen_vertices {
                    return Err(err("vertices declared twice".into()));
                }
                seen_vertices = true;
                raw.vertices = split_list(value).map(String::from).collect();
            }
            "edges" => {
                for e in split_list(value) {
                    let (s, t) = e.split_once("->").ok_or_else(|| err(format!("edge {e:?} is not `s->t`")))?;
                    raw.edges.push((s.trim().to_string(), t.trim().to_string()));
                }
            }
            key @ ("framing1" | "framing2") => {
                let mut f = Vec::new();
                for e in split_list(value) {
                    let (name, x) = e.split_once('=').ok_or_else(|| err(format!("framing entry {e:?} is not `vertex=n`")))?;
                    let x: i64 = x.trim().parse().map_err(|_| err(format!("framing entry {e:?} is not an integer")))?;
                    f.push((name.trim().to_string(), x));
                }
                let slot = if key == "framing1" { &mut raw.framing1 } else { &mut raw.framing2 };
                slot.get_or_insert_with(Vec::new).extend(f);
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    if !seen_vertices {
        return Err(FormatError::Syntax { line: 0, msg: "missing `vertices:` line".into() });
    }
    raw.build()
}

fn parse_json(src: &str) -> Result<QuiverFile, FormatError> {
    let j: JsonQuiver = serde_json::from_str(src)?;
    let raw = Raw {
        vertices: j.vertices.into_iter().map(Name::into_string).collect(),
        edges: j.edges.into_iter().map(|(s, t)| (s.into_string(), t.into_string())).collect(),
        framing1: j.framing1.map(|m| m.into_iter().collect()),
        framing2: j.framing2.map(|m| m.into_iter().collect()),
    };
    raw.build()
}

/// Parses either format; a document starting with `{` is read as JSON.
pub fn parse_quiver(src: &str) -> Result<QuiverFile, FormatError> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn read_quiver(path: &Path) -> Result<QuiverFile, FormatError> {
    let src = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_quiver(&src)
}

/// Renders the text form.
pub fn write_quiver(f: &QuiverFile) -> String {
    let q = &f.quiver;
    let mut out = format!("vertices: {}\n", q.names().join(", "));
    if !q.arrows().is_empty() {
        let edges: Vec<String> = q.arrows().iter().map(|&(s, t)| format!("{}->{}", q.name(s), q.name(t))).collect();
        out += &format!("edges: {}\n", edges.join(", "));
    }
    for (key, w) in [("framing1", &f.framing1), ("framing2", &f.framing2)] {
        if let Some(w) = w {
            let entries: Vec<String> = w.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| format!("{}={}", q.name(i), x)).collect();
            out += &format!("{key}: {}\n", entries.join(", "));
        }
    }
    out
}

/// `"1,2"`, `"(1, 2)"`, `"[1 2]"` all give `[1, 2]`.
pub fn parse_vector(s: &str) -> Result<Vec<i64>, FormatError> {
    let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<i64>().map_err(|_| FormatError::Vector(s.to_string())))
        .collect()
}

/// A comma- or `<`-separated list of vertex names, smallest first.
pub fn parse_order(q: &Quiver, s: &str) -> Result<VertexOrder, FormatError> {
    let seq = s
        .split([',', '<'])
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|name| q.index_of(name))
        .collect::<Result<Vec<_>, _>>()?;
    if seq.len() != q.len() {
        return Err(FormatError::Order(s.to_string()));
    }
    VertexOrder::new(seq).ok_or_else(|| FormatError::Order(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let t = parse_quiver("# Kronecker\nvertices: a, b\nedges: a->b\nedges: a -> b\nframing1: b=2\n").unwrap();
        let j = parse_quiver(r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "b"]], "framing1": {"b": 2}}"#).unwrap();
        assert_eq!(t, j);
        assert_eq!(t.quiver.cartan().get(0, 1), -2);
        assert_eq!(t.framing1, Some(WeightVector(vec![0, 2])));
        assert_eq!(parse_quiver(&write_quiver(&t)).unwrap(), t);
        let n = parse_quiver(r#"{"vertices": [1, 2], "edges": [[1, 2]]}"#).unwrap();
        assert_eq!(n.quiver, Quiver::linear(2));
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_quiver("vertices: 1, 2\nedges: 1->2, 2->1"), Err(FormatError::Quiver(QuiverError::Cycle(_)))));
        assert!(matches!(parse_quiver("vertices: 1\nedges: 1->1"), Err(FormatError::Quiver(QuiverError::Loop(_)))));
        assert!(matches!(parse_quiver("vertices: 1\nedge: 1->2"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_quiver("edges: 1->2"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_quiver("vertices: 1\nframing1: 1=-1"), Err(FormatError::Quiver(QuiverError::NegativeFraming { .. }))));
        assert!(parse_quiver("{\"vertices\": [1], \"arrows\": []}").is_err());
    }

    #[test]
    fn vectors_and_orders() {
        assert_eq!(parse_vector("(1, 2)").unwrap(), vec![1, 2]);
        assert_eq!(parse_vector("3").unwrap(), vec![3]);
        assert_eq!(parse_vector("[0 -1]").unwrap(), vec![0, -1]);
        assert!(parse_vector("1,x").is_err());
        let q = Quiver::linear(3);
        assert_eq!(parse_order(&q, "3<1<2").unwrap().vertices(), &[2, 0, 1]);
        assert!(parse_order(&q, "1,2").is_err());
        assert!(parse_order(&q, "1,1,2").is_err());
    }
}
