//! Poset JSON and Graphviz DOT.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

/// On-disk poset description. `relations` may be any generating set of
/// `[lower, upper]` pairs; closure and reduction happen on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub relations: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub as_lattice: bool,
}

impl PosetJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let relations: Vec<(&str, &str)> = self
            .relations
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let names: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        Poset::from_relations(&names, &relations)
    }

    /// Describes `poset` by its cover relations.
    pub fn from_poset(poset: &Poset) -> Self {
        PosetJson {
            elements: poset.labels().to_vec(),
            relations: poset
                .covers()
                .iter()
                .map(|&(a, b)| [poset.label(a).to_string(), poset.label(b).to_string()])
                .collect(),
            as_lattice: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain strings always serialize")
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    PosetJson::parse(text)?.to_poset()
}

/// Hasse diagram in DOT: one node per element, one edge per cover pointing
/// upward, and elements of equal height pinned to the same rank.
pub fn to_dot(poset: &Poset) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
    let heights = poset.heights();
    let levels = heights.iter().copied().max().map_or(0, |h| h + 1);
    for level in 0..levels {
        let members: Vec<String> = (0..poset.len())
            .filter(|&i| heights[i] == level)
            .map(|i| quote(poset.label(i)))
            .collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", members.join("; ")));
    }
    for &(a, b) in poset.covers() {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote(poset.label(a)),
            quote(poset.label(b))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_format() {
        let text = r#"{"elements": ["a","b","c"], "relations": [["a","c"],["b","c"]]}"#;
        let p = parse_poset(text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.covers(), &[(0, 2), (1, 2)]);
        assert!(!PosetJson::parse(text).unwrap().as_lattice);
    }

    #[test]
    fn emits_covers_in_key_order() {
        let p = Poset::from_relations(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(
            PosetJson::from_poset(&p).to_json(),
            r#"{"elements":["a","b","c"],"relations":[["a","b"],["b","c"]]}"#
        );
    }

    #[test]
    fn reports_bad_input() {
        assert!(matches!(parse_poset("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_poset(r#"{"elements":["a"],"relations":[["a","q"]]}"#),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let p = parse_poset(r#"{"elements":["a","b","c"],"relations":[["a","c"],["b","c"]]}"#).unwrap();
        let dot = to_dot(&p);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("{ rank=same; \"a\"; \"b\"; }"));
        assert!(dot.contains("\"a\" -> \"c\";"));
    }
}
