//! DOT, GraphML and JSON renderings of a graph.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{GraphMode, Invariants, NsGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::GraphMl),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::Parse(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub label: String,
    pub order: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    #[serde(rename = "schema-version")]
    pub schema_version: u32,
    pub mode: GraphMode,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[usize; 2]>,
    pub invariants: Invariants,
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl NsGraph {
    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            schema_version: crate::SCHEMA_VERSION,
            mode: self.mode,
            vertices: (0..self.vertex_count())
                .map(|p| VertexDoc {
                    id: self.vertices[p],
                    label: self.labels[p].clone(),
                    order: self.orders[p],
                    degree: self.adj[p].count_ones(..),
                })
                .collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            invariants: self.invariants(),
        }
    }

    /// Rebuilds a graph from its JSON document. Only adjacency, labels and
    /// the recorded invariants are restored.
    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let vertices: Vec<usize> = doc.vertices.iter().map(|v| v.id).collect();
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("vertex ids must be strictly increasing".into()));
        }
        let n = vertices.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &[a, b] in &doc.edges {
            let pa = vertices
                .binary_search(&a)
                .map_err(|_| Error::Parse(format!("unknown vertex {a}")))?;
            let pb = vertices
                .binary_search(&b)
                .map_err(|_| Error::Parse(format!("unknown vertex {b}")))?;
            if pa == pb {
                return Err(Error::Parse(format!("loop at vertex {a}")));
            }
            adj[pa].insert(pb);
            adj[pb].insert(pa);
        }
        Ok(NsGraph {
            mode: doc.mode,
            labels: doc.vertices.iter().map(|v| v.label.clone()).collect(),
            orders: doc.vertices.iter().map(|v| v.order).collect(),
            classes: vec![0; n],
            hint: Vec::new(),
            vertices,
            adj,
            invariants: std::sync::Mutex::new(doc.invariants.clone()),
        })
    }

    pub fn render(&self, format: ExportFormat) -> Result<String> {
        let name = match self.mode {
            GraphMode::Full => "S_G",
            GraphMode::Induced => "S_G_hat",
        };
        let mut out = String::new();
        match format {
            ExportFormat::Dot => {
                writeln!(out, "graph {name} {{").unwrap();
                for p in 0..self.vertex_count() {
                    writeln!(
                        out,
                        "  {} [label=\"{}|{}\"];",
                        self.vertices[p], self.labels[p], self.orders[p]
                    )
                    .unwrap();
                }
                for (a, b) in self.edges() {
                    writeln!(out, "  {a} -- {b};").unwrap();
                }
                out.push_str("}\n");
            }
            ExportFormat::GraphMl => {
                out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
                out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
                out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
                out.push_str("  <key id=\"order\" for=\"node\" attr.name=\"order\" attr.type=\"int\"/>\n");
                out.push_str("  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n");
                writeln!(out, "  <graph id=\"{name}\" edgedefault=\"undirected\">").unwrap();
                for p in 0..self.vertex_count() {
                    writeln!(
                        out,
                        "    <node id=\"n{}\"><data key=\"label\">{}</data><data key=\"order\">{}</data><data key=\"degree\">{}</data></node>",
                        self.vertices[p],
                        xml_escape(&self.labels[p]),
                        self.orders[p],
                        self.adj[p].count_ones(..)
                    )
                    .unwrap();
                }
                for (a, b) in self.edges() {
                    writeln!(out, "    <edge source=\"n{a}\" target=\"n{b}\"/>").unwrap();
                }
                out.push_str("  </graph>\n</graphml>\n");
            }
            ExportFormat::Json => {
                out = serde_json::to_string_pretty(&self.to_document())?;
                out.push('\n');
            }
        }
        Ok(out)
    }

    pub fn export(&self, format: ExportFormat, path: &Path) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_documents() {
        let g = NsGraph::from_edges(0, &[]).unwrap();
        assert_eq!(g.render(ExportFormat::Dot).unwrap(), "graph S_G {\n}\n");
        let xml = g.render(ExportFormat::GraphMl).unwrap();
        assert!(xml.contains("<graph id=\"S_G\" edgedefault=\"undirected\">"));
        assert!(!xml.contains("<node"));
        let doc: GraphDocument = serde_json::from_str(&g.render(ExportFormat::Json).unwrap()).unwrap();
        assert!(doc.vertices.is_empty() && doc.edges.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = NsGraph::from_edges(5, &[(0, 1), (1, 2), (3, 4), (0, 4)]).unwrap();
        g.is_regular();
        let text = g.render(ExportFormat::Json).unwrap();
        let back = NsGraph::from_document(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.invariants(), g.invariants());
        assert_eq!(back.render(ExportFormat::Json).unwrap(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let mut doc = NsGraph::from_edges(2, &[(0, 1)]).unwrap().to_document();
        doc.edges.push([0, 7]);
        assert!(NsGraph::from_document(&doc).is_err());
    }

    #[test]
    fn unwritable_path() {
        let g = NsGraph::from_edges(1, &[]).unwrap();
        let err = g.export(ExportFormat::Dot, Path::new("/nonexistent-dir/x/g.dot"));
        assert!(matches!(err, Err(Error::Io(_))));
    }

    #[test]
    fn format_names() {
        assert_eq!("graphml".parse::<ExportFormat>().unwrap(), ExportFormat::GraphMl);
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
