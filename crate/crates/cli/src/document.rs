//! On-disk formats: versioned TOML documents for graphs and certificates, and
//! the plain `u v` edge list.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use atlab::construct::{corona_orientation, product_orientation, ConstructionRecipe, RecipeKind};
use atlab::{Graph, Label, Orientation};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const GRAPH_FORMAT: &str = "at-lab-graph/1";
pub const CERTIFICATE_FORMAT: &str = "at-lab-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: Vec<String>,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.generator, self.params.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format: String,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph, provenance: Option<Provenance>) -> Self {
        GraphDocument {
            format: GRAPH_FORMAT.into(),
            labels: g.labels().iter().map(|l| l.to_string()).collect(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            provenance,
        }
    }

    pub fn to_graph(&self) -> Result<Graph, CliError> {
        if self.format != GRAPH_FORMAT {
            return Err(CliError::Parse(format!(
                "unsupported graph format {:?}, expected {GRAPH_FORMAT:?}",
                self.format
            )));
        }
        let labels = self
            .labels
            .iter()
            .map(|s| Label::from_str(s).map_err(CliError::from))
            .collect::<Result<Vec<_>, _>>()?;
        let edges = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Ok(Graph::new(labels, edges)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("graph documents always serialize")
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// Parses either a graph document or an edge list, one `u v` pair per line
/// with `#` comments. Edge-list vertices are `0..=max index`.
pub fn parse_graph_text(text: &str) -> Result<GraphDocument, CliError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.contains('=') || line.starts_with('[') => GraphDocument::from_toml(text),
        _ => {
            let pairs = parse_pairs(text)?;
            let n = pairs.iter().map(|&[u, v]| u.max(v) + 1).max().unwrap_or(0);
            let g = Graph::from_edges(n, pairs.iter().map(|&[u, v]| (u, v)).collect())?;
            Ok(GraphDocument::from_graph(&g, None))
        }
    }
}

/// `u v` pairs, one per line, `#` starting a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<[usize; 2]>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || CliError::Parse(format!("line {}: expected two indices, got {raw:?}", i + 1));
        if fields.len() != 2 {
            return Err(bad());
        }
        let u = fields[0].parse().map_err(|_| bad())?;
        let v = fields[1].parse().map_err(|_| bad())?;
        out.push([u, v]);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDocument {
    pub arcs: Vec<[usize; 2]>,
    pub graph: GraphDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeDocument {
    /// `product` or `corona`.
    pub kind: String,
    pub first: FactorDocument,
    pub second: FactorDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub format: String,
    pub level: usize,
    pub method: String,
    /// `|diff|` in decimal; absent when only nonzeroness is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
    pub arcs: Vec<[usize; 2]>,
    pub graph: GraphDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<RecipeDocument>,
}

fn arcs_of(d: &Orientation) -> Vec<[usize; 2]> {
    d.arcs().iter().map(|&(t, h)| [t, h]).collect()
}

fn orientation_of(g: Graph, arcs: &[[usize; 2]]) -> Result<Orientation, CliError> {
    let arcs: Vec<(usize, usize)> = arcs.iter().map(|&[t, h]| (t, h)).collect();
    Ok(Orientation::from_arcs(Arc::new(g), &arcs)?)
}

impl CertificateDocument {
    pub fn new(
        orientation: &Orientation,
        level: usize,
        method: &str,
        diff: Option<String>,
        provenance: Option<Provenance>,
    ) -> Self {
        CertificateDocument {
            format: CERTIFICATE_FORMAT.into(),
            level,
            method: method.into(),
            diff,
            arcs: arcs_of(orientation),
            graph: GraphDocument::from_graph(orientation.graph(), provenance),
            recipe: None,
        }
    }

    pub fn with_recipe(mut self, recipe: &ConstructionRecipe) -> Self {
        let factor = |d: &Orientation| FactorDocument {
            arcs: arcs_of(d),
            graph: GraphDocument::from_graph(d.graph(), None),
        };
        self.recipe = Some(RecipeDocument {
            kind: match recipe.kind {
                RecipeKind::Product => "product".into(),
                RecipeKind::Corona => "corona".into(),
            },
            first: factor(&recipe.first),
            second: factor(&recipe.second),
        });
        self
    }

    pub fn orientation(&self) -> Result<Orientation, CliError> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(CliError::Parse(format!(
                "unsupported certificate format {:?}, expected {CERTIFICATE_FORMAT:?}",
                self.format
            )));
        }
        orientation_of(self.graph.to_graph()?, &self.arcs)
    }

    /// Rebuilds the recipe from its factor orientations.
    pub fn recipe(&self) -> Result<Option<ConstructionRecipe>, CliError> {
        let Some(r) = &self.recipe else {
            return Ok(None);
        };
        let g1 = r.first.graph.to_graph()?;
        let g2 = r.second.graph.to_graph()?;
        let d1 = orientation_of(g1.clone(), &r.first.arcs)?;
        let d2 = orientation_of(g2.clone(), &r.second.arcs)?;
        let (_, recipe) = match r.kind.as_str() {
            "product" => product_orientation(&g1, &d1, &g2, &d2)?,
            "corona" => corona_orientation(&g1, &d1, &g2, &d2)?,
            other => return Err(CliError::Parse(format!("unknown recipe kind {other:?}"))),
        };
        Ok(Some(recipe))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("certificate documents always serialize")
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}
