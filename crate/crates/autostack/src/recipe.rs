//! Construction recipes.
//!
//! ```json
//! {"kind": "graph_product", "graph": {"n": 2, "edges": [[1, 2]]},
//!  "vertices": ["builtin:z", "builtin:z"]}
//!
//! {"kind": "extension", "K": "builtin:z2", "Q": "q.json",
//!  "hat": {"b": "B", "b^-1": "B^-1"},
//!  "conj": [["b", "a", "a b"], ...], "corr": [["b", "b", ""]]}
//!
//! {"kind": "finite_index", "H": "builtin:z", "S": ["g"],
//!  "table1": [["g^-1", "a^-1", "g"]], "table2": [["g", "g", "a", ""], ...]}
//! ```
//!
//! Graph vertices are numbered from 1. Structure references are
//! `builtin:<name>` or paths relative to the recipe file. In `S`, a
//! representative that is its own inverse is written `{"name": "t",
//! "involution": true}`. An empty coset representative (`""` or `"ε"`) stands
//! for the identity.

use std::collections::BTreeMap;
use std::path::Path;

use autostack_core::constructions::{extension, finite_index, graph_product, ExtensionData, GraphSpec, IndexData};
use autostack_core::stacking::StackingStructure;
use serde::{Deserialize, Serialize};

use crate::structure_file::{load_relative, read_json};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Representative {
    Name(String),
    Full {
        name: String,
        #[serde(default)]
        involution: bool,
    },
}

impl Representative {
    fn parts(&self) -> (&str, bool) {
        match self {
            Representative::Name(n) => (n, false),
            Representative::Full { name, involution } => (name, *involution),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    GraphProduct {
        graph: GraphDoc,
        vertices: Vec<String>,
    },
    Extension {
        #[serde(rename = "K")]
        k: String,
        #[serde(rename = "Q")]
        q: String,
        #[serde(default)]
        hat: BTreeMap<String, String>,
        conj: Vec<[String; 3]>,
        #[serde(default)]
        corr: Vec<[String; 3]>,
        #[serde(default)]
        relator_values: Vec<String>,
    },
    FiniteIndex {
        #[serde(rename = "H")]
        h: String,
        #[serde(rename = "S")]
        s: Vec<Representative>,
        #[serde(default)]
        table1: Vec<[String; 3]>,
        table2: Vec<[String; 4]>,
    },
}

impl Recipe {
    pub fn load(path: &Path) -> Result<Self> {
        read_json(path)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Recipe::GraphProduct { .. } => "graph_product",
            Recipe::Extension { .. } => "extension",
            Recipe::FiniteIndex { .. } => "finite_index",
        }
    }

    /// Run the construction; structure references are resolved against `base`.
    pub fn build(&self, base: &Path) -> Result<StackingStructure> {
        match self {
            Recipe::GraphProduct { graph, vertices } => {
                let mut edges = Vec::with_capacity(graph.edges.len());
                for &[i, j] in &graph.edges {
                    if i == 0 || j == 0 {
                        return Err(Error::format("graph vertices are numbered from 1"));
                    }
                    edges.push((i - 1, j - 1));
                }
                let spec = GraphSpec::new(graph.n, &edges)?;
                let inputs = vertices.iter().map(|v| load_relative(v, base)).collect::<Result<Vec<_>>>()?;
                Ok(graph_product(&spec, inputs)?.structure)
            }
            Recipe::Extension { k, q, hat, conj, corr, relator_values } => {
                let k = load_relative(k, base)?;
                let q = load_relative(q, base)?;
                let values = relator_values.iter().map(|w| k.alphabet().parse(w)).collect::<Result<Vec<_>, _>>()?;
                let hat_names = if hat.is_empty() {
                    None
                } else {
                    let names = q
                        .alphabet()
                        .names()
                        .iter()
                        .map(|b| {
                            hat.get(b).cloned().ok_or_else(|| Error::format(format!("`hat` has no entry for `{b}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(names)
                };
                let mut data = ExtensionData::new(k, q).with_relator_values(values);
                if let Some(names) = hat_names {
                    data = data.with_hat_names(names);
                }
                for [b, a, u] in conj {
                    data.set_conj(b, a, u)?;
                }
                for [b, z, u] in corr {
                    data.set_corr(b, z, u)?;
                }
                Ok(extension(data)?.structure)
            }
            Recipe::FiniteIndex { h, s, table1, table2 } => {
                let h = load_relative(h, base)?;
                let transversal: Vec<(&str, bool)> = s.iter().map(Representative::parts).collect();
                let mut data = IndexData::new(h, &transversal)?;
                for [x, u, t] in table1 {
                    data.set_table1(x, u, t)?;
                }
                for [x, y, u, t] in table2 {
                    data.set_table2(x, y, u, t)?;
                }
                Ok(finite_index(data)?.structure)
            }
        }
    }
}
