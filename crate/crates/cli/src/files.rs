//! JSON formats for graphs, models and duality outputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use zqspin::model::{clock_row, ising_row, potts_row};
use zqspin::{EdgeEnd, End, OrientedGraph, WeightTable};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<(usize, End)>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub head: usize,
    pub tail: usize,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<OrientedGraph, CliError> {
        let mut slots: Vec<Option<(usize, usize)>> = vec![None; self.edges.len()];
        for e in &self.edges {
            match slots.get_mut(e.id) {
                Some(slot @ None) => *slot = Some((e.head, e.tail)),
                Some(Some(_)) => return Err(CliError::Parse(format!("edge id {} appears twice", e.id))),
                None => {
                    return Err(CliError::Parse(format!(
                        "edge id {} out of range; ids must be 0..{}",
                        e.id,
                        self.edges.len()
                    )))
                }
            }
        }
        let pairs: Vec<(usize, usize)> = slots.into_iter().map(|s| s.expect("every id filled")).collect();
        let graph = OrientedGraph::new(self.n, &pairs).map_err(CliError::input)?;
        let Some(rotation) = &self.rotation else {
            return Ok(graph);
        };
        let mut per_vertex = vec![Vec::new(); self.n];
        for (key, ends) in rotation {
            let v: usize = key
                .parse()
                .map_err(|_| CliError::Parse(format!("rotation key {key:?} is not a vertex index")))?;
            let slot = per_vertex
                .get_mut(v)
                .ok_or_else(|| CliError::Parse(format!("rotation lists vertex {v} outside 0..{}", self.n)))?;
            *slot = ends.iter().map(|&(edge, end)| EdgeEnd::new(edge, end)).collect();
        }
        graph.with_rotation(per_vertex).map_err(CliError::input)
    }

    pub fn from_graph(g: &OrientedGraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeRecord { id, head: e.head, tail: e.tail })
            .collect();
        let rotation = g.rotation().map(|rot| {
            rot.iter()
                .enumerate()
                .map(|(v, ends)| (v.to_string(), ends.iter().map(|de| (de.edge, de.end)).collect()))
                .collect()
        });
        GraphFile { n: g.vertex_count(), edges, rotation }
    }
}

/// One edge of a model file: a named interaction, an energy row, or a fixed
/// (possibly complex) weight row.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeModel {
    Named {
        #[serde(rename = "type")]
        kind: Interaction,
        #[serde(rename = "J")]
        coupling: f64,
    },
    Table {
        table: Vec<f64>,
    },
    Weights {
        weights: Vec<(f64, f64)>,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interaction {
    Potts,
    Ising,
    Clock,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub edges: Vec<EdgeModel>,
}

enum Row {
    Energies(Vec<f64>),
    Weights(Vec<Complex64>),
}

/// A parsed model, ready to produce weight tables at any `β`.
pub struct Model {
    q: u32,
    default_beta: Option<f64>,
    rows: Vec<Row>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<Model, CliError> {
        let q = self.q;
        if q < 2 {
            return Err(CliError::Parse(format!("q = {q} must be at least 2")));
        }
        let rows = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, m)| {
                let row = match m {
                    EdgeModel::Named { kind: Interaction::Potts, coupling } => Row::Energies(potts_row(q, *coupling)),
                    EdgeModel::Named { kind: Interaction::Clock, coupling } => Row::Energies(clock_row(q, *coupling)),
                    EdgeModel::Named { kind: Interaction::Ising, coupling } => {
                        if q != 2 {
                            return Err(CliError::Parse(format!("edge {e}: ising needs q = 2, model has q = {q}")));
                        }
                        Row::Energies(ising_row(*coupling))
                    }
                    EdgeModel::Table { table } => Row::Energies(table.clone()),
                    EdgeModel::Weights { weights } => {
                        Row::Weights(weights.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
                    }
                };
                let len = match &row {
                    Row::Energies(r) => r.len(),
                    Row::Weights(r) => r.len(),
                };
                if len != q as usize {
                    return Err(CliError::Parse(format!("edge {e}: row of length {len}, q = {q}")));
                }
                Ok(row)
            })
            .collect::<Result<_, _>>()?;
        Ok(Model { q, default_beta: self.beta, rows })
    }

    pub fn from_weights(w: &WeightTable) -> Self {
        let edges = w
            .rows()
            .iter()
            .map(|row| EdgeModel::Weights { weights: row.iter().map(|z| (z.re, z.im)).collect() })
            .collect();
        ModelFile { q: w.q(), beta: None, edges }
    }
}

impl Model {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn edge_count(&self) -> usize {
        self.rows.len()
    }

    pub fn default_beta(&self) -> Option<f64> {
        self.default_beta
    }

    /// Whether any edge is given by energies, so that `β` matters.
    pub fn needs_beta(&self) -> bool {
        self.rows.iter().any(|r| matches!(r, Row::Energies(_)))
    }

    pub fn weights(&self, beta: Option<f64>) -> Result<WeightTable, CliError> {
        if self.needs_beta() {
            match beta {
                Some(b) if b.is_finite() && b > 0.0 => {}
                Some(b) => return Err(CliError::Parse(format!("beta = {b} must be finite and positive"))),
                None => return Err(CliError::Parse("model has energy rows; give beta in the model or with --beta".into())),
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|row| match row {
                Row::Energies(h) => {
                    let b = beta.expect("checked above");
                    h.iter().map(|&x| Complex64::new((-b * x).exp(), 0.0)).collect()
                }
                Row::Weights(w) => w.clone(),
            })
            .collect();
        WeightTable::new(self.q, rows).map_err(CliError::input)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
