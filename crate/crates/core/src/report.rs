//! Extraction results, the asserted-bound ledger, and the JSON run report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};
use crate::graph::{DegreeStats, Graph, VertexSet};

/// Version of the [`RunReport`] JSON layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
}

/// One asserted inequality: `achieved <relation> threshold`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub relation: Relation,
    pub threshold: f64,
    /// `null` in JSON when not finite (an undefined ratio).
    pub achieved: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn at_least(name: &str, achieved: f64, threshold: f64) -> Self {
        Self::new(
            name,
            Relation::AtLeast,
            achieved,
            threshold,
            achieved >= threshold,
        )
    }

    pub fn at_most(name: &str, achieved: f64, threshold: f64) -> Self {
        Self::new(
            name,
            Relation::AtMost,
            achieved,
            threshold,
            achieved <= threshold,
        )
    }

    pub fn below(name: &str, achieved: f64, threshold: f64) -> Self {
        Self::new(
            name,
            Relation::Below,
            achieved,
            threshold,
            achieved < threshold,
        )
    }

    pub fn at_least_exact(name: &str, achieved: &Rational, threshold: &Rational) -> Self {
        Self::new(
            name,
            Relation::AtLeast,
            to_f64(achieved),
            to_f64(threshold),
            achieved >= threshold,
        )
    }

    pub fn at_most_exact(name: &str, achieved: &Rational, threshold: &Rational) -> Self {
        Self::new(
            name,
            Relation::AtMost,
            to_f64(achieved),
            to_f64(threshold),
            achieved <= threshold,
        )
    }

    /// `Δ <= c·δ`, reported as the achieved ratio against `c`.
    pub fn ratio_at_most(name: &str, stats: &DegreeStats, c: &Rational) -> Self {
        Self::new(
            name,
            Relation::AtMost,
            stats.ratio().unwrap_or(f64::INFINITY),
            to_f64(c),
            stats.is_nearly_regular(c),
        )
    }

    fn new(name: &str, relation: Relation, achieved: f64, threshold: f64, pass: bool) -> Self {
        BoundCheck {
            name: name.to_string(),
            relation,
            threshold,
            achieved,
            pass,
        }
    }
}

/// Fails with [`Error::BoundViolation`] when any check in the ledger failed.
pub fn enforce(bounds: &[BoundCheck]) -> Result<()> {
    if bounds.iter().all(|b| b.pass) {
        Ok(())
    } else {
        Err(Error::BoundViolation(bounds.to_vec()))
    }
}

/// The contract an extraction result was produced under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantee {
    /// Min-degree peel of a graph with `Δ <= k·d`: `(k/α)`-nearly regular.
    MinDegreeRefine,
    /// Max-degree reduction followed by the min-degree refine: `c`-nearly regular, `c > 2`.
    LargeRatio,
    /// Top-degree removal plus capped peel on a uniformly dense graph.
    TopDegreeTrim,
    /// Density boost then top-degree trim: `(1+ε)`-nearly regular, linear size.
    DenseNearRegular,
    /// Sparse branch of the dichotomy: an independent set.
    TuranBranch,
    /// Dense branch of the dichotomy: `(1+ε)`-nearly regular.
    DenseBranch,
    /// Greedy minimum-degree independent set of size `>= n/(d+1)`.
    TuranIndependentSet,
    /// Matching cascade: 5-nearly regular, `>= d²/4096` edges.
    EdgeCascade,
    /// Maximum matching, at least `m/n` edges.
    MaximumMatching,
}

/// A found subgraph with its degree statistics and the bounds checked on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionResult {
    /// Vertex ids in the input graph.
    pub vertices: VertexSet,
    /// Explicit edges for non-induced results; absent means induced on `vertices`.
    pub edges: Option<Vec<(usize, usize)>>,
    pub stats: DegreeStats,
    /// `Δ/δ`, `1` for edgeless results, `null` when `δ = 0 < Δ`.
    pub ratio: Option<f64>,
    pub guarantee: Guarantee,
    /// False when the run is outside the parameter range the guarantee covers.
    pub guaranteed: bool,
    pub bounds: Vec<BoundCheck>,
}

impl ExtractionResult {
    /// Result induced on `vertices` of `host`.
    pub fn induced(host: &Graph, vertices: VertexSet, guarantee: Guarantee) -> Result<Self> {
        let stats = host.induced(&vertices)?.graph.stats();
        Ok(ExtractionResult {
            ratio: stats.ratio(),
            vertices,
            edges: None,
            stats,
            guarantee,
            guaranteed: true,
            bounds: Vec::new(),
        })
    }

    /// Non-induced result spanned by `edges` (host ids).
    pub fn from_edges(mut edges: Vec<(usize, usize)>, guarantee: Guarantee) -> Self {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        let stats = DegreeStats::of_edges(&edges);
        let vertices = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ExtractionResult {
            ratio: stats.ratio(),
            vertices,
            edges: Some(edges),
            stats,
            guarantee,
            guaranteed: true,
            bounds: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.stats.m
    }

    pub fn all_bounds_pass(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }

    /// Appends the ledger and fails if any of it does not hold.
    pub(crate) fn checked(mut self, bounds: Vec<BoundCheck>) -> Result<Self> {
        self.bounds.extend(bounds);
        enforce(&self.bounds)?;
        Ok(self)
    }
}

/// JSON report emitted by every `nreg` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub input: Option<DegreeStats>,
    pub result: serde_json::Value,
    pub bounds: Vec<BoundCheck>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }
}
