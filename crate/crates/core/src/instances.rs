//! Graph generators: clique blocks, the graded random model, complete
//! bipartite graphs, stars and uniform random graphs.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rng::{pair_index, Substreams};

/// Largest `s` accepted by [`blocks`]; `(20+1)·2^20` is about 22M vertices.
pub const MAX_BLOCKS_S: u32 = 20;

/// `(s+1)·2^s` vertices in parts `V_0..V_s` of `2^s` vertices each; part
/// `V_i` is a disjoint union of `2^{s−i}` cliques of size `2^i`.
///
/// Ids run part by part, clique by clique, so every vertex of `V_i` has
/// degree `2^i − 1`.
pub fn blocks(s: u32) -> Result<Graph> {
    if s > MAX_BLOCKS_S {
        return Err(Error::CapExceeded {
            what: "blocks parameter s",
            cap: MAX_BLOCKS_S as usize,
            got: s as usize,
        });
    }
    let part = 1usize << s;
    let n = (s as usize + 1) * part;
    let mut adj = vec![Vec::new(); n];
    for i in 0..=s as usize {
        let size = 1usize << i;
        for clique in 0..(part / size) {
            let start = i * part + clique * size;
            for (v, row) in adj.iter_mut().enumerate().skip(start).take(size) {
                *row = (start..start + size).filter(|&w| w != v).collect();
            }
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Smallest `s` with `(s+1)·2^s >= n`.
pub fn blocks_order_for(n: usize) -> u32 {
    (0..).find(|&s: &u32| (s as usize + 1) << s >= n).unwrap()
}

/// [`blocks`] for the smallest admissible `s`, restricted to ids `0..n`.
pub fn blocks_padded(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    let s = blocks_order_for(n);
    let full = blocks(s)?;
    assert!(full.n() <= 3 * n, "padded order {} exceeds 3n", full.n());
    Ok(full.induced_unchecked(&(0..n).collect::<Vec<_>>()).graph)
}

/// Vertex weight of the graded model, `1/4 + i/(2n)` for 1-based `i`.
pub fn graded_weight(i: usize, n: usize) -> f64 {
    0.25 + i as f64 / (2.0 * n as f64)
}

/// Edge probability of ids `u, v` (0-based) in the graded model on `n` vertices.
pub fn graded_pair_probability(u: usize, v: usize, n: usize) -> f64 {
    graded_weight(u + 1, n) * graded_weight(v + 1, n)
}

/// Exact expected edge count of the graded model, `Σ_{i<j} p_i p_j`.
pub fn graded_expected_edges(n: usize) -> f64 {
    let total: f64 = (1..=n).map(|i| graded_weight(i, n)).sum();
    let squares: f64 = (1..=n).map(|i| graded_weight(i, n).powi(2)).sum();
    (total * total - squares) / 2.0
}

fn sample_pairs<F>(n: usize, seed: u64, prob: F) -> Graph
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let streams = Substreams::new(seed);
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (u + 1..n)
                .filter(|&v| streams.stream(pair_index(u, v, n)).gen::<f64>() < prob(u, v))
                .collect()
        })
        .collect();
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(u, row)| row.into_iter().map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("sampled pairs are simple")
}

/// Sample of the graded model: pair `(i, j)` is an edge with probability
/// `p_i·p_j`, `p_i = 1/4 + i/(2n)`. Every pair probability lies strictly
/// between 1/16 and 9/16.
pub fn sample_gnp_bar(n: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param("n", "must be at least 2"));
    }
    Ok(sample_pairs(n, seed, |u, v| {
        graded_pair_probability(u, v, n)
    }))
}

/// `G(n, p)` with the same per-pair substream rule as [`sample_gnp_bar`].
pub fn sample_gnp_uniform(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param("p", "must lie in [0, 1]"));
    }
    Ok(sample_pairs(n, seed, |_, _| p))
}

/// `K_{k, n−k}` with the small side on ids `0..k`.
pub fn complete_bipartite(k: usize, n: usize) -> Result<Graph> {
    if k == 0 || k >= n {
        return Err(Error::param("k", "must satisfy 1 <= k <= n-1"));
    }
    Graph::from_edges(n, (0..k).flat_map(|u| (k..n).map(move |v| (u, v))))
}

/// The star `K_{1, n−1}` centred at vertex 0.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param("n", "a star needs at least 2 vertices"));
    }
    Graph::from_edges(n, (1..n).map(|v| (0, v)))
}

/// The parts `V_0..V_s` of [`blocks`]`(s)`.
pub fn blocks_parts(s: u32) -> Vec<VertexSet> {
    let part = 1usize << s;
    (0..=s as usize)
        .map(|i| {
            VertexSet::range(part)
                .iter()
                .map(|v| v + i * part)
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Blocks,
    BlocksPadded,
    GnpBar,
    CompleteBipartite,
    Star,
    GnpUniform,
}

/// Generator parameters; echoed into the JSON sidecar of `nreg gen`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub kind: ModelKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ModelParams {
    pub fn new(kind: ModelKind) -> Self {
        ModelParams {
            kind,
            s: None,
            n: None,
            k: None,
            p: None,
            seed: None,
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        let need_n = || self.n.ok_or_else(|| Error::param("n", "required"));
        let seed = self.seed.unwrap_or(0);
        match self.kind {
            ModelKind::Blocks => blocks(self.s.ok_or_else(|| Error::param("s", "required"))?),
            ModelKind::BlocksPadded => blocks_padded(need_n()?),
            ModelKind::GnpBar => sample_gnp_bar(need_n()?, seed),
            ModelKind::CompleteBipartite => complete_bipartite(
                self.k.ok_or_else(|| Error::param("k", "required"))?,
                need_n()?,
            ),
            ModelKind::Star => star(need_n()?),
            ModelKind::GnpUniform => sample_gnp_uniform(
                need_n()?,
                self.p.ok_or_else(|| Error::param("p", "required"))?,
                seed,
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::choose2;

    #[test]
    fn small_blocks() {
        let b1 = blocks(1).unwrap();
        assert_eq!((b1.n(), b1.m()), (4, 1));
        assert!(b1.has_edge(2, 3));

        let b2 = blocks(2).unwrap();
        assert_eq!((b2.n(), b2.m()), (12, 8));
        assert_eq!(b2.degrees(), vec![0, 0, 0, 0, 1, 1, 1, 1, 3, 3, 3, 3]);
        assert_eq!(blocks(0).unwrap().n(), 1);
        assert!(blocks(21).is_err());
    }

    #[test]
    fn blocks_degree_and_edge_law() {
        for s in 0..=6u32 {
            let g = blocks(s).unwrap();
            let expected: usize = (0..=s).map(|i| (1usize << (s - i)) * choose2(1 << i)).sum();
            assert_eq!(g.m(), expected);
            for (i, part) in blocks_parts(s).iter().enumerate() {
                assert!(part.iter().all(|&v| g.degree(v) == (1 << i) - 1));
            }
        }
    }

    #[test]
    fn padded_blocks() {
        assert_eq!(blocks_padded(4).unwrap(), blocks(1).unwrap());
        let g10 = blocks_padded(10).unwrap();
        assert_eq!(g10.n(), 10);
        // ids 10, 11 leave only the edge 8-9 of the K_4
        assert_eq!(g10.m(), 2 + 1);
        assert_eq!(blocks_padded(1).unwrap().n(), 1);
        assert!(blocks_padded(0).is_err());
        for n in 1..200 {
            let s = blocks_order_for(n);
            assert!(((s as usize + 1) << s) <= 3 * n);
        }
    }

    #[test]
    fn graded_probabilities() {
        let n = 37;
        for u in 0..n {
            for v in u + 1..n {
                let p = graded_pair_probability(u, v, n);
                assert!(p > 1.0 / 16.0 && p < 9.0 / 16.0);
            }
        }
        assert_eq!(graded_weight(n, n), 0.75);
        assert_eq!(graded_pair_probability(0, 1, 2), 0.375);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_gnp_bar(50, 7).unwrap();
        assert_eq!(a, sample_gnp_bar(50, 7).unwrap());
        assert_ne!(a, sample_gnp_bar(50, 8).unwrap());
        assert!(sample_gnp_bar(1, 0).is_err());
        assert_eq!(sample_gnp_uniform(10, 0.0, 3).unwrap().m(), 0);
        assert_eq!(sample_gnp_uniform(10, 1.0, 3).unwrap().m(), 45);
    }

    #[test]
    fn bipartite_and_star() {
        let s = star(4).unwrap();
        assert_eq!((s.max_degree(), s.min_degree()), (3, 1));
        let kb = complete_bipartite(2, 5).unwrap();
        assert_eq!(kb.m(), 6);
        assert_eq!(kb.avg_degree(), crate::exact::Rational::new(12, 5));
        assert!(star(1).is_err());
        assert!(complete_bipartite(0, 5).is_err());
        assert!(complete_bipartite(5, 5).is_err());
    }

    #[test]
    fn params_dispatch() {
        let mut p = ModelParams::new(ModelKind::Blocks);
        p.s = Some(2);
        assert_eq!(p.generate().unwrap().m(), 8);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"kind":"blocks","s":2}"#);
        assert!(ModelParams::new(ModelKind::Star).generate().is_err());
    }
}
