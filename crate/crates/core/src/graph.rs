//! Undirected simple graphs with dense vertex ids, degree statistics and
//! induced-subgraph views.
//!
//! Graphs are immutable once built. Every algorithm in the crate breaks ties
//! by lowest vertex id, so results are reproducible.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{choose2, int, to_f64, Rational};

/// Largest order for which a bitset row per vertex is kept.
pub const BITSET_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    rows: Option<Vec<u64>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Trusted constructor: lists must be sorted, symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let rows = (adj.len() <= BITSET_LIMIT).then(|| {
            adj.iter()
                .map(|list| list.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
                .collect()
        });
        Graph { adj, m, rows }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u] >> v & 1 == 1,
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Bitset adjacency row, present when `n <= 64`.
    pub fn row(&self, v: usize) -> Option<u64> {
        self.rows.as_ref().map(|rows| rows[v])
    }

    pub fn rows(&self) -> Option<&[u64]> {
        self.rows.as_deref()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Average degree `2m/n`, zero for the empty graph.
    pub fn avg_degree(&self) -> Rational {
        if self.n() == 0 {
            Rational::zero()
        } else {
            int(2 * self.m) / int(self.n())
        }
    }

    /// Density `m / C(n,2)`, zero when `n <= 1`.
    pub fn density(&self) -> Rational {
        if self.n() <= 1 {
            Rational::zero()
        } else {
            int(self.m) / int(choose2(self.n()))
        }
    }

    pub fn stats(&self) -> DegreeStats {
        DegreeStats::new(self.n(), self.m, self.max_degree(), self.min_degree())
    }

    /// Subgraph induced on `u`, relabelled `0..|u|` in increasing host id.
    pub fn induced(&self, u: &VertexSet) -> Result<Subgraph> {
        if let Some(&bad) = u.iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n(),
            });
        }
        Ok(self.induced_unchecked(u.as_slice()))
    }

    /// `ids` must be sorted, distinct and in range.
    pub(crate) fn induced_unchecked(&self, ids: &[usize]) -> Subgraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let adj = ids
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        Subgraph {
            graph: Graph::from_adjacency(adj),
            ids: ids.to_vec(),
        }
    }

    /// Number of edges of `self` with both ends in `u`.
    pub fn edges_within(&self, u: &VertexSet) -> usize {
        let mut mark = vec![false; self.n()];
        for &v in u.iter() {
            mark[v] = true;
        }
        u.iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| w > v && mark[w]).count())
            .sum()
    }

    /// Nearly regular check with the edgeless convention.
    pub fn is_nearly_regular(&self, c: f64) -> bool {
        nearly_regular_check(self, c)
    }
}

/// True iff `Δ(g) <= c·δ(g)`; the edgeless graph is regular for every `c`.
pub fn nearly_regular_check(g: &Graph, c: f64) -> bool {
    match crate::exact::rational("c", c) {
        Ok(c) => g.stats().is_nearly_regular(&c),
        Err(_) => false,
    }
}

/// An induced subgraph together with the host id of every local vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `ids[i]` is the host id of local vertex `i`; strictly increasing.
    pub ids: Vec<usize>,
}

impl Subgraph {
    /// The whole host viewed as a subgraph of itself.
    pub fn whole(g: &Graph) -> Self {
        Subgraph {
            graph: g.clone(),
            ids: (0..g.n()).collect(),
        }
    }

    /// Re-expresses a subgraph of `self.graph` in host ids.
    pub fn compose(&self, inner: Subgraph) -> Subgraph {
        Subgraph {
            ids: inner.ids.iter().map(|&i| self.ids[i]).collect(),
            graph: inner.graph,
        }
    }

    pub fn host_set(&self) -> VertexSet {
        VertexSet(self.ids.clone())
    }

    /// Restrict to the local vertices in `keep` (sorted, distinct).
    pub fn restrict(&self, keep: &[usize]) -> Subgraph {
        self.compose(self.graph.induced_unchecked(keep))
    }
}

/// A set of vertex ids, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Validates membership against a host graph.
    pub fn for_graph(g: &Graph, members: Vec<usize>) -> Result<Self> {
        let set = Self::new(members);
        match set.0.last() {
            Some(&v) if v >= g.n() => Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            }),
            _ => Ok(set),
        }
    }

    pub fn range(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Δ, δ, average degree and density of a graph.
///
/// The float fields are for reports; comparisons use [`DegreeStats::avg_deg_exact`]
/// and [`DegreeStats::density_exact`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub n: usize,
    pub m: usize,
    pub max_deg: usize,
    pub min_deg: usize,
    pub avg_deg: f64,
    pub density: f64,
}

impl DegreeStats {
    pub fn new(n: usize, m: usize, max_deg: usize, min_deg: usize) -> Self {
        let mut stats = DegreeStats {
            n,
            m,
            max_deg,
            min_deg,
            avg_deg: 0.0,
            density: 0.0,
        };
        stats.avg_deg = to_f64(&stats.avg_deg_exact());
        stats.density = to_f64(&stats.density_exact());
        stats
    }

    /// Stats of the graph spanned by an explicit edge list; only vertices
    /// incident to some edge count.
    pub fn of_edges(edges: &[(usize, usize)]) -> Self {
        let mut deg = std::collections::BTreeMap::new();
        for &(u, v) in edges {
            *deg.entry(u).or_insert(0usize) += 1;
            *deg.entry(v).or_insert(0usize) += 1;
        }
        let max = deg.values().copied().max().unwrap_or(0);
        let min = deg.values().copied().min().unwrap_or(0);
        DegreeStats::new(deg.len(), edges.len(), max, min)
    }

    pub fn avg_deg_exact(&self) -> Rational {
        if self.n == 0 {
            Rational::zero()
        } else {
            int(2 * self.m) / int(self.n)
        }
    }

    pub fn density_exact(&self) -> Rational {
        if self.n <= 1 {
            Rational::zero()
        } else {
            int(self.m) / int(choose2(self.n))
        }
    }

    /// `Δ/δ`, `1` for edgeless graphs, `None` when `δ = 0 < Δ`.
    pub fn ratio(&self) -> Option<f64> {
        match (self.max_deg, self.min_deg) {
            (0, _) => Some(1.0),
            (_, 0) => None,
            (max, min) => Some(max as f64 / min as f64),
        }
    }

    pub fn is_nearly_regular(&self, c: &Rational) -> bool {
        int(self.max_deg) <= c * int(self.min_deg)
    }
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
///
/// Blank lines are ignored. Endpoints may come in either order but
/// self-loops, repeated edges and ids `>= n` are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header `n m`".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                reason: format!("vertex id {} out of range for n = {n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                reason: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u.min(v), u.max(v)));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            reason: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEdge(w[0].0, w[0].1));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let bad = |reason: &str| Error::Parse {
        line,
        reason: format!("{reason}: `{text}`"),
    };
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let a = a.parse().map_err(|_| bad("not a nonnegative integer"))?;
    let b = b.parse().map_err(|_| bad("not a nonnegative integer"))?;
    Ok((a, b))
}

/// Canonical edge-list text: header then edges sorted lexicographically.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_edge_list(path: impl AsRef<std::path::Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<std::path::Path>) -> Result<()> {
    std::fs::write(path, serialize_edge_list(g))?;
    Ok(())
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    /// Disjoint union, `b` relabelled after `a`.
    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let shift = a.n();
        let edges = a
            .edges()
            .chain(b.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(a.n() + b.n(), edges).expect("disjoint union")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn p3() -> Graph {
        path(3)
    }

    #[test]
    fn degree_stats_of_small_graphs() {
        let k4 = complete(4).stats();
        assert_eq!((k4.max_deg, k4.min_deg), (3, 3));
        assert_eq!(k4.avg_deg_exact(), int(3));
        assert_eq!(k4.density_exact(), int(1));

        let c5 = cycle(5).stats();
        assert_eq!((c5.max_deg, c5.min_deg), (2, 2));
        assert_eq!(c5.avg_deg_exact(), int(2));
        assert_eq!(c5.density_exact(), Rational::new(1, 2));

        let p = p3().stats();
        assert_eq!((p.max_deg, p.min_deg), (2, 1));
        assert_eq!(p.avg_deg_exact(), Rational::new(4, 3));
        assert_eq!(p.density_exact(), Rational::new(2, 3));

        let e = Graph::empty(0).stats();
        assert_eq!((e.n, e.m, e.max_deg, e.min_deg), (0, 0, 0, 0));
        assert_eq!(e.density, 0.0);
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = complete(4).induced(&VertexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(k3.graph, complete(3));
        assert_eq!(k3.ids, vec![0, 1, 2]);

        let empty = cycle(5).induced(&VertexSet::default()).unwrap();
        assert_eq!(empty.graph.n(), 0);

        let k2 = cycle(5).induced(&VertexSet::new(vec![3, 2])).unwrap();
        assert_eq!(k2.graph, complete(2));
        assert_eq!(k2.ids, vec![2, 3]);

        assert!(matches!(
            cycle(5).induced(&VertexSet::new(vec![5])),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn nearly_regular_examples() {
        assert!(nearly_regular_check(&cycle(5), 1.0));
        assert!(!nearly_regular_check(&p3(), 1.9));
        assert!(nearly_regular_check(&p3(), 2.0));
        assert!(nearly_regular_check(&Graph::empty(10), 1.0));
        // δ = 0 < Δ is never nearly regular
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(!nearly_regular_check(&g, 100.0));
        assert_eq!(g.stats().ratio(), None);
        assert_eq!(Graph::empty(3).stats().ratio(), Some(1.0));
    }

    #[test]
    fn edge_list_parsing() {
        assert_eq!(parse_edge_list("3 2\n0 1\n1 2").unwrap(), p3());
        let single = parse_edge_list("1 0").unwrap();
        assert_eq!((single.n(), single.m()), (1, 0));
        assert!(matches!(
            parse_edge_list("2 1\n0 0"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n1 0"),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 3"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialization_is_canonical() {
        let g = parse_edge_list("4 3\n3 2\n1 0\n2 0\n").unwrap();
        assert_eq!(serialize_edge_list(&g), "4 3\n0 1\n0 2\n2 3\n");
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(2, [(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn bitset_rows_only_for_small_graphs() {
        let g = complete(5);
        assert_eq!(g.row(0), Some(0b11110));
        assert!(g.has_edge(3, 4));
        assert!(Graph::empty(65).row(0).is_none());
    }
}
