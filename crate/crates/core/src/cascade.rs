//! Non-induced nearly regular subgraphs with many edges.
//!
//! [`edge_cascade`] peels to minimum degree `d/2`, splits into a bipartite
//! subgraph where every vertex keeps half its degree, then repeatedly takes an
//! inclusion-minimal tight set `A_i` (with `|N(A_i)| <= |A_i|`) inside the
//! previous one and removes a perfect matching `M_i` between `A_i` and its
//! neighborhood. The nested sizes `|A_i|` either double at every dyadic level,
//! making `M_1` large, or stall at some level, where the union of the
//! matchings of that level is 2-nearly regular in the average-degree sense and
//! the min-degree refine finishes it.

use std::collections::{BTreeSet, VecDeque};

use num_traits::ToPrimitive;
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::graph::{Graph, VertexSet};
use crate::peeling::{peel_below, refine_graph};
use crate::report::{BoundCheck, ExtractionResult, Guarantee};

/// The two sides of a bipartite subgraph; `a` is the larger side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub a: VertexSet,
    pub b: VertexSet,
}

/// Local-search max cut: start from even/odd ids and move the lowest-id
/// vertex with more neighbors on its own side until none remains. Every
/// vertex ends with at least half its neighbors across.
pub fn bipartite_half(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut side: Vec<bool> = (0..n).map(|v| v % 2 == 1).collect();
    let mut same: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| side[w] == side[v])
                .count()
        })
        .collect();
    let violates = |v: usize, same: &[usize]| 2 * same[v] > g.degree(v);
    let mut queue: BTreeSet<usize> = (0..n).filter(|&v| violates(v, &same)).collect();
    while let Some(v) = queue.pop_first() {
        for &w in g.neighbors(v) {
            if side[w] == side[v] {
                same[w] -= 1;
            } else {
                same[w] += 1;
            }
            if violates(w, &same) {
                queue.insert(w);
            } else {
                queue.remove(&w);
            }
        }
        side[v] = !side[v];
        same[v] = g.degree(v) - same[v];
    }
    let (odd, even): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| side[v]);
    let (a, b) = if even.len() >= odd.len() {
        (even, odd)
    } else {
        (odd, even)
    };
    Bipartition {
        a: VertexSet::new(a),
        b: VertexSet::new(b),
    }
}

/// Bipartite graph between `a` and `b` (host ids) with adjacency from the `a`
/// side in local indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// The edges of `g` crossing `parts`.
    pub fn crossing(g: &Graph, parts: &Bipartition) -> Self {
        let a = parts.a.as_slice().to_vec();
        let b = parts.b.as_slice().to_vec();
        let adj = a
            .iter()
            .map(|&u| {
                g.neighbors(u)
                    .iter()
                    .filter_map(|w| b.binary_search(w).ok())
                    .collect()
            })
            .collect();
        BipartiteGraph { a, b, adj }
    }

    /// From local adjacency lists `a → b`.
    pub fn from_lists(nb: usize, adj: Vec<Vec<usize>>) -> Self {
        let adj: Vec<Vec<usize>> = adj
            .into_iter()
            .map(|mut row| {
                row.sort_unstable();
                row.dedup();
                assert!(row.iter().all(|&j| j < nb), "b index out of range");
                row
            })
            .collect();
        BipartiteGraph {
            a: (0..adj.len()).collect(),
            b: (0..nb).collect(),
            adj,
        }
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Sorted neighborhood of a set of local `a` indices.
    pub fn neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let all: BTreeSet<usize> = set
            .iter()
            .flat_map(|&i| self.adj[i].iter().copied())
            .collect();
        all.into_iter().collect()
    }

    fn remove_edge(&mut self, i: usize, j: usize) {
        let pos = self.adj[i].binary_search(&j).expect("edge present");
        self.adj[i].remove(pos);
    }
}

/// Maximum matching of `a` into `b` by Hopcroft–Karp. `adj[i]` lists the
/// `b` indices adjacent to `a` index `i`; returns the partner of each `a`.
pub fn hopcroft_karp(adj: &[Vec<usize>], nb: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let na = adj.len();
    let mut mate_a = vec![FREE; na];
    let mut mate_b = vec![FREE; nb];
    let mut dist = vec![0usize; na];
    loop {
        // layer the free a-vertices and everything alternating-reachable
        let mut queue = VecDeque::new();
        for i in 0..na {
            if mate_a[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = mate_b[j];
                if k == FREE {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; na];
        for i in 0..na {
            if mate_a[i] == FREE {
                augment(i, adj, &mut mate_a, &mut mate_b, &mut dist, &mut next);
            }
        }
    }
    mate_a
        .into_iter()
        .map(|j| (j != FREE).then_some(j))
        .collect()
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    mate_a: &mut [usize],
    mate_b: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[i] < adj[i].len() {
        let j = adj[i][next[i]];
        next[i] += 1;
        let k = mate_b[j];
        let ok = k == usize::MAX
            || (dist[k] == dist[i] + 1 && augment(k, adj, mate_a, mate_b, dist, next));
        if ok {
            mate_a[i] = j;
            mate_b[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Perfect matching between `a_set` and `b_set` (local indices) using only
/// edges of `h` inside them, as `(a, b)` local pairs sorted by `a`.
/// Fails with [`Error::HallViolation`] when none exists.
pub fn extract_perfect_matching(
    h: &BipartiteGraph,
    a_set: &[usize],
    b_set: &[usize],
) -> Result<Vec<(usize, usize)>> {
    if a_set.len() != b_set.len() {
        return Err(Error::SizeMismatch {
            expected: a_set.len(),
            got: b_set.len(),
        });
    }
    let sub: Vec<Vec<usize>> = a_set
        .iter()
        .map(|&i| {
            h.adj[i]
                .iter()
                .filter_map(|j| b_set.binary_search(j).ok())
                .collect()
        })
        .collect();
    let mates = hopcroft_karp(&sub, b_set.len());
    let pairs: Vec<(usize, usize)> = mates
        .iter()
        .enumerate()
        .filter_map(|(x, m)| m.map(|y| (a_set[x], b_set[y])))
        .collect();
    if pairs.len() < a_set.len() {
        return Err(Error::HallViolation {
            expected: a_set.len(),
            found: pairs.len(),
        });
    }
    Ok(pairs)
}

/// Inclusion-minimal nonempty `T ⊆ candidate` with `|N(T)| <= |T|`, together
/// with `N(T)`; by minimality `|N(T)| = |T|`. `candidate` (sorted local
/// indices) must itself satisfy `|N| <= |candidate|` and every member needs a
/// neighbor.
///
/// A maximum matching reduces the search to a set `T₀` perfectly matched onto
/// its neighborhood; inside it the tight sets are exactly the sets closed
/// under "neighbor, then its partner", and the smallest closure of a single
/// vertex (ties to the lowest id) is minimal.
pub fn min_tight_set(h: &BipartiteGraph, candidate: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if candidate.is_empty() {
        return Err(Error::Precondition(
            "tight set search needs a nonempty candidate".into(),
        ));
    }
    if let Some(&i) = candidate.iter().find(|&&i| h.adj[i].is_empty()) {
        return Err(Error::Precondition(format!(
            "vertex {} has no neighbors left",
            h.a[i]
        )));
    }
    let nbhd = h.neighborhood(candidate);
    if nbhd.len() > candidate.len() {
        return Err(Error::Precondition("candidate set is not tight".into()));
    }

    let sub: Vec<Vec<usize>> = candidate
        .iter()
        .map(|&i| {
            h.adj[i]
                .iter()
                .map(|j| nbhd.binary_search(j).unwrap())
                .collect()
        })
        .collect();
    let mates = hopcroft_karp(&sub, nbhd.len());
    let mut owner = vec![usize::MAX; nbhd.len()];
    for (x, m) in mates.iter().enumerate() {
        if let Some(y) = m {
            owner[*y] = x;
        }
    }

    // positions in `candidate` of the perfectly matched core
    let core: Vec<usize> = match mates.iter().position(Option::is_none) {
        None => (0..candidate.len()).collect(),
        Some(free) => {
            // matched vertices reachable from a free one by alternating paths;
            // N of that set has one vertex fewer, so it is tight and matched
            let mut seen = vec![false; candidate.len()];
            seen[free] = true;
            let mut queue = VecDeque::from([free]);
            while let Some(x) = queue.pop_front() {
                for &y in &sub[x] {
                    let z = owner[y];
                    if z != usize::MAX && !seen[z] {
                        seen[z] = true;
                        queue.push_back(z);
                    }
                }
            }
            (0..candidate.len())
                .filter(|&x| seen[x] && x != free)
                .collect()
        }
    };

    let mut best: Option<Vec<usize>> = None;
    let mut in_closure = vec![false; candidate.len()];
    for &start in &core {
        in_closure.fill(false);
        in_closure[start] = true;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &y in &sub[x] {
                let z = owner[y];
                debug_assert!(z != usize::MAX, "core neighborhoods are matched");
                if !in_closure[z] {
                    in_closure[z] = true;
                    members.push(z);
                }
            }
            if best.as_ref().is_some_and(|b| members.len() >= b.len()) {
                break;
            }
        }
        if best.as_ref().is_none_or(|b| members.len() < b.len()) {
            best = Some(members);
        }
    }
    let mut tight: Vec<usize> = best
        .expect("a tight candidate has a nonempty matched core")
        .into_iter()
        .map(|x| candidate[x])
        .collect();
    tight.sort_unstable();
    let nbrs = h.neighborhood(&tight);
    debug_assert_eq!(nbrs.len(), tight.len());
    Ok((tight, nbrs))
}

/// Sizes of one cascade round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeRound {
    pub a_size: usize,
    pub b_size: usize,
}

/// Nested tight sets `A_1 ⊇ A_2 ⊇ …` with their neighborhoods and pairwise
/// edge-disjoint perfect matchings `M_i` (host ids, `(a, b)` pairs).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CascadeState {
    pub rounds: Vec<CascadeRound>,
    #[serde(skip)]
    pub a_sets: Vec<VertexSet>,
    #[serde(skip)]
    pub b_sets: Vec<VertexSet>,
    #[serde(skip)]
    pub matchings: Vec<Vec<(usize, usize)>>,
}

impl CascadeState {
    /// `|A_i|` for 1-based `i`.
    pub fn a_size(&self, i: usize) -> usize {
        self.rounds[i - 1].a_size
    }
}

/// Runs `rounds` rounds of the cascade on `h`, starting from the whole `a`
/// side (which must be tight, with every vertex of degree at least `rounds`).
pub fn matching_cascade(h: &BipartiteGraph, rounds: usize) -> Result<CascadeState> {
    let mut residual = h.clone();
    let mut candidate: Vec<usize> = (0..h.a.len()).collect();
    let mut state = CascadeState {
        rounds: Vec::new(),
        a_sets: Vec::new(),
        b_sets: Vec::new(),
        matchings: Vec::new(),
    };
    let mut prev_b: Option<Vec<usize>> = None;
    for _ in 0..rounds {
        let (a_i, b_i) = min_tight_set(&residual, &candidate)?;
        let matching = extract_perfect_matching(&residual, &a_i, &b_i)?;
        assert!(
            a_i.iter().all(|x| candidate.binary_search(x).is_ok()),
            "A_i not nested"
        );
        if let Some(prev) = &prev_b {
            assert!(
                b_i.iter().all(|y| prev.binary_search(y).is_ok()),
                "B_i not nested"
            );
        }
        assert_eq!(matching.len(), a_i.len());
        for &(x, y) in &matching {
            residual.remove_edge(x, y);
        }
        state.rounds.push(CascadeRound {
            a_size: a_i.len(),
            b_size: b_i.len(),
        });
        state.a_sets.push(a_i.iter().map(|&x| h.a[x]).collect());
        state.b_sets.push(b_i.iter().map(|&y| h.b[y]).collect());
        state
            .matchings
            .push(matching.iter().map(|&(x, y)| (h.a[x], h.b[y])).collect());
        candidate = a_i;
        prev_b = Some(b_i);
    }
    Ok(state)
}

/// Average degree from which [`edge_cascade`] claims its guarantee.
pub const CASCADE_MIN_DEGREE: f64 = 64.0;

/// Which of the two outcomes of the cascade produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CascadeCase {
    /// The tight sets doubled at every level; the output is `M_1`.
    FirstMatching,
    /// The sizes stalled at level `i`; the output refines the union of
    /// `M_j`, `lo <= j < 2·lo`.
    LevelUnion { level: usize, lo: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CascadeOutcome {
    pub result: ExtractionResult,
    pub case: CascadeCase,
    /// Largest power of two not above the average degree.
    pub dyadic_degree: usize,
    pub cascade: CascadeState,
}

/// `⌈d²/4096⌉`, the guaranteed edge count for average degree `d >= 64`.
pub fn cascade_edge_bound(d: &Rational) -> usize {
    (d * d / int(4096)).ceil().to_integer() as usize
}

/// 5-nearly regular (not necessarily induced) subgraph with at least
/// `d²/4096` edges when the average degree `d` is at least 64.
///
/// Smaller degrees run the same construction with at least one cascade round;
/// the result is then tagged as not guaranteed.
pub fn edge_cascade(g: &Graph) -> Result<CascadeOutcome> {
    let d = g.avg_degree();
    if g.m() == 0 {
        return Err(Error::Precondition(
            "edge cascade needs at least one edge".into(),
        ));
    }
    let d_f = d.to_f64().unwrap();
    let core = peel_below(g, &(d / int(2))).kept;
    let parts = bipartite_half(&core.graph);
    let h = BipartiteGraph::crossing(&core.graph, &parts);

    let whole = d.floor().to_integer().max(1) as usize;
    let dyadic = 1usize << (usize::BITS - 1 - whole.leading_zeros());
    let rounds = (dyadic / 4).max(1);
    let cascade = matching_cascade(&h, rounds)?;

    // first level i with |A_lo| <= 2|A_hi|, lo = d'/2^{i+4}, hi = 2·lo
    let levels = dyadic.trailing_zeros().saturating_sub(3) as usize;
    let stall = (0..levels).find(|&i| {
        let lo = dyadic >> (i + 4);
        cascade.a_size(lo) <= 2 * cascade.a_size(2 * lo)
    });

    let to_host = |(x, y): (usize, usize)| (core.ids[x], core.ids[y]);
    let (mut result, case) = match stall {
        None => {
            let edges = cascade.matchings[0].iter().copied().map(to_host).collect();
            (
                ExtractionResult::from_edges(edges, Guarantee::EdgeCascade),
                CascadeCase::FirstMatching,
            )
        }
        Some(level) => {
            let lo = dyadic >> (level + 4);
            let mut ids: Vec<usize> = cascade.a_sets[lo - 1]
                .iter()
                .chain(cascade.b_sets[lo - 1].iter())
                .copied()
                .collect();
            ids.sort_unstable();
            let local = |v: usize| ids.binary_search(&v).unwrap();
            let union = cascade.matchings[lo - 1..2 * lo - 1]
                .iter()
                .flatten()
                .map(|&(x, y)| (local(x), local(y)));
            let h_prime = Graph::from_edges(ids.len(), union)?;
            let (kept, _, refine_bounds) = refine_graph(&h_prime, &int(2), &Rational::new(2, 5))?;
            let edges = kept
                .graph
                .edges()
                .map(|(x, y)| to_host((ids[kept.ids[x]], ids[kept.ids[y]])))
                .collect();
            let mut result = ExtractionResult::from_edges(edges, Guarantee::EdgeCascade);
            result.bounds = refine_bounds;
            (result, CascadeCase::LevelUnion { level, lo })
        }
    };
    let bounds = vec![
        BoundCheck::ratio_at_most("cascade.ratio", &result.stats, &int(5)),
        BoundCheck::at_least(
            "cascade.edges",
            result.edge_count() as f64,
            cascade_edge_bound(&d) as f64,
        ),
    ];
    result.guaranteed = d_f >= CASCADE_MIN_DEGREE;
    let result = result.checked(bounds)?;
    Ok(CascadeOutcome {
        result,
        case,
        dyadic_degree: dyadic,
        cascade,
    })
}

/// Maximum matching (blossom algorithm); a 1-regular subgraph with at least
/// `⌈m/n⌉` edges.
pub fn matching_lower_bound(g: &Graph) -> Result<ExtractionResult> {
    let n = g.n();
    let pg = UnGraph::<(), ()>::from_edges(g.edges().map(|(u, v)| (u as u32, v as u32)));
    let matching = petgraph::algo::maximum_matching(&pg);
    let edges: Vec<(usize, usize)> = matching
        .edges()
        .map(|(u, v)| (u.index(), v.index()))
        .collect();
    let target = if n == 0 { 0 } else { g.m().div_ceil(n) };
    let bounds = vec![BoundCheck::at_least(
        "matching.edges",
        edges.len() as f64,
        target as f64,
    )];
    ExtractionResult::from_edges(edges, Guarantee::MaximumMatching).checked(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::instances::{complete_bipartite, sample_gnp_uniform, star};

    #[test]
    fn half_cut_keeps_half_of_each_degree() {
        for seed in 0..20 {
            let g = sample_gnp_uniform(30, 0.3, seed).unwrap();
            let parts = bipartite_half(&g);
            assert!(parts.a.len() >= parts.b.len());
            assert_eq!(parts.a.len() + parts.b.len(), 30);
            for v in 0..30 {
                let mine = parts.a.contains(v);
                let across = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| parts.a.contains(w) != mine)
                    .count();
                assert!(2 * across >= g.degree(v));
            }
        }
        let parts = bipartite_half(&cycle(6));
        assert_eq!(parts.a.as_slice(), &[0, 2, 4]);
    }

    #[test]
    fn hopcroft_karp_matches_brute_force() {
        // K_{3,3} minus a perfect matching still has one
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert_eq!(hopcroft_karp(&adj, 3).iter().flatten().count(), 3);
        let adj = vec![vec![0], vec![0], vec![0, 1]];
        assert_eq!(hopcroft_karp(&adj, 2).iter().flatten().count(), 2);
    }

    #[test]
    fn hall_violation_is_reported() {
        let h = BipartiteGraph::from_lists(2, vec![vec![0], vec![0]]);
        assert!(matches!(
            extract_perfect_matching(&h, &[0, 1], &[0, 1]),
            Err(Error::HallViolation {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn tight_set_of_complete_bipartite() {
        let h = BipartiteGraph::from_lists(2, vec![vec![0, 1]; 3]);
        let (t, n) = min_tight_set(&h, &[0, 1, 2]).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(n, vec![0, 1]);
    }

    #[test]
    fn tight_set_is_inclusion_minimal() {
        // a_0 - b_0 alone is tight, and so is the whole side
        let h = BipartiteGraph::from_lists(3, vec![vec![0], vec![0, 1, 2], vec![1, 2]]);
        let (t, n) = min_tight_set(&h, &[0, 1, 2]).unwrap();
        assert_eq!((t, n), (vec![0], vec![0]));
        assert!(min_tight_set(&h, &[1]).is_err());
    }

    #[test]
    fn cascade_on_complete_bipartite() {
        let g = complete_bipartite(4, 8).unwrap();
        let parts = Bipartition {
            a: (4..8).collect(),
            b: (0..4).collect(),
        };
        let h = BipartiteGraph::crossing(&g, &parts);
        let state = matching_cascade(&h, 4).unwrap();
        let mut used = BTreeSet::new();
        assert_eq!(state.a_size(1), 4);
        for (m, r) in state.matchings.iter().zip(&state.rounds) {
            assert_eq!((m.len(), r.b_size), (r.a_size, r.a_size));
            for e in m {
                assert!(used.insert(*e), "matchings share an edge");
            }
        }
        assert!(state.rounds.windows(2).all(|w| w[1].a_size <= w[0].a_size));
        assert!(matching_cascade(&h, 5).is_err());
    }

    #[test]
    fn cascade_on_small_bipartite() {
        for k in [3, 5] {
            let out = edge_cascade(&complete_bipartite(k, 50).unwrap()).unwrap();
            assert!(!out.result.guaranteed);
            assert!(out.result.edge_count() <= 5 * k * k);
            assert!(out.result.stats.is_nearly_regular(&int(5)));
        }
    }

    #[test]
    fn cascade_on_dense_random_graph() {
        let g = sample_gnp_uniform(200, 0.5, 1).unwrap();
        let out = edge_cascade(&g).unwrap();
        assert!(out.result.guaranteed);
        assert!(out.result.all_bounds_pass());
        assert_eq!(out.dyadic_degree, 64);
        assert_eq!(out.cascade.rounds.len(), 16);
    }

    #[test]
    fn maximum_matching_examples() {
        assert_eq!(matching_lower_bound(&complete(7)).unwrap().edge_count(), 3);
        assert_eq!(
            matching_lower_bound(&star(6).unwrap())
                .unwrap()
                .edge_count(),
            1
        );
        assert_eq!(matching_lower_bound(&cycle(5)).unwrap().edge_count(), 2);
        let r = matching_lower_bound(&Graph::empty(3)).unwrap();
        assert_eq!(r.edge_count(), 0);
    }
}
