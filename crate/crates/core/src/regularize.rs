//! Nearly regular subgraphs for ratios close to 1.
//!
//! The route is: boost the density by passing to denser induced subgraphs
//! until no subset of at least an `ε` fraction is `(1+ε)` times denser
//! ([`density_boost`]); such a graph has small edge boundaries
//! ([`check_edge_boundary`]), so trimming its top-degree vertices and peeling
//! a few low-degree ones leaves a `(1+6√ε)`-nearly regular graph
//! ([`trim_top_degree`]). [`dense_pipeline`] composes the two with
//! `ε₀ = ε²/36`; [`sparse_dichotomy`] falls back to a Turán independent set
//! when the input is too sparse.

use std::collections::BTreeSet;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    ceil_count, choose2, floor_count, floor_two_sqrt_eps_n, int, rational, to_f64, Rational,
};
use crate::graph::{Graph, Subgraph, VertexSet, BITSET_LIMIT};
use crate::peeling::{PeelState, PeelTrace};
use crate::report::{enforce, BoundCheck, ExtractionResult, Guarantee};

/// Fallback used above the exact search limit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenseFinder {
    /// Peel minimum-degree vertices and test every remaining suffix.
    #[default]
    MinDegreeSuffix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostParams {
    pub epsilon: f64,
    /// Graphs up to this order are searched exhaustively (at most 64).
    pub exact_limit: usize,
    pub heuristic: DenseFinder,
}

impl Default for BoostParams {
    fn default() -> Self {
        BoostParams {
            epsilon: 0.1,
            exact_limit: 24,
            heuristic: DenseFinder::MinDegreeSuffix,
        }
    }
}

impl BoostParams {
    pub fn with_epsilon(epsilon: f64) -> Self {
        BoostParams {
            epsilon,
            ..Self::default()
        }
    }

    pub fn exact_limit(mut self, limit: usize) -> Self {
        self.exact_limit = limit;
        self
    }
}

/// Answer of [`find_dense_subset`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSearch {
    pub subset: Option<VertexSet>,
    /// True when the search was exhaustive, so `None` proves no subset exists.
    pub exact: bool,
    /// Search nodes visited by the exact search.
    pub explored: u64,
}

fn check_eps(eps: f64) -> Result<Rational> {
    let e = rational("epsilon", eps)?;
    if e <= Rational::zero() || e >= Rational::one() {
        return Err(Error::param("epsilon", "must lie strictly between 0 and 1"));
    }
    Ok(e)
}

/// Qualification rule for a candidate subset of a graph with `m` edges on `n`
/// vertices: `|U| >= max(2, ⌈εn⌉)` and `e(U)/C(|U|,2) >= p(1+ε)`.
#[derive(Clone, Copy, Debug)]
struct DenseRule {
    min_size: usize,
    /// `p(1+ε)` as `num/den`.
    num: i128,
    den: i128,
}

impl DenseRule {
    fn new(g: &Graph, eps: &Rational) -> Self {
        let q = g.density() * (Rational::one() + eps);
        DenseRule {
            min_size: ceil_count(&(eps * int(g.n()))).max(2),
            num: *q.numer(),
            den: *q.denom(),
        }
    }

    fn impossible(&self) -> bool {
        self.num > self.den
    }

    fn qualifies(&self, edges: usize, size: usize) -> bool {
        size >= self.min_size && edges as i128 * self.den >= choose2(size) as i128 * self.num
    }
}

/// Orders `(edges, size)` candidates by density, then by size.
fn cmp_candidates(a: (usize, usize), b: (usize, usize)) -> std::cmp::Ordering {
    let lhs = a.0 as u128 * choose2(b.1) as u128;
    let rhs = b.0 as u128 * choose2(a.1) as u128;
    lhs.cmp(&rhs).then(a.1.cmp(&b.1))
}

/// Searches for `U` with `|U| >= εn` spanning at least `C(|U|,2)·p·(1+ε)`
/// edges (`p` the density of `g`), returning the densest such set (ties go
/// to the larger, then the lexicographically least).
///
/// Up to `params.exact_limit` vertices the search is exhaustive
/// branch-and-bound over bitsets and `None` certifies that no such set
/// exists. Above it, the min-degree suffix scan is used and `None` proves
/// nothing.
pub fn find_dense_subset(g: &Graph, eps: f64, params: &BoostParams) -> Result<DenseSearch> {
    let eps = check_eps(eps)?;
    if g.m() == 0 {
        return Err(Error::Precondition(
            "dense subset search needs at least one edge".into(),
        ));
    }
    Ok(dense_search(g, &eps, params))
}

fn dense_search(g: &Graph, eps: &Rational, params: &BoostParams) -> DenseSearch {
    let rule = DenseRule::new(g, eps);
    if rule.impossible() {
        // p(1+ε) > 1 exceeds every possible density
        return DenseSearch {
            subset: None,
            exact: true,
            explored: 0,
        };
    }
    let seed = suffix_scan(g, &rule);
    if g.n() <= params.exact_limit.min(BITSET_LIMIT) {
        let (subset, explored) = ExactDense::run(g, rule, seed);
        DenseSearch {
            subset,
            exact: true,
            explored,
        }
    } else {
        DenseSearch {
            subset: seed.map(VertexSet::new),
            exact: false,
            explored: 0,
        }
    }
}

/// Peels minimum-degree vertices (lowest id first) and returns the densest
/// qualifying remainder.
fn suffix_scan(g: &Graph, rule: &DenseRule) -> Option<Vec<usize>> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut edges = g.m();
    let mut best: Option<((usize, usize), usize)> = None;
    for removed in 0..n {
        let size = n - removed;
        if size < rule.min_size {
            break;
        }
        if rule.qualifies(edges, size)
            && best.is_none_or(|(b, _)| cmp_candidates((edges, size), b).is_gt())
        {
            best = Some(((edges, size), removed));
        }
        let (_, v) = queue.pop_first().unwrap();
        alive[v] = false;
        order.push(v);
        edges -= deg[v];
        for &w in g.neighbors(v) {
            if alive[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    best.map(|(_, removed)| {
        let gone: BTreeSet<usize> = order[..removed].iter().copied().collect();
        (0..n).filter(|v| !gone.contains(v)).collect()
    })
}

/// Exhaustive branch-and-bound over subsets, include-first in id order, so
/// the first optimum met is the lexicographically least.
struct ExactDense<'a> {
    rows: &'a [u64],
    n: usize,
    rule: DenseRule,
    /// Edges inside `{i..n}` for each `i`.
    suffix_edges: Vec<usize>,
    best: Option<((usize, usize), u64)>,
    explored: u64,
    buckets: Vec<usize>,
}

impl<'a> ExactDense<'a> {
    fn run(g: &'a Graph, rule: DenseRule, seed: Option<Vec<usize>>) -> (Option<VertexSet>, u64) {
        let rows = g.rows().expect("exact search requires bitset rows");
        let n = g.n();
        let mut suffix_edges = vec![0; n + 1];
        for i in (0..n).rev() {
            let later = rows[i] & !((1u64 << i) | ((1u64 << i) - 1));
            suffix_edges[i] = suffix_edges[i + 1] + later.count_ones() as usize;
        }
        let best = seed.map(|set| {
            let bits = set.iter().fold(0u64, |acc, &v| acc | 1 << v);
            ((edges_in(rows, bits), set.len()), bits)
        });
        let mut search = ExactDense {
            rows,
            n,
            rule,
            suffix_edges,
            best,
            explored: 0,
            buckets: vec![0; n + 1],
        };
        search.dfs(0, 0, 0, 0);
        let subset = search
            .best
            .map(|(_, bits)| (0..n).filter(|&v| bits >> v & 1 == 1).collect());
        (subset, search.explored)
    }

    /// Whether `cand` should replace the incumbent; equal candidates win
    /// when lexicographically smaller.
    fn accepts(&self, cand: (usize, usize), bits: u64) -> bool {
        match self.best {
            None => true,
            Some((b, b_bits)) => match cmp_candidates(cand, b) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => {
                    let diff = bits ^ b_bits;
                    diff != 0 && bits & (diff & diff.wrapping_neg()) != 0
                }
                std::cmp::Ordering::Less => false,
            },
        }
    }

    fn dfs(&mut self, i: usize, set: u64, size: usize, edges: usize) {
        self.explored += 1;
        if i == self.n {
            if self.rule.qualifies(edges, size) && self.accepts((edges, size), set) {
                self.best = Some(((edges, size), set));
            }
            return;
        }
        if !self.promising(i, set, size, edges) {
            return;
        }
        let gain = (self.rows[i] & set).count_ones() as usize;
        self.dfs(i + 1, set | 1 << i, size + 1, edges + gain);
        self.dfs(i + 1, set, size, edges);
    }

    /// Upper-bounds every completion `U ∪ S`, `S ⊆ {i..n}`, `|S| = j`, by
    /// `e(U) + (top j of |N(v) ∩ U|) + min(C(j,2), e({i..n}))` edges.
    fn promising(&mut self, i: usize, set: u64, size: usize, edges: usize) -> bool {
        let remaining = self.n - i;
        self.buckets[..=size].fill(0);
        for v in i..self.n {
            self.buckets[(self.rows[v] & set).count_ones() as usize] += 1;
        }
        let mut top = 0;
        let mut j = 0;
        let mut level = size;
        let mut left_in_level = self.buckets[size];
        loop {
            let total = size + j;
            if total >= self.rule.min_size {
                let inner = choose2(j).min(self.suffix_edges[i]);
                let ub = (edges + top + inner).min(choose2(total));
                let viable = self.rule.qualifies(ub, total)
                    && match self.best {
                        None => true,
                        // ties stay open: a lexicographically smaller optimum may follow
                        Some((b, _)) => cmp_candidates((ub, total), b).is_ge(),
                    };
                if viable {
                    return true;
                }
            }
            if j == remaining {
                return false;
            }
            while left_in_level == 0 {
                level -= 1;
                left_in_level = self.buckets[level];
            }
            top += level;
            left_in_level -= 1;
            j += 1;
        }
    }
}

fn edges_in(rows: &[u64], bits: u64) -> usize {
    let mut total = 0;
    let mut rest = bits;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        total += (rows[v] & bits).count_ones() as usize;
        rest &= rest - 1;
    }
    total / 2
}

/// One increment step of the density boost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostRound {
    pub vertices: usize,
    pub edges: usize,
    pub density: f64,
    pub exact: bool,
}

/// Outcome of [`density_boost`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoostOutcome {
    #[serde(skip)]
    pub subgraph: Option<Subgraph>,
    /// Output vertices in input ids.
    pub vertices: VertexSet,
    pub initial_density: f64,
    pub density: f64,
    /// Every search on the way was exhaustive, so the output provably has no
    /// `(1+ε)`-denser subset of at least `ε n′` vertices.
    pub certified: bool,
    pub rounds: usize,
    pub history: Vec<BoostRound>,
    pub bounds: Vec<BoundCheck>,
}

impl BoostOutcome {
    pub fn graph(&self) -> &Graph {
        &self
            .subgraph
            .as_ref()
            .expect("boost outcome carries its subgraph")
            .graph
    }
}

/// `(2/ε)·ln(1/p)`, the round budget of the density boost.
pub fn boost_round_bound(eps: f64, p: f64) -> f64 {
    2.0 / eps * (1.0 / p).ln()
}

/// `ε^{(2/ε)ln(1/p)}·n`, the guaranteed size of a certified boost output.
pub fn boost_size_bound(eps: f64, p: f64, n: usize) -> f64 {
    (eps.ln() * boost_round_bound(eps, p)).exp() * n as f64
}

/// Repeatedly replaces the graph by a `(1+ε)`-denser induced subgraph on at
/// least an `ε` fraction of its vertices until none exists.
///
/// Each round multiplies the density by at least `1+ε`. When every search was
/// exhaustive the outcome is certified and the round bound
/// `rounds < (2/ε)ln(1/p)` and size bound `n′ >= ε^{(2/ε)ln(1/p)}·n` are
/// checked as well.
pub fn density_boost(g: &Graph, params: &BoostParams) -> Result<BoostOutcome> {
    let eps = check_eps(params.epsilon)?;
    if g.m() == 0 {
        return Err(Error::Precondition(
            "density boost needs at least one edge".into(),
        ));
    }
    let outcome = boost(g, &eps, params);
    enforce(&outcome.bounds)?;
    Ok(outcome)
}

fn boost(g: &Graph, eps: &Rational, params: &BoostParams) -> BoostOutcome {
    let mut current = Subgraph::whole(g);
    let mut certified = true;
    let mut history = Vec::new();
    let mut worst_growth: Option<Rational> = None;
    loop {
        let search = dense_search(&current.graph, eps, params);
        certified &= search.exact;
        history.push(BoostRound {
            vertices: current.graph.n(),
            edges: current.graph.m(),
            density: to_f64(&current.graph.density()),
            exact: search.exact,
        });
        let Some(subset) = search.subset else { break };
        let next = current.restrict(subset.as_slice());
        let growth = next.graph.density() / current.graph.density();
        worst_growth = Some(worst_growth.map_or(growth, |w: Rational| w.min(growth)));
        current = next;
    }

    let rounds = history.len() - 1;
    let p0 = to_f64(&g.density());
    let eps_f = to_f64(eps);
    let mut bounds = Vec::new();
    if let Some(growth) = worst_growth {
        bounds.push(BoundCheck::at_least_exact(
            "boost.density-growth",
            &growth,
            &(Rational::one() + eps),
        ));
    }
    if certified {
        let round_bound = boost_round_bound(eps_f, p0);
        // with p = 1 the budget is 0 and no round can run
        bounds.push(if rounds == 0 {
            BoundCheck::at_most("boost.rounds", 0.0, round_bound)
        } else {
            BoundCheck::below("boost.rounds", rounds as f64, round_bound)
        });
        bounds.push(BoundCheck::at_least(
            "boost.vertices",
            current.graph.n() as f64,
            boost_size_bound(eps_f, p0, g.n()),
        ));
    }
    BoostOutcome {
        vertices: current.host_set(),
        initial_density: p0,
        density: to_f64(&current.graph.density()),
        subgraph: Some(current),
        certified,
        rounds,
        history,
        bounds,
    }
}

/// True iff `e(U, V∖U) <= ε·n²·p·(1+2√ε)`. `u` must have exactly `⌊εn⌋`
/// vertices.
pub fn check_edge_boundary(g: &Graph, u: &VertexSet, eps: f64) -> Result<bool> {
    let eps_r = check_eps(eps)?;
    let n = g.n();
    let expected = floor_count(&(eps_r * int(n)));
    if u.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            got: u.len(),
        });
    }
    if let Some(&bad) = u.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    Ok(boundary_edges(g, u) as f64 <= boundary_limit(g, eps))
}

/// `ε·n²·p·(1+2√ε)`.
pub fn boundary_limit(g: &Graph, eps: f64) -> f64 {
    let n = g.n() as f64;
    eps * n * n * to_f64(&g.density()) * (1.0 + 2.0 * eps.sqrt())
}

pub fn boundary_edges(g: &Graph, u: &VertexSet) -> usize {
    u.iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| !u.contains(w)).count())
        .sum()
}

/// Whether the averaging argument behind the boundary bound goes through at
/// this finite size: some `x` makes the expected edge count of `U ∪ X`, for
/// a random `x`-subset `X` of the complement, exceed what a uniformly dense
/// graph allows whenever the boundary exceeds the limit.
///
/// When true, every graph on `n` vertices with `m` edges in which no set of
/// at least `εn` vertices spans `C(t,2)·p·(1+ε)` or more edges satisfies
/// [`check_edge_boundary`] for every `U` of size `⌊εn⌋`.
pub fn boundary_bound_provable(n: usize, m: usize, eps: f64) -> bool {
    if n < 2 || m == 0 {
        return true;
    }
    let p = m as f64 / choose2(n) as f64;
    let u = (eps * n as f64).floor() as usize;
    let rest = n - u;
    let limit = eps * (n * n) as f64 * p * (1.0 + 2.0 * eps.sqrt());
    if (u * rest) as f64 <= limit {
        // the boundary cannot exceed the limit at all
        return true;
    }
    let min_size = ((eps * n as f64).ceil() as usize).max(2);
    (1..=rest).any(|x| {
        if u + x < min_size {
            return false;
        }
        let a = x as f64 / rest as f64;
        let b = if rest > 1 {
            (x * (x - 1)) as f64 / (rest * (rest - 1)) as f64
        } else {
            0.0
        };
        let expected_floor = limit * (a - b) + b * m as f64;
        expected_floor >= choose2(u + x) as f64 * p * (1.0 + eps)
    })
}

/// Bounds on the output of [`trim_top_degree`] for an input with `n`
/// vertices and density `p`.
fn trim_bounds(out: &Graph, n: usize, p: f64, eps: f64) -> Vec<BoundCheck> {
    let root = eps.sqrt();
    let np = n as f64 * p;
    let stats = out.stats();
    vec![
        BoundCheck::at_least(
            "trim.vertices",
            stats.n as f64,
            (1.0 - eps - 2.0 * root) * n as f64,
        ),
        BoundCheck::at_most(
            "trim.max-degree",
            stats.max_deg as f64,
            (1.0 + 3.0 * root) * np,
        ),
        BoundCheck::at_least(
            "trim.min-degree",
            stats.min_deg as f64,
            (1.0 - 2.0 * root) * np,
        ),
        BoundCheck::at_most(
            "trim.ratio",
            stats.ratio().unwrap_or(f64::INFINITY),
            1.0 + 6.0 * root,
        ),
    ]
}

/// Removes the `⌊εn⌋` highest-degree vertices, then peels vertices of degree
/// `< n·p·(1−2√ε)` (lowest id first), allowing at most `⌊2√ε·n⌋` deletions.
/// Returns the kept local ids, the trace, and the bound ledger.
pub(crate) fn trim_graph(
    g: &Graph,
    eps: &Rational,
) -> Result<(Subgraph, PeelTrace, Vec<BoundCheck>)> {
    let n = g.n();
    let p = to_f64(&g.density());
    let eps_f = to_f64(eps);

    let top = floor_count(&(eps * int(n)));
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut trace = PeelTrace::default();
    let mut state = PeelState::new(g);
    for &v in &by_degree[..top] {
        state.remove(v);
    }
    let threshold = n as f64 * p * (1.0 - 2.0 * eps_f.sqrt());
    trace.thresholds.push(threshold);
    let cap = floor_two_sqrt_eps_n(eps, n);
    if state.peel(|d| (d as f64) < threshold, 0, Some(cap), &mut trace) {
        return Err(Error::PeelCapExceeded { cap });
    }
    let kept = state.into_subgraph();
    let bounds = trim_bounds(&kept.graph, n, p, eps_f);
    Ok((kept, trace, bounds))
}

/// Top-degree trim: on a uniformly dense graph (no set of `>= εn` vertices is
/// `(1+ε)` times denser than the whole), returns an induced subgraph on at
/// least `(1−ε−2√ε)n` vertices with degrees between `(1−2√ε)np` and
/// `(1+3√ε)np`, hence `(1+6√ε)`-nearly regular.
///
/// Fails with [`Error::PeelCapExceeded`] when the low-degree peel needs more
/// than `⌊2√ε·n⌋` deletions, which shows the input was not uniformly dense.
pub fn trim_top_degree(g: &Graph, eps: f64) -> Result<ExtractionResult> {
    let eps = check_eps(eps)?;
    if g.m() == 0 {
        return Err(Error::Precondition(
            "top-degree trim needs at least one edge".into(),
        ));
    }
    let (kept, _, bounds) = trim_graph(g, &eps)?;
    ExtractionResult::induced(g, kept.host_set(), Guarantee::TopDegreeTrim)?.checked(bounds)
}

/// Greedy independent set: repeatedly take the lowest-id vertex of minimum
/// current degree and delete it together with its neighbors. The result has
/// at least `n/(d+1)` vertices.
pub fn turan_independent_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut deg = g.degrees();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut chosen = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        chosen.push(v);
        let mut gone = vec![v];
        for &w in g.neighbors(v) {
            if alive[w] {
                gone.push(w);
            }
        }
        for &x in &gone {
            alive[x] = false;
            queue.remove(&(deg[x], x));
        }
        for &x in &gone[1..] {
            for &y in g.neighbors(x) {
                if alive[y] {
                    queue.remove(&(deg[y], y));
                    deg[y] -= 1;
                    queue.insert((deg[y], y));
                }
            }
        }
    }
    let set = VertexSet::new(chosen);
    assert!(
        int(set.len()) * (g.avg_degree() + int(1)) >= int(n),
        "greedy independent set below n/(d+1)"
    );
    set
}

fn turan_bounds(g: &Graph, set: &VertexSet) -> Vec<BoundCheck> {
    let target = if g.n() == 0 {
        Rational::zero()
    } else {
        int(g.n()) / (g.avg_degree() + int(1))
    };
    vec![
        BoundCheck::at_least_exact("turan.size", &int(set.len()), &target),
        BoundCheck::at_most("turan.independent", g.edges_within(set) as f64, 0.0),
    ]
}

/// [`turan_independent_set`] packaged with its bound ledger.
pub fn turan_extraction(g: &Graph) -> Result<ExtractionResult> {
    let set = turan_independent_set(g);
    let bounds = turan_bounds(g, &set);
    ExtractionResult::induced(g, set, Guarantee::TuranIndependentSet)?.checked(bounds)
}

/// Largest ε for which [`dense_pipeline`] claims its guarantee.
pub const DENSE_EPS_GUARD: f64 = 0.5;
/// Largest ε for which [`sparse_dichotomy`] claims its guarantee.
pub const SPARSE_EPS_GUARD: f64 = 0.1;

/// Output of the two small-ratio pipelines.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmallRatioOutcome {
    pub result: ExtractionResult,
    /// Absent on the independent-set branch.
    pub boost: Option<BoostOutcome>,
    /// `ε₀ = ε²/36`, the parameter handed to boost and trim.
    pub inner_epsilon: f64,
}

/// `0.5·(ε/6)^{(144/ε²)ln(1/p)}·n`.
pub fn dense_size_bound(eps: f64, p: f64, n: usize) -> f64 {
    0.5 * ((eps / 6.0).ln() * 144.0 / (eps * eps) * (1.0 / p).ln()).exp() * n as f64
}

fn boost_then_trim(
    g: &Graph,
    eps: &Rational,
    params: &BoostParams,
    guarantee: Guarantee,
) -> Result<SmallRatioOutcome> {
    let inner = eps * eps / int(36);
    let outcome = boost(g, &inner, params);
    enforce(&outcome.bounds)?;
    let boosted = outcome.subgraph.as_ref().expect("fresh boost outcome");
    let (kept, _, mut bounds) = trim_graph(&boosted.graph, &inner)?;
    let kept = boosted.compose(kept);

    let stats = kept.graph.stats();
    bounds.extend(outcome.bounds.iter().cloned());
    bounds.push(BoundCheck::ratio_at_most(
        "small-ratio.ratio",
        &stats,
        &(Rational::one() + eps),
    ));
    if outcome.certified && guarantee == Guarantee::DenseNearRegular {
        bounds.push(BoundCheck::at_least(
            "small-ratio.vertices",
            stats.n as f64,
            dense_size_bound(to_f64(eps), outcome.initial_density, g.n()),
        ));
    }
    let result = ExtractionResult::induced(g, kept.host_set(), guarantee)?.checked(bounds)?;
    Ok(SmallRatioOutcome {
        result,
        boost: Some(outcome),
        inner_epsilon: to_f64(&inner),
    })
}

/// `(1+ε)`-nearly regular induced subgraph of a graph with positive density:
/// density boost with `ε₀ = ε²/36`, then the top-degree trim with `ε₀`.
///
/// For `ε <= 0.5` the result is tagged as guaranteed; when the boost is
/// certified the linear size bound `0.5(ε/6)^{(144/ε²)ln(1/p)}·n` is checked.
/// The boost parameters supply the exact search limit; their `epsilon` is
/// ignored.
pub fn dense_pipeline(g: &Graph, eps: f64, params: &BoostParams) -> Result<SmallRatioOutcome> {
    let eps_r = check_eps(eps)?;
    if g.m() == 0 {
        return Err(Error::Precondition(
            "dense pipeline needs at least one edge".into(),
        ));
    }
    let mut out = boost_then_trim(g, &eps_r, params, Guarantee::DenseNearRegular)?;
    out.result.guaranteed = eps <= DENSE_EPS_GUARD;
    Ok(out)
}

/// Density threshold `n^{−a}` with `a = ε₀/(3·ln(1/ε₀))`, `ε₀ = ε²/36`.
pub fn sparse_density_threshold(n: usize, eps: f64) -> f64 {
    let inner = eps * eps / 36.0;
    let a = inner / (3.0 * (1.0 / inner).ln());
    (n as f64).powf(-a)
}

/// Independent set or `(1+ε)`-nearly regular subgraph.
///
/// With `ε₀ = ε²/36` and `a = ε₀/(3 ln(1/ε₀))`: if the density is below
/// `n^{−a}` the greedy Turán set is returned, otherwise the boost-and-trim
/// route runs with `ε₀`. The guarantee is claimed for `ε <= 0.1`.
pub fn sparse_dichotomy(g: &Graph, eps: f64, params: &BoostParams) -> Result<SmallRatioOutcome> {
    let eps_r = check_eps(eps)?;
    let p = g.density().to_f64().unwrap_or(0.0);
    let guaranteed = eps <= SPARSE_EPS_GUARD;
    let mut out = if g.m() == 0 || p < sparse_density_threshold(g.n(), eps) {
        let set = turan_independent_set(g);
        let bounds = turan_bounds(g, &set);
        SmallRatioOutcome {
            result: ExtractionResult::induced(g, set, Guarantee::TuranBranch)?.checked(bounds)?,
            boost: None,
            inner_epsilon: eps * eps / 36.0,
        }
    } else {
        boost_then_trim(g, &eps_r, params, Guarantee::DenseBranch)?
    };
    out.result.guaranteed = guaranteed;
    Ok(out)
}
