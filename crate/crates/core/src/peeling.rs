//! Degree peeling for large ratios.
//!
//! Two peels are provided: [`peel_below`] deletes vertices of small degree
//! against a frozen threshold, [`reduce_max_degree`] deletes high-degree
//! vertices in rounds until `Δ <= k·d`. Their composition,
//! [`large_ratio_pipeline`], yields a `c`-nearly regular induced subgraph
//! for any `c > 2`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rational, to_f64, Rational};
use crate::graph::{Graph, Subgraph};
use crate::report::{BoundCheck, ExtractionResult, Guarantee};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub vertex: usize,
    /// Degree in the current graph at the moment of deletion.
    pub degree: usize,
    pub round: usize,
}

/// Ordered record of deletions, with the threshold used in each round.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
    pub thresholds: Vec<f64>,
    #[serde(skip)]
    pub exact_thresholds: Vec<Rational>,
}

impl PeelTrace {
    fn open_round(&mut self, threshold: &Rational) -> usize {
        self.thresholds.push(to_f64(threshold));
        self.exact_thresholds.push(*threshold);
        self.thresholds.len() - 1
    }

    pub fn deleted(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.vertex)
    }

    /// Re-expresses vertex ids through `ids` (local → host).
    pub(crate) fn relabel(mut self, ids: &[usize]) -> Self {
        for s in &mut self.steps {
            s.vertex = ids[s.vertex];
        }
        self
    }
}

/// Mutable peeling state over one graph: alive flags and current degrees.
pub(crate) struct PeelState<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl<'g> PeelState<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        PeelState {
            g,
            alive: vec![true; g.n()],
            deg: g.degrees(),
        }
    }

    pub(crate) fn remove(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    /// Deletes eligible vertices one at a time, lowest id first, recomputing
    /// degrees after every deletion. Stops early once `cap` deletions were
    /// made; returns true if an eligible vertex remained at that point.
    pub(crate) fn peel<F>(
        &mut self,
        eligible: F,
        round: usize,
        cap: Option<usize>,
        trace: &mut PeelTrace,
    ) -> bool
    where
        F: Fn(usize) -> bool,
    {
        let mut queue: BTreeSet<usize> = (0..self.g.n())
            .filter(|&v| self.alive[v] && eligible(self.deg[v]))
            .collect();
        let mut deleted = 0;
        while let Some(v) = queue.pop_first() {
            if cap.is_some_and(|c| deleted >= c) {
                return true;
            }
            trace.steps.push(PeelStep {
                vertex: v,
                degree: self.deg[v],
                round,
            });
            self.remove(v);
            deleted += 1;
            for &w in self.g.neighbors(v) {
                if !self.alive[w] {
                    continue;
                }
                if eligible(self.deg[w]) {
                    queue.insert(w);
                } else {
                    queue.remove(&w);
                }
            }
        }
        false
    }

    pub(crate) fn survivors(&self) -> Vec<usize> {
        (0..self.g.n()).filter(|&v| self.alive[v]).collect()
    }

    pub(crate) fn into_subgraph(self) -> Subgraph {
        let keep = self.survivors();
        self.g.induced_unchecked(&keep)
    }
}

/// Result of a peel: the surviving induced subgraph and the deletion trace.
#[derive(Clone, Debug)]
pub struct Peeled {
    pub kept: Subgraph,
    pub trace: PeelTrace,
}

/// Repeatedly deletes the lowest-id vertex of degree `< threshold`.
pub fn peel_below(g: &Graph, threshold: &Rational) -> Peeled {
    let mut trace = PeelTrace::default();
    let round = trace.open_round(threshold);
    let mut state = PeelState::new(g);
    state.peel(|d| int(d) < *threshold, round, None, &mut trace);
    Peeled {
        kept: state.into_subgraph(),
        trace,
    }
}

/// Output of [`refine_min_degree`] and [`large_ratio_pipeline`].
#[derive(Clone, Debug)]
pub struct Refined {
    pub result: ExtractionResult,
    /// Deletions, in input ids.
    pub trace: PeelTrace,
}

fn check_k(k: f64) -> Result<Rational> {
    let k = rational("k", k)?;
    if k <= Rational::one() {
        return Err(Error::param("k", "must exceed 1"));
    }
    Ok(k)
}

fn check_alpha(alpha: f64) -> Result<Rational> {
    let a = rational("alpha", alpha)?;
    if a <= Rational::zero() || a >= Rational::new(1, 2) {
        return Err(Error::param("alpha", "must lie strictly between 0 and 1/2"));
    }
    Ok(a)
}

/// Min-degree refine of a subgraph; returns kept (local ids of `g`),
/// trace in local ids, and the three bounds.
pub(crate) fn refine_graph(
    g: &Graph,
    k: &Rational,
    alpha: &Rational,
) -> Result<(Subgraph, PeelTrace, Vec<BoundCheck>)> {
    let n = g.n();
    let d = g.avg_degree();
    if d.is_zero() {
        // d = 0: the threshold is 0 and nothing is deleted.
        let kept = Subgraph::whole(g);
        let bounds = refine_bounds(&kept.graph, n, g.m(), k, alpha);
        return Ok((kept, PeelTrace::default(), bounds));
    }
    if int(g.max_degree()) > k * d {
        return Err(Error::Precondition(format!(
            "max degree {} exceeds k·d = {:.4}; reduce the maximum degree first",
            g.max_degree(),
            to_f64(&(k * d))
        )));
    }
    let peeled = peel_below(g, &(alpha * d));
    let bounds = refine_bounds(&peeled.kept.graph, n, g.m(), k, alpha);
    Ok((peeled.kept, peeled.trace, bounds))
}

fn refine_bounds(
    out: &Graph,
    n: usize,
    m: usize,
    k: &Rational,
    alpha: &Rational,
) -> Vec<BoundCheck> {
    let two = int(2);
    let size_factor = (Rational::one() - two * alpha) / (k - two * alpha);
    let edge_factor = (k - two * k * alpha) / (two * k - int(4) * alpha);
    vec![
        BoundCheck::ratio_at_most("refine.ratio", &out.stats(), &(k / alpha)),
        BoundCheck::at_least_exact("refine.vertices", &int(out.n()), &(size_factor * int(n))),
        // n·d = 2m
        BoundCheck::at_least_exact("refine.edges", &int(out.m()), &(edge_factor * int(2 * m))),
    ]
}

/// Deletes vertices of degree `< α·d(g)` (the average degree of the input)
/// and returns a `(k/α)`-nearly regular induced subgraph.
///
/// Requires `Δ(g) <= k·d(g)`, `k > 1` and `0 < α < 1/2`. The ratio, the
/// vertex count `(1−2α)n/(k−2α)` and the edge count `(k−2kα)nd/(2k−4α)`
/// are all checked before returning.
pub fn refine_min_degree(g: &Graph, k: f64, alpha: f64) -> Result<Refined> {
    let (k, alpha) = (check_k(k)?, check_alpha(alpha)?);
    let (kept, trace, bounds) = refine_graph(g, &k, &alpha)?;
    let result = ExtractionResult::induced(g, kept.host_set(), Guarantee::MinDegreeRefine)?
        .checked(bounds)?;
    Ok(Refined { result, trace })
}

/// Output of [`reduce_max_degree`].
#[derive(Clone, Debug)]
pub struct Reduced {
    pub kept: Subgraph,
    pub trace: PeelTrace,
    /// Number of rounds that deleted vertices.
    pub rounds: usize,
    pub bounds: Vec<BoundCheck>,
}

/// `⌈log₂ n⌉`, zero for `n <= 1`.
pub fn round_limit(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `n^{1+log₂(1−1/k)}`, the guaranteed size after max-degree reduction.
pub fn reduction_size_bound(n: usize, k: &Rational) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let k = to_f64(k);
    (n as f64).powf(1.0 + (1.0 - 1.0 / k).log2())
}

/// Rounds of max-degree deletion until `Δ <= k·d`.
///
/// In round `i` the average degree `d_i` is frozen, and vertices of degree
/// `>= k·d_i/2` are deleted one by one (lowest id first, degrees recomputed).
/// At most `⌈log₂ n⌉` rounds run. The output keeps at least
/// `n^{1+log₂(1−1/k)}` vertices.
pub fn reduce_max_degree(g: &Graph, k: f64) -> Result<Reduced> {
    let k = check_k(k)?;
    let reduced = reduce_graph(g, &k);
    crate::report::enforce(&reduced.bounds)?;
    Ok(reduced)
}

pub(crate) fn reduce_graph(g: &Graph, k: &Rational) -> Reduced {
    let limit = round_limit(g.n());
    let mut current = Subgraph::whole(g);
    let mut trace = PeelTrace::default();
    let mut rounds = 0;
    for round in 0..=limit {
        let d = current.graph.avg_degree();
        if int(current.graph.max_degree()) <= k * d {
            break;
        }
        // The halving argument makes this unreachable: Δ < 1 after `limit` rounds.
        assert!(
            round < limit,
            "max-degree reduction did not settle in {limit} rounds"
        );
        let threshold = k * d / int(2);
        let idx = trace.open_round(&threshold);
        let mut local = PeelTrace::default();
        let mut state = PeelState::new(&current.graph);
        state.peel(|deg| int(deg) >= threshold, idx, None, &mut local);
        trace.steps.extend(local.relabel(&current.ids).steps);
        let inner = state.into_subgraph();
        current = current.compose(inner);
        rounds += 1;
    }
    let out = &current.graph;
    let bounds = vec![
        BoundCheck::at_most_exact(
            "reduce.max-degree",
            &int(out.max_degree()),
            &(k * out.avg_degree()),
        ),
        BoundCheck::at_least(
            "reduce.vertices",
            out.n() as f64,
            reduction_size_bound(g.n(), k),
        ),
    ];
    Reduced {
        kept: current,
        trace,
        rounds,
        bounds,
    }
}

/// Split of `c` into the reduction constant `k₁` and the refine constant `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LargeRatioSplit {
    pub alpha: f64,
    pub k: f64,
}

/// `c`-nearly regular induced subgraph for `c > 2`: max-degree reduction with
/// `k₁ = α·c`, then the min-degree refine with `(k₁, α)`.
///
/// `alpha` defaults to the midpoint of `(1/c, 1/2)`; any value inside works.
pub fn large_ratio_pipeline(g: &Graph, c: f64, alpha: Option<f64>) -> Result<Refined> {
    let c_exact = rational("c", c)?;
    if c_exact <= int(2) {
        return Err(Error::param(
            "c",
            "must exceed 2 so that 1/c < alpha < 1/2 exists",
        ));
    }
    let half = Rational::new(1, 2);
    let alpha = match alpha {
        Some(a) => rational("alpha", a)?,
        None => (c_exact.recip() + half) / int(2),
    };
    if alpha <= c_exact.recip() || alpha >= half {
        return Err(Error::param(
            "alpha",
            "must lie strictly between 1/c and 1/2",
        ));
    }
    let k1 = alpha * c_exact;

    let reduced = reduce_graph(g, &k1);
    let (kept, local_trace, refine) = refine_graph(&reduced.kept.graph, &k1, &alpha)?;
    let kept = reduced.kept.compose(kept);

    let mut trace = reduced.trace.clone();
    let offset = trace.thresholds.len();
    trace.thresholds.extend(local_trace.thresholds.iter());
    trace
        .exact_thresholds
        .extend(local_trace.exact_thresholds.iter());
    trace.steps.extend(
        local_trace
            .relabel(&reduced.kept.ids)
            .steps
            .into_iter()
            .map(|s| PeelStep {
                round: s.round + offset,
                ..s
            }),
    );

    let two = int(2);
    let size_factor = (Rational::one() - two * alpha) / (k1 - two * alpha);
    let stats = kept.graph.stats();
    let mut bounds = reduced.bounds.clone();
    bounds.extend(refine);
    bounds.push(BoundCheck::ratio_at_most(
        "large-ratio.ratio",
        &stats,
        &c_exact,
    ));
    bounds.push(BoundCheck::at_least(
        "large-ratio.vertices",
        stats.n as f64,
        to_f64(&size_factor) * reduction_size_bound(g.n(), &k1),
    ));
    let result =
        ExtractionResult::induced(g, kept.host_set(), Guarantee::LargeRatio)?.checked(bounds)?;
    Ok(Refined { result, trace })
}

/// The `(α, k₁)` split used by [`large_ratio_pipeline`] for a given `c`.
pub fn default_split(c: f64) -> LargeRatioSplit {
    let alpha = (1.0 / c + 0.5) / 2.0;
    LargeRatioSplit {
        alpha,
        k: alpha * c,
    }
}
