//! Exact answers at small scale and Monte Carlo estimators.
//!
//! [`exact_f`] is the largest induced `c`-nearly regular subgraph by subset
//! search; every constructive algorithm in the crate must stay at or below
//! it. [`exact_f_n`] minimizes it over all labeled graphs of a tiny order.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rational, Rational};
use crate::graph::{Graph, VertexSet, BITSET_LIMIT};
use crate::instances::{blocks, graded_pair_probability};
use crate::rng::Substreams;

/// Default order limit of [`exact_f`].
pub const EXACT_F_DEFAULT_CAP: usize = 24;
/// Largest order [`exact_f_n`] enumerates.
pub const EXACT_F_N_MAX: usize = 7;
/// Largest edge count [`exact_edge_regular`] enumerates.
pub const EDGE_ORACLE_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Vertices(VertexSet),
    Edges(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub value: usize,
    pub witness: Witness,
    /// Search nodes visited.
    pub explored: u64,
}

/// Stand-ins for the unspecified absolute constants of the point-probability
/// and regular-subgraph estimates. Checks against them are calibration only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationConstants {
    pub c0_cap: f64,
    pub c1_cap: f64,
}

impl Default for CalibrationConstants {
    fn default() -> Self {
        CalibrationConstants {
            c0_cap: 3.0,
            c1_cap: 16.0,
        }
    }
}

impl CalibrationConstants {
    pub fn new(c0_cap: f64, c1_cap: f64) -> Result<Self> {
        if !(c0_cap > 0.0 && c1_cap > 0.0) {
            return Err(Error::param("calibration", "caps must be positive"));
        }
        Ok(CalibrationConstants { c0_cap, c1_cap })
    }

    /// `c0_cap/√t`.
    pub fn point_cap(&self, t: usize) -> f64 {
        self.c0_cap / (t as f64).sqrt()
    }

    /// `n·(c1_cap/k)^{k/2}`.
    pub fn regular_cap(&self, n: usize, k: usize) -> f64 {
        n as f64 * (self.c1_cap / k as f64).powf(k as f64 / 2.0)
    }
}

fn ratio_param(c: f64) -> Result<Rational> {
    let c = rational("c", c)?;
    if c < int(1) {
        return Err(Error::param("c", "must be at least 1"));
    }
    Ok(c)
}

/// Fixed-size subset search on bitset rows; include-first in id order, so
/// the first hit is the lexicographically least set of that size.
struct SizeSearch<'a> {
    rows: &'a [u64],
    n: usize,
    num: i128,
    den: i128,
    target: usize,
    explored: u64,
}

impl SizeSearch<'_> {
    fn run(&mut self, i: usize, set: u64, size: usize) -> Option<u64> {
        self.explored += 1;
        if size == self.target {
            return self.regular(set).then_some(set);
        }
        if self.n - i < self.target - size || !self.viable(i, set, size) {
            return None;
        }
        self.run(i + 1, set | 1 << i, size + 1)
            .or_else(|| self.run(i + 1, set, size))
    }

    fn regular(&self, set: u64) -> bool {
        let (mut hi, mut lo) = (0u32, u32::MAX);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let d = (self.rows[v] & set).count_ones();
            hi = hi.max(d);
            lo = lo.min(d);
            rest &= rest - 1;
        }
        set == 0 || hi as i128 * self.den <= self.num * lo as i128
    }

    /// Cuts partial sets whose current maximum degree already exceeds `c`
    /// times the largest minimum degree any completion could reach.
    fn viable(&self, i: usize, set: u64, size: usize) -> bool {
        if set == 0 {
            return true;
        }
        let later = if i >= 64 { 0 } else { !0u64 << i };
        let room = (self.target - size) as u32;
        let (mut hi, mut lo_cap) = (0u32, u32::MAX);
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let d = (self.rows[v] & set).count_ones();
            hi = hi.max(d);
            lo_cap = lo_cap.min(d + (self.rows[v] & later).count_ones().min(room));
            rest &= rest - 1;
        }
        hi as i128 * self.den <= self.num * lo_cap as i128
    }
}

fn exact_f_rows(rows: &[u64], c: &Rational) -> (usize, u64, u64) {
    let n = rows.len();
    let mut explored = 0;
    for target in (1..=n).rev() {
        let mut search = SizeSearch {
            rows,
            n,
            num: *c.numer(),
            den: *c.denom(),
            target,
            explored: 0,
        };
        let hit = search.run(0, 0, 0);
        explored += search.explored;
        if let Some(set) = hit {
            return (target, set, explored);
        }
    }
    (0, 0, explored)
}

/// `f(G, c)`: the largest `|U|` with `G[U]` `c`-nearly regular, with the
/// lexicographically least witness of that size. Sizes are tried in
/// decreasing order. Fails above `cap` vertices (at most 64).
pub fn exact_f(g: &Graph, c: f64, cap: usize) -> Result<OracleResult> {
    let c = ratio_param(c)?;
    let cap = cap.min(BITSET_LIMIT);
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "exact oracle order",
            cap,
            got: g.n(),
        });
    }
    let (value, set, explored) = exact_f_rows(g.rows().unwrap_or(&[]), &c);
    Ok(OracleResult {
        value,
        witness: Witness::Vertices((0..g.n()).filter(|&v| set >> v & 1 == 1).collect()),
        explored,
    })
}

/// `f(n, c)`: the minimum of [`exact_f`] over all `2^{C(n,2)}` labeled graphs
/// on `n <= 7` vertices.
pub fn exact_f_n(n: usize, c: f64) -> Result<usize> {
    let c = ratio_param(c)?;
    if n > EXACT_F_N_MAX {
        return Err(Error::CapExceeded {
            what: "labeled enumeration order",
            cap: EXACT_F_N_MAX,
            got: n,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    let min = (0..total)
        .into_par_iter()
        .map(|mask| {
            let mut rows = vec![0u64; n];
            for (bit, &(u, v)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    rows[u] |= 1 << v;
                    rows[v] |= 1 << u;
                }
            }
            exact_f_rows(&rows, &c).0
        })
        .min()
        .unwrap_or(0);
    Ok(min)
}

/// Largest edge subset whose non-isolated vertices span a `c`-nearly regular
/// graph (not necessarily induced). Enumerates all `2^m` subsets, `m <= 20`;
/// ties go to the lexicographically least edge list.
pub fn exact_edge_regular(g: &Graph, c: f64) -> Result<OracleResult> {
    let c = ratio_param(c)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    if m > EDGE_ORACLE_MAX {
        return Err(Error::CapExceeded {
            what: "edge oracle size",
            cap: EDGE_ORACLE_MAX,
            got: m,
        });
    }
    let (num, den) = (*c.numer(), *c.denom());
    let best = (0u64..1 << m)
        .into_par_iter()
        .filter(|&mask| {
            let mut deg = vec![0u32; g.n()];
            for (bit, &(u, v)) in edges.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                }
            }
            let hi = deg.iter().copied().max().unwrap_or(0);
            let lo = deg.iter().copied().filter(|&d| d > 0).min().unwrap_or(0);
            hi as i128 * den <= num * lo as i128
        })
        .map(|mask| (mask.count_ones(), mask.reverse_bits()))
        // most edges, then the mask whose lowest differing edge is present
        .max()
        .map(|(_, rev)| rev.reverse_bits())
        .unwrap_or(0);
    let chosen: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|(bit, _)| best >> bit & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Ok(OracleResult {
        value: chosen.len(),
        witness: Witness::Edges(chosen),
        explored: 1 << m,
    })
}

/// Exact distribution of a sum of independent Bernoulli variables by
/// convolution; entry `s` is `Pr[X = s]`.
pub fn bernoulli_sum_distribution(rhos: &[f64]) -> Vec<f64> {
    let mut dist = vec![1.0];
    for &r in rhos {
        let mut next = vec![0.0; dist.len() + 1];
        for (s, &p) in dist.iter().enumerate() {
            next[s] += p * (1.0 - r);
            next[s + 1] += p * r;
        }
        dist = next;
    }
    dist
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointEstimate {
    pub estimate: f64,
    pub exact: f64,
    pub trials: u64,
}

/// `Pr[Σ Bernoulli(ρ_i) = s]`, by simulation (trial `i` uses substream `i`)
/// and by the exact convolution.
pub fn estimate_point_prob(
    rhos: &[f64],
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<PointEstimate> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    if rhos.iter().any(|r| !(0.0..=1.0).contains(r)) {
        return Err(Error::param("rhos", "probabilities must lie in [0, 1]"));
    }
    let exact = bernoulli_sum_distribution(rhos)
        .get(s)
        .copied()
        .unwrap_or(0.0);
    let streams = Substreams::new(seed);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = streams.stream(i);
            rhos.iter().filter(|&&r| rng.gen::<f64>() < r).count() == s
        })
        .count();
    Ok(PointEstimate {
        estimate: hits as f64 / trials as f64,
        exact,
        trials,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Fraction of graded-model samples on `n` vertices whose first `k` vertices
/// induce a regular graph (edgeless counts). Only the `C(k,2)` pairs among
/// them are drawn, in lexicographic order from the trial's substream.
pub fn estimate_regular_prob(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<RegularEstimate> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    if k == 0 || k > n {
        return Err(Error::param("k", "must satisfy 1 <= k <= n"));
    }
    let probs: Vec<f64> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| graded_pair_probability(u, v, n)))
        .collect();
    let streams = Substreams::new(seed);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = streams.stream(i);
            let mut deg = vec![0u32; k];
            let mut pair = 0;
            for u in 0..k {
                for v in u + 1..k {
                    if rng.gen::<f64>() < probs[pair] {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                    pair += 1;
                }
            }
            deg.iter().all(|&d| d == deg[0])
        })
        .count();
    let p = hits as f64 / trials as f64;
    Ok(RegularEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}

/// One induced nearly regular set that breaks the size bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlocksViolation {
    pub set: VertexSet,
    pub min_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlocksVerification {
    pub s: u32,
    pub n: usize,
    /// Nonempty induced `K`-nearly regular sets found.
    pub regular_sets: usize,
    pub max_size: usize,
    pub violations: Vec<BlocksViolation>,
}

/// Enumerates every nonempty `U` of [`blocks`]`(s)` (at most 24 vertices)
/// with `G[U]` `K`-nearly regular and checks
/// `|U| <= 2(K·d+1)/(d+1) · n/(s+1)`, `d` the minimum degree of `G[U]`.
pub fn verify_blocks_bound(s: u32, k: f64) -> Result<BlocksVerification> {
    let k = ratio_param(k)?;
    let g = blocks(s)?;
    let n = g.n();
    if n > EXACT_F_DEFAULT_CAP {
        return Err(Error::CapExceeded {
            what: "blocks enumeration order",
            cap: EXACT_F_DEFAULT_CAP,
            got: n,
        });
    }
    let rows = g.rows().expect("small graphs carry bitset rows");
    let (num, den) = (*k.numer(), *k.denom());
    let found: Vec<(u64, usize, usize)> = (1u64..1 << n)
        .into_par_iter()
        .filter_map(|set| {
            let (mut hi, mut lo) = (0u32, u32::MAX);
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                let d = (rows[v] & set).count_ones();
                hi = hi.max(d);
                lo = lo.min(d);
                rest &= rest - 1;
            }
            (hi as i128 * den <= num * lo as i128).then_some((
                set,
                set.count_ones() as usize,
                lo as usize,
            ))
        })
        .collect();
    let violations = found
        .iter()
        .filter(|&&(_, size, d)| {
            // |U|·(d+1)·(s+1) <= 2(K·d+1)·n
            let lhs = int(size * (d + 1) * (s as usize + 1));
            let rhs = (k * int(d) + int(1)) * int(2 * n);
            lhs > rhs
        })
        .map(|&(set, _, d)| BlocksViolation {
            set: (0..n).filter(|&v| set >> v & 1 == 1).collect(),
            min_degree: d,
        })
        .collect();
    Ok(BlocksVerification {
        s,
        n,
        regular_sets: found.len(),
        max_size: found.iter().map(|f| f.1).max().unwrap_or(0),
        violations,
    })
}
