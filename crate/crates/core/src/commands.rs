//! Dispatch behind the `nreg` binary: named extraction algorithms and
//! experiments, each producing a JSON payload plus its bound ledger.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cascade::{edge_cascade, matching_lower_bound};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instances::sample_gnp_bar;
use crate::oracle::{
    bernoulli_sum_distribution, estimate_point_prob, estimate_regular_prob, exact_f,
    CalibrationConstants, EXACT_F_DEFAULT_CAP,
};
use crate::peeling::{large_ratio_pipeline, reduce_max_degree, refine_min_degree};
use crate::regularize::{
    dense_pipeline, density_boost, sparse_dichotomy, trim_top_degree, turan_extraction, BoostParams,
};
use crate::report::{BoundCheck, ExtractionResult};
use crate::rng::Substreams;

/// Substream reserved for drawing experiment parameters, away from the
/// per-trial and per-sample streams `0, 1, 2, …`.
pub const PARAMETER_STREAM: u64 = u64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    MinDegreeRefine,
    MaxDegreeReduce,
    LargeRatio,
    Boost,
    TopDegreeTrim,
    DensePipeline,
    SparseDichotomy,
    EdgeCascade,
    Turan,
    Matching,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::MinDegreeRefine,
        Algorithm::MaxDegreeReduce,
        Algorithm::LargeRatio,
        Algorithm::Boost,
        Algorithm::TopDegreeTrim,
        Algorithm::DensePipeline,
        Algorithm::SparseDichotomy,
        Algorithm::EdgeCascade,
        Algorithm::Turan,
        Algorithm::Matching,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MinDegreeRefine => "prop21",
            Algorithm::MaxDegreeReduce => "prop22",
            Algorithm::LargeRatio => "prop11",
            Algorithm::Boost => "boost",
            Algorithm::TopDegreeTrim => "lemma25",
            Algorithm::DensePipeline => "thm12",
            Algorithm::SparseDichotomy => "thm13",
            Algorithm::EdgeCascade => "thm41",
            Algorithm::Turan => "turan",
            Algorithm::Matching => "matching",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::param("algorithm", "unknown algorithm"))
    }
}

/// Algorithm parameters; unset fields take per-algorithm defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExtractOptions {
    pub k: Option<f64>,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    pub eps: Option<f64>,
    pub exact_limit: Option<usize>,
}

/// Payload and ledger of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub result: Value,
    pub bounds: Vec<BoundCheck>,
}

impl Outcome {
    fn of<T: Serialize>(result: &T, bounds: Vec<BoundCheck>) -> Result<Self> {
        Ok(Outcome {
            result: serde_json::to_value(result)?,
            bounds,
        })
    }

    fn extraction(result: ExtractionResult) -> Result<Self> {
        let bounds = result.bounds.clone();
        Self::of(&result, bounds)
    }
}

pub fn run_extract(alg: Algorithm, g: &Graph, opts: &ExtractOptions) -> Result<Outcome> {
    let boost = |eps: f64| {
        let mut p = BoostParams::with_epsilon(eps);
        if let Some(limit) = opts.exact_limit {
            p.exact_limit = limit;
        }
        p
    };
    match alg {
        Algorithm::MinDegreeRefine => {
            let r = refine_min_degree(g, opts.k.unwrap_or(2.0), opts.alpha.unwrap_or(0.4))?;
            Outcome::extraction(r.result)
        }
        Algorithm::MaxDegreeReduce => {
            let r = reduce_max_degree(g, opts.k.unwrap_or(2.0))?;
            let payload = json!({
                "vertices": r.kept.host_set(),
                "stats": r.kept.graph.stats(),
                "rounds": r.rounds,
            });
            Ok(Outcome {
                result: payload,
                bounds: r.bounds,
            })
        }
        Algorithm::LargeRatio => {
            let r = large_ratio_pipeline(g, opts.c.unwrap_or(5.0), opts.alpha)?;
            Outcome::extraction(r.result)
        }
        Algorithm::Boost => {
            let r = density_boost(g, &boost(opts.eps.unwrap_or(0.1)))?;
            let bounds = r.bounds.clone();
            Outcome::of(&r, bounds)
        }
        Algorithm::TopDegreeTrim => {
            Outcome::extraction(trim_top_degree(g, opts.eps.unwrap_or(0.1))?)
        }
        Algorithm::DensePipeline => {
            let r = dense_pipeline(g, opts.eps.unwrap_or(0.5), &boost(0.5))?;
            let bounds = r.result.bounds.clone();
            Outcome::of(&r, bounds)
        }
        Algorithm::SparseDichotomy => {
            let r = sparse_dichotomy(g, opts.eps.unwrap_or(0.1), &boost(0.1))?;
            let bounds = r.result.bounds.clone();
            Outcome::of(&r, bounds)
        }
        Algorithm::EdgeCascade => {
            let r = edge_cascade(g)?;
            let bounds = r.result.bounds.clone();
            Outcome::of(&r, bounds)
        }
        Algorithm::Turan => Outcome::extraction(turan_extraction(g)?),
        Algorithm::Matching => Outcome::extraction(matching_lower_bound(g)?),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    PointProb,
    RegularProb,
    GnpBarScan,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::PointProb => "point-prob",
            Experiment::RegularProb => "regular-prob",
            Experiment::GnpBarScan => "gnpbar-scan",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Experiment::PointProb,
            Experiment::RegularProb,
            Experiment::GnpBarScan,
        ]
        .into_iter()
        .find(|e| e.name() == s)
        .ok_or_else(|| Error::param("experiment", "unknown experiment"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOptions {
    pub t: usize,
    pub trials: u64,
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub calibration: CalibrationConstants,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            t: 100,
            trials: 100_000,
            n: 16,
            k: 4,
            samples: 20,
            calibration: CalibrationConstants::default(),
        }
    }
}

/// Caps on experiment sizes.
pub const MAX_TRIALS: u64 = 100_000_000;
pub const MAX_POINT_T: usize = 100_000;
pub const MAX_SAMPLES: usize = 10_000;

fn cap(what: &'static str, cap: usize, got: usize) -> Result<()> {
    if got > cap {
        return Err(Error::CapExceeded { what, cap, got });
    }
    Ok(())
}

/// Seed of sample `i` in a multi-sample experiment.
pub fn sample_seed(seed: u64, i: u64) -> u64 {
    Substreams::new(seed).stream(i).gen()
}

pub fn run_experiment(exp: Experiment, opts: &ExperimentOptions, seed: u64) -> Result<Outcome> {
    cap("trials", MAX_TRIALS as usize, opts.trials as usize)?;
    match exp {
        Experiment::PointProb => {
            cap("point-prob t", MAX_POINT_T, opts.t)?;
            let mut rng = Substreams::new(seed).stream(PARAMETER_STREAM);
            let rhos: Vec<f64> = (0..opts.t)
                .map(|_| rng.gen_range(1.0 / 16.0..=9.0 / 16.0))
                .collect();
            let dist = bernoulli_sum_distribution(&rhos);
            let (mode, _) =
                dist.iter().enumerate().fold(
                    (0, f64::MIN),
                    |best, (s, &p)| if p > best.1 { (s, p) } else { best },
                );
            let est = estimate_point_prob(&rhos, mode, opts.trials, seed)?;
            let bounds = vec![
                BoundCheck::at_most(
                    "calibration.point-prob",
                    est.exact,
                    opts.calibration.point_cap(opts.t),
                ),
                BoundCheck::at_most(
                    "point-prob.monte-carlo",
                    (est.estimate - est.exact).abs(),
                    4.0 / (opts.trials as f64).sqrt(),
                ),
            ];
            let payload = json!({
                "t": opts.t,
                "mode": mode,
                "max_point_probability": est.exact,
                "estimate": est.estimate,
                "trials": opts.trials,
            });
            Ok(Outcome {
                result: payload,
                bounds,
            })
        }
        Experiment::RegularProb => {
            let est = estimate_regular_prob(opts.n, opts.k, opts.trials, seed)?;
            let bounds = vec![BoundCheck::at_most(
                "calibration.regular-prob",
                est.estimate,
                opts.calibration.regular_cap(opts.n, opts.k),
            )];
            let payload = json!({ "n": opts.n, "k": opts.k, "estimate": est });
            Ok(Outcome {
                result: payload,
                bounds,
            })
        }
        Experiment::GnpBarScan => {
            cap("gnpbar-scan order", EXACT_F_DEFAULT_CAP, opts.n)?;
            cap("gnpbar-scan samples", MAX_SAMPLES, opts.samples)?;
            let values: Vec<usize> = (0..opts.samples as u64)
                .into_par_iter()
                .map(|i| {
                    let g = sample_gnp_bar(opts.n, sample_seed(seed, i))?;
                    Ok(exact_f(&g, 1.0, EXACT_F_DEFAULT_CAP)?.value)
                })
                .collect::<Result<_>>()?;
            let mut sorted = values.clone();
            sorted.sort_unstable();
            let median = match sorted.len() {
                0 => None,
                len if len % 2 == 1 => Some(sorted[len / 2] as f64),
                len => Some((sorted[len / 2 - 1] + sorted[len / 2]) as f64 / 2.0),
            };
            let payload = json!({
                "n": opts.n,
                "samples": opts.samples,
                "values": values,
                "median": median,
                "min": sorted.first(),
                "max": sorted.last(),
            });
            Ok(Outcome {
                result: payload,
                bounds: Vec::new(),
            })
        }
    }
}
