// Point probabilities of Bernoulli sums and regular induced subgraphs of
// the graded model, estimated on per-trial substreams.

use nearly_regular::oracle::{estimate_point_prob, estimate_regular_prob, CalibrationConstants};

pub fn run_example() -> nearly_regular::Result<()> {
    let rhos: Vec<f64> = (0..100).map(|i| 1.0 / 16.0 + i as f64 / 200.0).collect();
    let est = estimate_point_prob(&rhos, 30, 20_000, 1)?;
    let cap = CalibrationConstants::default().point_cap(rhos.len());
    println!(
        "Pr[X = 30]: exact {:.5}, estimate {:.5}, calibration cap {cap:.2}",
        est.exact, est.estimate
    );

    for k in 3..=6 {
        let r = estimate_regular_prob(20, k, 50_000, 1)?;
        println!(
            "n=20 k={k}: Pr[regular] ~ {:.4} +- {:.4}",
            r.estimate, r.std_error
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
