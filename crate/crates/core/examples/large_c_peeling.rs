// Degree peels for ratios above 2: refine, reduce, and the two combined.

use nearly_regular::instances::{sample_gnp_uniform, star};
use nearly_regular::peeling::{large_ratio_pipeline, reduce_max_degree, refine_min_degree};

pub fn run_example() -> nearly_regular::Result<()> {
    let g = sample_gnp_uniform(100, 0.2, 11)?;
    let s = g.stats();
    println!(
        "G(100, 0.2): m={} max={} min={} avg={:.2}",
        s.m, s.max_deg, s.min_deg, s.avg_deg
    );

    // bounded max degree: a single min-degree peel
    let refined = refine_min_degree(&g, 2.0, 0.4)?;
    println!(
        "refine k=2 alpha=0.4: {} vertices, ratio {:?}",
        refined.result.size(),
        refined.result.ratio
    );
    for b in &refined.result.bounds {
        println!("  {} {} vs {:.2}", b.name, b.achieved, b.threshold);
    }

    // a star breaks the refine precondition, the reduction handles it
    let spiky = star(100)?;
    assert!(refine_min_degree(&spiky, 2.0, 0.4).is_err());
    let reduced = reduce_max_degree(&spiky, 4.0)?;
    println!(
        "reduce k=4 on K_1,99: kept {} vertices in {} rounds",
        reduced.kept.graph.n(),
        reduced.rounds
    );

    let combined = large_ratio_pipeline(&spiky, 3.0, None)?;
    println!(
        "c=3 on K_1,99: {} vertices, ratio {:?}",
        combined.result.size(),
        combined.result.ratio
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
