// Density boosting to a uniformly dense subgraph, with and without a
// certificate, and the boundary bound such graphs satisfy.

use nearly_regular::graph::named::{complete, disjoint_union};
use nearly_regular::instances::sample_gnp_uniform;
use nearly_regular::regularize::{
    boundary_edges, boundary_limit, check_edge_boundary, density_boost, BoostParams,
};
use nearly_regular::{Graph, VertexSet};

pub fn run_example() -> nearly_regular::Result<()> {
    let g = disjoint_union(&complete(4), &Graph::empty(4));
    let out = density_boost(&g, &BoostParams::with_epsilon(0.5))?;
    println!(
        "K4 + 4 isolated: {:?} after {} round(s), certified={}",
        out.vertices, out.rounds, out.certified
    );

    let g = sample_gnp_uniform(20, 0.5, 3)?;
    let exact = density_boost(&g, &BoostParams::with_epsilon(0.3))?;
    println!(
        "G(20, 0.5): density {:.3} -> {:.3} on {} vertices, certified={}",
        exact.initial_density,
        exact.density,
        exact.vertices.len(),
        exact.certified
    );
    for b in &exact.bounds {
        println!(
            "  {} {:.3} vs {:.3} pass={}",
            b.name, b.achieved, b.threshold, b.pass
        );
    }

    // above the exact limit the heuristic runs and nothing is certified
    let big = sample_gnp_uniform(80, 0.3, 3)?;
    let heuristic = density_boost(&big, &BoostParams::with_epsilon(0.3))?;
    println!(
        "G(80, 0.3): {} rounds, certified={}",
        heuristic.rounds, heuristic.certified
    );

    let k10 = complete(10);
    let u = VertexSet::new(vec![0, 1]);
    println!(
        "K10 boundary of {{0,1}}: {} <= {:.1}: {}",
        boundary_edges(&k10, &u),
        boundary_limit(&k10, 0.2),
        check_edge_boundary(&k10, &u, 0.2)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
