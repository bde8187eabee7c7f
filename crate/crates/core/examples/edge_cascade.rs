// Non-induced 5-nearly regular subgraphs with many edges.

use nearly_regular::cascade::{edge_cascade, matching_lower_bound, CascadeCase};
use nearly_regular::instances::{complete_bipartite, sample_gnp_uniform};

pub fn run_example() -> nearly_regular::Result<()> {
    let g = sample_gnp_uniform(200, 0.5, 4)?;
    let out = edge_cascade(&g)?;
    let sizes: Vec<usize> = out.cascade.rounds.iter().map(|r| r.a_size).collect();
    println!("G(200, 0.5): tight set sizes {sizes:?}");
    match out.case {
        CascadeCase::FirstMatching => println!("  sizes doubled at every level; output is M_1"),
        CascadeCase::LevelUnion { level, lo } => println!(
            "  stalled at level {level}; union of M_{lo}..M_{}",
            2 * lo - 1
        ),
    }
    println!(
        "  {} edges, ratio {:?}, guaranteed={}",
        out.result.edge_count(),
        out.result.ratio,
        out.result.guaranteed
    );

    for k in [3, 5] {
        let kb = complete_bipartite(k, 50)?;
        let r = edge_cascade(&kb)?;
        println!(
            "K_{k},{}: {} edges (at most {} possible)",
            50 - k,
            r.result.edge_count(),
            5 * k * k
        );
    }

    let m = matching_lower_bound(&g)?;
    println!(
        "maximum matching: {} edges, m/n = {:.1}",
        m.edge_count(),
        g.m() as f64 / g.n() as f64
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
