// Exact answers on small graphs, and the constructive algorithms checked
// against them.

use nearly_regular::graph::named::{cycle, path};
use nearly_regular::instances::{sample_gnp_uniform, star};
use nearly_regular::oracle::{exact_edge_regular, exact_f, exact_f_n};
use nearly_regular::regularize::turan_independent_set;

pub fn run_example() -> nearly_regular::Result<()> {
    for (name, g) in [("P3", path(3)), ("C5", cycle(5)), ("K_1,3", star(4)?)] {
        let r = exact_f(&g, 1.0, 24)?;
        println!("f({name}, 1) = {} via {:?}", r.value, r.witness);
    }
    for n in 2..=6 {
        println!("f({n}, 1) = {}", exact_f_n(n, 1.0)?);
    }
    println!(
        "edge version on K_1,5: {}",
        exact_edge_regular(&star(6)?, 1.0)?.value
    );

    let g = sample_gnp_uniform(14, 0.4, 2)?;
    let best = exact_f(&g, 1.0, 24)?;
    let greedy = turan_independent_set(&g);
    println!(
        "G(14, 0.4): optimum {} (explored {}), greedy independent set {}",
        best.value,
        best.explored,
        greedy.len()
    );
    assert!(greedy.len() <= best.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
