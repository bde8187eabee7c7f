// `(1+ε)`-nearly regular subgraphs: trim, boost-then-trim, and the sparse
// dichotomy with its independent-set branch.

use nearly_regular::graph::named::complete;
use nearly_regular::instances::{sample_gnp_uniform, star};
use nearly_regular::regularize::{
    dense_pipeline, sparse_dichotomy, trim_top_degree, turan_independent_set, BoostParams,
};
use nearly_regular::{Error, Graph};

pub fn run_example() -> nearly_regular::Result<()> {
    let trimmed = trim_top_degree(&complete(100), 0.04)?;
    println!(
        "trim K100, eps=0.04: {} vertices, ratio {:?}",
        trimmed.size(),
        trimmed.ratio
    );

    match trim_top_degree(&star(10)?, 0.1) {
        Err(Error::PeelCapExceeded { cap }) => println!("trim K_1,9: cap {cap} exceeded"),
        other => println!("trim K_1,9: unexpected {other:?}"),
    }

    let g = sample_gnp_uniform(40, 0.5, 0)?;
    let params = BoostParams::default().exact_limit(40);
    let dense = dense_pipeline(&g, 0.5, &params)?;
    println!(
        "G(40, 0.5), eps=0.5: {} vertices, ratio {:?}, certified boost={}",
        dense.result.size(),
        dense.result.ratio,
        dense.boost.as_ref().is_some_and(|b| b.certified)
    );

    let tree = Graph::from_edges(100, (1..100).map(|v| ((v - 1) / 2, v)))?;
    let sparse = sparse_dichotomy(&tree, 0.1, &BoostParams::default())?;
    println!(
        "binary tree, eps=0.1: {:?} of size {}",
        sparse.result.guarantee,
        sparse.result.size()
    );

    let clique = sparse_dichotomy(&complete(40), 0.1, &BoostParams::default())?;
    println!(
        "K40, eps=0.1: {:?} of size {}",
        clique.result.guarantee,
        clique.result.size()
    );

    println!(
        "greedy independent set of K7: {:?}",
        turan_independent_set(&complete(7))
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
