// The clique-block construction, the graded random model, and edge-list I/O.

use nearly_regular::graph::{parse_edge_list, serialize_edge_list};
use nearly_regular::instances::{blocks, blocks_padded, graded_expected_edges, sample_gnp_bar};
use nearly_regular::oracle::{exact_f, verify_blocks_bound};

pub fn run_example() -> nearly_regular::Result<()> {
    let b = blocks(2)?;
    println!(
        "blocks(2): n={} m={} degrees {:?}",
        b.n(),
        b.m(),
        b.degrees()
    );
    print!("{}", serialize_edge_list(&b));

    let check = verify_blocks_bound(2, 2.0)?;
    println!(
        "{} induced 2-nearly regular sets, largest {}, {} violations of the size bound",
        check.regular_sets,
        check.max_size,
        check.violations.len()
    );
    println!("exact f(blocks(2), 2) = {}", exact_f(&b, 2.0, 24)?.value);

    let padded = blocks_padded(10)?;
    println!("blocks padded to 10: m={}", padded.m());

    let g = sample_gnp_bar(60, 7)?;
    println!(
        "graded model n=60: m={} (expected {:.1})",
        g.m(),
        graded_expected_edges(60)
    );
    assert_eq!(parse_edge_list(&serialize_edge_list(&g))?, g);
    Ok(())
}

#[allow(dead_code)]
fn main() -> nearly_regular::Result<()> {
    run_example()
}
