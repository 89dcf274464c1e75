//! The graphs behind the rankings: G with depths, its transitive reduction,
//! the sparsified H, the incomparability graph U and the component DAG G'.
//!
//!     cargo run --example order_graphs | dot -Tsvg -O

use tieless::fixtures;
use tieless::graphs::{
    build_component_dag, build_directed_graph, build_incomparability_graph, compute_depths,
    connected_components, sparsify, transitive_reduction,
};

fn main() -> tieless::Result<()> {
    let cm = fixtures::matrix(5);
    let g = build_directed_graph(&cm)?;
    let depths = compute_depths(&g)?;
    let tr = transitive_reduction(&g)?;
    let h = sparsify(&g, &depths);
    let u = build_incomparability_graph(&cm);
    let dag = build_component_dag(&connected_components(&u), &cm)?;

    eprintln!(
        "edges: G {}, reduction {}, H {}; components {}",
        g.edge_count(),
        tr.edge_count(),
        h.edge_count(),
        dag.components().len()
    );
    print!("{}", g.to_dot("G", Some(&depths)));
    print!("{}", tr.to_dot("TR", Some(&depths)));
    print!("{}", h.to_dot("H", Some(&depths)));
    print!("{}", u.to_dot("U"));
    print!("{}", dag.to_dot("G'"));
    Ok(())
}
