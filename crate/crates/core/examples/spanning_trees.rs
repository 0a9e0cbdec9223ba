//! Weighted dependency graphs: induced multigraphs, spanning-tree sums by the
//! matrix-tree theorem and a check of the cumulant bound for a Markov chain.
//!
//! ```bash
//! cargo run --release --example spanning_trees
//! ```

use modstable::cumulant_core::joint_cumulant;
use modstable::dependency_graphs::{spanning_tree_weight_sum, uwdg_check, WeightedGraph};
use modstable::markov_chains::{time_graph, MarkovChainSpec};

fn main() -> modstable::Result<()> {
    let g = WeightedGraph::parse_edge_list("0 1 0.5\n1 2 0.3\n0 2 0.2\n2 3 0.7\n3 4 0.9\n5 6 0.4\n")?;
    println!("vertices {}, max weighted degree {}", g.n, g.max_weighted_degree());
    let mg = g.induced(&[0, 1, 2, 3, 3])?;
    println!("G[0,1,2,3,3] has {} nodes, {} edges, ST sum {:.6}", mg.nodes.len(), mg.edges.len(), mg.spanning_tree_weight_sum());

    let k5: Vec<(usize, usize, f64)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j, 1.0))).collect();
    println!("spanning trees of K5: {}", spanning_tree_weight_sum(5, &k5));

    // f(X₀), ..., f(X₅) for a two-state chain are a weighted dependency graph with weights 2θ^{|s−t|}
    let (a, b) = (0.2, 0.3);
    let chain = MarkovChainSpec::from_rows(&[vec![1.0 - a, a], vec![b, 1.0 - b]])?;
    let f = vec![0.0, 1.0];
    let n = 6;
    let graph = time_graph(n, chain.theta);
    let kappa = |set: &[usize]| {
        let oracle = |vars: &[usize]| {
            let times: Vec<i64> = vars.iter().map(|&v| v as i64).collect();
            chain.joint_moment(&vec![f.clone(); vars.len()], &times)
        };
        joint_cumulant(&oracle, set).unwrap()
    };
    let report = uwdg_check(kappa, &graph, 2f64.sqrt(), 4, 1);
    println!(
        "theta = {:.3}; checked {} multisets (exhaustive {}), worst ratio {:.4}, pass {}",
        chain.theta,
        report.checked,
        report.exhaustive,
        report.worst_ratio,
        report.pass()
    );
    Ok(())
}
