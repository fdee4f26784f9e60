//! A perfect-information tree whose subgame system is genuinely nonlinear.
//!
//! With the default distinguished edges, the equation for the first player
//! contains a product of two other players' probabilities — a hyperbola —
//! so no linear solver applies, yet verification against a known point is
//! still exact. The polynomial graph of any tree is acyclic, so the count
//! is zero and the report carries the structural caveat.

use polygraphs::games::extensive::DistinguishedEdges;
use polygraphs::io::{parse_game_file, parse_point_file, GameFile};
use polygraphs::multilinear::Assignment;
use polygraphs::numerics::DEFAULT_DIMENSION_CAP;
use num_traits::Zero;

fn games_dir() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/games").to_string()
}

fn main() {
    let text = std::fs::read_to_string(format!("{}/hyperbola.ext", games_dir())).unwrap();
    let GameFile::Extensive(tree) = parse_game_file(&text).unwrap() else {
        panic!("hyperbola.ext should parse as an extensive-form tree");
    };
    println!("players: {:?}", tree.players());

    let dist = DistinguishedEdges::first_edges(&tree);
    println!("\ndistinguished edges (defaults — first edge at every node):");
    for (node, edge) in dist.entries() {
        println!("  at {node}: {edge}");
    }

    let system = tree.subgame_system(&dist).unwrap();
    println!("\nsubgame indifference system:");
    for (eq, var) in system.equations().iter().zip(0..) {
        println!("  [row for {}]  {} = 0", system.space().name(var), eq.render());
    }
    assert!(!system.is_linear(), "the first equation multiplies two variables");

    // Trees never put a vertex on a directed cycle, so the count is zero and
    // the structural caveat fires.
    let graph = tree.polynomial_graph(&dist).unwrap();
    let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
    println!(
        "\ngraph on {:?}: permanent {}, count {}",
        graph.block_sizes(),
        report.permanent,
        report.count
    );
    assert!(report.count.is_zero());
    println!("caveat: {}", report.caveat.as_deref().unwrap());
    println!("vertices off every cycle: {:?}", report.off_cycle_vertices);

    // A point found by hand solves the system exactly.
    let point_text =
        std::fs::read_to_string(format!("{}/points/on_hyperbola.pt", games_dir())).unwrap();
    let named = parse_point_file(&point_text).unwrap();
    let point = Assignment::from_named(system.space(), &named).unwrap();
    let residual = system.residual(&point).unwrap();
    assert!(residual.iter().all(Zero::is_zero));
    println!("\nresidual at the bundled point: all zero");

    // Distinguishing different edges re-parameterizes the same tree: the
    // variables change while the player set does not.
    let alt = DistinguishedEdges::parse_spec(&tree, "A=C,E=G").unwrap();
    let alt_system = tree.subgame_system(&alt).unwrap();
    println!("\nwith edges C and G distinguished instead, the variables become:");
    for v in 0..alt_system.space().len() {
        println!("  {}", alt_system.space().name(v));
    }
    assert_ne!(system.space().names(), alt_system.space().names());
}
