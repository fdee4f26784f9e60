//! A graphical game on a directed 4-cycle, solved exactly.
//!
//! Each player's payoff depends only on the next player around the cycle,
//! so every indifference equation is linear in the neighbor's two free
//! probabilities. The polynomial graph is the block 4-cycle with blocks of
//! size two; its count is 16/16 = 1, and indeed exact Gaussian elimination
//! finds one unique solution candidate. Note that the count lives on the
//! algebraic torus: the candidate solves the equations exactly but its
//! coordinates are free to leave the interval from zero to one, as some of
//! them do here.

use polygraphs::io::{parse_game_file, GameFile};
use polygraphs::multilinear::Assignment;
use polygraphs::numerics::{
    format_rational, solve_linear_exact, LinearSolution, DEFAULT_DIMENSION_CAP,
};
use num_traits::Zero;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/games/cycle4.graphical");
    let text = std::fs::read_to_string(path).unwrap();
    let GameFile::Graphical(model) = parse_game_file(&text).unwrap() else {
        panic!("cycle4.graphical should parse as a graphical model");
    };

    println!("players and their dependency neighborhoods:");
    for (i, player) in model.players().iter().enumerate() {
        let seen: Vec<&str> = model.neighbors()[i]
            .iter()
            .map(|&j| model.players()[j].name.as_str())
            .collect();
        println!("  player {} sees {:?}", player.name, seen);
    }

    let graph = model.polygraph().unwrap();
    let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
    println!(
        "\npolynomial graph: blocks {:?}, permanent {} / {} = count {}",
        graph.block_sizes(),
        report.permanent,
        report.divisor,
        report.count
    );
    assert_eq!(report.count, 1.into());

    let system = model.indifference_system().unwrap();
    println!("\nindifference equations (all linear — one neighbor each):");
    for eq in system.equations() {
        println!("  {} = 0", eq.render());
    }
    assert!(system.is_linear());

    let (matrix, rhs) = system.linear_form().unwrap();
    let LinearSolution::Unique(values) = solve_linear_exact(&matrix, &rhs) else {
        panic!("the cycle system should have exactly one solution");
    };
    println!("\nunique solution candidate:");
    let mut point = Assignment::empty(system.space());
    for (v, value) in values.iter().enumerate() {
        println!("  {} = {}", system.space().name(v), format_rational(value));
        point.set(v, value.clone());
    }
    let residual = system.residual(&point).unwrap();
    assert!(residual.iter().all(Zero::is_zero));
    println!("residual at the solution: all zero");
    println!("(a torus root — some coordinates fall outside [0, 1])");
}
