//! An emergent-node tree with two rival blocs, solved and cross-checked.
//!
//! Four leaf players sit in two blocs; each bloc's emergent strategy is
//! "agreement" of its members, and each bloc's payoff is shared back with
//! one loyal member and one saboteur (negative share). The relaxed model is
//! linear, has count one, and its unique solution is hierarchy-consistent:
//! the bloc strategies equal what their members' mixtures aggregate to, and
//! every leaf is exactly indifferent in the induced four-player game.

use std::collections::BTreeMap;

use num_traits::Zero;
use polygraphs::games::ent::EntProfile;
use polygraphs::games::normal::MixedProfile;
use polygraphs::io::{parse_game_file, GameFile};
use polygraphs::numerics::{
    format_rational, solve_linear_exact, LinearSolution, DEFAULT_DIMENSION_CAP,
};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/games/saboteur.ent");
    let text = std::fs::read_to_string(path).unwrap();
    let GameFile::Ent(ent) = parse_game_file(&text).unwrap() else {
        panic!("saboteur.ent should parse as an emergent-node tree");
    };
    println!(
        "root {:?}, leaves {:?}, strategic nodes {:?}",
        ent.root_name(),
        ent.leaf_names(),
        ent.nonroot_names()
    );

    let graph = ent.relaxed_polygraph().unwrap();
    let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
    println!(
        "\nrelaxed polynomial graph: blocks {:?}, permanent {}, count {}",
        graph.block_sizes(),
        report.permanent,
        report.count
    );
    assert_eq!(report.count, 1.into());

    let system = ent.relaxed_system().unwrap();
    println!("\nrelaxed indifference equations:");
    for eq in system.equations() {
        println!("  {} = 0", eq.render());
    }

    // Every node has exactly two strategies, so each equation is linear and
    // exact elimination pins the single candidate down.
    let (matrix, rhs) = system.linear_form().expect("two strategies each keeps it linear");
    let LinearSolution::Unique(values) = solve_linear_exact(&matrix, &rhs) else {
        panic!("count one and a linear system: the solution is unique");
    };
    let mut named: BTreeMap<String, num_rational::BigRational> = BTreeMap::new();
    println!("\nunique solution:");
    for (v, value) in values.iter().enumerate() {
        println!("  {} = {}", system.space().name(v), format_rational(value));
        named.insert(system.space().name(v).to_string(), value.clone());
    }

    // Hierarchy check: the same point also satisfies the aggregation
    // constraints, so the relaxation lost nothing here.
    let profile = EntProfile::from_reduced(&ent, &named);
    let residual = ent.hierarchical_residual(&profile).unwrap();
    assert!(residual.is_zero());
    println!("\nhierarchical residual (indifference + consistency): all zero");

    // Rebuilding from the leaf mixtures alone reproduces the bloc values:
    // the aggregation rule, not the solver, decides what the blocs play.
    let leaf_rows: Vec<Vec<num_rational::BigRational>> = ent
        .leaf_names()
        .iter()
        .map(|name| profile.values_for(&ent, name).unwrap().to_vec())
        .collect();
    let rebuilt = EntProfile::from_leaves(&ent, leaf_rows).unwrap();
    for name in ["5", "6"] {
        let bottom_up = rebuilt.values_for(&ent, name).unwrap();
        let solved = profile.values_for(&ent, name).unwrap();
        assert_eq!(bottom_up, solved);
        let rendered: Vec<String> = bottom_up.iter().map(format_rational).collect();
        println!("bloc {name} plays {rendered:?} — aggregated and solved agree");
    }

    // In the induced four-player game the leaves are exactly indifferent:
    // deviating to either pure strategy leaves every expected payoff fixed.
    let induced = ent.induced_normal_form().unwrap();
    let mixed = MixedProfile::new(
        induced.players().to_vec().as_slice(),
        ent.leaf_names()
            .iter()
            .map(|name| profile.values_for(&ent, name).unwrap().to_vec())
            .collect(),
    )
    .unwrap();
    println!("\nexpected payoffs in the induced game at the solution:");
    for (i, player) in induced.players().iter().enumerate() {
        let at_mix = induced.expected_utility(i, &mixed);
        for s in 0..induced.strategy_count(i) {
            let deviated = induced.expected_utility(i, &mixed.with_pure(i, s));
            assert_eq!(deviated, at_mix, "leaf {} must be indifferent", player.name);
        }
        println!("  leaf {}: {} under any own strategy", player.name, format_rational(&at_mix));
    }
    assert!(system
        .residual(&polygraphs::multilinear::Assignment::from_named(system.space(), &named).unwrap())
        .unwrap()
        .iter()
        .all(Zero::is_zero));
    println!("\nall checks passed");
}
