//! Round-trips over the bundled corpus and byte-level determinism of the
//! command line: reparsing an emitted file yields the same value, and the
//! same invocation always produces the same output.

use polygraphs::cli::run_command;
use polygraphs::io::{
    emit_game_file, emit_point_file, parse_game_file, parse_point_file, GameFile,
};

mod common;
use common::games_dir;

const GAME_FILES: [&str; 7] = [
    "fourplayers_3.nf",
    "fourplayers_2.nf",
    "cycle4.graphical",
    "hyperbola.ext",
    "saboteur.ent",
    "saboteur_relaxed.polygraph",
    "hyperbola_first.system",
];

const POINT_FILES: [&str; 2] = ["points/on_hyperbola.pt", "points/saboteur_eq.pt"];

fn run(args: &[&str]) -> (i32, String) {
    run_command(std::iter::once("polygraphs").chain(args.iter().copied()))
}

fn bundled(name: &str) -> String {
    format!("{}/{}", games_dir(), name)
}

/// Emitting a parsed file and parsing it again settles immediately: the
/// second parse carries the same value, and its emission is byte-identical.
#[test]
fn every_bundled_game_file_round_trips() {
    for name in GAME_FILES {
        let text = std::fs::read_to_string(bundled(name)).unwrap();
        let first = parse_game_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let emitted = emit_game_file(&first);
        let second = parse_game_file(&emitted).unwrap_or_else(|e| panic!("re-parse {name}: {e}"));
        assert_eq!(emitted, emit_game_file(&second), "emission unstable for {name}");
        assert_eq!(first.format_tag(), second.format_tag(), "{name}");
        match (&first, &second) {
            (GameFile::NormalForm(a), GameFile::NormalForm(b)) => assert_eq!(a, b, "{name}"),
            (GameFile::Graphical(a), GameFile::Graphical(b)) => assert_eq!(a, b, "{name}"),
            (GameFile::Extensive(a), GameFile::Extensive(b)) => {
                assert_eq!(a.root(), b.root(), "{name}")
            }
            (GameFile::Ent(a), GameFile::Ent(b)) => {
                assert_eq!(a.to_specs(), b.to_specs(), "{name}")
            }
            (GameFile::Polygraph(a), GameFile::Polygraph(b)) => assert_eq!(a, b, "{name}"),
            (GameFile::System(a), GameFile::System(b)) => assert_eq!(a, b, "{name}"),
            _ => panic!("{name} changed format across the round trip"),
        }
    }
}

#[test]
fn every_bundled_point_file_round_trips() {
    for name in POINT_FILES {
        let text = std::fs::read_to_string(bundled(name)).unwrap();
        let first = parse_point_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let emitted = emit_point_file(&first);
        let second = parse_point_file(&emitted).unwrap();
        assert_eq!(first, second, "{name}");
        assert_eq!(emitted, emit_point_file(&second), "emission unstable for {name}");
    }
}

/// Repeating an invocation must reproduce the exit code and every output
/// byte, for text and JSON alike.
#[test]
fn repeated_invocations_are_byte_identical() {
    let four3 = bundled("fourplayers_3.nf");
    let cycle = bundled("cycle4.graphical");
    let saboteur = bundled("saboteur.ent");
    let hyperbola = bundled("hyperbola.ext");
    let system = bundled("hyperbola_first.system");
    let point = bundled("points/on_hyperbola.pt");
    let commands: Vec<Vec<&str>> = vec![
        vec!["count", &four3],
        vec!["count", &four3, "--json"],
        vec!["graph", &cycle, "--json"],
        vec!["equations", &saboteur],
        vec!["solve-linear", &saboteur, "--relaxed", "--json"],
        vec!["verify", &system, &point],
        vec!["induct", &hyperbola, "--json"],
        vec!["normalize", &saboteur],
        vec!["oracle", "--random", "4", "--seed", "11"],
    ];
    for args in commands {
        let (code_a, out_a) = run(&args);
        let (code_b, out_b) = run(&args);
        assert_eq!(code_a, code_b, "exit code changed between runs: {args:?}");
        assert_eq!(out_a, out_b, "output changed between runs: {args:?}");
        assert!(!out_a.is_empty(), "no output: {args:?}");
    }
}

/// The two graph/system formats drive the commands that accept them and are
/// rejected with a usage error (exit 2) by the commands that do not.
#[test]
fn prebuilt_graph_and_system_files_route_correctly() {
    let graph = bundled("saboteur_relaxed.polygraph");
    let system = bundled("hyperbola_first.system");
    let point = bundled("points/on_hyperbola.pt");

    let (code, out) = run(&["count", &graph]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("count: 1"), "{out}");

    let (code, out) = run(&["verify", &system, &point]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("residuals: all zero"), "{out}");

    // the bundled system has a quadratic row, so the exact solver declines
    let (code, out) = run(&["solve-linear", &system]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("not linear"), "{out}");

    // equations need a game, not a prebuilt graph; counting needs a graph,
    // not a bare system
    let (code, out) = run(&["equations", &graph]);
    assert_eq!(code, 2, "{out}");
    let (code, out) = run(&["count", &system]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn domain_outcomes_set_the_exit_code() {
    // a tree has acyclic dependencies, so the count is zero: exit 1 with the
    // count and its caveat still reported
    let (code, out) = run(&["count", &bundled("hyperbola.ext")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("count: 0"), "{out}");
    assert!(out.contains("caveat:"), "{out}");

    // the hierarchy point file satisfies indifference and consistency
    let (code, out) = run(&["verify", &bundled("saboteur.ent"), &bundled("points/saboteur_eq.pt")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("residuals: all zero"), "{out}");

    // oracle agreement on a bundled game
    let (code, out) = run(&["oracle", &bundled("fourplayers_2.nf")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all routes agree"), "{out}");

    // normalize emits a loadable normal-form file
    let (code, out) = run(&["normalize", &bundled("saboteur.ent")]);
    assert_eq!(code, 0, "{out}");
    let reparsed = parse_game_file(&out).unwrap();
    assert_eq!(reparsed.format_tag(), "normal_form");

    // unreadable input is a usage error
    let (code, _) = run(&["count", "games/definitely_absent.nf"]);
    assert_eq!(code, 2);
}
