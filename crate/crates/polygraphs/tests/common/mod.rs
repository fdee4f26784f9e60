//! Helpers shared by the integration test crates: bundled-file loading and
//! random generators for trees and hierarchies.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polygraphs::games::ent::{EntNodeSpec, EntStructure};
use polygraphs::games::extensive::{Edge, GameTree, TreeNode};
use polygraphs::io::{parse_game_file, GameFile};
use polygraphs::numerics::rat;

pub fn games_dir() -> String {
    format!("{}/games", env!("CARGO_MANIFEST_DIR"))
}

pub fn read_game(name: &str) -> String {
    std::fs::read_to_string(format!("{}/{name}", games_dir())).unwrap()
}

pub fn load_game(name: &str) -> GameFile {
    parse_game_file(&read_game(name)).unwrap()
}

/// A random tree of depth at most three with two or three children per
/// decision node and occasional chance nodes. Leaf payoffs cover exactly the
/// players who act somewhere, as the tree validator requires.
pub fn random_tree(rng: &mut ChaCha8Rng) -> GameTree {
    fn build(rng: &mut ChaCha8Rng, depth: usize, counter: &mut u32) -> TreeNode {
        *counter += 1;
        let name = format!("n{counter}");
        if depth == 0 || (*counter > 1 && rng.gen_bool(0.35)) {
            return TreeNode::Leaf { name, payoffs: BTreeMap::new() };
        }
        if rng.gen_bool(0.25) {
            let k = rng.gen_range(2..=3usize);
            let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
            let total: i64 = weights.iter().sum();
            let branches = weights
                .into_iter()
                .map(|w| (rat(w, total), build(rng, depth - 1, counter)))
                .collect();
            return TreeNode::Chance { name, branches };
        }
        let player = rng.gen_range(1..=3u32).to_string();
        let k = rng.gen_range(2..=3usize);
        let edges = (0..k)
            .map(|e| Edge {
                name: format!("{name}e{e}"),
                child: build(rng, depth - 1, counter),
            })
            .collect();
        TreeNode::Decision { name, player, edges }
    }

    fn players_of(node: &TreeNode, out: &mut Vec<String>) {
        match node {
            TreeNode::Decision { player, edges, .. } => {
                if !out.contains(player) {
                    out.push(player.clone());
                }
                for e in edges {
                    players_of(&e.child, out);
                }
            }
            TreeNode::Chance { branches, .. } => {
                for (_, child) in branches {
                    players_of(child, out);
                }
            }
            TreeNode::Leaf { .. } => {}
        }
    }

    fn fill_payoffs(node: &mut TreeNode, players: &[String], rng: &mut ChaCha8Rng) {
        match node {
            TreeNode::Leaf { payoffs, .. } => {
                for p in players {
                    payoffs.insert(p.clone(), rat(rng.gen_range(-6i64..=6), 1));
                }
            }
            TreeNode::Decision { edges, .. } => {
                for e in edges.iter_mut() {
                    fill_payoffs(&mut e.child, players, rng);
                }
            }
            TreeNode::Chance { branches, .. } => {
                for (_, child) in branches.iter_mut() {
                    fill_payoffs(child, players, rng);
                }
            }
        }
    }

    let mut counter = 0;
    let mut root = build(rng, 3, &mut counter);
    // force a decision at the root so the tree always has at least one player
    if !matches!(root, TreeNode::Decision { .. }) {
        counter += 1;
        root = TreeNode::Decision {
            name: format!("n{counter}"),
            player: "1".into(),
            edges: vec![
                Edge { name: "a".into(), child: root },
                Edge {
                    name: "b".into(),
                    child: TreeNode::Leaf {
                        name: format!("n{}", counter + 1),
                        payoffs: BTreeMap::new(),
                    },
                },
            ],
        };
    }
    let mut players = Vec::new();
    players_of(&root, &mut players);
    fill_payoffs(&mut root, &players, rng);
    GameTree::new(root).unwrap()
}

/// A random hierarchy: two blocs of two or three leaves under a root, every
/// strategic node with two strategies. The first two aggregation rows are
/// pinned to distinct point masses so the rule always has full rank.
pub fn random_hierarchy(seed: u64) -> EntStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strategies = || vec!["a".to_string(), "b".to_string()];
    let mut specs = Vec::new();
    let mut blocs: Vec<(String, Vec<String>)> = Vec::new();
    let mut leaf_no = 0;
    for b in 0..2 {
        let bloc_name = format!("B{b}");
        let k = rng.gen_range(2..=3usize);
        let mut children = Vec::new();
        for _ in 0..k {
            leaf_no += 1;
            let name = format!("L{leaf_no}");
            children.push(name.clone());
            // sibling profiles: the other k−1 leaves, two strategies each
            let rows = 1usize << (k - 1);
            specs.push(EntNodeSpec {
                name,
                children: Vec::new(),
                strategies: strategies(),
                aggregation: None,
                utility: Some(
                    (0..rows * 2).map(|_| rat(rng.gen_range(-5i64..=5), 1)).collect(),
                ),
                gammas: [(bloc_name.clone(), rat(rng.gen_range(-3i64..=3), 1))]
                    .into_iter()
                    .collect(),
            });
        }
        blocs.push((bloc_name, children));
    }
    for (bloc_name, children) in blocs {
        let rows = 1usize << children.len();
        let mut aggregation = Vec::with_capacity(rows * 2);
        for row in 0..rows {
            let hot = match row {
                0 => 0,
                1 => 1,
                _ => rng.gen_range(0..2usize),
            };
            aggregation.push(rat(i64::from(hot == 0), 1));
            aggregation.push(rat(i64::from(hot == 1), 1));
        }
        specs.push(EntNodeSpec {
            name: bloc_name,
            children,
            strategies: strategies(),
            aggregation: Some(aggregation),
            // one sibling bloc with two strategies: four utility entries
            utility: Some((0..4).map(|_| rat(rng.gen_range(-5i64..=5), 1)).collect()),
            gammas: BTreeMap::new(),
        });
    }
    specs.push(EntNodeSpec {
        name: "top".into(),
        children: vec!["B0".into(), "B1".into()],
        strategies: Vec::new(),
        aggregation: None,
        utility: None,
        gammas: BTreeMap::new(),
    });
    EntStructure::new(specs).unwrap()
}
