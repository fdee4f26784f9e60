//! Backward induction on a tree with a chance move and a deliberate tie.
//!
//! The second player is exactly indifferent between their two replies, so
//! induction records a tie note while still committing to the earliest edge.
//! Collapsing the chance node into an expected-payoff leaf changes the tree
//! shape but not the induced normal form.

use std::collections::BTreeMap;

use polygraphs::games::extensive::{Edge, GameTree, TreeNode};
use polygraphs::numerics::{format_rational, rat};

fn leaf(name: &str, u1: (i64, i64), u2: (i64, i64)) -> TreeNode {
    TreeNode::Leaf {
        name: name.into(),
        payoffs: BTreeMap::from([("1".into(), rat(u1.0, u1.1)), ("2".into(), rat(u2.0, u2.1))]),
    }
}

fn main() {
    let tree = GameTree::new(TreeNode::Decision {
        name: "start".into(),
        player: "1".into(),
        edges: vec![
            Edge {
                name: "left".into(),
                child: TreeNode::Chance {
                    name: "lottery".into(),
                    branches: vec![
                        (rat(1, 4), leaf("L1", (4, 1), (0, 1))),
                        (rat(3, 4), leaf("L2", (0, 1), (2, 1))),
                    ],
                },
            },
            Edge {
                name: "right".into(),
                child: TreeNode::Decision {
                    name: "reply".into(),
                    player: "2".into(),
                    edges: vec![
                        Edge { name: "up".into(), child: leaf("U", (2, 1), (1, 1)) },
                        Edge { name: "down".into(), child: leaf("D", (3, 1), (1, 1)) },
                    ],
                },
            },
        ],
    })
    .unwrap();

    let outcome = tree.backward_induction();
    println!("backward induction choices:");
    for (node, edge) in &outcome.choices {
        println!("  at {node}: take {edge}");
    }
    println!("values of the game:");
    for (player, value) in &outcome.values {
        println!("  player {player}: {}", format_rational(value));
    }
    for tie in &outcome.ties {
        println!(
            "tie at {}: chose {}, equally good: {:?}",
            tie.node, tie.chosen, tie.tied_with
        );
    }
    assert_eq!(outcome.choices["start"], "right");
    assert_eq!(outcome.choices["reply"], "up");
    assert_eq!(outcome.ties.len(), 1, "player 2 is exactly indifferent at `reply`");

    // Following the induced choices reaches leaf U with certainty.
    let reach = tree.leaf_distribution(&outcome.choices).unwrap();
    println!("\nleaves reached under those choices:");
    for (leaf, prob) in &reach {
        println!("  {leaf} with probability {}", format_rational(prob));
    }
    assert_eq!(reach, vec![("U".to_string(), rat(1, 1))]);

    // Chance nodes whose branches are all leaves fold into expected payoffs.
    let collapsed = tree.collapse_chance_leaves();
    println!(
        "\ncollapse: {} nodes down to {}",
        tree.n_nodes(),
        collapsed.n_nodes()
    );
    assert!(collapsed.n_nodes() < tree.n_nodes());

    // Expectation commutes with strategy enumeration: both trees induce the
    // same two-by-two normal form.
    let nf = tree.normal_form_of(1_000).unwrap();
    let nf_collapsed = collapsed.normal_form_of(1_000).unwrap();
    assert_eq!(nf, nf_collapsed);
    println!("\ninduced normal form (same for both trees):");
    for (row, profile) in nf.payoff_rows().iter().zip(0..) {
        let rendered: Vec<String> = row.iter().map(format_rational).collect();
        println!("  profile {profile}: {rendered:?}");
    }
}
