//! Exact counting of generic quasiequilibria of finite games.
//!
//! A game — normal-form, graphical, extensive-form, or a tree of emergent
//! nodes — induces a square system of multilinear *indifference equations*:
//! one equation and one variable per non-distinguished strategy. The system
//! comes with a block-partitioned digraph (the *polynomial graph*) recording
//! which variables may occur in which equation. For generic payoffs, the
//! number of isolated solutions with every coordinate nonzero equals
//! `per(g) / ∏ dᵢ!`, where `g` is the graph's 0/1 adjacency matrix and the
//! `dᵢ` are the block sizes. Everything is computed in exact rational
//! arithmetic and cross-checked against deliberately naive oracles.
//!
//! Start from the runnable examples (`cargo run --example <name>`):
//!
//! * `complete_games` — counts for complete normal-form games
//! * `graphical_cycle` — a cyclic graphical model with a linear system
//! * `extensive_hyperbola` — a perfect-information tree and its subgame system
//! * `backward_induction` — chance collapsing and pure backward induction
//! * `saboteur_ent` — an emergent-node tree, relaxed model, and consistency
//! * `oracle_crosscheck` — randomized agreement of all counting routes
//! * `permanents` — the Ryser evaluator against the naive oracle
//!
//! The same functionality is exposed by the `polygraphs` binary; see the
//! repository README for the file formats and subcommands.

pub mod cli;
pub mod games;
pub mod graph;
pub mod io;
pub mod multilinear;
pub mod numerics;
pub mod oracles;
