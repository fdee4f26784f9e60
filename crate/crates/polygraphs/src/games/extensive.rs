//! Extensive-form games: finite trees of decision, chance, and payoff nodes.
//!
//! Each decision node is treated as its own agent with one block of
//! variables — the probabilities of its edges, minus a distinguished edge
//! whose probability is one minus the rest. The equations say that at every
//! decision node, the acting player is indifferent between each edge and the
//! distinguished one, holding the player's own later choices at their
//! distinguished edges while everyone else mixes. The resulting polynomial
//! graph only points down the tree, so it is acyclic and the count is zero
//! whenever there is at least one vertex: a generic game tree has either no
//! interior equilibrium or a positive-dimensional family of them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{GraphError, PolynomialGraph};
use crate::multilinear::{Monomial, MultilinearError, MultilinearPoly, PolySystem, VarSpace};
use crate::numerics::{format_rational, BigRational};

use super::normal::{strategy_variable_name, GameError, NormalFormGame, PlayerDef};

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("node name `{0}` appears more than once")]
    DuplicateNodeName(String),
    #[error("node `{node}` has two edges named `{edge}`")]
    DuplicateEdgeName { node: String, edge: String },
    #[error("decision node `{0}` has no edges")]
    EmptyDecision(String),
    #[error("chance node `{0}` has no branches")]
    EmptyChance(String),
    #[error("chance node `{node}` has a branch of weight {weight}; weights must be positive")]
    NonpositiveChanceWeight { node: String, weight: String },
    #[error("branch weights of chance node `{node}` sum to {sum}, not 1")]
    ChanceWeightSum { node: String, sum: String },
    #[error("leaf `{leaf}` has no payoff for player `{player}`")]
    MissingPayoff { leaf: String, player: String },
    #[error("leaf `{leaf}` assigns a payoff to `{player}`, who acts nowhere in the tree")]
    UnknownPayoffPlayer { leaf: String, player: String },
    #[error("no node named `{0}`")]
    UnknownNode(String),
    #[error("node `{node}` has no edge named `{edge}`")]
    UnknownEdge { node: String, edge: String },
    #[error("`{0}` is not a decision node")]
    NotADecisionNode(String),
    #[error("no choice given for decision node `{0}`")]
    MissingChoice(String),
    #[error("malformed distinguished-edge entry `{0}`; expected node=edge")]
    BadDistinguishedSpec(String),
    #[error("pure strategy space has {profiles} profiles, over the cap of {cap}")]
    StrategySpaceTooLarge { profiles: usize, cap: usize },
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// One edge of a decision node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub child: TreeNode,
}

/// A node of a game tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Decision {
        name: String,
        player: String,
        edges: Vec<Edge>,
    },
    Chance {
        name: String,
        branches: Vec<(BigRational, TreeNode)>,
    },
    Leaf {
        name: String,
        payoffs: BTreeMap<String, BigRational>,
    },
}

impl TreeNode {
    pub fn name(&self) -> &str {
        match self {
            TreeNode::Decision { name, .. }
            | TreeNode::Chance { name, .. }
            | TreeNode::Leaf { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone)]
enum FlatKind {
    Decision {
        player: String,
        edges: Vec<String>,
        children: Vec<usize>,
    },
    Chance {
        weights: Vec<BigRational>,
        children: Vec<usize>,
    },
    Leaf {
        payoffs: BTreeMap<String, BigRational>,
    },
}

#[derive(Debug, Clone)]
struct FlatNode {
    name: String,
    kind: FlatKind,
    /// `(ancestor index, branch taken at that ancestor)` from the root down.
    path: Vec<(usize, usize)>,
}

/// A validated game tree: globally unique node names, positive chance
/// weights summing to one, edge names unique per node, and a payoff at every
/// leaf for every player who acts somewhere.
#[derive(Debug, Clone)]
pub struct GameTree {
    root: TreeNode,
    nodes: Vec<FlatNode>,
    /// Players in order of first appearance.
    players: Vec<String>,
    /// Indices of decision nodes, in tree (pre-)order.
    decisions: Vec<usize>,
}

impl GameTree {
    pub fn new(root: TreeNode) -> Result<Self, TreeError> {
        let mut nodes = Vec::new();
        flatten(&root, Vec::new(), &mut nodes)?;

        let mut seen_names: Vec<&str> = Vec::new();
        for node in &nodes {
            if seen_names.contains(&node.name.as_str()) {
                return Err(TreeError::DuplicateNodeName(node.name.clone()));
            }
            seen_names.push(&node.name);
        }

        let mut players: Vec<String> = Vec::new();
        let mut decisions = Vec::new();
        for (idx, node) in nodes.iter().enumerate() {
            if let FlatKind::Decision { player, .. } = &node.kind {
                decisions.push(idx);
                if !players.contains(player) {
                    players.push(player.clone());
                }
            }
        }
        for node in &nodes {
            if let FlatKind::Leaf { payoffs } = &node.kind {
                for player in &players {
                    if !payoffs.contains_key(player) {
                        return Err(TreeError::MissingPayoff {
                            leaf: node.name.clone(),
                            player: player.clone(),
                        });
                    }
                }
                for named in payoffs.keys() {
                    if !players.contains(named) {
                        return Err(TreeError::UnknownPayoffPlayer {
                            leaf: node.name.clone(),
                            player: named.clone(),
                        });
                    }
                }
            }
        }
        Ok(GameTree { root, nodes, players, decisions })
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn decision_node_names(&self) -> Vec<&str> {
        self.decisions.iter().map(|&i| self.nodes[i].name.as_str()).collect()
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    fn node_by_name(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    fn decision_parts(&self, idx: usize) -> (&str, &[String], &[usize]) {
        match &self.nodes[idx].kind {
            FlatKind::Decision { player, edges, children } => (player, edges, children),
            _ => unreachable!("index comes from the decision list"),
        }
    }

    /// Variable layout induced by a distinguished-edge choice: for every
    /// decision node with at least two edges, one variable per other edge,
    /// named after the acting player. Variable order is tree order; blocks
    /// are the nodes.
    fn agent_layout(
        &self,
        dist: &DistinguishedEdges,
    ) -> Result<AgentLayout, TreeError> {
        let mut dist_idx = vec![None; self.nodes.len()];
        for &idx in &self.decisions {
            let (_, edges, _) = self.decision_parts(idx);
            let edge = dist.edge_for(&self.nodes[idx].name);
            let at = edges
                .iter()
                .position(|e| e == edge)
                .ok_or_else(|| TreeError::UnknownEdge {
                    node: self.nodes[idx].name.clone(),
                    edge: edge.to_string(),
                })?;
            dist_idx[idx] = Some(at);
        }

        let mut vars = Vec::new();
        let mut var_of = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &idx in &self.decisions {
            let (player, edges, _) = self.decision_parts(idx);
            if edges.len() < 2 {
                continue; // a single forced edge: no choice, no variable
            }
            let block = blocks.len();
            let mut members = Vec::new();
            for (k, edge) in edges.iter().enumerate() {
                if Some(k) == dist_idx[idx] {
                    continue;
                }
                let v = vars.len();
                vars.push((strategy_variable_name(player, edge), block));
                var_of.insert((idx, k), v);
                members.push(v);
            }
            blocks.push(members);
        }
        let space = VarSpace::new(vars)?;
        Ok(AgentLayout { space, var_of, blocks, dist_idx })
    }

    /// Expected payoff of `player` in the subtree under `node`, with the
    /// player holding their own later choices at the distinguished edges
    /// while every other player mixes. Distinguished-edge probabilities of
    /// other players are written as one minus their block's variables.
    fn subgame_value(
        &self,
        node: usize,
        player: &str,
        layout: &AgentLayout,
    ) -> MultilinearPoly {
        let space = &layout.space;
        match &self.nodes[node].kind {
            FlatKind::Leaf { payoffs } => {
                MultilinearPoly::constant(space, payoffs[player].clone())
            }
            FlatKind::Chance { weights, children } => {
                let mut total = MultilinearPoly::zero(space);
                for (w, &child) in weights.iter().zip(children) {
                    total = total.add(&self.subgame_value(child, player, layout).scale(w));
                }
                total
            }
            FlatKind::Decision { player: acting, children, .. } => {
                let d = layout.dist_idx[node].expect("decision nodes have a distinguished edge");
                if acting == player {
                    return self.subgame_value(children[d], player, layout);
                }
                let mut total = MultilinearPoly::zero(space);
                for (k, &child) in children.iter().enumerate() {
                    let prob = if k == d {
                        let mut p = MultilinearPoly::constant(space, BigRational::one());
                        for (other, _) in children.iter().enumerate() {
                            if other != d {
                                if let Some(&v) = layout.var_of.get(&(node, other)) {
                                    p.add_term(
                                        Monomial::from_vars(vec![v]),
                                        -BigRational::one(),
                                    );
                                }
                            }
                        }
                        p
                    } else {
                        MultilinearPoly::variable(space, layout.var_of[&(node, k)])
                    };
                    total = total.add(&prob.mul_disjoint(&self.subgame_value(child, player, layout)));
                }
                total
            }
        }
    }

    /// The indifference system of the tree: for each decision node and each
    /// non-distinguished edge, the acting player's expected payoff from that
    /// edge minus the payoff from the distinguished edge, in the subgame at
    /// that node. Equation `k` belongs to variable `k`.
    pub fn subgame_system(&self, dist: &DistinguishedEdges) -> Result<PolySystem, TreeError> {
        let layout = self.agent_layout(dist)?;
        let mut equations = Vec::with_capacity(layout.space.len());
        for &idx in &self.decisions {
            let (player, edges, children) = self.decision_parts(idx);
            if edges.len() < 2 {
                continue;
            }
            let d = layout.dist_idx[idx].unwrap();
            let base = self.subgame_value(children[d], player, &layout);
            for (k, _) in edges.iter().enumerate() {
                if k == d {
                    continue;
                }
                let diff = self.subgame_value(children[k], player, &layout).sub(&base);
                equations.push(diff);
            }
        }
        Ok(PolySystem::new(layout.space, equations)?)
    }

    /// The polynomial graph of the tree under a distinguished-edge choice.
    /// The vertex of edge `e` at node `ν` (acting player `i`) sees the whole
    /// block of node `μ` (player `j`) exactly when `j ≠ i`, `ν` is a proper
    /// ancestor of `μ`, the path from `ν` to `μ` leaves `ν` along `e` or
    /// along `ν`'s distinguished edge, and every intermediate node where `i`
    /// acts is left along its distinguished edge.
    pub fn polynomial_graph(&self, dist: &DistinguishedEdges) -> Result<PolynomialGraph, TreeError> {
        let layout = self.agent_layout(dist)?;
        let mut edges = Vec::new();
        for &nu in &self.decisions {
            let (i_player, nu_edges, _) = self.decision_parts(nu);
            if nu_edges.len() < 2 {
                continue;
            }
            let nu_dist = layout.dist_idx[nu].unwrap();
            for &mu in &self.decisions {
                let (j_player, mu_edges, _) = self.decision_parts(mu);
                if mu_edges.len() < 2 || j_player == i_player {
                    continue;
                }
                let Some(at) = self.nodes[mu].path.iter().position(|&(a, _)| a == nu) else {
                    continue; // ν is not an ancestor of μ
                };
                let first_edge = self.nodes[mu].path[at].1;
                // every node strictly between ν and μ where i acts must be
                // left along its distinguished edge
                let pure_between = self.nodes[mu].path[at + 1..].iter().all(|&(kappa, taken)| {
                    match &self.nodes[kappa].kind {
                        FlatKind::Decision { player, .. } if player == i_player => {
                            Some(taken) == layout.dist_idx[kappa]
                        }
                        _ => true,
                    }
                });
                if !pure_between {
                    continue;
                }
                for (k, _) in nu_edges.iter().enumerate() {
                    if k == nu_dist {
                        continue;
                    }
                    if first_edge != k && first_edge != nu_dist {
                        continue;
                    }
                    let from = layout.var_of[&(nu, k)];
                    for (m, _) in mu_edges.iter().enumerate() {
                        if Some(m) == layout.dist_idx[mu] {
                            continue;
                        }
                        edges.push((from, layout.var_of[&(mu, m)]));
                    }
                }
            }
        }
        let names: Vec<String> = layout.space.names().to_vec();
        Ok(PolynomialGraph::validate(&layout.blocks, &edges, Some(&names))?)
    }

    /// Replaces every chance node whose branches all lead to leaves by a
    /// single leaf carrying the expected payoffs, repeatedly, bottom-up.
    pub fn collapse_chance_leaves(&self) -> GameTree {
        fn collapse(node: &TreeNode) -> TreeNode {
            match node {
                TreeNode::Leaf { .. } => node.clone(),
                TreeNode::Decision { name, player, edges } => TreeNode::Decision {
                    name: name.clone(),
                    player: player.clone(),
                    edges: edges
                        .iter()
                        .map(|e| Edge { name: e.name.clone(), child: collapse(&e.child) })
                        .collect(),
                },
                TreeNode::Chance { name, branches } => {
                    let collapsed: Vec<(BigRational, TreeNode)> = branches
                        .iter()
                        .map(|(w, child)| (w.clone(), collapse(child)))
                        .collect();
                    if collapsed.iter().all(|(_, c)| matches!(c, TreeNode::Leaf { .. })) {
                        let mut payoffs: BTreeMap<String, BigRational> = BTreeMap::new();
                        for (w, child) in &collapsed {
                            if let TreeNode::Leaf { payoffs: p, .. } = child {
                                for (player, u) in p {
                                    *payoffs.entry(player.clone()).or_insert_with(BigRational::zero) +=
                                        w * u;
                                }
                            }
                        }
                        TreeNode::Leaf { name: name.clone(), payoffs }
                    } else {
                        TreeNode::Chance { name: name.clone(), branches: collapsed }
                    }
                }
            }
        }
        GameTree::new(collapse(&self.root)).expect("collapsing preserves validity")
    }

    /// Probability of reaching each leaf when every decision node follows
    /// `choices` (node name → edge name) and chance mixes as specified.
    pub fn leaf_distribution(
        &self,
        choices: &BTreeMap<String, String>,
    ) -> Result<Vec<(String, BigRational)>, TreeError> {
        let mut out = Vec::new();
        self.walk_distribution(0, BigRational::one(), choices, &mut out)?;
        Ok(out)
    }

    fn walk_distribution(
        &self,
        node: usize,
        prob: BigRational,
        choices: &BTreeMap<String, String>,
        out: &mut Vec<(String, BigRational)>,
    ) -> Result<(), TreeError> {
        match &self.nodes[node].kind {
            FlatKind::Leaf { .. } => {
                out.push((self.nodes[node].name.clone(), prob));
                Ok(())
            }
            FlatKind::Chance { weights, children } => {
                for (w, &child) in weights.iter().zip(children) {
                    self.walk_distribution(child, &prob * w, choices, out)?;
                }
                Ok(())
            }
            FlatKind::Decision { edges, children, .. } => {
                let name = &self.nodes[node].name;
                let edge = choices
                    .get(name)
                    .ok_or_else(|| TreeError::MissingChoice(name.clone()))?;
                let k = edges.iter().position(|e| e == edge).ok_or_else(|| {
                    TreeError::UnknownEdge { node: name.clone(), edge: edge.clone() }
                })?;
                self.walk_distribution(children[k], prob, choices, out)
            }
        }
    }

    /// Pure strategies per player: one edge choice at each of their nodes.
    fn player_nodes(&self, player: &str) -> Vec<usize> {
        self.decisions
            .iter()
            .copied()
            .filter(|&i| self.decision_parts(i).0 == player)
            .collect()
    }

    /// Converts the tree to a normal-form game: a player's strategy picks an
    /// edge at each of their decision nodes, and payoffs are expectations
    /// over chance. Errors if the pure profile table would exceed
    /// `max_profiles` rows.
    pub fn normal_form_of(&self, max_profiles: usize) -> Result<NormalFormGame, TreeError> {
        let mut defs = Vec::new();
        let mut node_lists = Vec::new();
        for player in &self.players {
            let nodes = self.player_nodes(player);
            let counts: Vec<usize> =
                nodes.iter().map(|&i| self.decision_parts(i).1.len()).collect();
            let mut strategies = Vec::new();
            for combo in super::normal::profile_iter(counts.clone()) {
                let parts: Vec<String> = nodes
                    .iter()
                    .zip(&combo)
                    .map(|(&i, &k)| {
                        let (_, edges, _) = self.decision_parts(i);
                        if nodes.len() == 1 {
                            edges[k].clone()
                        } else {
                            format!("{}={}", self.nodes[i].name, edges[k])
                        }
                    })
                    .collect();
                strategies.push(parts.join(","));
            }
            defs.push(PlayerDef::new(player.clone(), strategies));
            node_lists.push(nodes);
        }
        let profiles: usize = defs.iter().map(|d| d.strategies.len()).product();
        if profiles > max_profiles {
            return Err(TreeError::StrategySpaceTooLarge { profiles, cap: max_profiles });
        }

        let counts: Vec<usize> = defs.iter().map(|d| d.strategies.len()).collect();
        let mut rows = Vec::with_capacity(profiles);
        for profile in super::normal::profile_iter(counts) {
            let mut choices = BTreeMap::new();
            for (p, &strategy) in profile.iter().enumerate() {
                let nodes = &node_lists[p];
                let node_counts: Vec<usize> =
                    nodes.iter().map(|&i| self.decision_parts(i).1.len()).collect();
                let combo = decode_odometer(strategy, &node_counts);
                for (&node, &k) in nodes.iter().zip(&combo) {
                    let (_, edges, _) = self.decision_parts(node);
                    choices.insert(self.nodes[node].name.clone(), edges[k].clone());
                }
            }
            let leaves = self.leaf_distribution(&choices)?;
            let mut row = vec![BigRational::zero(); self.players.len()];
            for (leaf, prob) in &leaves {
                let idx = self.node_by_name(leaf).unwrap();
                if let FlatKind::Leaf { payoffs } = &self.nodes[idx].kind {
                    for (p, player) in self.players.iter().enumerate() {
                        row[p] += prob * &payoffs[player];
                    }
                }
            }
            rows.push(row);
        }
        Ok(NormalFormGame::new(defs, rows)?)
    }

    /// Solves the tree by backward induction: at each decision node the
    /// acting player takes the child with the best expected value, breaking
    /// ties toward the earliest edge and recording them.
    pub fn backward_induction(&self) -> InductionOutcome {
        let mut choices = BTreeMap::new();
        let mut ties = Vec::new();
        let values = self.induct(0, &mut choices, &mut ties);
        InductionOutcome { choices, values, ties }
    }

    fn induct(
        &self,
        node: usize,
        choices: &mut BTreeMap<String, String>,
        ties: &mut Vec<TieNote>,
    ) -> BTreeMap<String, BigRational> {
        match &self.nodes[node].kind {
            FlatKind::Leaf { payoffs } => payoffs.clone(),
            FlatKind::Chance { weights, children } => {
                let mut total: BTreeMap<String, BigRational> = self
                    .players
                    .iter()
                    .map(|p| (p.clone(), BigRational::zero()))
                    .collect();
                for (w, &child) in weights.iter().zip(children) {
                    for (player, value) in self.induct(child, choices, ties) {
                        *total.get_mut(&player).unwrap() += w * value;
                    }
                }
                total
            }
            FlatKind::Decision { player, edges, children } => {
                let child_values: Vec<BTreeMap<String, BigRational>> = children
                    .iter()
                    .map(|&c| self.induct(c, choices, ties))
                    .collect();
                let mut best = 0;
                for (k, values) in child_values.iter().enumerate().skip(1) {
                    if values[player] > child_values[best][player] {
                        best = k;
                    }
                }
                let tied: Vec<String> = (0..children.len())
                    .filter(|&k| k != best && child_values[k][player] == child_values[best][player])
                    .map(|k| edges[k].clone())
                    .collect();
                if !tied.is_empty() {
                    ties.push(TieNote {
                        node: self.nodes[node].name.clone(),
                        chosen: edges[best].clone(),
                        tied_with: tied,
                    });
                }
                choices.insert(self.nodes[node].name.clone(), edges[best].clone());
                child_values[best].clone()
            }
        }
    }
}

struct AgentLayout {
    space: Arc<VarSpace>,
    /// `(decision node, edge index)` → variable index.
    var_of: BTreeMap<(usize, usize), usize>,
    blocks: Vec<Vec<usize>>,
    /// Per flat node: index of the distinguished edge (decision nodes only).
    dist_idx: Vec<Option<usize>>,
}

fn decode_odometer(mut index: usize, counts: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; counts.len()];
    for (i, &c) in counts.iter().enumerate().rev() {
        digits[i] = index % c;
        index /= c;
    }
    digits
}

fn flatten(
    node: &TreeNode,
    path: Vec<(usize, usize)>,
    out: &mut Vec<FlatNode>,
) -> Result<usize, TreeError> {
    let idx = out.len();
    match node {
        TreeNode::Leaf { name, payoffs } => {
            out.push(FlatNode {
                name: name.clone(),
                kind: FlatKind::Leaf { payoffs: payoffs.clone() },
                path,
            });
        }
        TreeNode::Chance { name, branches } => {
            if branches.is_empty() {
                return Err(TreeError::EmptyChance(name.clone()));
            }
            let mut sum = BigRational::zero();
            for (w, _) in branches {
                if *w <= BigRational::zero() {
                    return Err(TreeError::NonpositiveChanceWeight {
                        node: name.clone(),
                        weight: format_rational(w),
                    });
                }
                sum += w;
            }
            if !sum.is_one() {
                return Err(TreeError::ChanceWeightSum {
                    node: name.clone(),
                    sum: format_rational(&sum),
                });
            }
            out.push(FlatNode {
                name: name.clone(),
                kind: FlatKind::Chance { weights: Vec::new(), children: Vec::new() },
                path: path.clone(),
            });
            let mut children = Vec::new();
            let mut weights = Vec::new();
            for (k, (w, child)) in branches.iter().enumerate() {
                let mut child_path = path.clone();
                child_path.push((idx, k));
                children.push(flatten(child, child_path, out)?);
                weights.push(w.clone());
            }
            out[idx].kind = FlatKind::Chance { weights, children };
        }
        TreeNode::Decision { name, player, edges } => {
            if edges.is_empty() {
                return Err(TreeError::EmptyDecision(name.clone()));
            }
            for (i, e) in edges.iter().enumerate() {
                if edges[..i].iter().any(|f| f.name == e.name) {
                    return Err(TreeError::DuplicateEdgeName {
                        node: name.clone(),
                        edge: e.name.clone(),
                    });
                }
            }
            out.push(FlatNode {
                name: name.clone(),
                kind: FlatKind::Decision {
                    player: player.clone(),
                    edges: Vec::new(),
                    children: Vec::new(),
                },
                path: path.clone(),
            });
            let mut children = Vec::new();
            for (k, e) in edges.iter().enumerate() {
                let mut child_path = path.clone();
                child_path.push((idx, k));
                children.push(flatten(&e.child, child_path, out)?);
            }
            out[idx].kind = FlatKind::Decision {
                player: player.clone(),
                edges: edges.iter().map(|e| e.name.clone()).collect(),
                children,
            };
        }
    }
    Ok(idx)
}

/// The choice, per decision node, of the edge whose probability is
/// eliminated from the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishedEdges {
    by_node: BTreeMap<String, String>,
}

impl DistinguishedEdges {
    /// The default choice: the first edge of every decision node.
    pub fn first_edges(tree: &GameTree) -> Self {
        let mut by_node = BTreeMap::new();
        for &idx in &tree.decisions {
            let (_, edges, _) = tree.decision_parts(idx);
            by_node.insert(tree.nodes[idx].name.clone(), edges[0].clone());
        }
        DistinguishedEdges { by_node }
    }

    /// The default choice with some nodes overridden.
    pub fn with_overrides(
        tree: &GameTree,
        overrides: &BTreeMap<String, String>,
    ) -> Result<Self, TreeError> {
        let mut dist = Self::first_edges(tree);
        for (node, edge) in overrides {
            let idx = tree
                .node_by_name(node)
                .ok_or_else(|| TreeError::UnknownNode(node.clone()))?;
            let FlatKind::Decision { edges, .. } = &tree.nodes[idx].kind else {
                return Err(TreeError::NotADecisionNode(node.clone()));
            };
            if !edges.contains(edge) {
                return Err(TreeError::UnknownEdge { node: node.clone(), edge: edge.clone() });
            }
            dist.by_node.insert(node.clone(), edge.clone());
        }
        Ok(dist)
    }

    /// Parses a `node=edge,node=edge` override list.
    pub fn parse_spec(tree: &GameTree, spec: &str) -> Result<Self, TreeError> {
        let mut overrides = BTreeMap::new();
        for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let Some((node, edge)) = part.split_once('=') else {
                return Err(TreeError::BadDistinguishedSpec(part.to_string()));
            };
            overrides.insert(node.trim().to_string(), edge.trim().to_string());
        }
        Self::with_overrides(tree, &overrides)
    }

    pub fn edge_for(&self, node: &str) -> &str {
        &self.by_node[node]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &String)> {
        self.by_node.iter()
    }
}

/// Result of backward induction: the chosen edge at every decision node, the
/// value of the game for each player, and any ties encountered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionOutcome {
    pub choices: BTreeMap<String, String>,
    pub values: BTreeMap<String, BigRational>,
    pub ties: Vec<TieNote>,
}

/// A tie met during backward induction, broken toward the earliest edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieNote {
    pub node: String,
    pub chosen: String,
    pub tied_with: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::Assignment;
    use crate::numerics::{rat, DEFAULT_DIMENSION_CAP};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn leaf(name: &str, payoffs: &[(&str, BigRational)]) -> TreeNode {
        TreeNode::Leaf {
            name: name.into(),
            payoffs: payoffs.iter().map(|(p, u)| (p.to_string(), u.clone())).collect(),
        }
    }

    fn decision(name: &str, player: &str, edges: Vec<(&str, TreeNode)>) -> TreeNode {
        TreeNode::Decision {
            name: name.into(),
            player: player.into(),
            edges: edges
                .into_iter()
                .map(|(n, child)| Edge { name: n.into(), child })
                .collect(),
        }
    }

    /// Three players moving in sequence; the third player's payoffs make
    /// them indifferent among all their moves, so the solution set is a
    /// curve rather than a finite set.
    fn hyperbola_tree() -> GameTree {
        let e = decision(
            "E",
            "3",
            vec![
                ("F", leaf("F", &[("1", rat(1, 1)), ("2", rat(0, 1)), ("3", rat(1, 1))])),
                ("G", leaf("G", &[("1", rat(2, 1)), ("2", rat(0, 1)), ("3", rat(1, 1))])),
                ("H", leaf("H", &[("1", rat(1, 1)), ("2", rat(6, 1)), ("3", rat(1, 1))])),
            ],
        );
        let c = decision(
            "C",
            "2",
            vec![
                ("D", leaf("D", &[("1", rat(2, 1)), ("2", rat(2, 1)), ("3", rat(0, 1))])),
                ("E", e),
            ],
        );
        let a = decision(
            "A",
            "1",
            vec![
                ("B", leaf("B", &[("1", rat(3, 2)), ("2", rat(0, 1)), ("3", rat(2, 1))])),
                ("C", c),
            ],
        );
        GameTree::new(a).unwrap()
    }

    #[test]
    fn sequential_game_equations_match_hand_computation() {
        let tree = hyperbola_tree();
        let dist = DistinguishedEdges::first_edges(&tree);
        let system = tree.subgame_system(&dist).unwrap();
        assert_eq!(
            system.space().names(),
            &["sigma_1(C)", "sigma_2(E)", "sigma_3(G)", "sigma_3(H)"]
        );
        let rendered: Vec<String> =
            system.equations().iter().map(|eq| eq.render()).collect();
        assert_eq!(rendered[0], "-sigma_2(E) + sigma_2(E)*sigma_3(G) + 1/2");
        assert_eq!(rendered[1], "6*sigma_3(H) - 2");
        assert_eq!(rendered[2], "0");
        assert_eq!(rendered[3], "0");
    }

    #[test]
    fn sequential_game_has_a_curve_of_solutions() {
        let tree = hyperbola_tree();
        let dist = DistinguishedEdges::first_edges(&tree);
        let system = tree.subgame_system(&dist).unwrap();

        // one point on the curve, with the free first coordinate set to 1/2
        let mut point = BTreeMap::new();
        point.insert("sigma_1(C)".to_string(), rat(1, 2));
        point.insert("sigma_2(E)".to_string(), rat(6, 7));
        point.insert("sigma_3(G)".to_string(), rat(5, 12));
        point.insert("sigma_3(H)".to_string(), rat(1, 3));
        let at = Assignment::from_named(system.space(), &point).unwrap();
        assert!(system.residual(&at).unwrap().iter().all(|r| r.is_zero()));

        // perturbing the non-free coordinate breaks it
        point.insert("sigma_3(H)".to_string(), rat(1, 2));
        let off = Assignment::from_named(system.space(), &point).unwrap();
        assert!(!system.residual(&off).unwrap().iter().all(|r| r.is_zero()));
    }

    #[test]
    fn sequential_game_graph_is_acyclic_with_count_zero() {
        let tree = hyperbola_tree();
        let dist = DistinguishedEdges::first_edges(&tree);
        let graph = tree.polynomial_graph(&dist).unwrap();
        let system = tree.subgame_system(&dist).unwrap();
        assert!(system.validate_sparsity(&graph).is_clean());

        let mut edges = graph.edges();
        edges.sort_unstable();
        // C is the variable vertex of node A; E of node C; G, H of node E
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);

        let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(report.count, BigInt::zero());
        assert!(report.caveat.is_some());
        assert_eq!(report.off_cycle_vertices.len(), graph.d());
    }

    #[test]
    fn alternative_distinguished_edges_give_an_equivalent_system() {
        let tree = hyperbola_tree();
        let dist = DistinguishedEdges::parse_spec(&tree, "A=C,E=G").unwrap();
        let system = tree.subgame_system(&dist).unwrap();
        assert_eq!(
            system.space().names(),
            &["sigma_1(B)", "sigma_2(E)", "sigma_3(F)", "sigma_3(H)"]
        );
        // same solution curve in the new coordinates
        let mut point = BTreeMap::new();
        point.insert("sigma_1(B)".to_string(), rat(1, 2));
        point.insert("sigma_2(E)".to_string(), rat(6, 7));
        point.insert("sigma_3(F)".to_string(), rat(1, 4));
        point.insert("sigma_3(H)".to_string(), rat(1, 3));
        let at = Assignment::from_named(system.space(), &point).unwrap();
        assert!(system.residual(&at).unwrap().iter().all(|r| r.is_zero()));

        let graph = tree.polynomial_graph(&dist).unwrap();
        assert!(system.validate_sparsity(&graph).is_clean());
        let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(report.count, BigInt::zero());
    }

    #[test]
    fn later_own_nodes_behind_other_edges_stay_silent() {
        // player 1 acts at the root and again two levels down; the path to
        // their second node leaves the root along a non-distinguished edge,
        // so the root's vertices must not see the bottom block
        let d = decision(
            "D",
            "2",
            vec![
                ("d1", leaf("L3", &[("1", rat(1, 1)), ("2", rat(0, 1))])),
                ("d2", leaf("L4", &[("1", rat(5, 1)), ("2", rat(3, 1))])),
            ],
        );
        let c = decision(
            "C",
            "1",
            vec![
                ("c1", leaf("L2", &[("1", rat(2, 1)), ("2", rat(1, 1))])),
                ("c2", d),
            ],
        );
        let a = decision(
            "A",
            "1",
            vec![
                ("a1", leaf("L1", &[("1", rat(4, 1)), ("2", rat(2, 1))])),
                ("a2", c),
            ],
        );
        let tree = GameTree::new(a).unwrap();
        let dist = DistinguishedEdges::first_edges(&tree);
        let graph = tree.polynomial_graph(&dist).unwrap();
        // vertices: a2, c2, d2 — only c2 → d2 qualifies: the root’s block
        // would need the intermediate node C (same player) to follow its
        // distinguished edge, but reaching D goes through c2
        assert_eq!(graph.edges(), vec![(1, 2)]);
        let system = tree.subgame_system(&dist).unwrap();
        assert!(system.validate_sparsity(&graph).is_clean());
    }

    #[test]
    fn siblings_behind_other_edges_stay_silent() {
        // the path to an agent must leave the source along the source vertex's
        // own edge or the distinguished edge; a third edge does not qualify
        let b = decision(
            "B",
            "2",
            vec![
                ("b1", leaf("L2", &[("1", rat(1, 1)), ("2", rat(2, 1))])),
                ("b2", leaf("L3", &[("1", rat(0, 1)), ("2", rat(1, 1))])),
            ],
        );
        let c = decision(
            "C",
            "2",
            vec![
                ("c1", leaf("L4", &[("1", rat(1, 1)), ("2", rat(0, 1))])),
                ("c2", leaf("L5", &[("1", rat(2, 1)), ("2", rat(4, 1))])),
            ],
        );
        let a = decision(
            "A",
            "1",
            vec![
                ("a1", leaf("L1", &[("1", rat(3, 1)), ("2", rat(0, 1))])),
                ("a2", b),
                ("a3", c),
            ],
        );
        let tree = GameTree::new(a).unwrap();
        let dist = DistinguishedEdges::first_edges(&tree);
        let graph = tree.polynomial_graph(&dist).unwrap();
        // vertices: a2, a3, b2, c2 — a2 sees only B's block, a3 only C's
        let mut edges = graph.edges();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 2), (1, 3)]);
        let system = tree.subgame_system(&dist).unwrap();
        assert!(system.validate_sparsity(&graph).is_clean());
    }

    #[test]
    fn backward_induction_picks_the_subgame_perfect_path() {
        let tree = hyperbola_tree();
        let outcome = tree.backward_induction();
        assert_eq!(outcome.choices["A"], "C");
        assert_eq!(outcome.choices["C"], "D");
        assert_eq!(outcome.choices["E"], "F");
        assert_eq!(outcome.values["1"], rat(2, 1));
        assert_eq!(outcome.values["2"], rat(2, 1));
        assert_eq!(outcome.values["3"], rat(0, 1));
        // player 3's payoffs are all equal, so the choice at E is a tie
        assert_eq!(outcome.ties.len(), 1);
        assert_eq!(outcome.ties[0].node, "E");
        assert_eq!(outcome.ties[0].chosen, "F");
        assert_eq!(outcome.ties[0].tied_with, vec!["G".to_string(), "H".to_string()]);
    }

    #[test]
    fn chance_nodes_collapse_into_expected_leaves() {
        let chance = TreeNode::Chance {
            name: "roll".into(),
            branches: vec![
                (rat(1, 3), leaf("lo", &[("1", rat(2, 1))])),
                (rat(2, 3), leaf("hi", &[("1", rat(3, 1))])),
            ],
        };
        let tree = GameTree::new(decision(
            "A",
            "1",
            vec![("stay", leaf("L", &[("1", rat(5, 2))])), ("roll", chance)],
        ))
        .unwrap();
        let collapsed = tree.collapse_chance_leaves();
        let TreeNode::Decision { edges, .. } = collapsed.root() else {
            panic!("root should stay a decision node")
        };
        let TreeNode::Leaf { name, payoffs } = &edges[1].child else {
            panic!("the chance subtree should be a leaf now")
        };
        assert_eq!(name, "roll");
        assert_eq!(payoffs["1"], rat(8, 3));
    }

    #[test]
    fn leaf_distribution_mixes_over_chance() {
        let chance = TreeNode::Chance {
            name: "roll".into(),
            branches: vec![
                (rat(1, 4), leaf("lo", &[("1", rat(0, 1))])),
                (rat(3, 4), leaf("hi", &[("1", rat(1, 1))])),
            ],
        };
        let tree = GameTree::new(decision(
            "A",
            "1",
            vec![("safe", leaf("L", &[("1", rat(1, 2))])), ("roll", chance)],
        ))
        .unwrap();
        let mut choices = BTreeMap::new();
        choices.insert("A".to_string(), "roll".to_string());
        let dist = tree.leaf_distribution(&choices).unwrap();
        assert_eq!(dist, vec![("lo".to_string(), rat(1, 4)), ("hi".to_string(), rat(3, 4))]);
        let total: BigRational = dist.into_iter().map(|(_, p)| p).sum();
        assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn normal_form_conversion_matches_the_tree() {
        let tree = hyperbola_tree();
        let game = tree.normal_form_of(100).unwrap();
        assert_eq!(game.n_players(), 3);
        assert_eq!(
            game.players().iter().map(|p| p.strategies.len()).collect::<Vec<_>>(),
            vec![2, 2, 3]
        );
        // pure profile (C, E, H) reaches leaf H
        let p1 = game.players()[0].strategies.iter().position(|s| s == "C").unwrap();
        let p2 = game.players()[1].strategies.iter().position(|s| s == "E").unwrap();
        let p3 = game.players()[2].strategies.iter().position(|s| s == "H").unwrap();
        assert_eq!(game.payoff(1, &[p1, p2, p3]), &rat(6, 1));
        // the backward-induction value equals the payoff at its pure profile
        let outcome = tree.backward_induction();
        let q1 = game.players()[0].strategies.iter().position(|s| s == "C").unwrap();
        let q2 = game.players()[1].strategies.iter().position(|s| s == "D").unwrap();
        let q3 = game.players()[2].strategies.iter().position(|s| s == "F").unwrap();
        for (p, player) in ["1", "2", "3"].iter().enumerate() {
            assert_eq!(game.payoff(p, &[q1, q2, q3]), &outcome.values[*player]);
        }
    }

    #[test]
    fn normal_form_conversion_respects_the_profile_cap() {
        let tree = hyperbola_tree();
        assert!(matches!(
            tree.normal_form_of(5),
            Err(TreeError::StrategySpaceTooLarge { profiles: 12, cap: 5 })
        ));
    }

    #[test]
    fn validation_rejects_malformed_trees() {
        // duplicate node names
        let bad = decision(
            "A",
            "1",
            vec![
                ("x", leaf("A", &[("1", rat(0, 1))])),
                ("y", leaf("B", &[("1", rat(1, 1))])),
            ],
        );
        assert!(matches!(GameTree::new(bad), Err(TreeError::DuplicateNodeName(n)) if n == "A"));

        // chance weights that do not sum to one
        let bad = TreeNode::Chance {
            name: "c".into(),
            branches: vec![
                (rat(1, 2), leaf("x", &[])),
                (rat(1, 3), leaf("y", &[])),
            ],
        };
        assert!(matches!(
            GameTree::new(bad),
            Err(TreeError::ChanceWeightSum { sum, .. }) if sum == "5/6"
        ));

        // a leaf missing a moving player's payoff
        let bad = decision(
            "A",
            "1",
            vec![("x", leaf("L", &[])), ("y", leaf("M", &[("1", rat(1, 1))]))],
        );
        assert!(matches!(
            GameTree::new(bad),
            Err(TreeError::MissingPayoff { leaf, .. }) if leaf == "L"
        ));
    }

    #[test]
    fn distinguished_spec_parsing_validates_names() {
        let tree = hyperbola_tree();
        assert!(matches!(
            DistinguishedEdges::parse_spec(&tree, "Z=C"),
            Err(TreeError::UnknownNode(n)) if n == "Z"
        ));
        assert!(matches!(
            DistinguishedEdges::parse_spec(&tree, "A=Q"),
            Err(TreeError::UnknownEdge { .. })
        ));
        assert!(matches!(
            DistinguishedEdges::parse_spec(&tree, "AC"),
            Err(TreeError::BadDistinguishedSpec(s)) if s == "AC"
        ));
        assert!(matches!(
            DistinguishedEdges::parse_spec(&tree, "F=G"),
            Err(TreeError::UnknownNode(_)) | Err(TreeError::NotADecisionNode(_))
        ));
    }
}
