//! Hierarchical games: a tree of players whose internal nodes are *emergent*
//! players. The leaves are the actual players; each internal non-root node
//! carries its own strategy set together with an aggregation rule that turns
//! its children's (mixed) strategies into its own, and every non-root node
//! has a local utility over itself and its siblings plus weighted shares of
//! its ancestors' utilities.
//!
//! The *relaxed* view forgets that emergent strategies are determined by the
//! children and treats every non-root node as an independent player whose
//! utility depends on its siblings — ancestor share terms cancel from
//! indifference differences. This turns the tree into a graphical model
//! whose count bounds the number of equilibria that respect the hierarchy;
//! the dropped aggregation identities remain as separate consistency checks.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::PolynomialGraph;
use crate::multilinear::{Assignment, PolySystem};
use crate::numerics::{format_rational, BigRational, RationalMatrix};

use super::normal::{
    profile_iter, strategy_variable_name, GameError, GraphicalModel, NormalFormGame, PlayerDef,
};

#[derive(Debug, Error)]
pub enum EntError {
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("node `{parent}` lists unknown child `{child}`")]
    UnknownChild { parent: String, child: String },
    #[error("node `{0}` has more than one parent")]
    MultipleParents(String),
    #[error("the tree needs exactly one root; found {0:?}")]
    RootCount(Vec<String>),
    #[error("node `{0}` is not reachable from the root")]
    Unreachable(String),
    #[error("the root must be a bare grouping node; `{node}` also has {what}")]
    RootAttributes { node: String, what: String },
    #[error("the root has no children")]
    NoLeaves,
    #[error("node `{0}` has no strategies")]
    NoStrategies(String),
    #[error("leaf `{0}` cannot have an aggregation rule")]
    LeafWithAggregation(String),
    #[error("emergent node `{0}` needs an aggregation rule")]
    MissingAggregation(String),
    #[error("node `{node}` has {got} strategies; at most the {max} child profiles are allowed")]
    TooManyStrategies { node: String, got: usize, max: usize },
    #[error("aggregation of `{node}` has {got} entries, expected {want}")]
    AggregationLength { node: String, got: usize, want: usize },
    #[error("aggregation of `{node}`, child profile {row}: probabilities sum to {sum}, not 1")]
    AggregationRowSum { node: String, row: usize, sum: String },
    #[error("aggregation of `{node}`, child profile {row}: negative probability")]
    AggregationNegative { node: String, row: usize },
    #[error("aggregation of `{node}` has rank {rank}; it must reach all {want} strategies")]
    AggregationRankDeficient { node: String, rank: usize, want: usize },
    #[error("node `{0}` has no utility table")]
    MissingUtility(String),
    #[error("utility of `{node}` has {got} entries, expected {want}")]
    UtilityLength { node: String, got: usize, want: usize },
    #[error("node `{node}` is missing the share weight for ancestor `{ancestor}`")]
    MissingGamma { node: String, ancestor: String },
    #[error("node `{node}` has a share weight for `{name}`, which is not one of its non-root ancestors")]
    ExtraGamma { node: String, name: String },
    #[error("no node named `{0}`")]
    UnknownNode(String),
    #[error("profile gives node `{node}` {got} probabilities, expected {want}")]
    ProfileShape { node: String, got: usize, want: usize },
    #[error("probabilities of node `{node}` sum to {sum}, not 1")]
    ProfileSum { node: String, sum: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// One node of the hierarchy, as written in input files.
///
/// Flat table layouts (all odometer order, last coordinate fastest):
/// - `aggregation[profile * K + k]` is the probability of own strategy `k`
///   given the children's pure profile (children in listed order);
/// - `utility[profile * K + k]` is the local payoff of own strategy `k`
///   against the siblings' pure profile (siblings in tree order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntNodeSpec {
    pub name: String,
    pub children: Vec<String>,
    pub strategies: Vec<String>,
    pub aggregation: Option<Vec<BigRational>>,
    pub utility: Option<Vec<BigRational>>,
    pub gammas: BTreeMap<String, BigRational>,
}

#[derive(Debug, Clone)]
struct NodeData {
    name: String,
    children: Vec<usize>,
    strategies: Vec<String>,
    aggregation: Option<Vec<BigRational>>,
    utility: Option<Vec<BigRational>>,
    /// Ancestor node index → share weight, for every non-root ancestor.
    gammas: BTreeMap<usize, BigRational>,
    parent: Option<usize>,
}

/// A validated hierarchy of players.
#[derive(Debug, Clone)]
pub struct EntStructure {
    nodes: Vec<NodeData>,
    root: usize,
    /// Non-root nodes in listed order — the players of the relaxed model.
    nonroot: Vec<usize>,
    /// Nodes without children, in listed order — the actual players.
    leaves: Vec<usize>,
}

impl EntStructure {
    pub fn new(specs: Vec<EntNodeSpec>) -> Result<Self, EntError> {
        let mut by_name: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, spec) in specs.iter().enumerate() {
            if by_name.insert(&spec.name, i).is_some() {
                return Err(EntError::DuplicateNode(spec.name.clone()));
            }
        }
        let mut nodes: Vec<NodeData> = Vec::with_capacity(specs.len());
        for spec in &specs {
            let mut children = Vec::with_capacity(spec.children.len());
            for child in &spec.children {
                let &idx = by_name.get(child.as_str()).ok_or_else(|| EntError::UnknownChild {
                    parent: spec.name.clone(),
                    child: child.clone(),
                })?;
                children.push(idx);
            }
            nodes.push(NodeData {
                name: spec.name.clone(),
                children,
                strategies: spec.strategies.clone(),
                aggregation: spec.aggregation.clone(),
                utility: spec.utility.clone(),
                gammas: BTreeMap::new(), // resolved below
                parent: None,
            });
        }

        // parent pointers and root detection
        for i in 0..nodes.len() {
            for k in 0..nodes[i].children.len() {
                let c = nodes[i].children[k];
                if nodes[c].parent.is_some() {
                    return Err(EntError::MultipleParents(nodes[c].name.clone()));
                }
                nodes[c].parent = Some(i);
            }
        }
        let roots: Vec<usize> =
            (0..nodes.len()).filter(|&i| nodes[i].parent.is_none()).collect();
        let [root] = roots[..] else {
            return Err(EntError::RootCount(
                roots.iter().map(|&i| nodes[i].name.clone()).collect(),
            ));
        };
        // every node hangs off the root (rules out disjoint cycles)
        let mut reachable = vec![false; nodes.len()];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            if !reachable[i] {
                reachable[i] = true;
                stack.extend(&nodes[i].children);
            }
        }
        if let Some(i) = (0..nodes.len()).find(|&i| !reachable[i]) {
            return Err(EntError::Unreachable(nodes[i].name.clone()));
        }

        // the root is only a grouping node
        {
            let r = &nodes[root];
            let offending = if !r.strategies.is_empty() {
                Some("strategies")
            } else if r.aggregation.is_some() {
                Some("an aggregation rule")
            } else if r.utility.is_some() {
                Some("a utility table")
            } else if !specs[root].gammas.is_empty() {
                Some("share weights")
            } else {
                None
            };
            if let Some(what) = offending {
                return Err(EntError::RootAttributes {
                    node: r.name.clone(),
                    what: what.to_string(),
                });
            }
            if r.children.is_empty() {
                return Err(EntError::NoLeaves);
            }
        }

        let nonroot: Vec<usize> = (0..nodes.len()).filter(|&i| i != root).collect();
        let leaves: Vec<usize> =
            (0..nodes.len()).filter(|&i| nodes[i].children.is_empty()).collect();

        // per-node shape checks
        for &v in &nonroot {
            let node = &nodes[v];
            let k = node.strategies.len();
            if k == 0 {
                return Err(EntError::NoStrategies(node.name.clone()));
            }
            if node.children.is_empty() {
                if node.aggregation.is_some() {
                    return Err(EntError::LeafWithAggregation(node.name.clone()));
                }
            } else {
                let child_profiles: usize =
                    node.children.iter().map(|&c| nodes[c].strategies.len()).product();
                if k > child_profiles {
                    return Err(EntError::TooManyStrategies {
                        node: node.name.clone(),
                        got: k,
                        max: child_profiles,
                    });
                }
                let Some(agg) = &node.aggregation else {
                    return Err(EntError::MissingAggregation(node.name.clone()));
                };
                if agg.len() != child_profiles * k {
                    return Err(EntError::AggregationLength {
                        node: node.name.clone(),
                        got: agg.len(),
                        want: child_profiles * k,
                    });
                }
                for row in 0..child_profiles {
                    let slice = &agg[row * k..(row + 1) * k];
                    if slice.iter().any(|p| p < &BigRational::zero()) {
                        return Err(EntError::AggregationNegative {
                            node: node.name.clone(),
                            row,
                        });
                    }
                    let sum: BigRational = slice.iter().cloned().sum();
                    if !sum.is_one() {
                        return Err(EntError::AggregationRowSum {
                            node: node.name.clone(),
                            row,
                            sum: format_rational(&sum),
                        });
                    }
                }
                // the induced linear map must reach the whole strategy space
                let mut m = RationalMatrix::zeros(k, child_profiles);
                for row in 0..child_profiles {
                    for own in 0..k {
                        m.set(own, row, agg[row * k + own].clone());
                    }
                }
                let rank = m.rank();
                if rank < k {
                    return Err(EntError::AggregationRankDeficient {
                        node: node.name.clone(),
                        rank,
                        want: k,
                    });
                }
            }
        }

        // utilities: own strategies × sibling profiles
        let structure_probe = EntStructure {
            nodes: nodes.clone(),
            root,
            nonroot: nonroot.clone(),
            leaves: leaves.clone(),
        };
        for &v in &nonroot {
            let k = nodes[v].strategies.len();
            let want: usize = structure_probe
                .siblings(v)
                .iter()
                .map(|&s| nodes[s].strategies.len())
                .product::<usize>()
                * k;
            match &nodes[v].utility {
                None => return Err(EntError::MissingUtility(nodes[v].name.clone())),
                Some(u) if u.len() != want => {
                    return Err(EntError::UtilityLength {
                        node: nodes[v].name.clone(),
                        got: u.len(),
                        want,
                    })
                }
                Some(_) => {}
            }
        }

        // share weights: exactly one per non-root proper ancestor
        for &v in &nonroot {
            let ancestors = structure_probe.nonroot_ancestors(v);
            for &a in &ancestors {
                match specs[v].gammas.get(&nodes[a].name) {
                    Some(g) => {
                        nodes[v].gammas.insert(a, g.clone());
                    }
                    None => {
                        return Err(EntError::MissingGamma {
                            node: nodes[v].name.clone(),
                            ancestor: nodes[a].name.clone(),
                        })
                    }
                }
            }
            for name in specs[v].gammas.keys() {
                let known = ancestors.iter().any(|&a| &nodes[a].name == name);
                if !known {
                    return Err(EntError::ExtraGamma {
                        node: nodes[v].name.clone(),
                        name: name.clone(),
                    });
                }
            }
        }

        Ok(EntStructure { nodes, root, nonroot, leaves })
    }

    pub fn node_names(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.name.as_str()).collect()
    }

    pub fn root_name(&self) -> &str {
        &self.nodes[self.root].name
    }

    pub fn leaf_names(&self) -> Vec<&str> {
        self.leaves.iter().map(|&i| self.nodes[i].name.as_str()).collect()
    }

    pub fn nonroot_names(&self) -> Vec<&str> {
        self.nonroot.iter().map(|&i| self.nodes[i].name.as_str()).collect()
    }

    /// The node specs, in listed order — the inverse of [`EntStructure::new`].
    pub fn to_specs(&self) -> Vec<EntNodeSpec> {
        self.nodes
            .iter()
            .map(|n| EntNodeSpec {
                name: n.name.clone(),
                children: n.children.iter().map(|&c| self.nodes[c].name.clone()).collect(),
                strategies: n.strategies.clone(),
                aggregation: n.aggregation.clone(),
                utility: n.utility.clone(),
                gammas: n
                    .gammas
                    .iter()
                    .map(|(&a, g)| (self.nodes[a].name.clone(), g.clone()))
                    .collect(),
            })
            .collect()
    }

    fn index_of(&self, name: &str) -> Result<usize, EntError> {
        self.nodes
            .iter()
            .position(|n| n.name == name)
            .ok_or_else(|| EntError::UnknownNode(name.to_string()))
    }

    /// Children of the parent, minus the node, in the parent's listed order.
    fn siblings(&self, v: usize) -> Vec<usize> {
        match self.nodes[v].parent {
            None => Vec::new(),
            Some(p) => {
                self.nodes[p].children.iter().copied().filter(|&c| c != v).collect()
            }
        }
    }

    /// Proper ancestors of the node, nearest first, excluding the root.
    fn nonroot_ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.nodes[v].parent;
        while let Some(p) = cur {
            if p != self.root {
                out.push(p);
            }
            cur = self.nodes[p].parent;
        }
        out
    }

    fn position_in_nonroot(&self, v: usize) -> usize {
        self.nonroot.iter().position(|&i| i == v).expect("non-root node")
    }

    /// The relaxed model: every non-root node is a player; it sees its
    /// siblings (whose strategies enter its local utility) and its non-root
    /// ancestors (the nodes whose utilities it shares), with the local table
    /// extended constantly over the ancestors' strategies.
    pub fn relaxed_graphical_model(&self) -> Result<GraphicalModel, EntError> {
        let players: Vec<PlayerDef> = self
            .nonroot
            .iter()
            .map(|&v| PlayerDef::new(self.nodes[v].name.clone(), self.nodes[v].strategies.clone()))
            .collect();

        let mut neighbors = Vec::with_capacity(self.nonroot.len());
        let mut tables = Vec::with_capacity(self.nonroot.len());
        for &v in &self.nonroot {
            let siblings = self.siblings(v);
            let mut ns: Vec<usize> = siblings
                .iter()
                .chain(self.nonroot_ancestors(v).iter())
                .map(|&w| self.position_in_nonroot(w))
                .collect();
            ns.sort_unstable();

            let k = self.nodes[v].strategies.len();
            let utility = self.nodes[v].utility.as_ref().expect("validated");
            let local_counts: Vec<usize> = std::iter::once(k)
                .chain(ns.iter().map(|&p| self.nodes[self.nonroot[p]].strategies.len()))
                .collect();
            // positions of the siblings inside the sorted neighbor list
            let sibling_slots: Vec<usize> = siblings
                .iter()
                .map(|&s| {
                    let p = self.position_in_nonroot(s);
                    ns.iter().position(|&q| q == p).unwrap()
                })
                .collect();
            let mut table = Vec::new();
            for local in profile_iter(local_counts) {
                let mut sib_index = 0;
                for (slot, &s) in sibling_slots.iter().zip(&siblings) {
                    sib_index = sib_index * self.nodes[s].strategies.len() + local[1 + slot];
                }
                table.push(utility[sib_index * k + local[0]].clone());
            }
            neighbors.push(ns);
            tables.push(table);
        }
        Ok(GraphicalModel::new(players, neighbors, tables)?)
    }

    /// Indifference system of the relaxed model.
    pub fn relaxed_system(&self) -> Result<PolySystem, EntError> {
        Ok(self.relaxed_graphical_model()?.indifference_system()?)
    }

    /// Polynomial graph of the relaxed model.
    pub fn relaxed_polygraph(&self) -> Result<PolynomialGraph, EntError> {
        Ok(self.relaxed_graphical_model()?.polygraph()?)
    }

    /// Expected local utility `U_v` at a full profile.
    fn expected_local_utility(&self, v: usize, profile: &EntProfile) -> BigRational {
        let k = self.nodes[v].strategies.len();
        let utility = self.nodes[v].utility.as_ref().expect("validated");
        let siblings = self.siblings(v);
        let own = profile.values_of(self, v);
        let mut total = BigRational::zero();
        let sib_counts: Vec<usize> =
            siblings.iter().map(|&s| self.nodes[s].strategies.len()).collect();
        for sib_profile in profile_iter(sib_counts.clone()) {
            let mut sides = BigRational::one();
            let mut sib_index = 0;
            for ((&s, &choice), &count) in siblings.iter().zip(&sib_profile).zip(&sib_counts) {
                sides *= &profile.values_of(self, s)[choice];
                sib_index = sib_index * count + choice;
            }
            if sides.is_zero() {
                continue;
            }
            for own_k in 0..k {
                total += &sides * &utility[sib_index * k + own_k] * &own[own_k];
            }
        }
        total
    }

    /// Full utility of a non-root node at a profile: the local utility plus
    /// the weighted utilities of all non-root ancestors.
    pub fn utility_at(&self, node: &str, profile: &EntProfile) -> Result<BigRational, EntError> {
        let v = self.index_of(node)?;
        Ok(self.utility_rec(v, profile))
    }

    fn utility_rec(&self, v: usize, profile: &EntProfile) -> BigRational {
        let mut total = self.expected_local_utility(v, profile);
        for (&a, gamma) in &self.nodes[v].gammas {
            total += gamma * self.utility_rec(a, profile);
        }
        total
    }

    /// The strategy the aggregation rule induces at `v` from the profile's
    /// values at the children.
    fn aggregate_children(&self, v: usize, profile: &EntProfile) -> Vec<BigRational> {
        let k = self.nodes[v].strategies.len();
        let agg = self.nodes[v].aggregation.as_ref().expect("emergent node");
        let children = &self.nodes[v].children;
        let counts: Vec<usize> =
            children.iter().map(|&c| self.nodes[c].strategies.len()).collect();
        let mut out = vec![BigRational::zero(); k];
        for (row, choice) in profile_iter(counts).enumerate() {
            let mut weight = BigRational::one();
            for (&c, &s) in children.iter().zip(&choice) {
                weight *= &profile.values_of(self, c)[s];
            }
            if weight.is_zero() {
                continue;
            }
            for (own, slot) in out.iter_mut().enumerate() {
                *slot += &weight * &agg[row * k + own];
            }
        }
        out
    }

    /// Residuals of the full hierarchical model at a profile: the relaxed
    /// indifference equations, plus one consistency row per emergent node
    /// comparing its profile values against what its children induce.
    pub fn hierarchical_residual(&self, profile: &EntProfile) -> Result<HierarchyResidual, EntError> {
        let system = self.relaxed_system()?;
        let point = Assignment::from_named(system.space(), &profile.reduced_values(self))
            .expect("profile names come from the same structure");
        let indifference = system.residual(&point).expect("all variables are assigned");

        let mut consistency = Vec::new();
        for &v in &self.nonroot {
            if self.nodes[v].children.is_empty() {
                continue;
            }
            let induced = self.aggregate_children(v, profile);
            let stated = profile.values_of(self, v);
            let diff: Vec<BigRational> =
                stated.iter().zip(&induced).map(|(s, i)| s - i).collect();
            consistency.push((self.nodes[v].name.clone(), diff));
        }
        Ok(HierarchyResidual { indifference, consistency })
    }

    /// The game the leaves actually play: payoffs are the leaves' full
    /// utilities once every emergent strategy is aggregated bottom-up.
    pub fn induced_normal_form(&self) -> Result<NormalFormGame, EntError> {
        let players: Vec<PlayerDef> = self
            .leaves
            .iter()
            .map(|&v| PlayerDef::new(self.nodes[v].name.clone(), self.nodes[v].strategies.clone()))
            .collect();
        let counts: Vec<usize> =
            self.leaves.iter().map(|&v| self.nodes[v].strategies.len()).collect();
        let mut rows = Vec::new();
        for pure in profile_iter(counts.clone()) {
            let leaf_values: Vec<Vec<BigRational>> = pure
                .iter()
                .zip(&counts)
                .map(|(&s, &count)| {
                    (0..count)
                        .map(|k| {
                            if k == s { BigRational::one() } else { BigRational::zero() }
                        })
                        .collect()
                })
                .collect();
            let profile = EntProfile::from_leaves(self, leaf_values)?;
            rows.push(
                self.leaves.iter().map(|&v| self.utility_rec(v, &profile)).collect(),
            );
        }
        Ok(NormalFormGame::new(players, rows)?)
    }

    /// The one-level hierarchy on a normal-form game: all players are leaves
    /// under a bare root, each seeing all the others, without any shares.
    pub fn trivial(game: &NormalFormGame) -> EntStructure {
        let mut root_name = "root".to_string();
        while game.players().iter().any(|p| p.name == root_name) {
            root_name.push('_');
        }
        let mut specs = Vec::new();
        let n = game.n_players();
        for (i, p) in game.players().iter().enumerate() {
            let own = p.strategies.len();
            let mut utility = Vec::new();
            let other_counts: Vec<usize> = (0..n)
                .filter(|&j| j != i)
                .map(|j| game.strategy_count(j))
                .collect();
            for others in profile_iter(other_counts) {
                for own_k in 0..own {
                    let mut full = Vec::with_capacity(n);
                    let mut it = others.iter();
                    for j in 0..n {
                        full.push(if j == i { own_k } else { *it.next().unwrap() });
                    }
                    utility.push(game.payoff(i, &full).clone());
                }
            }
            specs.push(EntNodeSpec {
                name: p.name.clone(),
                children: Vec::new(),
                strategies: p.strategies.clone(),
                aggregation: None,
                utility: Some(utility),
                gammas: BTreeMap::new(),
            });
        }
        specs.push(EntNodeSpec {
            name: root_name,
            children: game.players().iter().map(|p| p.name.clone()).collect(),
            strategies: Vec::new(),
            aggregation: None,
            utility: None,
            gammas: BTreeMap::new(),
        });
        EntStructure::new(specs).expect("the one-level hierarchy of a valid game is valid")
    }
}

/// Mixed strategies for every non-root node, each summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntProfile {
    /// Indexed like the structure's non-root list.
    values: Vec<Vec<BigRational>>,
}

impl EntProfile {
    /// Builds the full profile from the leaves up: emergent values are the
    /// aggregation of the children's.
    pub fn from_leaves(
        ent: &EntStructure,
        leaf_values: Vec<Vec<BigRational>>,
    ) -> Result<Self, EntError> {
        assert_eq!(leaf_values.len(), ent.leaves.len(), "one row per leaf");
        let mut per_node: Vec<Option<Vec<BigRational>>> = vec![None; ent.nodes.len()];
        for (&v, row) in ent.leaves.iter().zip(leaf_values) {
            check_distribution(ent, v, &row)?;
            per_node[v] = Some(row);
        }
        let mut profile = EntProfile {
            values: vec![Vec::new(); ent.nonroot.len()],
        };
        // bottom-up: a node is ready once all its children are
        fn fill(
            ent: &EntStructure,
            v: usize,
            per_node: &mut Vec<Option<Vec<BigRational>>>,
            profile: &mut EntProfile,
        ) {
            for &c in &ent.nodes[v].children {
                fill(ent, c, per_node, profile);
            }
            if v == ent.root {
                return;
            }
            if per_node[v].is_none() {
                let induced = ent.aggregate_children(v, profile);
                per_node[v] = Some(induced);
            }
            profile.values[ent.position_in_nonroot(v)] = per_node[v].clone().unwrap();
        }
        fill(ent, ent.root, &mut per_node, &mut profile);
        Ok(profile)
    }

    /// Builds a full profile from reduced coordinates: for every non-root
    /// node, the first strategy's probability is one minus the given rest.
    /// No aggregation is applied — consistency stays checkable.
    pub fn from_reduced(
        ent: &EntStructure,
        reduced: &BTreeMap<String, BigRational>,
    ) -> EntProfile {
        let mut values = Vec::with_capacity(ent.nonroot.len());
        for &v in &ent.nonroot {
            let node = &ent.nodes[v];
            let mut row = vec![BigRational::zero(); node.strategies.len()];
            let mut rest = BigRational::zero();
            for (k, s) in node.strategies.iter().enumerate().skip(1) {
                if let Some(value) = reduced.get(&strategy_variable_name(&node.name, s)) {
                    row[k] = value.clone();
                    rest += value;
                }
            }
            row[0] = BigRational::one() - rest;
            values.push(row);
        }
        EntProfile { values }
    }

    fn values_of(&self, ent: &EntStructure, v: usize) -> &[BigRational] {
        &self.values[ent.position_in_nonroot(v)]
    }

    /// The profile's value vector for a node, by name.
    pub fn values_for(&self, ent: &EntStructure, node: &str) -> Result<&[BigRational], EntError> {
        let v = ent.index_of(node)?;
        Ok(self.values_of(ent, v))
    }

    /// Reduced coordinates under the canonical variable names.
    pub fn reduced_values(&self, ent: &EntStructure) -> BTreeMap<String, BigRational> {
        let mut out = BTreeMap::new();
        for (&v, row) in ent.nonroot.iter().zip(&self.values) {
            let node = &ent.nodes[v];
            for (s, value) in node.strategies.iter().zip(row).skip(1) {
                out.insert(strategy_variable_name(&node.name, s), value.clone());
            }
        }
        out
    }
}

fn check_distribution(ent: &EntStructure, v: usize, row: &[BigRational]) -> Result<(), EntError> {
    let node = &ent.nodes[v];
    if row.len() != node.strategies.len() {
        return Err(EntError::ProfileShape {
            node: node.name.clone(),
            got: row.len(),
            want: node.strategies.len(),
        });
    }
    let sum: BigRational = row.iter().cloned().sum();
    if !sum.is_one() {
        return Err(EntError::ProfileSum {
            node: node.name.clone(),
            sum: format_rational(&sum),
        });
    }
    Ok(())
}

/// Residuals of the full hierarchy at a profile; zero everywhere means the
/// profile solves the relaxed equations *and* respects every aggregation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyResidual {
    pub indifference: Vec<BigRational>,
    /// Per emergent node: stated minus induced values, one entry per strategy.
    pub consistency: Vec<(String, Vec<BigRational>)>,
}

impl HierarchyResidual {
    pub fn is_zero(&self) -> bool {
        self.indifference.iter().all(|r| r.is_zero())
            && self.consistency.iter().all(|(_, d)| d.iter().all(|r| r.is_zero()))
    }
}
