//! Normal-form games and graphical (local-interaction) models.
//!
//! A player's mixed strategy is a point of a simplex; dropping the first
//! strategy's probability (it is one minus the rest) puts equilibria in
//! bijection with roots of the indifference system: one equation per retained
//! strategy, stating that the player is indifferent between that strategy
//! and the first one. The block structure of the system — one block of
//! variables per player — yields a polynomial graph whose normalized
//! permanent counts the system's generic roots.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GraphError, PolynomialGraph};
use crate::multilinear::{Monomial, MultilinearError, MultilinearPoly, PolySystem, VarSpace};
use crate::numerics::BigRational;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("game must have at least one player")]
    NoPlayers,
    #[error("player `{0}` has no strategies")]
    NoStrategies(String),
    #[error("duplicate player name `{0}`")]
    DuplicatePlayer(String),
    #[error("player `{player}` lists strategy `{strategy}` twice")]
    DuplicateStrategy { player: String, strategy: String },
    #[error("payoff table has {got} rows, expected one per pure profile ({want})")]
    PayoffRows { got: usize, want: usize },
    #[error("payoff row {row} has {got} entries, expected one per player ({want})")]
    PayoffRowLength { row: usize, got: usize, want: usize },
    #[error("player `{0}` has a single strategy, so it has no indifference equations")]
    DegeneratePlayer(String),
    #[error("player `{player}` lists an invalid neighbor index {index}")]
    BadNeighbor { player: String, index: usize },
    #[error("player `{player}` lists itself as a neighbor")]
    SelfNeighbor { player: String },
    #[error("player `{player}` utility table has {got} entries, expected {want}")]
    TableLength { player: String, got: usize, want: usize },
    #[error("profile assigns player `{player}` {got} probabilities, expected {want}")]
    ProfileShape { player: String, got: usize, want: usize },
    #[error("probabilities of player `{player}` sum to {sum}, not 1")]
    ProfileSum { player: String, sum: String },
    #[error(transparent)]
    Multilinear(#[from] MultilinearError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Canonical variable name for the probability a player puts on a strategy.
/// Extensive and hierarchical games reuse it with node names as the owner.
pub fn strategy_variable_name(owner: &str, strategy: &str) -> String {
    format!("sigma_{owner}({strategy})")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerDef {
    pub name: String,
    pub strategies: Vec<String>,
}

impl PlayerDef {
    pub fn new(name: impl Into<String>, strategies: Vec<String>) -> Self {
        PlayerDef { name: name.into(), strategies }
    }
}

fn validate_players(players: &[PlayerDef]) -> Result<(), GameError> {
    if players.is_empty() {
        return Err(GameError::NoPlayers);
    }
    let mut seen = Vec::new();
    for p in players {
        if seen.contains(&&p.name) {
            return Err(GameError::DuplicatePlayer(p.name.clone()));
        }
        seen.push(&p.name);
        if p.strategies.is_empty() {
            return Err(GameError::NoStrategies(p.name.clone()));
        }
        for (i, s) in p.strategies.iter().enumerate() {
            if p.strategies[..i].contains(s) {
                return Err(GameError::DuplicateStrategy {
                    player: p.name.clone(),
                    strategy: s.clone(),
                });
            }
        }
    }
    Ok(())
}

/// A finite game given by full payoff tables.
///
/// Pure profiles are enumerated in odometer order with the **last** player's
/// strategy varying fastest; `payoffs[profile_index][player]` is that
/// player's utility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormGame {
    players: Vec<PlayerDef>,
    payoffs: Vec<Vec<BigRational>>,
}

impl NormalFormGame {
    pub fn new(players: Vec<PlayerDef>, payoffs: Vec<Vec<BigRational>>) -> Result<Self, GameError> {
        validate_players(&players)?;
        let want: usize = players.iter().map(|p| p.strategies.len()).product();
        if payoffs.len() != want {
            return Err(GameError::PayoffRows { got: payoffs.len(), want });
        }
        for (row, entry) in payoffs.iter().enumerate() {
            if entry.len() != players.len() {
                return Err(GameError::PayoffRowLength {
                    row,
                    got: entry.len(),
                    want: players.len(),
                });
            }
        }
        Ok(NormalFormGame { players, payoffs })
    }

    pub fn players(&self) -> &[PlayerDef] {
        &self.players
    }

    pub fn n_players(&self) -> usize {
        self.players.len()
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.players[player].strategies.len()
    }

    pub fn profile_count(&self) -> usize {
        self.payoffs.len()
    }

    pub fn payoff_rows(&self) -> &[Vec<BigRational>] {
        &self.payoffs
    }

    fn profile_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.n_players());
        let mut index = 0;
        for (i, &s) in profile.iter().enumerate() {
            debug_assert!(s < self.strategy_count(i));
            index = index * self.strategy_count(i) + s;
        }
        index
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> &BigRational {
        &self.payoffs[self.profile_index(profile)][player]
    }

    /// Iterates all pure profiles in payoff-table order.
    pub fn pure_profiles(&self) -> ProfileIter {
        ProfileIter::new(self.players.iter().map(|p| p.strategies.len()).collect())
    }

    /// Expected utility of `player` when everyone mixes as in `profile`.
    pub fn expected_utility(&self, player: usize, profile: &MixedProfile) -> BigRational {
        let mut total = BigRational::zero();
        for pure in self.pure_profiles() {
            let mut weight = self.payoffs[self.profile_index(&pure)][player].clone();
            if weight.is_zero() {
                continue;
            }
            for (i, &s) in pure.iter().enumerate() {
                weight *= &profile.probs[i][s];
            }
            total += weight;
        }
        total
    }

    /// Views the game as a graphical model where everyone sees everyone.
    pub fn to_graphical(&self) -> GraphicalModel {
        let n = self.n_players();
        let neighbors: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        let mut tables = Vec::with_capacity(n);
        for i in 0..n {
            let mut table = Vec::with_capacity(self.profile_count());
            let local_counts: Vec<usize> = std::iter::once(self.strategy_count(i))
                .chain(neighbors[i].iter().map(|&j| self.strategy_count(j)))
                .collect();
            for local in ProfileIter::new(local_counts) {
                let mut full = vec![0usize; n];
                full[i] = local[0];
                for (k, &j) in neighbors[i].iter().enumerate() {
                    full[j] = local[k + 1];
                }
                table.push(self.payoffs[self.profile_index(&full)][i].clone());
            }
            tables.push(table);
        }
        GraphicalModel::new(self.players.clone(), neighbors, tables)
            .expect("complete neighborhood tables are well-formed by construction")
    }

    /// The indifference system over the reduced variables (first strategy of
    /// each player eliminated). Equation `k` states indifference between the
    /// strategy of variable `k` and the player's first strategy.
    pub fn indifference_system(&self) -> Result<PolySystem, GameError> {
        self.to_graphical().indifference_system()
    }

    /// The complete multipartite polynomial graph of the game: one block per
    /// player with one vertex per retained strategy, each vertex seeing every
    /// other player's whole block.
    pub fn complete_polygraph(&self) -> Result<PolynomialGraph, GameError> {
        self.to_graphical().polygraph()
    }
}

/// Iterates all digit vectors below the given mixed-radix bounds, last digit
/// fastest.
pub fn profile_iter(counts: Vec<usize>) -> ProfileIter {
    ProfileIter::new(counts)
}

/// Odometer over mixed radix digits; yields each profile as a digit vector.
pub struct ProfileIter {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    fn new(counts: Vec<usize>) -> Self {
        let next = if counts.iter().all(|&c| c > 0) {
            Some(vec![0; counts.len()])
        } else {
            None
        };
        ProfileIter { counts, next }
    }
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bumped = current.clone();
        let mut done = true;
        for i in (0..bumped.len()).rev() {
            bumped[i] += 1;
            if bumped[i] < self.counts[i] {
                done = false;
                break;
            }
            bumped[i] = 0;
        }
        self.next = if done || bumped.is_empty() { None } else { Some(bumped) };
        Some(current)
    }
}

/// A game where each player's utility depends on their own strategy and the
/// strategies of an explicit set of other players.
///
/// `tables[i]` is indexed by the local profile `(own, neighbors…)` in
/// odometer order with the last coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicalModel {
    players: Vec<PlayerDef>,
    neighbors: Vec<Vec<usize>>,
    tables: Vec<Vec<BigRational>>,
}

impl GraphicalModel {
    pub fn new(
        players: Vec<PlayerDef>,
        neighbors: Vec<Vec<usize>>,
        tables: Vec<Vec<BigRational>>,
    ) -> Result<Self, GameError> {
        validate_players(&players)?;
        let n = players.len();
        assert_eq!(neighbors.len(), n, "one neighbor list per player");
        assert_eq!(tables.len(), n, "one utility table per player");
        for (i, ns) in neighbors.iter().enumerate() {
            let mut prev: Option<usize> = None;
            for &j in ns {
                if j >= n {
                    return Err(GameError::BadNeighbor { player: players[i].name.clone(), index: j });
                }
                if j == i {
                    return Err(GameError::SelfNeighbor { player: players[i].name.clone() });
                }
                if prev.is_some_and(|p| p >= j) {
                    return Err(GameError::BadNeighbor { player: players[i].name.clone(), index: j });
                }
                prev = Some(j);
            }
            let want: usize = players[i].strategies.len()
                * ns.iter().map(|&j| players[j].strategies.len()).product::<usize>();
            if tables[i].len() != want {
                return Err(GameError::TableLength {
                    player: players[i].name.clone(),
                    got: tables[i].len(),
                    want,
                });
            }
        }
        Ok(GraphicalModel { players, neighbors, tables })
    }

    pub fn players(&self) -> &[PlayerDef] {
        &self.players
    }

    pub fn n_players(&self) -> usize {
        self.players.len()
    }

    pub fn neighbors(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    pub fn tables(&self) -> &[Vec<BigRational>] {
        &self.tables
    }

    fn local_counts(&self, i: usize) -> Vec<usize> {
        std::iter::once(self.players[i].strategies.len())
            .chain(self.neighbors[i].iter().map(|&j| self.players[j].strategies.len()))
            .collect()
    }

    fn local_index(&self, i: usize, local: &[usize]) -> usize {
        let counts = self.local_counts(i);
        let mut index = 0;
        for (k, &s) in local.iter().enumerate() {
            index = index * counts[k] + s;
        }
        index
    }

    /// Utility of player `i` at a full pure profile.
    pub fn utility(&self, i: usize, profile: &[usize]) -> &BigRational {
        let mut local = Vec::with_capacity(1 + self.neighbors[i].len());
        local.push(profile[i]);
        for &j in &self.neighbors[i] {
            local.push(profile[j]);
        }
        &self.tables[i][self.local_index(i, &local)]
    }

    /// Expands the local tables into one full payoff table per profile.
    pub fn to_normal_form(&self) -> NormalFormGame {
        let mut payoffs = Vec::new();
        let counts: Vec<usize> = self.players.iter().map(|p| p.strategies.len()).collect();
        for profile in ProfileIter::new(counts) {
            let row = (0..self.n_players())
                .map(|i| self.utility(i, &profile).clone())
                .collect();
            payoffs.push(row);
        }
        NormalFormGame::new(self.players.clone(), payoffs)
            .expect("expanded tables are well-formed by construction")
    }

    /// Space of all strategy probabilities, one block per player.
    fn full_space(&self) -> Result<Arc<VarSpace>, GameError> {
        let mut vars = Vec::new();
        for (i, p) in self.players.iter().enumerate() {
            for s in &p.strategies {
                vars.push((strategy_variable_name(&p.name, s), i));
            }
        }
        Ok(VarSpace::new(vars)?)
    }

    /// Space of the retained variables (first strategy of each player
    /// dropped), in player-major order.
    fn reduced_space(&self) -> Result<Arc<VarSpace>, GameError> {
        let mut vars = Vec::new();
        for (i, p) in self.players.iter().enumerate() {
            for s in p.strategies.iter().skip(1) {
                vars.push((strategy_variable_name(&p.name, s), i));
            }
        }
        Ok(VarSpace::new(vars)?)
    }

    fn require_nondegenerate(&self) -> Result<(), GameError> {
        for p in &self.players {
            if p.strategies.len() < 2 {
                return Err(GameError::DegeneratePlayer(p.name.clone()));
            }
        }
        Ok(())
    }

    /// Expected utility of playing pure strategy `own` against the mixing of
    /// the neighbors, as a polynomial in the full variable space.
    fn pure_payoff_poly(
        &self,
        space: &Arc<VarSpace>,
        i: usize,
        own: usize,
    ) -> MultilinearPoly {
        let var_of = |player: usize, strategy: usize| -> usize {
            let p = &self.players[player];
            space
                .lookup(&strategy_variable_name(&p.name, &p.strategies[strategy]))
                .expect("full space contains every strategy variable")
        };
        let mut poly = MultilinearPoly::zero(space);
        let neighbor_counts: Vec<usize> = self
            .neighbors[i]
            .iter()
            .map(|&j| self.players[j].strategies.len())
            .collect();
        for choice in ProfileIter::new(neighbor_counts) {
            let mut local = Vec::with_capacity(1 + choice.len());
            local.push(own);
            local.extend_from_slice(&choice);
            let coeff = self.tables[i][self.local_index(i, &local)].clone();
            let vars: Vec<usize> = self.neighbors[i]
                .iter()
                .zip(&choice)
                .map(|(&j, &s)| var_of(j, s))
                .collect();
            poly.add_term(Monomial::from_vars(vars), coeff);
        }
        poly
    }

    /// The indifference system over the reduced variables. For each player
    /// and each retained strategy `s`, the equation is the expected-utility
    /// difference "play `s`" minus "play the first strategy", with every
    /// player's first-strategy probability replaced by one minus the rest.
    pub fn indifference_system(&self) -> Result<PolySystem, GameError> {
        self.require_nondegenerate()?;
        let full = self.full_space()?;
        let reduced = self.reduced_space()?;
        // map full variable index -> reduced index (None for first strategies)
        let mut map = vec![None; full.len()];
        for (w, name) in reduced.names().iter().enumerate() {
            map[full.lookup(name).unwrap()] = Some(w);
        }
        let distinguished: Vec<usize> = (0..self.n_players())
            .map(|i| {
                let p = &self.players[i];
                full.lookup(&strategy_variable_name(&p.name, &p.strategies[0]))
                    .unwrap()
            })
            .collect();

        let mut equations = Vec::with_capacity(reduced.len());
        for i in 0..self.n_players() {
            let base = self.pure_payoff_poly(&full, i, 0);
            for s in 1..self.players[i].strategies.len() {
                let diff = self.pure_payoff_poly(&full, i, s).sub(&base);
                let reduced_poly = diff.dehomogenize(&distinguished)?.map_variables(&reduced, &map)?;
                equations.push(reduced_poly);
            }
        }
        Ok(PolySystem::new(reduced, equations)?)
    }

    /// The polynomial graph of the model: one block per player over the
    /// retained strategies; every vertex of block `i` sees the whole block
    /// of each of `i`'s neighbors.
    pub fn polygraph(&self) -> Result<PolynomialGraph, GameError> {
        self.require_nondegenerate()?;
        let reduced = self.reduced_space()?;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); self.n_players()];
        for v in 0..reduced.len() {
            blocks[reduced.block(v)].push(v);
        }
        let mut edges = Vec::new();
        for (i, ns) in self.neighbors.iter().enumerate() {
            for &v in &blocks[i] {
                for &j in ns {
                    for &w in &blocks[j] {
                        edges.push((v, w));
                    }
                }
            }
        }
        let names: Vec<String> = reduced.names().to_vec();
        Ok(PolynomialGraph::validate(&blocks, &edges, Some(&names))?)
    }
}

/// A mixed-strategy profile: one probability vector per player, each summing
/// to one. Entries may be negative or exceed one — roots of the indifference
/// system live on the affine hull of the simplices, not inside them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedProfile {
    probs: Vec<Vec<BigRational>>,
}

impl MixedProfile {
    pub fn new(players: &[PlayerDef], probs: Vec<Vec<BigRational>>) -> Result<Self, GameError> {
        assert_eq!(probs.len(), players.len(), "one probability vector per player");
        for (p, row) in players.iter().zip(&probs) {
            if row.len() != p.strategies.len() {
                return Err(GameError::ProfileShape {
                    player: p.name.clone(),
                    got: row.len(),
                    want: p.strategies.len(),
                });
            }
            let sum: BigRational = row.iter().cloned().sum();
            if !sum.is_one() {
                return Err(GameError::ProfileSum {
                    player: p.name.clone(),
                    sum: crate::numerics::format_rational(&sum),
                });
            }
        }
        Ok(MixedProfile { probs })
    }

    /// Rebuilds a full profile from the reduced coordinates: each player's
    /// first-strategy probability is one minus the given rest. Strategies
    /// absent from the map default to zero.
    pub fn from_reduced(
        players: &[PlayerDef],
        reduced: &BTreeMap<String, BigRational>,
    ) -> Result<Self, GameError> {
        let mut probs = Vec::with_capacity(players.len());
        for p in players {
            let mut row = vec![BigRational::zero(); p.strategies.len()];
            let mut rest = BigRational::zero();
            for (k, s) in p.strategies.iter().enumerate().skip(1) {
                if let Some(v) = reduced.get(&strategy_variable_name(&p.name, s)) {
                    row[k] = v.clone();
                    rest += v;
                }
            }
            row[0] = BigRational::one() - rest;
            probs.push(row);
        }
        MixedProfile::new(players, probs)
    }

    pub fn probs(&self) -> &[Vec<BigRational>] {
        &self.probs
    }

    /// The same profile with player `i` moved to the pure strategy `s`.
    pub fn with_pure(&self, i: usize, s: usize) -> MixedProfile {
        let mut probs = self.probs.clone();
        for (k, entry) in probs[i].iter_mut().enumerate() {
            *entry = if k == s { BigRational::one() } else { BigRational::zero() };
        }
        MixedProfile { probs }
    }

    /// Reduced coordinates under the canonical variable names, first
    /// strategies omitted.
    pub fn reduced_values(&self, players: &[PlayerDef]) -> BTreeMap<String, BigRational> {
        let mut values = BTreeMap::new();
        for (p, row) in players.iter().zip(&self.probs) {
            for (s, prob) in p.strategies.iter().zip(row).skip(1) {
                values.insert(strategy_variable_name(&p.name, s), prob.clone());
            }
        }
        values
    }
}

fn default_players(strategy_counts: &[usize]) -> Vec<PlayerDef> {
    strategy_counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            PlayerDef::new(
                (i + 1).to_string(),
                (1..=c).map(|s| format!("s{s}")).collect(),
            )
        })
        .collect()
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::from_integer(rng.gen_range(-50i64..=50).into())
}

/// A random normal-form game with integer payoffs in `[-50, 50]`, players
/// named `1…n` and strategies `s1…sk`. Deterministic in the seed.
pub fn sample_normal_form(strategy_counts: &[usize], seed: u64) -> NormalFormGame {
    let players = default_players(strategy_counts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: usize = strategy_counts.iter().product();
    let payoffs = (0..rows)
        .map(|_| (0..players.len()).map(|_| random_rational(&mut rng)).collect())
        .collect();
    NormalFormGame::new(players, payoffs).expect("sampled payoff table is well-formed")
}

/// A random graphical model: each ordered pair `i ≠ j` becomes an influence
/// with probability one half, and local tables get integer entries in
/// `[-50, 50]`. Deterministic in the seed.
pub fn sample_graphical(strategy_counts: &[usize], seed: u64) -> GraphicalModel {
    let players = default_players(strategy_counts);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = players.len();
    let mut neighbors = Vec::with_capacity(n);
    for i in 0..n {
        let ns: Vec<usize> = (0..n).filter(|&j| j != i && rng.gen_bool(0.5)).collect();
        neighbors.push(ns);
    }
    let mut tables = Vec::with_capacity(n);
    for i in 0..n {
        let len: usize = strategy_counts[i]
            * neighbors[i].iter().map(|&j| strategy_counts[j]).product::<usize>();
        tables.push((0..len).map(|_| random_rational(&mut rng)).collect());
    }
    GraphicalModel::new(players, neighbors, tables).expect("sampled tables are well-formed")
}
