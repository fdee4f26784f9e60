//! Polynomial graphs: block-partitioned digraphs without self-loops whose
//! edges bound the monomial support of a square multilinear system.
//!
//! Vertices stand for equation/variable pairs; the vertex set is partitioned
//! into blocks (one block per player or decision node), and the
//! out-neighborhood of every vertex contains each block either entirely or
//! not at all. Under those conditions, the generic number of isolated
//! solutions with all coordinates nonzero is `per(g) / ∏ dᵢ!` for the 0/1
//! adjacency matrix `g` and block sizes `dᵢ` — see [`PolynomialGraph::count`].

use std::collections::VecDeque;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numerics::{factorial, permanent_ryser_with_cap, BigInt, PermanentError};

/// Caveat attached to every zero count: a vanishing permanent does not
/// distinguish "no solution" from "a positive-dimensional solution set".
pub const ZERO_COUNT_CAVEAT: &str = "count 0: the system has no solution with all coordinates \
     nonzero, or its solution set has positive dimension";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} appears in {1} blocks; blocks must partition the vertex set")]
    NotAPartition(String, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("edge endpoint {0} out of range (the graph has {1} vertices)")]
    VertexOutOfRange(usize, usize),
    #[error(
        "block-edge property violated: {from} has an edge to {present} but not to {missing} \
         in the same block"
    )]
    BlockEdgeViolation {
        from: String,
        present: String,
        missing: String,
    },
    #[error(transparent)]
    Permanent(#[from] PermanentError),
    #[error("permanent {permanent} not divisible by block factorial product {divisor}")]
    DivisibilityViolation { permanent: BigInt, divisor: BigInt },
}

/// The exact counting result for one graph, plus the two structural
/// certificates that explain a zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    /// Permanent of the 0/1 adjacency matrix.
    pub permanent: BigInt,
    /// Product of the factorials of the block sizes.
    pub divisor: BigInt,
    /// `permanent / divisor`: the generic number of solutions.
    pub count: BigInt,
    /// Whether the bipartite source/target split has a perfect matching
    /// (equivalent to `count > 0`).
    pub matching_feasible: bool,
    /// Whether every vertex lies on a directed cycle (necessary for
    /// `count > 0`).
    pub all_on_cycles: bool,
    /// Names of the vertices on no directed cycle.
    pub off_cycle_vertices: Vec<String>,
    /// Present exactly when `count` is zero.
    pub caveat: Option<String>,
}

/// A validated polynomial graph in canonical form: blocks occupy contiguous
/// vertex ranges in their given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialGraph {
    block_sizes: Vec<usize>,
    names: Vec<String>,
    adj: Vec<bool>,
    /// original vertex index → canonical index
    permutation: Vec<usize>,
}

impl PolynomialGraph {
    /// Validates blocks and edges and builds the canonical graph.
    ///
    /// `blocks` lists vertex indices per block (any order, any indexing
    /// within `0..d`); `edges` are directed `(source, target)` pairs over the
    /// same indices; `names` are optional per-vertex labels. Vertices are
    /// renumbered so each block is a contiguous range, preserving block
    /// order and in-block order; the renumbering is kept for reporting.
    pub fn validate(
        blocks: &[Vec<usize>],
        edges: &[(usize, usize)],
        names: Option<&[String]>,
    ) -> Result<Self, GraphError> {
        let d: usize = blocks.iter().map(Vec::len).sum();
        let fallback_name = |v: usize| format!("v{}", v + 1);
        let orig_name = |v: usize| -> String {
            names
                .and_then(|ns| ns.get(v).cloned())
                .unwrap_or_else(|| fallback_name(v))
        };

        // partition check and canonical renumbering
        let mut permutation = vec![usize::MAX; d];
        let mut seen = vec![0usize; d];
        let mut next = 0;
        for block in blocks {
            for &v in block {
                if v >= d {
                    return Err(GraphError::VertexOutOfRange(v, d));
                }
                seen[v] += 1;
                if seen[v] > 1 {
                    return Err(GraphError::NotAPartition(orig_name(v), seen[v]));
                }
                permutation[v] = next;
                next += 1;
            }
        }
        debug_assert_eq!(next, d);

        let mut canonical_names = vec![String::new(); d];
        for v in 0..d {
            canonical_names[permutation[v]] = orig_name(v);
        }

        let mut adj = vec![false; d * d];
        for &(s, t) in edges {
            for v in [s, t] {
                if v >= d {
                    return Err(GraphError::VertexOutOfRange(v, d));
                }
            }
            if s == t {
                return Err(GraphError::SelfLoop(orig_name(s)));
            }
            adj[permutation[s] * d + permutation[t]] = true;
        }

        let graph = PolynomialGraph {
            block_sizes: blocks.iter().map(Vec::len).collect(),
            names: canonical_names,
            adj,
            permutation,
        };
        graph.check_block_edges()?;
        Ok(graph)
    }

    fn check_block_edges(&self) -> Result<(), GraphError> {
        let d = self.d();
        for source in 0..d {
            for range in self.block_ranges() {
                let hits: Vec<usize> = range.clone().filter(|&t| self.has_edge(source, t)).collect();
                if !hits.is_empty() && hits.len() != range.len() {
                    let missing = range.clone().find(|&t| !self.has_edge(source, t)).unwrap();
                    return Err(GraphError::BlockEdgeViolation {
                        from: self.names[source].clone(),
                        present: self.names[hits[0]].clone(),
                        missing: self.names[missing].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Total number of vertices.
    pub fn d(&self) -> usize {
        self.names.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn n_blocks(&self) -> usize {
        self.block_sizes.len()
    }

    /// Contiguous canonical index range of each block.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.block_sizes.len());
        let mut start = 0;
        for &s in &self.block_sizes {
            out.push(start..start + s);
            start += s;
        }
        out
    }

    /// Block index of a canonical vertex.
    pub fn block_of(&self, v: usize) -> usize {
        let mut acc = 0;
        for (i, &s) in self.block_sizes.iter().enumerate() {
            acc += s;
            if v < acc {
                return i;
            }
        }
        panic!("vertex {v} out of range");
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// original vertex index → canonical index
    pub fn canonical_permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.adj[source * self.d() + target]
    }

    /// Directed edges in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let d = self.d();
        (0..d)
            .flat_map(|s| (0..d).filter(move |&t| (s, t) != (s, s)).map(move |t| (s, t)))
            .filter(|&(s, t)| self.has_edge(s, t))
            .collect()
    }

    /// 0/1 adjacency matrix as exact integers.
    pub fn adjacency_matrix(&self) -> Vec<Vec<BigInt>> {
        let d = self.d();
        (0..d)
            .map(|s| (0..d).map(|t| BigInt::from(u8::from(self.has_edge(s, t)))).collect())
            .collect()
    }

    /// Exact generic solution count `per(g) / ∏ dᵢ!`, with feasibility
    /// certificates. The permanent must divide exactly; a remainder would
    /// mean the graph invariants are broken, and is reported as an error
    /// rather than rounded.
    pub fn count(&self, cap: usize) -> Result<CountReport, GraphError> {
        let permanent = permanent_ryser_with_cap(&self.adjacency_matrix(), cap)?;
        let divisor = self
            .block_sizes
            .iter()
            .fold(BigInt::one(), |acc, &s| acc * factorial(s));
        let (count, remainder) = permanent.div_rem(&divisor);
        if !remainder.is_zero() {
            return Err(GraphError::DivisibilityViolation { permanent, divisor });
        }
        let off_cycle = self.off_cycle_vertices();
        Ok(CountReport {
            matching_feasible: self.has_perfect_matching(),
            all_on_cycles: off_cycle.is_empty(),
            off_cycle_vertices: off_cycle.iter().map(|&v| self.names[v].clone()).collect(),
            caveat: count.is_zero().then(|| ZERO_COUNT_CAVEAT.to_string()),
            permanent,
            divisor,
            count,
        })
    }

    /// Whether the bipartite graph (sources left, targets right, pairs where
    /// an edge exists) has a perfect matching — equivalent to a nonzero
    /// permanent, hence to `count > 0`, but decided in polynomial time.
    pub fn has_perfect_matching(&self) -> bool {
        let d = self.d();
        let adj: Vec<Vec<usize>> = (0..d)
            .map(|s| (0..d).filter(|&t| self.has_edge(s, t)).collect())
            .collect();
        max_bipartite_matching(&adj, d) == d
    }

    /// Canonical indices of vertices lying on no directed cycle. With
    /// self-loops excluded, a vertex is on a cycle iff its strongly
    /// connected component has at least two vertices.
    pub fn off_cycle_vertices(&self) -> Vec<usize> {
        let d = self.d();
        let adj: Vec<Vec<usize>> = (0..d)
            .map(|s| (0..d).filter(|&t| self.has_edge(s, t)).collect())
            .collect();
        let mut on_cycle = vec![false; d];
        for component in strongly_connected_components(&adj) {
            if component.len() >= 2 {
                for v in component {
                    on_cycle[v] = true;
                }
            }
        }
        (0..d).filter(|&v| !on_cycle[v]).collect()
    }

    /// The matrix of the counting identity as decimal strings: entry (j, k)
    /// is `(1/dᵢ!)^(1/dᵢ)` for the block `i` of column `k` when the edge
    /// j → k exists, else `0`. Display-only; every reported number elsewhere
    /// is exact.
    pub fn scaled_matrix_display(&self, precision: usize) -> Vec<Vec<String>> {
        let d = self.d();
        (0..d)
            .map(|j| {
                (0..d)
                    .map(|k| {
                        if !self.has_edge(j, k) {
                            return "0".to_string();
                        }
                        let size = self.block_sizes[self.block_of(k)];
                        if size == 1 {
                            return "1".to_string();
                        }
                        let fact: f64 = (2..=size).map(|t| t as f64).product();
                        format!("{:.*}", precision, fact.recip().powf(1.0 / size as f64))
                    })
                    .collect()
            })
            .collect()
    }

    /// GraphViz rendering with one cluster per block; deterministic order.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
        let mut out = String::from("digraph polynomial_graph {\n");
        for (i, range) in self.block_ranges().iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{i} {{\n    label={};\n", quote(&format!("block {}", i + 1))));
            for v in range.clone() {
                out.push_str(&format!("    {};\n", quote(&self.names[v])));
            }
            out.push_str("  }\n");
        }
        for (s, t) in self.edges() {
            out.push_str(&format!("  {} -> {};\n", quote(&self.names[s]), quote(&self.names[t])));
        }
        out.push_str("}\n");
        out
    }
}

/// Hopcroft–Karp maximum matching; `adj[u]` lists right-vertices reachable
/// from left-vertex `u`.
fn max_bipartite_matching(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_left = vec![NIL; n_left];
    let mut match_right = vec![NIL; n_right];
    let mut matched = 0;

    loop {
        // BFS phase: layer left vertices by alternating distance from the free ones
        let mut dist = vec![NIL; n_left];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (u, &m) in match_left.iter().enumerate() {
            if m == NIL {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut augmenting_path_exists = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    NIL => augmenting_path_exists = true,
                    w if dist[w] == NIL => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !augmenting_path_exists {
            return matched;
        }

        // DFS phase: take vertex-disjoint shortest augmenting paths
        fn try_augment(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_left: &mut [usize],
            match_right: &mut [usize],
        ) -> bool {
            for i in 0..adj[u].len() {
                let v = adj[u][i];
                let w = match_right[v];
                if w == NIL
                    || (dist[w] == dist[u].wrapping_add(1)
                        && try_augment(w, adj, dist, match_left, match_right))
                {
                    match_left[u] = v;
                    match_right[v] = u;
                    return true;
                }
            }
            dist[u] = NIL;
            false
        }
        for u in 0..n_left {
            if match_left[u] == NIL
                && try_augment(u, adj, &mut dist, &mut match_left, &mut match_right)
            {
                matched += 1;
            }
        }
    }
}

/// Tarjan's strongly connected components over an adjacency list.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        components: Vec<Vec<usize>>,
    }

    fn visit(state: &mut State, v: usize) {
        state.index[v] = Some(state.next_index);
        state.low[v] = state.next_index;
        state.next_index += 1;
        state.stack.push(v);
        state.on_stack[v] = true;

        for i in 0..state.adj[v].len() {
            let w = state.adj[v][i];
            match state.index[w] {
                None => {
                    visit(state, w);
                    state.low[v] = state.low[v].min(state.low[w]);
                }
                Some(w_index) if state.on_stack[w] => {
                    state.low[v] = state.low[v].min(w_index);
                }
                _ => {}
            }
        }

        if state.low[v] == state.index[v].unwrap() {
            let mut component = Vec::new();
            loop {
                let w = state.stack.pop().unwrap();
                state.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            state.components.push(component);
        }
    }

    let n = adj.len();
    let mut state = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        components: Vec::new(),
    };
    for v in 0..n {
        if state.index[v].is_none() {
            visit(&mut state, v);
        }
    }
    state.components
}
