//! Structured command results with twin text/JSON renderings.
//!
//! A [`Report`] collects whatever a command produced — a count, a system, a
//! residual vector, an oracle comparison — and serializes it either as
//! human-oriented text or as JSON. Both renderings are deterministic for a
//! fixed input and carry the same numeric content; JSON keeps all rationals
//! and big integers as strings.

use serde_json::{Map, Value};

use crate::graph::{CountReport, PolynomialGraph};
use crate::multilinear::PolySystem;
use crate::numerics::{format_rational, BigInt, BigRational, LinearSolution};
use crate::oracles::CrossCheck;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub digest: Option<String>,
    pub format: Option<String>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    /// Baseline strategy/edge chosen per player or decision node.
    pub distinguished: Option<Vec<(String, String)>>,
    pub graph: Option<GraphSummary>,
    pub count: Option<CountSummary>,
    pub system: Option<SystemSummary>,
    pub solution: Option<SolutionSummary>,
    pub residuals: Option<ResidualSummary>,
    pub induction: Option<InductionSummary>,
    pub oracle: Option<OracleSummary>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct GraphSummary {
    pub vertices: Vec<(String, usize)>,
    pub block_sizes: Vec<usize>,
    pub edges: Vec<(String, String)>,
}

impl GraphSummary {
    pub fn of(graph: &PolynomialGraph) -> Self {
        let vertices = (0..graph.d())
            .map(|v| (graph.name(v).to_string(), graph.block_of(v)))
            .collect();
        let mut edges = graph.edges();
        edges.sort_unstable();
        GraphSummary {
            vertices,
            block_sizes: graph.block_sizes().to_vec(),
            edges: edges
                .into_iter()
                .map(|(a, b)| (graph.name(a).to_string(), graph.name(b).to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CountSummary {
    pub permanent: BigInt,
    pub divisor: BigInt,
    pub count: BigInt,
    pub matching_feasible: bool,
    pub all_on_cycles: bool,
    pub off_cycle_vertices: Vec<String>,
    pub caveat: Option<String>,
}

impl CountSummary {
    pub fn of(report: &CountReport) -> Self {
        CountSummary {
            permanent: report.permanent.clone(),
            divisor: report.divisor.clone(),
            count: report.count.clone(),
            matching_feasible: report.matching_feasible,
            all_on_cycles: report.all_on_cycles,
            off_cycle_vertices: report.off_cycle_vertices.clone(),
            caveat: report.caveat.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SystemSummary {
    pub variables: Vec<(String, usize)>,
    pub equations: Vec<String>,
    pub linear: bool,
}

impl SystemSummary {
    pub fn of(system: &PolySystem) -> Self {
        let space = system.space();
        SystemSummary {
            variables: (0..space.len())
                .map(|v| (space.name(v).to_string(), space.block(v)))
                .collect(),
            equations: system.equations().iter().map(|eq| eq.render()).collect(),
            linear: system.is_linear(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolutionSummary {
    pub kind: &'static str,
    pub rank: Option<usize>,
    pub values: Vec<(String, BigRational)>,
}

impl SolutionSummary {
    pub fn of(solution: &LinearSolution, names: &[String]) -> Self {
        match solution {
            LinearSolution::Unique(values) => SolutionSummary {
                kind: "unique",
                rank: None,
                values: names.iter().cloned().zip(values.iter().cloned()).collect(),
            },
            LinearSolution::Inconsistent => SolutionSummary {
                kind: "inconsistent",
                rank: None,
                values: Vec::new(),
            },
            LinearSolution::Underdetermined { rank, particular } => SolutionSummary {
                kind: "underdetermined",
                rank: Some(*rank),
                values: names.iter().cloned().zip(particular.iter().cloned()).collect(),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResidualSummary {
    pub entries: Vec<(String, BigRational)>,
    pub all_zero: bool,
}

impl ResidualSummary {
    pub fn of(entries: Vec<(String, BigRational)>) -> Self {
        use num_traits::Zero;
        let all_zero = entries.iter().all(|(_, r)| r.is_zero());
        ResidualSummary { entries, all_zero }
    }
}

#[derive(Debug, Clone)]
pub struct InductionSummary {
    pub choices: Vec<(String, String)>,
    pub values: Vec<(String, BigRational)>,
    pub ties: Vec<(String, String, Vec<String>)>,
}

#[derive(Debug, Clone)]
pub struct OracleSummary {
    pub cases: usize,
    pub disagreements: Vec<String>,
    pub sample: Option<OracleNumbers>,
}

impl OracleSummary {
    pub fn agreed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct OracleNumbers {
    pub permanent: BigInt,
    pub permanent_naive: BigInt,
    pub count: BigInt,
    pub coefficient_count: BigInt,
    pub matching: bool,
    pub matching_exhaustive: bool,
}

impl OracleNumbers {
    pub fn of(check: &CrossCheck) -> Self {
        OracleNumbers {
            permanent: check.permanent_fast.clone(),
            permanent_naive: check.permanent_naive.clone(),
            count: check.count.clone(),
            coefficient_count: check.count_coefficient.clone(),
            matching: check.matching_fast,
            matching_exhaustive: check.matching_exhaustive,
        }
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Report::default() }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.clone()));
        if let Some(input) = &self.input {
            obj.insert("input".into(), Value::String(input.clone()));
        }
        if let Some(digest) = &self.digest {
            obj.insert("digest".into(), Value::String(digest.clone()));
        }
        if let Some(format) = &self.format {
            obj.insert("format".into(), Value::String(format.clone()));
        }
        if let Some(cap) = self.cap {
            obj.insert("cap".into(), Value::from(cap as u64));
        }
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), Value::from(seed));
        }
        if let Some(distinguished) = &self.distinguished {
            obj.insert(
                "distinguished".into(),
                Value::Object(
                    distinguished
                        .iter()
                        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                        .collect(),
                ),
            );
        }
        if let Some(graph) = &self.graph {
            let mut g = Map::new();
            g.insert(
                "vertices".into(),
                Value::Array(
                    graph
                        .vertices
                        .iter()
                        .map(|(name, block)| {
                            let mut v = Map::new();
                            v.insert("name".into(), Value::String(name.clone()));
                            v.insert("block".into(), Value::from(*block as u64));
                            Value::Object(v)
                        })
                        .collect(),
                ),
            );
            g.insert(
                "block_sizes".into(),
                Value::Array(graph.block_sizes.iter().map(|&s| Value::from(s as u64)).collect()),
            );
            g.insert(
                "edges".into(),
                Value::Array(
                    graph
                        .edges
                        .iter()
                        .map(|(a, b)| {
                            Value::Array(vec![
                                Value::String(a.clone()),
                                Value::String(b.clone()),
                            ])
                        })
                        .collect(),
                ),
            );
            obj.insert("graph".into(), Value::Object(g));
        }
        if let Some(count) = &self.count {
            let mut c = Map::new();
            c.insert("permanent".into(), Value::String(count.permanent.to_string()));
            c.insert("divisor".into(), Value::String(count.divisor.to_string()));
            c.insert("count".into(), Value::String(count.count.to_string()));
            c.insert("matching_feasible".into(), Value::Bool(count.matching_feasible));
            c.insert("all_on_cycles".into(), Value::Bool(count.all_on_cycles));
            c.insert(
                "off_cycle_vertices".into(),
                Value::Array(
                    count.off_cycle_vertices.iter().map(|v| Value::String(v.clone())).collect(),
                ),
            );
            if let Some(caveat) = &count.caveat {
                c.insert("caveat".into(), Value::String(caveat.clone()));
            }
            obj.insert("count".into(), Value::Object(c));
        }
        if let Some(system) = &self.system {
            let mut s = Map::new();
            s.insert(
                "variables".into(),
                Value::Array(
                    system
                        .variables
                        .iter()
                        .map(|(name, block)| {
                            let mut v = Map::new();
                            v.insert("name".into(), Value::String(name.clone()));
                            v.insert("block".into(), Value::from(*block as u64));
                            Value::Object(v)
                        })
                        .collect(),
                ),
            );
            s.insert(
                "equations".into(),
                Value::Array(system.equations.iter().map(|e| Value::String(e.clone())).collect()),
            );
            s.insert("linear".into(), Value::Bool(system.linear));
            obj.insert("system".into(), Value::Object(s));
        }
        if let Some(solution) = &self.solution {
            let mut s = Map::new();
            s.insert("kind".into(), Value::String(solution.kind.into()));
            if let Some(rank) = solution.rank {
                s.insert("rank".into(), Value::from(rank as u64));
            }
            s.insert(
                "values".into(),
                Value::Array(
                    solution
                        .values
                        .iter()
                        .map(|(name, value)| {
                            let mut v = Map::new();
                            v.insert("variable".into(), Value::String(name.clone()));
                            v.insert("value".into(), Value::String(format_rational(value)));
                            Value::Object(v)
                        })
                        .collect(),
                ),
            );
            obj.insert("solution".into(), Value::Object(s));
        }
        if let Some(residuals) = &self.residuals {
            let mut r = Map::new();
            r.insert(
                "entries".into(),
                Value::Array(
                    residuals
                        .entries
                        .iter()
                        .map(|(label, value)| {
                            let mut e = Map::new();
                            e.insert("label".into(), Value::String(label.clone()));
                            e.insert("value".into(), Value::String(format_rational(value)));
                            Value::Object(e)
                        })
                        .collect(),
                ),
            );
            r.insert("all_zero".into(), Value::Bool(residuals.all_zero));
            obj.insert("residuals".into(), Value::Object(r));
        }
        if let Some(induction) = &self.induction {
            let mut i = Map::new();
            i.insert(
                "choices".into(),
                Value::Object(
                    induction
                        .choices
                        .iter()
                        .map(|(node, edge)| (node.clone(), Value::String(edge.clone())))
                        .collect(),
                ),
            );
            i.insert(
                "values".into(),
                Value::Object(
                    induction
                        .values
                        .iter()
                        .map(|(player, v)| (player.clone(), Value::String(format_rational(v))))
                        .collect(),
                ),
            );
            i.insert(
                "ties".into(),
                Value::Array(
                    induction
                        .ties
                        .iter()
                        .map(|(node, chosen, tied)| {
                            let mut t = Map::new();
                            t.insert("node".into(), Value::String(node.clone()));
                            t.insert("chosen".into(), Value::String(chosen.clone()));
                            t.insert(
                                "tied_with".into(),
                                Value::Array(
                                    tied.iter().map(|e| Value::String(e.clone())).collect(),
                                ),
                            );
                            Value::Object(t)
                        })
                        .collect(),
                ),
            );
            obj.insert("induction".into(), Value::Object(i));
        }
        if let Some(oracle) = &self.oracle {
            let mut o = Map::new();
            o.insert("cases".into(), Value::from(oracle.cases as u64));
            o.insert("agreed".into(), Value::Bool(oracle.agreed()));
            o.insert(
                "disagreements".into(),
                Value::Array(
                    oracle.disagreements.iter().map(|d| Value::String(d.clone())).collect(),
                ),
            );
            if let Some(sample) = &oracle.sample {
                let mut s = Map::new();
                s.insert("permanent".into(), Value::String(sample.permanent.to_string()));
                s.insert(
                    "permanent_naive".into(),
                    Value::String(sample.permanent_naive.to_string()),
                );
                s.insert("count".into(), Value::String(sample.count.to_string()));
                s.insert(
                    "coefficient_count".into(),
                    Value::String(sample.coefficient_count.to_string()),
                );
                s.insert("matching".into(), Value::Bool(sample.matching));
                s.insert("matching_exhaustive".into(), Value::Bool(sample.matching_exhaustive));
                o.insert("numbers".into(), Value::Object(s));
            }
            obj.insert("oracle".into(), Value::Object(o));
        }
        if !self.notes.is_empty() {
            obj.insert(
                "notes".into(),
                Value::Array(self.notes.iter().map(|n| Value::String(n.clone())).collect()),
            );
        }
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_json()).expect("report is serializable");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("command: {}", self.command));
        if let Some(input) = &self.input {
            match &self.digest {
                Some(digest) => line(format!("input: {input} (sha256 {digest})")),
                None => line(format!("input: {input}")),
            }
        }
        if let Some(format) = &self.format {
            line(format!("format: {format}"));
        }
        if let Some(seed) = self.seed {
            line(format!("seed: {seed}"));
        }
        if let Some(cap) = self.cap {
            line(format!("cap: {cap}"));
        }
        if let Some(distinguished) = &self.distinguished {
            let parts: Vec<String> =
                distinguished.iter().map(|(k, v)| format!("{k}={v}")).collect();
            line(format!("distinguished: {}", parts.join(", ")));
        }
        if let Some(graph) = &self.graph {
            let sizes: Vec<String> = graph.block_sizes.iter().map(|s| s.to_string()).collect();
            line(format!(
                "graph: {} vertices in {} blocks of sizes [{}], {} edges",
                graph.vertices.len(),
                graph.block_sizes.len(),
                sizes.join(", "),
                graph.edges.len()
            ));
            for (a, b) in &graph.edges {
                line(format!("  edge: {a} -> {b}"));
            }
        }
        if let Some(count) = &self.count {
            line(format!("permanent: {}", count.permanent));
            line(format!("divisor: {}", count.divisor));
            line(format!("count: {}", count.count));
            line(format!("matching feasible: {}", count.matching_feasible));
            line(format!("all vertices on cycles: {}", count.all_on_cycles));
            if !count.off_cycle_vertices.is_empty() {
                line(format!("off-cycle vertices: {}", count.off_cycle_vertices.join(", ")));
            }
            if let Some(caveat) = &count.caveat {
                line(format!("caveat: {caveat}"));
            }
        }
        if let Some(system) = &self.system {
            line(format!(
                "system: {} equations, {}",
                system.equations.len(),
                if system.linear { "linear" } else { "nonlinear" }
            ));
            for (name, block) in &system.variables {
                line(format!("  variable: {name} (block {block})"));
            }
            for eq in &system.equations {
                line(format!("  equation: {eq} = 0"));
            }
        }
        if let Some(solution) = &self.solution {
            match solution.rank {
                Some(rank) => line(format!("solution: {} (rank {rank})", solution.kind)),
                None => line(format!("solution: {}", solution.kind)),
            }
            for (name, value) in &solution.values {
                line(format!("  {name} = {}", format_rational(value)));
            }
        }
        if let Some(residuals) = &self.residuals {
            line(format!(
                "residuals: {}",
                if residuals.all_zero { "all zero" } else { "NONZERO" }
            ));
            for (label, value) in &residuals.entries {
                line(format!("  {label}: {}", format_rational(value)));
            }
        }
        if let Some(induction) = &self.induction {
            line("induction:".to_string());
            for (node, edge) in &induction.choices {
                line(format!("  at {node} choose {edge}"));
            }
            for (player, value) in &induction.values {
                line(format!("  value for {player}: {}", format_rational(value)));
            }
            for (node, chosen, tied) in &induction.ties {
                line(format!(
                    "  tie at {node}: kept {chosen} over {}",
                    tied.join(", ")
                ));
            }
        }
        if let Some(oracle) = &self.oracle {
            line(format!(
                "oracle: {} case{} — {}",
                oracle.cases,
                if oracle.cases == 1 { "" } else { "s" },
                if oracle.agreed() { "all routes agree" } else { "DISAGREEMENT" }
            ));
            if let Some(sample) = &oracle.sample {
                line(format!("  permanent: {}", sample.permanent));
                line(format!("  permanent (naive): {}", sample.permanent_naive));
                line(format!("  count: {}", sample.count));
                line(format!("  count (coefficient route): {}", sample.coefficient_count));
                line(format!("  matching: {}", sample.matching));
                line(format!("  matching (exhaustive): {}", sample.matching_exhaustive));
            }
            for d in &oracle.disagreements {
                line(format!("  disagreement: {d}"));
            }
        }
        for note in &self.notes {
            line(format!("note: {note}"));
        }
        out
    }
}
