//! Command dispatch for the `polygraphs` binary.
//!
//! [`run_command`] is the whole CLI as a library function: it takes an
//! argument vector and returns the exit code plus everything that would be
//! printed. Exit codes: `0` success, `1` domain failure (a zero count, a
//! nonzero residual, a non-unique linear solve, an oracle disagreement),
//! `2` input or usage error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::games::ent::EntProfile;
use crate::games::extensive::DistinguishedEdges;
use crate::graph::PolynomialGraph;
use crate::io::report::{
    CountSummary, GraphSummary, InductionSummary, OracleNumbers, OracleSummary, Report,
    ResidualSummary, SolutionSummary, SystemSummary,
};
use crate::io::{emit_game_file, parse_game_file, parse_point_file, GameFile};
use crate::multilinear::{Assignment, PolySystem};
use crate::numerics::{solve_linear_exact, DEFAULT_DIMENSION_CAP};
use crate::oracles::{cross_check_count, sample_polygraph, OracleError};

/// Environment variable overriding the default permanent dimension cap.
pub const CAP_ENV_VAR: &str = "POLYGRAPHS_DIM_CAP";

/// Largest pure-profile table `normalize` will build from a game tree.
const MAX_NORMALIZE_PROFILES: usize = 1_000_000;

/// Largest graph the oracle subcommand accepts (its routes are factorial).
const MAX_ORACLE_DIMENSION: usize = 10;

#[derive(Parser)]
#[command(
    name = "polygraphs",
    version,
    about = "Exact counting of generic quasiequilibria of finite games",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Game, graph, or system file (JSON with a "format" tag)
    file: PathBuf,
    /// Emit the report as JSON instead of text
    #[arg(long)]
    json: bool,
    /// Baseline choice per decision node: `first` or `node=edge,...`
    /// (extensive-form files only)
    #[arg(long)]
    distinguished: Option<String>,
    /// Use the relaxed sibling model (the default and only mode for
    /// hierarchy files; rejected for other formats)
    #[arg(long)]
    relaxed: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count the generic solutions of the game's indifference system
    Count {
        #[command(flatten)]
        input: InputArgs,
        /// Permanent dimension cap (default 30, or the value of
        /// POLYGRAPHS_DIM_CAP)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the polynomial graph of a game, optionally as Graphviz DOT
    Graph {
        #[command(flatten)]
        input: InputArgs,
        /// Also write the graph in DOT form to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the indifference equations of a game
    Equations {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Evaluate the equations (and any consistency rules) at a point file
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Point file assigning a value to every variable
        point: PathBuf,
    },
    /// Solve the system exactly when it is linear
    SolveLinear {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Convert an extensive-form tree or a hierarchy to a normal-form file
    Normalize {
        /// Extensive-form or hierarchy file
        file: PathBuf,
    },
    /// Run pure backward induction on an extensive-form tree
    Induct {
        /// Extensive-form file
        file: PathBuf,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Cross-check a count against independent brute-force oracles
    Oracle {
        /// Game or graph file (omit when using --random)
        file: Option<PathBuf>,
        /// Check this many randomly sampled graphs instead of a file
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        /// Seed for --random sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
struct CliError(String);

fn fail(e: impl std::fmt::Display) -> CliError {
    CliError(e.to_string())
}

/// Runs one command line and returns `(exit code, output)`.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, rendered);
        }
    };
    match dispatch(cli) {
        Ok(result) => result,
        Err(CliError(message)) => (2, format!("error: {message}\n")),
    }
}

fn dispatch(cli: Cli) -> Result<(i32, String), CliError> {
    match cli.command {
        Command::Count { input, cap } => count_command(input, cap),
        Command::Graph { input, dot } => graph_command(input, dot),
        Command::Equations { input } => equations_command(input),
        Command::Verify { input, point } => verify_command(input, &point),
        Command::SolveLinear { input } => solve_linear_command(input),
        Command::Normalize { file } => normalize_command(&file),
        Command::Induct { file, json } => induct_command(&file, json),
        Command::Oracle { file, random, seed, json } => {
            oracle_command(file.as_deref(), random, seed, json)
        }
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

struct LoadedFile {
    value: GameFile,
    path: String,
    digest: String,
}

fn load(path: &Path) -> Result<LoadedFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let value = parse_game_file(&text)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok(LoadedFile { value, path: path.display().to_string(), digest })
}

fn effective_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError(format!("{CAP_ENV_VAR} is not a number: `{text}`"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DIMENSION_CAP),
        Err(e) => Err(CliError(format!("{CAP_ENV_VAR}: {e}"))),
    }
}

/// Checks the mode flags against the loaded format and resolves the
/// distinguished-edge choice for trees.
fn resolve_modes(
    loaded: &LoadedFile,
    input: &InputArgs,
) -> Result<Option<DistinguishedEdges>, CliError> {
    if input.relaxed && !matches!(loaded.value, GameFile::Ent(_)) {
        return Err(CliError(format!(
            "--relaxed only applies to hierarchy (ent) files; {} is {}",
            loaded.path,
            loaded.value.format_tag()
        )));
    }
    match (&loaded.value, input.distinguished.as_deref()) {
        (GameFile::Extensive(tree), spec) => {
            let dist = match spec.unwrap_or("first") {
                "first" => DistinguishedEdges::first_edges(tree),
                list => DistinguishedEdges::parse_spec(tree, list).map_err(fail)?,
            };
            Ok(Some(dist))
        }
        (_, None | Some("first")) => Ok(None),
        (_, Some(_)) => Err(CliError(format!(
            "--distinguished lists apply to extensive-form files; {} is {} \
             (its baselines are always the first strategies)",
            loaded.path,
            loaded.value.format_tag()
        ))),
    }
}

fn base_report(command: &str, loaded: &LoadedFile) -> Report {
    let mut report = Report::new(command);
    report.input = Some(loaded.path.clone());
    report.digest = Some(loaded.digest.clone());
    report.format = Some(loaded.value.format_tag().to_string());
    report
}

fn distinguished_entries(dist: &DistinguishedEdges) -> Vec<(String, String)> {
    dist.entries().map(|(node, edge)| (node.clone(), edge.clone())).collect()
}

fn graph_of(
    loaded: &LoadedFile,
    dist: Option<&DistinguishedEdges>,
) -> Result<PolynomialGraph, CliError> {
    match &loaded.value {
        GameFile::NormalForm(game) => game.complete_polygraph().map_err(fail),
        GameFile::Graphical(model) => model.polygraph().map_err(fail),
        GameFile::Extensive(tree) => {
            tree.polynomial_graph(dist.expect("trees always resolve a choice")).map_err(fail)
        }
        GameFile::Ent(ent) => ent.relaxed_polygraph().map_err(fail),
        GameFile::Polygraph(graph) => Ok(graph.clone()),
        GameFile::System(_) => Err(CliError(
            "a system file carries equations but no polynomial graph; \
             use `equations`, `verify`, or `solve-linear`"
            .into(),
        )),
    }
}

fn system_of(
    loaded: &LoadedFile,
    dist: Option<&DistinguishedEdges>,
) -> Result<PolySystem, CliError> {
    match &loaded.value {
        GameFile::NormalForm(game) => game.indifference_system().map_err(fail),
        GameFile::Graphical(model) => model.indifference_system().map_err(fail),
        GameFile::Extensive(tree) => {
            tree.subgame_system(dist.expect("trees always resolve a choice")).map_err(fail)
        }
        GameFile::Ent(ent) => ent.relaxed_system().map_err(fail),
        GameFile::System(system) => Ok(system.clone()),
        GameFile::Polygraph(_) => Err(CliError(
            "a polygraph file carries a graph but no equations; use `count` or `graph`".into(),
        )),
    }
}

fn render(report: &Report, json: bool) -> String {
    if json {
        report.to_json_string()
    } else {
        report.to_text()
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn count_command(input: InputArgs, cap: Option<usize>) -> Result<(i32, String), CliError> {
    use num_traits::Zero;
    let loaded = load(&input.file)?;
    let dist = resolve_modes(&loaded, &input)?;
    let cap = effective_cap(cap)?;
    let graph = graph_of(&loaded, dist.as_ref())?;
    let outcome = graph.count(cap).map_err(fail)?;

    let mut report = base_report("count", &loaded);
    report.cap = Some(cap);
    report.distinguished = dist.as_ref().map(distinguished_entries);
    report.count = Some(CountSummary::of(&outcome));
    let code = if outcome.count.is_zero() { 1 } else { 0 };
    Ok((code, render(&report, input.json)))
}

fn graph_command(input: InputArgs, dot: Option<PathBuf>) -> Result<(i32, String), CliError> {
    let loaded = load(&input.file)?;
    let dist = resolve_modes(&loaded, &input)?;
    let graph = graph_of(&loaded, dist.as_ref())?;

    let mut report = base_report("graph", &loaded);
    report.distinguished = dist.as_ref().map(distinguished_entries);
    report.graph = Some(GraphSummary::of(&graph));
    if let Some(path) = dot {
        std::fs::write(&path, graph.to_dot())
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        report.note(format!("dot written to {}", path.display()));
    }
    Ok((0, render(&report, input.json)))
}

fn equations_command(input: InputArgs) -> Result<(i32, String), CliError> {
    let loaded = load(&input.file)?;
    let dist = resolve_modes(&loaded, &input)?;
    let system = system_of(&loaded, dist.as_ref())?;

    let mut report = base_report("equations", &loaded);
    report.distinguished = dist.as_ref().map(distinguished_entries);
    report.system = Some(SystemSummary::of(&system));
    Ok((0, render(&report, input.json)))
}

fn verify_command(input: InputArgs, point_path: &Path) -> Result<(i32, String), CliError> {
    let loaded = load(&input.file)?;
    let dist = resolve_modes(&loaded, &input)?;
    let point_text = std::fs::read_to_string(point_path)
        .map_err(|e| CliError(format!("{}: {e}", point_path.display())))?;
    let point = parse_point_file(&point_text)
        .map_err(|e| CliError(format!("{}: {e}", point_path.display())))?;

    let mut report = base_report("verify", &loaded);
    report.distinguished = dist.as_ref().map(distinguished_entries);

    let mut entries = Vec::new();
    if let GameFile::Ent(ent) = &loaded.value {
        // hierarchies get the full check: indifference plus aggregation
        // consistency at the completed profile
        let system = ent.relaxed_system().map_err(fail)?;
        for name in point.keys() {
            if system.space().lookup(name).is_none() {
                return Err(CliError(format!("unknown variable `{name}` in the point file")));
            }
        }
        let profile = EntProfile::from_reduced(ent, &point);
        let residual = ent.hierarchical_residual(&profile).map_err(fail)?;
        for (i, r) in residual.indifference.iter().enumerate() {
            entries.push((format!("f{}", i + 1), r.clone()));
        }
        for (node, diffs) in &residual.consistency {
            for (k, diff) in diffs.iter().enumerate() {
                entries.push((format!("consistency {node}[{k}]"), diff.clone()));
            }
        }
    } else {
        let system = system_of(&loaded, dist.as_ref())?;
        let assignment = Assignment::from_named(system.space(), &point).map_err(fail)?;
        let residual = system.residual(&assignment).map_err(fail)?;
        for (i, r) in residual.iter().enumerate() {
            entries.push((format!("f{}", i + 1), r.clone()));
        }
    }
    let summary = ResidualSummary::of(entries);
    let code = if summary.all_zero { 0 } else { 1 };
    report.residuals = Some(summary);
    Ok((code, render(&report, input.json)))
}

fn solve_linear_command(input: InputArgs) -> Result<(i32, String), CliError> {
    let loaded = load(&input.file)?;
    let dist = resolve_modes(&loaded, &input)?;
    let system = system_of(&loaded, dist.as_ref())?;

    let mut report = base_report("solve-linear", &loaded);
    report.distinguished = dist.as_ref().map(distinguished_entries);

    let Some((matrix, rhs)) = system.linear_form() else {
        report.note("the system is not linear; no exact solver applies");
        return Ok((1, render(&report, input.json)));
    };
    let solution = solve_linear_exact(&matrix, &rhs);
    let summary = SolutionSummary::of(&solution, system.space().names());
    let unique = summary.kind == "unique";
    if unique {
        let mut assignment = Assignment::empty(system.space());
        for (v, (_, value)) in summary.values.iter().enumerate() {
            assignment.set(v, value.clone());
        }
        let residual = system.residual(&assignment).map_err(fail)?;
        report.residuals = Some(ResidualSummary::of(
            residual
                .into_iter()
                .enumerate()
                .map(|(i, r)| (format!("f{}", i + 1), r))
                .collect(),
        ));
    }
    report.solution = Some(summary);
    Ok((if unique { 0 } else { 1 }, render(&report, input.json)))
}

fn normalize_command(file: &Path) -> Result<(i32, String), CliError> {
    let loaded = load(file)?;
    let game = match &loaded.value {
        GameFile::Extensive(tree) => {
            tree.normal_form_of(MAX_NORMALIZE_PROFILES).map_err(fail)?
        }
        GameFile::Ent(ent) => ent.induced_normal_form().map_err(fail)?,
        other => {
            return Err(CliError(format!(
                "normalize expects an extensive-form or hierarchy file, got {}",
                other.format_tag()
            )))
        }
    };
    Ok((0, emit_game_file(&GameFile::NormalForm(game))))
}

fn induct_command(file: &Path, json: bool) -> Result<(i32, String), CliError> {
    let loaded = load(file)?;
    let GameFile::Extensive(tree) = &loaded.value else {
        return Err(CliError(format!(
            "induct expects an extensive-form file, got {}",
            loaded.value.format_tag()
        )));
    };
    let outcome = tree.backward_induction();
    let mut report = base_report("induct", &loaded);
    report.induction = Some(InductionSummary {
        choices: outcome.choices.into_iter().collect(),
        values: outcome.values.into_iter().collect(),
        ties: outcome
            .ties
            .into_iter()
            .map(|t| (t.node, t.chosen, t.tied_with))
            .collect(),
    });
    Ok((0, render(&report, json)))
}

fn oracle_command(
    file: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    json: bool,
) -> Result<(i32, String), CliError> {
    match (file, random) {
        (Some(path), None) => {
            let loaded = load(path)?;
            // trees need a baseline choice; the permanent is the same for
            // any of them, so the default first-edge choice is fine here
            let dist = match &loaded.value {
                GameFile::Extensive(tree) => Some(DistinguishedEdges::first_edges(tree)),
                _ => None,
            };
            let graph = graph_of(&loaded, dist.as_ref())?;
            if graph.d() > MAX_ORACLE_DIMENSION {
                return Err(CliError(format!(
                    "the oracle routes are factorial; the graph has {} vertices (max {})",
                    graph.d(),
                    MAX_ORACLE_DIMENSION
                )));
            }
            let mut report = base_report("oracle", &loaded);
            let (code, summary) = match cross_check_count(&graph) {
                Ok(check) => (
                    0,
                    OracleSummary {
                        cases: 1,
                        disagreements: Vec::new(),
                        sample: Some(OracleNumbers::of(&check)),
                    },
                ),
                Err(OracleError::Disagreement(text)) => (
                    1,
                    OracleSummary { cases: 1, disagreements: vec![text], sample: None },
                ),
                Err(e) => return Err(fail(e)),
            };
            report.oracle = Some(summary);
            Ok((code, render(&report, json)))
        }
        (None, Some(cases)) => {
            let mut disagreements = Vec::new();
            for i in 0..cases {
                let graph = sample_polygraph(seed.wrapping_add(i as u64), 8);
                if let Err(OracleError::Disagreement(text)) = cross_check_count(&graph) {
                    disagreements.push(format!("case {i}: {text}"));
                }
            }
            let mut report = Report::new("oracle");
            report.seed = Some(seed);
            let code = if disagreements.is_empty() { 0 } else { 1 };
            report.oracle = Some(OracleSummary { cases, disagreements, sample: None });
            Ok((code, render(&report, json)))
        }
        (None, None) => Err(CliError("oracle needs a file or --random <N>".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}
