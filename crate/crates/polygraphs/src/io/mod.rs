//! The JSON file formats: games, graphs, systems, and points.
//!
//! Every file is a JSON object with a top-level `"format"` tag naming its
//! schema. All rationals are exact: bare integers or `"p/q"` strings.
//! Floating-point literals are rejected outright so no precision is lost
//! between a file and the arithmetic. Parsing is strict — unknown keys are
//! errors — and emission is deterministic, so `parse(emit(parse(f)))` always
//! equals `parse(f)`.

pub mod report;

use std::collections::BTreeMap;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::games::ent::{EntError, EntNodeSpec, EntStructure};
use crate::games::extensive::{Edge, GameTree, TreeError, TreeNode};
use crate::games::normal::{GameError, GraphicalModel, NormalFormGame, PlayerDef};
use crate::graph::{GraphError, PolynomialGraph};
use crate::multilinear::{
    Monomial, MultilinearError, MultilinearPoly, PolySystem, VarSpace,
};
use crate::numerics::{format_rational, parse_rational, BigRational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: floating-point numbers are not accepted; write rationals as \"p/q\"")]
    FloatRejected { path: String },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Ent(#[from] EntError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    System(#[from] MultilinearError),
}

fn schema(path: &str, message: impl Into<String>) -> IoError {
    IoError::Schema { path: path.to_string(), message: message.into() }
}

/// Any value the file formats can carry.
#[derive(Debug, Clone)]
pub enum GameFile {
    NormalForm(NormalFormGame),
    Graphical(GraphicalModel),
    Extensive(GameTree),
    Ent(EntStructure),
    Polygraph(PolynomialGraph),
    System(PolySystem),
}

impl GameFile {
    pub fn format_tag(&self) -> &'static str {
        match self {
            GameFile::NormalForm(_) => "normal_form",
            GameFile::Graphical(_) => "graphical",
            GameFile::Extensive(_) => "extensive",
            GameFile::Ent(_) => "ent",
            GameFile::Polygraph(_) => "polygraph",
            GameFile::System(_) => "system",
        }
    }
}

// ---------------------------------------------------------------------------
// low-level JSON access with error paths

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_string<'a>(v: &'a Value, path: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn as_index(v: &Value, path: &str) -> Result<usize, IoError> {
    let n = v
        .as_u64()
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))?;
    usize::try_from(n).map_err(|_| schema(path, "index too large"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing required field `{key}`")))
}

fn no_unknown_keys(
    obj: &Map<String, Value>,
    allowed: &[&str],
    path: &str,
) -> Result<(), IoError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(path, format!("unknown field `{key}`")));
        }
    }
    Ok(())
}

/// A rational from either a `"p/q"` string or an exact integer literal.
fn rational(v: &Value, path: &str) -> Result<BigRational, IoError> {
    match v {
        Value::String(s) => {
            if s.contains('.') {
                return Err(IoError::FloatRejected { path: path.to_string() });
            }
            parse_rational(s).map_err(|e| schema(path, e.to_string()))
        }
        Value::Number(n) => {
            // with arbitrary-precision numbers the literal text survives intact
            let text = n.to_string();
            if text.contains(['.', 'e', 'E']) {
                return Err(IoError::FloatRejected { path: path.to_string() });
            }
            parse_rational(&text).map_err(|e| schema(path, e.to_string()))
        }
        _ => Err(schema(path, "expected a rational (integer or \"p/q\" string)")),
    }
}

fn rational_list(v: &Value, path: &str) -> Result<Vec<BigRational>, IoError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, entry)| rational(entry, &format!("{path}[{i}]")))
        .collect()
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>, IoError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, entry)| Ok(as_string(entry, &format!("{path}[{i}]"))?.to_string()))
        .collect()
}

// ---------------------------------------------------------------------------
// parsing

/// Parses any game-family file, dispatching on the `"format"` tag.
pub fn parse_game_file(text: &str) -> Result<GameFile, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let obj = as_object(&value, "$")?;
    let tag = as_string(field(obj, "format", "$")?, "$.format")?;
    match tag {
        "normal_form" => parse_normal_form(obj),
        "graphical" => parse_graphical(obj),
        "extensive" => parse_extensive(obj),
        "ent" => parse_ent(obj),
        "polygraph" => parse_polygraph(obj),
        "system" => parse_system(obj),
        other => Err(schema("$.format", format!("unknown format `{other}`"))),
    }
}

fn parse_players(v: &Value, path: &str) -> Result<Vec<PlayerDef>, IoError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let path = format!("{path}[{i}]");
            let obj = as_object(entry, &path)?;
            no_unknown_keys(obj, &["name", "strategies"], &path)?;
            let name = as_string(field(obj, "name", &path)?, &format!("{path}.name"))?;
            let strategies =
                string_list(field(obj, "strategies", &path)?, &format!("{path}.strategies"))?;
            Ok(PlayerDef::new(name, strategies))
        })
        .collect()
}

fn parse_normal_form(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "players", "payoffs"], "$")?;
    let players = parse_players(field(obj, "players", "$")?, "$.players")?;
    let rows = as_array(field(obj, "payoffs", "$")?, "$.payoffs")?
        .iter()
        .enumerate()
        .map(|(i, row)| rational_list(row, &format!("$.payoffs[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GameFile::NormalForm(NormalFormGame::new(players, rows)?))
}

fn parse_graphical(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "players", "neighbors", "tables"], "$")?;
    let players = parse_players(field(obj, "players", "$")?, "$.players")?;
    let lists = as_array(field(obj, "neighbors", "$")?, "$.neighbors")?;
    if lists.len() != players.len() {
        return Err(schema(
            "$.neighbors",
            format!("{} lists for {} players", lists.len(), players.len()),
        ));
    }
    let mut neighbors = Vec::with_capacity(lists.len());
    for (i, list) in lists.iter().enumerate() {
        let path = format!("$.neighbors[{i}]");
        let mut resolved = Vec::new();
        for (j, entry) in as_array(list, &path)?.iter().enumerate() {
            let path = format!("{path}[{j}]");
            let name = as_string(entry, &path)?;
            let idx = players
                .iter()
                .position(|p| p.name == name)
                .ok_or_else(|| schema(&path, format!("unknown player `{name}`")))?;
            resolved.push(idx);
        }
        neighbors.push(resolved);
    }
    let tables = as_array(field(obj, "tables", "$")?, "$.tables")?;
    if tables.len() != players.len() {
        return Err(schema(
            "$.tables",
            format!("{} tables for {} players", tables.len(), players.len()),
        ));
    }
    let tables = tables
        .iter()
        .enumerate()
        .map(|(i, t)| rational_list(t, &format!("$.tables[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GameFile::Graphical(GraphicalModel::new(players, neighbors, tables)?))
}

fn parse_tree_node(v: &Value, path: &str) -> Result<TreeNode, IoError> {
    let obj = as_object(v, path)?;
    let kind = as_string(field(obj, "kind", path)?, &format!("{path}.kind"))?;
    let name = as_string(field(obj, "name", path)?, &format!("{path}.name"))?.to_string();
    match kind {
        "decision" => {
            no_unknown_keys(obj, &["kind", "name", "player", "edges"], path)?;
            let player =
                as_string(field(obj, "player", path)?, &format!("{path}.player"))?.to_string();
            let edges = as_array(field(obj, "edges", path)?, &format!("{path}.edges"))?
                .iter()
                .enumerate()
                .map(|(i, entry)| {
                    let path = format!("{path}.edges[{i}]");
                    let obj = as_object(entry, &path)?;
                    no_unknown_keys(obj, &["name", "to"], &path)?;
                    let name =
                        as_string(field(obj, "name", &path)?, &format!("{path}.name"))?.to_string();
                    let child = parse_tree_node(field(obj, "to", &path)?, &format!("{path}.to"))?;
                    Ok(Edge { name, child })
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(TreeNode::Decision { name, player, edges })
        }
        "chance" => {
            no_unknown_keys(obj, &["kind", "name", "branches"], path)?;
            let branches = as_array(field(obj, "branches", path)?, &format!("{path}.branches"))?
                .iter()
                .enumerate()
                .map(|(i, entry)| {
                    let path = format!("{path}.branches[{i}]");
                    let obj = as_object(entry, &path)?;
                    no_unknown_keys(obj, &["weight", "to"], &path)?;
                    let weight =
                        rational(field(obj, "weight", &path)?, &format!("{path}.weight"))?;
                    let child = parse_tree_node(field(obj, "to", &path)?, &format!("{path}.to"))?;
                    Ok((weight, child))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(TreeNode::Chance { name, branches })
        }
        "leaf" => {
            no_unknown_keys(obj, &["kind", "name", "payoffs"], path)?;
            let payoffs_path = format!("{path}.payoffs");
            let payoffs = as_object(field(obj, "payoffs", path)?, &payoffs_path)?
                .iter()
                .map(|(player, v)| {
                    Ok((
                        player.clone(),
                        rational(v, &format!("{payoffs_path}.{player}"))?,
                    ))
                })
                .collect::<Result<BTreeMap<_, _>, IoError>>()?;
            Ok(TreeNode::Leaf { name, payoffs })
        }
        other => Err(schema(
            &format!("{path}.kind"),
            format!("unknown node kind `{other}` (expected decision, chance, or leaf)"),
        )),
    }
}

fn parse_extensive(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "root"], "$")?;
    let root = parse_tree_node(field(obj, "root", "$")?, "$.root")?;
    Ok(GameFile::Extensive(GameTree::new(root)?))
}

fn parse_ent(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "nodes"], "$")?;
    let specs = as_array(field(obj, "nodes", "$")?, "$.nodes")?
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let path = format!("$.nodes[{i}]");
            let obj = as_object(entry, &path)?;
            no_unknown_keys(
                obj,
                &["name", "children", "strategies", "aggregation", "utility", "gammas"],
                &path,
            )?;
            let name = as_string(field(obj, "name", &path)?, &format!("{path}.name"))?.to_string();
            let children = match obj.get("children") {
                Some(v) => string_list(v, &format!("{path}.children"))?,
                None => Vec::new(),
            };
            let strategies = match obj.get("strategies") {
                Some(v) => string_list(v, &format!("{path}.strategies"))?,
                None => Vec::new(),
            };
            let aggregation = obj
                .get("aggregation")
                .map(|v| rational_list(v, &format!("{path}.aggregation")))
                .transpose()?;
            let utility = obj
                .get("utility")
                .map(|v| rational_list(v, &format!("{path}.utility")))
                .transpose()?;
            let gammas = match obj.get("gammas") {
                Some(v) => {
                    let gpath = format!("{path}.gammas");
                    as_object(v, &gpath)?
                        .iter()
                        .map(|(node, g)| Ok((node.clone(), rational(g, &format!("{gpath}.{node}"))?)))
                        .collect::<Result<BTreeMap<_, _>, IoError>>()?
                }
                None => BTreeMap::new(),
            };
            Ok(EntNodeSpec { name, children, strategies, aggregation, utility, gammas })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(GameFile::Ent(EntStructure::new(specs)?))
}

fn parse_polygraph(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "blocks", "edges", "names"], "$")?;
    let blocks = as_array(field(obj, "blocks", "$")?, "$.blocks")?
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let path = format!("$.blocks[{i}]");
            as_array(block, &path)?
                .iter()
                .enumerate()
                .map(|(j, v)| as_index(v, &format!("{path}[{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let d: usize = blocks.iter().map(Vec::len).sum();
    for (i, block) in blocks.iter().enumerate() {
        if let Some(&v) = block.iter().find(|&&v| v >= d) {
            return Err(schema(
                &format!("$.blocks[{i}]"),
                format!("vertex {v} out of range (the blocks list {d} vertices)"),
            ));
        }
    }
    let edges = as_array(field(obj, "edges", "$")?, "$.edges")?
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let path = format!("$.edges[{i}]");
            let pair = as_array(pair, &path)?;
            if pair.len() != 2 {
                return Err(schema(&path, "expected a [from, to] pair"));
            }
            Ok((
                as_index(&pair[0], &format!("{path}[0]"))?,
                as_index(&pair[1], &format!("{path}[1]"))?,
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let names = obj
        .get("names")
        .map(|v| string_list(v, "$.names"))
        .transpose()?;
    if let Some(names) = &names {
        if names.len() != d {
            return Err(schema(
                "$.names",
                format!("{} names for {} vertices", names.len(), d),
            ));
        }
    }
    Ok(GameFile::Polygraph(PolynomialGraph::validate(
        &blocks,
        &edges,
        names.as_deref(),
    )?))
}

fn parse_system(obj: &Map<String, Value>) -> Result<GameFile, IoError> {
    no_unknown_keys(obj, &["format", "variables", "equations"], "$")?;
    let vars = as_array(field(obj, "variables", "$")?, "$.variables")?
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let path = format!("$.variables[{i}]");
            let obj = as_object(entry, &path)?;
            no_unknown_keys(obj, &["name", "block"], &path)?;
            let name = as_string(field(obj, "name", &path)?, &format!("{path}.name"))?.to_string();
            let block = as_index(field(obj, "block", &path)?, &format!("{path}.block"))?;
            Ok((name, block))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let space = VarSpace::new(vars)?;
    let equations = as_array(field(obj, "equations", "$")?, "$.equations")?
        .iter()
        .enumerate()
        .map(|(i, eq)| {
            let path = format!("$.equations[{i}]");
            let mut poly = MultilinearPoly::zero(&space);
            for (j, term) in as_array(eq, &path)?.iter().enumerate() {
                let path = format!("{path}[{j}]");
                let obj = as_object(term, &path)?;
                no_unknown_keys(obj, &["coeff", "vars"], &path)?;
                let coeff = rational(field(obj, "coeff", &path)?, &format!("{path}.coeff"))?;
                let names = string_list(field(obj, "vars", &path)?, &format!("{path}.vars"))?;
                let mut indices = Vec::with_capacity(names.len());
                for name in &names {
                    let idx = space.lookup(name).ok_or_else(|| {
                        schema(&format!("{path}.vars"), format!("unknown variable `{name}`"))
                    })?;
                    if indices.contains(&idx) {
                        return Err(schema(
                            &format!("{path}.vars"),
                            format!("variable `{name}` repeats; terms are squarefree"),
                        ));
                    }
                    indices.push(idx);
                }
                poly.add_term(Monomial::from_vars(indices), coeff);
            }
            Ok(poly)
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(GameFile::System(PolySystem::new(space, equations)?))
}

/// Parses a point file: a map from variable names to exact values.
pub fn parse_point_file(text: &str) -> Result<BTreeMap<String, BigRational>, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let obj = as_object(&value, "$")?;
    no_unknown_keys(obj, &["format", "values"], "$")?;
    let tag = as_string(field(obj, "format", "$")?, "$.format")?;
    if tag != "point" {
        return Err(schema("$.format", format!("expected `point`, got `{tag}`")));
    }
    as_object(field(obj, "values", "$")?, "$.values")?
        .iter()
        .map(|(name, v)| Ok((name.clone(), rational(v, &format!("$.values.{name}"))?)))
        .collect()
}

// ---------------------------------------------------------------------------
// emission

fn json_rational(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn json_rationals(rs: &[BigRational]) -> Value {
    Value::Array(rs.iter().map(json_rational).collect())
}

fn json_strings<S: AsRef<str>>(items: &[S]) -> Value {
    Value::Array(items.iter().map(|s| Value::String(s.as_ref().to_string())).collect())
}

fn json_players(players: &[PlayerDef]) -> Value {
    Value::Array(
        players
            .iter()
            .map(|p| {
                let mut obj = Map::new();
                obj.insert("name".into(), Value::String(p.name.clone()));
                obj.insert("strategies".into(), json_strings(&p.strategies));
                Value::Object(obj)
            })
            .collect(),
    )
}

fn tree_node_value(node: &TreeNode) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(node.name().to_string()));
    match node {
        TreeNode::Decision { player, edges, .. } => {
            obj.insert("kind".into(), Value::String("decision".into()));
            obj.insert("player".into(), Value::String(player.clone()));
            obj.insert(
                "edges".into(),
                Value::Array(
                    edges
                        .iter()
                        .map(|e| {
                            let mut edge = Map::new();
                            edge.insert("name".into(), Value::String(e.name.clone()));
                            edge.insert("to".into(), tree_node_value(&e.child));
                            Value::Object(edge)
                        })
                        .collect(),
                ),
            );
        }
        TreeNode::Chance { branches, .. } => {
            obj.insert("kind".into(), Value::String("chance".into()));
            obj.insert(
                "branches".into(),
                Value::Array(
                    branches
                        .iter()
                        .map(|(w, child)| {
                            let mut branch = Map::new();
                            branch.insert("weight".into(), json_rational(w));
                            branch.insert("to".into(), tree_node_value(child));
                            Value::Object(branch)
                        })
                        .collect(),
                ),
            );
        }
        TreeNode::Leaf { payoffs, .. } => {
            obj.insert("kind".into(), Value::String("leaf".into()));
            obj.insert(
                "payoffs".into(),
                Value::Object(
                    payoffs.iter().map(|(p, v)| (p.clone(), json_rational(v))).collect(),
                ),
            );
        }
    }
    Value::Object(obj)
}

/// Serializes any game-family value back to its file form.
pub fn emit_game_file(file: &GameFile) -> String {
    let mut obj = Map::new();
    obj.insert("format".into(), Value::String(file.format_tag().into()));
    match file {
        GameFile::NormalForm(game) => {
            obj.insert("players".into(), json_players(game.players()));
            obj.insert(
                "payoffs".into(),
                Value::Array(game.payoff_rows().iter().map(|row| json_rationals(row)).collect()),
            );
        }
        GameFile::Graphical(model) => {
            obj.insert("players".into(), json_players(model.players()));
            obj.insert(
                "neighbors".into(),
                Value::Array(
                    model
                        .neighbors()
                        .iter()
                        .map(|ns| {
                            Value::Array(
                                ns.iter()
                                    .map(|&j| Value::String(model.players()[j].name.clone()))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            );
            obj.insert(
                "tables".into(),
                Value::Array(model.tables().iter().map(|t| json_rationals(t)).collect()),
            );
        }
        GameFile::Extensive(tree) => {
            obj.insert("root".into(), tree_node_value(tree.root()));
        }
        GameFile::Ent(ent) => {
            obj.insert(
                "nodes".into(),
                Value::Array(
                    ent.to_specs()
                        .iter()
                        .map(|spec| {
                            let mut node = Map::new();
                            node.insert("name".into(), Value::String(spec.name.clone()));
                            if !spec.children.is_empty() {
                                node.insert("children".into(), json_strings(&spec.children));
                            }
                            if !spec.strategies.is_empty() {
                                node.insert("strategies".into(), json_strings(&spec.strategies));
                            }
                            if let Some(agg) = &spec.aggregation {
                                node.insert("aggregation".into(), json_rationals(agg));
                            }
                            if let Some(u) = &spec.utility {
                                node.insert("utility".into(), json_rationals(u));
                            }
                            if !spec.gammas.is_empty() {
                                node.insert(
                                    "gammas".into(),
                                    Value::Object(
                                        spec.gammas
                                            .iter()
                                            .map(|(w, g)| (w.clone(), json_rational(g)))
                                            .collect(),
                                    ),
                                );
                            }
                            Value::Object(node)
                        })
                        .collect(),
                ),
            );
        }
        GameFile::Polygraph(graph) => {
            obj.insert(
                "blocks".into(),
                Value::Array(
                    graph
                        .block_ranges()
                        .iter()
                        .map(|r| {
                            Value::Array(r.clone().map(|v| Value::from(v as u64)).collect())
                        })
                        .collect(),
                ),
            );
            let mut edges = graph.edges();
            edges.sort_unstable();
            obj.insert(
                "edges".into(),
                Value::Array(
                    edges
                        .iter()
                        .map(|&(a, b)| {
                            Value::Array(vec![Value::from(a as u64), Value::from(b as u64)])
                        })
                        .collect(),
                ),
            );
            obj.insert("names".into(), json_strings(graph.names()));
        }
        GameFile::System(system) => {
            obj.insert(
                "variables".into(),
                Value::Array(
                    (0..system.space().len())
                        .map(|v| {
                            let mut var = Map::new();
                            var.insert("name".into(), Value::String(system.space().name(v).into()));
                            var.insert("block".into(), Value::from(system.space().block(v) as u64));
                            Value::Object(var)
                        })
                        .collect(),
                ),
            );
            obj.insert(
                "equations".into(),
                Value::Array(
                    system
                        .equations()
                        .iter()
                        .map(|eq| {
                            Value::Array(
                                eq.terms()
                                    .map(|(mono, coeff)| {
                                        let mut term = Map::new();
                                        term.insert("coeff".into(), json_rational(coeff));
                                        let names: Vec<&str> = mono
                                            .vars()
                                            .iter()
                                            .map(|&v| system.space().name(v))
                                            .collect();
                                        term.insert("vars".into(), json_strings(&names));
                                        Value::Object(term)
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            );
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    text.push('\n');
    text
}

/// Serializes a point file.
pub fn emit_point_file(values: &BTreeMap<String, BigRational>) -> String {
    let mut obj = Map::new();
    obj.insert("format".into(), Value::String("point".into()));
    obj.insert(
        "values".into(),
        Value::Object(values.iter().map(|(k, v)| (k.clone(), json_rational(v))).collect()),
    );
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    text.push('\n');
    text
}
