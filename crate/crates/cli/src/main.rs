//! `reeb`: command-line front end.
//!
//! Exit codes: 0 success, 1 negative decision, 2 error, 64 usage error.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use reeb::iso::{brute_force_iso_with_budget, DEFAULT_BUDGET};
use reeb::phylo::{network_distance_ranked, Distance, Norm};
use reeb::scalar::format_rational;
use reeb::{
    build_dag_view, decompose, generate, labelled_iso, minimize_critical_set, network_to_reeb,
    parse_enewick, read_reeb_json, reeb_iso_report, reeb_to_network, write_dot, write_enewick,
    write_reeb_json, GeneratorSpec, MorphismWitness, RationalReebGraph, VertexKind,
};

const BUDGET_VAR: &str = "REEB_SEARCH_BUDGET";

#[derive(Parser)]
#[command(
    name = "reeb",
    version,
    about = "Leveled Reeb graphs and phylogenetic networks"
)]
struct Cli {
    /// output format; JSON unless stated otherwise
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Syntax {
    Json,
    Enwk,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check every graph invariant
    Validate { input: PathBuf },
    /// Betti number by both formulas
    Betti { input: PathBuf },
    /// Degree and class of every vertex
    Classify { input: PathBuf },
    /// Drop every removable level
    Minimize { input: PathBuf },
    /// All tree factors
    Decompose { input: PathBuf },
    /// Decide isomorphism; exit 0 if isomorphic, 1 if not
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// use edge labels
        #[arg(long, conflicts_with = "oracle")]
        labelled: bool,
        /// exhaustive search instead of tree decompositions
        #[arg(long)]
        oracle: bool,
    },
    /// Hausdorff distance between the factor point sets of two networks
    Dist {
        #[arg(required_unless_present = "matrix")]
        a: Option<PathBuf>,
        #[arg(required_unless_present = "matrix")]
        b: Option<PathBuf>,
        /// exponent of the norm: a positive integer or `inf`
        #[arg(long, default_value = "1")]
        p: String,
        /// JSON object of leaf ranks applied to both inputs
        #[arg(long)]
        ranks: Option<PathBuf>,
        /// pairwise distances between every graph in a directory
        #[arg(long, conflicts_with_all = ["a", "b"])]
        matrix: Option<PathBuf>,
    },
    /// Random valid graph with the requested leaves and Betti number
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        leaves: usize,
        #[arg(long, default_value_t = 1)]
        betti: usize,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        max_indeg: usize,
    },
    /// Convert between extended Newick, JSON and DOT
    Convert {
        /// input path, or `-` for stdin
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Syntax,
        /// input syntax; guessed from the extension or content if absent
        #[arg(long, value_enum)]
        from: Option<Syntax>,
    },
}

enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn guess_syntax(path: &Path, text: &str) -> Syntax {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Syntax::Json,
        Some("enwk" | "nwk" | "newick" | "tre" | "tree") => Syntax::Enwk,
        _ if text.trim_start().starts_with('{') => Syntax::Json,
        _ => Syntax::Enwk,
    }
}

fn parse_graph(path: &Path, text: &str, syntax: Syntax) -> Result<RationalReebGraph> {
    let what = path.display();
    match syntax {
        Syntax::Json => read_reeb_json(text.as_bytes()).with_context(|| format!("{what}")),
        Syntax::Enwk => {
            let doc = parse_enewick(text).with_context(|| format!("{what}"))?;
            network_to_reeb(&doc).with_context(|| format!("{what}"))
        }
        Syntax::Dot => bail!("{what}: DOT is an output format only"),
    }
}

fn load(path: &Path) -> Result<RationalReebGraph> {
    let text = read_input(path)?;
    parse_graph(path, &text, guess_syntax(path, &text))
}

/// Loads and rejects graphs that break an invariant.
fn load_valid(path: &Path) -> Result<RationalReebGraph> {
    let g = load(path)?;
    let report = g.validate();
    if !report.is_valid() {
        bail!("{}: invalid graph: {report}", path.display());
    }
    Ok(g)
}

fn emit(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_text(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        writeln!(out)?;
    }
    Ok(())
}

fn emit_graph(g: &RationalReebGraph, format: Format) -> Result<()> {
    match format {
        Format::Dot => emit_text(&write_dot(g)),
        _ => emit_text(std::str::from_utf8(&write_reeb_json(g))?),
    }
}

fn witness_json(w: &MorphismWitness) -> Value {
    json!({ "vertex_maps": w.vertex_maps, "edge_maps": w.edge_maps })
}

fn distance_json(d: &Distance) -> Value {
    match d {
        Distance::Exact(v) => json!({ "exact": true, "distance": format_rational(v) }),
        Distance::Bounds {
            lower,
            upper,
            digits,
        } => json!({
            "exact": false,
            "distance": d.to_string(),
            "lower": format_rational(lower),
            "upper": format_rational(upper),
            "digits": digits,
        }),
    }
}

fn search_budget() -> Result<u64> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_VAR} must be a non-negative integer")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn kind_name(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::Tree => "tree",
        VertexKind::Reticulation => "reticulation",
        VertexKind::Leaf => "leaf",
        VertexKind::Regular => "regular",
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate { input } => {
            let g = load(input)?;
            let report = g.validate();
            match cli.format {
                Format::Text => emit_text(&report.to_string())?,
                _ => emit(&json!({ "valid": report.is_valid(), "violations": report.messages() }))?,
            }
            Ok(if report.is_valid() {
                Outcome::Yes
            } else {
                Outcome::No
            })
        }
        Command::Betti { input } => {
            let g = load_valid(input)?;
            let view = build_dag_view(&g);
            let (euler, reticulation) = (view.betti_euler(), reeb::betti_reticulation(&view));
            match cli.format {
                Format::Text => emit_text(&format!("euler {euler}\nreticulation {reticulation}"))?,
                _ => emit(&json!({ "euler": euler, "reticulation": reticulation }))?,
            }
            Ok(Outcome::Yes)
        }
        Command::Classify { input } => {
            let g = load_valid(input)?;
            let view = build_dag_view(&g);
            let mut rows = serde_json::Map::new();
            let mut text = String::new();
            for (v, class) in &view.classes {
                let (i, o) = (view.indeg[v], view.outdeg[v]);
                text.push_str(&format!(
                    "{v}\t{}\t{}\t{i}\t{o}\n",
                    kind_name(class.kind),
                    class.leaf
                ));
                rows.insert(
                    v.clone(),
                    json!({ "kind": kind_name(class.kind), "leaf": class.leaf, "indeg": i, "outdeg": o }),
                );
            }
            match cli.format {
                Format::Text => emit_text(&text)?,
                _ => emit(&json!({
                    "vertices": rows,
                    "leaves": view.leaves,
                    "reticulations": view.sorted_reticulations(),
                }))?,
            }
            Ok(Outcome::Yes)
        }
        Command::Minimize { input } => {
            let g = load_valid(input)?;
            emit_graph(&minimize_critical_set(&g)?, cli.format)?;
            Ok(Outcome::Yes)
        }
        Command::Decompose { input } => {
            let g = load_valid(input)?;
            let factors = decompose(&g)?;
            match cli.format {
                Format::Text => {
                    let mut text = String::new();
                    for f in &factors {
                        let kept: Vec<String> = f
                            .choice
                            .kept
                            .iter()
                            .map(|(r, e)| format!("{r}:{e}"))
                            .collect();
                        let new: Vec<&String> = f.new_leaf_provenance.keys().collect();
                        let leaves = build_dag_view(&f.tree).leaves.len();
                        text.push_str(&format!(
                            "kept {} new {:?} leaves {leaves}\n",
                            kept.join(","),
                            new
                        ));
                    }
                    emit_text(&text)?;
                }
                _ => {
                    let items: Vec<Value> = factors
                        .iter()
                        .map(|f| {
                            let tree: Value = serde_json::from_slice(&write_reeb_json(&f.tree))
                                .expect("own output");
                            json!({
                                "kept": f.choice.kept,
                                "new_leaves": f.new_leaf_provenance,
                                "tree": tree,
                            })
                        })
                        .collect();
                    emit(&Value::Array(items))?;
                }
            }
            Ok(Outcome::Yes)
        }
        Command::Iso {
            a,
            b,
            labelled,
            oracle,
        } => {
            let (ga, gb) = (load_valid(a)?, load_valid(b)?);
            let (found, method, witness) = if *labelled {
                let w = labelled_iso(&ga, &gb)?;
                (w.is_some(), "labelled", w)
            } else if *oracle {
                let w = brute_force_iso_with_budget(&ga, &gb, search_budget()?)?;
                (w.is_some(), "oracle", w)
            } else {
                let r = reeb_iso_report(&ga, &gb);
                (r.isomorphic, "factors", None)
            };
            let mut out = json!({ "isomorphic": found, "method": method });
            if let Some(w) = &witness {
                out["witness"] = witness_json(w);
            }
            match cli.format {
                Format::Text => emit_text(if found {
                    "isomorphic"
                } else {
                    "not isomorphic"
                })?,
                _ => emit(&out)?,
            }
            Ok(if found { Outcome::Yes } else { Outcome::No })
        }
        Command::Dist {
            a,
            b,
            p,
            ranks,
            matrix,
        } => {
            let norm = Norm::parse(p)?;
            let ranks: Option<BTreeMap<String, u64>> = match ranks {
                Some(path) => Some(
                    serde_json::from_str(&read_input(path)?)
                        .context("ranks file must map ids to integers")?,
                ),
                None => None,
            };
            let dist = |x: &RationalReebGraph, y: &RationalReebGraph| {
                let ra = ranks.as_ref().unwrap_or(&x.leaf_ranks);
                let rb = ranks.as_ref().unwrap_or(&y.leaf_ranks);
                network_distance_ranked(x, y, ra, rb, norm)
            };
            match matrix {
                Some(dir) => dist_matrix(dir, cli.format, p, dist),
                None => {
                    let (a, b) = (a.as_ref().expect("required"), b.as_ref().expect("required"));
                    let d = dist(&load_valid(a)?, &load_valid(b)?)?;
                    match cli.format {
                        Format::Text => emit_text(&d.to_string())?,
                        _ => {
                            let mut v = distance_json(&d);
                            v["p"] = json!(p);
                            emit(&v)?
                        }
                    }
                    Ok(Outcome::Yes)
                }
            }
        }
        Command::Generate {
            seed,
            leaves,
            betti,
            levels,
            max_indeg,
        } => {
            let spec = GeneratorSpec::new(*seed, *leaves, *betti)
                .with_levels(*levels)
                .with_max_indeg(*max_indeg);
            emit_graph(&generate(&spec)?, cli.format)?;
            Ok(Outcome::Yes)
        }
        Command::Convert { input, to, from } => {
            let text = read_input(input)?;
            let syntax = from.unwrap_or_else(|| guess_syntax(input, &text));
            let out = match (syntax, to) {
                (Syntax::Enwk, Syntax::Enwk) => write_enewick(&parse_enewick(&text)?),
                _ => {
                    let g = parse_graph(input, &text, syntax)?;
                    match to {
                        Syntax::Json => String::from_utf8(write_reeb_json(&g))?,
                        Syntax::Dot => write_dot(&g),
                        Syntax::Enwk => write_enewick(&reeb_to_network(&g)?),
                    }
                }
            };
            emit_text(&out)?;
            Ok(Outcome::Yes)
        }
    }
}

fn dist_matrix(
    dir: &Path,
    format: Format,
    p: &str,
    dist: impl Fn(&RationalReebGraph, &RationalReebGraph) -> Result<Distance, reeb::ReebError>,
) -> Result<Outcome> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()),
                Some("json" | "enwk" | "nwk")
            )
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(anyhow!("{}: no .json or .enwk files", dir.display()));
    }
    let graphs: Vec<RationalReebGraph> =
        paths.iter().map(|p| load_valid(p)).collect::<Result<_>>()?;
    let names: Vec<String> = paths
        .iter()
        .map(|p| {
            p.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default()
        })
        .collect();
    let mut cells = vec![vec![String::new(); graphs.len()]; graphs.len()];
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let d = dist(&graphs[i], &graphs[j])
                .with_context(|| format!("{} vs {}", names[i], names[j]))?;
            cells[i][j] = d.to_string();
            cells[j][i] = d.to_string();
        }
    }
    match format {
        Format::Csv | Format::Text => {
            let mut text = format!(",{}\n", names.join(","));
            for (name, row) in names.iter().zip(&cells) {
                text.push_str(&format!("{name},{}\n", row.join(",")));
            }
            emit_text(&text)?;
        }
        _ => emit(&json!({ "p": p, "names": names, "distances": cells }))?,
    }
    Ok(Outcome::Yes)
}
