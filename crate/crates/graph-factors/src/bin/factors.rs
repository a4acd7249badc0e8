//! Command-line surface: analyze single graphs, decide individual
//! properties, emit the extremal constructions, and run verification or
//! oracle-crosscheck sweeps over all small graphs.
//!
//! Exit codes: 0 verdict true / zero counterexamples, 1 verdict false /
//! counterexamples found, 2 usage or parse error.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use graph_factors::analysis::{Decision, Property, ViolationWitness};
use graph_factors::constructions::{big_sun, odd_cycle, sharpness_graph, TheoremId};
use graph_factors::error::Error;
use graph_factors::format::{parse_edge_list, parse_graph6, write_graph6};
use graph_factors::graph::{find_induced_star, is_k1r_free, min_degree, Graph};
use graph_factors::harness::{
    oracle_crosscheck, verify_theorem, CrosscheckConfig, SweepConfig,
};
use graph_factors::matching::is_factor_critical;
use graph_factors::search::{find_pgek_factor, find_sn_factor, Factor, DEFAULT_SEARCH_CAP};

#[derive(Parser)]
#[command(
    name = "factors",
    version,
    about = "Star-factor and path-factor analysis for small graphs",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input format for graph files.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Graph6)]
    format: InputFormat,

    /// Also write a machine-readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Worker threads for sweeps (0 = default pool).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Report degree data, induced-star freeness and all six factor
    /// decisions for each graph in the file.
    Analyze {
        /// Graph file, or `-` for stdin.
        file: String,
        /// Forbidden induced star width (K_{1,r}).
        #[arg(long)]
        r: usize,
        /// Star width for the S_n decision (default 2).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Decide one property for each graph in the file.
    Decide {
        /// One of: sn-factor, p2-factor, p3-factor, p2-covered, p3-covered,
        /// p2p3-covered.
        property: String,
        /// Graph file, or `-` for stdin.
        file: String,
        /// Star width for sn-factor (default 2).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Emit an extremal construction (T1-1, T1-2, T2-1, T2-2, T2-3) or a
    /// sun over an odd cycle.
    Construct {
        /// Theorem id, or `sun`.
        target: String,
        /// Star width r for theorems; odd base-cycle length for `sun`.
        #[arg(long)]
        r: usize,
        /// Star width n (T1-1 only).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sweep a theorem over all graphs up to a given order and report
    /// counterexamples.
    Verify {
        /// T1-1, T1-2, T2-1, T2-2, T2-3 or C1-1.
        theorem: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "max-vertices")]
        max_vertices: usize,
        /// Enumerate one representative per isomorphism class.
        #[arg(long)]
        dedup: bool,
        /// Lower the minimum-degree hypothesis by this much.
        #[arg(long, default_value_t = 0)]
        weaken: usize,
    },
    /// Cross-check the characterization deciders against brute-force factor
    /// search over all small graphs.
    OracleCheck {
        #[arg(long = "max-vertices")]
        max_vertices: usize,
    },
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_good) => {
            if all_good {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(file: &str) -> Result<String, CliError> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(file)?)
    }
}

fn load_graphs(file: &str, format: InputFormat) -> Result<Vec<Graph>, CliError> {
    let text = read_input(file)?;
    match format {
        InputFormat::Graph6 => {
            let mut graphs = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                graphs.push(parse_graph6(line)?);
            }
            if graphs.is_empty() {
                return Err(CliError::Usage("input contains no graphs".into()));
            }
            Ok(graphs)
        }
        InputFormat::Edgelist => {
            let (g, warnings) = parse_edge_list(&text)?;
            for w in warnings {
                eprintln!("warning: line {}: {}", w.line, w.message);
            }
            Ok(vec![g])
        }
    }
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, format!("{:#}\n", value))?;
    }
    Ok(())
}

fn tool_version() -> String {
    format!("factors {}", env!("CARGO_PKG_VERSION"))
}

fn witness_text(w: &ViolationWitness) -> String {
    let eps = w
        .epsilon
        .map(|e| format!(" epsilon={e}"))
        .unwrap_or_default();
    format!(
        "set={} deficiency={} bound={}{}",
        w.set, w.deficiency, w.bound, eps
    )
}

fn decision_text(d: &Decision) -> String {
    match &d.witness {
        None => "true".into(),
        Some(w) => format!("false {}", witness_text(w)),
    }
}

fn factor_text(f: &Factor) -> String {
    f.components
        .iter()
        .map(|c| {
            let verts: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
            match c.kind {
                graph_factors::search::ComponentKind::Path => format!("path {}", verts.join("-")),
                graph_factors::search::ComponentKind::Star => {
                    format!("star {}:{}", verts[0], verts[1..].join(","))
                }
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Analyze { ref file, r, n } => {
            let graphs = load_graphs(file, cli.format)?;
            analyze(&graphs, r, n.unwrap_or(2), &cli.json)
        }
        Command::Decide {
            ref property,
            ref file,
            n,
        } => {
            let prop = parse_property(property, n)?;
            let graphs = load_graphs(file, cli.format)?;
            decide(&graphs, prop, &cli.json)
        }
        Command::Construct { ref target, r, n } => construct(target, r, n, &cli.json),
        Command::Verify {
            ref theorem,
            r,
            n,
            max_vertices,
            dedup,
            weaken,
        } => {
            let theorem = TheoremId::parse(theorem)?;
            let config = SweepConfig {
                max_vertices,
                dedup,
                connected_only: false,
                jobs: cli.jobs,
            };
            let report = verify_theorem(theorem, r, n, weaken, &config)?;
            print!("{}", report.render());
            eprintln!("wall_time = {:.3}s", report.wall_time);
            write_json(&cli.json, &serde_json::to_value(&report).expect("serializable"))?;
            Ok(report.passed())
        }
        Command::OracleCheck { max_vertices } => {
            let config = CrosscheckConfig {
                existence_max_vertices: max_vertices,
                covered_max_vertices: max_vertices.min(7),
                sn_values: vec![2, 3],
                jobs: cli.jobs,
            };
            let report = oracle_crosscheck(&config)?;
            print!("{}", report.render());
            eprintln!("wall_time = {:.3}s", report.wall_time);
            write_json(&cli.json, &serde_json::to_value(&report).expect("serializable"))?;
            Ok(report.passed())
        }
    }
}

fn parse_property(name: &str, n: Option<usize>) -> Result<Property, CliError> {
    let prop = match name {
        "sn-factor" => Property::SnFactor { n: n.unwrap_or(2) },
        "p2-factor" => Property::P2Factor,
        "p3-factor" => Property::P3Factor,
        "p2-covered" => Property::P2Covered,
        "p3-covered" => Property::P3Covered,
        "p2p3-covered" => Property::P2P3Covered,
        other => {
            return Err(CliError::Usage(format!(
                "unknown property `{other}` (expected sn-factor, p2-factor, p3-factor, \
                 p2-covered, p3-covered or p2p3-covered)"
            )))
        }
    };
    if n.is_some() && !matches!(prop, Property::SnFactor { .. }) {
        return Err(CliError::Usage(format!("--n does not apply to {name}")));
    }
    Ok(prop)
}

fn analyze(
    graphs: &[Graph],
    r: usize,
    n: usize,
    json_path: &Option<PathBuf>,
) -> Result<bool, CliError> {
    if r < 2 {
        return Err(CliError::Usage(format!("--r must be >= 2, got {r}")));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be >= 2, got {n}")));
    }
    let mut all_good = true;
    let mut json_graphs = Vec::new();
    for (idx, g) in graphs.iter().enumerate() {
        if idx > 0 {
            println!();
        }
        let g6 = write_graph6(g)?;
        println!("graph = {g6}");
        println!("vertices = {}", g.n());
        println!("edges = {}", g.edge_count());
        let delta = match min_degree(g) {
            Ok(d) => {
                println!("min_degree = {d}");
                Some(d)
            }
            Err(_) => {
                println!("min_degree = undefined");
                None
            }
        };
        println!("connected = {}", g.is_connected());
        println!("factor_critical = {}", is_factor_critical(g));
        let star_witness = find_induced_star(g, r);
        match &star_witness {
            None => println!("k1r_free[r={r}] = true"),
            Some(w) => println!(
                "k1r_free[r={r}] = false center={} leaves={:?}",
                w.center, w.leaves
            ),
        }

        let mut decisions_json = serde_json::Map::new();
        let mut factors_json = serde_json::Map::new();
        let decisions: Vec<(String, Property)> = vec![
            (format!("sn-factor,n={n}"), Property::SnFactor { n }),
            ("p2-factor".into(), Property::P2Factor),
            ("p3-factor".into(), Property::P3Factor),
            ("p2-covered".into(), Property::P2Covered),
            ("p3-covered".into(), Property::P3Covered),
            ("p2p3-covered".into(), Property::P2P3Covered),
        ];
        for (label, prop) in decisions {
            match prop.decide(g) {
                Ok(d) => {
                    debug_assert!(d.witness.as_ref().is_none_or(|w| prop.revalidate(g, w)));
                    println!("decision[{label}] = {}", decision_text(&d));
                    if !d.verdict {
                        all_good = false;
                    }
                    if d.verdict && g.n() <= DEFAULT_SEARCH_CAP {
                        let factor = match prop {
                            Property::SnFactor { n } => find_sn_factor(g, n)?,
                            Property::P2Factor => find_pgek_factor(g, 2)?,
                            Property::P3Factor => find_pgek_factor(g, 3)?,
                            _ => None,
                        };
                        if let Some(f) = factor {
                            println!("factor[{label}] = {}", factor_text(&f));
                            factors_json
                                .insert(label.clone(), serde_json::to_value(&f).unwrap());
                        }
                    }
                    decisions_json.insert(label, serde_json::to_value(&d).unwrap());
                }
                Err(Error::Disconnected) => {
                    println!("decision[{label}] = skipped (disconnected)");
                    decisions_json.insert(label, json!("skipped"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        json_graphs.push(json!({
            "graph6": g6,
            "vertices": g.n(),
            "edges": g.edge_count(),
            "min_degree": delta,
            "connected": g.is_connected(),
            "factor_critical": is_factor_critical(g),
            "k1r_free": star_witness.is_none(),
            "k1r_witness": star_witness,
            "decisions": decisions_json,
            "factors": factors_json,
        }));
    }
    write_json(
        json_path,
        &json!({
            "tool": tool_version(),
            "command": "analyze",
            "r": r,
            "n": n,
            "graphs": json_graphs,
        }),
    )?;
    Ok(all_good)
}

fn decide(
    graphs: &[Graph],
    prop: Property,
    json_path: &Option<PathBuf>,
) -> Result<bool, CliError> {
    let mut all_good = true;
    let mut json_graphs = Vec::new();
    for g in graphs {
        let g6 = write_graph6(g)?;
        let d = prop.decide(g)?;
        debug_assert!(d.witness.as_ref().is_none_or(|w| prop.revalidate(g, w)));
        println!("{g6} {prop} = {}", decision_text(&d));
        if !d.verdict {
            all_good = false;
        }
        json_graphs.push(json!({ "graph6": g6, "decision": d }));
    }
    write_json(
        json_path,
        &json!({
            "tool": tool_version(),
            "command": "decide",
            "property": prop.to_string(),
            "graphs": json_graphs,
        }),
    )?;
    Ok(all_good)
}

fn construct(
    target: &str,
    r: usize,
    n: Option<usize>,
    json_path: &Option<PathBuf>,
) -> Result<bool, CliError> {
    if target.eq_ignore_ascii_case("sun") {
        let base = odd_cycle(r)?;
        let sun = big_sun(&base)?;
        let g6 = write_graph6(&sun)?;
        println!("construction = sun");
        println!("base_cycle = {r}");
        println!("graph = {g6}");
        println!("vertices = {}", sun.n());
        println!("edges = {}", sun.edge_count());
        write_json(
            json_path,
            &json!({
                "tool": tool_version(),
                "command": "construct",
                "construction": "sun",
                "base_cycle": r,
                "graph6": g6,
                "vertices": sun.n(),
            }),
        )?;
        return Ok(true);
    }

    let theorem = TheoremId::parse(target)?;
    let case = sharpness_graph(theorem, r, n)?;
    let g6 = write_graph6(&case.graph)?;
    println!("construction = {theorem}");
    println!("r = {r}");
    if let Some(n) = case.n {
        println!("n = {n}");
    }
    println!("graph = {g6}");
    println!("vertices = {}", case.graph.n());
    println!("min_degree = {}", case.expected_delta);
    println!("k1r_free[r={r}] = {}", is_k1r_free(&case.graph, r));
    println!("witness {}", witness_text(&case.expected_witness));
    println!("violating = {}", case.violating);
    write_json(
        json_path,
        &json!({
            "tool": tool_version(),
            "command": "construct",
            "construction": theorem.to_string(),
            "r": r,
            "n": case.n,
            "graph6": g6,
            "min_degree": case.expected_delta,
            "expected_witness": case.expected_witness,
            "violating": case.violating,
        }),
    )?;
    Ok(true)
}
