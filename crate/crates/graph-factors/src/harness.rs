//! Small-graph enumeration and the verification harness: sweep a theorem's
//! hypothesis over every small graph and check the concluded property, or
//! cross-check the characterization deciders against the brute-force factor
//! searches. Reports are deterministic for a fixed config at any parallelism
//! width: the population is evaluated in enumeration order and merged
//! order-preservingly.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    has_p3_factor, has_sn_factor, has_sn_factor_independent_form, is_p2_covered, is_p2p3_covered,
    is_p3_covered, ViolationWitness,
};
use crate::constructions::TheoremId;
use crate::error::{Error, Result};
use crate::format::write_graph6;
use crate::graph::{canonical_form, graph_from_label, is_k1r_free, min_degree, Graph};
use crate::search::{
    find_pgek_factor, find_sn_factor, is_covered_bruteforce, verify_factor, FactorFamily,
};

/// Cap for deduplicated enumeration (canonical extension).
pub const ENUM_DEDUP_CAP: usize = 9;
/// Cap for labeled enumeration (`2^(n(n-1)/2)` bitmasks).
pub const ENUM_LABELED_CAP: usize = 7;

fn tool_version() -> String {
    format!("graph-factors {}", env!("CARGO_PKG_VERSION"))
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("rayon pool")
            .install(f)
    }
}

/// Configuration of an enumeration sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub max_vertices: usize,
    /// One representative per isomorphism class instead of all labelings.
    pub dedup: bool,
    /// Restrict the population to connected graphs (covered-graph sweeps
    /// restrict regardless).
    pub connected_only: bool,
    /// Worker threads; 0 uses the global default pool.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_vertices: 7,
            dedup: true,
            connected_only: false,
            jobs: 0,
        }
    }
}

/// The labeled graph on `n` vertices whose upper-triangle bits (column
/// order) are the bits of `mask`.
pub fn graph_from_pair_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for col in 1..n {
        for row in 0..col {
            if mask & (1 << k) != 0 {
                edges.push((row, col));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("pair mask indices are in range")
}

/// One isomorphism-class representative per graph on exactly `levels`
/// vertices, for every level `1..=max`. Built by extending each `(k)`-vertex
/// representative with one new vertex over all neighbor masks and
/// deduplicating by canonical form; representatives are the canonically
/// labeled graphs, listed in label order.
fn classes_up_to(max: usize, jobs: usize) -> Result<Vec<Vec<Graph>>> {
    if max > ENUM_DEDUP_CAP {
        return Err(Error::GraphEnumerationCapExceeded {
            n: max,
            cap: ENUM_DEDUP_CAP,
        });
    }
    with_jobs(jobs, || {
        let mut levels: Vec<Vec<Graph>> = Vec::with_capacity(max);
        if max == 0 {
            return Ok(levels);
        }
        levels.push(vec![Graph::new(1)?]);
        for k in 1..max {
            let prev = &levels[k - 1];
            let labels: std::collections::BTreeSet<Vec<u8>> = prev
                .par_iter()
                .flat_map_iter(|g| {
                    (0u64..(1 << k)).map(move |mask| {
                        let mut edges = g.edges();
                        for v in 0..k {
                            if mask & (1 << v) != 0 {
                                edges.push((v, k));
                            }
                        }
                        let extended =
                            Graph::from_edges(k + 1, &edges).expect("extension stays in range");
                        canonical_form(&extended).expect("order is within the canonical cap")
                    })
                })
                .collect();
            levels.push(
                labels
                    .into_iter()
                    .map(|l| graph_from_label(&l).expect("labels decode"))
                    .collect(),
            );
        }
        Ok(levels)
    })
}

/// Graphs on exactly `n` vertices, in deterministic order. With `dedup`, one
/// representative per isomorphism class (canonical extension, `n <= 9`);
/// without, every labeled graph (`n <= 7`). Larger populations must be
/// supplied externally as graph6 input.
pub fn enumerate_graphs(n: usize, dedup: bool, connected_only: bool) -> Result<Vec<Graph>> {
    let graphs: Vec<Graph> = if dedup {
        classes_up_to(n, 0)?.pop().unwrap_or_default()
    } else {
        if n > ENUM_LABELED_CAP {
            return Err(Error::GraphEnumerationCapExceeded {
                n,
                cap: ENUM_LABELED_CAP,
            });
        }
        if n == 0 {
            Vec::new()
        } else {
            let pairs = n * (n - 1) / 2;
            (0u64..(1 << pairs))
                .map(|mask| graph_from_pair_mask(n, mask))
                .collect()
        }
    };
    Ok(if connected_only {
        graphs.into_iter().filter(|g| g.is_connected()).collect()
    } else {
        graphs
    })
}

enum Population {
    Classes(Vec<Graph>),
    Labeled { n: usize, count: u64 },
}

impl Population {
    fn for_size(size: usize, dedup: bool, levels: &[Vec<Graph>]) -> Result<Population> {
        if dedup {
            Ok(Population::Classes(levels[size - 1].clone()))
        } else {
            if size > ENUM_LABELED_CAP {
                return Err(Error::GraphEnumerationCapExceeded {
                    n: size,
                    cap: ENUM_LABELED_CAP,
                });
            }
            let pairs = size * (size - 1) / 2;
            Ok(Population::Labeled {
                n: size,
                count: 1 << pairs,
            })
        }
    }

    /// Evaluate in parallel, preserving enumeration order.
    fn evaluate<T: Send>(&self, eval: impl Fn(&Graph) -> T + Sync + Send) -> Vec<T> {
        match self {
            Population::Classes(graphs) => graphs.par_iter().map(eval).collect(),
            Population::Labeled { n, count } => (0..*count)
                .into_par_iter()
                .map(|mask| eval(&graph_from_pair_mask(*n, mask)))
                .collect(),
        }
    }
}

/// A graph failing a sweep, as graph6 plus its revalidated witness.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub witness: ViolationWitness,
}

/// Outcome of a [`verify_theorem`] sweep.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub tool: String,
    pub theorem: TheoremId,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Minimum degree actually required of the population (the theorem's
    /// bound minus the weakening).
    pub effective_bound: usize,
    pub weaken: usize,
    pub max_vertices: usize,
    pub dedup: bool,
    pub connected_only: bool,
    pub graphs_enumerated: usize,
    pub hypothesis_matches: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Not serialized: timing is reported separately so report bytes stay
    /// identical across parallelism widths.
    #[serde(skip)]
    pub wall_time: f64,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Line-delimited structured text, one record per key.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("tool", self.tool.clone());
        kv("report", "verify".into());
        kv("theorem", self.theorem.to_string());
        kv("r", self.r.to_string());
        if let Some(n) = self.n {
            kv("n", n.to_string());
        }
        kv("effective_bound", self.effective_bound.to_string());
        kv("weaken", self.weaken.to_string());
        kv("max_vertices", self.max_vertices.to_string());
        kv("dedup", self.dedup.to_string());
        kv("connected_only", self.connected_only.to_string());
        kv("graphs_enumerated", self.graphs_enumerated.to_string());
        kv("hypothesis_matches", self.hypothesis_matches.to_string());
        kv(
            "counterexample_count",
            self.counterexamples.len().to_string(),
        );
        for c in &self.counterexamples {
            let eps = c
                .witness
                .epsilon
                .map(|e| format!(" epsilon={e}"))
                .unwrap_or_default();
            kv(
                "counterexample",
                format!(
                    "{} set={} deficiency={} bound={}{}",
                    c.graph6, c.witness.set, c.witness.deficiency, c.witness.bound, eps
                ),
            );
        }
        kv(
            "verdict",
            if self.passed() { "pass" } else { "fail" }.into(),
        );
        out
    }
}

enum SweepOutcome {
    Skipped,
    NotHypothesis,
    Holds,
    Fails(Counterexample),
}

/// Enumerate every graph on `1..=max_vertices` vertices, keep those meeting
/// the theorem's hypothesis (`K_{1,r}`-free with minimum degree at least the
/// bound, lowered by `weaken`), and run the concluded property's decider on
/// each. Covered-graph theorems restrict the population to connected graphs.
pub fn verify_theorem(
    theorem: TheoremId,
    r: usize,
    n: Option<usize>,
    weaken: usize,
    config: &SweepConfig,
) -> Result<TheoremReport> {
    let start = Instant::now();
    let bound = theorem.degree_bound(r, n)?;
    let effective_bound = bound.saturating_sub(weaken);
    let property = theorem.property(n)?;
    let need_connected = theorem.requires_connected() || config.connected_only;
    if config.max_vertices == 0 {
        return Err(Error::invalid("max-vertices", "must be at least 1"));
    }
    let levels = if config.dedup {
        classes_up_to(config.max_vertices, config.jobs)?
    } else {
        Vec::new()
    };

    let mut graphs_enumerated = 0;
    let mut hypothesis_matches = 0;
    let mut counterexamples = Vec::new();
    with_jobs(config.jobs, || -> Result<()> {
        for size in 1..=config.max_vertices {
            let population = Population::for_size(size, config.dedup, &levels)?;
            let outcomes = population.evaluate(|g| {
                if need_connected && !g.is_connected() {
                    return SweepOutcome::Skipped;
                }
                if min_degree(g).expect("size >= 1") < effective_bound || !is_k1r_free(g, r) {
                    return SweepOutcome::NotHypothesis;
                }
                let decision = property
                    .decide(g)
                    .expect("population sizes are within the decider cap");
                match decision.witness {
                    None => SweepOutcome::Holds,
                    Some(witness) => {
                        debug_assert!(property.revalidate(g, &witness));
                        SweepOutcome::Fails(Counterexample {
                            graph6: write_graph6(g).expect("population fits graph6"),
                            witness,
                        })
                    }
                }
            });
            for outcome in outcomes {
                match outcome {
                    SweepOutcome::Skipped => {}
                    SweepOutcome::NotHypothesis => graphs_enumerated += 1,
                    SweepOutcome::Holds => {
                        graphs_enumerated += 1;
                        hypothesis_matches += 1;
                    }
                    SweepOutcome::Fails(c) => {
                        graphs_enumerated += 1;
                        hypothesis_matches += 1;
                        counterexamples.push(c);
                    }
                }
            }
        }
        Ok(())
    })?;

    Ok(TheoremReport {
        tool: tool_version(),
        theorem,
        r,
        n,
        effective_bound,
        weaken,
        max_vertices: config.max_vertices,
        dedup: config.dedup,
        connected_only: config.connected_only,
        graphs_enumerated,
        hypothesis_matches,
        counterexamples,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Configuration for [`oracle_crosscheck`].
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckConfig {
    /// Existence families are checked on all graphs up to this order.
    pub existence_max_vertices: usize,
    /// Covered families are checked on connected graphs up to this order.
    pub covered_max_vertices: usize,
    /// Star widths for the `S_n` checks.
    pub sn_values: Vec<usize>,
    pub jobs: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig {
            existence_max_vertices: 6,
            covered_max_vertices: 6,
            sn_values: vec![2, 3],
            jobs: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub check: String,
    pub graph6: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub tool: String,
    pub existence_max_vertices: usize,
    pub covered_max_vertices: usize,
    pub sn_values: Vec<usize>,
    pub existence_graphs_checked: usize,
    pub covered_graphs_checked: usize,
    pub disagreements: Vec<Disagreement>,
    #[serde(skip)]
    pub wall_time: f64,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("tool", self.tool.clone());
        kv("report", "oracle-check".into());
        kv(
            "existence_max_vertices",
            self.existence_max_vertices.to_string(),
        );
        kv("covered_max_vertices", self.covered_max_vertices.to_string());
        kv(
            "sn_values",
            self.sn_values
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        kv(
            "existence_graphs_checked",
            self.existence_graphs_checked.to_string(),
        );
        kv(
            "covered_graphs_checked",
            self.covered_graphs_checked.to_string(),
        );
        kv("disagreement_count", self.disagreements.len().to_string());
        for d in &self.disagreements {
            kv(
                "disagreement",
                format!("{} {} {}", d.check, d.graph6, d.detail),
            );
        }
        kv(
            "verdict",
            if self.passed() { "pass" } else { "fail" }.into(),
        );
        out
    }
}

/// Compare a decider against an oracle over a population; any disagreement
/// is reported with the offending graph. Also used by the harness self-test
/// with a deliberately corrupted decider.
pub fn crosscheck_population(
    check: &str,
    graphs: &[Graph],
    decider: impl Fn(&Graph) -> Result<bool> + Sync,
    oracle: impl Fn(&Graph) -> Result<bool> + Sync,
) -> Result<Vec<Disagreement>> {
    let results: Vec<Result<Option<Disagreement>>> = graphs
        .par_iter()
        .map(|g| {
            let d = decider(g)?;
            let o = oracle(g)?;
            if d == o {
                Ok(None)
            } else {
                Ok(Some(Disagreement {
                    check: check.to_string(),
                    graph6: write_graph6(g)?,
                    detail: format!("decider={d} oracle={o}"),
                }))
            }
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(d) = r? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Cross-validate every characterization decider against the brute-force
/// factor searches over the enumerated population, plus the internal
/// equivalences (the two `S_n` criteria, path-vs-star search for `P>=2`,
/// covered implies existence).
pub fn oracle_crosscheck(config: &CrosscheckConfig) -> Result<CrosscheckReport> {
    let start = Instant::now();
    let max = config.existence_max_vertices.max(config.covered_max_vertices);
    let levels = classes_up_to(max, config.jobs)?;

    let mut disagreements = Vec::new();
    let mut existence_checked = 0;
    let mut covered_checked = 0;

    with_jobs(config.jobs, || -> Result<()> {
        for size in 1..=config.existence_max_vertices {
            let graphs = &levels[size - 1];
            existence_checked += graphs.len();
            let found: Vec<Vec<Disagreement>> = graphs
                .par_iter()
                .map(|g| existence_checks(g, &config.sn_values))
                .collect::<Result<_>>()?;
            disagreements.extend(found.into_iter().flatten());
        }
        for size in 1..=config.covered_max_vertices {
            let connected: Vec<&Graph> =
                levels[size - 1].iter().filter(|g| g.is_connected()).collect();
            covered_checked += connected.len();
            let found: Vec<Vec<Disagreement>> = connected
                .par_iter()
                .map(|g| covered_checks(g))
                .collect::<Result<_>>()?;
            disagreements.extend(found.into_iter().flatten());
        }
        Ok(())
    })?;

    Ok(CrosscheckReport {
        tool: tool_version(),
        existence_max_vertices: config.existence_max_vertices,
        covered_max_vertices: config.covered_max_vertices,
        sn_values: config.sn_values.clone(),
        existence_graphs_checked: existence_checked,
        covered_graphs_checked: covered_checked,
        disagreements,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn existence_checks(g: &Graph, sn_values: &[usize]) -> Result<Vec<Disagreement>> {
    let mut out = Vec::new();
    let g6 = write_graph6(g)?;
    let mut mismatch = |check: &str, detail: String| {
        out.push(Disagreement {
            check: check.to_string(),
            graph6: g6.clone(),
            detail,
        });
    };

    for &n in sn_values {
        let decided = has_sn_factor(g, n)?.verdict;
        let independent = has_sn_factor_independent_form(g, n)?.verdict;
        let searched = find_sn_factor(g, n)?;
        if decided != searched.is_some() {
            mismatch(
                &format!("sn-factor(n={n})"),
                format!("decider={decided} search={}", searched.is_some()),
            );
        }
        if decided != independent {
            mismatch(
                &format!("sn-factor-criteria(n={n})"),
                format!("subset-form={decided} independent-form={independent}"),
            );
        }
        if let Some(f) = searched {
            if !verify_factor(g, &f) {
                mismatch(&format!("sn-factor-cert(n={n})"), "invalid factor".into());
            }
        }
    }

    let p2_path = find_pgek_factor(g, 2)?;
    let p2_star = find_sn_factor(g, 2)?;
    if p2_path.is_some() != p2_star.is_some() {
        mismatch(
            "p2-path-vs-star-search",
            format!("paths={} stars={}", p2_path.is_some(), p2_star.is_some()),
        );
    }
    // has_p2_factor delegates to the S_2 decider, so the path search is its
    // real counterweight
    if let Some(f) = &p2_path {
        if !verify_factor(g, f) {
            mismatch("p2-factor-cert", "invalid factor".into());
        }
    }

    let p3_decided = has_p3_factor(g)?.verdict;
    let p3_search = find_pgek_factor(g, 3)?;
    if p3_decided != p3_search.is_some() {
        mismatch(
            "p3-factor",
            format!("decider={p3_decided} search={}", p3_search.is_some()),
        );
    }
    if let Some(f) = &p3_search {
        if !verify_factor(g, f) {
            mismatch("p3-factor-cert", "invalid factor".into());
        }
    }

    Ok(out)
}

fn covered_checks(g: &Graph) -> Result<Vec<Disagreement>> {
    let mut out = Vec::new();
    let g6 = write_graph6(g)?;
    let mut mismatch = |check: &str, detail: String| {
        out.push(Disagreement {
            check: check.to_string(),
            graph6: g6.clone(),
            detail,
        });
    };

    let cases: [(&str, bool, FactorFamily); 3] = [
        (
            "p2-covered",
            is_p2_covered(g)?.verdict,
            FactorFamily::PathsAtLeast { min_order: 2 },
        ),
        (
            "p3-covered",
            is_p3_covered(g)?.verdict,
            FactorFamily::PathsAtLeast { min_order: 3 },
        ),
        ("p2p3-covered", is_p2p3_covered(g)?.verdict, FactorFamily::P2P3),
    ];
    for (name, decided, family) in cases {
        let brute = is_covered_bruteforce(g, family)?;
        if decided != brute {
            mismatch(name, format!("decider={decided} brute-force={brute}"));
        }
    }

    if g.edge_count() > 0 {
        let pairs = [
            ("p2-covered-implies-p2-factor", is_p2_covered(g)?.verdict, {
                has_sn_factor(g, 2)?.verdict
            }),
            ("p3-covered-implies-p3-factor", is_p3_covered(g)?.verdict, {
                has_p3_factor(g)?.verdict
            }),
            (
                "p2p3-covered-implies-s2-factor",
                is_p2p3_covered(g)?.verdict,
                has_sn_factor(g, 2)?.verdict,
            ),
        ];
        for (name, covered, exists) in pairs {
            if covered && !exists {
                mismatch(name, "covered without existence".into());
            }
        }
    }

    Ok(out)
}
