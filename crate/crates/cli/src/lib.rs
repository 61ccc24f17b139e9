//! The `vcrit` command line, as a library so it can be driven in-process.
//!
//! Exit codes: 0 success, 1 invalid input or a failed check, 2 memory
//! budget exhausted during generation, 3 a negative verdict from `free`,
//! `decide` or `chi --colorable`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vcrit_core::coloring::{chromatic_number, clique_number, is_q_colorable};
use vcrit_core::corpus;
use vcrit_core::criticality::{audit, decide_by_critical_list, DEFAULT_DOMINATED_BOUND};
use vcrit_core::format::{emit_adjacency_list, emit_graph6, parse_many};
use vcrit_core::generation::{
    brute_force_reference, generate_observed, GenerationConfig, GenerationRun, PruneFlags,
};
use vcrit_core::patterns::contains_induced;
use vcrit_core::structure::{c5_claim_violations, c5_partition, induced_c5s};
use vcrit_core::{Error, Graph, Pattern};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

/// Version of the JSON report layout written by `generate --report`.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "vcrit", version, about = "Vertex-critical graph generation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Adj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Prune {
    ComparablePair,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate all k-vertex-critical graphs avoiding the patterns.
    Generate {
        #[arg(short)]
        k: usize,
        /// Comma-separated pattern names, or @FILE with one graph per line.
        #[arg(short = 'H', long = "patterns", default_value = "")]
        patterns: String,
        #[arg(short = 'n', long = "n-max")]
        n_max: usize,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        /// Memory budget for one level, in MiB.
        #[arg(long)]
        max_mem: Option<usize>,
        /// Enable a search restriction (repeatable).
        #[arg(long, value_enum)]
        prune: Vec<Prune>,
        /// Also extend disconnected intermediate graphs.
        #[arg(long)]
        all_components: bool,
        /// Suppress per-level progress on stderr.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Audit graphs for k-vertex-criticality, pattern-freeness and the
    /// obstructions a vertex-critical graph cannot have.
    Verify {
        #[arg(short)]
        k: usize,
        #[arg(short = 'H', long = "patterns", default_value = "")]
        patterns: String,
        /// Size bound for dominated vertex sets.
        #[arg(long, default_value_t = DEFAULT_DOMINATED_BOUND)]
        bound: usize,
        inputs: Vec<String>,
    },
    /// Check graphs for induced copies of the patterns.
    Free {
        #[arg(short = 'H', long = "patterns")]
        patterns: String,
        inputs: Vec<String>,
    },
    /// Chromatic number, clique number and an optimal coloring.
    Chi {
        /// Only decide whether the graph is Q-colorable.
        #[arg(long, value_name = "Q")]
        colorable: Option<usize>,
        inputs: Vec<String>,
    },
    /// Classify vertices by their neighborhood on induced five-cycles.
    Partition {
        /// Cycle vertices in cyclic order, e.g. 0,1,2,3,4; all induced
        /// five-cycles when omitted.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        /// Also check the class-structure facts and fail if any is violated.
        #[arg(long)]
        check: bool,
        inputs: Vec<String>,
    },
    /// Decide (k-1)-colorability from a complete list of k-vertex-critical
    /// graphs of the class.
    Decide {
        #[arg(short)]
        k: usize,
        /// File of critical graphs, or a bundled list name.
        #[arg(long)]
        list: String,
        inputs: Vec<String>,
    },
    /// Translate between graph6 and adjacency lists.
    Convert {
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        inputs: Vec<String>,
    },
    /// Enumerate all graphs up to n vertices and filter the critical ones.
    Oracle {
        #[arg(short)]
        k: usize,
        #[arg(short = 'H', long = "patterns", default_value = "")]
        patterns: String,
        #[arg(short = 'n', long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        /// Also run the generator and fail unless both agree.
        #[arg(long)]
        compare: bool,
    },
}

/// Failure carrying its exit code and message.
struct Exit {
    code: i32,
    msg: String,
}

impl Exit {
    fn fail(msg: impl Into<String>) -> Self {
        Exit { code: EXIT_FAILURE, msg: msg.into() }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded { .. }) { EXIT_BUDGET } else { EXIT_FAILURE };
        Exit { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Exit::fail(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Exit>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Exit { code, msg }) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Generate {
            k,
            patterns,
            n_max,
            workers,
            out: out_path,
            report,
            format,
            max_mem,
            prune,
            all_components,
            quiet,
        } => {
            let mut config = GenerationConfig::new(k, parse_patterns(&patterns)?, n_max);
            config.workers = workers;
            config.connected_only = !all_components;
            config.max_mem = max_mem.map(|m| m.saturating_mul(1 << 20));
            config.prune_flags = PruneFlags { comparable_pair: prune.contains(&Prune::ComparablePair) };
            let run = generate_observed(&config, |s| {
                if !quiet {
                    let _ = writeln!(
                        err,
                        "order {:>2}: frontier {:>9}, critical {:>4}, {:.3}s",
                        s.order,
                        s.frontier.len(),
                        s.critical.len(),
                        s.elapsed.as_secs_f64()
                    );
                }
            })?;
            let text = emit_all(&run.graphs(), format)?;
            match out_path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            if let Some(p) = report {
                let json = serde_json::to_string_pretty(&report_json(&run)).expect("report serializes");
                fs::write(p, json + "\n")?;
            }
            writeln!(err, "{} graphs {:?}", run.outputs.len(), run.per_order_counts)?;
            Ok(EXIT_OK)
        }
        Command::Verify { k, patterns, bound, inputs } => {
            let patterns = parse_patterns(&patterns)?;
            let graphs = read_graphs(&inputs)?;
            let mut first_failure = None;
            for (i, g) in graphs.iter().enumerate() {
                let a = audit(g, k, &patterns, bound)?;
                let failure = a.first_failure();
                let line = json!({ "index": i, "n": g.n(), "passes": a.passes(), "failure": failure, "audit": a });
                writeln!(out, "{line}")?;
                if first_failure.is_none() {
                    first_failure = failure.map(|f| format!("graph {i}: {f}"));
                }
            }
            match first_failure {
                Some(f) => Err(Exit::fail(f)),
                None => {
                    writeln!(err, "{} graphs pass", graphs.len())?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Free { patterns, inputs } => {
            let patterns = parse_patterns(&patterns)?;
            let mut all_free = true;
            for (i, g) in read_graphs(&inputs)?.iter().enumerate() {
                let hit = patterns.iter().find_map(|p| contains_induced(g, p).map(|occ| (p.name(), occ)));
                match hit {
                    Some((name, occ)) => {
                        all_free = false;
                        writeln!(out, "{i}: contains {name} at {:?}", occ.to_vec())?;
                    }
                    None => writeln!(out, "{i}: free")?,
                }
            }
            Ok(if all_free { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Chi { colorable, inputs } => {
            let mut all_yes = true;
            for (i, g) in read_graphs(&inputs)?.iter().enumerate() {
                match colorable {
                    Some(q) => match is_q_colorable(g, q) {
                        Some(col) => writeln!(out, "{i}: {q}-colorable {col:?}")?,
                        None => {
                            all_yes = false;
                            writeln!(out, "{i}: not {q}-colorable")?;
                        }
                    },
                    None => {
                        let c = chromatic_number(g)?;
                        let w = clique_number(g)?;
                        let line = json!({
                            "index": i,
                            "chi": c.chi,
                            "omega": w.omega,
                            "coloring": c.assignment,
                            "clique": w.witness,
                        });
                        writeln!(out, "{line}")?;
                    }
                }
            }
            Ok(if all_yes { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Partition { cycle, check, inputs } => {
            let mut violated = false;
            for (i, g) in read_graphs(&inputs)?.iter().enumerate() {
                let cycles = match &cycle {
                    Some(c) => {
                        let q: [usize; 5] = c
                            .as_slice()
                            .try_into()
                            .map_err(|_| Exit::fail("--cycle needs exactly five vertices"))?;
                        vec![q]
                    }
                    None => induced_c5s(g),
                };
                for q in cycles {
                    let p = c5_partition(g, q)?;
                    let classes: BTreeMap<String, Vec<usize>> =
                        p.classes().into_iter().map(|(name, s)| (name, s.to_vec())).collect();
                    let mut line = json!({ "index": i, "cycle": q, "classes": classes });
                    if check {
                        let bad = c5_claim_violations(g, &p);
                        violated |= !bad.is_empty();
                        line["violations"] = json!(bad);
                    }
                    writeln!(out, "{line}")?;
                }
            }
            if violated {
                return Err(Exit::fail("class-structure violations found"));
            }
            Ok(EXIT_OK)
        }
        Command::Decide { k, list, inputs } => {
            let crit = read_critical_list(&list)?;
            if let Some(h) = crit.iter().find(|h| chromatic_number(h).map(|c| c.chi) != Ok(k)) {
                return Err(Exit::fail(format!("list entry {} does not have chromatic number {k}", graph_label(h))));
            }
            let mut all_yes = true;
            for (i, g) in read_graphs(&inputs)?.iter().enumerate() {
                if decide_by_critical_list(g, &crit) {
                    writeln!(out, "{i}: {}-colorable", k - 1)?;
                } else {
                    all_yes = false;
                    writeln!(out, "{i}: not {}-colorable", k - 1)?;
                }
            }
            Ok(if all_yes { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Convert { format, inputs } => {
            out.write_all(emit_all(&read_graphs(&inputs)?, format)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Oracle { k, patterns, n_max, format, compare } => {
            let patterns = parse_patterns(&patterns)?;
            let reference = brute_force_reference(k, &patterns, n_max)?;
            let graphs: Vec<Graph> = reference.iter().map(|f| f.to_graph()).collect();
            out.write_all(emit_all(&graphs, format)?.as_bytes())?;
            if compare {
                let run = generate_observed(&GenerationConfig::new(k, patterns, n_max), |_| {})?;
                if run.outputs != reference {
                    return Err(Exit::fail(format!(
                        "generator found {} graphs, enumeration {}",
                        run.outputs.len(),
                        reference.len()
                    )));
                }
                writeln!(err, "generator agrees on {} graphs", reference.len())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn graph_label(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_else(|_| emit_adjacency_list(g))
}

fn emit_all(graphs: &[Graph], format: Format) -> std::result::Result<String, Exit> {
    let mut text = String::new();
    for g in graphs {
        match format {
            Format::G6 => text.push_str(&emit_graph6(g)?),
            Format::Adj => text.push_str(&emit_adjacency_list(g)),
        }
        text.push('\n');
    }
    Ok(text)
}

fn parse_patterns(spec: &str) -> std::result::Result<Vec<Pattern>, Exit> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.strip_prefix('@') {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Exit::fail(format!("{path}: {e}")))?;
                for (i, g) in parse_many(&text)?.into_iter().enumerate() {
                    out.push(Pattern::new(format!("{path}:{i}"), g)?);
                }
            }
            None => out.push(Pattern::parse(item)?),
        }
    }
    Ok(out)
}

fn read_critical_list(spec: &str) -> std::result::Result<Vec<Graph>, Exit> {
    if !Path::new(spec).exists() {
        if let Some(list) = corpus::by_name(spec) {
            return Ok(list.graphs());
        }
    }
    let text = fs::read_to_string(spec).map_err(|e| Exit::fail(format!("{spec}: {e}")))?;
    Ok(parse_many(&text)?)
}

/// Each input is a file path, `-` for standard input, or an inline graph.
/// With no inputs, standard input is read.
fn read_graphs(inputs: &[String]) -> std::result::Result<Vec<Graph>, Exit> {
    if inputs.is_empty() {
        return read_graphs(&["-".to_string()]);
    }
    let mut graphs = Vec::new();
    for input in inputs {
        if input == "-" {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            graphs.extend(parse_many(&text)?);
        } else if Path::new(input).is_file() {
            let text = fs::read_to_string(input).map_err(|e| Exit::fail(format!("{input}: {e}")))?;
            graphs.extend(parse_many(&text).map_err(|e| Exit::fail(format!("{input}: {e}")))?);
        } else {
            graphs.extend(
                parse_many(input).map_err(|e| Exit::fail(format!("{input}: not a file or a graph ({e})")))?,
            );
        }
    }
    Ok(graphs)
}

/// The JSON document written by `generate --report`.
pub fn report_json(run: &GenerationRun) -> serde_json::Value {
    let c = &run.config;
    json!({
        "schema": REPORT_SCHEMA,
        "config": {
            "k": c.k,
            "patterns": c.patterns.iter().map(Pattern::name).collect::<Vec<_>>(),
            "n_max": c.n_max,
            "connected_only": c.connected_only,
            "workers": c.workers,
            "prune_flags": c.prune_flags,
            "max_mem": c.max_mem,
        },
        "count": run.outputs.len(),
        "per_order_counts": run.per_order_counts,
        "frontier_sizes": run.frontier_sizes,
        "elapsed_ms": run.elapsed.as_millis() as u64,
    })
}
