//! Exhaustive generation of k-vertex-critical graphs avoiding a set of
//! induced patterns, by level-wise vertex addition with isomorph rejection.
//!
//! Level `n` holds every connected, pattern-free, `(k-1)`-colorable graph on
//! `n` vertices up to isomorphism. A connected k-vertex-critical graph on
//! `n + 1` vertices minus a non-cutvertex is such a graph, so extending each
//! level by every possible neighborhood of a new vertex reaches all of them.

use std::collections::BTreeMap;
use std::hash::{BuildHasher, Hash};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashSet};
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::coloring::{chromatic_number, color_within, colorable_within};
use crate::criticality::deletions_drop_chi;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::patterns::{is_free, Pattern, MAX_PATTERN_VERTICES};

/// Optional search restrictions. Each one keeps the output complete.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneFlags {
    /// When an intermediate graph has nonadjacent `u`, `v` with
    /// `N(u) ⊆ N(v)`, only add vertices adjacent to `u` and not to `v`.
    /// Every k-vertex-critical supergraph must contain such a vertex, since
    /// otherwise `u` could take the color of `v`.
    pub comparable_pair: bool,
}

#[derive(Clone, Debug)]
pub struct GenerationConfig {
    pub k: usize,
    pub patterns: Vec<Pattern>,
    pub n_max: usize,
    pub connected_only: bool,
    /// Worker threads; 0 uses one per available core.
    pub workers: usize,
    pub prune_flags: PruneFlags,
    /// Bound on the bytes held by one level's deduplication set.
    pub max_mem: Option<usize>,
}

impl GenerationConfig {
    pub fn new(k: usize, patterns: Vec<Pattern>, n_max: usize) -> Self {
        GenerationConfig {
            k,
            patterns,
            n_max,
            connected_only: true,
            workers: 0,
            prune_flags: PruneFlags::default(),
            max_mem: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if self.n_max > MAX_VERTICES {
            return Err(Error::Capacity { n: self.n_max, max: MAX_VERTICES });
        }
        if let Some(p) = self.patterns.iter().find(|p| p.graph().n() > MAX_PATTERN_VERTICES) {
            return Err(Error::InvalidArgument(format!(
                "pattern {} has more than {MAX_PATTERN_VERTICES} vertices",
                p.name()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GenerationRun {
    pub config: GenerationConfig,
    /// Sorted by order, then by canonical form.
    pub outputs: Vec<CanonicalForm>,
    pub per_order_counts: BTreeMap<usize, usize>,
    /// Number of extendable intermediates kept at each order.
    pub frontier_sizes: BTreeMap<usize, usize>,
    pub elapsed: Duration,
}

impl GenerationRun {
    pub fn graphs(&self) -> Vec<Graph> {
        self.outputs.iter().map(CanonicalForm::to_graph).collect()
    }
}

/// One finished level, passed to the observer of [`generate_observed`].
#[derive(Clone, Copy, Debug)]
pub struct LevelReport<'a> {
    pub order: usize,
    /// Extendable graphs kept at this order.
    pub frontier: &'a [CanonicalForm],
    /// Critical graphs found at this order.
    pub critical: &'a [CanonicalForm],
    /// Time since the run started.
    pub elapsed: Duration,
}

pub fn generate(config: &GenerationConfig) -> Result<GenerationRun> {
    generate_observed(config, |_| {})
}

/// [`generate`], reporting each completed level to `observe`.
pub fn generate_observed(config: &GenerationConfig, mut observe: impl FnMut(&LevelReport)) -> Result<GenerationRun> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut outputs = Vec::new();
    let mut frontier_sizes = BTreeMap::new();
    let mut frontier: Vec<CanonicalForm> = Vec::new();

    if config.n_max >= 1 && config.patterns.iter().all(|p| p.graph().n() > 1) {
        let k1 = Graph::empty(1)?;
        if config.k == 1 {
            outputs.push(canonical_form(&k1));
        } else {
            frontier.push(canonical_form(&k1));
        }
    }
    frontier_sizes.insert(1, frontier.len());
    if config.n_max >= 1 {
        observe(&LevelReport { order: 1, frontier: &frontier, critical: &outputs, elapsed: start.elapsed() });
    }

    for n in 1..config.n_max {
        if frontier.is_empty() {
            break;
        }
        let level = pool.install(|| expand_level(config, &frontier, n + 1))?;
        frontier = level.frontier;
        frontier_sizes.insert(n + 1, frontier.len());
        observe(&LevelReport { order: n + 1, frontier: &frontier, critical: &level.critical, elapsed: start.elapsed() });
        outputs.extend(level.critical);
    }

    outputs.sort();
    let mut per_order_counts = BTreeMap::new();
    for f in &outputs {
        *per_order_counts.entry(f.n()).or_insert(0) += 1;
    }
    Ok(GenerationRun { config: config.clone(), outputs, per_order_counts, frontier_sizes, elapsed: start.elapsed() })
}

struct Level {
    frontier: Vec<CanonicalForm>,
    critical: Vec<CanonicalForm>,
}

const SHARDS: usize = 64;

/// Hash set split into independently locked shards.
struct ShardedSet {
    shards: Vec<Mutex<FxHashSet<CanonicalForm>>>,
    hasher: FxBuildHasher,
}

impl ShardedSet {
    fn new() -> Self {
        ShardedSet { shards: (0..SHARDS).map(|_| Mutex::new(FxHashSet::default())).collect(), hasher: FxBuildHasher }
    }

    fn insert(&self, f: CanonicalForm) -> bool {
        let mut h = self.hasher.build_hasher();
        f.hash(&mut h);
        let shard = std::hash::Hasher::finish(&h) as usize % SHARDS;
        self.shards[shard].lock().expect("shard lock").insert(f)
    }

    fn into_sorted(self) -> Vec<CanonicalForm> {
        let mut out: Vec<CanonicalForm> =
            self.shards.into_iter().flat_map(|s| s.into_inner().expect("shard lock")).collect();
        out.par_sort_unstable();
        out
    }
}

/// Rough per-entry cost of a hash set of canonical forms.
fn entry_bytes(f: &CanonicalForm) -> usize {
    f.size_in_bytes() + 16
}

fn expand_level(config: &GenerationConfig, parents: &[CanonicalForm], order: usize) -> Result<Level> {
    let k = config.k;
    let extendable = ShardedSet::new();
    let candidates = ShardedSet::new();
    let bytes = AtomicUsize::new(0);
    let over_budget = AtomicBool::new(false);
    let budget = config.max_mem.unwrap_or(usize::MAX);

    parents.par_iter().for_each(|parent| {
        if over_budget.load(Ordering::Relaxed) {
            return;
        }
        let g = parent.to_graph();
        let n = g.n();
        let classes = color_within(g.rows(), g.vertices(), k - 1).expect("frontier graphs are (k-1)-colorable");
        let (must, must_not) = match config.prune_flags.comparable_pair {
            true => comparable_pair_rows(g.rows()).map_or((VertexSet::EMPTY, VertexSet::EMPTY), |(u, v)| {
                (VertexSet::singleton(u), VertexSet::singleton(v))
            }),
            false => (VertexSet::EMPTY, VertexSet::EMPTY),
        };
        let mut rows: Vec<VertexSet> = g.rows().to_vec();
        rows.push(VertexSet::EMPTY);
        let first = if config.connected_only { 1 } else { 0 };
        for mask in first..1u64 << n {
            let s = VertexSet(mask);
            if !must.is_subset(s) || s.intersects(must_not) {
                continue;
            }
            for (i, row) in rows.iter_mut().enumerate().take(n) {
                *row = g.neighbors(i);
                if s.contains(i) {
                    row.insert(n);
                }
            }
            rows[n] = s;
            if config.patterns.iter().any(|p| p.contains_through(&rows, n)) {
                continue;
            }
            // a color class missing from N(new) extends the parent's coloring
            let lower = classes.len() < k - 1
                || classes.iter().any(|c| !c.intersects(s))
                || colorable_within(&rows, VertexSet::full(n + 1), k - 1);
            if !lower && (s.len() < k - 1 || has_comparable_pair(&rows)) {
                continue;
            }
            let form = canonical_form(&Graph::from_rows_unchecked(rows.clone()));
            let size = entry_bytes(&form);
            let fresh = if lower { extendable.insert(form) } else { candidates.insert(form) };
            if fresh && lower && bytes.fetch_add(size, Ordering::Relaxed) + size > budget {
                over_budget.store(true, Ordering::Relaxed);
                return;
            }
        }
    });
    if over_budget.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { level: order, budget });
    }

    let critical: Vec<CanonicalForm> = candidates
        .into_sorted()
        .into_par_iter()
        .filter(|f| deletions_drop_chi(f.to_graph().rows(), f.n(), k))
        .collect();
    Ok(Level { frontier: extendable.into_sorted(), critical })
}

fn comparable_pair_rows(rows: &[VertexSet]) -> Option<(usize, usize)> {
    let n = rows.len();
    for u in 0..n {
        for v in (u + 1..n).filter(|&v| !rows[u].contains(v)) {
            if rows[u].is_subset(rows[v]) {
                return Some((u, v));
            }
            if rows[v].is_subset(rows[u]) {
                return Some((v, u));
            }
        }
    }
    None
}

fn has_comparable_pair(rows: &[VertexSet]) -> bool {
    comparable_pair_rows(rows).is_some()
}

/// Largest order accepted by [`all_graphs`] and [`brute_force_reference`].
pub const BRUTE_FORCE_MAX: usize = 8;

/// Every graph on `n` vertices up to isomorphism, sorted.
pub fn all_graphs(n: usize) -> Result<Vec<CanonicalForm>> {
    if n > BRUTE_FORCE_MAX + 1 {
        return Err(Error::InvalidArgument(format!("exhaustive enumeration is limited to {} vertices", BRUTE_FORCE_MAX + 1)));
    }
    let mut level = vec![canonical_form(&Graph::empty(0)?)];
    for _ in 0..n {
        let next: FxHashSet<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|f| {
                let g = f.to_graph();
                (0..1u64 << g.n()).map(move |mask| canonical_form(&g.add_vertex(VertexSet(mask)).expect("within capacity")))
            })
            .collect();
        level = next.into_iter().collect();
        level.par_sort_unstable();
    }
    Ok(level)
}

/// All k-vertex-critical graphs on at most `n_max` vertices avoiding
/// `patterns`, by filtering the complete enumeration of graphs. Used to check
/// [`generate`].
pub fn brute_force_reference(k: usize, patterns: &[Pattern], n_max: usize) -> Result<Vec<CanonicalForm>> {
    if n_max > BRUTE_FORCE_MAX {
        return Err(Error::InvalidArgument(format!("n_max must be at most {BRUTE_FORCE_MAX}")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        let found: Vec<CanonicalForm> = all_graphs(n)?
            .into_par_iter()
            .filter(|f| {
                let g = f.to_graph();
                is_free(&g, patterns) && is_vertex_critical_by_chi(&g, k)
            })
            .collect();
        out.extend(found);
    }
    out.sort();
    Ok(out)
}

/// Direct definition: `chi(G) = k` and `chi(G - v) < k` for every `v`.
fn is_vertex_critical_by_chi(g: &Graph, k: usize) -> bool {
    let chi = |h: &Graph| if h.n() == 0 { 0 } else { chromatic_number(h).expect("non-empty").chi };
    chi(g) == k && g.vertices().iter().all(|v| chi(&g.remove_vertex(v).expect("in range")) < k)
}

/// Outcome of comparing generated graphs with a reference list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusMatch {
    /// `(corpus index, output index)` pairs of isomorphic graphs.
    pub matched: Vec<(usize, usize)>,
    pub unmatched_outputs: Vec<usize>,
    pub unmatched_corpus: Vec<usize>,
}

impl CorpusMatch {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_outputs.is_empty() && self.unmatched_corpus.is_empty()
    }
}

/// Pairs `outputs` with `corpus` up to isomorphism. Outputs whose order lies
/// outside the corpus's order range are ignored.
pub fn match_against_corpus(outputs: &[CanonicalForm], corpus: &[Graph]) -> CorpusMatch {
    let lo = corpus.iter().map(Graph::n).min().unwrap_or(0);
    let hi = corpus.iter().map(Graph::n).max().unwrap_or(0);
    let mut report = CorpusMatch::default();
    let mut taken = vec![false; outputs.len()];
    for (ci, g) in corpus.iter().enumerate() {
        let form = canonical_form(g);
        match outputs.iter().enumerate().find(|&(oi, o)| !taken[oi] && *o == form) {
            Some((oi, _)) => {
                taken[oi] = true;
                report.matched.push((ci, oi));
            }
            None => report.unmatched_corpus.push(ci),
        }
    }
    report.unmatched_outputs = outputs
        .iter()
        .enumerate()
        .filter(|&(oi, o)| !taken[oi] && (lo..=hi).contains(&o.n()))
        .map(|(oi, _)| oi)
        .collect();
    report
}
