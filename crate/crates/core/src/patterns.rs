//! Named forbidden patterns and induced-subgraph containment.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::format;
use crate::graph::{Graph, VertexSet};

/// Largest pattern order accepted.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// Largest order [`is_perfect_small`] accepts.
pub const PERFECTION_MAX_VERTICES: usize = 16;

/// A small named graph used as a forbidden induced subgraph.
#[derive(Clone)]
pub struct Pattern {
    name: String,
    graph: Graph,
    plan: Arc<Plan>,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        if graph.n() > MAX_PATTERN_VERTICES {
            return Err(Error::Capacity { n: graph.n(), max: MAX_PATTERN_VERTICES });
        }
        let plan = Arc::new(Plan::new(&graph));
        Ok(Pattern { name: name.into(), graph, plan })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn path(t: usize) -> Self {
        Pattern::builtin(format!("P{t}"), Graph::path(t))
    }

    pub fn cycle(s: usize) -> Self {
        Pattern::builtin(format!("C{s}"), Graph::cycle(s))
    }

    pub fn complete(n: usize) -> Self {
        Pattern::builtin(format!("Kn:{n}"), Graph::complete(n))
    }

    pub fn p5() -> Self {
        Pattern::path(5)
    }

    pub fn p4() -> Self {
        Pattern::path(4)
    }

    pub fn c5() -> Self {
        Pattern::cycle(5)
    }

    /// `P4` plus a vertex adjacent to all four path vertices.
    pub fn gem() -> Self {
        let g = Graph::path(4).and_then(|p| p.add_vertex(VertexSet::full(4)));
        Pattern::builtin("gem", g)
    }

    /// The disjoint union of a 3-vertex path and an edge.
    pub fn p3_plus_p2() -> Self {
        Pattern::builtin("P3P2", Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]))
    }

    /// Complement of `P3 + P2`.
    pub fn co_p3_plus_p2() -> Self {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).map(|g| g.complement());
        Pattern::builtin("coP3P2", g)
    }

    pub fn two_p2() -> Self {
        Pattern::builtin("2P2", Graph::from_edges(4, &[(0, 1), (2, 3)]))
    }

    pub fn p1_plus_k3() -> Self {
        Pattern::builtin("P1K3", Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]))
    }

    pub fn p2_plus_p1() -> Self {
        Pattern::builtin("P2P1", Graph::from_edges(3, &[(0, 1)]))
    }

    /// `C4` with a pendant vertex.
    pub fn banner() -> Self {
        Pattern::builtin("banner", Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]))
    }

    fn builtin(name: impl Into<String>, g: Result<Graph>) -> Self {
        Pattern::new(name, g.expect("built-in pattern is well formed")).expect("built-in pattern is small")
    }

    /// Resolves a pattern name: `P5`, `gem`, `coP3P2`, `C5`, `P4`, `2P2`,
    /// `P1K3`, `P2P1`, `P3P2`, `banner`, `Kn:<n>`, `P<t>`, `C<s>`, `K<n>`,
    /// or a graph6 string.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let fixed = match name {
            "gem" => Some(Pattern::gem()),
            "coP3P2" | "co(P3+P2)" => Some(Pattern::co_p3_plus_p2()),
            "P3P2" | "P3+P2" => Some(Pattern::p3_plus_p2()),
            "2P2" => Some(Pattern::two_p2()),
            "P1K3" | "P1+K3" => Some(Pattern::p1_plus_k3()),
            "P2P1" | "P2+P1" => Some(Pattern::p2_plus_p1()),
            "banner" => Some(Pattern::banner()),
            _ => None,
        };
        if let Some(p) = fixed {
            return Ok(p);
        }
        let sized = |prefix: &str, lo: usize| -> Option<Result<usize>> {
            let rest = name.strip_prefix(prefix)?;
            let t: usize = rest.parse().ok()?;
            if t < lo || t > MAX_PATTERN_VERTICES {
                return Some(Err(Error::InvalidArgument(format!(
                    "pattern {name}: size must be in {lo}..={MAX_PATTERN_VERTICES}"
                ))));
            }
            Some(Ok(t))
        };
        if let Some(t) = sized("Kn:", 1) {
            return Ok(Pattern::complete(t?));
        }
        if let Some(t) = sized("P", 1) {
            return Ok(Pattern::path(t?));
        }
        if let Some(t) = sized("C", 3) {
            return Ok(Pattern::cycle(t?));
        }
        if let Some(t) = sized("K", 1) {
            return Ok(Pattern::complete(t?));
        }
        let g = format::parse_graph6(name)
            .map_err(|_| Error::InvalidArgument(format!("unknown pattern name '{name}'")))?;
        Pattern::new(name, g)
    }

    /// Parses a comma-separated list of pattern names.
    pub fn parse_list(names: &str) -> Result<Vec<Pattern>> {
        names
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Pattern::parse)
            .collect()
    }

    pub(crate) fn contains_through(&self, rows: &[VertexSet], anchor: usize) -> bool {
        let within = VertexSet::full(rows.len());
        self.plan.find_anchored(rows, within, anchor).is_some()
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({}: {:?})", self.name, self.graph)
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.graph == other.graph
    }
}

/// Precomputed backtracking orders for one pattern: a free order for plain
/// containment plus one order per anchor vertex.
#[derive(Debug)]
struct Plan {
    free: Order,
    anchored: Vec<Order>,
}

/// Pattern vertices in search order; `edge_to_prev[i]` / `non_edge_to_prev[i]`
/// list earlier positions that must be adjacent / nonadjacent.
#[derive(Debug)]
struct Order {
    vertices: Vec<usize>,
    edge_to_prev: Vec<Vec<usize>>,
    non_edge_to_prev: Vec<Vec<usize>>,
}

impl Plan {
    fn new(p: &Graph) -> Self {
        let start = (0..p.n()).max_by_key(|&v| (p.degree(v), std::cmp::Reverse(v)));
        let free = Order::new(p, start);
        // one anchor per automorphism orbit suffices
        let autos = crate::canon::canonical_labeling(p).automorphisms;
        let mut covered = VertexSet::EMPTY;
        let mut anchored = Vec::new();
        for a in 0..p.n() {
            if covered.contains(a) {
                continue;
            }
            let mut orbit = VertexSet::singleton(a);
            loop {
                let grown = orbit | orbit.iter().flat_map(|v| autos.iter().map(move |g| g[v])).collect();
                if grown == orbit {
                    break;
                }
                orbit = grown;
            }
            covered |= orbit;
            anchored.push(Order::new(p, Some(a)));
        }
        Plan { free, anchored }
    }

    fn find(&self, rows: &[VertexSet], within: VertexSet) -> Option<VertexSet> {
        let mut image = vec![0; self.free.vertices.len()];
        if self.free.extend(rows, within, &mut image, 0) {
            Some(image.iter().collect())
        } else {
            None
        }
    }

    fn find_anchored(&self, rows: &[VertexSet], within: VertexSet, anchor: usize) -> Option<VertexSet> {
        if !within.contains(anchor) {
            return None;
        }
        let mut image = vec![0; self.free.vertices.len()];
        for order in &self.anchored {
            image[0] = anchor;
            if order.extend(rows, within, &mut image, 1) {
                return Some(image.iter().collect());
            }
        }
        None
    }
}

impl Order {
    /// BFS order from `start`, continuing into later components by lowest
    /// index, so every position after the first in a component has an
    /// earlier neighbor.
    fn new(p: &Graph, start: Option<usize>) -> Self {
        let n = p.n();
        let mut vertices = Vec::with_capacity(n);
        let mut placed = VertexSet::EMPTY;
        let mut queue = std::collections::VecDeque::new();
        let mut seeds = start.into_iter().chain(0..n);
        while vertices.len() < n {
            let s = seeds.find(|&s| !placed.contains(s)).expect("unplaced vertex remains");
            placed.insert(s);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                vertices.push(v);
                for w in p.neighbors(v) - placed {
                    placed.insert(w);
                    queue.push_back(w);
                }
            }
        }
        let mut edge_to_prev = Vec::with_capacity(n);
        let mut non_edge_to_prev = Vec::with_capacity(n);
        for (i, &v) in vertices.iter().enumerate() {
            let (e, ne): (Vec<usize>, Vec<usize>) = (0..i).partition(|&j| p.has_edge(v, vertices[j]));
            edge_to_prev.push(e);
            non_edge_to_prev.push(ne);
        }
        Order { vertices, edge_to_prev, non_edge_to_prev }
    }

    fn extend(&self, rows: &[VertexSet], within: VertexSet, image: &mut [usize], i: usize) -> bool {
        if i == self.vertices.len() {
            return true;
        }
        let mut cand = within;
        for &j in &self.edge_to_prev[i] {
            cand &= rows[image[j]];
        }
        for &j in &self.non_edge_to_prev[i] {
            cand = cand - rows[image[j]];
        }
        for &m in &image[..i] {
            cand.remove(m);
        }
        for c in cand {
            image[i] = c;
            if self.extend(rows, within, image, i + 1) {
                return true;
            }
        }
        false
    }
}

/// An induced copy of `p` in `g`, as the set of host vertices it occupies.
/// The copy returned is the first one met when host vertices are tried in
/// ascending order along the pattern's search order.
pub fn contains_induced(g: &Graph, p: &Pattern) -> Option<VertexSet> {
    if p.graph.n() > g.n() {
        return None;
    }
    p.plan.find(g.rows(), g.vertices())
}

/// Like [`contains_induced`] for an arbitrary host-side graph `h`, without
/// the pattern size limit.
pub fn find_induced(g: &Graph, h: &Graph) -> Option<VertexSet> {
    if h.n() > g.n() {
        return None;
    }
    Plan::new(h).find(g.rows(), g.vertices())
}

pub fn is_free(g: &Graph, ps: &[Pattern]) -> bool {
    ps.iter().all(|p| contains_induced(g, p).is_none())
}

pub fn is_p4_free(g: &Graph) -> bool {
    is_p4_free_within(g, g.vertices())
}

pub(crate) fn is_p4_free_within(g: &Graph, within: VertexSet) -> bool {
    thread_local! {
        static P4: Pattern = Pattern::p4();
    }
    P4.with(|p| p.plan.find(g.rows(), within).is_none())
}

/// Whether `G[within]` has an induced `P4` through `v`.
pub(crate) fn has_p4_through(g: &Graph, within: VertexSet, v: usize) -> bool {
    thread_local! {
        static P4: Pattern = Pattern::p4();
    }
    P4.with(|p| p.plan.find_anchored(g.rows(), within, v).is_some())
}

/// The parts of `g` when it is complete multipartite (equivalently
/// `P2+P1`-free): the vertex sets of the components of the complement,
/// ordered by smallest member.
pub fn is_complete_multipartite(g: &Graph) -> Option<Vec<VertexSet>> {
    let parts = g.complement().components();
    parts.iter().all(|&part| g.is_independent(part)).then_some(parts)
}

/// Why a graph is imperfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImperfectionWitness {
    /// Vertices of an induced odd cycle of length at least 5, in cyclic order.
    OddHole(Vec<usize>),
    /// Vertices of an induced odd antihole, in cyclic order of the cycle in
    /// the complement.
    OddAntihole(Vec<usize>),
}

/// Perfection test by direct odd hole / odd antihole search.
pub fn is_perfect_small(g: &Graph) -> Result<std::result::Result<(), ImperfectionWitness>> {
    if g.n() > PERFECTION_MAX_VERTICES {
        return Err(Error::Capacity { n: g.n(), max: PERFECTION_MAX_VERTICES });
    }
    if let Some(c) = find_odd_hole(g) {
        return Ok(Err(ImperfectionWitness::OddHole(c)));
    }
    if let Some(c) = find_odd_hole(&g.complement()) {
        return Ok(Err(ImperfectionWitness::OddAntihole(c)));
    }
    Ok(Ok(()))
}

/// An induced odd cycle of length at least 5, in cyclic order, whose
/// smallest vertex is listed first.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut path = Vec::with_capacity(n);
    for s in 0..n {
        let allowed = VertexSet::full(n) - VertexSet::full(s + 1);
        path.clear();
        path.push(s);
        if hole_dfs(g, allowed, &mut path, VertexSet::EMPTY) {
            return Some(path);
        }
    }
    None
}

/// Extends the chordless path in `path` (starting at its minimum vertex).
/// `blocked` holds the vertices adjacent to some interior path vertex other
/// than the last one.
fn hole_dfs(g: &Graph, allowed: VertexSet, path: &mut Vec<usize>, blocked: VertexSet) -> bool {
    let s = path[0];
    let last = *path.last().expect("path is non-empty");
    let on_path: VertexSet = path.iter().collect();
    let cand = g.neighbors(last) & (allowed - on_path - blocked);
    for w in cand {
        let closes = g.has_edge(w, s) && path.len() >= 2;
        if closes {
            let len = path.len() + 1;
            if len >= 5 && len % 2 == 1 {
                path.push(w);
                return true;
            }
            continue;
        }
        let next_blocked = if path.len() >= 2 { blocked | g.neighbors(last) } else { blocked };
        path.push(w);
        if hole_dfs(g, allowed, path, next_blocked) {
            return true;
        }
        path.pop();
    }
    false
}
