//! Vertex- and edge-criticality checks, the structural obstructions every
//! vertex-critical graph avoids (clique cutsets, comparable vertices,
//! dominated vertex sets), and colorability decisions by critical lists.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::coloring::{chromatic_within, colorable_within};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{contains_induced, find_induced, Pattern};

/// Default size bound for [`find_dominated_pair`].
pub const DEFAULT_DOMINATED_BOUND: usize = 2;

/// `X` and `Y` with `X` anticomplete to `Y`, `Y` complete to `N(X)` and
/// `chi(G[X]) <= chi(G[Y])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DominatedPair {
    pub x: VertexSet,
    pub y: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub k: usize,
    pub is_vertex_critical: bool,
    pub chi: usize,
    /// A vertex whose deletion keeps the chromatic number.
    pub failing_vertex: Option<usize>,
    /// A clique whose removal disconnects the graph; the empty set when the
    /// graph is already disconnected.
    pub clique_cutset: Option<VertexSet>,
    pub comparable_pair: Option<(usize, usize)>,
    pub dominated_pair: Option<DominatedPair>,
    pub dominated_bound: usize,
}

impl CriticalityReport {
    /// No obstruction was found.
    pub fn obstruction_free(&self) -> bool {
        self.clique_cutset.is_none() && self.comparable_pair.is_none() && self.dominated_pair.is_none()
    }
}

pub fn is_k_vertex_critical(g: &Graph, k: usize) -> Result<CriticalityReport> {
    criticality_report(g, k, DEFAULT_DOMINATED_BOUND)
}

pub fn criticality_report(g: &Graph, k: usize, dominated_bound: usize) -> Result<CriticalityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let rows = g.rows();
    let all = g.vertices();
    let chi = chromatic_within(rows, all);
    // chi(G - v) = chi exactly when G - v is not (chi-1)-colorable
    let failing_vertex = (0..g.n()).find(|&v| !colorable_within(rows, all - VertexSet::singleton(v), chi - 1));
    let is_vertex_critical = chi == k && failing_vertex.is_none();
    let clique_cutset = if g.is_connected() { find_clique_cutset_unchecked(g) } else { Some(VertexSet::EMPTY) };
    Ok(CriticalityReport {
        k,
        is_vertex_critical,
        chi,
        failing_vertex,
        clique_cutset,
        comparable_pair: find_comparable_pair(g),
        dominated_pair: find_dominated_pair(g, dominated_bound),
        dominated_bound,
    })
}

/// Cheap vertex-criticality test used on generated candidates: `chi(G) = k`
/// must already be known by the caller.
pub(crate) fn deletions_drop_chi(rows: &[VertexSet], n: usize, k: usize) -> bool {
    let all = VertexSet::full(n);
    (0..n).all(|v| colorable_within(rows, all - VertexSet::singleton(v), k - 1))
}

pub fn is_k_edge_critical(g: &Graph, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidArgument("edge-criticality needs k >= 2".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if chromatic_within(g.rows(), g.vertices()) != k {
        return Ok(false);
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        let drops = colorable_within(h.rows(), h.vertices(), k - 1);
        h.try_add_edge(u, v)?;
        if !drops {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A clique `K` with `G - K` disconnected, for connected `g`.
///
/// Every clique cutset contains a clique minimal separator, so it suffices
/// to scan the minimal separators. The one returned is the smallest, ties
/// broken by its ascending vertex list.
pub fn find_clique_cutset(g: &Graph) -> Result<Option<VertexSet>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(find_clique_cutset_unchecked(g))
}

fn find_clique_cutset_unchecked(g: &Graph) -> Option<VertexSet> {
    minimal_separators(g)
        .into_iter()
        .filter(|&s| g.is_clique(s))
        .min_by_key(|s| (s.len(), s.to_vec()))
}

/// All minimal separators, generated by closing the separators `N(C)` for
/// components `C` of `G - N[v]` under `S -> N(C)` for components `C` of
/// `G - (S + N(x))`, `x` in `S`.
pub fn minimal_separators(g: &Graph) -> Vec<VertexSet> {
    let all = g.vertices();
    let mut seen: FxHashSet<VertexSet> = FxHashSet::default();
    let mut queue = Vec::new();
    let mut push = |s: VertexSet, queue: &mut Vec<VertexSet>| {
        if !s.is_empty() && seen.insert(s) {
            queue.push(s);
        }
    };
    for v in 0..g.n() {
        let closed = g.neighbors(v) | VertexSet::singleton(v);
        for c in g.components_within(all - closed) {
            push(g.neighborhood_of_set(c), &mut queue);
        }
    }
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for x in s {
            for c in g.components_within(all - s - g.neighbors(x)) {
                push(g.neighborhood_of_set(c), &mut queue);
            }
        }
        out.push(s);
    }
    out.sort_by_key(|s| (s.len(), s.to_vec()));
    out
}

/// Nonadjacent `(u, v)` with `N(u) ⊆ N(v)`; the first such pair in
/// lexicographic order of `(min, max)`.
pub fn find_comparable_pair(g: &Graph) -> Option<(usize, usize)> {
    for u in 0..g.n() {
        for v in (u + 1..g.n()).filter(|&v| !g.has_edge(u, v)) {
            let (nu, nv) = (g.neighbors(u), g.neighbors(v));
            if nu.is_subset(nv) {
                return Some((u, v));
            }
            if nv.is_subset(nu) {
                return Some((v, u));
            }
        }
    }
    None
}

/// Disjoint non-empty `X`, `Y` of size at most `max_size` forming a
/// [`DominatedPair`]. `X` is scanned by size then lexicographically, and for
/// each `X` the first qualifying `Y` in the same order is returned.
pub fn find_dominated_pair(g: &Graph, max_size: usize) -> Option<DominatedPair> {
    let rows = g.rows();
    let all = g.vertices();
    for x in subsets_up_to(all, max_size) {
        let nx = g.neighborhood_of_set(x);
        // Y avoids X and N(X) (so X and Y are anticomplete) and sees all of N(X)
        let cand: VertexSet = (all - x - nx).iter().filter(|&y| nx.is_subset(rows[y])).collect();
        if cand.is_empty() {
            continue;
        }
        let chi_x = chromatic_within(rows, x);
        for y in subsets_up_to(cand, max_size) {
            if chromatic_within(rows, y) >= chi_x {
                return Some(DominatedPair { x, y });
            }
        }
    }
    None
}

/// Non-empty subsets of `s` with at most `max` members, by size then by
/// ascending member list.
fn subsets_up_to(s: VertexSet, max: usize) -> impl Iterator<Item = VertexSet> {
    let members = s.to_vec();
    (1..=max.min(members.len())).flat_map(move |size| Combinations::new(members.clone(), size))
}

struct Combinations {
    items: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(items: Vec<usize>, size: usize) -> Self {
        let done = size > items.len();
        Combinations { items, idx: (0..size).collect(), done }
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let r = self.idx.len();
        match (0..r).rev().find(|&i| self.idx[i] != i + n - r) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Decides `(k-1)`-colorability of `g` from the complete list of
/// k-vertex-critical graphs of a hereditary class containing `g`: `g` is
/// `(k-1)`-colorable exactly when it contains none of them. Completeness of
/// `crit` is the caller's obligation (see [`audit_critical_list`]).
pub fn decide_by_critical_list(g: &Graph, crit: &[Graph]) -> bool {
    crit.iter().all(|h| find_induced(g, h).is_none())
}

/// One problem found with a critical-list entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListIssue {
    pub index: usize,
    pub problem: String,
}

/// Checks every entry is k-vertex-critical and free of `patterns`, and that
/// no two entries are isomorphic.
pub fn audit_critical_list(k: usize, patterns: &[Pattern], crit: &[Graph]) -> Result<Vec<ListIssue>> {
    let mut issues = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (i, g) in crit.iter().enumerate() {
        let rep = criticality_report(g, k, 1)?;
        if !rep.is_vertex_critical {
            issues.push(ListIssue { index: i, problem: format!("not {k}-vertex-critical (chi = {})", rep.chi) });
        }
        for p in patterns {
            if let Some(occ) = contains_induced(g, p) {
                issues.push(ListIssue { index: i, problem: format!("contains {} at {:?}", p.name(), occ) });
            }
        }
        if let Some(j) = seen.insert(crate::canon::canonical_form(g), i) {
            issues.push(ListIssue { index: i, problem: format!("isomorphic to entry {j}") });
        }
    }
    Ok(issues)
}

/// Everything checked about one graph by a verification pass.
#[derive(Clone, Debug, Serialize)]
pub struct Audit {
    pub report: CriticalityReport,
    /// Forbidden patterns found, with an occurrence each.
    pub pattern_hits: Vec<(String, VertexSet)>,
    pub min_degree: usize,
}

impl Audit {
    pub fn passes(&self) -> bool {
        self.report.is_vertex_critical
            && self.report.obstruction_free()
            && self.pattern_hits.is_empty()
            && self.min_degree + 1 >= self.report.k
    }

    /// The first reason this audit fails, if any.
    pub fn first_failure(&self) -> Option<String> {
        let r = &self.report;
        let keeps = r.failing_vertex.map(|v| format!("deleting vertex {v} keeps chi = {}", r.chi));
        if r.chi != r.k {
            let mut msg = format!("chi = {} but k = {}", r.chi, r.k);
            if let Some(k) = keeps {
                msg = format!("{msg}; {k}");
            }
            return Some(msg);
        }
        if keeps.is_some() {
            return keeps;
        }
        if let Some((name, occ)) = self.pattern_hits.first() {
            return Some(format!("contains {name} at {:?}", occ.to_vec()));
        }
        if let Some(c) = r.clique_cutset {
            return Some(format!("clique cutset {:?}", c.to_vec()));
        }
        if let Some((u, v)) = r.comparable_pair {
            return Some(format!("comparable vertices {u} and {v}"));
        }
        if let Some(d) = r.dominated_pair {
            return Some(format!("dominated pair X = {:?}, Y = {:?}", d.x.to_vec(), d.y.to_vec()));
        }
        if self.min_degree + 1 < r.k {
            return Some(format!("minimum degree {} below k - 1", self.min_degree));
        }
        None
    }
}

pub fn audit(g: &Graph, k: usize, patterns: &[Pattern], dominated_bound: usize) -> Result<Audit> {
    let report = criticality_report(g, k, dominated_bound)?;
    let pattern_hits = patterns
        .iter()
        .filter_map(|p| contains_induced(g, p).map(|occ| (p.name().to_string(), occ)))
        .collect();
    Ok(Audit { report, pattern_hits, min_degree: g.min_degree().unwrap_or(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_adjacency_list;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().collect()
    }

    fn wheel() -> Graph {
        parse_adjacency_list("{0: 1 4 5; 1: 0 2 5; 2: 1 3 5; 3: 2 4 5; 4: 0 3 5; 5: 0 1 2 3 4}").unwrap()
    }

    /// Brute force: every clique, checked for disconnecting the graph.
    fn clique_cutset_oracle(g: &Graph) -> bool {
        let all = g.vertices();
        (1u64..1 << g.n()).map(VertexSet).any(|k| {
            g.is_clique(k) && (all - k).len() >= 2 && !g.is_connected_within(all - k)
        })
    }

    #[test]
    fn vertex_criticality_examples() {
        let r = is_k_vertex_critical(&Graph::complete(4).unwrap(), 4).unwrap();
        assert!(r.is_vertex_critical);
        assert!(r.obstruction_free());
        let r = is_k_vertex_critical(&Graph::cycle(6).unwrap(), 3).unwrap();
        assert!(!r.is_vertex_critical);
        assert_eq!(r.chi, 2);
        assert!(r.failing_vertex.is_some());
        assert!(is_k_vertex_critical(&wheel(), 4).unwrap().is_vertex_critical);
        assert!(is_k_vertex_critical(&Graph::empty(0).unwrap(), 1).is_err());
        assert!(is_k_vertex_critical(&Graph::empty(1).unwrap(), 0).is_err());
        assert!(is_k_vertex_critical(&Graph::empty(1).unwrap(), 1).unwrap().is_vertex_critical);
        let r = is_k_vertex_critical(&Graph::empty(2).unwrap(), 1).unwrap();
        assert_eq!(r.failing_vertex, Some(0));
        assert_eq!(r.clique_cutset, Some(VertexSet::EMPTY));
    }

    #[test]
    fn edge_criticality_examples() {
        assert!(is_k_edge_critical(&Graph::cycle(5).unwrap(), 3).unwrap());
        assert!(is_k_edge_critical(&Graph::complete(4).unwrap(), 4).unwrap());
        assert!(is_k_edge_critical(&wheel(), 4).unwrap());
        assert!(!is_k_edge_critical(&Graph::cycle(6).unwrap(), 3).unwrap());
        let k4_plus = Graph::complete(4).unwrap().add_vertex(set(&[0])).unwrap();
        assert!(!is_k_edge_critical(&k4_plus, 4).unwrap());
        assert_eq!(is_k_edge_critical(&Graph::empty(3).unwrap(), 2), Err(Error::Edgeless));
    }

    #[test]
    fn clique_cutset_examples() {
        assert_eq!(find_clique_cutset(&Graph::path(3).unwrap()).unwrap(), Some(set(&[1])));
        assert_eq!(find_clique_cutset(&Graph::cycle(5).unwrap()).unwrap(), None);
        assert_eq!(find_clique_cutset(&Graph::empty(2).unwrap()), Err(Error::Disconnected));
        assert_eq!(find_clique_cutset(&Graph::complete(5).unwrap()).unwrap(), None);
        // two triangles sharing an edge: the shared edge separates
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(find_clique_cutset(&diamond).unwrap(), Some(set(&[1, 2])));
    }

    #[test]
    fn clique_cutset_agrees_with_clique_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 400 {
            let n = rng.gen_range(2..=9);
            let p = rng.gen_range(0.2..0.8);
            let mut g = Graph::empty(n).unwrap();
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(p) {
                        g.try_add_edge(i, j).unwrap();
                    }
                }
            }
            if !g.is_connected() {
                continue;
            }
            checked += 1;
            let found = find_clique_cutset(&g).unwrap();
            assert_eq!(found.is_some(), clique_cutset_oracle(&g), "{g:?}");
            if let Some(k) = found {
                assert!(g.is_clique(k) && !g.is_connected_within(g.vertices() - k));
            }
        }
    }

    #[test]
    fn comparable_pair_examples() {
        let k12 = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(find_comparable_pair(&k12), Some((1, 2)));
        assert_eq!(find_comparable_pair(&Graph::cycle(5).unwrap()), None);
        // pendant 3 on 0 in a triangle: N(3) = {0} ⊆ N(1)
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        assert_eq!(find_comparable_pair(&g), Some((3, 1)));
    }

    #[test]
    fn dominated_pair_examples() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(find_dominated_pair(&p4, 1), Some(DominatedPair { x: set(&[0]), y: set(&[2]) }));
        assert_eq!(find_dominated_pair(&Graph::cycle(5).unwrap(), 2), None);
        assert_eq!(find_dominated_pair(&wheel(), 2), None);
    }

    #[test]
    fn comparable_implies_singleton_dominated() {
        for g in [Graph::path(4).unwrap(), Graph::cycle(4).unwrap(), Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap()] {
            if find_comparable_pair(&g).is_some() {
                assert!(find_dominated_pair(&g, 1).is_some());
            }
        }
    }

    #[test]
    fn decide_examples() {
        let list = vec![
            Graph::complete(4).unwrap(),
            parse_adjacency_list("{0: 1 4 5; 1: 0 2 5 6; 2: 1 3 6; 3: 2 4 6; 4: 0 3 5; 5: 0 1 4; 6: 1 2 3}").unwrap(),
        ];
        assert!(decide_by_critical_list(&Graph::cycle(5).unwrap(), &list));
        assert!(!decide_by_critical_list(&Graph::complete(4).unwrap(), &list));
        assert!(!decide_by_critical_list(&list[1], &list));
    }

    #[test]
    fn list_audit_flags_bad_entries() {
        let list = vec![Graph::complete(4).unwrap(), Graph::cycle(5).unwrap(), Graph::complete(4).unwrap()];
        let issues = audit_critical_list(4, &[Pattern::p5()], &list).unwrap();
        assert!(issues.iter().any(|i| i.index == 1));
        assert!(issues.iter().any(|i| i.index == 2 && i.problem.contains("isomorphic")));
        assert!(!issues.iter().any(|i| i.index == 0));
    }

    #[test]
    fn combinations_are_ordered() {
        let got: Vec<Vec<usize>> = subsets_up_to(set(&[1, 4, 6]), 2).map(|s| s.to_vec()).collect();
        assert_eq!(got, vec![vec![1], vec![4], vec![6], vec![1, 4], vec![1, 6], vec![4, 6]]);
    }
}
