//! Structure around induced five-cycles, homogeneous sets, the seven-part
//! class of (P5, gem)-free graphs, and substitution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{has_p4_through, is_complete_multipartite};

/// Largest order for which [`find_homogeneous_sets`] enumerates subsets.
pub const HOMOGENEOUS_BRUTE_FORCE_MAX: usize = 12;

/// Vertices outside an induced cycle `Q = q0 .. q4` classified by their
/// neighborhood on `Q`. Indices are taken mod 5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C5Partition {
    pub q: [usize; 5],
    /// No neighbor on `Q`.
    pub z: VertexSet,
    /// `c[i]` sees exactly `{q(i-1), q(i+1)}`.
    pub c: [VertexSet; 5],
    /// `y[i]` sees exactly `{q(i-2), q(i), q(i+2)}`.
    pub y: [VertexSet; 5],
    /// `t[i]` sees exactly `{q(i-1), q(i), q(i+1)}`.
    pub t: [VertexSet; 5],
    /// `f[i]` sees all of `Q` except `q(i)`.
    pub f: [VertexSet; 5],
    /// Complete to `Q`.
    pub u: VertexSet,
    /// Any other neighborhood on `Q`.
    pub other: VertexSet,
}

impl C5Partition {
    /// Named classes in a fixed order: `Q`, `Z`, `C0..C4`, `Y0..Y4`,
    /// `T0..T4`, `F0..F4`, `U`, `other`.
    pub fn classes(&self) -> Vec<(String, VertexSet)> {
        let mut out = vec![("Q".to_string(), self.q.iter().collect()), ("Z".to_string(), self.z)];
        for (name, arr) in [("C", &self.c), ("Y", &self.y), ("T", &self.t), ("F", &self.f)] {
            for (i, s) in arr.iter().enumerate() {
                out.push((format!("{name}{i}"), *s));
            }
        }
        out.push(("U".to_string(), self.u));
        out.push(("other".to_string(), self.other));
        out
    }
}

fn idx(i: isize) -> usize {
    i.rem_euclid(5) as usize
}

/// Bit mask over cycle positions `{i + d : d in offsets}`.
fn positions(i: usize, offsets: &[isize]) -> u8 {
    offsets.iter().fold(0, |m, &d| m | 1 << idx(i as isize + d))
}

/// Checks that `q` is an induced five-cycle in cyclic order.
pub fn check_induced_c5(g: &Graph, q: [usize; 5]) -> Result<()> {
    let set: VertexSet = q.iter().collect();
    if set.len() != 5 {
        return Err(Error::InvalidArgument("cycle vertices must be distinct".into()));
    }
    g.check_set(set)?;
    for i in 0..5 {
        let (a, b, c) = (q[i], q[(i + 1) % 5], q[(i + 2) % 5]);
        if !g.has_edge(a, b) || g.has_edge(a, c) {
            return Err(Error::InvalidArgument(format!("{q:?} is not an induced C5 in cyclic order")));
        }
    }
    Ok(())
}

pub fn c5_partition(g: &Graph, q: [usize; 5]) -> Result<C5Partition> {
    check_induced_c5(g, q)?;
    let mut p = C5Partition {
        q,
        z: VertexSet::EMPTY,
        c: [VertexSet::EMPTY; 5],
        y: [VertexSet::EMPTY; 5],
        t: [VertexSet::EMPTY; 5],
        f: [VertexSet::EMPTY; 5],
        u: VertexSet::EMPTY,
        other: VertexSet::EMPTY,
    };
    let on_q: VertexSet = q.iter().collect();
    for v in g.vertices() - on_q {
        let seen: u8 = (0..5).filter(|&i| g.has_edge(v, q[i])).fold(0, |m, i| m | 1 << i);
        let slot = if seen == 0 {
            &mut p.z
        } else if seen == 0b11111 {
            &mut p.u
        } else if let Some(i) = (0..5).find(|&i| seen == positions(i, &[-1, 1])) {
            &mut p.c[i]
        } else if let Some(i) = (0..5).find(|&i| seen == positions(i, &[-2, 0, 2])) {
            &mut p.y[i]
        } else if let Some(i) = (0..5).find(|&i| seen == positions(i, &[-1, 0, 1])) {
            &mut p.t[i]
        } else if let Some(i) = (0..5).find(|&i| seen == 0b11111 & !(1 << i)) {
            &mut p.f[i]
        } else {
            &mut p.other
        };
        slot.insert(v);
    }
    Ok(p)
}

/// Every induced five-cycle, once each, as `[q0, .., q4]` with `q0` the
/// smallest vertex and `q1 < q4`.
pub fn induced_c5s(g: &Graph) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        let later = g.vertices() - VertexSet::full(a + 1);
        for b in g.neighbors(a) & later {
            for e in (g.neighbors(a) & later) - g.neighbors(b) {
                if e <= b {
                    continue;
                }
                let cs = (g.neighbors(b) & later) - g.neighbors(a) - g.neighbors(e) - VertexSet::singleton(e);
                for c in cs {
                    let ds = (g.neighbors(c) & g.neighbors(e) & later) - g.neighbors(a) - g.neighbors(b);
                    for d in ds {
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out
}

/// Structural facts about a [`C5Partition`] that hold in every
/// k-vertex-critical (P5, co(P3+P2))-free graph that is not complete, for
/// every induced five-cycle. Returns a description of each violated fact.
pub fn c5_claim_violations(g: &Graph, p: &C5Partition) -> Vec<String> {
    let mut bad = Vec::new();
    let mut require = |ok: bool, what: String| {
        if !ok {
            bad.push(what);
        }
    };
    require(p.other.is_empty(), format!("unclassified vertices {:?}", p.other.to_vec()));
    let c_all = p.c.iter().fold(VertexSet::EMPTY, |a, &b| a | b);
    let t_all = p.t.iter().fold(VertexSet::EMPTY, |a, &b| a | b);
    for i in 0..5 {
        let next = (i + 1) % 5;
        let prev = (i + 4) % 5;
        require(g.is_clique(p.y[i] | p.u), format!("Y{i} + U is not a clique"));
        require(g.is_clique(p.f[i] | p.u), format!("F{i} + U is not a clique"));
        require(g.is_independent(p.c[i]), format!("C{i} is not independent"));
        require(g.is_independent(p.y[i]), format!("Y{i} is not independent"));
        require(g.is_independent(p.f[i]), format!("F{i} is not independent"));
        require(g.is_complete_to(p.c[i], p.c[next]), format!("C{i} not complete to C{next}"));
        require(g.is_complete_to(p.c[i], p.t[i]), format!("C{i} not complete to T{i}"));
        require(g.is_anticomplete_to(p.c[i], p.t[next]), format!("C{i} not anticomplete to T{next}"));
        require(g.is_anticomplete_to(p.c[i], p.t[prev]), format!("C{i} not anticomplete to T{prev}"));
        for j in [(i + 2) % 5, (i + 3) % 5] {
            let mixed = p.t[j].iter().any(|v| is_mixed_unchecked(g, v, p.c[i]));
            require(!mixed, format!("a vertex of T{j} is mixed on C{i}"));
        }
        require(
            is_complete_multipartite(&g.induced_unchecked(p.t[i])).is_some(),
            format!("T{i} is not complete multipartite"),
        );
        require(g.is_complete_to(p.t[i], p.t[next]), format!("T{i} not complete to T{next}"));
    }
    require(g.is_independent(p.z), "Z is not independent".to_string());
    require(g.is_anticomplete_to(p.z, c_all | t_all), "Z is not anticomplete to C + T".to_string());
    bad
}

/// Whether `v` has both a neighbor and a non-neighbor in `s`.
pub fn is_mixed(g: &Graph, v: usize, s: VertexSet) -> Result<bool> {
    g.check_vertex(v)?;
    g.check_set(s)?;
    if s.is_empty() {
        return Err(Error::InvalidArgument("set must be non-empty".into()));
    }
    if s.contains(v) {
        return Err(Error::InvalidArgument(format!("vertex {v} lies in the set")));
    }
    Ok(is_mixed_unchecked(g, v, s))
}

fn is_mixed_unchecked(g: &Graph, v: usize, s: VertexSet) -> bool {
    let seen = g.neighbors(v) & s;
    !seen.is_empty() && seen != s
}

pub fn is_homogeneous(g: &Graph, s: VertexSet) -> bool {
    (g.vertices() - s).iter().all(|v| !is_mixed_unchecked(g, v, s))
}

/// The inclusion-maximal homogeneous sets `S` with `1 < |S| < n`, ordered by
/// ascending member list.
pub fn find_homogeneous_sets(g: &Graph) -> Vec<VertexSet> {
    if g.n() <= HOMOGENEOUS_BRUTE_FORCE_MAX {
        homogeneous_sets_brute_force(g)
    } else {
        homogeneous_sets_modular(g)
    }
}

/// Subset enumeration; exponential in `n`.
pub fn homogeneous_sets_brute_force(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    if n > 20 {
        return homogeneous_sets_modular(g);
    }
    let all: Vec<VertexSet> = (0u64..1 << n)
        .map(VertexSet)
        .filter(|s| s.len() > 1 && s.len() < n && is_homogeneous(g, *s))
        .collect();
    let mut out: Vec<VertexSet> = all
        .iter()
        .copied()
        .filter(|&s| !all.iter().any(|&t| t != s && s.is_subset(t)))
        .collect();
    out.sort_by_key(|s| s.to_vec());
    out
}

/// Top level of the modular decomposition. When `G` or its complement is
/// disconnected with parts `P1..Pm`, the maximal proper modules are the
/// parts (`m = 2`) or the complements `V - Pi` (`m >= 3`); otherwise they
/// are the maximal strong modules, recovered from the smallest modules
/// containing each vertex pair.
pub fn homogeneous_sets_modular(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let all = g.vertices();
    if n < 3 {
        return Vec::new();
    }
    let comps = g.components();
    let co_comps = if comps.len() > 1 { Vec::new() } else { g.complement().components() };
    let parts = if comps.len() > 1 { comps } else { co_comps };
    let mut out: Vec<VertexSet> = if parts.len() == 2 {
        parts.into_iter().filter(|p| p.len() > 1).collect()
    } else if parts.len() > 2 {
        parts.iter().map(|&p| all - p).collect()
    } else {
        let mut children = Vec::new();
        let mut covered = VertexSet::EMPTY;
        for u in 0..n {
            if covered.contains(u) {
                continue;
            }
            let mut child = VertexSet::singleton(u);
            for v in (0..n).filter(|&v| v != u) {
                if module_closure(g, VertexSet::singleton(u) | VertexSet::singleton(v)) != all {
                    child.insert(v);
                }
            }
            covered |= child;
            children.push(child);
        }
        children.into_iter().filter(|c| c.len() > 1).collect()
    };
    out.sort_by_key(|s| s.to_vec());
    out
}

/// Smallest homogeneous set containing `s`.
pub fn module_closure(g: &Graph, mut s: VertexSet) -> VertexSet {
    loop {
        let mixed: VertexSet = (g.vertices() - s).iter().filter(|&v| is_mixed_unchecked(g, v, s)).collect();
        if mixed.is_empty() {
            return s;
        }
        s |= mixed;
    }
}

/// Seven parts `A1..A7` (stored as `a[0]..a[6]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPartitionWitness {
    pub a: [VertexSet; 7],
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Rel {
    Complete,
    Anti,
    Free,
}

/// Required relation between parts `i` and `j` (0-based).
fn h_relation(i: usize, j: usize) -> Rel {
    use Rel::*;
    const T: [[Rel; 7]; 7] = [
        [Free, Complete, Anti, Anti, Complete, Complete, Anti],
        [Complete, Free, Complete, Anti, Anti, Anti, Anti],
        [Anti, Complete, Free, Complete, Anti, Complete, Anti],
        [Anti, Anti, Complete, Free, Complete, Complete, Anti],
        [Complete, Anti, Anti, Complete, Free, Anti, Anti],
        [Complete, Anti, Complete, Complete, Anti, Free, Free],
        [Anti, Anti, Anti, Anti, Anti, Free, Free],
    ];
    T[i][j]
}

/// Searches for a partition into seven non-empty `P4`-free parts with the
/// prescribed complete/anticomplete relations, where each component of
/// `G[A7]` is homogeneous in `G`.
pub fn recognize_h_class(g: &Graph) -> Option<HPartitionWitness> {
    let n = g.n();
    if n < 7 {
        return None;
    }
    let order = bfs_order(g);
    let mut search = PartSearch {
        g,
        order: &order,
        parts: vec![VertexSet::EMPTY; 7],
        allowed: |p: usize, q: usize, adjacent: bool| match h_relation(p, q) {
            Rel::Free => true,
            Rel::Complete => adjacent,
            Rel::Anti => !adjacent,
        },
        same_part_ok: |_adjacent: bool| true,
        p4_free_parts: true,
        accept: |g: &Graph, parts: &[VertexSet]| {
            g.components_within(parts[6]).into_iter().all(|c| is_homogeneous(g, c))
        },
    };
    let domains = vec![0x7fu64; n];
    search.run(0, domains).map(|parts| {
        let mut a = [VertexSet::EMPTY; 7];
        a.copy_from_slice(&parts);
        HPartitionWitness { a }
    })
}

/// Re-checks a witness against the defining conditions, listing failures.
pub fn h_witness_violations(g: &Graph, w: &HPartitionWitness) -> Vec<String> {
    let a = |i: usize| w.a[i - 1];
    let mut bad = Vec::new();
    let union: VertexSet = w.a.iter().fold(VertexSet::EMPTY, |x, &y| x | y);
    let total: usize = w.a.iter().map(|s| s.len()).sum();
    if union != g.vertices() || total != g.n() {
        bad.push("parts do not partition V(G)".to_string());
    }
    for i in 1..=7 {
        if a(i).is_empty() {
            bad.push(format!("A{i} is empty"));
        }
        if !crate::patterns::is_p4_free(&g.induced_unchecked(a(i))) {
            bad.push(format!("A{i} contains an induced P4"));
        }
    }
    let complete = [(1, &[2, 5, 6][..]), (3, &[2, 4, 6][..]), (4, &[5, 6][..])];
    let anti = [(1, &[3, 4, 7][..]), (3, &[5, 7][..]), (4, &[2, 7][..]), (2, &[5, 6, 7][..]), (5, &[6, 7][..])];
    for (i, js) in complete {
        for &j in js {
            if !g.is_complete_to(a(i), a(j)) {
                bad.push(format!("A{i} not complete to A{j}"));
            }
        }
    }
    for (i, js) in anti {
        for &j in js {
            if !g.is_anticomplete_to(a(i), a(j)) {
                bad.push(format!("A{i} not anticomplete to A{j}"));
            }
        }
    }
    for c in g.components_within(a(7)) {
        if !is_homogeneous(g, c) {
            bad.push(format!("component {:?} of G[A7] is not homogeneous", c.to_vec()));
        }
    }
    bad
}

/// Whether the bags must be P4-free or cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstitutionMode {
    P4Free,
    Clique,
}

/// A partition of `V(g)` into `|V(h)|` non-empty bags, bag `b` standing for
/// vertex `b` of `h`: bags of adjacent `h`-vertices are complete to each
/// other, bags of nonadjacent ones anticomplete, and every bag is `P4`-free
/// or a clique per `mode`.
pub fn is_substitution_of(g: &Graph, h: &Graph, mode: SubstitutionMode) -> Option<Vec<VertexSet>> {
    let m = h.n();
    if m > g.n() || m == 0 {
        return (m == 0 && g.n() == 0).then(Vec::new);
    }
    let order = bfs_order(g);
    let mut search = PartSearch {
        g,
        order: &order,
        parts: vec![VertexSet::EMPTY; m],
        allowed: |p: usize, q: usize, adjacent: bool| h.has_edge(p, q) == adjacent,
        same_part_ok: |adjacent: bool| mode == SubstitutionMode::P4Free || adjacent,
        p4_free_parts: mode == SubstitutionMode::P4Free,
        accept: |_: &Graph, _: &[VertexSet]| true,
    };
    let domains = vec![VertexSet::full(m).bits(); g.n()];
    search.run(0, domains)
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    let mut placed = VertexSet::EMPTY;
    while let Some(s) = (g.vertices() - placed).first() {
        let mut queue = std::collections::VecDeque::from([s]);
        placed.insert(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g.neighbors(v) - placed {
                placed.insert(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Backtracking assignment of vertices to labeled parts with pairwise
/// relation constraints and forward checking on per-vertex part domains.
struct PartSearch<'a, A, S, F> {
    g: &'a Graph,
    order: &'a [usize],
    parts: Vec<VertexSet>,
    allowed: A,
    same_part_ok: S,
    p4_free_parts: bool,
    accept: F,
}

impl<A, S, F> PartSearch<'_, A, S, F>
where
    A: Fn(usize, usize, bool) -> bool,
    S: Fn(bool) -> bool,
    F: Fn(&Graph, &[VertexSet]) -> bool,
{
    fn run(&mut self, i: usize, domains: Vec<u64>) -> Option<Vec<VertexSet>> {
        let empty_parts = self.parts.iter().filter(|p| p.is_empty()).count();
        if empty_parts > self.order.len() - i {
            return None;
        }
        if i == self.order.len() {
            return (self.accept)(self.g, &self.parts).then(|| self.parts.clone());
        }
        let v = self.order[i];
        let dom = VertexSet(domains[v]);
        // open unused parts first, then reuse the smallest parts
        let fresh: Vec<usize> = dom.iter().filter(|&p| self.parts[p].is_empty()).collect();
        let mut used: Vec<usize> = dom.iter().filter(|&p| !self.parts[p].is_empty()).collect();
        used.sort_by_key(|&p| (self.parts[p].len(), p));
        for p in fresh.into_iter().chain(used) {
            let within = self.parts[p] | VertexSet::singleton(v);
            if self.p4_free_parts && within.len() >= 4 && has_p4_through(self.g, within, v) {
                continue;
            }
            let mut next = domains.clone();
            let mut dead = false;
            for &u in &self.order[i + 1..] {
                let adjacent = self.g.has_edge(u, v);
                let mut d = 0u64;
                for q in VertexSet(next[u]) {
                    let ok = if q == p { (self.same_part_ok)(adjacent) } else { (self.allowed)(p, q, adjacent) };
                    if ok {
                        d |= 1 << q;
                    }
                }
                next[u] = d;
                if d == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.parts[p].insert(v);
            if let Some(found) = self.run(i + 1, next) {
                return Some(found);
            }
            self.parts[p].remove(v);
        }
        None
    }
}
