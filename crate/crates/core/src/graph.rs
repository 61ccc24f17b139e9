//! Simple undirected graphs on at most 64 vertices with one machine word per
//! adjacency row.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices in `0..64`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl BitAndAssign for VertexSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: VertexSet) {
        self.0 &= rhs.0;
    }
}

impl BitOrAssign for VertexSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: VertexSet) {
        self.0 |= rhs.0;
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(vs.into_iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple undirected graph on vertices `0..n`, `n <= 64`.
///
/// Rows are kept symmetric and irreflexive by every constructor, so the
/// derived equality is labeled-graph equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n) - VertexSet::singleton(v);
        }
        Ok(g)
    }

    /// Path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0 - 1 - .. - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, symmetrizing them. Rows must not carry
    /// self-loops or members `>= rows.len()`.
    pub fn from_rows(rows: &[VertexSet]) -> Result<Self> {
        let n = rows.len();
        check_capacity(n)?;
        let mut g = Graph::empty(n)?;
        for (u, &row) in rows.iter().enumerate() {
            if let Some(v) = (row - VertexSet::full(n)).first() {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if row.contains(u) {
                return Err(Error::SelfLoop(u));
            }
            for v in row {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
            }
        }
        Ok(g)
    }

    /// Rows taken verbatim; the caller guarantees symmetry and irreflexivity.
    pub(crate) fn from_rows_unchecked(rows: Vec<VertexSet>) -> Self {
        debug_assert!(rows.len() <= MAX_VERTICES);
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(|r| r.len()).min()
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match (s - self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n)
            .map(|v| all - self.adj[v] - VertexSet::singleton(v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// `G[S]`, with the members of `s` relabeled `0..|s|` in ascending order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        Ok(self.induced_unchecked(s))
    }

    pub(crate) fn induced_unchecked(&self, s: VertexSet) -> Graph {
        let members: Vec<usize> = s.iter().collect();
        let adj = members
            .iter()
            .map(|&u| compress(self.adj[u] & s, s))
            .collect();
        Graph { n: members.len(), adj }
    }

    /// `G - v`, relabeling the vertices above `v` down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_unchecked(self.vertices() - VertexSet::singleton(v)))
    }

    /// Appends vertex `n` with neighborhood `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        self.check_set(nbrs)?;
        check_capacity(self.n + 1)?;
        let mut adj = self.adj.clone();
        for v in nbrs {
            adj[v].insert(self.n);
        }
        adj.push(nbrs);
        Ok(Graph { n: self.n + 1, adj })
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let image: VertexSet = perm.iter().collect();
        if image != self.vertices() {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for u in 0..self.n {
            adj[perm[u]] = self.adj[u].iter().map(|v| perm[v]).collect();
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start) & within;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.adj[v];
            }
            frontier = next & (within - seen);
            seen |= frontier;
        }
        seen
    }

    /// Connected components of `G[within]`, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            rest = rest - c;
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Whether `G[within]` is connected; the empty set counts as connected.
    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        match within.first() {
            None => true,
            Some(v) => self.reach(v, within) == within,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertices())
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s - VertexSet::singleton(v)).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// Every vertex of `a` adjacent to every vertex of `b` (disjoint sets).
    pub fn is_complete_to(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(self.adj[v]))
    }

    pub fn is_anticomplete_to(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| !self.adj[v].intersects(b))
    }

    /// `N(S)`: vertices outside `s` with a neighbor in `s`.
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s {
            out |= self.adj[v];
        }
        out - s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::format::emit_adjacency_list(self))
    }
}

/// Packs the members of `x` (a subset of `s`) down to the ranks they hold in `s`.
#[inline]
pub(crate) fn compress(x: VertexSet, s: VertexSet) -> VertexSet {
    let mut out = 0u64;
    for (bit, v) in s.iter().enumerate() {
        if x.contains(v) {
            out |= 1 << bit;
        }
    }
    VertexSet(out)
}

pub(crate) fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}
