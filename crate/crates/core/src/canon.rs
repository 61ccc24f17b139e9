//! Canonical labeling by equitable-partition refinement and individualization,
//! choosing the lexicographically smallest relabeled adjacency matrix.
//!
//! Automorphisms found at equivalent leaves prune the search tree in two ways:
//! children in the same orbit of the pointwise stabilizer of the current path
//! are skipped, and a leaf equivalent to the first or best leaf abandons the
//! whole subtree back to the common ancestor.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

/// Isomorphism certificate: the upper triangle of the canonically relabeled
/// adjacency matrix, read column by column (`(0,1), (0,2), (1,2), (0,3), ..`),
/// packed most-significant-bit first so that word order is bit-string order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: u8,
    bits: Box<[u64]>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut rows = vec![VertexSet::EMPTY; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
                k += 1;
            }
        }
        Graph::from_rows_unchecked(rows)
    }

    fn from_rows(rows: &[u64]) -> Self {
        let n = rows.len();
        let nbits = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; nbits.div_ceil(64)];
        let mut k = 0;
        for j in 1..n {
            for row in &rows[..j] {
                if row >> j & 1 == 1 {
                    bits[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        CanonicalForm { n: n as u8, bits: bits.into_boxed_slice() }
    }

    /// Approximate heap plus inline footprint, for frontier budgeting.
    pub fn size_in_bytes(&self) -> usize {
        std::mem::size_of::<Self>() + 8 * self.bits.len()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g6 = crate::format::emit_graph6(&self.to_graph()).unwrap_or_default();
        write!(f, "CanonicalForm({g6})")
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `label[v]` is the canonical position of vertex `v`.
    pub label: Vec<usize>,
    /// Automorphisms discovered along the way, as vertex maps. They generate
    /// a subgroup of `Aut(G)` (all of it when the search is exhaustive).
    pub automorphisms: Vec<Vec<usize>>,
    pub form: CanonicalForm,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && canonical_form(g) == canonical_form(h)
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let rows: Vec<u64> = g.rows().iter().map(|r| r.bits()).collect();
    WORKSPACE.with(|ws| ws.borrow_mut().run(&rows))
}

thread_local! {
    static WORKSPACE: RefCell<Canonizer> = RefCell::new(Canonizer::default());
}

#[derive(Default)]
struct Canonizer {
    n: usize,
    adj: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    sig_buf: Vec<u8>,
    order_buf: Vec<usize>,
}

#[derive(Clone)]
struct Leaf {
    path: Vec<usize>,
    lab: Vec<usize>,
    rows: Vec<u64>,
}

impl Canonizer {
    fn run(&mut self, rows: &[u64]) -> Labeling {
        self.n = rows.len();
        self.adj.clear();
        self.adj.extend_from_slice(rows);
        self.first = None;
        self.best = None;
        self.autos.clear();

        let n = self.n;
        if n == 0 {
            return Labeling { label: vec![], automorphisms: vec![], form: CanonicalForm::from_rows(&[]) };
        }
        let cells = vec![VertexSet::full(n).bits()];
        let mut path = Vec::with_capacity(n);
        self.search(cells, &mut path);

        let best = self.best.take().expect("search visits at least one leaf");
        let mut label = vec![0; n];
        for (pos, &v) in best.lab.iter().enumerate() {
            label[v] = pos;
        }
        Labeling {
            label,
            automorphisms: std::mem::take(&mut self.autos),
            form: CanonicalForm::from_rows(&best.rows),
        }
    }

    /// Returns the depth to resume at after a subtree was proven redundant,
    /// or `None` to continue normally.
    fn search(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        self.refine(&mut cells);
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }

        // first smallest non-singleton cell
        let (target, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-trivial cell");
        let cell = cells[target];
        let depth = path.len();
        let mut tried = VertexSet::EMPTY;

        for v in VertexSet(cell) {
            if !tried.is_empty() && self.in_tried_orbit(v, tried, path) {
                continue;
            }
            tried.insert(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            let jump = self.search(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let n = self.n;
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = lab
            .iter()
            .map(|&v| VertexSet(self.adj[v]).iter().fold(0u64, |acc, w| acc | 1 << pos[w]))
            .collect();

        let Some(first) = &self.first else {
            let leaf = Leaf { path: path.to_vec(), lab, rows };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return None;
        };
        if rows == first.rows {
            let gamma = automorphism(&lab, &first.lab, n);
            let d = common_prefix(path, &first.path);
            self.autos.push(gamma);
            return Some(d);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match rows.cmp(&best.rows) {
            Ordering::Less => {
                self.best = Some(Leaf { path: path.to_vec(), lab, rows });
                None
            }
            Ordering::Equal => {
                let gamma = automorphism(&lab, &best.lab, n);
                let d = common_prefix(path, &best.path);
                self.autos.push(gamma);
                Some(d)
            }
            Ordering::Greater => None,
        }
    }

    /// Whether `v` shares an orbit with a member of `tried` under the group
    /// generated by the known automorphisms that fix `path` pointwise.
    fn in_tried_orbit(&self, v: usize, tried: VertexSet, path: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|g| path.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let mut orbit = VertexSet::singleton(v);
        let mut frontier = orbit;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for x in frontier {
                for g in &gens {
                    next.insert(g[x]);
                }
            }
            frontier = next - orbit;
            orbit |= frontier;
            if orbit.intersects(tried) {
                return true;
            }
        }
        false
    }

    /// Refines `cells` to the coarsest equitable partition finer than it.
    /// Each non-singleton cell is split by the vector of neighbor counts into
    /// every current cell; fragments are ordered by that vector.
    fn refine(&mut self, cells: &mut Vec<u64>) {
        let n = self.n;
        loop {
            let m = cells.len();
            if m == n {
                return;
            }
            let mut next: Vec<u64> = Vec::with_capacity(n);
            let mut split = false;
            for &x in cells.iter() {
                let size = x.count_ones() as usize;
                if size == 1 {
                    next.push(x);
                    continue;
                }
                self.sig_buf.clear();
                self.order_buf.clear();
                for v in VertexSet(x) {
                    let row = self.adj[v];
                    self.sig_buf.extend(cells.iter().map(|&c| (row & c).count_ones() as u8));
                    self.order_buf.push(v);
                }
                let sigs = &self.sig_buf;
                let sig = |i: usize| &sigs[i * m..(i + 1) * m];
                let mut idx: Vec<usize> = (0..size).collect();
                idx.sort_by(|&a, &b| sig(a).cmp(sig(b)));
                let mut cur = 1u64 << self.order_buf[idx[0]];
                for w in idx.windows(2) {
                    let v = self.order_buf[w[1]];
                    if sig(w[0]) == sig(w[1]) {
                        cur |= 1 << v;
                    } else {
                        next.push(cur);
                        cur = 1 << v;
                        split = true;
                    }
                }
                next.push(cur);
            }
            *cells = next;
            if !split {
                return;
            }
        }
    }
}

fn automorphism(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut gamma = vec![0; n];
    for (a, b) in from.iter().zip(to) {
        gamma[*a] = *b;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
