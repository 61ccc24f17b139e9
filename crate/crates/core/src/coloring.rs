//! Exact colorability, chromatic number and clique number.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringResult {
    pub chi: usize,
    /// `assignment[v]` is the color of `v`, in `1..=chi`.
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub omega: usize,
    pub witness: VertexSet,
}

/// A largest clique, found by branch and bound with a greedy-coloring bound.
pub fn clique_number(g: &Graph) -> Result<CliqueResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (omega, witness) = max_clique_within(g.rows(), g.vertices());
    Ok(CliqueResult { omega, witness })
}

pub(crate) fn max_clique_within(rows: &[VertexSet], within: VertexSet) -> (usize, VertexSet) {
    let mut best = greedy_clique(rows, within);
    let mut cur = VertexSet::EMPTY;
    expand_clique(rows, within, &mut cur, &mut best);
    (best.len(), best)
}

fn expand_clique(rows: &[VertexSet], mut cand: VertexSet, cur: &mut VertexSet, best: &mut VertexSet) {
    if cand.is_empty() {
        if cur.len() > best.len() {
            *best = *cur;
        }
        return;
    }
    // color classes of the candidates bound the clique size reachable from each
    let mut order = Vec::with_capacity(cand.len());
    let mut uncolored = cand;
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored;
        while let Some(v) = avail.first() {
            avail = avail - rows[v] - VertexSet::singleton(v);
            uncolored.remove(v);
            order.push((v, color));
        }
    }
    for &(v, bound) in order.iter().rev() {
        if cur.len() + bound <= best.len() {
            return;
        }
        cur.insert(v);
        expand_clique(rows, cand & rows[v], cur, best);
        cur.remove(v);
        cand.remove(v);
    }
}

/// Greedy clique: repeatedly take the candidate with most candidate neighbors.
pub(crate) fn greedy_clique(rows: &[VertexSet], within: VertexSet) -> VertexSet {
    let mut clique = VertexSet::EMPTY;
    let mut cand = within;
    while !cand.is_empty() {
        let v = cand
            .iter()
            .max_by_key(|&v| ((rows[v] & cand).len(), std::cmp::Reverse(v)))
            .expect("non-empty");
        clique.insert(v);
        cand &= rows[v];
    }
    clique
}

/// A proper `q`-coloring with colors in `1..=q`, if one exists.
pub fn is_q_colorable(g: &Graph, q: usize) -> Option<Vec<usize>> {
    color_within(g.rows(), g.vertices(), q).map(|classes| assignment_from_classes(g.n(), &classes))
}

/// Whether `G[within]` is `q`-colorable.
pub(crate) fn colorable_within(rows: &[VertexSet], within: VertexSet, q: usize) -> bool {
    color_within(rows, within, q).is_some()
}

/// Color classes of a `q`-coloring of `G[within]`.
pub(crate) fn color_within(rows: &[VertexSet], within: VertexSet, q: usize) -> Option<Vec<VertexSet>> {
    if within.is_empty() {
        return Some(Vec::new());
    }
    if q == 0 {
        return None;
    }
    let mut classes = Vec::with_capacity(q);
    if search_coloring(rows, within, q, &mut classes) {
        Some(classes)
    } else {
        None
    }
}

/// Branch and bound: the next vertex is the uncolored one seeing the most
/// distinct colors, ties broken by degree then index; colors are tried in
/// ascending order and at most one fresh color is opened per step.
fn search_coloring(rows: &[VertexSet], uncolored: VertexSet, q: usize, classes: &mut Vec<VertexSet>) -> bool {
    if uncolored.is_empty() {
        return true;
    }
    let mut pick = None;
    let mut pick_key = (0usize, 0usize);
    for v in uncolored {
        let sat = classes.iter().filter(|c| rows[v].intersects(**c)).count();
        if sat == q {
            return false;
        }
        let key = (sat, rows[v].len());
        if pick.is_none() || key > pick_key {
            pick = Some(v);
            pick_key = key;
        }
    }
    let v = pick.expect("uncolored is non-empty");
    let rest = uncolored - VertexSet::singleton(v);
    for c in 0..classes.len() {
        if !rows[v].intersects(classes[c]) {
            classes[c].insert(v);
            if search_coloring(rows, rest, q, classes) {
                return true;
            }
            classes[c].remove(v);
        }
    }
    if classes.len() < q {
        classes.push(VertexSet::singleton(v));
        if search_coloring(rows, rest, q, classes) {
            return true;
        }
        classes.pop();
    }
    false
}

/// Largest-first greedy coloring; returns the classes.
pub(crate) fn greedy_coloring(rows: &[VertexSet], within: VertexSet) -> Vec<VertexSet> {
    let mut order: Vec<usize> = within.iter().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse((rows[v] & within).len()), v));
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in order {
        match classes.iter_mut().find(|c| !rows[v].intersects(**c)) {
            Some(c) => c.insert(v),
            None => classes.push(VertexSet::singleton(v)),
        }
    }
    classes
}

/// Chromatic number with an optimal coloring.
pub fn chromatic_number(g: &Graph) -> Result<ColoringResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let classes = chromatic_classes(g.rows(), g.vertices());
    Ok(ColoringResult { chi: classes.len(), assignment: assignment_from_classes(g.n(), &classes) })
}

pub(crate) fn chromatic_within(rows: &[VertexSet], within: VertexSet) -> usize {
    chromatic_classes(rows, within).len()
}

fn chromatic_classes(rows: &[VertexSet], within: VertexSet) -> Vec<VertexSet> {
    let upper = greedy_coloring(rows, within);
    let lower = greedy_clique(rows, within).len();
    for q in lower..upper.len() {
        if let Some(classes) = color_within(rows, within, q) {
            return classes;
        }
    }
    upper
}

fn assignment_from_classes(n: usize, classes: &[VertexSet]) -> Vec<usize> {
    let mut out = vec![0; n];
    for (c, class) in classes.iter().enumerate() {
        for v in *class {
            out[v] = c + 1;
        }
    }
    out
}

/// Whether `assignment` (colors `>= 1`) is proper.
pub fn is_proper(g: &Graph, assignment: &[usize]) -> bool {
    assignment.len() == g.n()
        && assignment.iter().all(|&c| c >= 1)
        && g.edges().iter().all(|&(u, v)| assignment[u] != assignment[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_adjacency_list;

    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        for q in 1..=n {
            let mut colors = vec![0usize; n];
            loop {
                if g.edges().iter().all(|&(u, v)| colors[u] != colors[v]) {
                    return q;
                }
                let mut i = 0;
                while i < n {
                    colors[i] += 1;
                    if colors[i] < q {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    fn gem() -> Graph {
        Graph::path(4).unwrap().add_vertex(VertexSet::full(4)).unwrap()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&Graph::complete(4).unwrap()).unwrap().omega, 4);
        assert_eq!(clique_number(&Graph::cycle(5).unwrap()).unwrap().omega, 2);
        let r = clique_number(&gem()).unwrap();
        assert_eq!(r.omega, 3);
        assert!(gem().is_clique(r.witness));
        assert_eq!(clique_number(&Graph::empty(0).unwrap()), Err(Error::EmptyGraph));
    }

    #[test]
    fn colorability_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(is_q_colorable(&c5, 2).is_none());
        let col = is_q_colorable(&c5, 3).unwrap();
        assert!(is_proper(&c5, &col));
        assert!(col.iter().all(|&c| (1..=3).contains(&c)));
        let big = parse_adjacency_list(
            "{0: 1 4 5 6 7 8; 1: 0 2 5 6 12; 2: 1 3 6 7 8 12; 3: 2 4 8 12; 4: 0 3 5 7; 5: 0 1 4 6 7 8; \
             6: 0 1 2 5 12; 7: 0 2 4 5 9 10 11 12; 8: 0 2 3 5 9 10 11 12; 9: 7 8 10 11; 10: 7 8 9 11; \
             11: 7 8 9 10; 12: 1 2 3 6 7 8}",
        )
        .unwrap();
        assert!(is_q_colorable(&big, 4).is_none());
        assert!(is_q_colorable(&big, 5).is_some());
        assert_eq!(is_q_colorable(&Graph::empty(0).unwrap(), 0), Some(vec![]));
        assert_eq!(is_q_colorable(&Graph::empty(1).unwrap(), 0), None);
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&Graph::complete(4).unwrap()).unwrap().chi, 4);
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap()).unwrap().chi, 3);
        let wheel = parse_adjacency_list("{0: 1 4 5; 1: 0 2 5; 2: 1 3 5; 3: 2 4 5; 4: 0 3 5; 5: 0 1 2 3 4}").unwrap();
        let r = chromatic_number(&wheel).unwrap();
        assert_eq!(r.chi, 4);
        assert!(is_proper(&wheel, &r.assignment));
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()), Err(Error::EmptyGraph));
        assert_eq!(chromatic_number(&Graph::empty(3).unwrap()).unwrap().chi, 1);
    }

    #[test]
    fn agrees_with_assignment_enumeration_on_all_small_graphs() {
        for n in 1..=6usize {
            let m = n * (n - 1) / 2;
            // all labeled graphs for n <= 5; a stride through them for n = 6
            let step = if n <= 5 { 1 } else { 7 };
            for mask in (0u32..1 << m).step_by(step) {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if mask >> k & 1 == 1 {
                            g.try_add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                let r = chromatic_number(&g).unwrap();
                assert_eq!(r.chi, brute_chi(&g), "{g:?}");
                assert!(is_proper(&g, &r.assignment));
                assert_eq!(r.assignment.iter().max().copied(), Some(r.chi));
            }
        }
    }
}
