//! Special 2-paths, rigid pairs and clique numbers.
//!
//! Two vertices can never share an image under a colored homomorphism
//! exactly when they are adjacent or joined by a special 2-path. Everything
//! here reduces to that pairwise test.

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, MixedGraph, SimpleGraph};

/// Outcome of a clique test; a failing pair is non-adjacent and has no
/// special 2-path between its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueWitness {
    Clique,
    FailingPair(usize, usize),
}

impl CliqueWitness {
    pub fn is_clique(self) -> bool {
        self == CliqueWitness::Clique
    }
}

/// A maximum vertex set with its size; vertices are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueNumber {
    pub size: usize,
    pub vertices: Vec<usize>,
}

/// Whether `u - mid - v` is a special 2-path.
///
/// Returns `false` when the three vertices are not distinct or either
/// pair is non-adjacent.
pub fn is_special_two_path(g: &MixedGraph, u: usize, mid: usize, v: usize) -> Result<bool> {
    for x in [u, mid, v] {
        if x >= g.vertex_count() {
            return Err(Error::InvalidVertex(x));
        }
    }
    if u == mid || mid == v || u == v {
        return Ok(false);
    }
    Ok(special_unchecked(g, u, mid, v))
}

#[inline]
pub(crate) fn special_unchecked(g: &MixedGraph, u: usize, mid: usize, v: usize) -> bool {
    use AdjacencyType::*;
    let first = g.relation(u, mid);
    let second = g.relation(mid, v);
    match (first, second) {
        (Absent, _) | (_, Absent) => false,
        // (i) two edges of different colors
        (Edge(a), Edge(b)) => a != b,
        // (v) exactly one edge
        (Edge(_), _) | (_, Edge(_)) => true,
        // (ii) directed 2-path, either direction, any colors
        (ArcOut(_), ArcOut(_)) | (ArcIn(_), ArcIn(_)) => true,
        // (iii) both arcs point into mid
        (ArcOut(a), ArcIn(b)) => a != b,
        // (iv) both arcs leave mid
        (ArcIn(a), ArcOut(b)) => a != b,
    }
}

#[inline]
pub(crate) fn rigid_unchecked(g: &MixedGraph, u: usize, v: usize) -> bool {
    g.is_adjacent(u, v)
        || (0..g.vertex_count()).any(|mid| mid != u && mid != v && special_unchecked(g, u, mid, v))
}

/// Adjacent, or joined by at least one special 2-path.
pub fn rigid_pair(g: &MixedGraph, u: usize, v: usize) -> Result<bool> {
    for x in [u, v] {
        if x >= g.vertex_count() {
            return Err(Error::InvalidVertex(x));
        }
    }
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "rigid_pair needs distinct vertices, got {u} twice"
        )));
    }
    Ok(rigid_unchecked(g, u, v))
}

/// Simple graph whose edges are exactly the rigid pairs of `g`.
pub fn rigidity_graph(g: &MixedGraph) -> SimpleGraph {
    let k = g.vertex_count();
    let mut out = SimpleGraph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            if rigid_unchecked(g, u, v) {
                out.set_unchecked(u, v);
            }
        }
    }
    out
}

/// Lexicographically first non-rigid pair, if any.
pub fn is_clique(g: &MixedGraph) -> CliqueWitness {
    let k = g.vertex_count();
    for u in 0..k {
        for v in u + 1..k {
            if !rigid_unchecked(g, u, v) {
                return CliqueWitness::FailingPair(u, v);
            }
        }
    }
    CliqueWitness::Clique
}

/// Clique test of the subgraph induced on `set`, without materializing it.
pub(crate) fn induces_clique(g: &MixedGraph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| {
        set[i + 1..].iter().all(|&v| {
            g.is_adjacent(u, v)
                || set
                    .iter()
                    .any(|&mid| mid != u && mid != v && special_unchecked(g, u, mid, v))
        })
    })
}

/// Largest set of pairwise rigid vertices.
pub fn relative_clique_number(g: &MixedGraph) -> CliqueNumber {
    let vertices = maximum_clique(&rigidity_graph(g));
    CliqueNumber {
        size: vertices.len(),
        vertices,
    }
}

/// Largest vertex set inducing an (m,n)-clique.
///
/// Candidates are cliques of the rigidity graph (rigidity inside an induced
/// subgraph implies rigidity in `g`), scanned by decreasing size.
pub fn absolute_clique_number(g: &MixedGraph) -> CliqueNumber {
    let rg = rigidity_graph(g);
    let upper = maximum_clique(&rg).len();
    for size in (1..=upper).rev() {
        let mut current = Vec::with_capacity(size);
        let all: Vec<usize> = (0..rg.vertex_count()).collect();
        if let Some(found) = first_inducing_clique(g, &rg, &all, size, &mut current) {
            return CliqueNumber {
                size,
                vertices: found,
            };
        }
    }
    CliqueNumber {
        size: 0,
        vertices: Vec::new(),
    }
}

fn first_inducing_clique(
    g: &MixedGraph,
    rg: &SimpleGraph,
    candidates: &[usize],
    size: usize,
    current: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if current.len() == size {
        return induces_clique(g, current).then(|| current.clone());
    }
    let need = size - current.len();
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            break;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| rg.has_edge(v, w))
            .collect();
        if next.len() + 1 < need {
            continue;
        }
        current.push(v);
        let found = first_inducing_clique(g, rg, &next, size, current);
        current.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Exact maximum clique by branch and bound with greedy-coloring bounds.
///
/// Branches in increasing vertex order and keeps the first clique of each
/// new record size, so the result is deterministic.
pub fn maximum_clique(g: &SimpleGraph) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..g.vertex_count()).collect();
    expand(g, &mut current, &candidates, &mut best);
    best
}

fn expand(g: &SimpleGraph, current: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + greedy_color_count(g, candidates) <= best.len() {
        return;
    }
    for (i, &v) in candidates.iter().enumerate() {
        if current.len() + (candidates.len() - i) <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        current.push(v);
        expand(g, current, &next, best);
        current.pop();
    }
}

/// Number of classes used by first-fit coloring; an upper bound on the clique size.
fn greedy_color_count(g: &SimpleGraph, vertices: &[usize]) -> usize {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in vertices {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&w| !g.has_edge(v, w)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes.len()
}
