//! Colored homomorphisms, quotients and exact chromatic numbers.
//!
//! The smallest homomorphic image of a graph can be taken to be the image
//! itself, which is the quotient by the fibres of the map. So the chromatic
//! number is the fewest parts of a valid partition, and the search runs over
//! partitions rather than over target graphs.

use std::thread;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, MixedGraph, Signature, SimpleGraph};
use crate::rigidity;

/// Assignment of every vertex to a part; part indices are dense.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    part_count: usize,
}

impl Partition {
    /// Validates density: the parts used are exactly `0..count`.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let part_count = assignment.iter().max().map_or(0, |&p| p + 1);
        let mut used = vec![false; part_count];
        for &p in &assignment {
            used[p] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::MalformedPartition(format!(
                "part {missing} is empty"
            )));
        }
        Ok(Partition {
            assignment,
            part_count,
        })
    }

    pub fn discrete(vertex_count: usize) -> Self {
        Partition {
            assignment: (0..vertex_count).collect(),
            part_count: vertex_count,
        }
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.part_count];
        for (v, &p) in self.assignment.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    /// Relabels parts so they first appear in increasing vertex order.
    pub fn canonical(&self) -> Partition {
        let mut relabel = vec![usize::MAX; self.part_count];
        let mut next = 0;
        let assignment = self
            .assignment
            .iter()
            .map(|&p| {
                if relabel[p] == usize::MAX {
                    relabel[p] = next;
                    next += 1;
                }
                relabel[p]
            })
            .collect();
        Partition {
            assignment,
            part_count: self.part_count,
        }
    }
}

/// A vertex map `V(G) -> V(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMapping(pub Vec<usize>);

fn check_cover(g: &MixedGraph, p: &Partition) -> Result<()> {
    if p.assignment.len() != g.vertex_count() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.assignment.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Part-pair relation table of the quotient, or `None` if some part holds
/// an adjacent pair or two adjacencies between the same parts disagree.
fn quotient_relations(g: &MixedGraph, p: &Partition) -> Option<Vec<AdjacencyType>> {
    let parts = p.part_count;
    let mut table = vec![AdjacencyType::Absent; parts * parts];
    let k = g.vertex_count();
    for u in 0..k {
        for v in u + 1..k {
            let rel = g.relation(u, v);
            if !rel.is_adjacent() {
                continue;
            }
            let (pu, pv) = (p.assignment[u], p.assignment[v]);
            if pu == pv {
                return None;
            }
            let slot = &mut table[pu * parts + pv];
            if slot.is_adjacent() && *slot != rel {
                return None;
            }
            *slot = rel;
            table[pv * parts + pu] = rel.reverse();
        }
    }
    Some(table)
}

/// Whether contracting the parts of `p` yields a simple, consistently
/// colored mixed graph.
pub fn is_valid_partition(g: &MixedGraph, p: &Partition) -> Result<bool> {
    check_cover(g, p)?;
    Ok(quotient_relations(g, p).is_some())
}

/// One vertex per part, each part pair inheriting the common relation.
pub fn quotient(g: &MixedGraph, p: &Partition) -> Result<MixedGraph> {
    check_cover(g, p)?;
    let table = quotient_relations(g, p).ok_or(Error::InvalidPartition)?;
    let parts = p.part_count;
    let mut q = MixedGraph::new(g.signature(), parts);
    for a in 0..parts {
        for b in a + 1..parts {
            q.set_unchecked(a, b, table[a * parts + b]);
        }
    }
    Ok(q)
}

/// Checks the homomorphism conditions directly on every adjacent pair.
pub fn is_homomorphism(g: &MixedGraph, h: &MixedGraph, map: &[usize]) -> bool {
    if g.signature() != h.signature()
        || map.len() != g.vertex_count()
        || map.iter().any(|&x| x >= h.vertex_count())
    {
        return false;
    }
    let k = g.vertex_count();
    (0..k).all(|u| {
        (u + 1..k).all(|v| {
            let rel = g.relation(u, v);
            !rel.is_adjacent() || (map[u] != map[v] && h.relation(map[u], map[v]) == rel)
        })
    })
}

/// Backtracking homomorphism search, most-constrained vertex first.
pub fn find_homomorphism(g: &MixedGraph, h: &MixedGraph) -> Result<Option<HomMapping>> {
    if g.signature() != h.signature() {
        return Err(Error::SignatureMismatch(
            g.signature().to_string(),
            h.signature().to_string(),
        ));
    }
    let k = g.vertex_count();
    let mut map = vec![usize::MAX; k];
    if hom_extend(g, h, &mut map, 0) {
        Ok(Some(HomMapping(map)))
    } else {
        Ok(None)
    }
}

fn hom_extend(g: &MixedGraph, h: &MixedGraph, map: &mut [usize], placed: usize) -> bool {
    let k = g.vertex_count();
    if placed == k {
        return true;
    }
    // most mapped neighbours, then highest degree, then lowest index
    let v = (0..k)
        .filter(|&v| map[v] == usize::MAX)
        .max_by_key(|&v| {
            let mapped = g.neighbors(v).filter(|&w| map[w] != usize::MAX).count();
            (mapped, g.degree(v), std::cmp::Reverse(v))
        })
        .unwrap();
    for x in 0..h.vertex_count() {
        let ok = g.neighbors(v).all(|w| {
            map[w] == usize::MAX || (map[w] != x && h.relation(x, map[w]) == g.relation(v, w))
        });
        if ok {
            map[v] = x;
            if hom_extend(g, h, map, placed + 1) {
                return true;
            }
            map[v] = usize::MAX;
        }
    }
    false
}

/// Chromatic number with a witness partition in canonical part order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub value: usize,
    pub partition: Partition,
}

/// Fewest parts of a valid partition of `g`.
///
/// Parts are opened in order along a fixed vertex order, so each partition
/// is visited once up to relabelling. The search deepens the part limit
/// from the relative clique number upwards.
pub fn chromatic_number(g: &MixedGraph) -> ChromaticResult {
    let k = g.vertex_count();
    if k == 0 {
        return ChromaticResult {
            value: 0,
            partition: Partition::discrete(0),
        };
    }
    let seed = rigidity::relative_clique_number(g).vertices;
    let order = search_order(g, &seed);
    let mut search = QuotientSearch::new(g, order);
    for limit in seed.len().max(1)..=k {
        search.limit = limit;
        if search.place(0) {
            let partition = Partition::new(search.assignment.clone())
                .expect("search opens parts densely")
                .canonical();
            return ChromaticResult {
                value: limit,
                partition,
            };
        }
    }
    unreachable!("the discrete partition is always valid")
}

/// Rigid clique first (forced into distinct parts), then greedily the
/// vertex with most already-ordered neighbours.
fn search_order(g: &MixedGraph, seed: &[usize]) -> Vec<usize> {
    let k = g.vertex_count();
    let mut order = seed.to_vec();
    let mut in_order = vec![false; k];
    for &v in seed {
        in_order[v] = true;
    }
    while order.len() < k {
        let v = (0..k)
            .filter(|&v| !in_order[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&w| g.is_adjacent(v, w)).count();
                (linked, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        in_order[v] = true;
        order.push(v);
    }
    order
}

struct QuotientSearch<'a> {
    g: &'a MixedGraph,
    order: Vec<usize>,
    assignment: Vec<usize>,
    members: Vec<Vec<usize>>,
    // relation between parts, row-major over at most k parts
    table: Vec<AdjacencyType>,
    limit: usize,
}

impl<'a> QuotientSearch<'a> {
    fn new(g: &'a MixedGraph, order: Vec<usize>) -> Self {
        let k = g.vertex_count();
        QuotientSearch {
            g,
            order,
            assignment: vec![usize::MAX; k],
            members: Vec::new(),
            table: vec![AdjacencyType::Absent; k * k],
            limit: k,
        }
    }

    fn place(&mut self, idx: usize) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        let open = self.members.len();
        for part in 0..open {
            if let Some(set) = self.try_assign(v, part) {
                if self.place(idx + 1) {
                    return true;
                }
                self.unassign(v, part, set);
            }
        }
        if open < self.limit {
            // a fresh part still fails if two neighbours sharing a part
            // see v differently
            self.members.push(Vec::new());
            if let Some(set) = self.try_assign(v, open) {
                if self.place(idx + 1) {
                    return true;
                }
                self.unassign(v, open, set);
            }
            self.members.pop();
        }
        false
    }

    /// Puts `v` into `part` if consistent; returns the part pairs whose
    /// relation this placement fixed.
    fn try_assign(&mut self, v: usize, part: usize) -> Option<Vec<usize>> {
        let g = self.g;
        if self.members[part].iter().any(|&w| g.is_adjacent(v, w)) {
            return None;
        }
        let k = g.vertex_count();
        let mut newly_set = Vec::new();
        for w in g.neighbors(v) {
            let q = self.assignment[w];
            if q == usize::MAX {
                continue;
            }
            let rel = g.relation(v, w);
            let slot = self.table[part * k + q];
            if slot.is_adjacent() {
                if slot != rel {
                    for &other in &newly_set {
                        self.table[part * k + other] = AdjacencyType::Absent;
                        self.table[other * k + part] = AdjacencyType::Absent;
                    }
                    return None;
                }
            } else {
                self.table[part * k + q] = rel;
                self.table[q * k + part] = rel.reverse();
                newly_set.push(q);
            }
        }
        self.assignment[v] = part;
        self.members[part].push(v);
        Some(newly_set)
    }

    fn unassign(&mut self, v: usize, part: usize, newly_set: Vec<usize>) {
        let k = self.g.vertex_count();
        for other in newly_set {
            self.table[part * k + other] = AdjacencyType::Absent;
            self.table[other * k + part] = AdjacencyType::Absent;
        }
        self.assignment[v] = usize::MAX;
        self.members[part].pop();
    }
}

/// Default cap on chromatic sub-searches in [`max_chromatic`].
pub const DEFAULT_MAX_CHROMATIC_BUDGET: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxChromaticOptions {
    pub budget: u128,
    pub jobs: usize,
}

impl Default for MaxChromaticOptions {
    fn default() -> Self {
        MaxChromaticOptions {
            budget: DEFAULT_MAX_CHROMATIC_BUDGET,
            jobs: 1,
        }
    }
}

/// Maximum chromatic number over all colorings of an undirected graph,
/// with the lexicographically least maximizing coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxChromaticResult {
    pub value: usize,
    /// Odometer index of the witness; edge 0 is the most significant digit.
    pub index: u128,
    pub witness: MixedGraph,
    pub partition: Partition,
}

/// Number of colorings [`max_chromatic`] must examine: `(2m+n)^|E|`.
pub fn coloring_count(g: &SimpleGraph, sig: Signature) -> Option<u128> {
    let kinds = sig.adjacency_kinds() as u128;
    let mut total: u128 = 1;
    for _ in 0..g.edge_count() {
        total = total.checked_mul(kinds)?;
    }
    Some(total)
}

/// The colored graph at odometer position `index` over the sorted edges.
pub fn coloring_at(g: &SimpleGraph, sig: Signature, mut index: u128) -> MixedGraph {
    let edges = g.edges();
    let kinds = sig.adjacency_kinds() as u128;
    let mut out = MixedGraph::new(sig, g.vertex_count());
    for &(u, v) in edges.iter().rev() {
        let digit = (index % kinds) as usize;
        index /= kinds;
        out.set_unchecked(u, v, AdjacencyType::from_code(sig, digit + 1).unwrap());
    }
    out
}

pub fn max_chromatic(
    g: &SimpleGraph,
    sig: Signature,
    options: MaxChromaticOptions,
) -> Result<MaxChromaticResult> {
    let total = coloring_count(g, sig).unwrap_or(u128::MAX);
    if total > options.budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: options.budget,
        });
    }
    let jobs = options.jobs.max(1) as u128;
    let chunk = total.div_ceil(jobs);
    let best_in = |lo: u128, hi: u128| {
        let mut best: Option<(usize, u128)> = None;
        for idx in lo..hi {
            let value = chromatic_number(&coloring_at(g, sig, idx)).value;
            if best.is_none_or(|(b, _)| value > b) {
                best = Some((value, idx));
            }
        }
        best
    };
    let results: Vec<Option<(usize, u128)>> = if jobs == 1 {
        vec![best_in(0, total)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let lo = (j * chunk).min(total);
                    let hi = ((j + 1) * chunk).min(total);
                    scope.spawn(move || best_in(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    let (value, index) = results
        .into_iter()
        .flatten()
        .min_by_key(|&(value, idx)| (std::cmp::Reverse(value), idx))
        .expect("at least one coloring exists");
    let witness = coloring_at(g, sig, index);
    let partition = chromatic_number(&witness).partition;
    Ok(MaxChromaticResult {
        value,
        index,
        witness,
        partition,
    })
}
