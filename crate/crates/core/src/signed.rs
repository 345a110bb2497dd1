//! Unbalanced 4-cycles, signed cliques, monotone NAE-3SAT and the reduction
//! from formulas to signed-clique colorability.
//!
//! A 2-edge-colored graph is a signed clique when every non-adjacent pair
//! lies on a 4-cycle with an odd number of color-1 edges. Whether a cycle is
//! unbalanced does not change when all edges at one vertex swap colors, so
//! the searches fix a spanning forest to color 1 and branch only on the
//! remaining edges.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Edge coloring with colors `1` and `2`, keyed by `(min, max)` endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoEdgeColoring {
    colors: BTreeMap<(usize, usize), u8>,
}

impl TwoEdgeColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, u: usize, v: usize, color: u8) -> Result<()> {
        if color != 1 && color != 2 {
            return Err(Error::ColorOutOfRange {
                color: color as u32,
                max: 2,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.colors.insert((u.min(v), u.max(v)), color);
        Ok(())
    }

    pub fn get(&self, u: usize, v: usize) -> Option<u8> {
        self.colors.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.colors.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    /// Every edge of `g` colored and nothing colored outside `E(g)`.
    pub fn check_total(&self, g: &SimpleGraph) -> Result<()> {
        for (u, v, _) in self.iter() {
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!(
                    "colored pair {{{u},{v}}} is not an edge"
                )));
            }
        }
        for (u, v) in g.edges() {
            if self.get(u, v).is_none() {
                return Err(Error::PartialColoring(u, v));
            }
        }
        Ok(())
    }

    /// Parses `c <u> <v> <1|2>` lines; `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = TwoEdgeColoring::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse {
                line: idx + 1,
                message: "expected `c <u> <v> <1|2>`".into(),
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[0] != "c" {
                return Err(bad());
            }
            let u: usize = tokens[1].parse().map_err(|_| bad())?;
            let v: usize = tokens[2].parse().map_err(|_| bad())?;
            let c: u8 = tokens[3].parse().map_err(|_| bad())?;
            out.set(u, v, c)?;
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TwoEdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, v, c) in self.iter() {
            writeln!(f, "c {u} {v} {c}")?;
        }
        Ok(())
    }
}

/// Odd number of color-1 edges among four colors.
pub fn unbalanced(colors: [u8; 4]) -> bool {
    colors.iter().filter(|&&c| c == 1).count() % 2 == 1
}

/// Whether the closed walk `cycle[0] cycle[1] cycle[2] cycle[3]` is an
/// unbalanced 4-cycle of `(g, coloring)`.
pub fn is_unbalanced_4cycle(
    g: &SimpleGraph,
    coloring: &TwoEdgeColoring,
    cycle: [usize; 4],
) -> Result<bool> {
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| cycle[i] != cycle[j]));
    if !distinct || cycle.iter().any(|&v| v >= g.vertex_count()) {
        return Err(Error::NotACycle(cycle));
    }
    let mut colors = [0u8; 4];
    for i in 0..4 {
        let (a, b) = (cycle[i], cycle[(i + 1) % 4]);
        if !g.has_edge(a, b) {
            return Err(Error::NotACycle(cycle));
        }
        colors[i] = coloring
            .get(a, b)
            .ok_or(Error::PartialColoring(a.min(b), a.max(b)))?;
    }
    Ok(unbalanced(colors))
}

/// Which vertex pairs must lie on an unbalanced 4-cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairRule {
    #[default]
    NonAdjacent,
    AllPairs,
}

impl PairRule {
    fn pairs(self, g: &SimpleGraph) -> Vec<(usize, usize)> {
        let k = g.vertex_count();
        (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .filter(|&(u, v)| self == PairRule::AllPairs || !g.has_edge(u, v))
            .collect()
    }
}

/// Every 4-cycle containing both `u` and `v`, as vertex sequences starting at `u`.
///
/// Non-adjacent vertices sit opposite each other (`u a v b`, `a < b`);
/// adjacent ones are consecutive (`u v a b`).
pub fn four_cycles_through(g: &SimpleGraph, u: usize, v: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    if g.has_edge(u, v) {
        for a in g.neighbors(v).filter(|&a| a != u) {
            for b in g
                .neighbors(a)
                .filter(|&b| b != v && b != u && g.has_edge(b, u))
            {
                out.push([u, v, a, b]);
            }
        }
    } else {
        let common: Vec<usize> = g.neighbors(u).filter(|&a| g.has_edge(a, v)).collect();
        for (i, &a) in common.iter().enumerate() {
            for &b in &common[i + 1..] {
                out.push([u, a, v, b]);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedCliqueCheck {
    SignedClique,
    /// Lexicographically first pair on no unbalanced 4-cycle.
    Failing(usize, usize),
}

impl SignedCliqueCheck {
    pub fn is_signed_clique(self) -> bool {
        self == SignedCliqueCheck::SignedClique
    }
}

pub fn is_signed_clique(
    g: &SimpleGraph,
    coloring: &TwoEdgeColoring,
    rule: PairRule,
) -> Result<SignedCliqueCheck> {
    coloring.check_total(g)?;
    check_pairs(g, coloring, &rule.pairs(g))
}

/// First pair of `pairs` lying on no unbalanced 4-cycle.
pub fn check_pairs(
    g: &SimpleGraph,
    coloring: &TwoEdgeColoring,
    pairs: &[(usize, usize)],
) -> Result<SignedCliqueCheck> {
    for &(u, v) in pairs {
        let mut found = false;
        for cycle in four_cycles_through(g, u, v) {
            if is_unbalanced_4cycle(g, coloring, cycle)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(SignedCliqueCheck::Failing(u.min(v), u.max(v)));
        }
    }
    Ok(SignedCliqueCheck::SignedClique)
}

/// Default edge cap for [`signed_clique_colorable`].
pub const DEFAULT_SIGNED_EDGE_CAP: usize = 24;
/// Default search-node cap for the good-coloring searches on `H_F`.
pub const DEFAULT_NODE_BUDGET: u128 = 1 << 28;

/// Backtracking over 2-edge-colorings so that each listed pair lies on an
/// unbalanced 4-cycle. Spanning-forest edges are fixed to color 1 and edges
/// on no relevant cycle are colored 1 without branching.
struct PairColoringSearch {
    edges: Vec<(usize, usize)>,
    /// Per pair, its 4-cycles as edge indices.
    cycles: Vec<Vec<[usize; 4]>>,
    pairs_of_edge: Vec<Vec<usize>>,
    colors: Vec<u8>,
    order: Vec<usize>,
    nodes: u128,
    budget: u128,
}

enum Flow {
    Continue,
    Stop,
}

impl PairColoringSearch {
    fn new(g: &SimpleGraph, pairs: &[(usize, usize)], budget: u128) -> Self {
        let edges = g.edges();
        let k = g.vertex_count();
        let mut edge_id = vec![usize::MAX; k * k];
        for (i, &(u, v)) in edges.iter().enumerate() {
            edge_id[u * k + v] = i;
            edge_id[v * k + u] = i;
        }
        let id = |a: usize, b: usize| edge_id[a * k + b];
        let mut cycles = Vec::with_capacity(pairs.len());
        let mut pairs_of_edge = vec![Vec::new(); edges.len()];
        for (p, &(u, v)) in pairs.iter().enumerate() {
            let list: Vec<[usize; 4]> = four_cycles_through(g, u, v)
                .into_iter()
                .map(|c| {
                    [
                        id(c[0], c[1]),
                        id(c[1], c[2]),
                        id(c[2], c[3]),
                        id(c[3], c[0]),
                    ]
                })
                .collect();
            for cyc in &list {
                for &e in cyc {
                    if pairs_of_edge[e].last() != Some(&p) {
                        pairs_of_edge[e].push(p);
                    }
                }
            }
            cycles.push(list);
        }

        // spanning forest, BFS in index order
        let mut colors = vec![0u8; edges.len()];
        let mut seen = vec![false; k];
        for root in 0..k {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for y in g.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        colors[id(x, y)] = 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        for (e, c) in colors.iter_mut().enumerate() {
            if pairs_of_edge[e].is_empty() {
                *c = 1;
            }
        }

        // greedily close the pair needing the fewest further edges
        let mut order = Vec::new();
        let mut ordered = colors.iter().map(|&c| c != 0).collect::<Vec<bool>>();
        let mut done = vec![false; pairs.len()];
        loop {
            let next = (0..pairs.len()).filter(|&p| !done[p]).min_by_key(|&p| {
                let missing = cycles[p]
                    .iter()
                    .flatten()
                    .filter(|&&e| !ordered[e])
                    .collect::<std::collections::BTreeSet<_>>()
                    .len();
                (missing, cycles[p].len(), p)
            });
            let Some(p) = next else { break };
            done[p] = true;
            for cyc in &cycles[p] {
                for &e in cyc {
                    if !ordered[e] {
                        ordered[e] = true;
                        order.push(e);
                    }
                }
            }
        }

        PairColoringSearch {
            edges,
            cycles,
            pairs_of_edge,
            colors,
            order,
            nodes: 0,
            budget,
        }
    }

    /// False if some pair has all its cycles colored and none unbalanced.
    fn pair_alive(&self, p: usize) -> bool {
        let mut open = false;
        for cyc in &self.cycles[p] {
            let colors = cyc.map(|e| self.colors[e]);
            if colors.contains(&0) {
                open = true;
            } else if unbalanced(colors) {
                return true;
            }
        }
        open
    }

    fn coloring(&self) -> TwoEdgeColoring {
        let mut out = TwoEdgeColoring::new();
        for (&(u, v), &c) in self.edges.iter().zip(&self.colors) {
            out.colors.insert((u, v), c);
        }
        out
    }

    fn run(&mut self, visit: &mut dyn FnMut(TwoEdgeColoring) -> Flow) -> Result<()> {
        if self.cycles.iter().any(|c| c.is_empty()) {
            return Ok(());
        }
        // pairs whose cycles lie entirely in fixed edges
        if (0..self.cycles.len()).any(|p| !self.pair_alive(p)) {
            return Ok(());
        }
        self.descend(0, visit).map(|_| ())
    }

    fn descend(
        &mut self,
        pos: usize,
        visit: &mut dyn FnMut(TwoEdgeColoring) -> Flow,
    ) -> Result<Flow> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                required: 1u128
                    .checked_shl(self.order.len() as u32)
                    .unwrap_or(u128::MAX),
                budget: self.budget,
            });
        }
        if pos == self.order.len() {
            return Ok(visit(self.coloring()));
        }
        let e = self.order[pos];
        for color in [1u8, 2] {
            self.colors[e] = color;
            if self.pairs_of_edge[e].iter().all(|&p| self.pair_alive(p)) {
                if let Flow::Stop = self.descend(pos + 1, visit)? {
                    self.colors[e] = 0;
                    return Ok(Flow::Stop);
                }
            }
        }
        self.colors[e] = 0;
        Ok(Flow::Continue)
    }
}

/// A 2-edge-coloring of `g` making it a signed clique under `rule`, if any.
pub fn signed_clique_colorable(
    g: &SimpleGraph,
    rule: PairRule,
    max_edges: usize,
) -> Result<Option<TwoEdgeColoring>> {
    if g.edge_count() > max_edges {
        return Err(Error::BudgetExceeded {
            required: g.edge_count() as u128,
            budget: max_edges as u128,
        });
    }
    let pairs = rule.pairs(g);
    first_pair_coloring(g, &pairs, u128::MAX)
}

fn first_pair_coloring(
    g: &SimpleGraph,
    pairs: &[(usize, usize)],
    budget: u128,
) -> Result<Option<TwoEdgeColoring>> {
    let mut search = PairColoringSearch::new(g, pairs, budget);
    let mut found = None;
    search.run(&mut |c| {
        found = Some(c);
        Flow::Stop
    })?;
    Ok(found)
}

/// Monotone 3-CNF: clauses are triples of distinct 1-based variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NaeFormula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl NaeFormula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.iter().any(|&x| x == 0 || x > num_vars) {
                return Err(Error::InvalidArgument(format!(
                    "clause {} uses a variable outside 1..={num_vars}",
                    j + 1
                )));
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::InvalidArgument(format!(
                    "clause {} repeats a variable",
                    j + 1
                )));
            }
        }
        Ok(NaeFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// 1-based index of the first clause whose variables all share a value.
    pub fn first_violated(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| {
                let vals = c.map(|x| assignment[x - 1]);
                vals[0] == vals[1] && vals[1] == vals[2]
            })
            .map(|j| j + 1)
    }

    /// `p nae <nvars> <nclauses>` then `a b c 0` per clause; lines starting
    /// with `c` or `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line == "c" || line.starts_with("c ") {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: line_no,
                message: message.to_string(),
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if header.is_none() {
                if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "nae" {
                    return Err(err("expected header `p nae <nvars> <nclauses>`"));
                }
                let nv = tokens[2].parse().map_err(|_| err("bad variable count"))?;
                let nc = tokens[3].parse().map_err(|_| err("bad clause count"))?;
                header = Some((nv, nc, line_no));
                continue;
            }
            if tokens.len() != 4 || tokens[3] != "0" {
                return Err(err("expected three positive variables terminated by 0"));
            }
            let mut clause = [0usize; 3];
            for (slot, tok) in clause.iter_mut().zip(&tokens[..3]) {
                *slot = tok
                    .parse()
                    .ok()
                    .filter(|&x: &usize| x > 0)
                    .ok_or_else(|| err("variables are positive integers"))?;
            }
            clauses.push(clause);
        }
        let (nv, nc, line) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing `p nae` header".into(),
        })?;
        if clauses.len() != nc {
            return Err(Error::Parse {
                line,
                message: format!("header declares {nc} clauses, found {}", clauses.len()),
            });
        }
        NaeFormula::new(nv, clauses)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p nae {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

pub const DEFAULT_NAE_BUDGET: u128 = 1 << 30;

/// First NAE-satisfying assignment in counting order (bit `i-1` of the
/// counter is `x_i`), or `None`.
pub fn nae_solve(f: &NaeFormula, budget: u128) -> Result<Option<Vec<bool>>> {
    let total = 1u128.checked_shl(f.num_vars as u32).unwrap_or(u128::MAX);
    if f.num_vars >= 127 || total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    for bits in 0..total {
        let assignment: Vec<bool> = (0..f.num_vars).map(|i| bits >> i & 1 == 1).collect();
        if f.first_violated(&assignment).is_none() {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Role of a vertex in `H_F` or `G_F`. Variable and clause indices are
/// 1-based; `A`, `B`, `C` refer to `H_F` vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    R1,
    R2,
    U(usize),
    UPrime(usize),
    V { var: usize, clause: usize },
    W(usize),
    A(usize),
    B(usize),
    C(usize, usize),
    CPrime(usize, usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::R1 => write!(f, "r1"),
            Role::R2 => write!(f, "r2"),
            Role::U(i) => write!(f, "u_{i}"),
            Role::UPrime(i) => write!(f, "u'_{i}"),
            Role::V { var, clause } => write!(f, "v_{var}_{clause}"),
            Role::W(j) => write!(f, "w_{j}"),
            Role::A(u) => write!(f, "a_{u}"),
            Role::B(u) => write!(f, "b_{u}"),
            Role::C(u, v) => write!(f, "c_{u}_{v}"),
            Role::CPrime(u, v) => write!(f, "c'_{u}_{v}"),
        }
    }
}

/// The first-stage gadget `H_F` with its representative pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HfGadget {
    pub formula: NaeFormula,
    pub graph: SimpleGraph,
    pub roles: Vec<Role>,
    pub representative_pairs: Vec<(usize, usize)>,
    pub r1: usize,
    pub r2: usize,
    /// `u_i` and `u'_i`, indexed by `i - 1`.
    pub u: Vec<usize>,
    pub u_prime: Vec<usize>,
    /// `v_{i,j}` for the three variables of clause `j`, in clause order.
    pub clause_v: Vec<[usize; 3]>,
    pub w: Vec<usize>,
}

impl HfGadget {
    pub fn is_representative(&self, u: usize, v: usize) -> bool {
        self.representative_pairs.contains(&(u.min(v), u.max(v)))
    }

    /// Whether `r1` and `r2` agree on `x` (both edges present and colored).
    pub fn agreement(&self, coloring: &TwoEdgeColoring, x: usize) -> Option<bool> {
        Some(coloring.get(self.r1, x)? == coloring.get(self.r2, x)?)
    }

    /// `v_{i,j}` vertices of variable `i` (1-based).
    pub fn v_of_var(&self, var: usize) -> Vec<usize> {
        self.clause_v
            .iter()
            .enumerate()
            .flat_map(|(j, vs)| {
                self.formula.clauses[j]
                    .iter()
                    .zip(vs)
                    .filter(move |(&x, _)| x == var)
                    .map(|(_, &v)| v)
            })
            .collect()
    }
}

pub fn build_hf(f: &NaeFormula) -> HfGadget {
    let n = f.num_vars();
    let clauses = f.clauses();
    let mut roles = vec![Role::R1, Role::R2];
    let (r1, r2) = (0, 1);
    let mut u = Vec::with_capacity(n);
    let mut u_prime = Vec::with_capacity(n);
    for i in 1..=n {
        u.push(roles.len());
        roles.push(Role::U(i));
        u_prime.push(roles.len());
        roles.push(Role::UPrime(i));
    }
    let mut clause_v = vec![[usize::MAX; 3]; clauses.len()];
    for i in 1..=n {
        for (j, c) in clauses.iter().enumerate() {
            if let Some(pos) = c.iter().position(|&x| x == i) {
                clause_v[j][pos] = roles.len();
                roles.push(Role::V {
                    var: i,
                    clause: j + 1,
                });
            }
        }
    }
    let mut w = Vec::with_capacity(clauses.len());
    for j in 1..=clauses.len() {
        w.push(roles.len());
        roles.push(Role::W(j));
    }

    let mut graph = SimpleGraph::new(roles.len());
    for i in 0..n {
        for x in [u[i], u_prime[i]] {
            graph.set_unchecked(r1, x);
            graph.set_unchecked(r2, x);
        }
    }
    for (j, vs) in clause_v.iter().enumerate() {
        for &v in vs {
            graph.set_unchecked(r1, v);
            graph.set_unchecked(r2, v);
            graph.set_unchecked(w[j], v);
        }
    }

    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut representative_pairs = Vec::new();
    let gadget_stub = HfGadget {
        formula: f.clone(),
        graph: SimpleGraph::new(0),
        roles: Vec::new(),
        representative_pairs: Vec::new(),
        r1,
        r2,
        u: u.clone(),
        u_prime: u_prime.clone(),
        clause_v: clause_v.clone(),
        w: w.clone(),
    };
    for i in 0..n {
        representative_pairs.push(norm(u[i], u_prime[i]));
        for v in gadget_stub.v_of_var(i + 1) {
            representative_pairs.push(norm(u_prime[i], v));
        }
    }
    for vs in &clause_v {
        representative_pairs.push(norm(vs[0], vs[1]));
        representative_pairs.push(norm(vs[0], vs[2]));
        representative_pairs.push(norm(vs[1], vs[2]));
    }

    HfGadget {
        graph,
        roles,
        representative_pairs,
        ..gadget_stub
    }
}

/// How non-representative pairs of `H_F` are wired into `G_F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectors {
    /// One vertex `c_{u,v}` per pair. Pairs of `H_F` with no common
    /// neighbour in `H_F` then lie on no 4-cycle of `G_F` at all.
    Single,
    /// `c_{u,v}` and `c'_{u,v}`, so `u c v c'` is always a 4-cycle.
    #[default]
    Double,
}

/// `G_F`: `H_F` plus pendant pairs `a_u, b_u`, connector vertices for every
/// non-representative pair, and a clique on all added vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub hf: HfGadget,
    pub connectors: Connectors,
    pub graph: SimpleGraph,
    pub roles: Vec<Role>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `(u, v, c_{u,v}, c'_{u,v})` with `u < v`.
    pub connector_vertices: Vec<(usize, usize, usize, Option<usize>)>,
}

impl ReductionArtifact {
    /// Role-label comment lines followed by `# rep <u> <v>` lines.
    pub fn sidecar(&self) -> String {
        let mut out = String::new();
        for (v, role) in self.roles.iter().enumerate() {
            out.push_str(&format!("# role {v} {role}\n"));
        }
        for &(u, v) in &self.hf.representative_pairs {
            out.push_str(&format!("# rep {u} {v}\n"));
        }
        out
    }
}

pub fn build_gf(f: &NaeFormula) -> ReductionArtifact {
    build_gf_with(f, Connectors::default())
}

pub fn build_gf_with(f: &NaeFormula, connectors: Connectors) -> ReductionArtifact {
    let hf = build_hf(f);
    let h = hf.graph.vertex_count();
    let mut roles = hf.roles.clone();
    let mut a = Vec::with_capacity(h);
    let mut b = Vec::with_capacity(h);
    for u in 0..h {
        a.push(roles.len());
        roles.push(Role::A(u));
        b.push(roles.len());
        roles.push(Role::B(u));
    }
    let mut connector_vertices = Vec::new();
    for u in 0..h {
        for v in u + 1..h {
            if hf.is_representative(u, v) {
                continue;
            }
            let c = roles.len();
            roles.push(Role::C(u, v));
            let c2 = (connectors == Connectors::Double).then(|| {
                roles.push(Role::CPrime(u, v));
                roles.len() - 1
            });
            connector_vertices.push((u, v, c, c2));
        }
    }

    let mut graph = SimpleGraph::new(roles.len());
    for (u, v) in hf.graph.edges() {
        graph.set_unchecked(u, v);
    }
    for u in 0..h {
        graph.set_unchecked(u, a[u]);
        graph.set_unchecked(u, b[u]);
    }
    for &(u, v, c, c2) in &connector_vertices {
        for x in std::iter::once(c).chain(c2) {
            graph.set_unchecked(u, x);
            graph.set_unchecked(v, x);
        }
    }
    for x in h..roles.len() {
        for y in x + 1..roles.len() {
            graph.set_unchecked(x, y);
        }
    }

    ReductionArtifact {
        hf,
        connectors,
        graph,
        roles,
        a,
        b,
        connector_vertices,
    }
}

/// The `H_F` part of the coloring encoding `assignment`: `r1`-edges are 1,
/// `r2` agrees with `r1` on `u_i` and every `v_{i,j}` iff `x_i` is true and
/// disagrees on `u'_i`; each clause's `w`-edges take the first of the eight
/// patterns putting its three representative pairs on unbalanced 4-cycles.
pub fn hf_coloring_from_assignment(hf: &HfGadget, assignment: &[bool]) -> Result<TwoEdgeColoring> {
    let f = &hf.formula;
    if assignment.len() != f.num_vars() {
        return Err(Error::InvalidArgument(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            f.num_vars()
        )));
    }
    if let Some(j) = f.first_violated(assignment) {
        return Err(Error::NotNaeSatisfying(j));
    }
    let mut coloring = TwoEdgeColoring::new();
    let agree = |value: bool| if value { 1 } else { 2 };
    for (i, &value) in assignment.iter().enumerate() {
        coloring.set(hf.r1, hf.u[i], 1)?;
        coloring.set(hf.r2, hf.u[i], agree(value))?;
        coloring.set(hf.r1, hf.u_prime[i], 1)?;
        coloring.set(hf.r2, hf.u_prime[i], agree(!value))?;
        for v in hf.v_of_var(i + 1) {
            coloring.set(hf.r1, v, 1)?;
            coloring.set(hf.r2, v, agree(value))?;
        }
    }
    for (j, vs) in hf.clause_v.iter().enumerate() {
        let pairs = [(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])];
        let mut done = false;
        for pattern in 0u8..8 {
            for (pos, &v) in vs.iter().enumerate() {
                coloring.set(hf.w[j], v, 1 + (pattern >> pos & 1))?;
            }
            if check_pairs(&hf.graph, &coloring, &pairs)?.is_signed_clique() {
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::NotNaeSatisfying(j + 1));
        }
    }
    Ok(coloring)
}

/// Total coloring of `G_F` from a NAE-satisfying assignment. Outside `H_F`:
/// `u b_u` and `c_{u,v} v` (for `u < v`) get color 1, everything else 2.
pub fn good_coloring_from_assignment(
    artifact: &ReductionArtifact,
    assignment: &[bool],
) -> Result<TwoEdgeColoring> {
    let mut coloring = hf_coloring_from_assignment(&artifact.hf, assignment)?;
    let h = artifact.hf.graph.vertex_count();
    let total = artifact.graph.vertex_count();
    for u in 0..h {
        coloring.set(u, artifact.a[u], 2)?;
        coloring.set(u, artifact.b[u], 1)?;
    }
    for &(u, v, c, c2) in &artifact.connector_vertices {
        coloring.set(u, c, 2)?;
        coloring.set(v, c, 1)?;
        if let Some(c2) = c2 {
            coloring.set(u, c2, 2)?;
            coloring.set(v, c2, 2)?;
        }
    }
    for x in h..total {
        for y in x + 1..total {
            coloring.set(x, y, 2)?;
        }
    }
    Ok(coloring)
}

/// A coloring of `H_F` putting every representative pair on an unbalanced
/// 4-cycle, if one exists.
pub fn find_good_coloring_hf(hf: &HfGadget, budget: u128) -> Result<Option<TwoEdgeColoring>> {
    first_pair_coloring(&hf.graph, &hf.representative_pairs, budget)
}

pub fn good_coloring_exists_hf(hf: &HfGadget, budget: u128) -> Result<bool> {
    Ok(find_good_coloring_hf(hf, budget)?.is_some())
}

/// Calls `visit` on every good coloring of `H_F` whose spanning-forest
/// edges are color 1 (one representative per switching class). Stops early
/// when `visit` returns `false`.
pub fn for_each_good_coloring_hf(
    hf: &HfGadget,
    budget: u128,
    mut visit: impl FnMut(&TwoEdgeColoring) -> bool,
) -> Result<()> {
    let mut search = PairColoringSearch::new(&hf.graph, &hf.representative_pairs, budget);
    search.run(&mut |c| {
        if visit(&c) {
            Flow::Continue
        } else {
            Flow::Stop
        }
    })
}

/// Every 4-cycle of `G_F` through a representative pair stays inside `H_F`.
pub fn representative_cycles_confined(artifact: &ReductionArtifact) -> bool {
    let h = artifact.hf.graph.vertex_count();
    artifact.hf.representative_pairs.iter().all(|&(u, v)| {
        four_cycles_through(&artifact.graph, u, v)
            .iter()
            .all(|c| c.iter().all(|&x| x < h))
    })
}
