//! Mixed-graph data model and the line-oriented text formats.
//!
//! Vertices are dense indices `0..k`. Colors are 1-based; color 0 is never
//! valid. Each unordered pair carries at most one adjacency.

use std::fmt;

use crate::error::{Error, Result};

/// Numbers of arc colors `m` and edge colors `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    m: u32,
    n: u32,
}

impl Signature {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::ZeroSignature);
        }
        Ok(Signature { m, n })
    }

    pub fn arc_colors(self) -> u32 {
        self.m
    }

    pub fn edge_colors(self) -> u32 {
        self.n
    }

    /// `2m+n`, the number of distinct non-absent adjacency kinds.
    pub fn adjacency_kinds(self) -> usize {
        2 * self.m as usize + self.n as usize
    }

    /// `2m+n+1`, the number of options for an unordered pair including "absent".
    pub fn pair_options(self) -> usize {
        self.adjacency_kinds() + 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Relation of an ordered vertex pair `(u, v)`.
///
/// `ArcOut(c)` is an arc `u -> v`, `ArcIn(c)` an arc `v -> u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum AdjacencyType {
    #[default]
    Absent,
    Edge(u32),
    ArcOut(u32),
    ArcIn(u32),
}

impl AdjacencyType {
    /// The same relation seen from the other endpoint.
    pub fn reverse(self) -> Self {
        match self {
            AdjacencyType::ArcOut(c) => AdjacencyType::ArcIn(c),
            AdjacencyType::ArcIn(c) => AdjacencyType::ArcOut(c),
            other => other,
        }
    }

    pub fn is_adjacent(self) -> bool {
        self != AdjacencyType::Absent
    }

    pub fn is_edge(self) -> bool {
        matches!(self, AdjacencyType::Edge(_))
    }

    /// Dense code in `0..=2m+n`: 0 is absent, then edge colors, out-arc
    /// colors and in-arc colors.
    pub fn code(self, sig: Signature) -> usize {
        let (m, n) = (sig.m as usize, sig.n as usize);
        match self {
            AdjacencyType::Absent => 0,
            AdjacencyType::Edge(c) => c as usize,
            AdjacencyType::ArcOut(c) => n + c as usize,
            AdjacencyType::ArcIn(c) => n + m + c as usize,
        }
    }

    /// Inverse of [`AdjacencyType::code`].
    pub fn from_code(sig: Signature, code: usize) -> Option<Self> {
        let (m, n) = (sig.m as usize, sig.n as usize);
        match code {
            0 => Some(AdjacencyType::Absent),
            c if c <= n => Some(AdjacencyType::Edge(c as u32)),
            c if c <= n + m => Some(AdjacencyType::ArcOut((c - n) as u32)),
            c if c <= n + 2 * m => Some(AdjacencyType::ArcIn((c - n - m) as u32)),
            _ => None,
        }
    }

    /// All `2m+n` non-absent relations in code order.
    pub fn all_adjacent(sig: Signature) -> impl Iterator<Item = AdjacencyType> {
        (1..=sig.adjacency_kinds()).map(move |c| AdjacencyType::from_code(sig, c).unwrap())
    }

    fn check_color(self, sig: Signature) -> Result<()> {
        let (color, max) = match self {
            AdjacencyType::Absent => return Ok(()),
            AdjacencyType::Edge(c) => (c, sig.n),
            AdjacencyType::ArcOut(c) | AdjacencyType::ArcIn(c) => (c, sig.m),
        };
        if color == 0 || color > max {
            return Err(Error::ColorOutOfRange { color, max });
        }
        Ok(())
    }
}

/// An (m,n)-colored mixed graph stored as a dense relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    signature: Signature,
    vertex_count: usize,
    rel: Vec<AdjacencyType>,
}

impl MixedGraph {
    pub fn new(signature: Signature, vertex_count: usize) -> Self {
        MixedGraph {
            signature,
            vertex_count,
            rel: vec![AdjacencyType::Absent; vertex_count * vertex_count],
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: u32) -> Result<()> {
        self.add(u, v, AdjacencyType::Edge(color))
    }

    /// Adds the arc `u -> v`.
    pub fn add_arc(&mut self, u: usize, v: usize, color: u32) -> Result<()> {
        self.add(u, v, AdjacencyType::ArcOut(color))
    }

    /// Records `relation` for the ordered pair `(u, v)`; the pair must be absent.
    pub fn add(&mut self, u: usize, v: usize, relation: AdjacencyType) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        relation.check_color(self.signature)?;
        if self.relation(u, v).is_adjacent() {
            return Err(Error::DuplicateAdjacency(u.min(v), u.max(v)));
        }
        if relation.is_adjacent() {
            self.set_unchecked(u, v, relation);
        }
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, u: usize, v: usize, relation: AdjacencyType) {
        let k = self.vertex_count;
        self.rel[u * k + v] = relation;
        self.rel[v * k + u] = relation.reverse();
    }

    pub fn adjacency_type(&self, u: usize, v: usize) -> Result<AdjacencyType> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.relation(u, v))
    }

    /// Unchecked relation lookup; panics on out-of-range indices.
    #[inline]
    pub fn relation(&self, u: usize, v: usize) -> AdjacencyType {
        self.rel[u * self.vertex_count + v]
    }

    #[inline]
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.relation(u, v).is_adjacent()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(move |&v| self.is_adjacent(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// Edges as `(u, v, color)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                if let AdjacencyType::Edge(c) = self.relation(u, v) {
                    out.push((u, v, c));
                }
            }
        }
        out
    }

    /// Arcs as `(tail, head, color)`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count {
            for v in 0..self.vertex_count {
                if let AdjacencyType::ArcOut(c) = self.relation(u, v) {
                    out.push((u, v, c));
                }
            }
        }
        out
    }

    /// Number of adjacent unordered pairs.
    pub fn adjacency_count(&self) -> usize {
        (0..self.vertex_count)
            .map(|u| {
                (u + 1..self.vertex_count)
                    .filter(|&v| self.is_adjacent(u, v))
                    .count()
            })
            .sum()
    }

    pub fn underlying(&self) -> SimpleGraph {
        let mut sg = SimpleGraph::new(self.vertex_count);
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                if self.is_adjacent(u, v) {
                    sg.set_unchecked(u, v);
                }
            }
        }
        sg
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<MixedGraph> {
        let mut seen = vec![false; self.vertex_count];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} repeated")));
            }
        }
        let mut out = MixedGraph::new(self.signature, vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                out.set_unchecked(i, j, self.relation(u, v));
            }
        }
        Ok(out)
    }

    /// Parses the `mixed <m> <n> <k>` text format.
    pub fn parse(text: &str) -> Result<MixedGraph> {
        let mut graph: Option<MixedGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    if tokens[0] != "mixed" || tokens.len() != 4 {
                        return Err(parse_err(line_no, "expected header `mixed <m> <n> <k>`"));
                    }
                    let m = parse_num::<u32>(tokens[1], line_no)?;
                    let n = parse_num::<u32>(tokens[2], line_no)?;
                    let k = parse_num::<usize>(tokens[3], line_no)?;
                    graph = Some(MixedGraph::new(Signature::new(m, n)?, k));
                }
                Some(g) => {
                    if tokens.len() != 4 {
                        return Err(parse_err(line_no, "expected `e|a <u> <v> <c>`"));
                    }
                    let u = parse_num::<usize>(tokens[1], line_no)?;
                    let v = parse_num::<usize>(tokens[2], line_no)?;
                    let c = parse_num::<u32>(tokens[3], line_no)?;
                    match tokens[0] {
                        "e" => g.add_edge(u, v, c)?,
                        "a" => g.add_arc(u, v, c)?,
                        other => {
                            return Err(parse_err(line_no, &format!("unknown line kind `{other}`")))
                        }
                    }
                }
            }
        }
        graph.ok_or_else(|| parse_err(1, "missing `mixed` header"))
    }

    /// Canonical text: header, sorted edge lines, then sorted arc lines.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::InvalidVertex(v));
        }
        Ok(())
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "mixed {} {} {}",
            self.signature.m, self.signature.n, self.vertex_count
        )?;
        for (u, v, c) in self.edges() {
            writeln!(f, "e {u} {v} {c}")?;
        }
        for (u, v, c) in self.arcs() {
            writeln!(f, "a {u} {v} {c}")?;
        }
        Ok(())
    }
}

/// An undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    vertex_count: usize,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            vertex_count,
            adj: vec![false; vertex_count * vertex_count],
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut g = SimpleGraph::new(vertex_count);
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                g.set_unchecked(u, v);
            }
        }
        g
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(Error::InvalidVertex(w));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateAdjacency(u.min(v), u.max(v)));
        }
        self.set_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, u: usize, v: usize) {
        let k = self.vertex_count;
        self.adj[u * k + v] = true;
        self.adj[v * k + u] = true;
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.vertex_count + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.vertex_count * self.vertex_count.saturating_sub(1)
    }

    /// Parses the `simple <k>` text format.
    pub fn parse(text: &str) -> Result<SimpleGraph> {
        let mut graph: Option<SimpleGraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    if tokens[0] != "simple" || tokens.len() != 2 {
                        return Err(parse_err(line_no, "expected header `simple <k>`"));
                    }
                    graph = Some(SimpleGraph::new(parse_num(tokens[1], line_no)?));
                }
                Some(g) => {
                    if tokens[0] != "e" || tokens.len() != 3 {
                        return Err(parse_err(line_no, "expected `e <u> <v>`"));
                    }
                    g.add_edge(
                        parse_num(tokens[1], line_no)?,
                        parse_num(tokens[2], line_no)?,
                    )?;
                }
            }
        }
        graph.ok_or_else(|| parse_err(1, "missing `simple` header"))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "simple {}", self.vertex_count)?;
        for (u, v) in self.edges() {
            writeln!(f, "e {u} {v}")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_num<T: std::str::FromStr>(token: &str, line: usize) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, &format!("`{token}` is not a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn new_graph_cases() {
        let g = MixedGraph::new(sig(1, 0), 0);
        assert_eq!(g.vertex_count(), 0);
        let g = MixedGraph::new(sig(0, 2), 3);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(g.adjacency_type(u, v).unwrap(), AdjacencyType::Absent);
                }
            }
        }
        assert_eq!(Signature::new(0, 0), Err(Error::ZeroSignature));
    }

    #[test]
    fn add_errors() {
        let mut g = MixedGraph::new(sig(0, 2), 3);
        g.add_edge(0, 1, 2).unwrap();
        assert_eq!(g.adjacency_type(0, 1).unwrap(), AdjacencyType::Edge(2));
        assert_eq!(g.adjacency_type(1, 0).unwrap(), AdjacencyType::Edge(2));
        assert_eq!(g.add_edge(1, 1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(
            g.add_edge(1, 2, 3),
            Err(Error::ColorOutOfRange { color: 3, max: 2 })
        );
        assert_eq!(
            g.add_edge(1, 2, 0),
            Err(Error::ColorOutOfRange { color: 0, max: 2 })
        );
        assert_eq!(g.add_edge(0, 5, 1), Err(Error::InvalidVertex(5)));

        let mut g = MixedGraph::new(sig(1, 1), 2);
        g.add_arc(0, 1, 1).unwrap();
        assert_eq!(g.add_edge(1, 0, 1), Err(Error::DuplicateAdjacency(0, 1)));

        let mut g = MixedGraph::new(sig(1, 0), 2);
        assert_eq!(
            g.add_arc(0, 1, 2),
            Err(Error::ColorOutOfRange { color: 2, max: 1 })
        );
    }

    #[test]
    fn arc_orientation() {
        let mut g = MixedGraph::new(sig(1, 0), 3);
        g.add_arc(0, 1, 1).unwrap();
        assert_eq!(g.adjacency_type(0, 1).unwrap(), AdjacencyType::ArcOut(1));
        assert_eq!(g.adjacency_type(1, 0).unwrap(), AdjacencyType::ArcIn(1));
        assert_eq!(g.adjacency_type(0, 2).unwrap(), AdjacencyType::Absent);
        assert_eq!(g.adjacency_type(0, 3), Err(Error::InvalidVertex(3)));
    }

    #[test]
    fn codes_cover_all_kinds() {
        for (m, n) in [(1, 0), (0, 2), (1, 1), (2, 0), (2, 3)] {
            let s = sig(m, n);
            let kinds: Vec<_> = AdjacencyType::all_adjacent(s).collect();
            assert_eq!(kinds.len(), s.adjacency_kinds());
            let mut dedup = kinds.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), kinds.len());
            for code in 0..s.pair_options() {
                let t = AdjacencyType::from_code(s, code).unwrap();
                assert_eq!(t.code(s), code);
                assert!(t.check_color(s).is_ok());
            }
            assert_eq!(AdjacencyType::from_code(s, s.pair_options()), None);
        }
    }

    #[test]
    fn parse_and_serialize() {
        let text = "mixed 1 0 2\na 0 1 1\n";
        let g = MixedGraph::parse(text).unwrap();
        assert_eq!(g.relation(0, 1), AdjacencyType::ArcOut(1));
        assert_eq!(g.to_text(), text);

        assert_eq!(
            MixedGraph::parse("mixed 0 2 2\ne 0 1 3\n"),
            Err(Error::ColorOutOfRange { color: 3, max: 2 })
        );
        let err = MixedGraph::parse("mixed 1 1 3\n# c\n\nx 0 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(matches!(
            MixedGraph::parse("mixed 1 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(MixedGraph::parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn canonical_order_edges_before_arcs() {
        let mut g = MixedGraph::new(sig(1, 2), 4);
        g.add_arc(3, 0, 1).unwrap();
        g.add_edge(2, 1, 2).unwrap();
        g.add_arc(1, 3, 1).unwrap();
        g.add_edge(0, 1, 1).unwrap();
        assert_eq!(
            g.to_text(),
            "mixed 1 2 4\ne 0 1 1\ne 1 2 2\na 1 3 1\na 3 0 1\n"
        );
    }

    #[test]
    fn underlying_graph() {
        let mut g = MixedGraph::new(sig(1, 0), 2);
        g.add_arc(0, 1, 1).unwrap();
        assert_eq!(g.underlying().edges(), vec![(0, 1)]);
        assert_eq!(MixedGraph::new(sig(1, 0), 0).underlying().edge_count(), 0);
    }

    #[test]
    fn simple_format() {
        let text = "simple 3\ne 0 1\ne 1 2\n";
        let g = SimpleGraph::parse(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.to_text(), text);
        assert_eq!(
            SimpleGraph::parse("simple 2\ne 0 1\ne 1 0\n"),
            Err(Error::DuplicateAdjacency(0, 1))
        );
    }

    fn arb_graph() -> impl Strategy<Value = MixedGraph> {
        (0u32..3, 0u32..3, 0usize..7)
            .prop_filter("nonzero signature", |(m, n, _)| m + n > 0)
            .prop_flat_map(|(m, n, k)| {
                let s = sig(m, n);
                let pairs = k * k.saturating_sub(1) / 2;
                proptest::collection::vec(0..s.pair_options(), pairs).prop_map(move |codes| {
                    let mut g = MixedGraph::new(s, k);
                    let mut it = codes.into_iter();
                    for u in 0..k {
                        for v in u + 1..k {
                            let t = AdjacencyType::from_code(s, it.next().unwrap()).unwrap();
                            g.add(u, v, t).unwrap();
                        }
                    }
                    g
                })
            })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            let text = g.to_text();
            let back = MixedGraph::parse(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_text(), text);
        }

        #[test]
        fn relation_is_antisymmetric(g in arb_graph()) {
            let k = g.vertex_count();
            for u in 0..k {
                for v in 0..k {
                    if u != v {
                        prop_assert_eq!(g.relation(u, v), g.relation(v, u).reverse());
                    }
                }
            }
            prop_assert_eq!(g.edges().len() + g.arcs().len(), g.adjacency_count());
        }
    }
}
