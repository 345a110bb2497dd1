//! Generators for the extremal clique families, the join `A+B`, paths and cycles.

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, MixedGraph, Signature, SimpleGraph};

/// Family name, parameters and a label for every generated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub family: String,
    pub signature: Option<Signature>,
    pub params: Vec<(String, usize)>,
    pub labels: Vec<String>,
    /// Index of the universal vertex of a join.
    pub infinity: Option<usize>,
}

impl FamilyDescriptor {
    /// `# role <vertex> <label>` comment lines.
    pub fn role_lines(&self) -> String {
        self.labels
            .iter()
            .enumerate()
            .map(|(v, label)| format!("# role {v} {label}\n"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub graph: MixedGraph,
    pub descriptor: FamilyDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleConstruction {
    pub graph: SimpleGraph,
    pub descriptor: FamilyDescriptor,
}

/// Relation from the hub to a vertex of group `i` (1-based): edge color
/// `i` for the first `n` groups, then out-arcs, then in-arcs.
fn hub_relation(sig: Signature, group: u32) -> AdjacencyType {
    let (m, n) = (sig.arc_colors(), sig.edge_colors());
    if group <= n {
        AdjacencyType::Edge(group)
    } else if group <= n + m {
        AdjacencyType::ArcOut(group - n)
    } else {
        AdjacencyType::ArcIn(group - n - m)
    }
}

fn check_supported(sig: Signature) -> Result<()> {
    if sig.arc_colors() == 0 && sig.edge_colors() == 1 {
        return Err(Error::UnsupportedSignature(0, 1));
    }
    Ok(())
}

/// Writes the outerplanar clique into `g` starting at `offset`; returns labels.
fn emit_outerplanar(g: &mut MixedGraph, offset: usize) -> Vec<String> {
    let sig = g.signature();
    let groups = sig.adjacency_kinds() as u32;
    let hub = offset;
    let mut labels = vec!["x".to_string()];
    // within-group 2-paths: two edge colors when available, else a directed path
    let (first, second) = if sig.edge_colors() >= 2 {
        (AdjacencyType::Edge(1), AdjacencyType::Edge(2))
    } else {
        (AdjacencyType::ArcOut(1), AdjacencyType::ArcOut(1))
    };
    for i in 1..=groups {
        let base = offset + 1 + 3 * (i as usize - 1);
        for j in 0..3 {
            g.set_unchecked(hub, base + j, hub_relation(sig, i));
            labels.push(format!("v{i}.{}", j + 1));
        }
        g.set_unchecked(base, base + 1, first);
        g.set_unchecked(base + 1, base + 2, second);
    }
    labels
}

/// Outerplanar (m,n)-clique on `3(2m+n)+1` vertices: a hub `x` (vertex 0)
/// and `2m+n` groups of three, each group a special 2-path.
pub fn outerplanar_clique(sig: Signature) -> Result<Construction> {
    check_supported(sig)?;
    let order = 3 * sig.adjacency_kinds() + 1;
    let mut graph = MixedGraph::new(sig, order);
    let labels = emit_outerplanar(&mut graph, 0);
    Ok(Construction {
        graph,
        descriptor: FamilyDescriptor {
            family: "outerplanar-clique".into(),
            signature: Some(sig),
            params: vec![("order".into(), order)],
            labels,
            infinity: None,
        },
    })
}

/// Planar (m,n)-clique on `3(2m+n)^2+(2m+n)+1` vertices: a new hub `x`
/// (vertex 0) over `2m+n` copies of the outerplanar clique, joined to copy
/// `i` by the `i`-th adjacency kind.
pub fn planar_clique(sig: Signature) -> Result<Construction> {
    check_supported(sig)?;
    let t = sig.adjacency_kinds();
    let copy_order = 3 * t + 1;
    let order = t * copy_order + 1;
    let mut graph = MixedGraph::new(sig, order);
    let mut labels = vec!["x".to_string()];
    for i in 1..=t {
        let offset = 1 + (i - 1) * copy_order;
        let inner = emit_outerplanar(&mut graph, offset);
        for (j, label) in inner.into_iter().enumerate() {
            graph.set_unchecked(0, offset + j, hub_relation(sig, i as u32));
            labels.push(format!("H{i}.{label}"));
        }
    }
    Ok(Construction {
        graph,
        descriptor: FamilyDescriptor {
            family: "planar-clique".into(),
            signature: Some(sig),
            params: vec![("order".into(), order)],
            labels,
            infinity: None,
        },
    })
}

fn default_labels(g: &SimpleGraph) -> Vec<String> {
    (0..g.vertex_count()).map(|v| v.to_string()).collect()
}

fn join_labelled(
    a: &SimpleGraph,
    a_labels: &[String],
    b: &SimpleGraph,
    b_labels: &[String],
) -> SimpleConstruction {
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    let inf = na + nb;
    let mut graph = SimpleGraph::new(inf + 1);
    for (u, v) in a.edges() {
        graph.set_unchecked(u, v);
    }
    for (u, v) in b.edges() {
        graph.set_unchecked(na + u, na + v);
    }
    for w in 0..inf {
        graph.set_unchecked(w, inf);
    }
    let labels = a_labels
        .iter()
        .map(|l| format!("A.{l}"))
        .chain(b_labels.iter().map(|l| format!("B.{l}")))
        .chain(std::iter::once("inf".to_string()))
        .collect();
    SimpleConstruction {
        graph,
        descriptor: FamilyDescriptor {
            family: "join".into(),
            signature: None,
            params: vec![("a".into(), na), ("b".into(), nb)],
            labels,
            infinity: Some(inf),
        },
    }
}

/// Disjoint `A` (vertices `0..|A|`), `B` (next `|B|`), and a universal
/// vertex at index `|A|+|B|`.
pub fn join(a: &SimpleGraph, b: &SimpleGraph) -> SimpleConstruction {
    join_labelled(a, &default_labels(a), b, &default_labels(b))
}

/// `H_1 = H`, `H_k = H + H_{k-1}`.
pub fn iterated_join(h: &SimpleGraph, k: usize) -> Result<SimpleConstruction> {
    if k < 1 {
        return Err(Error::InvalidArgument("iterated join needs k >= 1".into()));
    }
    let mut current = SimpleConstruction {
        graph: h.clone(),
        descriptor: FamilyDescriptor {
            family: "iterate".into(),
            signature: None,
            params: vec![("k".into(), 1)],
            labels: default_labels(h),
            infinity: None,
        },
    };
    for level in 2..=k {
        let mut next = join_labelled(
            h,
            &default_labels(h),
            &current.graph,
            &current.descriptor.labels,
        );
        next.descriptor.family = "iterate".into();
        next.descriptor.params = vec![("k".into(), level)];
        current = next;
    }
    Ok(current)
}

/// Path with `edge_count` edges on `edge_count + 1` vertices.
pub fn path(edge_count: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(edge_count + 1);
    for i in 0..edge_count {
        g.set_unchecked(i, i + 1);
    }
    g
}

pub fn cycle(length: usize) -> Result<SimpleGraph> {
    if length < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {length} < 3")));
    }
    let mut g = SimpleGraph::new(length);
    for i in 0..length {
        g.set_unchecked(i, (i + 1) % length);
    }
    Ok(g)
}
