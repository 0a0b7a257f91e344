//! Finite graphs with boundary, their construction from a subset of a host
//! Cayley graph, validation, and the JSON file format.
//!
//! Graph JSON:
//!
//! ```json
//! {"vertices": [{"id": 0, "boundary": false, "label": [0, 0]}, ...],
//!  "edges": [[0, 1], ...],
//!  "host": {"kind": "free_abelian", "rank": 2}}
//! ```
//!
//! Indices are 0-based, edges list the smaller index first, `label` and
//! `host` are optional.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub boundary: bool,
    pub label: Option<GroupElement>,
}

/// A violated graph-with-boundary invariant, with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Loop { vertex: usize },
    DuplicateEdge { a: usize, b: usize },
    EmptyBoundary,
    BoundaryEdge { a: usize, b: usize },
    Disconnected { components: usize, unreachable: Vec<usize> },
    DuplicateLabel { a: usize, b: usize },
    LabelMismatch { vertex: usize },
    NotInHost { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::DuplicateEdge { a, b } => write!(f, "duplicate edge {{{a},{b}}}"),
            Violation::EmptyBoundary => write!(f, "boundary is empty"),
            Violation::BoundaryEdge { a, b } => write!(f, "edge {{{a},{b}}} joins two boundary vertices"),
            Violation::Disconnected { components, unreachable } => {
                write!(f, "graph has {components} components; unreachable from vertex 0: {unreachable:?}")
            }
            Violation::DuplicateLabel { a, b } => write!(f, "vertices {a} and {b} share a host label"),
            Violation::LabelMismatch { vertex } => {
                write!(f, "label of vertex {vertex} is not an element of the host group")
            }
            Violation::NotInHost { a, b } => write!(f, "edge {{{a},{b}}} is not an edge of the host graph"),
        }
    }
}

/// A finite simple connected graph with a nonempty boundary set carrying no
/// internal edges. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWithBoundary {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    boundary: Vec<usize>,
    interior: Vec<usize>,
    host: Option<GroupDescriptor>,
}

impl GraphWithBoundary {
    /// Builds and validates.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>, host: Option<GroupDescriptor>) -> Result<Self> {
        let g = Self::new_unvalidated(vertices, edges, host)?;
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidGraph(violations))
        }
    }

    /// Builds without checking the graph-with-boundary invariants. Only the
    /// structural requirement (edge endpoints in range) is enforced.
    pub fn new_unvalidated(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        host: Option<GroupDescriptor>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Schema(format!("edge [{a},{b}] references a vertex outside 0..{n}")));
            }
            let e = (a.min(b), a.max(b));
            adjacency[e.0].push(e.1);
            if e.0 != e.1 {
                adjacency[e.1].push(e.0);
            }
            normalized.push(e);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        let boundary = (0..n).filter(|&i| vertices[i].boundary).collect();
        let interior = (0..n).filter(|&i| !vertices[i].boundary).collect();
        Ok(GraphWithBoundary { vertices, edges: normalized, adjacency, boundary, interior, host })
    }

    /// Simple unlabeled graph from a vertex count, boundary indices and edges.
    pub fn from_edges(n: usize, boundary: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut vertices = vec![Vertex { boundary: false, label: None }; n];
        for &b in boundary {
            if b >= n {
                return Err(Error::Schema(format!("boundary vertex {b} outside 0..{n}")));
            }
            vertices[b].boundary = true;
        }
        Self::new(vertices, edges.to_vec(), None)
    }

    /// Every violated invariant; empty when the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                out.push(Violation::Loop { vertex: a });
            } else if !seen.insert((a, b)) {
                out.push(Violation::DuplicateEdge { a, b });
            }
        }
        if self.boundary.is_empty() {
            out.push(Violation::EmptyBoundary);
        }
        for &(a, b) in &self.edges {
            if a != b && self.vertices[a].boundary && self.vertices[b].boundary {
                out.push(Violation::BoundaryEdge { a, b });
            }
        }
        let (components, reach) = self.components();
        if components > 1 {
            let unreachable = (0..self.len()).filter(|&i| reach[i] != reach[0]).collect();
            out.push(Violation::Disconnected { components, unreachable });
        }
        let mut labels: HashMap<&GroupElement, usize> = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(l) = &v.label {
                if let Some(&j) = labels.get(l) {
                    out.push(Violation::DuplicateLabel { a: j, b: i });
                } else {
                    labels.insert(l, i);
                }
                if let Some(h) = &self.host {
                    if h.check(l).is_err() {
                        out.push(Violation::LabelMismatch { vertex: i });
                    }
                }
            }
        }
        if let Some(h) = &self.host {
            for &(a, b) in &self.edges {
                if let (Some(x), Some(y)) = (&self.vertices[a].label, &self.vertices[b].label) {
                    if h.check(x).is_ok() && h.check(y).is_ok() && !h.neighbors(x).any(|z| &z == y) {
                        out.push(Violation::NotInHost { a, b });
                    }
                }
            }
        }
        out
    }

    /// Number of connected components and a component id per vertex.
    fn components(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.vertices[v].boundary
    }

    /// Boundary vertex indices in increasing order; boundary functions use this order.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn label(&self, v: usize) -> Option<&GroupElement> {
        self.vertices[v].label.as_ref()
    }

    pub fn host(&self) -> Option<&GroupDescriptor> {
        self.host.as_ref()
    }

    pub fn with_host(mut self, host: GroupDescriptor) -> Result<Self> {
        self.host = Some(host);
        let violations = self.validate();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidGraph(violations))
        }
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexJson {
                    id,
                    boundary: v.boundary,
                    label: v.label.as_ref().map(|l| l.coords().to_vec()),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            host: self.host.clone(),
        };
        serde_json::to_string(&doc).expect("graph serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let n = doc.vertices.len();
        let mut slots: Vec<Option<Vertex>> = vec![None; n];
        for v in doc.vertices {
            if v.id >= n {
                return Err(Error::Schema(format!("vertex id {} outside 0..{n}", v.id)));
            }
            if slots[v.id].is_some() {
                return Err(Error::Schema(format!("vertex id {} listed twice", v.id)));
            }
            slots[v.id] = Some(Vertex { boundary: v.boundary, label: v.label.map(GroupElement::new) });
        }
        let vertices = slots.into_iter().map(|v| v.expect("ids are a permutation")).collect();
        let edges = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Self::new(vertices, edges, doc.host)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    id: usize,
    boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Vec<i64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    host: Option<GroupDescriptor>,
}

/// A finite subset Ω of a host group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubsetSpec {
    host: GroupDescriptor,
    omega: Vec<GroupElement>,
}

impl InducedSubsetSpec {
    /// Sorts and deduplicates `omega`.
    pub fn new(host: GroupDescriptor, omega: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let set: BTreeSet<GroupElement> = omega.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidParameter("Ω must be nonempty".into()));
        }
        for g in &set {
            host.check(g)?;
        }
        Ok(InducedSubsetSpec { host, omega: set.into_iter().collect() })
    }

    pub fn host(&self) -> &GroupDescriptor {
        &self.host
    }

    pub fn omega(&self) -> &[GroupElement] {
        &self.omega
    }

    /// δΩ: elements outside Ω adjacent to Ω, sorted.
    pub fn vertex_boundary(&self) -> Vec<GroupElement> {
        let inside: HashSet<&GroupElement> = self.omega.iter().collect();
        let out: BTreeSet<GroupElement> =
            self.omega.iter().flat_map(|w| self.host.neighbors(w)).filter(|x| !inside.contains(x)).collect();
        out.into_iter().collect()
    }

    /// The graph with boundary induced by Ω: vertices Ω ∪ δΩ (interior first,
    /// each part sorted by label), edges E(Ω, Ω̄), boundary δΩ.
    pub fn induce(&self) -> Result<GraphWithBoundary> {
        let delta = self.vertex_boundary();
        let mut index: HashMap<&GroupElement, usize> = HashMap::new();
        let mut vertices = Vec::with_capacity(self.omega.len() + delta.len());
        for (g, boundary) in self.omega.iter().map(|g| (g, false)).chain(delta.iter().map(|g| (g, true))) {
            index.insert(g, vertices.len());
            vertices.push(Vertex { boundary, label: Some(g.clone()) });
        }
        let mut edges = BTreeSet::new();
        for (i, w) in self.omega.iter().enumerate() {
            for x in self.host.neighbors(w) {
                let j = index[&x];
                edges.insert((i.min(j), i.max(j)));
            }
        }
        let g = GraphWithBoundary::new_unvalidated(vertices, edges.into_iter().collect(), Some(self.host.clone()))?;
        let (components, _) = g.components();
        if components > 1 {
            return Err(Error::DisconnectedResult { components });
        }
        let violations = g.validate();
        if !violations.is_empty() {
            return Err(Error::Invariant(format!("induced graph invalid: {violations:?}")));
        }
        Ok(g)
    }
}

/// Two boundary vertices joined by `n` paths of length 2. Its first nonzero
/// Steklov eigenvalue is exactly `n`.
pub fn two_point_family(n: usize) -> Result<GraphWithBoundary> {
    if n == 0 {
        return Err(Error::InvalidParameter("two_point family needs n >= 1".into()));
    }
    let (b0, b1) = (n, n + 1);
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| [(i, b0), (i, b1)]).collect();
    GraphWithBoundary::from_edges(n + 2, &[b0, b1], &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    fn z(d: usize) -> GroupDescriptor {
        GroupDescriptor::free_abelian(d).unwrap()
    }

    #[test]
    fn validate_examples() {
        let path = GraphWithBoundary::from_edges(3, &[0, 2], &[(0, 1), (1, 2)]).unwrap();
        assert!(path.validate().is_empty());

        let bb =
            GraphWithBoundary::new_unvalidated(vec![Vertex { boundary: true, label: None }; 2], vec![(0, 1)], None)
                .unwrap();
        assert_eq!(bb.validate(), vec![Violation::BoundaryEdge { a: 0, b: 1 }]);

        let mut vs = vec![Vertex { boundary: false, label: None }; 4];
        vs[0].boundary = true;
        vs[2].boundary = true;
        let two = GraphWithBoundary::new_unvalidated(vs, vec![(0, 1), (2, 3)], None).unwrap();
        assert_eq!(two.validate(), vec![Violation::Disconnected { components: 2, unreachable: vec![2, 3] }]);
    }

    #[test]
    fn validate_reports_every_clause() {
        let vs = vec![Vertex { boundary: false, label: None }; 2];
        let g = GraphWithBoundary::new_unvalidated(vs, vec![(0, 1), (1, 0), (1, 1)], None).unwrap();
        let v = g.validate();
        assert!(v.contains(&Violation::DuplicateEdge { a: 0, b: 1 }));
        assert!(v.contains(&Violation::Loop { vertex: 1 }));
        assert!(v.contains(&Violation::EmptyBoundary));
        assert!(matches!(
            GraphWithBoundary::new(g.vertices.clone(), g.edges.clone(), None),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn host_inclusion_checked() {
        let vs = vec![
            Vertex { boundary: true, label: Some(el(&[0, 0])) },
            Vertex { boundary: false, label: Some(el(&[1, 1])) },
        ];
        let err = GraphWithBoundary::new(vs, vec![(0, 1)], Some(z(2))).unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(v) if v == vec![Violation::NotInHost { a: 0, b: 1 }]));
    }

    #[test]
    fn vertex_boundary_examples() {
        let s = InducedSubsetSpec::new(z(2), [el(&[0, 0])]).unwrap();
        assert_eq!(s.vertex_boundary(), vec![el(&[-1, 0]), el(&[0, -1]), el(&[0, 1]), el(&[1, 0])]);
        let s = InducedSubsetSpec::new(z(1), [0, 1, 2].map(|x| el(&[x]))).unwrap();
        assert_eq!(s.vertex_boundary(), vec![el(&[-1]), el(&[3])]);
        let h = GroupDescriptor::heisenberg();
        let s = InducedSubsetSpec::new(h.clone(), [h.identity()]).unwrap();
        let mut gens = h.generators().to_vec();
        gens.sort();
        assert_eq!(s.vertex_boundary(), gens);
    }

    #[test]
    fn induce_star_and_box() {
        let star = InducedSubsetSpec::new(z(2), [el(&[0, 0])]).unwrap().induce().unwrap();
        assert_eq!((star.len(), star.interior().len(), star.boundary().len(), star.edges().len()), (5, 1, 4, 4));

        let omega = (0..2).flat_map(|x| (0..3).map(move |y| el(&[x, y])));
        let g = InducedSubsetSpec::new(z(2), omega).unwrap().induce().unwrap();
        assert_eq!(g.interior().len(), 6);
        assert_eq!(g.boundary().len(), 10);
        assert_eq!(g.len(), 16);
        assert_eq!(g.edges().len(), 17);
        let inner = g.edges().iter().filter(|&&(a, b)| !g.is_boundary(a) && !g.is_boundary(b)).count();
        assert_eq!(inner, 7);
        // Ordering: interior then boundary, each sorted by label.
        assert!(g.interior().iter().all(|&i| i < 6));
        let labels: Vec<_> = (0..6).map(|i| g.label(i).unwrap().clone()).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn induce_five_cell_subset() {
        let omega = [[4, 2], [5, 2], [6, 2], [5, 3], [6, 3]].map(|p| el(&p));
        let spec = InducedSubsetSpec::new(z(2), omega).unwrap();
        let delta: BTreeSet<GroupElement> = spec.vertex_boundary().into_iter().collect();
        let want: BTreeSet<GroupElement> =
            [[3, 2], [4, 3], [4, 1], [5, 1], [6, 1], [7, 2], [7, 3], [6, 4], [5, 4]].map(|p| el(&p)).into();
        assert_eq!(delta, want);
        let g = spec.induce().unwrap();
        assert_eq!(g.len(), 14);
        assert_eq!(g.edges().len(), 15);
        // The drawn segments: rows y=2 (x 3..7), y=3 (x 4..7), columns x=4 (y 1..3), x=5, x=6 (y 1..4).
        let mut drawn = BTreeSet::new();
        let mut seg = |a: [i64; 2], b: [i64; 2]| {
            drawn.insert((el(&a).min(el(&b)), el(&a).max(el(&b))));
        };
        for x in 3..7 {
            seg([x, 2], [x + 1, 2]);
        }
        for x in 4..7 {
            seg([x, 3], [x + 1, 3]);
        }
        for y in 1..3 {
            seg([4, y], [4, y + 1]);
        }
        for x in [5, 6] {
            for y in 1..4 {
                seg([x, y], [x, y + 1]);
            }
        }
        let got: BTreeSet<_> = g
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (g.label(a).unwrap().clone(), g.label(b).unwrap().clone());
                (p.clone().min(q.clone()), p.max(q))
            })
            .collect();
        assert_eq!(got, drawn);
    }

    #[test]
    fn induce_rejects_disconnected() {
        let spec = InducedSubsetSpec::new(z(1), [el(&[0]), el(&[5])]).unwrap();
        assert!(matches!(spec.induce(), Err(Error::DisconnectedResult { components: 2 })));
        // Diagonal neighbours in ℤ² share boundary vertices, so the induced graph is connected.
        let spec = InducedSubsetSpec::new(z(2), [el(&[0, 0]), el(&[1, 1])]).unwrap();
        assert!(spec.induce().is_ok());
    }

    #[test]
    fn family_g() {
        let g1 = two_point_family(1).unwrap();
        assert_eq!((g1.len(), g1.edges().len()), (3, 2));
        let g4 = two_point_family(4).unwrap();
        assert_eq!((g4.len(), g4.edges().len()), (6, 8));
        let g = two_point_family(1000).unwrap();
        assert_eq!((g.len(), g.edges().len()), (1002, 2000));
        assert!(two_point_family(0).is_err());
    }

    #[test]
    fn json_round_trips() {
        let star = InducedSubsetSpec::new(z(2), [el(&[0, 0])]).unwrap().induce().unwrap();
        assert_eq!(GraphWithBoundary::from_json(&star.to_json()).unwrap(), star);
        let g3 = two_point_family(3).unwrap();
        let text = g3.to_json();
        assert_eq!(GraphWithBoundary::from_json(&text).unwrap(), g3);
        assert!(!text.contains("label"));
    }

    #[test]
    fn json_errors() {
        let bad = r#"{"vertices":[{"id":0,"boundary":true},{"id":1,"boundary":false}],"edges":[[0,7]]}"#;
        assert!(matches!(GraphWithBoundary::from_json(bad), Err(Error::Schema(_))));
        let dup = r#"{"vertices":[{"id":0,"boundary":true},{"id":0,"boundary":false}],"edges":[]}"#;
        assert!(matches!(GraphWithBoundary::from_json(dup), Err(Error::Schema(_))));
        let extra = r#"{"vertices":[],"edges":[],"weights":[]}"#;
        assert!(matches!(GraphWithBoundary::from_json(extra), Err(Error::Schema(_))));
        let bb = r#"{"vertices":[{"id":0,"boundary":true},{"id":1,"boundary":true}],"edges":[[0,1]]}"#;
        assert!(matches!(GraphWithBoundary::from_json(bb), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn json_accepts_included_not_induced() {
        // A graph included in ℤ² but not induced by any subset: in ℤ² but not induced by any subset.
        let text = r#"{"vertices":[
            {"id":0,"boundary":true,"label":[1,1]},{"id":1,"boundary":false,"label":[1,2]},
            {"id":2,"boundary":true,"label":[1,3]},{"id":3,"boundary":false,"label":[2,2]},
            {"id":4,"boundary":false,"label":[3,2]},{"id":5,"boundary":false,"label":[4,2]},
            {"id":6,"boundary":false,"label":[4,3]},{"id":7,"boundary":false,"label":[3,3]}],
            "edges":[[0,1],[1,2],[1,3],[3,4],[4,5],[5,6],[6,7],[4,7]],
            "host":{"kind":"free_abelian","rank":2}}"#;
        let g = GraphWithBoundary::from_json(text).unwrap();
        assert_eq!(g.boundary(), &[0, 2]);
        assert!(g.host().is_some());
    }
}
