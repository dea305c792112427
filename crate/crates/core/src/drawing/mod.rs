//! Drawings as planarizations with a rotation system.
//!
//! A [`Drawing`] stores, for every base edge, the sequence of nodes it
//! passes through (its endpoints and the crossings along it, in order) and,
//! for every node, the counter-clockwise cyclic order of incident arcs. Arcs
//! are named by `(edge, segment)`. Drawings live on the sphere: there is no
//! outer face.

mod canon;
pub mod geometry;
mod json;
pub mod map;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use canon::{canonical_key, colored_key, isomorphic, labeled_key, weakly_isomorphic, KeyMode, WEAK_KEY_MAX_VERTICES};
pub(crate) use canon::map_code;
pub use map::{Corner, NodeKind, PlaneMap};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeRef {
    Vertex(usize),
    Crossing(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRef {
    pub edge: usize,
    pub seg: usize,
}

impl fmt::Display for ArcRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.edge, self.seg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    /// The two crossing edges, sorted.
    pub pair: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: Graph,
    crossings: Vec<Crossing>,
    edge_paths: Vec<Vec<NodeRef>>,
    rotation: Vec<Vec<ArcRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrawingIssue {
    MalformedPath { edge: usize, reason: String },
    CrossingMultiplicity { crossing: usize, count: usize },
    CrossingPairMismatch { crossing: usize },
    SelfCrossing { crossing: usize },
    RotationMismatch { node: String },
    MissingRotation,
    /// The two arcs of one edge are adjacent in the crossing rotation.
    Touching { crossing: usize },
    Disconnected { components: usize },
    Euler { v: usize, e: usize, f: usize },
}

impl fmt::Display for DrawingIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrawingIssue::MalformedPath { edge, reason } => write!(f, "edge {edge}: malformed path ({reason})"),
            DrawingIssue::CrossingMultiplicity { crossing, count } => {
                write!(f, "crossing {crossing} appears {count} times on edge paths, expected 2")
            }
            DrawingIssue::CrossingPairMismatch { crossing } => {
                write!(f, "crossing {crossing}: declared pair differs from the edges through it")
            }
            DrawingIssue::SelfCrossing { crossing } => write!(f, "crossing {crossing}: an edge crosses itself"),
            DrawingIssue::RotationMismatch { node } => write!(f, "node {node}: rotation does not list exactly its incident arcs"),
            DrawingIssue::MissingRotation => write!(f, "rotation table has the wrong number of nodes"),
            DrawingIssue::Touching { crossing } => write!(f, "crossing {crossing}: touching, not crossing"),
            DrawingIssue::Disconnected { components } => write!(f, "planarization has {components} components"),
            DrawingIssue::Euler { v, e, f: faces } => write!(f, "Euler check failed: V={v} E={e} F={faces}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawingReport {
    pub issues: Vec<DrawingIssue>,
}

impl DrawingReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_touching(&self) -> bool {
        self.issues.iter().any(|i| matches!(i, DrawingIssue::Touching { .. }))
    }
}

/// A directed arc: `arc` traversed away from `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedArc {
    pub from: NodeRef,
    pub arc: ArcRef,
}

pub type Face = Vec<DirectedArc>;

/// Multiset of crossing edge pairs, each pair sorted, the list sorted.
pub type CrossingPairSet = Vec<(usize, usize)>;

impl Drawing {
    /// Assembles a drawing and checks every structural invariant.
    pub fn from_parts(
        graph: Graph,
        crossings: Vec<Crossing>,
        edge_paths: Vec<Vec<NodeRef>>,
        rotation: Vec<Vec<ArcRef>>,
    ) -> Result<Self> {
        let d = Self::from_parts_unchecked(graph, crossings, edge_paths, rotation);
        let report = d.validate();
        if let Some(issue) = report.issues.first() {
            return Err(Error::InvalidDrawing(issue.to_string()));
        }
        Ok(d)
    }

    pub fn from_parts_unchecked(
        graph: Graph,
        crossings: Vec<Crossing>,
        edge_paths: Vec<Vec<NodeRef>>,
        rotation: Vec<Vec<ArcRef>>,
    ) -> Self {
        Drawing { graph, crossings, edge_paths, rotation }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edge_paths(&self) -> &[Vec<NodeRef>] {
        &self.edge_paths
    }

    pub fn rotation(&self) -> &[Vec<ArcRef>] {
        &self.rotation
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn node_index(&self, n: NodeRef) -> usize {
        match n {
            NodeRef::Vertex(v) => v,
            NodeRef::Crossing(c) => self.graph.vertex_count() + c,
        }
    }

    pub fn node_ref(&self, idx: usize) -> NodeRef {
        let nv = self.graph.vertex_count();
        if idx < nv {
            NodeRef::Vertex(idx)
        } else {
            NodeRef::Crossing(idx - nv)
        }
    }

    pub fn node_name(&self, n: NodeRef) -> &str {
        match n {
            NodeRef::Vertex(v) => self.graph.name(v),
            NodeRef::Crossing(c) => &self.crossings[c].id,
        }
    }

    /// Checks every structural invariant; never panics on malformed input.
    pub fn validate(&self) -> DrawingReport {
        let mut issues = Vec::new();
        let nv = self.graph.vertex_count();
        let nc = self.crossings.len();
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); nc];
        if self.edge_paths.len() != self.graph.edge_count() {
            issues.push(DrawingIssue::MalformedPath {
                edge: self.edge_paths.len(),
                reason: format!("{} paths for {} edges", self.edge_paths.len(), self.graph.edge_count()),
            });
            return DrawingReport { issues };
        }
        for (e, path) in self.edge_paths.iter().enumerate() {
            let (a, b) = self.graph.edge(e);
            let bad = |reason: &str| DrawingIssue::MalformedPath { edge: e, reason: reason.into() };
            if path.len() < 2 {
                issues.push(bad("fewer than two nodes"));
                continue;
            }
            if path[0] != NodeRef::Vertex(a) || path[path.len() - 1] != NodeRef::Vertex(b) {
                issues.push(bad("path does not run between the edge's endpoints"));
                continue;
            }
            for n in &path[1..path.len() - 1] {
                match *n {
                    NodeRef::Crossing(c) if c < nc => seen[c].push(e),
                    _ => issues.push(bad("interior node is not a known crossing")),
                }
            }
        }
        for (c, es) in seen.iter().enumerate() {
            if es.len() != 2 {
                issues.push(DrawingIssue::CrossingMultiplicity { crossing: c, count: es.len() });
                continue;
            }
            if es[0] == es[1] {
                issues.push(DrawingIssue::SelfCrossing { crossing: c });
                continue;
            }
            let mut p = [es[0], es[1]];
            p.sort_unstable();
            let mut q = self.crossings[c].pair;
            q.sort_unstable();
            if p != q {
                issues.push(DrawingIssue::CrossingPairMismatch { crossing: c });
            }
        }
        if !issues.is_empty() {
            return DrawingReport { issues };
        }
        if self.rotation.len() != nv + nc {
            issues.push(DrawingIssue::MissingRotation);
            return DrawingReport { issues };
        }
        // incident arcs per node, as a sorted multiset
        let mut expected: Vec<Vec<ArcRef>> = vec![Vec::new(); nv + nc];
        for (e, path) in self.edge_paths.iter().enumerate() {
            for s in 0..path.len() - 1 {
                let arc = ArcRef { edge: e, seg: s };
                expected[self.node_index(path[s])].push(arc);
                expected[self.node_index(path[s + 1])].push(arc);
            }
        }
        for (x, exp) in expected.iter_mut().enumerate() {
            exp.sort_unstable();
            let mut got = self.rotation[x].clone();
            got.sort_unstable();
            if got != *exp {
                issues.push(DrawingIssue::RotationMismatch { node: self.node_name(self.node_ref(x)).to_string() });
            }
        }
        if !issues.is_empty() {
            return DrawingReport { issues };
        }
        for c in 0..nc {
            let rot = &self.rotation[nv + c];
            if rot.len() != 4 || rot[0].edge != rot[2].edge || rot[1].edge != rot[3].edge || rot[0].edge == rot[1].edge {
                issues.push(DrawingIssue::Touching { crossing: c });
            }
        }
        let map = PlaneMap::from_drawing(self);
        let comps = map.components();
        if comps != 1 {
            issues.push(DrawingIssue::Disconnected { components: comps });
        } else if map.euler() != 2 {
            let v = map.live_nodes();
            let e = map.live_segments();
            issues.push(DrawingIssue::Euler { v, e, f: (map.euler() + e as i64 - v as i64) as usize });
        }
        DrawingReport { issues }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn plane_map(&self) -> PlaneMap {
        PlaneMap::from_drawing(self)
    }

    /// Number of crossings on edge `e`.
    pub fn crossings_of_edge(&self, e: usize) -> Result<usize> {
        self.edge_paths
            .get(e)
            .map(|p| p.len() - 2)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown edge {e}")))
    }

    pub fn edge_crossing_counts(&self) -> Vec<usize> {
        self.edge_paths.iter().map(|p| p.len() - 2).collect()
    }

    pub fn crossing_pairs(&self) -> CrossingPairSet {
        let mut v: Vec<(usize, usize)> = self.crossings.iter().map(|c| (c.pair[0], c.pair[1])).collect();
        v.sort_unstable();
        v
    }

    /// No pair of edges crosses twice and adjacent edges never cross.
    pub fn is_simple(&self) -> bool {
        let pairs = self.crossing_pairs();
        pairs.windows(2).all(|w| w[0] != w[1]) && pairs.iter().all(|&(e, f)| !self.graph.adjacent(e, f))
    }

    /// Every crossing pair has an edge with at most `k` crossings.
    pub fn is_min_k_planar(&self, k: usize) -> bool {
        let cr = self.edge_crossing_counts();
        self.crossings.iter().all(|c| cr[c.pair[0]].min(cr[c.pair[1]]) <= k)
    }

    /// Every edge has at most `k` crossings.
    pub fn is_k_planar(&self, k: usize) -> bool {
        self.edge_paths.iter().all(|p| p.len() - 2 <= k)
    }

    pub fn max_edge_crossings(&self) -> usize {
        self.edge_paths.iter().map(|p| p.len() - 2).max().unwrap_or(0)
    }

    /// Faces of the planarization as cyclic sequences of directed arcs.
    pub fn faces(&self) -> Vec<Face> {
        let map = self.plane_map();
        let (faces, _) = map.faces();
        let dart_arc = self.dart_arcs(&map);
        faces
            .into_iter()
            .map(|f| f.into_iter().map(|d| dart_arc[d]).collect())
            .collect()
    }

    fn dart_arcs(&self, map: &PlaneMap) -> Vec<DirectedArc> {
        let mut out = Vec::with_capacity(map.dart_count());
        let mut d = 0;
        for (e, path) in self.edge_paths.iter().enumerate() {
            for s in 0..path.len() - 1 {
                let arc = ArcRef { edge: e, seg: s };
                debug_assert_eq!(d, out.len());
                out.push(DirectedArc { from: path[s], arc });
                out.push(DirectedArc { from: path[s + 1], arc });
                d += 2;
            }
        }
        out
    }

    /// The subdrawing induced by the vertices with `keep[v]`.
    pub fn induced_subdrawing(&self, keep: &[bool]) -> Drawing {
        let (sub, kept) = self.graph.induced(keep);
        let mut new_id = vec![usize::MAX; self.graph.edge_count()];
        for (i, &e) in kept.iter().enumerate() {
            new_id[e] = i;
        }
        self.restrict_edges(&sub, &new_id)
    }

    /// Drops every edge with `new_id[e] == usize::MAX`, renumbering the rest.
    /// `sub` must hold exactly the kept vertices (in original order) and edges.
    pub fn restrict_edges(&self, sub: &Graph, new_id: &[usize]) -> Drawing {
        let mut map = self.plane_map();
        for d in (0..map.dart_count()).step_by(2) {
            if map.alive[d] && new_id[map.edge[d]] == usize::MAX {
                map.delete_segment(d);
            }
        }
        for x in 0..map.node_count() {
            if map.kind[x] != NodeKind::Crossing || !map.node_alive[x] {
                continue;
            }
            match map.degree(x) {
                0 => map.node_alive[x] = false,
                2 => map.dissolve(x),
                _ => {}
            }
        }
        let mut vmap = vec![usize::MAX; self.graph.vertex_count()];
        for (i, name) in sub.names().iter().enumerate() {
            vmap[self.graph.vertex(name).expect("subgraph vertex")] = i;
        }
        for x in 0..map.node_count() {
            if let NodeKind::Vertex(v) = map.kind[x] {
                if vmap[v] == usize::MAX {
                    map.node_alive[x] = false;
                } else {
                    map.kind[x] = NodeKind::Vertex(vmap[v]);
                }
            }
        }
        for d in 0..map.dart_count() {
            if map.alive[d] {
                map.edge[d] = new_id[map.edge[d]];
            }
        }
        map.to_drawing(sub).expect("restriction of a valid drawing")
    }

    /// Deletes one edge (and the crossings on it).
    pub fn delete_edge(&self, e: usize) -> Drawing {
        let mut g = Graph::empty();
        for (v, name) in self.graph.names().iter().enumerate() {
            g.add_vertex(name.clone()).unwrap();
            if let Some(l) = self.graph.label(v) {
                g.set_label(v, l).unwrap();
            }
        }
        let mut new_id = vec![usize::MAX; self.graph.edge_count()];
        for (f, &(a, b)) in self.graph.edges().iter().enumerate() {
            if f != e {
                new_id[f] = g.add_edge_unchecked(a, b).unwrap();
            }
        }
        self.restrict_edges(&g, &new_id)
    }

    /// The mirror image: every rotation reversed.
    pub fn reflect(&self) -> Drawing {
        let rotation = self
            .rotation
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.reverse();
                r
            })
            .collect();
        Drawing { rotation, ..self.clone() }
    }

    /// Renames vertices by `perm[v]` (a permutation), keeping edge indices.
    pub fn relabel(&self, perm: &[usize]) -> Drawing {
        let n = self.graph.vertex_count();
        let mut names = vec![String::new(); n];
        for v in 0..n {
            names[perm[v]] = self.graph.name(v).to_string();
        }
        let edges = self.graph.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let graph = Graph::new_multigraph(names, edges).expect("permutation");
        let edge_paths = self
            .edge_paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|n| match *n {
                        NodeRef::Vertex(v) => NodeRef::Vertex(perm[v]),
                        c => c,
                    })
                    .collect()
            })
            .collect();
        let mut rotation = vec![Vec::new(); self.rotation.len()];
        for (x, r) in self.rotation.iter().enumerate() {
            let y = if x < n { perm[x] } else { x };
            rotation[y] = r.clone();
        }
        Drawing { graph, crossings: self.crossings.clone(), edge_paths, rotation }
    }

    /// Crossing multiplicities keyed by sorted edge pair.
    pub fn pair_multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for p in self.crossing_pairs() {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Names of base edges, for messages.
    pub fn edge_name(&self, e: usize) -> String {
        let (a, b) = self.graph.edge(e);
        format!("{}-{}", self.graph.name(a), self.graph.name(b))
    }
}

/// Checks the min-k condition on a crossing configuration alone.
pub fn config_is_min_k(edge_count: usize, pairs: &[(usize, usize)], k: usize) -> bool {
    let mut cr = vec![0usize; edge_count];
    for &(e, f) in pairs {
        cr[e] += 1;
        cr[f] += 1;
    }
    pairs.iter().all(|&(e, f)| cr[e].min(cr[f]) <= k)
}

/// Index from vertex name to id for a pair of graphs with the same names.
pub(crate) fn name_map(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count() {
        return None;
    }
    let idx: HashMap<&str, usize> = b.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    a.names().iter().map(|n| idx.get(n.as_str()).copied()).collect()
}

#[cfg(test)]
mod tests;
