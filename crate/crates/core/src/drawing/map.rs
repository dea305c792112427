//! Mutable half-edge representation of a planarization.
//!
//! Darts come in twin pairs `(2i, 2i + 1)`. `next` is the counter-clockwise
//! successor of a dart around its origin. Faces are traversed by
//! `phi(d) = next(twin(d))`, which keeps the face on the right of each dart.

use std::collections::HashMap;

use super::{ArcRef, Crossing, Drawing, NodeRef};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex(usize),
    Crossing,
}

/// A gap between two consecutive darts in the rotation at a node: the
/// corner right after `after` in counter-clockwise order. `after == NONE`
/// addresses an isolated node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    pub node: usize,
    pub after: usize,
}

#[derive(Clone, Debug, Default)]
pub struct PlaneMap {
    pub kind: Vec<NodeKind>,
    pub first: Vec<usize>,
    pub origin: Vec<usize>,
    pub edge: Vec<usize>,
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
    pub alive: Vec<bool>,
    pub node_alive: Vec<bool>,
}

#[inline]
pub fn twin(d: usize) -> usize {
    d ^ 1
}

impl PlaneMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.kind.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn add_node(&mut self, kind: NodeKind) -> usize {
        self.kind.push(kind);
        self.first.push(NONE);
        self.node_alive.push(true);
        self.kind.len() - 1
    }

    /// Creates an unlinked dart pair `a -> b` and returns the dart at `a`.
    fn new_pair(&mut self, edge: usize, a: usize, b: usize) -> usize {
        let d = self.origin.len();
        for (o, dd) in [(a, d), (b, d + 1)] {
            self.origin.push(o);
            self.edge.push(edge);
            self.next.push(dd);
            self.prev.push(dd);
            self.alive.push(true);
        }
        d
    }

    /// Links dart `d` into the rotation of its origin right after `after`.
    fn link_after(&mut self, after: usize, d: usize) {
        let node = self.origin[d];
        if after == NONE {
            debug_assert_eq!(self.first[node], NONE);
            self.next[d] = d;
            self.prev[d] = d;
            self.first[node] = d;
        } else {
            let n = self.next[after];
            self.next[after] = d;
            self.prev[d] = after;
            self.next[d] = n;
            self.prev[n] = d;
        }
    }

    fn unlink(&mut self, d: usize) {
        let node = self.origin[d];
        let (p, n) = (self.prev[d], self.next[d]);
        if n == d {
            self.first[node] = NONE;
        } else {
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[node] == d {
                self.first[node] = n;
            }
        }
        self.next[d] = d;
        self.prev[d] = d;
    }

    /// Replaces `old` by `new` at the same rotation position (same origin).
    fn replace(&mut self, old: usize, new: usize) {
        let node = self.origin[old];
        self.origin[new] = node;
        if self.next[old] == old {
            self.next[new] = new;
            self.prev[new] = new;
        } else {
            let (p, n) = (self.prev[old], self.next[old]);
            self.next[p] = new;
            self.prev[new] = p;
            self.next[new] = n;
            self.prev[n] = new;
        }
        if self.first[node] == old {
            self.first[node] = new;
        }
        self.next[old] = old;
        self.prev[old] = old;
    }

    pub fn phi(&self, d: usize) -> usize {
        self.next[twin(d)]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.rotation(node).len()
    }

    /// Darts leaving `node` in counter-clockwise order, starting at `first`.
    pub fn rotation(&self, node: usize) -> Vec<usize> {
        let f = self.first[node];
        let mut out = Vec::new();
        if f == NONE {
            return out;
        }
        let mut d = f;
        loop {
            out.push(d);
            d = self.next[d];
            if d == f {
                break;
            }
        }
        out
    }

    /// Darts of the face to the right of `d`, in traversal order.
    pub fn face_of(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut x = self.phi(d);
        while x != d {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    /// The dart starting the face walk that passes through `corner`.
    pub fn corner_dart(&self, c: Corner) -> Option<usize> {
        (c.after != NONE).then(|| self.next[c.after])
    }

    /// All faces as dart cycles plus, per dart, the index of its face.
    pub fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut face_of = vec![NONE; self.dart_count()];
        let mut faces = Vec::new();
        for d in 0..self.dart_count() {
            if !self.alive[d] || face_of[d] != NONE {
                continue;
            }
            let f = self.face_of(d);
            for &x in &f {
                face_of[x] = faces.len();
            }
            faces.push(f);
        }
        (faces, face_of)
    }

    /// Connects two corners with a new edge segment; returns the dart at `a`.
    pub fn connect(&mut self, a: Corner, b: Corner, edge: usize) -> usize {
        let d = self.new_pair(edge, a.node, b.node);
        self.link_after(a.after, d);
        // for a loop at one corner, the second end goes right after the first
        let b_after = if a.node == b.node && a.after == b.after { d } else { b.after };
        self.link_after(b_after, twin(d));
        d
    }

    /// Splits the segment of dart `d` with a new crossing-kind node. The dart
    /// `d` keeps its origin and now ends at the new node; the returned pair is
    /// `(node, dart from node continuing toward the old target)`.
    pub fn subdivide(&mut self, d: usize) -> (usize, usize) {
        let x = self.add_node(NodeKind::Crossing);
        let e = self.edge[d];
        let y = self.origin[twin(d)];
        let n = self.new_pair(e, x, y);
        self.replace(twin(d), twin(n));
        self.origin[twin(d)] = x;
        self.link_after(NONE, twin(d));
        self.link_after(twin(d), n);
        (x, n)
    }

    pub fn delete_segment(&mut self, d: usize) {
        for x in [d, twin(d)] {
            self.unlink(x);
            self.alive[x] = false;
        }
    }

    /// Removes a degree-2 node, fusing its two segments (which must belong to
    /// the same edge) into one.
    pub fn dissolve(&mut self, node: usize) {
        let r = self.rotation(node);
        assert_eq!(r.len(), 2, "dissolve needs a degree-2 node");
        let (p, q) = (twin(r[0]), twin(r[1]));
        let (y1, y2) = (self.origin[p], self.origin[q]);
        let m = self.new_pair(self.edge[p], y1, y2);
        self.replace(p, m);
        self.replace(q, twin(m));
        for x in [r[0], r[1], p, q] {
            self.alive[x] = false;
        }
        self.first[node] = NONE;
        self.node_alive[node] = false;
    }

    /// Adds an unlinked segment `a -> b` and returns the dart at `a`; the
    /// caller places both darts with [`PlaneMap::set_rotation`].
    pub fn add_segment(&mut self, edge: usize, a: usize, b: usize) -> usize {
        self.new_pair(edge, a, b)
    }

    /// Sets the counter-clockwise rotation at `node` to exactly `darts`.
    pub fn set_rotation(&mut self, node: usize, darts: &[usize]) {
        let k = darts.len();
        for i in 0..k {
            let (d, n) = (darts[i], darts[(i + 1) % k]);
            debug_assert_eq!(self.origin[d], node);
            self.next[d] = n;
            self.prev[n] = d;
        }
        self.first[node] = darts.first().copied().unwrap_or(NONE);
    }

    /// Replaces the crossing-free segment of dart `h` by a copy of `frag`.
    ///
    /// `fu` and `fv` are the fragment nodes standing for the origin and the
    /// target of `h`; the corners after `cu` at `fu` and after `cv` at `fv`
    /// must lie on one common face of `frag`. Fragment vertices other than
    /// `fu`, `fv` go to the (so far isolated) host nodes given by `vertex_node`,
    /// fragment crossings become new host nodes and edge ids pass through
    /// `edge_map`.
    #[allow(clippy::too_many_arguments)]
    pub fn splice(
        &mut self,
        h: usize,
        frag: &PlaneMap,
        (fu, fv): (usize, usize),
        (cu, cv): (usize, usize),
        vertex_node: &dyn Fn(usize) -> usize,
        edge_map: &dyn Fn(usize) -> usize,
    ) {
        let (hu, hv) = (self.origin[h], self.origin[twin(h)]);
        let mut node = vec![NONE; frag.node_count()];
        for x in 0..frag.node_count() {
            if !frag.node_alive[x] {
                continue;
            }
            node[x] = if x == fu {
                hu
            } else if x == fv {
                hv
            } else {
                match frag.kind[x] {
                    NodeKind::Vertex(v) => vertex_node(v),
                    NodeKind::Crossing => self.add_node(NodeKind::Crossing),
                }
            };
        }
        let mut dart = vec![NONE; frag.dart_count()];
        for d in (0..frag.dart_count()).step_by(2) {
            if frag.alive[d] {
                let g = self.new_pair(edge_map(frag.edge[d]), node[frag.origin[d]], node[frag.origin[d + 1]]);
                dart[d] = g;
                dart[d + 1] = g + 1;
            }
        }
        for x in 0..frag.node_count() {
            if node[x] == NONE || x == fu || x == fv {
                continue;
            }
            let r: Vec<usize> = frag.rotation(x).iter().map(|&d| dart[d]).collect();
            self.set_rotation(node[x], &r);
        }
        for (end, c) in [(h, cu), (twin(h), cv)] {
            let mut seq = Vec::new();
            let mut d = frag.next[c];
            loop {
                seq.push(dart[d]);
                if d == c {
                    break;
                }
                d = frag.next[d];
            }
            let at = self.origin[end];
            let mut r = Vec::new();
            for x in self.rotation(at) {
                if x == end {
                    r.extend(&seq);
                } else {
                    r.push(x);
                }
            }
            self.set_rotation(at, &r);
        }
        for x in [h, twin(h)] {
            self.alive[x] = false;
            self.next[x] = x;
            self.prev[x] = x;
        }
    }

    pub fn live_nodes(&self) -> usize {
        self.node_alive.iter().filter(|a| **a).count()
    }

    /// Reverses every rotation (mirror image).
    pub fn reflect(&mut self) {
        std::mem::swap(&mut self.next, &mut self.prev);
    }

    /// Number of connected components among nodes (isolated nodes count).
    pub fn components(&self) -> usize {
        let n = self.node_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.live_nodes();
        for d in (0..self.dart_count()).step_by(2) {
            if !self.alive[d] {
                continue;
            }
            let a = find(&mut parent, self.origin[d]);
            let b = find(&mut parent, self.origin[d + 1]);
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn live_segments(&self) -> usize {
        self.alive.iter().filter(|a| **a).count() / 2
    }

    /// Euler characteristic `V - E + F` (isolated nodes contribute one face
    /// only if the map is a single node).
    pub fn euler(&self) -> i64 {
        let (faces, _) = self.faces();
        let f = if self.live_segments() == 0 { 1 } else { faces.len() };
        self.live_nodes() as i64 - self.live_segments() as i64 + f as i64
    }

    /// Builds the map of a drawing whose structure has already been checked.
    pub fn from_drawing(d: &Drawing) -> PlaneMap {
        let nv = d.graph.vertex_count();
        let mut m = PlaneMap::new();
        for v in 0..nv {
            m.add_node(NodeKind::Vertex(v));
        }
        for _ in &d.crossings {
            m.add_node(NodeKind::Crossing);
        }
        let mut fwd: HashMap<ArcRef, usize> = HashMap::new();
        for (e, path) in d.edge_paths.iter().enumerate() {
            for s in 0..path.len() - 1 {
                let a = d.node_index(path[s]);
                let b = d.node_index(path[s + 1]);
                let dart = m.new_pair(e, a, b);
                fwd.insert(ArcRef { edge: e, seg: s }, dart);
            }
        }
        for (x, rot) in d.rotation.iter().enumerate() {
            let mut used: HashMap<ArcRef, usize> = HashMap::new();
            let mut darts = Vec::with_capacity(rot.len());
            for arc in rot {
                let f = fwd[arc];
                let path = &d.edge_paths[arc.edge];
                let starts_here = d.node_index(path[arc.seg]) == x;
                let ends_here = d.node_index(path[arc.seg + 1]) == x;
                let k = used.entry(*arc).or_insert(0);
                let dart = if starts_here && (!ends_here || *k == 0) { f } else { twin(f) };
                *k += 1;
                darts.push(dart);
            }
            let mut prev = NONE;
            for &dart in &darts {
                m.link_after(prev, dart);
                prev = dart;
            }
        }
        m
    }

    /// Converts back to a drawing of `graph`. Every dart edge id must index
    /// `graph`, crossing nodes must have degree 4 and every edge must be
    /// present exactly once as a path.
    pub fn to_drawing(&self, graph: &Graph) -> Result<Drawing> {
        let nv = graph.vertex_count();
        let mut start: Vec<usize> = vec![NONE; graph.edge_count()];
        for d in 0..self.dart_count() {
            if !self.alive[d] {
                continue;
            }
            let e = self.edge[d];
            if e >= graph.edge_count() {
                return Err(Error::InvalidDrawing(format!("dart carries unknown edge {e}")));
            }
            if let NodeKind::Vertex(v) = self.kind[self.origin[d]] {
                let (a, _) = graph.edge(e);
                if v == a && (start[e] == NONE || d < start[e]) {
                    start[e] = d;
                }
            }
        }
        let mut node_ref = vec![None; self.node_count()];
        for (x, k) in self.kind.iter().enumerate() {
            if !self.node_alive[x] {
                continue;
            }
            if let NodeKind::Vertex(v) = k {
                if *v >= nv {
                    return Err(Error::InvalidDrawing(format!("map vertex {v} not in graph")));
                }
                node_ref[x] = Some(NodeRef::Vertex(*v));
            }
        }
        let mut crossing_edges: Vec<Vec<usize>> = Vec::new();
        let mut arc_of = vec![None; self.dart_count()];
        let mut paths = Vec::with_capacity(graph.edge_count());
        for (e, &s) in start.iter().enumerate() {
            if s == NONE {
                return Err(Error::InvalidDrawing(format!("edge {e} is not drawn")));
            }
            let mut path = vec![node_ref[self.origin[s]].unwrap()];
            let mut d = s;
            let mut seg = 0;
            loop {
                if self.edge[d] != e {
                    return Err(Error::InvalidDrawing(format!("edge {e} continues along another edge")));
                }
                arc_of[d] = Some(ArcRef { edge: e, seg });
                arc_of[twin(d)] = Some(ArcRef { edge: e, seg });
                let y = self.origin[twin(d)];
                match self.kind[y] {
                    NodeKind::Vertex(_) => {
                        path.push(node_ref[y].unwrap());
                        break;
                    }
                    NodeKind::Crossing => {
                        if self.degree(y) != 4 {
                            return Err(Error::InvalidDrawing("crossing node without degree 4".into()));
                        }
                        let c = match node_ref[y] {
                            Some(NodeRef::Crossing(c)) => c,
                            _ => {
                                let c = crossing_edges.len();
                                crossing_edges.push(Vec::new());
                                node_ref[y] = Some(NodeRef::Crossing(c));
                                c
                            }
                        };
                        crossing_edges[c].push(e);
                        path.push(NodeRef::Crossing(c));
                        d = self.next[self.next[twin(d)]];
                        seg += 1;
                        if path.len() > 2 * self.dart_count() + 2 {
                            return Err(Error::InvalidDrawing("edge path does not terminate".into()));
                        }
                    }
                }
            }
            paths.push(path);
        }
        let crossings: Vec<Crossing> = crossing_edges
            .iter()
            .enumerate()
            .map(|(i, es)| {
                let mut pair = [es[0], *es.get(1).unwrap_or(&es[0])];
                pair.sort_unstable();
                Crossing { id: format!("x#{i}"), pair }
            })
            .collect();
        let mut rotation = vec![Vec::new(); nv + crossings.len()];
        for x in 0..self.node_count() {
            let Some(r) = node_ref[x] else {
                if self.node_alive[x] && self.first[x] != NONE {
                    return Err(Error::InvalidDrawing("crossing node not on any edge".into()));
                }
                continue;
            };
            let idx = match r {
                NodeRef::Vertex(v) => v,
                NodeRef::Crossing(c) => nv + c,
            };
            let mut arcs: Vec<ArcRef> = Vec::new();
            for d in self.rotation(x) {
                arcs.push(arc_of[d].ok_or_else(|| Error::InvalidDrawing("dart not on any edge".into()))?);
            }
            if let Some(min_pos) = (0..arcs.len()).min_by_key(|&i| arcs[i]) {
                arcs.rotate_left(min_pos);
            }
            rotation[idx] = arcs;
        }
        Ok(Drawing::from_parts_unchecked(graph.clone(), crossings, paths, rotation))
    }
}
