//! Adding a vertex to a simple drawing by routing its edges through the
//! dual of the planarization.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::drawing::map::{twin, Corner, NodeKind, PlaneMap, NONE};
use crate::drawing::map_code;
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which old edges a routed edge may cross.
#[derive(Clone, Debug)]
pub struct RoutingConstraint {
    /// Edges the new curve may never cross.
    pub forbidden: Vec<bool>,
    /// Edges already crossed by the new curve (each at most once).
    pub crossed: Vec<bool>,
    /// Map node of the vertex the curve must end at.
    pub target: usize,
}

impl RoutingConstraint {
    fn allows(&self, e: usize) -> bool {
        !self.forbidden[e] && !self.crossed[e]
    }
}

/// The graph with one more vertex adjacent to every old vertex. Edges are
/// ordered by their sorted endpoint pair, which for `0..n` named complete
/// graphs gives the layout of [`crate::graph::complete_graph`].
pub(crate) fn extended_graph(g: &Graph) -> Result<(Graph, Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut names = g.names().to_vec();
    let mut name = n.to_string();
    while g.vertex(&name).is_some() {
        name.push('\'');
    }
    names.push(name);
    // (sorted key, endpoints, old index or NONE, new target or NONE)
    let mut all: Vec<((usize, usize), (usize, usize), usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| ((a.min(b), a.max(b)), (a, b), i, NONE))
        .collect();
    all.extend((0..n).map(|v| ((v, n), (v, n), NONE, v)));
    all.sort_by_key(|x| x.0);
    let mut old_to_new = vec![NONE; g.edge_count()];
    let mut to_new_vertex = vec![NONE; n];
    let mut edges = Vec::with_capacity(all.len());
    for (k, &(_, ends, old, t)) in all.iter().enumerate() {
        edges.push(ends);
        if old != NONE {
            old_to_new[old] = k;
        } else {
            to_new_vertex[t] = k;
        }
    }
    let mut g2 = Graph::new(names, edges)?;
    for (v, l) in g.labels() {
        g2.set_label(*v, *l)?;
    }
    Ok((g2, old_to_new, to_new_vertex))
}

struct Job<'a> {
    graph: &'a Graph,
    /// Map node of the new vertex.
    w: usize,
    /// Vertex id of the new vertex.
    wv: usize,
    new_edge: &'a [usize],
}

impl Job<'_> {
    /// Every way to route the edge from the new vertex to `t` in `map`.
    /// While the new vertex is isolated it sits in the face of `start_face`.
    fn routes(&self, map: &PlaneMap, t: usize, start_face: usize, out: &mut Vec<PlaneMap>) {
        let e = self.new_edge[t];
        let mut rc = RoutingConstraint {
            forbidden: (0..self.graph.edge_count())
                .map(|f| {
                    let (a, b) = self.graph.edge(f);
                    a == t || b == t || a == self.wv || b == self.wv
                })
                .collect(),
            crossed: vec![false; self.graph.edge_count()],
            target: t,
        };
        let at_w = map.rotation(self.w);
        if at_w.is_empty() {
            self.walk(map, Corner { node: self.w, after: NONE }, start_face, e, &mut rc, out);
        } else {
            for a in at_w {
                let c = Corner { node: self.w, after: a };
                self.walk(map, c, map.next[a], e, &mut rc, out);
            }
        }
    }

    /// Continues the curve of edge `e` from corner `cur`, which lies in the
    /// face of dart `face`.
    fn walk(&self, map: &PlaneMap, cur: Corner, face: usize, e: usize, rc: &mut RoutingConstraint, out: &mut Vec<PlaneMap>) {
        let darts = if face == NONE { Vec::new() } else { map.face_of(face) };
        if darts.is_empty() {
            // the only face is the whole sphere around an isolated target
            let mut m = map.clone();
            m.connect(cur, Corner { node: rc.target, after: NONE }, e);
            out.push(m);
            return;
        }
        for &x in &darts {
            if map.origin[x] == rc.target {
                let mut m = map.clone();
                m.connect(cur, Corner { node: rc.target, after: map.prev[x] }, e);
                out.push(m);
            }
        }
        for &x in &darts {
            let f = map.edge[x];
            if !rc.allows(f) {
                continue;
            }
            let mut m = map.clone();
            let (cx, nx) = m.subdivide(x);
            let cur = if cur.after == twin(x) { Corner { node: cur.node, after: twin(nx) } } else { cur };
            // the curve arrives on the side of `x` facing the current face
            // and leaves on the opposite side, so the crossing alternates
            m.connect(cur, Corner { node: cx, after: twin(x) }, e);
            rc.crossed[f] = true;
            self.walk(&m, Corner { node: cx, after: nx }, m.next[nx], e, rc, out);
            rc.crossed[f] = false;
        }
    }
}

/// Checks the preconditions shared by the extension routines.
fn check_input(d: &Drawing) -> Result<()> {
    let report = d.validate();
    if let Some(i) = report.issues.first() {
        return Err(Error::InvalidDrawing(i.to_string()));
    }
    if !d.graph().is_simple_graph() || !d.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(())
}

/// All ways to add a vertex adjacent to every vertex of `d`, keeping the
/// drawing simple. New edges are routed in ascending order of their other
/// endpoint; the output may contain isomorphic (even identical) drawings.
pub fn insert_vertex_extensions(d: &Drawing) -> Result<Vec<Drawing>> {
    check_input(d)?;
    let (g2, old_to_new, new_edge) = extended_graph(d.graph())?;
    let mut base = d.plane_map();
    for x in 0..base.dart_count() {
        base.edge[x] = old_to_new[base.edge[x]];
    }
    let w = base.add_node(NodeKind::Vertex(d.graph().vertex_count()));
    let job = Job { graph: &g2, w, wv: d.graph().vertex_count(), new_edge: &new_edge };
    let (faces, _) = base.faces();
    let starts: Vec<usize> = if faces.is_empty() { vec![NONE] } else { faces.iter().map(|f| f[0]).collect() };
    let colors: Vec<u32> = (0..base.node_count())
        .map(|x| match base.kind[x] {
            NodeKind::Vertex(v) => v as u32 + 2,
            NodeKind::Crossing => 1,
        })
        .collect();
    // partial drawings are merged when they agree up to a homeomorphism
    // fixing every vertex, so each routing prefix is expanded once
    let mut level: Vec<PlaneMap> = vec![base];
    for t in 0..d.graph().vertex_count() {
        let next: Vec<Vec<(Vec<u32>, PlaneMap)>> = level
            .par_iter()
            .flat_map_iter(|m| if t == 0 { starts.clone() } else { vec![NONE] }.into_iter().map(move |f| (m, f)))
            .map(|(m, f)| {
                let mut out = Vec::new();
                job.routes(m, t, f, &mut out);
                out.into_iter()
                    .map(|m| {
                        let mut c = colors.clone();
                        c.resize(m.node_count(), 1);
                        (map_code(&m, &c), m)
                    })
                    .collect()
            })
            .collect();
        let mut seen = BTreeMap::new();
        for (k, m) in next.into_iter().flatten() {
            seen.entry(k).or_insert(m);
        }
        level = seen.into_values().collect();
    }
    level.into_iter().map(|m| m.to_drawing(&g2)).collect()
}
