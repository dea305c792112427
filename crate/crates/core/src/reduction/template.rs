//! A validated min-1-planar drawing of one uncrossable edge.
//!
//! Each block is the straight-line K6 with three crossings, minus the edge
//! `uv`. In octahedron labels (`u = 1`, `v = 3`, antipodes `12`, `34`,
//! `56`) the crossings are `12 x 35`, `34 x 16` and `56 x 24`. Wires are
//! routed by a depth-first search that only crosses prescribed block edges;
//! the three blocks and the ten uv-paths are then spliced in as parallel
//! items between `u` and `v`.

use std::collections::HashSet;
use std::sync::OnceLock;

use super::{attach_into, GadgetHandle};
use crate::drawing::geometry::from_polylines;
use crate::drawing::map::{twin, Corner, NodeKind, PlaneMap, NONE};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Octahedron labels `1..=6` in straight-line position.
const OCTA: [(f64, f64); 6] = [
    (0.0, 10.0),    // 1 = u
    (2.598, -1.5),  // 2
    (0.0, 3.0),     // 3 = v
    (-8.66, -5.0),  // 4
    (8.66, -5.0),   // 5
    (-2.598, -1.5), // 6
];

/// Block vertex order in the handle, as octahedron labels.
const BLOCK_LABELS: [usize; 4] = [2, 4, 5, 6];

type Hops = [&'static [(usize, usize)]; 2];

/// Edges crossed by the two halves of a wire from `u` (resp. `v`) to a block vertex.
const U_ROUTES: [(usize, Hops); 4] = [(2, [&[(4, 5)], &[(5, 6)]]), (6, [&[(3, 4)], &[]]), (4, [&[], &[]]), (5, [&[], &[]])];
const V_ROUTES: [(usize, Hops); 4] = [(4, [&[(2, 6)], &[(5, 6)]]), (5, [&[(1, 2)], &[]]), (2, [&[], &[]]), (6, [&[], &[]])];

/// The gadget between two fresh vertices `u` (vertex 0) and `v` (vertex 1)
/// with its drawing. Vertex `k >= 2` of the template is `handle.vertices[k - 2]`
/// and edge `e` is `handle.edges[e]`.
pub struct GadgetTemplate {
    pub graph: Graph,
    pub handle: GadgetHandle,
    pub drawing: Drawing,
    pub(crate) map: PlaneMap,
    /// Nodes of `u` and `v` in `map` and corners after which they share a face.
    pub(crate) ends: (usize, usize),
    pub(crate) corners: (usize, usize),
}

static TEMPLATE: OnceLock<std::result::Result<GadgetTemplate, String>> = OnceLock::new();

impl GadgetTemplate {
    /// The shared template, built and validated once.
    pub fn get() -> Result<&'static GadgetTemplate> {
        TEMPLATE.get_or_init(|| build().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::Template(e.clone()))
    }
}

/// A drawing of the gadget `h` of `g` alone, plus its endpoints, with the
/// vertex names of `g`.
pub fn gadget_template_drawing(h: &GadgetHandle, g: &Graph) -> Result<Drawing> {
    h.check(g)?;
    let tpl = GadgetTemplate::get()?;
    let mut sub = Graph::empty();
    for &x in [h.u, h.v].iter().chain(&h.vertices) {
        let id = sub.add_vertex(g.name(x))?;
        if let Some(l) = g.label(x) {
            sub.set_label(id, l)?;
        }
    }
    for (e, &(a, b)) in tpl.graph.edges().iter().enumerate() {
        let (x, y) = g.edge(h.edges[e]);
        let map = |k: usize| if k == 0 { h.u } else if k == 1 { h.v } else { h.vertices[k - 2] };
        debug_assert!((map(a), map(b)) == (x, y) || (map(a), map(b)) == (y, x));
        sub.add_edge_unchecked(a, b)?;
    }
    let d = &tpl.drawing;
    Ok(Drawing::from_parts_unchecked(sub, d.crossings().to_vec(), d.edge_paths().to_vec(), d.rotation().to_vec()))
}

fn build() -> Result<GadgetTemplate> {
    let mut graph = Graph::empty();
    graph.add_vertex("u")?;
    graph.add_vertex("v")?;
    let handle = attach_into(&mut graph, 0, 1, "")?;
    let mut host = PlaneMap::new();
    for k in 0..graph.vertex_count() {
        host.add_node(NodeKind::Vertex(k));
    }
    // parallel items between u and v: blocks as placeholder edges, uv-paths drawn directly
    const BLOCK: usize = usize::MAX / 2;
    let items = [Some(0), None, None, None, None, Some(1), None, None, None, Some(2), None, None, None];
    let (mut last_u, mut last_v) = (NONE, NONE);
    let mut placeholders = [NONE; 3];
    let mut paths = handle.uv_paths.iter();
    for item in items {
        let cu = Corner { node: 0, after: last_u };
        let cv = Corner { node: 1, after: if last_v == NONE { NONE } else { host.prev[last_v] } };
        let (du, dv) = match item {
            Some(b) => {
                let d = host.connect(cu, cv, BLOCK + b);
                placeholders[b] = d;
                (d, twin(d))
            }
            None => {
                let p = paths.next().expect("ten uv-paths");
                let mid = p.mid;
                let d0 = host.connect(cu, Corner { node: mid, after: NONE }, p.edges[0]);
                let d1 = host.connect(Corner { node: mid, after: twin(d0) }, cv, p.edges[1]);
                (d0, twin(d1))
            }
        };
        last_u = du;
        last_v = dv;
    }
    for (b, &h) in placeholders.iter().enumerate() {
        let frag = block_fragment(&graph, &handle, b)?;
        let corners = common_corners(&frag, 0, 2).ok_or_else(|| Error::Template("block lost its uv face".into()))?;
        host.splice(h, &frag, (0, 2), corners, &|k| k, &|e| e);
    }
    if host.euler() != 2 {
        return Err(Error::Template(format!("euler characteristic {}", host.euler())));
    }
    let drawing = host.to_drawing(&graph)?;
    let report = drawing.validate();
    if !report.is_valid() {
        return Err(Error::Template(format!("invalid drawing: {:?}", report.issues.first())));
    }
    if !drawing.is_simple() || !drawing.is_min_k_planar(1) {
        return Err(Error::Template("drawing is not simple and min-1-planar".into()));
    }
    let corners = common_corners(&host, 0, 1).ok_or_else(|| Error::Template("u and v share no face".into()))?;
    Ok(GadgetTemplate { graph, handle, drawing, map: host, ends: (0, 1), corners })
}

/// Corners at `a` and `b` on a common face, if any.
pub(crate) fn common_corners(m: &PlaneMap, a: usize, b: usize) -> Option<(usize, usize)> {
    let (faces, _) = m.faces();
    faces.iter().find_map(|f| {
        let x = f.iter().find(|&&d| m.origin[d] == a)?;
        let y = f.iter().find(|&&d| m.origin[d] == b)?;
        Some((m.prev[*x], m.prev[*y]))
    })
}

/// Template vertex of octahedron label `l` in block `b`.
fn vertex_of(h: &GadgetHandle, b: usize, l: usize) -> usize {
    match l {
        1 => 0,
        3 => 1,
        _ => h.blocks[b][BLOCK_LABELS.iter().position(|&x| x == l).unwrap()],
    }
}

/// Template edge joining labels `x` and `y` in block `b`.
fn edge_of(h: &GadgetHandle, b: usize, x: usize, y: usize) -> usize {
    let idx = |l: usize| BLOCK_LABELS.iter().position(|&z| z == l).unwrap();
    match (x.min(y), x.max(y)) {
        (1, 3) => unreachable!("uv is not part of a block"),
        (1, o) => h.u_spokes[4 * b + idx(o)],
        (3, o) | (o, 3) => h.v_spokes[4 * b + idx(o)],
        (p, q) => {
            let (i, j) = (idx(p).min(idx(q)), idx(p).max(idx(q)));
            let pos = (0..i).map(|r| 3 - r).sum::<usize>() + j - i - 1;
            h.block_edges[6 * b + pos]
        }
    }
}

/// Block `b` with its 24 wires. Node `l - 1` stands for octahedron label `l`.
fn block_fragment(g: &Graph, h: &GadgetHandle, b: usize) -> Result<PlaneMap> {
    let mut pairs = Vec::new();
    for x in 0..6 {
        for y in x + 1..6 {
            pairs.push((x, y));
        }
    }
    let k6 = Graph::new((1..=6).map(|l| l.to_string()).collect(), pairs.clone())?;
    let d = from_polylines(k6, &OCTA, &vec![Vec::new(); 15])?;
    if d.crossing_count() != 3 {
        return Err(Error::Template("block K6 must have three crossings".into()));
    }
    let mut m = PlaneMap::from_drawing(&d);
    let mut uv = NONE;
    for x in (0..m.dart_count()).step_by(2) {
        let (p, q) = pairs[m.edge[x]];
        if (p + 1, q + 1) == (1, 3) {
            uv = x;
        } else {
            let e = edge_of(h, b, p + 1, q + 1);
            m.edge[x] = e;
            m.edge[x + 1] = e;
        }
    }
    m.delete_segment(uv);
    for l in 1..=6 {
        m.kind[l - 1] = NodeKind::Vertex(vertex_of(h, b, l));
    }
    let mut wires = Vec::new();
    for (from, routes, side) in [(1, &U_ROUTES, &h.u_wires), (3, &V_ROUTES, &h.v_wires)] {
        for &(to, hops) in routes.iter() {
            let k = BLOCK_LABELS.iter().position(|&l| l == to).unwrap();
            for r in 0..3 {
                let w = side[12 * b + 3 * k + r];
                let hop = |i: usize| hops[i].iter().map(|&(x, y)| edge_of(h, b, x, y)).collect::<Vec<_>>();
                wires.push(Wire { from: from - 1, to: to - 1, mid: w.mid, edges: w.edges, cross: [hop(0), hop(1)] });
            }
        }
    }
    route_all(m, &wires, g, (0, 2)).ok_or_else(|| Error::Template(format!("no wire routing for block {}", b + 1)))
}

struct Wire {
    from: usize,
    to: usize,
    mid: usize,
    edges: [usize; 2],
    cross: [Vec<usize>; 2],
}

enum End {
    New(usize),
    Node(usize),
}

fn route_all(m: PlaneMap, wires: &[Wire], g: &Graph, ends: (usize, usize)) -> Option<PlaneMap> {
    let Some((w, rest)) = wires.split_first() else { return Some(m) };
    let mut firsts = Vec::new();
    for a in m.rotation(w.from) {
        segment(&m, Corner { node: w.from, after: a }, &w.cross[0], End::New(w.mid), w.edges[0], &mut firsts);
    }
    for (m1, mid) in firsts {
        let mut seconds = Vec::new();
        let c = Corner { node: mid, after: m1.first[mid] };
        segment(&m1, c, &w.cross[1], End::Node(w.to), w.edges[1], &mut seconds);
        for (m2, _) in seconds {
            if partial_ok(&m2, g, ends) {
                if let Some(done) = route_all(m2, rest, g, ends) {
                    return Some(done);
                }
            }
        }
    }
    None
}

/// All ways to draw one segment of `edge` from corner `c`, crossing the
/// edges `cross` in order, ending at a new vertex or at an existing node.
fn segment(m: &PlaneMap, c: Corner, cross: &[usize], end: End, edge: usize, out: &mut Vec<(PlaneMap, usize)>) {
    let face = m.face_of(m.next[c.after]);
    match cross.split_first() {
        None => match end {
            End::New(v) => {
                let mut m2 = m.clone();
                let x = m2.add_node(NodeKind::Vertex(v));
                m2.connect(c, Corner { node: x, after: NONE }, edge);
                out.push((m2, x));
            }
            End::Node(t) => {
                for &x in face.iter().filter(|&&x| m.origin[x] == t) {
                    let mut m2 = m.clone();
                    m2.connect(c, Corner { node: t, after: m.prev[x] }, edge);
                    out.push((m2, t));
                }
            }
        },
        Some((&f, rest)) => {
            for &x in face.iter().filter(|&&x| m.edge[x] == f) {
                let mut m2 = m.clone();
                let (z, n) = m2.subdivide(x);
                m2.connect(c, Corner { node: z, after: twin(x) }, edge);
                let next = Corner { node: z, after: n };
                match end {
                    End::New(v) => segment(&m2, next, rest, End::New(v), edge, out),
                    End::Node(t) => segment(&m2, next, rest, End::Node(t), edge, out),
                }
            }
        }
    }
}

/// Simple, min-1-planar so far, and `ends` still share a face.
fn partial_ok(m: &PlaneMap, g: &Graph, ends: (usize, usize)) -> bool {
    let mut cr = vec![0usize; g.edge_count()];
    let mut pairs = HashSet::new();
    let mut list = Vec::new();
    for x in 0..m.node_count() {
        if !m.node_alive[x] || m.kind[x] != NodeKind::Crossing || m.first[x] == NONE {
            continue;
        }
        let r = m.rotation(x);
        if r.len() != 4 {
            return false;
        }
        let (e, f) = (m.edge[r[0]], m.edge[r[1]]);
        if e == f || g.adjacent(e, f) || !pairs.insert((e.min(f), e.max(f))) {
            return false;
        }
        cr[e] += 1;
        cr[f] += 1;
        list.push((e, f));
    }
    list.iter().all(|&(e, f)| cr[e].min(cr[f]) <= 1) && common_corners(m, ends.0, ends.1).is_some()
}
