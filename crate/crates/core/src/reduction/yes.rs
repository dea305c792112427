//! Drawings of the reduction graph for solved instances.
//!
//! Face `i` is laid out on its own as a convex strip: path `i` on the left,
//! path `i + 1` on the right, `s` on top and `t` at the bottom, with the
//! triplet's content inside. Every gadget is a placeholder segment at first.
//! The strips are glued along their shared paths and around `s` and `t`
//! into one map on the sphere, and each placeholder is then replaced by the
//! gadget template.

use rayon::prelude::*;

use super::template::GadgetTemplate;
use super::{GadgetRole, ReductionArtifact};
use crate::drawing::geometry::{from_polylines, Point};
use crate::drawing::map::{twin, NodeKind, PlaneMap};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Depth of the length-two path below each d-edge.
const DIP: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LocalEdge {
    Base(usize),
    /// A gadget placeholder; `true` on the right boundary, which the next
    /// strip owns.
    Gadget(usize, bool),
}

struct Strip {
    map: PlaneMap,
    vertex: Vec<usize>,
    edge: Vec<LocalEdge>,
    s: usize,
    t: usize,
    left: [usize; 3],
    right: [usize; 3],
}

/// Index of a gadget in the artifact's list.
fn gadget_index(n: usize, t: usize, role: GadgetRole) -> usize {
    match role {
        GadgetRole::SA(i) => 4 * (i - 1),
        GadgetRole::AB(i) => 4 * (i - 1) + 1,
        GadgetRole::BC(i) => 4 * (i - 1) + 2,
        GadgetRole::CT(i) => 4 * (i - 1) + 3,
        GadgetRole::DT(i, j) => 4 * n + (i - 1) * (t - 1) + (j - 1),
    }
}

/// Builds a simple min-1-planar drawing of the reduction graph in which
/// face `i` holds the content of triplet `i` of `p`.
pub fn build_yes_drawing(art: &ReductionArtifact, p: &Partition) -> Result<Drawing> {
    p.check(&art.instance)?;
    let tpl = GadgetTemplate::get()?;
    let strips: Vec<Strip> =
        (0..art.instance.n).into_par_iter().map(|i| strip(art, &p.triplets[i], i)).collect::<Result<_>>()?;
    let (mut m, owner) = glue(art, &strips)?;
    for (k, h) in art.gadgets.iter().enumerate() {
        let o = if m.origin[owner[k]] == h.u { owner[k] } else { twin(owner[k]) };
        m.splice(o, &tpl.map, tpl.ends, tpl.corners, &|x| h.vertices[x - 2], &|e| h.edges[e]);
    }
    m.to_drawing(&art.graph)
}

fn strip(art: &ReductionArtifact, triplet: &[usize; 3], i: usize) -> Result<Strip> {
    let n = art.instance.n;
    let t = art.target;
    let w = &art.wiring;
    let nxt = (i + 1) % n;
    let width = 10.0 * (t + 1) as f64;
    let mut g = Graph::empty();
    let mut pos: Vec<Point> = Vec::new();
    let mut vertex = Vec::new();
    let mut add = |g: &mut Graph, global: usize, p: Point| -> Result<usize> {
        let x = g.add_vertex(g.vertex_count().to_string())?;
        pos.push(p);
        vertex.push(global);
        Ok(x)
    };
    let s = add(&mut g, w.s, (width / 2.0, 70.0 + width))?;
    let tt = add(&mut g, w.t, (width / 2.0, -10.0 * width - 100.0))?;
    let mut left = [0; 3];
    let mut right = [0; 3];
    for (k, (row, y)) in [(&w.a, 60.0), (&w.b, 40.0), (&w.c, 20.0)].into_iter().enumerate() {
        left[k] = add(&mut g, row[i], (0.0, y))?;
        right[k] = add(&mut g, row[nxt], (width, y))?;
    }
    // d_0 .. d_T along y = 20
    let dx = |j: usize| {
        if j == 0 {
            0.0
        } else if j == t {
            width
        } else {
            10.0 * j as f64 + 5.0
        }
    };
    let mut d = vec![left[2]];
    for j in 1..t {
        d.push(add(&mut g, w.d[i][j], (dx(j), 20.0))?);
    }
    d.push(right[2]);
    let mut edges: Vec<(usize, usize, LocalEdge, Vec<Point>)> = Vec::new();
    let gi = |role| gadget_index(n, t, role);
    for (side, path, nodes) in [(false, i + 1, left), (true, nxt + 1, right)] {
        let ends = [s, nodes[0], nodes[1], nodes[2], tt];
        let roles = [GadgetRole::SA(path), GadgetRole::AB(path), GadgetRole::BC(path), GadgetRole::CT(path)];
        for k in 0..4 {
            edges.push((ends[k], ends[k + 1], LocalEdge::Gadget(gi(roles[k]), side), Vec::new()));
        }
    }
    edges.push((left[0], right[0], LocalEdge::Base(w.a_rungs[i]), Vec::new()));
    edges.push((left[1], right[1], LocalEdge::Base(w.b_rungs[i]), Vec::new()));
    if let Some(&e) = w.c_rungs.get(i) {
        if n == 1 {
            // a loop at c_1 needs no room in the face
            edges.push((left[2], left[2], LocalEdge::Base(e), vec![(2.0, 22.0), (1.0, 24.0)]));
        } else {
            edges.push((left[2], right[2], LocalEdge::Base(e), vec![(1.0, 24.0), (width - 1.0, 24.0)]));
        }
    }
    for j in 1..=t {
        let (x0, x1) = (dx(j - 1), dx(j));
        edges.push((d[j - 1], d[j], LocalEdge::Base(w.d_edges[i][j - 1]), Vec::new()));
        let path = w.d_paths[i][j - 1];
        let mid = add(&mut g, path.mid, ((x0 + x1) / 2.0, 20.0 - DIP))?;
        edges.push((d[j - 1], mid, LocalEdge::Base(path.edges[0]), Vec::new()));
        edges.push((mid, d[j], LocalEdge::Base(path.edges[1]), Vec::new()));
    }
    for j in 1..t {
        edges.push((d[j], tt, LocalEdge::Gadget(gi(GadgetRole::DT(i + 1, j)), false), Vec::new()));
    }
    // path slot k (0-based, left to right) runs through the k-th w and crosses d-edge k + 1
    let mut slot = 0;
    for (r, &j) in triplet.iter().enumerate() {
        let paths = &w.u_paths[j];
        let x = if paths.is_empty() {
            10.0 * slot as f64 + 2.0 + 2.0 * r as f64
        } else {
            10.0 * (slot as f64 + 1.0 + (paths.len() - 1) as f64 / 2.0)
        };
        let u = add(&mut g, w.u[j], (x, 50.0))?;
        edges.push((s, u, LocalEdge::Base(w.s_edges[j]), Vec::new()));
        for up in paths {
            let k = slot + 1;
            let mid = add(&mut g, up.path.mid, (10.0 * k as f64, 30.0))?;
            let cx = dx(k - 1) + 0.3 * (dx(k) - dx(k - 1));
            edges.push((u, mid, LocalEdge::Base(up.path.edges[0]), Vec::new()));
            edges.push((mid, tt, LocalEdge::Base(up.path.edges[1]), vec![(cx, 21.0), (cx, 20.0 - 0.8 * DIP)]));
            slot += 1;
        }
    }
    let mut bends = Vec::with_capacity(edges.len());
    let mut edge = Vec::with_capacity(edges.len());
    for (a, b, role, bend) in edges {
        g.add_edge_unchecked(a, b)?;
        edge.push(role);
        bends.push(bend);
    }
    let drawing = from_polylines(g, &pos, &bends)?;
    Ok(Strip { map: drawing.plane_map(), vertex, edge, s, t: tt, left, right })
}

/// Glues the strips into one map; returns it with the placeholder dart of
/// every gadget.
fn glue(art: &ReductionArtifact, strips: &[Strip]) -> Result<(PlaneMap, Vec<usize>)> {
    let n = strips.len();
    let ne = art.graph.edge_count();
    let mut m = PlaneMap::new();
    for v in 0..art.graph.vertex_count() {
        m.add_node(NodeKind::Vertex(v));
    }
    let mut owner = vec![usize::MAX; art.gadgets.len()];
    let mut node_of = Vec::with_capacity(n);
    let mut dart_of = Vec::with_capacity(n);
    for st in strips {
        let nodes: Vec<usize> = (0..st.map.node_count())
            .map(|x| match st.map.kind[x] {
                NodeKind::Vertex(v) => st.vertex[v],
                NodeKind::Crossing => m.add_node(NodeKind::Crossing),
            })
            .collect();
        let mut darts = vec![usize::MAX; st.map.dart_count()];
        for d in (0..st.map.dart_count()).step_by(2) {
            let id = match st.edge[st.map.edge[d]] {
                LocalEdge::Gadget(_, true) => continue,
                LocalEdge::Gadget(k, false) => ne + k,
                LocalEdge::Base(e) => e,
            };
            let x = m.add_segment(id, nodes[st.map.origin[d]], nodes[st.map.origin[d + 1]]);
            darts[d] = x;
            darts[d + 1] = x + 1;
            if let LocalEdge::Gadget(k, false) = st.edge[st.map.edge[d]] {
                owner[k] = x;
            }
        }
        node_of.push(nodes);
        dart_of.push(darts);
    }
    for (st, (nodes, darts)) in strips.iter().zip(node_of.iter().zip(dart_of.iter_mut())) {
        for d in (0..st.map.dart_count()).step_by(2) {
            if let LocalEdge::Gadget(k, true) = st.edge[st.map.edge[d]] {
                let o = owner[k];
                let o = if m.origin[o] == nodes[st.map.origin[d]] { o } else { twin(o) };
                darts[d] = o;
                darts[d + 1] = twin(o);
            }
        }
    }
    let layout = |m: &str| Error::Layout(format!("strip gluing: {m}"));
    // rotation of local node `x` in strip `k`, started at dart `from`
    let rot_from = |k: usize, x: usize, from: usize| -> Vec<usize> {
        let mut r = strips[k].map.rotation(x);
        let p = r.iter().position(|&d| d == from).expect("dart at node");
        r.rotate_left(p);
        r
    };
    let dart_to = |k: usize, x: usize, y: usize| -> usize {
        let st = &strips[k];
        st.map.rotation(x).into_iter().find(|&d| st.map.origin[twin(d)] == y).expect("corridor dart")
    };
    let boundary: Vec<Vec<usize>> =
        strips.iter().map(|st| [st.s, st.t].iter().chain(&st.left).chain(&st.right).copied().collect()).collect();
    for (k, st) in strips.iter().enumerate() {
        for x in 0..st.map.node_count() {
            if (x < st.vertex.len() && boundary[k].contains(&x)) || st.map.first[x] == usize::MAX {
                continue;
            }
            let r: Vec<usize> = st.map.rotation(x).iter().map(|&d| dart_of[k][d]).collect();
            m.set_rotation(node_of[k][x], &r);
        }
    }
    for k in 0..n {
        let l = &strips[k];
        let prev = (k + n - 1) % n;
        let r = &strips[prev];
        for lvl in 0..3 {
            let up = |st: &Strip, side: [usize; 3]| if lvl == 0 { st.s } else { side[lvl - 1] };
            let down = |st: &Strip, side: [usize; 3]| if lvl == 2 { st.t } else { side[lvl + 1] };
            let (xl, xr) = (l.left[lvl], r.right[lvl]);
            let (up_l, down_l) = (dart_to(k, xl, up(l, l.left)), dart_to(k, xl, down(l, l.left)));
            let (up_r, down_r) = (dart_to(prev, xr, up(r, r.right)), dart_to(prev, xr, down(r, r.right)));
            let rr = rot_from(prev, xr, up_r);
            let rl = rot_from(k, xl, down_l);
            if rr.last() != Some(&down_r) || rl.last() != Some(&up_l) {
                return Err(layout("boundary corridors are not consecutive"));
            }
            let mut merged = vec![dart_of[k][up_l]];
            merged.extend(rr[1..rr.len() - 1].iter().map(|&d| dart_of[prev][d]));
            merged.push(dart_of[k][down_l]);
            merged.extend(rl[1..rl.len() - 1].iter().map(|&d| dart_of[k][d]));
            m.set_rotation(node_of[k][xl], &merged);
        }
    }
    let mut at_s = Vec::new();
    for (k, st) in strips.iter().enumerate() {
        let r = rot_from(k, st.s, dart_to(k, st.s, st.left[0]));
        if r.last() != Some(&dart_to(k, st.s, st.right[0])) {
            return Err(layout("corridors at s"));
        }
        at_s.extend(r[..r.len() - 1].iter().map(|&d| dart_of[k][d]));
    }
    m.set_rotation(art.wiring.s, &at_s);
    let mut at_t = Vec::new();
    for (k, st) in strips.iter().enumerate().rev() {
        let r = rot_from(k, st.t, dart_to(k, st.t, st.right[2]));
        if r.last() != Some(&dart_to(k, st.t, st.left[2])) {
            return Err(layout("corridors at t"));
        }
        at_t.extend(r[..r.len() - 1].iter().map(|&d| dart_of[k][d]));
    }
    m.set_rotation(art.wiring.t, &at_t);
    Ok((m, owner))
}
