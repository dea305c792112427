//! Building drawings from straight-line polylines in the plane.

use super::{ArcRef, Crossing, Drawing, NodeRef};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Point = (f64, f64);

const EPS: f64 = 1e-9;

/// Proper intersection of segments `p0p1` and `q0q1` as parameters `(t, s)`
/// in the open unit interval.
fn intersect(p0: Point, p1: Point, q0: Point, q1: Point) -> Result<Option<(f64, f64)>> {
    let r = (p1.0 - p0.0, p1.1 - p0.1);
    let s = (q1.0 - q0.0, q1.1 - q0.1);
    let den = r.0 * s.1 - r.1 * s.0;
    let qp = (q0.0 - p0.0, q0.1 - p0.1);
    if den.abs() < EPS {
        let col = qp.0 * r.1 - qp.1 * r.0;
        if col.abs() < EPS {
            let rr = r.0 * r.0 + r.1 * r.1;
            let t0 = (qp.0 * r.0 + qp.1 * r.1) / rr;
            let t1 = ((q1.0 - p0.0) * r.0 + (q1.1 - p0.1) * r.1) / rr;
            if t0.max(t1) > EPS && t0.min(t1) < 1.0 - EPS {
                return Err(Error::Layout("overlapping collinear segments".into()));
            }
        }
        return Ok(None);
    }
    let t = (qp.0 * s.1 - qp.1 * s.0) / den;
    let u = (qp.0 * r.1 - qp.1 * r.0) / den;
    let inside = |x: f64| x > EPS && x < 1.0 - EPS;
    let touching = |x: f64| (-EPS..=1.0 + EPS).contains(&x);
    if inside(t) && inside(u) {
        Ok(Some((t, u)))
    } else if touching(t) && touching(u) {
        // meeting at a bend or endpoint: fine only at a shared endpoint
        let at_end = |x: f64| x.abs() <= EPS || (x - 1.0).abs() <= EPS;
        if at_end(t) && at_end(u) {
            Ok(None)
        } else {
            Err(Error::Layout("polylines touch without crossing properly".into()))
        }
    } else {
        Ok(None)
    }
}

/// Builds the drawing whose edge `e` is the polyline from the position of
/// its first endpoint through `bends[e]` to its second endpoint. Crossings
/// must be proper and must not lie on bend points.
pub fn from_polylines(graph: Graph, pos: &[Point], bends: &[Vec<Point>]) -> Result<Drawing> {
    let m = graph.edge_count();
    if pos.len() != graph.vertex_count() || bends.len() != m {
        return Err(Error::Layout("positions or bend lists do not match the graph".into()));
    }
    let lines: Vec<Vec<Point>> = (0..m)
        .map(|e| {
            let (a, b) = graph.edge(e);
            let mut l = vec![pos[a]];
            l.extend(&bends[e]);
            l.push(pos[b]);
            l
        })
        .collect();
    // per edge: (parameter along the polyline, crossing index)
    let mut on_edge: Vec<Vec<(f64, usize)>> = vec![Vec::new(); m];
    let mut crossings = Vec::new();
    let mut where_: Vec<Point> = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            for i in 0..lines[e].len() - 1 {
                for j in 0..lines[f].len() - 1 {
                    let (p0, p1) = (lines[e][i], lines[e][i + 1]);
                    let (q0, q1) = (lines[f][j], lines[f][j + 1]);
                    if let Some((t, s)) = intersect(p0, p1, q0, q1)? {
                        let c = crossings.len();
                        crossings.push(Crossing { id: format!("x#{c}"), pair: [e, f] });
                        where_.push((p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1)));
                        on_edge[e].push((i as f64 + t, c));
                        on_edge[f].push((j as f64 + s, c));
                    }
                }
            }
        }
    }
    let nv = graph.vertex_count();
    let mut edge_paths = Vec::with_capacity(m);
    // per node: (direction angle, arc)
    let mut incid: Vec<Vec<(f64, ArcRef)>> = vec![Vec::new(); nv + crossings.len()];
    let angle = |from: Point, to: Point| (to.1 - from.1).atan2(to.0 - from.0);
    for e in 0..m {
        let (a, b) = graph.edge(e);
        on_edge[e].sort_by(|x, y| x.0.total_cmp(&y.0));
        let nseg = lines[e].len() - 1;
        // every point along the polyline with its parameter and node, if any
        let mut pts: Vec<(f64, Point, Option<usize>)> = vec![(0.0, pos[a], Some(a))];
        for (k, p) in bends[e].iter().enumerate() {
            pts.push(((k + 1) as f64, *p, None));
        }
        for &(t, c) in &on_edge[e] {
            pts.push((t, where_[c], Some(nv + c)));
        }
        pts.push((nseg as f64, pos[b], Some(b)));
        pts.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut path = vec![NodeRef::Vertex(a)];
        path.extend(on_edge[e].iter().map(|&(_, c)| NodeRef::Crossing(c)));
        path.push(NodeRef::Vertex(b));
        let mut seg = 0;
        let mut first = true;
        for k in 0..pts.len() {
            let Some(x) = pts[k].2 else { continue };
            if !first {
                incid[x].push((angle(pts[k].1, pts[k - 1].1), ArcRef { edge: e, seg }));
                seg += 1;
            }
            if k + 1 < pts.len() {
                incid[x].push((angle(pts[k].1, pts[k + 1].1), ArcRef { edge: e, seg }));
            }
            first = false;
        }
        edge_paths.push(path);
    }
    let rotation = incid
        .into_iter()
        .map(|mut v| {
            v.sort_by(|x, y| x.0.total_cmp(&y.0));
            v.into_iter().map(|(_, a)| a).collect()
        })
        .collect();
    Drawing::from_parts(graph, crossings, edge_paths, rotation)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_k4_has_one_crossing() {
        let g = crate::graph::complete_graph(4).unwrap();
        let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let d = from_polylines(g, &pos, &vec![Vec::new(); 6]).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(d.is_simple());
        assert_eq!(d.faces().len() + 4 + 1, 2 + 6 + 2);
    }

    #[test]
    fn bends_route_around() {
        // the diagonal 0-2 detours outside the square: no crossing
        let g = crate::graph::complete_graph(4).unwrap();
        let pos = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let mut bends = vec![Vec::new(); 6];
        bends[1] = vec![(-1.0, -1.0), (2.0, -1.0), (2.0, 2.0)];
        let d = from_polylines(g, &pos, &bends).unwrap();
        assert_eq!(d.crossing_count(), 0);
    }
}
