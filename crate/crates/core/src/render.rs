//! Schematic SVG output.
//!
//! The planarization is laid out with straight lines by Tutte's barycentric
//! method: the outer face goes on a regular polygon and every other node sits
//! at the average of its neighbours. Each inner face gets an auxiliary
//! centre node joined to its corners, which keeps parallel paths apart.
//! Crossings are drawn as plain intersections of the edge polylines.

use std::fmt::Write as _;

use crate::drawing::map::{PlaneMap, NONE};
use crate::drawing::{Drawing, NodeKind};
use crate::error::{Error, Result};
use crate::graph::{GadgetPart, RoleLabel};

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    /// Face of the planarization drawn outermost (index into
    /// `Drawing::faces`); the face with the most nodes by default.
    pub outer_face: Option<usize>,
    /// Side length of the square canvas in pixels.
    pub size: f64,
    pub vertex_labels: bool,
    /// Draw a small cross at every crossing.
    pub crossing_marks: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { outer_face: None, size: 800.0, vertex_labels: true, crossing_marks: false }
    }
}

/// Node positions of the planarization, indexed like `Drawing::plane_map`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub pos: Vec<(f64, f64)>,
    pub outer_face: usize,
}

pub fn layout(d: &Drawing, spec: &RenderSpec) -> Result<Layout> {
    let m = d.plane_map();
    let (faces, _) = m.faces();
    if faces.is_empty() {
        return Err(Error::Layout("drawing has no edges".into()));
    }
    if m.components() != 1 {
        return Err(Error::Layout("drawing is disconnected".into()));
    }
    let distinct = |f: &[usize]| {
        let mut v: Vec<usize> = f.iter().map(|&x| m.origin[x]).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let outer = match spec.outer_face {
        Some(f) if f < faces.len() => f,
        Some(f) => return Err(Error::Layout(format!("outer face {f} does not exist ({} faces)", faces.len()))),
        None => (0..faces.len()).max_by_key(|&f| (distinct(&faces[f]), std::cmp::Reverse(f))).unwrap(),
    };
    let nn = m.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nn + faces.len()];
    for x in (0..m.dart_count()).step_by(2) {
        if m.alive[x] {
            let (a, b) = (m.origin[x], m.origin[x + 1]);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for (f, darts) in faces.iter().enumerate() {
        if f == outer {
            continue;
        }
        for &x in darts {
            adj[nn + f].push(m.origin[x]);
            adj[m.origin[x]].push(nn + f);
        }
    }
    let mut pos = vec![(0.0, 0.0); nn + faces.len()];
    let mut fixed = vec![false; nn + faces.len()];
    let mut ring: Vec<usize> = Vec::new();
    for &x in &faces[outer] {
        let v = m.origin[x];
        if !ring.contains(&v) {
            ring.push(v);
        }
    }
    if ring.len() < 3 {
        return Err(Error::Layout("outer face has fewer than three nodes".into()));
    }
    // face walks keep the face on the right, so the ring runs clockwise
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        let a = -2.0 * std::f64::consts::PI * i as f64 / k + std::f64::consts::FRAC_PI_2;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    fixed[nn + outer] = true;
    tutte(&adj, &mut pos, &fixed);
    let live: Vec<usize> = (0..nn).filter(|&v| m.node_alive[v] && m.first[v] != NONE).collect();
    check_distinct(&live, &pos)?;
    pos.truncate(nn);
    Ok(Layout { pos, outer_face: outer })
}

fn tutte(adj: &[Vec<usize>], pos: &mut [(f64, f64)], fixed: &[bool]) {
    // Gauss-Seidel sweeps, bounded by total work on large planarizations
    let work: usize = adj.iter().map(Vec::len).sum::<usize>().max(1);
    let sweeps = (400_000_000 / work).clamp(200, 20_000);
    for _ in 0..sweeps {
        let mut delta: f64 = 0.0;
        for v in 0..adj.len() {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let k = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let p = (sx / k, sy / k);
            delta = delta.max((p.0 - pos[v].0).abs() + (p.1 - pos[v].1).abs());
            pos[v] = p;
        }
        if delta < 1e-12 {
            break;
        }
    }
}

fn check_distinct(live: &[usize], pos: &[(f64, f64)]) -> Result<()> {
    let mut pts: Vec<((f64, f64), usize)> = live.iter().map(|&v| (pos[v], v)).collect();
    pts.sort_by(|a, b| a.0 .0.total_cmp(&b.0 .0).then(a.0 .1.total_cmp(&b.0 .1)));
    for w in pts.windows(2) {
        let (p, q) = (w[0].0, w[1].0);
        if (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12 {
            return Err(Error::Layout("two nodes share a position".into()));
        }
    }
    Ok(())
}

fn edge_class(d: &Drawing, e: usize) -> &'static str {
    let (a, b) = d.graph().edge(e);
    let gadget = |v: usize| {
        matches!(
            d.graph().label(v),
            Some(RoleLabel::WireMid | RoleLabel::UvPathMid | RoleLabel::GadgetInternal(GadgetPart::Block))
        )
    };
    if gadget(a) || gadget(b) {
        "gadget"
    } else {
        "edge"
    }
}

/// Renders `d` as a standalone SVG document.
pub fn render_svg(d: &Drawing, spec: &RenderSpec) -> Result<String> {
    let lay = layout(d, spec)?;
    let m: PlaneMap = d.plane_map();
    let pad = 30.0;
    let scale = (spec.size - 2.0 * pad) / 2.0;
    let to_px = |p: (f64, f64)| (pad + (p.0 + 1.0) * scale, pad + (1.0 - p.1) * scale);
    let mut out = String::new();
    let s = spec.size;
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#);
    out.push_str(
        "<style>.edge{stroke:#222;stroke-width:1.5;fill:none}.gadget{stroke:#999;stroke-width:0.7;fill:none}\
         .vertex{fill:#fff;stroke:#222;stroke-width:1.2}.label{font:10px sans-serif;text-anchor:middle}\
         .mark{stroke:#c00;stroke-width:1}</style>\n",
    );
    let node_of = |r: crate::drawing::NodeRef| d.node_index(r);
    for (e, path) in d.edge_paths().iter().enumerate() {
        let pts: Vec<String> = path
            .iter()
            .map(|&r| {
                let (x, y) = to_px(lay.pos[node_of(r)]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"<polyline class="{}" points="{}"/>"#, edge_class(d, e), pts.join(" "));
    }
    if spec.crossing_marks {
        for c in 0..d.crossing_count() {
            let (x, y) = to_px(lay.pos[d.graph().vertex_count() + c]);
            let _ = writeln!(
                out,
                r#"<path class="mark" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}"/>"#,
                x - 3.0,
                y - 3.0,
                x + 3.0,
                y + 3.0,
                x - 3.0,
                y + 3.0,
                x + 3.0,
                y - 3.0
            );
        }
    }
    let r = if d.graph().vertex_count() > 200 { 2.0 } else { 7.0 };
    for v in 0..d.graph().vertex_count() {
        if !matches!(m.kind[v], NodeKind::Vertex(_)) || m.first[v] == NONE {
            continue;
        }
        let (x, y) = to_px(lay.pos[v]);
        let name = xml_escape(d.graph().name(v));
        let _ = writeln!(out, r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="{r}"><title>{name}</title></circle>"#);
        if spec.vertex_labels {
            let _ = writeln!(out, r#"<text class="label" x="{x:.2}" y="{:.2}">{name}</text>"#, y + 3.5);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
