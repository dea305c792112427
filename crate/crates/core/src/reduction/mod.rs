//! The uncrossable-edge gadget and the 3-Partition reduction.
//!
//! [`attach_uncrossable_edge`] adds the gadget between two vertices,
//! [`build_reduction`] builds the whole instance graph, [`build_yes_drawing`]
//! draws it for a solved instance and [`extract_partition`] reads a partition
//! back from a drawing whose gadgets are crossed only internally.

mod extract;
mod template;
mod yes;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{GadgetPart, Graph, RoleLabel};
use crate::partition::ThreePartitionInstance;

pub use extract::extract_partition;
pub use template::{gadget_template_drawing, GadgetTemplate};
pub use yes::build_yes_drawing;

pub const GADGET_VERTICES: usize = 94;
pub const GADGET_EDGES: usize = 206;

/// A path of length two; `edges[0]` is incident to the gadget endpoint or
/// to the first vertex of the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Path2 {
    pub mid: usize,
    pub edges: [usize; 2],
}

/// Where a gadget sits in the reduction graph. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetRole {
    SA(usize),
    AB(usize),
    BC(usize),
    CT(usize),
    DT(usize, usize),
}

impl GadgetRole {
    /// The s-t path (1-based) a skeleton gadget belongs to.
    pub fn skeleton_path(&self) -> Option<usize> {
        match *self {
            GadgetRole::SA(i) | GadgetRole::AB(i) | GadgetRole::BC(i) | GadgetRole::CT(i) => Some(i),
            GadgetRole::DT(..) => None,
        }
    }
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetRole::SA(i) => write!(f, "s-a:{i}"),
            GadgetRole::AB(i) => write!(f, "a-b:{i}"),
            GadgetRole::BC(i) => write!(f, "b-c:{i}"),
            GadgetRole::CT(i) => write!(f, "c-t:{i}"),
            GadgetRole::DT(i, j) => write!(f, "d-t:{i}:{j}"),
        }
    }
}

impl FromStr for GadgetRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown gadget role `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = rest.split(':').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(match (kind, nums.as_slice()) {
            ("s-a", [i]) => GadgetRole::SA(*i),
            ("a-b", [i]) => GadgetRole::AB(*i),
            ("b-c", [i]) => GadgetRole::BC(*i),
            ("c-t", [i]) => GadgetRole::CT(*i),
            ("d-t", [i, j]) => GadgetRole::DT(*i, *j),
            _ => return Err(bad()),
        })
    }
}

/// The vertices and edges of one uncrossable edge between `u` and `v`.
///
/// `vertices` and `edges` list everything the gadget added in creation
/// order: blocks, u-wire mids, v-wire mids, uv-path mids; block edges,
/// u-spokes, u-wires, v-spokes, v-wires, uv-paths. Block `b` has vertices
/// `blocks[b]`; spokes and wires are ordered by block, then block vertex,
/// then copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetHandle {
    pub u: usize,
    pub v: usize,
    pub role: Option<GadgetRole>,
    pub blocks: [[usize; 4]; 3],
    pub block_edges: Vec<usize>,
    pub u_spokes: Vec<usize>,
    pub v_spokes: Vec<usize>,
    pub u_wires: Vec<Path2>,
    pub v_wires: Vec<Path2>,
    pub uv_paths: Vec<Path2>,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Adds an uncrossable edge between `u` and `v`.
pub fn attach_uncrossable_edge(g: &Graph, u: usize, v: usize) -> Result<(Graph, GadgetHandle)> {
    let mut g = g.clone();
    let prefix = format!("gadget{}:", g.vertex_count());
    let h = attach_into(&mut g, u, v, &prefix)?;
    Ok((g, h))
}

fn attach_into(g: &mut Graph, u: usize, v: usize, prefix: &str) -> Result<GadgetHandle> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::InvalidArgument(format!("gadget endpoints {u}, {v} not in the graph")));
    }
    if u == v {
        return Err(Error::InvalidArgument("gadget endpoints must be distinct".into()));
    }
    let mut vertices = Vec::with_capacity(GADGET_VERTICES);
    let mut edges = Vec::with_capacity(GADGET_EDGES);
    let add_v = |g: &mut Graph, name: String, l: RoleLabel, vertices: &mut Vec<usize>| -> Result<usize> {
        let x = g.add_labeled_vertex(format!("{prefix}{name}"), l)?;
        vertices.push(x);
        Ok(x)
    };
    let mut blocks = [[0; 4]; 3];
    for (b, block) in blocks.iter_mut().enumerate() {
        for (k, x) in block.iter_mut().enumerate() {
            *x = add_v(g, format!("h{}.{}", b + 1, k + 1), RoleLabel::GadgetInternal(GadgetPart::Block), &mut vertices)?;
        }
    }
    let mut wire_mids = [Vec::new(), Vec::new()];
    for (side, name) in [(0, "uw"), (1, "vw")] {
        for b in 0..3 {
            for k in 0..4 {
                for r in 0..3 {
                    let x = add_v(g, format!("{name}{}.{}.{}", b + 1, k + 1, r + 1), RoleLabel::WireMid, &mut vertices)?;
                    wire_mids[side].push(x);
                }
            }
        }
    }
    let mut uv_mids = Vec::new();
    for p in 0..10 {
        uv_mids.push(add_v(g, format!("p{}", p + 1), RoleLabel::UvPathMid, &mut vertices)?);
    }
    let mut add_e = |g: &mut Graph, a: usize, b: usize| -> Result<usize> {
        let e = g.add_edge_unchecked(a, b)?;
        edges.push(e);
        Ok(e)
    };
    let mut block_edges = Vec::new();
    for block in &blocks {
        for i in 0..4 {
            for j in i + 1..4 {
                block_edges.push(add_e(g, block[i], block[j])?);
            }
        }
    }
    let mut spokes = [Vec::new(), Vec::new()];
    let mut wires = [Vec::new(), Vec::new()];
    for (side, end) in [(0, u), (1, v)] {
        for block in &blocks {
            for &x in block {
                spokes[side].push(add_e(g, end, x)?);
            }
        }
        for (k, &mid) in wire_mids[side].iter().enumerate() {
            let x = blocks[k / 12][(k / 3) % 4];
            let e0 = add_e(g, end, mid)?;
            let e1 = add_e(g, mid, x)?;
            wires[side].push(Path2 { mid, edges: [e0, e1] });
        }
    }
    let mut uv_paths = Vec::new();
    for &mid in &uv_mids {
        let e0 = add_e(g, u, mid)?;
        let e1 = add_e(g, mid, v)?;
        uv_paths.push(Path2 { mid, edges: [e0, e1] });
    }
    let [u_spokes, v_spokes] = spokes;
    let [u_wires, v_wires] = wires;
    debug_assert_eq!((vertices.len(), edges.len()), (GADGET_VERTICES, GADGET_EDGES));
    Ok(GadgetHandle { u, v, role: None, blocks, block_edges, u_spokes, v_spokes, u_wires, v_wires, uv_paths, vertices, edges })
}

impl GadgetHandle {
    /// Rebuilds a handle from its endpoints and its vertex and edge lists in
    /// creation order, checking every incidence against `g`.
    pub fn from_lists(g: &Graph, u: usize, v: usize, vertices: Vec<usize>, edges: Vec<usize>) -> Result<Self> {
        let stale = |m: String| Error::StaleHandle(m);
        if vertices.len() != GADGET_VERTICES || edges.len() != GADGET_EDGES {
            return Err(stale(format!("expected {GADGET_VERTICES} vertices and {GADGET_EDGES} edges")));
        }
        if let Some(&x) = vertices.iter().chain([&u, &v]).find(|&&x| x >= g.vertex_count()) {
            return Err(stale(format!("vertex {x} not in graph")));
        }
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(stale(format!("edge {e} not in graph")));
        }
        let mut blocks = [[0; 4]; 3];
        for b in 0..3 {
            blocks[b].copy_from_slice(&vertices[4 * b..4 * b + 4]);
        }
        let path = |mid: usize, es: &[usize]| Path2 { mid, edges: [es[0], es[1]] };
        let h = GadgetHandle {
            u,
            v,
            role: None,
            blocks,
            block_edges: edges[0..18].to_vec(),
            u_spokes: edges[18..30].to_vec(),
            u_wires: (0..36).map(|k| path(vertices[12 + k], &edges[30 + 2 * k..])).collect(),
            v_spokes: edges[102..114].to_vec(),
            v_wires: (0..36).map(|k| path(vertices[48 + k], &edges[114 + 2 * k..])).collect(),
            uv_paths: (0..10).map(|k| path(vertices[84 + k], &edges[186 + 2 * k..])).collect(),
            vertices,
            edges,
        };
        h.check(g)?;
        Ok(h)
    }

    /// Verifies that every recorded edge joins the vertices it should.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let ok = |e: usize, a: usize, b: usize| {
            e < g.edge_count() && {
                let (x, y) = g.edge(e);
                (x, y) == (a, b) || (x, y) == (b, a)
            }
        };
        let mut expect: Vec<(usize, usize, usize)> = Vec::new();
        let mut k = 0;
        for block in &self.blocks {
            for i in 0..4 {
                for j in i + 1..4 {
                    expect.push((self.block_edges[k], block[i], block[j]));
                    k += 1;
                }
            }
        }
        for (end, spokes, wires) in [(self.u, &self.u_spokes, &self.u_wires), (self.v, &self.v_spokes, &self.v_wires)] {
            for (k, &e) in spokes.iter().enumerate() {
                expect.push((e, end, self.blocks[k / 4][k % 4]));
            }
            for (k, w) in wires.iter().enumerate() {
                expect.push((w.edges[0], end, w.mid));
                expect.push((w.edges[1], w.mid, self.blocks[k / 12][(k / 3) % 4]));
            }
        }
        for p in &self.uv_paths {
            expect.push((p.edges[0], self.u, p.mid));
            expect.push((p.edges[1], p.mid, self.v));
        }
        match expect.iter().find(|&&(e, a, b)| !ok(e, a, b)) {
            Some(&(e, a, b)) => Err(Error::StaleHandle(format!(
                "edge {e} should join {} and {}",
                g.name(a.min(g.vertex_count().saturating_sub(1))),
                g.name(b.min(g.vertex_count().saturating_sub(1)))
            ))),
            None => Ok(()),
        }
    }

    /// Edges of the union of the three blocks, deduplicated.
    pub fn block_edge_union(&self) -> usize {
        let mut es = self.block_edges.clone();
        es.sort_unstable();
        es.dedup();
        es.len()
    }
}

/// Membership of host edges in one gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalEdgeClassifier {
    internal: Vec<bool>,
}

impl ExternalEdgeClassifier {
    pub fn is_internal(&self, e: usize) -> bool {
        self.internal.get(e).copied().unwrap_or(false)
    }

    pub fn is_external(&self, e: usize) -> bool {
        !self.is_internal(e)
    }

    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.internal.len()).filter(|&e| self.internal[e]).collect()
    }

    pub fn external_edges(&self) -> Vec<usize> {
        (0..self.internal.len()).filter(|&e| !self.internal[e]).collect()
    }
}

/// Splits the edges of `g` into those of gadget `h` and all others.
pub fn classify_external(h: &GadgetHandle, g: &Graph) -> Result<ExternalEdgeClassifier> {
    h.check(g)?;
    let mut internal = vec![false; g.edge_count()];
    for &e in &h.edges {
        internal[e] = true;
    }
    Ok(ExternalEdgeClassifier { internal })
}

/// Construction switches. The default follows the construction exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    /// Include the rungs `{c_i, c_{i+1}}`.
    pub c_rungs: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { c_rungs: true }
    }
}

/// A path `u_j - w - t` added for value `x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UtPath {
    pub u: usize,
    pub path: Path2,
}

/// Named parts of the reduction graph. Face indices are 0-based here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wiring {
    pub s: usize,
    pub t: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub u: Vec<usize>,
    /// `d[i][j]` for `0 <= j <= T`, with `d[i][0] = c_i` and `d[i][T] = c_{i+1}`.
    pub d: Vec<Vec<usize>>,
    pub s_edges: Vec<usize>,
    pub a_rungs: Vec<usize>,
    pub b_rungs: Vec<usize>,
    pub c_rungs: Vec<usize>,
    /// `d_edges[i][j - 1] = {d_{i,j-1}, d_{i,j}}`.
    pub d_edges: Vec<Vec<usize>>,
    /// The length-two path parallel to each d-edge.
    pub d_paths: Vec<Vec<Path2>>,
    /// Per `u_j`, its `x_j` paths to `t`.
    pub u_paths: Vec<Vec<UtPath>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub instance: ThreePartitionInstance,
    pub options: ReductionOptions,
    pub target: usize,
    pub gadgets: Vec<GadgetHandle>,
    pub wiring: Wiring,
}

/// Closed-form size `(|V|, |E|)` of the reduction graph.
pub fn reduction_size(n: usize, t: usize) -> (usize, usize) {
    (2 + 5 * n + 3 * n * t + 94 * n * (t + 3), 6 * n + 5 * n * t + 206 * n * (t + 3))
}

/// Builds the reduction graph of `inst`.
pub fn build_reduction(inst: &ThreePartitionInstance) -> Result<ReductionArtifact> {
    build_reduction_with(inst, ReductionOptions::default())
}

pub fn build_reduction_with(inst: &ThreePartitionInstance, options: ReductionOptions) -> Result<ReductionArtifact> {
    let t = inst.target_or_err()?;
    if inst.n == 0 || inst.values.len() != 3 * inst.n {
        return Err(Error::InvalidArgument(format!("expected 3n = {} values", 3 * inst.n)));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("target must be positive".into()));
    }
    build_reduction_lax(inst, options)
}

/// Builds the reduction graph without requiring positive values; zero
/// values make the size audit possible for targets below 3.
pub fn build_reduction_lax(inst: &ThreePartitionInstance, options: ReductionOptions) -> Result<ReductionArtifact> {
    let t = inst.target_or_err()? as usize;
    let n = inst.n;
    if n == 0 || inst.values.len() != 3 * n || t == 0 {
        return Err(Error::InvalidArgument(format!("expected 3n = {} values with a positive target", 3 * n)));
    }
    let mut g = Graph::empty();
    let s = g.add_labeled_vertex("s", RoleLabel::S)?;
    let tt = g.add_labeled_vertex("t", RoleLabel::T)?;
    let row = |g: &mut Graph, l: fn(usize) -> RoleLabel| -> Result<Vec<usize>> {
        (1..=n).map(|i| g.add_labeled_vertex(l(i).to_string(), l(i))).collect()
    };
    let a = row(&mut g, RoleLabel::A)?;
    let b = row(&mut g, RoleLabel::B)?;
    let c = row(&mut g, RoleLabel::C)?;
    let u: Vec<usize> =
        (1..=3 * n).map(|j| g.add_labeled_vertex(RoleLabel::U(j).to_string(), RoleLabel::U(j))).collect::<Result<_>>()?;
    let mut d = Vec::with_capacity(n);
    for i in 1..=n {
        let mut chain = vec![c[i - 1]];
        for j in 1..t {
            chain.push(g.add_labeled_vertex(RoleLabel::D(i, j).to_string(), RoleLabel::D(i, j))?);
        }
        chain.push(c[i % n]);
        d.push(chain);
    }
    let s_edges: Vec<usize> = u.iter().map(|&x| g.add_edge_unchecked(s, x)).collect::<Result<_>>()?;
    let (mut a_rungs, mut b_rungs, mut c_rungs) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        a_rungs.push(g.add_edge_unchecked(a[i], a[(i + 1) % n])?);
        b_rungs.push(g.add_edge_unchecked(b[i], b[(i + 1) % n])?);
        if options.c_rungs {
            c_rungs.push(g.add_edge_unchecked(c[i], c[(i + 1) % n])?);
        }
    }
    let mut d_edges = Vec::with_capacity(n);
    for chain in &d {
        d_edges.push((1..=t).map(|j| g.add_edge_unchecked(chain[j - 1], chain[j])).collect::<Result<Vec<_>>>()?);
    }
    let mut u_paths = Vec::with_capacity(3 * n);
    for (j, &x) in inst.values.iter().enumerate() {
        let mut ps = Vec::new();
        for k in 1..=x as usize {
            let mid = g.add_vertex(format!("w:{}:{k}", j + 1))?;
            let e0 = g.add_edge_unchecked(u[j], mid)?;
            let e1 = g.add_edge_unchecked(mid, tt)?;
            ps.push(UtPath { u: u[j], path: Path2 { mid, edges: [e0, e1] } });
        }
        u_paths.push(ps);
    }
    let mut d_paths = Vec::with_capacity(n);
    for (i, chain) in d.iter().enumerate() {
        let mut ps = Vec::new();
        for j in 1..=t {
            let mid = g.add_vertex(format!("m:{}:{j}", i + 1))?;
            let e0 = g.add_edge_unchecked(chain[j - 1], mid)?;
            let e1 = g.add_edge_unchecked(mid, chain[j])?;
            ps.push(Path2 { mid, edges: [e0, e1] });
        }
        d_paths.push(ps);
    }
    let mut gadgets = Vec::with_capacity(n * (t + 3));
    let mut attach = |g: &mut Graph, x: usize, y: usize, role: GadgetRole| -> Result<()> {
        let mut h = attach_into(g, x, y, &format!("{role}/"))?;
        h.role = Some(role);
        gadgets.push(h);
        Ok(())
    };
    for i in 0..n {
        attach(&mut g, s, a[i], GadgetRole::SA(i + 1))?;
        attach(&mut g, a[i], b[i], GadgetRole::AB(i + 1))?;
        attach(&mut g, b[i], c[i], GadgetRole::BC(i + 1))?;
        attach(&mut g, c[i], tt, GadgetRole::CT(i + 1))?;
    }
    for i in 0..n {
        for j in 1..t {
            attach(&mut g, d[i][j], tt, GadgetRole::DT(i + 1, j))?;
        }
    }
    let wiring = Wiring { s, t: tt, a, b, c, u, d, s_edges, a_rungs, b_rungs, c_rungs, d_edges, d_paths, u_paths };
    Ok(ReductionArtifact { graph: g, instance: inst.clone(), options, target: t, gadgets, wiring })
}

impl ReductionArtifact {
    /// For each edge, the index of the gadget owning it.
    pub fn gadget_of_edge(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.graph.edge_count()];
        for (k, h) in self.gadgets.iter().enumerate() {
            for &e in &h.edges {
                out[e] = Some(k);
            }
        }
        out
    }

    /// Graph JSON plus the instance, the options and the gadget list.
    pub fn to_json(&self) -> Value {
        let mut v = self.graph.to_json();
        let names = self.graph.names();
        let gadgets: Vec<Value> = self
            .gadgets
            .iter()
            .map(|h| {
                json!({
                    "u": names[h.u],
                    "v": names[h.v],
                    "role": h.role.map(|r| r.to_string()),
                    "vertices": h.vertices.iter().map(|&x| &names[x]).collect::<Vec<_>>(),
                    "edges": h.edges,
                })
            })
            .collect();
        v["gadgets"] = Value::Array(gadgets);
        v["instance"] = self.instance.to_json();
        v["c_rungs"] = Value::Bool(self.options.c_rungs);
        v
    }

    /// Parses an artifact. The graph is rebuilt from the instance and must
    /// match the stored graph and gadget lists exactly.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("artifact json: {m}"));
        let graph = Graph::from_json(v, false)?;
        let inst = ThreePartitionInstance::from_json(v.get("instance").ok_or_else(|| bad("missing `instance`"))?)?;
        let c_rungs = v.get("c_rungs").and_then(Value::as_bool).unwrap_or(true);
        let art = build_reduction_with(&inst, ReductionOptions { c_rungs })?;
        if art.graph != graph {
            return Err(bad("graph does not match the reduction of its instance"));
        }
        let gadgets = v.get("gadgets").and_then(Value::as_array).ok_or_else(|| bad("missing `gadgets`"))?;
        if gadgets.len() != art.gadgets.len() {
            return Err(bad("gadget count does not match the instance"));
        }
        for (gj, h) in gadgets.iter().zip(&art.gadgets) {
            let name = |x: &Value| x.as_str().and_then(|s| graph.vertex(s)).ok_or_else(|| bad("unknown gadget vertex"));
            let u = name(&gj["u"])?;
            let w = name(&gj["v"])?;
            let vs = gj["vertices"].as_array().ok_or_else(|| bad("gadget without `vertices`"))?;
            let vs: Vec<usize> = vs.iter().map(name).collect::<Result<_>>()?;
            let es = gj["edges"].as_array().ok_or_else(|| bad("gadget without `edges`"))?;
            let es: Vec<usize> =
                es.iter().map(|e| e.as_u64().map(|e| e as usize).ok_or_else(|| bad("edge index"))).collect::<Result<_>>()?;
            let role = gj["role"].as_str().map(str::parse::<GadgetRole>).transpose()?;
            if (u, w, role, &vs, &es) != (h.u, h.v, h.role, &h.vertices, &h.edges) {
                return Err(bad("gadget lists do not match the instance"));
            }
        }
        Ok(art)
    }
}
