//! Labeled undirected graphs.
//!
//! Vertices carry string ids and are addressed internally by their position in
//! the vertex list. Edges are stored in insertion order; an edge index is the
//! stable handle used by drawings and by the reduction artifacts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Role of a vertex in the reduction graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleLabel {
    S,
    T,
    A(usize),
    B(usize),
    C(usize),
    U(usize),
    D(usize, usize),
    WireMid,
    UvPathMid,
    GadgetInternal(GadgetPart),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetPart {
    Block,
}

impl RoleLabel {
    /// Checks the index ranges against an instance with `n` triplets and target `t`.
    pub fn in_range(&self, n: usize, t: usize) -> bool {
        match *self {
            RoleLabel::A(i) | RoleLabel::B(i) | RoleLabel::C(i) => (1..=n).contains(&i),
            RoleLabel::U(i) => (1..=3 * n).contains(&i),
            RoleLabel::D(i, j) => (1..=n).contains(&i) && j >= 1 && j < t,
            _ => true,
        }
    }
}

impl fmt::Display for RoleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleLabel::S => write!(f, "s"),
            RoleLabel::T => write!(f, "t"),
            RoleLabel::A(i) => write!(f, "a:{i}"),
            RoleLabel::B(i) => write!(f, "b:{i}"),
            RoleLabel::C(i) => write!(f, "c:{i}"),
            RoleLabel::U(i) => write!(f, "u:{i}"),
            RoleLabel::D(i, j) => write!(f, "d:{i}:{j}"),
            RoleLabel::WireMid => write!(f, "wire-mid"),
            RoleLabel::UvPathMid => write!(f, "uv-path-mid"),
            RoleLabel::GadgetInternal(GadgetPart::Block) => write!(f, "gadget:block"),
        }
    }
}

impl FromStr for RoleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown role label `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        let idx = |p: &str| p.parse::<usize>().map_err(|_| bad());
        Ok(match parts.as_slice() {
            ["s"] => RoleLabel::S,
            ["t"] => RoleLabel::T,
            ["a", i] => RoleLabel::A(idx(i)?),
            ["b", i] => RoleLabel::B(idx(i)?),
            ["c", i] => RoleLabel::C(idx(i)?),
            ["u", i] => RoleLabel::U(idx(i)?),
            ["d", i, j] => RoleLabel::D(idx(i)?, idx(j)?),
            ["wire-mid"] => RoleLabel::WireMid,
            ["uv-path-mid"] => RoleLabel::UvPathMid,
            ["gadget", "block"] => RoleLabel::GadgetInternal(GadgetPart::Block),
            _ => return Err(bad()),
        })
    }
}

/// An undirected graph with named vertices and indexed edges.
///
/// Graphs built with [`Graph::new`] are simple. The reduction builds its
/// output with [`Graph::new_multigraph`], because the wrap-around
/// identifications of the construction produce loops and parallel edges for
/// one or two triplets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, RoleLabel>,
}

impl Graph {
    /// Builds a simple graph; rejects loops, parallel edges and duplicate ids.
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::new_multigraph(vertices, edges)?;
        g.check_simple()?;
        Ok(g)
    }

    /// Builds a graph that may contain loops and parallel edges.
    pub fn new_multigraph<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut g = Graph::empty();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (a, b) in edges {
            g.add_edge_unchecked(a, b)?;
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        Graph {
            names: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn add_vertex<S: Into<String>>(&mut self, name: S) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::InvalidGraph(format!("duplicate vertex id `{name}`")));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Ok(id)
    }

    pub fn add_labeled_vertex<S: Into<String>>(&mut self, name: S, label: RoleLabel) -> Result<usize> {
        let id = self.add_vertex(name)?;
        self.labels.insert(id, label);
        Ok(id)
    }

    /// Adds an edge, refusing loops and parallel edges.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at `{}`", self.name(a))));
        }
        if self.find_edge(a, b).is_some() {
            return Err(Error::InvalidGraph(format!(
                "parallel edge {}-{}",
                self.name(a),
                self.name(b)
            )));
        }
        self.add_edge_unchecked(a, b)
    }

    /// Adds an edge without the simplicity checks (endpoints must exist).
    pub fn add_edge_unchecked(&mut self, a: usize, b: usize) -> Result<usize> {
        let n = self.names.len();
        if a >= n || b >= n {
            return Err(Error::InvalidGraph(format!("edge ({a},{b}) references a missing vertex")));
        }
        self.edges.push((a, b));
        Ok(self.edges.len() - 1)
    }

    pub fn set_label(&mut self, v: usize, label: RoleLabel) -> Result<()> {
        if v >= self.names.len() {
            return Err(Error::InvalidGraph(format!("label on missing vertex {v}")));
        }
        self.labels.insert(v, label);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn label(&self, v: usize) -> Option<RoleLabel> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<usize, RoleLabel> {
        &self.labels
    }

    /// Index of the first edge joining `a` and `b`, in either orientation.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    /// Two edges are adjacent when they share an endpoint.
    pub fn adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    pub fn is_simple_graph(&self) -> bool {
        self.check_simple().is_ok()
    }

    fn check_simple(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at `{}`", self.names[a])));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge {}-{}",
                    self.names[a], self.names[b]
                )));
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.names.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Subgraph induced by `keep` (in the order of the original vertex list).
    /// Returns the graph and, for each kept edge, its original index.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        let mut g = Graph::empty();
        let mut map = vec![usize::MAX; self.names.len()];
        for (v, name) in self.names.iter().enumerate() {
            if keep[v] {
                map[v] = g.add_vertex(name.clone()).expect("names are unique");
                if let Some(l) = self.labels.get(&v) {
                    g.labels.insert(map[v], *l);
                }
            }
        }
        let mut kept = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if keep[a] && keep[b] {
                g.edges.push((map[a], map[b]));
                kept.push(e);
            }
        }
        (g, kept)
    }

    pub fn to_json(&self) -> Value {
        let labels: Map<String, Value> = self
            .labels
            .iter()
            .map(|(v, l)| (self.names[*v].clone(), Value::String(l.to_string())))
            .collect();
        json!({
            "vertices": self.names,
            "edges": self.edges.iter().map(|&(a, b)| json!([self.names[a], self.names[b]])).collect::<Vec<_>>(),
            "labels": labels,
        })
    }

    /// Parses Graph JSON. With `strict`, loops and parallel edges are rejected.
    pub fn from_json(value: &Value, strict: bool) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("graph json: {m}"));
        let verts = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `vertices`"))?;
        let mut g = Graph::empty();
        for v in verts {
            g.add_vertex(v.as_str().ok_or_else(|| bad("vertex id must be a string"))?)?;
        }
        let edges = value
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `edges`"))?;
        for e in edges {
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("edge must be a pair"))?;
            let mut ends = [0usize; 2];
            for (k, p) in pair.iter().enumerate() {
                let name = p.as_str().ok_or_else(|| bad("edge endpoint must be a string"))?;
                ends[k] = g.vertex(name).ok_or_else(|| bad(&format!("unknown vertex `{name}`")))?;
            }
            if strict {
                g.add_edge(ends[0], ends[1])?;
            } else {
                g.add_edge_unchecked(ends[0], ends[1])?;
            }
        }
        if let Some(labels) = value.get("labels").and_then(Value::as_object) {
            for (name, l) in labels {
                let v = g.vertex(name).ok_or_else(|| bad(&format!("label on unknown vertex `{name}`")))?;
                let l: RoleLabel = l.as_str().ok_or_else(|| bad("label must be a string"))?.parse()?;
                g.labels.insert(v, l);
            }
        }
        Ok(g)
    }
}

/// The complete graph on `t` vertices, named `0..t`.
pub fn complete_graph(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidArgument("complete graph needs at least one vertex".into()));
    }
    let names: Vec<String> = (0..t).map(|i| i.to_string()).collect();
    let mut edges = Vec::with_capacity(t * (t - 1) / 2);
    for i in 0..t {
        for j in i + 1..t {
            edges.push((i, j));
        }
    }
    Graph::new(names, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sizes() {
        assert!(complete_graph(0).is_err());
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(complete_graph(4).unwrap().edge_count(), 6);
        let k6 = complete_graph(6).unwrap();
        assert_eq!(k6.edge_count(), 15);
        assert!((0..6).all(|v| k6.degree(v) == 5));
    }

    #[test]
    fn simple_graph_rejects_loops_and_parallel_edges() {
        assert!(Graph::new(vec!["a", "b"], vec![(0, 0)]).is_err());
        assert!(Graph::new(vec!["a", "b"], vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(vec!["a", "a"], vec![]).is_err());
        let multi = Graph::new_multigraph(vec!["a", "b"], vec![(0, 1), (1, 0), (0, 0)]).unwrap();
        assert!(!multi.is_simple_graph());
    }

    #[test]
    fn role_labels_round_trip_and_ranges() {
        for l in [
            RoleLabel::S,
            RoleLabel::T,
            RoleLabel::A(2),
            RoleLabel::D(1, 5),
            RoleLabel::WireMid,
            RoleLabel::UvPathMid,
            RoleLabel::GadgetInternal(GadgetPart::Block),
        ] {
            assert_eq!(l.to_string().parse::<RoleLabel>().unwrap(), l);
        }
        assert!(RoleLabel::U(6).in_range(2, 6));
        assert!(!RoleLabel::U(7).in_range(2, 6));
        assert!(!RoleLabel::D(1, 6).in_range(2, 6));
        assert!(!RoleLabel::A(0).in_range(2, 6));
    }

    #[test]
    fn json_round_trip() {
        let mut g = complete_graph(4).unwrap();
        g.set_label(0, RoleLabel::S).unwrap();
        let back = Graph::from_json(&g.to_json(), true).unwrap();
        assert_eq!(back, g);
    }
}
