use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{ArcRef, Crossing, Drawing, NodeRef};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(format!("drawing json: {}", msg.into()))
}

impl Drawing {
    pub fn to_json(&self) -> Value {
        let crossings: Vec<Value> = self
            .crossings
            .iter()
            .map(|c| json!({ "id": c.id, "pair": c.pair }))
            .collect();
        let mut paths = Map::new();
        for (e, p) in self.edge_paths.iter().enumerate() {
            let nodes: Vec<&str> = p.iter().map(|n| self.node_name(*n)).collect();
            paths.insert(e.to_string(), json!(nodes));
        }
        let mut rot = Map::new();
        for (x, r) in self.rotation.iter().enumerate() {
            let name = self.node_name(self.node_ref(x)).to_string();
            rot.insert(name, json!(r.iter().map(ArcRef::to_string).collect::<Vec<_>>()));
        }
        json!({
            "graph": self.graph.to_json(),
            "crossings": crossings,
            "edge_paths": paths,
            "rotation": rot,
        })
    }

    /// Parses Drawing JSON without validating the drawing; call
    /// [`Drawing::validate`] on the result.
    pub fn from_json(v: &Value) -> Result<Drawing> {
        let graph = Graph::from_json(v.get("graph").ok_or_else(|| bad("missing `graph`"))?, false)?;
        let nv = graph.vertex_count();
        let mut crossings = Vec::new();
        let mut names: HashMap<String, NodeRef> = graph
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), NodeRef::Vertex(i)))
            .collect();
        for (i, c) in v
            .get("crossings")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `crossings`"))?
            .iter()
            .enumerate()
        {
            let id = c.get("id").and_then(Value::as_str).ok_or_else(|| bad("crossing without id"))?;
            let pair = c
                .get("pair")
                .and_then(Value::as_array)
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("crossing pair must have two edges"))?;
            let mut p = [0usize; 2];
            for (k, x) in pair.iter().enumerate() {
                p[k] = x.as_u64().ok_or_else(|| bad("edge index must be an integer"))? as usize;
            }
            p.sort_unstable();
            if names.insert(id.to_string(), NodeRef::Crossing(i)).is_some() {
                return Err(bad(format!("node id `{id}` used twice")));
            }
            crossings.push(Crossing { id: id.to_string(), pair: p });
        }
        let node = |s: &str| names.get(s).copied().ok_or_else(|| bad(format!("unknown node `{s}`")));
        let paths_obj = v.get("edge_paths").and_then(Value::as_object).ok_or_else(|| bad("missing `edge_paths`"))?;
        let mut edge_paths = vec![Vec::new(); graph.edge_count()];
        for (k, p) in paths_obj {
            let e: usize = k.parse().map_err(|_| bad(format!("bad edge index `{k}`")))?;
            if e >= edge_paths.len() {
                return Err(bad(format!("edge index {e} out of range")));
            }
            edge_paths[e] = p
                .as_array()
                .ok_or_else(|| bad("edge path must be an array"))?
                .iter()
                .map(|n| n.as_str().ok_or_else(|| bad("node must be a string")).and_then(node))
                .collect::<Result<Vec<_>>>()?;
        }
        let mut rotation = vec![Vec::new(); nv + crossings.len()];
        let rot_obj = v.get("rotation").and_then(Value::as_object).ok_or_else(|| bad("missing `rotation`"))?;
        for (k, r) in rot_obj {
            let idx = match node(k)? {
                NodeRef::Vertex(v) => v,
                NodeRef::Crossing(c) => nv + c,
            };
            rotation[idx] = r
                .as_array()
                .ok_or_else(|| bad("rotation must be an array"))?
                .iter()
                .map(|a| {
                    let s = a.as_str().ok_or_else(|| bad("arc must be a string"))?;
                    let (e, seg) = s.split_once(':').ok_or_else(|| bad(format!("bad arc `{s}`")))?;
                    Ok(ArcRef {
                        edge: e.parse().map_err(|_| bad(format!("bad arc `{s}`")))?,
                        seg: seg.parse().map_err(|_| bad(format!("bad arc `{s}`")))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
        }
        // arcs that do not exist would make the half-edge build panic later
        for r in &rotation {
            for a in r {
                let ok = edge_paths.get(a.edge).is_some_and(|p| a.seg + 1 < p.len());
                if !ok {
                    return Err(bad(format!("arc {a} does not exist")));
                }
            }
        }
        Ok(Drawing::from_parts_unchecked(graph, crossings, edge_paths, rotation))
    }
}
