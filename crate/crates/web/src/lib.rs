//! Browser bindings: good-drawing catalogs, their SVG renderings and the
//! reduction of small 3-Partition instances.

use serde_json::json;
use wasm_bindgen::prelude::*;

use mink_core::enumerate::{enumerate_good_drawings, filter_min_k};
use mink_core::partition::solve_three_partition;
use mink_core::reduction::{build_reduction_with, build_yes_drawing, extract_partition, ReductionOptions};
use mink_core::render::{render_svg, RenderSpec};
use mink_core::{KeyMode, ThreePartitionInstance};

fn mode_of(mode: &str) -> Result<KeyMode, String> {
    mode.parse().map_err(|e: mink_core::Error| e.to_string())
}

/// Class count and per-entry statistics of the K_n catalog, as JSON.
pub fn catalog_json(n: usize, mode: &str) -> Result<String, String> {
    let cat = enumerate_good_drawings(n, mode_of(mode)?).map_err(|e| e.to_string())?;
    let entries: Vec<_> = cat
        .drawings()
        .map(|d| json!({ "crossings": d.crossing_count(), "max_edge_crossings": d.max_edge_crossings(),
                         "min_1_planar": d.is_min_k_planar(1) }))
        .collect();
    Ok(json!({ "n": n, "mode": cat.mode.to_string(), "count": cat.len(),
               "min_1_planar": filter_min_k(&cat, 1).len(), "entries": entries })
    .to_string())
}

/// SVG of entry `index` of the K_n catalog.
pub fn catalog_svg(n: usize, mode: &str, index: usize, marks: bool) -> Result<String, String> {
    let cat = enumerate_good_drawings(n, mode_of(mode)?).map_err(|e| e.to_string())?;
    let d = cat.drawings().nth(index).ok_or_else(|| format!("index {index} out of range (0..{})", cat.len()))?;
    let spec = RenderSpec { size: 480.0, crossing_marks: marks, ..RenderSpec::default() };
    render_svg(d, &spec).map_err(|e| e.to_string())
}

/// Builds the reduction of a comma-separated instance, draws it from a
/// solution and reads the partition back, as JSON.
pub fn reduce_json(values: &str, c_rungs: bool) -> Result<String, String> {
    let xs = values
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| format!("not a number: {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if xs.is_empty() || xs.len() % 3 != 0 {
        return Err(format!("expected a multiple of three values, got {}", xs.len()));
    }
    let inst = ThreePartitionInstance::new(xs.len() / 3, xs);
    let art = build_reduction_with(&inst, ReductionOptions { c_rungs }).map_err(|e| e.to_string())?;
    let size = json!({ "vertices": art.graph.vertex_count(), "edges": art.graph.edge_count(),
                       "gadgets": art.gadgets.len(), "T": art.target });
    let Some(p) = solve_three_partition(&inst) else {
        return Ok(json!({ "size": size, "answer": "no" }).to_string());
    };
    let d = build_yes_drawing(&art, &p).map_err(|e| e.to_string())?;
    let back = extract_partition(&art, &d).map_err(|e| e.to_string())?;
    Ok(json!({
        "size": size,
        "answer": "yes",
        "partition": p.to_json(),
        "drawing": { "crossings": d.crossing_count(), "max_edge_crossings": d.max_edge_crossings(),
                     "simple": d.is_simple(), "min_1_planar": d.is_min_k_planar(1) },
        "extracted": back.to_json(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn catalog(n: usize, mode: &str) -> Result<String, JsValue> {
    catalog_json(n, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn render_entry(n: usize, mode: &str, index: usize, marks: bool) -> Result<String, JsValue> {
    catalog_svg(n, mode, index, marks).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn reduce(values: &str, c_rungs: bool) -> Result<String, JsValue> {
    reduce_json(values, c_rungs).map_err(|e| JsValue::from_str(&e))
}
