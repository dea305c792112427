use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::routing::insert_vertex_extensions;
use crate::drawing::map::{NodeKind, PlaneMap};
use crate::drawing::{canonical_key, Drawing, KeyMode};
use crate::error::{Error, Result};
use crate::graph::complete_graph;

/// Drawings keyed by canonical key, one representative per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingCatalog {
    pub n: usize,
    pub mode: KeyMode,
    entries: BTreeMap<Vec<u8>, Drawing>,
}

impl DrawingCatalog {
    pub fn new(n: usize, mode: KeyMode) -> Self {
        DrawingCatalog { n, mode, entries: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &Drawing)> {
        self.entries.iter()
    }

    pub fn drawings(&self) -> impl Iterator<Item = &Drawing> {
        self.entries.values()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.entries.keys()
    }

    pub fn contains_key(&self, key: &[u8]) -> bool {
        self.entries.contains_key(key)
    }

    /// Inserts `d` unless its class is present; returns whether it was new.
    pub fn insert(&mut self, d: Drawing) -> Result<bool> {
        let key = canonical_key(&d, self.mode)?;
        Ok(self.insert_keyed(key, d))
    }

    fn insert_keyed(&mut self, key: Vec<u8>, d: Drawing) -> bool {
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, d);
        true
    }

    pub fn manifest(&self) -> Value {
        json!({
            "n": self.n,
            "mode": self.mode.to_string(),
            "count": self.len(),
            "keys": self.keys().map(hex::encode).collect::<Vec<_>>(),
        })
    }

    /// Writes `manifest.json` and `entries.json` into the directory `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
        let entries: Vec<Value> = self.drawings().map(Drawing::to_json).collect();
        let write = |name: &str, v: &Value| {
            let p = dir.join(name);
            fs::write(&p, serde_json::to_string_pretty(v)?).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))
        };
        write("manifest.json", &self.manifest())?;
        write("entries.json", &Value::Array(entries))
    }

    /// Loads a catalog directory written by [`DrawingCatalog::save`], or a
    /// single JSON array of drawings (keyed in iso mode). Keys are recomputed
    /// and must agree with the manifest.
    pub fn load(path: &Path) -> Result<Self> {
        let read = |p: &Path| -> Result<Value> {
            let s = fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            Ok(serde_json::from_str(&s)?)
        };
        let (manifest, entries) = if path.is_dir() {
            (Some(read(&path.join("manifest.json"))?), read(&path.join("entries.json"))?)
        } else {
            (None, read(path)?)
        };
        let arr = entries.as_array().ok_or_else(|| Error::Parse("catalog entries must be a JSON array".into()))?;
        let drawings = arr.iter().map(Drawing::from_json).collect::<Result<Vec<_>>>()?;
        for (i, d) in drawings.iter().enumerate() {
            if let Some(issue) = d.validate().issues.first() {
                return Err(Error::InvalidDrawing(format!("catalog entry {i}: {issue}")));
            }
        }
        let (n, mode) = match &manifest {
            Some(m) => (
                m.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Parse("manifest: missing `n`".into()))? as usize,
                m.get("mode").and_then(Value::as_str).ok_or_else(|| Error::Parse("manifest: missing `mode`".into()))?.parse()?,
            ),
            None => (drawings.first().map_or(0, |d| d.graph().vertex_count()), KeyMode::Iso),
        };
        let mut cat = DrawingCatalog::new(n, mode);
        for d in drawings {
            if !cat.insert(d)? {
                return Err(Error::Parse("catalog holds two entries of one class".into()));
            }
        }
        if let Some(m) = manifest {
            let keys: Vec<String> = cat.keys().map(hex::encode).collect();
            if m.get("keys") != Some(&json!(keys)) || m.get("count") != Some(&json!(cat.len())) {
                return Err(Error::Parse("manifest keys do not match the entries".into()));
            }
        }
        Ok(cat)
    }
}

/// Limits for [`enumerate_with_budget`].
#[derive(Clone, Copy, Debug)]
pub struct EnumBudget {
    /// Maximum number of candidate drawings generated on one level.
    pub max_candidates: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_candidates: usize::MAX }
    }
}

/// The catalog of the last level finished before the budget ran out.
#[derive(Clone, Debug)]
pub struct PartialEnumeration {
    /// Complete catalog (iso mode) for `K_{completed}`.
    pub completed: DrawingCatalog,
    pub target_n: usize,
    pub reason: String,
}

impl fmt::Display for PartialEnumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration of K{} stopped after K{} ({} classes): {}",
            self.target_n,
            self.completed.n,
            self.completed.len(),
            self.reason
        )
    }
}

impl From<PartialEnumeration> for Error {
    fn from(p: PartialEnumeration) -> Self {
        Error::BudgetExceeded(p.to_string())
    }
}

fn single_vertex() -> Drawing {
    let g = complete_graph(1).expect("K1");
    let mut m = PlaneMap::new();
    m.add_node(NodeKind::Vertex(0));
    m.to_drawing(&g).expect("K1 drawing")
}

/// One extension level: all classes (in `mode`) of extensions of `reps`.
fn next_level(reps: &[Drawing], n: usize, mode: KeyMode, budget: &EnumBudget) -> std::result::Result<DrawingCatalog, String> {
    let seen = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let per_rep: Vec<Result<Vec<(Vec<u8>, Drawing)>>> = reps
        .par_iter()
        .map(|d| {
            if stop.load(Ordering::Relaxed) {
                return Ok(Vec::new());
            }
            let ext = insert_vertex_extensions(d)?;
            if seen.fetch_add(ext.len(), Ordering::Relaxed) + ext.len() > budget.max_candidates {
                stop.store(true, Ordering::Relaxed);
            }
            let mut local = BTreeMap::new();
            for e in ext {
                let key = canonical_key(&e, KeyMode::Iso)?;
                local.entry(key).or_insert(e);
            }
            Ok(local.into_iter().collect())
        })
        .collect();
    if stop.load(Ordering::Relaxed) {
        return Err(format!(
            "more than {} candidate drawings on level {n}",
            budget.max_candidates
        ));
    }
    let mut iso = DrawingCatalog::new(n, KeyMode::Iso);
    for r in per_rep {
        for (k, d) in r.map_err(|e| e.to_string())? {
            iso.insert_keyed(k, d);
        }
    }
    if mode == KeyMode::Iso {
        return Ok(iso);
    }
    let keyed: Vec<Result<Vec<u8>>> = iso.drawings().collect::<Vec<_>>().par_iter().map(|d| canonical_key(d, mode)).collect();
    let mut out = DrawingCatalog::new(n, mode);
    for (k, d) in keyed.into_iter().zip(iso.entries.into_values()) {
        out.insert_keyed(k.map_err(|e| e.to_string())?, d);
    }
    Ok(out)
}

/// Catalog of all good drawings of `K_n`, `3 <= n <= 7`, up to `mode`.
/// Intermediate levels are always reduced up to isomorphism: weak
/// isomorphism does not preserve which extensions exist.
pub fn enumerate_with_budget(n: usize, mode: KeyMode, budget: EnumBudget) -> std::result::Result<DrawingCatalog, PartialEnumeration> {
    let mut level = DrawingCatalog::new(1, KeyMode::Iso);
    level.insert_keyed(Vec::new(), single_vertex());
    if !(3..=7).contains(&n) {
        return Err(PartialEnumeration { completed: level, target_n: n, reason: "n must be between 3 and 7".into() });
    }
    for m in 2..=n {
        let reps: Vec<Drawing> = level.drawings().cloned().collect();
        let want = if m == n { mode } else { KeyMode::Iso };
        match next_level(&reps, m, want, &budget) {
            Ok(c) => level = c,
            Err(reason) => return Err(PartialEnumeration { completed: level, target_n: n, reason }),
        }
    }
    Ok(level)
}

pub fn enumerate_good_drawings(n: usize, mode: KeyMode) -> Result<DrawingCatalog> {
    if !(3..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must be between 3 and 7, got {n}")));
    }
    Ok(enumerate_with_budget(n, mode, EnumBudget::default())?)
}

/// Entries that are min-k-planar.
pub fn filter_min_k(cat: &DrawingCatalog, k: usize) -> DrawingCatalog {
    let entries = cat.entries.iter().filter(|(_, d)| d.is_min_k_planar(k)).map(|(key, d)| (key.clone(), d.clone())).collect();
    DrawingCatalog { n: cat.n, mode: cat.mode, entries }
}

/// Deletes each edge accepted by `filter` in turn and keeps one drawing per
/// isomorphism class of the results.
pub fn delete_edge_classes(d: &Drawing, filter: impl Fn(&Drawing, usize) -> bool) -> DrawingCatalog {
    let mut cat = DrawingCatalog::new(d.graph().vertex_count(), KeyMode::Iso);
    for e in 0..d.graph().edge_count() {
        if filter(d, e) {
            cat.insert(d.delete_edge(e)).expect("iso keys never fail");
        }
    }
    cat
}
