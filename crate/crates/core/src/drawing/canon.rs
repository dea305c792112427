//! Canonical keys for isomorphism and weak isomorphism.
//!
//! The iso key is the lexicographically least breadth-first code of the
//! planarization, taken over every starting dart at a vertex and both
//! orientations. The weak-iso key is the least encoding of the edge set and
//! crossing-pair set over all vertex permutations.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::map::{twin, NodeKind, PlaneMap, NONE};
use super::{name_map, Drawing};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the weak-iso key (it tries all `n!`
/// permutations).
pub const WEAK_KEY_MAX_VERTICES: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KeyMode {
    Iso,
    WeakIso,
}

impl fmt::Display for KeyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyMode::Iso => "iso",
            KeyMode::WeakIso => "weak-iso",
        })
    }
}

impl FromStr for KeyMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iso" => Ok(KeyMode::Iso),
            "weak-iso" => Ok(KeyMode::WeakIso),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (expected iso or weak-iso)"))),
        }
    }
}

fn to_bytes(code: &[u32]) -> Vec<u8> {
    code.iter().flat_map(|x| x.to_be_bytes()).collect()
}

/// Breadth-first code from `start`. Returns `None` as soon as the code is
/// known to exceed `best`.
fn bfs_code(map: &PlaneMap, colors: &[u32], start: usize, reflected: bool, best: Option<&[u32]>) -> Option<Vec<u32>> {
    let rot = if reflected { &map.prev } else { &map.next };
    let mut label = vec![NONE; map.dart_count()];
    let mut queue = VecDeque::new();
    let mut code = Vec::with_capacity(3 * map.dart_count());
    let mut count = 0u32;
    let mut visit = |d: usize, label: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if label[d] == NONE {
            label[d] = count as usize;
            count += 1;
            queue.push_back(d);
        }
        label[d] as u32
    };
    visit(start, &mut label, &mut queue);
    let mut tight = best.is_some();
    while let Some(d) = queue.pop_front() {
        let triple = [
            colors[map.origin[d]],
            visit(rot[d], &mut label, &mut queue),
            visit(twin(d), &mut label, &mut queue),
        ];
        for x in triple {
            if tight {
                let b = best.unwrap()[code.len()];
                if x > b {
                    return None;
                }
                if x < b {
                    tight = false;
                }
            }
            code.push(x);
        }
    }
    Some(code)
}

fn least_code(map: &PlaneMap, colors: &[u32], starts: &[usize]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &s in starts {
        for reflected in [false, true] {
            if let Some(c) = bfs_code(map, colors, s, reflected, best.as_deref()) {
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Least code of a connected map whose node colors are given, starting
/// from darts at nodes of the least vertex color (colors `>= 2`, or `0`).
pub(crate) fn map_code(map: &PlaneMap, colors: &[u32]) -> Vec<u32> {
    let mut starts: Vec<usize> = (0..map.dart_count())
        .filter(|&x| map.alive[x] && matches!(map.kind[map.origin[x]], NodeKind::Vertex(_)))
        .collect();
    // the least code starts at a vertex of least color
    if let Some(m) = starts.iter().map(|&x| colors[map.origin[x]]).min() {
        starts.retain(|&x| colors[map.origin[x]] == m);
    }
    least_code(map, colors, &starts)
}

/// `vertex_colors`, when given, must be respected by the isomorphism.
fn iso_code(d: &Drawing, vertex_colors: Option<&[u32]>) -> Vec<u32> {
    let map = d.plane_map();
    let colors: Vec<u32> = map
        .kind
        .iter()
        .map(|k| match (k, vertex_colors) {
            (NodeKind::Vertex(v), Some(c)) => c[*v] + 2,
            (NodeKind::Vertex(_), None) => 0,
            (NodeKind::Crossing, _) => 1,
        })
        .collect();
    let mut code = vec![d.graph().vertex_count() as u32, d.crossing_count() as u32];
    code.extend(map_code(&map, &colors));
    code
}

/// Key of a drawing up to sphere homeomorphism and vertex relabeling
/// (`Iso`), or up to relabeling of the crossing-pair set (`WeakIso`).
/// The weak-iso key needs a simple drawing of a simple graph with at most
/// [`WEAK_KEY_MAX_VERTICES`] vertices.
pub fn canonical_key(d: &Drawing, mode: KeyMode) -> Result<Vec<u8>> {
    match mode {
        KeyMode::Iso => Ok(to_bytes(&iso_code(d, None))),
        KeyMode::WeakIso => weak_code(d).map(|c| to_bytes(&c)),
    }
}

/// Iso key that also fixes vertex identities.
pub fn labeled_key(d: &Drawing) -> Vec<u8> {
    let ids: Vec<u32> = (0..d.graph().vertex_count() as u32).collect();
    colored_key(d, &ids)
}

/// Iso key for isomorphisms that preserve the given vertex colors.
pub fn colored_key(d: &Drawing, vertex_colors: &[u32]) -> Vec<u8> {
    to_bytes(&iso_code(d, Some(vertex_colors)))
}

pub fn isomorphic(d1: &Drawing, d2: &Drawing) -> bool {
    d1.graph().vertex_count() == d2.graph().vertex_count()
        && d1.graph().edge_count() == d2.graph().edge_count()
        && d1.crossing_count() == d2.crossing_count()
        && iso_code(d1, None) == iso_code(d2, None)
}

fn require_simple(d: &Drawing) -> Result<()> {
    if d.graph().is_simple_graph() && d.is_simple() {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

fn weak_code(d: &Drawing) -> Result<Vec<u32>> {
    require_simple(d)?;
    let g = d.graph();
    let n = g.vertex_count();
    if n > WEAK_KEY_MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "weak-iso keys support at most {WEAK_KEY_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let edges = g.edges();
    let pairs = d.crossing_pairs();
    let encode = |p: &[usize]| -> Vec<u32> {
        let e = |i: usize| {
            let (a, b) = edges[i];
            let (a, b) = (p[a] as u32, p[b] as u32);
            (a.min(b), a.max(b))
        };
        let mut es: Vec<(u32, u32)> = (0..edges.len()).map(e).collect();
        es.sort_unstable();
        let mut ps: Vec<((u32, u32), (u32, u32))> = pairs
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (e(x), e(y));
                (x.min(y), x.max(y))
            })
            .collect();
        ps.sort_unstable();
        let mut out = vec![n as u32, es.len() as u32, ps.len() as u32];
        for (a, b) in es {
            out.extend([a, b]);
        }
        for ((a, b), (c, e)) in ps {
            out.extend([a, b, c, e]);
        }
        out
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = encode(&perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let code = encode(&perm);
            if code < best {
                best = code;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

/// Same crossing-pair set, either for the same vertex names (`relabel`
/// off) or up to a base-graph isomorphism (`relabel` on).
pub fn weakly_isomorphic(d1: &Drawing, d2: &Drawing, relabel: bool) -> Result<bool> {
    require_simple(d1)?;
    require_simple(d2)?;
    if relabel {
        return Ok(weak_code(d1)? == weak_code(d2)?);
    }
    let Some(m) = name_map(d1.graph(), d2.graph()) else {
        return Ok(false);
    };
    let norm = |d: &Drawing, f: &dyn Fn(usize) -> usize| {
        let e = |i: usize| {
            let (a, b) = d.graph().edge(i);
            let (a, b) = (f(a), f(b));
            (a.min(b), a.max(b))
        };
        let mut es: Vec<_> = (0..d.graph().edge_count()).map(e).collect();
        es.sort_unstable();
        let mut ps: Vec<_> = d
            .crossing_pairs()
            .iter()
            .map(|&(x, y)| {
                let (x, y) = (e(x), e(y));
                (x.min(y), x.max(y))
            })
            .collect();
        ps.sort_unstable();
        (es, ps)
    };
    Ok(norm(d1, &|v| m[v]) == norm(d2, &|v| v))
}
