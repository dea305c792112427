//! Exact min-k-planarity by exhaustive search over crossing configurations.
//!
//! A configuration is a set of crossing pairs of non-adjacent edges (each
//! pair at most once) together with an order of the crossings along every
//! edge. It is realizable iff its planarization, with every crossing
//! replaced by a wheel that pins the two edges to alternate, is planar.

use crate::drawing::{config_is_min_k, ArcRef, Crossing, Drawing, NodeRef};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::planarity::planar_embedding;

#[derive(Clone, Copy, Debug)]
pub struct DecideBudget {
    /// Largest number of crossings tried.
    pub max_crossings: usize,
    /// Largest number of planarity tests.
    pub max_tests: u64,
}

impl DecideBudget {
    pub fn crossings(max_crossings: usize) -> Self {
        DecideBudget { max_crossings, max_tests: 50_000_000 }
    }
}

#[derive(Clone, Debug)]
pub enum DecideOutcome {
    /// A simple min-k-planar drawing with the fewest crossings.
    Yes(Drawing),
    No,
    BudgetExceeded { reason: String },
}

impl DecideOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, DecideOutcome::Yes(_))
    }
}

pub(crate) struct Search<'a> {
    g: &'a Graph,
    /// Candidate crossing pairs: all pairs of non-adjacent edges.
    pub(crate) pairs: Vec<(usize, usize)>,
    pub(crate) tests: u64,
    max_tests: u64,
}

struct OutOfTests;

impl<'a> Search<'a> {
    pub(crate) fn new(g: &'a Graph, max_tests: u64) -> Self {
        let m = g.edge_count();
        let mut pairs = Vec::new();
        for e in 0..m {
            for f in e + 1..m {
                if !g.adjacent(e, f) {
                    pairs.push((e, f));
                }
            }
        }
        Search { g, pairs, tests: 0, max_tests }
    }

    /// Tries every crossing order of `config` (indices into `pairs`).
    fn realize(&mut self, config: &[usize]) -> std::result::Result<Option<Drawing>, OutOfTests> {
        let m = self.g.edge_count();
        // crossings along each edge, as indices into `config`
        let mut on: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (c, &p) in config.iter().enumerate() {
            let (e, f) = self.pairs[p];
            on[e].push(c);
            on[f].push(c);
        }
        loop {
            if self.tests >= self.max_tests {
                return Err(OutOfTests);
            }
            self.tests += 1;
            if let Some(d) = self.planarize(config, &on) {
                return Ok(Some(d));
            }
            if !next_orders(&mut on) {
                return Ok(None);
            }
        }
    }

    /// Builds the wheel-gadget planarization for fixed crossing orders and
    /// turns a planar embedding of it into a drawing.
    fn planarize(&self, config: &[usize], on: &[Vec<usize>]) -> Option<Drawing> {
        let nv = self.g.vertex_count();
        let nc = config.len();
        // crossing c uses rim nodes rim(c, 0..4) and a hub; edge `pair.0`
        // enters at rim 0 and leaves at rim 2, edge `pair.1` uses rims 1, 3
        let rim = |c: usize, j: usize| nv + 5 * c + j;
        let hub = |c: usize| nv + 5 * c + 4;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        // planarization edge -> arc of the drawing
        let mut arc_of: Vec<Option<ArcRef>> = Vec::new();
        let mut paths = Vec::with_capacity(self.g.edge_count());
        for (e, list) in on.iter().enumerate() {
            let (a, b) = self.g.edge(e);
            let mut prev = a;
            let mut path = vec![NodeRef::Vertex(a)];
            for (s, &c) in list.iter().enumerate() {
                let first = self.pairs[config[c]].0 == e;
                let (inn, out) = if first { (0, 2) } else { (1, 3) };
                edges.push((prev, rim(c, inn)));
                arc_of.push(Some(ArcRef { edge: e, seg: s }));
                prev = rim(c, out);
                path.push(NodeRef::Crossing(c));
            }
            edges.push((prev, b));
            arc_of.push(Some(ArcRef { edge: e, seg: list.len() }));
            path.push(NodeRef::Vertex(b));
            paths.push(path);
        }
        for c in 0..nc {
            for j in 0..4 {
                edges.push((rim(c, j), rim(c, (j + 1) % 4)));
                arc_of.push(None);
                edges.push((rim(c, j), hub(c)));
                arc_of.push(None);
            }
        }
        let rot = planar_embedding(nv + 5 * nc, &edges)?;
        let mut rotation: Vec<Vec<ArcRef>> = Vec::with_capacity(nv + nc);
        for r in rot.iter().take(nv) {
            rotation.push(r.iter().map(|&x| arc_of[x].expect("vertex segment")).collect());
        }
        for c in 0..nc {
            // externals in the cyclic order of the spokes around the hub
            let order: Vec<ArcRef> = rot[hub(c)]
                .iter()
                .map(|&spoke| {
                    let (x, y) = edges[spoke];
                    let r = if x == hub(c) { y } else { x };
                    let ext = rot[r].iter().find(|&&s| arc_of[s].is_some()).expect("rim carries a segment");
                    arc_of[*ext].unwrap()
                })
                .collect();
            rotation.push(order);
        }
        let crossings = config
            .iter()
            .enumerate()
            .map(|(i, &p)| Crossing { id: format!("x#{i}"), pair: [self.pairs[p].0, self.pairs[p].1] })
            .collect();
        Some(Drawing::from_parts(self.g.clone(), crossings, paths, rotation).expect("planar wheel planarization gives a drawing"))
    }

    /// Calls `visit` on every configuration of exactly `c` pairs whose
    /// partial configurations all pass `keep`; stops when it returns true.
    fn configs(
        &mut self,
        c: usize,
        keep: &dyn Fn(&[(usize, usize)]) -> bool,
        visit: &mut dyn FnMut(&mut Self, &[usize]) -> std::result::Result<bool, OutOfTests>,
    ) -> std::result::Result<bool, OutOfTests> {
        let mut chosen: Vec<usize> = Vec::with_capacity(c);
        let mut sel: Vec<(usize, usize)> = Vec::with_capacity(c);
        self.rec(0, c, &mut chosen, &mut sel, keep, visit)
    }

    fn rec(
        &mut self,
        from: usize,
        c: usize,
        chosen: &mut Vec<usize>,
        sel: &mut Vec<(usize, usize)>,
        keep: &dyn Fn(&[(usize, usize)]) -> bool,
        visit: &mut dyn FnMut(&mut Self, &[usize]) -> std::result::Result<bool, OutOfTests>,
    ) -> std::result::Result<bool, OutOfTests> {
        if chosen.len() == c {
            let ch = chosen.clone();
            return visit(self, &ch);
        }
        let need = c - chosen.len();
        for p in from..self.pairs.len() {
            if self.pairs.len() - p < need {
                break;
            }
            chosen.push(p);
            sel.push(self.pairs[p]);
            if keep(sel) && self.rec(p + 1, c, chosen, sel, keep, visit)? {
                return Ok(true);
            }
            chosen.pop();
            sel.pop();
        }
        Ok(false)
    }
}

/// Advances the crossing orders of all edges to the next combination;
/// false once every combination was produced.
fn next_orders(on: &mut [Vec<usize>]) -> bool {
    for list in on.iter_mut() {
        if list.len() < 2 {
            continue;
        }
        if next_permutation(list) {
            return true;
        }
        // wrapped around to sorted order; carry into the next edge
    }
    false
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        v.sort_unstable();
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn check_graph(g: &Graph) -> Result<()> {
    if !g.is_simple_graph() {
        return Err(Error::NotSimple);
    }
    if !g.is_connected() {
        return Err(Error::InvalidGraph("graph must be connected".into()));
    }
    Ok(())
}

/// Decides whether `g` has a simple min-k-planar drawing, trying at most
/// `max_crossings` crossings.
pub fn exact_min_k_decide(g: &Graph, k: usize, max_crossings: usize) -> Result<DecideOutcome> {
    exact_min_k_decide_with(g, k, DecideBudget::crossings(max_crossings))
}

pub fn exact_min_k_decide_with(g: &Graph, k: usize, budget: DecideBudget) -> Result<DecideOutcome> {
    check_graph(g)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut search = Search::new(g, budget.max_tests);
    // planarity of the planarization needs E + 2c <= 3(V + c) - 6 once V >= 3
    let lower = if n >= 3 { (m + 6).saturating_sub(3 * n) } else { 0 };
    // each crossing can be charged to a side with at most k crossings
    let upper = (k * m).min(search.pairs.len());
    let keep = |sel: &[(usize, usize)]| config_is_min_k(m, sel, k);
    for c in lower..=upper {
        if c > budget.max_crossings {
            return Ok(DecideOutcome::BudgetExceeded {
                reason: format!("no drawing with at most {} crossings; the search bound is {upper}", budget.max_crossings),
            });
        }
        let mut found = None;
        let res = search.configs(c, &keep, &mut |s, cfg| {
            Ok(match s.realize(cfg)? {
                Some(d) => {
                    found = Some(d);
                    true
                }
                None => false,
            })
        });
        match res {
            Err(OutOfTests) => {
                return Ok(DecideOutcome::BudgetExceeded {
                    reason: format!("more than {} planarity tests", budget.max_tests),
                })
            }
            Ok(true) => return Ok(DecideOutcome::Yes(found.expect("witness"))),
            Ok(false) => {}
        }
    }
    Ok(DecideOutcome::No)
}

/// One witness drawing for every realizable simple crossing-pair set with
/// at most `max_crossings` crossings.
pub fn realizable_configurations(g: &Graph, max_crossings: usize) -> Result<Vec<Drawing>> {
    check_graph(g)?;
    let mut search = Search::new(g, u64::MAX);
    let mut out = Vec::new();
    let top = max_crossings.min(search.pairs.len());
    for c in 0..=top {
        let _ = search.configs(c, &|_| true, &mut |s, cfg| {
            if let Some(d) = s.realize(cfg)? {
                out.push(d);
            }
            Ok(false)
        });
    }
    Ok(out)
}
