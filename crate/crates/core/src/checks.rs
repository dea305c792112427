//! Verification report for the computer-checkable claims.
//!
//! Every check records what it observed, what it expected, where the
//! expectation comes from and how long it took. Checks that the budget does
//! not cover are reported as skipped, never as passed.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::drawing::{isomorphic, weakly_isomorphic, Drawing, KeyMode};
use crate::enumerate::{
    delete_edge_classes, enumerate_with_budget, exact_min_k_decide_with, filter_min_k, DecideBudget, DecideOutcome,
    DrawingCatalog, EnumBudget,
};
use crate::graph::{complete_graph, Graph};
use crate::partition::{solve_three_partition, ThreePartitionInstance};
use crate::reduction::{
    attach_uncrossable_edge, build_reduction_with, build_yes_drawing, extract_partition, reduction_size,
    ReductionArtifact, ReductionOptions, GADGET_EDGES, GADGET_VERTICES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source text.
    Paper,
    /// Computed by an independent formula or oracle.
    Derived,
    /// Immediate from definitions.
    Trivial,
    /// Tooling behaviour with no counterpart in the source.
    Plumbing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub observed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    /// Quote or claim the expectation is anchored to.
    pub anchor: String,
    pub detail: String,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Sorted by name.
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_failures(&self) -> bool {
        self.count(CheckStatus::Fail) > 0
    }

    /// Process exit status: nonzero iff a check that ran failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    /// JSON form. Timings are left out when `timings` is false so that
    /// repeated runs serialize identically.
    pub fn to_json(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).expect("plain data");
                if !timings {
                    v.as_object_mut().unwrap().remove("wall_ms");
                }
                v
            })
            .collect();
        json!({
            "summary": {
                "pass": self.count(CheckStatus::Pass),
                "fail": self.count(CheckStatus::Fail),
                "skipped": self.count(CheckStatus::Skipped),
            },
            "checks": checks,
        })
    }

    pub fn from_json(v: &Value) -> crate::Result<Self> {
        let checks = v.get("checks").cloned().unwrap_or(Value::Null);
        let mut checks: Vec<Value> = serde_json::from_value(checks)?;
        for c in &mut checks {
            if let Some(o) = c.as_object_mut() {
                o.entry("wall_ms").or_insert(json!(0));
            }
        }
        Ok(VerificationReport { checks: serde_json::from_value(Value::Array(checks))? })
    }

    /// One line per check followed by a summary line.
    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{:<7} {:<width$}  observed {}  expected {}  [{:?}: {}]  {} ms{}",
                c.status.to_string().to_uppercase(),
                c.name,
                c.observed,
                c.expected,
                c.provenance,
                c.anchor,
                c.wall_ms,
                if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) },
            );
        }
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Skipped)
        );
        s
    }
}

/// Resource limits for [`run_paper_checks`]. A zero limit skips every
/// check that needs that resource.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckBudget {
    /// Candidate drawings per enumeration level.
    pub enum_candidates: usize,
    /// Planarity tests for the exact decider.
    pub decide_tests: u64,
    /// Largest graph (vertices) built by the gadget and reduction checks.
    pub graph_vertices: usize,
}

impl CheckBudget {
    pub fn zero() -> Self {
        CheckBudget { enum_candidates: 0, decide_tests: 0, graph_vertices: 0 }
    }
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget { enum_candidates: usize::MAX, decide_tests: 50_000_000, graph_vertices: 50_000 }
    }
}

/// What a check body reports back.
enum Outcome {
    Done { observed: Value, ok: bool, detail: String },
    Skipped(String),
}

fn done(observed: Value, ok: bool) -> Outcome {
    Outcome::Done { observed, ok, detail: String::new() }
}

struct Spec {
    name: &'static str,
    expected: Value,
    provenance: Provenance,
    anchor: &'static str,
    run: Box<dyn Fn(&Ctx) -> Outcome + Send + Sync>,
}

struct Ctx {
    budget: CheckBudget,
    catalogs: HashMap<(usize, KeyMode), Result<DrawingCatalog, String>>,
}

impl Ctx {
    fn catalog(&self, n: usize, mode: KeyMode) -> Result<&DrawingCatalog, String> {
        match self.catalogs.get(&(n, mode)) {
            Some(Ok(c)) => Ok(c),
            Some(Err(e)) => Err(e.clone()),
            None => Err(format!("K{n} catalog not requested")),
        }
    }

    /// The unique min-1-planar K6 drawing, if the catalog has exactly one.
    fn unique_k6(&self) -> Result<Drawing, String> {
        let cat = filter_min_k(self.catalog(6, KeyMode::WeakIso)?, 1);
        match cat.len() {
            1 => Ok(cat.drawings().next().unwrap().clone()),
            c => Err(format!("{c} min-1-planar K6 classes, expected one")),
        }
    }

    fn graph_fits(&self, v: usize) -> Option<String> {
        (v > self.budget.graph_vertices)
            .then(|| format!("needs a graph on {v} vertices, budget allows {}", self.budget.graph_vertices))
    }
}

fn catalog_check(name: &'static str, n: usize, expected: usize, provenance: Provenance, anchor: &'static str) -> Spec {
    Spec {
        name,
        expected: json!(expected),
        provenance,
        anchor,
        run: Box::new(move |ctx| match ctx.catalog(n, KeyMode::WeakIso) {
            Ok(c) => {
                let iso = ctx.catalog(n, KeyMode::Iso).map(|c| c.len()).ok();
                Outcome::Done {
                    observed: json!(c.len()),
                    ok: c.len() == expected,
                    detail: iso.map_or_else(String::new, |k| format!("{k} classes up to isomorphism")),
                }
            }
            Err(e) => Outcome::Skipped(e),
        }),
    }
}

fn completeness_check(name: &'static str, n: usize, xs: &'static [u64], c_rungs: bool, anchor: &'static str) -> Spec {
    Spec {
        name,
        expected: json!({"valid": true, "simple": true, "min_1_planar": true, "gadget_internal": true,
                         "d_edges_crossed_once": true, "partition_recovered": true}),
        provenance: Provenance::Derived,
        anchor,
        run: Box::new(move |ctx| {
            let inst = ThreePartitionInstance::new(n, xs.to_vec());
            let t = inst.target().unwrap_or(0) as usize;
            let (v, _) = reduction_size(n, t);
            if let Some(r) = ctx.graph_fits(v) {
                return Outcome::Skipped(r);
            }
            match completeness(&inst, c_rungs) {
                Ok((obs, heavy)) => {
                    let ok = obs.as_object().unwrap().values().all(|x| x == &json!(true));
                    let detail = if heavy > 0 {
                        format!("{heavy} crossings join two edges that are each crossed more than once")
                    } else {
                        String::new()
                    };
                    Outcome::Done { observed: obs, ok, detail }
                }
                Err(e) => Outcome::Done { observed: Value::Null, ok: false, detail: e },
            }
        }),
    }
}

/// Builds the yes-drawing from a solved instance and reads it back. Also
/// returns the number of crossings that violate the min-1 condition.
pub fn completeness(inst: &ThreePartitionInstance, c_rungs: bool) -> Result<(Value, usize), String> {
    let art = build_reduction_with(inst, ReductionOptions { c_rungs }).map_err(|e| e.to_string())?;
    let p = solve_three_partition(inst).ok_or("instance has no 3-partition")?;
    let d = build_yes_drawing(&art, &p).map_err(|e| e.to_string())?;
    let back = extract_partition(&art, &d).map(|q| q.normalized() == p.normalized());
    let cr = d.edge_crossing_counts();
    let heavy = d.crossings().iter().filter(|c| cr[c.pair[0]] > 1 && cr[c.pair[1]] > 1).count();
    let obs = json!({
        "valid": d.validate().is_valid(),
        "simple": d.is_simple(),
        "min_1_planar": d.is_min_k_planar(1),
        "gadget_internal": gadget_internal(&art, &d),
        "d_edges_crossed_once": d_edges_crossed_once(&art, &d),
        "partition_recovered": back.unwrap_or(false),
    });
    Ok((obs, heavy))
}

/// Every crossing on a gadget edge is with an edge of the same gadget.
pub fn gadget_internal(art: &ReductionArtifact, d: &Drawing) -> bool {
    let owner = art.gadget_of_edge();
    d.crossings().iter().all(|c| {
        let [e, f] = c.pair;
        owner[e] == owner[f] || (owner[e].is_none() && owner[f].is_none())
    })
}

pub fn d_edges_crossed_once(art: &ReductionArtifact, d: &Drawing) -> bool {
    let cr = d.edge_crossing_counts();
    art.wiring.d_edges.iter().flatten().all(|&e| cr[e] == 1)
}

fn specs() -> Vec<Spec> {
    vec![
        catalog_check("catalog.k3", 3, 1, Provenance::Trivial, "a triangle has one good drawing"),
        catalog_check("catalog.k4", 4, 2, Provenance::Derived, "exhaustive crossing-configuration search"),
        catalog_check("catalog.k5", 5, 5, Provenance::Derived, "exhaustive crossing-configuration search"),
        catalog_check("catalog.k6", 6, 102, Provenance::Paper, "the 102 simple drawings"),
        Spec {
            name: "min1.k6.count",
            expected: json!(1),
            provenance: Provenance::Paper,
            anchor: "only the 77th drawing is min-1-planar",
            run: Box::new(|ctx| match ctx.catalog(6, KeyMode::WeakIso) {
                Ok(c) => {
                    let k = filter_min_k(c, 1).len();
                    done(json!(k), k == 1)
                }
                Err(e) => Outcome::Skipped(e),
            }),
        },
        Spec {
            name: "min1.k6.shape",
            expected: json!({"crossings": 3, "max_edge_crossings": 1}),
            provenance: Provenance::Paper,
            anchor: "every edge involves at most one crossing",
            run: Box::new(|ctx| match ctx.unique_k6() {
                Ok(d) => {
                    let obs = json!({"crossings": d.crossing_count(), "max_edge_crossings": d.max_edge_crossings()});
                    done(obs, d.crossing_count() == 3 && d.max_edge_crossings() == 1)
                }
                Err(e) => Outcome::Skipped(e),
            }),
        },
        Spec {
            name: "min1.k6.weak-implies-iso",
            expected: json!(1),
            provenance: Provenance::Paper,
            anchor: "isomorphic to this drawing",
            run: Box::new(|ctx| {
                let (d, iso) = match (ctx.unique_k6(), ctx.catalog(6, KeyMode::Iso)) {
                    (Ok(d), Ok(c)) => (d, c),
                    (Err(e), _) | (_, Err(e)) => return Outcome::Skipped(e),
                };
                let weak: Vec<&Drawing> =
                    iso.drawings().filter(|x| weakly_isomorphic(x, &d, true).unwrap_or(false)).collect();
                let all_iso = weak.iter().all(|x| isomorphic(x, &d));
                Outcome::Done {
                    observed: json!(weak.len()),
                    ok: weak.len() == 1 && all_iso,
                    detail: "isomorphism classes weakly isomorphic to the min-1-planar drawing".into(),
                }
            }),
        },
        Spec {
            name: "min1.k6.deletion-classes",
            expected: json!(2),
            provenance: Provenance::Paper,
            anchor: "Two min-1-planar drawings of G[{u,v} + V(H)]",
            run: Box::new(|ctx| match ctx.unique_k6() {
                Ok(d) => {
                    let free = (0..d.graph().edge_count()).filter(|&e| matches!(d.crossings_of_edge(e), Ok(0))).count();
                    let cat = delete_edge_classes(&d, |d, e| matches!(d.crossings_of_edge(e), Ok(0)));
                    let ok = cat.len() == 2 && cat.drawings().all(|x| x.is_min_k_planar(1) && x.crossing_count() == 3);
                    Outcome::Done {
                        observed: json!(cat.len()),
                        ok,
                        detail: format!("{free} crossing-free edges deleted"),
                    }
                }
                Err(e) => Outcome::Skipped(e),
            }),
        },
        Spec {
            name: "decide.k5",
            expected: json!({"answer": "yes", "crossings": 1}),
            provenance: Provenance::Derived,
            anchor: "K5 has a one-crossing drawing",
            run: Box::new(|ctx| match decide(ctx, 5, 10) {
                Ok(DecideOutcome::Yes(d)) => {
                    done(json!({"answer": "yes", "crossings": d.crossing_count()}), d.crossing_count() == 1)
                }
                Ok(DecideOutcome::No) => done(json!({"answer": "no"}), false),
                Ok(DecideOutcome::BudgetExceeded { reason }) => Outcome::Skipped(reason),
                Err(e) => Outcome::Skipped(e),
            }),
        },
        Spec {
            name: "decide.k6",
            expected: json!({"answer": "yes", "isomorphic_to_catalog": true}),
            provenance: Provenance::Paper,
            anchor: "The only possible min-1-planar drawing of K6",
            run: Box::new(|ctx| match decide(ctx, 6, 15) {
                Ok(DecideOutcome::Yes(d)) => match ctx.unique_k6() {
                    Ok(u) => {
                        let iso = isomorphic(&d, &u);
                        done(json!({"answer": "yes", "isomorphic_to_catalog": iso}), iso)
                    }
                    Err(e) => Outcome::Skipped(e),
                },
                Ok(DecideOutcome::No) => done(json!({"answer": "no"}), false),
                Ok(DecideOutcome::BudgetExceeded { reason }) => Outcome::Skipped(reason),
                Err(e) => Outcome::Skipped(e),
            }),
        },
        Spec {
            name: "gadget.size",
            expected: json!({"vertices": GADGET_VERTICES, "edges": GADGET_EDGES, "block_edges": 18}),
            provenance: Provenance::Derived,
            anchor: "three K4 blocks, spokes, wires and ten u-v paths; 3 * binom(4,2) = 18 block edges",
            run: Box::new(|ctx| {
                if let Some(r) = ctx.graph_fits(2 + GADGET_VERTICES) {
                    return Outcome::Skipped(r);
                }
                let g = Graph::new(vec!["u", "v"], vec![]).expect("two vertices");
                match attach_uncrossable_edge(&g, 0, 1) {
                    Ok((g2, h)) => {
                        let obs = json!({
                            "vertices": g2.vertex_count() - 2,
                            "edges": g2.edge_count(),
                            "block_edges": h.block_edge_union(),
                        });
                        done(obs.clone(), obs == json!({"vertices": 94, "edges": 206, "block_edges": 18}))
                    }
                    Err(e) => Outcome::Done { observed: Value::Null, ok: false, detail: e.to_string() },
                }
            }),
        },
        Spec {
            name: "reduction.size",
            expected: json!([1740, 3780]),
            provenance: Provenance::Derived,
            anchor: "closed-form size for n = 2, T = 6",
            run: Box::new(|ctx| {
                let (v, e) = reduction_size(2, 6);
                if let Some(r) = ctx.graph_fits(v) {
                    return Outcome::Skipped(r);
                }
                let inst = ThreePartitionInstance::new(2, vec![1, 2, 3, 1, 2, 3]);
                match build_reduction_with(&inst, ReductionOptions::default()) {
                    Ok(art) => {
                        let obs = (art.graph.vertex_count(), art.graph.edge_count());
                        Outcome::Done {
                            observed: json!([obs.0, obs.1]),
                            ok: obs == (v, e) && obs == (1740, 3780),
                            detail: format!("{} gadgets", art.gadgets.len()),
                        }
                    }
                    Err(e) => Outcome::Done { observed: Value::Null, ok: false, detail: e.to_string() },
                }
            }),
        },
        completeness_check("completeness.n1", 1, &[1, 1, 3], true, "yes-instance drawing, one triplet"),
        completeness_check("completeness.n2", 2, &[1, 2, 3, 1, 2, 3], true, "yes-instance drawing, two triplets"),
        completeness_check(
            "completeness.n2-without-c-rungs",
            2,
            &[1, 2, 3, 1, 2, 3],
            false,
            "yes-instance drawing, two triplets, c-rungs omitted",
        ),
        completeness_check(
            "completeness.strict",
            2,
            &[12, 13, 14, 15, 16, 18],
            true,
            "yes-instance drawing with T/4 < x < T/2",
        ),
    ]
}

fn decide(ctx: &Ctx, n: usize, max_crossings: usize) -> Result<DecideOutcome, String> {
    if ctx.budget.decide_tests == 0 {
        return Err("decider budget is zero".into());
    }
    let g = complete_graph(n).map_err(|e| e.to_string())?;
    exact_min_k_decide_with(&g, 1, DecideBudget { max_crossings, max_tests: ctx.budget.decide_tests })
        .map_err(|e| e.to_string())
}

/// Runs every check within `budget`, concurrently, and returns the report
/// sorted by check name.
pub fn run_paper_checks(budget: CheckBudget) -> VerificationReport {
    let wanted: Vec<(usize, KeyMode)> = [3, 4, 5, 6].iter().flat_map(|&n| [(n, KeyMode::Iso), (n, KeyMode::WeakIso)]).collect();
    let catalogs = wanted
        .par_iter()
        .map(|&(n, mode)| {
            let r = if budget.enum_candidates == 0 {
                Err("enumeration budget is zero".to_string())
            } else {
                enumerate_with_budget(n, mode, EnumBudget { max_candidates: budget.enum_candidates })
                    .map_err(|p| p.to_string())
            };
            ((n, mode), r)
        })
        .collect();
    let ctx = Ctx { budget, catalogs };
    let mut checks: Vec<CheckResult> = specs()
        .into_par_iter()
        .map(|s| {
            let start = Instant::now();
            let outcome = (s.run)(&ctx);
            let wall_ms = start.elapsed().as_millis() as u64;
            let (status, observed, detail) = match outcome {
                Outcome::Done { observed, ok, detail } => {
                    (if ok { CheckStatus::Pass } else { CheckStatus::Fail }, observed, detail)
                }
                Outcome::Skipped(why) => (CheckStatus::Skipped, Value::Null, why),
            };
            CheckResult {
                name: s.name.to_string(),
                status,
                observed,
                expected: s.expected,
                provenance: s.provenance,
                anchor: s.anchor.to_string(),
                detail,
                wall_ms,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport { checks }
}
