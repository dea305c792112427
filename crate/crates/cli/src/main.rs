//! `mink`: command-line front end for drawings, catalogs and the reduction.

mod instances;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mink_core::checks::{run_paper_checks, CheckBudget};
use mink_core::drawing::KeyMode;
use mink_core::enumerate::{
    enumerate_with_budget, exact_min_k_decide_with, filter_min_k, DecideBudget, DecideOutcome, DrawingCatalog,
    EnumBudget,
};
use mink_core::partition::solve_three_partition;
use mink_core::reduction::{
    attach_uncrossable_edge, build_reduction_with, build_yes_drawing, extract_partition, gadget_template_drawing,
    ReductionArtifact, ReductionOptions,
};
use mink_core::render::{render_svg, RenderSpec};
use mink_core::{Drawing, Graph, Partition, ThreePartitionInstance};

use output::{read_json, write_atomic, write_catalog, Report};

#[derive(Parser, Debug)]
#[command(name = "mink", version, about = "Min-k-planar drawings, good-drawing catalogs and the 3-Partition reduction")]
struct Cli {
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the good drawings of K_n up to weak isomorphism or isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "weak-iso")]
        mode: KeyMode,
        /// Catalog directory to write.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop with a partial result after this many candidates on one level.
        #[arg(long)]
        max_candidates: Option<usize>,
    },
    /// Keep the min-k-planar entries of a catalog.
    Filter {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a small graph has a simple min-k-planar drawing.
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 15)]
        max_crossings: usize,
        /// Write the witness drawing here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the reduction graph of a 3-Partition instance.
    Reduce {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Leave out the c-rungs.
        #[arg(long)]
        no_c_rungs: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the reduction graph of a yes-instance.
    YesDrawing {
        /// Reduction artifact written by `reduce`.
        #[arg(long)]
        artifact: PathBuf,
        /// Partition to realize; solved from the instance when absent.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read the partition back from a drawing of a reduction graph.
    Extract {
        #[arg(long)]
        artifact: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach an uncrossable-edge gadget between two vertices.
    Gadget {
        /// Host graph; a bare edge-less pair `u`, `v` when absent.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value = "u")]
        u: String,
        #[arg(long, default_value = "v")]
        v: String,
        /// Graph with the gadget attached.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Min-1-planar drawing of the gadget with `u` and `v`.
        #[arg(long)]
        template_out: Option<PathBuf>,
    },
    /// Solve a 3-Partition instance by exhaustive search.
    Solve3p {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a drawing and report its crossing statistics.
    CheckDrawing {
        #[arg(long)]
        drawing: PathBuf,
        /// Also test min-k-planarity and k-planarity for this k.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Render a drawing as SVG.
    Render {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Face index drawn outermost; the largest face by default.
        #[arg(long)]
        outer_face: Option<usize>,
        #[arg(long, default_value_t = 800.0)]
        size: f64,
        #[arg(long)]
        no_labels: bool,
        /// Mark crossings with a small cross.
        #[arg(long)]
        marks: bool,
    },
    /// Run the verification report.
    PaperChecks {
        /// Skip every check.
        #[arg(long)]
        zero_budget: bool,
        #[arg(long)]
        max_candidates: Option<usize>,
        #[arg(long)]
        max_tests: Option<u64>,
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Instance JSON `{"n":..,"X":[..]}`.
    #[arg(long, conflicts_with_all = ["values", "random"])]
    instance: Option<PathBuf>,
    /// Comma-separated values; n is their count divided by three.
    #[arg(long, value_delimiter = ',', conflicts_with = "random")]
    values: Option<Vec<u64>>,
    /// Random yes-instance with this many triplets (uses `--seed`).
    #[arg(long)]
    random: Option<usize>,
    /// Target of the random instance.
    #[arg(long, default_value_t = 44)]
    target: u64,
}

impl InstanceArgs {
    fn load(&self, seed: u64) -> Result<ThreePartitionInstance> {
        if let Some(p) = &self.instance {
            return Ok(ThreePartitionInstance::from_json(&read_json(p)?)?);
        }
        if let Some(xs) = &self.values {
            if xs.len() % 3 != 0 || xs.is_empty() {
                bail!("expected a positive multiple of three values, got {}", xs.len());
            }
            return Ok(ThreePartitionInstance::new(xs.len() / 3, xs.clone()));
        }
        if let Some(n) = self.random {
            return instances::random_yes_instance(n, self.target, seed);
        }
        bail!("give one of --instance, --values or --random")
    }
}

fn load_drawing(p: &Path) -> Result<Drawing> {
    Drawing::from_json(&read_json(p)?).with_context(|| format!("{}: not a drawing", p.display()))
}

fn load_artifact(p: &Path) -> Result<ReductionArtifact> {
    ReductionArtifact::from_json(&read_json(p)?).with_context(|| format!("{}: not a reduction artifact", p.display()))
}

fn catalog_summary(cat: &DrawingCatalog) -> Value {
    let crossings: Vec<usize> = cat.drawings().map(Drawing::crossing_count).collect();
    json!({ "n": cat.n, "mode": cat.mode.to_string(), "count": cat.len(), "crossings": crossings })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Enumerate { n, mode, out, max_candidates } => {
            let budget = EnumBudget { max_candidates: max_candidates.unwrap_or(usize::MAX) };
            let cat = enumerate_with_budget(*n, *mode, budget).map_err(|p| anyhow!("{p}"))?;
            if let Some(dir) = out {
                write_catalog(&cat, dir)?;
            }
            Ok(Report::new(
                format!("K{n}: {} good drawings up to {}", cat.len(), cat.mode),
                catalog_summary(&cat),
            ))
        }
        Command::Filter { input, k, out } => {
            let cat = DrawingCatalog::load(input)?;
            let kept = filter_min_k(&cat, *k);
            if let Some(dir) = out {
                write_catalog(&kept, dir)?;
            }
            Ok(Report::new(
                format!("{} of {} entries are min-{k}-planar", kept.len(), cat.len()),
                json!({ "k": k, "input": cat.len(), "kept": catalog_summary(&kept) }),
            ))
        }
        Command::Decide { graph, k, max_crossings, out } => {
            let g = Graph::from_json(&read_json(graph)?, true)?;
            let outcome = exact_min_k_decide_with(&g, *k, DecideBudget::crossings(*max_crossings))?;
            match outcome {
                DecideOutcome::Yes(d) => {
                    if let Some(p) = out {
                        write_atomic(p, &d.to_json())?;
                    }
                    Ok(Report::new(
                        format!("yes: a simple min-{k}-planar drawing with {} crossings", d.crossing_count()),
                        json!({ "answer": "yes", "crossings": d.crossing_count() }),
                    ))
                }
                DecideOutcome::No => Ok(Report::new(
                    format!("no simple min-{k}-planar drawing"),
                    json!({ "answer": "no" }),
                )),
                DecideOutcome::BudgetExceeded { reason } => {
                    Ok(Report::new(format!("budget exceeded: {reason}"), json!({ "answer": "budget_exceeded", "reason": reason }))
                        .with_code(3))
                }
            }
        }
        Command::Reduce { instance, no_c_rungs, out } => {
            let inst = instance.load(cli.seed)?;
            let art = build_reduction_with(&inst, ReductionOptions { c_rungs: !no_c_rungs })?;
            if let Some(p) = out {
                write_atomic(p, &art.to_json())?;
            }
            let (v, e) = (art.graph.vertex_count(), art.graph.edge_count());
            Ok(Report::new(
                format!("n = {}, T = {}: {v} vertices, {e} edges, {} gadgets", inst.n, art.target, art.gadgets.len()),
                json!({ "n": inst.n, "T": art.target, "vertices": v, "edges": e, "gadgets": art.gadgets.len(),
                        "c_rungs": !no_c_rungs }),
            ))
        }
        Command::YesDrawing { artifact, partition, out } => {
            let art = load_artifact(artifact)?;
            let p = match partition {
                Some(p) => Partition::from_json(&read_json(p)?)?,
                None => solve_three_partition(&art.instance).ok_or_else(|| anyhow!("the instance has no 3-partition"))?,
            };
            let d = build_yes_drawing(&art, &p)?;
            if let Some(path) = out {
                write_atomic(path, &d.to_json())?;
            }
            let min1 = d.is_min_k_planar(1);
            Ok(Report::new(
                format!(
                    "{} crossings, max {} per edge, simple {}, min-1-planar {min1}",
                    d.crossing_count(),
                    d.max_edge_crossings(),
                    d.is_simple()
                ),
                json!({ "partition": p.to_json(), "crossings": d.crossing_count(), "simple": d.is_simple(),
                        "min_1_planar": min1, "max_edge_crossings": d.max_edge_crossings() }),
            ))
        }
        Command::Extract { artifact, drawing, out } => {
            let art = load_artifact(artifact)?;
            let d = load_drawing(drawing)?;
            let p = extract_partition(&art, &d)?;
            if let Some(path) = out {
                write_atomic(path, &p.to_json())?;
            }
            let sums: Vec<u64> = p.triplets.iter().map(|t| t.iter().map(|&i| art.instance.values[i]).sum()).collect();
            Ok(Report::new(
                format!("triplets (1-based) {}, sums {sums:?}", p.to_json()["triplets"]),
                json!({ "partition": p.to_json(), "sums": sums }),
            ))
        }
        Command::Gadget { graph, u, v, out, template_out } => {
            let g = match graph {
                Some(p) => Graph::from_json(&read_json(p)?, false)?,
                None => Graph::new(vec![u.as_str(), v.as_str()], vec![])?,
            };
            let find = |name: &str| g.vertex(name).ok_or_else(|| anyhow!("no vertex named {name:?}"));
            let (a, b) = (find(u)?, find(v)?);
            let (g2, h) = attach_uncrossable_edge(&g, a, b)?;
            let template = template_out.as_ref().map(|_| gadget_template_drawing(&h, &g2)).transpose()?;
            if let Some(p) = out {
                write_atomic(p, &g2.to_json())?;
            }
            if let (Some(p), Some(d)) = (template_out, &template) {
                write_atomic(p, &d.to_json())?;
            }
            let added = (g2.vertex_count() - g.vertex_count(), g2.edge_count() - g.edge_count());
            Ok(Report::new(
                format!("added {} vertices and {} edges, {} block edges", added.0, added.1, h.block_edge_union()),
                json!({ "added_vertices": added.0, "added_edges": added.1, "block_edges": h.block_edge_union(),
                        "vertices": g2.vertex_count(), "edges": g2.edge_count() }),
            ))
        }
        Command::Solve3p { instance, out } => {
            let inst = instance.load(cli.seed)?;
            let check = inst.validate(false);
            match solve_three_partition(&inst) {
                Some(p) => {
                    if let Some(path) = out {
                        write_atomic(path, &p.to_json())?;
                    }
                    Ok(Report::new(
                        format!("yes: {}", p.to_json()["triplets"]),
                        json!({ "instance": inst.to_json(), "answer": "yes", "partition": p.to_json(),
                                "in_range": inst.validate(true).in_range }),
                    ))
                }
                None => Ok(Report::new(
                    format!("no 3-partition{}", if check.valid { "" } else { " (instance malformed)" }),
                    json!({ "instance": inst.to_json(), "answer": "no", "problems": check.problems }),
                )
                .with_code(1)),
            }
        }
        Command::CheckDrawing { drawing, k } => {
            let d = load_drawing(drawing)?;
            let report = d.validate();
            let issues: Vec<String> = report.issues.iter().map(ToString::to_string).collect();
            let valid = issues.is_empty();
            let stats = json!({
                "valid": valid,
                "issues": issues,
                "vertices": d.graph().vertex_count(),
                "edges": d.graph().edge_count(),
                "crossings": d.crossing_count(),
                "max_edge_crossings": d.max_edge_crossings(),
                "simple": valid && d.is_simple(),
                "k": k,
                "min_k_planar": valid && d.is_min_k_planar(*k),
                "k_planar": valid && d.is_k_planar(*k),
            });
            let text = if valid {
                format!(
                    "valid; {} crossings, max {} per edge, simple {}, min-{k}-planar {}, {k}-planar {}",
                    d.crossing_count(),
                    d.max_edge_crossings(),
                    stats["simple"],
                    stats["min_k_planar"],
                    stats["k_planar"]
                )
            } else {
                format!("invalid: {}", stats["issues"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect::<Vec<_>>().join("; "))
            };
            Ok(Report::new(text, stats).with_code(if valid { 0 } else { 1 }))
        }
        Command::Render { drawing, out, outer_face, size, no_labels, marks } => {
            let d = load_drawing(drawing)?;
            let spec = RenderSpec { outer_face: *outer_face, size: *size, vertex_labels: !no_labels, crossing_marks: *marks };
            let svg = render_svg(&d, &spec)?;
            output::write_text_atomic(out, &svg)?;
            Ok(Report::new(
                format!("wrote {}", out.display()),
                json!({ "out": out.display().to_string(), "bytes": svg.len() }),
            ))
        }
        Command::PaperChecks { zero_budget, max_candidates, max_tests, max_vertices, out } => {
            let mut budget = if *zero_budget { CheckBudget::zero() } else { CheckBudget::default() };
            if let Some(x) = max_candidates {
                budget.enum_candidates = *x;
            }
            if let Some(x) = max_tests {
                budget.decide_tests = *x;
            }
            if let Some(x) = max_vertices {
                budget.graph_vertices = *x;
            }
            let report = run_paper_checks(budget);
            if let Some(p) = out {
                write_atomic(p, &report.to_json(true))?;
            }
            let text = report.to_text();
            Ok(Report::new(text.trim_end().to_string(), report.to_json(true)).with_code(report.exit_code() as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(r) => {
            r.print(cli.json);
            ExitCode::from(r.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
