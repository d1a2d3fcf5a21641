use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperlin_core::centrality::{self, graph_projection};
use hyperlin_core::randwalk::{
    self, delta, first_hit_probabilities, hitting_times, step_distribution, transition_matrix, SimulationOptions,
};
use hyperlin_core::spectra::{spectrum, JacobiOptions};
use hyperlin_core::structures::{
    equal_edge_partition_certificate, find_equal_edge_partitions, incidence_graph_adjacency, is_dependent_set,
    pullback_dependent_set, unit_contraction, units, verify_covering_projection, ProjectionClass,
};
use hyperlin_core::{
    Axis, Certificate, CertificateKind, Format, Hypergraph, MatrixKind, Preset, Rational, ReturnConvention,
    WalkPolicy, WeightScheme,
};

use crate::check;
use crate::report::{AnalysisReport, Failure};

#[derive(Debug, Parser)]
#[command(name = "hyperlin", version, about = "Exact linear-dependence analysis of hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Hypergraph file. Relative paths that do not exist are also looked up
    /// in $HYPERLIN_FIXTURES, with and without a `.json` suffix.
    pub file: PathBuf,
    /// Input format; defaults to json for `.json` files and lines otherwise.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Json,
    Lines,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AxisArg {
    Vertices,
    Hyperedges,
    /// The incidence-graph adjacency (nullspace only).
    Agh,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixArg {
    #[value(name = "I")]
    I,
    #[value(name = "Q")]
    Q,
    #[value(name = "A")]
    A,
    #[value(name = "L")]
    L,
    #[value(name = "AGH")]
    Agh,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightsArg {
    Unit,
    Edgenorm,
    Fullnorm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Nonlazy,
    Lazy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    FirstReturn,
    Zero,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CentralityArg {
    Closeness,
    Betweenness,
    UnitCloseness,
    Eccentricity,
    Perron,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DotArg {
    Incidence,
    Contraction,
    Projection,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Units (maximal equal-star vertex classes) and their generators.
    Units {
        #[command(flatten)]
        input: Input,
    },
    /// The unit contraction and its quotient maps.
    Contract {
        #[command(flatten)]
        input: Input,
    },
    /// Exact nullspace basis of I_H^T (vertices), I_H (hyperedges) or A_GH.
    Nullspace {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "vertices")]
        axis: AxisArg,
    },
    /// Dependence certificate for a set of vertices or hyperedges.
    Certify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[arg(long, value_enum, default_value = "vertices")]
        axis: AxisArg,
    },
    /// All equal partitions of hyperedges up to a support size.
    Partitions {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = hyperlin_core::structures::DEFAULT_MAX_SUPPORT)]
        max_support: usize,
    },
    /// A weighted matrix, its spectrum and optionally its determinant.
    Spectra {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, ignore_case = true, default_value = "A")]
        matrix: MatrixArg,
        #[arg(long, value_enum, default_value = "unit")]
        weights: WeightsArg,
        /// Eigenvalues closer than this are grouped.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        det: bool,
    },
    /// Transition matrix, exact t-step distribution and a seeded simulation.
    Walk {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "nonlazy")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trajectories: usize,
        /// Start vertex; uniform over vertices when absent.
        #[arg(long)]
        start: Option<String>,
        /// Vertex whose first-hit times are tallied.
        #[arg(long)]
        target: Option<String>,
    },
    /// Exact expected hitting times of a target vertex.
    Hitting {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "nonlazy")]
        policy: PolicyArg,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "first-return")]
        convention: ConventionArg,
        /// Also report first-hit probabilities up to this time from every vertex.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// One of the unit-constant centralities.
    Centrality {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: CentralityArg,
        #[arg(long, value_enum, default_value = "nonlazy")]
        policy: PolicyArg,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Hyperedge weights for the Perron centrality.
        #[arg(long, value_enum, default_value = "unit")]
        weights: WeightsArg,
        #[arg(long, value_enum, default_value = "first-return")]
        convention: ConventionArg,
    },
    /// Runs every applicable theorem check; exits 3 if one fails.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = hyperlin_core::structures::DEFAULT_MAX_SUPPORT)]
        max_support: usize,
    },
    /// Graphviz rendering of the incidence graph, unit contraction or graph projection.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "incidence")]
        which: DotArg,
        /// Print bare DOT instead of a JSON report.
        #[arg(long)]
        raw: bool,
    },
    /// Classifies a vertex map onto a base hypergraph and pulls back the
    /// base's vertex certificates.
    Cover {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        base: PathBuf,
        /// JSON object mapping each vertex of the input to a base vertex.
        #[arg(long)]
        map: PathBuf,
    },
}

fn locate(file: &Path) -> PathBuf {
    if file.exists() || file.is_absolute() {
        return file.to_path_buf();
    }
    if let Some(dir) = env::var_os("HYPERLIN_FIXTURES") {
        let candidate = Path::new(&dir).join(file);
        for path in [candidate.clone(), candidate.with_extension("json")] {
            if path.exists() {
                return path;
            }
        }
    }
    file.to_path_buf()
}

fn read(file: &Path) -> Result<(PathBuf, String), Failure> {
    let path = locate(file);
    let text = fs::read_to_string(&path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)?;
    Ok((path, text))
}

fn load(file: &Path, format: Option<InputFormat>) -> Result<Hypergraph, Failure> {
    let (path, text) = read(file)?;
    let format = match format {
        Some(InputFormat::Json) => Format::Json,
        Some(InputFormat::Lines) => Format::Lines,
        None if path.extension().is_some_and(|e| e == "json") => Format::Json,
        None => Format::Lines,
    };
    Hypergraph::parse(&text, format)
        .map_err(|e| Failure::Input(anyhow!("{}: {}: {e}", path.display(), e.name())))
}

fn policy(arg: PolicyArg) -> WalkPolicy {
    match arg {
        PolicyArg::Nonlazy => WalkPolicy::UniformNonLazy,
        PolicyArg::Lazy => WalkPolicy::UniformLazy,
    }
}

fn preset(arg: WeightsArg) -> Preset {
    match arg {
        WeightsArg::Unit => Preset::Unit,
        WeightsArg::Edgenorm => Preset::EdgeNormalized,
        WeightsArg::Fullnorm => Preset::FullyNormalized,
    }
}

fn convention(arg: ConventionArg) -> ReturnConvention {
    match arg {
        ConventionArg::FirstReturn => ReturnConvention::FirstReturn,
        ConventionArg::Zero => ReturnConvention::Zero,
    }
}

fn name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn exact_map(labels: &[String], values: &[Rational]) -> Value {
    labels
        .iter()
        .zip(values)
        .map(|(l, v)| (l.clone(), Value::String(v.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

pub fn run(cli: Cli) -> Result<String, Failure> {
    let report = match cli.command {
        Command::Units { input } => {
            let h = load(&input.file, input.format)?;
            let d = units(&h);
            let results = json!({ "count": d.len(), "excess": d.excess(), "units": d.units });
            AnalysisReport::new(&h, "units", json!({}), results)
        }
        Command::Contract { input } => {
            let h = load(&input.file, input.format)?;
            let c = unit_contraction(&h);
            let edge_map: BTreeMap<&str, &str> = (0..h.num_edges())
                .map(|e| (h.edge_label(e), c.contracted.edge_label(c.edge_map[e])))
                .collect();
            let results = json!({
                "contracted": c.contracted,
                "vertex_map": c.projection(&h),
                "edge_map": edge_map,
                "edge_map_bijective": c.edge_map_is_bijective(),
            });
            AnalysisReport::new(&h, "contract", json!({}), results)
        }
        Command::Nullspace { input, axis } => {
            let h = load(&input.file, input.format)?;
            let (matrix, m) = match axis {
                AxisArg::Vertices => ("I_H^T", h.incidence_matrix().transpose()),
                AxisArg::Hyperedges => ("I_H", h.incidence_matrix()),
                AxisArg::Agh => ("A_GH", incidence_graph_adjacency(&h)),
            };
            let basis = m.nullspace();
            let results = json!({ "matrix": matrix, "dimension": basis.dim(), "basis": basis });
            AnalysisReport::new(&h, "nullspace", json!({ "axis": name(axis) }), results)
        }
        Command::Certify { input, set, axis } => {
            let h = load(&input.file, input.format)?;
            let core_axis = match axis {
                AxisArg::Vertices => Axis::Vertices,
                AxisArg::Hyperedges => Axis::Hyperedges,
                AxisArg::Agh => return Err(Failure::Input(anyhow!("--axis agh is only valid for nullspace"))),
            };
            let cert = is_dependent_set(&h, &set, core_axis)?;
            let results = json!({ "dependent": cert.is_some(), "certificate": cert });
            AnalysisReport::new(&h, "certify", json!({ "set": set, "axis": name(axis) }), results)
        }
        Command::Partitions { input, max_support } => {
            let h = load(&input.file, input.format)?;
            let found: Vec<Value> = find_equal_edge_partitions(&h, max_support)
                .into_iter()
                .map(|p| {
                    let cert = equal_edge_partition_certificate(&h, &p.u, &p.v).expect("labels come from h");
                    json!({ "u": p.u, "v": p.v, "certificate": cert })
                })
                .collect();
            let results = json!({ "count": found.len(), "partitions": found });
            AnalysisReport::new(&h, "partitions", json!({ "max_support": max_support }), results)
        }
        Command::Spectra {
            input,
            matrix,
            weights,
            tol,
            det,
        } => {
            let h = load(&input.file, input.format)?;
            let kind = match matrix {
                MatrixArg::I => MatrixKind::Incidence,
                MatrixArg::Q => MatrixKind::Q,
                MatrixArg::A => MatrixKind::A,
                MatrixArg::L => MatrixKind::L,
                MatrixArg::Agh => MatrixKind::AGH,
            };
            let w = match kind {
                MatrixKind::Incidence | MatrixKind::AGH => WeightScheme::unit(&h),
                _ => WeightScheme::preset(&h, preset(weights))?,
            };
            let m = kind.build(&h, &w)?;
            let mut results = json!({ "matrix": m, "rank": m.rank() });
            if kind != MatrixKind::Incidence {
                let opts = JacobiOptions {
                    group_tol: tol,
                    ..JacobiOptions::default()
                };
                results["spectrum"] = to_value(spectrum(&h, kind, &w, opts)?);
            }
            if det {
                results["determinant"] = Value::String(m.determinant()?.to_string());
            }
            let parameters = json!({ "matrix": name(matrix), "weights": name(weights), "tol": tol, "det": det });
            AnalysisReport::new(&h, "spectra", parameters, results)
        }
        Command::Walk {
            input,
            policy: pol,
            steps,
            seed,
            trajectories,
            start,
            target,
        } => {
            let h = load(&input.file, input.format)?;
            let p = transition_matrix(&h, policy(pol))?;
            let init = match &start {
                Some(s) => delta(&p, s)?,
                None => vec![Rational::new(1.into(), p.len().into()); p.len()],
            };
            let target_index = target.as_deref().map(|t| p.index(t)).transpose()?;
            let distribution = step_distribution(&p, &init, steps)?;
            let opts = SimulationOptions {
                steps,
                trajectories,
                seed,
                target: target_index,
                stop_at_target: false,
            };
            let sim = randwalk::simulate(&p, &init, opts)?;
            let results = json!({
                "transition": p.p,
                "distribution": exact_map(p.labels(), &distribution),
                "simulation": sim,
                "mean_first_hit": sim.mean_first_hit(),
                "standard_error": sim.standard_error(),
            });
            let parameters = json!({
                "policy": name(pol),
                "steps": steps,
                "seed": seed,
                "trajectories": trajectories,
                "start": start,
                "target": target,
            });
            AnalysisReport::new(&h, "walk", parameters, results)
        }
        Command::Hitting {
            input,
            policy: pol,
            target,
            convention: conv,
            horizon,
        } => {
            let h = load(&input.file, input.format)?;
            let p = transition_matrix(&h, policy(pol))?;
            let times = hitting_times(&p, &target, convention(conv))?;
            let mut results = json!({ "hitting_times": times });
            if let Some(horizon) = horizon {
                let mut laws = serde_json::Map::new();
                for v in p.labels() {
                    let probs = first_hit_probabilities(&p, &delta(&p, v)?, &target, horizon)?;
                    laws.insert(v.clone(), probs.iter().map(|x| x.to_string()).collect());
                }
                results["first_hit"] = laws.into();
            }
            let parameters = json!({
                "policy": name(pol),
                "target": target,
                "convention": name(conv),
                "horizon": horizon,
            });
            AnalysisReport::new(&h, "hitting", parameters, results)
        }
        Command::Centrality {
            input,
            kind,
            policy: pol,
            horizon,
            tol,
            weights,
            convention: conv,
        } => {
            let h = load(&input.file, input.format)?;
            let r = match kind {
                CentralityArg::Closeness => centrality::rw_closeness(&h, policy(pol), convention(conv))?,
                CentralityArg::Betweenness => centrality::rw_betweenness(&h, policy(pol), horizon)?,
                CentralityArg::UnitCloseness => centrality::unit_closeness(&h)?,
                CentralityArg::Eccentricity => centrality::unit_eccentricity(&h)?,
                CentralityArg::Perron => {
                    let w = WeightScheme::preset(&h, preset(weights))?;
                    centrality::perron_centrality(&h, &w.edge, tol)?
                }
            };
            let parameters = json!({
                "kind": name(kind),
                "policy": name(pol),
                "horizon": horizon,
                "tol": tol,
                "weights": name(weights),
                "convention": name(conv),
            });
            AnalysisReport::new(&h, "centrality", parameters, to_value(r))
        }
        Command::Check { input, max_support } => {
            let h = load(&input.file, input.format)?;
            let (summary, checks) = check::run(&h, max_support);
            let failed: Vec<&'static str> = checks
                .iter()
                .filter(|c| c.status == crate::report::Status::Fail)
                .map(|c| c.name)
                .collect();
            let mut report = AnalysisReport::new(&h, "check", json!({ "max_support": max_support }), summary);
            report.theorem_checks = checks;
            if !failed.is_empty() {
                return Err(Failure::Theorem {
                    report: report.to_json(),
                    failed,
                });
            }
            report
        }
        Command::Dot { input, which, raw } => {
            let h = load(&input.file, input.format)?;
            let dot = match which {
                DotArg::Incidence => h.incidence_graph().to_dot(),
                DotArg::Contraction => unit_contraction(&h).to_dot(),
                DotArg::Projection => graph_projection(&h).to_dot(),
            };
            if raw {
                return Ok(dot.trim_end().to_string());
            }
            AnalysisReport::new(&h, "dot", json!({ "which": name(which) }), json!({ "dot": dot }))
        }
        Command::Cover { input, base, map } => {
            let h = load(&input.file, input.format)?;
            let base_h = load(&base, input.format)?;
            let (map_path, text) = read(&map)?;
            let f: BTreeMap<String, String> = serde_json::from_str(&text)
                .with_context(|| format!("{} is not a JSON object of vertex labels", map_path.display()))
                .map_err(Failure::Input)?;
            let class = verify_covering_projection(&h, &base_h, &f)?;
            let mut pullbacks = Vec::new();
            if class == ProjectionClass::CardinalityPreservingCovering {
                for x in base_h.incidence_matrix().transpose().nullspace().vectors {
                    let cert = Certificate::new(CertificateKind::DependentVertices, base_h.vertices().to_vec(), x);
                    pullbacks.push(pullback_dependent_set(&h, &base_h, &f, &cert)?);
                }
            }
            let results = json!({ "classification": class, "pullbacks": pullbacks });
            let parameters = json!({ "base": base.display().to_string(), "map": map.display().to_string() });
            AnalysisReport::new(&h, "cover", parameters, results)
        }
    };
    Ok(report.to_json())
}
