//! Single binary exposing every pipeline with reproducible seeds and
//! machine-readable output.
//!
//! Output goes to stdout as JSON (pretty by default, compact with
//! `--json`, tabular with `--csv`) and is byte-deterministic for a fixed
//! manifest; wall time is logged to stderr so it never perturbs the
//! output bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use grothkit::apps;
use grothkit::cutnorm;
use grothkit::graph;
use grothkit::kernel;
use grothkit::lp;
use grothkit::oracles::{self, Witness};
use grothkit::parse::{parse_auto, InputObject};
use grothkit::rounding::{self, RoundingScheme};
use grothkit::sdp::{self, SolverParams};
use grothkit::types::{DenseMatrix, Digraph, EdgeMask, SparseTensor3};
use grothkit::Error;

#[derive(Parser)]
#[command(
    name = "grothkit",
    version,
    about = "Cut norms, orderings, clusterings and lp quadratic maxima with certified brackets and exact desk-scale oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Compact JSON on stdout (default is pretty JSON).
    #[arg(long, global = true)]
    json: bool,
    /// CSV (one header line, one value line) on stdout.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Upper cap on worker threads; execution is single-threaded, the
    /// reference configuration, for any accepted value.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Input file (formats: dense, coo, graph, tensor3).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    trials: usize,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Factor rank override (default ⌈√(2(m+n))⌉+1).
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl CommonOpts {
    fn params(&self) -> SolverParams {
        SolverParams {
            rank: self.rank,
            restarts: self.restarts,
            tol: self.tol,
            seed: self.seed,
        }
    }

    fn record(&self, flags: &mut BTreeMap<String, String>) {
        flags.insert("trials".into(), self.trials.to_string());
        flags.insert("restarts".into(), self.restarts.to_string());
        flags.insert("tol".into(), format!("{}", self.tol));
        if let Some(r) = self.rank {
            flags.insert("rank".into(), r.to_string());
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bracket the cut norm of a matrix with a subset witness.
    Cutnorm(CommonOpts),
    /// Bracket the ∞→1 norm of a matrix with sign witnesses.
    Infty1(CommonOpts),
    /// Test a bipartite pair for (ε,δ)-regularity.
    Regularity {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Decompose a [−1,1] matrix into cut matrices.
    Fk {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        eps: f64,
    },
    /// Vertex ordering maximizing forward minus backward arc weight.
    Acyclic(CommonOpts),
    /// Estimate the satisfiable advantage of a 3-variable parity system.
    Lin3(CommonOpts),
    /// Cluster a centered PSD matrix against a hypothesis matrix.
    Kernel {
        #[command(flatten)]
        common: CommonOpts,
        /// Hypothesis matrix file (dense/coo); mutually exclusive with
        /// --identity.
        #[arg(long, conflicts_with = "identity")]
        hypothesis: Option<PathBuf>,
        /// Use the k×k identity hypothesis.
        #[arg(long)]
        identity: Option<usize>,
    },
    /// lp quadratic maximization: bracket for p ≥ 2, grid search for
    /// p = 1, operator norm when --r is given.
    Lp {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        p: f64,
        /// Grid refinement for p = 1 (entries are multiples of 1/m).
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Target exponent r of the p→r operator norm (1 ≤ r ≤ 2).
        #[arg(long)]
        r: Option<f64>,
    },
    /// Spin configuration for a graph-restricted quadratic form.
    Graph {
        #[command(flatten)]
        common: CommonOpts,
        /// Treat a dense/coo input as a complete-graph instance.
        #[arg(long)]
        complete: bool,
    },
    /// Exact brute-force oracles (desk scale).
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact cut norm by subset enumeration (rows+cols ≤ 26).
    Cutnorm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact ∞→1 norm by sign enumeration (rows ≤ 26).
    Infty1 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact spin optimum of a graph instance (n ≤ 24).
    GroundState {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        complete: bool,
    },
    /// Exact clustering optimum (k^n ≤ 2·10⁶).
    Clust {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "identity")]
        hypothesis: Option<PathBuf>,
        #[arg(long)]
        identity: Option<usize>,
    },
    /// Exact parity-system optimum (n ≤ 24).
    Maxsat3 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact lp quadratic maximum (p=2 spectral, p=∞ spins, else grid,
    /// n ≤ 4).
    Mp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let outcome = run(&cli);
    eprintln!("wall_time_ms {}", start.elapsed().as_millis());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Io(_) | CliError::Usage(_) => 2,
        CliError::Lib(Error::Parse { .. } | Error::Invalid(_) | Error::NotPsd(_)) => 2,
        CliError::Lib(Error::Budget(_) | Error::Regime(_)) => 3,
    }
}

#[derive(Debug)]
enum CliError {
    Io(String),
    Usage(String),
    Lib(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) | CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

struct LoadedInput {
    object: InputObject,
    digest: String,
}

fn load(path: &Path) -> Result<LoadedInput, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex_digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Io(format!("{} is not UTF-8", path.display())))?;
    let object = parse_auto(&text)?;
    Ok(LoadedInput { object, digest })
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn want_matrix(input: LoadedInput) -> Result<(DenseMatrix, String), CliError> {
    match input.object {
        InputObject::Matrix(m) => Ok((m, input.digest)),
        other => Err(CliError::Usage(format!(
            "this subcommand needs a matrix input (dense/coo), got {}",
            other.kind_name()
        ))),
    }
}

fn want_graph(input: LoadedInput) -> Result<(Digraph, String), CliError> {
    match input.object {
        InputObject::Graph(g) => Ok((g, input.digest)),
        other => Err(CliError::Usage(format!(
            "this subcommand needs a graph input, got {}",
            other.kind_name()
        ))),
    }
}

fn want_tensor(input: LoadedInput) -> Result<(SparseTensor3, String), CliError> {
    match input.object {
        InputObject::Tensor(t) => Ok((t, input.digest)),
        other => Err(CliError::Usage(format!(
            "this subcommand needs a tensor3 input, got {}",
            other.kind_name()
        ))),
    }
}

struct Manifest {
    subcommand: &'static str,
    input_digest: String,
    flags: BTreeMap<String, String>,
    seed: u64,
}

impl Manifest {
    fn to_value(&self) -> Value {
        json!({
            "subcommand": self.subcommand,
            "input_digest": self.input_digest,
            "flags": self.flags,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

fn emit(cli: &Cli, manifest: Manifest, result: Value) {
    let envelope = json!({
        "manifest": manifest.to_value(),
        "result": result,
    });
    if cli.csv {
        let mut keys = Vec::new();
        let mut values = Vec::new();
        flatten_csv("", &envelope["result"], &mut keys, &mut values);
        println!("{}", keys.join(","));
        println!("{}", values.join(","));
    } else if cli.json {
        println!("{envelope}");
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&envelope).expect("serializable")
        );
    }
}

fn flatten_csv(prefix: &str, v: &Value, keys: &mut Vec<String>, values: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_csv(&key, inner, keys, values);
            }
        }
        Value::Array(items) => {
            keys.push(prefix.to_string());
            let joined: Vec<String> = items.iter().map(compact_cell).collect();
            values.push(format!("\"{}\"", joined.join(";")));
        }
        other => {
            keys.push(prefix.to_string());
            values.push(compact_cell(other));
        }
    }
}

fn compact_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string().replace(',', ";"),
    }
}

fn signs_json(values: &[i8]) -> Value {
    Value::Array(values.iter().map(|&v| json!(v as i64)).collect())
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Signs { rows, cols } => json!({
            "row_signs": signs_json(rows.values()),
            "col_signs": signs_json(cols.values()),
        }),
        Witness::Subsets(p) => json!({ "S": p.row_set, "T": p.col_set }),
        Witness::Spins(s) => json!({ "spins": signs_json(s.values()) }),
        Witness::Assignment(a) => json!({ "assignment": a }),
        Witness::Point(t) => json!({ "point": t }),
    }
}

fn hypothesis_model(
    hypothesis: &Option<PathBuf>,
    identity: Option<usize>,
    flags: &mut BTreeMap<String, String>,
) -> Result<kernel::HypothesisModel, CliError> {
    match (hypothesis, identity) {
        (Some(path), None) => {
            let (b, digest) = want_matrix(load(path)?)?;
            flags.insert("hypothesis_digest".into(), digest);
            Ok(kernel::HypothesisModel::from_matrix(b)?)
        }
        (None, Some(k)) => {
            flags.insert("identity".into(), k.to_string());
            Ok(kernel::HypothesisModel::identity(k)?)
        }
        _ => Err(CliError::Usage(
            "provide exactly one of --hypothesis or --identity".into(),
        )),
    }
}

fn graph_instance(
    input: LoadedInput,
    complete: bool,
) -> Result<(DenseMatrix, EdgeMask, String), CliError> {
    match input.object {
        InputObject::Graph(g) => {
            let (a, mask) = g.symmetric_adjacency();
            Ok((a, mask, input.digest))
        }
        InputObject::Matrix(m) if complete => {
            let n = m.rows();
            m.require_zero_diagonal()?;
            Ok((m, EdgeMask::complete(n), input.digest))
        }
        InputObject::Matrix(_) => Err(CliError::Usage(
            "matrix inputs need --complete to fix the interaction support".into(),
        )),
        other => Err(CliError::Usage(format!(
            "graph subcommand needs a graph or matrix input, got {}",
            other.kind_name()
        ))),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    match &cli.command {
        Command::Cutnorm(common) => {
            let (a, digest) = want_matrix(load(&common.input)?)?;
            let ans = cutnorm::approx_cutnorm_with_params(&a, common.trials, common.params())?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            let manifest = Manifest {
                subcommand: "cutnorm",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "lower": ans.lower,
                    "upper": ans.upper,
                    "S": ans.witness.row_set,
                    "T": ans.witness.col_set,
                    "mean_rounded": ans.mean_rounded,
                    "trials": ans.trials,
                    "seed": ans.seed,
                }),
            );
        }
        Command::Infty1(common) => {
            let (a, digest) = want_matrix(load(&common.input)?)?;
            let (factor, report) = sdp::solve_bilinear(&a, common.params());
            let pre =
                rounding::preprocess(&factor.left, &factor.right, &RoundingScheme::sign_1d())?;
            let out = rounding::round_signs(&a, &pre, common.trials.max(1), common.seed);
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            let manifest = Manifest {
                subcommand: "infty1",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "lower": out.best_value,
                    "upper": report.upper_bound,
                    "relaxation": factor.value,
                    "row_signs": signs_json(out.best_rows.values()),
                    "col_signs": signs_json(out.best_cols.values()),
                    "mean_rounded": out.mean_value,
                    "stderr": out.stderr,
                    "converged": report.converged,
                }),
            );
        }
        Command::Regularity { common, eps, delta } => {
            let (adj, digest) = want_matrix(load(&common.input)?)?;
            let v = apps::regularity_check(
                &adj,
                *eps,
                *delta,
                common.trials,
                common.restarts,
                common.seed,
            )?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            flags.insert("eps".into(), format!("{eps}"));
            flags.insert("delta".into(), format!("{delta}"));
            let manifest = Manifest {
                subcommand: "regularity",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            let witness = v.witness.as_ref().map(|w| {
                json!({
                    "S": w.pair.row_set,
                    "T": w.pair.col_set,
                    "density_gap": w.density_gap,
                })
            });
            emit(
                cli,
                manifest,
                json!({
                    "regular": v.regular,
                    "certified": v.certified,
                    "witness": witness,
                    "eps": v.eps,
                    "delta": v.delta,
                    "confidence_trials": v.confidence_trials,
                }),
            );
        }
        Command::Fk { common, eps } => {
            let (a, digest) = want_matrix(load(&common.input)?)?;
            let d = apps::fk_decompose(&a, *eps, common.trials, common.restarts, common.seed)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            flags.insert("eps".into(), format!("{eps}"));
            let manifest = Manifest {
                subcommand: "fk",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            let atoms: Vec<Value> = d
                .atoms
                .iter()
                .map(|c| json!({ "S": c.row_set, "T": c.col_set, "d": c.d }))
                .collect();
            emit(
                cli,
                manifest,
                json!({
                    "atoms": atoms,
                    "residual_upper": d.residual_upper,
                    "frobenius_trace": d.frobenius_trace,
                    "realized_constants": d.realized_constants,
                    "completed": d.completed,
                }),
            );
        }
        Command::Acyclic(common) => {
            let (g, digest) = want_graph(load(&common.input)?)?;
            let r = apps::max_acyclic_order(&g, common.trials, common.restarts, common.seed)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            let manifest = Manifest {
                subcommand: "acyclic",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "order": r.order,
                    "value": r.value,
                    "certificate": r.certificate,
                    "S": r.pair.row_set,
                    "T": r.pair.col_set,
                }),
            );
        }
        Command::Lin3(common) => {
            let (t, digest) = want_tensor(load(&common.input)?)?;
            let est = apps::lin3_estimate(&t, common.restarts, common.seed)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            let manifest = Manifest {
                subcommand: "lin3",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "alpha": est.alpha,
                    "per_trial": est.per_trial,
                    "sign_samples": est.sign_samples,
                }),
            );
        }
        Command::Kernel {
            common,
            hypothesis,
            identity,
        } => {
            let (a, digest) = want_matrix(load(&common.input)?)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            let model = hypothesis_model(hypothesis, *identity, &mut flags)?;
            let ans = kernel::approx_clust(&a, &model, common.trials, common.seed)?;
            let manifest = Manifest {
                subcommand: "kernel",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "alpha": ans.alpha,
                    "sigma": ans.sigma,
                    // the rounded assignment is a feasible clustering, so
                    // its value and alpha bracket the optimum
                    "lower": ans.witness_value,
                    "upper": ans.alpha,
                    "sdp_value": ans.sdp_value,
                    "sdp_upper": ans.sdp_upper,
                    "r2": ans.radius_sq,
                    "c": ans.partition_constant,
                    "conjectural": ans.conjectural,
                }),
            );
        }
        Command::Lp { common, p, m, r } => {
            let (a, digest) = want_matrix(load(&common.input)?)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            flags.insert("p".into(), format!("{p}"));
            let result = if let Some(r) = r {
                flags.insert("r".into(), format!("{r}"));
                let b = lp::opnorm_p_to_r(&a, *p, *r, common.restarts, common.seed)?;
                json!({
                    "kind": "operator_norm",
                    "p": p,
                    "r": r,
                    "q": if b.q.is_finite() { json!(b.q) } else { json!("inf") },
                    "lower": b.lower,
                    "upper": b.upper,
                    "relaxation": b.relaxation,
                })
            } else {
                flags.insert("m".into(), m.to_string());
                match lp::lp_dispatch(&a, *p, *m, common.trials, common.restarts, common.seed)? {
                    lp::LpAnswer::Grid(g) => json!({
                        "kind": "grid",
                        "p": p,
                        "m": g.m,
                        "value": g.value,
                        "witness": g.t_witness,
                    }),
                    lp::LpAnswer::Bracket(b) => json!({
                        "kind": "bracket",
                        "p": p,
                        "lower": b.value_lower,
                        "upper": b.value_upper,
                        "relaxation": b.relaxation,
                        "witness": b.t_witness,
                    }),
                }
            };
            let manifest = Manifest {
                subcommand: "lp",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(cli, manifest, result);
        }
        Command::Graph { common, complete } => {
            let (a, mask, digest) = graph_instance(load(&common.input)?, *complete)?;
            let ans = graph::graph_pipeline(&a, &mask, common.trials, common.seed)?;
            let mut flags = BTreeMap::new();
            common.record(&mut flags);
            flags.insert("complete".into(), complete.to_string());
            let manifest = Manifest {
                subcommand: "graph",
                input_digest: digest,
                flags,
                seed: common.seed,
            };
            emit(
                cli,
                manifest,
                json!({
                    "energy": ans.result.energy_value,
                    "spins": signs_json(ans.result.spins.values()),
                    "sdp_value": ans.result.sdp_value,
                    "sdp_upper": ans.result.sdp_upper,
                    "oracle_value": ans.oracle_value,
                    "ratio_vs_oracle": ans.result.ratio_vs_oracle,
                }),
            );
        }
        Command::Oracle { which } => run_oracle(cli, which)?,
    }
    Ok(())
}

fn run_oracle(cli: &Cli, which: &OracleCommand) -> Result<(), CliError> {
    match which {
        OracleCommand::Cutnorm { input } => {
            let (a, digest) = want_matrix(load(input)?)?;
            let r = oracles::exact_cut_norm(&a)?;
            let manifest = Manifest {
                subcommand: "oracle.cutnorm",
                input_digest: digest,
                flags: BTreeMap::new(),
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({ "value": r.value, "witness": witness_json(&r.witness) }),
            );
        }
        OracleCommand::Infty1 { input } => {
            let (a, digest) = want_matrix(load(input)?)?;
            let r = oracles::exact_infty1(&a)?;
            let manifest = Manifest {
                subcommand: "oracle.infty1",
                input_digest: digest,
                flags: BTreeMap::new(),
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({ "value": r.value, "witness": witness_json(&r.witness) }),
            );
        }
        OracleCommand::GroundState { input, complete } => {
            let (a, mask, digest) = graph_instance(load(input)?, *complete)?;
            let r = oracles::exact_ground_state(&a, &mask)?;
            let mut flags = BTreeMap::new();
            flags.insert("complete".into(), complete.to_string());
            let manifest = Manifest {
                subcommand: "oracle.ground_state",
                input_digest: digest,
                flags,
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({ "value": r.value, "witness": witness_json(&r.witness) }),
            );
        }
        OracleCommand::Clust {
            input,
            hypothesis,
            identity,
        } => {
            let (a, digest) = want_matrix(load(input)?)?;
            let mut flags = BTreeMap::new();
            let b = match (hypothesis, identity) {
                (Some(path), None) => {
                    let (b, hdigest) = want_matrix(load(path)?)?;
                    flags.insert("hypothesis_digest".into(), hdigest);
                    b
                }
                (None, Some(k)) => {
                    flags.insert("identity".into(), k.to_string());
                    DenseMatrix::identity(*k)
                }
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --hypothesis or --identity".into(),
                    ))
                }
            };
            let r = oracles::exact_clust(&a, &b)?;
            let manifest = Manifest {
                subcommand: "oracle.clust",
                input_digest: digest,
                flags,
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({ "value": r.value, "witness": witness_json(&r.witness) }),
            );
        }
        OracleCommand::Maxsat3 { input } => {
            let (t, digest) = want_tensor(load(input)?)?;
            let (r, maxsat) = oracles::exact_maxsat3(&t)?;
            let manifest = Manifest {
                subcommand: "oracle.maxsat3",
                input_digest: digest,
                flags: BTreeMap::new(),
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({ "value": r.value, "maxsat": maxsat, "witness": witness_json(&r.witness) }),
            );
        }
        OracleCommand::Mp { input, p } => {
            let (a, digest) = want_matrix(load(input)?)?;
            let (r, error_bound) = oracles::exact_mp(&a, *p)?;
            let mut flags = BTreeMap::new();
            flags.insert("p".into(), format!("{p}"));
            let manifest = Manifest {
                subcommand: "oracle.mp",
                input_digest: digest,
                flags,
                seed: 0,
            };
            emit(
                cli,
                manifest,
                json!({
                    "value": r.value,
                    "error_bound": error_bound,
                    "witness": witness_json(&r.witness),
                }),
            );
        }
    }
    Ok(())
}
