//! `mubqpd` command-line interface.
//!
//! Every subcommand prints a single JSON document on stdout; diagnostics and
//! machine-readable errors ({"error": code, "detail": text}) go to stderr.
//! Exit codes: 0 success, 1 internal check failed (e.g. `oracle --strict`
//! above tolerance), 2 bad input, 64 unknown subcommand. All randomness is
//! controlled by `--seed`; identical argv + seed gives byte-identical stdout.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use mubqpd::csco::{build_csco, reference_fixture, validate_csco, CscoBasis};
use mubqpd::mub::{build_mub, twist_map_check, verify_unbiased};
use mubqpd::polytope::{
    enumerate_faces, membership, octahedron_check, support_probe, vertex_geometry, vertices,
};
use mubqpd::qpd::{classify, fourier_consistency, qpd_marginal, qpd_table};
use mubqpd::rng::Rng;
use mubqpd::state::{
    bloch_from_density, density_from_bloch, purity, random_state, BlochState, StateKind,
};
use mubqpd::tomography::{estimate_bloch, simulate_counts};
use mubqpd::Error;

#[derive(Parser)]
#[command(name = "mubqpd", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Hilbert-space dimension (2, odd prime <= 13, or 4)
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Seed controlling all randomness
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for sweeps (oracle samples, probe directions, points)
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Shots per basis for tomography
    #[arg(long, default_value_t = 100_000)]
    shots: u64,
    /// Bloch vector as a JSON array of n^2-1 reals
    #[arg(long)]
    theta: Option<String>,
    /// Comma-separated 1-based commuting-set indices, e.g. 1,2
    #[arg(long)]
    subset: Option<String>,
    /// Exit 1 when a measured deviation exceeds its tolerance
    #[arg(long)]
    strict: bool,
    /// Worker threads for sample sweeps (results merged in index order)
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Also write the JSON document to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// Mutually unbiased bases for a dimension
    Mub(Opts),
    /// Commuting-operator basis and its validation report
    Csco(Opts),
    /// Joint quasiprobability table for a Bloch vector
    Qpd(Opts),
    /// Non-negativity classification of a Bloch vector
    Classify(Opts),
    /// Marginal of the joint table over a subset of sets
    Marginal(Opts),
    /// Margenau-Hill vs closed-form Fourier deviation sweep
    Oracle(Opts),
    /// Vertex/facet/edge enumeration report
    Polytope(Opts),
    /// LP support-function probe of the vertex hull
    Probe(Opts),
    /// Simulated measurements and Bloch reconstruction
    Tomo(Opts),
    /// Explicit operator fixtures (dims 2, 3, 4)
    Fixtures(Opts),
}

/// Failures grouped by the exit code they map to.
enum CliError {
    BadInput(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. }
            | Error::LpUnbounded
            | Error::LpInfeasible { .. }
            | Error::NotHermitian { .. } => CliError::Internal(e.to_string()),
            other => CliError::BadInput(other.to_string()),
        }
    }
}

fn parse_theta(opts: &Opts) -> Result<BlochState, CliError> {
    let n = opts.dim;
    let theta: Vec<f64> = match &opts.theta {
        Some(raw) => serde_json::from_str(raw)
            .map_err(|e| CliError::BadInput(format!("--theta is not a JSON real array: {e}")))?,
        None => {
            return Err(CliError::BadInput(
                "--theta is required for this subcommand".into(),
            ))
        }
    };
    if theta.len() != n * n - 1 {
        return Err(CliError::BadInput(format!(
            "--theta needs {} components for dim {n}, got {}",
            n * n - 1,
            theta.len()
        )));
    }
    Ok(BlochState::new(n, theta)?)
}

fn parse_subset(opts: &Opts) -> Result<Vec<usize>, CliError> {
    let raw = opts
        .subset
        .as_ref()
        .ok_or_else(|| CliError::BadInput("--subset is required for this subcommand".into()))?;
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| CliError::BadInput(format!("bad subset entry {s:?}: {e}")))
        })
        .collect()
}

fn basis_for(opts: &Opts) -> Result<CscoBasis, CliError> {
    Ok(build_csco(opts.dim)?)
}

fn run_mub(opts: &Opts) -> Result<Value, CliError> {
    let f = build_mub(opts.dim)?;
    let unbiased = verify_unbiased(&f);
    let mut out = json!({
        "dim": opts.dim,
        "construction": f.construction(),
        "bases": f.bases(),
        "unbiasedness_deviation": unbiased,
    });
    if opts.dim == 3 {
        let t = twist_map_check(&f)?;
        out["twist_check"] = json!({
            "ok": t.ok,
            "residual_third": t.residual_third,
            "residual_fourth": t.residual_fourth,
        });
    }
    Ok(out)
}

fn run_csco(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let f = build_mub(opts.dim)?;
    let v = validate_csco(&b, &f)?;
    Ok(json!({ "basis": b, "validation": v }))
}

fn run_qpd(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let s = parse_theta(opts)?;
    let t = qpd_table(&s, &b)?;
    Ok(serde_json::to_value(&t).map_err(|e| CliError::Internal(e.to_string()))?)
}

fn run_classify(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let s = parse_theta(opts)?;
    let c = classify(&s, &b)?;
    let m = membership(&s, &b)?;
    let rho = density_from_bloch(&s, &b)?;
    Ok(json!({
        "classification": c,
        "membership": m,
        "purity": purity(&rho.rho),
        "min_eigenvalue": rho.min_eigenvalue,
    }))
}

fn run_marginal(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let s = parse_theta(opts)?;
    let subset = parse_subset(opts)?;
    let t = qpd_table(&s, &b)?;
    let m = qpd_marginal(&t, &subset)?;
    Ok(serde_json::to_value(&m).map_err(|e| CliError::Internal(e.to_string()))?)
}

const ORACLE_TOLERANCE: f64 = 1e-8;

fn run_oracle(opts: &Opts) -> Result<(Value, bool), CliError> {
    let b = basis_for(opts)?;
    let n = opts.dim;
    let subset = match &opts.subset {
        Some(_) => parse_subset(opts)?,
        None => (1..=n + 1).collect(),
    };
    let samples = opts.samples;
    let threads = opts.threads.max(1).min(samples.max(1));
    // one random (rho, t) pair per sample; per-sample deviations are computed
    // in parallel chunks and merged by sample index
    let mut devs = vec![0.0f64; samples];
    let chunk = samples.div_ceil(threads);
    std::thread::scope(|scope| -> Result<(), Error> {
        let mut handles = Vec::new();
        for (c, slice) in devs.chunks_mut(chunk).enumerate() {
            let b = &b;
            let subset = &subset;
            let seed = opts.seed;
            handles.push(scope.spawn(move || -> Result<(), Error> {
                for (off, slot) in slice.iter_mut().enumerate() {
                    let sample = (c * chunk + off) as u64;
                    let state_seed = Rng::substream(seed, sample).next_u64();
                    let rho = random_state(n, StateKind::Mixed, state_seed);
                    *slot = fourier_consistency(&rho, b, 1, seed ^ sample, subset)?;
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join().expect("oracle worker panicked")?;
        }
        Ok(())
    })?;
    let max_deviation = devs.iter().cloned().fold(0.0, f64::max);
    let pass = max_deviation < ORACLE_TOLERANCE;
    Ok((
        json!({
            "dim": n,
            "subset": subset,
            "samples": samples,
            "max_deviation": max_deviation,
            "tolerance": ORACLE_TOLERANCE,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_polytope(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let r = enumerate_faces(&b)?;
    Ok(json!({
        "dim": r.dim,
        "vertices": r.vertex_count,
        "facets": r.facet_count,
        "edges_geometric": r.edge_count_geometric,
        "edges_crossbasis": r.edge_count_crossbasis,
        "formula_vertices": r.formula_vertices,
        "formula_facets": r.formula_facets,
        "formula_edges": r.formula_edges,
        "max_vertex_norm_dev": r.max_vertex_norm_dev,
        "max_same_basis_cos_dev": r.max_same_basis_cos_dev,
        "max_cross_basis_dot": r.max_cross_basis_dot,
        "discrepancies": r.discrepancies,
    }))
}

fn run_probe(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    if opts.dim == 2 {
        let oct = octahedron_check(&b, opts.samples, opts.seed)?;
        let probe = support_probe(&b, opts.samples, opts.seed)?;
        Ok(json!({ "support": probe, "octahedron": oct }))
    } else {
        let probe = support_probe(&b, opts.samples, opts.seed)?;
        Ok(json!({ "support": probe }))
    }
}

fn run_tomo(opts: &Opts) -> Result<Value, CliError> {
    let b = basis_for(opts)?;
    let n = opts.dim;
    let (rho, true_theta) = match &opts.theta {
        Some(_) => {
            let s = parse_theta(opts)?;
            let d = density_from_bloch(&s, &b)?;
            (d.rho, s)
        }
        None => {
            let rho = random_state(n, StateKind::Mixed, opts.seed);
            let s = bloch_from_density(&rho, &b)?;
            (rho, s)
        }
    };
    let record = simulate_counts(&rho, &b, opts.shots, opts.seed)?;
    let est = estimate_bloch(&record, &b)?;
    let err: f64 = est
        .state
        .theta
        .iter()
        .zip(&true_theta.theta)
        .map(|(a, c)| (a - c) * (a - c))
        .sum::<f64>()
        .sqrt();
    Ok(json!({
        "record": record,
        "estimate": est,
        "true_theta": true_theta.theta,
        "reconstruction_error": err,
    }))
}

fn run_fixtures(opts: &Opts) -> Result<Value, CliError> {
    let b = reference_fixture(opts.dim)?;
    let f = build_mub(opts.dim)?;
    let v = validate_csco(&b, &f)?;
    let g = vertex_geometry(&b);
    let _ = vertices(&b);
    Ok(json!({ "basis": b, "validation": v, "vertex_geometry": g }))
}

fn emit(opts: &Opts, doc: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    if let Some(path) = &opts.out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::BadInput(format!("cannot write {}: {e}", path.display())))?;
    }
    // tolerate a closed pipe (e.g. | head) instead of panicking
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
    Ok(())
}

fn dispatch(cmd: &Cmd) -> Result<ExitCode, CliError> {
    let (opts, doc, ok) = match cmd {
        Cmd::Mub(o) => (o, run_mub(o)?, true),
        Cmd::Csco(o) => (o, run_csco(o)?, true),
        Cmd::Qpd(o) => (o, run_qpd(o)?, true),
        Cmd::Classify(o) => (o, run_classify(o)?, true),
        Cmd::Marginal(o) => (o, run_marginal(o)?, true),
        Cmd::Oracle(o) => {
            let (doc, pass) = run_oracle(o)?;
            (o, doc, pass || !o.strict)
        }
        Cmd::Polytope(o) => (o, run_polytope(o)?, true),
        Cmd::Probe(o) => (o, run_probe(o)?, true),
        Cmd::Tomo(o) => (o, run_tomo(o)?, true),
        Cmd::Fixtures(o) => (o, run_fixtures(o)?, true),
    };
    emit(opts, &doc)?;
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "{}",
            json!({"error": "InternalCheckFailed", "detail": "measured deviation above tolerance"})
        );
        Ok(ExitCode::from(1))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                ErrorKind::InvalidSubcommand => {
                    eprintln!(
                        "{}",
                        json!({"error": "UnknownSubcommand", "detail": e.to_string()})
                    );
                    return ExitCode::from(64);
                }
                _ => {
                    eprintln!("{}", json!({"error": "BadInput", "detail": e.to_string()}));
                    return ExitCode::from(2);
                }
            }
        }
    };
    match dispatch(&cli.cmd) {
        Ok(code) => code,
        Err(CliError::BadInput(detail)) => {
            eprintln!("{}", json!({"error": "BadInput", "detail": detail}));
            ExitCode::from(2)
        }
        Err(CliError::Internal(detail)) => {
            eprintln!(
                "{}",
                json!({"error": "InternalCheckFailed", "detail": detail})
            );
            ExitCode::from(1)
        }
    }
}
