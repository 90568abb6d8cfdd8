//! Command-line interface: build parity-check matrices, verify structural
//! properties against the catalogued values, and run AWGN decoding
//! simulations.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 when a verification
//! check disagrees with its expected value, 1 on runtime failures.

use conic_ldpc_cli::alist;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use conic_ldpc::{
    build_structure, code_dimension, count_6_cycles, count_8_cycles, field_new, gallager_code,
    girth, incidence, min_distance_exhaustive, min_weight_codeword, rank_gf2, simulate_ber,
    tables, BipartiteGraph, ChannelPoint, ConicFamily, FieldSpec, GallagerSpec,
    IncidenceStructure, Line, ParallelClass, SimulationConfig, SparseBinaryMatrix,
};

#[derive(Parser)]
#[command(name = "conic-ldpc", version, about = "LDPC codes from conic incidence structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it with a JSON manifest
    Build {
        /// Conic family: 1, 2 or 3
        #[arg(long)]
        family: u8,
        /// Field order, a prime power in 4..=32
        #[arg(long)]
        q: u32,
        /// Output path; a sidecar manifest is written next to it
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Alist)]
        format: MatrixFormat,
    },
    /// Verify structural properties and report computed vs expected values
    Analyze {
        #[arg(long)]
        family: u8,
        #[arg(long)]
        q: u32,
        /// Comma-separated list of checks to run
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<CheckKind>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Avoiding conics sampled per flag by the kappa check
        #[arg(long, default_value_t = 200)]
        kappa_samples: usize,
    },
    /// Simulate sum-product decoding on the AWGN channel
    Simulate {
        /// Conic family of a built code (with --q)
        #[arg(long)]
        family: Option<u8>,
        #[arg(long)]
        q: Option<u32>,
        /// Read the parity-check matrix from an alist file
        #[arg(long)]
        alist: Option<PathBuf>,
        /// Regular ensemble spec, e.g. n=576,row=9,col=6
        #[arg(long)]
        gallager: Option<String>,
        /// Eb/N0 grid in dB: `a:step:b`, a single value, or a comma list
        #[arg(long)]
        snr: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1_000)]
        min_trials: u64,
        #[arg(long, default_value_t = 100_000)]
        max_trials: u64,
        /// Frame errors after which a point stops early
        #[arg(long, default_value_t = 100)]
        target_errors: u64,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CurveFormat::Csv)]
        format: CurveFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Alist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum CheckKind {
    Counts,
    Girth,
    Cycles6,
    Cycles8,
    Rank,
    MindistConstruct,
    MindistExhaustive,
    Kappa,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

const EXIT_OK: ExitCode = ExitCode::SUCCESS;
const EXIT_USAGE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Build { family, q, out, format } => cmd_build(family, q, &out, format),
        Command::Analyze { family, q, checks, out, seed, kappa_samples } => {
            cmd_analyze(family, q, &checks, out.as_deref(), seed, kappa_samples)
        }
        Command::Simulate {
            family,
            q,
            alist,
            gallager,
            snr,
            seed,
            min_trials,
            max_trials,
            target_errors,
            max_iter,
            out,
            format,
        } => {
            let config = SimulationConfig { min_trials, max_trials, target_errors, max_iter, seed };
            cmd_simulate(
                family,
                q,
                alist.as_deref(),
                gallager.as_deref(),
                &snr,
                config,
                out.as_deref(),
                format,
            )
        }
    }
}

fn usage(message: impl std::fmt::Display) -> Result<ExitCode> {
    eprintln!("error: {message}");
    Ok(ExitCode::from(EXIT_USAGE))
}

fn parse_family_q(family: u8, q: u32) -> std::result::Result<(ConicFamily, FieldSpec), String> {
    let family = ConicFamily::from_index(family)
        .ok_or_else(|| format!("family must be 1, 2 or 3, got {family}"))?;
    let spec = field_new(q).map_err(|e| e.to_string())?;
    Ok((family, spec))
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BuildManifest {
    family: u8,
    q: u32,
    n: usize,
    n_checks: usize,
    row_weight: usize,
    col_weight: usize,
    format: String,
    build_hash: String,
}

fn cmd_build(family: u8, q: u32, out: &Path, format: MatrixFormat) -> Result<ExitCode> {
    let (family, spec) = match parse_family_q(family, q) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };
    let structure = build_structure(family, &spec);
    let matrix = structure.incidence_matrix();

    let body = match format {
        MatrixFormat::Alist => alist::write_alist(&matrix),
        MatrixFormat::Json => serde_json::to_string_pretty(&json!({
            "n": matrix.n_cols(),
            "n_checks": matrix.n_rows(),
            "rows": matrix.rows().collect::<Vec<_>>(),
        }))? + "\n",
    };
    std::fs::write(out, body).with_context(|| format!("writing {}", out.display()))?;

    let manifest = BuildManifest {
        family: family.index(),
        q,
        n: matrix.n_cols(),
        n_checks: matrix.n_rows(),
        row_weight: family.points_per_conic(q),
        col_weight: q as usize,
        format: match format {
            MatrixFormat::Alist => "alist".into(),
            MatrixFormat::Json => "json".into(),
        },
        build_hash: format!("{:016x}", matrix_hash(&matrix)),
    };
    let manifest_path = manifest_path_for(out);
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("writing {}", manifest_path.display()))?;
    eprintln!(
        "wrote {} ({} checks x {} bits) and {}",
        out.display(),
        matrix.n_rows(),
        matrix.n_cols(),
        manifest_path.display()
    );
    Ok(EXIT_OK)
}

fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

/// FNV-1a over the dimensions and row supports.
fn matrix_hash(m: &SparseBinaryMatrix) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    let mut eat = |v: u64| {
        for byte in v.to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    };
    eat(m.n_rows() as u64);
    eat(m.n_cols() as u64);
    for row in m.rows() {
        eat(row.len() as u64);
        for &c in row {
            eat(c as u64);
        }
    }
    hash
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckEntry {
    check: String,
    computed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    family: u8,
    q: u32,
    length: usize,
    n_checks: usize,
    checks: Vec<CheckEntry>,
    all_match: bool,
}

fn cmd_analyze(
    family_index: u8,
    q: u32,
    checks: &[CheckKind],
    out: Option<&Path>,
    seed: u64,
    kappa_samples: usize,
) -> Result<ExitCode> {
    let (family, spec) = match parse_family_q(family_index, q) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };
    let structure = build_structure(family, &spec);
    let mut entries = Vec::new();
    for &check in checks {
        entries.push(run_check(check, family, &spec, &structure, seed, kappa_samples));
    }
    let all_match = entries.iter().all(|e| e.matches != Some(false) && e.error.is_none());
    let report = AnalyzeReport {
        family: family.index(),
        q,
        length: structure.n_points(),
        n_checks: structure.n_blocks(),
        checks: entries,
        all_match,
    };
    let body = serde_json::to_string_pretty(&report)? + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(if all_match { EXIT_OK } else { ExitCode::from(EXIT_MISMATCH) })
}

fn run_check(
    check: CheckKind,
    family: ConicFamily,
    spec: &FieldSpec,
    structure: &IncidenceStructure,
    seed: u64,
    kappa_samples: usize,
) -> CheckEntry {
    let q = spec.q();
    let entry = |name: &str, computed: Value, expected: Option<Value>, matches: Option<bool>| {
        CheckEntry { check: name.into(), computed, expected, matches, error: None }
    };
    let failed = |name: &str, message: String| CheckEntry {
        check: name.into(),
        computed: Value::Null,
        expected: None,
        matches: None,
        error: Some(message),
    };
    match check {
        CheckKind::Counts => {
            let conics = conic_ldpc::enumerate_conics(family, spec).len();
            let computed = json!({
                "conics": conics,
                "points": structure.n_points(),
                "blocks": structure.n_blocks(),
            });
            let expected = json!({
                "conics": (q * q * (q - 1)) as usize,
                "points": tables::expected_length(family, q),
                "blocks": tables::expected_checks(q),
            });
            let matches = computed == expected;
            entry("counts", computed, Some(expected), Some(matches))
        }
        CheckKind::Girth => {
            let g = BipartiteGraph::from_structure(structure);
            let computed = girth(&g);
            let expected = tables::expected_girth(family, q);
            entry(
                "girth",
                json!(computed),
                Some(json!(expected)),
                Some(computed == Some(expected)),
            )
        }
        CheckKind::Cycles6 => {
            let g = BipartiteGraph::from_structure(structure);
            let count = count_6_cycles(&g);
            let even = q % 2 == 0;
            let (expected, matches) = match (family, even) {
                (ConicFamily::Parabolic, true) => {
                    let formula = tables::six_cycle_count_parabolic_even(q as u64);
                    (json!(formula), count == formula)
                }
                (ConicFamily::Parabolic, false) => (json!(0), count == 0),
                (ConicFamily::Hyperbolic, true) | (ConicFamily::Elliptic, true) => {
                    (json!(0), count == 0)
                }
                (ConicFamily::Hyperbolic, false) => (
                    json!({"bound": "q^2 (q-1) (q^3-q^2-q) / 3"}),
                    tables::six_cycle_bound_hyperbolic_odd(q as u64, count),
                ),
                (ConicFamily::Elliptic, false) => (
                    json!({"bound": "2 q^4 (q+1) (q-2)"}),
                    tables::six_cycle_bound_elliptic_odd(q as u64, count),
                ),
            };
            entry("cycles6", json!(count), Some(expected), Some(matches))
        }
        CheckKind::Cycles8 => {
            if q > 9 {
                return failed("cycles8", format!("supported for q <= 9 only, got q = {q}"));
            }
            let g = BipartiteGraph::from_structure(structure);
            entry("cycles8", json!(count_8_cycles(&g)), None, None)
        }
        CheckKind::Rank => {
            let h = structure.incidence_matrix();
            let dimension = code_dimension(&h);
            let expected = tables::code_record(family, q).map(|r| r.dimension);
            let matches = expected.map(|e| e == dimension);
            entry(
                "rank",
                json!({"rank": h.n_cols() - dimension, "dimension": dimension}),
                expected.map(|e| json!({"dimension": e})),
                matches,
            )
        }
        CheckKind::MindistConstruct => {
            let l0 = Line::Slanted { slope: spec.one(), intercept: spec.zero() };
            // the involution can fix an unlucky class; take the first
            // admissible class it accepts
            let word = ParallelClass::all(spec)
                .into_iter()
                .filter(|&c| c != l0.parallel_class() && family.class_admissible(c))
                .find_map(|class_l| min_weight_codeword(structure, l0, class_l).ok());
            match word {
                Some(word) => {
                    let ok = word.is_codeword() && word.weight() == 2 * q as usize;
                    entry(
                        "mindist-construct",
                        json!({"weight": word.weight(), "is_codeword": word.is_codeword()}),
                        Some(json!({"weight": 2 * q, "is_codeword": true})),
                        Some(ok),
                    )
                }
                None => failed(
                    "mindist-construct",
                    "no admissible class yields a codeword".into(),
                ),
            }
        }
        CheckKind::MindistExhaustive => {
            let h = structure.incidence_matrix();
            match min_distance_exhaustive(&h) {
                Ok(d) => entry(
                    "mindist-exhaustive",
                    json!(d),
                    Some(json!(2 * q)),
                    Some(d == 2 * q as usize),
                ),
                Err(e) => failed("mindist-exhaustive", e.to_string()),
            }
        }
        CheckKind::Kappa => {
            let observed =
                incidence::max_kappa_sampled(family, spec, kappa_samples, seed);
            let (bound, attained) = tables::kappa_bound(family, q);
            let matches = if attained { observed == bound } else { observed <= bound };
            entry(
                "kappa",
                json!(observed),
                Some(json!({"bound": bound, "attained": attained})),
                Some(matches),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(
    family: Option<u8>,
    q: Option<u32>,
    alist_path: Option<&Path>,
    gallager: Option<&str>,
    snr: &str,
    config: SimulationConfig,
    out: Option<&Path>,
    format: CurveFormat,
) -> Result<ExitCode> {
    let sources =
        [family.is_some() || q.is_some(), alist_path.is_some(), gallager.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return usage("exactly one matrix source required: --family/--q, --alist, or --gallager");
    }

    let (matrix, source) = if let Some(path) = alist_path {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let m = read_alist_with_context(&text, path)?;
        (m, json!({"alist": path.display().to_string()}))
    } else if let Some(spec_str) = gallager {
        let gspec = match parse_gallager(spec_str, config.seed) {
            Ok(g) => g,
            Err(m) => return usage(m),
        };
        let m = match gallager_code(&gspec) {
            Ok(m) => m,
            Err(e) => return usage(e.to_string()),
        };
        (m, json!({"gallager": {"n": gspec.n, "row_weight": gspec.row_weight, "col_weight": gspec.col_weight, "seed": gspec.seed}}))
    } else {
        let (Some(family), Some(q)) = (family, q) else {
            return usage("--family and --q must be given together");
        };
        let (family, spec) = match parse_family_q(family, q) {
            Ok(v) => v,
            Err(m) => return usage(m),
        };
        let m = build_structure(family, &spec).incidence_matrix();
        (m, json!({"family": family.index(), "q": q}))
    };

    let snr_values = match parse_snr(snr) {
        Ok(v) => v,
        Err(m) => return usage(m),
    };

    let n = matrix.n_cols();
    let k = n - rank_gf2(&matrix);
    if k == 0 {
        return usage("the code has dimension 0; nothing to simulate");
    }
    let rate = k as f64 / n as f64;
    let points: Vec<ChannelPoint> = snr_values
        .iter()
        .map(|&db| ChannelPoint::new(db, rate))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| anyhow!("{e}"))?;

    eprintln!("simulating [{n},{k}] code (rate {rate:.3}) at {} point(s)", points.len());
    let result = simulate_ber(&matrix, &points, &config);
    for p in &result.points {
        eprintln!(
            "  {:>5.2} dB: {} trials, ber {:.3e}, fer {:.3e}, avg iters {:.2}",
            p.eb_n0_db, p.trials, p.ber, p.fer, p.avg_iterations
        );
    }

    let body = match format {
        CurveFormat::Csv => result.to_csv(),
        CurveFormat::Json => {
            serde_json::to_string_pretty(&json!({
                "source": source,
                "n": n,
                "k": k,
                "rate": rate,
                "config": result.config,
                "points": result.points,
            }))? + "\n"
        }
    };
    match out {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{body}"),
    }
    Ok(EXIT_OK)
}

fn read_alist_with_context(text: &str, path: &Path) -> Result<SparseBinaryMatrix> {
    alist::read_alist(text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_gallager(spec: &str, seed: u64) -> std::result::Result<GallagerSpec, String> {
    let mut n = None;
    let mut row = None;
    let mut col = None;
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value in gallager spec, got {part:?}"))?;
        let value: usize =
            value.trim().parse().map_err(|_| format!("invalid number {value:?}"))?;
        match key.trim() {
            "n" => n = Some(value),
            "row" => row = Some(value),
            "col" => col = Some(value),
            other => return Err(format!("unknown gallager key {other:?}")),
        }
    }
    Ok(GallagerSpec {
        n: n.ok_or("gallager spec requires n=".to_string())?,
        row_weight: row.ok_or("gallager spec requires row=".to_string())?,
        col_weight: col.ok_or("gallager spec requires col=".to_string())?,
        seed,
    })
}

/// Parses `a:step:b` (inclusive), a bare value, or a comma list.
fn parse_snr(text: &str) -> std::result::Result<Vec<f64>, String> {
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("invalid number {s:?}"));
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, step, end] = parts[..] else {
            return Err(format!("expected a:step:b, got {text:?}"));
        };
        let (start, step, end) = (parse(start)?, parse(step)?, parse(end)?);
        if step <= 0.0 && start < end {
            return Err("snr step must be positive".into());
        }
        let mut values = Vec::new();
        let mut v = start;
        let eps = step.abs() * 1e-9 + 1e-12;
        while v <= end + eps {
            values.push(v);
            if step == 0.0 {
                break;
            }
            v += step;
        }
        if values.is_empty() {
            return Err(format!("empty snr range {text:?}"));
        }
        Ok(values)
    } else {
        text.split(',').map(parse).collect()
    }
}
