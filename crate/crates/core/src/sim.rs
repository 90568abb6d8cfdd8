//! Log-domain sum-product decoding, the BPSK/AWGN channel, Monte-Carlo
//! bit-error-rate campaigns, and the regular band-permutation ensemble used
//! as a comparison baseline.
//!
//! Reproducibility: every random draw comes from a ChaCha8 stream seeded
//! from (seed, snr-point index, trial chunk index) through a SplitMix64
//! mixer, and trials are processed in fixed-size chunks merged in a
//! deterministic order, so results are bit-identical for a given seed
//! regardless of thread count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::SparseBinaryMatrix;

/// Messages and posteriors are clamped to this LLR magnitude.
const LLR_CLAMP: f64 = 30.0;
/// Keeps check-node products away from +-1 so atanh stays finite.
const TANH_EPS: f64 = 1e-12;

/// One Eb/N0 operating point. With BPSK on the AWGN channel,
/// sigma = sqrt(1 / (2 R 10^(dB/10))) where R is the code rate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChannelPoint {
    pub eb_n0_db: f64,
    pub sigma: f64,
}

impl ChannelPoint {
    pub fn new(eb_n0_db: f64, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidRate(rate));
        }
        let sigma = (1.0 / (2.0 * rate * 10f64.powf(eb_n0_db / 10.0))).sqrt();
        Ok(Self { eb_n0_db, sigma })
    }
}

/// Outcome of one decoding attempt.
#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub bits: Vec<u8>,
    pub converged: bool,
    pub iterations: usize,
}

/// A sum-product decoder bound to one parity-check matrix. The graph data
/// is immutable and shared; per-call state lives in a workspace so one
/// decoder serves many threads.
#[derive(Debug, Clone)]
pub struct SumProductDecoder {
    n_vars: usize,
    check_to_var: Vec<Vec<u32>>,
    /// first edge id of each variable, in variable-major edge order
    var_edge_start: Vec<u32>,
    /// for each check, the edge ids of its incident variables
    check_edge_ids: Vec<Vec<u32>>,
    n_edges: usize,
}

/// Scratch buffers for one decoding call.
#[derive(Debug, Clone)]
pub struct DecoderWorkspace {
    var_to_check: Vec<f64>,
    check_to_var: Vec<f64>,
    tanh_buf: Vec<f64>,
    suffix: Vec<f64>,
    posterior: Vec<f64>,
    hard: Vec<u8>,
}

impl SumProductDecoder {
    pub fn new(h: &SparseBinaryMatrix) -> Self {
        let n_vars = h.n_cols();
        let check_to_var: Vec<Vec<u32>> =
            h.rows().map(|r| r.iter().map(|&c| c as u32).collect()).collect();
        let mut var_degree = vec![0u32; n_vars];
        for row in &check_to_var {
            for &v in row {
                var_degree[v as usize] += 1;
            }
        }
        let mut var_edge_start = vec![0u32; n_vars + 1];
        for v in 0..n_vars {
            var_edge_start[v + 1] = var_edge_start[v] + var_degree[v];
        }
        let mut cursor = var_edge_start.clone();
        let check_edge_ids: Vec<Vec<u32>> = check_to_var
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        let e = cursor[v as usize];
                        cursor[v as usize] += 1;
                        e
                    })
                    .collect()
            })
            .collect();
        let n_edges = var_edge_start[n_vars] as usize;
        Self { n_vars, check_to_var, var_edge_start, check_edge_ids, n_edges }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn workspace(&self) -> DecoderWorkspace {
        let max_check_degree =
            self.check_to_var.iter().map(|r| r.len()).max().unwrap_or(0);
        DecoderWorkspace {
            var_to_check: vec![0.0; self.n_edges],
            check_to_var: vec![0.0; self.n_edges],
            tanh_buf: vec![0.0; max_check_degree],
            suffix: vec![0.0; max_check_degree + 1],
            posterior: vec![0.0; self.n_vars],
            hard: vec![0; self.n_vars],
        }
    }

    /// Flooding-schedule sum-product decoding: all check nodes update, then
    /// all variable nodes; stops as soon as the hard decisions satisfy
    /// every check. Check messages use the tanh product rule with
    /// leave-one-out prefix/suffix products.
    pub fn decode(
        &self,
        ws: &mut DecoderWorkspace,
        channel_llrs: &[f64],
        max_iter: usize,
    ) -> Result<DecodeResult> {
        if channel_llrs.len() != self.n_vars {
            return Err(Error::LengthMismatch { expected: self.n_vars, got: channel_llrs.len() });
        }
        assert!(max_iter >= 1);
        for v in 0..self.n_vars {
            let llr = channel_llrs[v].clamp(-LLR_CLAMP, LLR_CLAMP);
            let (start, end) =
                (self.var_edge_start[v] as usize, self.var_edge_start[v + 1] as usize);
            ws.var_to_check[start..end].fill(llr);
        }

        for iter in 1..=max_iter {
            // check-node update
            for edges in &self.check_edge_ids {
                let degree = edges.len();
                if degree == 0 {
                    continue;
                }
                for (k, &e) in edges.iter().enumerate() {
                    ws.tanh_buf[k] = (0.5 * ws.var_to_check[e as usize]).tanh();
                }
                ws.suffix[degree] = 1.0;
                for k in (0..degree).rev() {
                    ws.suffix[k] = ws.suffix[k + 1] * ws.tanh_buf[k];
                }
                let mut prefix = 1.0;
                for (k, &e) in edges.iter().enumerate() {
                    let product = prefix * ws.suffix[k + 1];
                    let clamped = product.clamp(-1.0 + TANH_EPS, 1.0 - TANH_EPS);
                    ws.check_to_var[e as usize] = 2.0 * clamped.atanh();
                    prefix *= ws.tanh_buf[k];
                }
            }

            // variable-node update and posterior
            for v in 0..self.n_vars {
                let (start, end) =
                    (self.var_edge_start[v] as usize, self.var_edge_start[v + 1] as usize);
                let mut total = channel_llrs[v].clamp(-LLR_CLAMP, LLR_CLAMP);
                for e in start..end {
                    total += ws.check_to_var[e];
                }
                ws.posterior[v] = total;
                ws.hard[v] = (total < 0.0) as u8;
                for e in start..end {
                    ws.var_to_check[e] =
                        (total - ws.check_to_var[e]).clamp(-LLR_CLAMP, LLR_CLAMP);
                }
            }

            if self.syndrome_ok(&ws.hard) {
                return Ok(DecodeResult { bits: ws.hard.clone(), converged: true, iterations: iter });
            }
        }
        Ok(DecodeResult { bits: ws.hard.clone(), converged: false, iterations: max_iter })
    }

    fn syndrome_ok(&self, hard: &[u8]) -> bool {
        self.check_to_var
            .iter()
            .all(|row| row.iter().fold(0u8, |acc, &v| acc ^ hard[v as usize]) == 0)
    }
}

/// One-shot convenience wrapper.
pub fn sum_product_decode(
    h: &SparseBinaryMatrix,
    channel_llrs: &[f64],
    max_iter: usize,
) -> Result<DecodeResult> {
    let decoder = SumProductDecoder::new(h);
    let mut ws = decoder.workspace();
    decoder.decode(&mut ws, channel_llrs, max_iter)
}

/// Trial bounds for a BER campaign. Each SNR point runs until it has seen
/// `target_errors` frame errors (but at least `min_trials` trials), capped
/// at `max_trials`.
#[derive(Debug, Clone, Serialize)]
pub struct SimulationConfig {
    pub min_trials: u64,
    pub max_trials: u64,
    pub target_errors: u64,
    pub max_iter: usize,
    pub seed: u64,
}

/// Measured statistics for one SNR point.
#[derive(Debug, Clone, Serialize)]
pub struct PointStats {
    pub eb_n0_db: f64,
    pub sigma: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub avg_iterations: f64,
}

/// A whole BER curve.
#[derive(Debug, Clone, Serialize)]
pub struct SimulationResult {
    pub n: usize,
    pub config: SimulationConfig,
    pub points: Vec<PointStats>,
}

impl SimulationResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eb_n0_db,trials,bit_errors,frame_errors,ber,fer,avg_iters\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{:e},{:e},{}\n",
                p.eb_n0_db, p.trials, p.bit_errors, p.frame_errors, p.ber, p.fer, p.avg_iterations
            ));
        }
        out
    }
}

const TRIAL_CHUNK: u64 = 256;
/// Chunks per stopping-rule evaluation round.
const CHUNKS_PER_ROUND: u64 = 32;

/// Monte-Carlo BER measurement with all-zero-codeword transmission, which
/// is exact for linear codes on this output-symmetric channel: BPSK maps
/// bit 0 to +1, noise is N(0, sigma^2), and the channel LLR is 2y/sigma^2.
pub fn simulate_ber(
    h: &SparseBinaryMatrix,
    points: &[ChannelPoint],
    config: &SimulationConfig,
) -> SimulationResult {
    let decoder = SumProductDecoder::new(h);
    let n = h.n_cols();
    let stats = points
        .iter()
        .enumerate()
        .map(|(pi, point)| {
            let mut trials = 0u64;
            let mut bit_errors = 0u64;
            let mut frame_errors = 0u64;
            let mut iter_sum = 0u64;
            let mut next_chunk = 0u64;
            while trials < config.max_trials {
                let round: Vec<u64> = (0..CHUNKS_PER_ROUND)
                    .map(|k| next_chunk + k)
                    .filter(|&chunk| chunk * TRIAL_CHUNK < config.max_trials)
                    .collect();
                next_chunk += CHUNKS_PER_ROUND;
                let results: Vec<(u64, u64, u64, u64)> = round
                    .par_iter()
                    .map(|&chunk| {
                        run_chunk(&decoder, point, config, pi as u64, chunk)
                    })
                    .collect();
                for (t, b, f, it) in results {
                    trials += t;
                    bit_errors += b;
                    frame_errors += f;
                    iter_sum += it;
                }
                if trials >= config.min_trials && frame_errors >= config.target_errors {
                    break;
                }
            }
            PointStats {
                eb_n0_db: point.eb_n0_db,
                sigma: point.sigma,
                trials,
                bit_errors,
                frame_errors,
                ber: bit_errors as f64 / (trials as f64 * n as f64),
                fer: frame_errors as f64 / trials as f64,
                avg_iterations: iter_sum as f64 / trials as f64,
            }
        })
        .collect();
    SimulationResult { n, config: config.clone(), points: stats }
}

fn run_chunk(
    decoder: &SumProductDecoder,
    point: &ChannelPoint,
    config: &SimulationConfig,
    point_index: u64,
    chunk: u64,
) -> (u64, u64, u64, u64) {
    let first = chunk * TRIAL_CHUNK;
    let last = ((chunk + 1) * TRIAL_CHUNK).min(config.max_trials);
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, point_index, chunk));
    let mut noise = GaussianSource::new();
    let mut ws = decoder.workspace();
    let n = decoder.n_vars();
    let mut llrs = vec![0.0f64; n];
    let scale = 2.0 / (point.sigma * point.sigma);

    let mut bit_errors = 0u64;
    let mut frame_errors = 0u64;
    let mut iter_sum = 0u64;
    for _ in first..last {
        for llr in llrs.iter_mut() {
            let y = 1.0 + point.sigma * noise.next(&mut rng);
            *llr = scale * y;
        }
        let result = decoder.decode(&mut ws, &llrs, config.max_iter).expect("length matches");
        let errors = result.bits.iter().map(|&b| b as u64).sum::<u64>();
        bit_errors += errors;
        frame_errors += (errors > 0) as u64;
        iter_sum += result.iterations as u64;
    }
    (last - first, bit_errors, frame_errors, iter_sum)
}

/// SplitMix64 over (seed, point, chunk); documented so other
/// implementations can replay a campaign exactly.
fn mix_seed(seed: u64, point_index: u64, chunk: u64) -> u64 {
    let mut z = seed ^ point_index.wrapping_mul(0x9E3779B97F4A7C15) ^ chunk.wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Standard normal variates by the Box-Muller transform over the uniform
/// draws of the supplied generator.
struct GaussianSource {
    spare: Option<f64>,
}

impl GaussianSource {
    fn new() -> Self {
        Self { spare: None }
    }

    fn next<R: Rng>(&mut self, rng: &mut R) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1: f64 = 1.0 - rng.random::<f64>(); // in (0, 1]
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// Parameters of a regular band-permutation ensemble code.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GallagerSpec {
    pub n: usize,
    pub row_weight: usize,
    pub col_weight: usize,
    pub seed: u64,
}

/// Draws a regular parity-check matrix from the classic ensemble: the
/// first band is a block-diagonal strip of `row_weight` ones per row and
/// every further band applies a seeded random column permutation to it.
/// Permutations that produce duplicate columns (4-cycles) are resampled;
/// when the parameters are so small that every draw collides, the last
/// draw is returned as-is.
pub fn gallager_code(spec: &GallagerSpec) -> Result<SparseBinaryMatrix> {
    if spec.row_weight == 0 || spec.col_weight == 0 {
        return Err(Error::InvalidDivisibility("weights must be positive".into()));
    }
    if spec.n % spec.row_weight != 0 {
        return Err(Error::InvalidDivisibility(format!(
            "code length {} is not a multiple of the row weight {}",
            spec.n, spec.row_weight
        )));
    }
    let band_rows = spec.n / spec.row_weight;
    let n_rows = band_rows * spec.col_weight;

    const MAX_ATTEMPTS: usize = 64;
    let mut last_draw = None;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(spec.seed, 0, attempt as u64));
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n_rows);
        let mut signatures: Vec<Vec<u32>> = vec![Vec::with_capacity(spec.col_weight); spec.n];
        for band in 0..spec.col_weight {
            let mut perm: Vec<usize> = (0..spec.n).collect();
            if band > 0 {
                perm.shuffle(&mut rng);
            }
            for j in 0..band_rows {
                let cols: Vec<usize> = perm[j * spec.row_weight..(j + 1) * spec.row_weight].to_vec();
                for &c in &cols {
                    signatures[c].push(j as u32);
                }
                rows.push(cols);
            }
        }
        let mut sorted = signatures.clone();
        sorted.sort_unstable();
        let duplicate_columns = sorted.windows(2).any(|w| w[0] == w[1]);
        if !duplicate_columns {
            return SparseBinaryMatrix::new(n_rows, spec.n, rows);
        }
        last_draw = Some(rows);
    }
    // only reachable when the column space is too small to avoid repeats,
    // e.g. n / row_weight < 2^col_weight draws of identical band rows
    SparseBinaryMatrix::new(n_rows, spec.n, last_draw.expect("at least one attempt ran"))
}
