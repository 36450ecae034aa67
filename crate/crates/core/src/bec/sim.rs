//! Frame error rate of ML decoding on the erasure channel.
//!
//! Randomness: worker `w` owns a ChaCha8 stream seeded with the run seed and
//! stream id `w`, and handles a contiguous block of trials. Each trial
//! draws one `u64` per code position, in position order, and the position is
//! erased iff the draw is below `floor(eps * 2^64)`. Results therefore depend
//! on the seed and worker count only, not on scheduling.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::{generator_matrix, MonomialCode};

use super::decoder::{ml_success, ErasureDecoder, ErasurePattern};

/// Largest length accepted by [`exact_fer`].
pub const MAX_EXACT_LENGTH: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        SimConfig { trials, seed, workers: 1 }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        SimConfig { workers, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FerEstimate {
    pub epsilon: f64,
    pub trials: u64,
    pub failures: u64,
    pub fer: f64,
    /// Normal-approximation 95% interval, clamped to `[0, 1]`.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl FerEstimate {
    pub fn from_counts(epsilon: f64, trials: u64, failures: u64) -> Self {
        let fer = failures as f64 / trials as f64;
        let half = 1.96 * (fer * (1.0 - fer) / trials as f64).sqrt();
        FerEstimate {
            epsilon,
            trials,
            failures,
            fer,
            ci_low: (fer - half).max(0.0),
            ci_high: (fer + half).min(1.0),
        }
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::ErasureProbability(eps))
    }
}

/// Draws below this value erase the position.
fn threshold(eps: f64) -> u128 {
    if eps >= 1.0 {
        1 << 64
    } else {
        (eps * 18_446_744_073_709_551_616.0) as u128
    }
}

fn worker_blocks(trials: u64, workers: usize) -> Vec<(usize, u64)> {
    let workers = workers.max(1) as u64;
    (0..workers)
        .map(|w| (w as usize, trials / workers + u64::from(w < trials % workers)))
        .collect()
}

fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

fn run_parallel<F>(cfg: &SimConfig, slots: usize, body: F) -> Result<Vec<u64>>
where
    F: Fn(&mut ChaCha8Rng, u64, &mut [u64]) + Sync,
{
    if cfg.trials == 0 {
        return Err(Error::NoTrials);
    }
    let blocks = worker_blocks(cfg.trials, cfg.workers);
    let run = |&(w, count): &(usize, u64)| {
        let mut counts = vec![0u64; slots];
        body(&mut worker_rng(cfg.seed, w), count, &mut counts);
        counts
    };
    let per_worker: Vec<Vec<u64>> = if blocks.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(blocks.len())
            .build()
            .map_err(|e| Error::InvalidDesign(format!("thread pool: {e}")))?;
        pool.install(|| blocks.par_iter().map(run).collect())
    } else {
        blocks.iter().map(run).collect()
    };
    Ok((0..slots).map(|s| per_worker.iter().map(|c| c[s]).sum()).collect())
}

/// Monte-Carlo FER at one erasure probability.
pub fn simulate_fer(code: &MonomialCode, eps: f64, cfg: &SimConfig) -> Result<FerEstimate> {
    check_epsilon(eps)?;
    let decoder = ErasureDecoder::for_code(code)?;
    let n = decoder.n();
    let thr = threshold(eps);
    let counts = run_parallel(cfg, 1, |rng, trials, counts| {
        let mut scratch = decoder.scratch();
        let mut erased = Vec::with_capacity(n);
        for _ in 0..trials {
            erased.clear();
            erased.extend((0..n).filter(|_| u128::from(rng.next_u64()) < thr));
            if decoder.first_failure_with(&mut scratch, erased.iter().copied()).is_some() {
                counts[0] += 1;
            }
        }
    })?;
    Ok(FerEstimate::from_counts(eps, cfg.trials, counts[0]))
}

/// FER at several erasure probabilities from one set of draws.
///
/// Per trial, positions are erased in increasing order of their draw until
/// decoding fails; the draw at that point is the trial's critical value, and
/// the trial fails at `eps` iff the critical value lies below the `eps`
/// threshold. The counts equal those of separate [`simulate_fer`] runs with
/// the same configuration.
pub fn simulate_fer_sweep(code: &MonomialCode, eps: &[f64], cfg: &SimConfig) -> Result<Vec<FerEstimate>> {
    for &e in eps {
        check_epsilon(e)?;
    }
    let decoder = ErasureDecoder::for_code(code)?;
    let n = decoder.n();
    let thresholds: Vec<u128> = eps.iter().map(|&e| threshold(e)).collect();
    let top = thresholds.iter().copied().max().unwrap_or(0);
    let counts = run_parallel(cfg, eps.len(), |rng, trials, counts| {
        let mut scratch = decoder.scratch();
        let mut candidates: Vec<(u64, usize)> = Vec::with_capacity(n);
        for _ in 0..trials {
            candidates.clear();
            for pos in 0..n {
                let x = rng.next_u64();
                if u128::from(x) < top {
                    candidates.push((x, pos));
                }
            }
            candidates.sort_unstable();
            if let Some(idx) = decoder.first_failure_with(&mut scratch, candidates.iter().map(|c| c.1)) {
                let critical = u128::from(candidates[idx].0);
                for (slot, &thr) in thresholds.iter().enumerate() {
                    if critical < thr {
                        counts[slot] += 1;
                    }
                }
            }
        }
    })?;
    Ok(eps.iter().zip(counts).map(|(&e, f)| FerEstimate::from_counts(e, cfg.trials, f)).collect())
}

/// Number of failing erasure patterns of each weight, by enumerating all
/// `2^n` patterns against the generator-rank criterion.
pub fn failure_spectrum(code: &MonomialCode) -> Result<Vec<u64>> {
    let n = code.n();
    if n > MAX_EXACT_LENGTH {
        return Err(Error::TooLongForEnumeration(n));
    }
    let genmat = generator_matrix(code)?;
    let mut spectrum = vec![0u64; n + 1];
    for bits in 0u32..1 << n {
        let pattern = ErasurePattern::from_positions(n, (0..n).filter(|i| bits >> i & 1 == 1));
        if !ml_success(&genmat, &pattern)? {
            spectrum[bits.count_ones() as usize] += 1;
        }
    }
    Ok(spectrum)
}

/// Exact FER: `sum_w failures_w * eps^w * (1-eps)^(n-w)`.
pub fn exact_fer(code: &MonomialCode, eps: f64) -> Result<f64> {
    check_epsilon(eps)?;
    let spectrum = failure_spectrum(code)?;
    let n = spectrum.len() - 1;
    Ok(spectrum
        .iter()
        .enumerate()
        .map(|(w, &c)| c as f64 * eps.powi(w as i32) * (1.0 - eps).powi((n - w) as i32))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::reed_muller;

    #[test]
    fn threshold_edges() {
        assert_eq!(threshold(0.0), 0);
        assert_eq!(threshold(1.0), 1 << 64);
        assert_eq!(threshold(0.5), 1 << 63);
    }

    #[test]
    fn blocks_cover_all_trials() {
        let blocks = worker_blocks(10, 3);
        assert_eq!(blocks, vec![(0, 4), (1, 3), (2, 3)]);
        assert_eq!(worker_blocks(5, 0), vec![(0, 5)]);
    }

    #[test]
    fn extremes() {
        let code = reed_muller(1, 3).unwrap();
        let cfg = SimConfig::new(1000, 7);
        assert_eq!(simulate_fer(&code, 0.0, &cfg).unwrap().failures, 0);
        assert_eq!(simulate_fer(&code, 1.0, &cfg).unwrap().failures, 1000);
        assert!(simulate_fer(&code, 1.2, &cfg).is_err());
        assert_eq!(simulate_fer(&code, 0.5, &SimConfig::new(0, 1)), Err(Error::NoTrials));
    }

    #[test]
    fn repetition_code_exact() {
        // fails only when every position is erased
        let code = reed_muller(0, 2).unwrap();
        let p = exact_fer(&code, 0.3).unwrap();
        assert!((p - 0.3f64.powi(4)).abs() < 1e-15);
        assert_eq!(failure_spectrum(&code).unwrap(), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn too_long_for_enumeration() {
        let code = reed_muller(1, 5).unwrap();
        assert_eq!(exact_fer(&code, 0.1), Err(Error::TooLongForEnumeration(32)));
    }

    #[test]
    fn seeded_runs_repeat() {
        let code = reed_muller(2, 5).unwrap();
        let cfg = SimConfig::new(2000, 42).with_workers(3);
        let a = simulate_fer(&code, 0.4, &cfg).unwrap();
        let b = simulate_fer(&code, 0.4, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn interval_contains_estimate() {
        let e = FerEstimate::from_counts(0.3, 100, 10);
        assert!(e.ci_low <= e.fer && e.fer <= e.ci_high);
        assert_eq!(FerEstimate::from_counts(0.3, 100, 0).ci_low, 0.0);
        assert_eq!(FerEstimate::from_counts(0.3, 100, 100).ci_high, 1.0);
    }
}
