//! Monte Carlo verification of signatures and importance indices.
//!
//! Draws i.i.d. component lifetimes, replays the failure order against the
//! structure, and tallies which failure (by rank and by component) takes
//! the system down. Estimates converge on the signature and the
//! Barlow-Proschan index respectively, whatever the lifetime distribution.
//!
//! Reproducibility: trials are processed in fixed chunks of `CHUNK` trials.
//! Chunk `c` uses a ChaCha12 stream seeded with `splitmix64(seed ^ (c * PHI))`,
//! so a run is fully determined by `(seed, trials)` and chunks could be
//! evaluated independently without changing any result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Structure, Subset};

/// Name and provenance of the generator, pinned into every report.
pub const RNG_PIN: &str = "ChaCha12 (rand_chacha 0.3, fixed 65536-trial chunks)";

const CHUNK: u64 = 65_536;
const PHI: u64 = 0x9E37_79B9_7F4A_7C15;

/// Component lifetime distribution. The signature and the index are
/// distribution-free, so the choice only affects noise.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LifetimeModel {
    Uniform01,
    Exponential { rate: f64 },
}

/// Simulation parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub lifetime_model: LifetimeModel,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidSimConfig("trials must be >= 1".to_string()));
        }
        if let LifetimeModel::Exponential { rate } = self.lifetime_model {
            if !(rate > 0.0 && rate.is_finite()) {
                return Err(Error::InvalidSimConfig(format!(
                    "exponential rate must be positive and finite, got {rate}"
                )));
            }
        }
        Ok(())
    }
}

/// Simulation output: estimates, binomial standard errors, and enough of
/// the configuration to reproduce the run.
#[derive(Clone, Debug, Serialize)]
pub struct SimReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub lifetime_model: LifetimeModel,
    pub rng: String,
    pub est_signature: Vec<f64>,
    pub se_signature: Vec<f64>,
    pub est_bp: Vec<f64>,
    pub se_bp: Vec<f64>,
    pub tie_redraws: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(PHI);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn draw_lifetime<R: Rng>(rng: &mut R, model: LifetimeModel) -> f64 {
    let u: f64 = rng.gen();
    match model {
        LifetimeModel::Uniform01 => u,
        // Inverse transform; 1 - u is in (0, 1], so the log is finite.
        LifetimeModel::Exponential { rate } => -(1.0 - u).ln() / rate,
    }
}

/// Runs the simulation. Requires a semicoherent structure small enough to
/// enumerate; results are deterministic given the config.
pub fn simulate(s: &Structure, cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    s.require_semicoherent()?;
    let table = s.truth_table()?;
    let n = s.n();

    let mut rank_hits = vec![0u64; n];
    let mut component_hits = vec![0u64; n];
    let mut tie_redraws = 0u64;

    let mut lifetimes = vec![0.0f64; n];
    let mut order: Vec<usize> = (0..n).collect();

    let chunk_count = cfg.trials.div_ceil(CHUNK);
    for chunk in 0..chunk_count {
        let mut rng = ChaCha12Rng::seed_from_u64(splitmix64(cfg.seed ^ chunk.wrapping_mul(PHI)));
        let in_chunk = (cfg.trials - chunk * CHUNK).min(CHUNK);
        for _ in 0..in_chunk {
            // Redraw the whole trial on a tie; exact ties contradict the
            // continuous-lifetime model and happen only through rounding.
            loop {
                for slot in lifetimes.iter_mut() {
                    *slot = draw_lifetime(&mut rng, cfg.lifetime_model);
                }
                order.sort_unstable_by(|&a, &b| lifetimes[a].total_cmp(&lifetimes[b]));
                let tied = order.windows(2).any(|w| lifetimes[w[0]] == lifetimes[w[1]]);
                if !tied {
                    break;
                }
                tie_redraws += 1;
            }

            let mut surviving = Subset::full(n);
            for (rank0, &failed) in order.iter().enumerate() {
                surviving = Subset::from_bits(surviving.bits() & !(1u64 << failed));
                if !table.get(surviving) {
                    // The system lifetime is this component's lifetime,
                    // the (rank0+1)-th order statistic by construction.
                    rank_hits[rank0] += 1;
                    component_hits[failed] += 1;
                    break;
                }
            }
        }
    }

    debug_assert_eq!(rank_hits.iter().sum::<u64>(), cfg.trials);

    let estimate =
        |hits: &[u64]| -> Vec<f64> { hits.iter().map(|&h| h as f64 / cfg.trials as f64).collect() };
    let stderr = |est: &[f64]| -> Vec<f64> {
        est.iter()
            .map(|&p| (p * (1.0 - p) / cfg.trials as f64).sqrt())
            .collect()
    };
    let est_signature = estimate(&rank_hits);
    let est_bp = estimate(&component_hits);
    let se_signature = stderr(&est_signature);
    let se_bp = stderr(&est_bp);

    Ok(SimReport {
        n,
        trials: cfg.trials,
        seed: cfg.seed,
        lifetime_model: cfg.lifetime_model,
        rng: RNG_PIN.to_string(),
        est_signature,
        se_signature,
        est_bp,
        se_bp,
        tie_redraws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::importance::bp_shapley_oracle;
    use crate::rational::to_f64;
    use crate::signature::boland_signature;

    fn bridge() -> Structure {
        Structure::parse("x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4", 5).unwrap()
    }

    fn config(trials: u64, seed: u64, model: LifetimeModel) -> SimConfig {
        SimConfig {
            trials,
            seed,
            lifetime_model: model,
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let cfg = config(20_000, 7, LifetimeModel::Uniform01);
        let a = simulate(&bridge(), &cfg).unwrap();
        let b = simulate(&bridge(), &cfg).unwrap();
        assert_eq!(a.est_signature, b.est_signature);
        assert_eq!(a.est_bp, b.est_bp);
        assert_eq!(a.tie_redraws, b.tie_redraws);

        let c = simulate(&bridge(), &config(20_000, 8, LifetimeModel::Uniform01)).unwrap();
        assert_ne!(a.est_signature, c.est_signature);
    }

    #[test]
    fn seeding_policy_is_frozen() {
        // Golden values for the documented chunked-ChaCha12 policy; the
        // trial count crosses one chunk boundary. Any change to the
        // generator, the chunk size, or the seed derivation shows up here.
        let report = simulate(&bridge(), &config(100_000, 1, LifetimeModel::Uniform01)).unwrap();
        assert_eq!(
            report.est_signature,
            vec![0.0, 0.19911, 0.59876, 0.20213, 0.0]
        );
        assert_eq!(
            report.est_bp,
            vec![0.23392, 0.23478, 0.06595, 0.23302, 0.23233]
        );
        assert_eq!(report.tie_redraws, 0);
    }

    #[test]
    fn series_pair_first_failure_always_fatal() {
        let s = Structure::parse("x1&x2", 2).unwrap();
        let report = simulate(&s, &config(5_000, 3, LifetimeModel::Uniform01)).unwrap();
        assert_eq!(report.est_signature, vec![1.0, 0.0]);
    }

    #[test]
    fn bridge_estimates_near_exact() {
        let cfg = config(200_000, 42, LifetimeModel::Uniform01);
        let report = simulate(&bridge(), &cfg).unwrap();
        let exact_sig = boland_signature(&bridge()).unwrap();
        for (k, exact) in exact_sig.values().iter().enumerate() {
            let diff = (report.est_signature[k] - to_f64(exact)).abs();
            let tolerance = 4.0 * report.se_signature[k].max(1e-9);
            assert!(diff <= tolerance, "signature coordinate {k}: off by {diff}");
        }
        let exact_bp = bp_shapley_oracle(&bridge()).unwrap();
        for (k, exact) in exact_bp.values().iter().enumerate() {
            let diff = (report.est_bp[k] - to_f64(exact)).abs();
            let tolerance = 4.0 * report.se_bp[k].max(1e-9);
            assert!(diff <= tolerance, "bp coordinate {k}: off by {diff}");
        }
    }

    #[test]
    fn exponential_model_agrees_with_uniform() {
        let trials = 100_000;
        let a = simulate(&bridge(), &config(trials, 11, LifetimeModel::Uniform01)).unwrap();
        let b = simulate(
            &bridge(),
            &config(trials, 11, LifetimeModel::Exponential { rate: 1.0 }),
        )
        .unwrap();
        for k in 0..5 {
            let combined = (a.se_signature[k].powi(2) + b.se_signature[k].powi(2)).sqrt();
            let diff = (a.est_signature[k] - b.est_signature[k]).abs();
            assert!(diff <= 4.0 * combined.max(1e-9), "coordinate {k}");
        }
    }

    #[test]
    fn config_validation() {
        let s = bridge();
        assert!(simulate(&s, &config(0, 1, LifetimeModel::Uniform01)).is_err());
        assert!(simulate(&s, &config(10, 1, LifetimeModel::Exponential { rate: 0.0 })).is_err());
        let broken = Structure::from_table(vec![true, false, false, true], 2).unwrap();
        assert!(simulate(&broken, &config(10, 1, LifetimeModel::Uniform01)).is_err());
    }
}
