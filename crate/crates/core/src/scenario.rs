//! Random scenario generation.
//!
//! Distributions follow the simulation setup: target k's angle is uniform on
//! [(k-1) pi/16, k pi/16], distances on [0.1, 0.3] km, speeds on [15, 45] m/s,
//! user distances on [1.5, 4.5] km with the urban path-loss model
//! 74.24 + 16.1 log10(d/1m) dB, and a fixed temporal correlation of 0.96.
//!
//! The published path-loss intercept reads "74.2.4"; we take 74.24 dB, the
//! standard value for this model.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::model::{CommUserModel, EvolutionVariances, TargetState};
use crate::rng;

/// Evolution noise variances used by the scenario generator:
/// (1e-5 rad^2, 0.2 m^2, 0.1 (m/s)^2).
pub const SCENARIO_EVOLUTION: EvolutionVariances = EvolutionVariances {
    angle: 1e-5,
    distance: 0.2,
    velocity: 0.1,
};

/// Tracking error limits are this multiple of the evolution variances.
pub const TRACKING_LIMIT_FACTOR: f64 = 15.0;

/// Temporal correlation coefficient of every user channel.
pub const USER_TEMPORAL_CORR: f64 = 0.96;

/// One sampled system realization: targets plus users.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub targets: Vec<TargetState>,
    pub users: Vec<CommUserModel>,
}

/// Path loss in dB at distance `d` meters: 74.24 + 16.1 log10(d / 1 m).
pub fn path_loss_db(distance_m: f64) -> f64 {
    74.24 + 16.1 * distance_m.log10()
}

/// Draw a full scenario. All randomness comes from `rng`, so one seed fully
/// determines the scenario.
pub fn sample_scenario(cfg: &SystemConfig, rng: &mut impl Rng) -> Scenario {
    let targets = (1..=cfg.num_targets).map(|k| sample_target(k, rng)).collect();
    let users = (0..cfg.num_users).map(|_| sample_user(cfg, rng)).collect();
    Scenario { targets, users }
}

/// Draw target number `k` (1-based; the index selects the angle sector).
pub fn sample_target(k: usize, rng: &mut impl Rng) -> TargetState {
    let sector = std::f64::consts::PI / 16.0;
    TargetState {
        angle: rng.gen_range((k as f64 - 1.0) * sector..k as f64 * sector),
        distance: rng.gen_range(100.0..300.0),
        velocity: rng.gen_range(15.0..45.0),
        heading: rng.gen_range(0.0..std::f64::consts::TAU),
        evolution: SCENARIO_EVOLUTION,
        rcs: 1.0,
        phase_noise: rng.gen_range(0.0..std::f64::consts::TAU),
    }
}

/// Draw one communication user.
pub fn sample_user(cfg: &SystemConfig, rng: &mut impl Rng) -> CommUserModel {
    let distance = rng.gen_range(1500.0..4500.0);
    let beta = 10f64.powf(-path_loss_db(distance) / 10.0);
    let true_channel = rng::complex_gaussian_vector(rng, cfg.num_tx_antennas, beta);
    let snr = cfg.total_power * beta / (cfg.user_noise_power() * cfg.num_users as f64);
    CommUserModel {
        large_scale: beta,
        temporal_corr: USER_TEMPORAL_CORR,
        true_channel,
        min_rate: 0.1 * (1.0 + snr).log2(),
        distance,
    }
}
