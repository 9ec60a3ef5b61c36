//! Domain types, steering vectors, link parameters, and the two
//! channel-aging evolution models (radar state and communication channel).

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::rng;

/// Per-axis variances of the target state evolution noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionVariances {
    /// Angle noise variance, rad^2.
    pub angle: f64,
    /// Distance noise variance, m^2.
    pub distance: f64,
    /// Velocity noise variance, (m/s)^2.
    pub velocity: f64,
}

impl EvolutionVariances {
    pub fn as_array(&self) -> [f64; 3] {
        [self.angle, self.distance, self.velocity]
    }
}

/// Mobility state of one radar target relative to the base station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetState {
    /// Azimuth angle, radians.
    pub angle: f64,
    /// Distance, meters.
    pub distance: f64,
    /// Speed along the heading, m/s.
    pub velocity: f64,
    /// Direction of the velocity (the paper's varphi), radians; known and
    /// constant over a frame.
    pub heading: f64,
    /// Evolution noise variances per block.
    pub evolution: EvolutionVariances,
    /// Radar cross-section, m^2.
    pub rcs: f64,
    /// Random echo phase, radians; redrawn per trial by scenario sampling.
    pub phase_noise: f64,
}

impl TargetState {
    /// Angle between the line of sight and the heading.
    pub fn aspect(&self) -> f64 {
        self.angle - self.heading
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.distance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "target distance must be positive, got {}",
                self.distance
            )));
        }
        let e = &self.evolution;
        if !(e.angle > 0.0 && e.distance > 0.0 && e.velocity > 0.0) {
            return Err(Error::InvalidArgument(
                "evolution variances must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Communication user: large-scale fading, temporal correlation, block-1
/// channel realization, and rate demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommUserModel {
    /// Large-scale channel gain (linear power).
    pub large_scale: f64,
    /// Temporal correlation coefficient between consecutive blocks, in [0, 1].
    pub temporal_corr: f64,
    /// Channel realization in the first block, length L_t.
    pub true_channel: DVector<Complex64>,
    /// Minimum rate demand, bits/s/Hz.
    pub min_rate: f64,
    /// Distance from the base station, meters (kept for diagnostics).
    pub distance: f64,
}

impl CommUserModel {
    /// MMSE estimation quality factor for a training allocation with power
    /// `p0` spread over `b0` subcarriers. Lies in (0, large_scale) for any
    /// finite allocation and increases with both p0*b0 and M1.
    pub fn mmse_quality(&self, p0: f64, b0: f64, cfg: &SystemConfig) -> f64 {
        mmse_quality(
            self.large_scale,
            p0 * b0,
            cfg.training_symbols,
            cfg.num_tx_antennas,
            cfg.user_noise_power(),
        )
    }
}

/// Quality factor lambda = M1 beta^2 p0 B0 / (L_t sigma~ + M1 beta p0 B0).
pub fn mmse_quality(beta: f64, p0b0: f64, m1: usize, lt: usize, noise_power: f64) -> f64 {
    let num = m1 as f64 * beta * beta * p0b0;
    let den = lt as f64 * noise_power + m1 as f64 * beta * p0b0;
    num / den
}

/// Round-trip radar link parameters for one target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadarLink {
    /// Two-way propagation attenuation (linear amplitude).
    pub attenuation: f64,
    /// Round-trip delay, seconds.
    pub delay: f64,
    /// Doppler shift, Hz.
    pub doppler: f64,
}

/// Unit-norm steering vector for a half-wavelength uniform linear array;
/// element l is exp(-j pi l sin(angle)) / sqrt(L).
pub fn steering_vector(angle: f64, num_elements: usize) -> DVector<Complex64> {
    assert!(num_elements >= 1, "steering vector needs at least one element");
    let scale = 1.0 / (num_elements as f64).sqrt();
    let phase_step = -std::f64::consts::PI * angle.sin();
    DVector::from_fn(num_elements, |l, _| {
        Complex64::from_polar(scale, phase_step * l as f64)
    })
}

/// Attenuation, delay, and Doppler for a target state.
///
/// attenuation^2 = c0^2 rcs / ((4 pi)^3 f_c^2 d^4), delay = 2 d / c0, and
/// doppler = 2 v cos(angle - heading) f_c / c0.
pub fn derive_radar_link(state: &TargetState, cfg: &SystemConfig) -> Result<RadarLink> {
    if !(state.distance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "distance must be positive, got {}",
            state.distance
        )));
    }
    let c0 = cfg.light_speed;
    let four_pi = 4.0 * std::f64::consts::PI;
    let att_sq = c0 * c0 * state.rcs
        / (four_pi.powi(3) * cfg.carrier_freq * cfg.carrier_freq * state.distance.powi(4));
    Ok(RadarLink {
        attenuation: att_sq.sqrt(),
        delay: 2.0 * state.distance / c0,
        doppler: 2.0 * state.velocity * state.aspect().cos() * cfg.carrier_freq / c0,
    })
}

/// Noise-free exact one-block state evolution (law of cosines/sines).
pub fn evolve_state_exact_mean(state: &TargetState, block_duration: f64) -> Result<TargetState> {
    state.validate()?;
    let step = state.velocity * block_duration;
    let aspect = state.aspect();
    let d_sq = state.distance * state.distance + step * step
        - 2.0 * state.distance * step * aspect.cos();
    if d_sq <= 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "evolved squared distance is {d_sq}"
        )));
    }
    let d_new = d_sq.sqrt();
    let sin_delta = step * aspect.sin() / d_new;
    if sin_delta.abs() > 1.0 {
        return Err(Error::DegenerateGeometry(format!(
            "angle update sine out of range: {sin_delta}"
        )));
    }
    Ok(TargetState {
        angle: state.angle + sin_delta.asin(),
        distance: d_new,
        velocity: state.velocity,
        ..state.clone()
    })
}

/// Exact one-block evolution with additive Gaussian evolution noise.
pub fn evolve_state_exact(
    state: &TargetState,
    block_duration: f64,
    rng: &mut impl Rng,
) -> Result<TargetState> {
    let mean = evolve_state_exact_mean(state, block_duration)?;
    Ok(add_evolution_noise(mean, rng))
}

/// Noise-free linearized one-block state evolution (first-order model).
pub fn evolve_state_linearized_mean(state: &TargetState, block_duration: f64) -> TargetState {
    let aspect = state.aspect();
    let step = state.velocity * block_duration;
    TargetState {
        angle: state.angle + step * aspect.sin() / state.distance,
        distance: state.distance - step * aspect.cos(),
        velocity: state.velocity,
        ..state.clone()
    }
}

/// Linearized one-block evolution with additive Gaussian evolution noise.
pub fn evolve_state_linearized(
    state: &TargetState,
    block_duration: f64,
    rng: &mut impl Rng,
) -> TargetState {
    add_evolution_noise(evolve_state_linearized_mean(state, block_duration), rng)
}

fn add_evolution_noise(mut state: TargetState, rng: &mut impl Rng) -> TargetState {
    state.angle += rng::gaussian(rng, state.evolution.angle);
    state.distance += rng::gaussian(rng, state.evolution.distance);
    state.velocity += rng::gaussian(rng, state.evolution.velocity);
    state
}

/// One-block aging of a communication channel:
/// h_n = rho h_{n-1} + sqrt(1 - rho^2) e with e ~ CN(0, beta I).
pub fn age_comm_channel(
    h_prev: &DVector<Complex64>,
    rho: f64,
    beta: f64,
    rng: &mut impl Rng,
) -> DVector<Complex64> {
    assert!((0.0..=1.0).contains(&rho), "correlation must be in [0, 1]");
    let innovation_scale = (1.0 - rho * rho).sqrt();
    DVector::from_fn(h_prev.len(), |i, _| {
        rho * h_prev[i] + innovation_scale * rng::complex_gaussian(rng, beta)
    })
}
