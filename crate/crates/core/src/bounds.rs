//! Tracking performance bounds.
//!
//! Block-1 Cramer-Rao lower bounds in closed form, an independent numeric
//! Fisher-information route to the same bounds, motion Jacobians, the exact
//! aged error-covariance propagation, and its separable approximation.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::model::{evolve_state_linearized_mean, EvolutionVariances, TargetState};

/// Block-1 CRLBs for one target given a training allocation (p_k, B_k, M1).
///
/// `sigma_*` are the numerator constants; `theta`/`distance`/`velocity` are
/// the evaluated bounds, which scale as 1/(p B M1), 1/(p B M1 (B^2-1)), and
/// 1/(p B M1 (M1^2-1)) respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crlb1 {
    pub sigma_theta: f64,
    pub sigma_distance: f64,
    pub sigma_velocity: f64,
    /// Angle MSE bound, rad^2.
    pub theta: f64,
    /// Distance MSE bound, m^2.
    pub distance: f64,
    /// Velocity MSE bound, (m/s)^2. Infinite when the target moves
    /// tangentially (cos(angle - heading) = 0).
    pub velocity: f64,
}

impl Crlb1 {
    pub fn as_array(&self) -> [f64; 3] {
        [self.theta, self.distance, self.velocity]
    }
}

/// Closed-form block-1 CRLBs for `state` under training power `p_k` spread
/// over `band` subcarriers.
pub fn crlb_block1(
    state: &TargetState,
    p_k: f64,
    band: usize,
    cfg: &SystemConfig,
) -> Result<Crlb1> {
    if band < 2 {
        return Err(Error::InvalidArgument(format!(
            "distance bound needs at least 2 subcarriers, got {band}"
        )));
    }
    let m1 = cfg.training_symbols;
    if m1 < 2 {
        return Err(Error::InvalidArgument(format!(
            "velocity bound needs at least 2 training symbols, got {m1}"
        )));
    }
    if !(p_k > 0.0) {
        return Err(Error::InvalidArgument(format!("power must be positive, got {p_k}")));
    }
    let link = crate::model::derive_radar_link(state, cfg)?;
    let att_sq = link.attenuation * link.attenuation;
    let noise = cfg.bs_noise_power(); // sigma * delta_f
    let lt = cfg.num_tx_antennas as f64;
    let lr = cfg.num_rx_antennas as f64;
    let pi = std::f64::consts::PI;
    let c0 = cfg.light_speed;
    let df = cfg.subcarrier_bandwidth;
    let t_sym = cfg.symbol_duration();
    let cos_angle = state.angle.cos();
    let cos_aspect = state.aspect().cos();

    let sigma_theta =
        6.0 * noise / (att_sq * pi * pi * cos_angle * cos_angle * lt * lr * (lr * lr - 1.0));
    let sigma_distance = 3.0 * c0 * c0 * noise / (8.0 * (pi * df).powi(2) * att_sq * lt * lr);
    let sigma_velocity = 3.0 * c0 * c0 * noise
        / (8.0 * (pi * t_sym).powi(2)
            * cfg.carrier_freq
            * cfg.carrier_freq
            * att_sq
            * cos_aspect
            * cos_aspect
            * lt
            * lr);

    let b = band as f64;
    let m = m1 as f64;
    let denom = p_k * b * m;
    Ok(Crlb1 {
        sigma_theta,
        sigma_distance,
        sigma_velocity,
        theta: sigma_theta / denom,
        distance: sigma_distance / (denom * (b * b - 1.0)),
        velocity: sigma_velocity / (denom * (m * m - 1.0)),
    })
}

/// Numeric route to the block-1 bounds: build the per-measurement 3x3 Fisher
/// matrices over (parameter, amplitude, phase) from analytic partial
/// derivatives of the sampled signal, invert them, scale by the number of
/// independent snapshots, and convert the normalized delay/Doppler bounds to
/// distance/velocity.
pub fn fisher_oracle(
    state: &TargetState,
    p_k: f64,
    band: usize,
    m1: usize,
    cfg: &SystemConfig,
) -> Result<[f64; 3]> {
    if band < 2 || m1 < 2 {
        return Err(Error::InvalidArgument(
            "fisher oracle needs band >= 2 and m1 >= 2".into(),
        ));
    }
    let link = crate::model::derive_radar_link(state, cfg)?;
    let lr = cfg.num_rx_antennas;
    // per-element noise variance when the signal rides on raw array phases
    let noise_var = cfg.bs_noise_psd * cfg.subcarrier_bandwidth / (p_k * cfg.num_tx_antennas as f64);

    // The signal per snapshot is alpha * exp(j(phase + c_t * x)) indexed by t;
    // each parameter sees its own index axis and phase slope.
    let theta_slopes: Vec<f64> = (0..lr)
        .map(|l| -(l as f64) * std::f64::consts::PI * state.angle.cos())
        .collect();
    let delay_slopes: Vec<f64> = (0..band).map(|b| b as f64).collect();
    let doppler_slopes: Vec<f64> = (0..m1).map(|m| m as f64).collect();

    let var_theta = single_axis_bound(&theta_slopes, link.attenuation, state.phase_noise, noise_var)?
        / (m1 * band) as f64;
    let var_delay = single_axis_bound(&delay_slopes, link.attenuation, state.phase_noise, noise_var)?
        / (m1 * lr) as f64;
    let var_doppler =
        single_axis_bound(&doppler_slopes, link.attenuation, state.phase_noise, noise_var)?
            / (band * lr) as f64;

    // chain rules: tau_bar = 4 pi delta_f d / c0, v_bar = 4 pi T f_c cos(aspect) v / c0
    let c0 = cfg.light_speed;
    let d_scale = c0 / (4.0 * std::f64::consts::PI * cfg.subcarrier_bandwidth);
    let v_scale = c0
        / (4.0 * std::f64::consts::PI * cfg.symbol_duration() * cfg.carrier_freq
            * state.aspect().cos());
    Ok([
        var_theta,
        var_delay * d_scale * d_scale,
        var_doppler * v_scale * v_scale,
    ])
}

/// CRLB for the phase-slope parameter of s_t = alpha e^{j(phi + c_t x)} in
/// complex white noise, with amplitude and phase as nuisance parameters.
fn single_axis_bound(slopes: &[f64], amplitude: f64, phase: f64, noise_var: f64) -> Result<f64> {
    let mut fisher = Matrix3::zeros();
    for &c in slopes {
        let sig = Complex64::from_polar(amplitude, phase);
        let d_param = Complex64::i() * c * sig;
        let d_amp = sig / amplitude;
        let d_phase = Complex64::i() * sig;
        let partials = [d_param, d_amp, d_phase];
        for i in 0..3 {
            for j in 0..3 {
                fisher[(i, j)] += (partials[i].conj() * partials[j]).re;
            }
        }
    }
    fisher *= 2.0 / noise_var;
    let inv = fisher.try_inverse().ok_or_else(|| {
        Error::DegenerateGeometry("singular Fisher information matrix".into())
    })?;
    Ok(inv[(0, 0)])
}

/// Jacobian of the linearized one-block state evolution, evaluated at
/// `state_hat` over a block of `block_duration` seconds.
pub fn jacobian(state_hat: &TargetState, block_duration: f64) -> Matrix3<f64> {
    let aspect = state_hat.aspect();
    let (sin_a, cos_a) = aspect.sin_cos();
    let v = state_hat.velocity;
    let d = state_hat.distance;
    let t = block_duration;
    Matrix3::new(
        1.0 + v * t / d * cos_a,
        -v * t / (d * d) * sin_a,
        t / d * sin_a,
        v * t * sin_a,
        1.0,
        -t * cos_a,
        0.0,
        0.0,
        1.0,
    )
}

/// Noise-free predicted trajectory from a block-1 state: states for blocks
/// 1..=n_blocks under the linearized evolution model.
pub fn predict_trajectory(initial: &TargetState, block_duration: f64, n_blocks: usize) -> Vec<TargetState> {
    let mut out = Vec::with_capacity(n_blocks);
    out.push(initial.clone());
    for _ in 1..n_blocks {
        let next = evolve_state_linearized_mean(out.last().unwrap(), block_duration);
        out.push(next);
    }
    out
}

/// Tracking error covariance bound in a given block.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCovariance {
    /// 3x3 symmetric PSD matrix over (angle, distance, velocity).
    pub matrix: Matrix3<f64>,
    /// Block index n >= 1.
    pub block: usize,
}

impl ErrorCovariance {
    /// Diagonal (angle, distance, velocity) bounds.
    pub fn diagonal(&self) -> [f64; 3] {
        [self.matrix[(0, 0)], self.matrix[(1, 1)], self.matrix[(2, 2)]]
    }
}

/// Exact aged covariance: the block-1 bound pushed through the per-block
/// motion Jacobians plus accumulated evolution noise,
/// E_n = G~ D G~^T + sum_i G- Sigma G-^T.
///
/// `trajectory` must supply the predicted states for blocks 1..=n-1.
/// For n = 1 this returns the block-1 bound itself.
pub fn aged_covariance_exact(
    crlb1: &Crlb1,
    trajectory: &[TargetState],
    sigma: &EvolutionVariances,
    n: usize,
    block_duration: f64,
) -> Result<ErrorCovariance> {
    if n == 0 {
        return Err(Error::InvalidArgument("block index must be >= 1".into()));
    }
    let d_mat = Matrix3::from_diagonal(&Vector3::new(crlb1.theta, crlb1.distance, crlb1.velocity));
    if n == 1 {
        return Ok(ErrorCovariance { matrix: d_mat, block: 1 });
    }
    if trajectory.len() < n - 1 {
        return Err(Error::InvalidArgument(format!(
            "trajectory supplies {} states, need {} for block {n}",
            trajectory.len(),
            n - 1
        )));
    }
    let sigma_mat = Matrix3::from_diagonal(&Vector3::new(sigma.angle, sigma.distance, sigma.velocity));
    // suffix products P_i = G_{n-1} ... G_i for i = 1..n-1
    let jac: Vec<Matrix3<f64>> =
        (0..n - 1).map(|i| jacobian(&trajectory[i], block_duration)).collect();
    let mut suffix = vec![Matrix3::identity(); n - 1];
    suffix[n - 2] = jac[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        suffix[i] = suffix[i + 1] * jac[i];
    }
    let mut e = suffix[0] * d_mat * suffix[0].transpose() + sigma_mat;
    for p in suffix.iter().skip(1) {
        e += p * sigma_mat * p.transpose();
    }
    Ok(ErrorCovariance { matrix: e, block: n })
}

/// Approximated aged CRLBs with the separable structure
/// a_n * crlb_theta + b_n * delta_theta (angle) and block-1 bound plus
/// (n-1) * delta (distance, velocity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgedCrlb {
    pub theta: f64,
    pub distance: f64,
    pub velocity: f64,
    /// Angle propagation coefficient a_n.
    pub a_coeff: f64,
    /// Angle noise accumulation coefficient b_n.
    pub b_coeff: f64,
    pub block: usize,
}

/// Angle-bound coefficients (a_n, b_n) from the predicted trajectory.
/// Convention: block 1 is the estimate itself, so (a_1, b_1) = (1, 0).
pub fn aging_coefficients(trajectory: &[TargetState], block_duration: f64, n: usize) -> (f64, f64) {
    if n <= 1 {
        return (1.0, 0.0);
    }
    assert!(trajectory.len() >= n - 1, "trajectory too short for block {n}");
    // suffix sums S_i = sum_{i'=i}^{n-1} (v T / d) cos(aspect)
    let mut s = vec![0.0; n];
    for i in (1..n).rev() {
        let st = &trajectory[i - 1];
        s[i - 1] = s.get(i).copied().unwrap_or(0.0)
            + st.velocity * block_duration / st.distance * st.aspect().cos();
    }
    let a = (1.0 + s[0]) * (1.0 + s[0]);
    let mut b = 1.0;
    for i in 2..n {
        let term = 1.0 + s[i - 1];
        b += term * term;
    }
    (a, b)
}

/// Approximated aged CRLBs for block `n`. For n = 1 this reduces to the
/// block-1 bounds.
pub fn aged_crlb_approx(
    crlb1: &Crlb1,
    trajectory: &[TargetState],
    sigma: &EvolutionVariances,
    n: usize,
    block_duration: f64,
) -> AgedCrlb {
    let (a, b) = aging_coefficients(trajectory, block_duration, n);
    if n <= 1 {
        return AgedCrlb {
            theta: crlb1.theta,
            distance: crlb1.distance,
            velocity: crlb1.velocity,
            a_coeff: 1.0,
            b_coeff: 0.0,
            block: 1,
        };
    }
    let aged = (n - 1) as f64;
    AgedCrlb {
        theta: a * crlb1.theta + b * sigma.angle,
        distance: crlb1.distance + aged * sigma.distance,
        velocity: crlb1.velocity + aged * sigma.velocity,
        a_coeff: a,
        b_coeff: b,
        block: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EvolutionVariances;
    use crate::rng::stream;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn test_state(rng: &mut impl Rng) -> TargetState {
        TargetState {
            angle: rng.gen_range(-1.0..1.0),
            distance: rng.gen_range(100.0..300.0),
            velocity: rng.gen_range(15.0..45.0),
            heading: rng.gen_range(0.0..std::f64::consts::TAU),
            evolution: EvolutionVariances { angle: 1e-5, distance: 0.2, velocity: 0.1 },
            rcs: 1.0,
            phase_noise: rng.gen_range(0.0..std::f64::consts::TAU),
        }
    }

    #[test]
    fn closed_form_matches_fisher_oracle() {
        let cfg = SystemConfig::default();
        let mut rng = stream(21, &[0]);
        for _ in 0..20 {
            let mut s = test_state(&mut rng);
            if s.aspect().cos().abs() < 0.05 {
                s.heading = s.angle; // keep the velocity bound finite
            }
            let p = rng.gen_range(1e-4..1e-1);
            let band = rng.gen_range(4..32);
            let closed = crlb_block1(&s, p, band, &cfg).unwrap();
            let oracle = fisher_oracle(&s, p, band, cfg.training_symbols, &cfg).unwrap();
            for (c, o) in closed.as_array().iter().zip(oracle.iter()) {
                assert_relative_eq!(c, o, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn crlb_scales_inversely_with_power() {
        let cfg = SystemConfig::default();
        let mut rng = stream(22, &[0]);
        let s = test_state(&mut rng);
        let one = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
        let four = crlb_block1(&s, 0.04, 16, &cfg).unwrap();
        for (a, b) in one.as_array().iter().zip(four.as_array().iter()) {
            assert_relative_eq!(a / b, 4.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn broadside_minimizes_angle_bound() {
        let cfg = SystemConfig::default();
        let mut rng = stream(23, &[0]);
        let base = test_state(&mut rng);
        let mut best = f64::INFINITY;
        let mut best_angle = f64::NAN;
        for i in -8..=8 {
            let mut s = base.clone();
            s.angle = i as f64 * 0.15;
            let b = crlb_block1(&s, 0.01, 16, &cfg).unwrap().theta;
            if b < best {
                best = b;
                best_angle = s.angle;
            }
        }
        assert_eq!(best_angle, 0.0);
    }

    #[test]
    fn bounds_ignore_phase_noise() {
        let cfg = SystemConfig::default();
        let mut rng = stream(24, &[0]);
        let mut s = test_state(&mut rng);
        let a = fisher_oracle(&s, 0.01, 16, 60, &cfg).unwrap();
        s.phase_noise = 2.0;
        let b = fisher_oracle(&s, 0.01, 16, 60, &cfg).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
    }

    #[test]
    fn crlb_rejects_degenerate_sizes() {
        let cfg = SystemConfig::default();
        let mut rng = stream(25, &[0]);
        let s = test_state(&mut rng);
        assert!(crlb_block1(&s, 0.01, 1, &cfg).is_err());
        let mut small = cfg.clone();
        small.training_symbols = 1;
        assert!(crlb_block1(&s, 0.01, 16, &small).is_err());
    }

    #[test]
    fn jacobian_is_identity_without_motion() {
        // v = 0 zeroes the state-coupling terms; the zero-duration limit
        // removes the velocity-sensitivity column as well
        let mut rng = stream(26, &[0]);
        let mut s = test_state(&mut rng);
        s.velocity = 0.0;
        let g = jacobian(&s, 0.0);
        assert_relative_eq!((g - Matrix3::identity()).norm(), 0.0, epsilon = 1e-15);
        let s2 = test_state(&mut rng);
        let g2 = jacobian(&s2, 0.0);
        assert_relative_eq!((g2 - Matrix3::identity()).norm(), 0.0, epsilon = 1e-15);
        // with v = 0 but finite duration, only the upper-left block is identity
        let g3 = jacobian(&s, 5.6e-3);
        assert_relative_eq!(g3.fixed_view::<2, 2>(0, 0).norm_squared(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = stream(27, &[0]);
        let dt = 5.6e-3;
        for _ in 0..10 {
            let s = test_state(&mut rng);
            let g = jacobian(&s, dt);
            let f = |st: &TargetState| {
                let n = evolve_state_linearized_mean(st, dt);
                Vector3::new(n.angle, n.distance, n.velocity)
            };
            let base = [s.angle, s.distance, s.velocity];
            for j in 0..3 {
                let h = 1e-6 * base[j].abs().max(1e-3);
                let mut plus = s.clone();
                let mut minus = s.clone();
                match j {
                    0 => {
                        plus.angle += h;
                        minus.angle -= h;
                    }
                    1 => {
                        plus.distance += h;
                        minus.distance -= h;
                    }
                    _ => {
                        plus.velocity += h;
                        minus.velocity -= h;
                    }
                }
                let col = (f(&plus) - f(&minus)) / (2.0 * h);
                for i in 0..3 {
                    let expected = g[(i, j)];
                    if expected.abs() > 1e-9 {
                        assert_relative_eq!(col[i], expected, max_relative = 1e-5);
                    } else {
                        assert!(col[i].abs() < 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobian_determinant_symbolic() {
        // det = (1 + r cos A) + r^2 sin^2 A with r = v T / d, from expanding
        // along the unit third row
        let mut rng = stream(28, &[0]);
        let dt = 5.6e-3;
        for _ in 0..10 {
            let s = test_state(&mut rng);
            let r = s.velocity * dt / s.distance;
            let a = s.aspect();
            let expected = 1.0 + r * a.cos() + r * r * a.sin() * a.sin();
            assert_relative_eq!(jacobian(&s, dt).determinant(), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn aged_covariance_identity_propagation() {
        // in the no-motion limit the Jacobian is the identity, so E_2 = D + Sigma
        let cfg = SystemConfig::default();
        let mut rng = stream(29, &[0]);
        let mut s = test_state(&mut rng);
        s.velocity = 0.0;
        let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
        let traj = predict_trajectory(&s, 0.0, 1);
        let e = aged_covariance_exact(&crlb, &traj, &s.evolution, 2, 0.0).unwrap();
        let expect = Matrix3::from_diagonal(&Vector3::new(
            crlb.theta + s.evolution.angle,
            crlb.distance + s.evolution.distance,
            crlb.velocity + s.evolution.velocity,
        ));
        assert_relative_eq!((e.matrix - expect).norm(), 0.0, epsilon = 1e-18);
    }

    #[test]
    fn aged_covariance_matches_one_step_recursion() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(30, &[0]);
        for _ in 0..5 {
            let s = test_state(&mut rng);
            let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
            let traj = predict_trajectory(&s, dt, 10);
            // independent route: E_{i+1} = G_i E_i G_i^T + Sigma
            let sigma = Matrix3::from_diagonal(&Vector3::new(
                s.evolution.angle,
                s.evolution.distance,
                s.evolution.velocity,
            ));
            let mut e = Matrix3::from_diagonal(&Vector3::new(crlb.theta, crlb.distance, crlb.velocity));
            for n in 2..=10usize {
                let g = jacobian(&traj[n - 2], dt);
                e = g * e * g.transpose() + sigma;
                let closed =
                    aged_covariance_exact(&crlb, &traj, &s.evolution, n, dt).unwrap();
                assert_relative_eq!((closed.matrix - e).norm() / e.norm(), 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn aged_diagonals_nondecreasing_for_distance_velocity() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(31, &[0]);
        let s = test_state(&mut rng);
        let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
        let traj = predict_trajectory(&s, dt, 10);
        let mut prev = aged_covariance_exact(&crlb, &traj, &s.evolution, 1, dt).unwrap().diagonal();
        for n in 2..=10 {
            let cur = aged_covariance_exact(&crlb, &traj, &s.evolution, n, dt).unwrap().diagonal();
            assert!(cur[1] >= prev[1], "distance bound decreased at block {n}");
            assert!(cur[2] >= prev[2], "velocity bound decreased at block {n}");
            prev = cur;
        }
    }

    #[test]
    fn aged_covariance_is_psd() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(32, &[0]);
        for _ in 0..10 {
            let s = test_state(&mut rng);
            let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
            let traj = predict_trajectory(&s, dt, 12);
            for n in 1..=12 {
                let e = aged_covariance_exact(&crlb, &traj, &s.evolution, n, dt).unwrap();
                let eig = e.matrix.symmetric_eigenvalues();
                for v in eig.iter() {
                    assert!(*v >= -1e-12, "negative eigenvalue {v} at block {n}");
                }
            }
        }
    }

    #[test]
    fn approx_empty_sum_conventions() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(33, &[0]);
        let s = test_state(&mut rng);
        let traj = predict_trajectory(&s, dt, 2);
        let (_, b2) = aging_coefficients(&traj, dt, 2);
        assert_eq!(b2, 1.0);
        let (a1, b1) = aging_coefficients(&traj, dt, 1);
        assert_eq!((a1, b1), (1.0, 0.0));
    }

    #[test]
    fn approx_distance_is_block1_plus_accumulated_noise() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(34, &[0]);
        let s = test_state(&mut rng);
        let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
        let traj = predict_trajectory(&s, dt, 10);
        for n in 1..=10usize {
            let aged = aged_crlb_approx(&crlb, &traj, &s.evolution, n, dt);
            let extra = if n == 1 { 0.0 } else { (n - 1) as f64 };
            assert_relative_eq!(
                aged.distance,
                crlb.distance + extra * s.evolution.distance,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn approx_close_to_exact_diagonal() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(35, &[0]);
        for _ in 0..10 {
            let s = test_state(&mut rng);
            let crlb = crlb_block1(&s, 0.01, 16, &cfg).unwrap();
            let traj = predict_trajectory(&s, dt, 10);
            for n in 1..=10 {
                let exact = aged_covariance_exact(&crlb, &traj, &s.evolution, n, dt)
                    .unwrap()
                    .diagonal();
                let approx = aged_crlb_approx(&crlb, &traj, &s.evolution, n, dt);
                for (e, a) in exact.iter().zip([approx.theta, approx.distance, approx.velocity]) {
                    assert!(
                        (e - a).abs() / e <= 0.05,
                        "block {n}: exact {e}, approx {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn approx_depends_on_allocation_only_through_block1() {
        let cfg = SystemConfig::default();
        let dt = cfg.block_duration();
        let mut rng = stream(36, &[0]);
        let s = test_state(&mut rng);
        let traj = predict_trajectory(&s, dt, 8);
        // two allocations with equal p B (B^2 - 1) give identical distance bounds
        let b1 = 16usize;
        let b2 = 24usize;
        let pb1 = 0.02 * 16.0 * (16.0f64 * 16.0 - 1.0);
        let p2 = pb1 / (24.0 * (24.0f64 * 24.0 - 1.0));
        let c1 = crlb_block1(&s, 0.02, b1, &cfg).unwrap();
        let c2 = crlb_block1(&s, p2, b2, &cfg).unwrap();
        for n in 2..=8 {
            let a1 = aged_crlb_approx(&c1, &traj, &s.evolution, n, dt);
            let a2 = aged_crlb_approx(&c2, &traj, &s.evolution, n, dt);
            assert_relative_eq!(a1.distance, a2.distance, max_relative = 1e-12);
        }
    }
}
