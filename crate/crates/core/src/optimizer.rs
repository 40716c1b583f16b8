//! Closed-form solvers for the pinching-antenna position and for the joint
//! BS-power / relay-gain allocation, plus the end-to-end pipeline that
//! assembles the minimum total power for one user.

use serde::Serialize;

use crate::config::{SystemConfig, UePosition};
use crate::error::{invalid, Error, Result};
use crate::model::{self, ChannelGains};

/// Placement objective e^(−α x) / ((x_UE − x)² + y_UE² + d²).
///
/// Defined on all of ℝ; it is |g2|² up to the constant factor c²/(16π²f²).
pub fn pin_objective(config: &SystemConfig, ue: &UePosition, x_m: f64) -> f64 {
    (-config.waveguide_attenuation_per_m * x_m).exp() / model::pin_ue_distance_sq(config, ue, x_m)
}

/// Stationary points of the placement objective.
///
/// With u = x_UE − x the stationarity condition is α u² − 2u + α C = 0.
/// `x1_m` is the local minimum and `x2_m` the local maximum; both are present
/// iff the discriminant is nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryAnalysis {
    pub delta: f64,
    pub c_const: f64,
    pub x1_m: Option<f64>,
    pub x2_m: Option<f64>,
}

pub fn stationary_points(config: &SystemConfig, ue: &UePosition) -> Result<StationaryAnalysis> {
    let alpha = config.waveguide_attenuation_per_m;
    if alpha == 0.0 {
        return Err(Error::NoStationaryAnalysis);
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid(format!("waveguide attenuation must be >= 0, got {alpha}")));
    }
    let d = config.waveguide_height_m;
    let c_const = ue.y() * ue.y() + d * d;
    let a2c = alpha * alpha * c_const;
    let delta = 4.0 - 4.0 * a2c;
    if delta < 0.0 {
        return Ok(StationaryAnalysis {
            delta,
            c_const,
            x1_m: None,
            x2_m: None,
        });
    }
    let s = (1.0 - a2c).max(0.0).sqrt();
    // Larger root u = (1 + s)/α; smaller root written as αC/(1 + s) to avoid
    // cancellation when αC is small.
    let u_large = (1.0 + s) / alpha;
    let u_small = alpha * c_const / (1.0 + s);
    Ok(StationaryAnalysis {
        delta,
        c_const,
        x1_m: Some(ue.x() - u_large),
        x2_m: Some(ue.x() - u_small),
    })
}

/// Position in [0, L] maximising |g2|².
///
/// Returns 0 when the objective is decreasing over the whole waveguide (no
/// stationary point, or the local maximum lies at or before the feed).
/// Otherwise the global maximum on [0, L] is one of the feed point or the
/// local maximum clamped to L; ties go to the feed.
pub fn optimal_pin_position(config: &SystemConfig, ue: &UePosition) -> Result<f64> {
    config.validate()?;
    let length = config.waveguide_length_m;
    if config.waveguide_attenuation_per_m == 0.0 {
        return Ok(ue.x().clamp(0.0, length));
    }
    let analysis = stationary_points(config, ue)?;
    let x2 = match analysis.x2_m {
        None => return Ok(0.0),
        Some(x2) if x2 <= 0.0 => return Ok(0.0),
        Some(x2) => x2,
    };
    let candidate = x2.min(length);
    if pin_objective(config, ue, 0.0) >= pin_objective(config, ue, candidate) {
        Ok(0.0)
    } else {
        Ok(candidate)
    }
}

/// BS power, relay gain and minimum weighted cost from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerAllocation {
    pub p1_w: f64,
    pub beta_sq: f64,
    pub j_star_w: f64,
}

/// Minimum BS power below which no relay gain meets the SNR target,
/// γ₀σ_R²/|g1|².
pub fn feasibility_floor_w(gains: &ChannelGains, snr_target: f64) -> f64 {
    snr_target * gains.sigma_r_sq_w / gains.g1_sq
}

pub fn optimal_power_allocation(gains: &ChannelGains, config: &SystemConfig) -> Result<PowerAllocation> {
    let gains = ChannelGains::new(gains.g1_sq, gains.g2_sq, gains.sigma_r_sq_w, gains.sigma_ue_sq_w)?;
    let gamma = config.snr_target_linear;
    let eta = config.pa_efficiency;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(invalid(format!("snr target must be > 0, got {gamma}")));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(invalid(format!("pa efficiency must lie in (0, 1], got {eta}")));
    }

    let sigma_r = gains.sigma_r_sq_w.sqrt();
    let sigma_ue = gains.sigma_ue_sq_w.sqrt();
    // σ_R σ_UE / (|g1||g2|), formed as a product of two ratios so the four
    // small factors never multiply together.
    let cross = (sigma_r / gains.g1_sq.sqrt()) * (sigma_ue / gains.g2_sq.sqrt());
    let gg1 = gamma * (gamma + 1.0);

    let floor = feasibility_floor_w(&gains, gamma);
    let p1_w = floor + cross * (gg1 / eta).sqrt();
    let beta_sq = sigma_ue / (gains.g1_sq.sqrt() * gains.g2_sq.sqrt() * sigma_r) * (gamma * eta / (gamma + 1.0)).sqrt();
    let j_star_w = eta * floor + gamma * gains.sigma_ue_sq_w / gains.g2_sq + 2.0 * cross * (eta * gg1).sqrt();

    Ok(PowerAllocation {
        p1_w,
        beta_sq,
        j_star_w,
    })
}

/// Full optimum for one user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSolution {
    pub x_pin_m: f64,
    pub p1_w: f64,
    pub beta_sq: f64,
    pub p2_w: f64,
    pub j_star_w: f64,
    pub total_power_w: f64,
    pub feasible: bool,
    pub gains: ChannelGains,
}

/// Assemble a [`PowerSolution`] from already-computed gains.
pub fn solve_with_gains(config: &SystemConfig, gains: &ChannelGains, x_pin_m: f64) -> Result<PowerSolution> {
    let alloc = optimal_power_allocation(gains, config)?;
    let p2_w = model::relay_tx_power_w(alloc.p1_w, alloc.beta_sq, gains)?;
    let total_power_w = model::total_power_w(alloc.p1_w, alloc.beta_sq, gains, config)?;
    Ok(PowerSolution {
        x_pin_m,
        p1_w: alloc.p1_w,
        beta_sq: alloc.beta_sq,
        p2_w,
        j_star_w: alloc.j_star_w,
        total_power_w,
        feasible: true,
        gains: *gains,
    })
}

/// Optimal placement, then optimal power allocation for that placement.
pub fn solve(config: &SystemConfig, ue: &UePosition) -> Result<PowerSolution> {
    let x_pin = optimal_pin_position(config, ue)?;
    let gains = ChannelGains::for_pin(config, ue, x_pin)?;
    solve_with_gains(config, &gains, x_pin)
}
