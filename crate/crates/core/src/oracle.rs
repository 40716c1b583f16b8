//! Brute-force checks for the closed forms.
//!
//! Placement is checked with an exhaustive grid over [0, L]; power allocation
//! with a grid over the BS power after pinning the relay gain by the active
//! SNR constraint, plus a coarse two-dimensional (P1, β²) grid that does not
//! rely on that reduction at all. Neither route calls into the closed-form
//! solvers; the objectives are evaluated here from their definitions.

use serde::Serialize;

use crate::config::{SystemConfig, UePosition};
use crate::error::{invalid, Result};
use crate::model::{self, ChannelGains};
use crate::optimizer::{self, PowerSolution};

// Placement objective written out from the channel definition.
fn placement_value(config: &SystemConfig, ue: &UePosition, x: f64) -> f64 {
    let dx = ue.x() - x;
    let h = config.waveguide_height_m;
    let dist_sq = dx * dx + ue.y() * ue.y() + h * h;
    (-config.waveguide_attenuation_per_m * x).exp() / dist_sq
}

/// Exhaustive search over x ∈ {0, step, 2·step, …, L}. `L` is always
/// evaluated even when it is not a multiple of `step`. Ties resolve to the
/// smallest x.
pub fn grid_search_pin(config: &SystemConfig, ue: &UePosition, step_m: f64) -> Result<(f64, f64)> {
    let length = config.waveguide_length_m;
    if !(step_m.is_finite() && step_m > 0.0 && step_m <= length) {
        return Err(invalid(format!("grid step must lie in (0, {length}], got {step_m}")));
    }
    let n = (length / step_m).floor() as usize;
    let mut best_x = 0.0;
    let mut best_f = placement_value(config, ue, 0.0);
    for i in 1..=n {
        let x = (i as f64 * step_m).min(length);
        let f = placement_value(config, ue, x);
        if f > best_f {
            best_x = x;
            best_f = f;
        }
    }
    let f = placement_value(config, ue, length);
    if f > best_f {
        best_x = length;
        best_f = f;
    }
    Ok((best_x, best_f))
}

/// Grid over the BS power for [`numeric_power_min`].
///
/// Points are log-spaced in the excess P1 − P1_floor, from `epsilon`·P1_floor
/// up to `p1_max_w` − P1_floor, where P1_floor = γ₀σ_R²/|g1|². After the
/// first pass the grid is re-laid `refinements` times between the neighbours
/// of the incumbent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerGridSpec {
    pub p1_max_w: f64,
    pub points: usize,
    pub epsilon: f64,
    pub refinements: usize,
}

impl PowerGridSpec {
    pub fn new(p1_max_w: f64) -> Self {
        Self {
            p1_max_w,
            points: 10_000,
            epsilon: 1e-6,
            refinements: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerOracleResult {
    pub p1_w: f64,
    pub beta_sq: f64,
    pub j_w: f64,
    /// The minimiser sits on the upper end of the grid; the bound was too
    /// tight or the objective is not what it should be.
    pub on_upper_boundary: bool,
    /// Ratio between adjacent excess-power grid points in the final pass.
    pub resolution: f64,
}

struct Reduced<'a> {
    gains: &'a ChannelGains,
    gamma: f64,
    eta: f64,
}

impl Reduced<'_> {
    fn floor(&self) -> f64 {
        self.gamma * self.gains.sigma_r_sq_w / self.gains.g1_sq
    }

    // Relay gain that makes the SNR constraint tight for BS power floor + excess.
    fn beta_sq(&self, excess: f64) -> f64 {
        self.gamma * self.gains.sigma_ue_sq_w / (self.gains.g2_sq * excess * self.gains.g1_sq)
    }

    fn cost(&self, excess: f64) -> (f64, f64, f64) {
        let p1 = self.floor() + excess;
        let b = self.beta_sq(excess);
        let j = self.eta * p1 + b * (p1 * self.gains.g1_sq + self.gains.sigma_r_sq_w);
        (p1, b, j)
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let span = (hi / lo).ln();
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo * (span * i as f64 / (n - 1) as f64).exp()
        }
    })
}

/// Minimise the weighted cost J = η·P1 + β²(P1|g1|² + σ_R²) over a grid in
/// P1, with β² chosen on each grid point so the SNR constraint holds with
/// equality.
pub fn numeric_power_min(
    gains: &ChannelGains,
    config: &SystemConfig,
    grid: &PowerGridSpec,
) -> Result<PowerOracleResult> {
    let gains = ChannelGains::new(gains.g1_sq, gains.g2_sq, gains.sigma_r_sq_w, gains.sigma_ue_sq_w)?;
    if grid.points < 2 {
        return Err(invalid(format!(
            "power grid needs at least 2 points, got {}",
            grid.points
        )));
    }
    if !(grid.epsilon.is_finite() && grid.epsilon > 0.0) {
        return Err(invalid(format!("grid epsilon must be > 0, got {}", grid.epsilon)));
    }
    let problem = Reduced {
        gains: &gains,
        gamma: config.snr_target_linear,
        eta: config.pa_efficiency,
    };
    let floor = problem.floor();
    let mut lo = grid.epsilon * floor;
    let mut hi = grid.p1_max_w - floor;
    if !(hi.is_finite() && hi > lo) {
        return Err(invalid(format!(
            "empty power grid: p1_max = {} does not exceed the feasibility floor {floor} by more than epsilon",
            grid.p1_max_w
        )));
    }
    let upper = hi;

    let mut best: Option<(f64, f64, f64, f64)> = None; // (excess, p1, beta, j)
    let mut resolution = (hi / lo).powf(1.0 / (grid.points - 1) as f64);
    let mut on_upper = false;
    for pass in 0..=grid.refinements {
        let xs: Vec<f64> = log_grid(lo, hi, grid.points).collect();
        let mut pass_best = 0usize;
        let mut pass_j = f64::INFINITY;
        for (i, &e) in xs.iter().enumerate() {
            let (_, _, j) = problem.cost(e);
            if j < pass_j {
                pass_j = j;
                pass_best = i;
            }
        }
        let e = xs[pass_best];
        let (p1, b, j) = problem.cost(e);
        if best.is_none_or(|(_, _, _, bj)| j < bj) {
            best = Some((e, p1, b, j));
        }
        if pass == 0 {
            on_upper = pass_best + 1 == xs.len() && e >= upper;
        }
        resolution = (hi / lo).powf(1.0 / (grid.points - 1) as f64);
        lo = xs[pass_best.saturating_sub(1)];
        hi = xs[(pass_best + 1).min(xs.len() - 1)];
        if hi <= lo {
            break;
        }
    }
    let (_, p1_w, beta_sq, j_w) = best.expect("grid has at least two points");
    Ok(PowerOracleResult {
        p1_w,
        beta_sq,
        j_w,
        on_upper_boundary: on_upper,
        resolution,
    })
}

/// Coarse two-dimensional search over (P1, β²) on log grids, keeping only
/// points that meet the SNR target. Each refinement re-centres a box a fifth
/// the size (in log coordinates) on the incumbent.
pub fn grid_power_min_2d(
    gains: &ChannelGains,
    config: &SystemConfig,
    p1_range_w: (f64, f64),
    beta_sq_range: (f64, f64),
    points: usize,
    refinements: usize,
) -> Result<PowerOracleResult> {
    let gains = ChannelGains::new(gains.g1_sq, gains.g2_sq, gains.sigma_r_sq_w, gains.sigma_ue_sq_w)?;
    let (p_lo, p_hi) = p1_range_w;
    let (b_lo, b_hi) = beta_sq_range;
    if points < 2 || !(p_lo > 0.0 && p_hi > p_lo && b_lo > 0.0 && b_hi > b_lo) {
        return Err(invalid(
            "2-D power grid needs positive, nonempty ranges and >= 2 points",
        ));
    }
    let gamma = config.snr_target_linear;
    let eta = config.pa_efficiency;

    let (mut lp_lo, mut lp_hi) = (p_lo.ln(), p_hi.ln());
    let (mut lb_lo, mut lb_hi) = (b_lo.ln(), b_hi.ln());
    let mut best: Option<(f64, f64, f64)> = None;
    let mut resolution = f64::NAN;
    for _ in 0..=refinements {
        let dp = (lp_hi - lp_lo) / (points - 1) as f64;
        let db = (lb_hi - lb_lo) / (points - 1) as f64;
        resolution = dp.max(db).exp();
        let mut pass_best: Option<(f64, f64, f64)> = None;
        for i in 0..points {
            let p1 = (lp_lo + dp * i as f64).exp();
            for k in 0..points {
                let b = (lb_lo + db * k as f64).exp();
                if model::af_snr(p1, b, &gains)? < gamma {
                    continue;
                }
                let j = model::weighted_cost(p1, b, &gains, eta)?;
                if pass_best.is_none_or(|(_, _, bj)| j < bj) {
                    pass_best = Some((p1, b, j));
                }
            }
        }
        let Some((p1, b, j)) = pass_best else {
            break;
        };
        if best.is_none_or(|(_, _, bj)| j < bj) {
            best = Some((p1, b, j));
        }
        let half_p = (lp_hi - lp_lo) / 10.0;
        let half_b = (lb_hi - lb_lo) / 10.0;
        let (cp, cb) = (p1.ln(), b.ln());
        lp_lo = (cp - half_p).max(p_lo.ln());
        lp_hi = cp + half_p;
        lb_lo = (cb - half_b).max(b_lo.ln());
        lb_hi = cb + half_b;
    }
    let (p1_w, beta_sq, j_w) = best.ok_or_else(|| invalid("no grid point meets the SNR target; widen the ranges"))?;
    Ok(PowerOracleResult {
        p1_w,
        beta_sq,
        j_w,
        on_upper_boundary: p1_w >= p_hi * (1.0 - 1e-12) || beta_sq >= b_hi * (1.0 - 1e-12),
        resolution,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Position,
    Power,
}

/// Outcome of comparing one closed-form quantity with its oracle.
///
/// For [`OracleKind::Position`] the values are positions in metres and
/// `rel_gap` is the gap as a fraction of the waveguide length. For
/// [`OracleKind::Power`] the values are weighted costs J in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub kind: OracleKind,
    pub closed_form_value: f64,
    pub oracle_value: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub grid_resolution: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Allowed distance between closed-form and grid positions, m.
    pub position_m: f64,
    /// How far (relative) the grid may exceed the closed-form placement
    /// objective before the closed form is declared not optimal.
    pub objective_rel: f64,
    /// Allowed relative gap between J* and the numeric minimum.
    pub power_rel: f64,
    pub grid_step_m: f64,
    pub power_points: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            position_m: 0.01,
            objective_rel: 1e-10,
            power_rel: 1e-3,
            grid_step_m: 1e-3,
            power_points: 10_000,
        }
    }
}

/// Check an arbitrary candidate solution against both oracles.
pub fn verify_solution(
    config: &SystemConfig,
    ue: &UePosition,
    candidate: &PowerSolution,
    tol: &Tolerances,
) -> Result<(OracleReport, OracleReport)> {
    let (x_grid, f_grid) = grid_search_pin(config, ue, tol.grid_step_m)?;
    let x_cf = candidate.x_pin_m;
    let f_cf = placement_value(config, ue, x_cf);
    let pos_gap = (x_cf - x_grid).abs();
    let in_range = (0.0..=config.waveguide_length_m).contains(&x_cf);
    let position = OracleReport {
        kind: OracleKind::Position,
        closed_form_value: x_cf,
        oracle_value: x_grid,
        abs_gap: pos_gap,
        rel_gap: pos_gap / config.waveguide_length_m,
        grid_resolution: tol.grid_step_m,
        passed: in_range && pos_gap <= tol.position_m && f_grid <= f_cf * (1.0 + tol.objective_rel),
    };

    let grid = PowerGridSpec {
        points: tol.power_points,
        ..PowerGridSpec::new(10.0 * candidate.p1_w)
    };
    let numeric = numeric_power_min(&candidate.gains, config, &grid)?;
    let j_cf = candidate.j_star_w;
    let j_gap = (numeric.j_w - j_cf).abs();
    let rel = j_gap / j_cf;
    let power = OracleReport {
        kind: OracleKind::Power,
        closed_form_value: j_cf,
        oracle_value: numeric.j_w,
        abs_gap: j_gap,
        rel_gap: rel,
        grid_resolution: numeric.resolution,
        passed: rel <= tol.power_rel && numeric.j_w >= j_cf * (1.0 - 1e-9) && !numeric.on_upper_boundary,
    };
    Ok((position, power))
}

/// Solve one scenario with the closed forms and check it against both oracles.
pub fn verify_scenario(
    config: &SystemConfig,
    ue: &UePosition,
    tol: &Tolerances,
) -> Result<(OracleReport, OracleReport)> {
    let solution = optimizer::solve(config, ue)?;
    verify_solution(config, ue, &solution, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn toy_config() -> SystemConfig {
        SystemConfig {
            pa_efficiency: 1.0,
            snr_target_linear: 1.0,
            ..SystemConfig::default()
        }
    }

    #[test]
    fn degenerate_grid_is_the_endpoints() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let (x, f) = grid_search_pin(&cfg, &ue, cfg.waveguide_length_m).unwrap();
        let f0 = placement_value(&cfg, &ue, 0.0);
        let fl = placement_value(&cfg, &ue, 30.0);
        assert_eq!(f, f0.max(fl));
        assert_eq!(x, if fl > f0 { 30.0 } else { 0.0 });
    }

    #[test]
    fn grid_finds_default_optimum() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let (x, _) = grid_search_pin(&cfg, &ue, 1e-3).unwrap();
        assert!((x - 14.829855).abs() <= 1e-3);
    }

    #[test]
    fn grid_lossless_is_distance_minimum() {
        let cfg = SystemConfig {
            waveguide_attenuation_per_m: 0.0,
            ..SystemConfig::default()
        };
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let (x, _) = grid_search_pin(&cfg, &ue, 1e-3).unwrap();
        assert!((14.999..=15.001).contains(&x));
    }

    #[test]
    fn grid_rejects_bad_steps() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        assert!(grid_search_pin(&cfg, &ue, 0.0).is_err());
        assert!(grid_search_pin(&cfg, &ue, -1.0).is_err());
        assert!(grid_search_pin(&cfg, &ue, 31.0).is_err());
        assert!(grid_search_pin(&cfg, &ue, f64::NAN).is_err());
    }

    #[test]
    fn grid_ties_go_to_smallest_x() {
        // symmetric lossless objective around x_UE = 15 with step 10: f(10) = f(20)
        let cfg = SystemConfig {
            waveguide_attenuation_per_m: 0.0,
            ..SystemConfig::default()
        };
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let (x, _) = grid_search_pin(&cfg, &ue, 10.0).unwrap();
        assert_eq!(x, 10.0);
    }

    #[test]
    fn numeric_min_symmetric_toy() {
        let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let r = numeric_power_min(&gains, &toy_config(), &PowerGridSpec::new(10.0 * (1.0 + SQRT_2))).unwrap();
        assert!((r.j_w - (2.0 + 2.0 * SQRT_2)).abs() < 1e-9);
        assert!((r.p1_w - (1.0 + SQRT_2)).abs() < 1e-4);
        assert!(!r.on_upper_boundary);
    }

    #[test]
    fn finer_grid_never_worse() {
        let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let coarse = PowerGridSpec {
            points: 100,
            refinements: 0,
            ..PowerGridSpec::new(20.0)
        };
        let fine = PowerGridSpec { points: 9901, ..coarse };
        let jc = numeric_power_min(&gains, &toy_config(), &coarse).unwrap().j_w;
        let jf = numeric_power_min(&gains, &toy_config(), &fine).unwrap().j_w;
        assert!(jf <= jc * (1.0 + 1e-14), "{jf} vs {jc}");
        assert!(jc - (2.0 + 2.0 * SQRT_2) > jf - (2.0 + 2.0 * SQRT_2));
    }

    #[test]
    fn upper_boundary_is_flagged() {
        let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
        // true minimiser is 1 + √2 ≈ 2.41; cap the grid below it
        let r = numeric_power_min(&gains, &toy_config(), &PowerGridSpec::new(1.5)).unwrap();
        assert!(r.on_upper_boundary);
    }

    #[test]
    fn numeric_min_rejects_empty_grids() {
        let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(numeric_power_min(&gains, &toy_config(), &PowerGridSpec::new(0.5)).is_err());
        let one_point = PowerGridSpec {
            points: 1,
            ..PowerGridSpec::new(10.0)
        };
        assert!(numeric_power_min(&gains, &toy_config(), &one_point).is_err());
    }

    #[test]
    fn two_dimensional_grid_symmetric_toy() {
        let gains = ChannelGains::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let r = grid_power_min_2d(&gains, &toy_config(), (1.0, 30.0), (1e-3, 1e3), 150, 6).unwrap();
        let j = 2.0 + 2.0 * SQRT_2;
        assert!(r.j_w >= j * (1.0 - 1e-12));
        assert!((r.j_w - j) / j < 1e-2, "{}", r.j_w);
    }

    #[test]
    fn verify_default_user_passes() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let (pos, pow) = verify_scenario(&cfg, &ue, &Tolerances::default()).unwrap();
        assert!(pos.passed, "{pos:?}");
        assert!(pow.passed, "{pow:?}");
        assert!(pow.oracle_value >= pow.closed_form_value * (1.0 - 1e-9));
    }

    #[test]
    fn verify_catches_perturbed_position() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let mut s = optimizer::solve(&cfg, &ue).unwrap();
        s.x_pin_m += 1.0;
        let (pos, _) = verify_solution(&cfg, &ue, &s, &Tolerances::default()).unwrap();
        assert!(!pos.passed);
        assert!((pos.abs_gap - 1.0).abs() < 2e-3);
    }

    #[test]
    fn verify_catches_perturbed_power() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 15.0, 5.0).unwrap();
        let mut s = optimizer::solve(&cfg, &ue).unwrap();
        s.j_star_w *= 0.98;
        let (_, pow) = verify_solution(&cfg, &ue, &s, &Tolerances::default()).unwrap();
        assert!(!pow.passed);
    }

    #[test]
    fn verify_negative_discriminant_user() {
        let cfg = SystemConfig {
            coverage_y_m: 200.0,
            ..SystemConfig::default()
        };
        let ue = UePosition::new(&cfg, 15.0, 100.0).unwrap();
        let (pos, pow) = verify_scenario(&cfg, &ue, &Tolerances::default()).unwrap();
        assert_eq!(pos.oracle_value, 0.0);
        assert_eq!(pos.closed_form_value, 0.0);
        assert!(pos.passed && pow.passed);
    }

    #[test]
    fn oracle_is_deterministic() {
        let cfg = SystemConfig::default();
        let ue = UePosition::new(&cfg, 3.0, 8.0).unwrap();
        let a = verify_scenario(&cfg, &ue, &Tolerances::default()).unwrap();
        let b = verify_scenario(&cfg, &ue, &Tolerances::default()).unwrap();
        assert_eq!(a, b);
    }
}
