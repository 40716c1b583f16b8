//! Link-level physical model: free-space propagation, the horn-antenna
//! BS–relay hop, the waveguide-fed pinching-antenna hop, thermal noise,
//! the amplify-and-forward end-to-end SNR and power accounting.
//!
//! Every function here is pure and works in linear SI units.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::{SystemConfig, UePosition};
use crate::error::{invalid, Error, Result};
use crate::units::db_to_linear;

pub const BOLTZMANN_J_PER_K: f64 = 1.380649e-23;
pub const REFERENCE_TEMPERATURE_K: f64 = 290.0;

/// Thermal noise power kT₀B·F in watts.
pub fn noise_power_w(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz.is_finite() && bandwidth_hz > 0.0) {
        return Err(invalid(format!("bandwidth must be > 0, got {bandwidth_hz}")));
    }
    Ok(BOLTZMANN_J_PER_K * REFERENCE_TEMPERATURE_K * bandwidth_hz * db_to_linear(noise_figure_db))
}

/// c²/(16π²f²d²) with the exact speed of light.
pub fn free_space_gain(distance_m: f64, frequency_hz: f64) -> Result<f64> {
    free_space_gain_with(distance_m, frequency_hz, crate::config::SPEED_OF_LIGHT_M_S)
}

pub(crate) fn free_space_gain_with(distance_m: f64, frequency_hz: f64, c: f64) -> Result<f64> {
    if !(distance_m.is_finite() && distance_m > 0.0) {
        return Err(invalid(format!("distance must be > 0, got {distance_m}")));
    }
    if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
        return Err(invalid(format!("frequency must be > 0, got {frequency_hz}")));
    }
    let wavelength_over_4pi_d = c / (4.0 * PI * frequency_hz * distance_m);
    Ok(wavelength_over_4pi_d * wavelength_over_4pi_d)
}

/// |g1|² = Gtx · Grx · h1(d₁).
pub fn bs_relay_gain(config: &SystemConfig) -> Result<f64> {
    let antennas = db_to_linear(config.horn_gain_tx_dbi) * db_to_linear(config.horn_gain_rx_dbi);
    let h1 = free_space_gain_with(
        config.bs_relay_distance_m,
        config.carrier_frequency_hz,
        config.speed_of_light_m_s,
    )?;
    Ok(antennas * h1)
}

/// Squared distance from a pinching antenna at `(x_pin, 0, d)` to the UE at
/// `(x_ue, y_ue, 0)`.
pub fn pin_ue_distance_sq(config: &SystemConfig, ue: &UePosition, x_pin_m: f64) -> f64 {
    let dx = ue.x() - x_pin_m;
    let d = config.waveguide_height_m;
    dx * dx + ue.y() * ue.y() + d * d
}

/// |g2|²: waveguide attenuation up to `x_pin`, then free space to the UE.
pub fn relay_ue_gain(config: &SystemConfig, ue: &UePosition, x_pin_m: f64) -> Result<f64> {
    let length = config.waveguide_length_m;
    if !(0.0..=length).contains(&x_pin_m) {
        return Err(Error::Domain {
            name: "x_pin_m",
            value: x_pin_m,
            lo: 0.0,
            hi: length,
        });
    }
    let distance = pin_ue_distance_sq(config, ue, x_pin_m).sqrt();
    let fs = free_space_gain_with(distance, config.carrier_frequency_hz, config.speed_of_light_m_s)?;
    Ok((-config.waveguide_attenuation_per_m * x_pin_m).exp() * fs)
}

/// Relay-side noise power, honouring the override when present.
pub fn relay_noise_power_w(config: &SystemConfig) -> Result<f64> {
    match config.relay_noise_power_w {
        Some(p) => Ok(p),
        None => noise_power_w(config.bandwidth_hz, config.noise_figure_db),
    }
}

/// UE-side noise power, honouring the override when present.
pub fn ue_noise_power_w(config: &SystemConfig) -> Result<f64> {
    match config.ue_noise_power_w {
        Some(p) => Ok(p),
        None => noise_power_w(config.bandwidth_hz, config.noise_figure_db),
    }
}

/// Channel power gains and noise powers of one scenario instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelGains {
    pub g1_sq: f64,
    pub g2_sq: f64,
    pub sigma_r_sq_w: f64,
    pub sigma_ue_sq_w: f64,
}

impl ChannelGains {
    pub fn new(g1_sq: f64, g2_sq: f64, sigma_r_sq_w: f64, sigma_ue_sq_w: f64) -> Result<Self> {
        for (name, v) in [
            ("g1_sq", g1_sq),
            ("g2_sq", g2_sq),
            ("sigma_r_sq_w", sigma_r_sq_w),
            ("sigma_ue_sq_w", sigma_ue_sq_w),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(Self {
            g1_sq,
            g2_sq,
            sigma_r_sq_w,
            sigma_ue_sq_w,
        })
    }

    /// Gains for the pinching-antenna link with the antenna at `x_pin_m`.
    pub fn for_pin(config: &SystemConfig, ue: &UePosition, x_pin_m: f64) -> Result<Self> {
        Self::new(
            bs_relay_gain(config)?,
            relay_ue_gain(config, ue, x_pin_m)?,
            relay_noise_power_w(config)?,
            ue_noise_power_w(config)?,
        )
    }

    /// Noise-limited first-hop SNR per watt of BS power, |g1|²/σ_R².
    pub fn first_hop_snr_per_watt(&self) -> f64 {
        self.g1_sq / self.sigma_r_sq_w
    }
}

fn check_powers(p1_w: f64, beta_sq: f64) -> Result<()> {
    if !(p1_w.is_finite() && p1_w >= 0.0) {
        return Err(invalid(format!("p1 must be finite and >= 0, got {p1_w}")));
    }
    if !(beta_sq.is_finite() && beta_sq >= 0.0) {
        return Err(invalid(format!("beta_sq must be finite and >= 0, got {beta_sq}")));
    }
    Ok(())
}

/// End-to-end AF SNR P1β²|g1|²|g2|² / (σ_UE² + β²|g2|²σ_R²).
pub fn af_snr(p1_w: f64, beta_sq: f64, gains: &ChannelGains) -> Result<f64> {
    check_powers(p1_w, beta_sq)?;
    let num = p1_w * beta_sq * gains.g1_sq * gains.g2_sq;
    let den = gains.sigma_ue_sq_w + beta_sq * gains.g2_sq * gains.sigma_r_sq_w;
    Ok(num / den)
}

/// Relay radiated power P2 = β²(P1|g1|² + σ_R²).
pub fn relay_tx_power_w(p1_w: f64, beta_sq: f64, gains: &ChannelGains) -> Result<f64> {
    check_powers(p1_w, beta_sq)?;
    Ok(beta_sq * (p1_w * gains.g1_sq + gains.sigma_r_sq_w))
}

/// Weighted cost J = η·P1 + β²(P1|g1|² + σ_R²) minimised by the power allocation.
pub fn weighted_cost(p1_w: f64, beta_sq: f64, gains: &ChannelGains, pa_efficiency: f64) -> Result<f64> {
    Ok(pa_efficiency * p1_w + relay_tx_power_w(p1_w, beta_sq, gains)?)
}

/// Total consumed power: BS transmit power, relay PA draw, relay circuit
/// power and the BS RF chain.
pub fn total_power_w(p1_w: f64, beta_sq: f64, gains: &ChannelGains, config: &SystemConfig) -> Result<f64> {
    let p2 = relay_tx_power_w(p1_w, beta_sq, gains)?;
    Ok(p1_w + p2 / config.pa_efficiency + config.relay_circuit_power_w + config.bs_rf_chain_power_w)
}
