//! Scenario configuration and its flat `key = value` text format.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::units::{parse_quantity, QuantityKind};

pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// All physical constants and scenario parameters, in SI units. Antenna
/// gains and noise figure are stored in dB because that is how they are
/// specified; the model converts them to linear once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemConfig {
    pub carrier_frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    /// Power attenuation coefficient of the dielectric waveguide, 1/m.
    pub waveguide_attenuation_per_m: f64,
    pub horn_gain_tx_dbi: f64,
    pub horn_gain_rx_dbi: f64,
    pub pa_efficiency: f64,
    pub relay_circuit_power_w: f64,
    pub bs_rf_chain_power_w: f64,
    pub waveguide_length_m: f64,
    pub waveguide_height_m: f64,
    pub bs_relay_distance_m: f64,
    pub snr_target_linear: f64,
    pub coverage_x_m: f64,
    pub coverage_y_m: f64,
    pub speed_of_light_m_s: f64,
    /// Overrides the thermal-noise power at the relay when set.
    pub relay_noise_power_w: Option<f64>,
    /// Overrides the thermal-noise power at the UE when set.
    pub ue_noise_power_w: Option<f64>,
}

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            carrier_frequency_hz: 28e9,
            bandwidth_hz: 400e6,
            noise_figure_db: 10.0,
            waveguide_attenuation_per_m: 0.01,
            horn_gain_tx_dbi: 20.0,
            horn_gain_rx_dbi: 20.0,
            pa_efficiency: 0.9,
            relay_circuit_power_w: 0.2,
            bs_rf_chain_power_w: 0.1,
            waveguide_length_m: 30.0,
            waveguide_height_m: 3.0,
            bs_relay_distance_m: 50.0,
            snr_target_linear: 100.0,
            coverage_x_m: 30.0,
            coverage_y_m: 10.0,
            speed_of_light_m_s: SPEED_OF_LIGHT_M_S,
            relay_noise_power_w: None,
            ue_noise_power_w: None,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and >= 0, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite, got {v}")))
    }
}

/// (key, kind) for every field in file order.
const KEYS: &[(&str, QuantityKind)] = &[
    ("carrier_frequency_hz", QuantityKind::Frequency),
    ("bandwidth_hz", QuantityKind::Frequency),
    ("noise_figure_db", QuantityKind::Decibel),
    ("waveguide_attenuation_per_m", QuantityKind::Plain),
    ("horn_gain_tx_dbi", QuantityKind::Decibel),
    ("horn_gain_rx_dbi", QuantityKind::Decibel),
    ("pa_efficiency", QuantityKind::Plain),
    ("relay_circuit_power_w", QuantityKind::Power),
    ("bs_rf_chain_power_w", QuantityKind::Power),
    ("waveguide_length_m", QuantityKind::Length),
    ("waveguide_height_m", QuantityKind::Length),
    ("bs_relay_distance_m", QuantityKind::Length),
    ("snr_target_linear", QuantityKind::Ratio),
    ("coverage_x_m", QuantityKind::Length),
    ("coverage_y_m", QuantityKind::Length),
    ("speed_of_light_m_s", QuantityKind::Plain),
    ("relay_noise_power_w", QuantityKind::Power),
    ("ue_noise_power_w", QuantityKind::Power),
];

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        positive("carrier_frequency_hz", self.carrier_frequency_hz)?;
        positive("bandwidth_hz", self.bandwidth_hz)?;
        finite("noise_figure_db", self.noise_figure_db)?;
        nonnegative("waveguide_attenuation_per_m", self.waveguide_attenuation_per_m)?;
        finite("horn_gain_tx_dbi", self.horn_gain_tx_dbi)?;
        finite("horn_gain_rx_dbi", self.horn_gain_rx_dbi)?;
        if !(self.pa_efficiency > 0.0 && self.pa_efficiency <= 1.0) {
            return Err(invalid(format!(
                "pa_efficiency must lie in (0, 1], got {}",
                self.pa_efficiency
            )));
        }
        nonnegative("relay_circuit_power_w", self.relay_circuit_power_w)?;
        nonnegative("bs_rf_chain_power_w", self.bs_rf_chain_power_w)?;
        positive("waveguide_length_m", self.waveguide_length_m)?;
        positive("waveguide_height_m", self.waveguide_height_m)?;
        positive("bs_relay_distance_m", self.bs_relay_distance_m)?;
        positive("snr_target_linear", self.snr_target_linear)?;
        positive("coverage_x_m", self.coverage_x_m)?;
        positive("coverage_y_m", self.coverage_y_m)?;
        positive("speed_of_light_m_s", self.speed_of_light_m_s)?;
        if let Some(p) = self.relay_noise_power_w {
            positive("relay_noise_power_w", p)?;
        }
        if let Some(p) = self.ue_noise_power_w {
            positive("ue_noise_power_w", p)?;
        }
        Ok(())
    }

    pub fn keys() -> impl Iterator<Item = &'static str> {
        KEYS.iter().map(|(k, _)| *k)
    }

    /// Set one field from its textual form. Units are accepted according to
    /// the field: `28GHz` for frequencies, `20dB` for the SNR target (converted
    /// to linear), `20dBi` for gains. `none` clears an optional override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let kind = KEYS
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, kind)| *kind)
            .ok_or_else(|| Error::Parse(format!("unknown configuration key `{key}`")))?;

        if matches!(key, "relay_noise_power_w" | "ue_noise_power_w") && value.trim().eq_ignore_ascii_case("none") {
            *self.optional_mut(key) = None;
            return Ok(());
        }

        let v = parse_quantity(value, kind).map_err(|e| Error::Parse(format!("key `{key}`: {e}")))?;
        match key {
            "carrier_frequency_hz" => self.carrier_frequency_hz = v,
            "bandwidth_hz" => self.bandwidth_hz = v,
            "noise_figure_db" => self.noise_figure_db = v,
            "waveguide_attenuation_per_m" => self.waveguide_attenuation_per_m = v,
            "horn_gain_tx_dbi" => self.horn_gain_tx_dbi = v,
            "horn_gain_rx_dbi" => self.horn_gain_rx_dbi = v,
            "pa_efficiency" => self.pa_efficiency = v,
            "relay_circuit_power_w" => self.relay_circuit_power_w = v,
            "bs_rf_chain_power_w" => self.bs_rf_chain_power_w = v,
            "waveguide_length_m" => self.waveguide_length_m = v,
            "waveguide_height_m" => self.waveguide_height_m = v,
            "bs_relay_distance_m" => self.bs_relay_distance_m = v,
            "snr_target_linear" => self.snr_target_linear = v,
            "coverage_x_m" => self.coverage_x_m = v,
            "coverage_y_m" => self.coverage_y_m = v,
            "speed_of_light_m_s" => self.speed_of_light_m_s = v,
            "relay_noise_power_w" | "ue_noise_power_w" => *self.optional_mut(key) = Some(v),
            _ => unreachable!("key table and match out of sync: {key}"),
        }
        Ok(())
    }

    fn optional_mut(&mut self, key: &str) -> &mut Option<f64> {
        match key {
            "relay_noise_power_w" => &mut self.relay_noise_power_w,
            _ => &mut self.ue_noise_power_w,
        }
    }

    fn get(&self, key: &str) -> Option<f64> {
        Some(match key {
            "carrier_frequency_hz" => self.carrier_frequency_hz,
            "bandwidth_hz" => self.bandwidth_hz,
            "noise_figure_db" => self.noise_figure_db,
            "waveguide_attenuation_per_m" => self.waveguide_attenuation_per_m,
            "horn_gain_tx_dbi" => self.horn_gain_tx_dbi,
            "horn_gain_rx_dbi" => self.horn_gain_rx_dbi,
            "pa_efficiency" => self.pa_efficiency,
            "relay_circuit_power_w" => self.relay_circuit_power_w,
            "bs_rf_chain_power_w" => self.bs_rf_chain_power_w,
            "waveguide_length_m" => self.waveguide_length_m,
            "waveguide_height_m" => self.waveguide_height_m,
            "bs_relay_distance_m" => self.bs_relay_distance_m,
            "snr_target_linear" => self.snr_target_linear,
            "coverage_x_m" => self.coverage_x_m,
            "coverage_y_m" => self.coverage_y_m,
            "speed_of_light_m_s" => self.speed_of_light_m_s,
            "relay_noise_power_w" => return self.relay_noise_power_w,
            "ue_noise_power_w" => return self.ue_noise_power_w,
            _ => return None,
        })
    }

    /// Apply a flat `key = value` document on top of `self`. Blank lines and
    /// `#` comments (whole-line or trailing) are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`, got `{raw}`", lineno + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }

    /// Render every field in the config-file format. Values are written with
    /// round-trip precision so `from_text(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for key in Self::keys() {
            match self.get(key) {
                Some(v) => writeln!(out, "{key} = {v:?}").unwrap(),
                None => writeln!(out, "{key} = none").unwrap(),
            }
        }
        out
    }
}

/// User position on the ground plane, inside the coverage rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UePosition {
    x_ue_m: f64,
    y_ue_m: f64,
}

impl UePosition {
    pub fn new(config: &SystemConfig, x_ue_m: f64, y_ue_m: f64) -> Result<Self> {
        if !(0.0..=config.coverage_x_m).contains(&x_ue_m) {
            return Err(Error::Domain {
                name: "x_ue_m",
                value: x_ue_m,
                lo: 0.0,
                hi: config.coverage_x_m,
            });
        }
        if !(0.0..=config.coverage_y_m).contains(&y_ue_m) {
            return Err(Error::Domain {
                name: "y_ue_m",
                value: y_ue_m,
                lo: 0.0,
                hi: config.coverage_y_m,
            });
        }
        Ok(Self { x_ue_m, y_ue_m })
    }

    /// A position that is not checked against any coverage area. Used by the
    /// verification oracles, which probe geometries outside the deployment
    /// rectangle on purpose.
    pub fn unchecked(x_ue_m: f64, y_ue_m: f64) -> Self {
        Self { x_ue_m, y_ue_m }
    }

    pub fn x(&self) -> f64 {
        self.x_ue_m
    }

    pub fn y(&self) -> f64 {
        self.y_ue_m
    }
}
