//! Comparison schemes.
//!
//! * Direct link: the BS serves the user over an NLoS link with a dipole
//!   array and no relay. Log-distance path loss anchored at free space at
//!   the reference distance, lognormal shadowing, one RF chain per element.
//! * Fixed antenna: the same horn-fed relay as the proposed scheme, but the
//!   relay radiates from the waveguide feed point over free space; there is
//!   no pinching antenna.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::config::{SystemConfig, UePosition};
use crate::error::{invalid, Result};
use crate::model::{self, ChannelGains};
use crate::optimizer::{self, PowerSolution};
use crate::units::db_to_linear;

/// How the array gain of the direct-link BS scales with the element count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrayGainModel {
    /// N, the beamforming gain of a single-stream coherent array.
    #[default]
    Linear,
    /// N².
    Squared,
}

/// Where the direct-link BS sits relative to the user.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectGeometry {
    /// BS, relay and waveguide feed on one line: the path length is the
    /// BS–relay distance plus the ground distance from the feed to the user.
    #[default]
    ViaFeed,
    /// A fixed BS–user distance in metres.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Benchmark1Config {
    pub num_elements: u32,
    pub element_gain_dbi: f64,
    pub path_loss_exponent: f64,
    /// Standard deviation of the shadowing term; the default corresponds to
    /// a variance of 11 dB².
    pub shadowing_std_db: f64,
    pub rf_chain_power_w_per_element: f64,
    pub reference_distance_m: f64,
    pub array_gain: ArrayGainModel,
    pub geometry: DirectGeometry,
}

impl Default for Benchmark1Config {
    fn default() -> Self {
        Self {
            num_elements: 64,
            element_gain_dbi: 2.15,
            path_loss_exponent: 4.0,
            shadowing_std_db: 11f64.sqrt(),
            rf_chain_power_w_per_element: 0.1,
            reference_distance_m: 1.0,
            array_gain: ArrayGainModel::Linear,
            geometry: DirectGeometry::ViaFeed,
        }
    }
}

impl Benchmark1Config {
    pub fn validate(&self) -> Result<()> {
        if self.num_elements < 1 {
            return Err(invalid("num_elements must be >= 1"));
        }
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent >= 2.0) {
            return Err(invalid(format!(
                "path_loss_exponent must be >= 2, got {}",
                self.path_loss_exponent
            )));
        }
        if !(self.shadowing_std_db.is_finite() && self.shadowing_std_db >= 0.0) {
            return Err(invalid("shadowing_std_db must be >= 0"));
        }
        if !(self.rf_chain_power_w_per_element.is_finite() && self.rf_chain_power_w_per_element >= 0.0) {
            return Err(invalid("rf_chain_power_w_per_element must be >= 0"));
        }
        if !(self.reference_distance_m.is_finite() && self.reference_distance_m > 0.0) {
            return Err(invalid("reference_distance_m must be > 0"));
        }
        if !self.element_gain_dbi.is_finite() {
            return Err(invalid("element_gain_dbi must be finite"));
        }
        if let DirectGeometry::Fixed(d) = self.geometry {
            if !(d.is_finite() && d > 0.0) {
                return Err(invalid(format!("fixed BS-UE distance must be > 0, got {d}")));
            }
        }
        Ok(())
    }

    pub fn array_gain_linear(&self) -> f64 {
        let n = f64::from(self.num_elements);
        let array = match self.array_gain {
            ArrayGainModel::Linear => n,
            ArrayGainModel::Squared => n * n,
        };
        array * db_to_linear(self.element_gain_dbi)
    }

    pub fn circuit_power_w(&self) -> f64 {
        f64::from(self.num_elements) * self.rf_chain_power_w_per_element
    }

    pub fn bs_ue_distance_m(&self, config: &SystemConfig, ue: &UePosition) -> f64 {
        match self.geometry {
            DirectGeometry::ViaFeed => config.bs_relay_distance_m + ue.x().hypot(ue.y()),
            DirectGeometry::Fixed(d) => d,
        }
    }
}

/// One shadowing realisation in dB, counted as extra loss. `seed` and
/// `draw_index` say where it came from when it was sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShadowingSample {
    pub value_db: f64,
    pub seed: Option<u64>,
    pub draw_index: Option<u64>,
}

impl ShadowingSample {
    pub fn fixed(value_db: f64) -> Self {
        Self {
            value_db,
            seed: None,
            draw_index: None,
        }
    }

    pub fn none() -> Self {
        Self::fixed(0.0)
    }
}

/// Seeded source of zero-mean normal shadowing draws.
pub struct ShadowingSampler {
    rng: ChaCha8Rng,
    normal: Normal<f64>,
    seed: u64,
    drawn: u64,
}

impl ShadowingSampler {
    pub fn new(std_db: f64, seed: u64) -> Result<Self> {
        let normal = Normal::new(0.0, std_db).map_err(|e| invalid(format!("shadowing std {std_db}: {e}")))?;
        Ok(Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            normal,
            seed,
            drawn: 0,
        })
    }

    pub fn draw(&mut self) -> ShadowingSample {
        let value_db = self.normal.sample(&mut self.rng);
        let s = ShadowingSample {
            value_db,
            seed: Some(self.seed),
            draw_index: Some(self.drawn),
        };
        self.drawn += 1;
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectLinkPower {
    pub channel_gain: f64,
    pub transmit_power_w: f64,
    pub total_power_w: f64,
}

/// Power gain of the direct NLoS link at `distance_m`.
pub fn direct_link_gain(
    config: &SystemConfig,
    b1: &Benchmark1Config,
    distance_m: f64,
    shadowing: &ShadowingSample,
) -> Result<f64> {
    b1.validate()?;
    if !(distance_m.is_finite() && distance_m > 0.0) {
        return Err(invalid(format!("BS-UE distance must be > 0, got {distance_m}")));
    }
    let d0 = b1.reference_distance_m;
    let anchor = model::free_space_gain_with(d0, config.carrier_frequency_hz, config.speed_of_light_m_s)?;
    let spread = (distance_m / d0).powf(-b1.path_loss_exponent);
    Ok(b1.array_gain_linear() * anchor * spread * db_to_linear(-shadowing.value_db))
}

/// Direct link without relay: the BS radiates just enough to reach the SNR
/// target and pays one RF chain per element.
pub fn benchmark1_power(
    config: &SystemConfig,
    b1: &Benchmark1Config,
    ue_bs_distance_m: f64,
    shadowing: &ShadowingSample,
) -> Result<DirectLinkPower> {
    let h = direct_link_gain(config, b1, ue_bs_distance_m, shadowing)?;
    let transmit_power_w = config.snr_target_linear * model::ue_noise_power_w(config)? / h;
    Ok(DirectLinkPower {
        channel_gain: h,
        transmit_power_w,
        total_power_w: transmit_power_w / config.pa_efficiency + b1.circuit_power_w(),
    })
}

/// Mean direct-link total power for one user, averaged in watts over
/// `samples` shadowing draws.
pub fn benchmark1_expected_power(
    config: &SystemConfig,
    b1: &Benchmark1Config,
    ue: &UePosition,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if samples == 0 {
        return Err(invalid("need at least one shadowing sample"));
    }
    let mut sampler = ShadowingSampler::new(b1.shadowing_std_db, seed)?;
    let distance = b1.bs_ue_distance_m(config, ue);
    let mut sum = 0.0;
    for _ in 0..samples {
        sum += benchmark1_power(config, b1, distance, &sampler.draw())?.total_power_w;
    }
    Ok(sum / samples as f64)
}

/// |g2|² for an antenna fixed at the waveguide feed `(0, 0, d)`, free space only.
pub fn fixed_antenna_gain(config: &SystemConfig, ue: &UePosition) -> Result<f64> {
    let d = config.waveguide_height_m;
    let dist = (ue.x() * ue.x() + ue.y() * ue.y() + d * d).sqrt();
    model::free_space_gain_with(dist, config.carrier_frequency_hz, config.speed_of_light_m_s)
}

/// Relay-assisted scheme with the antenna fixed at the relay; powers from
/// the same closed-form allocation as the proposed scheme.
pub fn benchmark2_power(config: &SystemConfig, ue: &UePosition) -> Result<PowerSolution> {
    config.validate()?;
    let gains = ChannelGains::new(
        model::bs_relay_gain(config)?,
        fixed_antenna_gain(config, ue)?,
        model::relay_noise_power_w(config)?,
        model::ue_noise_power_w(config)?,
    )?;
    optimizer::solve_with_gains(config, &gains, 0.0)
}
