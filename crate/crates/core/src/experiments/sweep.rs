use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::benchmarks::{self, Benchmark1Config, ShadowingSample, ShadowingSampler};
use crate::config::{SystemConfig, UePosition};
use crate::error::{invalid, Error, Result};
use crate::optimizer;
use crate::units::db_to_linear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// SNR target in dB.
    SnrTargetDb,
    BsRelayDistanceM,
}

impl SweepVariable {
    fn apply(self, config: &SystemConfig, value: f64) -> SystemConfig {
        let mut c = config.clone();
        match self {
            SweepVariable::SnrTargetDb => c.snr_target_linear = db_to_linear(value),
            SweepVariable::BsRelayDistanceM => c.bs_relay_distance_m = value,
        }
        c
    }

    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::SnrTargetDb => "snr_target_db",
            SweepVariable::BsRelayDistanceM => "bs_relay_distance_m",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Proposed,
    Benchmark1,
    Benchmark2,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Proposed, Scheme::Benchmark1, Scheme::Benchmark2];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::Benchmark1 => "benchmark1",
            Scheme::Benchmark2 => "benchmark2",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "proposed" => Ok(Scheme::Proposed),
            "benchmark1" | "b1" => Ok(Scheme::Benchmark1),
            "benchmark2" | "b2" => Ok(Scheme::Benchmark2),
            other => Err(Error::Parse(format!(
                "unknown scheme `{other}` (expected proposed, benchmark1 or benchmark2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub ue_samples: usize,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, values: Vec<f64>) -> Self {
        Self {
            variable,
            values,
            ue_samples: 1000,
            seed: 1,
            schemes: Scheme::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(invalid("sweep needs at least one value"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("sweep values must be finite"));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("sweep values must be strictly increasing"));
        }
        if self.ue_samples == 0 {
            return Err(invalid("ue_samples must be >= 1"));
        }
        if self.schemes.is_empty() {
            return Err(invalid("select at least one scheme"));
        }
        let mut sorted = self.schemes.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.schemes.len() {
            return Err(invalid("schemes must not repeat"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemeMean {
    pub scheme: Scheme,
    pub mean_total_power_w: f64,
    pub mean_bs_power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub variable_value: f64,
    pub schemes: Vec<SchemeMean>,
    pub n_samples: usize,
}

impl SweepRecord {
    pub fn get(&self, scheme: Scheme) -> Option<&SchemeMean> {
        self.schemes.iter().find(|m| m.scheme == scheme)
    }
}

/// One Monte Carlo draw: a user position and a shadowing realisation for
/// the direct link.
#[derive(Debug, Clone, Copy)]
struct Draw {
    ue: UePosition,
    shadowing: ShadowingSample,
}

// The same draws are reused for every sweep value.
fn draws(config: &SystemConfig, b1: &Benchmark1Config, n: usize, seed: u64) -> Result<Vec<Draw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shadow = ShadowingSampler::new(b1.shadowing_std_db, seed ^ 0x5348_4144_4f57_0001)?;
    (0..n)
        .map(|_| {
            let x = rng.random::<f64>() * config.coverage_x_m;
            let y = rng.random::<f64>() * config.coverage_y_m;
            Ok(Draw {
                ue: UePosition::new(config, x, y)?,
                shadowing: shadow.draw(),
            })
        })
        .collect()
}

/// (total, bs) per selected scheme, in `schemes` order.
fn evaluate(config: &SystemConfig, b1: &Benchmark1Config, schemes: &[Scheme], draw: &Draw) -> Result<Vec<(f64, f64)>> {
    schemes
        .iter()
        .map(|scheme| match scheme {
            Scheme::Proposed => {
                let s = optimizer::solve(config, &draw.ue)?;
                Ok((s.total_power_w, s.p1_w))
            }
            Scheme::Benchmark2 => {
                let s = benchmarks::benchmark2_power(config, &draw.ue)?;
                Ok((s.total_power_w, s.p1_w))
            }
            Scheme::Benchmark1 => {
                let d = b1.bs_ue_distance_m(config, &draw.ue);
                let p = benchmarks::benchmark1_power(config, b1, d, &draw.shadowing)?;
                Ok((p.total_power_w, p.transmit_power_w))
            }
        })
        .collect()
}

/// Average each scheme's total and BS power over uniformly placed users, for
/// every value of the swept variable.
///
/// Users and shadowing come from a ChaCha stream seeded by `spec.seed`; the
/// same draws are used at every sweep value. Samples may be evaluated on any
/// number of threads: results are gathered in sample order and summed
/// sequentially, so the output does not depend on the thread count.
pub fn run_sweep(config: &SystemConfig, b1: &Benchmark1Config, spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    config.validate()?;
    b1.validate()?;
    let samples = draws(config, b1, spec.ue_samples, spec.seed)?;

    let mut records = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let cfg = spec.variable.apply(config, value);
        cfg.validate()?;
        let per_sample: Vec<Result<Vec<(f64, f64)>>> = samples
            .par_iter()
            .map(|d| evaluate(&cfg, b1, &spec.schemes, d))
            .collect();

        let mut total = vec![0.0; spec.schemes.len()];
        let mut bs = vec![0.0; spec.schemes.len()];
        for (index, (result, draw)) in per_sample.into_iter().zip(&samples).enumerate() {
            let row = result.map_err(|e| Error::Sample {
                index,
                x: draw.ue.x(),
                y: draw.ue.y(),
                source: Box::new(e),
            })?;
            for (k, (t, b)) in row.into_iter().enumerate() {
                total[k] += t;
                bs[k] += b;
            }
        }
        let n = spec.ue_samples as f64;
        records.push(SweepRecord {
            variable_value: value,
            schemes: spec
                .schemes
                .iter()
                .enumerate()
                .map(|(k, &scheme)| SchemeMean {
                    scheme,
                    mean_total_power_w: total[k] / n,
                    mean_bs_power_w: bs[k] / n,
                })
                .collect(),
            n_samples: spec.ue_samples,
        });
    }
    Ok(records)
}

/// Parse sweep values: `start:step:stop` (inclusive), a comma list, or a
/// single number, with an optional unit suffix (`dB` for the SNR target,
/// `m`/`km` for distances).
pub fn parse_values(text: &str, variable: SweepVariable) -> Result<Vec<f64>> {
    let t = text.trim();
    let (body, scale) = match variable {
        SweepVariable::SnrTargetDb => match t.strip_suffix("dB").or_else(|| t.strip_suffix("db")) {
            Some(b) => (b, 1.0),
            None => (t, 1.0),
        },
        SweepVariable::BsRelayDistanceM => {
            if let Some(b) = t.strip_suffix("km") {
                (b, 1e3)
            } else if let Some(b) = t.strip_suffix('m') {
                (b, 1.0)
            } else {
                (t, 1.0)
            }
        }
    };
    let num = |s: &str| -> Result<f64> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` in `{text}` is not a number")))?;
        if v.is_finite() {
            Ok(v * scale)
        } else {
            Err(Error::Parse(format!("`{s}` in `{text}` is not finite")))
        }
    };

    let parts: Vec<&str> = body.split(':').collect();
    let values = match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step <= 0.0 || stop < start {
                return Err(Error::Parse(format!("range `{text}` needs step > 0 and stop >= start")));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return Err(Error::Parse(format!("range `{text}` has too many points")));
            }
            (0..=n).map(|i| start + step * i as f64).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<f64>>>()?,
        _ => return Err(Error::Parse(format!("cannot read sweep values from `{text}`"))),
    };
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_syntax() {
        let v = parse_values("10:2:30dB", SweepVariable::SnrTargetDb).unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], 10.0);
        assert_eq!(v[10], 30.0);
        assert_eq!(
            parse_values("30,50,100m", SweepVariable::BsRelayDistanceM).unwrap(),
            vec![30.0, 50.0, 100.0]
        );
        assert_eq!(
            parse_values("0.1km", SweepVariable::BsRelayDistanceM).unwrap(),
            vec![100.0]
        );
        assert_eq!(parse_values("0:0.1:0.3", SweepVariable::SnrTargetDb).unwrap().len(), 4);
        assert!(parse_values("10:0:30", SweepVariable::SnrTargetDb).is_err());
        assert!(parse_values("30:2:10", SweepVariable::SnrTargetDb).is_err());
        assert!(parse_values("1:2", SweepVariable::SnrTargetDb).is_err());
        assert!(parse_values("ten", SweepVariable::SnrTargetDb).is_err());
        assert!(parse_values("20GHz", SweepVariable::SnrTargetDb).is_err());
    }

    #[test]
    fn spec_validation() {
        let ok = SweepSpec::new(SweepVariable::SnrTargetDb, vec![10.0, 20.0]);
        assert!(ok.validate().is_ok());
        let empty = SweepSpec::new(SweepVariable::SnrTargetDb, vec![]);
        assert!(empty.validate().is_err());
        let unordered = SweepSpec::new(SweepVariable::SnrTargetDb, vec![20.0, 10.0]);
        assert!(unordered.validate().is_err());
        let dup = SweepSpec::new(SweepVariable::SnrTargetDb, vec![20.0, 20.0]);
        assert!(dup.validate().is_err());
        let no_samples = SweepSpec {
            ue_samples: 0,
            ..ok.clone()
        };
        assert!(no_samples.validate().is_err());
        let twice = SweepSpec {
            schemes: vec![Scheme::Proposed, Scheme::Proposed],
            ..ok
        };
        assert!(twice.validate().is_err());
    }

    #[test]
    fn single_sample_matches_solve() {
        let cfg = SystemConfig::default();
        let b1 = Benchmark1Config::default();
        let spec = SweepSpec {
            ue_samples: 1,
            schemes: vec![Scheme::Proposed],
            seed: 3,
            ..SweepSpec::new(SweepVariable::SnrTargetDb, vec![20.0])
        };
        let records = run_sweep(&cfg, &b1, &spec).unwrap();
        let d = draws(&cfg, &b1, 1, 3).unwrap()[0];
        let s = optimizer::solve(&cfg, &d.ue).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].n_samples, 1);
        assert_eq!(records[0].schemes.len(), 1);
        assert_eq!(records[0].schemes[0].mean_total_power_w, s.total_power_w);
        assert_eq!(records[0].schemes[0].mean_bs_power_w, s.p1_w);
    }

    #[test]
    fn invalid_sweep_value_is_reported() {
        let cfg = SystemConfig::default();
        let b1 = Benchmark1Config::default();
        let spec = SweepSpec {
            ue_samples: 4,
            ..SweepSpec::new(SweepVariable::BsRelayDistanceM, vec![-10.0])
        };
        let err = run_sweep(&cfg, &b1, &spec).unwrap_err();
        assert!(err.to_string().contains("bs_relay_distance_m"), "{err}");
    }

    #[test]
    fn draws_cover_the_rectangle() {
        let cfg = SystemConfig::default();
        let d = draws(&cfg, &Benchmark1Config::default(), 5000, 11).unwrap();
        let mx = d.iter().map(|s| s.ue.x()).sum::<f64>() / 5000.0;
        let my = d.iter().map(|s| s.ue.y()).sum::<f64>() / 5000.0;
        assert!((mx - 15.0).abs() < 0.5);
        assert!((my - 5.0).abs() < 0.2);
        assert!(d
            .iter()
            .all(|s| (0.0..=30.0).contains(&s.ue.x()) && (0.0..=10.0).contains(&s.ue.y())));
    }
}
