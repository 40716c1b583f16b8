//! `pinchlink` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::csv::{export_csv, gnuplot_script, write_csv};
use super::sweep::{parse_values, run_sweep, Scheme, SweepSpec, SweepVariable};
use crate::benchmarks::{self, ArrayGainModel, Benchmark1Config, DirectGeometry, ShadowingSample};
use crate::config::{SystemConfig, UePosition};
use crate::error::{Error, Result};
use crate::optimizer::{self, PowerSolution};
use crate::oracle::{self, Tolerances};
use crate::units::{db_to_linear, linear_to_db, parse_quantity, QuantityKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn q(kind: QuantityKind) -> impl Fn(&str) -> std::result::Result<f64, String> + Clone {
    move |s| parse_quantity(s, kind).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "pinchlink",
    version,
    about = "Power minimisation for wireless-fed pinching-antenna links"
)]
struct Cli {
    #[command(flatten)]
    scenario: ScenarioArgs,

    #[command(flatten)]
    direct: DirectLinkArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Flat `key = value` configuration file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Set any configuration key, e.g. `--set waveguide_height_m=4`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    sets: Vec<String>,

    /// Carrier frequency, e.g. `28GHz`.
    #[arg(long, global = true, value_parser = q(QuantityKind::Frequency))]
    freq: Option<f64>,
    /// Bandwidth, e.g. `400MHz`.
    #[arg(long, global = true, value_parser = q(QuantityKind::Frequency))]
    bandwidth: Option<f64>,
    /// Noise figure in dB.
    #[arg(long, global = true, value_parser = q(QuantityKind::Decibel))]
    nf: Option<f64>,
    /// Waveguide attenuation coefficient, 1/m.
    #[arg(long, global = true, value_parser = q(QuantityKind::Plain))]
    alpha: Option<f64>,
    /// BS horn gain, dBi.
    #[arg(long, global = true, value_parser = q(QuantityKind::Decibel))]
    gain_tx: Option<f64>,
    /// Relay horn gain, dBi.
    #[arg(long, global = true, value_parser = q(QuantityKind::Decibel))]
    gain_rx: Option<f64>,
    /// Relay PA efficiency in (0, 1].
    #[arg(long, global = true, value_parser = q(QuantityKind::Plain))]
    eta: Option<f64>,
    /// Relay circuit power, W.
    #[arg(long, global = true, value_parser = q(QuantityKind::Power))]
    p_circ: Option<f64>,
    /// BS RF-chain power, W.
    #[arg(long, global = true, value_parser = q(QuantityKind::Power))]
    p_rf: Option<f64>,
    /// Waveguide length, m.
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    length: Option<f64>,
    /// Waveguide height above the ground plane, m.
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    height: Option<f64>,
    /// BS–relay distance, m.
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    d1: Option<f64>,
    /// SNR target: `20dB`, or a bare linear ratio.
    #[arg(long, global = true, value_parser = q(QuantityKind::Ratio))]
    gamma0: Option<f64>,
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    coverage_x: Option<f64>,
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    coverage_y: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ArrayGainArg {
    N,
    N2,
}

#[derive(Debug, Args)]
struct DirectLinkArgs {
    /// Direct-link array size.
    #[arg(long, global = true, value_name = "N")]
    b1_elements: Option<u32>,
    /// Direct-link element gain, dBi.
    #[arg(long, global = true, value_parser = q(QuantityKind::Decibel))]
    b1_element_gain: Option<f64>,
    /// Direct-link path-loss exponent.
    #[arg(long, global = true, value_parser = q(QuantityKind::Plain))]
    b1_exponent: Option<f64>,
    /// Shadowing variance, dB².
    #[arg(long, global = true, value_parser = q(QuantityKind::Plain), conflicts_with = "b1_shadow_std")]
    b1_shadow_var: Option<f64>,
    /// Shadowing standard deviation, dB.
    #[arg(long, global = true, value_parser = q(QuantityKind::Decibel))]
    b1_shadow_std: Option<f64>,
    /// Array gain scaling with the element count.
    #[arg(long, global = true, value_enum)]
    b1_array_gain: Option<ArrayGainArg>,
    /// Fixed BS–user distance for the direct link, m (default: d1 plus the
    /// feed-to-user ground distance).
    #[arg(long, global = true, value_parser = q(QuantityKind::Length))]
    b1_distance: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VarArg {
    /// SNR target (values in dB).
    Gamma0,
    /// BS–relay distance (values in m).
    D1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal placement and powers for one user.
    Solve {
        /// User position `x,y` in metres.
        #[arg(long, value_name = "X,Y")]
        ue: String,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Sweep the SNR target or the BS–relay distance and write mean powers as CSV.
    Sweep {
        #[arg(long = "var", value_enum)]
        variable: VarArg,
        /// `start:step:stop`, a comma list, or a single value; optional unit suffix.
        #[arg(long, value_name = "RANGE")]
        values: String,
        /// Users sampled per sweep value.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated subset of proposed,benchmark1,benchmark2.
        #[arg(long, default_value = "proposed,benchmark1,benchmark2")]
        schemes: String,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Also write `<out>.gp`, a gnuplot script for the CSV.
        #[arg(long, requires = "out")]
        gnuplot: bool,
    },
    /// Check the closed forms against the brute-force oracles on random scenarios.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Position tolerance, m.
        #[arg(long, default_value_t = 0.01)]
        tol_position: f64,
        /// Relative tolerance on the minimum cost.
        #[arg(long, default_value_t = 1e-3)]
        tol_power: f64,
        /// Placement grid step, m.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Print one JSON line per trial.
        #[arg(long)]
        json: bool,
    },
    /// Print the effective configuration in config-file format.
    ConfigDump,
}

fn build_config(args: &ScenarioArgs) -> Result<SystemConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let mut c = SystemConfig::default();
            c.apply_text(&text)?;
            c
        }
        None => SystemConfig::default(),
    };
    for kv in &args.sets {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    let put = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    put(&mut cfg.carrier_frequency_hz, args.freq);
    put(&mut cfg.bandwidth_hz, args.bandwidth);
    put(&mut cfg.noise_figure_db, args.nf);
    put(&mut cfg.waveguide_attenuation_per_m, args.alpha);
    put(&mut cfg.horn_gain_tx_dbi, args.gain_tx);
    put(&mut cfg.horn_gain_rx_dbi, args.gain_rx);
    put(&mut cfg.pa_efficiency, args.eta);
    put(&mut cfg.relay_circuit_power_w, args.p_circ);
    put(&mut cfg.bs_rf_chain_power_w, args.p_rf);
    put(&mut cfg.waveguide_length_m, args.length);
    put(&mut cfg.waveguide_height_m, args.height);
    put(&mut cfg.bs_relay_distance_m, args.d1);
    put(&mut cfg.snr_target_linear, args.gamma0);
    put(&mut cfg.coverage_x_m, args.coverage_x);
    put(&mut cfg.coverage_y_m, args.coverage_y);
    cfg.validate()?;
    Ok(cfg)
}

fn build_direct(args: &DirectLinkArgs) -> Result<Benchmark1Config> {
    let mut b1 = Benchmark1Config::default();
    if let Some(n) = args.b1_elements {
        b1.num_elements = n;
    }
    if let Some(g) = args.b1_element_gain {
        b1.element_gain_dbi = g;
    }
    if let Some(e) = args.b1_exponent {
        b1.path_loss_exponent = e;
    }
    if let Some(v) = args.b1_shadow_var {
        if v < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "shadowing variance must be >= 0, got {v}"
            )));
        }
        b1.shadowing_std_db = v.sqrt();
    }
    if let Some(s) = args.b1_shadow_std {
        b1.shadowing_std_db = s;
    }
    if let Some(m) = args.b1_array_gain {
        b1.array_gain = match m {
            ArrayGainArg::N => ArrayGainModel::Linear,
            ArrayGainArg::N2 => ArrayGainModel::Squared,
        };
    }
    if let Some(d) = args.b1_distance {
        b1.geometry = DirectGeometry::Fixed(d);
    }
    b1.validate()?;
    Ok(b1)
}

fn parse_ue(text: &str, cfg: &SystemConfig) -> Result<UePosition> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("--ue expects X,Y, got `{text}`")))?;
    let x = parse_quantity(x, QuantityKind::Length)?;
    let y = parse_quantity(y, QuantityKind::Length)?;
    UePosition::new(cfg, x, y)
}

#[derive(Serialize)]
struct SolveOutput {
    ue: UePosition,
    proposed: PowerSolution,
    benchmark2: PowerSolution,
    /// Direct link at zero shadowing.
    benchmark1_total_power_w: f64,
}

fn cmd_solve(cfg: &SystemConfig, b1: &Benchmark1Config, ue: &str, json: bool, out: &mut dyn Write) -> Result<i32> {
    let ue = parse_ue(ue, cfg)?;
    let s = optimizer::solve(cfg, &ue)?;
    let b2 = benchmarks::benchmark2_power(cfg, &ue)?;
    let direct = benchmarks::benchmark1_power(cfg, b1, b1.bs_ue_distance_m(cfg, &ue), &ShadowingSample::none())?;
    let io = |e: std::io::Error| Error::Io {
        path: "<stdout>".into(),
        source: e,
    };
    if json {
        let payload = SolveOutput {
            ue,
            proposed: s,
            benchmark2: b2,
            benchmark1_total_power_w: direct.total_power_w,
        };
        let text = serde_json::to_string_pretty(&payload).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{text}").map_err(io)?;
        return Ok(EXIT_OK);
    }
    let rows: [(&str, String); 13] = [
        ("user position", format!("({:.3}, {:.3}) m", ue.x(), ue.y())),
        ("SNR target", format!("{:.3} dB", linear_to_db(cfg.snr_target_linear))),
        ("pinching antenna x_pin*", format!("{:.4} m", s.x_pin_m)),
        ("|g1|^2", format!("{:.6e}", s.gains.g1_sq)),
        ("|g2|^2", format!("{:.6e}", s.gains.g2_sq)),
        ("BS transmit power P1*", format!("{:.6e} W", s.p1_w)),
        ("relay gain beta^2*", format!("{:.6e}", s.beta_sq)),
        ("relay transmit power P2", format!("{:.6e} W", s.p2_w)),
        ("weighted cost J*", format!("{:.6e} W", s.j_star_w)),
        ("total power", format!("{:.6} W", s.total_power_w)),
        ("feasible", s.feasible.to_string()),
        ("fixed-antenna relay total", format!("{:.6} W", b2.total_power_w)),
        (
            "direct link total (0 dB shadowing)",
            format!("{:.6} W", direct.total_power_w),
        ),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cfg: &SystemConfig,
    b1: &Benchmark1Config,
    variable: VarArg,
    values: &str,
    samples: usize,
    seed: u64,
    schemes: &str,
    out_path: Option<&PathBuf>,
    threads: Option<usize>,
    gnuplot: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let variable = match variable {
        VarArg::Gamma0 => SweepVariable::SnrTargetDb,
        VarArg::D1 => SweepVariable::BsRelayDistanceM,
    };
    let spec = SweepSpec {
        variable,
        values: parse_values(values, variable)?,
        ue_samples: samples,
        seed,
        schemes: schemes.split(',').map(str::parse).collect::<Result<Vec<Scheme>>>()?,
    };
    spec.validate()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be >= 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let records = pool.install(|| run_sweep(cfg, b1, &spec))?;

    match out_path {
        Some(path) => {
            export_csv(&records, path)?;
            if gnuplot {
                let gp = path.with_extension("gp");
                let label = match variable {
                    SweepVariable::SnrTargetDb => "SNR target (dB)",
                    SweepVariable::BsRelayDistanceM => "BS-relay distance (m)",
                };
                std::fs::write(&gp, gnuplot_script(path, label, &spec.schemes))
                    .map_err(|source| Error::Io { path: gp, source })?;
            }
        }
        None => write_csv(&records, out).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        })?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TrialLine {
    trial: usize,
    x_ue_m: f64,
    y_ue_m: f64,
    waveguide_attenuation_per_m: f64,
    snr_target_db: f64,
    bs_relay_distance_m: f64,
    position: oracle::OracleReport,
    power: oracle::OracleReport,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    base: &SystemConfig,
    seed: u64,
    trials: usize,
    tol: Tolerances,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let io = |e: std::io::Error| Error::Io {
        path: "<stdout>".into(),
        source: e,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut worst_pos: f64 = 0.0;
    let mut worst_pow: f64 = 0.0;
    for trial in 0..trials {
        let alpha = 10f64.powf(rng.random_range(-4.0..=-1.0));
        let gamma_db = rng.random_range(0.0..=40.0);
        let d1 = rng.random_range(10.0..=200.0);
        let cfg = SystemConfig {
            waveguide_attenuation_per_m: alpha,
            snr_target_linear: db_to_linear(gamma_db),
            bs_relay_distance_m: d1,
            ..base.clone()
        };
        let x = rng.random::<f64>() * cfg.coverage_x_m;
        let y = rng.random::<f64>() * cfg.coverage_y_m;
        let ue = UePosition::new(&cfg, x, y)?;
        let (pos, pow) = oracle::verify_scenario(&cfg, &ue, &tol)?;
        worst_pos = worst_pos.max(pos.abs_gap);
        worst_pow = worst_pow.max(pow.rel_gap);
        if json {
            let line = TrialLine {
                trial,
                x_ue_m: x,
                y_ue_m: y,
                waveguide_attenuation_per_m: alpha,
                snr_target_db: gamma_db,
                bs_relay_distance_m: d1,
                position: pos,
                power: pow,
            };
            let text = serde_json::to_string(&line).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)?;
        }
        if !(pos.passed && pow.passed) {
            failures += 1;
            writeln!(
                err,
                "trial {trial} FAILED: ue=({x:.3},{y:.3}) alpha={alpha:.3e} gamma0={gamma_db:.2}dB d1={d1:.1} \
                 position gap {:.3e} m (passed={}), power gap {:.3e} (passed={})",
                pos.abs_gap, pos.passed, pow.rel_gap, pow.passed
            )
            .map_err(io)?;
        }
    }
    if !json {
        writeln!(
            out,
            "verify: {} of {trials} trials passed; worst position gap {worst_pos:.3e} m, worst relative power gap {worst_pow:.3e}",
            trials - failures
        )
        .map_err(io)?;
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = build_config(&cli.scenario)?;
    let b1 = build_direct(&cli.direct)?;
    match cli.command {
        Command::Solve { ue, json } => cmd_solve(&cfg, &b1, &ue, json, out),
        Command::Sweep {
            variable,
            values,
            samples,
            seed,
            schemes,
            out: path,
            threads,
            gnuplot,
        } => cmd_sweep(
            &cfg,
            &b1,
            variable,
            &values,
            samples,
            seed,
            &schemes,
            path.as_ref(),
            threads,
            gnuplot,
            out,
        ),
        Command::Verify {
            seed,
            trials,
            tol_position,
            tol_power,
            step,
            json,
        } => {
            let tol = Tolerances {
                position_m: tol_position,
                power_rel: tol_power,
                grid_step_m: step,
                ..Tolerances::default()
            };
            cmd_verify(&cfg, seed, trials, tol, json, out, err)
        }
        Command::ConfigDump => {
            write!(out, "{}", cfg.to_text()).map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })?;
            Ok(EXIT_OK)
        }
    }
}

/// Run the CLI with explicit argument list and output streams; returns the
/// process exit code.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        // reader went away (e.g. `| head`); nothing left to report to
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(err, "run `pinchlink --help` for usage");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pinchlink"];
        argv.extend_from_slice(args);
        let code = cli_main(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_prints_placement() {
        let (code, out, _) = run(&["solve", "--ue", "15,5"]);
        assert_eq!(code, 0);
        assert!(out.contains("14.8299 m"), "{out}");
    }

    #[test]
    fn solve_json() {
        let (code, out, _) = run(&["solve", "--ue", "15,5", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let x = v["proposed"]["x_pin_m"].as_f64().unwrap();
        assert!((x - 14.829855).abs() < 1e-5);
    }

    #[test]
    fn flags_override_defaults() {
        let (code, out, _) = run(&["--freq", "60GHz", "--gamma0", "30dB", "--d1", "0.1km", "config-dump"]);
        assert_eq!(code, 0);
        let cfg = SystemConfig::from_text(&out).unwrap();
        assert_eq!(cfg.carrier_frequency_hz, 60e9);
        assert!((cfg.snr_target_linear - 1000.0).abs() < 1e-9);
        assert_eq!(cfg.bs_relay_distance_m, 100.0);
    }

    #[test]
    fn set_and_subcommand_position() {
        let (code, out, _) = run(&["config-dump", "--set", "waveguide_height_m=4", "--alpha", "0.02"]);
        assert_eq!(code, 0);
        let cfg = SystemConfig::from_text(&out).unwrap();
        assert_eq!(cfg.waveguide_height_m, 4.0);
        assert_eq!(cfg.waveguide_attenuation_per_m, 0.02);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["solve", "--ue", "15,5", "--freq", "28parsecs"]).0, 2);
        assert_eq!(run(&["--bogus", "solve"]).0, 2);
        assert_eq!(run(&["solve"]).0, 2);
        assert_eq!(run(&["solve", "--ue", "99,5"]).0, 2);
        assert_eq!(run(&["solve", "--ue", "15"]).0, 2);
        assert_eq!(run(&["--eta", "1.5", "solve", "--ue", "1,1"]).0, 2);
        assert_eq!(run(&["sweep", "--var", "gamma0", "--values", "10:0:30"]).0, 2);
        assert_eq!(
            run(&["sweep", "--var", "gamma0", "--values", "10", "--schemes", "nobody"]).0,
            2
        );
        assert_eq!(run(&["--set", "nokey=1", "config-dump"]).0, 2);
        assert_eq!(run(&[]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn sweep_to_stdout() {
        let (code, out, _) = run(&[
            "sweep",
            "--var",
            "gamma0",
            "--values",
            "10:10:30dB",
            "--samples",
            "5",
            "--schemes",
            "proposed,benchmark2",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 1 + 3 * 2);
        assert!(out.starts_with(super::super::csv::HEADER));
    }

    #[test]
    fn verify_small_run_passes() {
        let (code, out, err) = run(&["verify", "--seed", "7", "--trials", "5"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(out.contains("5 of 5"));
    }

    #[test]
    fn verify_failure_exits_1() {
        // a position tolerance below the grid step cannot be met
        let (code, _, err) = run(&["verify", "--trials", "3", "--tol-position", "0", "--step", "0.5"]);
        assert_eq!(code, 1);
        assert!(err.contains("FAILED"));
    }

    #[test]
    fn direct_link_flags() {
        let mut args = DirectLinkArgs {
            b1_elements: Some(16),
            b1_element_gain: None,
            b1_exponent: Some(3.0),
            b1_shadow_var: Some(4.0),
            b1_shadow_std: None,
            b1_array_gain: Some(ArrayGainArg::N2),
            b1_distance: Some(70.0),
        };
        let b1 = build_direct(&args).unwrap();
        assert_eq!(b1.num_elements, 16);
        assert_eq!(b1.shadowing_std_db, 2.0);
        assert_eq!(b1.array_gain, ArrayGainModel::Squared);
        assert_eq!(b1.geometry, DirectGeometry::Fixed(70.0));
        args.b1_exponent = Some(1.0);
        assert!(build_direct(&args).is_err());
    }
}
