//! C ABI for `pinchlink`.
//!
//! Every fallible function returns a [`PlStatus`]; on failure a description
//! is kept per thread and can be read with [`pl_last_error_message`]. Panics
//! never cross the boundary; they are reported as `PL_STATUS_PANIC`.
//!
//! Handles (`PlConfig`, `PlSweep`) are opaque and must be released with the
//! matching `*_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use pinchlink::benchmarks::{self, ArrayGainModel, Benchmark1Config, DirectGeometry, ShadowingSample};
use pinchlink::experiments::{export_csv, run_sweep, Scheme, SweepRecord, SweepSpec, SweepVariable};
use pinchlink::oracle::{self, Tolerances};
use pinchlink::units::{parse_quantity, QuantityKind};
use pinchlink::{Error, PowerSolution, SystemConfig, UePosition};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Parse = 4,
    Io = 5,
    BufferTooSmall = 6,
    OutOfRange = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlSweepVariable {
    /// SNR target, values in dB.
    SnrTargetDb = 0,
    /// BS–relay distance, values in metres.
    BsRelayDistanceM = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlScheme {
    Proposed = 0,
    Benchmark1 = 1,
    Benchmark2 = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PlPowerSolution {
    pub x_pin_m: f64,
    pub p1_w: f64,
    pub beta_sq: f64,
    pub p2_w: f64,
    pub j_star_w: f64,
    pub total_power_w: f64,
    pub g1_sq: f64,
    pub g2_sq: f64,
    pub sigma_r_sq_w: f64,
    pub sigma_ue_sq_w: f64,
    pub feasible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PlDirectLink {
    pub distance_m: f64,
    pub channel_gain: f64,
    pub transmit_power_w: f64,
    pub total_power_w: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PlVerifyReport {
    pub x_pin_m: f64,
    pub x_grid_m: f64,
    pub position_gap_m: f64,
    pub j_star_w: f64,
    pub j_oracle_w: f64,
    pub power_rel_gap: f64,
    pub position_passed: bool,
    pub power_passed: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PlSchemeMean {
    pub variable_value: f64,
    pub mean_total_power_w: f64,
    pub mean_bs_power_w: f64,
    pub n_samples: u64,
}

/// Scenario parameters for the relay link and the direct-link comparison.
pub struct PlConfig {
    system: SystemConfig,
    direct: Benchmark1Config,
}

/// Result of a sweep.
pub struct PlSweep {
    records: Vec<SweepRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(PlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = status_of(&e);
        Failure(status, e.to_string())
    }
}

fn status_of(e: &Error) -> PlStatus {
    match e {
        Error::InvalidArgument(_) => PlStatus::InvalidArgument,
        Error::Domain { .. } | Error::NoStationaryAnalysis => PlStatus::Domain,
        Error::Parse(_) => PlStatus::Parse,
        Error::Io { .. } => PlStatus::Io,
        Error::Sample { source, .. } => status_of(source),
    }
}

fn fail(status: PlStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            PlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| fail(PlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| fail(PlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(PlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PlStatus::Parse, format!("{what} is not valid UTF-8")))
}

fn ue(cfg: &PlConfig, x: f64, y: f64) -> Result<UePosition, Failure> {
    Ok(UePosition::new(&cfg.system, x, y)?)
}

fn to_c_solution(s: &PowerSolution) -> PlPowerSolution {
    PlPowerSolution {
        x_pin_m: s.x_pin_m,
        p1_w: s.p1_w,
        beta_sq: s.beta_sq,
        p2_w: s.p2_w,
        j_star_w: s.j_star_w,
        total_power_w: s.total_power_w,
        g1_sq: s.gains.g1_sq,
        g2_sq: s.gains.g2_sq,
        sigma_r_sq_w: s.gains.sigma_r_sq_w,
        sigma_ue_sq_w: s.gains.sigma_ue_sq_w,
        feasible: s.feasible,
    }
}

fn set_direct(b1: &mut Benchmark1Config, key: &str, value: &str) -> Result<(), Failure> {
    let mut next = *b1;
    let plain = |v: &str| parse_quantity(v, QuantityKind::Plain);
    match key {
        "b1_num_elements" => {
            next.num_elements = value
                .trim()
                .parse()
                .map_err(|_| fail(PlStatus::Parse, format!("b1_num_elements: `{value}` is not a count")))?
        }
        "b1_element_gain_dbi" => next.element_gain_dbi = parse_quantity(value, QuantityKind::Decibel)?,
        "b1_path_loss_exponent" => next.path_loss_exponent = plain(value)?,
        "b1_shadowing_std_db" => next.shadowing_std_db = parse_quantity(value, QuantityKind::Decibel)?,
        "b1_rf_chain_power_w_per_element" => {
            next.rf_chain_power_w_per_element = parse_quantity(value, QuantityKind::Power)?
        }
        "b1_reference_distance_m" => next.reference_distance_m = parse_quantity(value, QuantityKind::Length)?,
        "b1_array_gain" => {
            next.array_gain = match value.trim() {
                "n" | "N" | "linear" => ArrayGainModel::Linear,
                "n2" | "N2" | "squared" => ArrayGainModel::Squared,
                other => {
                    return Err(fail(
                        PlStatus::Parse,
                        format!("b1_array_gain: expected n or n2, got `{other}`"),
                    ))
                }
            }
        }
        "b1_distance_m" => {
            next.geometry = match value.trim() {
                "feed" | "none" => DirectGeometry::ViaFeed,
                v => DirectGeometry::Fixed(parse_quantity(v, QuantityKind::Length)?),
            }
        }
        other => return Err(fail(PlStatus::Parse, format!("unknown configuration key `{other}`"))),
    }
    next.validate()?;
    *b1 = next;
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pl_status_str(status: PlStatus) -> *const c_char {
    let s: &'static str = match status {
        PlStatus::Ok => "ok\0",
        PlStatus::NullPointer => "null pointer\0",
        PlStatus::InvalidArgument => "invalid argument\0",
        PlStatus::Domain => "value outside its domain\0",
        PlStatus::Parse => "parse error\0",
        PlStatus::Io => "I/O error\0",
        PlStatus::BufferTooSmall => "buffer too small\0",
        PlStatus::OutOfRange => "index out of range\0",
        PlStatus::Panic => "internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New configuration with default parameters. Never returns NULL.
#[no_mangle]
pub extern "C" fn pl_config_new() -> *mut PlConfig {
    Box::into_raw(Box::new(PlConfig {
        system: SystemConfig::default(),
        direct: Benchmark1Config::default(),
    }))
}

/// Independent copy of `cfg`, or NULL if `cfg` is NULL.
#[no_mangle]
pub unsafe extern "C" fn pl_config_clone(cfg: *const PlConfig) -> *mut PlConfig {
    match cfg.as_ref() {
        Some(c) => Box::into_raw(Box::new(PlConfig {
            system: c.system.clone(),
            direct: c.direct,
        })),
        None => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn pl_config_free(cfg: *mut PlConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Set one parameter. Keys are those of the configuration file format plus
/// the direct-link keys `b1_num_elements`, `b1_element_gain_dbi`,
/// `b1_path_loss_exponent`, `b1_shadowing_std_db`,
/// `b1_rf_chain_power_w_per_element`, `b1_reference_distance_m`,
/// `b1_array_gain` (`n` or `n2`) and `b1_distance_m` (`feed` or a length).
/// Values accept unit suffixes. The configuration is unchanged on failure.
#[no_mangle]
pub unsafe extern "C" fn pl_config_set(cfg: *mut PlConfig, key: *const c_char, value: *const c_char) -> PlStatus {
    guard(|| {
        let cfg = deref_mut(cfg, "cfg")?;
        let key = c_str(key, "key")?;
        let value = c_str(value, "value")?;
        if key.starts_with("b1_") {
            return set_direct(&mut cfg.direct, key, value);
        }
        let mut next = cfg.system.clone();
        next.set(key, value)?;
        next.validate()?;
        cfg.system = next;
        Ok(())
    })
}

/// Apply a `key = value` configuration file on top of the current values.
#[no_mangle]
pub unsafe extern "C" fn pl_config_load(cfg: *mut PlConfig, path: *const c_char) -> PlStatus {
    guard(|| {
        let cfg = deref_mut(cfg, "cfg")?;
        let path = PathBuf::from(c_str(path, "path")?);
        let text = std::fs::read_to_string(&path).map_err(|source| Error::Io { path, source })?;
        let mut next = cfg.system.clone();
        next.apply_text(&text)?;
        next.validate()?;
        cfg.system = next;
        Ok(())
    })
}

/// Write the relay-link configuration in file format into `buf` (capacity
/// `len` bytes, NUL included). `*needed` receives the required capacity even
/// when the buffer is too small; `buf` may be NULL when `len` is 0.
#[no_mangle]
pub unsafe extern "C" fn pl_config_dump(
    cfg: *const PlConfig,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let text = cfg.system.to_text();
        let required = text.len() + 1;
        if let Some(n) = needed.as_mut() {
            *n = required;
        }
        if len < required {
            return Err(fail(
                PlStatus::BufferTooSmall,
                format!("configuration needs {required} bytes, buffer has {len}"),
            ));
        }
        if buf.is_null() {
            return Err(fail(PlStatus::NullPointer, "buf is null"));
        }
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        Ok(())
    })
}

/// Optimal pinching-antenna position and power allocation for a user at
/// (`x_ue_m`, `y_ue_m`).
#[no_mangle]
pub unsafe extern "C" fn pl_solve(
    cfg: *const PlConfig,
    x_ue_m: f64,
    y_ue_m: f64,
    out: *mut PlPowerSolution,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let out = deref_mut(out, "out")?;
        let s = pinchlink::solve(&cfg.system, &ue(cfg, x_ue_m, y_ue_m)?)?;
        *out = to_c_solution(&s);
        Ok(())
    })
}

/// Same relay link with the antenna fixed at the feed point.
#[no_mangle]
pub unsafe extern "C" fn pl_benchmark2(
    cfg: *const PlConfig,
    x_ue_m: f64,
    y_ue_m: f64,
    out: *mut PlPowerSolution,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let out = deref_mut(out, "out")?;
        let s = benchmarks::benchmark2_power(&cfg.system, &ue(cfg, x_ue_m, y_ue_m)?)?;
        *out = to_c_solution(&s);
        Ok(())
    })
}

/// Direct BS–user link power for one shadowing realisation (dB of extra loss).
#[no_mangle]
pub unsafe extern "C" fn pl_benchmark1(
    cfg: *const PlConfig,
    x_ue_m: f64,
    y_ue_m: f64,
    shadowing_db: f64,
    out: *mut PlDirectLink,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let out = deref_mut(out, "out")?;
        let u = ue(cfg, x_ue_m, y_ue_m)?;
        let d = cfg.direct.bs_ue_distance_m(&cfg.system, &u);
        let p = benchmarks::benchmark1_power(&cfg.system, &cfg.direct, d, &ShadowingSample::fixed(shadowing_db))?;
        *out = PlDirectLink {
            distance_m: d,
            channel_gain: p.channel_gain,
            transmit_power_w: p.transmit_power_w,
            total_power_w: p.total_power_w,
        };
        Ok(())
    })
}

/// Check the closed-form solution for one user against the brute-force
/// oracles with the default tolerances. The verdict is in the report; the
/// status only signals whether the check could run.
#[no_mangle]
pub unsafe extern "C" fn pl_verify(
    cfg: *const PlConfig,
    x_ue_m: f64,
    y_ue_m: f64,
    out: *mut PlVerifyReport,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let out = deref_mut(out, "out")?;
        let (pos, pow) = oracle::verify_scenario(&cfg.system, &ue(cfg, x_ue_m, y_ue_m)?, &Tolerances::default())?;
        *out = PlVerifyReport {
            x_pin_m: pos.closed_form_value,
            x_grid_m: pos.oracle_value,
            position_gap_m: pos.abs_gap,
            j_star_w: pow.closed_form_value,
            j_oracle_w: pow.oracle_value,
            power_rel_gap: pow.rel_gap,
            position_passed: pos.passed,
            power_passed: pow.passed,
        };
        Ok(())
    })
}

/// Run a sweep over `n_values` strictly increasing values with all three
/// schemes. `threads` = 0 uses every core; the result does not depend on it.
/// On success `*out` owns a new handle to release with `pl_sweep_free`.
#[no_mangle]
pub unsafe extern "C" fn pl_sweep_run(
    cfg: *const PlConfig,
    variable: PlSweepVariable,
    values: *const f64,
    n_values: usize,
    ue_samples: u64,
    seed: u64,
    threads: u32,
    out: *mut *mut PlSweep,
) -> PlStatus {
    guard(|| {
        let cfg = deref(cfg, "cfg")?;
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        if n_values > 0 && values.is_null() {
            return Err(fail(PlStatus::NullPointer, "values is null"));
        }
        let values = if n_values == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(values, n_values).to_vec()
        };
        let variable = match variable {
            PlSweepVariable::SnrTargetDb => SweepVariable::SnrTargetDb,
            PlSweepVariable::BsRelayDistanceM => SweepVariable::BsRelayDistanceM,
        };
        let spec = SweepSpec {
            ue_samples: usize::try_from(ue_samples)
                .map_err(|_| fail(PlStatus::InvalidArgument, "ue_samples too large"))?,
            seed,
            ..SweepSpec::new(variable, values)
        };
        let mut pool = rayon::ThreadPoolBuilder::new();
        if threads > 0 {
            pool = pool.num_threads(threads as usize);
        }
        let pool = pool
            .build()
            .map_err(|e| fail(PlStatus::InvalidArgument, format!("thread pool: {e}")))?;
        let records = pool.install(|| run_sweep(&cfg.system, &cfg.direct, &spec))?;
        *out = Box::into_raw(Box::new(PlSweep { records }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pl_sweep_free(sweep: *mut PlSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}

/// Number of sweep values in the result, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn pl_sweep_len(sweep: *const PlSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.records.len())
}

/// Mean powers of `scheme` at sweep value number `index`.
#[no_mangle]
pub unsafe extern "C" fn pl_sweep_get(
    sweep: *const PlSweep,
    index: usize,
    scheme: PlScheme,
    out: *mut PlSchemeMean,
) -> PlStatus {
    guard(|| {
        let sweep = deref(sweep, "sweep")?;
        let out = deref_mut(out, "out")?;
        let record = sweep.records.get(index).ok_or_else(|| {
            fail(
                PlStatus::OutOfRange,
                format!("index {index} out of range for {} sweep values", sweep.records.len()),
            )
        })?;
        let scheme = match scheme {
            PlScheme::Proposed => Scheme::Proposed,
            PlScheme::Benchmark1 => Scheme::Benchmark1,
            PlScheme::Benchmark2 => Scheme::Benchmark2,
        };
        let m = record
            .get(scheme)
            .ok_or_else(|| fail(PlStatus::OutOfRange, format!("scheme {} not in sweep", scheme.as_str())))?;
        *out = PlSchemeMean {
            variable_value: record.variable_value,
            mean_total_power_w: m.mean_total_power_w,
            mean_bs_power_w: m.mean_bs_power_w,
            n_samples: record.n_samples as u64,
        };
        Ok(())
    })
}

/// Write the sweep as CSV.
#[no_mangle]
pub unsafe extern "C" fn pl_sweep_write_csv(sweep: *const PlSweep, path: *const c_char) -> PlStatus {
    guard(|| {
        let sweep = deref(sweep, "sweep")?;
        let path = PathBuf::from(c_str(path, "path")?);
        export_csv(&sweep.records, &path)?;
        Ok(())
    })
}
