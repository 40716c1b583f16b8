//! Total-power minimisation for a wireless-fed pinching-antenna link.
//!
//! A base station reaches a full-duplex amplify-and-forward relay over a
//! horn-antenna hop; the relay feeds a dielectric waveguide whose pinching
//! antenna can slide along it to serve a ground user. This crate provides
//! the link model, closed-form optimal placement and power allocation,
//! brute-force verification oracles, two comparison schemes and a
//! Monte Carlo sweep harness.

pub mod benchmarks;
pub mod config;
pub mod error;
pub mod experiments;
pub mod model;
pub mod optimizer;
pub mod oracle;
pub mod units;

pub use config::{SystemConfig, UePosition};
pub use error::{Error, Result};
pub use model::ChannelGains;
pub use optimizer::{solve, PowerSolution};
