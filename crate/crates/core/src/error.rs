use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Stationary-point analysis needs a strictly positive attenuation.
    #[error("no stationary analysis: waveguide attenuation is zero")]
    NoStationaryAnalysis,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("sample {index} (ue = ({x:.4}, {y:.4}) m) failed: {source}")]
    Sample {
        index: usize,
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
