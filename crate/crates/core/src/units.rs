//! Unit conversion helpers and parsing of human-friendly quantities
//! (`28GHz`, `20dB`, `50m`) used at the CLI and config-file boundary.
//!
//! Everything past this boundary is SI and linear.

use crate::error::{Error, Result};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// What a textual value is expected to measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityKind {
    /// Hz; accepts `Hz`, `kHz`, `MHz`, `GHz`, `THz`.
    Frequency,
    /// Metres; accepts an optional `m` or `km`.
    Length,
    /// Watts; accepts `W`, `mW`, `dBm`, `dBW`.
    Power,
    /// A value that lives in dB (noise figure, antenna gain). An optional
    /// `dB`/`dBi` suffix is stripped, the number is returned as-is.
    Decibel,
    /// A linear ratio. A bare number is taken as linear; a `dB` suffix is
    /// converted to linear.
    Ratio,
    /// Plain number (attenuation per metre, efficiency, counts).
    Plain,
}

fn split_number(text: &str) -> Result<(f64, &str)> {
    let t = text.trim();
    // longest numeric prefix that parses
    let end = t
        .char_indices()
        .map(|(i, c)| i + c.len_utf8())
        .rfind(|&i| t[..i].parse::<f64>().is_ok())
        .ok_or_else(|| Error::Parse(format!("`{text}` does not start with a number")))?;
    let value: f64 = t[..end].parse().expect("prefix checked above");
    Ok((value, t[end..].trim()))
}

/// Parse `text` as a quantity of the given kind and return it in SI/linear
/// units (except [`QuantityKind::Decibel`], which stays in dB).
pub fn parse_quantity(text: &str, kind: QuantityKind) -> Result<f64> {
    let (v, unit) = split_number(text)?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("`{text}` is not finite")));
    }
    let bad = || Error::Parse(format!("unit `{unit}` is not valid for a {kind:?} value (`{text}`)"));
    let out = match kind {
        QuantityKind::Frequency => match unit {
            "" | "Hz" | "hz" => v,
            "kHz" | "khz" => v * 1e3,
            "MHz" | "mhz" => v * 1e6,
            "GHz" | "ghz" => v * 1e9,
            "THz" | "thz" => v * 1e12,
            _ => return Err(bad()),
        },
        QuantityKind::Length => match unit {
            "" | "m" => v,
            "km" => v * 1e3,
            "cm" => v * 1e-2,
            "mm" => v * 1e-3,
            _ => return Err(bad()),
        },
        QuantityKind::Power => match unit {
            "" | "W" => v,
            "mW" => v * 1e-3,
            "dBW" => db_to_linear(v),
            "dBm" => db_to_linear(v) * 1e-3,
            _ => return Err(bad()),
        },
        QuantityKind::Decibel => match unit {
            "" | "dB" | "db" | "dBi" | "dbi" => v,
            _ => return Err(bad()),
        },
        QuantityKind::Ratio => match unit {
            "" => v,
            "dB" | "db" => db_to_linear(v),
            _ => return Err(bad()),
        },
        QuantityKind::Plain => match unit {
            "" => v,
            _ => return Err(bad()),
        },
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_round_trip() {
        assert_eq!(db_to_linear(20.0), 100.0);
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((linear_to_db(db_to_linear(7.3)) - 7.3).abs() < 1e-12);
    }

    #[test]
    fn parses_units() {
        assert_eq!(parse_quantity("28GHz", QuantityKind::Frequency).unwrap(), 28e9);
        assert_eq!(parse_quantity("400 MHz", QuantityKind::Frequency).unwrap(), 400e6);
        assert_eq!(parse_quantity("2.8e10", QuantityKind::Frequency).unwrap(), 2.8e10);
        assert_eq!(parse_quantity("20dB", QuantityKind::Ratio).unwrap(), 100.0);
        assert_eq!(parse_quantity("100", QuantityKind::Ratio).unwrap(), 100.0);
        assert_eq!(parse_quantity("20dBi", QuantityKind::Decibel).unwrap(), 20.0);
        assert_eq!(parse_quantity("50m", QuantityKind::Length).unwrap(), 50.0);
        assert_eq!(parse_quantity("0.2", QuantityKind::Power).unwrap(), 0.2);
        assert!((parse_quantity("30dBm", QuantityKind::Power).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_units() {
        assert!(parse_quantity("28 parsecs", QuantityKind::Frequency).is_err());
        assert!(parse_quantity("20dB", QuantityKind::Length).is_err());
        assert!(parse_quantity("GHz", QuantityKind::Frequency).is_err());
        assert!(parse_quantity("3dB", QuantityKind::Plain).is_err());
        assert!(parse_quantity("inf", QuantityKind::Plain).is_err());
    }
}
