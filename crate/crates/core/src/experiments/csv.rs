//! Sweep results as CSV.
//!
//! Header `variable,scheme,mean_total_power_w,mean_bs_power_w,n_samples`, one
//! row per (value, scheme) in sweep order, LF line endings. Reals are written
//! in scientific notation with 17 significant digits, which round-trips every
//! f64 exactly.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use super::sweep::{Scheme, SchemeMean, SweepRecord};
use crate::error::{Error, Result};

pub const HEADER: &str = "variable,scheme,mean_total_power_w,mean_bs_power_w,n_samples";

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_csv_string(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (1 + records.len() * 3));
    out.push_str(HEADER);
    out.push('\n');
    for r in records {
        for m in &r.schemes {
            writeln!(
                out,
                "{},{},{},{},{}",
                real(r.variable_value),
                m.scheme.as_str(),
                real(m.mean_total_power_w),
                real(m.mean_bs_power_w),
                r.n_samples
            )
            .unwrap();
        }
    }
    out
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut w: W) -> std::io::Result<()> {
    w.write_all(to_csv_string(records).as_bytes())?;
    w.flush()
}

pub fn export_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    write_csv(records, std::io::BufWriter::new(file)).map_err(io)
}

/// Read back a CSV produced by [`to_csv_string`]. Consecutive rows with the
/// same variable value form one record.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == HEADER => {}
        other => return Err(Error::Parse(format!("bad CSV header: {other:?}"))),
    }
    let mut records: Vec<SweepRecord> = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let cols: Vec<&str> = line.split(',').collect();
        let [value, scheme, total, bs, n] = cols.as_slice() else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected 5 columns, got {}",
                cols.len()
            )));
        };
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: `{s}` is not a number")))
        };
        let value = num(value)?;
        let mean = SchemeMean {
            scheme: scheme.parse::<Scheme>()?,
            mean_total_power_w: num(total)?,
            mean_bs_power_w: num(bs)?,
        };
        let n_samples: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: `{n}` is not a count")))?;
        match records.last_mut() {
            Some(r) if r.variable_value.to_bits() == value.to_bits() => {
                if r.n_samples != n_samples {
                    return Err(Error::Parse(format!(
                        "line {lineno}: sample count changes within a record"
                    )));
                }
                r.schemes.push(mean);
            }
            _ => records.push(SweepRecord {
                variable_value: value,
                schemes: vec![mean],
                n_samples,
            }),
        }
    }
    Ok(records)
}

/// A gnuplot script that plots every scheme in `csv_path` against the swept
/// variable on a log power axis.
pub fn gnuplot_script(csv_path: &Path, x_label: &str, schemes: &[Scheme]) -> String {
    let file = csv_path.display().to_string().replace('\'', "\\'");
    let mut s = String::new();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set key top left").unwrap();
    writeln!(s, "set logscale y").unwrap();
    writeln!(s, "set xlabel '{x_label}'").unwrap();
    writeln!(s, "set ylabel 'mean total power (W)'").unwrap();
    writeln!(s, "set grid").unwrap();
    let plots: Vec<String> = schemes
        .iter()
        .map(|sch| {
            let name = sch.as_str();
            format!("'{file}' skip 1 using 1:(strcol(2) eq '{name}' ? $3 : NaN) with linespoints title '{name}'")
        })
        .collect();
    writeln!(s, "plot {}", plots.join(", \\\n     ")).unwrap();
    writeln!(s, "pause mouse close").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(v: f64, schemes: &[(Scheme, f64, f64)], n: usize) -> SweepRecord {
        SweepRecord {
            variable_value: v,
            schemes: schemes
                .iter()
                .map(|&(scheme, t, b)| SchemeMean {
                    scheme,
                    mean_total_power_w: t,
                    mean_bs_power_w: b,
                })
                .collect(),
            n_samples: n,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(to_csv_string(&[]), format!("{HEADER}\n"));
    }

    #[test]
    fn one_record_two_schemes() {
        let r = record(
            20.0,
            &[(Scheme::Proposed, 0.4, 0.01), (Scheme::Benchmark2, 1.1, 0.02)],
            1000,
        );
        let s = to_csv_string(&[r]);
        assert_eq!(s.lines().count(), 3);
        assert!(!s.contains('\r'));
        let row = s.lines().nth(1).unwrap();
        assert_eq!(
            row,
            "2.0000000000000000e1,proposed,4.0000000000000002e-1,1.0000000000000000e-2,1000"
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_csv("nope\n").is_err());
        assert!(parse_csv(&format!("{HEADER}\n1,proposed,2,3\n")).is_err());
        assert!(parse_csv(&format!("{HEADER}\n1,nobody,2,3,4\n")).is_err());
        assert!(parse_csv(&format!("{HEADER}\nx,proposed,2,3,4\n")).is_err());
    }

    #[test]
    fn export_reports_path_on_failure() {
        let err = export_csv(&[], Path::new("/nonexistent-dir/out.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
    }

    #[test]
    fn gnuplot_mentions_every_scheme() {
        let s = gnuplot_script(Path::new("fig1.csv"), "SNR target (dB)", &Scheme::ALL);
        for sch in Scheme::ALL {
            assert!(s.contains(&format!("eq '{}'", sch.as_str())));
        }
    }

    fn any_f64() -> impl Strategy<Value = f64> {
        prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), 1e-30f64..1e30,]
    }

    proptest! {
        #[test]
        fn round_trip_is_bitwise(
            rows in prop::collection::vec((any_f64(), any_f64(), any_f64(), any_f64(), any_f64(), 1usize..100_000), 0..20)
        ) {
            let mut records: Vec<SweepRecord> = Vec::new();
            let mut v = -1e6;
            for (dv, t1, b1, t2, b2, n) in rows {
                // strictly increasing variable values
                v += 1.0 + dv.abs().min(1e3);
                records.push(record(v, &[(Scheme::Proposed, t1, b1), (Scheme::Benchmark1, t2, b2)], n));
            }
            let back = parse_csv(&to_csv_string(&records)).unwrap();
            prop_assert_eq!(back.len(), records.len());
            for (a, b) in back.iter().zip(&records) {
                prop_assert_eq!(a.variable_value.to_bits(), b.variable_value.to_bits());
                prop_assert_eq!(a.n_samples, b.n_samples);
                for (x, y) in a.schemes.iter().zip(&b.schemes) {
                    prop_assert_eq!(x.scheme, y.scheme);
                    prop_assert_eq!(x.mean_total_power_w.to_bits(), y.mean_total_power_w.to_bits());
                    prop_assert_eq!(x.mean_bs_power_w.to_bits(), y.mean_bs_power_w.to_bits());
                }
            }
        }
    }
}
