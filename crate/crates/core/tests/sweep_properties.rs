use pinchlink::benchmarks::Benchmark1Config;
use pinchlink::experiments::csv::to_csv_string;
use pinchlink::experiments::{parse_csv, run_sweep, Scheme, SweepSpec, SweepVariable};
use pinchlink::SystemConfig;

fn snr_spec(values: &[f64], samples: usize, seed: u64) -> SweepSpec {
    SweepSpec {
        ue_samples: samples,
        seed,
        ..SweepSpec::new(SweepVariable::SnrTargetDb, values.to_vec())
    }
}

fn mean(records: &[pinchlink::experiments::SweepRecord], i: usize, s: Scheme) -> f64 {
    records[i].get(s).unwrap().mean_total_power_w
}

#[test]
fn same_seed_same_bits_different_seed_differs() {
    let cfg = SystemConfig::default();
    let b1 = Benchmark1Config::default();
    let a = run_sweep(&cfg, &b1, &snr_spec(&[10.0, 20.0], 300, 5)).unwrap();
    let b = run_sweep(&cfg, &b1, &snr_spec(&[10.0, 20.0], 300, 5)).unwrap();
    let c = run_sweep(&cfg, &b1, &snr_spec(&[10.0, 20.0], 300, 6)).unwrap();
    assert_eq!(to_csv_string(&a), to_csv_string(&b));
    assert_ne!(to_csv_string(&a), to_csv_string(&c));
}

#[test]
fn scheme_subset_does_not_change_values() {
    let cfg = SystemConfig::default();
    let b1 = Benchmark1Config::default();
    let all = run_sweep(&cfg, &b1, &snr_spec(&[12.0, 24.0], 200, 3)).unwrap();
    let only = run_sweep(
        &cfg,
        &b1,
        &SweepSpec {
            schemes: vec![Scheme::Benchmark2],
            ..snr_spec(&[12.0, 24.0], 200, 3)
        },
    )
    .unwrap();
    for (i, rec) in only.iter().enumerate() {
        assert_eq!(rec.schemes.len(), 1);
        assert_eq!(
            rec.get(Scheme::Benchmark2).unwrap().mean_total_power_w.to_bits(),
            mean(&all, i, Scheme::Benchmark2).to_bits()
        );
    }
}

#[test]
fn means_converge_with_sample_count() {
    let cfg = SystemConfig::default();
    let b1 = Benchmark1Config::default();
    let small = run_sweep(&cfg, &b1, &snr_spec(&[20.0], 20_000, 11)).unwrap();
    let large = run_sweep(&cfg, &b1, &snr_spec(&[20.0], 40_000, 12)).unwrap();
    for (s, tol) in [
        (Scheme::Proposed, 0.01),
        (Scheme::Benchmark2, 0.01),
        (Scheme::Benchmark1, 0.05),
    ] {
        let (a, b) = (mean(&small, 0, s), mean(&large, 0, s));
        assert!((a - b).abs() / b < tol, "{}: {a} vs {b}", s.as_str());
    }
}

#[test]
fn bs_power_is_a_share_of_total() {
    let cfg = SystemConfig::default();
    let recs = run_sweep(&cfg, &Benchmark1Config::default(), &snr_spec(&[10.0, 30.0], 100, 2)).unwrap();
    for r in &recs {
        for m in &r.schemes {
            assert!(m.mean_bs_power_w > 0.0 && m.mean_bs_power_w < m.mean_total_power_w);
        }
        assert_eq!(r.n_samples, 100);
    }
}

#[test]
fn distance_sweep_leaves_snr_target_alone() {
    let cfg = SystemConfig::default();
    let b1 = Benchmark1Config::default();
    let spec = SweepSpec {
        ue_samples: 100,
        ..SweepSpec::new(SweepVariable::BsRelayDistanceM, vec![50.0])
    };
    let by_distance = run_sweep(&cfg, &b1, &spec).unwrap();
    // defaults already use 50 m and 20 dB
    let by_snr = run_sweep(&cfg, &b1, &snr_spec(&[20.0], 100, 1)).unwrap();
    for s in Scheme::ALL {
        let (a, b) = (mean(&by_distance, 0, s), mean(&by_snr, 0, s));
        assert!((a - b).abs() <= 1e-12 * b, "{}: {a} vs {b}", s.as_str());
    }
}

#[test]
fn csv_round_trip_of_real_sweep() {
    let recs = run_sweep(
        &SystemConfig::default(),
        &Benchmark1Config::default(),
        &snr_spec(&[10.0, 15.0, 20.0], 50, 9),
    )
    .unwrap();
    assert_eq!(parse_csv(&to_csv_string(&recs)).unwrap(), recs);
}
