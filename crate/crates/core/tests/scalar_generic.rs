use mmw_core::cells::{solve, SolverParams, Topology};
use mmw_core::discovery::{discovery_cdf, mean_discovery_epochs, min_epochs_for_probability};
use mmw_core::model::{max_range, range_gain, Mode};
use mmw_core::sim::{closed_form_coverage, mc_coverage};
use mmw_core::{DiscoveryModelF32, DiscoveryModelF64, RadioParamsF32, RadioParamsF64, SimConfigF32, SimConfigF64};

fn close(a: f32, b: f64, rel: f64) -> bool {
    (a as f64 - b).abs() <= rel * b.abs().max(1e-30)
}

#[test]
fn f32_tracks_f64() {
    assert!(close(range_gain(30f32, 3.0).unwrap(), range_gain(30f64, 3.0).unwrap(), 1e-5));
    for mode in Mode::ALL {
        let r32 = max_range(&RadioParamsF32::control_channel_28ghz(), mode, 20f32.to_radians(), true).unwrap();
        let r64 = max_range(&RadioParamsF64::control_channel_28ghz(), mode, 20f64.to_radians(), true).unwrap();
        assert!(close(r32, r64, 1e-5));
        assert!(close(closed_form_coverage(1.6e-5f32, r32).unwrap(), closed_form_coverage(1.6e-5, r64).unwrap(), 1e-4));
    }
    for rho in [1e-3, 0.5, 3.5, 40.0] {
        assert!(close(mean_discovery_epochs(rho as f32, 18).unwrap(), mean_discovery_epochs(rho, 18).unwrap(), 1e-5));
        assert!(close(discovery_cdf(rho as f32, 18, 5).unwrap(), discovery_cdf(rho, 18, 5).unwrap(), 1e-4));
    }
    assert_eq!(min_epochs_for_probability(3.5f32, 18, 0.99).unwrap(), min_epochs_for_probability(3.5f64, 18, 0.99).unwrap());

    let m32 = DiscoveryModelF32::new(1e-4, &RadioParamsF32::control_channel_28ghz(), Mode::Fully, 20f32.to_radians()).unwrap();
    let m64 = DiscoveryModelF64::new(1e-4, &RadioParamsF64::control_channel_28ghz(), Mode::Fully, 20f64.to_radians()).unwrap();
    assert_eq!(m32.sector_count, m64.sector_count);
    assert!(close(m32.effective_density, m64.effective_density, 1e-5));
}

#[test]
fn f32_monte_carlo_runs() {
    let c32 = SimConfigF32::new(RadioParamsF32::control_channel_28ghz(), Mode::Semi, 20f32.to_radians(), 2e-6)
        .unwrap()
        .with_trials(20_000);
    let c64 = SimConfigF64::new(RadioParamsF64::control_channel_28ghz(), Mode::Semi, 20f64.to_radians(), 2e-6)
        .unwrap()
        .with_trials(20_000);
    let a = mc_coverage(&c32).unwrap();
    let b = mc_coverage(&c64).unwrap();
    assert!((a.probability as f64 - b.probability).abs() < 4.0 * b.std_err);
}

#[test]
fn f32_cell_formation() {
    let radio = RadioParamsF32::control_channel_28ghz().with_sidelobe_gain(0.01).unwrap();
    let p = Topology::<f32>::random(4, 2, 8, 400.0).unwrap().to_problem(radio, Mode::Fully, 2).unwrap();
    let s = solve(&p, &SolverParams::default()).unwrap();
    s.verify(&p).unwrap();
    assert!(s.objective.is_finite());
}
