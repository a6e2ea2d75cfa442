//! Cross-solver invariants on randomized scenarios.

use large_system::{
    mf_closed_form_equal_power, mf_orthogonal, mf_sinr, mmse_equal_power, mmse_orthogonal,
    noise_var_for_snr_db, random_signature_mmse_baseline, solve_mf_interference, solve_mmse_sinr,
    Ensemble, PowerProfile, Regime, ScenarioParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_scenario(rng: &mut ChaCha8Rng) -> ScenarioParams {
    let n_atoms = rng.gen_range(1..=3);
    let mut atoms: Vec<(f64, f64)> = (0..n_atoms)
        .map(|_| (rng.gen_range(0.05..10.0), rng.gen_range(0.2..1.0)))
        .collect();
    let total: f64 = atoms.iter().map(|&(_, w)| w).sum();
    for a in &mut atoms {
        a.1 /= total;
    }
    let profile = PowerProfile::new(atoms).unwrap();
    let kbar = rng.gen_range(0.25..3.0);
    let noise_var = noise_var_for_snr_db(1.0, rng.gen_range(3.0..12.0));
    ScenarioParams::new(
        kbar,
        0.0,
        noise_var,
        1.0,
        1.0,
        profile,
        Ensemble::IidGaussian,
    )
    .unwrap()
}

#[test]
fn feedback_monotonicity_on_random_scenarios() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..5 {
        let base = random_scenario(&mut rng);
        let mut prev_i = f64::INFINITY;
        let mut prev_beta = 0.0;
        for step in 0..20 {
            let bbar = step as f64 * 0.25;
            let s = base.with_bbar(bbar);
            let i = solve_mf_interference(&s).unwrap();
            let beta = solve_mmse_sinr(&s).unwrap();
            assert!(
                i.value < prev_i + 1e-12,
                "case {case} bbar={bbar}: interference not decreasing"
            );
            assert!(
                beta.value > prev_beta - 1e-12,
                "case {case} bbar={bbar}: SINR not increasing"
            );
            assert!(i.bracket.0 <= i.value && i.value <= i.bracket.1);
            assert!(beta.bracket.0 <= beta.value && beta.value <= beta.bracket.1);
            assert!(i.residual <= 1e-10 && beta.residual <= 1e-10);
            prev_i = i.value;
            prev_beta = beta.value;
        }
    }
}

#[test]
fn mmse_never_below_matched_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..5 {
        let base = random_scenario(&mut rng);
        for step in 0..10 {
            let s = base.with_bbar(step as f64 * 0.4);
            let gamma = mf_sinr(&s, solve_mf_interference(&s).unwrap().value);
            let beta = solve_mmse_sinr(&s).unwrap().value;
            assert!(
                beta >= gamma - 1e-9,
                "kbar={} bbar={}: beta {beta} < gamma {gamma}",
                s.kbar,
                s.bbar
            );
        }
    }
}

#[test]
fn iid_ensemble_dominates_orthogonal() {
    // kbar = 0.5, SNR = 8 dB, both receivers, 20-point feedback grid.
    let noise_var = noise_var_for_snr_db(1.0, 8.0);
    for step in 0..20 {
        let bbar = step as f64 * 4.0 / 19.0;
        let s = ScenarioParams::equal_power(0.5, bbar, noise_var).unwrap();

        let gamma_iid = mf_sinr(&s, solve_mf_interference(&s).unwrap().value);
        let gamma_orth = mf_sinr(&s, mf_orthogonal(0.5, bbar, noise_var).unwrap().value);
        assert!(
            gamma_iid >= gamma_orth - 1e-10,
            "bbar={bbar}: mf iid {gamma_iid} < orth {gamma_orth}"
        );

        let beta_iid = solve_mmse_sinr(&s).unwrap().value;
        let beta_orth = mmse_orthogonal(0.5, bbar, noise_var, 1.0).unwrap().value;
        assert!(
            beta_iid >= beta_orth - 1e-10,
            "bbar={bbar}: mmse iid {beta_iid} < orth {beta_orth}"
        );
    }
}

#[test]
fn saturated_gap_halves_per_feedback_bit() {
    // Equal power, kbar > 1, bbar above the regime threshold: both the
    // interference excess and the SINR shortfall shrink by exactly a
    // factor of two per unit of normalized feedback.
    for &kbar in &[2.0f64, 4.0] {
        let noise_var = 0.1;
        let root = kbar.sqrt();
        let lambda_min = noise_var + (1.0 - root) * (1.0 - root);
        let beta_ceiling = 1.0 / lambda_min;

        let mut mf_gaps = Vec::new();
        let mut mmse_gaps = Vec::new();
        let bbars: Vec<f64> = (0..6).map(|i| 4.0 + i as f64).collect();
        for &bbar in &bbars {
            let s = ScenarioParams::equal_power(kbar, bbar, noise_var).unwrap();
            let i = solve_mf_interference(&s).unwrap();
            assert_eq!(i.regime, Regime::Saturated, "kbar={kbar} bbar={bbar}");
            mf_gaps.push((i.value - lambda_min).ln());
            let b = solve_mmse_sinr(&s).unwrap();
            assert_eq!(b.regime, Regime::Saturated);
            mmse_gaps.push((beta_ceiling - b.value).ln());
        }
        for gaps in [&mf_gaps, &mmse_gaps] {
            let slope = fit_slope(&bbars, gaps);
            assert!(
                (slope - (-std::f64::consts::LN_2)).abs() < 1e-3,
                "kbar={kbar}: slope {slope}"
            );
        }
    }
}

fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[test]
fn equal_power_oracle_grid_spot() {
    // Small grid here; the full acceptance grid runs in the CLI crate.
    for &kbar in &[0.5f64, 1.0, 2.0] {
        for &bbar in &[0.5f64, 2.0] {
            for &snr in &[5.0f64, 10.0] {
                let nv = noise_var_for_snr_db(1.0, snr);
                let s = ScenarioParams::equal_power(kbar, bbar, nv).unwrap();
                let mf_gen = solve_mf_interference(&s).unwrap().value;
                let mf_closed = mf_closed_form_equal_power(kbar, bbar, nv).unwrap().value;
                assert!(
                    (mf_gen - mf_closed).abs() / mf_closed < 1e-6,
                    "mf kbar={kbar} bbar={bbar} snr={snr}"
                );
                let mmse_gen = solve_mmse_sinr(&s).unwrap().value;
                let mmse_closed = mmse_equal_power(kbar, bbar, nv).unwrap().value;
                assert!(
                    (mmse_gen - mmse_closed).abs() / mmse_closed < 1e-6,
                    "mmse kbar={kbar} bbar={bbar} snr={snr}"
                );
            }
        }
    }
}

#[test]
fn load_sweep_is_ordered_like_fig1() {
    // MMSE, SNR = 5 dB: SINR decreases with load at every feedback level
    // and increases with feedback for every load.
    let noise_var = noise_var_for_snr_db(1.0, 5.0);
    let loads = [0.25, 0.5, 1.0, 1.25];
    let bbars: Vec<f64> = (0..9).map(|i| i as f64 * 0.5).collect();
    let mut prev_curve: Option<Vec<f64>> = None;
    for &kbar in &loads {
        let curve: Vec<f64> = bbars
            .iter()
            .map(|&bbar| {
                let s = ScenarioParams::equal_power(kbar, bbar, noise_var).unwrap();
                solve_mmse_sinr(&s).unwrap().value
            })
            .collect();
        for w in curve.windows(2) {
            assert!(w[1] > w[0] - 1e-12);
        }
        if let Some(prev) = &prev_curve {
            for (hi, lo) in prev.iter().zip(&curve) {
                assert!(lo < hi, "larger load must not beat smaller load");
            }
        }
        prev_curve = Some(curve);
    }
}

#[test]
fn baseline_agrees_with_zero_feedback_orthogonal_peak() {
    // At bbar = 0 the orthogonal-ensemble root sits exactly on the
    // random-signature average for that spectrum.
    let noise_var = 0.1;
    for &kbar in &[0.3f64, 0.7, 0.95] {
        let out = mmse_orthogonal(kbar, 0.0, noise_var, 1.0).unwrap();
        let expected = kbar / (1.0 + noise_var) + (1.0 - kbar) / noise_var;
        assert!((out.value - expected).abs() < 1e-12);
        let s = ScenarioParams::equal_power(kbar, 0.0, noise_var).unwrap();
        let iid_baseline = random_signature_mmse_baseline(&s).unwrap();
        assert!(iid_baseline >= out.value, "averaging inequality direction");
    }
}
