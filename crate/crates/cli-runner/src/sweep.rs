//! Grid execution and CSV emission.

use crate::config::{ConfigError, Mode, ScenarioSpec, SweepSpec};
use large_system::{
    fold_fading, mf_orthogonal, mf_sinr, mmse_orthogonal, noise_var_for_snr_db,
    solve_mf_interference, solve_mmse_sinr, Ensemble, ScenarioParams, SolveError,
};
use mc_simulator::{
    run_trials_full, write_trial_records, Receiver, SimConfig, TrialRecord, DEFAULT_CODEBOOK_CAP,
};
use std::path::Path;

pub const CSV_HEADER: [&str; 15] = [
    "kbar",
    "bbar",
    "snr_db",
    "ensemble",
    "receiver",
    "channel",
    "analytic_value",
    "analytic_db",
    "sim_mean",
    "sim_mean_db",
    "sim_stderr",
    "n",
    "trials",
    "seed",
    "flag",
];

/// One output row, already stringified for CSV.
#[derive(Debug, Clone)]
pub struct Row {
    pub fields: Vec<String>,
    pub failed: bool,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<Row>,
    pub any_failed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Builds the analytic scenario at one grid point: fading folded into the
/// interferer profile, mean combined gain folded into the desired gain.
pub fn analytic_scenario(
    template: &ScenarioSpec,
    kbar: f64,
    bbar: f64,
) -> Result<ScenarioParams, SolveError> {
    let profile = fold_fading(
        &template.base_powers,
        &template.channel,
        template.fading_points,
    )?;
    ScenarioParams::new(
        kbar,
        bbar,
        noise_var_for_snr_db(template.a1, template.snr_db),
        template.a1,
        template.desired_gain * template.channel.mean_gain(),
        profile,
        template.ensemble,
    )
}

/// Large-system SINR at one grid point.
pub fn analytic_sinr(template: &ScenarioSpec, kbar: f64, bbar: f64) -> Result<f64, SolveError> {
    let scenario = analytic_scenario(template, kbar, bbar)?;
    match (template.ensemble, template.receiver) {
        (Ensemble::IidGaussian, Receiver::MatchedFilter) => {
            let out = solve_mf_interference(&scenario)?;
            Ok(mf_sinr(&scenario, out.value))
        }
        (Ensemble::IidGaussian, Receiver::Mmse) => Ok(solve_mmse_sinr(&scenario)?.value),
        (Ensemble::Orthogonal, Receiver::MatchedFilter) => {
            let out = mf_orthogonal(kbar, bbar, scenario.noise_var)?;
            Ok(mf_sinr(&scenario, out.value))
        }
        (Ensemble::Orthogonal, Receiver::Mmse) => {
            Ok(
                mmse_orthogonal(kbar, bbar, scenario.noise_var, scenario.desired_power_eff())?
                    .value,
            )
        }
    }
}

/// Deterministic interferer power assignment: group counts by cumulative
/// rounding of the profile weights (totals exact, each within one).
pub fn powers_from_profile(profile: &large_system::PowerProfile, count: usize) -> Vec<f64> {
    let mut powers = Vec::with_capacity(count);
    let mut cum = 0.0;
    let mut assigned = 0usize;
    for &(a, w) in profile.atoms() {
        cum += w;
        let upto = (cum * count as f64).round() as usize;
        for _ in assigned..upto {
            powers.push(a);
        }
        assigned = upto;
    }
    debug_assert_eq!(powers.len(), count);
    powers
}

fn integral(x: f64) -> Option<usize> {
    let rounded = x.round();
    if (x - rounded).abs() < 1e-9 && rounded >= 0.0 {
        Some(rounded as usize)
    } else {
        None
    }
}

/// Builds the finite-size configuration for one grid point. The user count
/// realizes `kbar = K/N` exactly and the interference is carried by the
/// `K - 1` remaining users; `bbar·N` must be integral.
pub fn sim_config(
    spec: &SweepSpec,
    kbar: f64,
    bbar: f64,
    row_index: usize,
) -> Result<SimConfig, ConfigError> {
    let n = spec.sim.n.ok_or_else(|| ConfigError {
        key: "simulation.n".into(),
        message: "required for simulate/compare".into(),
    })?;
    let trials = spec.sim.trials.ok_or_else(|| ConfigError {
        key: "simulation.trials".into(),
        message: "required for simulate/compare".into(),
    })?;
    let k = integral(kbar * n as f64).ok_or_else(|| ConfigError {
        key: "sweep.kbar_list".into(),
        message: format!("kbar*n = {} must be integral", kbar * n as f64),
    })?;
    if k == 0 {
        return Err(ConfigError {
            key: "sweep.kbar_list".into(),
            message: "kbar*n must be >= 1".into(),
        });
    }
    let b = integral(bbar * n as f64).ok_or_else(|| ConfigError {
        key: "sweep.bbar_grid".into(),
        message: format!("bbar*n = {} must be integral", bbar * n as f64),
    })?;

    let template = &spec.scenario;
    let mut powers = Vec::with_capacity(k);
    powers.push(template.a1);
    powers.extend(powers_from_profile(&template.base_powers, k - 1));

    Ok(SimConfig {
        n,
        k,
        b: b as u32,
        noise_var: noise_var_for_snr_db(template.a1, template.snr_db),
        powers,
        channel: template.channel.clone(),
        ensemble: template.ensemble,
        receiver: template.receiver,
        trials,
        // Distinct rows get decorrelated streams.
        master_seed: spec
            .sim
            .seed
            .wrapping_add((row_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        codebook_cap: DEFAULT_CODEBOOK_CAP,
    })
}

/// Runs the whole grid. Failed points never abort the sweep; their rows
/// carry an error code in place of values.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome, SweepError> {
    if spec.dump_trials.is_some() {
        let points = spec.kbar_list.len() * spec.bbar_grid.len();
        if spec.mode == Mode::Analyze {
            return Err(ConfigError {
                key: "output.dump_trials".into(),
                message: "trial dumps need a simulating mode".into(),
            }
            .into());
        }
        if points != 1 {
            return Err(ConfigError {
                key: "output.dump_trials".into(),
                message: format!("trial dumps cover a single grid point, got {points}"),
            }
            .into());
        }
    }

    let template = &spec.scenario;
    let channel_text = match &template.channel {
        large_system::ChannelModel::Ideal => "ideal".to_string(),
        large_system::ChannelModel::FlatRayleigh { var } => format!("flat:{var}"),
        large_system::ChannelModel::Multipath { path_vars } => format!(
            "multipath:{}",
            path_vars
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    };
    let ensemble_text = match template.ensemble {
        Ensemble::IidGaussian => "iid",
        Ensemble::Orthogonal => "orthogonal",
    };
    let receiver_text = match template.receiver {
        Receiver::Mmse => "mmse",
        Receiver::MatchedFilter => "mf",
    };

    let mut rows = Vec::new();
    let mut any_failed = false;
    let mut dump: Option<Vec<TrialRecord>> = None;
    let mut row_index = 0usize;
    for &kbar in &spec.kbar_list {
        for &bbar in &spec.bbar_grid {
            let mut failed = false;
            let mut flag = String::new();

            let (analytic, analytic_db) = if spec.mode != Mode::Simulate {
                match analytic_sinr(template, kbar, bbar) {
                    Ok(v) => (v.to_string(), db(v).to_string()),
                    Err(e) => {
                        failed = true;
                        let code = match e {
                            SolveError::NoConvergence { .. } => "ERR:NoConvergence",
                            SolveError::OutOfDomain(_) => "ERR:OutOfDomain",
                        };
                        (code.to_string(), code.to_string())
                    }
                }
            } else {
                (String::new(), String::new())
            };

            let (sim_mean, sim_db, sim_se, n_text, trials_text, seed_text) =
                if spec.mode != Mode::Analyze {
                    match sim_config(spec, kbar, bbar, row_index) {
                        Ok(cfg) => match run_trials_full(&cfg) {
                            Ok((estimate, records)) => {
                                if spec.dump_trials.is_some() {
                                    dump = Some(records);
                                }
                                (
                                    estimate.mean_sinr.to_string(),
                                    db(estimate.mean_sinr).to_string(),
                                    estimate.std_error.to_string(),
                                    cfg.n.to_string(),
                                    estimate.trials.to_string(),
                                    cfg.master_seed.to_string(),
                                )
                            }
                            Err(e) => {
                                failed = true;
                                let code = match e {
                                    mc_simulator::SimError::BudgetExceeded { .. } => {
                                        "ERR:BudgetExceeded"
                                    }
                                    mc_simulator::SimError::OutOfDomain(_) => "ERR:OutOfDomain",
                                    mc_simulator::SimError::Singular => "ERR:Singular",
                                }
                                .to_string();
                                (
                                    code.clone(),
                                    code.clone(),
                                    code,
                                    cfg.n.to_string(),
                                    String::new(),
                                    cfg.master_seed.to_string(),
                                )
                            }
                        },
                        Err(e) => {
                            failed = true;
                            let code = format!("ERR:Config({})", e.key);
                            (
                                code.clone(),
                                code.clone(),
                                code,
                                String::new(),
                                String::new(),
                                String::new(),
                            )
                        }
                    }
                } else {
                    (
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        spec.sim.seed.to_string(),
                    )
                };

            if spec.mode == Mode::Compare && !failed {
                let a: f64 = analytic.parse().unwrap_or(f64::NAN);
                let m: f64 = sim_mean.parse().unwrap_or(f64::NAN);
                let se: f64 = sim_se.parse().unwrap_or(f64::NAN);
                if (m - a).abs() > 5.0 * se + 0.10 * a.abs() {
                    flag = "FINITE_SIZE_GAP".to_string();
                }
            }

            rows.push(Row {
                fields: vec![
                    kbar.to_string(),
                    bbar.to_string(),
                    template.snr_db.to_string(),
                    ensemble_text.to_string(),
                    receiver_text.to_string(),
                    channel_text.clone(),
                    analytic,
                    analytic_db,
                    sim_mean,
                    sim_db,
                    sim_se,
                    n_text,
                    trials_text,
                    seed_text,
                    flag,
                ],
                failed,
            });
            any_failed |= failed;
            row_index += 1;
        }
    }

    if let (Some(path), Some(records)) = (&spec.dump_trials, &dump) {
        write_trial_records(path, records)?;
    }

    Ok(SweepOutcome { rows, any_failed })
}

/// Writes the table as RFC-4180 CSV with the mandatory header row.
pub fn write_csv(path: &Path, outcome: &SweepOutcome) -> Result<(), SweepError> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(CSV_HEADER)?;
    for row in &outcome.rows {
        writer.write_record(&row.fields)?;
    }
    writer.flush()?;
    Ok(())
}

/// Renders the CSV to a string (stdout path).
pub fn csv_string(outcome: &SweepOutcome) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory csv");
    for row in &outcome.rows {
        writer.write_record(&row.fields).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf8")
}
