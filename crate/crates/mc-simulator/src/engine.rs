//! Trial execution and aggregation.

use crate::channel::Channel;
use crate::config::{Receiver, SimConfig, TrialEstimate};
use crate::covariance::{factorize, interference_covariance};
use crate::receiver::{mf_sinr_eval, mmse_sinr_eval, select_best, Objective};
use crate::rng::trial_seed;
use crate::signatures::{gen_signatures, Codebook};
use crate::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::io::Write;

/// Outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub selected_index: usize,
    pub sinr: f64,
}

/// One independent system draw. The stream consumption order is fixed:
/// interfering signatures, desired-user channel, interferer channels
/// (users 2..K), then the codebook.
fn run_one(config: &SimConfig, trial_index: usize) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::from_seed(trial_seed(config.master_seed, trial_index as u64));

    let s1 = gen_signatures(config, &mut rng)?;
    let desired_channel = Channel::draw(&config.channel, &mut rng);
    let interferer_channels: Vec<Channel> = (1..config.k)
        .map(|_| Channel::draw(&config.channel, &mut rng))
        .collect();
    let r1 = interference_covariance(
        &s1,
        &config.powers[1..],
        &interferer_channels,
        config.noise_var,
    );
    let codebook = Codebook::generate(config.n, config.b, &mut rng);

    let a1 = config.powers[0];
    let (selected_index, sinr) = match config.receiver {
        Receiver::MatchedFilter => select_best(
            &codebook,
            |v| mf_sinr_eval(v, &desired_channel, &r1, a1),
            Objective::MaxSinr,
        ),
        Receiver::Mmse => {
            let factor = factorize(&r1)?;
            select_best(
                &codebook,
                |v| mmse_sinr_eval(v, &desired_channel, &factor, a1),
                Objective::MaxSinr,
            )
        }
    };
    Ok(TrialRecord {
        trial_index,
        selected_index,
        sinr,
    })
}

/// Runs all trials and keeps the per-trial records.
///
/// Trials execute in parallel; records are collected in trial order and
/// reduced sequentially, so the estimate is bit-for-bit reproducible for a
/// given `(config, master_seed)` whatever the thread count.
pub fn run_trials_full(config: &SimConfig) -> Result<(TrialEstimate, Vec<TrialRecord>)> {
    config.validate()?;
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_one(config, t))
        .collect::<Result<Vec<_>>>()?;

    let n = records.len() as f64;
    let mean = records.iter().map(|r| r.sinr).sum::<f64>() / n;
    let std_error = if records.len() >= 2 {
        let var = records
            .iter()
            .map(|r| (r.sinr - mean) * (r.sinr - mean))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok((
        TrialEstimate {
            mean_sinr: mean,
            std_error,
            trials: records.len(),
            config_digest: config.digest(),
        },
        records,
    ))
}

/// Runs all trials, returning only the aggregate.
pub fn run_trials(config: &SimConfig) -> Result<TrialEstimate> {
    run_trials_full(config).map(|(estimate, _)| estimate)
}

/// Writes the trial-level dump: CSV with one record per trial.
pub fn write_trial_records(path: &std::path::Path, records: &[TrialRecord]) -> std::io::Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "trial_index,selected_index,sinr")?;
    for r in records {
        writeln!(out, "{},{},{}", r.trial_index, r.selected_index, r.sinr)?;
    }
    out.flush()
}
