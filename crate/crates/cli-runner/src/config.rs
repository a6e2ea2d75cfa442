//! Line-oriented `key = value` configuration with `[section]` headers.

use large_system::{ChannelModel, Ensemble, PowerProfile};
use mc_simulator::Receiver;
use std::collections::BTreeMap;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("config error: {key}: {message}")]
pub struct ConfigError {
    /// `section.key` the complaint is about.
    pub key: String,
    pub message: String,
}

fn err(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        key: key.to_string(),
        message: message.into(),
    }
}

pub type Result<T> = std::result::Result<T, ConfigError>;

/// What a run does with each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analyze,
    Simulate,
    Compare,
}

/// The scenario template shared by every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub kbar: f64,
    pub snr_db: f64,
    pub a1: f64,
    pub desired_gain: f64,
    pub ensemble: Ensemble,
    pub receiver: Receiver,
    pub channel: ChannelModel,
    pub base_powers: PowerProfile,
    /// Quantization points used when folding fading into the analytic
    /// profile (1 collapses the combined gain to its mean).
    pub fading_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSpec {
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
}

/// One fully parsed run specification.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub mode: Mode,
    pub scenario: ScenarioSpec,
    /// Strictly increasing, nonempty.
    pub bbar_grid: Vec<f64>,
    /// Loads to sweep; defaults to the scenario load.
    pub kbar_list: Vec<f64>,
    /// dB offset from single-user performance for `required-feedback`.
    pub target_offset_db: f64,
    pub sim: SimSpec,
    pub out_path: Option<PathBuf>,
    pub dump_trials: Option<PathBuf>,
}

/// Raw `section.key -> value` map, before typing.
pub type RawConfig = BTreeMap<String, String>;

/// Parses the text shape: sections, `key = value` lines, `#` comments.
pub fn parse_raw(text: &str) -> Result<RawConfig> {
    let mut map = RawConfig::new();
    let mut section = String::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') || line.len() < 3 {
                return Err(err(
                    &format!("line {}", lineno + 1),
                    format!("malformed section header {line:?}"),
                ));
            }
            section = line[1..line.len() - 1].trim().to_string();
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(err(
                &format!("line {}", lineno + 1),
                format!("expected `key = value`, got {line:?}"),
            ));
        };
        let key = line[..eq].trim();
        let value = line[eq + 1..].trim();
        if key.is_empty() || section.is_empty() {
            return Err(err(
                &format!("line {}", lineno + 1),
                "keys must live inside a [section]",
            ));
        }
        map.insert(format!("{section}.{key}"), value.to_string());
    }
    Ok(map)
}

/// Applies one `section.key=value` override.
pub fn apply_override(map: &mut RawConfig, spec: &str) -> Result<()> {
    let Some(eq) = spec.find('=') else {
        return Err(err(
            "--override",
            format!("expected section.key=value, got {spec:?}"),
        ));
    };
    let key = spec[..eq].trim();
    let value = spec[eq + 1..].trim();
    if !key.contains('.') {
        return Err(err(
            "--override",
            format!("override keys are section-qualified (e.g. scenario.kbar), got {key:?}"),
        ));
    }
    map.insert(key.to_string(), value.to_string());
    Ok(())
}

fn parse_f64(map: &RawConfig, key: &str) -> Result<Option<f64>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse::<f64>()
            .map(Some)
            .map_err(|_| err(key, format!("not a number: {v:?}"))),
    }
}

fn require_f64(map: &RawConfig, key: &str) -> Result<f64> {
    parse_f64(map, key)?.ok_or_else(|| err(key, "required key is missing"))
}

fn parse_usize(map: &RawConfig, key: &str) -> Result<Option<usize>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| err(key, format!("not a nonnegative integer: {v:?}"))),
    }
}

fn parse_grid(key: &str, text: &str) -> Result<Vec<f64>> {
    // Either `start:end:step` or a comma list.
    let parts: Vec<&str> = text.split(':').collect();
    let grid: Vec<f64> = if parts.len() == 3 {
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| err(key, "bad grid start"))?;
        let end: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| err(key, "bad grid end"))?;
        let step: f64 = parts[2]
            .trim()
            .parse()
            .map_err(|_| err(key, "bad grid step"))?;
        if !(step > 0.0) || end < start {
            return Err(err(key, "need step > 0 and end >= start"));
        }
        let count = ((end - start) / step + 1.5).floor() as usize;
        (0..count).map(|i| start + i as f64 * step).collect()
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| err(key, format!("bad grid entry {s:?}")))
            })
            .collect::<Result<Vec<f64>>>()?
    };
    if grid.is_empty() {
        return Err(err(key, "grid must be nonempty"));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(err(key, "grid must be strictly increasing"));
        }
    }
    Ok(grid)
}

fn parse_channel(key: &str, text: &str) -> Result<ChannelModel> {
    if text == "ideal" {
        return Ok(ChannelModel::Ideal);
    }
    if let Some(rest) = text.strip_prefix("flat:") {
        let var: f64 = rest
            .trim()
            .parse()
            .map_err(|_| err(key, format!("bad flat-fading variance {rest:?}")))?;
        return Ok(ChannelModel::FlatRayleigh { var });
    }
    if let Some(rest) = text.strip_prefix("multipath:") {
        let path_vars = rest
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| err(key, format!("bad path variance {s:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        return Ok(ChannelModel::Multipath { path_vars });
    }
    Err(err(
        key,
        format!("expected ideal | flat:VAR | multipath:V1,V2,..., got {text:?}"),
    ))
}

fn parse_powers(key: &str, text: &str) -> Result<PowerProfile> {
    if text == "equal" {
        return Ok(PowerProfile::equal_power());
    }
    let atoms = text
        .split(',')
        .map(|pair| {
            let mut it = pair.split(':');
            match (it.next(), it.next(), it.next()) {
                (Some(p), Some(w), None) => {
                    let power: f64 = p
                        .trim()
                        .parse()
                        .map_err(|_| err(key, format!("bad power {p:?}")))?;
                    let weight: f64 = w
                        .trim()
                        .parse()
                        .map_err(|_| err(key, format!("bad weight {w:?}")))?;
                    Ok((power, weight))
                }
                _ => Err(err(key, format!("expected POWER:WEIGHT, got {pair:?}"))),
            }
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    PowerProfile::new(atoms).map_err(|e| err(key, e.to_string()))
}

const KNOWN_KEYS: &[&str] = &[
    "scenario.kbar",
    "scenario.snr_db",
    "scenario.a1",
    "scenario.desired_gain",
    "scenario.ensemble",
    "scenario.receiver",
    "scenario.channel",
    "scenario.powers",
    "scenario.powers_file",
    "scenario.fading_points",
    "sweep.bbar_grid",
    "sweep.kbar_list",
    "sweep.target_offset_db",
    "simulation.n",
    "simulation.trials",
    "simulation.seed",
    "output.path",
    "output.dump_trials",
];

/// Builds a typed spec from the raw map. Unknown keys are errors.
pub fn build_spec(map: &RawConfig) -> Result<SweepSpec> {
    for key in map.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(err(key, "unknown key"));
        }
    }

    let kbar = require_f64(map, "scenario.kbar")?;
    if !(kbar > 0.0) {
        return Err(err("scenario.kbar", "kbar must be > 0"));
    }
    let snr_db = require_f64(map, "scenario.snr_db")?;
    let a1 = parse_f64(map, "scenario.a1")?.unwrap_or(1.0);
    if !(a1 > 0.0) {
        return Err(err("scenario.a1", "a1 must be > 0"));
    }
    let desired_gain = parse_f64(map, "scenario.desired_gain")?.unwrap_or(1.0);
    if !(desired_gain > 0.0) {
        return Err(err("scenario.desired_gain", "desired_gain must be > 0"));
    }

    let ensemble = match map.get("scenario.ensemble").map(String::as_str) {
        None | Some("iid") => Ensemble::IidGaussian,
        Some("orthogonal") => Ensemble::Orthogonal,
        Some(other) => {
            return Err(err(
                "scenario.ensemble",
                format!("expected iid | orthogonal, got {other:?}"),
            ))
        }
    };
    let receiver = match map.get("scenario.receiver").map(String::as_str) {
        Some("mmse") => Receiver::Mmse,
        Some("mf") => Receiver::MatchedFilter,
        Some(other) => {
            return Err(err(
                "scenario.receiver",
                format!("expected mmse | mf, got {other:?}"),
            ))
        }
        None => return Err(err("scenario.receiver", "required key is missing")),
    };
    let channel = match map.get("scenario.channel") {
        None => ChannelModel::Ideal,
        Some(text) => parse_channel("scenario.channel", text)?,
    };
    channel
        .validate()
        .map_err(|e| err("scenario.channel", e.to_string()))?;

    let base_powers = match (map.get("scenario.powers"), map.get("scenario.powers_file")) {
        (Some(_), Some(_)) => {
            return Err(err(
                "scenario.powers",
                "give either powers or powers_file, not both",
            ))
        }
        (Some(text), None) => parse_powers("scenario.powers", text)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| err("scenario.powers_file", format!("{path}: {e}")))?;
            PowerProfile::from_text(&text)
                .map_err(|e| err("scenario.powers_file", e.to_string()))?
        }
        (None, None) => PowerProfile::equal_power(),
    };
    let fading_points = parse_usize(map, "scenario.fading_points")?.unwrap_or(1);
    if fading_points == 0 {
        return Err(err("scenario.fading_points", "must be >= 1"));
    }

    let bbar_grid = match map.get("sweep.bbar_grid") {
        Some(text) => parse_grid("sweep.bbar_grid", text)?,
        None => return Err(err("sweep.bbar_grid", "required key is missing")),
    };
    if bbar_grid[0] < 0.0 {
        return Err(err("sweep.bbar_grid", "bbar must be >= 0"));
    }
    let kbar_list = match map.get("sweep.kbar_list") {
        Some(text) => {
            let list = parse_grid("sweep.kbar_list", text)?;
            if list[0] <= 0.0 {
                return Err(err("sweep.kbar_list", "loads must be > 0"));
            }
            list
        }
        None => vec![kbar],
    };
    let target_offset_db = parse_f64(map, "sweep.target_offset_db")?.unwrap_or(0.5);
    if !(target_offset_db > 0.0) {
        return Err(err("sweep.target_offset_db", "offset must be > 0"));
    }

    if ensemble == Ensemble::Orthogonal {
        if kbar_list.iter().any(|&k| k >= 1.0) {
            return Err(err(
                "scenario.ensemble",
                "orthogonal ensemble needs every load < 1",
            ));
        }
        if base_powers != PowerProfile::equal_power() || channel != ChannelModel::Ideal {
            return Err(err(
                "scenario.ensemble",
                "orthogonal closed forms cover equal unit powers over the ideal channel",
            ));
        }
    }

    let sim = SimSpec {
        n: parse_usize(map, "simulation.n")?,
        trials: parse_usize(map, "simulation.trials")?,
        seed: map
            .get("simulation.seed")
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| err("simulation.seed", format!("not a u64: {v:?}")))
            })
            .transpose()?
            .unwrap_or(0),
    };
    if let Some(n) = sim.n {
        if n == 0 {
            return Err(err("simulation.n", "n must be >= 1"));
        }
    }
    if let Some(t) = sim.trials {
        if t == 0 {
            return Err(err("simulation.trials", "trials must be >= 1"));
        }
    }

    Ok(SweepSpec {
        mode: Mode::Analyze,
        scenario: ScenarioSpec {
            kbar,
            snr_db,
            a1,
            desired_gain,
            ensemble,
            receiver,
            channel,
            base_powers,
            fading_points,
        },
        bbar_grid,
        kbar_list,
        target_offset_db,
        sim,
        out_path: map.get("output.path").map(PathBuf::from),
        dump_trials: map.get("output.dump_trials").map(PathBuf::from),
    })
}

/// Parses a full config text.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    build_spec(&parse_raw(text)?)
}

fn channel_text(channel: &ChannelModel) -> String {
    match channel {
        ChannelModel::Ideal => "ideal".to_string(),
        ChannelModel::FlatRayleigh { var } => format!("flat:{var}"),
        ChannelModel::Multipath { path_vars } => {
            let vars: Vec<String> = path_vars.iter().map(|v| v.to_string()).collect();
            format!("multipath:{}", vars.join(","))
        }
    }
}

fn powers_text(profile: &PowerProfile) -> String {
    profile
        .atoms()
        .iter()
        .map(|&(p, w)| format!("{p}:{w}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Emits the canonical text form; `parse_config(emit_spec(s))` rebuilds an
/// identical spec.
pub fn emit_spec(spec: &SweepSpec) -> String {
    let s = &spec.scenario;
    let mut out = String::new();
    out.push_str("[scenario]\n");
    out.push_str(&format!("kbar = {}\n", s.kbar));
    out.push_str(&format!("snr_db = {}\n", s.snr_db));
    out.push_str(&format!("a1 = {}\n", s.a1));
    out.push_str(&format!("desired_gain = {}\n", s.desired_gain));
    out.push_str(&format!(
        "ensemble = {}\n",
        match s.ensemble {
            Ensemble::IidGaussian => "iid",
            Ensemble::Orthogonal => "orthogonal",
        }
    ));
    out.push_str(&format!(
        "receiver = {}\n",
        match s.receiver {
            Receiver::Mmse => "mmse",
            Receiver::MatchedFilter => "mf",
        }
    ));
    out.push_str(&format!("channel = {}\n", channel_text(&s.channel)));
    out.push_str(&format!("powers = {}\n", powers_text(&s.base_powers)));
    out.push_str(&format!("fading_points = {}\n", s.fading_points));

    out.push_str("\n[sweep]\n");
    let grid: Vec<String> = spec.bbar_grid.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("bbar_grid = {}\n", grid.join(",")));
    let loads: Vec<String> = spec.kbar_list.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("kbar_list = {}\n", loads.join(",")));
    out.push_str(&format!("target_offset_db = {}\n", spec.target_offset_db));

    out.push_str("\n[simulation]\n");
    if let Some(n) = spec.sim.n {
        out.push_str(&format!("n = {n}\n"));
    }
    if let Some(trials) = spec.sim.trials {
        out.push_str(&format!("trials = {trials}\n"));
    }
    out.push_str(&format!("seed = {}\n", spec.sim.seed));

    out.push_str("\n[output]\n");
    if let Some(path) = &spec.out_path {
        out.push_str(&format!("path = {}\n", path.display()));
    }
    if let Some(path) = &spec.dump_trials {
        out.push_str(&format!("dump_trials = {}\n", path.display()));
    }
    out
}
