//! `key = value` configuration files.

use crate::bounds::ComparatorConstants;
use crate::error::{Error, Result};

/// Settings that may come from a config file; flags take precedence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub comparators: ComparatorConstants,
    pub sigma_min: Option<f64>,
    pub sigma_max: Option<f64>,
    pub sigma_step: Option<f64>,
    pub log10t_min: Option<f64>,
    pub log10t_max: Option<f64>,
    pub log10t_step: Option<f64>,
    pub log10t0: Option<f64>,
    pub limit: Option<usize>,
    pub dataset: Option<String>,
    pub format: Option<String>,
}

fn number(key: &str, value: &str, line: usize) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("line {line}: {key} = {value:?} is not a number")))
}

pub fn parse_config(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::Config(format!("line {line_no}: expected `key = value`")))?;
        let value = value.split('#').next().unwrap_or("").trim();
        match key {
            "kln_c1" => cfg.comparators.kln_c1 = Some(number(key, value, line_no)?),
            "kln_c2" => cfg.comparators.kln_c2 = Some(number(key, value, line_no)?),
            "simonic_k2" => cfg.comparators.simonic_k2 = Some(number(key, value, line_no)?),
            "bohr_landau_c" => cfg.comparators.bohr_landau_c = Some(number(key, value, line_no)?),
            "sigma_min" => cfg.sigma_min = Some(number(key, value, line_no)?),
            "sigma_max" => cfg.sigma_max = Some(number(key, value, line_no)?),
            "sigma_step" => cfg.sigma_step = Some(number(key, value, line_no)?),
            "log10T_min" => cfg.log10t_min = Some(number(key, value, line_no)?),
            "log10T_max" => cfg.log10t_max = Some(number(key, value, line_no)?),
            "log10T_step" => cfg.log10t_step = Some(number(key, value, line_no)?),
            "log10T0" => cfg.log10t0 = Some(number(key, value, line_no)?),
            "limit" => {
                cfg.limit = Some(value.parse().map_err(|_| {
                    Error::Config(format!("line {line_no}: limit = {value:?} is not an integer"))
                })?)
            }
            "dataset" => cfg.dataset = Some(value.to_string()),
            "format" => cfg.format = Some(value.to_string()),
            other => {
                return Err(Error::Config(format!("line {line_no}: unknown key {other:?}")));
            }
        }
    }
    for (key, v) in [
        ("sigma_step", cfg.sigma_step),
        ("log10T_step", cfg.log10t_step),
    ] {
        if let Some(v) = v {
            if !(v > 0.0) {
                return Err(Error::Config(format!("{key} must be positive")));
            }
        }
    }
    Ok(cfg)
}
