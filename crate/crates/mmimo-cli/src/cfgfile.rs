//! Plain "key = value" configuration files.
//!
//! One pair per line, '#' starts a comment, blank lines are ignored. The key
//! set is flat and closed: m, k, pt_db, pu_db, trials, seed, axis. Values
//! given on the command line always win over the file.

use std::str::FromStr;

use crate::HarnessError;

/// Values read from a config file; `None` means the key was absent.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub pt_db: Option<f64>,
    pub pu_db: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub axis: Option<String>,
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, HarnessError> {
    value.parse().map_err(|_| HarnessError::BadConfigValue {
        line,
        key: key.to_string(),
        value: value.to_string(),
    })
}

pub fn parse_config(text: &str) -> Result<FileConfig, HarnessError> {
    let mut cfg = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(HarnessError::ConfigSyntax { line, text: raw.trim().to_string() });
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "m" => cfg.m = Some(parse_value(line, key, value)?),
            "k" => cfg.k = Some(parse_value(line, key, value)?),
            "pt_db" => cfg.pt_db = Some(parse_value(line, key, value)?),
            "pu_db" => cfg.pu_db = Some(parse_value(line, key, value)?),
            "trials" => cfg.trials = Some(parse_value(line, key, value)?),
            "seed" => cfg.seed = Some(parse_value(line, key, value)?),
            "axis" => cfg.axis = Some(value.to_string()),
            _ => {
                return Err(HarnessError::UnknownKey { line, key: key.to_string() });
            }
        }
    }
    Ok(cfg)
}
