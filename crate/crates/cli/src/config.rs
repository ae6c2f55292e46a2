//! Run configuration: built-in defaults, then an optional `key = value`
//! file, then `CIS_*` environment variables, then command-line flags.

use std::path::{Path, PathBuf};

use cis_core::count::ORACLE_MAX_ORDER;
use cis_core::verify::{DEFAULT_AUDIT_RATE, DEFAULT_ENUM_CAP, MAX_ENUM_CAP};
use thiserror::Error;

/// Keys are `workers`, `enum_cap`, `oracle_cap`, `audit_rate` and `out_dir`;
/// the environment uses the upper-cased form (`enum_cap` -> `CIS_ENUM_CAP`).
pub const ENV_PREFIX: &str = "CIS_";

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{source_name}:{line}: expected key = value")]
    Syntax { source_name: String, line: usize },
    #[error("{source_name}: unknown key {key:?}")]
    UnknownKey { source_name: String, key: String },
    #[error("{source_name}: {key} = {value:?}: {reason}")]
    Value { source_name: String, key: String, value: String, reason: String },
    #[error("reading {path}: {message}")]
    Read { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub workers: usize,
    /// Largest order scanned without `--allow-n8`; never above 7.
    pub enum_cap: usize,
    pub oracle_cap: usize,
    pub audit_rate: f64,
    pub out_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            enum_cap: DEFAULT_ENUM_CAP,
            oracle_cap: ORACLE_MAX_ORDER,
            audit_rate: DEFAULT_AUDIT_RATE,
            out_dir: None,
        }
    }
}

fn parse_in<T: std::str::FromStr>(
    source_name: &str,
    key: &str,
    value: &str,
    ok: impl Fn(&T) -> bool,
    reason: &str,
) -> Result<T, ConfigError> {
    let bad = || ConfigError::Value {
        source_name: source_name.to_string(),
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    };
    let parsed: T = value.parse().map_err(|_| bad())?;
    if ok(&parsed) {
        Ok(parsed)
    } else {
        Err(bad())
    }
}

impl Config {
    /// Applies one setting. `source_name` only labels errors.
    pub fn set(&mut self, source_name: &str, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key {
            "workers" => self.workers = parse_in(source_name, key, value, |&w: &usize| w >= 1, "must be at least 1")?,
            "enum_cap" => {
                self.enum_cap = parse_in(
                    source_name,
                    key,
                    value,
                    |&c: &usize| (2..=DEFAULT_ENUM_CAP).contains(&c),
                    "must be in 2..=7 (order 8 needs --allow-n8)",
                )?
            }
            "oracle_cap" => {
                self.oracle_cap = parse_in(
                    source_name,
                    key,
                    value,
                    |&c: &usize| (1..=ORACLE_MAX_ORDER).contains(&c),
                    "must be in 1..=24",
                )?
            }
            "audit_rate" => {
                self.audit_rate = parse_in(
                    source_name,
                    key,
                    value,
                    |&r: &f64| (0.0..=1.0).contains(&r),
                    "must be a number in [0, 1]",
                )?
            }
            "out_dir" => self.out_dir = (!value.is_empty()).then(|| PathBuf::from(value)),
            _ => {
                return Err(ConfigError::UnknownKey { source_name: source_name.to_string(), key: key.to_string() });
            }
        }
        Ok(())
    }

    /// Flat `key = value` text; `#` starts a comment.
    pub fn apply_text(&mut self, source_name: &str, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { source_name: source_name.to_string(), line: i + 1 });
            };
            self.set(source_name, key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Read { path: path.display().to_string(), message: e.to_string() })?;
        self.apply_text(&path.display().to_string(), &text)
    }

    /// `CIS_<KEY>` variables. `CIS_CONFIG` names the file and is handled by
    /// the caller; other unrecognized `CIS_` names are rejected.
    pub fn apply_env<I>(&mut self, vars: I) -> Result<(), ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut vars: Vec<_> = vars.into_iter().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect();
        vars.sort();
        for (name, value) in vars {
            if name == "CIS_CONFIG" {
                continue;
            }
            let key = name[ENV_PREFIX.len()..].to_ascii_lowercase();
            self.set("environment", &key, &value).map_err(|e| match e {
                ConfigError::UnknownKey { .. } => ConfigError::UnknownKey { source_name: "environment".into(), key: name },
                other => other,
            })?;
        }
        Ok(())
    }

    /// Defaults, then the file (`explicit_file`, else `CIS_CONFIG`), then the environment.
    pub fn load<I>(explicit_file: Option<&Path>, vars: I) -> Result<Config, ConfigError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let vars: Vec<(String, String)> = vars.into_iter().collect();
        let mut config = Config::default();
        let env_file = vars.iter().find(|(k, _)| k == "CIS_CONFIG").map(|(_, v)| PathBuf::from(v));
        if let Some(path) = explicit_file.map(Path::to_path_buf).or(env_file) {
            config.apply_file(&path)?;
        }
        config.apply_env(vars)?;
        Ok(config)
    }

    /// Effective enumeration cap for one command.
    pub fn enum_cap_for(&self, allow_n8: bool) -> usize {
        if allow_n8 {
            MAX_ENUM_CAP
        } else {
            self.enum_cap
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn empty_config_is_defaults() {
        let c = Config::load(None, env(&[])).unwrap();
        assert_eq!(c.enum_cap, 7);
        assert_eq!(c.oracle_cap, 24);
        assert_eq!(c.audit_rate, 1e-4);
        assert_eq!(c.workers, std::thread::available_parallelism().unwrap().get());
        assert_eq!(c.out_dir, None);
    }

    #[test]
    fn env_overrides_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cis.conf");
        std::fs::write(&path, "# run settings\nworkers = 3\naudit_rate = 0.001\n\nout_dir = results # trailing\n").unwrap();
        let c = Config::load(Some(&path), env(&[("CIS_WORKERS", "1"), ("HOME", "/x")])).unwrap();
        assert_eq!(c.workers, 1);
        assert_eq!(c.audit_rate, 1e-3);
        assert_eq!(c.out_dir, Some(PathBuf::from("results")));
    }

    #[test]
    fn config_path_from_env() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cis.conf");
        std::fs::write(&path, "oracle_cap=12").unwrap();
        let c = Config::load(None, env(&[("CIS_CONFIG", path.to_str().unwrap())])).unwrap();
        assert_eq!(c.oracle_cap, 12);
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut c = Config::default();
        assert!(matches!(c.apply_text("f", "wrokers = 2"), Err(ConfigError::UnknownKey { .. })));
        assert!(matches!(
            Config::load(None, env(&[("CIS_THREADS", "2")])),
            Err(ConfigError::UnknownKey { key, .. }) if key == "CIS_THREADS"
        ));
        assert!(matches!(c.apply_text("f", "\n\nworkers 2"), Err(ConfigError::Syntax { line: 3, .. })));
    }

    #[test]
    fn values_checked() {
        let mut c = Config::default();
        assert!(c.set("t", "workers", "0").is_err());
        assert!(c.set("t", "enum_cap", "8").is_err());
        assert!(c.set("t", "oracle_cap", "25").is_err());
        assert!(c.set("t", "audit_rate", "1.5").is_err());
        assert!(c.set("t", "audit_rate", "x").is_err());
        c.set("t", "enum_cap", "5").unwrap();
        assert_eq!(c.enum_cap_for(false), 5);
        assert_eq!(c.enum_cap_for(true), 8);
    }
}
