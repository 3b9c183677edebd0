//! Flat `key = value` configuration files.
//!
//! Keys are the long flag names without the leading dashes; `_` and `-` are
//! interchangeable. Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const KEYS: [&str; 20] = [
    "group",
    "kind",
    "p",
    "modes-b",
    "modes-f",
    "cutoff",
    "theta",
    "omega-b",
    "omega-f",
    "lambda",
    "lambda1",
    "lambda2",
    "hamiltonian",
    "t-max",
    "t-steps",
    "init",
    "init-file",
    "out",
    "format",
    "tol",
];

#[derive(Clone, Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('_', "-")
}

impl Config {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("line {}: expected key = value", n + 1)))?;
            let key = normalize(k);
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!("line {}: unknown key `{}`", n + 1, k.trim())));
            }
            if values.insert(key, v.trim().to_string()).is_some() {
                return Err(CliError::usage(format!("line {}: duplicate key `{}`", n + 1, k.trim())));
            }
        }
        Ok(Config { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, else the config value, else `None`.
    pub fn get<T>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::usage(format!("config key `{key}` = `{v}`: {e}")))
            })
            .transpose()
    }

    /// Flag, then config, then `default`.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }
}
