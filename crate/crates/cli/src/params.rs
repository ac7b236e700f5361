//! Suite parameters and runner errors.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::Value;
use spschur::relations::Family;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite {0:?}; see `spschur list`")]
    UnknownSuite(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("guard: {0}")]
    Guard(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownSuite(_) | CliError::InvalidParams(_) => 2,
            CliError::Guard(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<spschur::Error> for CliError {
    fn from(e: spschur::Error) -> Self {
        use spschur::Error as E;
        match e {
            E::InvalidDimension(_) | E::Parse(_) | E::InvalidQuery(_) | E::DimensionMismatch { .. } => {
                CliError::InvalidParams(e.to_string())
            }
            _ => CliError::Guard(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Inclusive integer range written `LO..HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("range {s:?} is not of the form LO..HI"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("range {s:?}: {e}"));
        let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("range {s:?} is empty"));
        }
        Ok(Range { lo, hi })
    }
}

/// Values supplied on the command line; suites fill in their own defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<usize>,
    pub family: Option<String>,
    pub range: Option<Range>,
    pub seed: Option<u64>,
    pub r: Option<usize>,
}

impl Params {
    pub fn with_n(n: usize) -> Self {
        Params { n: Some(n), ..Default::default() }
    }

    pub fn n_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    /// `n` restricted to the even values in `lo..=hi`.
    pub fn n_in(&self, default: usize, lo: usize, hi: usize) -> CliResult<usize> {
        let n = self.n_or(default);
        if n < lo || n > hi || n % 2 == 1 {
            return Err(CliError::InvalidParams(format!("n = {n} must be even in {lo}..{hi}")));
        }
        Ok(n)
    }

    pub fn range_or(&self, lo: usize, hi: usize) -> Range {
        self.range.unwrap_or(Range { lo, hi })
    }

    pub fn family(&self) -> CliResult<Option<Family>> {
        self.family
            .as_deref()
            .map(|f| Family::parse(f).map_err(|e| CliError::InvalidParams(e.to_string())))
            .transpose()
    }

    /// Rejects flags the suite does not read.
    pub fn only(&self, allowed: &[&str]) -> CliResult<()> {
        let given = [
            ("n", self.n.is_some()),
            ("family", self.family.is_some()),
            ("range", self.range.is_some()),
            ("seed", self.seed.is_some()),
            ("r", self.r.is_some()),
        ];
        match given.iter().find(|(k, set)| *set && !allowed.contains(k)) {
            Some((k, _)) => Err(CliError::InvalidParams(format!("--{k} is not used by this suite"))),
            None => Ok(()),
        }
    }
}

/// Effective parameters as written into a report.
pub type ParamMap = BTreeMap<String, Value>;

pub fn param_map<const K: usize>(entries: [(&str, Value); K]) -> ParamMap {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
