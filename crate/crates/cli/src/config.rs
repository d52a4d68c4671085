use std::fmt;
use std::str::FromStr;

use operad_forge_core::expansion::default_arity_cap;
use operad_forge_core::presentation::Presentation;

use crate::{OtherSource, Source};

pub const MAX_ARITY_VAR: &str = "OPERAD_FORGE_MAX_ARITY";

#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Cap { arity: usize, cap: usize },
    /// Report already printed.
    Verification,
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap { .. } => 3,
            CliError::Verification => 4,
        }
    }

    pub fn message(&self) -> Option<String> {
        match self {
            CliError::Input(e) => Some(format!("{e:#}")),
            CliError::Cap { arity, cap } => Some(format!(
                "arity {arity} exceeds the cap {cap}; pass --force or raise {MAX_ARITY_VAR}"
            )),
            CliError::Verification => None,
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Input(e)
    }
}

impl From<operad_forge_core::Error> for CliError {
    fn from(e: operad_forge_core::Error) -> Self {
        CliError::Input(e.into())
    }
}

/// `N` or the inclusive range `N..M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArityRange {
    pub lo: usize,
    pub hi: usize,
}

impl ArityRange {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for ArityRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid arity `{t}`"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo == 0 {
            return Err("arity must be at least 1".into());
        }
        if lo > hi {
            return Err(format!("empty arity range {lo}..{hi}"));
        }
        Ok(ArityRange { lo, hi })
    }
}

impl fmt::Display for ArityRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Largest permitted arity for a signature with `ops` operations.
pub fn arity_cap(ops: usize) -> Result<usize, CliError> {
    let cap = default_arity_cap(ops);
    match std::env::var(MAX_ARITY_VAR) {
        Ok(v) => {
            let raised: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(anyhow::anyhow!("{MAX_ARITY_VAR} must be a positive integer, got `{v}`")))?;
            Ok(cap.max(raised))
        }
        Err(_) => Ok(cap),
    }
}

pub fn check_cap(ops: usize, arity: usize, force: bool) -> Result<(), CliError> {
    let cap = arity_cap(ops)?;
    if arity > cap && !force {
        return Err(CliError::Cap { arity, cap });
    }
    Ok(())
}

fn load(builtin: Option<&str>, file: Option<&std::path::Path>) -> Result<Presentation, CliError> {
    use anyhow::Context;
    match (builtin, file) {
        (Some(name), _) => Ok(Presentation::builtin(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("presentation");
            Presentation::from_text(&text, stem)
                .with_context(|| format!("in {}", path.display()))
                .map_err(CliError::Input)
        }
        (None, None) => Err(CliError::Input(anyhow::anyhow!("no presentation given"))),
    }
}

impl Source {
    pub fn load(&self) -> Result<Presentation, CliError> {
        load(self.builtin.as_deref(), self.file.as_deref())
    }
}

impl OtherSource {
    pub fn load(&self) -> Result<Presentation, CliError> {
        load(self.with_builtin.as_deref(), self.with_file.as_deref())
    }
}
