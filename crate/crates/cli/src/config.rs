//! Run configuration: a JSON file, overridden field by field from flags.

use std::fmt;

use clap::ValueEnum;
use dorth_core::poly::parse_rational;
use dorth_core::{DiffOperator, Rational, RecurrenceCoeffs};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Classify,
    Eigensolve,
    VerifyTheorem4,
    VerifyTheorem5,
    VerifyIdentities,
    Hahn,
    Sweep,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Classify => "classify",
            Mode::Eigensolve => "eigensolve",
            Mode::VerifyTheorem4 => "verify-theorem4",
            Mode::VerifyTheorem5 => "verify-theorem5",
            Mode::VerifyIdentities => "verify-identities",
            Mode::Hahn => "hahn",
            Mode::Sweep => "sweep",
        }
    }
}

/// Which family a sweep draws from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[default]
    Theorem4,
    Theorem5,
}

/// The file format. Every field is optional here; [`RunConfig::resolve`]
/// fills defaults and validates.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub mode: Option<Mode>,
    pub operator: Option<Vec<Vec<String>>>,
    pub recurrence: Option<RecurrenceCoeffs>,
    pub tau: Option<String>,
    pub n_max: Option<usize>,
    pub moment_order: Option<usize>,
    pub check_order: Option<usize>,
    pub seed: Option<u64>,
    pub draws: Option<usize>,
    pub suite: Option<Suite>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl RawConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| {
            ConfigError::new(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub operator: Option<DiffOperator>,
    pub recurrence: Option<RecurrenceCoeffs>,
    pub tau: Option<Rational>,
    pub n_max: usize,
    pub moment_order: usize,
    pub check_order: usize,
    pub seed: u64,
    pub draws: usize,
    pub suite: Suite,
}

impl RunConfig {
    /// Defaults: `n_max = 12`, `moment_order = 40`, `check_order = 24`,
    /// `seed = 0`, `draws = 20`, `suite = theorem4`.
    pub fn resolve(mode: Mode, raw: RawConfig) -> Result<Self, ConfigError> {
        if let Some(m) = raw.mode {
            if m != mode {
                return Err(ConfigError::new(
                    "mode",
                    format!("config says {} but the command is {}", m.name(), mode.name()),
                ));
            }
        }
        let operator = raw
            .operator
            .map(|a| DiffOperator::from_strings(&a).map_err(|e| ConfigError::new("operator", e.to_string())))
            .transpose()?;
        let tau = raw
            .tau
            .map(|t| parse_rational(&t).map_err(|e| ConfigError::new("tau", e.to_string())))
            .transpose()?;
        let cfg = RunConfig {
            mode,
            operator,
            recurrence: raw.recurrence,
            tau,
            n_max: raw.n_max.unwrap_or(12),
            moment_order: raw.moment_order.unwrap_or(40),
            check_order: raw.check_order.unwrap_or(24),
            seed: raw.seed.unwrap_or(0),
            draws: raw.draws.unwrap_or(20),
            suite: raw.suite.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_max < 4 {
            return Err(ConfigError::new("n_max", format!("must be at least 4, got {}", self.n_max)));
        }
        if self.check_order + 12 > self.moment_order {
            return Err(ConfigError::new(
                "check_order",
                format!(
                    "must be at most moment_order - 12 = {}, got {}",
                    self.moment_order as i64 - 12,
                    self.check_order
                ),
            ));
        }
        let need_operator = matches!(
            self.mode,
            Mode::Classify | Mode::Eigensolve | Mode::VerifyTheorem4 | Mode::VerifyTheorem5
        );
        if need_operator && self.operator.is_none() {
            return Err(ConfigError::new("operator", format!("required by {}", self.mode.name())));
        }
        if self.mode == Mode::VerifyTheorem5 && self.tau.is_none() {
            return Err(ConfigError::new("tau", "required by verify-theorem5"));
        }
        if matches!(self.mode, Mode::VerifyIdentities | Mode::Hahn)
            && self.operator.is_none()
            && self.recurrence.is_none()
        {
            return Err(ConfigError::new(
                "operator",
                format!("{} needs an operator or a recurrence", self.mode.name()),
            ));
        }
        if self.mode == Mode::Sweep && self.draws == 0 {
            return Err(ConfigError::new("draws", "must be at least 1"));
        }
        Ok(())
    }
}
