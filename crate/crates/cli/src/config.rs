//! Experiment configuration: defaults, a flat key=value config file, and
//! command-line flags, merged in that order (flags win).

use std::fmt;
use std::path::{Path, PathBuf};

/// Environment variable supplying a default master seed.
pub const SEED_ENV: &str = "ONTICLAB_SEED";
/// Minimum sample count for statistical experiments.
pub const MIN_SAMPLES: u64 = 1000;

#[derive(Debug)]
pub enum ConfigError {
    UnknownExperiment(String),
    UnknownModel(String),
    UnknownFormat(String),
    UnknownKey(String),
    BadValue { key: String, value: String },
    MissingModel,
    IncompatibleModel { experiment: Experiment, model: ModelKind },
    SamplesTooSmall(u64),
    DimensionTooSmall { needed: usize, got: usize },
    QubitDimensionFixed(usize),
    Io(String, std::io::Error),
    BadSeedEnv(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::UnknownExperiment(s) => write!(
                f,
                "unknown experiment `{s}` (expected born-test, contextuality-demo, \
                 property-suite, wigner-demo, or dimension-audit)"
            ),
            ConfigError::UnknownModel(s) => write!(
                f,
                "unknown model `{s}` (expected qubit-df, qubit-b0, bell-df, bell-ndf, \
                 or wigner-gaussian)"
            ),
            ConfigError::UnknownFormat(s) => {
                write!(f, "unknown format `{s}` (expected csv or json)")
            }
            ConfigError::UnknownKey(s) => write!(f, "unknown config key `{s}`"),
            ConfigError::BadValue { key, value } => {
                write!(f, "invalid value `{value}` for config key `{key}`")
            }
            ConfigError::MissingModel => write!(f, "this experiment requires --model"),
            ConfigError::IncompatibleModel { experiment, model } => write!(
                f,
                "model `{model}` cannot run under experiment `{experiment}`"
            ),
            ConfigError::SamplesTooSmall(n) => {
                write!(f, "statistical experiments need at least {MIN_SAMPLES} samples, got {n}")
            }
            ConfigError::DimensionTooSmall { needed, got } => {
                write!(f, "this experiment needs N >= {needed}, got {got}")
            }
            ConfigError::QubitDimensionFixed(n) => {
                write!(f, "qubit models are two-dimensional; got N = {n}")
            }
            ConfigError::Io(path, e) => write!(f, "cannot read config file {path}: {e}"),
            ConfigError::BadSeedEnv(s) => {
                write!(f, "{SEED_ENV} must be an unsigned 64-bit integer, got `{s}`")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    BornTest,
    ContextualityDemo,
    PropertySuite,
    WignerDemo,
    DimensionAudit,
}

impl Experiment {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "born-test" => Ok(Self::BornTest),
            "contextuality-demo" => Ok(Self::ContextualityDemo),
            "property-suite" => Ok(Self::PropertySuite),
            "wigner-demo" => Ok(Self::WignerDemo),
            "dimension-audit" => Ok(Self::DimensionAudit),
            _ => Err(ConfigError::UnknownExperiment(s.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BornTest => "born-test",
            Self::ContextualityDemo => "contextuality-demo",
            Self::PropertySuite => "property-suite",
            Self::WignerDemo => "wigner-demo",
            Self::DimensionAudit => "dimension-audit",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    QubitDf,
    QubitB0,
    BellDf,
    BellNdf,
    WignerGaussian,
}

impl ModelKind {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "qubit-df" => Ok(Self::QubitDf),
            "qubit-b0" => Ok(Self::QubitB0),
            "bell-df" => Ok(Self::BellDf),
            "bell-ndf" => Ok(Self::BellNdf),
            "wigner-gaussian" => Ok(Self::WignerGaussian),
            _ => Err(ConfigError::UnknownModel(s.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::QubitDf => "qubit-df",
            Self::QubitB0 => "qubit-b0",
            Self::BellDf => "bell-df",
            Self::BellNdf => "bell-ndf",
            Self::WignerGaussian => "wigner-gaussian",
        }
    }

    pub const ALL: [ModelKind; 5] = [
        Self::QubitDf,
        Self::QubitB0,
        Self::BellDf,
        Self::BellNdf,
        Self::WignerGaussian,
    ];
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(ConfigError::UnknownFormat(s.to_string())),
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Unvalidated settings as collected from file and flags; `None` means "not
/// set at this layer".
#[derive(Debug, Clone, Default)]
pub struct PartialConfig {
    pub experiment: Option<String>,
    pub model: Option<String>,
    pub dim: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl PartialConfig {
    /// Reads a flat key=value file: one pair per line, `#` comments and
    /// blank lines ignored.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(path.display().to_string(), e))?;
        let mut cfg = Self::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::BadValue {
                key: line.to_string(),
                value: String::new(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "experiment" => cfg.experiment = Some(value.to_string()),
                "model" => cfg.model = Some(value.to_string()),
                "N" => cfg.dim = Some(value.parse().map_err(|_| bad())?),
                "samples" => cfg.samples = Some(value.parse().map_err(|_| bad())?),
                "seed" => cfg.seed = Some(value.parse().map_err(|_| bad())?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.to_string()),
                _ => return Err(ConfigError::UnknownKey(key.to_string())),
            }
        }
        Ok(cfg)
    }

    /// Overlays `self` (higher priority) on `base`.
    pub fn over(self, base: Self) -> Self {
        Self {
            experiment: self.experiment.or(base.experiment),
            model: self.model.or(base.model),
            dim: self.dim.or(base.dim),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }
}

/// A validated experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub model: Option<ModelKind>,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    pub out: PathBuf,
    pub format: ReportFormat,
}

impl ExperimentConfig {
    /// Validates a merged partial configuration. `env_seed` is the raw value
    /// of [`SEED_ENV`], used when no other layer provides a seed.
    pub fn resolve(
        partial: PartialConfig,
        env_seed: Option<String>,
    ) -> Result<Self, ConfigError> {
        let experiment = Experiment::parse(
            partial
                .experiment
                .as_deref()
                .ok_or_else(|| ConfigError::UnknownExperiment(String::new()))?,
        )?;
        let model = partial.model.as_deref().map(ModelKind::parse).transpose()?;
        let seed = match partial.seed {
            Some(s) => s,
            None => match env_seed {
                Some(raw) => raw
                    .parse::<u64>()
                    .map_err(|_| ConfigError::BadSeedEnv(raw))?,
                None => 1,
            },
        };
        let format = partial
            .format
            .as_deref()
            .map(ReportFormat::parse)
            .transpose()?
            .unwrap_or(ReportFormat::Csv);
        let dim = partial.dim.unwrap_or(match model {
            Some(ModelKind::QubitDf | ModelKind::QubitB0) => 2,
            _ => 3,
        });
        let samples = partial.samples.unwrap_or(100_000);
        let out = partial
            .out
            .unwrap_or_else(|| PathBuf::from(format!("onticlab-report.{}", format.extension())));

        let config = Self {
            experiment,
            model,
            dim,
            samples,
            seed,
            out,
            format,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.dim < 2 {
            return Err(ConfigError::DimensionTooSmall {
                needed: 2,
                got: self.dim,
            });
        }
        if matches!(self.model, Some(ModelKind::QubitDf | ModelKind::QubitB0)) && self.dim != 2 {
            return Err(ConfigError::QubitDimensionFixed(self.dim));
        }
        let statistical = matches!(
            self.experiment,
            Experiment::BornTest | Experiment::PropertySuite | Experiment::WignerDemo
        );
        if statistical && self.samples < MIN_SAMPLES {
            return Err(ConfigError::SamplesTooSmall(self.samples));
        }
        match self.experiment {
            Experiment::BornTest => {
                if self.model.is_none() {
                    return Err(ConfigError::MissingModel);
                }
            }
            Experiment::ContextualityDemo => {
                if let Some(model) = self.model {
                    if model != ModelKind::BellDf {
                        return Err(ConfigError::IncompatibleModel {
                            experiment: self.experiment,
                            model,
                        });
                    }
                }
                if self.dim < 3 {
                    return Err(ConfigError::DimensionTooSmall {
                        needed: 3,
                        got: self.dim,
                    });
                }
            }
            Experiment::WignerDemo => {
                if let Some(model) = self.model {
                    if model != ModelKind::WignerGaussian {
                        return Err(ConfigError::IncompatibleModel {
                            experiment: self.experiment,
                            model,
                        });
                    }
                }
            }
            Experiment::PropertySuite | Experiment::DimensionAudit => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial(experiment: &str) -> PartialConfig {
        PartialConfig {
            experiment: Some(experiment.to_string()),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_resolve() {
        let cfg = ExperimentConfig::resolve(partial("property-suite"), None).unwrap();
        assert_eq!(cfg.seed, 1);
        assert_eq!(cfg.samples, 100_000);
        assert_eq!(cfg.dim, 3);
        assert_eq!(cfg.format, ReportFormat::Csv);
        assert_eq!(cfg.out, PathBuf::from("onticlab-report.csv"));
    }

    #[test]
    fn env_seed_applies_when_unset() {
        let cfg =
            ExperimentConfig::resolve(partial("property-suite"), Some("99".into())).unwrap();
        assert_eq!(cfg.seed, 99);
        let mut explicit = partial("property-suite");
        explicit.seed = Some(5);
        let cfg = ExperimentConfig::resolve(explicit, Some("99".into())).unwrap();
        assert_eq!(cfg.seed, 5);
        assert!(ExperimentConfig::resolve(partial("property-suite"), Some("nope".into())).is_err());
    }

    #[test]
    fn born_test_requires_model_and_enough_samples() {
        assert!(matches!(
            ExperimentConfig::resolve(partial("born-test"), None),
            Err(ConfigError::MissingModel)
        ));
        let mut p = partial("born-test");
        p.model = Some("qubit-df".into());
        p.samples = Some(10);
        assert!(matches!(
            ExperimentConfig::resolve(p, None),
            Err(ConfigError::SamplesTooSmall(10))
        ));
    }

    #[test]
    fn qubit_models_pin_the_dimension() {
        let mut p = partial("born-test");
        p.model = Some("qubit-df".into());
        p.dim = Some(3);
        assert!(matches!(
            ExperimentConfig::resolve(p, None),
            Err(ConfigError::QubitDimensionFixed(3))
        ));
        let mut p = partial("born-test");
        p.model = Some("qubit-b0".into());
        let cfg = ExperimentConfig::resolve(p, None).unwrap();
        assert_eq!(cfg.dim, 2);
    }

    #[test]
    fn contextuality_needs_three_dimensions_and_bell() {
        let mut p = partial("contextuality-demo");
        p.dim = Some(2);
        assert!(ExperimentConfig::resolve(p, None).is_err());
        let mut p = partial("contextuality-demo");
        p.model = Some("qubit-df".into());
        assert!(matches!(
            ExperimentConfig::resolve(p, None),
            Err(ConfigError::QubitDimensionFixed(_)) | Err(ConfigError::IncompatibleModel { .. })
        ));
    }

    #[test]
    fn config_file_round_trip_and_flag_override() {
        let dir = std::env::temp_dir().join(format!("onticlab-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(
            &path,
            "# battery defaults\nexperiment=born-test\nmodel=bell-df\nN=4\nsamples=2000\nseed=11\nformat=json\n",
        )
        .unwrap();
        let file = PartialConfig::from_file(&path).unwrap();
        let flags = PartialConfig {
            seed: Some(42),
            ..Default::default()
        };
        let cfg = ExperimentConfig::resolve(flags.over(file), None).unwrap();
        assert_eq!(cfg.experiment, Experiment::BornTest);
        assert_eq!(cfg.model, Some(ModelKind::BellDf));
        assert_eq!(cfg.dim, 4);
        assert_eq!(cfg.samples, 2000);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.format, ReportFormat::Json);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn config_file_rejects_unknown_keys_and_bad_values() {
        let dir = std::env::temp_dir().join(format!("onticlab-badcfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let bad_key = dir.join("bad_key.conf");
        std::fs::write(&bad_key, "explosions=yes\n").unwrap();
        assert!(matches!(
            PartialConfig::from_file(&bad_key),
            Err(ConfigError::UnknownKey(_))
        ));
        let bad_value = dir.join("bad_value.conf");
        std::fs::write(&bad_value, "samples=many\n").unwrap();
        assert!(matches!(
            PartialConfig::from_file(&bad_value),
            Err(ConfigError::BadValue { .. })
        ));
        std::fs::remove_dir_all(&dir).ok();
    }
}
