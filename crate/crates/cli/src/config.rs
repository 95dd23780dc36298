use crate::error::CliError;
use alphaconvex::envelope::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use alphaconvex::{
    make_alpha, parse_datum, Alpha, BoundaryDatum, Mode, Schedule, Shape, SolverSettings,
    StrictlyConvexDomain,
};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DEFAULT_ORACLE_SAMPLES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(default)]
    pub center: [f64; 2],
}

/// A run configuration as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainSpec,
    pub datum: String,
    pub alphas: Vec<f64>,
    pub h: f64,
    #[serde(default = "default_width")]
    pub width: u32,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_oracle_samples")]
    pub oracle_samples: usize,
}

fn default_width() -> u32 {
    2
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_mode() -> Mode {
    Mode::GaussSeidel
}

fn default_oracle_samples() -> usize {
    DEFAULT_ORACLE_SAMPLES
}

/// A configuration whose every field has passed the library's preconditions.
#[derive(Debug, Clone)]
pub struct Validated {
    pub raw: RunConfig,
    pub domain: StrictlyConvexDomain,
    pub datum: BoundaryDatum,
    pub alphas: Vec<Alpha>,
    pub settings: SolverSettings,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<Validated, CliError> {
        let domain = StrictlyConvexDomain::new(self.domain.center, self.domain.shape)?;
        let datum = parse_datum(&self.datum)?;
        datum.sampled_range(&domain)?;
        if self.alphas.is_empty() {
            return Err(CliError::Config("`alphas` must not be empty".into()));
        }
        let alphas = self
            .alphas
            .iter()
            .map(|&a| make_alpha(a))
            .collect::<Result<Vec<_>, _>>()?;
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(CliError::Config(format!(
                "`h` must be positive, got {}",
                self.h
            )));
        }
        if self.h > domain.diameter() / 4.0 {
            return Err(CliError::Config(format!(
                "`h` = {} exceeds a quarter of the domain diameter {}",
                self.h,
                domain.diameter()
            )));
        }
        if self.width == 0 {
            return Err(CliError::Config("`width` must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Config(format!(
                "`tol` must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(CliError::Config("`max_iter` must be at least 1".into()));
        }
        if self.oracle_samples < 16 {
            return Err(CliError::Config(
                "`oracle_samples` must be at least 16".into(),
            ));
        }
        let settings = SolverSettings {
            width: self.width,
            tol: self.tol,
            max_iter: self.max_iter,
            mode: self.mode,
            schedule: Schedule::Cycling,
            line_passes: true,
        };
        Ok(Validated {
            raw: self.clone(),
            domain,
            datum,
            alphas,
            settings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "domain": {"kind": "disc", "radius": 1.0},
        "datum": "x",
        "alphas": [0.5],
        "h": 0.125
    }"#;

    #[test]
    fn defaults_are_filled_in() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.domain.center, [0.0, 0.0]);
        assert_eq!(
            (c.width, c.tol, c.max_iter, c.mode),
            (2, 1e-10, 100_000, Mode::GaussSeidel)
        );
        assert_eq!(c.oracle_samples, 1024);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn domain_kinds_parse() {
        let text = r#"{
            "domain": {"kind": "superellipse", "center": [1.0, 2.0], "semi_axes": [2.0, 1.0], "exponent": 4.0},
            "datum": "y", "alphas": [0, 1], "h": 0.1, "mode": "jacobi"
        }"#;
        let c = RunConfig::from_json(text).unwrap();
        assert_eq!(c.mode, Mode::Jacobi);
        assert_eq!(
            c.domain.shape,
            Shape::Superellipse {
                semi_axes: [2.0, 1.0],
                exponent: 4.0
            }
        );
        let text = r#"{"domain": {"kind": "ellipse", "semi_axes": [2.0, 1.0]}, "datum": "y", "alphas": [1], "h": 0.1}"#;
        assert!(RunConfig::from_json(text).unwrap().validate().is_ok());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let base = RunConfig::from_json(MINIMAL).unwrap();
        let mut c = base.clone();
        c.datum = "x+*y".into();
        let err = c.validate().unwrap_err().to_string();
        assert!(err.contains("position 2"), "{err}");
        let mut c = base.clone();
        c.alphas = vec![1.5];
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.h = 0.75;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.tol = 0.0;
        assert!(c.validate().is_err());
        assert!(RunConfig::from_json(r#"{"datum": "x"}"#).is_err());
        assert!(RunConfig::from_json(&MINIMAL.replace("\"h\"", "\"bogus\": 1, \"h\"")).is_err());
    }
}
