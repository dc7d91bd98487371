//! Run configuration: flags over config file over defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use colour3_core::quad::{DEFAULT_PANELS, DEFAULT_POINTS};
use colour3_core::recursion::{SolverConfig, COLOUR_FACTOR, DEFAULT_GRID_SIZE};
use serde::Serialize;

pub const CONFIG_ENV: &str = "COLOUR3_CONFIG";
pub const DEFAULT_MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub grid_size: usize,
    pub panels: usize,
    pub points: usize,
    pub max_order: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Only changed to check that verification notices.
    pub colour_factor: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_size: DEFAULT_GRID_SIZE,
            panels: DEFAULT_PANELS,
            points: DEFAULT_POINTS,
            max_order: DEFAULT_MAX_ORDER,
            format: Format::Json,
            out: None,
            colour_factor: COLOUR_FACTOR,
        }
    }
}

/// Values given on the command line; `None` means not given.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub grid_size: Option<usize>,
    pub panels: Option<usize>,
    pub points: Option<usize>,
    pub max_order: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub colour_factor: Option<f64>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("bad value for {key}: {value:?}"))
}

impl RunConfig {
    /// Apply a flat key=value file. Blank lines and lines starting with # are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            match key.as_str() {
                "grid_size" => self.grid_size = parse(&key, value)?,
                "panels" => self.panels = parse(&key, value)?,
                "points" => self.points = parse(&key, value)?,
                "max_order" => self.max_order = parse(&key, value)?,
                "colour_factor" => self.colour_factor = parse(&key, value)?,
                "out" => self.out = Some(PathBuf::from(value)),
                "format" => {
                    self.format = Format::from_str(value, true).map_err(|_| format!("bad value for format: {value:?}"))?
                }
                _ => return Err(format!("{}:{}: unknown key {key}", path.display(), lineno + 1)),
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.grid_size {
            self.grid_size = v;
        }
        if let Some(v) = o.panels {
            self.panels = v;
        }
        if let Some(v) = o.points {
            self.points = v;
        }
        if let Some(v) = o.max_order {
            self.max_order = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.out {
            self.out = Some(v.clone());
        }
        if let Some(v) = o.colour_factor {
            self.colour_factor = v;
        }
    }

    /// Defaults, then the file named by `config_file` (or the environment), then flags.
    pub fn resolve(config_file: Option<&Path>, overrides: &Overrides) -> Result<Self, String> {
        let mut config = RunConfig::default();
        let env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        if let Some(path) = config_file.map(Path::to_path_buf).or(env) {
            config.apply_file(&path)?;
        }
        config.apply(overrides);
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.grid_size < 4 {
            return Err(format!("grid size must be >= 4, got {}", self.grid_size));
        }
        if self.panels < 1 || self.points < 2 {
            return Err("need at least 1 panel and 2 points".into());
        }
        if self.max_order > 4 {
            return Err(format!("max order must be at most 4, got {}", self.max_order));
        }
        if !(self.colour_factor.is_finite() && self.colour_factor > 0.0) {
            return Err("colour factor must be positive".into());
        }
        Ok(())
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            grid_size: self.grid_size,
            panels: self.panels,
            points: self.points,
            colour_factor: self.colour_factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# test\ngrid_size = 32\npoints=16\nformat = csv\n").unwrap();
        let o = Overrides { points: Some(20), ..Default::default() };
        let c = RunConfig::resolve(Some(&path), &o).unwrap();
        assert_eq!((c.grid_size, c.points, c.panels, c.format), (32, 20, DEFAULT_PANELS, Format::Csv));
    }

    #[test]
    fn rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        fs::write(&path, "grid_size 32\n").unwrap();
        assert!(RunConfig::resolve(Some(&path), &Overrides::default()).is_err());
        fs::write(&path, "colour = 3\n").unwrap();
        assert!(RunConfig::resolve(Some(&path), &Overrides::default()).is_err());
        let o = Overrides { max_order: Some(5), ..Default::default() };
        assert!(RunConfig::resolve(None, &o).is_err());
    }
}
