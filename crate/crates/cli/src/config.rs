//! Plain-text `key = value` configuration. Keys are dotted (`herz.alpha`);
//! a `[section]` line prefixes the keys that follow it. `#` starts a comment.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use herzlab::dilation::{parse_matrix, Dilation};
use herzlab::exponent::Exponent;
use herzlab::grid::{Grid, GridGeometry};
use herzlab::herz::HerzSpaceParams;
use serde::Serialize;

use crate::{CliError, Result};

/// Smallest tolerance a config may request.
pub const TOLERANCE_FLOOR: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HerzConfig {
    pub alpha: String,
    pub p: f64,
    pub q: String,
    pub theta: f64,
    pub lambda: f64,
    pub homogeneous: bool,
    pub krange: Option<(i32, i32)>,
    pub delta2: Option<f64>,
}

impl Default for HerzConfig {
    fn default() -> Self {
        HerzConfig {
            alpha: "0.25".into(),
            p: 1.0,
            q: "2".into(),
            theta: 1.0,
            lambda: 0.0,
            homogeneous: true,
            krange: None,
            delta2: None,
        }
    }
}

impl HerzConfig {
    pub fn params(&self) -> Result<HerzSpaceParams> {
        let mut params = HerzSpaceParams::new(
            Exponent::parse(&self.alpha)?,
            self.p,
            Exponent::parse(&self.q)?,
            self.theta,
        )?
        .with_lambda(self.lambda);
        if !self.homogeneous {
            params = params.non_homogeneous();
        }
        if let Some((lo, hi)) = self.krange {
            params = params.with_krange(lo, hi);
        }
        if let Some(d) = self.delta2 {
            params = params.with_delta2(d);
        }
        Ok(params)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub alpha: String,
    pub lambda: String,
    pub family: String,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alpha: "0.05:0.45:0.05".into(),
            lambda: "0:0.2:0.05".into(),
            family: "scales=5".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub matrix: Vec<Vec<f64>>,
    pub half_width: f64,
    pub resolutions: Vec<usize>,
    /// Exponents exercised by the Lebesgue suite.
    pub exponents: Vec<String>,
    pub herz: HerzConfig,
    pub sweep: SweepConfig,
    /// Random cases per randomized check.
    pub samples: usize,
    /// Point pairs per quasi-triangle check.
    pub pairs: usize,
    pub family_size: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub out: PathBuf,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            matrix: vec![vec![2.0]],
            half_width: 2.0,
            resolutions: vec![1024],
            exponents: vec!["1.5".into(), "2".into(), "4".into(), "log:2,3".into()],
            herz: HerzConfig::default(),
            sweep: SweepConfig::default(),
            samples: 40,
            pairs: 10_000,
            family_size: 25,
            tolerances: BTreeMap::new(),
            out: PathBuf::from("herzlab-out"),
            timings: false,
        }
    }
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Config(format!("bad value {value:?} for `{key}`"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| bad(key, value))
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let v: Vec<T> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| num(key, s))
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(bad(key, value));
    }
    Ok(v)
}

/// `lo:hi` as an inclusive integer range.
pub fn parse_krange(text: &str) -> Option<(i32, i32)> {
    let (a, b) = text.split_once(':')?;
    let (lo, hi) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (lo <= hi).then_some((lo, hi))
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let err = || CliError::Config(format!("bad range {text:?}, expected start:stop:step"));
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| s.parse::<f64>().map_err(|_| err()))
        .collect::<Result<_>>()?;
    match nums.as_slice() {
        [v] => Ok(vec![*v]),
        [a, b, s] if *s > 0.0 && b >= a => {
            let n = ((b - a) / s + 1e-9).floor() as usize;
            // round to the step's decimal grid so 0.1 + 0.2 prints as 0.3
            Ok((0..=n)
                .map(|i| ((a + i as f64 * s) * 1e12).round() / 1e12)
                .collect())
        }
        _ => Err(err()),
    }
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::default();
        let mut section = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = if section.is_empty() {
                k.trim().to_string()
            } else {
                format!("{section}.{}", k.trim())
            };
            cfg.set(&key, v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "seed" => self.seed = num(key, v)?,
            "out" => self.out = PathBuf::from(v),
            "dilation.matrix" => self.matrix = parse_matrix(v)?,
            "grid.half_width" => self.half_width = num(key, v)?,
            "grid.resolution" | "grid.resolutions" => self.resolutions = list(key, v)?,
            "lebesgue.exponents" => {
                self.exponents = v.split(';').map(|s| s.trim().to_string()).collect();
            }
            "herz.alpha" => self.herz.alpha = v.to_string(),
            "herz.p" => self.herz.p = num(key, v)?,
            "herz.q" => self.herz.q = v.to_string(),
            "herz.theta" => self.herz.theta = num(key, v)?,
            "herz.lambda" => self.herz.lambda = num(key, v)?,
            "herz.homogeneous" => self.herz.homogeneous = num(key, v)?,
            "herz.krange" => self.herz.krange = Some(parse_krange(v).ok_or_else(|| bad(key, v))?),
            "herz.delta2" => self.herz.delta2 = Some(num(key, v)?),
            "sweep.alpha" => self.sweep.alpha = v.to_string(),
            "sweep.lambda" => self.sweep.lambda = v.to_string(),
            "sweep.family" => self.sweep.family = v.to_string(),
            "suite.samples" => self.samples = num(key, v)?,
            "suite.pairs" => self.pairs = num(key, v)?,
            "suite.family_size" => self.family_size = num(key, v)?,
            _ => match key.strip_prefix("tolerance.") {
                Some(check) => {
                    self.tolerances.insert(check.to_string(), num(key, v)?);
                }
                None => return Err(CliError::Config(format!("unknown key `{key}`"))),
            },
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.dilation()?;
        if !self.half_width.is_finite() || self.half_width <= 0.0 {
            return Err(bad("grid.half_width", &self.half_width.to_string()));
        }
        if self.resolutions.iter().any(|&n| n < 2) {
            return Err(CliError::Config(
                "grid resolutions must be at least 2".into(),
            ));
        }
        if self.samples == 0 || self.pairs == 0 || self.family_size == 0 {
            return Err(CliError::Config("sample counts must be positive".into()));
        }
        for e in &self.exponents {
            Exponent::parse(e)?;
        }
        self.herz.params()?;
        for (check, &tol) in &self.tolerances {
            if !crate::suites::TOLERANCE_KEYS.contains(&check.as_str()) {
                return Err(CliError::Config(format!(
                    "no check `{check}` takes a tolerance"
                )));
            }
            if tol.is_nan() || tol < TOLERANCE_FLOOR {
                return Err(CliError::Config(format!(
                    "tolerance for `{check}` is {tol:e}, below the floor {TOLERANCE_FLOOR:e}"
                )));
            }
        }
        Ok(())
    }

    pub fn dilation(&self) -> Result<Dilation> {
        Ok(Dilation::new(&self.matrix)?)
    }

    pub fn resolution(&self) -> usize {
        self.resolutions[0]
    }

    pub fn geometry(&self) -> Result<GridGeometry> {
        let d = self.dilation()?;
        let grid = Grid::new(d.dim(), self.half_width, self.resolution())?;
        Ok(GridGeometry::new(&d, grid)?)
    }

    pub fn tolerance(&self, check: &str, default: f64) -> f64 {
        self.tolerances.get(check).copied().unwrap_or(default)
    }
}
