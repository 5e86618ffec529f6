//! Flat `key = value` request files.
//!
//! ```text
//! S0 = 100
//! K = 100
//! sigma = 0.3
//! rate.r0 = 0.09      # or: rate = 0.05, or: rate.file = curve.csv
//! rate.c = 0
//! T = 1
//! N = 10              # or: M = 200 (continuous), or: grid.file = dates.csv
//! payoff = asian      # or vwap, with vwap.* keys
//! mc.paths = 1000000
//! mc.seed = 7
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use asian_bounds::{GEstimate, MonitoringGrid, RateCurve, VolumeModel};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Constant(f64),
    Sinusoidal { r0: f64, c: f64 },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Discrete(usize),
    Continuous(usize),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Payoff {
    Asian,
    Vwap,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GSource {
    Estimate { paths: usize, seed: u64 },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VwapSpec {
    pub volume: Option<VolumeModel>,
    pub g: GSource,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSpec {
    pub paths: usize,
    pub seed: u64,
    pub antithetic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PriceRequest {
    pub s0: f64,
    pub strike: f64,
    pub sigma: f64,
    pub maturity: f64,
    pub curve: CurveSpec,
    pub grid: GridSpec,
    pub payoff: Payoff,
    pub vwap: Option<VwapSpec>,
    pub mc: Option<McSpec>,
}

const KEYS: &[&str] = &[
    "S0", "K", "sigma", "T", "N", "M", "grid.file", "rate", "rate.r0", "rate.c", "rate.file", "payoff",
    "vwap.lambda", "vwap.theta", "vwap.eta", "vwap.x0", "vwap.g_paths", "vwap.g_seed", "vwap.g_file",
    "mc.paths", "mc.seed", "mc.antithetic",
];

struct Fields {
    map: BTreeMap<String, String>,
    base: PathBuf,
}

impl Fields {
    fn has(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Validation(format!("missing key {key}")))
    }

    fn num(&self, key: &str) -> Result<f64, CliError> {
        let v = self.raw(key)?;
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Validation(format!("{key}: expected a finite number, got {v:?}")))
    }

    fn num_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        if self.has(key) {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn count(&self, key: &str) -> Result<usize, CliError> {
        let v = self.raw(key)?;
        let n = v.parse::<f64>().ok().filter(|x| x.fract() == 0.0 && *x >= 0.0 && *x < 1e15);
        n.map(|x| x as usize)
            .ok_or_else(|| CliError::Validation(format!("{key}: expected a nonnegative integer, got {v:?}")))
    }

    fn seed(&self, key: &str, default: u64) -> Result<u64, CliError> {
        match self.map.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse::<u64>()
                .map_err(|_| CliError::Validation(format!("{key}: expected an unsigned integer, got {v:?}"))),
        }
    }

    fn path(&self, key: &str) -> Result<PathBuf, CliError> {
        Ok(self.base.join(self.raw(key)?))
    }
}

fn parse_fields(text: &str, base: &Path) -> Result<Fields, CliError> {
    let mut map = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("line {}: expected key = value", no + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(CliError::Validation(format!("line {}: unknown key {k}", no + 1)));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::Validation(format!("line {}: duplicate key {k}", no + 1)));
        }
    }
    Ok(Fields { map, base: base.to_path_buf() })
}

fn exactly_one<'a>(f: &Fields, keys: &[&'a str], what: &str) -> Result<&'a str, CliError> {
    let present: Vec<&str> = keys.iter().copied().filter(|k| f.has(k)).collect();
    match present.as_slice() {
        [k] => Ok(k),
        [] => Err(CliError::Validation(format!("{what}: one of {} is required", keys.join(", ")))),
        _ => Err(CliError::Validation(format!("{what}: conflicting keys {}", present.join(", ")))),
    }
}

impl PriceRequest {
    /// Parses request text; relative file paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, CliError> {
        let f = parse_fields(text, base)?;

        let s0 = f.num("S0")?;
        if !(s0 > 0.0) {
            return Err(CliError::Validation(format!("S0 must be > 0, got {s0}")));
        }
        let strike = f.num("K")?;
        if !(strike > 0.0) {
            return Err(CliError::Validation(format!("K must be > 0, got {strike}")));
        }
        let sigma = f.num("sigma")?;
        if !(sigma >= 0.0) {
            return Err(CliError::Validation(format!("sigma must be >= 0, got {sigma}")));
        }
        let maturity = f.num("T")?;
        if !(maturity > 0.0) {
            return Err(CliError::Validation(format!("T must be > 0, got {maturity}")));
        }

        let curve = match exactly_one(&f, &["rate", "rate.r0", "rate.file"], "rate curve")? {
            "rate" => {
                if f.has("rate.c") {
                    return Err(CliError::Validation("rate.c only applies with rate.r0".into()));
                }
                CurveSpec::Constant(f.num("rate")?)
            }
            "rate.r0" => CurveSpec::Sinusoidal { r0: f.num("rate.r0")?, c: f.num_or("rate.c", 0.0)? },
            _ => CurveSpec::File(f.path("rate.file")?),
        };

        let grid = match exactly_one(&f, &["N", "M", "grid.file"], "grid")? {
            "N" => GridSpec::Discrete(f.count("N")?),
            "M" => GridSpec::Continuous(f.count("M")?),
            _ => GridSpec::File(f.path("grid.file")?),
        };

        let payoff = match f.map.get("payoff").map(String::as_str) {
            None | Some("asian") => Payoff::Asian,
            Some("vwap") => Payoff::Vwap,
            Some(other) => {
                return Err(CliError::Validation(format!("payoff: expected asian or vwap, got {other:?}")));
            }
        };

        let vwap_keys = f.map.keys().any(|k| k.starts_with("vwap."));
        let vwap = if payoff == Payoff::Vwap {
            let volume = if ["vwap.lambda", "vwap.theta", "vwap.eta", "vwap.x0"].iter().any(|k| f.has(k)) {
                let m = VolumeModel::new(
                    f.num("vwap.lambda")?,
                    f.num("vwap.theta")?,
                    f.num("vwap.eta")?,
                    f.num("vwap.x0")?,
                )
                .map_err(|e| CliError::Validation(format!("vwap: {e}")))?;
                Some(m)
            } else {
                None
            };
            let g = if f.has("vwap.g_file") {
                if f.has("vwap.g_paths") {
                    return Err(CliError::Validation("vwap: conflicting keys vwap.g_file, vwap.g_paths".into()));
                }
                GSource::File(f.path("vwap.g_file")?)
            } else {
                if volume.is_none() {
                    return Err(CliError::Validation(
                        "vwap: either vwap.g_file or the volume model keys are required".into(),
                    ));
                }
                GSource::Estimate {
                    paths: if f.has("vwap.g_paths") { f.count("vwap.g_paths")? } else { 1_000_000 },
                    seed: f.seed("vwap.g_seed", 1)?,
                }
            };
            Some(VwapSpec { volume, g })
        } else if vwap_keys {
            return Err(CliError::Validation("vwap.* keys require payoff = vwap".into()));
        } else {
            None
        };

        let mc = if f.has("mc.paths") {
            let antithetic = match f.map.get("mc.antithetic").map(String::as_str) {
                None | Some("true") => true,
                Some("false") => false,
                Some(other) => {
                    return Err(CliError::Validation(format!("mc.antithetic: expected true or false, got {other:?}")));
                }
            };
            Some(McSpec { paths: f.count("mc.paths")?, seed: f.seed("mc.seed", 1)?, antithetic })
        } else if f.has("mc.seed") || f.has("mc.antithetic") {
            return Err(CliError::Validation("missing key mc.paths".into()));
        } else {
            None
        };

        Ok(Self { s0, strike, sigma, maturity, curve, grid, payoff, vwap, mc })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn curve(&self) -> Result<RateCurve, CliError> {
        Ok(match &self.curve {
            CurveSpec::Constant(r) => RateCurve::constant(*r),
            CurveSpec::Sinusoidal { r0, c } => RateCurve::sinusoidal(*r0, *c),
            CurveSpec::File(p) => RateCurve::load(p).map_err(|e| CliError::Validation(format!("rate.file: {e}")))?,
        })
    }

    pub fn grid(&self) -> Result<MonitoringGrid, CliError> {
        let t = self.maturity;
        match &self.grid {
            GridSpec::Discrete(n) => MonitoringGrid::uniform_discrete(t, *n),
            GridSpec::Continuous(m) => MonitoringGrid::continuous_uniform_approx(t, *m),
            GridSpec::File(p) => MonitoringGrid::load(p, Some(t)),
        }
        .map_err(|e| {
            let key = match self.grid {
                GridSpec::Discrete(_) => "N",
                GridSpec::Continuous(_) => "M",
                GridSpec::File(_) => "grid.file",
            };
            CliError::Validation(format!("{key}: {e}"))
        })
    }

    pub fn g_profile(&self, grid: &MonitoringGrid, workers: Option<usize>) -> Result<GEstimate, CliError> {
        let spec = self.vwap.as_ref().ok_or_else(|| CliError::Validation("payoff = vwap required".into()))?;
        match &spec.g {
            GSource::File(p) => GEstimate::load(p).map_err(|e| CliError::Validation(format!("vwap.g_file: {e}"))),
            GSource::Estimate { paths, seed } => {
                let vol = spec.volume.as_ref().expect("checked at parse time");
                Ok(asian_bounds::vwap::estimate_g(vol, grid, *paths, *seed, workers)?)
            }
        }
    }
}
