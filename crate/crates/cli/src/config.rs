//! Flat `key = value` configuration.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::path::PathBuf;

use korteweg_core::constitutive::FluidParams;
use korteweg_core::fields::{GridSpec, MIN_CELLS};
use korteweg_core::models::{ModelKind, Route};
use korteweg_core::reduction::{Identity, Thresholds};
use korteweg_core::timestep::{Preset, PresetParams, DEFAULT_CFL};

/// Parse failure with the 1-based line (0 when not tied to one line) and key.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.key.is_empty()) {
            (0, _) => write!(f, "{}: {}", self.key, self.message),
            (l, true) => write!(f, "line {l}: {}", self.message),
            (l, false) => write!(f, "line {l}: {}: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: ModelKind,
    pub route: Route,
    pub params: FluidParams,
    pub dim: usize,
    pub n: usize,
    pub length: f64,
    pub preset: Preset,
    pub preset_params: PresetParams,
    pub end_time: f64,
    pub cfl: f64,
    /// Fixed step; `None` uses the stability limit.
    pub dt: Option<f64>,
    pub output_every: usize,
    pub output_dir: PathBuf,
    /// Identity names or groups evaluated along a simulation.
    pub residuals: Vec<String>,
    /// Identity names or groups for `verify` and `converge`.
    pub identities: Vec<String>,
    pub grids: Vec<usize>,
    pub thresholds: Thresholds,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            model: ModelKind::Nsk,
            route: Route::Korteweg,
            params: FluidParams::default(),
            dim: 1,
            n: 64,
            length: 2.0 * PI,
            preset: Preset::Manufactured,
            preset_params: PresetParams::default(),
            end_time: 1.0,
            cfl: DEFAULT_CFL,
            dt: None,
            output_every: 10,
            output_dir: PathBuf::from("output"),
            residuals: Vec::new(),
            identities: vec!["all".into()],
            grids: vec![64, 128, 256],
            thresholds: Thresholds::default(),
        }
    }
}

pub const KEYS: [&str; 36] = [
    "model",
    "route",
    "tau1",
    "tau2",
    "a",
    "lambda",
    "cv",
    "eta",
    "zeta",
    "beta",
    "eps",
    "gamma",
    "delta",
    "dim",
    "n",
    "length",
    "preset",
    "rho0",
    "rho_amplitude",
    "velocity",
    "theta0",
    "theta_amplitude",
    "chi_amplitude",
    "width",
    "mode",
    "seed",
    "end_time",
    "cfl",
    "dt",
    "output_every",
    "output_dir",
    "residuals",
    "identities",
    "grids",
    "tol_algebraic",
    "min_order",
];

fn number(v: &str) -> Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("expected a number, got '{v}'"))
}

fn count(v: &str) -> Result<usize, String> {
    v.parse::<usize>().map_err(|_| format!("expected a non-negative integer, got '{v}'"))
}

fn list(v: &str) -> Vec<String> {
    if v.is_empty() || v == "none" {
        return Vec::new();
    }
    v.split(',').map(|s| s.trim().to_string()).collect()
}

fn apply(cfg: &mut Config, key: &str, v: &str) -> Result<(), String> {
    let p = &mut cfg.params;
    let pp = &mut cfg.preset_params;
    match key {
        "model" => cfg.model = ModelKind::parse(v).ok_or_else(|| format!("unknown model '{v}'"))?,
        "route" => cfg.route = Route::parse(v).ok_or_else(|| format!("unknown route '{v}' (korteweg or gibbs)"))?,
        "tau1" => p.tau1 = number(v)?,
        "tau2" => p.tau2 = number(v)?,
        "a" => p.a = number(v)?,
        "lambda" => p.lambda = number(v)?,
        "cv" => p.cv = number(v)?,
        "eta" => p.eta = number(v)?,
        "zeta" => p.zeta = number(v)?,
        "beta" => p.beta = number(v)?,
        "eps" => p.eps = number(v)?,
        "gamma" => p.gamma = number(v)?,
        "delta" => p.delta = number(v)?,
        "dim" => cfg.dim = count(v)?,
        "n" => cfg.n = count(v)?,
        "length" => cfg.length = number(v)?,
        "preset" => cfg.preset = Preset::parse(v).ok_or_else(|| format!("unknown preset '{v}'"))?,
        "rho0" => pp.rho0 = number(v)?,
        "rho_amplitude" => pp.rho_amplitude = number(v)?,
        "velocity" => pp.velocity = number(v)?,
        "theta0" => pp.theta0 = number(v)?,
        "theta_amplitude" => pp.theta_amplitude = number(v)?,
        "chi_amplitude" => pp.chi_amplitude = number(v)?,
        "width" => pp.width = number(v)?,
        "mode" => pp.mode = number(v)?,
        "seed" => pp.seed = v.parse().map_err(|_| format!("expected a non-negative integer, got '{v}'"))?,
        "end_time" => cfg.end_time = number(v)?,
        "cfl" => cfg.cfl = number(v)?,
        "dt" => cfg.dt = if v == "auto" { None } else { Some(number(v)?) },
        "output_every" => cfg.output_every = count(v)?,
        "output_dir" => {
            if v.is_empty() {
                return Err("must not be empty".into());
            }
            cfg.output_dir = PathBuf::from(v)
        }
        "residuals" => cfg.residuals = list(v),
        "identities" => cfg.identities = list(v),
        "grids" => cfg.grids = list(v).iter().map(|s| count(s)).collect::<Result<_, _>>()?,
        "tol_algebraic" => cfg.thresholds.algebraic = number(v)?,
        "min_order" => cfg.thresholds.min_order = number(v)?,
        _ => return Err("unknown key".into()),
    }
    Ok(())
}

/// Parses configuration text; unspecified keys keep their defaults.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut cfg = Config::default();
    let mut lines: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |key: &str, message: String| ConfigError { line, key: key.to_string(), message };
        let (key, value) =
            content.split_once('=').ok_or_else(|| err("", format!("expected 'key = value', got '{content}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(err(key, "unknown key".into()));
        }
        if let Some(prev) = lines.insert(key.to_string(), line) {
            return Err(err(key, format!("already set on line {prev}")));
        }
        apply(&mut cfg, key, value).map_err(|m| err(key, m))?;
    }
    validate(&cfg, &lines)?;
    Ok(cfg)
}

fn validate(cfg: &Config, lines: &HashMap<String, usize>) -> Result<(), ConfigError> {
    let fail = |key: &str, message: String| ConfigError {
        line: lines.get(key).copied().unwrap_or(0),
        key: key.to_string(),
        message,
    };
    if let Err(e) = cfg.params.validate() {
        let msg = e.to_string();
        let msg = msg.strip_prefix("domain error: ").unwrap_or(&msg).to_string();
        let key = if msg.starts_with("tau*") {
            // blame whichever of the two volumes was set last
            ["tau1", "tau2"].into_iter().max_by_key(|k| lines.get(*k).copied().unwrap_or(0)).unwrap_or("tau1")
        } else {
            KEYS.iter().copied().find(|k| msg.starts_with(&format!("{k} "))).unwrap_or("tau1")
        };
        return Err(fail(key, msg));
    }
    if !(1..=2).contains(&cfg.dim) {
        return Err(fail("dim", format!("must be 1 or 2, got {}", cfg.dim)));
    }
    if cfg.n < MIN_CELLS {
        return Err(fail("n", format!("must be at least {MIN_CELLS}, got {}", cfg.n)));
    }
    if !(cfg.length.is_finite() && cfg.length > 0.0) {
        return Err(fail("length", format!("must be positive, got {}", cfg.length)));
    }
    let pp = &cfg.preset_params;
    for (key, v) in [("rho0", pp.rho0), ("theta0", pp.theta0), ("width", pp.width), ("mode", pp.mode)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(fail(key, format!("must be positive, got {v}")));
        }
    }
    for (key, v) in [
        ("rho_amplitude", pp.rho_amplitude),
        ("velocity", pp.velocity),
        ("theta_amplitude", pp.theta_amplitude),
        ("chi_amplitude", pp.chi_amplitude),
    ] {
        if !v.is_finite() {
            return Err(fail(key, format!("must be finite, got {v}")));
        }
    }
    if !(cfg.end_time.is_finite() && cfg.end_time >= 0.0) {
        return Err(fail("end_time", format!("must be non-negative, got {}", cfg.end_time)));
    }
    if !(cfg.cfl.is_finite() && cfg.cfl > 0.0) {
        return Err(fail("cfl", format!("must be positive, got {}", cfg.cfl)));
    }
    if let Some(dt) = cfg.dt {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(fail("dt", format!("must be positive or 'auto', got {dt}")));
        }
    }
    if cfg.output_every == 0 {
        return Err(fail("output_every", "must be at least 1".into()));
    }
    for key in ["residuals", "identities"] {
        let names = if key == "residuals" { &cfg.residuals } else { &cfg.identities };
        for name in names {
            Identity::parse_group(name).map_err(|_| fail(key, format!("unknown identity '{name}'")))?;
        }
    }
    if cfg.identities.is_empty() {
        return Err(fail("identities", "must name at least one identity".into()));
    }
    if cfg.grids.len() < 2 {
        return Err(fail("grids", "a refinement study needs at least two grids".into()));
    }
    for pair in cfg.grids.windows(2) {
        if pair[1] != 2 * pair[0] {
            return Err(fail("grids", format!("{} is not twice {}", pair[1], pair[0])));
        }
    }
    if cfg.grids[0] < MIN_CELLS {
        return Err(fail("grids", format!("grids need at least {MIN_CELLS} cells")));
    }
    if !(cfg.thresholds.algebraic.is_finite() && cfg.thresholds.algebraic > 0.0) {
        return Err(fail("tol_algebraic", "must be positive".into()));
    }
    if !cfg.thresholds.min_order.is_finite() {
        return Err(fail("min_order", "must be finite".into()));
    }
    Ok(())
}

impl Config {
    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.dim, self.n, self.length).expect("validated grid")
    }

    /// Grids of the refinement study.
    pub fn study_grids(&self) -> Vec<GridSpec> {
        self.grids.iter().map(|&n| GridSpec::new(self.dim, n, self.length).expect("validated grid")).collect()
    }

    /// Text that [`parse_config`] maps back to `self`.
    pub fn dump(&self) -> String {
        let p = &self.params;
        let pp = &self.preset_params;
        let joined = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(",") };
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("# models: nsk, nsac_reduced, nsch_reduced, nsac_general, nsch_general\nmodel", self.model.name().into());
        kv("# stress route of the reduced phase-field models: korteweg or gibbs\nroute", self.route.name().into());
        kv("\n# constitutive parameters\ntau1", p.tau1.to_string());
        for (k, v) in [
            ("tau2", p.tau2),
            ("a", p.a),
            ("lambda", p.lambda),
            ("cv", p.cv),
            ("eta", p.eta),
            ("zeta", p.zeta),
            ("beta", p.beta),
            ("eps", p.eps),
            ("gamma", p.gamma),
            ("delta", p.delta),
        ] {
            kv(k, v.to_string());
        }
        kv("\n# grid\ndim", self.dim.to_string());
        kv("n", self.n.to_string());
        kv("length", self.length.to_string());
        kv(
            "\n# initial data: uniform, smooth_interface, manufactured, random_smooth\npreset",
            self.preset.name().into(),
        );
        for (k, v) in [
            ("rho0", pp.rho0),
            ("rho_amplitude", pp.rho_amplitude),
            ("velocity", pp.velocity),
            ("theta0", pp.theta0),
            ("theta_amplitude", pp.theta_amplitude),
            ("chi_amplitude", pp.chi_amplitude),
            ("width", pp.width),
            ("mode", pp.mode),
        ] {
            kv(k, v.to_string());
        }
        kv("seed", pp.seed.to_string());
        kv("\n# time stepping\nend_time", self.end_time.to_string());
        kv("cfl", self.cfl.to_string());
        kv("dt", self.dt.map_or("auto".into(), |d| d.to_string()));
        kv("output_every", self.output_every.to_string());
        kv("output_dir", self.output_dir.display().to_string());
        kv("residuals", joined(&self.residuals));
        kv("\n# verification\nidentities", joined(&self.identities));
        kv("grids", self.grids.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","));
        kv("tol_algebraic", self.thresholds.algebraic.to_string());
        kv("min_order", self.thresholds.min_order.to_string());
        s
    }
}
