//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use instanton::chen_teo::ChenTeoParams;
use instanton::integrals::QuadratureSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Default tolerances of the verification suite, by check name.
pub const DEFAULT_TOLERANCES: [(&str, f64); 14] = [
    ("ricci", 1e-8),
    ("pde", 1e-8),
    ("twist", 1e-8),
    ("roundtrip", 1e-10),
    ("rod_normalization", 1e-4),
    ("period_closed_form", 1e-12),
    ("period_direct", 1e-6),
    ("energy_closed_form", 1e-8),
    ("energy_total", 1e-6),
    ("energy_direct", 1e-3),
    ("stokes", 1e-10),
    ("q_routes", 1e-8),
    ("b_integrality", 1e-8),
    ("partition_tail", 1e-12),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub xi_grid: Vec<f64>,
    pub kappa_grid: Vec<f64>,
    pub quadrature: QuadratureSpec,
    pub tau: Vec<Complex64>,
    pub samples: usize,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            xi_grid: vec![0.6],
            kappa_grid: vec![1.0],
            quadrature: QuadratureSpec::default(),
            tau: vec![Complex64::new(0.0, 1.0)],
            samples: 200,
            tolerances: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

impl RunConfig {
    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    /// Grid points in (ξ outer, κ inner) order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.xi_grid.iter().flat_map(|&xi| self.kappa_grid.iter().map(move |&k| (xi, k))).collect()
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("line {}: expected `key = value`, got `{line}`", n + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            if seen.insert(key.to_string(), n + 1).is_some() {
                return err(format!("line {}: `{key}` set twice", n + 1));
            }
            let at = |e: ConfigError| ConfigError(format!("line {}: {}", n + 1, e.0));
            match key {
                "xi" => cfg.xi_grid = vec![number(key, value).map_err(at)?],
                "kappa" => cfg.kappa_grid = vec![number(key, value).map_err(at)?],
                "xi_grid" => cfg.xi_grid = grid(key, value).map_err(at)?,
                "kappa_grid" => cfg.kappa_grid = grid(key, value).map_err(at)?,
                "gauss_order" => cfg.quadrature.gauss_order = integer(key, value).map_err(at)?,
                "subdivisions" => cfg.quadrature.subdivisions = integer(key, value).map_err(at)?,
                "corner_offsets" => {
                    cfg.quadrature.corner_offsets = list(key, value).map_err(at)?;
                    cfg.quadrature.richardson_levels = cfg.quadrature.corner_offsets.len();
                }
                "asymptotic_cutoffs" => cfg.quadrature.asymptotic_cutoffs = list(key, value).map_err(at)?,
                "samples" => cfg.samples = integer(key, value).map_err(at)?,
                "tau" => cfg.tau = taus(value).map_err(at)?,
                _ => match key.strip_prefix("tolerance.") {
                    Some(name) if cfg.tolerances.contains_key(name) => {
                        let t = number(key, value).map_err(at)?;
                        if !(t > 0.0) {
                            return Err(at(ConfigError(format!("`{key}` must be positive, got {t}"))));
                        }
                        cfg.tolerances.insert(name.to_string(), t);
                    }
                    Some(name) => {
                        let known: Vec<_> = DEFAULT_TOLERANCES.iter().map(|(k, _)| *k).collect();
                        return err(format!("line {}: unknown tolerance `{name}`; known: {}", n + 1, known.join(", ")));
                    }
                    None => return err(format!("line {}: unknown key `{key}`", n + 1)),
                },
            }
        }
        for (a, b) in [("xi", "xi_grid"), ("kappa", "kappa_grid")] {
            if seen.contains_key(a) && seen.contains_key(b) {
                return err(format!("both `{a}` and `{b}` are set"));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.xi_grid.is_empty() || self.kappa_grid.is_empty() {
            return err("empty parameter grid");
        }
        for (xi, k) in self.points() {
            ChenTeoParams::new(xi, k).map_err(|e| ConfigError(e.to_string()))?;
        }
        self.quadrature.validate().map_err(|e| ConfigError(e.to_string()))?;
        if self.samples == 0 {
            return err("samples must be positive");
        }
        if self.tau.iter().any(|t| !(t.im > 0.0)) {
            return err(format!("every tau needs a positive imaginary part, got {:?}", self.tau));
        }
        Ok(())
    }
}

fn number(key: &str, s: &str) -> Result<f64, ConfigError> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(format!("`{key}`: not a finite number: `{s}`")),
    }
}

fn integer(key: &str, s: &str) -> Result<usize, ConfigError> {
    s.parse().map_err(|_| ConfigError(format!("`{key}`: not a non-negative integer: `{s}`")))
}

fn list(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    s.split(',').map(|t| number(key, t.trim())).collect()
}

/// `a, b, c` or `start:stop:n` for n evenly spaced points including both ends.
fn grid(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<_> = s.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [_] => list(key, s),
        [a, b, n] => {
            let (a, b, n) = (number(key, a)?, number(key, b)?, integer(key, n)?);
            match n {
                0 => err(format!("`{key}`: a range needs at least one point")),
                1 => Ok(vec![a]),
                _ => Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()),
            }
        }
        _ => err(format!("`{key}`: expected a list or start:stop:n, got `{s}`")),
    }
}

fn taus(s: &str) -> Result<Vec<Complex64>, ConfigError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            Complex64::from_str(t).map_err(|_| ConfigError(format!("`tau`: not a complex number: `{t}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::parse("").unwrap();
        assert_eq!(c.points(), vec![(0.6, 1.0)]);
        assert_eq!(c.tolerance("ricci"), 1e-8);
    }

    #[test]
    fn keys_and_comments() {
        let c = RunConfig::parse(
            "# sweep\nxi_grid = 0.55:0.65:3\nkappa_grid = 0.5, 2\ntau = 1i, 0.3+0.2i\ntolerance.ricci = 1e-6 # loose\ncorner_offsets = 1e-3, 1e-4\n",
        )
        .unwrap();
        assert_eq!(c.xi_grid.len(), 3);
        assert!((c.xi_grid[1] - 0.6).abs() < 1e-15);
        assert_eq!(c.points().len(), 6);
        assert_eq!(c.tau[1], Complex64::new(0.3, 0.2));
        assert_eq!(c.tolerance("ricci"), 1e-6);
        assert_eq!(c.quadrature.richardson_levels, 2);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "xi = 0.4",
            "xi = 0.8",
            "kappa = -1",
            "xi = 0.6\nxi = 0.6",
            "xi = 0.6\nxi_grid = 0.6",
            "color = red",
            "tolerance.nothing = 1",
            "tolerance.ricci = 0",
            "tau = -1i",
            "gauss_order = 2",
            "xi",
            "xi_grid = 0.55:0.6",
        ] {
            assert!(RunConfig::parse(bad).is_err(), "{bad}");
        }
        assert!(RunConfig::parse("xi = 0.4").unwrap_err().0.contains("1/2 < xi"));
    }
}
