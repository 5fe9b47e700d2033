use std::io::Write;

use serde::Serialize;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub method: &'static str,
    pub error_estimate: f64,
    pub provenance: Provenance,
}

impl Quantity {
    /// A closed-form value; the error estimate is a few ulps of it.
    pub fn closed(value: f64, method: &'static str) -> Self {
        Quantity { value, method, error_estimate: 8.0 * f64::EPSILON * value.abs(), provenance: Provenance::ClosedForm }
    }

    pub fn quadrature(value: f64, error_estimate: f64, method: &'static str) -> Self {
        Quantity { value, method, error_estimate, provenance: Provenance::Quadrature }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The worst value over the samples.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance, passed: value < tolerance }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check { name: name.into(), value: if ok { 0.0 } else { 1.0 }, tolerance: 0.5, passed: ok }
    }
}

fn as_map<S: serde::Serializer>(v: &[(String, Quantity)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(v.iter().map(|(k, q)| (k, q)))
}

/// Results at one (ξ, κ).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointReport {
    pub xi: f64,
    pub kappa: f64,
    #[serde(serialize_with = "as_map")]
    pub quantities: Vec<(String, Quantity)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl PointReport {
    pub fn new(xi: f64, kappa: f64) -> Self {
        PointReport { xi, kappa, quantities: Vec::new(), checks: Vec::new(), wall_time_s: 0.0 }
    }

    pub fn push(&mut self, name: impl Into<String>, q: Quantity) {
        self.quantities.push((name.into(), q));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub seed: u64,
    pub config: RunConfig,
    pub points: Vec<PointReport>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, config: RunConfig, points: Vec<PointReport>) -> Self {
        let passed = points.iter().all(PointReport::passed);
        Report { schema_version: SCHEMA_VERSION, command, seed, config, points, passed }
    }

    pub fn write_json<W: Write>(&self, w: W) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(w, self)
    }

    /// One row per grid point: ξ, κ, then each quantity's value and error
    /// estimate, then each check's worst value.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let Some(first) = self.points.first() else {
            return out.flush().map_err(Into::into);
        };
        let mut header = vec!["xi".to_string(), "kappa".to_string()];
        for (name, _) in &first.quantities {
            header.push(name.clone());
            header.push(format!("{name}_error"));
        }
        for c in &first.checks {
            header.push(format!("check_{}", c.name));
        }
        out.write_record(&header)?;
        for p in &self.points {
            let mut row = vec![p.xi.to_string(), p.kappa.to_string()];
            for (_, q) in &p.quantities {
                row.push(q.value.to_string());
                row.push(q.error_estimate.to_string());
            }
            for c in &p.checks {
                row.push(c.value.to_string());
            }
            out.write_record(&row)?;
        }
        out.flush().map_err(Into::into)
    }
}
