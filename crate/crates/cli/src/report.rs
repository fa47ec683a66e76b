use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use landau_cylinder::ConfigFile;
use serde::Serialize;

/// One numeric claim with the tolerance it was judged against.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    /// How `value` is compared with `tolerance`.
    pub rule: Rule,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    AtMost,
    AtLeast,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            rule: Rule::AtMost,
            pass: value <= tolerance,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            rule: Rule::AtLeast,
            pass: value >= tolerance,
        }
    }

    /// A yes/no outcome, recorded as `1` or `0` against `1`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::at_least(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: Option<ConfigFile>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub max_deviation: f64,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(
        command: &str,
        config: Option<ConfigFile>,
        seed: u64,
        tolerances: &Tolerances,
        results: serde_json::Value,
        checks: Vec<Check>,
        started: Instant,
    ) -> Self {
        let max_deviation = checks
            .iter()
            .filter(|c| c.rule == Rule::AtMost)
            .map(|c| c.value)
            .fold(0.0, f64::max);
        Self {
            command: command.to_string(),
            config,
            seed,
            tolerances: tolerances.values.clone(),
            pass: checks.iter().all(|c| c.pass),
            results,
            checks,
            max_deviation,
            wall_time_s: started.elapsed().as_secs_f64(),
        }
    }

    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        match out {
            Some(path) => std::fs::write(path, text + "\n")
                .with_context(|| format!("cannot write report to {}", path.display())),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }
}

/// Named tolerances with their defaults, adjustable from the command line.
#[derive(Debug, Clone)]
pub struct Tolerances {
    values: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        let values = [
            ("spectrum_rel", 1e-3),
            ("overlap", 1e-6),
            ("holonomy", 1e-6),
            ("projective", 1e-6),
            ("commutation", 1e-3),
            ("energy", 1e-6),
            ("cocycle", 1e-9),
            ("rep", 1e-12),
            ("obstruction", 1e-12),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        Self { values }
    }
}

impl Tolerances {
    /// Applies `name=value` pairs separated by commas.
    pub fn with_overrides(mut self, spec: Option<&str>) -> Result<Self> {
        let Some(spec) = spec else { return Ok(self) };
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let Some((key, value)) = item.split_once('=') else {
                bail!("tolerance override `{item}` is not of the form name=value");
            };
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .with_context(|| format!("tolerance `{key}` has a non-numeric value"))?;
            if !(value >= 0.0 && value.is_finite()) {
                bail!("tolerance `{key}` must be finite and non-negative");
            }
            match self.values.get_mut(key) {
                Some(slot) => *slot = value,
                None => bail!(
                    "unknown tolerance `{key}`; known: {}",
                    self.values.keys().cloned().collect::<Vec<_>>().join(", ")
                ),
            }
        }
        Ok(self)
    }

    pub fn get(&self, key: &str) -> f64 {
        self.values[key]
    }
}

pub fn write_csv<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let t = Tolerances::default().with_overrides(Some("overlap=1e-3, rep=0")).unwrap();
        assert_eq!(t.get("overlap"), 1e-3);
        assert_eq!(t.get("rep"), 0.0);
        assert!(Tolerances::default().with_overrides(Some("nope=1")).is_err());
        assert!(Tolerances::default().with_overrides(Some("overlap")).is_err());
        assert!(Tolerances::default().with_overrides(Some("overlap=-1")).is_err());
    }

    #[test]
    fn check_rules() {
        assert!(Check::at_most("a", 1.0, 1.0).pass);
        assert!(!Check::at_least("b", 0.5, 1.0).pass);
        assert!(!Check::flag("c", false).pass);
    }
}
