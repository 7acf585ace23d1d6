use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::coherent::ARule;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Atomic Thomas-Fermi potential and density tables.
    TfAtom,
    /// Resolution of identity and representation error norms.
    CoherentCheck,
    /// Localized quantum trace against the Weyl term for a smooth well.
    LocalTrace,
    /// Scott coefficient from the Thomas-Fermi trace sweep.
    Scott,
    /// Closed-form hydrogen sums and their expansion.
    Hydrogen,
    /// Weyl energies for the shifted Coulomb and Thomas-Fermi potentials.
    Weyl,
}

impl std::fmt::Display for CommandKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Command parameters; absent entries take per-command defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub strict: bool,
}

/// Which parameters a command reads, with defaults.
struct Defaults {
    z: Option<f64>,
    h: Option<&'static [f64]>,
    a_rule: Option<&'static str>,
    points: Option<usize>,
}

fn defaults(c: CommandKind) -> Defaults {
    use CommandKind::*;
    match c {
        TfAtom => Defaults { z: Some(1.0), h: None, a_rule: None, points: Some(4000) },
        CoherentCheck => Defaults { z: None, h: Some(&[0.4, 0.2, 0.1]), a_rule: Some("h^-0.8"), points: None },
        LocalTrace => Defaults { z: None, h: Some(&[0.1, 0.07, 0.05]), a_rule: None, points: Some(16) },
        Scott => Defaults { z: Some(1.0), h: Some(&[0.12, 0.09, 0.07, 0.05]), a_rule: None, points: Some(4000) },
        Hydrogen => Defaults { z: Some(1.0), h: Some(&[0.1]), a_rule: None, points: None },
        Weyl => Defaults { z: Some(1.0), h: Some(&[1.0]), a_rule: None, points: None },
    }
}

fn fill<T: Clone>(name: &str, given: &Option<T>, default: Option<T>, command: CommandKind) -> Result<Option<T>> {
    match (given, default) {
        (Some(_), None) => Err(Error::invalid(format!("--{name} is not used by {command}"))),
        (Some(v), Some(_)) => Ok(Some(v.clone())),
        (None, d) => Ok(d),
    }
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig { command, parameters: Parameters::default(), output_path: None, format: Format::Csv, strict: false }
    }

    /// Copy with every parameter the command reads filled in and validated.
    pub fn resolved(&self) -> Result<RunConfig> {
        let d = defaults(self.command);
        let p = &self.parameters;
        let c = self.command;
        let resolved = Parameters {
            z: fill("z", &p.z, d.z, c)?,
            h: fill("h", &p.h, d.h.map(<[f64]>::to_vec), c)?,
            a_rule: fill("a-rule", &p.a_rule, d.a_rule.map(str::to_string), c)?,
            points: fill("points", &p.points, d.points, c)?,
        };
        if let Some(z) = resolved.z {
            if !(z > 0.0 && z.is_finite()) {
                return Err(Error::invalid(format!("--z must be positive, got {z}")));
            }
        }
        if let Some(h) = &resolved.h {
            if h.is_empty() || h.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
                return Err(Error::invalid("--h must list positive values"));
            }
            if h.windows(2).any(|w| w[1] >= w[0]) {
                return Err(Error::invalid("--h values must be strictly decreasing"));
            }
        }
        if let Some(rule) = &resolved.a_rule {
            rule.parse::<ARule>()?;
        }
        if resolved.points == Some(0) {
            return Err(Error::invalid("--points must be positive"));
        }
        Ok(RunConfig { parameters: resolved, ..self.clone() })
    }

    /// `# config {json}` header line, without the newline.
    pub fn header_line(&self) -> Result<String> {
        Ok(format!("{CONFIG_PREFIX}{}", serde_json::to_string(self)?))
    }

    /// Inverse of [`RunConfig::header_line`] over the lines of an output file.
    pub fn from_header(text: &str) -> Result<RunConfig> {
        let line = text
            .lines()
            .find_map(|l| l.strip_prefix(CONFIG_PREFIX))
            .ok_or_else(|| Error::invalid("no config header found"))?;
        Ok(serde_json::from_str(line)?)
    }
}

pub(crate) const CONFIG_PREFIX: &str = "# config ";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_and_round_trip() {
        let c = RunConfig::new(CommandKind::Scott).resolved().unwrap();
        assert_eq!(c.parameters.h.as_deref(), Some(&[0.12, 0.09, 0.07, 0.05][..]));
        assert_eq!(c.parameters.a_rule, None);
        let back = RunConfig::from_header(&format!("x\n{}\n", c.header_line().unwrap())).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn invalid_configs() {
        let mut c = RunConfig::new(CommandKind::Hydrogen);
        c.parameters.h = Some(vec![0.1, 0.2]);
        assert!(c.resolved().is_err());
        c.parameters.h = Some(vec![0.1]);
        c.parameters.a_rule = Some("h^-0.8".into());
        assert!(c.resolved().is_err());
        let mut c = RunConfig::new(CommandKind::CoherentCheck);
        c.parameters.a_rule = Some("h^0.5".into());
        assert!(c.resolved().is_err());
        let mut c = RunConfig::new(CommandKind::TfAtom);
        c.parameters.z = Some(-1.0);
        assert!(c.resolved().is_err());
        assert!(RunConfig::from_header("h,sum\n").is_err());
    }
}
