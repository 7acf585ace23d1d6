use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{Format, RunConfig};
use crate::error::{Result, Warning};

/// Result table of one run plus its metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutput {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Fits, grid sizes and scalar results.
    pub summary: Value,
    pub warnings: Vec<Warning>,
}

impl RunOutput {
    /// Warnings that fail a strict run.
    pub fn accuracy_warnings(&self) -> usize {
        self.warnings.iter().filter(|w| matches!(w, Warning::Accuracy { .. } | Warning::UnderResolved { .. })).count()
    }
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_csv(cfg: &RunConfig, out: &RunOutput) -> Result<String> {
    let mut s = String::new();
    writeln!(s, "{}", cfg.header_line()?).unwrap();
    writeln!(s, "# summary {}", serde_json::to_string(&out.summary)?).unwrap();
    for w in &out.warnings {
        writeln!(s, "# warning {}", serde_json::to_string(w)?).unwrap();
    }
    writeln!(s, "{}", out.columns.join(",")).unwrap();
    for row in &out.rows {
        let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
        writeln!(s, "{}", cells.join(",")).unwrap();
    }
    Ok(s)
}

pub fn render_json(cfg: &RunConfig, out: &RunOutput) -> Result<String> {
    let v = json!({
        "config": cfg,
        "columns": out.columns,
        "rows": out.rows,
        "summary": out.summary,
        "warnings": out.warnings,
    });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

/// Sidecar for CSV output: config, summary and warnings.
pub fn render_sidecar(cfg: &RunConfig, out: &RunOutput) -> Result<String> {
    let v = json!({ "config": cfg, "summary": out.summary, "warnings": out.warnings });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn render(cfg: &RunConfig, out: &RunOutput) -> Result<String> {
    match cfg.format {
        Format::Csv => render_csv(cfg, out),
        Format::Json => render_json(cfg, out),
    }
}

/// Reads back the config of a JSON output or sidecar.
pub fn config_from_json(text: &str) -> Result<RunConfig> {
    let v: Value = serde_json::from_str(text)?;
    Ok(serde_json::from_value(v["config"].clone())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::CommandKind;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, -70.0, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-300] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_layout() {
        let cfg = RunConfig::new(CommandKind::Hydrogen).resolved().unwrap();
        let out = RunOutput { columns: vec!["h", "sum"], rows: vec![vec![0.1, -70.0]], summary: json!({}), warnings: vec![] };
        let s = render_csv(&cfg, &out).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[0].starts_with("# config {"));
        assert_eq!(lines[2], "h,sum");
        assert_eq!(lines[3], "1.0000000000000001e-1,-7.0000000000000000e1");
        assert!(!s.contains('\r'));
        assert_eq!(RunConfig::from_header(&s).unwrap(), cfg);
        assert_eq!(config_from_json(&render_json(&cfg, &out).unwrap()).unwrap(), cfg);
    }
}
