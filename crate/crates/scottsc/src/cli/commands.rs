use std::sync::Arc;

use serde_json::json;

use super::config::{CommandKind, RunConfig};
use super::output::RunOutput;
use crate::coherent::{
    periodic_grid, representation_error_norm, representation_grid, resolution_of_identity_check, ARule,
    ClassicalSymbol, CoherentParams, PhaseQuadrature, C64,
};
use crate::error::{Error, Result, Warning};
use crate::numerics::make_bump;
use crate::scott::{hydrogen_exact_sum, scott_experiment_tf, tf_weyl_energy, ScottConfig};
use crate::semiclassics::{local_trace_experiment, smooth_well, weyl_energy, WeylSpec};
use crate::thomas_fermi::{atomic_tf, default_tf_grid};

/// Box radius for Thomas-Fermi Weyl integrals at `z = 1`.
const TF_WEYL_EXTENT: f64 = 1e4;
/// Support radius of the localization bump in `local-trace`.
const LOCAL_BUMP_RADIUS: f64 = 1.5;

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::invalid(format!("missing --{name}")))
}

/// Runs a resolved configuration.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput> {
    let p = &cfg.parameters;
    match cfg.command {
        CommandKind::TfAtom => tf_atom(need(&p.z, "z")?, need(&p.points, "points")?),
        CommandKind::CoherentCheck => coherent_check(&need(&p.h, "h")?, need(&p.a_rule, "a-rule")?.parse()?),
        CommandKind::LocalTrace => local_trace(&need(&p.h, "h")?, need(&p.points, "points")?),
        CommandKind::Scott => scott(need(&p.z, "z")?, &need(&p.h, "h")?, need(&p.points, "points")?),
        CommandKind::Hydrogen => hydrogen(need(&p.z, "z")?, &need(&p.h, "h")?),
        CommandKind::Weyl => weyl(need(&p.z, "z")?, &need(&p.h, "h")?),
    }
}

fn tf_atom(z: f64, points: usize) -> Result<RunOutput> {
    let s = atomic_tf(z, &default_tf_grid(z, points)?)?;
    let rows = s.grid.points().iter().zip(&s.v_tf).zip(&s.rho_tf).map(|((&r, &v), &rho)| vec![r, v, rho]).collect();
    let summary = json!({
        "z": z,
        "grid_points": points,
        "length_scale": s.length_scale,
        "initial_slope": s.initial_slope(),
        "e_tf": s.e_tf,
        "d_rho": s.d_rho,
        "charge": s.charge(),
        "tf_equation_residual": s.tf_equation_residual(),
        "poisson_residual": s.poisson_residual(),
    });
    Ok(RunOutput { columns: vec!["r", "v_tf", "rho_tf"], rows, summary, warnings: vec![] })
}

fn coherent_check(hs: &[f64], rule: ARule) -> Result<RunOutput> {
    let symbol = ClassicalSymbol::harmonic(0.0);
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut grids = Vec::new();
    for &h in hs {
        let p = CoherentParams::from_rule(h, rule, 1)?;
        let grid = periodic_grid(8.0, h / 4.0)?;
        let psi: Vec<C64> = grid.points().iter().map(|&x| C64::from((-x * x / 2.0).exp())).collect();
        let res = resolution_of_identity_check(&p, &grid, &psi, &PhaseQuadrature::adapted(&p, &grid, 0.5)?)?;
        if res.under_resolved {
            warnings.push(Warning::UnderResolved { context: format!("resolution h={h}"), detail: res.detail.join("; ") });
        }
        let rep = representation_error_norm(&symbol, &p, &representation_grid(&p, 1.0)?)?;
        if rep.under_resolved {
            warnings.push(Warning::UnderResolved {
                context: format!("representation h={h}"),
                detail: "window or grid too small".into(),
            });
        }
        grids.push(json!({ "h": h, "resolution_points": grid.len(), "representation_points": rep.grid_points }));
        rows.push(vec![h, p.a(), p.b(), res.deviation, rep.error_norm, rep.closed_form_norm, rep.error_norm / (h * h * p.b())]);
    }
    let summary = json!({ "a_rule": rule.to_string(), "symbol": "q^2 + u^2", "grids": grids });
    Ok(RunOutput {
        columns: vec!["h", "a", "b", "resolution_deviation", "error_norm", "closed_form_norm", "error_ratio"],
        rows,
        summary,
        warnings,
    })
}

fn local_trace(hs: &[f64], points_per_h: usize) -> Result<RunOutput> {
    let bump = make_bump(&[0.0], LOCAL_BUMP_RADIUS, 7)?;
    let e = local_trace_experiment(smooth_well()?, &bump, hs, points_per_h as f64)?;
    let rows = e
        .results
        .iter()
        .zip(&e.scaled_residuals)
        .map(|(t, &s)| vec![t.h, t.quantum_sum, t.weyl_sum, t.residual, s])
        .collect();
    let warnings = e.results.iter().flat_map(|t| t.warnings.iter().cloned()).collect();
    let summary = json!({
        "potential": "-(1-r^2)^2 bump_1(r)",
        "bump_radius": LOCAL_BUMP_RADIUS,
        "points_per_h": points_per_h,
        "fit": e.fit,
        "stability_ratio": e.stability_ratio,
    });
    Ok(RunOutput { columns: vec!["h", "quantum", "weyl", "residual", "scaled_residual"], rows, summary, warnings })
}

fn scott(z: f64, hs: &[f64], intervals: usize) -> Result<RunOutput> {
    let config = ScottConfig { intervals, ..ScottConfig::default() };
    let e = scott_experiment_tf(z, hs, &config)?;
    let rows = e.results.iter().map(|t| vec![t.h, t.quantum_sum, t.weyl_sum, t.scott_term, t.residual]).collect();
    let summary = json!({
        "z": z,
        "config": e.config,
        "fit": e.fit,
        "scott_coefficient": e.scott_coefficient(),
        "target": z * z / 8.0,
    });
    Ok(RunOutput { columns: vec!["h", "quantum", "weyl", "scott", "residual"], rows, summary, warnings: e.warnings })
}

fn hydrogen(z: f64, hs: &[f64]) -> Result<RunOutput> {
    let rows = hs
        .iter()
        .map(|&h| {
            let sum = hydrogen_exact_sum(z, h);
            // x = z/(2h) keeps exact boundaries exact
            let x = z / (2.0 * h);
            let leading = -2.0 * x.powi(3) / 3.0;
            let scott = x * x / 2.0;
            vec![h, sum, leading, scott, sum - leading - scott]
        })
        .collect();
    Ok(RunOutput {
        columns: vec!["h", "sum", "leading", "scott", "remainder"],
        rows,
        summary: json!({ "z": z }),
        warnings: vec![],
    })
}

fn weyl(z: f64, hs: &[f64]) -> Result<RunOutput> {
    let tf = atomic_tf(z, &default_tf_grid(z, 4000)?)?;
    let extent = TF_WEYL_EXTENT * z.powf(-1.0 / 3.0);
    let coulomb = WeylSpec::new(3, Arc::new(move |r| -z / r + 1.0), 1.0, z)?;
    let rows = hs
        .iter()
        .map(|&h| {
            Ok(vec![
                h,
                weyl_energy(&coulomb.clone().with_h(h))?,
                -z.powi(3) / (12.0 * h.powi(3)),
                tf_weyl_energy(&tf, h, extent)?,
            ])
        })
        .collect::<Result<_>>()?;
    Ok(RunOutput {
        columns: vec!["h", "coulomb_shifted", "coulomb_closed_form", "thomas_fermi"],
        rows,
        summary: json!({ "z": z, "tf_extent": extent, "tf_points": 4000 }),
        warnings: vec![],
    })
}
