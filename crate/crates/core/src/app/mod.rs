//! Command-line front end: profile, sweep, verify, figures and convergence jobs.

pub mod config;
pub mod output;

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use crate::analytic::AnalyticSolution;
use crate::fdm::{convergence_study, FdmConfig};
use crate::model::{FieldKind, FlowParameters};
use crate::verification::{check_trend, compare_with_tolerance, published_trends, VariedParameter};
use crate::{Error, Result};

pub use config::{parse_config, parse_config_with, Format, Mode, Overrides, RunConfig};
use output::{Cell, Table};

/// Acceptable observed order band for the convergence job.
pub const ORDER_BAND: (f64, f64) = (1.7, 2.3);

/// Outcome of one embedded check (comparison, trend or order).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub checks: Vec<Check>,
}

impl RunOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Executes the configured job and writes its output files.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))?;
    match config.mode {
        Mode::Profile => run_profile(config),
        Mode::Sweep => run_sweep(config),
        Mode::Verify => run_verify(config),
        Mode::Figures => run_figures(config),
        Mode::Convergence => run_convergence(config),
    }
}

fn num(x: f64) -> String {
    output::format_number(x)
}

fn list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    format!("[{}]", items.join(", "))
}

fn param_provenance(params: &FlowParameters<f64>) -> Vec<(String, String)> {
    vec![
        ("gr".into(), num(params.gr())),
        ("gc".into(), num(params.gc())),
        ("pr".into(), num(params.pr())),
        ("sc".into(), num(params.sc())),
        // Undo the degree -> radian -> degree round-off for display.
        (
            "alpha_deg".into(),
            num((params.alpha_degrees() * 1e9).round() / 1e9),
        ),
    ]
}

fn provenance(
    config: &RunConfig,
    params: &FlowParameters<f64>,
    extra: &[(&str, String)],
) -> Vec<(String, String)> {
    let mut p = vec![
        (
            "generator".into(),
            format!("plate-flow {}", env!("CARGO_PKG_VERSION")),
        ),
        ("mode".into(), config.mode.name().into()),
    ];
    p.extend(param_provenance(params));
    p.push(("times".into(), list(&config.times)));
    p.push(("field".into(), config.field.name().into()));
    p.push((
        "grid".into(),
        format!(
            "y_min={} y_max={} samples={}",
            num(config.grid.y_min),
            num(config.grid.y_max),
            config.grid.samples
        ),
    ));
    p.push((
        "fdm".into(),
        format!(
            "y_max={} dy={} dt={} theta={} tolerance={}",
            num(config.fdm.y_max),
            num(config.fdm.dy),
            num(config.fdm.dt),
            num(config.fdm.theta),
            num(config.fdm.tolerance)
        ),
    ));
    for (k, v) in extra {
        p.push(((*k).into(), v.clone()));
    }
    p
}

/// One column per `(parameter set, time)` pair, first column `Y`.
fn curve_table(
    provenance: Vec<(String, String)>,
    field: FieldKind,
    y: &[f64],
    curves: &[(String, FlowParameters<f64>, f64)],
) -> Result<Table> {
    let mut columns = vec!["Y".to_string()];
    let mut data = Vec::with_capacity(curves.len());
    for (label, params, t) in curves {
        columns.push(format!("{}[{label}]", field.symbol()));
        let solution = AnalyticSolution::for_field(*params, field)?;
        data.push(solution.profile(*t, y, field)?);
    }
    let mut table = Table::new(provenance, columns);
    for (i, &yi) in y.iter().enumerate() {
        let mut row = vec![Cell::Num(yi)];
        row.extend(data.iter().map(|p| Cell::Num(p.samples()[i].1)));
        table.push(row);
    }
    Ok(table)
}

fn run_profile(config: &RunConfig) -> Result<RunOutcome> {
    let curves: Vec<_> = config
        .times
        .iter()
        .map(|&t| (VariedParameter::Time.label(t), config.params, t))
        .collect();
    let table = curve_table(
        provenance(config, &config.params, &[]),
        config.field,
        &config.grid.points(),
        &curves,
    )?;
    let path = table.write(&config.output_dir, "profile", config.format)?;
    Ok(RunOutcome {
        files: vec![path],
        checks: Vec::new(),
    })
}

fn sweep_curves(
    base: FlowParameters<f64>,
    parameter: VariedParameter,
    values: &[f64],
    t: f64,
) -> Result<Vec<(String, FlowParameters<f64>, f64)>> {
    values
        .iter()
        .map(|&v| {
            let params = parameter.apply(base, v)?;
            let time = if parameter == VariedParameter::Time {
                v
            } else {
                t
            };
            Ok((parameter.label(v), params, time))
        })
        .collect()
}

fn run_sweep(config: &RunConfig) -> Result<RunOutcome> {
    let sweep = &config.sweep;
    let curves = sweep_curves(
        config.params,
        sweep.parameter,
        &sweep.values,
        config.times[0],
    )?;
    let extra = [
        ("sweep_parameter", sweep.parameter.name().to_string()),
        ("sweep_values", list(&sweep.values)),
    ];
    let table = curve_table(
        provenance(config, &config.params, &extra),
        config.field,
        &config.grid.points(),
        &curves,
    )?;
    let path = table.write(&config.output_dir, "sweep", config.format)?;
    Ok(RunOutcome {
        files: vec![path],
        checks: Vec::new(),
    })
}

fn fdm_config(config: &RunConfig, t_end: f64) -> Result<FdmConfig<f64>> {
    Ok(
        FdmConfig::with_spacing(config.fdm.y_max, config.fdm.dy, config.fdm.dt, t_end)?
            .theta(config.fdm.theta),
    )
}

fn run_verify(config: &RunConfig) -> Result<RunOutcome> {
    let mut table = Table::new(
        provenance(config, &config.params, &[]),
        [
            "field",
            "t",
            "l_inf",
            "l2",
            "samples",
            "tolerance",
            "dy",
            "dt",
            "y_max",
            "theta",
            "pass",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    let mut checks = Vec::new();
    for &t in &config.times {
        let cfg = fdm_config(config, t)?;
        for r in compare_with_tolerance(&config.params, &cfg, t, config.fdm.tolerance)? {
            checks.push(Check {
                name: format!("compare {} at t={}", r.field, r.t_probe),
                pass: r.pass,
                detail: format!("l_inf = {:e} (tolerance {:e})", r.l_inf, r.tolerance),
            });
            table.push(vec![
                Cell::Text(r.field.name().into()),
                Cell::Num(r.t_probe),
                Cell::Num(r.l_inf),
                Cell::Num(r.l2),
                Cell::Int(r.samples),
                Cell::Num(r.tolerance),
                Cell::Num(r.grid.dy()),
                Cell::Num(r.grid.effective_dt()),
                Cell::Num(r.grid.y_max),
                Cell::Num(r.grid.theta),
                Cell::Bool(r.pass),
            ]);
        }
    }
    let path = table.write(&config.output_dir, "verify", config.format)?;
    Ok(RunOutcome {
        files: vec![path],
        checks,
    })
}

fn run_figures(config: &RunConfig) -> Result<RunOutcome> {
    let y = config.grid.points();
    let mut files = Vec::new();
    let mut checks = Vec::new();
    let mut trends = Table::new(
        vec![(
            "generator".into(),
            format!("plate-flow {}", env!("CARGO_PKG_VERSION")),
        )],
        [
            "figure",
            "field",
            "parameter",
            "values",
            "direction",
            "t",
            "probes",
            "pass",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    for (k, case) in published_trends::<f64>().into_iter().enumerate() {
        let check = &case.check;
        let curves = sweep_curves(case.base, check.varied, &check.values, case.t)?;
        let mut prov = vec![
            (
                "generator".into(),
                format!("plate-flow {}", env!("CARGO_PKG_VERSION")),
            ),
            ("figure".into(), case.name.to_string()),
        ];
        prov.extend(param_provenance(&case.base));
        prov.push(("t".into(), num(case.t)));
        prov.push(("field".into(), check.field.name().into()));
        prov.push(("sweep_parameter".into(), check.varied.name().into()));
        prov.push(("sweep_values".into(), list(&check.values)));
        let table = curve_table(prov, check.field, &y, &curves)?;
        files.push(table.write(&config.output_dir, &format!("fig{}", k + 1), config.format)?);

        let result = check_trend(&case.base, check, case.t)?;
        checks.push(Check {
            name: format!("trend {}", case.name),
            pass: result.pass,
            detail: format!("{:?} in {}", check.direction, check.varied.name()),
        });
        trends.push(vec![
            Cell::Text(case.name.into()),
            Cell::Text(check.field.name().into()),
            Cell::Text(check.varied.name().into()),
            Cell::Text(list(&check.values)),
            Cell::Text(format!("{:?}", check.direction).to_lowercase()),
            Cell::Num(case.t),
            Cell::Text(list(&check.probes)),
            Cell::Bool(result.pass),
        ]);
    }
    files.push(trends.write(&config.output_dir, "trends", config.format)?);
    Ok(RunOutcome { files, checks })
}

fn run_convergence(config: &RunConfig) -> Result<RunOutcome> {
    let c = &config.convergence;
    let t_end = config.times[0];
    let base =
        FdmConfig::with_spacing(config.fdm.y_max, c.dy, c.dt, t_end)?.theta(config.fdm.theta);
    let study = convergence_study(&config.params, &base, c.levels)?;
    let extra = [
        ("levels", c.levels.to_string()),
        ("base_dy", num(c.dy)),
        ("base_dt", num(c.dt)),
    ];
    let mut table = Table::new(
        provenance(config, &config.params, &extra),
        [
            "level",
            "dy",
            "dt",
            "err_V",
            "err_T",
            "err_phi",
            "order_V",
            "order_T",
            "order_phi",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    for (k, level) in study.levels.iter().enumerate() {
        let mut row = vec![
            Cell::Int(k),
            Cell::Num(level.dy),
            Cell::Num(level.dt),
            Cell::Num(level.errors[0]),
            Cell::Num(level.errors[1]),
            Cell::Num(level.errors[2]),
        ];
        match level.orders {
            Some(p) => row.extend(p.iter().map(|&x| Cell::Num(x))),
            None => row.extend((0..3).map(|_| Cell::Text(String::new()))),
        }
        table.push(row);
    }
    let path = table.write(&config.output_dir, "convergence", config.format)?;

    let (lo, hi) = ORDER_BAND;
    let checks = study
        .levels
        .iter()
        .filter_map(|l| l.orders.map(|p| (l.dy, p)))
        .flat_map(|(dy, p)| {
            FieldKind::ALL
                .iter()
                .zip(p)
                .map(move |(field, order)| Check {
                    name: format!("order {field} at dy={dy}"),
                    pass: (lo..=hi).contains(&order),
                    detail: format!("observed order {order:.4}"),
                })
        })
        .collect();
    Ok(RunOutcome {
        files: vec![path],
        checks,
    })
}
