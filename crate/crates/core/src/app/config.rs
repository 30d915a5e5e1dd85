//! Run configuration: TOML schema, defaults and command-line overrides.
//!
//! Every key is optional. Defaults reproduce the plate-angle figure's
//! parameter set (`Gr = 15`, `Gc = 5`, `Pr = 0.71`, `Sc = 0.78`,
//! `alpha = 30 deg`, `t = 0.2`).
//!
//! ```toml
//! mode = "profile"          # profile | sweep | verify | figures | convergence
//! field = "velocity"        # velocity | temperature | concentration
//! format = "csv"            # csv | json
//! out = "out"
//! times = [0.2, 0.4]        # overrides params.t
//!
//! [params]
//! gr = 15.0
//! gc = 5.0
//! pr = 0.71
//! sc = 0.78
//! alpha_deg = 30.0          # degrees, 0 <= alpha_deg < 90
//! t = 0.2
//!
//! [grid]                    # output sampling in Y
//! y_min = 0.0
//! y_max = 4.0
//! samples = 161
//!
//! [sweep]
//! parameter = "alpha_deg"   # gr | gc | pr | sc | alpha_deg | t
//! values = [15.0, 30.0, 60.0]
//!
//! [fdm]                     # verification grid
//! y_max = 20.0
//! dy = 0.01
//! dt = 1e-4
//! theta = 0.5
//! tolerance = 1e-3
//!
//! [convergence]             # coarsest level; each level halves dy and quarters dt
//! levels = 3
//! dy = 0.04
//! dt = 1.6e-3
//! ```

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analytic::SINGULAR_GUARD;
use crate::model::{FieldKind, FlowParameters};
use crate::verification::{VariedParameter, DEFAULT_TOLERANCE};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Profile,
    Sweep,
    Verify,
    Figures,
    Convergence,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Profile => "profile",
            Mode::Sweep => "sweep",
            Mode::Verify => "verify",
            Mode::Figures => "figures",
            Mode::Convergence => "convergence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub y_min: f64,
    pub y_max: f64,
    pub samples: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let span = self.y_max - self.y_min;
        let last = (self.samples - 1) as f64;
        (0..self.samples)
            .map(|i| self.y_min + span * (i as f64) / last)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub parameter: VariedParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdmSettings {
    pub y_max: f64,
    pub dy: f64,
    pub dt: f64,
    pub theta: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceSettings {
    pub levels: usize,
    pub dy: f64,
    pub dt: f64,
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: FlowParameters<f64>,
    pub field: FieldKind,
    pub grid: Grid,
    pub times: Vec<f64>,
    pub sweep: Sweep,
    pub fdm: FdmSettings,
    pub convergence: ConvergenceSettings,
    pub output_dir: PathBuf,
    pub format: Format,
}

/// Values given on the command line; each one wins over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub field: Option<FieldKind>,
    pub gr: Option<f64>,
    pub gc: Option<f64>,
    pub pr: Option<f64>,
    pub sc: Option<f64>,
    pub alpha_deg: Option<f64>,
    pub t: Option<f64>,
    pub dy: Option<f64>,
    pub dt: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Option<Mode>,
    field: Option<FieldKind>,
    format: Option<Format>,
    out: Option<PathBuf>,
    times: Option<Vec<f64>>,
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    grid: RawGrid,
    sweep: Option<RawSweep>,
    #[serde(default)]
    fdm: RawFdm,
    #[serde(default)]
    convergence: RawConvergence,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    gr: Option<f64>,
    gc: Option<f64>,
    pr: Option<f64>,
    sc: Option<f64>,
    alpha_deg: Option<f64>,
    t: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    y_min: Option<f64>,
    y_max: Option<f64>,
    samples: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    values: Vec<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFdm {
    y_max: Option<f64>,
    dy: Option<f64>,
    dt: Option<f64>,
    theta: Option<f64>,
    tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConvergence {
    levels: Option<usize>,
    dy: Option<f64>,
    dt: Option<f64>,
}

pub const DEFAULT_GR: f64 = 15.0;
pub const DEFAULT_GC: f64 = 5.0;
pub const DEFAULT_PR: f64 = 0.71;
pub const DEFAULT_SC: f64 = 0.78;
pub const DEFAULT_ALPHA_DEG: f64 = 30.0;
pub const DEFAULT_T: f64 = 0.2;

/// Parses a TOML configuration with no overrides.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, &Overrides::default())
}

pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let message = e.message().to_string();
        let key = e
            .span()
            .and_then(|s| text.get(s))
            .map(|s| s.trim().to_string())
            .unwrap_or_else(|| "<document>".to_string());
        Error::config(key, message)
    })?;
    resolve(raw, overrides)
}

fn check(ok: bool, key: &str, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(key, message()))
    }
}

fn positive(key: &str, value: f64) -> Result<()> {
    check(value.is_finite() && value > 0.0, key, || {
        format!("must be finite and > 0 (got {value})")
    })
}

fn finite(key: &str, value: f64) -> Result<()> {
    check(value.is_finite(), key, || {
        format!("must be finite (got {value})")
    })
}

fn alpha_in_range(key: &str, value: f64) -> Result<()> {
    check((0.0..90.0).contains(&value), key, || {
        format!("plate angle in degrees must satisfy 0 <= alpha < 90 (got {value})")
    })
}

fn singular_check(key: &str, value: f64, symbol: &str) -> Result<()> {
    check((value - 1.0).abs() > SINGULAR_GUARD, key, || {
        format!(
            "{symbol} = {value} is within {SINGULAR_GUARD:e} of 1, where the closed-form \
             velocity is singular; use the finite-difference solver (FdmConfig / fdm::solve) \
             for this value"
        )
    })
}

fn resolve(raw: RawConfig, o: &Overrides) -> Result<RunConfig> {
    let mode = o.mode.or(raw.mode).unwrap_or(Mode::Profile);
    let field = o.field.or(raw.field).unwrap_or(FieldKind::Velocity);
    let format = o.format.or(raw.format).unwrap_or(Format::Csv);
    let output_dir = o
        .out
        .clone()
        .or(raw.out)
        .unwrap_or_else(|| PathBuf::from("out"));

    let p = &raw.params;
    let gr = o.gr.or(p.gr).unwrap_or(DEFAULT_GR);
    let gc = o.gc.or(p.gc).unwrap_or(DEFAULT_GC);
    let pr = o.pr.or(p.pr).unwrap_or(DEFAULT_PR);
    let sc = o.sc.or(p.sc).unwrap_or(DEFAULT_SC);
    let alpha_deg = o.alpha_deg.or(p.alpha_deg).unwrap_or(DEFAULT_ALPHA_DEG);
    finite("params.gr", gr)?;
    finite("params.gc", gc)?;
    positive("params.pr", pr)?;
    positive("params.sc", sc)?;
    alpha_in_range("params.alpha_deg", alpha_deg)?;
    let params = FlowParameters::with_alpha_degrees(gr, gc, pr, sc, alpha_deg)?;

    let times = match (o.t, raw.times, p.t) {
        (Some(t), _, _) => vec![t],
        (None, Some(times), _) => times,
        (None, None, Some(t)) => vec![t],
        (None, None, None) => vec![DEFAULT_T],
    };
    check(!times.is_empty(), "times", || {
        "must contain at least one time".into()
    })?;
    for &t in &times {
        positive("times", t)?;
    }
    check(times.windows(2).all(|w| w[1] > w[0]), "times", || {
        "must be strictly increasing".into()
    })?;

    let grid = Grid {
        y_min: raw.grid.y_min.unwrap_or(0.0),
        y_max: raw.grid.y_max.unwrap_or(4.0),
        samples: raw.grid.samples.unwrap_or(161),
    };
    check(
        grid.y_min.is_finite() && grid.y_min >= 0.0,
        "grid.y_min",
        || format!("must be >= 0 (got {})", grid.y_min),
    )?;
    check(
        grid.y_max.is_finite() && grid.y_max > grid.y_min,
        "grid.y_max",
        || {
            format!(
                "must exceed grid.y_min = {} (got {})",
                grid.y_min, grid.y_max
            )
        },
    )?;
    check(grid.samples >= 2, "grid.samples", || {
        format!("must be >= 2 (got {})", grid.samples)
    })?;

    let sweep = match raw.sweep {
        Some(s) => {
            let parameter: VariedParameter = s
                .parameter
                .parse()
                .map_err(|e: Error| Error::config("sweep.parameter", e.to_string()))?;
            Sweep {
                parameter,
                values: s.values,
            }
        }
        None => Sweep {
            parameter: VariedParameter::AlphaDeg,
            values: vec![15.0, 30.0, 60.0],
        },
    };
    check(!sweep.values.is_empty(), "sweep.values", || {
        "must contain at least one value".into()
    })?;
    for &v in &sweep.values {
        match sweep.parameter {
            VariedParameter::Gr | VariedParameter::Gc => finite("sweep.values", v)?,
            VariedParameter::Pr | VariedParameter::Sc | VariedParameter::Time => {
                positive("sweep.values", v)?
            }
            VariedParameter::AlphaDeg => alpha_in_range("sweep.values", v)?,
        }
    }

    let f = &raw.fdm;
    let fdm = FdmSettings {
        y_max: f.y_max.unwrap_or(20.0),
        dy: o.dy.or(f.dy).unwrap_or(0.01),
        dt: o.dt.or(f.dt).unwrap_or(1e-4),
        theta: f.theta.unwrap_or(0.5),
        tolerance: f.tolerance.unwrap_or(DEFAULT_TOLERANCE),
    };
    positive("fdm.y_max", fdm.y_max)?;
    positive("fdm.dy", fdm.dy)?;
    positive("fdm.dt", fdm.dt)?;
    positive("fdm.tolerance", fdm.tolerance)?;
    check((0.0..=1.0).contains(&fdm.theta), "fdm.theta", || {
        format!("must satisfy 0 <= theta <= 1 (got {})", fdm.theta)
    })?;

    let c = &raw.convergence;
    let convergence = ConvergenceSettings {
        levels: c.levels.unwrap_or(3),
        dy: c.dy.unwrap_or(0.04),
        dt: c.dt.unwrap_or(1.6e-3),
    };
    check(convergence.levels >= 2, "convergence.levels", || {
        format!(
            "at least two levels are required (got {})",
            convergence.levels
        )
    })?;
    positive("convergence.dy", convergence.dy)?;
    positive("convergence.dt", convergence.dt)?;

    // The closed form is needed for the velocity in profile/sweep mode and
    // for every field in the verification modes.
    let needs_velocity = match mode {
        Mode::Profile | Mode::Sweep => field == FieldKind::Velocity,
        Mode::Verify | Mode::Convergence => true,
        Mode::Figures => false,
    };
    if needs_velocity {
        let swept = |param| mode == Mode::Sweep && sweep.parameter == param;
        if !swept(VariedParameter::Pr) {
            singular_check("params.pr", pr, "Pr")?;
        }
        if !swept(VariedParameter::Sc) {
            singular_check("params.sc", sc, "Sc")?;
        }
        if mode == Mode::Sweep {
            for &v in &sweep.values {
                match sweep.parameter {
                    VariedParameter::Pr => singular_check("sweep.values", v, "Pr")?,
                    VariedParameter::Sc => singular_check("sweep.values", v, "Sc")?,
                    _ => {}
                }
            }
        }
    }

    Ok(RunConfig {
        mode,
        params,
        field,
        grid,
        times,
        sweep,
        fdm,
        convergence,
        output_dir,
        format,
    })
}
