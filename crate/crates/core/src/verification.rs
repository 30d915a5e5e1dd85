//! Cross-checks between the closed form and the finite-difference solver,
//! PDE residuals of the closed form, and qualitative parameter trends.
//!
//! The comparison tolerance (1e-3 in max norm at `dY = 0.01`, `dt = 1e-4`,
//! `y_max = 20`) is a contract of this crate, chosen from the convergence
//! study; observed errors on that grid are around 4e-5.

use serde::Serialize;

use crate::analytic::AnalyticSolution;
use crate::fdm::{solve, FdmConfig};
use crate::model::{EvalPoint, FieldKind, FlowParameters};
use crate::{lit, to_f64, Error, Real, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-3;

/// Error norms of one field, FD minus closed form, on the FD grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport<T> {
    pub field: FieldKind,
    /// Time of the stored FD level that was compared.
    pub t_probe: T,
    pub l_inf: T,
    /// Root-mean-square of the pointwise differences.
    pub l2: T,
    pub samples: usize,
    pub tolerance: T,
    pub grid: FdmConfig<T>,
    pub pass: bool,
}

/// Error norms of `a - b` (order-insensitive).
pub fn error_norms<T: Real>(a: &[T], b: &[T]) -> (T, T) {
    assert_eq!(a.len(), b.len(), "sample count mismatch");
    let mut l_inf = T::zero();
    let mut sum = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        let e = (x - y).abs();
        l_inf = l_inf.max(e);
        sum = sum + e * e;
    }
    let l2 = if a.is_empty() {
        T::zero()
    } else {
        (sum / lit(a.len() as f64)).sqrt()
    };
    (l_inf, l2)
}

/// Runs the FD solver to `t_probe` and compares all three fields with the
/// closed form, at the default tolerance.
pub fn compare<T: Real>(
    params: &FlowParameters<T>,
    cfg: &FdmConfig<T>,
    t_probe: T,
) -> Result<Vec<ComparisonReport<T>>> {
    compare_with_tolerance(params, cfg, t_probe, lit(DEFAULT_TOLERANCE))
}

pub fn compare_with_tolerance<T: Real>(
    params: &FlowParameters<T>,
    cfg: &FdmConfig<T>,
    t_probe: T,
    tolerance: T,
) -> Result<Vec<ComparisonReport<T>>> {
    if !(t_probe > T::zero()) {
        return Err(Error::NonPositiveTime { t: to_f64(t_probe) });
    }
    let exact = AnalyticSolution::new(*params)?;
    let mut run = *cfg;
    run.t_end = t_probe;
    run.store_every = run.steps();
    let sol = solve(params, &run)?;
    let level = sol.final_level();
    let t = sol.times[level];

    FieldKind::ALL
        .iter()
        .map(|&field| {
            let numeric = sol.field(field).row(level).to_vec();
            let analytic = sol
                .y_grid
                .iter()
                .map(|&y| Ok(exact.field(field, EvalPoint::new(y, t)?)))
                .collect::<Result<Vec<_>>>()?;
            let (l_inf, l2) = error_norms(&numeric, &analytic);
            Ok(ComparisonReport {
                field,
                t_probe: t,
                l_inf,
                l2,
                samples: numeric.len(),
                tolerance,
                grid: run,
                pass: l_inf <= tolerance,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Parameter varied along a trend. Angles are in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VariedParameter {
    Gr,
    Gc,
    Pr,
    Sc,
    AlphaDeg,
    Time,
}

impl VariedParameter {
    pub fn name(&self) -> &'static str {
        match self {
            VariedParameter::Gr => "gr",
            VariedParameter::Gc => "gc",
            VariedParameter::Pr => "pr",
            VariedParameter::Sc => "sc",
            VariedParameter::AlphaDeg => "alpha_deg",
            VariedParameter::Time => "t",
        }
    }

    /// Header label for one value, e.g. `alpha=15deg`.
    pub fn label<T: Real>(&self, value: T) -> String {
        match self {
            VariedParameter::AlphaDeg => format!("alpha={value}deg"),
            other => format!("{}={value}", other.name()),
        }
    }

    /// `base` with this parameter set to `value`; time is not a flow parameter
    /// and leaves `base` unchanged.
    pub fn apply<T: Real>(&self, base: FlowParameters<T>, value: T) -> Result<FlowParameters<T>> {
        match self {
            VariedParameter::Gr => base.set_gr(value),
            VariedParameter::Gc => base.set_gc(value),
            VariedParameter::Pr => base.set_pr(value),
            VariedParameter::Sc => base.set_sc(value),
            VariedParameter::AlphaDeg => FlowParameters::with_alpha_degrees(
                base.gr(),
                base.gc(),
                base.pr(),
                base.sc(),
                value,
            ),
            VariedParameter::Time => Ok(base),
        }
    }
}

impl std::str::FromStr for VariedParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gr" => Ok(VariedParameter::Gr),
            "gc" => Ok(VariedParameter::Gc),
            "pr" => Ok(VariedParameter::Pr),
            "sc" => Ok(VariedParameter::Sc),
            "alpha" | "alpha_deg" => Ok(VariedParameter::AlphaDeg),
            "t" | "time" => Ok(VariedParameter::Time),
            other => Err(Error::Invalid(format!(
                "unknown sweep parameter '{other}': expected gr, gc, pr, sc, alpha_deg or t"
            ))),
        }
    }
}

/// A claimed monotone dependence of a field on one parameter, checked at
/// fixed interior probe positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendCheck<T> {
    pub varied: VariedParameter,
    pub values: Vec<T>,
    pub field: FieldKind,
    pub direction: Direction,
    /// Wall distances of the probes; the time is supplied at check time.
    pub probes: Vec<T>,
    /// Field values, one row per parameter value, one column per probe.
    pub observed: Vec<Vec<T>>,
    pub pass: bool,
}

impl<T: Real> TrendCheck<T> {
    pub fn new(
        varied: VariedParameter,
        values: Vec<T>,
        field: FieldKind,
        direction: Direction,
        probes: Vec<T>,
    ) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Invalid(format!(
                "trend over {} needs at least two values",
                varied.name()
            )));
        }
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid(format!(
                "trend values for {} must be strictly increasing",
                varied.name()
            )));
        }
        if let Some(&y) = probes.iter().find(|&&y| !(y > T::zero())) {
            return Err(Error::InvalidParameter {
                name: "probe Y",
                value: to_f64(y),
                expected: "> 0 (at the wall V = t^2 for every parameter set)",
            });
        }
        if probes.is_empty() {
            return Err(Error::Invalid(
                "trend check needs at least one probe".into(),
            ));
        }
        Ok(Self {
            varied,
            values,
            field,
            direction,
            probes,
            observed: Vec::new(),
            pass: false,
        })
    }
}

/// Default interior probe positions.
pub const DEFAULT_PROBES: [f64; 2] = [0.5, 1.0];

/// Evaluates the trend and fills in `observed` and `pass`.
pub fn check_trend<T: Real>(
    base: &FlowParameters<T>,
    check: &TrendCheck<T>,
    t: T,
) -> Result<TrendCheck<T>> {
    let mut out = TrendCheck::new(
        check.varied,
        check.values.clone(),
        check.field,
        check.direction,
        check.probes.clone(),
    )?;
    if !(t > T::zero()) && check.varied != VariedParameter::Time {
        return Err(Error::NonPositiveTime { t: to_f64(t) });
    }
    for &value in &check.values {
        let params = check.varied.apply(*base, value)?;
        let time = if check.varied == VariedParameter::Time {
            value
        } else {
            t
        };
        let solution = AnalyticSolution::for_field(params, check.field)?;
        let row = check
            .probes
            .iter()
            .map(|&y| Ok(solution.field(check.field, EvalPoint::new(y, time)?)))
            .collect::<Result<Vec<_>>>()?;
        out.observed.push(row);
    }
    out.pass = (0..out.probes.len()).all(|j| {
        out.observed.windows(2).all(|w| match check.direction {
            Direction::Increasing => w[1][j] > w[0][j],
            Direction::Decreasing => w[1][j] < w[0][j],
        })
    });
    Ok(out)
}

/// A named trend claim with the parameter set it is stated for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendCase<T> {
    pub name: &'static str,
    pub base: FlowParameters<T>,
    pub t: T,
    pub check: TrendCheck<T>,
}

fn case<T: Real>(
    name: &'static str,
    (gr, gc, pr, sc, alpha_deg, t): (f64, f64, f64, f64, f64, f64),
    varied: VariedParameter,
    values: &[f64],
    field: FieldKind,
    direction: Direction,
) -> TrendCase<T> {
    let base =
        FlowParameters::with_alpha_degrees(lit(gr), lit(gc), lit(pr), lit(sc), lit(alpha_deg))
            .expect("figure parameters are admissible");
    let check = TrendCheck::new(
        varied,
        values.iter().map(|&v| lit(v)).collect(),
        field,
        direction,
        DEFAULT_PROBES.iter().map(|&y| lit(y)).collect(),
    )
    .expect("figure trend is well formed");
    TrendCase {
        name,
        base,
        t: lit(t),
        check,
    }
}

/// The eight published orderings, each with its own figure's parameter set.
///
/// Tuples read `(Gr, Gc, Pr, Sc, alpha_deg, t)`; the swept entry is overridden.
/// The temperature and concentration figures list no other parameters, so
/// they reuse the plate-angle figure's set.
pub fn published_trends<T: Real>() -> Vec<TrendCase<T>> {
    use Direction::*;
    use FieldKind::*;
    use VariedParameter as P;
    vec![
        case(
            "fig1_velocity_vs_pr",
            (15.0, 5.0, 0.71, 0.16, 30.0, 0.4),
            P::Pr,
            &[0.17, 0.5, 0.71],
            Velocity,
            Decreasing,
        ),
        case(
            "fig2_velocity_vs_sc",
            (15.0, 5.0, 5.0, 0.6, 30.0, 0.6),
            P::Sc,
            &[0.16, 0.6, 2.01],
            Velocity,
            Decreasing,
        ),
        case(
            "fig3_velocity_vs_t",
            (5.0, 5.0, 0.71, 0.6, 30.0, 0.2),
            P::Time,
            &[0.2, 0.4, 0.6],
            Velocity,
            Increasing,
        ),
        case(
            "fig4_velocity_vs_gr",
            (10.0, 50.0, 0.71, 2.01, 30.0, 0.2),
            P::Gr,
            &[10.0, 50.0, 100.0],
            Velocity,
            Increasing,
        ),
        case(
            "fig5_velocity_vs_gc",
            (50.0, 10.0, 0.71, 0.6, 30.0, 0.4),
            P::Gc,
            &[10.0, 50.0, 100.0],
            Velocity,
            Increasing,
        ),
        case(
            "fig6_velocity_vs_alpha",
            (15.0, 5.0, 0.71, 0.78, 15.0, 0.2),
            P::AlphaDeg,
            &[15.0, 30.0, 60.0],
            Velocity,
            Decreasing,
        ),
        case(
            "fig7_temperature_vs_pr",
            (15.0, 5.0, 0.71, 0.78, 30.0, 0.2),
            P::Pr,
            &[0.17, 0.5, 0.71],
            Temperature,
            Decreasing,
        ),
        case(
            "fig8_concentration_vs_sc",
            (15.0, 5.0, 0.71, 0.78, 30.0, 0.2),
            P::Sc,
            &[0.16, 0.3, 0.6],
            Concentration,
            Decreasing,
        ),
    ]
}

/// Residual norms of the three governing equations for one differencing step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRow<T> {
    pub step: T,
    /// Max over probes of `|Pr T_t - T_YY|`.
    pub energy: T,
    /// Max over probes of `|Sc phi_t - phi_YY|`.
    pub species: T,
    /// Max over probes of `|V_t - Gr T cos(a) - Gc phi cos(a) - V_YY|`.
    pub momentum: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualScan<T> {
    pub rows: Vec<ResidualRow<T>>,
    /// Successive ratios `r_k / r_{k+1}` per equation `(energy, species, momentum)`.
    pub ratios: Vec<[T; 3]>,
    /// Whether every ratio lies in `4 +- 25%` (only meaningful for halved steps).
    pub second_order: [bool; 3],
}

/// Central-difference residuals of the closed-form fields.
///
/// Steps far below ~1e-6 enter the round-off regime and the residual grows
/// again; the scan reports that without failing.
pub fn residual_scan<T: Real>(
    params: &FlowParameters<T>,
    probes: &[(T, T)],
    steps: &[T],
) -> Result<ResidualScan<T>> {
    let largest = steps.iter().copied().fold(T::zero(), T::max);
    if steps.is_empty() || steps.iter().any(|&h| !(h > T::zero())) {
        return Err(Error::Invalid("residual steps must be positive".into()));
    }
    for &(y, t) in probes {
        if !(y > largest && t > largest) {
            return Err(Error::Invalid(format!(
                "probe (Y = {y}, t = {t}) must be farther than the largest step {largest} from Y = 0 and t = 0"
            )));
        }
    }
    let exact = AnalyticSolution::new(*params)?;
    let cos_alpha = params.alpha().cos();
    let two = lit::<T>(2.0);

    let mut rows = Vec::with_capacity(steps.len());
    for &h in steps {
        let mut row = ResidualRow {
            step: h,
            energy: T::zero(),
            species: T::zero(),
            momentum: T::zero(),
        };
        for &(y, t) in probes {
            let at = |field: FieldKind, dy: T, dt: T| -> Result<T> {
                Ok(exact.field(field, EvalPoint::new(y + dy, t + dt)?))
            };
            let z = T::zero();
            let mut d = [[T::zero(); 2]; 3];
            for (k, field) in FieldKind::ALL.iter().enumerate() {
                let centre = at(*field, z, z)?;
                let dt_ = (at(*field, z, h)? - at(*field, z, -h)?) / (two * h);
                let dyy = (at(*field, h, z)? - two * centre + at(*field, -h, z)?) / (h * h);
                d[k] = [dt_, dyy];
            }
            let pt = EvalPoint::new(y, t)?;
            let temp = exact.temperature(pt);
            let phi = exact.concentration(pt);
            let [v, tt, ph] = d;
            let energy = (params.pr() * tt[0] - tt[1]).abs();
            let species = (params.sc() * ph[0] - ph[1]).abs();
            let momentum =
                (v[0] - params.gr() * temp * cos_alpha - params.gc() * phi * cos_alpha - v[1])
                    .abs();
            row.energy = row.energy.max(energy);
            row.species = row.species.max(species);
            row.momentum = row.momentum.max(momentum);
        }
        rows.push(row);
    }

    let ratios: Vec<[T; 3]> = rows
        .windows(2)
        .map(|w| {
            [
                w[0].energy / w[1].energy,
                w[0].species / w[1].species,
                w[0].momentum / w[1].momentum,
            ]
        })
        .collect();
    let (lo, hi) = (lit::<T>(3.0), lit::<T>(5.0));
    let mut second_order = [!ratios.is_empty(); 3];
    for r in &ratios {
        for k in 0..3 {
            second_order[k] &= r[k] >= lo && r[k] <= hi;
        }
    }
    Ok(ResidualScan {
        rows,
        ratios,
        second_order,
    })
}
