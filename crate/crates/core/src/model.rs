//! Physical inputs, dimensionless parameters and evaluation points.
//!
//! The dimensional layer is a convenience: the scalings are applied exactly
//! as the governing model defines them,
//!
//! ```text
//! Y  = y (v0 / nu^2)^(1/3)          t  = (v0^2 / nu)^(1/3) t'
//! Gr = g beta  (theta_w - theta_inf) / (nu v0)^(1/3)
//! Gc = g beta* (C_w - C_inf)         / (nu v0)^(1/3)
//! Pr = mu Cp / k  (mu = rho nu)      Sc = nu / D
//! ```
//!
//! Note that with `v0` in m/s^3 the Grashof scalings are not dimensionless;
//! everything downstream works purely in the dimensionless variables.

use serde::{Deserialize, Serialize};

use crate::{lit, to_f64, Error, Real, Result};

fn require<T: Real>(ok: bool, name: &'static str, value: T, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: to_f64(value),
            expected,
        })
    }
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<()> {
    require(
        value.is_finite() && value > T::zero(),
        name,
        value,
        "finite and > 0",
    )
}

fn finite<T: Real>(name: &'static str, value: T) -> Result<()> {
    require(value.is_finite(), name, value, "finite")
}

/// Physical quantities of the dimensional problem (SI units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalInputs<T> {
    /// Gravitational acceleration [m/s^2].
    pub g: T,
    /// Thermal expansion coefficient [1/K].
    pub beta: T,
    /// Concentration expansion coefficient [m^3/kg].
    pub beta_star: T,
    /// Kinematic viscosity [m^2/s].
    pub nu: T,
    /// Density [kg/m^3].
    pub rho: T,
    /// Specific heat [J/(kg K)].
    pub cp: T,
    /// Thermal conductivity [W/(m K)].
    pub k: T,
    /// Mass diffusivity [m^2/s].
    pub d_mass: T,
    /// Plate start coefficient in `v = v0 t'^2` [m/s^3].
    pub v0: T,
    pub theta_w: T,
    pub theta_inf: T,
    pub c_w: T,
    pub c_inf: T,
}

impl<T: Real> DimensionalInputs<T> {
    pub fn validate(&self) -> Result<()> {
        finite("g", self.g)?;
        finite("beta", self.beta)?;
        finite("beta_star", self.beta_star)?;
        positive("nu", self.nu)?;
        positive("rho", self.rho)?;
        positive("cp", self.cp)?;
        positive("k", self.k)?;
        positive("d_mass", self.d_mass)?;
        positive("v0", self.v0)?;
        for (name, v) in [
            ("theta_w", self.theta_w),
            ("theta_inf", self.theta_inf),
            ("c_w", self.c_w),
            ("c_inf", self.c_inf),
        ] {
            finite(name, v)?;
        }
        require(
            self.theta_w != self.theta_inf,
            "theta_w",
            self.theta_w,
            "different from theta_inf",
        )?;
        require(
            self.c_w != self.c_inf,
            "c_w",
            self.c_w,
            "different from c_inf",
        )
    }

    /// Dynamic viscosity `mu = rho nu`.
    pub fn mu(&self) -> T {
        self.rho * self.nu
    }

    /// `(nu v0)^(1/3)`, the Grashof denominator.
    fn grashof_scale(&self) -> T {
        (self.nu * self.v0).cbrt()
    }

    /// Length scale factor: `Y = y * length_scale()`.
    pub fn length_scale(&self) -> T {
        (self.v0 / (self.nu * self.nu)).cbrt()
    }

    /// Time scale factor: `t = t' * time_scale()`.
    pub fn time_scale(&self) -> T {
        (self.v0 * self.v0 / self.nu).cbrt()
    }

    /// Maps the dimensional inputs onto the dimensionless parameter set.
    /// The inclination `alpha` (radians) is passed through unchanged.
    pub fn nondimensionalize(&self, alpha: T) -> Result<FlowParameters<T>> {
        self.validate()?;
        let scale = self.grashof_scale();
        let gr = self.g * self.beta * (self.theta_w - self.theta_inf) / scale;
        let gc = self.g * self.beta_star * (self.c_w - self.c_inf) / scale;
        let pr = self.mu() * self.cp / self.k;
        let sc = self.nu / self.d_mass;
        FlowParameters::new(gr, gc, pr, sc, alpha)
    }

    pub fn to_eval_point(&self, pt: DimensionalPoint<T>) -> Result<EvalPoint<T>> {
        self.validate()?;
        EvalPoint::new(pt.y * self.length_scale(), pt.t_prime * self.time_scale())
    }
}

/// A dimensional location: wall distance `y` [m] and time `t'` [s].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalPoint<T> {
    y: T,
    t_prime: T,
}

impl<T: Real> DimensionalPoint<T> {
    pub fn new(y: T, t_prime: T) -> Result<Self> {
        require(y.is_finite() && y >= T::zero(), "y", y, "finite and >= 0")?;
        finite("t_prime", t_prime)?;
        Ok(Self { y, t_prime })
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn t_prime(&self) -> T {
        self.t_prime
    }
}

/// Dimensionless problem definition.
///
/// Invariants: `Pr > 0`, `Sc > 0`, `0 <= alpha < pi/2`, `Gr` and `Gc` finite.
/// Negative Grashof numbers (opposing buoyancy) are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowParameters<T> {
    gr: T,
    gc: T,
    pr: T,
    sc: T,
    alpha: T,
}

impl<T: Real> FlowParameters<T> {
    /// `alpha` is the plate inclination in radians.
    pub fn new(gr: T, gc: T, pr: T, sc: T, alpha: T) -> Result<Self> {
        finite("gr", gr)?;
        finite("gc", gc)?;
        positive("pr", pr)?;
        positive("sc", sc)?;
        require(
            alpha.is_finite() && alpha >= T::zero() && alpha < T::FRAC_PI_2(),
            "alpha",
            alpha,
            "0 <= alpha < pi/2 (0 to 90 degrees, exclusive)",
        )?;
        Ok(Self {
            gr,
            gc,
            pr,
            sc,
            alpha,
        })
    }

    pub fn with_alpha_degrees(gr: T, gc: T, pr: T, sc: T, alpha_deg: T) -> Result<Self> {
        require(
            alpha_deg.is_finite() && alpha_deg >= T::zero() && alpha_deg < lit(90.0),
            "alpha_deg",
            alpha_deg,
            "0 <= alpha_deg < 90",
        )?;
        Self::new(gr, gc, pr, sc, alpha_deg.to_radians())
    }

    pub fn gr(&self) -> T {
        self.gr
    }

    pub fn gc(&self) -> T {
        self.gc
    }

    pub fn pr(&self) -> T {
        self.pr
    }

    pub fn sc(&self) -> T {
        self.sc
    }

    /// Inclination in radians.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn alpha_degrees(&self) -> T {
        self.alpha.to_degrees()
    }

    pub fn set_gr(self, gr: T) -> Result<Self> {
        Self::new(gr, self.gc, self.pr, self.sc, self.alpha)
    }

    pub fn set_gc(self, gc: T) -> Result<Self> {
        Self::new(self.gr, gc, self.pr, self.sc, self.alpha)
    }

    pub fn set_pr(self, pr: T) -> Result<Self> {
        Self::new(self.gr, self.gc, pr, self.sc, self.alpha)
    }

    pub fn set_sc(self, sc: T) -> Result<Self> {
        Self::new(self.gr, self.gc, self.pr, sc, self.alpha)
    }

    pub fn set_alpha(self, alpha: T) -> Result<Self> {
        Self::new(self.gr, self.gc, self.pr, self.sc, alpha)
    }
}

/// Dimensionless evaluation point `(Y, t)` with `Y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T> {
    y_hat: T,
    t_hat: T,
}

impl<T: Real> EvalPoint<T> {
    pub fn new(y_hat: T, t_hat: T) -> Result<Self> {
        require(
            y_hat.is_finite() && y_hat >= T::zero(),
            "Y",
            y_hat,
            "finite and >= 0",
        )?;
        finite("t", t_hat)?;
        Ok(Self { y_hat, t_hat })
    }

    pub fn y(&self) -> T {
        self.y_hat
    }

    pub fn t(&self) -> T {
        self.t_hat
    }

    /// Similarity variable `eta = Y / (2 sqrt(t))`; undefined for `t <= 0`.
    pub fn eta(&self) -> Result<T> {
        similarity_eta(*self)
    }
}

pub fn similarity_eta<T: Real>(pt: EvalPoint<T>) -> Result<T> {
    if pt.t_hat > T::zero() {
        Ok(pt.y_hat / (lit::<T>(2.0) * pt.t_hat.sqrt()))
    } else {
        Err(Error::NonPositiveTime {
            t: to_f64(pt.t_hat),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Velocity,
    Temperature,
    Concentration,
}

impl FieldKind {
    pub const ALL: [FieldKind; 3] = [
        FieldKind::Velocity,
        FieldKind::Temperature,
        FieldKind::Concentration,
    ];

    /// Column symbol used in output headers.
    pub fn symbol(&self) -> &'static str {
        match self {
            FieldKind::Velocity => "V",
            FieldKind::Temperature => "T",
            FieldKind::Concentration => "phi",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldKind::Velocity => "velocity",
            FieldKind::Temperature => "temperature",
            FieldKind::Concentration => "concentration",
        }
    }
}

impl std::str::FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "velocity" | "v" => Ok(FieldKind::Velocity),
            "temperature" | "t" => Ok(FieldKind::Temperature),
            "concentration" | "phi" => Ok(FieldKind::Concentration),
            other => Err(Error::Invalid(format!(
                "unknown field '{other}': expected velocity, temperature or concentration"
            ))),
        }
    }
}

impl std::fmt::Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One sampled curve `(Y, value)` of a field at fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T> {
    t_hat: T,
    field: FieldKind,
    samples: Vec<(T, T)>,
}

impl<T: Real> Profile<T> {
    /// Checks that `Y` is strictly increasing and every value finite.
    pub fn new(t_hat: T, field: FieldKind, samples: Vec<(T, T)>) -> Result<Self> {
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Invalid(format!(
                    "profile abscissae must be strictly increasing (Y = {} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(y, v)) = samples.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite {field} value {v} at Y = {y}"
            )));
        }
        Ok(Self {
            t_hat,
            field,
            samples,
        })
    }

    pub fn t(&self) -> T {
        self.t_hat
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn samples(&self) -> &[(T, T)] {
        &self.samples
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.samples.iter().map(|&(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn air() -> DimensionalInputs<f64> {
        DimensionalInputs {
            g: 9.81,
            beta: 3.4e-3,
            beta_star: 1.0e-3,
            nu: 1.5e-5,
            rho: 1.2,
            cp: 1005.0,
            k: 0.0255,
            d_mass: 1.5e-5,
            v0: 0.5,
            theta_w: 320.0,
            theta_inf: 300.0,
            c_w: 1.0,
            c_inf: 0.5,
        }
    }

    #[test]
    fn equal_diffusivities_give_unit_schmidt() {
        let p = air().nondimensionalize(0.0).unwrap();
        assert_eq!(p.sc(), 1.0);
    }

    #[test]
    fn prandtl_from_dynamic_viscosity() {
        // mu = 1.8e-5 through rho * nu
        let mut d = air();
        d.rho = 1.2;
        d.nu = 1.5e-5;
        let p = d.nondimensionalize(0.0).unwrap();
        assert!((p.pr() - 0.709_411_764_705_882_4).abs() < 1e-12);
    }

    #[test]
    fn zero_concentration_expansion_gives_zero_gc() {
        let mut d = air();
        d.beta_star = 0.0;
        assert_eq!(d.nondimensionalize(0.3).unwrap().gc(), 0.0);
    }

    #[test]
    fn gr_scales_linearly_with_temperature_difference() {
        let d = air();
        let base = d.nondimensionalize(0.0).unwrap().gr();
        let mut d3 = d;
        d3.theta_w = d.theta_inf + 3.0 * (d.theta_w - d.theta_inf);
        let scaled = d3.nondimensionalize(0.0).unwrap().gr();
        assert!((scaled - 3.0 * base).abs() <= 1e-12 * scaled.abs());
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let mut d = air();
        d.theta_w = d.theta_inf;
        assert!(matches!(
            d.nondimensionalize(0.0),
            Err(Error::InvalidParameter {
                name: "theta_w",
                ..
            })
        ));
        let mut d = air();
        d.c_w = d.c_inf;
        assert!(d.nondimensionalize(0.0).is_err());
        let mut d = air();
        d.nu = 0.0;
        assert!(d.nondimensionalize(0.0).is_err());
        let mut d = air();
        d.k = -1.0;
        assert!(d.nondimensionalize(0.0).is_err());
    }

    #[test]
    fn eval_point_scalings() {
        let mut d = air();
        let wall = DimensionalPoint::new(0.0, 1.0).unwrap();
        assert_eq!(d.to_eval_point(wall).unwrap().y(), 0.0);

        d.nu = 2.0;
        d.v0 = 4.0; // v0 = nu^2, unit length scale
        let p = d
            .to_eval_point(DimensionalPoint::new(2.5, 0.0).unwrap())
            .unwrap();
        assert!((p.y() - 2.5).abs() < 1e-15);

        d.v0 = 8.0;
        let p = d
            .to_eval_point(DimensionalPoint::new(1.0, 1.0).unwrap())
            .unwrap();
        assert!((p.y() - 1.259_921_049_894_873_2).abs() < 1e-14);
        // t = (64 / 2)^(1/3)
        assert!((p.t() - 32f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn eta_values() {
        let eta = |y: f64, t: f64| similarity_eta(EvalPoint::new(y, t).unwrap());
        assert_eq!(eta(0.0, 0.2).unwrap(), 0.0);
        assert_eq!(eta(2.0, 1.0).unwrap(), 1.0);
        assert!((eta(1.2, 0.36).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(eta(1.0, 0.0), Err(Error::NonPositiveTime { .. })));
        assert!(eta(1.0, -1.0).is_err());
    }

    #[test]
    fn flow_parameter_ranges() {
        assert!(FlowParameters::new(15.0, 5.0, 0.71, 0.78, 0.0).is_ok());
        assert!(FlowParameters::new(-15.0, -5.0, 0.71, 0.78, 0.5).is_ok());
        assert!(FlowParameters::new(15.0, 5.0, 0.0, 0.78, 0.5).is_err());
        assert!(FlowParameters::new(15.0, 5.0, 0.71, -0.1, 0.5).is_err());
        assert!(FlowParameters::new(15.0, 5.0, 0.71, 0.78, std::f64::consts::FRAC_PI_2).is_err());
        assert!(FlowParameters::new(f64::NAN, 5.0, 0.71, 0.78, 0.5).is_err());
        assert!(FlowParameters::with_alpha_degrees(15.0, 5.0, 0.71, 0.78, 95.0).is_err());
        let p = FlowParameters::<f64>::with_alpha_degrees(15.0, 5.0, 0.71, 0.78, 60.0).unwrap();
        assert!((p.alpha().cos() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn profile_invariants() {
        assert!(Profile::new(0.2, FieldKind::Velocity, vec![(0.0, 1.0), (0.1, 0.5)]).is_ok());
        assert!(Profile::new(0.2, FieldKind::Velocity, vec![(0.1, 1.0), (0.1, 0.5)]).is_err());
        assert!(Profile::new(0.2, FieldKind::Velocity, vec![(0.0, f64::NAN)]).is_err());
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!(
            "Velocity".parse::<FieldKind>().unwrap(),
            FieldKind::Velocity
        );
        assert_eq!(
            "phi".parse::<FieldKind>().unwrap(),
            FieldKind::Concentration
        );
        assert!("pressure".parse::<FieldKind>().is_err());
    }
}
