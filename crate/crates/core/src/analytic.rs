//! Closed-form temperature, concentration and velocity fields.
//!
//! With `eta = Y / (2 sqrt(t))`:
//!
//! ```text
//! T   = erfc(eta sqrt(Pr))
//! phi = erfc(eta sqrt(Sc))
//! V   = (t^2/3) [L1 L05 - L4 L00 L04]
//!       - (a + b) t [L1 L01 - 2 L4 L00]
//!       + a t [L2 L02 - 2 L5 L00 sqrt(Pr)]
//!       + b t [L3 L03 - 2 L6 L00 sqrt(Sc)]
//! a = -Gr cos(alpha) / (Pr - 1),   b = -Gc cos(alpha) / (Sc - 1)
//! ```
//!
//! The leading factor 2 of the plate-driven block multiplies `t^2/6` only;
//! that is the grouping for which `V(0, t) = t^2` and the momentum equation
//! is satisfied. Each bracketed buoyancy block equals `4 i2erfc(.)`.
//!
//! All fields are identically zero for `t <= 0`.

use serde::Serialize;

use crate::model::{EvalPoint, FieldKind, FlowParameters, Profile};
use crate::special::{erfc, gauss_kernel};
use crate::{lit, to_f64, Error, Real, Result};

/// Half-width of the excluded band around `Pr = 1` and `Sc = 1`.
pub const SINGULAR_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionCoefficients<T> {
    pub a: T,
    pub b: T,
}

/// Fails with [`Error::SingularPrandtl`] / [`Error::SingularSchmidt`] when
/// `|Pr - 1|` or `|Sc - 1|` is within [`SINGULAR_GUARD`].
pub fn coefficients<T: Real>(params: &FlowParameters<T>) -> Result<SolutionCoefficients<T>> {
    let guard = lit::<T>(SINGULAR_GUARD);
    let dpr = params.pr() - T::one();
    let dsc = params.sc() - T::one();
    if dpr.abs() <= guard {
        return Err(Error::SingularPrandtl {
            pr: to_f64(params.pr()),
        });
    }
    if dsc.abs() <= guard {
        return Err(Error::SingularSchmidt {
            sc: to_f64(params.sc()),
        });
    }
    let cos_alpha = params.alpha().cos();
    Ok(SolutionCoefficients {
        a: -params.gr() * cos_alpha / dpr,
        b: -params.gc() * cos_alpha / dsc,
    })
}

/// The polynomial (`l00`..`l05`) and kernel (`l1`..`l6`) terms at one `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppendixTerms<T> {
    pub l00: T,
    pub l01: T,
    pub l02: T,
    pub l03: T,
    pub l04: T,
    pub l05: T,
    pub l1: T,
    pub l2: T,
    pub l3: T,
    pub l4: T,
    pub l5: T,
    pub l6: T,
}

impl<T: Real> AppendixTerms<T> {
    pub fn new(eta: T, pr: T, sc: T) -> Self {
        let one = T::one();
        let two = lit::<T>(2.0);
        let eta2 = eta * eta;
        let (sqrt_pr, sqrt_sc) = (pr.sqrt(), sc.sqrt());
        Self {
            l00: eta / T::PI().sqrt(),
            l01: one + two * eta2,
            l02: one + two * eta2 * pr,
            l03: one + two * eta2 * sc,
            l04: lit::<T>(10.0) + lit::<T>(4.0) * eta2,
            l05: lit::<T>(3.0) + lit::<T>(12.0) * eta2 + lit::<T>(4.0) * eta2 * eta2,
            l1: erfc(eta),
            l2: erfc(eta * sqrt_pr),
            l3: erfc(eta * sqrt_sc),
            l4: gauss_kernel(eta),
            l5: gauss_kernel(eta * sqrt_pr),
            l6: gauss_kernel(eta * sqrt_sc),
        }
    }

    /// `L1 L05 - L4 L00 L04`, equal to `96 i4erfc(eta)`.
    pub fn plate_block(&self) -> T {
        self.l1 * self.l05 - self.l4 * self.l00 * self.l04
    }

    /// `L1 L01 - 2 L4 L00 = 4 i2erfc(eta)`.
    pub fn momentum_block(&self) -> T {
        self.l1 * self.l01 - lit::<T>(2.0) * self.l4 * self.l00
    }

    /// `L2 L02 - 2 L5 L00 sqrt(Pr) = 4 i2erfc(eta sqrt(Pr))`.
    pub fn thermal_block(&self, pr: T) -> T {
        self.l2 * self.l02 - lit::<T>(2.0) * self.l5 * self.l00 * pr.sqrt()
    }

    /// `L3 L03 - 2 L6 L00 sqrt(Sc) = 4 i2erfc(eta sqrt(Sc))`.
    pub fn solutal_block(&self, sc: T) -> T {
        self.l3 * self.l03 - lit::<T>(2.0) * self.l6 * self.l00 * sc.sqrt()
    }
}

pub fn appendix_terms<T: Real>(eta: T, pr: T, sc: T) -> AppendixTerms<T> {
    AppendixTerms::new(eta, pr, sc)
}

pub fn temperature<T: Real>(params: &FlowParameters<T>, pt: EvalPoint<T>) -> T {
    diffusion_front(pt, params.pr())
}

pub fn concentration<T: Real>(params: &FlowParameters<T>, pt: EvalPoint<T>) -> T {
    diffusion_front(pt, params.sc())
}

fn diffusion_front<T: Real>(pt: EvalPoint<T>, number: T) -> T {
    match pt.eta() {
        Ok(eta) => erfc(eta * number.sqrt()),
        Err(_) => T::zero(),
    }
}

/// Velocity field contributed by the plate motion alone (`Gr = Gc = 0`).
pub fn plate_velocity<T: Real>(pt: EvalPoint<T>) -> T {
    match pt.eta() {
        Ok(eta) => {
            let terms = AppendixTerms::new(eta, T::one(), T::one());
            let t = pt.t();
            t * t / lit(3.0) * terms.plate_block()
        }
        Err(_) => T::zero(),
    }
}

pub fn velocity<T: Real>(params: &FlowParameters<T>, pt: EvalPoint<T>) -> Result<T> {
    Ok(AnalyticSolution::new(*params)?.velocity(pt))
}

pub fn profile<T: Real>(
    params: &FlowParameters<T>,
    t: T,
    y_grid: &[T],
    field: FieldKind,
) -> Result<Profile<T>> {
    AnalyticSolution::for_field(*params, field)?.profile(t, y_grid, field)
}

/// A parameter set with its coefficients resolved, ready for repeated evaluation.
///
/// When built through [`AnalyticSolution::new`] all three fields are available.
/// [`AnalyticSolution::for_field`] permits `Pr = 1` or `Sc = 1` when only
/// `T` or `phi` is requested; asking such an instance for `V` yields `NaN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSolution<T> {
    params: FlowParameters<T>,
    coeffs: Option<SolutionCoefficients<T>>,
}

impl<T: Real> AnalyticSolution<T> {
    pub fn new(params: FlowParameters<T>) -> Result<Self> {
        Ok(Self {
            params,
            coeffs: Some(coefficients(&params)?),
        })
    }

    pub fn for_field(params: FlowParameters<T>, field: FieldKind) -> Result<Self> {
        match field {
            FieldKind::Velocity => Self::new(params),
            _ => Ok(Self {
                params,
                coeffs: coefficients(&params).ok(),
            }),
        }
    }

    pub fn params(&self) -> &FlowParameters<T> {
        &self.params
    }

    pub fn coefficients(&self) -> Option<SolutionCoefficients<T>> {
        self.coeffs
    }

    pub fn temperature(&self, pt: EvalPoint<T>) -> T {
        temperature(&self.params, pt)
    }

    pub fn concentration(&self, pt: EvalPoint<T>) -> T {
        concentration(&self.params, pt)
    }

    pub fn velocity(&self, pt: EvalPoint<T>) -> T {
        let Some(SolutionCoefficients { a, b }) = self.coeffs else {
            return T::nan();
        };
        let Ok(eta) = pt.eta() else {
            return T::zero();
        };
        let (pr, sc) = (self.params.pr(), self.params.sc());
        let terms = AppendixTerms::new(eta, pr, sc);
        let t = pt.t();
        t * t / lit(3.0) * terms.plate_block() - (a + b) * t * terms.momentum_block()
            + a * t * terms.thermal_block(pr)
            + b * t * terms.solutal_block(sc)
    }

    pub fn field(&self, field: FieldKind, pt: EvalPoint<T>) -> T {
        match field {
            FieldKind::Velocity => self.velocity(pt),
            FieldKind::Temperature => self.temperature(pt),
            FieldKind::Concentration => self.concentration(pt),
        }
    }

    /// Samples `field` at time `t` on a strictly increasing, non-negative grid.
    pub fn profile(&self, t: T, y_grid: &[T], field: FieldKind) -> Result<Profile<T>> {
        if field == FieldKind::Velocity && self.coeffs.is_none() {
            coefficients(&self.params)?;
        }
        let samples = y_grid
            .iter()
            .map(|&y| Ok((y, self.field(field, EvalPoint::new(y, t)?))))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(t, field, samples)
    }
}
