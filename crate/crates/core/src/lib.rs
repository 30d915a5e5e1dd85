//! Unsteady free convection past an inclined plate started with velocity `v = v0 t'^2`.
//!
//! The crate evaluates the closed-form (Laplace-transform) solution of the
//! dimensionless momentum, energy and species equations
//!
//! ```text
//! dV/dt     = Gr T cos(alpha) + Gc phi cos(alpha) + d2V/dY2
//! Pr dT/dt  = d2T/dY2
//! Sc dphi/dt = d2phi/dY2
//! ```
//!
//! with `V = t^2`, `T = 1`, `phi = 1` at the wall, and checks it against an
//! independent theta-method finite-difference solver of the same system.
//!
//! Modules:
//!
//! - [`model`]: physical and dimensionless inputs, parameter validation.
//! - [`special`]: `erfc`, `exp(-x^2)` and the second iterated `erfc` integral.
//! - [`analytic`]: closed-form `T`, `phi`, `V` and the appendix terms.
//! - [`fdm`]: Crank-Nicolson (theta-method) solver used as verification oracle.
//! - [`verification`]: error norms, residual scans and trend checks.
//! - [`app`]: the command-line front end (configuration, sweeps, CSV/JSON output).
//!
//! All numerical code is generic over [`Real`] (`f32`/`f64`). The accuracy
//! contracts (e.g. `erfc` to 1e-12) are stated for `f64`; the `*F64` aliases
//! below are what the CLI uses.

// `!(x > 0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod app;
pub mod error;
pub mod fdm;
pub mod model;
pub mod special;
pub mod verification;

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use error::{Error, Result};

/// Scalar type accepted by every solver and evaluator in the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub use analytic::{AnalyticSolution, AppendixTerms, SolutionCoefficients};
pub use fdm::{FdmConfig, FdmSolution};
pub use model::{
    DimensionalInputs, DimensionalPoint, EvalPoint, FieldKind, FlowParameters, Profile,
};
pub use verification::{ComparisonReport, Direction, ResidualScan, TrendCheck, VariedParameter};

pub type FlowParametersF64 = FlowParameters<f64>;
pub type FlowParametersF32 = FlowParameters<f32>;
pub type DimensionalInputsF64 = DimensionalInputs<f64>;
pub type EvalPointF64 = EvalPoint<f64>;
pub type EvalPointF32 = EvalPoint<f32>;
pub type ProfileF64 = Profile<f64>;
pub type AnalyticSolutionF64 = AnalyticSolution<f64>;
pub type FdmConfigF64 = FdmConfig<f64>;
pub type FdmSolutionF64 = FdmSolution<f64>;
pub type ComparisonReportF64 = ComparisonReport<f64>;
pub type TrendCheckF64 = TrendCheck<f64>;
