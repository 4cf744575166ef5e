//! Solvers and experiment tooling for the 1-D time-fractional sub-diffusion
//! equation on (0, 1) with homogeneous Dirichlet boundary conditions,
//!
//! ```text
//! D_t^alpha (u - u0) - u_xx = f,   alpha in (0, 1),
//! ```
//!
//! where `D_t^alpha` is the Riemann--Liouville derivative. Space is
//! discretized by the central finite difference stencil (optionally with the
//! data first projected onto the leading sine modes), time by the averaged L1
//! or averaged second-order backward difference convolution schemes. A
//! contour-quadrature evaluation of the semi-discrete solution kernel serves
//! as a scheme-independent reference, and the [`harness`] module runs
//! self-convergence rate studies over refinement ladders.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait; `f64` aliases for the main entry points live at the crate
//! root.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

pub mod config;
pub mod harness;
pub mod mesh;
pub mod oracle;
pub mod projection;
pub mod special;
pub mod stepper;
pub mod weights;

/// Scalar type the numerical kernels are written against.
pub trait Real:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for converting an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("grid needs at least 2 subintervals, got N={0}")]
    InvalidDimension(usize),
    #[error("vector length {got} does not match {expected} interior nodes")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("non-finite value while evaluating data function at x={0}")]
    Evaluation(f64),
    #[error("solution diverged at time step {step}")]
    Divergence { step: usize },
    #[error("bad experiment configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub use stepper::{SolverConfig, SpatialFlavor};
pub use weights::TemporalScheme;

// f64 entry points.
pub type Grid64 = mesh::Grid<f64>;
pub type TridiagonalOperator64 = mesh::TridiagonalOperator<f64>;
pub type EigenPair64 = mesh::EigenPair<f64>;
pub type FunctionDescriptor64 = projection::FunctionDescriptor<f64>;
pub type SineCoefficients64 = projection::SineCoefficients<f64>;
pub type WeightSequence64 = weights::WeightSequence<f64>;
pub type ProblemSpec64 = stepper::ProblemSpec<f64>;
pub type Trajectory64 = stepper::Trajectory<f64>;
pub type ContourSpec64 = oracle::ContourSpec<f64>;
pub type ExperimentCase64 = harness::ExperimentCase<f64>;
