//! The fully discrete schemes: averaged-L1 / averaged-SBD in time combined
//! with the central stencil in space, applied either to pointwise-sampled
//! data (central flavor) or to `P_N`-projected data (modified flavor).
//!
//! Each step solves
//!
//! ```text
//! (w_0/tau + (3/4) A) u^n = (f^{n-1} + f^n)/2 + (w_0/tau) u^0
//!                           - S_n/tau - (1/4) A u^{n-2},
//! S_n = sum_{k=1}^{n-1} w_k (u^{n-k} - u^0)
//!     - sum_{k=0}^{n-2} w_k (u^{n-1-k} - u^0),
//! ```
//!
//! with the convention `u^{-1} = u^0` (only exercised at `n = 1`). The two
//! history sums are evaluated literally as written; cost is O(L^2 N) total.

use crate::mesh::{build_laplacian, ShiftedTridiagSolver, TridiagonalOperator};
use crate::projection::{project_pn_on_grid, sample_on_grid, FunctionDescriptor};
use crate::weights::{weights, TemporalScheme};
use crate::{cast, Error, Real, Result};

/// How the data enter the spatial discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpatialFlavor {
    /// Pointwise samples at the interior nodes.
    Central,
    /// Data projected onto the leading `N - 1` sine modes first.
    Modified,
}

impl SpatialFlavor {
    pub fn label(self) -> &'static str {
        match self {
            Self::Central => "central",
            Self::Modified => "modified",
        }
    }
}

/// Scalar-in-time factor of a separable source `f(x, t) = g(t) psi(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeFactor<T> {
    /// `g(t) = 1`.
    One,
    /// `g(t) = (1 + t)^p`.
    ShiftedPower(T),
}

impl<T: Real> TimeFactor<T> {
    pub fn eval(&self, t: T) -> T {
        match self {
            Self::One => T::one(),
            Self::ShiftedPower(p) => (T::one() + t).powf(*p),
        }
    }
}

/// Separable source term.
#[derive(Debug, Clone)]
pub struct Source<T> {
    pub time: TimeFactor<T>,
    pub space: FunctionDescriptor<T>,
}

/// Continuous problem: order, horizon, initial data, optional source.
#[derive(Debug, Clone)]
pub struct ProblemSpec<T> {
    pub alpha: T,
    pub t_final: T,
    pub initial: FunctionDescriptor<T>,
    pub source: Option<Source<T>>,
}

impl<T: Real> ProblemSpec<T> {
    pub fn homogeneous(alpha: T, t_final: T, initial: FunctionDescriptor<T>) -> Self {
        Self {
            alpha,
            t_final,
            initial,
            source: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > T::zero() && self.alpha < T::one()) {
            return Err(Error::Domain(format!(
                "fractional order must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !(self.t_final > T::zero()) {
            return Err(Error::Domain(format!(
                "final time must be positive, got {}",
                self.t_final
            )));
        }
        Ok(())
    }
}

/// Discretization parameters: scheme pair and resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolverConfig {
    pub temporal: TemporalScheme,
    pub spatial: SpatialFlavor,
    /// Space subintervals `N` (so `h = 1/N`).
    pub space_intervals: usize,
    /// Time steps `L` (so `tau = T/L`).
    pub time_steps: usize,
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.space_intervals < 2 {
            return Err(Error::InvalidDimension(self.space_intervals));
        }
        if self.time_steps == 0 {
            return Err(Error::Domain("need at least one time step".into()));
        }
        Ok(())
    }
}

/// Grid-ready data: initial vector and the spatial factor of the source.
#[derive(Debug, Clone)]
pub struct DiscreteData<T> {
    pub u0: Vec<T>,
    /// Separable source, spatial factor already on the grid.
    pub source: Option<(TimeFactor<T>, Vec<T>)>,
}

/// Samples or projects the problem data per the spatial flavor.
pub fn discretize_data<T: Real>(
    problem: &ProblemSpec<T>,
    config: &SolverConfig,
) -> Result<DiscreteData<T>> {
    config.validate()?;
    let n = config.space_intervals;
    let on_grid = |v: &FunctionDescriptor<T>| match config.spatial {
        SpatialFlavor::Central => sample_on_grid(v, n),
        SpatialFlavor::Modified => project_pn_on_grid(v, n),
    };
    let u0 = on_grid(&problem.initial)?;
    let source = match &problem.source {
        None => None,
        Some(s) => Some((s.time, on_grid(&s.space)?)),
    };
    Ok(DiscreteData { u0, source })
}

/// Pointwise-sampled data (the central flavor's discretization) without
/// going through a full [`ProblemSpec`].
pub fn sample_on_grid_data<T: Real>(
    u0: &FunctionDescriptor<T>,
    source: Option<&Source<T>>,
    n: usize,
) -> Result<DiscreteData<T>> {
    Ok(DiscreteData {
        u0: sample_on_grid(u0, n)?,
        source: match source {
            None => None,
            Some(s) => Some((s.time, sample_on_grid(&s.space, n)?)),
        },
    })
}

/// Factored per-step system `(w0/tau) I + (3/4) A`.
pub fn step_matrix<T: Real>(
    op: &TridiagonalOperator<T>,
    w0: T,
    tau: T,
) -> Result<ShiftedTridiagSolver<T>> {
    if !(w0 > T::zero()) {
        return Err(Error::Domain(format!(
            "leading weight must be positive, got {w0}"
        )));
    }
    ShiftedTridiagSolver::new(op, w0 / tau, cast::<T>(0.75))
}

/// Full time history `u^0 .. u^L` of one run.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub tau: T,
    /// States at `t_0 .. t_L`, each of length `N - 1`.
    pub states: Vec<Vec<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn final_state(&self) -> &[T] {
        self.states.last().expect("at least the initial state")
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// Discretizes the data and advances the scheme over all steps.
pub fn advance<T: Real>(problem: &ProblemSpec<T>, config: &SolverConfig) -> Result<Trajectory<T>> {
    problem.validate()?;
    let data = discretize_data(problem, config)?;
    advance_with_data(problem.alpha, problem.t_final, &data, config)
}

/// Advances from already-discretized data (lets callers reuse projections
/// across refinement levels).
pub fn advance_with_data<T: Real>(
    alpha: T,
    t_final: T,
    data: &DiscreteData<T>,
    config: &SolverConfig,
) -> Result<Trajectory<T>> {
    config.validate()?;
    let n_space = config.space_intervals;
    let steps = config.time_steps;
    let m = n_space - 1;
    if data.u0.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: data.u0.len(),
        });
    }
    if let Some((_, psi)) = &data.source {
        if psi.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: psi.len(),
            });
        }
    }
    let tau = t_final / cast::<T>(steps as f64);
    let w = weights(config.temporal, alpha, tau, steps)?.values;
    let op = build_laplacian::<T>(n_space)?;
    let solver = step_matrix(&op, w[0], tau)?;

    let half = cast::<T>(0.5);
    let quarter = cast::<T>(0.25);
    let w0_tau = w[0] / tau;
    let u0 = &data.u0;

    // v[j] = u^j - u^0
    let mut v: Vec<Vec<T>> = Vec::with_capacity(steps + 1);
    v.push(vec![T::zero(); m]);
    let mut states: Vec<Vec<T>> = Vec::with_capacity(steps + 1);
    states.push(u0.clone());

    let time_factor = |j: usize| -> T {
        match &data.source {
            Some((g, _)) => g.eval(tau * cast::<T>(j as f64)),
            None => T::zero(),
        }
    };

    let mut hist = vec![T::zero(); m];
    let mut au = vec![T::zero(); m];
    for n in 1..=steps {
        // history sums, written out literally
        for h in hist.iter_mut() {
            *h = T::zero();
        }
        for k in 1..n {
            let wk = w[k];
            for (h, &vi) in hist.iter_mut().zip(&v[n - k]) {
                *h += wk * vi;
            }
        }
        for k in 0..n.saturating_sub(1) {
            let wk = w[k];
            for (h, &vi) in hist.iter_mut().zip(&v[n - 1 - k]) {
                *h -= wk * vi;
            }
        }
        // u^{n-2}, reading u^{-1} = u^0 at n = 1
        let un2: &[T] = if n >= 2 { &states[n - 2] } else { u0 };
        op.apply_into(un2, &mut au);
        let f_avg = half * (time_factor(n - 1) + time_factor(n));
        let mut rhs = vec![T::zero(); m];
        for i in 0..m {
            rhs[i] = w0_tau * u0[i] - hist[i] / tau - quarter * au[i];
            if let Some((_, psi)) = &data.source {
                rhs[i] += f_avg * psi[i];
            }
        }
        solver.solve_in_place(&mut rhs);
        if rhs.iter().any(|x| !x.is_finite()) {
            return Err(Error::Divergence { step: n });
        }
        v.push(rhs.iter().zip(u0).map(|(&u, &z)| u - z).collect());
        states.push(rhs);
    }
    Ok(Trajectory { tau, states })
}

/// The identical recurrence with the operator replaced by a scalar
/// `lambda > 0`; eigen-diagonalized oracle for [`advance_with_data`].
/// `f` holds source values at `t_0 .. t_L` (empty means zero source).
pub fn scalar_reduce<T: Real>(
    scheme: TemporalScheme,
    alpha: T,
    tau: T,
    lambda: T,
    steps: usize,
    u0: T,
    f: &[T],
) -> Result<Vec<T>> {
    if !(lambda > T::zero()) {
        return Err(Error::Domain(format!(
            "scalar reduction needs lambda > 0, got {lambda}"
        )));
    }
    if !f.is_empty() && f.len() != steps + 1 {
        return Err(Error::DimensionMismatch {
            expected: steps + 1,
            got: f.len(),
        });
    }
    let w = weights(scheme, alpha, tau, steps)?.values;
    let half = cast::<T>(0.5);
    let quarter = cast::<T>(0.25);
    let three_quarter = cast::<T>(0.75);
    let w0_tau = w[0] / tau;
    let f_at = |j: usize| if f.is_empty() { T::zero() } else { f[j] };
    let mut u = Vec::with_capacity(steps + 1);
    u.push(u0);
    let mut v = vec![T::zero()];
    for n in 1..=steps {
        let mut hist = T::zero();
        for k in 1..n {
            hist += w[k] * v[n - k];
        }
        for k in 0..n.saturating_sub(1) {
            hist -= w[k] * v[n - 1 - k];
        }
        let un2 = if n >= 2 { u[n - 2] } else { u0 };
        let rhs = half * (f_at(n - 1) + f_at(n)) + w0_tau * u0 - hist / tau
            - quarter * lambda * un2;
        let un = rhs / (w0_tau + three_quarter * lambda);
        u.push(un);
        v.push(un - u0);
    }
    Ok(u)
}
