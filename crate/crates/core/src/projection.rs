//! Sine-series coefficients of the data functions, the spectral projection
//! `P_N` used by the modified spatial scheme, and pointwise grid sampling.
//!
//! Coefficients `(v, phi_k)` with `phi_k(x) = sqrt(2) sin(k pi x)` are taken
//! from closed forms where one exists (linear, characteristic, sine modes)
//! and otherwise from composite Gauss--Legendre quadrature on panels graded
//! geometrically (ratio 1/2) toward the known algebraic singular points. The
//! graded integrals are evaluated in the distance-to-singularity coordinate,
//! so panels of width far below machine epsilon relative to the singular
//! abscissa stay meaningful.

use std::fmt;
use std::sync::Arc;

use crate::special::GL16;
use crate::{cast, mesh::Grid, Error, Real, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

/// Depth target for graded panels: refinement stops once
/// `width^e <= STUB_TOL` for the relevant exponent `e`.
const STUB_TOL: f64 = 1e-14;

/// Data functions on (0, 1) the solvers accept.
#[derive(Clone)]
pub enum FunctionDescriptor<T> {
    /// Identically zero.
    Zero,
    /// `v(x) = x`.
    Linear,
    /// `phi_m(x) = sqrt(2) sin(m pi x)`, `m >= 1`.
    SineMode(usize),
    /// `chi_{x > a}`, strict at the jump (`v(a) = 0`).
    Characteristic(T),
    /// `(0.25^2 - (x - 0.5)^2)^sigma` on `|x - 0.5| < 0.25`, else 0.
    PowerBump(T),
    /// `(x - 0.5)^{-gamma} chi_{x > 0.5}`.
    SingularPower(T),
    /// Arbitrary callable; quadrature falls back to uniform panels.
    Custom(Arc<dyn Fn(T) -> T + Send + Sync>),
}

impl<T: fmt::Debug> fmt::Debug for FunctionDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "Zero"),
            Self::Linear => write!(f, "Linear"),
            Self::SineMode(m) => write!(f, "SineMode({m})"),
            Self::Characteristic(a) => write!(f, "Characteristic({a:?})"),
            Self::PowerBump(s) => write!(f, "PowerBump({s:?})"),
            Self::SingularPower(g) => write!(f, "SingularPower({g:?})"),
            Self::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl<T: Real> FunctionDescriptor<T> {
    pub fn sine_mode(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("sine mode index must be >= 1".into()));
        }
        Ok(Self::SineMode(m))
    }

    pub fn characteristic(a: T) -> Result<Self> {
        if !(a >= T::zero() && a <= T::one()) {
            return Err(Error::Domain(format!(
                "characteristic jump must lie in [0, 1], got {a}"
            )));
        }
        Ok(Self::Characteristic(a))
    }

    /// `sigma > 0` so the bump is continuous.
    pub fn power_bump(sigma: T) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::Domain(format!(
                "power bump exponent must be positive, got {sigma}"
            )));
        }
        Ok(Self::PowerBump(sigma))
    }

    /// `0 < gamma < 1/2` keeps the function square-integrable.
    pub fn singular_power(gamma: T) -> Result<Self> {
        if !(gamma > T::zero() && gamma < cast::<T>(0.5)) {
            return Err(Error::Domain(format!(
                "singular power exponent must lie in (0, 0.5), got {gamma}"
            )));
        }
        Ok(Self::SingularPower(gamma))
    }

    pub fn custom(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(f))
    }

    /// Pointwise value; finite everywhere except `SingularPower` at `x = 0.5`
    /// approached from the right (and even there the strict `chi` gives 0 at
    /// the point itself).
    pub fn eval(&self, x: T) -> T {
        let half = cast::<T>(0.5);
        match self {
            Self::Zero => T::zero(),
            Self::Linear => x,
            Self::SineMode(m) => {
                cast::<T>(SQRT2) * (cast::<T>(*m as f64) * cast::<T>(PI) * x).sin()
            }
            Self::Characteristic(a) => {
                if x > *a {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Self::PowerBump(sigma) => {
                let d = (x - half).abs();
                let quarter = cast::<T>(0.25);
                if d < quarter {
                    ((quarter - d) * (quarter + d)).powf(*sigma)
                } else {
                    T::zero()
                }
            }
            Self::SingularPower(g) => {
                if x > half {
                    (x - half).powf(-*g)
                } else {
                    T::zero()
                }
            }
            Self::Custom(f) => f(x),
        }
    }
}

/// Truncated sine-series coefficients `(v, phi_k)`, `k = 1..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineCoefficients<T> {
    values: Vec<T>,
}

impl<T: Real> SineCoefficients<T> {
    pub fn from_values(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn truncation(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Coefficient for mode `k` (1-based); 0 beyond the truncation.
    pub fn get(&self, k: usize) -> T {
        if k >= 1 && k <= self.values.len() {
            self.values[k - 1]
        } else {
            T::zero()
        }
    }

    /// `sum_{k<=modes} (v, phi_k) phi_k(x_i)` at the interior nodes of the
    /// `N`-subinterval grid. `modes` must be within the truncation.
    pub fn synthesize_on_grid(&self, n: usize, modes: usize) -> Result<Vec<T>> {
        if modes > self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                got: modes,
            });
        }
        let grid = Grid::<T>::new(n)?;
        let sqrt2 = cast::<T>(SQRT2);
        let pi = cast::<T>(PI);
        let out = grid
            .interior()
            .map(|x| {
                let mut acc = T::zero();
                for (idx, &c) in self.values[..modes].iter().enumerate() {
                    let k = cast::<T>((idx + 1) as f64);
                    acc += c * sqrt2 * (k * pi * x).sin();
                }
                acc
            })
            .collect();
        Ok(out)
    }
}

/// First `K` sine coefficients of `v`; closed forms where available,
/// graded-panel quadrature otherwise.
pub fn sine_coefficients<T: Real>(
    v: &FunctionDescriptor<T>,
    big_k: usize,
) -> Result<SineCoefficients<T>> {
    if big_k == 0 {
        return Err(Error::Domain("truncation length must be >= 1".into()));
    }
    let mut values = Vec::with_capacity(big_k);
    for k in 1..=big_k {
        values.push(sine_coefficient(v, k)?);
    }
    Ok(SineCoefficients { values })
}

/// Single coefficient `(v, phi_k)` through the same dispatch as
/// [`sine_coefficients`].
pub fn sine_coefficient<T: Real>(v: &FunctionDescriptor<T>, k: usize) -> Result<T> {
    let sqrt2 = cast::<T>(SQRT2);
    let pi = cast::<T>(PI);
    let kf = cast::<T>(k as f64);
    match v {
        FunctionDescriptor::Zero => Ok(T::zero()),
        FunctionDescriptor::SineMode(m) => Ok(if *m == k { T::one() } else { T::zero() }),
        // integration by parts: sqrt2 (-1)^{k+1} / (k pi)
        FunctionDescriptor::Linear => {
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            Ok(sign * sqrt2 / (kf * pi))
        }
        // antiderivative of sin over [a, 1]
        FunctionDescriptor::Characteristic(a) => {
            Ok(sqrt2 * ((kf * pi * *a).cos() - (kf * pi).cos()) / (kf * pi))
        }
        _ => sine_coefficient_quadrature(v, k),
    }
}

/// Quadrature evaluation of `(v, phi_k)` for every descriptor kind, bypassing
/// the closed forms; used as the independent cross-check path.
pub fn sine_coefficient_quadrature<T: Real>(v: &FunctionDescriptor<T>, k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::Domain("mode index must be >= 1".into()));
    }
    let sqrt2 = cast::<T>(SQRT2);
    let pi = cast::<T>(PI);
    let kf = cast::<T>(k as f64);
    let half = cast::<T>(0.5);
    let quarter = cast::<T>(0.25);
    // each panel sees at most half a sine period
    let cap = T::one() / (cast::<T>(4.0) * kf);
    match v {
        FunctionDescriptor::Zero => Ok(T::zero()),
        FunctionDescriptor::Linear => Ok(smooth_panels(T::zero(), T::one(), cap, |x| {
            x * sqrt2 * (kf * pi * x).sin()
        })),
        FunctionDescriptor::SineMode(m) => {
            let mf = cast::<T>(*m as f64);
            // resolve the finer of the two oscillations
            let cap = cap.min(T::one() / (cast::<T>(4.0) * mf));
            Ok(smooth_panels(T::zero(), T::one(), cap, |x| {
                sqrt2 * (mf * pi * x).sin() * sqrt2 * (kf * pi * x).sin()
            }))
        }
        FunctionDescriptor::Characteristic(a) => Ok(smooth_panels(*a, T::one(), cap, |x| {
            sqrt2 * (kf * pi * x).sin()
        })),
        FunctionDescriptor::PowerBump(sigma) => {
            // split at the center; on each half integrate in the distance `s`
            // from the bump edge, where the integrand is (s(0.5 - s))^sigma
            // times the oscillation, graded toward s = 0
            let expo = sigma.min(T::one());
            let left = graded_from_zero(quarter, expo, cap, None, |s| {
                (s * (half - s)).powf(*sigma) * sqrt2 * (kf * pi * (quarter + s)).sin()
            });
            let right = graded_from_zero(quarter, expo, cap, None, |s| {
                (s * (half - s)).powf(*sigma)
                    * sqrt2
                    * (kf * pi * (cast::<T>(0.75) - s)).sin()
            });
            Ok(left + right)
        }
        FunctionDescriptor::SingularPower(g) => {
            // s = x - 1/2 in (0, 1/2]; integrand s^{-g} sin(k pi (1/2 + s)).
            // The innermost stub [0, w] uses the two-term expansion
            // sin(k pi (1/2 + s)) ~ sin(k pi/2) + k pi cos(k pi/2) s.
            let expo = T::one() - *g;
            let sk = (kf * pi * half).sin();
            let ck = (kf * pi * half).cos();
            let one = T::one();
            let two = cast::<T>(2.0);
            let stub = move |w: T| {
                sqrt2
                    * (sk * w.powf(one - *g) / (one - *g)
                        + kf * pi * ck * w.powf(two - *g) / (two - *g))
            };
            Ok(graded_from_zero(half, expo, cap, Some(&stub), |s| {
                s.powf(-*g) * sqrt2 * (kf * pi * (half + s)).sin()
            }))
        }
        FunctionDescriptor::Custom(f) => {
            let mut bad: Option<T> = None;
            let val = smooth_panels(T::zero(), T::one(), cap, |x| {
                let y = f(x);
                if !y.is_finite() && bad.is_none() {
                    bad = Some(x);
                }
                y * sqrt2 * (kf * pi * x).sin()
            });
            match bad {
                Some(x) => Err(Error::Evaluation(x.to_f64().unwrap_or(f64::NAN))),
                None => Ok(val),
            }
        }
    }
}

/// Composite 16-point Gauss--Legendre on uniform panels of width <= cap.
fn smooth_panels<T: Real>(a: T, b: T, cap: T, mut f: impl FnMut(T) -> T) -> T {
    if b <= a {
        return T::zero();
    }
    let len = b - a;
    let count = (len / cap).ceil().to_f64().unwrap_or(1.0).max(1.0) as usize;
    let width = len / cast::<T>(count as f64);
    let mut acc = T::zero();
    for i in 0..count {
        let lo = a + width * cast::<T>(i as f64);
        acc += gl16(lo, lo + width, &mut f);
    }
    acc
}

/// Integral over (0, len] of a function with an algebraic singularity (or
/// loss of smoothness) at 0: geometric bisection toward 0 until
/// `width^expo <= STUB_TOL`, each outer panel subdivided to respect `cap`.
/// The final stub [0, w] uses `stub(w)` when given, else plain Gauss (whose
/// open nodes tolerate an integrable endpoint singularity at this width).
fn graded_from_zero<T: Real>(
    len: T,
    expo: T,
    cap: T,
    stub: Option<&dyn Fn(T) -> T>,
    mut f: impl FnMut(T) -> T,
) -> T {
    let tol = cast::<T>(STUB_TOL);
    let floor = cast::<T>(1e-280);
    let half = cast::<T>(0.5);
    let mut acc = T::zero();
    let mut w = len;
    while w.powf(expo) > tol && w > floor {
        let lo = w * half;
        acc += smooth_panels(lo, w, cap, &mut f);
        w = lo;
    }
    acc + match stub {
        Some(s) => s(w),
        None => gl16(T::zero(), w, &mut f),
    }
}

fn gl16<T: Real>(a: T, b: T, f: &mut impl FnMut(T) -> T) -> T {
    let half = cast::<T>(0.5);
    let mid = half * (a + b);
    let rad = half * (b - a);
    let mut acc = T::zero();
    for &(x, w) in GL16.iter() {
        acc += cast::<T>(w) * f(mid + rad * cast::<T>(x));
    }
    acc * rad
}

/// `[(P_N v)(x_i)]_{i=1..N-1}`: sine coefficients to `K = N - 1` followed by
/// synthesis at the interior nodes.
pub fn project_pn_on_grid<T: Real>(v: &FunctionDescriptor<T>, n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    sine_coefficients(v, n - 1)?.synthesize_on_grid(n, n - 1)
}

/// Pointwise samples `[v(x_i)]_{i=1..N-1}`.
pub fn sample_on_grid<T: Real>(v: &FunctionDescriptor<T>, n: usize) -> Result<Vec<T>> {
    let grid = Grid::<T>::new(n)?;
    let mut out = Vec::with_capacity(n - 1);
    for x in grid.interior() {
        let y = v.eval(x);
        if !y.is_finite() {
            return Err(Error::Evaluation(x.to_f64().unwrap_or(f64::NAN)));
        }
        out.push(y);
    }
    Ok(out)
}
