//! Convolution weights of the averaged-L1 and averaged-SBD time schemes.
//!
//! Averaged L1: `d_0 = b_0`, `d_k = b_k - b_{k-1}` with
//! `b_k = tau^{1-alpha} ((k+1)^{2-alpha} - k^{2-alpha}) / Gamma(3-alpha)`.
//!
//! Averaged SBD: power-series coefficients of
//! `((3/2 - 2 xi + xi^2/2) / tau)^{alpha-1}`, generated by the J.C.P. Miller
//! recurrence for powers of a polynomial.
//!
//! Both families obey the exact scaling `w_k(alpha, tau) =
//! tau^{1-alpha} w_k(alpha, 1)`; the base sequence is computed at `tau = 1`
//! and the prefactor applied once.

use crate::special::gamma;
use crate::{cast, Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TemporalScheme {
    /// Averaged L1.
    L1Bar,
    /// Averaged second-order backward difference.
    SbdBar,
}

impl TemporalScheme {
    pub fn label(self) -> &'static str {
        match self {
            Self::L1Bar => "l1bar",
            Self::SbdBar => "sbdbar",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T> {
    pub alpha: T,
    pub tau: T,
    pub scheme: TemporalScheme,
    /// `w_0 .. w_{n-1}`.
    pub values: Vec<T>,
}

fn check_params<T: Real>(alpha: T, tau: T, n: usize) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!(
            "fractional order must lie in (0, 1), got {alpha}"
        )));
    }
    if !(tau > T::zero()) {
        return Err(Error::Domain(format!(
            "time step must be positive, got {tau}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("weight count must be >= 1".into()));
    }
    Ok(())
}

pub fn l1bar_weights<T: Real>(alpha: T, tau: T, n: usize) -> Result<WeightSequence<T>> {
    check_params(alpha, tau, n)?;
    let scale = tau.powf(T::one() - alpha);
    let inv_gamma = T::one() / gamma(cast::<T>(3.0) - alpha);
    let p = cast::<T>(2.0) - alpha;
    // b_k at tau = 1
    let b = |k: usize| {
        let kf = cast::<T>(k as f64);
        ((kf + T::one()).powf(p) - kf.powf(p)) * inv_gamma
    };
    let mut values = Vec::with_capacity(n);
    let mut prev = b(0);
    values.push(scale * prev);
    for k in 1..n {
        let bk = b(k);
        values.push(scale * (bk - prev));
        prev = bk;
    }
    Ok(WeightSequence {
        alpha,
        tau,
        scheme: TemporalScheme::L1Bar,
        values,
    })
}

pub fn sbd_weights<T: Real>(alpha: T, tau: T, n: usize) -> Result<WeightSequence<T>> {
    check_params(alpha, tau, n)?;
    let scale = tau.powf(T::one() - alpha);
    // Miller recurrence for (c_0 + c_1 xi + c_2 xi^2)^p at tau = 1:
    // g_0 = c_0^p, g_m = (1/(m c_0)) sum_{j=1}^{min(m,2)} ((p+1) j - m) c_j g_{m-j}
    let c0 = cast::<T>(1.5);
    let c1 = cast::<T>(-2.0);
    let c2 = cast::<T>(0.5);
    let p = alpha - T::one();
    let mut g = Vec::with_capacity(n);
    g.push(c0.powf(p));
    for m in 1..n {
        let mf = cast::<T>(m as f64);
        let mut acc = ((p + T::one()) - mf) * c1 * g[m - 1];
        if m >= 2 {
            acc += ((p + T::one()) * cast::<T>(2.0) - mf) * c2 * g[m - 2];
        }
        g.push(acc / (mf * c0));
    }
    for v in &mut g {
        *v *= scale;
    }
    Ok(WeightSequence {
        alpha,
        tau,
        scheme: TemporalScheme::SbdBar,
        values: g,
    })
}

/// Weights for either scheme.
pub fn weights<T: Real>(
    scheme: TemporalScheme,
    alpha: T,
    tau: T,
    n: usize,
) -> Result<WeightSequence<T>> {
    match scheme {
        TemporalScheme::L1Bar => l1bar_weights(alpha, tau, n),
        TemporalScheme::SbdBar => sbd_weights(alpha, tau, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(l1bar_weights(0.0_f64, 1.0, 4).is_err());
        assert!(l1bar_weights(1.0_f64, 1.0, 4).is_err());
        assert!(sbd_weights(0.5_f64, 0.0, 4).is_err());
        assert!(sbd_weights(0.5_f64, 1.0, 0).is_err());
    }

    #[test]
    fn l1bar_leading_values() {
        // b_0 = 1/Gamma(2.5), d_1 = b_1 - b_0
        let w = l1bar_weights(0.5_f64, 1.0, 4).unwrap();
        assert!((w.values[0] - 0.752_252_778_063_675).abs() < 1e-12);
        // d_1 = b_1 - b_0 = (2^{1.5} - 2)/Gamma(2.5)
        let d1 = (2.0_f64.powf(1.5) - 2.0) / gamma(2.5);
        assert!((w.values[1] - d1).abs() < 1e-13);
        assert!((w.values[1] - 0.623_187).abs() < 1e-6);
        // b_k increasing (convex k^{2-alpha}) makes every d_k positive
        let long = l1bar_weights(0.3_f64, 0.01, 200).unwrap();
        assert!(long.values.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn l1bar_telescoping() {
        for alpha in [0.1_f64, 0.5, 0.9] {
            let n = 300;
            let w = l1bar_weights(alpha, 1.0, n).unwrap();
            let inv_g = 1.0 / gamma(3.0 - alpha);
            let mut partial = 0.0;
            for m in 0..n {
                partial += w.values[m];
                let bm = ((m as f64 + 1.0).powf(2.0 - alpha) - (m as f64).powf(2.0 - alpha))
                    * inv_g;
                assert!(partial > 0.0);
                assert!(
                    (partial - bm).abs() <= 1e-13 * bm,
                    "alpha={alpha} m={m}: {partial} vs {bm}"
                );
            }
        }
    }

    #[test]
    fn sbd_leading_values() {
        let w = sbd_weights(0.5_f64, 1.0, 4).unwrap();
        let g0 = 1.5_f64.powf(-0.5);
        assert!((w.values[0] - g0).abs() < 1e-15);
        // g_1 = p * c1/c0 * g_0 with p = -1/2
        let g1 = -0.5 * (-2.0 / 1.5) * g0;
        assert!((w.values[1] - g1).abs() < 1e-15);
        assert!((w.values[1] - 0.544_331_053_951_817).abs() < 1e-12);
    }

    #[test]
    fn sbd_generating_function_partial_sum() {
        // sum g_k xi^k at xi = 1/2 approximates (3/2 - 1 + 1/8)^{alpha-1}
        for alpha in [0.25_f64, 0.5, 0.75] {
            let w = sbd_weights(alpha, 1.0, 128).unwrap();
            let mut acc = 0.0;
            let mut xi_k = 1.0;
            for &g in &w.values {
                acc += g * xi_k;
                xi_k *= 0.5;
            }
            let exact = 0.625_f64.powf(alpha - 1.0);
            assert!(
                (acc - exact).abs() <= 1e-8,
                "alpha={alpha}: {acc} vs {exact}"
            );
        }
    }

    #[test]
    fn miller_matches_composition_oracle() {
        // independent oracle via the exact factorization
        // 3/2 - 2 xi + xi^2/2 = (3/2)(1 - xi)(1 - xi/3):
        // the generating function is 1.5^p (1-xi)^p (1-xi/3)^p, a product
        // of two binomial series whose coefficients are all positive for
        // p in (-1, 0), so the convolution is cancellation-free
        let n = 256;
        for tenths in 1..=9 {
            let alpha = tenths as f64 / 10.0;
            let p = alpha - 1.0;
            // binomial(p, j) (-1)^j, recurrence prev * (j - 1 - p)/j
            let mut a = vec![1.0_f64; n];
            let mut b = vec![1.0_f64; n];
            for j in 1..n {
                let c = (j as f64 - 1.0 - p) / j as f64;
                a[j] = a[j - 1] * c;
                b[j] = b[j - 1] * c / 3.0;
            }
            let scale = 1.5_f64.powf(p);
            let miller = sbd_weights(alpha, 1.0, n).unwrap();
            for k in 0..n {
                let conv: f64 = (0..=k).map(|j| a[j] * b[k - j]).sum();
                let oracle = scale * conv;
                let denom = oracle.abs().max(1e-30);
                assert!(
                    (miller.values[k] - oracle).abs() / denom <= 1e-11,
                    "alpha={alpha} k={k}: {} vs {oracle}",
                    miller.values[k]
                );
            }
        }
    }

    #[test]
    fn tau_scaling_law() {
        for scheme in [TemporalScheme::L1Bar, TemporalScheme::SbdBar] {
            for alpha in [0.2_f64, 0.7] {
                let tau = 1.0 / 64.0;
                let base = weights(scheme, alpha, 1.0, 32).unwrap();
                let scaled = weights(scheme, alpha, tau, 32).unwrap();
                let factor = tau.powf(1.0 - alpha);
                for (s, b) in scaled.values.iter().zip(&base.values) {
                    let expect = factor * b;
                    assert!((s - expect).abs() <= 1e-14 * expect.abs().max(1e-300));
                }
            }
        }
    }
}
