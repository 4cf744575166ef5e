//! Self-convergence studies: run a refinement ladder, measure successive
//! differences in the discrete l2 / l-infinity norms, report rates.
//!
//! Temporal studies fix the grid and halve the time step; the error at level
//! `L` is `||u_L(T) - u_{2L}(T)||`. Spatial studies fix the step count and
//! halve the mesh; the finer solution is restricted to the coarse nodes
//! (nested uniform grids) before differencing. Rates are
//! `log2(e_level / e_{2 level})`.

use rayon::prelude::*;
use serde::Serialize;

use crate::projection::{sine_coefficients, FunctionDescriptor, SineCoefficients};
use crate::stepper::{
    advance_with_data, sample_on_grid_data, DiscreteData, SolverConfig, Source, SpatialFlavor,
};
use crate::weights::TemporalScheme;
use crate::{cast, Error, Real, Result};

/// Discrete `(l2, linf)` norms of `u - v`; `l2` carries the `1/M` weight
/// with `M` the interior-node count.
pub fn norms<T: Real>(u: &[T], v: &[T]) -> Result<(T, T)> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    if u.is_empty() {
        return Err(Error::InvalidDimension(1));
    }
    let mut sq = T::zero();
    let mut mx = T::zero();
    for (&a, &b) in u.iter().zip(v) {
        let d = (a - b).abs();
        sq += d * d;
        if d > mx {
            mx = d;
        }
    }
    Ok(((sq / cast::<T>(u.len() as f64)).sqrt(), mx))
}

/// Values of a fine-grid field (N subintervals, N even) at the nodes of the
/// N/2 grid: every second interior value.
pub fn coarsen_restrict<T: Real>(fine: &[T]) -> Result<Vec<T>> {
    // interior count N - 1 is odd exactly when N is even
    if fine.len() % 2 == 0 {
        return Err(Error::InvalidDimension(fine.len() + 1));
    }
    Ok(fine.iter().skip(1).step_by(2).copied().collect())
}

/// Which resolution the ladder refines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vary {
    Temporal,
    Spatial,
}

impl Vary {
    pub fn label(self) -> &'static str {
        match self {
            Self::Temporal => "temporal",
            Self::Spatial => "spatial",
        }
    }
}

/// One convergence study: data, ladder, and the scheme pairs to run it with.
#[derive(Debug, Clone)]
pub struct ExperimentCase<T> {
    pub id: String,
    pub alpha: T,
    pub t_final: T,
    pub u0: FunctionDescriptor<T>,
    pub source: Option<Source<T>>,
    pub vary: Vary,
    /// The non-varied resolution (N for temporal studies, L for spatial).
    pub fixed: usize,
    /// Refinement ladder, strictly doubling, at least 3 entries; errors are
    /// produced for all but the last entry.
    pub levels: Vec<usize>,
    pub schemes: Vec<(TemporalScheme, SpatialFlavor)>,
    /// Regularity parameter recorded in reports (e.g. ("sigma", 0.3)).
    pub param: Option<(String, T)>,
}

impl<T: Real> ExperimentCase<T> {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(format!("case '{}': {msg}", self.id)));
        if self.id.is_empty() {
            return Err(Error::Config("case id must be nonempty".into()));
        }
        if self.levels.len() < 3 {
            return fail(format!(
                "need at least 3 ladder levels, got {}",
                self.levels.len()
            ));
        }
        for w in self.levels.windows(2) {
            if w[1] != 2 * w[0] {
                return fail(format!("levels must strictly double, got {} after {}", w[1], w[0]));
            }
        }
        if self.levels[0] == 0 {
            return fail("levels must be positive".into());
        }
        if self.fixed < 2 {
            return fail(format!("fixed resolution must be >= 2, got {}", self.fixed));
        }
        if self.schemes.is_empty() {
            return fail("need at least one scheme pair".into());
        }
        if self.vary == Vary::Spatial && self.levels[0] < 2 {
            return fail("spatial levels must be >= 2".into());
        }
        Ok(())
    }
}

/// One ladder entry of a finished study.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RateRow {
    pub level: usize,
    pub e_l2: f64,
    pub rate_l2: Option<f64>,
    pub e_linf: f64,
    pub rate_linf: Option<f64>,
}

/// Finished study for one (case, scheme pair).
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RateReport {
    pub case_id: String,
    /// e.g. "l1bar+central".
    pub scheme: String,
    pub alpha: f64,
    pub vary: String,
    pub param: Option<(String, f64)>,
    pub rows: Vec<RateRow>,
}

/// Runs every scheme pair of the case; levels execute in parallel.
pub fn run_case<T: Real>(case: &ExperimentCase<T>) -> Result<Vec<RateReport>> {
    case.validate()?;
    let mut reports = Vec::with_capacity(case.schemes.len());
    for &(temporal, spatial) in &case.schemes {
        // the modified flavor projects; compute sine coefficients once at
        // the largest grid and truncate per level
        let max_n = match case.vary {
            Vary::Temporal => case.fixed,
            Vary::Spatial => *case.levels.last().unwrap(),
        };
        let projected = match spatial {
            SpatialFlavor::Central => None,
            SpatialFlavor::Modified => {
                let u0c = sine_coefficients(&case.u0, max_n - 1)?;
                let src = match &case.source {
                    None => None,
                    Some(s) => Some((s.time, sine_coefficients(&s.space, max_n - 1)?)),
                };
                Some((u0c, src))
            }
        };
        let finals: Vec<Vec<T>> = case
            .levels
            .par_iter()
            .map(|&level| -> Result<Vec<T>> {
                let (n, l) = match case.vary {
                    Vary::Temporal => (case.fixed, level),
                    Vary::Spatial => (level, case.fixed),
                };
                let data = level_data(case, &projected, n)?;
                let config = SolverConfig {
                    temporal,
                    spatial,
                    space_intervals: n,
                    time_steps: l,
                };
                let traj = advance_with_data(case.alpha, case.t_final, &data, &config)?;
                Ok(traj.states.into_iter().last().unwrap())
            })
            .collect::<Result<_>>()?;
        let mut rows: Vec<RateRow> = Vec::with_capacity(case.levels.len() - 1);
        for i in 0..case.levels.len() - 1 {
            let (e_l2, e_linf) = match case.vary {
                Vary::Temporal => norms(&finals[i], &finals[i + 1])?,
                Vary::Spatial => {
                    let restricted = coarsen_restrict(&finals[i + 1])?;
                    norms(&restricted, &finals[i])?
                }
            };
            let e_l2 = e_l2.to_f64().unwrap_or(f64::NAN);
            let e_linf = e_linf.to_f64().unwrap_or(f64::NAN);
            let (rate_l2, rate_linf) = match rows.last() {
                None => (None, None),
                Some(prev) => (
                    Some((prev.e_l2 / e_l2).log2()),
                    Some((prev.e_linf / e_linf).log2()),
                ),
            };
            rows.push(RateRow {
                level: case.levels[i],
                e_l2,
                rate_l2,
                e_linf,
                rate_linf,
            });
        }
        reports.push(RateReport {
            case_id: case.id.clone(),
            scheme: format!("{}+{}", temporal.label(), spatial.label()),
            alpha: case.alpha.to_f64().unwrap_or(f64::NAN),
            vary: case.vary.label().to_string(),
            param: case
                .param
                .as_ref()
                .map(|(k, v)| (k.clone(), v.to_f64().unwrap_or(f64::NAN))),
            rows,
        });
    }
    Ok(reports)
}

type Projected<T> = Option<(
    SineCoefficients<T>,
    Option<(crate::stepper::TimeFactor<T>, SineCoefficients<T>)>,
)>;

fn level_data<T: Real>(
    case: &ExperimentCase<T>,
    projected: &Projected<T>,
    n: usize,
) -> Result<DiscreteData<T>> {
    match projected {
        None => sample_on_grid_data(&case.u0, case.source.as_ref(), n),
        Some((u0c, src)) => Ok(DiscreteData {
            u0: u0c.synthesize_on_grid(n, n - 1)?,
            source: match src {
                None => None,
                Some((g, c)) => Some((*g, c.synthesize_on_grid(n, n - 1)?)),
            },
        }),
    }
}

/// Output encodings of [`emit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Pretty,
}

/// Renders reports as CSV (long format, one line per level and norm), JSON
/// (schema mirroring [`RateReport`]) or a human-readable table.
pub fn emit(reports: &[RateReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => emit_csv(reports),
        OutputFormat::Json => {
            serde_json::to_string_pretty(reports).expect("reports serialize")
        }
        OutputFormat::Pretty => emit_pretty(reports),
    }
}

fn fmt_param(p: &Option<(String, f64)>) -> String {
    match p {
        None => String::new(),
        Some((k, v)) => format!("{k}={v}"),
    }
}

fn emit_csv(reports: &[RateReport]) -> String {
    let mut out = String::from("case,scheme,alpha,param,norm,level,error,rate\n");
    for r in reports {
        for row in &r.rows {
            for (norm, e, rate) in [
                ("l2", row.e_l2, row.rate_l2),
                ("linf", row.e_linf, row.rate_linf),
            ] {
                let rate = rate.map(|x| format!("{x:.4}")).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{:.6e},{}\n",
                    r.case_id,
                    r.scheme,
                    r.alpha,
                    fmt_param(&r.param),
                    norm,
                    row.level,
                    e,
                    rate
                ));
            }
        }
    }
    out
}

fn emit_pretty(reports: &[RateReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let param = fmt_param(&r.param);
        let param = if param.is_empty() {
            param
        } else {
            format!(", {param}")
        };
        out.push_str(&format!(
            "# {} [{} study, {}, alpha={}{}]\n",
            r.case_id, r.vary, r.scheme, r.alpha, param
        ));
        out.push_str(&format!(
            "{:>8}  {:>13} {:>8}  {:>13} {:>8}\n",
            "level", "l2 error", "rate", "linf error", "rate"
        ));
        for row in &r.rows {
            let fr = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{:>8}  {:>13.6e} {:>8}  {:>13.6e} {:>8}\n",
                row.level,
                row.e_l2,
                fr(row.rate_l2),
                row.e_linf,
                fr(row.rate_linf)
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        let (l2, linf) = norms(&[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!((l2, linf), (1.0, 1.0));
        let (l2, linf) = norms(&[3.0, 4.0], &[0.0, 0.0]).unwrap();
        assert!((l2 - 12.5_f64.sqrt()).abs() < 1e-15);
        assert_eq!(linf, 4.0);
        let (l2, linf) = norms(&[2.0, -1.0], &[2.0, -1.0]).unwrap();
        assert_eq!((l2, linf), (0.0, 0.0));
        assert!(norms(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn restriction_picks_shared_nodes() {
        assert_eq!(coarsen_restrict(&[1.0, 2.0, 3.0]).unwrap(), vec![2.0]);
        assert_eq!(
            coarsen_restrict(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap(),
            vec![2.0, 4.0, 6.0]
        );
        assert!(coarsen_restrict(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn restriction_round_trip() {
        let v = FunctionDescriptor::<f64>::Linear;
        let fine = crate::projection::sample_on_grid(&v, 16).unwrap();
        let coarse = crate::projection::sample_on_grid(&v, 8).unwrap();
        assert_eq!(coarsen_restrict(&fine).unwrap(), coarse);
    }

    fn tiny_case() -> ExperimentCase<f64> {
        ExperimentCase {
            id: "tiny".into(),
            alpha: 0.5,
            t_final: 1.0,
            u0: FunctionDescriptor::characteristic(0.5).unwrap(),
            source: None,
            vary: Vary::Temporal,
            fixed: 16,
            levels: vec![4, 8, 16, 32],
            schemes: vec![(TemporalScheme::L1Bar, SpatialFlavor::Central)],
            param: None,
        }
    }

    #[test]
    fn case_validation() {
        let mut c = tiny_case();
        c.levels = vec![4, 8];
        assert!(run_case(&c).is_err());
        let mut c = tiny_case();
        c.levels = vec![4, 8, 24];
        assert!(run_case(&c).is_err());
        let mut c = tiny_case();
        c.schemes.clear();
        assert!(run_case(&c).is_err());
    }

    #[test]
    fn report_structure_and_determinism() {
        let c = tiny_case();
        let r1 = run_case(&c).unwrap();
        let r2 = run_case(&c).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.len(), 1);
        let rep = &r1[0];
        assert_eq!(rep.rows.len(), 3);
        assert_eq!(rep.scheme, "l1bar+central");
        assert!(rep.rows[0].rate_l2.is_none());
        assert!(rep.rows[1].rate_l2.is_some());
        for row in &rep.rows {
            assert!(row.e_linf >= row.e_l2);
            assert!(row.e_l2.is_finite());
        }
    }

    #[test]
    fn second_order_in_time() {
        let mut c = tiny_case();
        c.fixed = 32;
        c.levels = vec![16, 32, 64, 128];
        let rep = &run_case(&c).unwrap()[0];
        let last = rep.rows.last().unwrap();
        let r = last.rate_l2.unwrap();
        assert!((1.9..2.2).contains(&r), "temporal rate {r}");
    }

    #[test]
    fn emit_csv_structure() {
        let c = tiny_case();
        let reports = run_case(&c).unwrap();
        let csv = emit(&reports, OutputFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "case,scheme,alpha,param,norm,level,error,rate");
        // 3 levels x 2 norms
        assert_eq!(lines.len(), 7);
        // first level has an empty rate field
        assert!(lines[1].starts_with("tiny,l1bar+central,0.5,,l2,4,"));
        assert!(lines[1].ends_with(','));
        assert!(!lines[3].ends_with(','));
        // header-only for no reports
        assert_eq!(
            emit(&[], OutputFormat::Csv),
            "case,scheme,alpha,param,norm,level,error,rate\n"
        );
    }

    #[test]
    fn emit_json_round_trips() {
        let reports = run_case(&tiny_case()).unwrap();
        let json = emit(&reports, OutputFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["case_id"], "tiny");
        assert_eq!(parsed[0]["rows"].as_array().unwrap().len(), 3);
        let pretty = emit(&reports, OutputFormat::Pretty);
        assert!(pretty.contains("# tiny"));
        assert!(pretty.contains("l2 error"));
    }
}
