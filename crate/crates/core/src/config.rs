//! Experiment-case configuration: a flat `key = value` text format plus the
//! built-in study definitions (`table1` .. `table8`).
//!
//! Grammar (see the repository README for the full description):
//!
//! ```text
//! # comment
//! [case]
//! id       = table1/alpha=0.2
//! alpha    = 0.2
//! temporal = l1bar            # l1bar | sbdbar
//! spatial  = central          # central | modified
//! vary     = temporal         # temporal | spatial
//! fixed    = 512
//! levels   = 32 64 128 256 512 1024
//! u0       = characteristic 0.5
//! source   = none             # or: shifted_power <p> <descriptor>
//! t_final  = 1.0              # optional, default 1
//! param    = sigma 0.3        # optional report metadata
//! ```
//!
//! Descriptors: `zero`, `linear`, `sine_mode <k>`, `characteristic <a>`,
//! `power_bump <sigma>`, `singular_power <gamma>`.

use crate::harness::{ExperimentCase, Vary};
use crate::projection::FunctionDescriptor;
use crate::stepper::{Source, SpatialFlavor, TimeFactor};
use crate::weights::TemporalScheme;
use crate::{Error, Result};

fn cfg_err(line: usize, msg: impl AsRef<str>) -> Error {
    Error::Config(format!("line {line}: {}", msg.as_ref()))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| cfg_err(line, format!("expected a number, got '{tok}'")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| cfg_err(line, format!("expected an integer, got '{tok}'")))
}

fn parse_descriptor(tokens: &[&str], line: usize) -> Result<FunctionDescriptor<f64>> {
    let arg = |idx: usize| -> Result<f64> {
        tokens
            .get(idx)
            .ok_or_else(|| cfg_err(line, "descriptor is missing its parameter"))
            .and_then(|t| parse_f64(t, line))
    };
    let expect_len = |n: usize| -> Result<()> {
        if tokens.len() != n {
            return Err(cfg_err(
                line,
                format!("descriptor '{}' takes {} token(s)", tokens[0], n),
            ));
        }
        Ok(())
    };
    match *tokens.first().ok_or_else(|| cfg_err(line, "empty descriptor"))? {
        "zero" => {
            expect_len(1)?;
            Ok(FunctionDescriptor::Zero)
        }
        "linear" => {
            expect_len(1)?;
            Ok(FunctionDescriptor::Linear)
        }
        "sine_mode" => {
            expect_len(2)?;
            FunctionDescriptor::sine_mode(parse_usize(tokens[1], line)?)
        }
        "characteristic" => {
            expect_len(2)?;
            FunctionDescriptor::characteristic(arg(1)?)
        }
        "power_bump" => {
            expect_len(2)?;
            FunctionDescriptor::power_bump(arg(1)?)
        }
        "singular_power" => {
            expect_len(2)?;
            FunctionDescriptor::singular_power(arg(1)?)
        }
        other => Err(cfg_err(line, format!("unknown descriptor '{other}'"))),
    }
}

fn parse_source(tokens: &[&str], line: usize) -> Result<Option<Source<f64>>> {
    match *tokens.first().ok_or_else(|| cfg_err(line, "empty source"))? {
        "none" => Ok(None),
        "shifted_power" => {
            if tokens.len() < 3 {
                return Err(cfg_err(line, "source needs: shifted_power <p> <descriptor>"));
            }
            Ok(Some(Source {
                time: TimeFactor::ShiftedPower(parse_f64(tokens[1], line)?),
                space: parse_descriptor(&tokens[2..], line)?,
            }))
        }
        "one" => {
            if tokens.len() < 2 {
                return Err(cfg_err(line, "source needs: one <descriptor>"));
            }
            Ok(Some(Source {
                time: TimeFactor::One,
                space: parse_descriptor(&tokens[1..], line)?,
            }))
        }
        other => Err(cfg_err(line, format!("unknown source kind '{other}'"))),
    }
}

#[derive(Default)]
struct Draft {
    start_line: usize,
    id: Option<String>,
    alpha: Option<f64>,
    t_final: Option<f64>,
    temporal: Option<TemporalScheme>,
    spatial: Option<SpatialFlavor>,
    vary: Option<Vary>,
    fixed: Option<usize>,
    levels: Option<Vec<usize>>,
    u0: Option<FunctionDescriptor<f64>>,
    source: Option<Option<Source<f64>>>,
    param: Option<(String, f64)>,
}

impl Draft {
    fn finish(self) -> Result<ExperimentCase<f64>> {
        let line = self.start_line;
        let missing = |k: &str| cfg_err(line, format!("case is missing '{k}'"));
        Ok(ExperimentCase {
            id: self.id.ok_or_else(|| missing("id"))?,
            alpha: self.alpha.ok_or_else(|| missing("alpha"))?,
            t_final: self.t_final.unwrap_or(1.0),
            u0: self.u0.ok_or_else(|| missing("u0"))?,
            source: self.source.unwrap_or(None),
            vary: self.vary.ok_or_else(|| missing("vary"))?,
            fixed: self.fixed.ok_or_else(|| missing("fixed"))?,
            levels: self.levels.ok_or_else(|| missing("levels"))?,
            schemes: vec![(
                self.temporal.ok_or_else(|| missing("temporal"))?,
                self.spatial.ok_or_else(|| missing("spatial"))?,
            )],
            param: self.param,
        })
    }
}

/// Parses a case file. Each `[case]` section yields one [`ExperimentCase`].
pub fn parse_cases(text: &str) -> Result<Vec<ExperimentCase<f64>>> {
    let mut cases = Vec::new();
    let mut draft: Option<Draft> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line == "[case]" {
            if let Some(d) = draft.take() {
                cases.push(d.finish()?);
            }
            draft = Some(Draft {
                start_line: line_no,
                ..Draft::default()
            });
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| cfg_err(line_no, "expected 'key = value'"))?;
        let key = key.trim();
        let value = value.trim();
        let d = draft
            .as_mut()
            .ok_or_else(|| cfg_err(line_no, "key outside a [case] section"))?;
        let tokens: Vec<&str> = value.split_whitespace().collect();
        match key {
            "id" => d.id = Some(value.to_string()),
            "alpha" => d.alpha = Some(parse_f64(value, line_no)?),
            "t_final" => d.t_final = Some(parse_f64(value, line_no)?),
            "temporal" => {
                d.temporal = Some(match value {
                    "l1bar" => TemporalScheme::L1Bar,
                    "sbdbar" => TemporalScheme::SbdBar,
                    other => {
                        return Err(cfg_err(line_no, format!("unknown temporal scheme '{other}'")))
                    }
                })
            }
            "spatial" => {
                d.spatial = Some(match value {
                    "central" => SpatialFlavor::Central,
                    "modified" => SpatialFlavor::Modified,
                    other => {
                        return Err(cfg_err(line_no, format!("unknown spatial flavor '{other}'")))
                    }
                })
            }
            "vary" => {
                d.vary = Some(match value {
                    "temporal" => Vary::Temporal,
                    "spatial" => Vary::Spatial,
                    other => return Err(cfg_err(line_no, format!("unknown vary mode '{other}'"))),
                })
            }
            "fixed" => d.fixed = Some(parse_usize(value, line_no)?),
            "levels" => {
                let levels = tokens
                    .iter()
                    .map(|t| parse_usize(t, line_no))
                    .collect::<Result<Vec<_>>>()?;
                d.levels = Some(levels);
            }
            "u0" => d.u0 = Some(parse_descriptor(&tokens, line_no)?),
            "source" => d.source = Some(parse_source(&tokens, line_no)?),
            "param" => {
                if tokens.len() != 2 {
                    return Err(cfg_err(line_no, "param needs: <name> <value>"));
                }
                d.param = Some((tokens[0].to_string(), parse_f64(tokens[1], line_no)?));
            }
            other => return Err(cfg_err(line_no, format!("unknown key '{other}'"))),
        }
    }
    if let Some(d) = draft.take() {
        cases.push(d.finish()?);
    }
    if cases.is_empty() {
        return Err(Error::Config("no [case] sections found".into()));
    }
    Ok(cases)
}

pub const BUILTIN_IDS: [&str; 8] = [
    "table1", "table2", "table3", "table4", "table5", "table6", "table7", "table8",
];

const LADDER: [usize; 6] = [32, 64, 128, 256, 512, 1024];
const FIXED: usize = 512;

fn temporal_case(table: usize, scheme: TemporalScheme, alpha: f64) -> ExperimentCase<f64> {
    ExperimentCase {
        id: format!("table{table}/alpha={alpha}"),
        alpha,
        t_final: 1.0,
        u0: FunctionDescriptor::characteristic(0.5).expect("valid jump"),
        source: None,
        vary: Vary::Temporal,
        fixed: FIXED,
        levels: LADDER.to_vec(),
        schemes: vec![(scheme, SpatialFlavor::Central)],
        param: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn spatial_case(
    table: usize,
    scheme: TemporalScheme,
    flavor: SpatialFlavor,
    alpha: f64,
    param_name: &str,
    param: f64,
    u0: FunctionDescriptor<f64>,
    source: Option<Source<f64>>,
) -> ExperimentCase<f64> {
    ExperimentCase {
        id: format!("table{table}/alpha={alpha}"),
        alpha,
        t_final: 1.0,
        u0,
        source,
        vary: Vary::Spatial,
        fixed: FIXED,
        levels: LADDER.to_vec(),
        schemes: vec![(scheme, flavor)],
        param: Some((param_name.to_string(), param)),
    }
}

/// The eight built-in studies. `table1`/`table2`: temporal ladders for the
/// jump initial value. `table3`--`table5`, `table8`: spatial ladders for the
/// power-bump / singular-power initial values (central and modified
/// flavors). `table6`/`table7`: spatial ladders with zero initial value and
/// a separable `(1 + t)^{1/2}` source.
pub fn builtin(id: &str) -> Option<Vec<ExperimentCase<f64>>> {
    use SpatialFlavor::{Central, Modified};
    use TemporalScheme::{L1Bar, SbdBar};
    let bump = |s: f64| FunctionDescriptor::power_bump(s).expect("valid sigma");
    let sing = |g: f64| FunctionDescriptor::singular_power(g).expect("valid gamma");
    let src = |space: FunctionDescriptor<f64>| {
        Some(Source {
            time: TimeFactor::ShiftedPower(0.5),
            space,
        })
    };
    const SIGMA_PAIRS: [(f64, f64); 4] = [(0.2, 0.3), (0.4, 0.6), (0.6, 0.9), (0.8, 1.2)];
    const GAMMA_PAIRS: [(f64, f64); 4] = [(0.2, 0.499), (0.4, 0.45), (0.6, 0.4), (0.8, 0.3)];
    Some(match id {
        "table1" => [0.2, 0.8]
            .iter()
            .map(|&a| temporal_case(1, L1Bar, a))
            .collect(),
        "table2" => [0.4, 0.6]
            .iter()
            .map(|&a| temporal_case(2, SbdBar, a))
            .collect(),
        "table3" => SIGMA_PAIRS
            .iter()
            .map(|&(a, s)| spatial_case(3, L1Bar, Central, a, "sigma", s, bump(s), None))
            .collect(),
        "table4" => GAMMA_PAIRS
            .iter()
            .map(|&(a, g)| spatial_case(4, SbdBar, Central, a, "gamma", g, sing(g), None))
            .collect(),
        "table5" => SIGMA_PAIRS
            .iter()
            .map(|&(a, s)| spatial_case(5, L1Bar, Modified, a, "sigma", s, bump(s), None))
            .collect(),
        "table6" => [(0.8, 0.499), (0.6, 0.45), (0.4, 0.4), (0.2, 0.3)]
            .iter()
            .map(|&(a, g)| {
                spatial_case(
                    6,
                    L1Bar,
                    Central,
                    a,
                    "gamma",
                    g,
                    FunctionDescriptor::Zero,
                    src(sing(g)),
                )
            })
            .collect(),
        "table7" => [(0.8, 0.3), (0.6, 0.6), (0.4, 0.9), (0.2, 1.2)]
            .iter()
            .map(|&(a, s)| {
                spatial_case(
                    7,
                    SbdBar,
                    Central,
                    a,
                    "sigma",
                    s,
                    FunctionDescriptor::Zero,
                    src(bump(s)),
                )
            })
            .collect(),
        "table8" => GAMMA_PAIRS
            .iter()
            .map(|&(a, g)| spatial_case(8, SbdBar, Modified, a, "gamma", g, sing(g), None))
            .collect(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_case() {
        let text = "
            # study
            [case]
            id = demo
            alpha = 0.4
            temporal = sbdbar
            spatial = modified
            vary = spatial
            fixed = 64
            levels = 8 16 32 64
            u0 = singular_power 0.45
            source = shifted_power 0.5 power_bump 1.2
            param = gamma 0.45
        ";
        let cases = parse_cases(text).unwrap();
        assert_eq!(cases.len(), 1);
        let c = &cases[0];
        assert_eq!(c.id, "demo");
        assert_eq!(c.alpha, 0.4);
        assert_eq!(c.t_final, 1.0);
        assert_eq!(c.fixed, 64);
        assert_eq!(c.levels, vec![8, 16, 32, 64]);
        assert_eq!(
            c.schemes,
            vec![(TemporalScheme::SbdBar, SpatialFlavor::Modified)]
        );
        assert_eq!(c.param, Some(("gamma".to_string(), 0.45)));
        assert!(matches!(c.u0, FunctionDescriptor::SingularPower(g) if g == 0.45));
        let s = c.source.as_ref().unwrap();
        assert!(matches!(s.time, TimeFactor::ShiftedPower(p) if p == 0.5));
        assert!(matches!(s.space, FunctionDescriptor::PowerBump(p) if p == 1.2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_cases("").is_err());
        assert!(parse_cases("id = orphan\n").is_err());
        assert!(parse_cases("[case]\nid = x\nbogus = 1\n").is_err());
        assert!(parse_cases("[case]\nid = x\nalpha = not-a-number\n").is_err());
        assert!(parse_cases("[case]\nid = x\nu0 = warp 3\n").is_err());
        // missing required keys
        assert!(parse_cases("[case]\nid = x\nalpha = 0.5\n").is_err());
    }

    #[test]
    fn builtins_resolve_and_run_shapes() {
        for id in BUILTIN_IDS {
            let cases = builtin(id).unwrap();
            assert!(!cases.is_empty(), "{id}");
            for c in &cases {
                assert!(c.id.starts_with(id));
                assert_eq!(c.levels, vec![32, 64, 128, 256, 512, 1024]);
                assert_eq!(c.fixed, 512);
            }
        }
        assert!(builtin("table9").is_none());
    }

    #[test]
    fn builtin_schemes_and_data() {
        let t5 = builtin("table5").unwrap();
        assert!(t5
            .iter()
            .all(|c| c.schemes == vec![(TemporalScheme::L1Bar, SpatialFlavor::Modified)]));
        let t6 = builtin("table6").unwrap();
        assert_eq!(t6[0].alpha, 0.8);
        assert!(matches!(t6[0].u0, FunctionDescriptor::Zero));
        assert!(matches!(
            t6[0].source.as_ref().unwrap().space,
            FunctionDescriptor::SingularPower(g) if g == 0.499
        ));
    }
}
