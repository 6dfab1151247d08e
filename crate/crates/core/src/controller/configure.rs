use std::path::PathBuf;

use super::ControllerError;
use crate::algorithms::{
    AlgorithmConfig, AlgorithmParams, DbsParams, GsParams, InitMode, OsprParams, SaParams, ScanOrder, SlmScheme,
    SlmSpec,
};
use crate::hierarchy::{HierarchyVersion, OptionTree, OptionValue};
use crate::image::{Mask, Rect};
use crate::propagation::{MetricSpec, PropagationSpec};
use crate::serialio::{Metadata, SerialError};

pub(crate) const SEED_PATH: &str = "algorithm/run/seed";

/// Everything needed to run and later reproduce one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub algorithm: AlgorithmConfig,
    /// Flattened tree with the seed resolved to the value actually used.
    pub parameters: Vec<(String, OptionValue)>,
    pub version: HierarchyVersion,
    /// Illumination amplitude image; `None` means uniform.
    pub illumination: Option<PathBuf>,
}

impl RunConfig {
    pub fn width(&self) -> usize {
        self.algorithm.slm.width
    }

    pub fn height(&self) -> usize {
        self.algorithm.slm.height
    }
}

struct Reader<'a>(&'a OptionTree);

impl Reader<'_> {
    fn value(&self, path: &str) -> Result<OptionValue, ControllerError> {
        Ok(self.0.get(path)?)
    }

    fn int(&self, path: &str) -> Result<i64, ControllerError> {
        self.value(path)?
            .as_int()
            .ok_or_else(|| ControllerError::invalid(path, "expected an integer"))
    }

    fn count(&self, path: &str) -> Result<usize, ControllerError> {
        usize::try_from(self.int(path)?).map_err(|_| ControllerError::invalid(path, "expected a non-negative integer"))
    }

    fn float(&self, path: &str) -> Result<f64, ControllerError> {
        self.value(path)?
            .as_float()
            .ok_or_else(|| ControllerError::invalid(path, "expected a number"))
    }

    fn flag(&self, path: &str) -> Result<bool, ControllerError> {
        self.value(path)?
            .as_bool()
            .ok_or_else(|| ControllerError::invalid(path, "expected a boolean"))
    }

    fn text(&self, path: &str) -> Result<String, ControllerError> {
        match self.value(path)? {
            OptionValue::Text(s) => Ok(s),
            _ => Err(ControllerError::invalid(path, "expected text")),
        }
    }
}

/// Parses `x,y,w,h;x,y,w,h;...`. Blank input yields no rectangles.
fn parse_rects(text: &str) -> Option<Vec<Rect>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let v: Vec<usize> = part.split(',').map(|n| n.trim().parse().ok()).collect::<Option<_>>()?;
            match v[..] {
                [x, y, w, h] => Some(Rect::new(x, y, w, h)),
                _ => None,
            }
        })
        .collect()
}

fn slm_scheme(r: &Reader) -> Result<SlmScheme, ControllerError> {
    const BASE: &str = "projector/slm/slm-type";
    Ok(match r.text(BASE)?.as_str() {
        "phase-only" => SlmScheme::PhaseOnly {
            levels: r.count(&format!("{BASE}/phase-only/phase-levels"))?,
            offset: r.float(&format!("{BASE}/phase-only/phase-offset"))?,
        },
        "binary-phase" => SlmScheme::PhaseOnly { levels: 2, offset: 0.0 },
        "amplitude" => SlmScheme::AmplitudeOnly {
            levels: r.count(&format!("{BASE}/amplitude/amplitude-levels"))?,
        },
        "multi-amp" => SlmScheme::multi_amp(
            r.count(&format!("{BASE}/multi-amp/amplitude-levels"))?,
            r.count(&format!("{BASE}/multi-amp/phase-levels"))?,
        ),
        other => return Err(ControllerError::invalid(BASE, format!("unsupported SLM type '{other}'"))),
    })
}

fn algorithm_params(r: &Reader) -> Result<AlgorithmParams, ControllerError> {
    const BASE: &str = "algorithm/run/algorithm";
    Ok(match r.text(BASE)?.as_str() {
        "gs" => AlgorithmParams::Gs(GsParams {
            iterations: r.count(&format!("{BASE}/gs/iterations"))?,
            feedback_gain: r.float(&format!("{BASE}/gs/feedback-gain"))?,
            quantize_each_iteration: r.flag(&format!("{BASE}/gs/quantize-each-iteration"))?,
        }),
        "sa" => {
            let t0 = r.float(&format!("{BASE}/sa/initial-temperature"))?;
            AlgorithmParams::Sa(SaParams {
                proposals: r.count(&format!("{BASE}/sa/proposals"))?,
                initial_temperature: (t0 >= 0.0).then_some(t0),
                cooling_factor: r.float(&format!("{BASE}/sa/cooling-factor"))?,
            })
        }
        "dbs" => {
            let order = format!("{BASE}/dbs/scan-order");
            AlgorithmParams::Dbs(DbsParams {
                max_passes: r.count(&format!("{BASE}/dbs/max-passes"))?,
                scan_order: match r.text(&order)?.as_str() {
                    "raster" => ScanOrder::Raster,
                    "random" => ScanOrder::Random,
                    other => return Err(ControllerError::invalid(&order, format!("unsupported scan order '{other}'"))),
                },
            })
        }
        "ospr" => AlgorithmParams::Ospr(OsprParams {
            subframes: r.count(&format!("{BASE}/ospr/subframes"))?,
        }),
        other => return Err(ControllerError::invalid(BASE, format!("unsupported algorithm '{other}'"))),
    })
}

/// Reads every consumed option from `tree` and builds the run inputs.
/// An automatic seed (`-1`) is drawn here and recorded in `parameters`.
pub fn configure_run(tree: &OptionTree) -> Result<RunConfig, ControllerError> {
    let r = Reader(tree);
    let width = r.count("projector/slm/slm-resolution-x")?;
    let height = r.count("projector/slm/slm-resolution-y")?;

    let wavelength = r.float("projector/slm/wavelength")?;
    let pitch_x = r.float("projector/slm/pixel-pitch-x")?;
    let pitch_y = r.float("projector/slm/pixel-pitch-y")?;
    let propagation = match r.text("projector/slm/propagation")?.as_str() {
        "fourier" => PropagationSpec::fourier(),
        "fresnel" => PropagationSpec::fresnel(
            wavelength,
            r.float("projector/slm/propagation/fresnel/distance")?,
            pitch_x,
            pitch_y,
        ),
        other => {
            return Err(ControllerError::invalid(
                "projector/slm/propagation",
                format!("unsupported propagation '{other}'"),
            ))
        }
    };
    propagation
        .validate()
        .map_err(|e| ControllerError::invalid("projector/slm/propagation", e.to_string()))?;

    let slm = SlmSpec::new(width, height, slm_scheme(&r)?);
    slm.validate()
        .map_err(|e| ControllerError::invalid("projector/slm/slm-type", e.to_string()))?;

    let params = algorithm_params(&r)?;

    let seed = match r.int(SEED_PATH)? {
        s if s >= 0 => s as u64,
        _ => rand::random::<u64>() >> 1,
    };

    let init_mode = match r.text("algorithm/run/init-mode")?.as_str() {
        "random-phase" => InitMode::RandomPhase,
        "backpropagate" => InitMode::Backpropagate,
        other => {
            return Err(ControllerError::invalid(
                "algorithm/run/init-mode",
                format!("unsupported init mode '{other}'"),
            ))
        }
    };

    let rescale = r.flag("algorithm/run/rescale-error")?;
    let mask = if r.flag("algorithm/run/target-region")? {
        const RECTS: &str = "algorithm/run/target-region/rects";
        let rects = parse_rects(&r.text(RECTS)?).ok_or_else(|| ControllerError::invalid(RECTS, "expected x,y,w,h;..."))?;
        let mask = Mask::from_rects(width, height, &rects).map_err(|e| ControllerError::invalid(RECTS, e.to_string()))?;
        if mask.count() == 0 {
            return Err(ControllerError::invalid(RECTS, "signal region is empty"));
        }
        mask
    } else {
        Mask::full(width, height)
    };

    let illumination = r.text("algorithm/run/illumination")?;
    let illumination = (!illumination.is_empty()).then(|| PathBuf::from(illumination));

    let parameters = tree
        .flatten()
        .into_iter()
        .map(|(p, v)| {
            let v = if p == SEED_PATH { OptionValue::Int(seed as i64) } else { v };
            (p, v)
        })
        .collect();

    Ok(RunConfig {
        algorithm: AlgorithmConfig {
            params,
            seed,
            init_mode,
            metric: MetricSpec::new(mask, rescale),
            slm,
            propagation,
        },
        parameters,
        version: tree.version,
        illumination,
    })
}

/// Rebuilds the generating tree from saved metadata. The major version
/// must match the schema's.
pub fn tree_from_metadata(meta: &Metadata, schema: &OptionTree) -> Result<OptionTree, ControllerError> {
    if meta.version.major != schema.version.major {
        return Err(SerialError::VersionMismatch {
            file: meta.version,
            schema: schema.version,
        }
        .into());
    }
    Ok(OptionTree::from_flat(schema, &meta.parameters)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::AlgorithmKind;
    use crate::hierarchy::build_schema;

    #[test]
    fn default_tree_is_gs() {
        let cfg = configure_run(&build_schema()).unwrap();
        assert_eq!(cfg.algorithm.kind(), AlgorithmKind::Gs);
        let AlgorithmParams::Gs(gs) = cfg.algorithm.params else { unreachable!() };
        assert_eq!(gs.iterations, 100);
        assert_eq!((cfg.width(), cfg.height()), (512, 512));
        assert_eq!(cfg.algorithm.slm.scheme, SlmScheme::PhaseOnly { levels: 2, offset: 0.0 });
        assert!(cfg.algorithm.seed <= i64::MAX as u64);
        let recorded = cfg.parameters.iter().find(|(p, _)| p == SEED_PATH).unwrap();
        assert_eq!(recorded.1, OptionValue::Int(cfg.algorithm.seed as i64));
    }

    #[test]
    fn explicit_seed_and_sa_auto_temperature() {
        let mut t = build_schema();
        t.set(SEED_PATH, 42i64).unwrap();
        t.set("algorithm/run/algorithm", "sa").unwrap();
        let cfg = configure_run(&t).unwrap();
        assert_eq!(cfg.algorithm.seed, 42);
        let AlgorithmParams::Sa(sa) = cfg.algorithm.params else { unreachable!() };
        assert_eq!(sa.initial_temperature, None);
        t.set("algorithm/run/algorithm/sa/initial-temperature", 0.0).unwrap();
        let AlgorithmParams::Sa(sa) = configure_run(&t).unwrap().algorithm.params else { unreachable!() };
        assert_eq!(sa.initial_temperature, Some(0.0));
    }

    #[test]
    fn target_region() {
        let mut t = build_schema();
        t.set("projector/slm/slm-resolution-x", 16i64).unwrap();
        t.set("projector/slm/slm-resolution-y", 8i64).unwrap();
        t.set("algorithm/run/target-region", true).unwrap();
        t.set("algorithm/run/target-region/rects", "0,0,4,4; 8,2,2,2").unwrap();
        assert_eq!(configure_run(&t).unwrap().algorithm.metric.mask.count(), 20);
        t.set("algorithm/run/target-region/rects", "0,0,40,4").unwrap();
        let err = configure_run(&t).unwrap_err();
        assert!(matches!(err, ControllerError::ValidationFailed { ref paths, .. }
            if paths == &["algorithm/run/target-region/rects"]));
        t.set("algorithm/run/target-region/rects", "1,2,3").unwrap();
        assert!(configure_run(&t).is_err());
    }

    #[test]
    fn multi_amp_and_fresnel() {
        let mut t = build_schema();
        t.set("projector/slm/slm-type", "multi-amp").unwrap();
        t.set("projector/slm/propagation", "fresnel").unwrap();
        let cfg = configure_run(&t).unwrap();
        assert_eq!(cfg.algorithm.slm.states().len(), 1 + 3 * 4);
        assert_eq!(cfg.algorithm.propagation, PropagationSpec::fresnel(532e-9, 0.5, 8e-6, 8e-6));
    }
}
