use std::f64::consts::TAU;

use num_complex::Complex64;

use super::AlgorithmError;
use crate::image::ComplexField;

/// Modulation scheme of a spatial light modulator.
#[derive(Debug, Clone, PartialEq)]
pub enum SlmScheme {
    /// States `exp(i (offset + 2 pi k / levels))`.
    PhaseOnly { levels: usize, offset: f64 },
    /// Two-level phase, identical to `PhaseOnly { levels: 2, offset: 0 }`.
    BinaryPhase,
    /// Real states `k / (levels - 1)`.
    AmplitudeOnly { levels: usize },
    /// Arbitrary complex states.
    MultiAmp { states: Vec<Complex64> },
}

impl SlmScheme {
    /// Zero plus every amplitude level `ka / (amp_levels - 1)`, `ka >= 1`,
    /// at each of `phase_levels` uniformly spaced phases.
    pub fn multi_amp(amp_levels: usize, phase_levels: usize) -> Self {
        let mut states = vec![Complex64::new(0.0, 0.0)];
        for ka in 1..amp_levels {
            let a = ka as f64 / (amp_levels - 1) as f64;
            states.extend(phase_states(phase_levels, 0.0).into_iter().map(|z| z * a));
        }
        SlmScheme::MultiAmp { states }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlmSpec {
    pub width: usize,
    pub height: usize,
    pub scheme: SlmScheme,
}

impl SlmSpec {
    pub fn new(width: usize, height: usize, scheme: SlmScheme) -> Self {
        Self {
            width,
            height,
            scheme,
        }
    }

    pub fn validate(&self) -> Result<(), AlgorithmError> {
        if self.width == 0 || self.height == 0 {
            return Err(AlgorithmError::InvalidConfig("SLM resolution must be non-zero".into()));
        }
        match &self.scheme {
            SlmScheme::PhaseOnly { levels, offset } => {
                if *levels < 2 || !offset.is_finite() {
                    return Err(AlgorithmError::InvalidConfig(
                        "phase-only SLM needs >= 2 levels and a finite offset".into(),
                    ));
                }
            }
            SlmScheme::BinaryPhase => {}
            SlmScheme::AmplitudeOnly { levels } => {
                if *levels < 2 {
                    return Err(AlgorithmError::InvalidConfig(
                        "amplitude SLM needs >= 2 levels".into(),
                    ));
                }
            }
            SlmScheme::MultiAmp { states } => {
                if states.len() < 2 || states.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(AlgorithmError::InvalidConfig(
                        "multi-amplitude SLM needs >= 2 finite states".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Allowed states in index order.
    pub fn states(&self) -> Vec<Complex64> {
        match &self.scheme {
            SlmScheme::PhaseOnly { levels, offset } => phase_states(*levels, *offset),
            SlmScheme::BinaryPhase => phase_states(2, 0.0),
            SlmScheme::AmplitudeOnly { levels } => (0..*levels)
                .map(|k| Complex64::new(k as f64 / (*levels - 1) as f64, 0.0))
                .collect(),
            SlmScheme::MultiAmp { states } => states.clone(),
        }
    }

    pub fn is_phase_only(&self) -> bool {
        matches!(
            self.scheme,
            SlmScheme::PhaseOnly { .. } | SlmScheme::BinaryPhase
        )
    }

    pub fn quantiser(&self) -> Quantiser {
        Quantiser::new(self.states(), self.is_phase_only())
    }
}

fn phase_states(levels: usize, offset: f64) -> Vec<Complex64> {
    (0..levels)
        .map(|k| Complex64::from_polar(1.0, offset + TAU * k as f64 / levels as f64))
        .collect()
}

/// Nearest-state snapping in the complex plane. Ties go to the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantiser {
    states: Vec<Complex64>,
    project_unit: bool,
}

impl Quantiser {
    pub fn new(states: Vec<Complex64>, project_unit: bool) -> Self {
        assert!(!states.is_empty());
        Self {
            states,
            project_unit,
        }
    }

    pub fn states(&self) -> &[Complex64] {
        &self.states
    }

    pub fn levels(&self) -> usize {
        self.states.len()
    }

    pub fn index_of(&self, z: Complex64) -> usize {
        let z = if self.project_unit {
            let r = z.norm();
            if r == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                z / r
            }
        } else {
            z
        };
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, s) in self.states.iter().enumerate() {
            let d = (z - s).norm_sqr();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    pub fn quantize(&self, z: Complex64) -> Complex64 {
        self.states[self.index_of(z)]
    }

    pub fn quantize_field(&self, field: &ComplexField) -> ComplexField {
        field.map(|z| self.quantize(z))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.states.contains(&z)
    }
}

/// Snaps every pixel to the nearest allowed state of `slm`.
pub fn quantize(field: &ComplexField, slm: &SlmSpec) -> ComplexField {
    slm.quantiser().quantize_field(field)
}
