use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use super::AlgorithmError;
use super::InitMode;
use crate::image::ComplexField;
use crate::propagation::{phase_of, PropagationSpec, Propagator};

/// Starting hologram: illumination amplitude with either uniform random phase
/// (drawn row-major) or the phase of the back-propagated target. Missing
/// illumination means unit amplitude.
pub fn initial_hologram<R: Rng + ?Sized>(
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    mode: InitMode,
    propagation: &PropagationSpec,
    rng: &mut R,
) -> Result<ComplexField, AlgorithmError> {
    let (w, h) = target.dims();
    let illum = match illumination {
        Some(f) if f.dims() != (w, h) => {
            return Err(AlgorithmError::DimensionMismatch {
                expected: (w, h),
                actual: f.dims(),
            })
        }
        Some(f) => f.amplitudes(),
        None => vec![1.0; w * h],
    };
    let data = match mode {
        InitMode::RandomPhase => illum
            .iter()
            .map(|&a| Complex64::from_polar(a, rng.gen::<f64>() * TAU))
            .collect(),
        InitMode::Backpropagate => {
            let amp = target.map(|z| Complex64::new(z.norm(), 0.0));
            let back = Propagator::new(propagation, w, h)?.backpropagate(&amp)?;
            back.data()
                .iter()
                .zip(&illum)
                .map(|(&z, &a)| Complex64::from_polar(a, phase_of(z)))
                .collect()
        }
    };
    Ok(ComplexField::new(w, h, data)?)
}
