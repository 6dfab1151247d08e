use num_complex::Complex64;

use super::{AlgorithmConfig, AlgorithmError, Quantiser};
use crate::image::ComplexField;
use crate::propagation::{
    efficiency_raw, fftshift_slice, ifftshift_slice, mse_error_raw, Propagator,
};

/// Per-run working set shared by the runners. Replay buffers and the target
/// are kept uncentered so the inner loops never shift.
pub(crate) struct RunContext {
    pub width: usize,
    pub height: usize,
    pub propagator: Propagator,
    pub quantiser: Quantiser,
    /// Illumination amplitude in hologram coordinates.
    pub illumination: Vec<f64>,
    /// Target amplitude, uncentered, scaled to the illumination energy.
    pub target: Vec<f64>,
    /// Metric mask, uncentered.
    pub mask: Vec<bool>,
    pub rescale: bool,
}

impl RunContext {
    pub fn new(
        cfg: &AlgorithmConfig,
        target: &ComplexField,
        illumination: Option<&ComplexField>,
    ) -> Result<Self, AlgorithmError> {
        cfg.slm.validate()?;
        let (w, h) = (cfg.slm.width, cfg.slm.height);
        if target.dims() != (w, h) {
            return Err(AlgorithmError::DimensionMismatch {
                expected: (w, h),
                actual: target.dims(),
            });
        }
        if (cfg.metric.mask.width(), cfg.metric.mask.height()) != (w, h) {
            return Err(AlgorithmError::DimensionMismatch {
                expected: (w, h),
                actual: (cfg.metric.mask.width(), cfg.metric.mask.height()),
            });
        }
        if cfg.metric.mask.count() == 0 {
            return Err(AlgorithmError::Propagation(
                crate::propagation::PropagationError::EmptyMask,
            ));
        }
        let illumination = match illumination {
            Some(f) if f.dims() != (w, h) => {
                return Err(AlgorithmError::DimensionMismatch {
                    expected: (w, h),
                    actual: f.dims(),
                })
            }
            Some(f) => f.amplitudes(),
            None => vec![1.0; w * h],
        };
        let mut amp = target.amplitudes();
        let t_energy: f64 = amp.iter().map(|a| a * a).sum();
        let i_energy: f64 = illumination.iter().map(|a| a * a).sum();
        if t_energy == 0.0 {
            return Err(AlgorithmError::Propagation(
                crate::propagation::PropagationError::ZeroTarget,
            ));
        }
        if i_energy == 0.0 {
            return Err(AlgorithmError::InvalidConfig("illumination has zero energy".into()));
        }
        if t_energy != i_energy {
            let k = (i_energy / t_energy).sqrt();
            amp.iter_mut().for_each(|a| *a *= k);
        }
        Ok(Self {
            width: w,
            height: h,
            propagator: Propagator::new(&cfg.propagation, w, h)?,
            quantiser: cfg.slm.quantiser(),
            illumination,
            target: ifftshift_slice(&amp, w, h),
            mask: ifftshift_slice(cfg.metric.mask.bits(), w, h),
            rescale: cfg.metric.rescale,
        })
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    /// Uncentered replay of an SLM pattern under the illumination.
    pub fn replay_of(&self, pattern: &[Complex64]) -> Vec<Complex64> {
        let mut field: Vec<Complex64> = pattern
            .iter()
            .zip(&self.illumination)
            .map(|(p, a)| p * a)
            .collect();
        self.propagator.forward_in_place(&mut field);
        field
    }

    pub fn error(&self, replay: &[Complex64], rescale: bool) -> Result<f64, AlgorithmError> {
        Ok(mse_error_raw(replay, &self.target, &self.mask, rescale)?)
    }

    pub fn reported_error(&self, replay: &[Complex64]) -> Result<f64, AlgorithmError> {
        self.error(replay, self.rescale)
    }

    pub fn efficiency(&self, replay: &[Complex64]) -> Result<f64, AlgorithmError> {
        Ok(efficiency_raw(replay, &self.mask)?)
    }

    pub fn field(&self, data: Vec<Complex64>) -> ComplexField {
        ComplexField::new(self.width, self.height, data).expect("runner buffers stay finite")
    }

    /// Centered copy of an uncentered replay buffer.
    #[allow(dead_code)]
    pub fn centered(&self, replay: &[Complex64]) -> Vec<Complex64> {
        fftshift_slice(replay, self.width, self.height)
    }
}
