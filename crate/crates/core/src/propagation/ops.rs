use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;

use super::PropagationError;
use crate::image::{ComplexField, Mask};

/// Scales `field` by a real factor so that its energy equals `target_energy`.
pub fn normalize_energy(field: &mut ComplexField, target_energy: f64) -> Result<(), PropagationError> {
    let energy = field.energy();
    if energy == 0.0 {
        return Err(PropagationError::ZeroField);
    }
    let k = (target_energy / energy).sqrt();
    for z in field.data_mut() {
        *z *= k;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomMode {
    Phase,
    Amplitude,
    Both,
}

/// Argument with the zero-pixel convention `arg 0 = 0`.
#[inline]
pub fn phase_of(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        0.0
    } else {
        z.im.atan2(z.re)
    }
}

/// Randomizes phase and/or amplitude per pixel in row-major draw order.
/// Phases are uniform on [0, 2pi), amplitudes uniform on [0, 1]; in
/// [`RandomMode::Both`] each pixel draws its phase first.
pub fn randomize<R: Rng + ?Sized>(field: &mut ComplexField, mode: RandomMode, rng: &mut R) {
    for z in field.data_mut() {
        *z = match mode {
            RandomMode::Phase => Complex64::from_polar(z.norm(), rng.gen::<f64>() * TAU),
            RandomMode::Amplitude => Complex64::from_polar(rng.gen_range(0.0..=1.0), phase_of(*z)),
            RandomMode::Both => {
                let theta = rng.gen::<f64>() * TAU;
                Complex64::from_polar(rng.gen_range(0.0..=1.0), theta)
            }
        };
    }
}

/// Error metric configuration: signal region and optional least-squares
/// amplitude rescale before the error sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSpec {
    pub mask: Mask,
    pub rescale: bool,
}

impl MetricSpec {
    pub fn new(mask: Mask, rescale: bool) -> Self {
        Self { mask, rescale }
    }

    pub fn full(width: usize, height: usize, rescale: bool) -> Self {
        Self::new(Mask::full(width, height), rescale)
    }
}

/// Normalized amplitude error over a mask on raw buffers.
///
/// `E = sum_mask (s|R| - |T|)^2 / sum_mask |T|^2`, where `s` is the
/// least-squares optimal scale when `rescale` is set and 1 otherwise.
pub fn mse_error_raw(
    replay: &[Complex64],
    target_amp: &[f64],
    mask: &[bool],
    rescale: bool,
) -> Result<f64, PropagationError> {
    if replay.len() != target_amp.len() || replay.len() != mask.len() {
        return Err(PropagationError::DimensionMismatch);
    }
    let mut any = false;
    let (mut rt, mut rr, mut tt) = (0.0, 0.0, 0.0);
    for ((r, &t), &m) in replay.iter().zip(target_amp).zip(mask) {
        if m {
            any = true;
            let a = r.norm();
            rt += a * t.abs();
            rr += a * a;
            tt += t * t;
        }
    }
    if !any {
        return Err(PropagationError::EmptyMask);
    }
    if tt == 0.0 {
        return Err(PropagationError::ZeroTarget);
    }
    let s = if !rescale {
        1.0
    } else if rr > 0.0 {
        rt / rr
    } else {
        0.0
    };
    let mut acc = 0.0;
    for ((r, &t), &m) in replay.iter().zip(target_amp).zip(mask) {
        if m {
            let d = s * r.norm() - t.abs();
            acc += d * d;
        }
    }
    Ok(acc / tt)
}

pub fn mse_error(replay: &ComplexField, target: &ComplexField, spec: &MetricSpec) -> Result<f64, PropagationError> {
    if !replay.same_dims(target)
        || (spec.mask.width(), spec.mask.height()) != replay.dims()
    {
        return Err(PropagationError::DimensionMismatch);
    }
    mse_error_raw(replay.data(), &target.amplitudes(), spec.mask.bits(), spec.rescale)
}

/// Fraction of replay energy falling inside the mask.
pub fn efficiency_raw(replay: &[Complex64], mask: &[bool]) -> Result<f64, PropagationError> {
    if replay.len() != mask.len() {
        return Err(PropagationError::DimensionMismatch);
    }
    let (mut inside, mut total) = (0.0, 0.0);
    for (r, &m) in replay.iter().zip(mask) {
        let p = r.norm_sqr();
        total += p;
        if m {
            inside += p;
        }
    }
    if total == 0.0 {
        return Err(PropagationError::ZeroField);
    }
    Ok(inside / total)
}

pub fn efficiency(replay: &ComplexField, mask: &Mask) -> Result<f64, PropagationError> {
    if (mask.width(), mask.height()) != replay.dims() {
        return Err(PropagationError::DimensionMismatch);
    }
    efficiency_raw(replay.data(), mask.bits())
}
