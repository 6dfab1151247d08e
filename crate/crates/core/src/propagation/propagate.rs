use std::f64::consts::PI;

use num_complex::Complex64;

use super::fft::{fftshift_slice, ifftshift_slice, Direction, Fft2};
use super::PropagationError;
use crate::image::ComplexField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagationKind {
    Fourier,
    Fresnel,
}

/// Propagation operator between hologram and replay planes. Physical fields
/// are in meters and only consulted for Fresnel propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationSpec {
    pub kind: PropagationKind,
    pub wavelength: f64,
    pub distance: f64,
    pub pitch_x: f64,
    pub pitch_y: f64,
}

impl PropagationSpec {
    pub fn fourier() -> Self {
        Self {
            kind: PropagationKind::Fourier,
            wavelength: 0.0,
            distance: 0.0,
            pitch_x: 0.0,
            pitch_y: 0.0,
        }
    }

    pub fn fresnel(wavelength: f64, distance: f64, pitch_x: f64, pitch_y: f64) -> Self {
        Self {
            kind: PropagationKind::Fresnel,
            wavelength,
            distance,
            pitch_x,
            pitch_y,
        }
    }

    pub fn validate(&self) -> Result<(), PropagationError> {
        if self.kind == PropagationKind::Fourier {
            return Ok(());
        }
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.wavelength) {
            return Err(PropagationError::InvalidSpec("wavelength must be > 0".into()));
        }
        if !self.distance.is_finite() || self.distance == 0.0 {
            return Err(PropagationError::InvalidSpec("distance must be non-zero".into()));
        }
        if !ok(self.pitch_x) || !ok(self.pitch_y) {
            return Err(PropagationError::InvalidSpec("pixel pitch must be > 0".into()));
        }
        Ok(())
    }
}

/// Forward/inverse propagation for a fixed grid. The `*_in_place` methods work
/// on uncentered replay buffers; [`Propagator::propagate`] and
/// [`Propagator::backpropagate`] use the centered replay layout.
pub struct Propagator {
    fft: Fft2,
    chirp: Option<Vec<Complex64>>,
}

impl Propagator {
    pub fn new(spec: &PropagationSpec, width: usize, height: usize) -> Result<Self, PropagationError> {
        spec.validate()?;
        let chirp = match spec.kind {
            PropagationKind::Fourier => None,
            PropagationKind::Fresnel => Some(fresnel_chirp(spec, width, height)),
        };
        Ok(Self {
            fft: Fft2::new(width, height),
            chirp,
        })
    }

    pub fn width(&self) -> usize {
        self.fft.width()
    }

    pub fn height(&self) -> usize {
        self.fft.height()
    }

    /// Hologram-plane premultiplier at a pixel (1 for Fourier propagation).
    #[inline]
    pub fn input_factor(&self, pixel: usize) -> Complex64 {
        self.chirp
            .as_ref()
            .map_or(Complex64::new(1.0, 0.0), |c| c[pixel])
    }

    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        if let Some(chirp) = &self.chirp {
            for (z, c) in data.iter_mut().zip(chirp) {
                *z *= c;
            }
        }
        self.fft.process(data, Direction::Forward);
    }

    pub fn inverse_in_place(&self, data: &mut [Complex64]) {
        self.fft.process(data, Direction::Inverse);
        if let Some(chirp) = &self.chirp {
            for (z, c) in data.iter_mut().zip(chirp) {
                *z *= c.conj();
            }
        }
    }

    fn check(&self, field: &ComplexField) -> Result<(), PropagationError> {
        if field.dims() != (self.width(), self.height()) {
            return Err(PropagationError::DimensionMismatch);
        }
        if !field.is_finite() {
            return Err(PropagationError::NonFinite);
        }
        Ok(())
    }

    /// Hologram plane to centered replay plane.
    pub fn propagate(&self, field: &ComplexField) -> Result<ComplexField, PropagationError> {
        self.check(field)?;
        let (w, h) = field.dims();
        let mut d = field.data().to_vec();
        self.forward_in_place(&mut d);
        Ok(ComplexField::new(w, h, fftshift_slice(&d, w, h)).expect("finite"))
    }

    /// Centered replay plane back to the hologram plane.
    pub fn backpropagate(&self, field: &ComplexField) -> Result<ComplexField, PropagationError> {
        self.check(field)?;
        let (w, h) = field.dims();
        let mut d = ifftshift_slice(field.data(), w, h);
        self.inverse_in_place(&mut d);
        Ok(ComplexField::new(w, h, d).expect("finite"))
    }
}

/// Unit-modulus quadratic phase applied in the hologram plane before the
/// transform. Row index pairs with the y pitch, column index with the x pitch.
fn fresnel_chirp(spec: &PropagationSpec, width: usize, height: usize) -> Vec<Complex64> {
    let k = PI / (spec.wavelength * spec.distance);
    let (cy, cx) = (height as f64 / 2.0, width as f64 / 2.0);
    let mut out = Vec::with_capacity(width * height);
    for m in 0..height {
        let dy = (m as f64 - cy) * spec.pitch_y;
        for n in 0..width {
            let dx = (n as f64 - cx) * spec.pitch_x;
            out.push(Complex64::from_polar(1.0, k * (dy * dy + dx * dx)));
        }
    }
    out
}

pub fn propagate(field: &ComplexField, spec: &PropagationSpec) -> Result<ComplexField, PropagationError> {
    Propagator::new(spec, field.width(), field.height())?.propagate(field)
}

pub fn backpropagate(field: &ComplexField, spec: &PropagationSpec) -> Result<ComplexField, PropagationError> {
    Propagator::new(spec, field.width(), field.height())?.backpropagate(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagation::fft2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(w: usize, h: usize, seed: u64) -> ComplexField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..w * h)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        ComplexField::new(w, h, data).unwrap()
    }

    #[test]
    fn fourier_matches_fft2_exactly() {
        let f = random_field(16, 8, 4);
        assert_eq!(
            propagate(&f, &PropagationSpec::fourier()).unwrap(),
            fft2(&f, Direction::Forward).unwrap()
        );
    }

    #[test]
    fn far_fresnel_approaches_fourier() {
        let f = random_field(64, 64, 5);
        let fresnel = PropagationSpec::fresnel(532e-9, 1e9, 10e-6, 10e-6);
        let a = propagate(&f, &fresnel).unwrap();
        let b = propagate(&f, &PropagationSpec::fourier()).unwrap();
        let diff = a
            .data()
            .iter()
            .zip(b.data())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-9, "diff {diff}");
    }

    #[test]
    fn fresnel_preserves_energy() {
        let f = random_field(32, 24, 6);
        let spec = PropagationSpec::fresnel(633e-9, 0.25, 8e-6, 6e-6);
        let r = propagate(&f, &spec).unwrap();
        assert!((r.energy() - f.energy()).abs() / f.energy() < 1e-10);
        let back = backpropagate(&r, &spec).unwrap();
        for (a, b) in f.data().iter().zip(back.data()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn invalid_fresnel_specs() {
        let bad = [
            PropagationSpec::fresnel(0.0, 1.0, 1e-5, 1e-5),
            PropagationSpec::fresnel(5e-7, 0.0, 1e-5, 1e-5),
            PropagationSpec::fresnel(5e-7, 1.0, 0.0, 1e-5),
            PropagationSpec::fresnel(5e-7, 1.0, 1e-5, -1.0),
        ];
        for spec in bad {
            assert!(matches!(spec.validate(), Err(PropagationError::InvalidSpec(_))));
        }
        assert!(PropagationSpec::fresnel(5e-7, -0.3, 1e-5, 1e-5).validate().is_ok());
    }
}
