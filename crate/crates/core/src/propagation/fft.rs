use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::PropagationError;
use crate::image::ComplexField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Planned unitary 2D DFT on uncentered row-major buffers.
pub struct Fft2 {
    width: usize,
    height: usize,
    rows: [Arc<dyn Fft<f64>>; 2],
    cols: [Arc<dyn Fft<f64>>; 2],
    scale: f64,
}

impl Fft2 {
    pub fn new(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0);
        let mut planner = FftPlanner::new();
        Self {
            width,
            height,
            rows: [
                planner.plan_fft_forward(width),
                planner.plan_fft_inverse(width),
            ],
            cols: [
                planner.plan_fft_forward(height),
                planner.plan_fft_inverse(height),
            ],
            scale: 1.0 / ((width * height) as f64).sqrt(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// In-place transform; DC stays at index 0.
    pub fn process(&self, data: &mut [Complex64], direction: Direction) {
        assert_eq!(data.len(), self.width * self.height);
        let d = match direction {
            Direction::Forward => 0,
            Direction::Inverse => 1,
        };
        self.rows[d].process(data);
        let mut t = transpose(data, self.width, self.height);
        self.cols[d].process(&mut t);
        let back = transpose(&t, self.height, self.width);
        for (out, v) in data.iter_mut().zip(back) {
            *out = v * self.scale;
        }
    }
}

fn transpose(data: &[Complex64], width: usize, height: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for y in 0..height {
        for x in 0..width {
            out[x * height + y] = data[y * width + x];
        }
    }
    out
}

/// Moves index 0 to `(width / 2, height / 2)`.
pub fn fftshift_slice<T: Copy + Default>(data: &[T], width: usize, height: usize) -> Vec<T> {
    roll_generic(data, width, height, width / 2, height / 2)
}

/// Inverse of [`fftshift_slice`]; differs from it only for odd dimensions.
pub fn ifftshift_slice<T: Copy + Default>(data: &[T], width: usize, height: usize) -> Vec<T> {
    roll_generic(data, width, height, width - width / 2, height - height / 2)
}

fn roll_generic<T: Copy + Default>(data: &[T], width: usize, height: usize, dx: usize, dy: usize) -> Vec<T> {
    assert_eq!(data.len(), width * height);
    let mut out = vec![T::default(); data.len()];
    for y in 0..height {
        let ty = (y + dy) % height;
        for x in 0..width {
            out[ty * width + (x + dx) % width] = data[y * width + x];
        }
    }
    out
}

pub fn fftshift(field: &ComplexField) -> ComplexField {
    let (w, h) = field.dims();
    ComplexField::new(w, h, fftshift_slice(field.data(), w, h)).expect("same shape")
}

pub fn ifftshift(field: &ComplexField) -> ComplexField {
    let (w, h) = field.dims();
    ComplexField::new(w, h, ifftshift_slice(field.data(), w, h)).expect("same shape")
}

/// Centered unitary 2D DFT. The forward spectrum has DC at
/// `(width / 2, height / 2)`; the inverse expects that layout and undoes it.
pub fn fft2(field: &ComplexField, direction: Direction) -> Result<ComplexField, PropagationError> {
    if !field.is_finite() {
        return Err(PropagationError::NonFinite);
    }
    let (w, h) = field.dims();
    let plan = Fft2::new(w, h);
    let data = match direction {
        Direction::Forward => {
            let mut d = field.data().to_vec();
            plan.process(&mut d, Direction::Forward);
            fftshift_slice(&d, w, h)
        }
        Direction::Inverse => {
            let mut d = ifftshift_slice(field.data(), w, h);
            plan.process(&mut d, Direction::Inverse);
            d
        }
    };
    ComplexField::new(w, h, data).map_err(|_| PropagationError::NonFinite)
}
