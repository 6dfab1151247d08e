use num_complex::Complex64;

use super::ImageError;

/// Dense row-major complex field. Pixel `(x, y)` lives at `y * width + x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(width: usize, height: usize, data: Vec<Complex64>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyImage);
        }
        if data.len() != width * height {
            return Err(ImageError::LengthMismatch {
                expected: width * height,
                actual: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(ImageError::NonFinite);
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, Complex64::new(0.0, 0.0))
    }

    pub fn filled(width: usize, height: usize, value: Complex64) -> Self {
        assert!(width > 0 && height > 0, "field dimensions must be non-zero");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// Builds a field from real amplitudes with zero phase.
    pub fn from_amplitudes(width: usize, height: usize, amp: &[f64]) -> Result<Self, ImageError> {
        Self::new(
            width,
            height,
            amp.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        )
    }

    /// Converts an 8-bit luminance grid to a field with amplitude `v / 255` and zero phase.
    pub fn from_grayscale(width: usize, height: usize, pixels: &[u8]) -> Result<Self, ImageError> {
        if width == 0 || height == 0 || pixels.is_empty() {
            return Err(ImageError::EmptyImage);
        }
        Self::new(
            width,
            height,
            pixels
                .iter()
                .map(|&v| Complex64::new(f64::from(v) / 255.0, 0.0))
                .collect(),
        )
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Complex64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: Complex64) {
        let i = y * self.width + x;
        self.data[i] = value;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Sum of squared moduli.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.norm()).collect()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn same_dims(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height
    }
}
