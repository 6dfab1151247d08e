use super::ImageError;

/// Axis-aligned rectangle in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub fn new(x: usize, y: usize, width: usize, height: usize) -> Self {
        Self {
            x,
            y,
            width,
            height,
        }
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// Per-pixel boolean raster, row-major like [`super::ComplexField`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl Mask {
    pub fn full(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![true; width * height],
        }
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<bool>) -> Result<Self, ImageError> {
        if bits.len() != width * height {
            return Err(ImageError::LengthMismatch {
                expected: width * height,
                actual: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    /// Union of `rects`; an empty list selects the whole plane.
    pub fn from_rects(width: usize, height: usize, rects: &[Rect]) -> Result<Self, ImageError> {
        if rects.is_empty() {
            return Ok(Self::full(width, height));
        }
        let mut mask = Self::empty(width, height);
        for r in rects {
            if r.x + r.width > width || r.y + r.height > height {
                return Err(ImageError::OutOfBounds {
                    rect: *r,
                    width,
                    height,
                });
            }
            for y in r.y..r.y + r.height {
                mask.bits[y * width + r.x..y * width + r.x + r.width].fill(true);
            }
        }
        Ok(mask)
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
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Indices of set pixels in row-major order.
    pub fn indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

/// Builds a mask from rectangles; see [`Mask::from_rects`].
pub fn rect_mask(width: usize, height: usize, rects: &[Rect]) -> Result<Mask, ImageError> {
    Mask::from_rects(width, height, rects)
}
