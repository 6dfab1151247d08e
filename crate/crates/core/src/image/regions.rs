use super::{ImageError, Rect};

/// Iterator over square `chunk × chunk` tiles of a `width × height` grid,
/// row-major by tile. Tiles on the right and bottom edges are clipped.
#[derive(Debug, Clone)]
pub struct StridedChunkRange {
    width: usize,
    height: usize,
    chunk: usize,
    x: usize,
    y: usize,
}

impl StridedChunkRange {
    pub fn new(width: usize, height: usize, chunk: usize) -> Result<Self, ImageError> {
        if chunk == 0 {
            return Err(ImageError::ZeroChunk);
        }
        Ok(Self {
            width,
            height,
            chunk,
            x: 0,
            y: 0,
        })
    }

    fn tiles(&self) -> usize {
        self.width.div_ceil(self.chunk) * self.height.div_ceil(self.chunk)
    }
}

impl Iterator for StridedChunkRange {
    type Item = Rect;

    fn next(&mut self) -> Option<Rect> {
        if self.width == 0 || self.y >= self.height {
            return None;
        }
        let w = self.chunk.min(self.width - self.x);
        let h = self.chunk.min(self.height - self.y);
        let r = Rect::new(self.x, self.y, w, h);
        self.x += self.chunk;
        if self.x >= self.width {
            self.x = 0;
            self.y += self.chunk;
        }
        Some(r)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        if self.width == 0 || self.y >= self.height {
            return (0, Some(0));
        }
        let per_row = self.width.div_ceil(self.chunk);
        let done = (self.y / self.chunk) * per_row + self.x / self.chunk;
        let left = self.tiles() - done;
        (left, Some(left))
    }
}

impl ExactSizeIterator for StridedChunkRange {}

pub fn region_chunks(width: usize, height: usize, chunk: usize) -> Result<StridedChunkRange, ImageError> {
    StridedChunkRange::new(width, height, chunk)
}
