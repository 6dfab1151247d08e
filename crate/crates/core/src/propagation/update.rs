use std::f64::consts::TAU;

use num_complex::Complex64;

use super::PropagationError;

/// Applies the replay-plane effect of changing one hologram pixel without a
/// full transform. Buffers are uncentered (DC at index 0).
///
/// Changing `h(m, n)` by `dh` adds `dh * exp(-2 pi i (u m / H + v n / W)) / sqrt(HW)`
/// to every replay sample `(u, v)`, i.e. one rank-1 column of the DFT matrix.
#[derive(Debug, Clone)]
pub struct ReplayUpdater {
    width: usize,
    height: usize,
    row_twiddles: Vec<Complex64>,
    col_twiddles: Vec<Complex64>,
    scale: f64,
}

fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / n as f64))
        .collect()
}

impl ReplayUpdater {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            row_twiddles: twiddles(height),
            col_twiddles: twiddles(width),
            scale: 1.0 / ((width * height) as f64).sqrt(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Per-row factor `dh * exp(-2 pi i u m / H) / sqrt(HW)` for replay row `u`.
    #[inline]
    pub fn row_factor(&self, m: usize, u: usize, dh: Complex64) -> Complex64 {
        dh * self.row_twiddles[(u * m) % self.height] * self.scale
    }

    /// Column twiddle `exp(-2 pi i v n / W)` for replay column `v`.
    #[inline]
    pub fn col_twiddle(&self, n: usize, v: usize) -> Complex64 {
        self.col_twiddles[(v * n) % self.width]
    }

    /// Replay change at `(u, v)` caused by hologram change `dh` at row `m`, column `n`.
    #[inline]
    pub fn delta_at(&self, m: usize, n: usize, dh: Complex64, u: usize, v: usize) -> Complex64 {
        self.row_factor(m, u, dh) * self.col_twiddle(n, v)
    }

    pub fn apply(&self, replay: &mut [Complex64], m: usize, n: usize, dh: Complex64) -> Result<(), PropagationError> {
        if replay.len() != self.width * self.height {
            return Err(PropagationError::DimensionMismatch);
        }
        if m >= self.height || n >= self.width {
            return Err(PropagationError::IndexOutOfRange { row: m, col: n });
        }
        if dh == Complex64::new(0.0, 0.0) {
            return Ok(());
        }
        for (u, row) in replay.chunks_exact_mut(self.width).enumerate() {
            let a = self.row_factor(m, u, dh);
            for (v, r) in row.iter_mut().enumerate() {
                *r += a * self.col_twiddle(n, v);
            }
        }
        Ok(())
    }
}

/// One-off form of [`ReplayUpdater::apply`].
pub fn delta_replay_update(
    replay: &mut [Complex64],
    width: usize,
    height: usize,
    m: usize,
    n: usize,
    dh: Complex64,
) -> Result<(), PropagationError> {
    ReplayUpdater::new(width, height).apply(replay, m, n, dh)
}
