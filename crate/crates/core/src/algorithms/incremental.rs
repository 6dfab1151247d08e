use num_complex::Complex64;

use super::context::RunContext;
use crate::propagation::ReplayUpdater;

/// Quantized hologram with an incrementally maintained replay field.
///
/// The inner-loop error is the unscaled masked amplitude error
/// `sum_mask (|R| - |T|)^2 / sum_mask |T|^2`, so a single-pixel change costs
/// one pass over the mask instead of a full transform.
pub(crate) struct IncrementalState<'a> {
    ctx: &'a RunContext,
    updater: ReplayUpdater,
    levels: Vec<usize>,
    replay: Vec<Complex64>,
    amp: Vec<f64>,
    mask_idx: Vec<usize>,
    target_energy: f64,
    error_sum: f64,
    row_buf: Vec<Complex64>,
}

impl<'a> IncrementalState<'a> {
    pub fn new(ctx: &'a RunContext, levels: Vec<usize>) -> Self {
        assert_eq!(levels.len(), ctx.len());
        let mask_idx: Vec<usize> = ctx
            .mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        let target_energy = mask_idx.iter().map(|&i| ctx.target[i] * ctx.target[i]).sum();
        let mut s = Self {
            ctx,
            updater: ReplayUpdater::new(ctx.width, ctx.height),
            levels,
            replay: Vec::new(),
            amp: Vec::new(),
            mask_idx,
            target_energy,
            error_sum: 0.0,
            row_buf: vec![Complex64::new(0.0, 0.0); ctx.height],
        };
        s.resync();
        s
    }

    /// Recomputes the replay with a full transform.
    pub fn resync(&mut self) {
        self.replay = self.ctx.replay_of(&self.pattern());
        self.amp = self.replay.iter().map(|z| z.norm()).collect();
        self.recompute_error_sum();
    }

    fn recompute_error_sum(&mut self) {
        self.error_sum = self
            .mask_idx
            .iter()
            .map(|&i| {
                let d = self.amp[i] - self.ctx.target[i];
                d * d
            })
            .sum();
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn level(&self, pixel: usize) -> usize {
        self.levels[pixel]
    }

    pub fn pattern(&self) -> Vec<Complex64> {
        let states = self.ctx.quantiser.states();
        self.levels.iter().map(|&l| states[l]).collect()
    }

    pub fn replay(&self) -> &[Complex64] {
        &self.replay
    }

    /// Current inner-loop error.
    pub fn error(&self) -> f64 {
        self.error_sum / self.target_energy
    }

    /// Inner-loop error from a fresh transform of the current pattern.
    pub fn full_error(&self) -> f64 {
        let replay = self.ctx.replay_of(&self.pattern());
        self.ctx
            .error(&replay, false)
            .expect("mask and target validated by the run context")
    }

    fn pixel_delta(&self, pixel: usize, level: usize) -> Complex64 {
        let states = self.ctx.quantiser.states();
        (states[level] - states[self.levels[pixel]])
            * self.ctx.illumination[pixel]
            * self.ctx.propagator.input_factor(pixel)
    }

    /// Error change if `pixel` were switched to `level`; nothing is committed.
    pub fn delta_error(&mut self, pixel: usize, level: usize) -> f64 {
        let dh = self.pixel_delta(pixel, level);
        if dh == Complex64::new(0.0, 0.0) {
            return 0.0;
        }
        let w = self.ctx.width;
        let (m, n) = (pixel / w, pixel % w);
        for (u, f) in self.row_buf.iter_mut().enumerate() {
            *f = self.updater.row_factor(m, u, dh);
        }
        let mut acc = 0.0;
        for &i in &self.mask_idx {
            let (u, v) = (i / w, i % w);
            let r = self.replay[i] + self.row_buf[u] * self.updater.col_twiddle(n, v);
            let t = self.ctx.target[i];
            let old = self.amp[i] - t;
            let new = r.norm() - t;
            acc += new * new - old * old;
        }
        acc / self.target_energy
    }

    /// Switches `pixel` to `level` and updates the whole replay plane.
    pub fn commit(&mut self, pixel: usize, level: usize) {
        let dh = self.pixel_delta(pixel, level);
        let w = self.ctx.width;
        self.updater
            .apply(&mut self.replay, pixel / w, pixel % w, dh)
            .expect("pixel index within the hologram");
        self.levels[pixel] = level;
        for (a, z) in self.amp.iter_mut().zip(&self.replay) {
            *a = z.norm();
        }
        self.recompute_error_sum();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{AlgorithmConfig, AlgorithmParams, InitMode, OsprParams, SlmScheme, SlmSpec};
    use crate::image::{rect_mask, ComplexField, Rect};
    use crate::propagation::{MetricSpec, PropagationSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn context(w: usize, h: usize, scheme: SlmScheme, mask_rects: &[Rect], fresnel: bool) -> RunContext {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let target = ComplexField::from_amplitudes(
            w,
            h,
            &(0..w * h).map(|_| rng.gen_range(0.0..1.0)).collect::<Vec<_>>(),
        )
        .unwrap();
        let illum = ComplexField::from_amplitudes(
            w,
            h,
            &(0..w * h).map(|_| rng.gen_range(0.5..1.0)).collect::<Vec<_>>(),
        )
        .unwrap();
        let cfg = AlgorithmConfig {
            params: AlgorithmParams::Ospr(OsprParams { subframes: 1 }),
            seed: 0,
            init_mode: InitMode::RandomPhase,
            metric: MetricSpec::new(rect_mask(w, h, mask_rects).unwrap(), false),
            slm: SlmSpec::new(w, h, scheme),
            propagation: if fresnel {
                PropagationSpec::fresnel(532e-9, 0.1, 8e-6, 8e-6)
            } else {
                PropagationSpec::fourier()
            },
        };
        RunContext::new(&cfg, &target, Some(&illum)).unwrap()
    }

    #[test]
    fn delta_error_matches_full_repropagation() {
        for (scheme, rects, fresnel) in [
            (SlmScheme::BinaryPhase, vec![], false),
            (SlmScheme::PhaseOnly { levels: 4, offset: 0.3 }, vec![Rect::new(2, 3, 9, 6)], true),
            (SlmScheme::AmplitudeOnly { levels: 3 }, vec![Rect::new(0, 0, 5, 12)], false),
        ] {
            let ctx = context(16, 12, scheme, &rects, fresnel);
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let levels = ctx.quantiser.levels();
            let start: Vec<usize> = (0..ctx.len()).map(|_| rng.gen_range(0..levels)).collect();
            let mut state = IncrementalState::new(&ctx, start);
            for step in 0..200 {
                let p = rng.gen_range(0..ctx.len());
                let l = rng.gen_range(0..levels);
                let before = state.full_error();
                let d = state.delta_error(p, l);
                let unchanged = state.levels().to_vec();
                state.commit(p, l);
                let after = state.full_error();
                assert!((d - (after - before)).abs() < 1e-12, "step {step}: {d} vs {}", after - before);
                assert!((state.error() - after).abs() < 1e-12);
                if step % 3 == 0 {
                    // evaluation alone leaves the state untouched
                    let q = rng.gen_range(0..ctx.len());
                    state.delta_error(q, 0);
                    let mut expect = unchanged.clone();
                    expect[p] = l;
                    assert_eq!(state.levels(), &expect[..]);
                }
            }
        }
    }
}
