use std::time::Instant;

use num_complex::Complex64;

use super::context::RunContext;
use super::rng::{stream_rng, INIT_STREAM};
use super::{
    initial_hologram, AlgorithmConfig, AlgorithmError, AlgorithmKind, AlgorithmParams,
    CancelFlag, Progress, RunReport, Termination,
};
use crate::image::ComplexField;
use crate::propagation::phase_of;

/// Gerchberg-Saxton / error-reduction with optional replay-plane feedback.
///
/// Each iteration records the error of the current hologram's replay, replaces
/// the masked replay amplitude with `max(0, |T| + gain * (|T| - |R|))`, and
/// back-propagates onto the illumination amplitude. The returned hologram is
/// always quantized to the SLM states; its error is the report's
/// `final_error`.
pub fn run_gs(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<(ComplexField, RunReport), AlgorithmError> {
    let AlgorithmParams::Gs(params) = cfg.params else {
        return Err(AlgorithmError::WrongAlgorithm {
            expected: AlgorithmKind::Gs,
            got: cfg.kind(),
        });
    };
    if params.iterations == 0 {
        return Err(AlgorithmError::InvalidConfig("iterations must be >= 1".into()));
    }
    let started = Instant::now();
    let ctx = RunContext::new(cfg, target, illumination)?;
    let mut rng = stream_rng(cfg.seed, INIT_STREAM);
    let mut field = initial_hologram(target, illumination, cfg.init_mode, &cfg.propagation, &mut rng)?
        .into_data();
    let mut pattern: Vec<Complex64> = field
        .iter()
        .map(|&z| Complex64::from_polar(1.0, phase_of(z)))
        .collect();

    let mut trace = Vec::with_capacity(params.iterations);
    let mut termination = Termination::Completed;
    for k in 0..params.iterations {
        if cancel.is_cancelled() {
            termination = Termination::Cancelled;
            break;
        }
        let mut replay = field.clone();
        ctx.propagator.forward_in_place(&mut replay);
        let error = ctx.reported_error(&replay)?;
        trace.push((k, error));
        progress(&Progress {
            iteration: k,
            total: params.iterations,
            error,
        });

        for ((r, &t), &m) in replay.iter_mut().zip(&ctx.target).zip(&ctx.mask) {
            if m {
                let amp = (t + params.feedback_gain * (t - r.norm())).max(0.0);
                *r = Complex64::from_polar(amp, phase_of(*r));
            }
        }
        ctx.propagator.inverse_in_place(&mut replay);

        for (((h, p), z), &a) in field
            .iter_mut()
            .zip(pattern.iter_mut())
            .zip(&replay)
            .zip(&ctx.illumination)
        {
            let mut unit = Complex64::from_polar(1.0, phase_of(*z));
            if params.quantize_each_iteration {
                unit = ctx.quantiser.quantize(unit);
            }
            *p = unit;
            *h = unit * a;
        }
    }
    let executed = trace.len();

    let hologram: Vec<Complex64> = pattern.iter().map(|&p| ctx.quantiser.quantize(p)).collect();
    let replay = ctx.replay_of(&hologram);
    let final_error = ctx.reported_error(&replay)?;
    if trace.is_empty() {
        trace.push((0, final_error));
    }
    let report = RunReport {
        error_trace: trace,
        final_error,
        efficiency: ctx.efficiency(&replay)?,
        iterations_executed: executed,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        seed_used: cfg.seed,
        termination,
    };
    Ok((ctx.field(hologram), report))
}
