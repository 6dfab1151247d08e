use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use super::context::RunContext;
use super::rng::stream_rng;
use super::{
    AlgorithmConfig, AlgorithmError, AlgorithmKind, AlgorithmParams, CancelFlag, Progress,
    RunReport, Termination,
};
use crate::image::ComplexField;
use crate::propagation::phase_of;

/// One-step phase retrieval: `N` independently randomized, quantized
/// back-projections whose replay intensities average over time.
pub fn run_ospr(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<(Vec<ComplexField>, RunReport), AlgorithmError> {
    let AlgorithmParams::Ospr(params) = cfg.params else {
        return Err(AlgorithmError::WrongAlgorithm {
            expected: AlgorithmKind::Ospr,
            got: cfg.kind(),
        });
    };
    if params.subframes == 0 {
        return Err(AlgorithmError::InvalidConfig("subframes must be >= 1".into()));
    }
    let started = Instant::now();
    let ctx = RunContext::new(cfg, target, illumination)?;

    let mut intensity = vec![0.0; ctx.len()];
    let mut frames = Vec::with_capacity(params.subframes);
    let mut trace = Vec::with_capacity(params.subframes);
    let mut termination = Termination::Completed;
    let mut perceived = vec![Complex64::new(0.0, 0.0); ctx.len()];
    for i in 0..params.subframes {
        if cancel.is_cancelled() {
            termination = Termination::Cancelled;
            break;
        }
        let mut rng = stream_rng(cfg.seed, 1 + i as u64);
        let mut field: Vec<Complex64> = ctx
            .target
            .iter()
            .map(|&a| Complex64::from_polar(a, rng.gen::<f64>() * TAU))
            .collect();
        ctx.propagator.inverse_in_place(&mut field);
        let pattern: Vec<Complex64> = field
            .iter()
            .map(|&z| ctx.quantiser.quantize(Complex64::from_polar(1.0, phase_of(z))))
            .collect();
        let replay = ctx.replay_of(&pattern);
        for (acc, r) in intensity.iter_mut().zip(&replay) {
            *acc += r.norm_sqr();
        }
        let n = (i + 1) as f64;
        for (p, &acc) in perceived.iter_mut().zip(&intensity) {
            *p = Complex64::new((acc / n).sqrt(), 0.0);
        }
        let error = ctx.reported_error(&perceived)?;
        trace.push((i + 1, error));
        progress(&Progress {
            iteration: i + 1,
            total: params.subframes,
            error,
        });
        frames.push(ctx.field(pattern));
    }

    let final_error = match trace.last() {
        Some(&(_, e)) => e,
        None => {
            let e = ctx.reported_error(&perceived)?;
            trace.push((0, e));
            e
        }
    };
    let efficiency = if frames.is_empty() {
        0.0
    } else {
        ctx.efficiency(&perceived)?
    };
    let report = RunReport {
        error_trace: trace,
        final_error,
        efficiency,
        iterations_executed: frames.len(),
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        seed_used: cfg.seed,
        termination,
    };
    Ok((frames, report))
}
