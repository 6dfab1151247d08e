use std::time::Instant;

use rand::Rng;

use super::context::RunContext;
use super::incremental::IncrementalState;
use super::rng::{stream_rng, INIT_STREAM};
use super::{
    initial_hologram, AlgorithmConfig, AlgorithmError, AlgorithmKind, AlgorithmParams,
    CancelFlag, Progress, RunReport, Termination,
};
use crate::image::ComplexField;

const SA_STREAM: u64 = 1;
const WARMUP_PROPOSALS: usize = 100;

/// Incremental versus full-transform inner-loop error at one audit point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditPoint {
    pub proposal: usize,
    pub incremental_error: f64,
    pub full_error: f64,
}

/// Simulated annealing over SLM level indices with geometric cooling
/// `T_k = T0 * alpha^k`.
pub fn run_sa(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<(ComplexField, RunReport), AlgorithmError> {
    anneal(cfg, target, illumination, progress, cancel, None)
}

/// [`run_sa`] that additionally compares the incremental error against a full
/// re-propagation every `every` proposals.
pub fn run_sa_audited(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
    every: usize,
    audit: &mut dyn FnMut(AuditPoint),
) -> Result<(ComplexField, RunReport), AlgorithmError> {
    anneal(cfg, target, illumination, progress, cancel, Some((every.max(1), audit)))
}

/// Quantized level grid of the configured starting hologram.
pub(crate) fn initial_levels(
    cfg: &AlgorithmConfig,
    ctx: &RunContext,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
) -> Result<Vec<usize>, AlgorithmError> {
    let mut rng = stream_rng(cfg.seed, INIT_STREAM);
    let init = initial_hologram(target, illumination, cfg.init_mode, &cfg.propagation, &mut rng)?;
    Ok(init.data().iter().map(|&z| ctx.quantiser.index_of(z)).collect())
}

fn propose<R: Rng>(rng: &mut R, state: &IncrementalState, levels: usize) -> (usize, usize) {
    let pixel = rng.gen_range(0..state.levels().len());
    let cur = state.level(pixel);
    let mut level = rng.gen_range(0..levels - 1);
    if level >= cur {
        level += 1;
    }
    (pixel, level)
}

fn anneal(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
    mut audit: Option<(usize, &mut dyn FnMut(AuditPoint))>,
) -> Result<(ComplexField, RunReport), AlgorithmError> {
    let AlgorithmParams::Sa(params) = cfg.params else {
        return Err(AlgorithmError::WrongAlgorithm {
            expected: AlgorithmKind::Sa,
            got: cfg.kind(),
        });
    };
    if params.proposals == 0 {
        return Err(AlgorithmError::InvalidConfig("proposals must be >= 1".into()));
    }
    if !(params.cooling_factor > 0.0 && params.cooling_factor <= 1.0) {
        return Err(AlgorithmError::InvalidConfig("cooling factor must lie in (0, 1]".into()));
    }
    if params.initial_temperature.is_some_and(|t| !(t >= 0.0 && t.is_finite())) {
        return Err(AlgorithmError::InvalidConfig("initial temperature must be >= 0".into()));
    }
    let started = Instant::now();
    let ctx = RunContext::new(cfg, target, illumination)?;
    let levels = ctx.quantiser.levels();
    let mut state = IncrementalState::new(&ctx, initial_levels(cfg, &ctx, target, illumination)?);
    let mut rng = stream_rng(cfg.seed, SA_STREAM);

    let t0 = match params.initial_temperature {
        Some(t) => t,
        None => {
            let total: f64 = (0..WARMUP_PROPOSALS)
                .map(|_| {
                    let (p, l) = propose(&mut rng, &state, levels);
                    state.delta_error(p, l).abs()
                })
                .sum();
            total / WARMUP_PROPOSALS as f64
        }
    };

    let stride = (params.proposals / 1000).max(1);
    let mut trace = vec![(0, ctx.reported_error(state.replay())?)];
    let mut temperature = t0;
    let mut executed = 0;
    let mut termination = Termination::Completed;
    for k in 0..params.proposals {
        if cancel.is_cancelled() {
            termination = Termination::Cancelled;
            break;
        }
        let (pixel, level) = propose(&mut rng, &state, levels);
        let delta = state.delta_error(pixel, level);
        let accept = delta < 0.0 || (temperature > 0.0 && rng.gen::<f64>() < (-delta / temperature).exp());
        if accept {
            state.commit(pixel, level);
        }
        temperature *= params.cooling_factor;
        executed = k + 1;

        if executed % stride == 0 {
            let error = ctx.reported_error(state.replay())?;
            trace.push((executed, error));
            progress(&Progress {
                iteration: executed,
                total: params.proposals,
                error,
            });
        }
        if let Some((every, hook)) = audit.as_mut() {
            if executed % *every == 0 {
                hook(AuditPoint {
                    proposal: executed,
                    incremental_error: state.error(),
                    full_error: state.full_error(),
                });
            }
        }
    }
    log::debug!("sa: T0={t0:.3e} executed={executed}");

    state.resync();
    let final_error = ctx.reported_error(state.replay())?;
    match trace.last_mut() {
        Some(last) if last.0 == executed => last.1 = final_error,
        _ => trace.push((executed, final_error)),
    }
    let report = RunReport {
        error_trace: trace,
        final_error,
        efficiency: ctx.efficiency(state.replay())?,
        iterations_executed: executed,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        seed_used: cfg.seed,
        termination,
    };
    Ok((ctx.field(state.pattern()), report))
}
