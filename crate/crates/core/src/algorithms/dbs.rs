use std::time::Instant;

use rand::seq::SliceRandom;

use super::context::RunContext;
use super::incremental::IncrementalState;
use super::rng::stream_rng;
use super::sa::initial_levels;
use super::{
    AlgorithmConfig, AlgorithmError, AlgorithmKind, AlgorithmParams, CancelFlag, Progress,
    RunReport, ScanOrder, Termination,
};
use crate::image::ComplexField;

/// Direct binary search: visit every pixel, try every level, keep the best
/// strictly improving one. Stops after a pass with no change or `max_passes`.
pub fn run_dbs(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<(ComplexField, RunReport), AlgorithmError> {
    let AlgorithmParams::Dbs(params) = cfg.params else {
        return Err(AlgorithmError::WrongAlgorithm {
            expected: AlgorithmKind::Dbs,
            got: cfg.kind(),
        });
    };
    if params.max_passes == 0 {
        return Err(AlgorithmError::InvalidConfig("max passes must be >= 1".into()));
    }
    let started = Instant::now();
    let ctx = RunContext::new(cfg, target, illumination)?;
    let levels = ctx.quantiser.levels();
    let mut state = IncrementalState::new(&ctx, initial_levels(cfg, &ctx, target, illumination)?);

    let mut order: Vec<usize> = (0..ctx.len()).collect();
    let mut trace = Vec::new();
    let mut termination = Termination::Completed;
    let mut passes = 0;
    'passes: for pass in 0..params.max_passes {
        if cancel.is_cancelled() {
            termination = Termination::Cancelled;
            break;
        }
        if params.scan_order == ScanOrder::Random {
            order.sort_unstable();
            order.shuffle(&mut stream_rng(cfg.seed, 1 + pass as u64));
        }
        let mut commits = 0usize;
        for &pixel in &order {
            if cancel.is_cancelled() {
                termination = Termination::Cancelled;
                passes += 1;
                trace.push((passes, ctx.reported_error(state.replay())?));
                break 'passes;
            }
            let cur = state.level(pixel);
            let (mut best, mut best_delta) = (cur, 0.0);
            for level in (0..levels).filter(|&l| l != cur) {
                let d = state.delta_error(pixel, level);
                if d < best_delta {
                    best = level;
                    best_delta = d;
                }
            }
            if best != cur {
                state.commit(pixel, best);
                commits += 1;
            }
        }
        passes += 1;
        let error = ctx.reported_error(state.replay())?;
        trace.push((passes, error));
        progress(&Progress {
            iteration: passes,
            total: params.max_passes,
            error,
        });
        log::debug!("dbs: pass {passes} commits={commits} error={error:.6e}");
        if commits == 0 {
            termination = Termination::Converged;
            break;
        }
    }

    state.resync();
    let final_error = ctx.reported_error(state.replay())?;
    match trace.last_mut() {
        Some(last) => last.1 = final_error,
        None => trace.push((0, final_error)),
    }
    let report = RunReport {
        error_trace: trace,
        final_error,
        efficiency: ctx.efficiency(state.replay())?,
        iterations_executed: passes,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        seed_used: cfg.seed,
        termination,
    };
    Ok((ctx.field(state.pattern()), report))
}
