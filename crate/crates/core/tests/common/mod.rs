#![allow(dead_code)]

pub mod dft;
pub mod hierarchy_oracle;
pub mod workspace;

use hologen_core::algorithms::{
    AlgorithmConfig, AlgorithmParams, CancelFlag, DbsParams, GsParams, InitMode, OsprParams,
    Progress, SaParams, ScanOrder, SlmScheme, SlmSpec,
};
use hologen_core::image::ComplexField;
use hologen_core::propagation::{MetricSpec, PropagationSpec};

/// Smooth, natural-looking 8-bit test scene: blurred blobs, a soft horizon
/// gradient and fine texture.
pub fn natural_target(w: usize, h: usize) -> ComplexField {
    let mut px = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let (fx, fy) = (x as f64 / w as f64, y as f64 / h as f64);
            let blob = |cx: f64, cy: f64, s: f64| (-((fx - cx).powi(2) + (fy - cy).powi(2)) / (2.0 * s * s)).exp();
            let v = 0.55 * blob(0.3, 0.35, 0.12)
                + 0.4 * blob(0.7, 0.6, 0.08)
                + 0.25 * (1.0 - fy) * (fy > 0.5) as u8 as f64
                + 0.08 * ((fx * 23.0).sin() * (fy * 17.0).cos())
                + 0.1;
            px.push((v.clamp(0.0, 1.0) * 255.0).round() as u8);
        }
    }
    ComplexField::from_grayscale(w, h, &px).unwrap()
}

pub fn config(w: usize, h: usize, params: AlgorithmParams, scheme: SlmScheme, seed: u64) -> AlgorithmConfig {
    AlgorithmConfig {
        params,
        seed,
        init_mode: InitMode::RandomPhase,
        metric: MetricSpec::full(w, h, false),
        slm: SlmSpec::new(w, h, scheme),
        propagation: PropagationSpec::fourier(),
    }
}

pub fn gs(iterations: usize) -> AlgorithmParams {
    AlgorithmParams::Gs(GsParams {
        iterations,
        feedback_gain: 0.0,
        quantize_each_iteration: false,
    })
}

pub fn sa(proposals: usize, t0: Option<f64>) -> AlgorithmParams {
    AlgorithmParams::Sa(SaParams {
        proposals,
        initial_temperature: t0,
        cooling_factor: 0.9995,
    })
}

pub fn dbs(max_passes: usize) -> AlgorithmParams {
    AlgorithmParams::Dbs(DbsParams {
        max_passes,
        scan_order: ScanOrder::Raster,
    })
}

pub fn ospr(subframes: usize) -> AlgorithmParams {
    AlgorithmParams::Ospr(OsprParams { subframes })
}

pub fn quiet() -> impl FnMut(&Progress) {
    |_: &Progress| {}
}

pub fn no_cancel() -> CancelFlag {
    CancelFlag::new()
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
