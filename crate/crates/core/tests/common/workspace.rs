//! On-disk fixtures for controller-level tests.

use std::path::{Path, PathBuf};

use hologen_core::image::ComplexField;
use hologen_core::serialio::{load_field, Metadata};

/// Writes `natural_target(w, h)` as an 8-bit grayscale PNG.
pub fn write_target_png(dir: &Path, name: &str, w: usize, h: usize) -> PathBuf {
    let field = super::natural_target(w, h);
    let px: Vec<u8> = field.data().iter().map(|z| (z.re * 255.0).round() as u8).collect();
    let path = dir.join(name);
    image::GrayImage::from_raw(w as u32, h as u32, px).unwrap().save(&path).unwrap();
    path
}

pub fn bits(field: &ComplexField) -> Vec<(u64, u64)> {
    field.data().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
}

/// Field bits plus metadata with the wall-clock timestamp blanked.
pub fn comparable(path: &Path) -> (Vec<(u64, u64)>, Metadata) {
    let (f, mut m) = load_field(path).unwrap();
    m.timestamp.clear();
    (bits(&f), m)
}

/// A six-job manifest over two targets, covering every algorithm, with job
/// `broken` pointing at a missing file.
pub fn six_job_manifest(dir: &Path) -> PathBuf {
    write_target_png(dir, "a.png", 24, 24);
    write_target_png(dir, "b.png", 40, 30);
    let res = r#""projector/slm/slm-resolution-x": 24, "projector/slm/slm-resolution-y": 24"#;
    let text = format!(
        r#"[
  {{"id": "gs-a", "target": "a.png", "overrides": {{{res}, "algorithm/run/algorithm/gs/iterations": 25}}}},
  {{"id": "sa-a", "target": "a.png", "overrides": {{{res}, "algorithm/run/algorithm": "sa",
     "algorithm/run/algorithm/sa/proposals": 3000, "algorithm/run/seed": 17}}}},
  {{"id": "broken", "target": "missing.png", "overrides": {{{res}}}}},
  {{"id": "dbs-b", "target": "b.png", "output": "dbs_out", "overrides": {{{res}, "algorithm/run/algorithm": "dbs",
     "algorithm/run/algorithm/dbs/max-passes": 2, "algorithm/run/algorithm/dbs/scan-order": "random",
     "projector/slm/slm-type": "phase-only"}}}},
  {{"id": "ospr-b", "target": "b.png", "overrides": {{{res}, "algorithm/run/algorithm": "ospr",
     "algorithm/run/algorithm/ospr/subframes": 3}}}},
  {{"id": "gs-region", "target": "a.png", "overrides": {{{res}, "algorithm/run/target-region": true,
     "algorithm/run/target-region/rects": "4,4,16,16", "algorithm/run/rescale-error": false,
     "projector/slm/propagation": "fresnel"}}}}
]"#
    );
    let path = dir.join("manifest.json");
    std::fs::write(&path, text).unwrap();
    path
}
