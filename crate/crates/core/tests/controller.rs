mod common;

use common::workspace::{bits, six_job_manifest, write_target_png};
use hologen_core::algorithms::{run, CancelFlag};
use hologen_core::controller::{configure_run, execute, load_manifest, load_target, run_batch, ControllerError};
use hologen_core::hierarchy::build_schema;
use hologen_core::serialio::inspect_field;

fn small_tree(alg: &str) -> hologen_core::hierarchy::OptionTree {
    let mut t = build_schema();
    t.set("projector/slm/slm-resolution-x", 16i64).unwrap();
    t.set("projector/slm/slm-resolution-y", 16i64).unwrap();
    t.set("algorithm/run/seed", 5i64).unwrap();
    t.set("algorithm/run/algorithm", alg).unwrap();
    t
}

#[test]
fn execute_adds_no_numeric_transformation() {
    let dir = tempfile::tempdir().unwrap();
    let png = write_target_png(dir.path(), "t.png", 20, 12);
    for alg in ["gs", "sa", "dbs", "ospr"] {
        let mut tree = small_tree(alg);
        if alg == "sa" {
            tree.set("algorithm/run/algorithm/sa/proposals", 2000i64).unwrap();
        }
        let cfg = configure_run(&tree).unwrap();
        let target = load_target(&png, 16, 16).unwrap();
        let exec = execute(&cfg, &target, None, &mut |_| {}, &CancelFlag::new()).unwrap();
        let direct = run(&cfg.algorithm, &target, None, &mut |_| {}, &CancelFlag::new()).unwrap();
        let a: Vec<_> = exec.holograms().map(bits).collect();
        let b: Vec<_> = direct.holograms.iter().map(bits).collect();
        assert_eq!(a, b, "{alg}");
        assert_eq!(exec.report.error_trace, direct.report.error_trace);
        let again = execute(&cfg, &target, None, &mut |_| {}, &CancelFlag::new()).unwrap();
        assert_eq!(again.outputs.len(), exec.outputs.len());
        assert_eq!(again.holograms().map(bits).collect::<Vec<_>>(), a);
    }
}

#[test]
fn cancelled_batch_records_every_job() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = load_manifest(&six_job_manifest(dir.path())).unwrap();
    let cancel = CancelFlag::new();
    cancel.cancel();
    let summary = run_batch(&jobs, 2, &dir.path().join("out"), 0, &cancel).unwrap();
    assert_eq!((summary.total, summary.failed), (6, 6));
    let text = std::fs::read_to_string(&summary.results_path).unwrap();
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn batch_outputs_carry_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = load_manifest(&six_job_manifest(dir.path())).unwrap();
    let out = dir.path().join("out");
    let summary = run_batch(&jobs, 3, &out, 0, &CancelFlag::new()).unwrap();
    let sa = summary.rows.iter().find(|r| r.job_id == "sa-a").unwrap();
    assert_eq!(sa.seed, 17);
    let info = inspect_field(out.join("sa-a.hgi")).unwrap();
    assert!(info.checksum_ok);
    assert_eq!(info.metadata.seed, 17);
    assert_eq!(info.metadata.algorithm, "sa");
    let ospr = summary.rows.iter().find(|r| r.job_id == "ospr-b").unwrap();
    assert_eq!(ospr.output_file, "ospr-b.frame0.hgi;ospr-b.frame1.hgi;ospr-b.frame2.hgi");
    assert!(out.join("dbs_out.hgi").exists());
    // automatic seeds differ between jobs
    let gs_a = summary.rows.iter().find(|r| r.job_id == "gs-a").unwrap();
    let gs_r = summary.rows.iter().find(|r| r.job_id == "gs-region").unwrap();
    assert_ne!(gs_a.seed, gs_r.seed);
}

#[test]
fn manifest_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"[{"id": "x", "target": "t.png", "colour": 1}]"#).unwrap();
    assert!(matches!(load_manifest(&path), Err(ControllerError::MalformedManifest { .. })));
    assert!(matches!(load_manifest(&dir.path().join("none.json")), Err(ControllerError::Io(_))));
}
