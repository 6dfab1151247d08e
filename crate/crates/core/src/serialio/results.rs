use std::fs::OpenOptions;
use std::path::Path;

use super::SerialError;

pub const RESULTS_HEADER: [&str; 10] = [
    "job_id",
    "algorithm",
    "width",
    "height",
    "iterations",
    "final_error",
    "efficiency",
    "seed",
    "runtime_ms",
    "output_file",
];

/// One row of the batch results table.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchRecord {
    pub job_id: String,
    pub algorithm: String,
    pub width: usize,
    pub height: usize,
    pub iterations: usize,
    pub final_error: f64,
    pub efficiency: f64,
    pub seed: u64,
    pub runtime_ms: f64,
    /// Output file name(s), `;`-separated; `ERROR: <message>` for failed jobs.
    pub output_file: String,
}

impl BatchRecord {
    fn fields(&self) -> [String; 10] {
        [
            self.job_id.clone(),
            self.algorithm.clone(),
            self.width.to_string(),
            self.height.to_string(),
            self.iterations.to_string(),
            format!("{:.12e}", self.final_error),
            format!("{:.12e}", self.efficiency),
            self.seed.to_string(),
            format!("{:.3}", self.runtime_ms),
            self.output_file.clone(),
        ]
    }
}

/// Appends `record` to the CSV at `path`, writing the header first when the
/// file is new or empty.
pub fn write_results_row(path: impl AsRef<Path>, record: &BatchRecord) -> Result<(), SerialError> {
    let path = path.as_ref();
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    let csv_err = |e: csv::Error| SerialError::Csv(e.to_string());
    if fresh {
        w.write_record(RESULTS_HEADER).map_err(csv_err)?;
    }
    w.write_record(record.fields()).map_err(csv_err)?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, e: f64) -> BatchRecord {
        BatchRecord {
            job_id: id.into(),
            algorithm: "gs".into(),
            width: 8,
            height: 4,
            iterations: 10,
            final_error: e,
            efficiency: 0.5,
            seed: 7,
            runtime_ms: 1.25,
            output_file: "a.hgi".into(),
        }
    }

    #[test]
    fn header_written_once() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        write_results_row(&path, &record("a", 0.1)).unwrap();
        write_results_row(&path, &record("b,c", 0.2)).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], RESULTS_HEADER.join(","));
        assert!(lines[2].starts_with("\"b,c\",gs,"));
    }

    #[test]
    fn final_error_keeps_precision() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let e = 0.000123456789123456;
        write_results_row(&path, &record("a", e)).unwrap();
        let mut rdr = csv::Reader::from_path(&path).unwrap();
        let row = rdr.records().next().unwrap().unwrap();
        let back: f64 = row[5].parse().unwrap();
        assert!(((back - e) / e).abs() < 1e-9);
    }
}
